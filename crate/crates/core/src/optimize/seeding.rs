//! Deterministic start-point generation: a seeded low-discrepancy
//! (Halton) sequence over the bounded space, plus one informed start
//! built from the root representation of the conditional state.
//!
//! For vacuum, Fock, and coherent inputs the heralded state is exactly
//! D(displacement)·Π_j (a† − z_j)^{k_j}|0⟩, and at fixed beam-splitter
//! angles the map from auxiliary displacements to the roots z_j is
//! affine (with a Fock input's root z₀ a linear image of the others).
//! The informed start therefore optimizes the free roots directly in
//! root space with cheap matrix-free fidelity evaluations, then solves
//! the affine system for displacement amplitudes that realize them.

use num_complex::Complex64 as C64;

use crate::cat::{scq_polynomial, scs_vector, CatSpec};
use crate::fock::{self, FockVector, SqrtFactorials};
use crate::poly::polynomial_roots;
use crate::scheme::InputSpec;

use super::nelder_mead;
use super::{FreeParameter, SearchSpace};

const PRIMES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut result = 0.0;
    let mut frac = 1.0 / base as f64;
    while index > 0 {
        result += (index % base) as f64 * frac;
        index /= base;
        frac /= base as f64;
    }
    result
}

/// Point `index` of the seed-rotated Halton sequence, mapped into the
/// space's bounds. The sequence for a given seed is a prefix-stable
/// stream: more restarts extend, never reshuffle, the start list.
pub fn halton_start(space: &SearchSpace, seed: u64, index: u64) -> Vec<f64> {
    let dim = space.dim();
    let mut rng_state = seed ^ 0xabcd_1234_5678_ef00;
    (0..dim)
        .map(|j| {
            let shift = (splitmix64(&mut rng_state) >> 11) as f64 / (1u64 << 53) as f64;
            let u = radical_inverse(index + 1, PRIMES[j % PRIMES.len()]);
            let v = (u + shift).fract();
            let (lo, hi) = space.bound(j);
            lo + v * (hi - lo)
        })
        .collect()
}

/// Solve the complex system A x = b (least squares when overdetermined)
/// via normal equations and Gaussian elimination with partial pivoting.
fn least_squares(a: &[Vec<C64>], b: &[C64]) -> Option<Vec<C64>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut m = vec![vec![C64::new(0.0, 0.0); cols + 1]; cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut acc = C64::new(0.0, 0.0);
            for r in 0..rows {
                acc += a[r][i].conj() * a[r][j];
            }
            m[i][j] = acc;
        }
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..rows {
            acc += a[r][i].conj() * b[r];
        }
        m[i][cols] = acc;
    }
    for col in 0..cols {
        let pivot = (col..cols).max_by(|&p, &q| m[p][col].norm().total_cmp(&m[q][col].norm()))?;
        if m[pivot][col].norm() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        let inv = m[col][col].inv();
        for j in col..=cols {
            m[col][j] *= inv;
        }
        for row in 0..cols {
            if row != col {
                let factor = m[row][col];
                for j in col..=cols {
                    let sub = factor * m[col][j];
                    m[row][j] -= sub;
                }
            }
        }
    }
    Some((0..cols).map(|i| m[i][cols]).collect())
}

/// Cascade images of the creation operators a₀†..a_m† at uniform
/// beam-splitter angle θ.
fn cascade_forms(m: usize, theta: f64) -> Vec<Vec<C64>> {
    let mut forms: Vec<Vec<C64>> = (0..=m)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); m + 1];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();
    let (t, r) = (theta.cos(), theta.sin());
    for k in 1..=m {
        for f in forms.iter_mut() {
            let f0 = f[0];
            let fk = f[k];
            f[0] = t * f0 - r * fk;
            f[k] = r * f0 + t * fk;
        }
    }
    forms
}

/// At the given angles: solve for the substitution amplitudes x_k = B_k*
/// that realize the auxiliary roots, Σ_k F_j[k] x_k = z_j F_j[0].
fn solve_substitutions(forms: &[Vec<C64>], aux_roots: &[C64]) -> Option<Vec<C64>> {
    let m = aux_roots.len();
    let mut rows_a = Vec::with_capacity(m);
    let mut rows_b = Vec::with_capacity(m);
    for j in 1..=m {
        rows_a.push((1..=m).map(|k| forms[j][k]).collect::<Vec<_>>());
        rows_b.push(aux_roots[j - 1] * forms[j][0]);
    }
    least_squares(&rows_a, &rows_b)
}

/// Linear coefficients λ with z₀ = Σ_j λ_j z_j for a Fock input: the
/// input factor's root induced by whatever amplitudes realize the
/// auxiliary roots.
fn fock_root_map(forms: &[Vec<C64>], m: usize) -> Option<Vec<C64>> {
    let mut lambda = vec![C64::new(0.0, 0.0); m];
    for j in 0..m {
        let mut basis = vec![C64::new(0.0, 0.0); m];
        basis[j] = C64::new(1.0, 0.0);
        let x = solve_substitutions(forms, &basis)?;
        let mut z0 = C64::new(0.0, 0.0);
        for k in 1..=m {
            z0 += forms[0][k] * x[k - 1];
        }
        lambda[j] = z0 / forms[0][0];
    }
    Some(lambda)
}

/// Fidelity model for the root-space pre-optimization. Free coordinates:
/// the m auxiliary roots (re, im interleaved) then α₀.
struct RootSpace {
    /// Multiplicities of the free auxiliary roots.
    sizes: Vec<usize>,
    /// Fock-input multiplicity (zero when absent).
    k0: usize,
    /// z₀ = Σ_j z0_map[j]·z_j when k0 > 0.
    z0_map: Vec<C64>,
    /// Polynomial factor contributed by the input state (scaled kitten
    /// expansion; trivial for vacuum/Fock/coherent).
    input_coeffs: Vec<C64>,
    /// Main-mode displacement that is not free: the beam-split share of
    /// a coherent input at the reference angles.
    fixed_disp: C64,
    cat: FockVector,
    sqf: SqrtFactorials,
}

impl RootSpace {
    fn dim(&self) -> usize {
        2 * self.sizes.len() + 1
    }

    /// 1 − fidelity of D(fixed + iα₀)·q(a†)·Π(a†−z_j)^{s_j}|0⟩ with the
    /// cat, matrix-free: D(δ)p(a†)|0⟩ = e^{−|δ|²/2} p(a†−δ*) e^{δa†}|0⟩
    /// and the scalar prefactor cancels against the norm.
    fn objective(&self, params: &[f64]) -> f64 {
        let m = self.sizes.len();
        let alpha0 = params[2 * m];
        let delta = self.fixed_disp + C64::new(0.0, alpha0);
        let cutoff = self.cat.cutoff();

        let apply_root = |poly: &mut Vec<C64>, z: C64, mult: usize| {
            for _ in 0..mult {
                let mut next = vec![C64::new(0.0, 0.0); poly.len() + 1];
                for (k, &c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * z;
                }
                *poly = next;
            }
        };

        let mut poly = self.input_coeffs.clone();
        for (j, &s) in self.sizes.iter().enumerate() {
            apply_root(&mut poly, C64::new(params[2 * j], params[2 * j + 1]), s);
        }
        if self.k0 > 0 {
            let mut z0 = C64::new(0.0, 0.0);
            for (j, lam) in self.z0_map.iter().enumerate() {
                z0 += lam * C64::new(params[2 * j], params[2 * j + 1]);
            }
            apply_root(&mut poly, z0, self.k0);
        }

        // shift the polynomial argument by −δ*
        let deg = poly.len() - 1;
        let shift = -delta.conj();
        let mut shifted = vec![C64::new(0.0, 0.0); poly.len()];
        for (k, &c) in poly.iter().enumerate() {
            let mut term = c;
            for j in (0..=k).rev() {
                shifted[j] += term;
                if j > 0 {
                    term *= shift * (j as f64) / ((k - j + 1) as f64);
                }
            }
        }
        // convolve with the coherent series δ^l/l! and weight by √(l!)
        let mut series = Vec::with_capacity(cutoff + 1);
        let mut pw = C64::new(1.0, 0.0);
        for l in 0..=cutoff {
            if l > 0 {
                pw *= delta / (l as f64);
            }
            series.push(pw);
        }
        let mut norm_sqr = 0.0f64;
        let mut overlap = C64::new(0.0, 0.0);
        for l in 0..=cutoff {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..=deg.min(l) {
                acc += shifted[k] * series[l - k];
            }
            let amp = acc * self.sqf.sqrt(l);
            norm_sqr += amp.norm_sqr();
            overlap += self.cat.amplitude(l).conj() * amp;
        }
        if norm_sqr < 1e-280 {
            return 2.0;
        }
        1.0 - overlap.norm_sqr() / norm_sqr
    }
}

/// Build a start point for the full search space: optimize the free
/// roots in root space, then realize them with displacement amplitudes
/// solved from the affine root map.
pub fn informed_start(space: &SearchSpace, target: &CatSpec) -> Option<Vec<f64>> {
    let template = space.template();
    let m = template.mode_count();
    let n = template.photon_budget();
    if m == 0 || template.aux_photons.iter().all(|&s| s == 0) {
        return None;
    }

    let theta0 = 0.9f64;
    let forms = cascade_forms(m, theta0);
    let alpha_bound = space
        .free_parameters()
        .iter()
        .zip(space.bounds())
        .filter(|(p, _)| matches!(p, FreeParameter::AlphaRe(_) | FreeParameter::AlphaIm(_)))
        .map(|(_, &(lo, hi))| lo.abs().min(hi.abs()))
        .fold(4.0f64, f64::min);

    let gamma = match &template.input {
        InputSpec::Coherent { gamma } => *gamma,
        _ => C64::new(0.0, 0.0),
    };
    let k0 = template.input.photons();
    let v0 = forms[0][0];
    let input_coeffs = match &template.input {
        InputSpec::Kitten { .. } => {
            // kitten polynomial with its argument damped by the cascade
            let base = fock::auto_cutoff(template.input.magnitude());
            let vec = template.input.vector(base).ok()?;
            let sqf = SqrtFactorials::up_to(base);
            let mut pw = C64::new(1.0, 0.0);
            vec.amplitudes()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k > 0 {
                        pw *= v0;
                    }
                    c / sqf.sqrt(k) * pw
                })
                .collect()
        }
        _ => vec![C64::new(1.0, 0.0)],
    };

    let cutoff = fock::auto_cutoff(target.a_mag().max(gamma.norm())) + n + 4;
    let root_space = RootSpace {
        sizes: template.aux_photons.clone(),
        k0,
        z0_map: if k0 > 0 {
            fock_root_map(&forms, m)?
        } else {
            Vec::new()
        },
        input_coeffs,
        fixed_disp: gamma * v0,
        cat: scs_vector(target, cutoff).ok()?,
        sqf: SqrtFactorials::up_to(cutoff),
    };

    // Starting guesses: contiguous blocks of the degree-n qudit roots
    // over a grid of representation displacements; a Fock input's block
    // may sit at any position among the auxiliary blocks.
    let mut starts: Vec<Vec<f64>> = Vec::new();
    let k0_positions = if k0 > 0 { 0..=m } else { 0..=0 };
    for alpha_rep in [target.alpha, 0.25, 0.5, 0.75, 1.0] {
        let Ok(spec) = CatSpec::with_alpha(target.beta, target.parity, alpha_rep) else {
            continue;
        };
        let Ok(p) = scq_polynomial(n, &spec) else {
            continue;
        };
        let Ok(rs) = polynomial_roots(&p) else {
            continue;
        };
        let mut roots = rs.roots;
        roots.sort_by(|a, b| (a.im, a.re).partial_cmp(&(b.im, b.re)).unwrap());
        for k0_pos in k0_positions.clone() {
            let mut block_sizes: Vec<usize> = Vec::with_capacity(m + 1);
            let mut aux_slot_of_block: Vec<Option<usize>> = Vec::new();
            let mut aux_iter = 0..m;
            for pos in 0..=(if k0 > 0 { m } else { m - 1 }) {
                if k0 > 0 && pos == k0_pos {
                    block_sizes.push(k0);
                    aux_slot_of_block.push(None);
                } else if let Some(a) = aux_iter.next() {
                    block_sizes.push(template.aux_photons[a]);
                    aux_slot_of_block.push(Some(a));
                }
            }
            let mut centers = vec![C64::new(0.0, 0.0); m];
            let mut cursor = 0;
            let mut ok = true;
            for (bi, &s) in block_sizes.iter().enumerate() {
                if cursor + s > roots.len() {
                    ok = false;
                    break;
                }
                let c = if s == 0 {
                    C64::new(0.0, 0.0)
                } else {
                    roots[cursor..cursor + s].iter().sum::<C64>() / s as f64
                };
                if let Some(a) = aux_slot_of_block[bi] {
                    centers[a] = c;
                }
                cursor += s;
            }
            if !ok {
                continue;
            }
            let mut point: Vec<f64> = centers.iter().flat_map(|z| [z.re, z.im]).collect();
            point.push(alpha_rep);
            starts.push(point);
        }
    }
    // deterministic low-discrepancy extras in root space
    let mut rng = 0x5eed_0123u64;
    for i in 0..6u64 {
        let mut point = Vec::with_capacity(root_space.dim());
        for j in 0..2 * m {
            let shift = (splitmix64(&mut rng) >> 11) as f64 / (1u64 << 53) as f64;
            let u = (radical_inverse(i + 1, PRIMES[j % PRIMES.len()]) + shift).fract();
            point.push(-5.0 + 10.0 * u);
        }
        point.push(0.0);
        starts.push(point);
    }

    let mut bounds = vec![(-8.0, 8.0); 2 * m];
    bounds.push((-4.0, 4.0));
    let mut best: Option<(f64, Vec<f64>)> = None;
    for start in &starts {
        let out = nelder_mead::minimize(|p| root_space.objective(p), start, &bounds, 4000, 1e-10);
        if best.as_ref().map_or(true, |(v, _)| out.value < *v) {
            best = Some((out.value, out.best));
        }
    }
    let (_, best_point) = best?;
    let centers: Vec<C64> = (0..m)
        .map(|j| C64::new(best_point[2 * j], best_point[2 * j + 1]))
        .collect();
    let alpha0 = best_point[2 * m];

    // Realize the roots. Every admissible angle produces the same state,
    // but upstream amplitudes grow like t^{-(m-j)} and the herald
    // probability varies, so among angles whose amplitudes fit the
    // bounds keep the most probable realization. The Fock root z₀ is
    // angle-dependent, so the reference angles come first.
    let build_point = |theta_map: f64, alphas: &[C64]| -> Vec<f64> {
        space
            .free_parameters()
            .iter()
            .map(|p| match *p {
                FreeParameter::Theta(_) => theta_map,
                FreeParameter::AlphaRe(k) => alphas[k].re,
                FreeParameter::AlphaIm(k) => alphas[k].im,
                FreeParameter::Alpha0 => alpha0,
                FreeParameter::GammaRe => gamma.re,
                FreeParameter::GammaIm => gamma.im,
            })
            .collect()
    };
    let mut fallback: Option<Vec<f64>> = None;
    let mut best_fit: Option<(f64, Vec<f64>)> = None;
    for theta_map in [theta0, 0.7, 0.55, 0.4, 0.3, 0.2, 0.12] {
        let forms_map = cascade_forms(m, theta_map);
        let Some(x) = solve_substitutions(&forms_map, &centers) else {
            continue;
        };
        let alphas: Vec<C64> = (0..m)
            .map(|k| x[k].conj() - gamma * forms_map[0][k + 1])
            .collect();
        let worst = alphas
            .iter()
            .flat_map(|a| [a.re.abs(), a.im.abs()])
            .fold(0.0f64, f64::max);
        let point = build_point(theta_map, &alphas);
        if fallback.is_none() {
            fallback = Some(point.clone());
        }
        if worst > alpha_bound {
            continue;
        }
        let prob = crate::scheme::run_scheme(&space.materialize(&point), None)
            .map(|r| r.success_probability)
            .unwrap_or(0.0);
        let better = match (&best_fit, k0) {
            // for a Fock input only the reference angles realize the
            // optimized z₀; take the first fitting angle
            (Some(_), k) if k > 0 => false,
            (Some((p, _)), _) => prob > *p,
            (None, _) => true,
        };
        if better {
            best_fit = Some((prob, point));
        }
    }
    let point = best_fit.map(|(_, p)| p).or(fallback)?;
    Some(space.clamped(point))
}
