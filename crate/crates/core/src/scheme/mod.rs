//! Exact simulation of the conditional linear-optical black box: a main
//! mode mixed sequentially with m auxiliary Fock-state modes on beam
//! splitters, auxiliary displacements, vacuum detection on every
//! auxiliary mode, and a final displacement on the main mode.
//!
//! Auxiliary mode k is touched by exactly one beam splitter and then
//! measured, so it is displaced and projected immediately after its beam
//! splitter and dropped. Operators on disjoint modes commute, so this
//! sequential contraction reproduces the all-beam-splitters-first
//! ordering while keeping memory at one two-mode amplitude matrix.

mod analytic;
mod oracle;

pub use analytic::{analytic_conditional_m1, analytic_conditional_m2};
pub use oracle::polynomial_oracle;

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::cat::{kitten_two_term_vector, scs_vector, CatSpec, Parity};
use crate::error::{Error, Result};
use crate::fock::{
    self, apply_matrix, coherent_vector, displacement_matrix, fidelity_pure, FockVector,
    SqrtFactorials,
};

/// Success probabilities below this threshold count as a vanished
/// conditional amplitude, not a valid (zero-probability) result.
pub const ZERO_PROBABILITY_THRESHOLD: f64 = 1e-300;

/// Kitten amplitudes above this draw a validation warning; the scheme is
/// intended for kittens, not full-grown cats, on the input side.
pub const KITTEN_WARN_THRESHOLD: f64 = 1.5;

/// The state fed into the main mode.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    Vacuum,
    Fock {
        photons: usize,
    },
    Coherent {
        gamma: C64,
    },
    Kitten {
        beta_in: f64,
        parity: Parity,
        /// Use the vacuum-plus-two-photon (or one-plus-three) shorthand
        /// instead of the exact two-coherent-state superposition.
        two_term: bool,
    },
}

impl InputSpec {
    /// Largest coherent-like amplitude the input carries (drives cutoffs).
    pub fn magnitude(&self) -> f64 {
        match self {
            InputSpec::Vacuum | InputSpec::Fock { .. } => 0.0,
            InputSpec::Coherent { gamma } => gamma.norm(),
            InputSpec::Kitten { beta_in, .. } => *beta_in,
        }
    }

    /// Photons the input contributes to the scheme's photon budget.
    pub fn photons(&self) -> usize {
        match self {
            InputSpec::Fock { photons } => *photons,
            _ => 0,
        }
    }

    pub fn vector(&self, cutoff: usize) -> Result<FockVector> {
        match self {
            InputSpec::Vacuum => Ok(FockVector::vacuum(cutoff)),
            InputSpec::Fock { photons } => FockVector::number_state(*photons, cutoff),
            InputSpec::Coherent { gamma } => coherent_vector(*gamma, cutoff),
            InputSpec::Kitten {
                beta_in,
                parity,
                two_term,
            } => {
                if *two_term {
                    kitten_two_term_vector(*beta_in, *parity, cutoff)
                } else {
                    scs_vector(&CatSpec::new(*beta_in, *parity)?, cutoff)
                }
            }
        }
    }
}

/// Cutoff choice for a scheme run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffSpec {
    /// ceil(M² + 6M + 20) from the largest amplitude in play.
    Auto,
    /// Caller-fixed base cutoff (the photon budget is still added on top).
    Explicit(usize),
}

/// Full description of one black-box configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub input: InputSpec,
    /// Photons k_1..k_m fed into the auxiliary modes; length sets m.
    pub aux_photons: Vec<usize>,
    /// Beam-splitter angles θ_k with t_k = cos θ_k, r_k = sin θ_k.
    pub bs_theta: Vec<f64>,
    /// Displacement amplitudes α_k applied to the auxiliary modes.
    pub aux_alpha: Vec<C64>,
    /// Final main-mode displacement, applied as D₀(i·alpha0).
    pub alpha0: f64,
    pub cutoff: CutoffSpec,
}

impl SchemeConfig {
    pub fn mode_count(&self) -> usize {
        self.aux_photons.len()
    }

    /// Total photon budget n: auxiliary photons plus Fock-input photons.
    pub fn photon_budget(&self) -> usize {
        self.aux_photons.iter().sum::<usize>() + self.input.photons()
    }

    /// Structural checks; returns advisory warnings on success.
    pub fn validate(&self) -> Result<Vec<String>> {
        let m = self.mode_count();
        if m == 0 {
            return Err(Error::InvalidConfig(
                "scheme needs at least one auxiliary mode".into(),
            ));
        }
        if self.bs_theta.len() != m || self.aux_alpha.len() != m {
            return Err(Error::InvalidConfig(format!(
                "m={} auxiliary modes but {} angles and {} displacements",
                m,
                self.bs_theta.len(),
                self.aux_alpha.len()
            )));
        }
        for (name, ok) in [
            ("bs_theta", self.bs_theta.iter().all(|x| x.is_finite())),
            ("alpha0", self.alpha0.is_finite()),
            (
                "aux_alpha",
                self.aux_alpha
                    .iter()
                    .all(|a| a.re.is_finite() && a.im.is_finite()),
            ),
        ] {
            if !ok {
                return Err(Error::InvalidConfig(format!("non-finite {name}")));
            }
        }
        let mut warnings = Vec::new();
        if let InputSpec::Kitten { beta_in, .. } = &self.input {
            if !(*beta_in > 0.0) {
                return Err(Error::InvalidConfig("kitten needs beta_in > 0".into()));
            }
            if *beta_in > KITTEN_WARN_THRESHOLD {
                warnings.push(format!(
                    "kitten amplitude beta_in={beta_in} exceeds the kitten regime (<= {KITTEN_WARN_THRESHOLD})"
                ));
            }
        }
        Ok(warnings)
    }

    /// Base truncation before the photon budget is stacked on top.
    pub fn base_cutoff(&self, target: Option<&CatSpec>) -> usize {
        match self.cutoff {
            CutoffSpec::Explicit(n) => n,
            CutoffSpec::Auto => {
                let mut m = self.input.magnitude();
                for a in &self.aux_alpha {
                    m = m.max(a.norm());
                }
                m = m.max(self.alpha0.abs());
                if let Some(t) = target {
                    m = m.max(t.a_mag());
                }
                fock::auto_cutoff(m)
            }
        }
    }

    /// Cutoff of the emitted conditional state.
    pub fn final_cutoff(&self, target: Option<&CatSpec>) -> usize {
        self.base_cutoff(target) + self.aux_photons.iter().sum::<usize>()
    }
}

/// Conditional output of a scheme run.
#[derive(Debug, Clone)]
pub struct ConditionalResult {
    /// Normalized main-mode state heralded by all-vacuum detection.
    pub state: FockVector,
    /// Probability of that detection pattern.
    pub success_probability: f64,
    /// Fidelity with the requested target cat, when one was supplied.
    pub fidelity: Option<f64>,
}

/// Apply the two-mode beam-splitter unitary (a₀† → t·a₀† + r·a_k†,
/// a_k† → −r·a₀† + t·a_k†, t = cos θ, r = sin θ) to a joint amplitude
/// matrix c[n₀][n_k].
///
/// The unitary conserves total photon number, so any support on
/// n₀ + n_k > cutoff cannot be represented and is an error.
pub fn apply_beam_splitter(joint: &Array2<C64>, theta: f64) -> Result<Array2<C64>> {
    let dim = joint.nrows();
    if joint.ncols() != dim || dim == 0 {
        return Err(Error::InvalidConfig(
            "joint amplitude matrix must be square and non-empty".into(),
        ));
    }
    let n_max = dim - 1;
    if n_max > 168 {
        return Err(Error::InvalidConfig(
            "beam-splitter cutoff above 168 exceeds the factorial table".into(),
        ));
    }
    let max_abs = joint.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    for m in 0..dim {
        for n in 0..dim {
            if m + n > n_max && joint[(m, n)].norm() > 1e-13 * max_abs {
                return Err(Error::CutoffTooSmall {
                    needed: m + n,
                    got: n_max,
                    context: "joint support touches the total-photon boundary",
                });
            }
        }
    }

    let t = theta.cos();
    let r = theta.sin();
    let sqf = SqrtFactorials::up_to(n_max);
    let fact: Vec<f64> = {
        let mut f = Vec::with_capacity(dim);
        let mut acc = 1.0;
        for k in 0..dim {
            if k > 0 {
                acc *= k as f64;
            }
            f.push(acc);
        }
        f
    };
    let mut t_pow = vec![1.0f64; 2 * dim];
    let mut r_pow = vec![1.0f64; 2 * dim];
    for k in 1..2 * dim {
        t_pow[k] = t_pow[k - 1] * t;
        r_pow[k] = r_pow[k - 1] * r;
    }

    let mut out = Array2::from_elem((dim, dim), C64::new(0.0, 0.0));
    for m in 0..dim {
        for n in 0..dim - m {
            let c = joint[(m, n)];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let s = m + n;
            let inv_in = 1.0 / (sqf.sqrt(m) * sqf.sqrt(n));
            for p in 0..=s {
                // Σ_i C(m,i) C(n,p−i) t^{2i+n−p} (−1)^{p−i} r^{m+p−2i}
                let i_lo = p.saturating_sub(n);
                let i_hi = m.min(p);
                let mut acc = 0.0f64;
                for i in i_lo..=i_hi {
                    let j = p - i;
                    let binom =
                        fact[m] / (fact[i] * fact[m - i]) * fact[n] / (fact[j] * fact[n - j]);
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    acc += binom * sign * t_pow[2 * i + n - p] * r_pow[m + p - 2 * i];
                }
                let coef = acc * sqf.sqrt(p) * sqf.sqrt(s - p) * inv_in;
                out[(p, s - p)] += c * coef;
            }
        }
    }
    Ok(out)
}

/// Contract ⟨0|D(α) against mode k of a joint matrix, dropping the mode:
/// out[n₀] = Σ_q ⟨0|D(α)|q⟩ c[n₀][q], with ⟨0|D(α)|q⟩ = e^{−|α|²/2}(−α*)^q/√(q!)
/// (the ⟨−α| row of the displacement operator).
fn project_vacuum_displaced(joint: &Array2<C64>, alpha: C64) -> Vec<C64> {
    let dim = joint.nrows();
    let sqf = SqrtFactorials::up_to(dim - 1);
    let pref = (-0.5 * alpha.norm_sqr()).exp();
    let mut weights = Vec::with_capacity(dim);
    let mut pw = C64::new(1.0, 0.0);
    for q in 0..dim {
        if q > 0 {
            pw *= -alpha.conj();
        }
        weights.push(pw * (pref / sqf.sqrt(q)));
    }
    (0..dim)
        .map(|n0| {
            let mut acc = C64::new(0.0, 0.0);
            for (q, w) in weights.iter().enumerate() {
                acc += *w * joint[(n0, q)];
            }
            acc
        })
        .collect()
}

/// Run the black box: sequential beam splitters, per-mode displacement
/// plus vacuum projection, final main-mode displacement D₀(iα₀).
///
/// The success probability is the squared norm of the unnormalized
/// heralded amplitude, accumulated over all m projections; the final
/// displacement cannot change it.
pub fn run_scheme(config: &SchemeConfig, target: Option<&CatSpec>) -> Result<ConditionalResult> {
    config.validate()?;
    let base = config.base_cutoff(target);
    let mut cur_cut = base;
    let mut psi: Vec<C64> = config.input.vector(base)?.amplitudes().to_vec();

    for k in 0..config.mode_count() {
        let kk = config.aux_photons[k];
        let new_cut = cur_cut + kk;
        let mut joint = Array2::from_elem((new_cut + 1, new_cut + 1), C64::new(0.0, 0.0));
        for (n0, amp) in psi.iter().enumerate() {
            joint[(n0, kk)] = *amp;
        }
        let mixed = apply_beam_splitter(&joint, config.bs_theta[k])?;
        psi = project_vacuum_displaced(&mixed, config.aux_alpha[k]);
        cur_cut = new_cut;
    }

    let success_probability: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
    if !(success_probability >= ZERO_PROBABILITY_THRESHOLD) {
        return Err(Error::ZeroProbability);
    }

    let unnorm = FockVector::from_amplitudes(psi)?;
    let displaced = if config.alpha0 == 0.0 {
        unnorm
    } else {
        let d0 = displacement_matrix(C64::new(0.0, config.alpha0), cur_cut)?;
        apply_matrix(&d0, &unnorm)?
    };
    let state = displaced.normalized()?;

    let fidelity = match target {
        Some(spec) => Some(fidelity_pure(&state, &scs_vector(spec, cur_cut)?)?),
        None => None,
    };
    Ok(ConditionalResult {
        state,
        success_probability,
        fidelity,
    })
}
