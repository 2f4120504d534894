//! Even/odd Schrödinger cat states, their displaced-basis representation,
//! cat qudits, and the qudit root representation.
//!
//! An even/odd cat is N_±(|−β⟩ ± |β⟩). Expanded over the displaced number
//! basis {D(iα)|k⟩} its amplitudes carry a closed trigonometric form; the
//! (n+1)-term truncation of that expansion is the cat qudit, the best
//! degree-n approximation of the cat in that basis. The qudit is equally
//! characterized by the complex roots of its creation-operator polynomial.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    self, coherent_vector, displacement_matrix, FockVector, SqrtFactorials, TAIL_TOLERANCE,
};
use crate::poly::{CreationPolynomial, RootSet};

/// Threshold below which the trigonometric factor of the highest retained
/// term counts as vanished (the monic normalization divides by it).
const LEADING_TRIG_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// cos for even cats, sin for odd ones.
    fn trig(self, x: f64) -> f64 {
        match self {
            Parity::Even => x.cos(),
            Parity::Odd => x.sin(),
        }
    }
}

/// Target cat parameters: amplitude β > 0, parity, and the real
/// representation displacement α (α = 0 is the plain Fock basis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSpec {
    pub beta: f64,
    pub parity: Parity,
    pub alpha: f64,
}

impl CatSpec {
    pub fn new(beta: f64, parity: Parity) -> Result<Self> {
        Self::with_alpha(beta, parity, 0.0)
    }

    pub fn with_alpha(beta: f64, parity: Parity, alpha: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "cat spec needs finite beta > 0 and finite alpha, got beta={beta}, alpha={alpha}"
            )));
        }
        Ok(CatSpec {
            beta,
            parity,
            alpha,
        })
    }

    /// 𝔞 = √(α² + β²)
    pub fn a_mag(&self) -> f64 {
        self.alpha.hypot(self.beta)
    }

    /// φ = arctan(α/β)
    pub fn phi(&self) -> f64 {
        (self.alpha / self.beta).atan()
    }

    /// Phase angle of the k-th displaced-basis term: αβ + k(φ + π/2).
    fn theta(&self, k: usize) -> f64 {
        self.alpha * self.beta + k as f64 * (self.phi() + std::f64::consts::FRAC_PI_2)
    }

    /// N_± = (2(1 ± e^{−2β²}))^{−1/2}
    pub fn normalization(&self) -> f64 {
        let e = (-2.0 * self.beta * self.beta).exp();
        match self.parity {
            Parity::Even => (2.0 * (1.0 + e)).powf(-0.5),
            // 1 − e^{−2β²} via expm1 to survive β → 0
            Parity::Odd => (2.0 * (-(-2.0 * self.beta * self.beta).exp_m1())).powf(-0.5),
        }
    }
}

/// The cat state N_±(|−β⟩ ± |β⟩) in the Fock basis.
///
/// Even (odd) cats have support on even (odd) photon numbers only; the
/// opposite-parity amplitudes cancel exactly.
pub fn scs_vector(spec: &CatSpec, cutoff: usize) -> Result<FockVector> {
    let minus = coherent_vector(C64::new(-spec.beta, 0.0), cutoff)?;
    let plus = coherent_vector(C64::new(spec.beta, 0.0), cutoff)?;
    let sign = match spec.parity {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    };
    let n_factor = spec.normalization();
    let amps: Vec<C64> = minus
        .amplitudes()
        .iter()
        .zip(plus.amplitudes())
        .map(|(m, p)| (m + sign * p) * n_factor)
        .collect();
    let vec = FockVector::from_amplitudes(amps)?;
    let tail = 1.0 - vec.norm_sqr();
    if tail > TAIL_TOLERANCE {
        return Err(Error::CutoffTooSmall {
            needed: fock::auto_cutoff(spec.beta),
            got: cutoff,
            context: "cat-state coherent tail",
        });
    }
    vec.normalized()
}

/// Amplitudes a_k of the cat over the displaced basis {|k, iα⟩}:
/// a_k^{(+)} = 2(i𝔞)^k/√k! · cos(αβ + k(φ+π/2)) and
/// a_k^{(−)} = i·2(i𝔞)^k/√k! · sin(αβ + k(φ+π/2)), for k = 0..=n_max.
pub fn alpha_rep_amplitudes(spec: &CatSpec, n_max: usize) -> Vec<C64> {
    let facts = SqrtFactorials::up_to(n_max);
    let ia = C64::new(0.0, spec.a_mag());
    let front = match spec.parity {
        Parity::Even => C64::new(2.0, 0.0),
        Parity::Odd => C64::new(0.0, 2.0),
    };
    let mut power = C64::new(1.0, 0.0);
    (0..=n_max)
        .map(|k| {
            if k > 0 {
                power *= ia;
            }
            front * power * (spec.parity.trig(spec.theta(k)) / facts.sqrt(k))
        })
        .collect()
}

/// Squared norm of the first n+1 displaced-basis terms,
/// Σ_{k≤n} 𝔞^{2k}/k! · trig²(θ_k); the inverse square of the qudit
/// normalization factor N_n^{(±)}.
fn qudit_weight(spec: &CatSpec, n: usize) -> f64 {
    let mut sum = 0.0;
    let a2 = spec.a_mag() * spec.a_mag();
    let mut term = 1.0; // 𝔞^{2k}/k!
    for k in 0..=n {
        if k > 0 {
            term *= a2 / k as f64;
        }
        let t = spec.parity.trig(spec.theta(k));
        sum += term * t * t;
    }
    sum
}

/// The cat qudit |Ψ_n^{(±)}⟩: the normalized (n+1)-term truncation of the
/// cat over {|k, iα⟩}, expressed back in the Fock basis.
pub fn scq_vector(n: usize, spec: &CatSpec, cutoff: usize) -> Result<FockVector> {
    if n > cutoff {
        return Err(Error::CutoffTooSmall {
            needed: n,
            got: cutoff,
            context: "qudit order exceeds cutoff",
        });
    }
    let weight = qudit_weight(spec, n);
    if weight <= 0.0 {
        return Err(Error::DegenerateQudit);
    }
    let norm = weight.sqrt();
    let facts = SqrtFactorials::up_to(n);
    let ia = C64::new(0.0, spec.a_mag());
    let mut coeffs = vec![C64::new(0.0, 0.0); cutoff + 1];
    let mut power = C64::new(1.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            power *= ia;
        }
        coeffs[k] = power * (spec.parity.trig(spec.theta(k)) / (facts.sqrt(k) * norm));
    }
    let coeff_vec = FockVector::from_amplitudes(coeffs)?;
    displace_and_check(coeff_vec, spec.alpha, cutoff)
}

/// Apply D(iα), verify the truncation tail, renormalize.
fn displace_and_check(vec: FockVector, alpha: f64, cutoff: usize) -> Result<FockVector> {
    let displaced = if alpha == 0.0 {
        vec
    } else {
        let d = displacement_matrix(C64::new(0.0, alpha), cutoff)?;
        fock::apply_matrix(&d, &vec)?
    };
    let tail = 1.0 - displaced.norm_sqr();
    if tail > TAIL_TOLERANCE {
        return Err(Error::CutoffTooSmall {
            needed: cutoff + 1,
            got: cutoff,
            context: "displaced qudit support leaks past the cutoff",
        });
    }
    displaced.normalized()
}

/// The degree-n qudit polynomial f_n^{(±)}(z) with coefficient
/// n!(i𝔞)^{k−n} trig(θ_k) / (k! trig(θ_n)) at z^k; monic by construction.
pub fn scq_polynomial(n: usize, spec: &CatSpec) -> Result<CreationPolynomial> {
    let lead = spec.parity.trig(spec.theta(n));
    if lead.abs() < LEADING_TRIG_TOLERANCE {
        return Err(Error::LeadingTermVanishes);
    }
    let ia = C64::new(0.0, spec.a_mag());
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    for k in 0..=n {
        // n!/k! and (i𝔞)^{k−n} = (i𝔞)^{-(n-k)}
        let mut fact_ratio = 1.0;
        for j in k + 1..=n {
            fact_ratio *= j as f64;
        }
        let mut ia_pow = C64::new(1.0, 0.0);
        for _ in 0..n - k {
            ia_pow *= ia;
        }
        coeffs[k] = ia_pow.inv() * (fact_ratio * spec.parity.trig(spec.theta(k)) / lead);
    }
    CreationPolynomial::new(coeffs)
}

/// Rebuild a qudit from its root representation: apply Π_j (a† − z_j) to
/// vacuum, displace by D(iα), normalize.
pub fn scq_from_roots(
    roots: &RootSet,
    spec: &CatSpec,
    n: usize,
    cutoff: usize,
) -> Result<FockVector> {
    if roots.roots.len() != n {
        return Err(Error::InvalidConfig(format!(
            "expected {n} roots, got {}",
            roots.roots.len()
        )));
    }
    if n > cutoff {
        return Err(Error::CutoffTooSmall {
            needed: n,
            got: cutoff,
            context: "root count exceeds cutoff",
        });
    }
    let monic = CreationPolynomial::from_roots(&roots.roots);
    let facts = SqrtFactorials::up_to(n);
    let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
    for k in 0..=n {
        // (a†)^k |0⟩ = √(k!) |k⟩
        amps[k] = monic.coefficient(k) * facts.sqrt(k);
    }
    let vec = FockVector::from_amplitudes(amps)?.normalized()?;
    displace_and_check(vec, spec.alpha, cutoff)
}

/// Fidelity of the degree-n qudit with its parent cat, by the closed form
/// F = 4 N_±² e^{−𝔞²} Σ_{k≤n} (𝔞^{2k}/k!) trig²(θ_k).
///
/// This is the best fidelity any state confined to span{|k, iα⟩}_{k≤n}
/// can reach, hence the "genuine qudit" upper bound for schemes with n
/// photons to spend.
pub fn scq_cat_fidelity(n: usize, spec: &CatSpec) -> Result<f64> {
    let weight = qudit_weight(spec, n);
    if weight <= 0.0 {
        return Err(Error::DegenerateQudit);
    }
    let nf = spec.normalization();
    let a2 = spec.a_mag() * spec.a_mag();
    Ok(4.0 * nf * nf * (-a2).exp() * weight)
}

/// Maximize [`scq_cat_fidelity`] over the representation displacement α.
/// Returns (fidelity, argmax α). Scans α ∈ [0, `alpha_max`] (the bound is
/// symmetric in α) and refines the best bracket by golden section.
pub fn alpha_maximized_scq_fidelity(
    n: usize,
    beta: f64,
    parity: Parity,
    alpha_max: f64,
) -> Result<(f64, f64)> {
    let eval = |alpha: f64| -> f64 {
        CatSpec::with_alpha(beta, parity, alpha)
            .ok()
            .and_then(|s| scq_cat_fidelity(n, &s).ok())
            .unwrap_or(0.0)
    };
    let steps = 400;
    let mut best = (eval(0.0), 0.0);
    let mut samples = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let alpha = alpha_max * i as f64 / steps as f64;
        let f = eval(alpha);
        samples.push((alpha, f));
        if f > best.0 {
            best = (f, alpha);
        }
    }
    // golden-section refinement of every interior local maximum
    let phi_inv = 0.618_033_988_749_894_9;
    for w in samples.windows(3) {
        let (al, fl) = w[0];
        let (am, fm) = w[1];
        let (ar, fr) = w[2];
        if fm < fl || fm < fr {
            continue;
        }
        let (mut a, mut b) = (al, ar);
        let mut c = b - phi_inv * (b - a);
        let mut d = a + phi_inv * (b - a);
        let (mut fc, mut fd) = (eval(c), eval(d));
        for _ in 0..80 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - phi_inv * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi_inv * (b - a);
                fd = eval(d);
            }
            if (b - a).abs() < 1e-12 {
                break;
            }
        }
        let alpha_star = 0.5 * (a + b);
        let f_star = eval(alpha_star);
        if f_star > best.0 {
            best = (f_star, alpha_star);
        }
        let _ = (am, fm);
    }
    Ok(best)
}

/// Two-term kitten approximations |0⟩ + β²/√2 |2⟩ (even) and
/// |1⟩ + β²/√6 |3⟩ (odd), normalized. Comparison aid for the exact kitten.
pub fn kitten_two_term_vector(beta_in: f64, parity: Parity, cutoff: usize) -> Result<FockVector> {
    let needed = match parity {
        Parity::Even => 2,
        Parity::Odd => 3,
    };
    if cutoff < needed {
        return Err(Error::CutoffTooSmall {
            needed,
            got: cutoff,
            context: "two-term kitten support",
        });
    }
    let b2 = beta_in * beta_in;
    let mut amps = vec![C64::new(0.0, 0.0); cutoff + 1];
    match parity {
        Parity::Even => {
            amps[0] = C64::new(1.0, 0.0);
            amps[2] = C64::new(b2 / 2.0f64.sqrt(), 0.0);
        }
        Parity::Odd => {
            amps[1] = C64::new(1.0, 0.0);
            amps[3] = C64::new(b2 / 6.0f64.sqrt(), 0.0);
        }
    }
    FockVector::from_amplitudes(amps)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{displaced_number_state, fidelity_pure, inner_product};
    use crate::poly::{max_pairing_distance, polynomial_roots};
    use approx::assert_abs_diff_eq;

    #[test]
    fn even_cat_has_even_support_only() {
        let spec = CatSpec::new(2.0, Parity::Even).unwrap();
        let v = scs_vector(&spec, 50).unwrap();
        assert_eq!(v.amplitude(1), C64::new(0.0, 0.0));
        let odd_mass: f64 = (0..=50)
            .filter(|n| n % 2 == 1)
            .map(|n| v.amplitude(n).norm_sqr())
            .sum();
        assert_eq!(odd_mass, 0.0);
    }

    #[test]
    fn odd_cat_has_odd_support_only() {
        let spec = CatSpec::new(1.3, Parity::Odd).unwrap();
        let v = scs_vector(&spec, 40).unwrap();
        let even_mass: f64 = (0..=40)
            .filter(|n| n % 2 == 0)
            .map(|n| v.amplitude(n).norm_sqr())
            .sum();
        assert_eq!(even_mass, 0.0);
    }

    #[test]
    fn small_beta_limits() {
        let even = scs_vector(&CatSpec::new(1e-3, Parity::Even).unwrap(), 25).unwrap();
        let vac = FockVector::number_state(0, 25).unwrap();
        assert!(fidelity_pure(&even, &vac).unwrap() > 1.0 - 1e-9);

        let odd = scs_vector(&CatSpec::new(1e-3, Parity::Odd).unwrap(), 25).unwrap();
        let one = FockVector::number_state(1, 25).unwrap();
        assert!(fidelity_pure(&odd, &one).unwrap() > 1.0 - 1e-9);
    }

    #[test]
    fn even_odd_cats_orthogonal() {
        let even = scs_vector(&CatSpec::new(2.0, Parity::Even).unwrap(), 50).unwrap();
        let odd = scs_vector(&CatSpec::new(2.0, Parity::Odd).unwrap(), 50).unwrap();
        assert!(inner_product(&even, &odd).norm() < 1e-10);
    }

    #[test]
    fn cat_vs_coherent_fidelity_closed_form() {
        // |⟨β|β₊⟩|² = N_+²(1 + e^{−2β²})² = (1 + e^{−2β²})/2
        let beta = 2.0;
        let spec = CatSpec::new(beta, Parity::Even).unwrap();
        let cat = scs_vector(&spec, 50).unwrap();
        let coh = coherent_vector(C64::new(beta, 0.0), 50).unwrap();
        let expect = (1.0 + (-2.0 * beta * beta).exp()) / 2.0;
        assert_abs_diff_eq!(
            fidelity_pure(&cat, &coh).unwrap(),
            expect,
            epsilon = 1e-11
        );
    }

    #[test]
    fn alpha_rep_first_terms() {
        let spec = CatSpec::new(1.0, Parity::Even).unwrap();
        let a = alpha_rep_amplitudes(&spec, 4);
        assert_abs_diff_eq!(a[0].re, 2.0, epsilon = 1e-15);
        assert!(a[1].norm() < 1e-15);

        let odd = CatSpec::new(1.7, Parity::Odd).unwrap();
        let b = alpha_rep_amplitudes(&odd, 4);
        assert_eq!(b[0], C64::new(0.0, 0.0));
    }

    #[test]
    fn alpha_rep_matches_displaced_overlaps() {
        // a_k ∝ ⟨k, iα|β_±⟩ with common factor N_± e^{−𝔞²/2}
        for (alpha, beta, parity) in [
            (1.0, 2.0, Parity::Even),
            (0.5, 1.5, Parity::Odd),
            (2.0, 1.0, Parity::Even),
        ] {
            let spec = CatSpec::with_alpha(beta, parity, alpha).unwrap();
            let cutoff = fock::auto_cutoff(spec.a_mag());
            let cat = scs_vector(&spec, cutoff).unwrap();
            let reps = alpha_rep_amplitudes(&spec, 6);
            let common = spec.normalization() * (-0.5 * spec.a_mag().powi(2)).exp();
            for (k, &a_k) in reps.iter().enumerate() {
                let basis = displaced_number_state(k, C64::new(0.0, alpha), cutoff).unwrap();
                let overlap = inner_product(&basis, &cat);
                let expect = a_k * common;
                assert!(
                    (overlap - expect).norm() < 1e-9,
                    "k={k} α={alpha} β={beta}: {overlap} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn normalization_identity() {
        // N_±² e^{−𝔞²} Σ|a_k|² = 1
        for &(alpha, beta) in &[(0.0, 2.0), (1.0, 2.0), (2.0, 1.0)] {
            for parity in [Parity::Even, Parity::Odd] {
                let spec = CatSpec::with_alpha(beta, parity, alpha).unwrap();
                let n_max = fock::auto_cutoff(spec.a_mag());
                let sum: f64 = alpha_rep_amplitudes(&spec, n_max)
                    .iter()
                    .map(|a| a.norm_sqr())
                    .sum();
                let nf = spec.normalization();
                let total = nf * nf * (-spec.a_mag().powi(2)).exp() * sum;
                assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn scq_zero_order_is_vacuum() {
        let spec = CatSpec::new(1.2, Parity::Even).unwrap();
        let q = scq_vector(0, &spec, 30).unwrap();
        assert_abs_diff_eq!(q.amplitude(0).norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_odd_qudit() {
        let spec = CatSpec::new(1.0, Parity::Odd).unwrap();
        assert!(matches!(
            scq_vector(0, &spec, 30),
            Err(Error::DegenerateQudit)
        ));
    }

    #[test]
    fn scq_fidelity_monotone_and_high() {
        let spec = CatSpec::new(2.0, Parity::Even).unwrap();
        let cutoff = fock::auto_cutoff(2.0);
        let cat = scs_vector(&spec, cutoff).unwrap();
        let mut prev = 0.0;
        for n in (0..=12).step_by(2) {
            let q = scq_vector(n, &spec, cutoff).unwrap();
            let f = fidelity_pure(&q, &cat).unwrap();
            assert!(f + 1e-12 >= prev, "fidelity dropped at n={n}");
            prev = f;
        }
        assert!(prev > 0.999);
    }

    #[test]
    fn scq_closed_form_fidelity_matches_vectors() {
        for (n, alpha, beta, parity) in [
            (4, 0.0, 2.0, Parity::Even),
            (5, 0.0, 2.0, Parity::Odd),
            (6, 1.0, 1.5, Parity::Even),
            (7, 0.8, 2.5, Parity::Odd),
        ] {
            let spec = CatSpec::with_alpha(beta, parity, alpha).unwrap();
            let cutoff = fock::auto_cutoff(spec.a_mag()) + n;
            let cat = scs_vector(&spec, cutoff).unwrap();
            let q = scq_vector(n, &spec, cutoff).unwrap();
            let via_vectors = fidelity_pure(&q, &cat).unwrap();
            let closed = scq_cat_fidelity(n, &spec).unwrap();
            assert_abs_diff_eq!(via_vectors, closed, epsilon = 1e-9);
        }
    }

    #[test]
    fn max_alpha_qudit_fidelity_exceeds_098() {
        // n=10 even qudit against the β=2 cat
        let (f, alpha) = alpha_maximized_scq_fidelity(10, 2.0, Parity::Even, 4.0).unwrap();
        assert!(f > 0.98, "got {f} at α={alpha}");
        let fixed = scq_cat_fidelity(10, &CatSpec::new(2.0, Parity::Even).unwrap()).unwrap();
        assert!(f + 1e-12 >= fixed);
    }

    #[test]
    fn polynomial_is_monic_with_zero_constant_for_odd() {
        let spec = CatSpec::new(1.5, Parity::Odd).unwrap();
        let p = scq_polynomial(5, &spec).unwrap();
        assert_abs_diff_eq!(p.coefficient(5).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.coefficient(5).im, 0.0, epsilon = 1e-15);
        // one root of the odd qudit polynomial is always zero at α = 0
        assert_eq!(p.coefficient(0), C64::new(0.0, 0.0));
    }

    #[test]
    fn leading_term_vanishes_for_wrong_parity_order() {
        // at α = 0 the even polynomial needs even n
        let spec = CatSpec::new(1.5, Parity::Even).unwrap();
        assert!(matches!(
            scq_polynomial(5, &spec),
            Err(Error::LeadingTermVanishes)
        ));
    }

    #[test]
    fn even_n4_polynomial_matches_substitution() {
        // replacing a† -> z in the qudit expansion and dividing by the
        // leading amplitude must reproduce the polynomial coefficients
        let spec = CatSpec::new(1.5, Parity::Even).unwrap();
        let n = 4;
        let p = scq_polynomial(n, &spec).unwrap();
        let facts = SqrtFactorials::up_to(n);
        let ia = C64::new(0.0, spec.a_mag());
        // term_k = (i𝔞)^k/√k! trig(θ_k); polynomial coefficient of z^k is
        // term_k √(k!) ... / (term_n √(n!)) with the (a†)^k|0⟩ = √(k!)|k⟩
        // factors folded in: term_k/k! / (term_n/n!)
        let term = |k: usize| -> C64 {
            let mut pw = C64::new(1.0, 0.0);
            for _ in 0..k {
                pw *= ia;
            }
            pw * (spec.parity.trig(spec.theta(k)) / (facts.sqrt(k) * facts.sqrt(k)))
        };
        let lead = term(n);
        for k in 0..=n {
            let expect = term(k) / lead;
            assert!(
                (p.coefficient(k) - expect).norm() < 1e-10,
                "k={k}: {} vs {expect}",
                p.coefficient(k)
            );
        }
    }

    #[test]
    fn analytic_roots_n4_even() {
        for beta in [1.0, 1.5, 2.5] {
            let spec = CatSpec::new(beta, Parity::Even).unwrap();
            let p = scq_polynomial(4, &spec).unwrap();
            let rs = polynomial_roots(&p).unwrap();
            let r1 = (2.0f64).sqrt() / beta * (3.0 + 3.0f64.sqrt()).sqrt();
            let r2 = (2.0f64).sqrt() / beta * (3.0 - 3.0f64.sqrt()).sqrt();
            let expected = [
                C64::new(0.0, r1),
                C64::new(0.0, -r1),
                C64::new(0.0, r2),
                C64::new(0.0, -r2),
            ];
            assert!(
                max_pairing_distance(&rs.roots, &expected).unwrap() < 1e-8,
                "β={beta}"
            );
        }
    }

    #[test]
    fn analytic_roots_n5_odd() {
        for beta in [1.0, 1.5, 2.5] {
            let spec = CatSpec::new(beta, Parity::Odd).unwrap();
            let p = scq_polynomial(5, &spec).unwrap();
            let rs = polynomial_roots(&p).unwrap();
            let w_plus = C64::new(-10.0, 2.0 * 5.0f64.sqrt()).sqrt() / beta;
            let w_minus = C64::new(-10.0, -2.0 * 5.0f64.sqrt()).sqrt() / beta;
            let expected = [
                C64::new(0.0, 0.0),
                w_plus,
                -w_plus,
                w_minus,
                -w_minus,
            ];
            assert!(
                max_pairing_distance(&rs.roots, &expected).unwrap() < 1e-8,
                "β={beta}"
            );
        }
    }

    #[test]
    fn single_zero_root_gives_one_photon() {
        let spec = CatSpec::new(1.0, Parity::Odd).unwrap();
        let rs = RootSet {
            roots: vec![C64::new(0.0, 0.0)],
            scale: C64::new(1.0, 0.0),
        };
        let v = scq_from_roots(&rs, &spec, 1, 20).unwrap();
        assert_abs_diff_eq!(v.amplitude(1).norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn root_round_trip_reconstructs_qudit() {
        for (alpha, beta) in [(0.0, 2.0), (1.0, 1.0), (1.0, 3.0)] {
            for parity in [Parity::Even, Parity::Odd] {
                for n in 1..=10 {
                    let spec = CatSpec::with_alpha(beta, parity, alpha).unwrap();
                    let p = match scq_polynomial(n, &spec) {
                        Ok(p) => p,
                        Err(Error::LeadingTermVanishes) => continue,
                        Err(e) => panic!("unexpected error: {e}"),
                    };
                    let roots = polynomial_roots(&p).unwrap();
                    let cutoff = fock::auto_cutoff(spec.a_mag()) + n;
                    let direct = scq_vector(n, &spec, cutoff).unwrap();
                    let rebuilt = scq_from_roots(&roots, &spec, n, cutoff).unwrap();
                    let f = fidelity_pure(&direct, &rebuilt).unwrap();
                    assert!(
                        f >= 1.0 - 1e-9,
                        "n={n} α={alpha} β={beta} {parity:?}: F={f}"
                    );
                }
            }
        }
    }

    #[test]
    fn displacement_conjugation_shifts_creation_operator() {
        // D(z*) a† D†(z*) = a† − z on a truncated block
        let z = C64::new(0.6, -0.9);
        let cutoff = 40;
        let d = displacement_matrix(z.conj(), cutoff).unwrap();
        let dinv = displacement_matrix(-z.conj(), cutoff).unwrap();
        let mut adag = ndarray::Array2::from_elem((cutoff + 1, cutoff + 1), C64::new(0.0, 0.0));
        for n in 0..cutoff {
            adag[(n + 1, n)] = C64::new(((n + 1) as f64).sqrt(), 0.0);
        }
        let lhs = d.dot(&adag).dot(&dinv);
        for m in 0..20 {
            for n in 0..20 {
                let rhs = adag[(m, n)]
                    - if m == n {
                        z
                    } else {
                        C64::new(0.0, 0.0)
                    };
                assert!(
                    (lhs[(m, n)] - rhs).norm() < 1e-8,
                    "element ({m},{n})"
                );
            }
        }
    }

    #[test]
    fn alpha_rep_consistency_with_displaced_projection() {
        // undisplacing the cat reproduces the a_k up to one global factor
        for &(alpha, beta) in &[(0.5, 1.5), (1.0, 2.0), (2.0, 1.0)] {
            for parity in [Parity::Even, Parity::Odd] {
                let spec = CatSpec::with_alpha(beta, parity, alpha).unwrap();
                let cutoff = fock::auto_cutoff(spec.a_mag());
                let cat = scs_vector(&spec, cutoff).unwrap();
                let undisp = displacement_matrix(C64::new(0.0, -alpha), cutoff).unwrap();
                let in_basis = fock::apply_matrix(&undisp, &cat).unwrap();
                let reps = alpha_rep_amplitudes(&spec, 8);
                let scale = in_basis.amplitude(0) / reps[0];
                for (k, &a_k) in reps.iter().enumerate().take(9) {
                    let got = in_basis.amplitude(k);
                    let expect = a_k * scale;
                    let denom = expect.norm().max(1e-6);
                    assert!(
                        (got - expect).norm() / denom < 1e-8,
                        "k={k} α={alpha} β={beta} {parity:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_term_kitten_tracks_exact_kitten() {
        let v = kitten_two_term_vector(0.5, Parity::Even, 30).unwrap();
        let exact = scs_vector(&CatSpec::new(0.5, Parity::Even).unwrap(), 30).unwrap();
        assert!(fidelity_pure(&v, &exact).unwrap() > 0.999);
    }
}
