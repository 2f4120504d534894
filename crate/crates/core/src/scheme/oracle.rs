//! Symbolic cross-check of the tensor-contraction simulator.
//!
//! The initial state is a creation-operator polynomial (times a possible
//! main-mode displacement) acting on multimode vacuum. Each beam splitter
//! is a linear substitution on creation operators, so the cascade maps
//! every initial operator to a linear form Σ_j u_j a_j†. Vacuum
//! projection of displaced auxiliary modes substitutes the scalar −B_k*
//! for a_k† (⟨0|D(B) = ⟨−B| and ⟨−B|f(a†) = f(−B*)⟨−B|), leaving a
//! univariate polynomial in a₀† whose coefficients give the conditional
//! amplitudes directly, with success probability
//! P = Π_k e^{−|B_k|²} · Σ_l |g_l|² l!.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{apply_matrix, displacement_matrix, FockVector, SqrtFactorials};

use super::{InputSpec, SchemeConfig};

/// Largest mode count the oracle accepts; it exists for cross-checks of
/// small schemes, not as a second production path.
const MAX_ORACLE_MODES: usize = 4;

fn conv(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Conditional state and success probability from the polynomial route.
pub fn polynomial_oracle(config: &SchemeConfig) -> Result<(FockVector, f64)> {
    config.validate()?;
    let m = config.mode_count();
    if m > MAX_ORACLE_MODES {
        return Err(Error::UnsupportedInput(format!(
            "polynomial oracle handles at most {MAX_ORACLE_MODES} auxiliary modes, got {m}"
        )));
    }
    let base = config.base_cutoff(None);

    // Input as D₀(d0) · q0(a₀†) |0⟩.
    let (d0, q0) = input_polynomial(&config.input, base)?;

    // Linear forms over (a₀†, a₁†, .., a_m†); forms[j] is the cascade
    // image of mode-j's creation operator.
    let mut forms: Vec<Vec<C64>> = (0..=m)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); m + 1];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();
    for k in 1..=m {
        let t = config.bs_theta[k - 1].cos();
        let r = config.bs_theta[k - 1].sin();
        for f in forms.iter_mut() {
            let f0 = f[0];
            let fk = f[k];
            f[0] = t * f0 - r * fk;
            f[k] = r * f0 + t * fk;
        }
    }

    // Total displacement per auxiliary mode: the applied α_k plus the
    // beam-split share of the input displacement.
    let mut phase = 0.0;
    let mut log_weight = 0.0;
    let mut subs = vec![C64::new(0.0, 0.0); m + 1];
    for k in 1..=m {
        let d_k = d0 * forms[0][k];
        let b_k = config.aux_alpha[k - 1] + d_k;
        phase += (config.aux_alpha[k - 1] * d_k.conj()).im;
        log_weight += -0.5 * b_k.norm_sqr();
        subs[k] = -b_k.conj();
    }
    let d_main = d0 * forms[0][0];

    // Reduce a linear form to (v·a₀† + w) under the substitutions.
    let affine = |form: &[C64]| -> [C64; 2] {
        let mut w = C64::new(0.0, 0.0);
        for k in 1..=m {
            w += form[k] * subs[k];
        }
        [w, form[0]]
    };

    // q0 evaluated at the image of a₀†, by accumulating powers.
    let arg0 = affine(&forms[0]);
    let mut poly = vec![q0[0]];
    let mut power = vec![C64::new(1.0, 0.0)];
    for &qn in q0.iter().skip(1) {
        power = conv(&power, &arg0);
        if poly.len() < power.len() {
            poly.resize(power.len(), C64::new(0.0, 0.0));
        }
        for (dst, src) in poly.iter_mut().zip(power.iter()) {
            *dst += qn * src;
        }
    }

    // Auxiliary factors (image of a_k†)^{k_k} / √(k_k!).
    let sqf_aux = SqrtFactorials::up_to(config.aux_photons.iter().max().copied().unwrap_or(0));
    for k in 1..=m {
        let kk = config.aux_photons[k - 1];
        if kk == 0 {
            continue;
        }
        let factor = affine(&forms[k]);
        for _ in 0..kk {
            poly = conv(&poly, &factor);
        }
        let inv = 1.0 / sqf_aux.sqrt(kk);
        for c in poly.iter_mut() {
            *c *= inv;
        }
    }

    // g_l (a₀†)^l |0⟩ = g_l √(l!) |l⟩, then the two main-mode displacements.
    let degree = poly.len() - 1;
    let final_cutoff = config.final_cutoff(None).max(degree);
    let sqf = SqrtFactorials::up_to(degree);
    let weight = log_weight.exp();
    let phase_factor = C64::from_polar(1.0, phase);
    let mut amps = vec![C64::new(0.0, 0.0); final_cutoff + 1];
    for (l, &g) in poly.iter().enumerate() {
        amps[l] = g * sqf.sqrt(l) * weight * phase_factor;
    }
    let probability: f64 = amps.iter().map(|c| c.norm_sqr()).sum();
    if !(probability >= super::ZERO_PROBABILITY_THRESHOLD) {
        return Err(Error::ZeroProbability);
    }

    let mut state = FockVector::from_amplitudes(amps)?;
    if d_main.norm() > 0.0 {
        let d = displacement_matrix(d_main, final_cutoff)?;
        state = apply_matrix(&d, &state)?;
    }
    if config.alpha0 != 0.0 {
        let d = displacement_matrix(C64::new(0.0, config.alpha0), final_cutoff)?;
        state = apply_matrix(&d, &state)?;
    }
    Ok((state.normalized()?, probability))
}

/// Decompose the input as D₀(d0)·q0(a₀†)|0⟩ with q0 finite.
fn input_polynomial(input: &InputSpec, base_cutoff: usize) -> Result<(C64, Vec<C64>)> {
    match input {
        InputSpec::Vacuum => Ok((C64::new(0.0, 0.0), vec![C64::new(1.0, 0.0)])),
        InputSpec::Coherent { gamma } => Ok((*gamma, vec![C64::new(1.0, 0.0)])),
        InputSpec::Fock { photons } => {
            let sqf = SqrtFactorials::up_to(*photons);
            let mut q = vec![C64::new(0.0, 0.0); photons + 1];
            q[*photons] = C64::new(1.0 / sqf.sqrt(*photons), 0.0);
            Ok((C64::new(0.0, 0.0), q))
        }
        InputSpec::Kitten { .. } => {
            // |ψ⟩ = Σ c_n |n⟩ = Σ (c_n/√(n!)) (a₀†)^n |0⟩, truncated at the
            // same cutoff the tensor simulator uses for this input
            let vec = input.vector(base_cutoff)?;
            let sqf = SqrtFactorials::up_to(base_cutoff);
            let q = vec
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(n, c)| c / sqf.sqrt(n))
                .collect();
            Ok((C64::new(0.0, 0.0), q))
        }
    }
}
