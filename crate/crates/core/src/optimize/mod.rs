//! Derivative-free search over scheme parameters: seeded multi-start
//! Nelder–Mead maximizing fidelity with a target cat, and the β-sweep
//! driver that traces fidelity/probability curves against the genuine
//! qudit upper bound.

mod nelder_mead;
mod seeding;

pub use seeding::{halton_start, informed_start};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::cat::{alpha_maximized_scq_fidelity, scq_cat_fidelity, CatSpec, Parity};
use crate::error::{Error, Result};
use crate::scheme::{run_scheme, InputSpec, SchemeConfig};

/// Objective value assigned to configurations that cannot be evaluated
/// (vanished amplitude, cutoff failures): 1 + a penalty of 10.
pub const PENALTY_OBJECTIVE: f64 = 11.0;

/// Fidelity ties closer than this are broken by success probability.
const TIE_TOLERANCE: f64 = 1e-12;

/// One adjustable scalar of a [`SchemeConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeParameter {
    /// Beam-splitter angle θ_k.
    Theta(usize),
    /// Real part of the auxiliary displacement α_k.
    AlphaRe(usize),
    /// Imaginary part of the auxiliary displacement α_k.
    AlphaIm(usize),
    /// Final main-mode displacement α₀.
    Alpha0,
    /// Real part of the coherent input amplitude γ.
    GammaRe,
    /// Imaginary part of the coherent input amplitude γ.
    GammaIm,
}

impl FreeParameter {
    /// Spec-default bounds for this parameter.
    pub fn default_bounds(&self) -> (f64, f64) {
        match self {
            FreeParameter::Theta(_) => (0.05, 1.52),
            FreeParameter::AlphaRe(_) | FreeParameter::AlphaIm(_) | FreeParameter::Alpha0 => {
                (-4.0, 4.0)
            }
            FreeParameter::GammaRe | FreeParameter::GammaIm => (-3.0, 3.0),
        }
    }
}

/// A scheme template plus the named parameters the optimizer may move,
/// each with finite bounds.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    template: SchemeConfig,
    free: Vec<FreeParameter>,
    bounds: Vec<(f64, f64)>,
}

impl SearchSpace {
    pub fn new(
        template: SchemeConfig,
        free: Vec<FreeParameter>,
        bounds: Vec<(f64, f64)>,
    ) -> Result<Self> {
        template.validate()?;
        if free.is_empty() {
            return Err(Error::InvalidConfig("no free parameters".into()));
        }
        if free.len() != bounds.len() {
            return Err(Error::InvalidConfig(
                "free parameter and bound counts differ".into(),
            ));
        }
        let m = template.mode_count();
        for (p, &(lo, hi)) in free.iter().zip(&bounds) {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidConfig(format!(
                    "bad bounds [{lo}, {hi}] for {p:?}"
                )));
            }
            match p {
                FreeParameter::Theta(k) => {
                    if *k >= m {
                        return Err(Error::InvalidConfig(format!("theta index {k} out of range")));
                    }
                    if lo <= 0.0 || hi >= std::f64::consts::FRAC_PI_2 {
                        return Err(Error::InvalidConfig(
                            "theta bounds must stay inside (0, pi/2)".into(),
                        ));
                    }
                }
                FreeParameter::AlphaRe(k) | FreeParameter::AlphaIm(k) => {
                    if *k >= m {
                        return Err(Error::InvalidConfig(format!("alpha index {k} out of range")));
                    }
                }
                FreeParameter::GammaRe | FreeParameter::GammaIm => {
                    if !matches!(template.input, InputSpec::Coherent { .. }) {
                        return Err(Error::InvalidConfig(
                            "gamma is free only for a coherent input".into(),
                        ));
                    }
                }
                FreeParameter::Alpha0 => {}
            }
        }
        Ok(SearchSpace {
            template,
            free,
            bounds,
        })
    }

    /// Space with the spec-default bounds for every requested parameter.
    pub fn with_default_bounds(template: SchemeConfig, free: Vec<FreeParameter>) -> Result<Self> {
        let bounds = free.iter().map(|p| p.default_bounds()).collect();
        Self::new(template, free, bounds)
    }

    /// The full standard parameterization: every θ_k, both parts of every
    /// α_k, and α₀ free at default bounds.
    pub fn standard(template: SchemeConfig) -> Result<Self> {
        let m = template.mode_count();
        let mut free = Vec::with_capacity(3 * m + 1);
        for k in 0..m {
            free.push(FreeParameter::Theta(k));
        }
        for k in 0..m {
            free.push(FreeParameter::AlphaRe(k));
            free.push(FreeParameter::AlphaIm(k));
        }
        free.push(FreeParameter::Alpha0);
        Self::with_default_bounds(template, free)
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn bound(&self, i: usize) -> (f64, f64) {
        self.bounds[i]
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn free_parameters(&self) -> &[FreeParameter] {
        &self.free
    }

    pub fn template(&self) -> &SchemeConfig {
        &self.template
    }

    pub fn clamped(&self, mut point: Vec<f64>) -> Vec<f64> {
        for (v, &(lo, hi)) in point.iter_mut().zip(&self.bounds) {
            *v = v.clamp(lo, hi);
        }
        point
    }

    /// Bind a parameter vector into a concrete configuration.
    pub fn materialize(&self, params: &[f64]) -> SchemeConfig {
        let mut config = self.template.clone();
        let mut gamma = match &config.input {
            InputSpec::Coherent { gamma } => *gamma,
            _ => C64::new(0.0, 0.0),
        };
        let mut gamma_touched = false;
        for (p, &v) in self.free.iter().zip(params) {
            match *p {
                FreeParameter::Theta(k) => config.bs_theta[k] = v,
                FreeParameter::AlphaRe(k) => config.aux_alpha[k].re = v,
                FreeParameter::AlphaIm(k) => config.aux_alpha[k].im = v,
                FreeParameter::Alpha0 => config.alpha0 = v,
                FreeParameter::GammaRe => {
                    gamma.re = v;
                    gamma_touched = true;
                }
                FreeParameter::GammaIm => {
                    gamma.im = v;
                    gamma_touched = true;
                }
            }
        }
        if gamma_touched {
            config.input = InputSpec::Coherent { gamma };
        }
        config
    }
}

/// Per-call limits of one optimization.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerBudget {
    /// Low-discrepancy restarts (the informed start is added on top).
    pub restarts: usize,
    /// Objective evaluations allowed per restart.
    pub max_evals_per_start: usize,
    /// Simplex-diameter convergence threshold.
    pub simplex_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerBudget {
    fn default() -> Self {
        OptimizerBudget {
            restarts: 64,
            max_evals_per_start: 2000,
            simplex_tolerance: 1e-9,
            seed: 0,
        }
    }
}

/// Result of a multi-start optimization. Fidelity and probability are
/// recomputed from `best_config` after the search, never cached from the
/// search path.
#[derive(Debug, Clone)]
pub struct OptimizationOutcome {
    pub best_config: SchemeConfig,
    pub best_params: Vec<f64>,
    pub fidelity: f64,
    pub success_probability: f64,
    pub restarts_used: usize,
    pub objective_evaluations: u64,
    pub seed: u64,
}

/// 1 − fidelity of the materialized configuration against the target;
/// configurations that fail to evaluate score [`PENALTY_OBJECTIVE`].
pub fn objective(params: &[f64], space: &SearchSpace, target: &CatSpec) -> f64 {
    let config = space.materialize(params);
    match run_scheme(&config, Some(target)) {
        Ok(res) => 1.0 - res.fidelity.unwrap_or(0.0),
        Err(_) => PENALTY_OBJECTIVE,
    }
}

/// Multi-start Nelder–Mead over the space; deterministic for a fixed
/// budget seed. Restarts run concurrently and reduce by (fidelity, then
/// success probability, then restart order).
pub fn optimize(
    space: &SearchSpace,
    target: &CatSpec,
    budget: &OptimizerBudget,
) -> Result<OptimizationOutcome> {
    optimize_with_extra_starts(space, target, budget, &[])
}

/// [`optimize`] with caller-supplied warm starts prepended to the start
/// list (used by sweeps to chain neighboring optima).
pub fn optimize_with_extra_starts(
    space: &SearchSpace,
    target: &CatSpec,
    budget: &OptimizerBudget,
    extra_starts: &[Vec<f64>],
) -> Result<OptimizationOutcome> {
    if budget.restarts == 0 && extra_starts.is_empty() {
        return Err(Error::InvalidConfig("budget needs at least one start".into()));
    }
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(budget.restarts + extra_starts.len() + 1);
    if let Some(p) = informed_start(space, target) {
        starts.push(p);
    }
    for p in extra_starts {
        starts.push(space.clamped(p.clone()));
    }
    for i in 0..budget.restarts {
        starts.push(halton_start(space, budget.seed, i as u64));
    }

    struct Candidate {
        params: Vec<f64>,
        objective: f64,
        fidelity: f64,
        probability: f64,
        evaluations: u64,
    }

    let candidates: Vec<Candidate> = starts
        .par_iter()
        .map(|start| {
            // Re-seeding the simplex at the incumbent recovers from
            // degenerate collapse in high dimensions; the evaluation
            // budget is shared across the stages.
            let mut best = start.clone();
            let mut value = f64::INFINITY;
            let mut evaluations = 0u64;
            while (evaluations as usize) < budget.max_evals_per_start {
                let remaining = budget.max_evals_per_start - evaluations as usize;
                let nm = nelder_mead::minimize(
                    |p| objective(p, space, target),
                    &best,
                    space.bounds(),
                    remaining,
                    budget.simplex_tolerance,
                );
                evaluations += nm.evaluations;
                let improved = nm.value < value - 1e-13;
                if nm.value < value {
                    value = nm.value;
                    best = nm.best;
                }
                if !improved {
                    break;
                }
            }
            let (fidelity, probability) =
                match run_scheme(&space.materialize(&best), Some(target)) {
                    Ok(res) => (res.fidelity.unwrap_or(0.0), res.success_probability),
                    Err(_) => (0.0, 0.0),
                };
            Candidate {
                params: best,
                objective: value,
                fidelity,
                probability,
                evaluations,
            }
        })
        .collect();

    let restarts_used = candidates.len();
    let objective_evaluations: u64 = candidates.iter().map(|c| c.evaluations).sum();

    let mut best: Option<&Candidate> = None;
    for cand in &candidates {
        match best {
            None => best = Some(cand),
            Some(cur) => {
                let better = if cand.fidelity > cur.fidelity + TIE_TOLERANCE {
                    true
                } else if (cand.fidelity - cur.fidelity).abs() <= TIE_TOLERANCE {
                    cand.probability > cur.probability
                } else {
                    false
                };
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    let best = best.expect("at least one start");
    if best.objective >= PENALTY_OBJECTIVE - 1.0 {
        return Err(Error::AllStartsInfeasible);
    }

    let best_config = space.materialize(&best.params);
    let recomputed = run_scheme(&best_config, Some(target))?;
    Ok(OptimizationOutcome {
        best_config,
        best_params: best.params.clone(),
        fidelity: recomputed.fidelity.unwrap_or(0.0),
        success_probability: recomputed.success_probability,
        restarts_used,
        objective_evaluations,
        seed: budget.seed,
    })
}

/// One β point of a sweep.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub beta: f64,
    /// Optimization result; per-point failures are recorded, not fatal.
    pub outcome: std::result::Result<OptimizationOutcome, String>,
    /// Genuine-qudit fidelity bound at α = 0 (absent when degenerate).
    pub bound_alpha0: Option<f64>,
    /// Genuine-qudit fidelity bound maximized over α.
    pub bound_alpha_max: f64,
    /// The maximizing α.
    pub bound_alpha_arg: f64,
}

/// Optimize along a β grid, warm-starting each point from its
/// predecessor's optimum, and report the degree-n qudit fidelity bounds
/// (both fixed α = 0 and α-maximized) alongside.
pub fn sweep_beta(
    space: &SearchSpace,
    parity: Parity,
    beta_range: (f64, f64, f64),
    budget: &OptimizerBudget,
) -> Result<Vec<SweepPoint>> {
    let (lo, hi, step) = beta_range;
    if !(lo > 0.0) || !(hi >= lo) || !(step > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "bad beta range ({lo}, {hi}, {step})"
        )));
    }
    let n = space.template().photon_budget();
    let mut points = Vec::new();
    let mut warm: Option<Vec<f64>> = None;
    let mut beta = lo;
    while beta <= hi + 1e-9 {
        let target = CatSpec::new(beta, parity)?;
        let extra: Vec<Vec<f64>> = warm.iter().cloned().collect();
        let outcome = optimize_with_extra_starts(space, &target, budget, &extra)
            .map_err(|e| e.to_string());
        if let Ok(out) = &outcome {
            warm = Some(out.best_params.clone());
        }
        let bound_alpha0 = scq_cat_fidelity(n, &target).ok();
        let (bound_alpha_max, bound_alpha_arg) =
            alpha_maximized_scq_fidelity(n, beta, parity, 4.0)?;
        points.push(SweepPoint {
            beta,
            outcome,
            bound_alpha0,
            bound_alpha_max,
            bound_alpha_arg,
        });
        beta += step;
    }
    Ok(points)
}
