//! JSON configuration schema shared by `simulate`, `optimize`, and
//! `sweep`: one document describes the input state, the black box, the
//! target cat, and the optimizer settings, with `"free"` marking the
//! parameters the optimizer may move.

use catsmith::cat::{CatSpec, Parity};
use catsmith::optimize::{FreeParameter, OptimizerBudget, SearchSpace};
use catsmith::scheme::{CutoffSpec, InputSpec, SchemeConfig};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub input: InputSection,
    pub aux_photons: Vec<usize>,
    pub bs_theta: FreeOr<Vec<f64>>,
    pub aux_alpha: FreeOr<Vec<[f64; 2]>>,
    pub alpha0: FreeOr<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimizer: Option<OptimizerSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSection {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_in: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_term: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSection {
    pub beta: f64,
    pub parity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_evals_per_start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<[f64; 2]>,
}

/// Either a concrete value or the string `"free"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FreeOr<T> {
    Fixed(T),
    Marker(String),
}

impl<T> FreeOr<T> {
    pub fn is_free(&self) -> Result<bool, CliError> {
        match self {
            FreeOr::Fixed(_) => Ok(false),
            FreeOr::Marker(s) if s == "free" => Ok(true),
            FreeOr::Marker(s) => Err(CliError::schema(format!(
                "expected a value or \"free\", got \"{s}\""
            ))),
        }
    }
}

pub fn parity_from(s: &str) -> Result<Parity, CliError> {
    match s.to_ascii_lowercase().as_str() {
        "even" | "+" => Ok(Parity::Even),
        "odd" | "-" => Ok(Parity::Odd),
        other => Err(CliError::schema(format!("unknown parity \"{other}\""))),
    }
}

impl ConfigFile {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::schema(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::schema(format!("malformed config {}: {e}", path.display())))
    }

    pub fn input_spec(&self) -> Result<InputSpec, CliError> {
        let kind = self.input.kind.to_ascii_lowercase();
        match kind.as_str() {
            "vacuum" => Ok(InputSpec::Vacuum),
            "fock" => Ok(InputSpec::Fock {
                photons: self
                    .input
                    .k0
                    .ok_or_else(|| CliError::schema("fock input needs k0".into()))?,
            }),
            "coherent" => {
                let g = self
                    .input
                    .gamma
                    .ok_or_else(|| CliError::schema("coherent input needs gamma".into()))?;
                Ok(InputSpec::Coherent {
                    gamma: C64::new(g[0], g[1]),
                })
            }
            "kitten" => Ok(InputSpec::Kitten {
                beta_in: self
                    .input
                    .beta_in
                    .ok_or_else(|| CliError::schema("kitten input needs beta_in".into()))?,
                parity: parity_from(
                    self.input
                        .parity
                        .as_deref()
                        .ok_or_else(|| CliError::schema("kitten input needs parity".into()))?,
                )?,
                two_term: self.input.two_term.unwrap_or(false),
            }),
            other => Err(CliError::schema(format!("unknown input kind \"{other}\""))),
        }
    }

    pub fn target_spec(&self) -> Result<Option<CatSpec>, CliError> {
        match &self.target {
            None => Ok(None),
            Some(t) => {
                let spec = CatSpec::with_alpha(
                    t.beta,
                    parity_from(&t.parity)?,
                    t.alpha.unwrap_or(0.0),
                )
                .map_err(|e| CliError::schema(e.to_string()))?;
                Ok(Some(spec))
            }
        }
    }

    fn cutoff_spec(&self, override_cutoff: Option<usize>) -> CutoffSpec {
        match override_cutoff.or(self.cutoff) {
            Some(n) => CutoffSpec::Explicit(n),
            None => CutoffSpec::Auto,
        }
    }

    /// A fully concrete scheme; any `"free"` marker is a schema error.
    pub fn concrete_scheme(&self, override_cutoff: Option<usize>) -> Result<SchemeConfig, CliError> {
        let m = self.aux_photons.len();
        let bs_theta = match &self.bs_theta {
            FreeOr::Fixed(v) => v.clone(),
            _ => {
                return Err(CliError::schema(
                    "simulate needs concrete bs_theta (not \"free\")".into(),
                ))
            }
        };
        let aux_alpha: Vec<C64> = match &self.aux_alpha {
            FreeOr::Fixed(v) => v.iter().map(|a| C64::new(a[0], a[1])).collect(),
            _ => {
                return Err(CliError::schema(
                    "simulate needs concrete aux_alpha (not \"free\")".into(),
                ))
            }
        };
        let alpha0 = match &self.alpha0 {
            FreeOr::Fixed(v) => *v,
            _ => {
                return Err(CliError::schema(
                    "simulate needs concrete alpha0 (not \"free\")".into(),
                ))
            }
        };
        if bs_theta.len() != m || aux_alpha.len() != m {
            return Err(CliError::schema(format!(
                "aux_photons has length {m} but bs_theta/aux_alpha disagree"
            )));
        }
        Ok(SchemeConfig {
            input: self.input_spec()?,
            aux_photons: self.aux_photons.clone(),
            bs_theta,
            aux_alpha,
            alpha0,
            cutoff: self.cutoff_spec(override_cutoff),
        })
    }

    /// Template plus search space for the optimizer commands. Concrete
    /// values stay fixed; `"free"` sections open the matching parameters.
    pub fn search_space(&self, override_cutoff: Option<usize>) -> Result<SearchSpace, CliError> {
        let m = self.aux_photons.len();
        let mut free = Vec::new();
        let theta_free = self.bs_theta.is_free()?;
        let alpha_free = self.aux_alpha.is_free()?;
        let alpha0_free = self.alpha0.is_free()?;

        let bs_theta = match &self.bs_theta {
            FreeOr::Fixed(v) => v.clone(),
            _ => vec![0.9; m],
        };
        let aux_alpha: Vec<C64> = match &self.aux_alpha {
            FreeOr::Fixed(v) => v.iter().map(|a| C64::new(a[0], a[1])).collect(),
            _ => vec![C64::new(0.0, 0.0); m],
        };
        let alpha0 = match &self.alpha0 {
            FreeOr::Fixed(v) => *v,
            _ => 0.0,
        };
        if bs_theta.len() != m || aux_alpha.len() != m {
            return Err(CliError::schema(format!(
                "aux_photons has length {m} but bs_theta/aux_alpha disagree"
            )));
        }
        if theta_free {
            for k in 0..m {
                free.push(FreeParameter::Theta(k));
            }
        }
        if alpha_free {
            for k in 0..m {
                free.push(FreeParameter::AlphaRe(k));
                free.push(FreeParameter::AlphaIm(k));
            }
        }
        if alpha0_free {
            free.push(FreeParameter::Alpha0);
        }
        if free.is_empty() {
            return Err(CliError::schema(
                "optimize/sweep need at least one \"free\" section".into(),
            ));
        }

        let bounds_cfg = self.optimizer.as_ref().and_then(|o| o.bounds.as_ref());
        let bounds = free
            .iter()
            .map(|p| {
                let pick = |slot: Option<[f64; 2]>, fallback: (f64, f64)| {
                    slot.map(|[lo, hi]| (lo, hi)).unwrap_or(fallback)
                };
                match p {
                    FreeParameter::Theta(_) => {
                        pick(bounds_cfg.and_then(|b| b.theta), p.default_bounds())
                    }
                    FreeParameter::AlphaRe(_) | FreeParameter::AlphaIm(_) => {
                        pick(bounds_cfg.and_then(|b| b.alpha), p.default_bounds())
                    }
                    FreeParameter::Alpha0 => {
                        pick(bounds_cfg.and_then(|b| b.alpha0), p.default_bounds())
                    }
                    FreeParameter::GammaRe | FreeParameter::GammaIm => {
                        pick(bounds_cfg.and_then(|b| b.gamma), p.default_bounds())
                    }
                }
            })
            .collect();

        let template = SchemeConfig {
            input: self.input_spec()?,
            aux_photons: self.aux_photons.clone(),
            bs_theta,
            aux_alpha,
            alpha0,
            cutoff: self.cutoff_spec(override_cutoff),
        };
        SearchSpace::new(template, free, bounds).map_err(|e| CliError::schema(e.to_string()))
    }

    pub fn budget(&self, seed: u64, restarts_override: Option<usize>) -> OptimizerBudget {
        let section = self.optimizer.as_ref();
        OptimizerBudget {
            restarts: restarts_override
                .or(section.and_then(|o| o.restarts))
                .unwrap_or(64),
            max_evals_per_start: section
                .and_then(|o| o.max_evals_per_start)
                .unwrap_or(2000),
            simplex_tolerance: 1e-9,
            seed: section.and_then(|o| o.seed).unwrap_or(seed),
        }
    }

    /// Canonical serialization of the parsed document (stable field
    /// order), the basis of the manifest digest.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// Serializable mirror of a concrete scheme, for result files.
#[derive(Debug, Clone, Serialize)]
pub struct SchemeConfigOut {
    pub input: InputSection,
    pub aux_photons: Vec<usize>,
    pub bs_theta: Vec<f64>,
    pub aux_alpha: Vec<[f64; 2]>,
    pub alpha0: f64,
}

impl SchemeConfigOut {
    pub fn from_core(config: &SchemeConfig) -> Self {
        let input = match &config.input {
            InputSpec::Vacuum => InputSection {
                kind: "vacuum".into(),
                k0: None,
                gamma: None,
                beta_in: None,
                parity: None,
                two_term: None,
            },
            InputSpec::Fock { photons } => InputSection {
                kind: "fock".into(),
                k0: Some(*photons),
                gamma: None,
                beta_in: None,
                parity: None,
                two_term: None,
            },
            InputSpec::Coherent { gamma } => InputSection {
                kind: "coherent".into(),
                k0: None,
                gamma: Some([gamma.re, gamma.im]),
                beta_in: None,
                parity: None,
                two_term: None,
            },
            InputSpec::Kitten {
                beta_in,
                parity,
                two_term,
            } => InputSection {
                kind: "kitten".into(),
                k0: None,
                gamma: None,
                beta_in: Some(*beta_in),
                parity: Some(
                    match parity {
                        Parity::Even => "even",
                        Parity::Odd => "odd",
                    }
                    .into(),
                ),
                two_term: Some(*two_term),
            },
        };
        SchemeConfigOut {
            input,
            aux_photons: config.aux_photons.clone(),
            bs_theta: config.bs_theta.clone(),
            aux_alpha: config.aux_alpha.iter().map(|a| [a.re, a.im]).collect(),
            alpha0: config.alpha0,
        }
    }
}
