use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Returned when a truncated Fock space is too small to hold a state or
    /// operator within the guaranteed tail bound.
    #[error("cutoff {got} too small: {needed} required ({context})")]
    CutoffTooSmall {
        needed: usize,
        got: usize,
        context: &'static str,
    },

    /// Returned when a photon-number index exceeds the cutoff.
    #[error("index {index} out of range for cutoff {cutoff}")]
    IndexOutOfRange { index: usize, cutoff: usize },

    /// Returned by operations that require normalized input states.
    #[error("state not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    /// Returned when a computation produces or receives a NaN/Inf amplitude.
    #[error("non-finite amplitude encountered ({context})")]
    NonFinite { context: &'static str },

    /// Returned when every retained term of a cat qudit vanishes, so its
    /// normalization factor is undefined.
    #[error("degenerate cat qudit: all retained terms vanish")]
    DegenerateQudit,

    /// Returned when the highest-order term of a cat-qudit polynomial
    /// vanishes, so the monic normalization divides by zero.
    #[error("leading polynomial term vanishes")]
    LeadingTermVanishes,

    /// Returned for root finding on a constant polynomial.
    #[error("polynomial has degree 0; no roots to find")]
    ConstantPolynomial,

    /// Returned when the root iteration fails to reach its residual target
    /// within the iteration budget.
    #[error("root finding did not converge: residual {residual:.3e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    /// Returned when the heralded amplitude vanishes identically, so no
    /// conditional state exists.
    #[error("conditional amplitude vanishes: success probability below 1e-300")]
    ZeroProbability,

    /// Returned when a beam-splitter parameter makes an analytic expression
    /// singular (fully transmissive or fully reflective).
    #[error("degenerate beam splitter: {context}")]
    DegenerateBeamSplitter { context: &'static str },

    /// Returned by the polynomial oracle for inputs it cannot express as a
    /// finite creation-operator polynomial times displacements.
    #[error("unsupported input for polynomial oracle: {0}")]
    UnsupportedInput(String),

    /// Returned when every optimizer restart ends in the penalty region.
    #[error("all optimizer restarts infeasible")]
    AllStartsInfeasible,

    /// Returned for malformed scheme configurations or search spaces.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
