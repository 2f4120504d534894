//! Exact truncated-Fock-space simulation of conditional linear-optical
//! state engineering, aimed at synthesizing large-amplitude Schrödinger
//! cat states, plus the derivative-free parameter search that tunes the
//! scheme.
//!
//! Module map:
//! - [`fock`]: single-mode vectors, coherent/displaced states, the
//!   displacement-operator matrix, inner products and fidelity.
//! - [`cat`]: even/odd cat states, displaced-basis amplitudes, cat
//!   qudits and their root representation.
//! - [`poly`]: creation-operator polynomials and the Aberth–Ehrlich
//!   root finder backing the root representation.
//! - [`scheme`]: the beam-splitter cascade with vacuum post-selection,
//!   its conditional output state and success probability, and two
//!   independent cross-check routes (analytic small-m forms and a
//!   symbolic polynomial propagation).
//! - [`optimize`]: seeded multi-start Nelder–Mead search over scheme
//!   parameters and the β-sweep driver.

pub mod cat;
pub mod error;
pub mod fock;
pub mod optimize;
pub mod poly;
pub mod scheme;

pub use error::{Error, Result};
pub use num_complex::Complex64;
