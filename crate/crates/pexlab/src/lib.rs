//! Numerical laboratory for quenched random perturbations of partially
//! expanding torus maps.
//!
//! The object of study is the skew product
//!
//! ```text
//! f: (x, s) -> (k·g(x) mod 1, s + τ(x)/2π mod 1)
//! ```
//!
//! on the two-torus, expanding in `x` and neutral in `s`, together with its
//! random perturbations driven by a seeded two-sided shift. Everything here
//! is finite and checkable: truncated-Fourier transfer operator matrices and
//! their spectra, operator-cocycle Lyapunov exponents, invariant densities by
//! pullback, quenched correlation functions, trapped-set counts on the
//! cotangent bundle, escape-function weights, the series solution of the
//! cohomological equation, and transversality cone statistics.
//!
//! The companion CLI crate exposes each experiment as a reproducible command;
//! given the same configuration every reported number is bit-identical.

pub mod captivity;
pub mod cocycle;
pub mod cohomology;
pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod noise;
pub mod spectral;
pub mod suite;
pub mod transfer;
pub mod trig;

pub use error::{Error, Result};

/// Complex scalar used throughout the operator machinery.
pub type C64 = num_complex::Complex64;
