#![forbid(unsafe_code)]

//! Fourier transforms of `L^p(ℝ)` functions, `1 ≤ p < ∞`, computed through the
//! continuous primitive
//!
//! ```text
//! Ψ_f(s) = ∫ (1 − e^{−ist}) / (it) · f(t) dt
//! ```
//!
//! whose distributional derivative is `f̂`. The crate provides the numerical
//! machinery (adaptive, improper and oscillatory quadrature), a catalog of test
//! functions with closed-form oracles, the primitive itself with its growth and
//! Hölder bounds, the sharp constants `C_q` and `B_q`, integration of `f̂`
//! against functions of bounded variation, and the exchange, inversion and
//! convolution identities built on top of it.

pub mod analysis;
pub mod ap_integration;
pub mod bv;
pub mod catalog;
pub mod cli;
pub mod constants;
pub mod error;
pub mod exponent;
pub mod lp;
pub mod pairing;
pub mod psif;
pub mod quadrature;
pub mod report;
pub mod special;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use num_complex::Complex64;

/// Values of `u_s`, `Ψ_f` and `f̂` are complex throughout.
pub type ComplexValue = Complex64;
