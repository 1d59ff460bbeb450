//! One-dimensional quadrature: adaptive Gauss–Kronrod on finite intervals,
//! truncation-plus-tail integration over the line, and lobe-splitting with
//! epsilon acceleration for Fourier-type integrals on half-lines.

mod adaptive;
mod improper;
mod oscillatory;
mod wynn;

pub use adaptive::{integrate_finite, Integrator};
pub use improper::{integrate_line, integrate_line_with_breaks, integrate_periodic_tail, DecayInfo};
pub use oscillatory::{
    integrate_oscillatory, integrate_oscillatory_sin, power_fourier_tail, OSCILLATION_LOBE_THRESHOLD,
};
pub use wynn::WynnEpsilon;

use num_complex::Complex64;

/// Outcome of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn exact(value: Complex64) -> Self {
        QuadratureResult {
            value,
            abs_error_estimate: 0.0,
            evaluations: 1,
            converged: true,
        }
    }

    /// Sum of two independent results; errors add, convergence is joint.
    pub fn combine(self, other: QuadratureResult) -> Self {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, factor: Complex64) -> Self {
        QuadratureResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.norm(),
            ..self
        }
    }

    pub fn add_error(mut self, extra: f64) -> Self {
        self.abs_error_estimate += extra;
        self
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }
}

impl std::iter::Sum for QuadratureResult {
    fn sum<I: Iterator<Item = QuadratureResult>>(iter: I) -> Self {
        iter.fold(
            QuadratureResult {
                value: Complex64::new(0.0, 0.0),
                abs_error_estimate: 0.0,
                evaluations: 0,
                converged: true,
            },
            QuadratureResult::combine,
        )
    }
}
