use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::kernel::u_kernel;
use crate::catalog::{AbsTail, LpSet, Smoothness, TestFunction};
use crate::constants::cq;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::lp::lp_norm;
use crate::pairing::folded_core;
use crate::quadrature::{integrate_periodic_tail, DecayInfo};

/// The function attaining `|Ψ_f(s)| = C_q‖f‖_p|s|^{1/p}` at one `s`.
#[derive(Debug, Clone)]
pub struct ExtremalFunction {
    pub s: f64,
    pub exponent: Exponent,
    pub function: TestFunction,
}

/// Both sides of the equality case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityRatio {
    /// `|Ψ_{f_s}(s)|`.
    pub lhs: f64,
    pub lhs_error: f64,
    /// `C_q‖f_s‖_p|s|^{1/p}`.
    pub rhs: f64,
    pub rhs_error: f64,
    pub ratio: f64,
}

/// `f_s(t) = |u_s(t)|^{q/p}·e^{−iθ(st)}`, so that `u_s·f_s = |u_s|^q`.
///
/// Defined for `1 < p < ∞` and `s ≠ 0`. `|f_s(t)| ≤ (2/|t|)^{q−1}`, hence
/// `f_s ∈ L^r` exactly for `r > 1/(q−1) = p − 1`.
pub fn extremal_function(s: f64, p: f64) -> Result<ExtremalFunction> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::hypothesis(
            "extremal exponent range",
            format!("the extremal function needs 1 < p < ∞, got p = {p}"),
        ));
    }
    if s == 0.0 || !s.is_finite() {
        return Err(Error::invalid(format!("the extremal function needs finite s ≠ 0, got {s}")));
    }
    let exponent = Exponent::new(p)?;
    let q = exponent.q();
    let power = q - 1.0;
    let profile = Arc::new(move |tau: f64| (2.0 * (0.5 * s * tau).sin()).abs().powf(power));
    let tail = AbsTail { onset: 1.0, power, period: 2.0 * PI / s.abs(), profile };
    let function = TestFunction::new(
        format!("extremal:{s}:{p}"),
        move |t| {
            let u = u_kernel(s, t);
            let m = u.norm();
            if m == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                u.conj() * m.powf(q - 2.0)
            }
        },
        DecayInfo::Power { exponent: power, onset: 0.0, bound: 2f64.powf(power) },
    )
    .with_lp(LpSet::above(1.0 / power))
    .with_abs_tails(Some(tail.clone()), Some(tail))
    .with_oscillation(s.abs())
    .with_smoothness(Smoothness::NONE)
    .with_sup(s.abs().powf(power));
    Ok(ExtremalFunction { s, exponent, function })
}

impl ExtremalFunction {
    /// `|Ψ_{f_s}(s)|` against `C_q‖f_s‖_p|s|^{1/p}`.
    ///
    /// The left side integrates `u_s·f_s` over a folded core and adds the two
    /// tails `∫_X^∞ |2 sin(sτ/2)|^q τ^{−q}`, which is what the product reduces
    /// to. The right side goes through `lp_norm` and `cq` independently.
    pub fn equality(&self, tol: f64) -> Result<EqualityRatio> {
        let (s, q, p) = (self.s, self.exponent.q(), self.exponent.p());
        let f = &self.function;
        let period = 2.0 * PI / s.abs();
        let x = period * (1.0 / period).ceil().max(4.0);
        let core = folded_core(|t| u_kernel(s, t) * f.eval(t), &[], &[], 2.0 * s.abs(), x, tol / 4.0);
        let tail = integrate_periodic_tail(move |t| (2.0 * (0.5 * s * t).sin()).abs().powf(q), period, q, x, tol / 8.0);
        let lhs = (core.value + tail.value * 2.0).norm();
        let lhs_error = core.abs_error_estimate + 2.0 * tail.abs_error_estimate;
        let c = cq(q, tol)?;
        let norm = lp_norm(f, p, tol)?;
        let rhs = c.value * norm * s.abs().powf(1.0 / p);
        let rhs_error = rhs * (c.error / c.value + tol);
        Ok(EqualityRatio { lhs, lhs_error, rhs, rhs_error, ratio: lhs / rhs })
    }
}
