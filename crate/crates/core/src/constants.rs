//! The sharp growth constant `C_q` and the Babenko–Beckner constant `B_q`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_periodic_tail, Integrator};

/// Smallest `q` the conjecture scan accepts without an explicit override;
/// the cost of `C_q` grows without bound as `q → 1⁺`.
pub const SCAN_MIN_Q: f64 = 1.05;

/// A computed constant with a certified absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certified {
    pub value: f64,
    pub error: f64,
}

/// `C_q = 4^{1/q}·(∫_0^∞ |sin t / t|^q dt)^{1/q}` for `1 < q ≤ ∞`, to relative
/// tolerance `tol`; `C_∞ = 1`.
///
/// The integral is split at `π`: quadrature on `[0, π]`, then a certified
/// periodic summation of `|sin t|^q·t^{−q}` beyond.
pub fn cq(q: f64, tol: f64) -> Result<Certified> {
    if q == f64::INFINITY {
        return Ok(Certified { value: 1.0, error: 0.0 });
    }
    if !(q > 1.0) || q.is_nan() {
        return Err(Error::hypothesis(
            "conjugate exponent above one",
            format!("C_q diverges for q = {q}; it tends to infinity as q → 1⁺"),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let rough = sine_power_integral(q, 1e-6);
    let fine = sine_power_integral(q, (0.5 * tol * q * rough.value).max(1e-15 * rough.value));
    let value = (4.0 * fine.value).powf(1.0 / q);
    Ok(Certified { value, error: value * fine.error / (q * fine.value) })
}

/// `∫_0^∞ |sin t / t|^q dt` to absolute tolerance `tol`.
fn sine_power_integral(q: f64, tol: f64) -> Certified {
    let head = Integrator::new().integrate(
        |t| Complex64::new(if t == 0.0 { 1.0 } else { (t.sin() / t).abs().powf(q) }, 0.0),
        0.0,
        PI,
        tol / 2.0,
    );
    let tail = integrate_periodic_tail(|t| t.sin().abs().powf(q), PI, q, PI, tol / 2.0);
    Certified {
        value: head.value.re + tail.value.re,
        error: head.abs_error_estimate + tail.abs_error_estimate,
    }
}

/// `B_q = (2π)^{1/q}·[q^{1−2/q}(q−1)^{1/q−1}]^{1/2}` for `1 ≤ q ≤ ∞`.
pub fn bq(q: f64) -> Result<f64> {
    if q == f64::INFINITY {
        return Ok(1.0);
    }
    if q == 1.0 {
        return Ok(2.0 * PI);
    }
    if !(q > 1.0) {
        return Err(Error::invalid(format!("B_q needs q ≥ 1, got {q}")));
    }
    Ok(bq_forms(q).0)
}

/// Both closed forms of `B_q`, `q > 1`: the second uses the conjugate `p`,
/// `(2π)^{1/q}·(p^{1/p}/q^{1/q})^{1/2}`.
pub fn bq_forms(q: f64) -> (f64, f64) {
    let p = q / (q - 1.0);
    let scale = (2.0 * PI).powf(1.0 / q);
    let first = scale * (q.powf(1.0 - 2.0 / q) * (q - 1.0).powf(1.0 / q - 1.0)).sqrt();
    let second = scale * (p.powf(1.0 / p) / q.powf(1.0 / q)).sqrt();
    (first, second)
}

/// One row of the conjecture scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantReport {
    pub q: f64,
    pub c_q: f64,
    pub c_q_error: f64,
    pub b_q: f64,
    /// `c_q − b_q`.
    pub diff: f64,
    /// Sign of `c_q − b_q`, or `0` when the difference is within the error.
    pub sign: i8,
}

/// Compares `C_q` and `B_q` on a grid of `q > 1`. Values below
/// [`SCAN_MIN_Q`] are refused unless `allow_near_one` is set. Rows come back
/// in the grid's sorted order whatever the execution order.
pub fn conjecture_scan(q_grid: &[f64], tol: f64, allow_near_one: bool) -> Result<Vec<ConstantReport>> {
    for &q in q_grid {
        if !(q > 1.0) {
            return Err(Error::hypothesis("conjugate exponent above one", format!("scan point q = {q} is not above 1")));
        }
        if q < SCAN_MIN_Q && !allow_near_one {
            return Err(Error::invalid(format!(
                "scan point q = {q} is below {SCAN_MIN_Q}; pass the near-one override to compute it"
            )));
        }
    }
    let mut grid = q_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.par_iter()
        .map(|&q| {
            let c = cq(q, tol)?;
            let b = bq(q)?;
            let diff = c.value - b;
            let sign = if diff.abs() <= c.error { 0 } else if diff > 0.0 { 1 } else { -1 };
            Ok(ConstantReport { q, c_q: c.value, c_q_error: c.error, b_q: b, diff, sign })
        })
        .collect()
}
