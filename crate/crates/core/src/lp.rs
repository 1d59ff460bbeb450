//! `L^p` norms with certified tails.

use num_complex::Complex64;

use crate::catalog::{AbsTail, TestFunction};
use crate::error::{Error, Result};
use crate::pairing::folded_core;
use crate::quadrature::integrate_periodic_tail;

const MAX_TRUNCATION: f64 = 1e12;

/// `‖f‖_p = (∫|f|^p)^{1/p}` to relative tolerance `tol`.
///
/// Tails use the declared modulus `|f(±τ)| = P(τ)·τ^{−β}` when available
/// (closed form for constant `P`, certified periodic summation otherwise) and
/// the decay envelope when not.
pub fn lp_norm(f: &TestFunction, p: f64, tol: f64) -> Result<f64> {
    if !f.in_lp(p) {
        return Err(Error::hypothesis(
            "L^p membership",
            format!("{} is not declared in L^{p} (membership {})", f.id, f.lp_membership),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    // A coarse pass fixes the scale of ∫|f|^p; the second pass meets the
    // relative target, using d‖f‖/‖f‖ = (1/p)·dI/I.
    let rough = power_integral(f, p, 1e-4)?;
    let scale = rough.value.max(rough.error).max(f64::MIN_POSITIVE);
    let fine = power_integral(f, p, 0.5 * tol * p * scale)?;
    if !fine.converged {
        return Err(Error::UnreachableTolerance {
            tol,
            reason: format!("‖{}‖_{p} did not converge (error {:e})", f.id, fine.error),
        });
    }
    Ok(fine.value.max(0.0).powf(1.0 / p))
}

struct PowerIntegral {
    value: f64,
    error: f64,
    converged: bool,
}

fn power_integral(f: &TestFunction, p: f64, tol: f64) -> Result<PowerIntegral> {
    let mut x = f.singular_points.iter().fold(1.0f64, |m, s| m.max(s.abs()));
    let exact = |t: &Option<AbsTail>| t.as_ref().filter(|a| a.power * p > 1.0 || is_zero(a)).cloned();
    let (right, left) = (exact(&f.right_abs), exact(&f.left_abs));
    for a in right.iter().chain(left.iter()) {
        x = x.max(a.onset);
    }
    if right.is_none() || left.is_none() {
        x = x.max(f.decay.onset());
        while f.decay.power_tail_bound(p, x) > tol / 4.0 {
            x *= 2.0;
            if x > MAX_TRUNCATION {
                return Err(Error::UnreachableTolerance {
                    tol,
                    reason: format!("‖{}‖_{p} tail needs truncation beyond {MAX_TRUNCATION:e}", f.id),
                });
            }
        }
    }
    let core = folded_core(
        |t| Complex64::new(f.eval(t).norm().powf(p), 0.0),
        &f.singular_points,
        &[],
        2.0 * f.oscillation,
        x,
        tol / 2.0,
    );
    let mut value = core.value.re;
    let mut error = core.abs_error_estimate;
    let mut converged = core.converged;
    for tail in [&right, &left] {
        match tail {
            Some(a) => {
                let (v, e, ok) = abs_tail_integral(a, p, x, tol / 8.0);
                value += v;
                error += e;
                converged &= ok;
            }
            None => error += f.decay.power_tail_bound(p, x),
        }
    }
    Ok(PowerIntegral { value, error, converged: converged && error <= tol })
}

fn is_zero(a: &AbsTail) -> bool {
    a.period == 0.0 && (a.profile)(1.0) == 0.0
}

/// `∫_x^∞ (P(τ)·τ^{−β})^p dτ`.
fn abs_tail_integral(a: &AbsTail, p: f64, x: f64, tol: f64) -> (f64, f64, bool) {
    let gamma = a.power * p;
    if a.period == 0.0 {
        let c = (a.profile)(x).powf(p);
        if c == 0.0 {
            return (0.0, 0.0, true);
        }
        return (c * x.powf(1.0 - gamma) / (gamma - 1.0), 0.0, true);
    }
    let profile = a.profile.clone();
    let r = integrate_periodic_tail(move |t| profile(t).powf(p), a.period, gamma, x, tol);
    (r.value.re, r.abs_error_estimate, r.converged)
}
