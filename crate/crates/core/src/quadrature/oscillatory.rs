use std::f64::consts::PI;

use num_complex::Complex64;

use super::{adaptive::Integrator, QuadratureResult, WynnEpsilon};

/// Number of half-periods on an interval above which callers should prefer
/// lobe splitting over plain adaptive quadrature.
pub const OSCILLATION_LOBE_THRESHOLD: f64 = 20.0;

const MAX_LOBES: usize = 600;
const MIN_LOBES: usize = 6;

/// `∫_from^∞ A(t)·e^{iωt} dt` for an amplitude that eventually decreases
/// monotonically to zero. The real part is the cosine integral and the
/// imaginary part the sine integral.
///
/// The half-line is cut at the zeros `kπ/|ω|` of `sin(ωt)`; each lobe is
/// integrated adaptively and the alternating partial sums are accelerated with
/// the epsilon algorithm. The error estimate is the change in the accelerated
/// value caused by the last lobes, plus the per-lobe quadrature errors. A
/// non-decaying amplitude, or `ω = 0`, yields `converged = false`.
pub fn integrate_oscillatory<A: Fn(f64) -> f64>(amplitude: A, omega: f64, from: f64, tol: f64) -> QuadratureResult {
    lobe_sum(|t| Complex64::from_polar(amplitude(t), omega * t), omega, from, tol)
}

/// Sine-weighted variant, `∫_from^∞ A(t)·sin(ωt) dt`. Unlike
/// [`integrate_oscillatory`] it tolerates amplitudes whose cosine integral
/// diverges at `from` (e.g. `t^{-(1+1/p)}` at `from = 0`).
pub fn integrate_oscillatory_sin<A: Fn(f64) -> f64>(amplitude: A, omega: f64, from: f64, tol: f64) -> QuadratureResult {
    lobe_sum(|t| Complex64::new(amplitude(t) * (omega * t).sin(), 0.0), omega, from, tol)
}

fn lobe_sum<F: Fn(f64) -> Complex64>(integrand: F, omega: f64, from: f64, tol: f64) -> QuadratureResult {
    if omega == 0.0 || !omega.is_finite() {
        return QuadratureResult {
            value: Complex64::new(f64::NAN, f64::NAN),
            abs_error_estimate: f64::INFINITY,
            evaluations: 1,
            converged: false,
        };
    }
    let half = PI / omega.abs();
    let k0 = (from / half).floor() + 1.0;
    let integrator = Integrator::new().max_segments(2_000);
    let lobe_tol = |n: usize| tol / (16.0 * (n as f64 + 1.0).powi(2));

    // At low frequency the first lobe spans many scales of the amplitude;
    // dyadic cuts keep it from being sampled by a single rule.
    let mut cuts = Vec::new();
    let mut c = from.max(half * 1e-3) * 2.0;
    while c < k0 * half {
        cuts.push(c);
        c *= 2.0;
    }
    let first = integrator.clone().breakpoints(&cuts).integrate(&integrand, from, k0 * half, lobe_tol(0));
    let mut sum = first.value;
    let mut quad_error = first.abs_error_estimate;
    let mut evaluations = first.evaluations;
    let mut wynn = WynnEpsilon::new();
    let mut best = wynn.push(sum);
    let mut magnitudes = Vec::new();
    let mut decaying = true;

    for n in 0..MAX_LOBES {
        let a = (k0 + n as f64) * half;
        let lobe = integrator.integrate(&integrand, a, a + half, lobe_tol(n + 1));
        evaluations += lobe.evaluations;
        quad_error += lobe.abs_error_estimate;
        sum += lobe.value;
        magnitudes.push(lobe.value.norm());
        best = wynn.push(sum);

        if n >= 24 && magnitudes[n] > 0.999 * magnitudes[n / 2] && magnitudes[n] > tol {
            decaying = false;
            break;
        }
        let shrinking = n >= 2
            && magnitudes[n] < (1.0 - 1e-6) * magnitudes[n - 1]
            && magnitudes[n - 1] < (1.0 - 1e-6) * magnitudes[n - 2];
        if n + 1 >= MIN_LOBES && (shrinking || magnitudes[n] <= 1e-3 * tol) {
            let extrapolation_error = wynn.recent_spread(2);
            if extrapolation_error + quad_error <= tol {
                return QuadratureResult {
                    value: best,
                    abs_error_estimate: extrapolation_error + quad_error,
                    evaluations,
                    converged: true,
                };
            }
        }
    }
    let estimate = wynn.recent_spread(2) + quad_error;
    QuadratureResult {
        value: best,
        abs_error_estimate: estimate,
        evaluations,
        converged: decaying && estimate <= tol,
    }
}

/// `∫_from^∞ t^{-β}·e^{iωt} dt` for `from > 0`: closed form when `ω = 0`
/// (which requires `β > 1`), lobe splitting otherwise (`β > 0`).
pub fn power_fourier_tail(beta: f64, omega: f64, from: f64, tol: f64) -> QuadratureResult {
    if omega == 0.0 {
        if beta <= 1.0 {
            return QuadratureResult {
                value: Complex64::new(f64::INFINITY, 0.0),
                abs_error_estimate: f64::INFINITY,
                evaluations: 1,
                converged: false,
            };
        }
        return QuadratureResult::exact(Complex64::new(from.powf(1.0 - beta) / (beta - 1.0), 0.0));
    }
    integrate_oscillatory(|t| t.powf(-beta), omega, from, tol)
}
