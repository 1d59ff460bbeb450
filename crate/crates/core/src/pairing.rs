//! `∫ f(t)·k(t) dt` over ℝ for a catalog function `f` and a kernel `k` with
//! known decay. The finite part is folded onto `[0, X]`, which also yields the
//! principal value at the origin for odd singular integrands. Tails are
//! summed exactly from expansions when both factors provide them, and
//! truncated against a certified envelope bound otherwise.

use num_complex::Complex64;

use crate::bv::lobe_pieces;
use crate::catalog::{TailTerm, TestFunction};
use crate::error::{Error, Result};
use crate::quadrature::{power_fourier_tail, DecayInfo, Integrator, QuadratureResult};

const MAX_TRUNCATION: f64 = 1e12;

/// A kernel to pair against; tail terms follow the [`TailTerm`] convention
/// (`k(±τ) = Σ c·τ^{−β}·e^{iωτ}` for `τ ≥ onset`).
pub struct Kernel<'a> {
    pub eval: &'a (dyn Fn(f64) -> Complex64 + Sync),
    pub right: Option<Vec<TailTerm>>,
    pub left: Option<Vec<TailTerm>>,
    pub onset: f64,
    /// Envelope of `|k|`.
    pub envelope: DecayInfo,
    pub singular_points: Vec<f64>,
    pub oscillation: f64,
}

impl<'a> Kernel<'a> {
    /// Kernel without tail expansions.
    pub fn bounded(eval: &'a (dyn Fn(f64) -> Complex64 + Sync), envelope: DecayInfo, oscillation: f64) -> Self {
        Kernel { eval, right: None, left: None, onset: envelope.onset(), envelope, singular_points: Vec::new(), oscillation }
    }
}

/// `∫_ℝ f·k` to absolute tolerance `tol`.
pub fn pair(f: &TestFunction, k: &Kernel<'_>, tol: f64) -> Result<QuadratureResult> {
    let singular = f
        .singular_points
        .iter()
        .chain(&k.singular_points)
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let base = singular.max(1.0);
    let exact_right = exact_side(f.right_tail.as_ref().map(|e| (e.onset, &e.terms)), k.right.as_ref(), k.onset);
    let exact_left = exact_side(f.left_tail.as_ref().map(|e| (e.onset, &e.terms)), k.left.as_ref(), k.onset);

    let mut x = base;
    if let Some(o) = exact_right {
        x = x.max(o);
    }
    if let Some(o) = exact_left {
        x = x.max(o);
    }
    if exact_right.is_none() || exact_left.is_none() {
        x = x.max(f.decay.onset()).max(k.envelope.onset());
        while f.decay.product_tail_bound(&k.envelope, x) > tol / 8.0 {
            x *= 2.0;
            if x > MAX_TRUNCATION {
                return Err(Error::UnreachableTolerance {
                    tol,
                    reason: format!("pairing {} needs truncation beyond {MAX_TRUNCATION:e}", f.id),
                });
            }
        }
    }

    let core = folded_core(|t| f.eval(t) * (k.eval)(t), &f.singular_points, &k.singular_points, f.oscillation + k.oscillation, x, tol / 2.0);
    let mut total = core;
    for (side, exact) in [(Side::Right, exact_right), (Side::Left, exact_left)] {
        let tail = match exact {
            Some(_) => {
                let (ft, kt) = match side {
                    Side::Right => (&f.right_tail.as_ref().unwrap().terms, k.right.as_ref().unwrap()),
                    Side::Left => (&f.left_tail.as_ref().unwrap().terms, k.left.as_ref().unwrap()),
                };
                exact_tail(ft, kt, x, tol / 4.0)?
            }
            None => {
                // Two-sided bound; each side takes it in full.
                let b = f.decay.product_tail_bound(&k.envelope, x);
                QuadratureResult { value: Complex64::new(0.0, 0.0), abs_error_estimate: b, evaluations: 1, converged: true }
            }
        };
        total = total.combine(tail);
    }
    total.converged = total.converged && total.abs_error_estimate <= tol;
    Ok(total)
}

#[derive(Clone, Copy)]
enum Side {
    Right,
    Left,
}

fn exact_side(f: Option<(f64, &Vec<TailTerm>)>, k: Option<&Vec<TailTerm>>, k_onset: f64) -> Option<f64> {
    match (f, k) {
        (Some((onset, _)), Some(_)) => Some(onset.max(k_onset)),
        _ => None,
    }
}

/// `Σ_{i,j} c_i d_j ∫_x^∞ τ^{−(β_i+κ_j)} e^{i(ω_i+ω_j)τ} dτ`.
pub(crate) fn exact_tail(f: &[TailTerm], k: &[TailTerm], x: f64, tol: f64) -> Result<QuadratureResult> {
    let mut total = QuadratureResult::exact(Complex64::new(0.0, 0.0));
    let n = (f.len() * k.len()).max(1) as f64;
    for a in f {
        for b in k {
            let c = a.coef * b.coef;
            if c.norm() == 0.0 {
                continue;
            }
            let beta = a.power + b.power;
            let omega = a.freq + b.freq;
            let omega = if omega.abs() < 1e-14 * (a.freq.abs() + b.freq.abs()) { 0.0 } else { omega };
            if beta <= 0.0 || (omega == 0.0 && beta <= 1.0) {
                return Err(Error::UnreachableTolerance {
                    tol,
                    reason: format!("tail term τ^{{-{beta}}}·e^{{i{omega}τ}} is not integrable"),
                });
            }
            let r = power_fourier_tail(beta, omega, x, tol / (n * c.norm()));
            total = total.combine(r.scale(c));
        }
    }
    Ok(total)
}

/// `∫_0^x [F(t) + F(−t)] dt` with cuts at the singular points and at powers
/// of two, and enough initial pieces to resolve the oscillation.
pub(crate) fn folded_core(
    integrand: impl Fn(f64) -> Complex64,
    sing_a: &[f64],
    sing_b: &[f64],
    oscillation: f64,
    x: f64,
    tol: f64,
) -> QuadratureResult {
    let mut cuts: Vec<f64> = sing_a.iter().chain(sing_b).map(|s| s.abs()).filter(|&s| s > 0.0 && s < x).collect();
    let mut c = 1.0;
    while c < x {
        cuts.push(c);
        c *= 2.0;
    }
    cuts.push(0.0);
    cuts.push(x);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let folded = |t: f64| integrand(t) + integrand(-t);
    let mut total = QuadratureResult::exact(Complex64::new(0.0, 0.0));
    let share = tol / (cuts.len() - 1) as f64;
    for w in cuts.windows(2) {
        let pieces = lobe_pieces(oscillation, w[1] - w[0]);
        let r = Integrator::new()
            .pieces(pieces)
            .max_segments(20_000.max(4 * pieces))
            .integrate(folded, w[0], w[1], share);
        total = total.combine(r);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use std::f64::consts::PI;

    fn fourier_kernel(s: f64) -> impl Fn(f64) -> Complex64 + Sync {
        move |t: f64| Complex64::from_polar(1.0, -s * t)
    }

    #[test]
    fn fourier_transform_of_gaussian_by_truncation() {
        let f = builtin("gaussian").unwrap();
        let e = fourier_kernel(1.3);
        let k = Kernel::bounded(&e, DecayInfo::Power { exponent: 0.0, onset: 0.0, bound: 1.0 }, 1.3);
        let r = pair(&f, &k, 1e-11).unwrap();
        assert!((r.value - f.closed_form_fhat(1.3).unwrap()).norm() < 1e-11);
        assert!(r.converged);
    }

    #[test]
    fn exact_tails_give_improper_transform_of_sinc() {
        // ∫ sin t/t · e^{−ist} dt = π·χ(|s|<1) as an improper integral.
        let f = builtin("sinc").unwrap();
        for &s in &[0.3, 2.0, -0.5] {
            let e = fourier_kernel(s);
            let k = Kernel {
                eval: &e,
                right: Some(vec![TailTerm::real(1.0, 0.0, -s)]),
                left: Some(vec![TailTerm::real(1.0, 0.0, s)]),
                onset: 0.0,
                envelope: DecayInfo::Power { exponent: 0.0, onset: 0.0, bound: 1.0 },
                singular_points: Vec::new(),
                oscillation: s.abs(),
            };
            let r = pair(&f, &k, 1e-9).unwrap();
            let expect = if s.abs() < 1.0 { PI } else { 0.0 };
            assert!((r.value.re - expect).abs() < 1e-8, "s = {s}: {:?}", r.value);
        }
    }

    #[test]
    fn principal_value_of_odd_singular_integrand() {
        // PV ∫ sgn(t)|t|^{-1}·e^{−t²} = 0 by symmetry.
        let f = builtin("abs_pow_odd:1").unwrap();
        let g = |t: f64| Complex64::new((-t * t).exp(), 0.0);
        let k = Kernel::bounded(&g, DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: 1.0 }, 0.0);
        let r = pair(&f, &k, 1e-10).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn slow_truncation_is_reported() {
        let f = builtin("power_tail:0.3").unwrap();
        let one = |_: f64| Complex64::new(1.0, 0.0);
        let k = Kernel::bounded(&one, DecayInfo::Power { exponent: 0.0, onset: 0.0, bound: 1.0 }, 0.0);
        assert!(matches!(pair(&f, &k, 1e-6), Err(Error::UnreachableTolerance { .. })));
    }
}
