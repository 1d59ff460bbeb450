//! Integration against `f̂` for `f ∈ L^p`. With `Ψ_f′ = f̂` in the distributional
//! sense, `∫_a^b f̂·g` for `g` of bounded variation is defined by parts:
//!
//! ```text
//! ∫_a^b f̂ g = Ψ_f(b)g(b) − Ψ_f(a)g(a) − ∫_a^b Ψ_f dg.
//! ```
//!
//! Stieltjes integrals treat `[a, b]` as `(a, b]`: a jump at `b` counts and a
//! jump at `a` does not, and `g` at either end means its right limit. That
//! convention makes results additive over adjacent intervals and leaves the
//! by-parts value equal to the classical one.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bv::{lobe_pieces, BvFunction, BvTail, Variation};
use crate::catalog::{TailTerm, TestFunction};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::pairing::{pair, Kernel};
use crate::psif::{psif, GrowthConstant};
use crate::quadrature::{power_fourier_tail, DecayInfo, Integrator, QuadratureResult};

/// Largest truncation point for tails without an exact expansion.
const MAX_TRUNCATION: f64 = 1e7;

/// `∫_a^b |dg|`.
pub fn total_variation(g: &BvFunction, a: f64, b: f64, tol: f64) -> Result<f64> {
    interval(a, b)?;
    Ok(g.variation(a, b, 0.0, tol).value.re + endpoint_jump(g, b).norm())
}

/// `∫_ℝ |s|^{1/p}|dg(s)|`; divergence is flagged, not an error.
pub fn weighted_variation(g: &BvFunction, p: f64, tol: f64) -> Result<Variation> {
    let e = Exponent::new(p)?;
    Ok(g.weighted_variation(e.inv_p(), tol))
}

fn interval(a: f64, b: f64) -> Result<()> {
    if a < b && a.is_finite() && b.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("need a finite interval a < b, got [{a}, {b}]")))
    }
}

fn endpoint_jump(g: &BvFunction, b: f64) -> Complex64 {
    g.jumps.iter().find(|j| j.at == b).map_or(Complex64::new(0.0, 0.0), |j| j.size())
}

/// `∫_{(a,b]} F dg`: `∫F·g′` over the `C¹` pieces plus `F` times each jump.
/// `F` must be continuous; `oscillation` is its angular frequency, if any.
pub fn stieltjes(
    big_f: &(dyn Fn(f64) -> Complex64 + Sync),
    g: &BvFunction,
    a: f64,
    b: f64,
    oscillation: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    interval(a, b)?;
    let mut cuts = g.cuts(a, b);
    if a < 0.0 && b > 0.0 && !cuts.contains(&0.0) {
        cuts.push(0.0);
        cuts.sort_by(f64::total_cmp);
    }
    let share = tol / (2.0 * (cuts.len() - 1) as f64);
    let omega = g.oscillation + oscillation;
    let windows: Vec<(f64, f64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
    let pieces: Vec<QuadratureResult> = windows
        .par_iter()
        .map(|&(lo, hi)| {
            let n = lobe_pieces(omega, hi - lo);
            Integrator::new().pieces(n).max_segments(20_000.max(4 * n)).integrate(|s| big_f(s) * g.derivative(s), lo, hi, share)
        })
        .collect();
    let mut total = pieces.into_iter().fold(QuadratureResult::exact(Complex64::new(0.0, 0.0)), QuadratureResult::combine);
    for j in g.jumps.iter().filter(|j| j.at > a && j.at <= b) {
        total.value += big_f(j.at) * j.size();
    }
    total.converged = total.converged && total.abs_error_estimate <= tol;
    Ok(total)
}

/// Tolerance for each `Ψ_f` value inside a Stieltjes integral of total
/// variation `v`, so that value errors cost at most `tol/4`.
fn inner_tol(tol: f64, v: f64) -> f64 {
    (tol / (4.0 * (1.0 + v))).max(1e-15)
}

/// Angular frequency at which `Ψ_f` oscillates: `f̂` of a function supported
/// in `[−R, R]` oscillates at frequency `R`.
fn psif_oscillation(f: &TestFunction) -> f64 {
    match f.decay {
        DecayInfo::Compact { a, b } => a.abs().max(b.abs()),
        d => d.onset().min(1e3),
    }
}

fn psif_fn<'a>(f: &'a TestFunction, tol: f64) -> impl Fn(f64) -> Complex64 + Sync + 'a {
    move |s| psif(f, s, tol).map(|r| r.value).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// `∫_a^b f̂·g = Ψ_f(b)g(b) − Ψ_f(a)g(a) − ∫_a^b Ψ_f dg`.
pub fn integrate_fhat_g_finite(f: &TestFunction, g: &BvFunction, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    interval(a, b)?;
    let v = total_variation(g, a, b, 1e-6)?;
    let t_in = inner_tol(tol, v + 2.0 * g.sup_value.min(1e6));
    let pa = psif(f, a, t_in)?;
    let pb = psif(f, b, t_in)?;
    let boundary = pb.value * g.right_limit(b) - pa.value * g.right_limit(a);
    let big_f = psif_fn(f, t_in);
    let inner = stieltjes(&big_f, g, a, b, psif_oscillation(f), tol / 2.0)?;
    let mut r = inner.scale(Complex64::new(-1.0, 0.0));
    r.value += boundary;
    Ok(r.add_error(t_in * (2.0 * g.sup_value.min(1e6) + v)))
}

/// Outcome of the decay hypothesis on `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayVerdict {
    pub pass: bool,
    /// Declared decay exponent of `|g|`; `∞` for compact or exponential tails.
    pub exponent: f64,
    pub reason: String,
}

/// `g(x) = o(|x|^{−1/p})`, read as a strict inequality on the declared
/// exponent `β > 1/p`; for `p = 1`, `β ≥ 1` also suffices.
pub fn decay_check(g: &BvFunction, p: f64) -> DecayVerdict {
    let beta = g.decay_exponent();
    let need = 1.0 / p;
    let pass = beta > need || (p == 1.0 && beta >= 1.0);
    let reason = if pass {
        format!("{} decays with exponent {beta} against the required 1/p = {need}", g.id)
    } else {
        format!("{} decays only like |x|^(-{beta}); o(|x|^(-{need})) is required", g.id)
    };
    DecayVerdict { pass, exponent: beta, reason }
}

/// `∫_ℝ f̂·g = −∫_ℝ Ψ_f dg` for `f ∈ L^p`.
///
/// The core of `g` is integrated directly. Tails with an exact expansion
/// `g(±τ) = Σ c·τ^{−β}e^{iωτ}` are integrated in swapped order,
/// `∫_X^∞ Ψ_f dg = ∫ f(t)·J(t) dt` with `J(t) = ∫_X^∞ u_s(t) dg(s)` in closed
/// form through power–Fourier tails. Other tails are truncated against
/// `C_q‖f‖_p·∫_X^∞ |s|^{1/p}|dg|`.
pub fn integrate_fhat_g_line(f: &TestFunction, g: &BvFunction, p: f64, tol: f64) -> Result<QuadratureResult> {
    if !f.in_lp(p) {
        return Err(Error::hypothesis("L^p membership", format!("{} is not declared in L^{p}", f.id)));
    }
    let verdict = decay_check(g, p);
    if !verdict.pass {
        return Err(Error::hypothesis("decay of g at infinity", verdict.reason));
    }
    let w = weighted_variation(g, p, 1e-6)?;
    if w.divergent {
        return Err(Error::hypothesis(
            "weighted variation divergent",
            format!("{} has unbounded weighted variation ∫|s|^(1/p)|dg(s)| at p = {p}", g.id),
        ));
    }
    let growth = GrowthConstant::new(f, p, 1e-8)?;
    let (lo, hi) = g.core;
    let mut budget = tol / 2.0;
    let mut total = QuadratureResult::exact(Complex64::new(0.0, 0.0));
    let mut ranges = vec![(lo, hi)];
    for (side, tail, edge) in [(Side::Right, &g.right_tail, hi), (Side::Left, &g.left_tail, lo)] {
        match tail {
            BvTail::Zero => {}
            BvTail::Power { exact: Some(terms), .. } if edge.abs() > 0.0 && edge * side.sign() > 0.0 => {
                let t = swapped_tail(f, terms, edge.abs(), side, tol / 8.0)?;
                total = total.combine(t);
            }
            _ => {
                let x = truncation(g, tail, edge.abs(), 1.0 / p, tol / (8.0 * growth.value()))?;
                let bound = growth.value() * weighted_tail(g, tail, edge.abs(), 1.0 / p, x);
                total = total.add_error(bound);
                budget -= tol / 8.0;
                ranges.push(match side {
                    Side::Right => (hi, x),
                    Side::Left => (-x, lo),
                });
            }
        }
    }
    let v = g.weighted_variation(0.0, 1e-6).value;
    let t_in = inner_tol(budget, if v.is_finite() { v } else { 1e6 });
    let big_f = psif_fn(f, t_in);
    let osc = psif_oscillation(f);
    for (a, b) in ranges {
        if b > a {
            let part = stieltjes(&big_f, g, a, b, osc, budget / 2.0)?;
            total = total.combine(part.scale(Complex64::new(-1.0, 0.0)));
        }
    }
    total = total.add_error(t_in * if v.is_finite() { v } else { 0.0 });
    total.converged = total.converged && total.abs_error_estimate <= tol;
    Ok(total)
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Right,
    Left,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Right => 1.0,
            Side::Left => -1.0,
        }
    }
}

/// `−∫_{|s|>X, side} Ψ_f dg` as `−∫ f(t)·J(t) dt`.
///
/// With `G(τ) = Σ c·τ^{−β}e^{iωτ}` for `g(±τ)` and
/// `E(t) = Σ c[−β·P(β+1, ω ∓ t) + iω·P(β, ω ∓ t)]`, `P(γ, ν) = ∫_X^∞ τ^{−γ}e^{iντ}dτ`:
/// right side `J(t) = −(G(X) + E(t))/(it)`, left side `J(t) = (G(X) + E(t))/(it)`.
fn swapped_tail(f: &TestFunction, terms: &[TailTerm], x: f64, side: Side, tol: f64) -> Result<QuadratureResult> {
    let gx: Complex64 = terms.iter().map(|c| c.coef * x.powf(-c.power) * Complex64::from_polar(1.0, c.freq * x)).sum();
    // ∫_X^∞ |G′| bounds |E| and fixes the kernel envelope.
    let var: f64 = terms
        .iter()
        .map(|c| {
            let b = c.power;
            c.coef.norm() * (x.powf(-b) + if c.freq != 0.0 { c.freq.abs() * x.powf(1.0 - b) / (b - 1.0).max(1e-3) } else { 0.0 })
        })
        .sum();
    let p_tol = (tol * 1e-3).max(1e-15);
    let sign = side.sign();
    let kernel = move |t: f64| -> Complex64 {
        if t == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let nu_shift = -sign * t;
        let mut e = Complex64::new(0.0, 0.0);
        for c in terms {
            let nu = c.freq + nu_shift;
            e += c.coef * -c.power * power_fourier_tail(c.power + 1.0, nu, x, p_tol).value;
            if c.freq != 0.0 {
                e += c.coef * Complex64::new(0.0, c.freq) * power_fourier_tail(c.power, nu, x, p_tol).value;
            }
        }
        (gx + e) / Complex64::new(0.0, t) * -sign
    };
    let mut singular: Vec<f64> = vec![0.0];
    singular.extend(terms.iter().filter(|c| c.freq != 0.0).map(|c| sign * c.freq));
    let k = Kernel {
        eval: &kernel,
        right: None,
        left: None,
        onset: 0.0,
        envelope: DecayInfo::Power { exponent: 1.0, onset: 1.0, bound: gx.norm() + var },
        singular_points: singular,
        oscillation: x + terms.iter().fold(0.0f64, |m, c| m.max(c.freq.abs())),
    };
    Ok(pair(f, &k, tol)?.scale(Complex64::new(-1.0, 0.0)))
}

/// Bound on `∫_X^∞ τ^r |g′(±τ)| dτ` from the tail envelope.
fn weighted_tail(g: &BvFunction, tail: &BvTail, edge: f64, r: f64, x: f64) -> f64 {
    let _ = (g, edge);
    match *tail {
        BvTail::Zero => 0.0,
        BvTail::Exponential { rate, bound } => {
            if x < 2.0 * r / rate {
                f64::INFINITY
            } else {
                2.0 * bound * x.powf(r) * (-rate * x).exp() / rate
            }
        }
        BvTail::Power { derivative_exponent, bound, .. } => {
            let e = derivative_exponent - r;
            if e <= 1.0 {
                f64::INFINITY
            } else {
                bound * x.powf(1.0 - e) / (e - 1.0)
            }
        }
    }
}

fn truncation(g: &BvFunction, tail: &BvTail, edge: f64, r: f64, budget: f64) -> Result<f64> {
    let mut x = edge.max(1.0);
    while weighted_tail(g, tail, edge, r, x) > budget {
        x *= 1.5;
        if x > MAX_TRUNCATION {
            return Err(Error::UnreachableTolerance {
                tol: budget,
                reason: format!("tail of {} needs truncation beyond {MAX_TRUNCATION:e}", g.id),
            });
        }
    }
    Ok(x)
}

/// `∫_0^a f̂·g = Ψ_f(a)g(a⁺) − ∫_{(0,a]} Ψ_f dg` for `g` singular at `0⁺` like
/// `x^{−γ}` with `γ < 1/p`; the boundary term at `0` vanishes by the growth
/// bound. The Stieltjes integral is accumulated over dyadic shells
/// `(a2^{−k−1}, a2^{−k}]` until the geometric remainder is below `tol/4`.
pub fn integrate_fhat_halfline_singular(f: &TestFunction, g: &BvFunction, a: f64, p: f64, tol: f64) -> Result<QuadratureResult> {
    let e = Exponent::new(p)?;
    if !(a > 0.0) {
        return Err(Error::invalid(format!("need a > 0, got {a}")));
    }
    let gamma = g.origin_exponent.unwrap_or(0.0);
    if gamma >= e.inv_p() {
        return Err(Error::hypothesis(
            "singular exponent at origin",
            format!("{} behaves like x^(-{gamma}) at 0+, which needs γ < 1/p = {}", g.id, e.inv_p()),
        ));
    }
    let t_in = (tol * 1e-3).max(1e-15);
    let big_f = psif_fn(f, t_in);
    let pa = psif(f, a, t_in)?;
    let mut total = QuadratureResult::exact(pa.value * g.right_limit(a));
    // Shell contributions shrink like 2^{−k(1/p−γ)} at worst.
    let ratio = 2f64.powf(-(e.inv_p() - gamma));
    let mut hi = a;
    for _ in 0..200 {
        let lo = hi / 2.0;
        let shell = stieltjes(&big_f, g, lo, hi, 0.0, tol / 64.0)?;
        total = total.combine(shell.scale(Complex64::new(-1.0, 0.0)));
        hi = lo;
        let remainder = shell.value.norm() * ratio / (1.0 - ratio);
        if remainder < tol / 4.0 && hi < a * 1e-3 {
            return Ok(total.add_error(remainder));
        }
    }
    total.converged = false;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bv::{self, Jump};
    use crate::catalog::builtin;
    use crate::constants::cq;
    use crate::lp::lp_norm;
    use crate::special::si;
    use std::f64::consts::PI;

    fn identity_bv(lo: f64, hi: f64) -> BvFunction {
        BvFunction::real("s", (lo, hi), |s| s, |_| 1.0)
    }

    fn constant_bv(lo: f64, hi: f64) -> BvFunction {
        BvFunction::real("1", (lo, hi), |_| 1.0, |_| 0.0)
    }

    #[test]
    fn variations() {
        assert_eq!(total_variation(&constant_bv(-1.0, 1.0), -1.0, 1.0, 1e-12).unwrap(), 0.0);
        assert_eq!(total_variation(&bv::indicator01(), -1.0, 2.0, 1e-12).unwrap(), 2.0);
        let fejer = bv::cesaro_fejer_kernel(1.0).scale(1.0 / (2.0 * PI));
        assert!((total_variation(&fejer, -2.0, 2.0, 1e-12).unwrap() - 1.0 / PI).abs() < 1e-12);
        assert!((weighted_variation(&bv::indicator01(), 2.0, 1e-12).unwrap().value - 1.0).abs() < 1e-12);
        assert!(weighted_variation(&bv::sinc(), 2.0, 1e-8).unwrap().divergent);
    }

    #[test]
    fn stieltjes_basics() {
        let id = |s: f64| Complex64::new(s, 0.0);
        let r = stieltjes(&id, &identity_bv(0.0, 1.0), 0.0, 1.0, 0.0, 1e-12).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-13);
        let zero = Complex64::new(0.0, 0.0);
        let step = BvFunction::real("H", (-1.0, 1.0), |s| if s >= 0.0 { 1.0 } else { 0.0 }, |_| 0.0)
            .with_jumps(vec![Jump { at: 0.0, left: zero, right: Complex64::new(1.0, 0.0) }]);
        let cosine = |s: f64| Complex64::new((s + 0.3).cos(), 0.0);
        let r = stieltjes(&cosine, &step, -1.0, 1.0, 0.0, 1e-12).unwrap();
        assert!((r.value.re - 0.3f64.cos()).abs() < 1e-14);
        let cube = BvFunction::real("s^3", (0.0, 2.0), |s| s * s * s, |s| 3.0 * s * s);
        let sq = |s: f64| Complex64::new(s * s, 0.0);
        let r = stieltjes(&sq, &cube, 0.0, 2.0, 0.0, 1e-12).unwrap();
        assert!((r.value.re - 96.0 / 5.0).abs() < 1e-11);
    }

    #[test]
    fn stieltjes_matches_refining_riemann_sums() {
        let cube = BvFunction::real("s^3", (0.0, 2.0), |s| s * s * s, |s| 3.0 * s * s);
        let sq = |s: f64| s * s;
        let exact = 96.0 / 5.0;
        let mut last = f64::INFINITY;
        for n in [100usize, 1_000, 10_000] {
            let h = 2.0 / n as f64;
            let sum: f64 = (0..n).map(|k| sq((k as f64 + 0.5) * h) * (cube.value((k + 1) as f64 * h) - cube.value(k as f64 * h)).re).sum();
            let err = (sum - exact).abs();
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-5);
    }

    #[test]
    fn additivity_across_a_jump() {
        let f = builtin("gaussian").unwrap();
        let g = bv::power_tail(0.8);
        let whole = integrate_fhat_g_finite(&f, &g, 0.0, 3.0, 1e-9).unwrap().value;
        let left = integrate_fhat_g_finite(&f, &g, 0.0, 1.0, 1e-9).unwrap().value;
        let right = integrate_fhat_g_finite(&f, &g, 1.0, 3.0, 1e-9).unwrap().value;
        assert!((whole - left - right).norm() < 1e-8);
        let direct = Integrator::new().integrate(|s| f.closed_form_fhat(s).unwrap() * s.powf(-0.8), 1.0, 3.0, 1e-12).value;
        assert!((whole - direct).norm() < 1e-8);
    }

    #[test]
    fn finite_interval_cases() {
        let ind = builtin("indicator").unwrap();
        for &s in &[0.5, 3.0] {
            let r = integrate_fhat_g_finite(&ind, &constant_bv(-1.0, 5.0), 0.0, s, 1e-9).unwrap();
            assert!((r.value.re - 2.0 * si(s)).abs() < 1e-8);
        }
        let g = builtin("gaussian").unwrap();
        let r = integrate_fhat_g_finite(&g, &identity_bv(-1.0, 2.0), 0.0, 1.0, 1e-9).unwrap();
        // ∫_0^1 √π e^{−σ²/4} σ dσ = 2√π(1 − e^{−1/4}).
        let oracle = 2.0 * PI.sqrt() * (1.0 - (-0.25f64).exp());
        assert!((r.value.re - oracle).abs() < 1e-8, "{} vs {oracle}", r.value);
    }

    #[test]
    fn decay_verdicts() {
        assert!(decay_check(&bv::indicator01(), 1.0).pass);
        assert!(decay_check(&bv::cesaro_fejer_kernel(1.0), 5.0).pass);
        let p_tail = bv::power_tail(0.4);
        assert!(!decay_check(&p_tail, 2.0).pass);
        assert!(decay_check(&p_tail, 3.0).pass);
        let mut unit = bv::power_tail(0.5);
        unit.right_tail = BvTail::Power { value_exponent: 1.0, derivative_exponent: 2.0, bound: 1.0, exact: None };
        assert!(decay_check(&unit, 1.0).pass);
    }

    #[test]
    fn line_against_classical_transform() {
        // Gauss–Weierstrass K₁ paired with f̂ = 2 sin s/s.
        let ind = builtin("indicator").unwrap();
        let g = bv::gauss_weierstrass_kernel(1.0);
        let r = integrate_fhat_g_line(&ind, &g, 1.0, 1e-8).unwrap();
        let oracle = crate::quadrature::integrate_line(
            |s| Complex64::new(if s == 0.0 { 2.0 } else { 2.0 * s.sin() / s } * (-s * s).exp(), 0.0),
            DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: 2.0 },
            1e-12,
        )
        .unwrap();
        assert!((r.value - oracle.value).norm() < 1e-7, "{} vs {}", r.value, oracle.value);
        // Compact g agrees with the finite form on its support.
        let fejer = bv::cesaro_fejer_kernel(1.0);
        let a = integrate_fhat_g_line(&ind, &fejer, 2.0, 1e-8).unwrap().value;
        let b = integrate_fhat_g_finite(&ind, &fejer, -1.0, 1.0, 1e-8).unwrap().value;
        assert!((a - b).norm() < 1e-7);
    }

    #[test]
    fn swapped_tail_for_power_tail_g() {
        // ∫ f̂·g with f̂ = √π e^{−s²/4} and g = s^{−0.8} on (1, ∞).
        let f = builtin("gaussian").unwrap();
        let g = bv::power_tail(0.8);
        let r = integrate_fhat_g_line(&f, &g, 2.0, 1e-8).unwrap();
        let oracle = Integrator::new().integrate(|s| f.closed_form_fhat(s).unwrap() * s.powf(-0.8), 1.0, 40.0, 1e-13).value;
        assert!((r.value - oracle).norm() < 1e-7, "{} vs {oracle}", r.value);
        let bound = cq(2.0, 1e-10).unwrap().value * lp_norm(&f, 2.0, 1e-10).unwrap() * weighted_variation(&g, 2.0, 1e-10).unwrap().value;
        assert!(r.value.norm() <= bound);
    }

    #[test]
    fn sinc_and_slow_decay_rejected() {
        let f = builtin("gaussian").unwrap();
        let e = integrate_fhat_g_line(&f, &bv::sinc(), 2.0, 1e-6).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("weighted variation divergent"));
        assert!(e.to_string().contains("unbounded weighted variation"));
        let e = integrate_fhat_g_line(&f, &bv::power_tail(0.4), 2.0, 1e-6).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("decay of g at infinity"));
    }

    #[test]
    fn halfline_with_singular_g() {
        let f = builtin("gaussian").unwrap();
        let one = constant_bv(0.0, 2.0);
        let r = integrate_fhat_halfline_singular(&f, &one, 1.5, 2.0, 1e-9).unwrap();
        assert!((r.value - psif(&f, 1.5, 1e-12).unwrap().value).norm() < 1e-9);
        let gamma = 0.3;
        let g = bv::origin_power(gamma);
        // At a = 1 the jump of g sits on the endpoint.
        for a in [0.8, 1.0] {
            let r = integrate_fhat_halfline_singular(&f, &g, a, 2.0, 1e-8).unwrap();
            let oracle = Integrator::new().integrate(|s| f.closed_form_fhat(s).unwrap() * s.powf(-gamma), 0.0, a, 1e-13).value;
            assert!((r.value - oracle).norm() < 1e-7, "{} vs {oracle}", r.value);
        }
        let e = integrate_fhat_halfline_singular(&f, &bv::origin_power(0.5), 0.8, 2.0, 1e-8).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("singular exponent at origin"));
    }
}
