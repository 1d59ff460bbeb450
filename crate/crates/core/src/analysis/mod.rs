//! The exchange formula `∫f̂·g = ∫f·ĝ`, approximate-identity inversion and the
//! two convolution identities. Every check computes both sides by independent
//! routes and compares them against a stated budget.

mod convolution;
mod inversion;
mod proposition;

use num_complex::Complex64;
use serde_json::json;

use crate::ap_integration::{integrate_fhat_g_line, weighted_variation};
use crate::bv::BvFunction;
use crate::catalog::{TailTerm, TestFunction};
use crate::constants::cq;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::lp::lp_norm;
use crate::pairing::{pair, Kernel};
use crate::quadrature::{DecayInfo, QuadratureResult};

pub use convolution::{convolution_exchange_check, double_kernel_check, DoubleKernelReport};
pub use inversion::{
    inversion_apply, inversion_hypotheses, inversion_sweep, is_decreasing, make_kernel, HypothesisCheck, KernelFamily,
    KernelVariant, Route, SweepPoint,
};
pub use proposition::{proposition_checker, Clause, Conclusion, PropositionReport};

/// `f̂(s) = ∫e^{−ist}f(t)dt` for `f ∈ L¹`.
pub fn fhat_direct(g: &TestFunction, s: f64, tol: f64) -> Result<QuadratureResult> {
    if !g.in_l1() {
        return Err(Error::hypothesis(
            "L1 membership",
            format!("{} is not declared integrable (membership {})", g.id, g.lp_membership),
        ));
    }
    let e = move |t: f64| Complex64::from_polar(1.0, -s * t);
    let k = Kernel::bounded(&e, DecayInfo::Power { exponent: 0.0, onset: 0.0, bound: 1.0 }, s.abs());
    pair(g, &k, tol)
}

/// `f̂(s)` as an improper integral, summing the tails from the declared
/// expansion. Covers functions that vanish at infinity too slowly to be
/// integrable, such as `x^{−α}` on `(1, ∞)`. Needs `s ≠ 0` unless the tails
/// are integrable.
pub fn fhat_improper(g: &TestFunction, s: f64, tol: f64) -> Result<QuadratureResult> {
    if !g.has_exact_tails() {
        return Err(Error::hypothesis("L1 membership", format!("{} is neither integrable nor has a tail expansion", g.id)));
    }
    let e = move |t: f64| Complex64::from_polar(1.0, -s * t);
    let k = Kernel {
        eval: &e,
        right: Some(vec![TailTerm::real(1.0, 0.0, -s)]),
        left: Some(vec![TailTerm::real(1.0, 0.0, s)]),
        onset: 0.0,
        envelope: DecayInfo::Power { exponent: 0.0, onset: 0.0, bound: 1.0 },
        singular_points: Vec::new(),
        oscillation: s.abs(),
    };
    pair(g, &k, tol)
}

/// [`fhat_improper`] when the tails are known exactly, which spares the
/// truncation of slowly decaying tails; [`fhat_direct`] otherwise.
pub fn fhat(g: &TestFunction, s: f64, tol: f64) -> Result<QuadratureResult> {
    if g.has_exact_tails() {
        fhat_improper(g, s, tol)
    } else {
        fhat_direct(g, s, tol)
    }
}

/// Two routes to the same quantity. `pass` iff `abs_diff ≤ budget`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityReport {
    pub lhs: Complex64,
    pub lhs_error: f64,
    pub rhs: Complex64,
    pub rhs_error: f64,
    pub abs_diff: f64,
    pub budget: f64,
    /// Theoretical bound on `|lhs|`, when the identity comes with one.
    pub bound: Option<f64>,
    pub pass: bool,
}

impl EqualityReport {
    pub fn new(lhs: QuadratureResult, rhs: QuadratureResult, budget: f64, bound: Option<f64>) -> Self {
        let abs_diff = (lhs.value - rhs.value).norm();
        EqualityReport {
            lhs: lhs.value,
            lhs_error: lhs.abs_error_estimate,
            rhs: rhs.value,
            rhs_error: rhs.abs_error_estimate,
            abs_diff,
            budget,
            bound,
            pass: abs_diff <= budget,
        }
    }

    /// `|lhs| ≤ bound + budget`; vacuous without a bound.
    pub fn bound_holds(&self) -> bool {
        self.bound.map_or(true, |b| self.lhs.norm() <= b + self.budget)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "lhs_re": self.lhs.re,
            "lhs_im": self.lhs.im,
            "rhs_re": self.rhs.re,
            "rhs_im": self.rhs.im,
            "abs_diff": self.abs_diff,
            "budget": self.budget,
            "bound": self.bound,
            "pass": self.pass,
        })
    }
}

/// Checks the hypotheses on `g` shared by the exchange-type identities and
/// returns `∫|s|^{1/p}|dg|`.
fn exchange_hypotheses(g: &BvFunction, p: f64) -> Result<f64> {
    if !g.limit_zero {
        return Err(Error::hypothesis("limit zero at infinity", format!("{} does not vanish at ±∞", g.id)));
    }
    let w = weighted_variation(g, p, 1e-8)?;
    if w.divergent {
        return Err(Error::hypothesis(
            "weighted variation divergent",
            format!("{} has unbounded weighted variation ∫|s|^(1/p)|dg(s)| at p = {p}", g.id),
        ));
    }
    Ok(w.value)
}

/// `∫f̂·g` (through `Ψ_f`) against `∫f·ĝ` (through the classical transform
/// of `g`), with the bound `C_q‖f‖_p·∫|s|^{1/p}|dg|`.
pub fn exchange_check(f: &TestFunction, g: &BvFunction, p: f64, tol: f64) -> Result<EqualityReport> {
    let e = Exponent::new(p)?;
    let w = exchange_hypotheses(g, p)?;
    let lhs = integrate_fhat_g_line(f, g, p, tol / 10.0)?;
    let gf = g
        .function
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("{} has no representation as a test function", g.id)))?;
    let rhs = pair_with_transform(f, gf, g, tol / 10.0)?;
    let bound = cq(e.q(), 1e-10)?.value * lp_norm(f, p, 1e-10)? * w;
    Ok(EqualityReport::new(lhs, rhs, tol, Some(bound)))
}

/// `∫f·ĝ`, with `ĝ` computed pointwise. `|ĝ(t)| ≤ V(g)/|t|` for BV `g`
/// vanishing at infinity, which is the envelope.
fn pair_with_transform(f: &TestFunction, gf: &TestFunction, g: &BvFunction, tol: f64) -> Result<QuadratureResult> {
    let v = g.weighted_variation(0.0, 1e-8).value;
    let l1 = if f.in_l1() { lp_norm(f, 1.0, 1e-6)? } else { 1.0 };
    let inner = (tol / (20.0 * l1.max(1.0))).max(1e-14);
    let gf = gf.clone();
    let ghat = move |t: f64| fhat(&gf, t, inner).map_or(Complex64::new(f64::NAN, f64::NAN), |r| r.value);
    let mut k = Kernel::bounded(&ghat, DecayInfo::Power { exponent: 1.0, onset: 1.0, bound: v }, g.core.0.abs().max(g.core.1.abs()));
    if !g.function.as_ref().is_some_and(TestFunction::in_l1) {
        // The improper transform may be singular at the origin.
        k.singular_points.push(0.0);
    }
    let r = pair(f, &k, tol)?;
    if r.value.is_nan() {
        return Err(Error::UnreachableTolerance { tol, reason: format!("transform of {} failed inside the pairing", g.id) });
    }
    Ok(r.add_error(inner * l1))
}

/// Checks that `t ↦ f(t)g(x − t)` is integrable for every `x` by one of the
/// Young patterns `L¹∗L^p` or `L^p∗L¹` with a bounded partner.
fn convolution_pattern(f: &TestFunction, g: &TestFunction) -> Result<()> {
    let ok = (g.in_l1() && !f.lp_membership.is_empty() && f.sup_abs.is_finite())
        || (f.in_l1() && !g.lp_membership.is_empty() && g.sup_abs.is_finite())
        || (f.in_l1() && g.in_l1() && (f.decay.is_compact() || g.decay.is_compact()));
    if ok {
        Ok(())
    } else {
        Err(Error::hypothesis(
            "L1 membership",
            format!("neither {} nor {} is integrable with a bounded partner", f.id, g.id),
        ))
    }
}

/// Envelope of `t ↦ g(x − t)`.
fn reflected_shift(decay: DecayInfo, x: f64) -> DecayInfo {
    match decay {
        DecayInfo::Compact { a, b } => DecayInfo::Compact { a: x - b, b: x - a },
        d => d.shifted(x),
    }
}

/// `(f∗g)(x) = ∫f(t)g(x − t)dt`.
pub fn convolve(f: &TestFunction, g: &TestFunction, x: f64, tol: f64) -> Result<QuadratureResult> {
    convolution_pattern(f, g)?;
    convolve_unchecked(f, g, x, tol)
}

fn convolve_unchecked(f: &TestFunction, g: &TestFunction, x: f64, tol: f64) -> Result<QuadratureResult> {
    let eval = |t: f64| g.eval(x - t);
    let mut k = Kernel::bounded(&eval, reflected_shift(g.decay, x), g.oscillation);
    k.singular_points = g.singular_points.iter().map(|s| x - s).collect();
    if let DecayInfo::Compact { a, b } = g.decay {
        k.singular_points.extend([x - b, x - a]);
    }
    pair(f, &k, tol)
}

/// Orders envelopes by how fast they fall off.
fn decay_rank(d: DecayInfo) -> f64 {
    match d {
        DecayInfo::Compact { .. } => f64::INFINITY,
        DecayInfo::Exponential { .. } => f64::MAX,
        DecayInfo::Power { exponent, .. } => exponent,
    }
}

/// `f∗g` as a test function, each value a quadrature at tolerance `tol`.
/// Membership follows Young's inequality from the integrable factor.
pub fn convolution_function(f: &TestFunction, g: &TestFunction, tol: f64) -> Result<TestFunction> {
    convolution_pattern(f, g)?;
    let (integrable, other) = if g.in_l1() { (g, f) } else { (f, g) };
    let l1 = lp_norm(integrable, 1.0, 1e-8)?;
    let mut decay = integrable.decay.convolution(l1, other.decay, other.sup_abs);
    // With both factors integrable the roles can be swapped; either envelope
    // is valid, so keep the faster one.
    if other.in_l1() && integrable.sup_abs.is_finite() {
        let swapped = other.decay.convolution(lp_norm(other, 1.0, 1e-8)?, integrable.decay, integrable.sup_abs);
        if decay_rank(swapped) > decay_rank(decay) {
            decay = swapped;
        }
    }
    let (fc, gc) = (f.clone(), g.clone());
    let h = TestFunction::new(
        format!("{}*{}", f.id, g.id),
        move |x| convolve_unchecked(&fc, &gc, x, tol).map_or(Complex64::new(f64::NAN, f64::NAN), |r| r.value),
        decay,
    )
    .with_lp(other.lp_membership)
    .with_sup(l1 * other.sup_abs)
    .with_oscillation(f.oscillation.max(g.oscillation));
    Ok(h)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::bv::{abel_poisson_kernel, bv_builtin, gauss_weierstrass_kernel, power_tail, sinc};
    use crate::catalog::builtin;
    use crate::special::erf;

    #[test]
    fn classical_transforms() {
        let ind = builtin("indicator").unwrap();
        let gauss = builtin("gaussian").unwrap();
        for &s in &[0.3, 1.0, -2.5, 7.0] {
            let v = fhat_direct(&ind, s, 1e-11).unwrap().value;
            assert!((v.re - 2.0 * s.sin() / s).abs() < 1e-10 && v.im.abs() < 1e-10, "{s}: {v}");
            let v = fhat_direct(&gauss, s, 1e-11).unwrap().value;
            assert!((v.re - PI.sqrt() * (-s * s / 4.0).exp()).abs() < 1e-10, "{s}: {v}");
        }
        let sinc = builtin("sinc").unwrap();
        assert_eq!(fhat_direct(&sinc, 0.5, 1e-8).unwrap_err().hypothesis_name(), Some("L1 membership"));
    }

    #[test]
    fn improper_transform_of_power_tail() {
        // ∫_1^∞ x^{−α}e^{−isx}dx against a Riemann sum plus the last-term tail.
        let g = builtin("power_tail:0.8").unwrap();
        let s = 2.0;
        let v = fhat(&g, s, 1e-10).unwrap().value;
        let (l, n) = (2000.0 * PI, 4_000_000);
        let h = (l - 1.0) / n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let x = 1.0 + (k as f64 + 0.5) * h;
            acc += Complex64::from_polar(x.powf(-0.8), -s * x) * h;
        }
        // ∫_L^∞ x^{−α}e^{−isx} ≈ −i·L^{−α}e^{−isL}/s to first order.
        acc += Complex64::new(0.0, -1.0) * l.powf(-0.8) * Complex64::from_polar(1.0, -s * l) / s;
        assert!((v - acc).norm() < 1e-5, "{v} vs {acc}");
    }

    #[test]
    fn convolutions() {
        let g = builtin("gaussian").unwrap();
        let v = convolve(&g, &g, 0.0, 1e-12).unwrap().value.re;
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-11);
        let v = convolve(&g, &g, 1.3, 1e-12).unwrap().value.re;
        assert!((v - (PI / 2.0).sqrt() * (-1.3f64 * 1.3 / 2.0).exp()).abs() < 1e-11);
        let ind = builtin("indicator").unwrap();
        for &(x, want) in &[(0.0, 2.0), (0.5, 1.5), (-1.75, 0.25), (3.0, 0.0)] {
            let v = convolve(&ind, &ind, x, 1e-12).unwrap().value.re;
            assert!((v - want).abs() < 1e-11, "{x}: {v}");
        }
        // A narrow heat kernel is an approximate identity.
        let narrow = builtin("heat:0.00001").unwrap();
        let v = convolve(&g, &narrow, 0.4, 1e-10).unwrap().value.re;
        assert!((v - (-0.16f64).exp()).abs() < 1e-3);
        let v = convolve(&ind, &narrow, 0.5, 1e-10).unwrap().value.re;
        assert!((v - 1.0).abs() < 1e-3);
    }

    #[test]
    fn convolution_function_matches_erf_form() {
        let ind = builtin("indicator").unwrap();
        let g = builtin("gaussian").unwrap();
        let h = convolution_function(&ind, &g, 1e-12).unwrap();
        for &x in &[0.0, 0.9, -2.2, 6.0] {
            let want = PI.sqrt() / 2.0 * (erf(x + 1.0) - erf(x - 1.0));
            assert!((h.eval(x).re - want).abs() < 1e-11, "{x}");
            assert!(h.decay.envelope(x.abs().max(h.decay.onset())) + 1e-15 >= want.abs() || x.abs() < h.decay.onset());
        }
        assert!(h.in_l1() && h.in_lp(2.0));
    }

    #[test]
    fn exchange_on_gaussian_pairs() {
        // ∫e^{−s²/4}√π·e^{−s²} ds = √π·√(4π/5), both sides.
        let f = builtin("gaussian").unwrap();
        let r = exchange_check(&f, &gauss_weierstrass_kernel(1.0), 2.0, 1e-6).unwrap();
        let exact = PI.sqrt() * (4.0 * PI / 5.0).sqrt();
        assert!(r.pass, "{r:?}");
        assert!((r.lhs.re - exact).abs() < 1e-7 && (r.rhs.re - exact).abs() < 1e-7, "{r:?}");
        assert!(r.bound_holds());
        let r = exchange_check(&builtin("indicator").unwrap(), &abel_poisson_kernel(1.0), 1.0, 1e-6).unwrap();
        assert!(r.pass && r.bound_holds(), "{r:?}");
    }

    #[test]
    fn exchange_with_power_tail() {
        let f = builtin("indicator").unwrap();
        let r = exchange_check(&f, &power_tail(0.8), 2.0, 1e-5).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.bound_holds());
    }

    #[test]
    fn exchange_rejects_sinc_and_non_vanishing() {
        let f = builtin("gaussian").unwrap();
        let e = exchange_check(&f, &sinc(), 2.0, 1e-6).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("weighted variation divergent"));
        assert!(e.to_string().contains("unbounded weighted variation"));
        let mut g = bv_builtin("gaussian").unwrap();
        g.limit_zero = false;
        let e = exchange_check(&f, &g, 2.0, 1e-6).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("limit zero at infinity"));
    }
}
