use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{convolution_function, exchange_hypotheses, fhat, fhat_direct, proposition_checker, EqualityReport};
use crate::ap_integration::{integrate_fhat_g_line, stieltjes};
use crate::bv::{BvFunction, BvTail};
use crate::catalog::{ComplexFn, TestFunction};
use crate::constants::cq;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::lp::lp_norm;
use crate::pairing::{pair, Kernel};
use crate::quadrature::{DecayInfo, Integrator, QuadratureResult};

/// `∫(f∗g₁)^·g₂` against `∫f̂·(ĝ₁g₂)`.
///
/// The left side pairs `Ψ_{f∗g₁}`, with `f∗g₁` evaluated pointwise by
/// quadrature, against `g₂`. The right side pairs `Ψ_f` against the product
/// `ĝ₁·g₂`, which needs `ĝ₁` as a function of bounded variation; only a
/// closed-form representation is accepted for that.
pub fn convolution_exchange_check(
    f: &TestFunction,
    g1: &TestFunction,
    g2: &BvFunction,
    p: f64,
    tol: f64,
) -> Result<EqualityReport> {
    let e = Exponent::new(p)?;
    if !g1.in_l1() {
        return Err(Error::hypothesis("L1 membership", format!("{} is not integrable", g1.id)));
    }
    if !g2.function.as_ref().is_some_and(TestFunction::in_l1) {
        return Err(Error::hypothesis("L1 membership", format!("{} is not integrable", g2.id)));
    }
    let w = exchange_hypotheses(g2, p)?;
    let g1_hat = match g1.fhat_bv() {
        Some(b) => b.clone(),
        None => {
            let report = proposition_checker(g1);
            let reason = match report.fhat_in_bv {
                Some(c) => format!(
                    "clause ({c}) gives bounded variation of the transform of {}, but no representation of it is available",
                    g1.id
                ),
                None => format!("bounded variation of the transform of {} is not certified", g1.id),
            };
            return Err(Error::hypothesis("transform of g1 bounded variation", reason));
        }
    };
    if !f.in_lp(p) {
        return Err(Error::hypothesis("L^p membership", format!("{} is not declared in L^{p}", f.id)));
    }
    let h = convolution_function(f, g1, (tol * 1e-4).max(1e-14))?;
    let lhs = integrate_fhat_g_line(&h, g2, p, tol / 10.0)?;
    let rhs = integrate_fhat_g_line(f, &g1_hat.product(g2), p, tol / 10.0)?;
    // Young: ‖f∗g₁‖_p ≤ ‖f‖_p‖g₁‖₁.
    let bound = cq(e.q(), 1e-10)?.value * lp_norm(f, p, 1e-10)? * lp_norm(g1, 1.0, 1e-10)? * w;
    Ok(EqualityReport::new(lhs, rhs, tol, Some(bound)))
}

/// Outcome of the double-kernel identity, with the properties of `g₁∗g₂`
/// that its proof relies on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleKernelReport {
    pub report: EqualityReport,
    /// `V(g₁∗g₂)` of the interpolant.
    pub variation: f64,
    /// `V(g₁)·‖g₂‖₁`.
    pub variation_bound: f64,
    /// `∫|s|^{1/p}|d(g₁∗g₂)|`.
    pub weighted_variation: f64,
    /// Largest interpolation error seen at cell midpoints.
    pub grid_error: f64,
    pub nodes: usize,
}

impl DoubleKernelReport {
    pub fn variation_holds(&self) -> bool {
        self.variation <= self.variation_bound * (1.0 + 1e-9) + self.grid_error
    }
}

/// `∫f̂·(g₁∗g₂)` against `∫f·ĝ₁·ĝ₂`.
///
/// `g₁∗g₂` becomes a Hermite interpolant on a uniform grid, with values
/// `∫g₁(u)g₂(x−u)du` and derivatives `∫g₂(x−u)dg₁(u)`, refined until the
/// midpoint error is below `tol/10`. Beyond the grid its tails are bounded by
/// `‖g₁‖₁·env₂(|x| − c)` and `V(g₁)·env₂(|x| − c)`, where `g₁` vanishes
/// outside `[−c, c]`. The right side is a direct quadrature of the triple
/// product with both transforms computed pointwise.
pub fn double_kernel_check(f: &TestFunction, g1: &BvFunction, g2: &TestFunction, p: f64, tol: f64) -> Result<DoubleKernelReport> {
    let e = Exponent::new(p)?;
    let r = e.inv_p();
    let w1 = g1.weighted_variation(r, 1e-8);
    if w1.divergent {
        return Err(Error::hypothesis(
            "weighted variation divergent",
            format!("{} has unbounded weighted variation ∫|s|^(1/p)|dg(s)| at p = {p}", g1.id),
        ));
    }
    if !g2.in_l1() {
        return Err(Error::hypothesis("L1 membership", format!("{} is not integrable", g2.id)));
    }
    if !moment_finite(g2.decay, r) {
        return Err(Error::hypothesis("g2 moment", format!("∫|s|^{r}|{}(s)|ds is not finite by its declared decay", g2.id)));
    }
    let g1f = g1
        .function
        .as_ref()
        .filter(|t| t.in_l1())
        .ok_or_else(|| Error::hypothesis("L1 membership", format!("{} has no integrable representation", g1.id)))?;
    if !f.in_lp(p) {
        return Err(Error::hypothesis("L^p membership", format!("{} is not declared in L^{p}", f.id)));
    }
    if !(matches!(g1.left_tail, BvTail::Zero) && matches!(g1.right_tail, BvTail::Zero)) {
        return Err(Error::invalid(format!("the grid construction needs {} to vanish outside its core", g1.id)));
    }

    let v1 = g1.weighted_variation(0.0, 1e-10).value;
    let g1_l1 = lp_norm(g1f, 1.0, 1e-10)?;
    let g2_l1 = lp_norm(g2, 1.0, 1e-10)?;
    let c = g1.core.0.abs().max(g1.core.1.abs());
    let direct = DirectConvolution { g1: g1.clone(), g2: g2.clone(), tol: (tol * 1e-4).max(1e-14) };
    let (tail, edge) = convolution_tail(g2.decay, c, g1_l1.max(v1));
    let x_max = grid_extent(&tail, edge, r, tol * 1e-4);

    let mut n = 64usize;
    let (h, grid_error) = loop {
        let nodes: Vec<f64> = (0..=n).map(|i| -x_max + 2.0 * x_max * i as f64 / n as f64).collect();
        let data: Vec<(Complex64, Complex64)> = nodes.par_iter().map(|&x| direct.both(x)).collect();
        let (values, derivs) = data.into_iter().unzip();
        let h = direct.interpolant(nodes.clone(), values, derivs, tail.clone());
        let worst = nodes
            .par_windows(2)
            .map(|w| {
                let m = 0.5 * (w[0] + w[1]);
                (h.value(m) - direct.value(m)).norm()
            })
            .reduce(|| 0.0, f64::max);
        if worst <= tol / 10.0 {
            break (h, worst);
        }
        if n >= 1 << 16 {
            return Err(Error::UnreachableTolerance {
                tol,
                reason: format!("g1∗g2 interpolation error {worst:e} after {n} cells"),
            });
        }
        n *= 2;
    };

    let variation = h.weighted_variation(0.0, 1e-9).value;
    let wv = h.weighted_variation(r, 1e-9);
    let lhs = integrate_fhat_g_line(f, &h, p, tol / 10.0)?;
    let rhs = triple_product(f, g1f, g2, g1_l1 * g2_l1, tol / 10.0)?;
    let bound = cq(e.q(), 1e-10)?.value * lp_norm(f, p, 1e-10)? * wv.value;
    Ok(DoubleKernelReport {
        report: EqualityReport::new(lhs, rhs, tol, Some(bound)),
        variation,
        variation_bound: v1 * g2_l1,
        weighted_variation: if wv.divergent { f64::INFINITY } else { wv.value },
        grid_error,
        nodes: n + 1,
    })
}

/// `∫|s|^r|g(s)|ds < ∞` read off the decay class.
fn moment_finite(decay: DecayInfo, r: f64) -> bool {
    match decay {
        DecayInfo::Compact { .. } | DecayInfo::Exponential { .. } => true,
        DecayInfo::Power { exponent, .. } => exponent - r > 1.0,
    }
}

/// Tail of `g₁∗g₂` beyond `edge` when `g₁` lives in `[−c, c]`; `scale`
/// bounds both `‖g₁‖₁` and `V(g₁)`.
fn convolution_tail(d2: DecayInfo, c: f64, scale: f64) -> (BvTail, f64) {
    match d2 {
        DecayInfo::Compact { a, b } => (BvTail::Zero, a.abs().max(b.abs()) + c),
        DecayInfo::Exponential { rate, onset, bound } => {
            (BvTail::Exponential { rate, bound: scale * bound * (rate * c).exp() }, onset + c)
        }
        DecayInfo::Power { exponent, onset, bound } => {
            // (|x| − c)^{−β} ≤ 2^β|x|^{−β} once |x| ≥ 2c.
            let t = BvTail::Power {
                value_exponent: exponent,
                derivative_exponent: exponent,
                bound: scale * bound * 2f64.powf(exponent),
                exact: None,
            };
            (t, (onset + c).max(2.0 * c))
        }
    }
}

/// Half-width of the grid: far enough that the weighted tail variation
/// beyond it is below `budget`, so the Stieltjes pairing never leaves it.
fn grid_extent(tail: &BvTail, edge: f64, r: f64, budget: f64) -> f64 {
    let mut x = edge.max(1.0);
    let weighted = |x: f64| match *tail {
        BvTail::Zero => 0.0,
        BvTail::Exponential { rate, bound } => {
            if x < 2.0 * r / rate {
                f64::INFINITY
            } else {
                2.0 * bound * x.powf(r) * (-rate * x).exp() / rate
            }
        }
        // Power tails are truncated by the pairing itself.
        BvTail::Power { .. } => 0.0,
    };
    while weighted(x) > budget && x < 1e4 {
        x *= 1.25;
    }
    x
}

#[derive(Clone)]
struct DirectConvolution {
    g1: BvFunction,
    g2: TestFunction,
    tol: f64,
}

impl DirectConvolution {
    /// `∫g₁(u)g₂(x − u)du` over the core of `g₁`.
    fn value(&self, x: f64) -> Complex64 {
        let (lo, hi) = self.g1.core;
        let mut breaks: Vec<f64> = self.g1.breakpoints.clone();
        breaks.extend(self.g2.singular_points.iter().map(|s| x - s));
        if let DecayInfo::Compact { a, b } = self.g2.decay {
            breaks.extend([x - b, x - a]);
        }
        breaks.retain(|&b| b > lo && b < hi);
        Integrator::new().breakpoints(&breaks).integrate(|u| self.g1.value(u) * self.g2.eval(x - u), lo, hi, self.tol).value
    }

    /// `∫g₂(x − u)dg₁(u)`, the derivative of the convolution.
    fn derivative(&self, x: f64) -> Complex64 {
        let (lo, hi) = self.g1.core;
        let g2 = self.g2.clone();
        let big_f = move |u: f64| g2.eval(x - u);
        stieltjes(&big_f, &self.g1, lo - 1.0, hi, self.g2.oscillation, self.tol).map_or(Complex64::new(f64::NAN, f64::NAN), |r| r.value)
    }

    fn both(&self, x: f64) -> (Complex64, Complex64) {
        (self.value(x), self.derivative(x))
    }

    fn interpolant(&self, nodes: Vec<f64>, values: Vec<Complex64>, derivs: Vec<Complex64>, tail: BvTail) -> BvFunction {
        let (a, b) = (self.clone(), self.clone());
        let outside: (ComplexFn, ComplexFn) = (Arc::new(move |x| a.value(x)), Arc::new(move |x| b.derivative(x)));
        let mut h = BvFunction::hermite(format!("{}*{}", self.g1.id, self.g2.id), nodes, values, derivs, outside)
            .with_tails(tail.clone(), tail)
            .with_oscillation(self.g1.oscillation.max(self.g2.oscillation));
        h.sup_value = self.g1.sup_value.min(f64::MAX) * lp_norm(&self.g2, 1.0, 1e-6).unwrap_or(f64::INFINITY);
        h
    }
}

/// `∫f·ĝ₁·ĝ₂` with both transforms by quadrature; `|ĝ₁ĝ₂| ≤ bound`.
fn triple_product(f: &TestFunction, g1: &TestFunction, g2: &TestFunction, bound: f64, tol: f64) -> Result<QuadratureResult> {
    let inner = (tol / (20.0 * bound.max(1.0))).max(1e-14);
    let (a, b) = (g1.clone(), g2.clone());
    let product = move |s: f64| match (fhat(&a, s, inner), fhat_direct(&b, s, inner)) {
        (Ok(x), Ok(y)) => x.value * y.value,
        _ => Complex64::new(f64::NAN, f64::NAN),
    };
    let spread = |d: DecayInfo| d.onset();
    let k = Kernel::bounded(&product, DecayInfo::Power { exponent: 0.0, onset: 0.0, bound }, spread(g1.decay) + spread(g2.decay));
    let r = pair(f, &k, tol)?;
    if r.value.is_nan() {
        return Err(Error::UnreachableTolerance { tol, reason: "a transform failed inside the triple product".into() });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bv::{abel_poisson_kernel, cesaro_fejer_kernel, gauss_weierstrass_kernel, sinc};
    use crate::catalog::builtin;

    #[test]
    fn convolution_theorem_examples() {
        let r = convolution_exchange_check(
            &builtin("indicator").unwrap(),
            &builtin("gaussian").unwrap(),
            &gauss_weierstrass_kernel(1.0),
            2.0,
            1e-5,
        )
        .unwrap();
        assert!(r.pass && r.bound_holds(), "{r:?}");
        let r = convolution_exchange_check(
            &builtin("gaussian").unwrap(),
            &builtin("heat:1").unwrap(),
            &abel_poisson_kernel(1.0),
            2.0,
            1e-5,
        )
        .unwrap();
        assert!(r.pass && r.bound_holds(), "{r:?}");
    }

    #[test]
    fn convolution_theorem_closed_form() {
        // f = g₁ = gaussian, g₂ = e^{−s²}: ∫π e^{−s²/2}e^{−s²} ds = π√(2π/3).
        let g = builtin("gaussian").unwrap();
        let r = convolution_exchange_check(&g, &g, &gauss_weierstrass_kernel(1.0), 2.0, 1e-6).unwrap();
        let exact = std::f64::consts::PI * (2.0 * std::f64::consts::PI / 3.0).sqrt();
        assert!((r.lhs.re - exact).abs() < 1e-6 && (r.rhs.re - exact).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn uncertified_transform_is_rejected() {
        let e = convolution_exchange_check(
            &builtin("indicator").unwrap(),
            &builtin("indicator").unwrap(),
            &gauss_weierstrass_kernel(1.0),
            2.0,
            1e-5,
        )
        .unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("transform of g1 bounded variation"));
        let e = convolution_exchange_check(&builtin("indicator").unwrap(), &builtin("gaussian").unwrap(), &sinc(), 2.0, 1e-5)
            .unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("L1 membership"));
    }

    #[test]
    fn double_kernel_example() {
        for name in ["indicator", "gaussian"] {
            let f = builtin(name).unwrap();
            let r = double_kernel_check(&f, &cesaro_fejer_kernel(1.0), &builtin("gaussian").unwrap(), 2.0, 1e-5).unwrap();
            assert!(r.report.pass, "{name}: {r:?}");
            assert!(r.variation_holds(), "{r:?}");
            assert!(r.weighted_variation.is_finite());
            assert!(r.grid_error <= 1e-6);
        }
    }

    #[test]
    fn double_kernel_hypotheses() {
        let f = builtin("gaussian").unwrap();
        let e = double_kernel_check(&f, &sinc(), &builtin("gaussian").unwrap(), 2.0, 1e-5).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("weighted variation divergent"));
        let e = double_kernel_check(&f, &cesaro_fejer_kernel(1.0), &builtin("sinc").unwrap(), 2.0, 1e-5).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("L1 membership"));
        // (1 + t²)^{−0.65} is integrable, but |s|^{1/2}·|s|^{−1.3} is not.
        let slow = TestFunction::real("slow", |t| (1.0 + t * t).powf(-0.65), DecayInfo::Power { exponent: 1.3, onset: 0.0, bound: 1.0 })
            .with_lp(crate::catalog::LpSet::above(1.0 / 1.3))
            .with_sup(1.0);
        let e = double_kernel_check(&f, &cesaro_fejer_kernel(1.0), &slow, 2.0, 1e-5).unwrap_err();
        assert_eq!(e.hypothesis_name(), Some("g2 moment"));
    }
}
