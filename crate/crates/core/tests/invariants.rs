//! Cross-module invariants, checked through the public API on randomized
//! inputs.

use std::f64::consts::PI;

use lpfourier::analysis::{convolution_function, exchange_check, make_kernel, KernelVariant};
use lpfourier::ap_integration::{integrate_fhat_g_finite, weighted_variation};
use lpfourier::bv::{abel_poisson_kernel, bv_builtin, gauss_weierstrass_kernel, power_tail};
use lpfourier::catalog::{builtin, TestFunction};
use lpfourier::cli::GridSpec;
use lpfourier::constants::cq;
use lpfourier::lp::lp_norm;
use lpfourier::psif::{psif, GrowthConstant};
use lpfourier::quadrature::integrate_line;
use lpfourier::Complex64;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn line_integral_is_linear(alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let f = builtin("gaussian").unwrap();
        let g = builtin("heat:0.5").unwrap();
        let h = TestFunction::linear_combination(c(alpha), &f, c(beta), &g);
        let tol = 1e-10;
        let (rf, rg, rh) = (
            integrate_line(|t| f.eval(t), f.decay, tol).unwrap(),
            integrate_line(|t| g.eval(t), g.decay, tol).unwrap(),
            integrate_line(|t| h.eval(t), h.decay, tol).unwrap(),
        );
        let expected = c(alpha) * rf.value + c(beta) * rg.value;
        let budget = rh.abs_error_estimate + alpha.abs() * rf.abs_error_estimate + beta.abs() * rg.abs_error_estimate;
        prop_assert!((rh.value - expected).norm() <= budget + 1e-12);
    }

    #[test]
    fn real_functions_give_conjugate_symmetric_primitives(s in 0.05f64..15.0, name in prop::sample::select(vec!["indicator", "gaussian", "heat:2", "sinc"])) {
        let f = builtin(name).unwrap();
        let plus = psif(&f, s, 1e-10).unwrap();
        let minus = psif(&f, -s, 1e-10).unwrap();
        let budget = plus.abs_error_estimate + minus.abs_error_estimate + 1e-12;
        prop_assert!((minus.value + plus.value.conj()).norm() <= budget);
    }

    #[test]
    fn growth_bound_holds(s in -30.0f64..30.0, p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, 5.0])) {
        for name in ["indicator", "gaussian"] {
            let f = builtin(name).unwrap();
            let g = GrowthConstant::new(&f, p, 1e-9).unwrap();
            let v = psif(&f, s, 1e-9).unwrap();
            let err = v.abs_error_estimate + g.bound(s) * g.rel_error;
            prop_assert!(g.bound(s) - v.value.norm() >= -10.0 * err, "{} at p = {}, s = {}", name, p, s);
        }
    }

    #[test]
    fn sharp_constant_is_continuous(q in 1.5f64..10.0) {
        let a = cq(q, 1e-10).unwrap().value;
        let b = cq(q + 1e-3, 1e-10).unwrap().value;
        prop_assert!((a - b).abs() < 1e-2);
    }

    #[test]
    fn finite_integration_is_additive(split in -1.5f64..2.5) {
        let f = builtin("gaussian").unwrap();
        let g = bv_builtin("indicator01").unwrap();
        let tol = 1e-9;
        let whole = integrate_fhat_g_finite(&f, &g, -2.0, 3.0, tol).unwrap();
        let left = integrate_fhat_g_finite(&f, &g, -2.0, split, tol).unwrap();
        let right = integrate_fhat_g_finite(&f, &g, split, 3.0, tol).unwrap();
        let budget = whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate;
        prop_assert!((whole.value - left.value - right.value).norm() <= budget + 1e-9);
    }

    #[test]
    fn grid_points_are_ordered_with_exact_ends(start in -50.0f64..50.0, width in 1e-3f64..100.0, count in 2usize..60, log in any::<bool>()) {
        let start = if log { start.abs() + 1e-3 } else { start };
        let stop = start + width;
        let spacing = if log { "log" } else { "linear" };
        let grid: GridSpec = format!("{start}:{stop}:{count}:{spacing}").parse().unwrap();
        let pts = grid.points();
        prop_assert_eq!(pts.len(), count);
        prop_assert_eq!(pts[0], start);
        prop_assert_eq!(pts[count - 1], stop);
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn exchange_respects_the_weighted_variation_bound() {
    let cases = [
        ("gaussian", gauss_weierstrass_kernel(1.0), 2.0),
        ("indicator", abel_poisson_kernel(0.5), 1.0),
        ("indicator", power_tail(0.8), 2.0),
        ("heat:1", gauss_weierstrass_kernel(0.3), 3.0),
    ];
    for (name, g, p) in cases {
        let f = builtin(name).unwrap();
        let r = exchange_check(&f, &g, p, 1e-6).unwrap();
        assert!(r.pass, "{name}/{}: {r:?}", g.id);
        let q = p / (p - 1.0);
        let bound = cq(q, 1e-10).unwrap().value * lp_norm(&f, p, 1e-10).unwrap() * weighted_variation(&g, p, 1e-8).unwrap().value;
        assert!(r.lhs.norm() <= bound + r.budget, "{name}/{}: {} > {bound}", g.id, r.lhs.norm());
    }
}

#[test]
fn kernel_densities_have_unit_mass() {
    for v in [KernelVariant::CesaroFejer, KernelVariant::AbelPoisson, KernelVariant::GaussWeierstrass] {
        for a in [1.0, 0.25] {
            let k = make_kernel(v, a).unwrap();
            assert!((k.mass - 1.0).abs() < 1e-10, "{v} at a = {a}: {}", k.mass);
        }
    }
}

#[test]
fn young_inequality_on_smoothed_functions() {
    for name in ["indicator", "gaussian"] {
        let f = builtin(name).unwrap();
        for v in [KernelVariant::GaussWeierstrass, KernelVariant::AbelPoisson] {
            let k = make_kernel(v, 0.5).unwrap();
            let smooth = convolution_function(&f, &k.psi, 1e-10).unwrap();
            for p in [1.0, 2.0, 3.0] {
                let lhs = lp_norm(&smooth, p, 1e-6).unwrap();
                let rhs = lp_norm(&f, p, 1e-10).unwrap() * k.mass;
                assert!(lhs <= rhs + 1e-5, "{name}/{v}/p = {p}: {lhs} > {rhs}");
            }
        }
    }
}

#[test]
fn little_o_at_p_one() {
    let f = builtin("indicator").unwrap();
    let ratios: Vec<f64> = [10.0, 1e2, 1e3, 1e4].iter().map(|&s| psif(&f, s, 1e-10).unwrap().value.norm() / s).collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
    assert!((ratios[3] * 1e4 - PI).abs() < 1e-3);
}
