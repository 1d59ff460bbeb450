use std::f64::consts::{E, PI};

use num_complex::Complex64;

use super::{LpSet, Smoothness, TailExpansion, TailTerm, TestFunction};
use crate::bv;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_oscillatory_sin, DecayInfo};
use crate::special::{erf, si};

const NAMES: &[&str] = &[
    "indicator",
    "gaussian",
    "heat",
    "sinc",
    "abs_pow",
    "abs_pow_odd",
    "power_tail",
    "remark_piecewise",
];

/// Catalog names; parametrised entries accept a `:value` suffix.
pub fn builtin_names() -> &'static [&'static str] {
    NAMES
}

/// One row of the catalog listing.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub lp_membership: String,
    pub closed_form_psif: bool,
    pub closed_form_fhat: bool,
    pub known_norms: bool,
}

pub fn catalog_listing() -> Vec<CatalogEntry> {
    NAMES
        .iter()
        .map(|name| {
            let f = builtin(name).expect("catalog names resolve");
            CatalogEntry {
                id: f.id.clone(),
                lp_membership: f.lp_membership.to_string(),
                closed_form_psif: f.has_closed_form_psif(),
                closed_form_fhat: f.has_closed_form_fhat(),
                known_norms: f.known_lp_norm.is_some(),
            }
        })
        .collect()
}

/// Looks up a catalog function: `indicator`, `gaussian`, `heat[:a]`, `sinc`,
/// `abs_pow[:p]`, `abs_pow_odd[:p]`, `power_tail[:α]`, `remark_piecewise[:α]`.
pub fn builtin(spec: &str) -> Result<TestFunction> {
    let (name, param) = match spec.split_once(':') {
        Some((n, v)) => {
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad parameter in {spec:?}")))?;
            (n.trim(), Some(v))
        }
        None => (spec.trim(), None),
    };
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{name}: {what}")))
        }
    };
    match name {
        "indicator" if param.is_none() => Ok(indicator()),
        "gaussian" if param.is_none() => Ok(gaussian()),
        "sinc" if param.is_none() => Ok(sinc()),
        "heat" => {
            let a = param.unwrap_or(1.0);
            check(a > 0.0 && a.is_finite(), "time parameter must be positive")?;
            Ok(heat(a))
        }
        "abs_pow" => {
            let p = param.unwrap_or(2.0);
            check(p > 1.0 && p.is_finite(), "even variant needs 1 < p < ∞")?;
            Ok(abs_pow(p))
        }
        "abs_pow_odd" => {
            let p = param.unwrap_or(2.0);
            check(p >= 1.0 && p.is_finite(), "odd variant needs 1 ≤ p < ∞")?;
            Ok(abs_pow_odd(p))
        }
        "power_tail" => {
            let alpha = param.unwrap_or(0.8);
            check(alpha > 0.0 && alpha < 1.0, "exponent must lie in (0, 1)")?;
            Ok(power_tail(alpha))
        }
        "remark_piecewise" => {
            let alpha = param.unwrap_or(0.75);
            check(alpha > 0.0 && alpha < 1.0, "exponent must lie in (0, 1)")?;
            Ok(remark_piecewise(alpha))
        }
        _ => Err(Error::UnknownFunction {
            name: spec.to_string(),
            available: NAMES.join(", "),
        }),
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `χ_{(−1,1)}`.
fn indicator() -> TestFunction {
    TestFunction::real("indicator", |t| if t.abs() < 1.0 { 1.0 } else { 0.0 }, DecayInfo::Compact { a: -1.0, b: 1.0 })
        .with_lp(LpSet::all())
        .with_known_norms(|p| Some(2f64.powf(1.0 / p)))
        .with_singular_points(vec![-1.0, 1.0])
        .with_psif(|s| re(2.0 * si(s)))
        .with_fhat(|s| re(if s == 0.0 { 2.0 } else { 2.0 * s.sin() / s }))
        .with_tails(TailExpansion::zero(1.0), TailExpansion::zero(1.0))
        .with_smoothness(Smoothness {
            bounded_variation: true,
            limit_zero: true,
            moment_l1: true,
            moment_limit_zero: true,
            ratio_to_t_vanishes: true,
            ..Smoothness::NONE
        })
        .with_sup(1.0)
        .with_nonnegative()
}

/// `e^{−t²}`.
fn gaussian() -> TestFunction {
    let derivative = TestFunction::real(
        "gaussian'",
        |t| -2.0 * t * (-t * t).exp(),
        DecayInfo::Exponential { rate: 1.0, onset: 2.0, bound: 1.0 },
    )
    .with_lp(LpSet::all())
    .with_smoothness(Smoothness::schwartz())
    .with_sup(2f64.sqrt() * (-0.5f64).exp());
    TestFunction::real("gaussian", |t| (-t * t).exp(), DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: 1.0 })
        .with_lp(LpSet::all())
        .with_known_norms(|p| Some((PI / p).powf(1.0 / (2.0 * p))))
        .with_psif(|s| re(PI * erf(s / 2.0)))
        .with_fhat(|s| re(PI.sqrt() * (-s * s / 4.0).exp()))
        .with_smoothness(Smoothness::schwartz())
        .with_derivative(derivative)
        .with_sup(1.0)
        .with_nonnegative()
        .with_fhat_bv(bv::gaussian(PI.sqrt(), 0.25))
}

/// Heat kernel `Θ_a(t) = e^{−t²/(4a)}/√(4πa)`.
fn heat(a: f64) -> TestFunction {
    let c = 1.0 / (4.0 * PI * a).sqrt();
    let derivative = TestFunction::real(
        format!("heat:{a}'"),
        move |t| -t / (2.0 * a) * c * (-t * t / (4.0 * a)).exp(),
        DecayInfo::Exponential { rate: 1.0, onset: 8.0 * a, bound: c / (2.0 * a * E) },
    )
    .with_lp(LpSet::all())
    .with_smoothness(Smoothness::schwartz())
    .with_sup(c * (2.0 * a).sqrt() / (2.0 * a) * (-0.5f64).exp());
    TestFunction::real(
        format!("heat:{a}"),
        move |t| c * (-t * t / (4.0 * a)).exp(),
        DecayInfo::Exponential { rate: 1.0, onset: 4.0 * a, bound: c },
    )
    .with_lp(LpSet::all())
    .with_known_norms(move |p| Some(c * (4.0 * PI * a / p).powf(1.0 / (2.0 * p))))
    .with_psif(move |s| re(PI.sqrt() / (2.0 * a.sqrt()) * erf(a.sqrt() * s)))
    .with_fhat(move |s| re((-a * s * s).exp()))
    .with_smoothness(Smoothness::schwartz())
    .with_derivative(derivative)
    .with_sup(c)
    .with_nonnegative()
    .with_fhat_bv(bv::gaussian(1.0, a))
}

/// `sin(t)/t`: in `L^p` for `p > 1` only.
fn sinc() -> TestFunction {
    let terms = vec![
        TailTerm::new(Complex64::new(0.0, -0.5), 1.0, 1.0),
        TailTerm::new(Complex64::new(0.0, 0.5), 1.0, -1.0),
    ];
    TestFunction::real("sinc", |t| if t == 0.0 { 1.0 } else { t.sin() / t }, DecayInfo::Power {
        exponent: 1.0,
        onset: 1.0,
        bound: 1.0,
    })
    .with_lp(LpSet::above(1.0))
    .with_known_norms(|p| {
        if p == 2.0 {
            Some(PI.sqrt())
        } else if p == 4.0 {
            Some((2.0 * PI / 3.0).powf(0.25))
        } else {
            None
        }
    })
    .with_psif(|s| re(PI * s.clamp(-1.0, 1.0)))
    .with_fhat(|s| re(if s.abs() < 1.0 { PI } else if s.abs() == 1.0 { PI / 2.0 } else { 0.0 }))
    .with_tails(TailExpansion::new(1.0, terms.clone()), TailExpansion::new(1.0, terms))
    .with_oscillation(1.0)
    .with_smoothness(Smoothness {
        absolutely_continuous: true,
        limit_zero: true,
        derivative_lp: LpSet::above(1.0),
        moment_absolutely_continuous: true,
        ratio_to_t_vanishes: true,
        ..Smoothness::NONE
    })
    .with_sup(1.0)
    .with_fhat_bv(bv::dirichlet_kernel(1.0).scale(PI))
}

/// `∫_0^∞ t^{μ−1}·sin t dt` by lobe splitting, for `−1 < μ < 1`.
fn sine_moment(mu: f64) -> f64 {
    let r = integrate_oscillatory_sin(|t| t.powf(mu - 1.0), 1.0, 0.0, 1e-12);
    debug_assert!(r.converged, "sine moment at μ = {mu}: {r:?}");
    r.value.re
}

/// `|x|^{−1/p}`: locally integrable, in no `L^p` space.
fn abs_pow(p: f64) -> TestFunction {
    let inv = 1.0 / p;
    let k = sine_moment(-inv);
    TestFunction::real(format!("abs_pow:{p}"), move |t| t.abs().powf(-inv), DecayInfo::Power {
        exponent: inv,
        onset: 1.0,
        bound: 1.0,
    })
    .with_lp(LpSet::EMPTY)
    .with_singular_points(vec![0.0])
    .with_psif(move |s| re(2.0 * s.signum() * s.abs().powf(inv) * k))
    .with_tails(
        TailExpansion::new(1.0, vec![TailTerm::real(1.0, inv, 0.0)]),
        TailExpansion::new(1.0, vec![TailTerm::real(1.0, inv, 0.0)]),
    )
    .with_smoothness(Smoothness { limit_zero: true, ratio_to_t_vanishes: true, ..Smoothness::NONE })
    .with_nonnegative()
}

/// `sgn(x)·|x|^{−1/p}`; the transform exists as a principal value.
fn abs_pow_odd(p: f64) -> TestFunction {
    let inv = 1.0 / p;
    // ∫_0^∞ (1 − cos u)·u^{−1−1/p} du = p·∫_0^∞ sin u·u^{−1/p} du.
    let k = p * sine_moment(1.0 - inv);
    TestFunction::real(format!("abs_pow_odd:{p}"), move |t| t.signum() * t.abs().powf(-inv), DecayInfo::Power {
        exponent: inv,
        onset: 1.0,
        bound: 1.0,
    })
    .with_lp(LpSet::EMPTY)
    .with_singular_points(vec![0.0])
    .with_psif(move |s| Complex64::new(0.0, -2.0 * s.abs().powf(inv) * k))
    .with_tails(
        TailExpansion::new(1.0, vec![TailTerm::real(-1.0, inv, 0.0)]),
        TailExpansion::new(1.0, vec![TailTerm::real(1.0, inv, 0.0)]),
    )
    .with_smoothness(Smoothness { limit_zero: true, ratio_to_t_vanishes: true, ..Smoothness::NONE })
}

/// `x^{−α}` on `(1, ∞)`, zero elsewhere.
fn power_tail(alpha: f64) -> TestFunction {
    TestFunction::real(format!("power_tail:{alpha}"), move |t| if t > 1.0 { t.powf(-alpha) } else { 0.0 }, DecayInfo::Power {
        exponent: alpha,
        onset: 1.0,
        bound: 1.0,
    })
    .with_lp(LpSet::above(1.0 / alpha))
    .with_known_norms(move |p| Some((1.0 / (alpha * p - 1.0)).powf(1.0 / p)))
    .with_singular_points(vec![1.0])
    .with_tails(TailExpansion::zero(1.0), TailExpansion::new(1.0, vec![TailTerm::real(1.0, alpha, 0.0)]))
    .with_smoothness(Smoothness {
        bounded_variation: true,
        limit_zero: true,
        ratio_to_t_vanishes: true,
        ..Smoothness::NONE
    })
    .with_sup(1.0)
}

/// `x^{−α}` on `(0, 1]`, `e^{1−x}` beyond, zero on the negative axis.
fn remark_piecewise(alpha: f64) -> TestFunction {
    TestFunction::real(
        format!("remark_piecewise:{alpha}"),
        move |t| {
            if t <= 0.0 {
                0.0
            } else if t <= 1.0 {
                t.powf(-alpha)
            } else {
                (1.0 - t).exp()
            }
        },
        DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: E },
    )
    .with_lp(LpSet::below(1.0 / alpha))
    .with_known_norms(move |p| Some((1.0 / (1.0 - alpha * p) + 1.0 / p).powf(1.0 / p)))
    .with_singular_points(vec![0.0, 1.0])
    .with_smoothness(Smoothness {
        limit_zero: true,
        moment_l1: true,
        moment_absolutely_continuous: true,
        moment_limit_zero: true,
        // h' = (1−α)x^{−α} near 0⁺.
        moment_derivative_lp: LpSet::below(1.0 / alpha),
        ratio_to_t_vanishes: true,
        ..Smoothness::NONE
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_finite, integrate_line};
    use statrs::function::gamma::gamma;

    #[test]
    fn unknown_name_lists_everything() {
        let err = builtin("cauchy").unwrap_err();
        match err {
            Error::UnknownFunction { available, .. } => assert!(NAMES.iter().all(|n| available.contains(n))),
            e => panic!("{e:?}"),
        }
        assert!(builtin("abs_pow:1").is_err());
        assert!(builtin("abs_pow_odd:1").is_ok());
        assert!(builtin("heat:abc").is_err());
    }

    #[test]
    fn closed_form_psif_vanishes_at_origin() {
        for name in NAMES {
            let f = builtin(name).unwrap();
            if let Some(v) = f.closed_form_psif(0.0) {
                assert_eq!(v.norm(), 0.0, "{name}");
            }
        }
    }

    #[test]
    fn singular_points_lie_in_support() {
        for name in NAMES {
            let f = builtin(name).unwrap();
            if let DecayInfo::Compact { a, b } = f.decay {
                assert!(f.singular_points.iter().all(|&x| x >= a && x <= b), "{name}");
            }
        }
    }

    #[test]
    fn sine_moments_match_gamma_oracle() {
        // ∫_0^∞ t^{μ−1} sin t dt = Γ(μ)·sin(πμ/2), −1 < μ < 1.
        for &p in &[1.5, 2.0, 3.0, 5.0] {
            let mu = -1.0 / p;
            let oracle = gamma(mu) * (PI * mu / 2.0).sin();
            assert!((sine_moment(mu) - oracle).abs() < 1e-9, "p = {p}");
        }
        for &p in &[1.0, 2.0, 4.0] {
            let mu = 1.0 - 1.0 / p;
            let oracle = if p == 1.0 { PI / 2.0 } else { gamma(mu) * (PI * mu / 2.0).sin() };
            assert!((sine_moment(mu) - oracle).abs() < 1e-9, "p = {p}");
        }
    }

    #[test]
    fn fhat_closed_forms_match_quadrature() {
        for name in ["indicator", "gaussian", "heat:0.5"] {
            let f = builtin(name).unwrap();
            for &s in &[0.0, 0.7, 2.5] {
                let direct = integrate_line(
                    |t| f.eval(t) * Complex64::from_polar(1.0, -s * t),
                    f.decay,
                    1e-12,
                )
                .unwrap();
                let cf = f.closed_form_fhat(s).unwrap();
                assert!((direct.value - cf).norm() < 1e-10, "{name} at {s}");
            }
        }
    }

    #[test]
    fn gaussian_psif_is_integral_of_transform() {
        let f = builtin("gaussian").unwrap();
        for &s in &[-1.5, 0.5, 2.0] {
            let oracle = integrate_finite(|x| f.closed_form_fhat(x).unwrap(), 0.0, s, 1e-13).value;
            assert!((f.closed_form_psif(s).unwrap() - oracle).norm() < 1e-12);
        }
    }

    #[test]
    fn derivatives_match_finite_differences_and_decay() {
        for name in ["gaussian", "heat:1", "heat:0.3"] {
            let f = builtin(name).unwrap();
            let d = f.derivative().unwrap();
            for k in 0..80 {
                let t = -9.0 + 0.23 * k as f64;
                let h = 1e-6;
                let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
                assert!((fd - d.eval(t)).norm() < 1e-8, "{name} at {t}");
                assert!(d.eval(t).norm() <= d.sup_abs * (1.0 + 1e-12));
                if t.abs() >= d.decay.onset() {
                    assert!(d.eval(t).norm() <= d.decay.envelope(t.abs()));
                }
            }
        }
    }

    #[test]
    fn declared_envelopes_hold() {
        for name in NAMES.iter().copied().chain(["heat:0.2", "heat:3", "power_tail:0.6", "abs_pow:5"]) {
            let f = builtin(name).unwrap();
            let onset = f.decay.onset();
            for k in 0..200 {
                let t = onset * 1.07f64.powi(k);
                for x in [t, -t] {
                    assert!(
                        f.eval(x).norm() <= f.decay.envelope(t) * (1.0 + 1e-12),
                        "{name} at {x}: {} > {}",
                        f.eval(x).norm(),
                        f.decay.envelope(t)
                    );
                }
            }
        }
    }

    #[test]
    fn exact_tails_reproduce_the_function() {
        for name in ["sinc", "abs_pow:3", "abs_pow_odd:1.5", "power_tail:0.8", "indicator"] {
            let f = builtin(name).unwrap();
            let (r, l) = (f.right_tail.as_ref().unwrap(), f.left_tail.as_ref().unwrap());
            for &tau in &[1.5, 7.0, 40.0] {
                assert!((r.eval(tau) - f.eval(tau)).norm() < 1e-14, "{name}");
                assert!((l.eval(tau) - f.eval(-tau)).norm() < 1e-14, "{name}");
                let (ra, la) = (f.right_abs.as_ref().unwrap(), f.left_abs.as_ref().unwrap());
                let m = |a: &super::super::AbsTail| (a.profile)(tau) * tau.powf(-a.power);
                assert!((m(ra) - f.eval(tau).norm()).abs() < 1e-14, "{name}");
                assert!((m(la) - f.eval(-tau).norm()).abs() < 1e-14, "{name}");
            }
        }
        let sinc = builtin("sinc").unwrap();
        assert!((sinc.right_abs.as_ref().unwrap().period - PI).abs() < 1e-12);
    }

    #[test]
    fn transforms_keep_tails_consistent() {
        let f = builtin("sinc").unwrap();
        for g in [f.modulate(0.7), f.reflect(), f.dilate(-2.0, 0.0), f.scale(Complex64::new(0.0, 3.0))] {
            let (r, l) = (g.right_tail.as_ref().unwrap(), g.left_tail.as_ref().unwrap());
            for &tau in &[2.0, 9.5] {
                assert!((r.eval(tau) - g.eval(tau)).norm() < 1e-13, "{}", g.id);
                assert!((l.eval(tau) - g.eval(-tau)).norm() < 1e-13, "{}", g.id);
            }
        }
        let h = builtin("gaussian").unwrap().dilate(2.0, 1.0);
        assert!((h.eval(0.3).re - (-(1.6f64).powi(2)).exp()).abs() < 1e-15);
        assert!((h.known_lp_norm(2.0).unwrap() - (PI / 2.0).powf(0.25) / 2f64.sqrt()).abs() < 1e-15);
        assert!(builtin("indicator").unwrap().translate(0.5).right_tail.is_none());
    }

    #[test]
    fn listing_covers_catalog() {
        let rows = catalog_listing();
        assert_eq!(rows.len(), NAMES.len());
        let sinc = rows.iter().find(|r| r.id == "sinc").unwrap();
        assert_eq!(sinc.lp_membership, "(1, inf)");
        assert!(sinc.closed_form_psif && sinc.closed_form_fhat);
        let abs = rows.iter().find(|r| r.id.starts_with("abs_pow:")).unwrap();
        assert_eq!(abs.lp_membership, "{}");
    }

    #[test]
    fn sinc_metadata_records_unbounded_variation() {
        let s = builtin("sinc").unwrap();
        assert!(!s.smoothness.bounded_variation);
        assert!(s.fhat_bv().is_some());
    }
}
