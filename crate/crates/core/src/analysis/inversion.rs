//! Approximate-identity inversion `I_a f = (1/2π)∫e^{ixs}K_a(s)f̂(s)ds = f∗ψ_a`
//! for the Cesàro–Fejér, Abel–Poisson and Gauss–Weierstrass families, with
//! the Dirichlet kernel as the inadmissible control.
//!
//! `K_a` here is `ψ̂_a` itself, so `K_a(0) = 1`; tabulations that fold the
//! inverse weight into the kernel carry an extra `1/(2π)`, available through
//! [`KernelFamily::weighted_transform`].

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{convolution_function, convolve, convolve_unchecked};
use crate::ap_integration::integrate_fhat_g_line;
use crate::bv::{abel_poisson_kernel, cesaro_fejer_kernel, dirichlet_kernel, gauss_weierstrass_kernel, BvFunction};
use crate::catalog::{LpSet, Smoothness, TailExpansion, TailTerm, TestFunction};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::lp::lp_norm;
use crate::pairing::{pair, Kernel};
use crate::quadrature::{DecayInfo, Integrator, QuadratureResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelVariant {
    CesaroFejer,
    AbelPoisson,
    GaussWeierstrass,
    Dirichlet,
}

impl KernelVariant {
    pub const ALL: [KernelVariant; 4] =
        [KernelVariant::CesaroFejer, KernelVariant::AbelPoisson, KernelVariant::GaussWeierstrass, KernelVariant::Dirichlet];

    pub fn name(self) -> &'static str {
        match self {
            KernelVariant::CesaroFejer => "cesaro-fejer",
            KernelVariant::AbelPoisson => "abel-poisson",
            KernelVariant::GaussWeierstrass => "gauss-weierstrass",
            KernelVariant::Dirichlet => "dirichlet",
        }
    }
}

impl fmt::Display for KernelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cesaro-fejer" | "fejer" | "cesaro" => Ok(KernelVariant::CesaroFejer),
            "abel-poisson" | "abel" | "poisson" => Ok(KernelVariant::AbelPoisson),
            "gauss-weierstrass" | "gauss" | "weierstrass" => Ok(KernelVariant::GaussWeierstrass),
            "dirichlet" => Ok(KernelVariant::Dirichlet),
            _ => Err(Error::invalid(format!(
                "unknown kernel {s:?}; expected cesaro-fejer, abel-poisson, gauss-weierstrass or dirichlet"
            ))),
        }
    }
}

/// `ψ_a` and its transform `K_a = ψ̂_a`.
#[derive(Debug, Clone)]
pub struct KernelFamily {
    pub variant: KernelVariant,
    pub a: f64,
    pub k: BvFunction,
    pub psi: TestFunction,
    /// `∫ψ_a`, improper for the Dirichlet kernel.
    pub mass: f64,
}

impl KernelFamily {
    /// `K_a(s)/(2π)`, the kernel with the inverse weight folded in.
    pub fn weighted_transform(&self, s: f64) -> f64 {
        self.k.value(s).re / (2.0 * PI)
    }
}

/// Builds the family at parameter `a > 0`, including the numerical mass.
pub fn make_kernel(variant: KernelVariant, a: f64) -> Result<KernelFamily> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!("kernel parameter must be positive, got {a}")));
    }
    let (k, psi) = match variant {
        KernelVariant::GaussWeierstrass => (gauss_weierstrass_kernel(a), gauss_weierstrass_density(a)),
        KernelVariant::AbelPoisson => (abel_poisson_kernel(a), poisson_density(a)),
        KernelVariant::CesaroFejer => (cesaro_fejer_kernel(a), fejer_density(a)),
        KernelVariant::Dirichlet => (dirichlet_kernel(a), dirichlet_density(a)),
    };
    let one = |_: f64| Complex64::new(1.0, 0.0);
    let unit = vec![TailTerm::real(1.0, 0.0, 0.0)];
    let kernel = Kernel {
        eval: &one,
        right: Some(unit.clone()),
        left: Some(unit),
        onset: 0.0,
        envelope: DecayInfo::Power { exponent: 0.0, onset: 0.0, bound: 1.0 },
        singular_points: Vec::new(),
        oscillation: 0.0,
    };
    // A 1/t² tail truncated for 1e-11 stops near 5e11, inside the pairing cap.
    let mass = pair(&psi, &kernel, 1e-11)?.value.re;
    Ok(KernelFamily { variant, a, k, psi, mass })
}

/// `e^{−t²/(4a²)}/(2√π·a)`.
fn gauss_weierstrass_density(a: f64) -> TestFunction {
    let c = 1.0 / (2.0 * PI.sqrt() * a);
    TestFunction::real(format!("gauss-weierstrass-density:{a}"), move |t| c * (-t * t / (4.0 * a * a)).exp(), DecayInfo::Exponential {
        // t²/(4a²) ≥ t/a once t ≥ 4a.
        rate: 1.0 / a,
        onset: 4.0 * a,
        bound: c,
    })
    .with_lp(LpSet::all())
    .with_fhat(move |s| Complex64::new((-a * a * s * s).exp(), 0.0))
    .with_smoothness(Smoothness::schwartz())
    .with_sup(c)
    .with_nonnegative()
}

/// `a/(π(t² + a²))`.
fn poisson_density(a: f64) -> TestFunction {
    TestFunction::real(format!("poisson-density:{a}"), move |t| a / (PI * (t * t + a * a)), DecayInfo::Power {
        exponent: 2.0,
        onset: 0.0,
        bound: a / PI,
    })
    .with_lp(LpSet::all())
    .with_fhat(move |s| Complex64::new((-a * s.abs()).exp(), 0.0))
    .with_smoothness(Smoothness {
        absolutely_continuous: true,
        bounded_variation: true,
        limit_zero: true,
        derivative_lp: LpSet::all(),
        derivative_bv: true,
        ..Smoothness::NONE
    })
    .with_sup(1.0 / (PI * a))
    .with_nonnegative()
}

/// `2a·sin²(t/(2a))/(πt²) = (a/π)t^{−2}(1 − cos(t/a))`.
fn fejer_density(a: f64) -> TestFunction {
    let c = 1.0 / (2.0 * PI * a);
    let w = 1.0 / a;
    let terms = vec![TailTerm::real(a / PI, 2.0, 0.0), TailTerm::real(-a / (2.0 * PI), 2.0, w), TailTerm::real(-a / (2.0 * PI), 2.0, -w)];
    TestFunction::real(
        format!("fejer-density:{a}"),
        move |t| {
            let x = t / (2.0 * a);
            if x.abs() < 1e-6 {
                c * (1.0 - x * x / 3.0)
            } else {
                c * (x.sin() / x).powi(2)
            }
        },
        DecayInfo::Power { exponent: 2.0, onset: 0.0, bound: 2.0 * a / PI },
    )
    .with_lp(LpSet::all())
    .with_fhat(move |s| Complex64::new((1.0 - a * s.abs()).max(0.0), 0.0))
    .with_tails(TailExpansion::new(1.0, terms.clone()), TailExpansion::new(1.0, terms))
    .with_oscillation(w)
    .with_smoothness(Smoothness {
        absolutely_continuous: true,
        bounded_variation: true,
        limit_zero: true,
        derivative_lp: LpSet::all(),
        derivative_bv: true,
        ..Smoothness::NONE
    })
    .with_sup(c)
    .with_nonnegative()
}

/// `sin(t/a)/(πt)`: in `L^p` for `p > 1` only.
fn dirichlet_density(a: f64) -> TestFunction {
    let w = 1.0 / a;
    let (up, down) = (Complex64::new(0.0, -0.5 / PI), Complex64::new(0.0, 0.5 / PI));
    let terms = vec![TailTerm::new(up, 1.0, w), TailTerm::new(down, 1.0, -w)];
    TestFunction::real(
        format!("dirichlet-density:{a}"),
        move |t| if t == 0.0 { w / PI } else { (w * t).sin() / (PI * t) },
        DecayInfo::Power { exponent: 1.0, onset: 0.0, bound: 1.0 / PI },
    )
    .with_lp(LpSet::above(1.0))
    .with_fhat(move |s| Complex64::new(if s.abs() < w { 1.0 } else if s.abs() == w { 0.5 } else { 0.0 }, 0.0))
    .with_tails(TailExpansion::new(1.0, terms.clone()), TailExpansion::new(1.0, terms))
    .with_oscillation(w)
    .with_sup(w / PI)
}

/// Outcome of one hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl HypothesisCheck {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        HypothesisCheck { name, pass, detail }
    }

    fn into_error(self) -> Error {
        Error::Hypothesis { hypothesis: self.name, reason: self.detail }
    }
}

/// Decay of `|s|^r·|K(s)|` from that of `|K|`.
fn weighted_decay(decay: DecayInfo, r: f64) -> Option<DecayInfo> {
    match decay {
        DecayInfo::Compact { .. } => Some(decay),
        DecayInfo::Exponential { rate, onset, bound } => {
            // s^r e^{−λs} ≤ (2r/(eλ))^r e^{−λs/2}.
            let c = if r == 0.0 { 1.0 } else { (2.0 * r / (std::f64::consts::E * rate)).powf(r) };
            Some(DecayInfo::Exponential { rate: rate / 2.0, onset, bound: bound * c })
        }
        DecayInfo::Power { exponent, onset, bound } => {
            (exponent - r > 1.0).then_some(DecayInfo::Power { exponent: exponent - r, onset: onset.max(1.0), bound })
        }
    }
}

/// `∫|s|^r|K(s)|ds`, `None` when the tails make it diverge.
fn value_moment(k: &BvFunction, r: f64) -> Option<f64> {
    let decay = weighted_decay(k.value_decay(), r)?;
    let edge = k.core.0.abs().max(k.core.1.abs());
    let x = decay.truncation_point(1e-10).ok()?.max(edge);
    let mut cuts = k.breakpoints.clone();
    cuts.extend(k.jumps.iter().map(|j| j.at));
    cuts.push(0.0);
    let body = Integrator::new().breakpoints(&cuts).integrate(|s| Complex64::new(s.abs().powf(r) * k.value(s).norm(), 0.0), -x, x, 1e-10);
    Some(body.value.re + decay.tail_bound(x))
}

/// The four kernel hypotheses of the inversion theorem at exponent `p`:
/// unit mass of `ψ_a`, absolute continuity of `K_a`, and finiteness of
/// `∫|s|^{1/p}|K_a|` and `∫|s|^{1/p}|K_a′|`.
pub fn inversion_hypotheses(k: &KernelFamily, p: f64) -> Vec<HypothesisCheck> {
    let r = match Exponent::new(p) {
        Ok(e) => e.inv_p(),
        Err(e) => return vec![HypothesisCheck::new("exponent range", false, e.to_string())],
    };
    let mut out = Vec::with_capacity(4);
    let mass_ok = (k.mass - 1.0).abs() <= 1e-10;
    out.push(HypothesisCheck::new("kernel unit mass", mass_ok, format!("∫ψ_a = {:.15}", k.mass)));
    let ac = k.k.is_absolutely_continuous();
    let jumps: Vec<String> = k.k.jumps.iter().map(|j| format!("{}", j.at)).collect();
    out.push(HypothesisCheck::new(
        "kernel absolute continuity",
        ac,
        if ac { "K_a has no jumps".into() } else { format!("K_a jumps at {}", jumps.join(", ")) },
    ));
    let m = value_moment(&k.k, r);
    out.push(HypothesisCheck::new(
        "kernel moment",
        m.is_some(),
        m.map_or_else(|| format!("∫|s|^{r}|K_a(s)|ds diverges"), |v| format!("∫|s|^{r}|K_a(s)|ds = {v:.6}")),
    ));
    let dm = if ac {
        let w = k.k.weighted_variation(r, 1e-8);
        (!w.divergent).then_some(w.value)
    } else {
        None
    };
    out.push(HypothesisCheck::new(
        "kernel derivative moment",
        dm.is_some(),
        match dm {
            Some(v) => format!("∫|s|^{r}|K_a′(s)|ds = {v:.6}"),
            None if !ac => "K_a′ is not a function: K_a has jumps, so ∫|s|^(1/p)|K_a′| is undefined".into(),
            None => format!("∫|s|^{r}|K_a′(s)|ds diverges"),
        },
    ));
    out
}

fn admissible(k: &KernelFamily, f: &TestFunction, p: f64) -> Result<()> {
    if let Some(fail) = inversion_hypotheses(k, p).into_iter().find(|h| !h.pass) {
        return Err(fail.into_error());
    }
    if !f.in_lp(p) {
        return Err(Error::hypothesis("L^p membership", format!("{} is not declared in L^{p}", f.id)));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// `(f∗ψ_a)(x)` by quadrature.
    Convolution,
    /// `(1/2π)∫f̂·e^{ix·}K_a` through `Ψ_f`.
    Stieltjes,
}

/// `I_a[f](x)` by the chosen route.
pub fn inversion_apply(f: &TestFunction, k: &KernelFamily, x: f64, route: Route, p: f64, tol: f64) -> Result<QuadratureResult> {
    admissible(k, f, p)?;
    match route {
        Route::Convolution => convolve(f, &k.psi, x, tol),
        Route::Stieltjes => {
            let g = k.k.modulate(x);
            Ok(integrate_fhat_g_line(f, &g, p, 2.0 * PI * tol)?.scale(Complex64::new(1.0 / (2.0 * PI), 0.0)))
        }
    }
}

/// One point of an inversion sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub a: f64,
    /// `‖f − I_a f‖_p`.
    pub distance: f64,
}

/// `‖f − I_a f‖_p` for each `a`, in the order given. `tol` is relative.
pub fn inversion_sweep(f: &TestFunction, variant: KernelVariant, p: f64, a_list: &[f64], tol: f64) -> Result<Vec<SweepPoint>> {
    a_list
        .par_iter()
        .map(|&a| {
            let k = make_kernel(variant, a)?;
            admissible(&k, f, p)?;
            let distance = if p == 1.0 && f.nonnegative && k.psi.nonnegative {
                l1_distance_by_mass(f, &k, tol)?
            } else {
                lp_norm(&difference(f, &k, tol)?, p, tol)?
            };
            Ok(SweepPoint { a, distance })
        })
        .collect()
}

/// `‖f − f∗ψ‖₁` for `f, ψ ≥ 0`, to relative tolerance `tol`.
///
/// With `d = f − f∗ψ`, `∫d = (1 − ∫ψ)∫f` and `‖d‖₁ = 2∫d⁺ − ∫d`. Since
/// `0 ≤ d⁺ ≤ f`, the positive part lives where `f` does and its tail is
/// bounded by that of `f`; the `t^{−2}` tail of `f∗ψ` never has to be
/// truncated.
fn l1_distance_by_mass(f: &TestFunction, k: &KernelFamily, tol: f64) -> Result<f64> {
    let mass_f = lp_norm(f, 1.0, 1e-12)?;
    let rough = positive_part_integral(f, k, 1e-3 * mass_f)?;
    let fine = positive_part_integral(f, k, (0.5 * tol * rough).max(1e-13 * mass_f))?;
    Ok(2.0 * fine - (1.0 - k.mass) * mass_f)
}

/// `∫(f − f∗ψ)⁺` to absolute tolerance `tol`.
fn positive_part_integral(f: &TestFunction, k: &KernelFamily, tol: f64) -> Result<f64> {
    let (lo, hi, tail) = match f.decay {
        DecayInfo::Compact { a, b } => (a, b, 0.0),
        d => {
            let x = d.truncation_point(tol / 4.0)?;
            (-x, x, d.tail_bound(x))
        }
    };
    let inner = (tol / (4.0 * (hi - lo))).max(1e-15);
    let integrand = |t: f64| {
        let h = convolve_unchecked(f, &k.psi, t, inner).map_or(f64::NAN, |r| r.value.re);
        Complex64::new((f.eval(t).re - h).max(0.0), 0.0)
    };
    let mut cuts = f.singular_points.clone();
    cuts.push(0.0);
    let r = Integrator::new().breakpoints(&cuts).integrate(integrand, lo, hi, tol / 4.0);
    if !r.converged || r.value.re.is_nan() {
        return Err(Error::UnreachableTolerance { tol, reason: format!("∫(f − f∗ψ)⁺ for {} did not converge", f.id) });
    }
    debug_assert!(tail <= tol / 4.0 * (1.0 + 1e-9));
    Ok(r.value.re)
}

/// `f − f∗ψ_a` as a test function.
fn difference(f: &TestFunction, k: &KernelFamily, tol: f64) -> Result<TestFunction> {
    let inner = (tol * 1e-4).max(1e-13);
    let smooth = convolution_function(f, &k.psi, inner)?;
    let decay = f.decay.sum(smooth.decay);
    let (fc, sc) = (f.clone(), smooth);
    let mut d = TestFunction::new(format!("{}-I[{}:{}]", f.id, k.variant, k.a), move |t| fc.eval(t) - sc.eval(t), decay)
        .with_lp(f.lp_membership)
        .with_singular_points(f.singular_points.clone());
    d.real_valued = f.real_valued;
    Ok(d)
}

/// `true` when each distance is at most its predecessor plus `noise` relative.
pub fn is_decreasing(points: &[SweepPoint], noise: f64) -> bool {
    points.windows(2).all(|w| w[1].distance <= w[0].distance * (1.0 + noise))
}
