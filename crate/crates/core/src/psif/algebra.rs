//! Identities relating `Ψ` of a transformed function to `Ψ_f`. Each formula
//! side is computed without building the transformed function; the direct
//! side applies [`psif`] to it.

use num_complex::Complex64;

use super::kernel::{neg_u_prime_envelope, neg_u_prime_tails, u_kernel, u_kernel_deriv};
use super::psif;
use crate::catalog::TestFunction;
use crate::error::{Error, Result};
use crate::pairing::{pair, Kernel};
use crate::quadrature::{DecayInfo, QuadratureResult};

/// `Ψ_{τ_a f}(s) = ∫ f(t)·u_s(t + a) dt`, with `τ_a f(t) = f(t − a)`.
pub fn psif_translate(f: &TestFunction, a: f64, s: f64, tol: f64) -> Result<QuadratureResult> {
    if a == 0.0 {
        return psif(f, s, tol);
    }
    if s == 0.0 {
        return Ok(QuadratureResult::exact(Complex64::new(0.0, 0.0)));
    }
    let eval = move |t: f64| u_kernel(s, t + a);
    // |u_s(t + a)| ≤ 2/|t + a| ≤ 4/|t| once |t| ≥ 2|a|.
    let envelope = DecayInfo::Power { exponent: 1.0, onset: 2.0 * a.abs(), bound: 4.0 };
    let mut k = Kernel::bounded(&eval, envelope, s.abs());
    k.singular_points = vec![-a];
    pair(f, &k, tol)
}

/// `Ψ_F(s) = Ψ_f(s − a) − Ψ_f(−a)` for `F(t) = e^{iat}f(t)`.
pub fn psif_modulate(f: &TestFunction, a: f64, s: f64, tol: f64) -> Result<QuadratureResult> {
    let x = psif(f, s - a, tol / 2.0)?;
    let y = psif(f, -a, tol / 2.0)?;
    Ok(x.combine(y.scale(Complex64::new(-1.0, 0.0))))
}

/// `Ψ_{f̃}(s) = −Ψ_f(−s)` for `f̃(t) = f(−t)`.
pub fn psif_reflect(f: &TestFunction, s: f64, tol: f64) -> Result<QuadratureResult> {
    Ok(psif(f, -s, tol)?.scale(Complex64::new(-1.0, 0.0)))
}

/// `Ψ_g(s) = sgn(a)·Ψ_{τ_{−b}f}(s/a)` for `g(x) = f(ax + b)`, `a ≠ 0`.
pub fn psif_dilate(f: &TestFunction, a: f64, b: f64, s: f64, tol: f64) -> Result<QuadratureResult> {
    if a == 0.0 || !a.is_finite() {
        return Err(Error::invalid(format!("dilation needs a finite a ≠ 0, got {a}")));
    }
    Ok(psif_translate(f, -b, s / a, tol)?.scale(Complex64::new(a.signum(), 0.0)))
}

/// `Ψ_{F′}(s) = ∫ (1/(it²))·[1 − e^{−ist}(1 + ist)]·F(t) dt = −∫ u_s′·F`.
///
/// Needs `F` absolutely continuous, `F′ ∈ L^p` for some `p` and
/// `F(t)/t → 0`, all read from the smoothness metadata.
pub fn psif_of_derivative(big_f: &TestFunction, s: f64, tol: f64) -> Result<QuadratureResult> {
    let sm = &big_f.smoothness;
    let missing = [
        (!sm.absolutely_continuous, "absolute continuity"),
        (sm.derivative_lp.is_empty(), "an L^p derivative"),
        (!sm.ratio_to_t_vanishes, "F(t)/t → 0"),
    ];
    if let Some((_, what)) = missing.iter().find(|(m, _)| *m) {
        return Err(Error::hypothesis("smoothness metadata", format!("{} does not declare {what}", big_f.id)));
    }
    if s == 0.0 {
        return Ok(QuadratureResult::exact(Complex64::new(0.0, 0.0)));
    }
    let eval = move |t: f64| -u_kernel_deriv(1, s, t);
    let (left, right) = neg_u_prime_tails(s);
    let k = Kernel {
        eval: &eval,
        right: Some(right),
        left: Some(left),
        onset: 0.0,
        envelope: neg_u_prime_envelope(s),
        singular_points: Vec::new(),
        oscillation: s.abs(),
    };
    pair(big_f, &k, tol)
}

/// One of the transform identities, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Identity {
    Translate(f64),
    Modulate(f64),
    Reflect,
    /// `f(ax + b)`.
    Dilate(f64, f64),
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::Translate(_) => "translate",
            Identity::Modulate(_) => "modulate",
            Identity::Reflect => "reflect",
            Identity::Dilate(..) => "dilate",
        }
    }
}

/// Formula side against direct side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraCheck {
    pub s: f64,
    pub formula: Complex64,
    pub direct: Complex64,
    pub discrepancy: f64,
    /// Sum of both quadrature error estimates.
    pub error: f64,
}

impl AlgebraCheck {
    fn new(s: f64, formula: QuadratureResult, direct: QuadratureResult) -> Self {
        AlgebraCheck {
            s,
            formula: formula.value,
            direct: direct.value,
            discrepancy: (formula.value - direct.value).norm(),
            error: formula.abs_error_estimate + direct.abs_error_estimate,
        }
    }
}

/// Evaluates an identity both ways at `s`.
pub fn check_identity(f: &TestFunction, identity: Identity, s: f64, tol: f64) -> Result<AlgebraCheck> {
    let (formula, direct) = match identity {
        Identity::Translate(a) => (psif_translate(f, a, s, tol)?, psif(&f.translate(a), s, tol)?),
        Identity::Modulate(a) => (psif_modulate(f, a, s, tol)?, psif(&f.modulate(a), s, tol)?),
        Identity::Reflect => (psif_reflect(f, s, tol)?, psif(&f.reflect(), s, tol)?),
        Identity::Dilate(a, b) => (psif_dilate(f, a, b, s, tol)?, psif(&f.dilate(a, b), s, tol)?),
    };
    Ok(AlgebraCheck::new(s, formula, direct))
}

/// [`psif_of_derivative`] against `psif` applied to the declared `F′`.
pub fn check_derivative(big_f: &TestFunction, s: f64, tol: f64) -> Result<AlgebraCheck> {
    let formula = psif_of_derivative(big_f, s, tol)?;
    let d = big_f
        .derivative()
        .ok_or_else(|| Error::hypothesis("smoothness metadata", format!("{} has no declared derivative", big_f.id)))?;
    Ok(AlgebraCheck::new(s, formula, psif(d, s, tol)?))
}
