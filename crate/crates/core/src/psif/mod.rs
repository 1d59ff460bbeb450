//! The kernel `u_s`, the primitive `Ψ_f(s) = ∫ u_s(t) f(t) dt`, and the growth
//! and Hölder bounds it obeys:
//!
//! ```text
//! |Ψ_f(s)| ≤ C_q‖f‖_p|s|^{1/p},    |Ψ_f(s+h) − Ψ_f(s)| ≤ C_q‖f‖_p|h|^{1/p}.
//! ```

mod algebra;
mod extremal;
mod kernel;

use std::collections::HashMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::TestFunction;
use crate::constants::cq;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::lp::lp_norm;
use crate::pairing::{pair, Kernel};
use crate::quadrature::QuadratureResult;

pub use algebra::{check_derivative, check_identity, psif_dilate, psif_modulate, psif_of_derivative, psif_reflect, psif_translate, AlgebraCheck, Identity};
pub use extremal::{extremal_function, EqualityRatio, ExtremalFunction};
pub use kernel::{u_kernel, u_kernel_deriv, u_kernel_phase};

/// `Ψ_f(s)` to absolute tolerance `tol`. `Ψ_f(0)` is exactly zero.
///
/// Non-convergence is not an error: the result carries `converged = false`
/// and the caller decides. A function with neither `L^p` membership nor exact
/// tails gives no handle on convergence and is rejected.
pub fn psif(f: &TestFunction, s: f64, tol: f64) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if !s.is_finite() {
        return Err(Error::invalid(format!("Ψ_f needs finite s, got {s}")));
    }
    if f.lp_membership.is_empty() && !f.has_exact_tails() && !f.decay.is_compact() {
        return Err(Error::hypothesis(
            "L^p membership",
            format!("{} declares no L^p membership and no tail expansion", f.id),
        ));
    }
    if s == 0.0 {
        return Ok(QuadratureResult::exact(Complex64::new(0.0, 0.0)));
    }
    let (left, right) = kernel::u_tails(s);
    let eval = move |t: f64| u_kernel(s, t);
    let k = Kernel {
        eval: &eval,
        right: Some(right),
        left: Some(left),
        onset: 0.0,
        envelope: kernel::u_envelope(),
        singular_points: Vec::new(),
        oscillation: s.abs(),
    };
    pair(f, &k, tol)
}

/// `Ψ_{δ_a}(s) = u_s(a)`.
pub fn psif_dirac(a: f64, s: f64) -> Complex64 {
    u_kernel(s, a)
}

/// `C_q` and `‖f‖_p` with their relative errors; fixed per `(f, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthConstant {
    pub exponent: Exponent,
    pub c_q: f64,
    pub norm: f64,
    /// Relative error of `C_q·‖f‖_p`.
    pub rel_error: f64,
}

impl GrowthConstant {
    pub fn new(f: &TestFunction, p: f64, tol: f64) -> Result<Self> {
        let exponent = Exponent::new(p)?;
        let c = cq(exponent.q(), tol)?;
        let norm = lp_norm(f, p, tol)?;
        Ok(GrowthConstant { exponent, c_q: c.value, norm, rel_error: c.error / c.value + tol })
    }

    /// `C_q‖f‖_p`.
    pub fn value(&self) -> f64 {
        self.c_q * self.norm
    }

    /// `C_q‖f‖_p|s|^{1/p}`.
    pub fn bound(&self, s: f64) -> f64 {
        self.value() * s.abs().powf(self.exponent.inv_p())
    }
}

/// `bound − |Ψ_f(s)|` with the numerical error budget behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margin {
    pub s: f64,
    pub psif_abs: f64,
    pub bound: f64,
    pub margin: f64,
    pub error: f64,
}

impl Margin {
    /// `margin ≥ −factor·error`.
    pub fn holds(&self, factor: f64) -> bool {
        self.margin >= -factor * self.error
    }
}

/// `C_q‖f‖_p|s|^{1/p} − |Ψ_f(s)|`, nonnegative up to its error.
pub fn growth_bound_margin(f: &TestFunction, p: f64, s: f64, tol: f64) -> Result<Margin> {
    let g = GrowthConstant::new(f, p, tol)?;
    let v = psif(f, s, tol)?;
    Ok(margin_at(&g, s, &v))
}

fn margin_at(g: &GrowthConstant, s: f64, v: &QuadratureResult) -> Margin {
    let bound = g.bound(s);
    let psif_abs = v.value.norm();
    Margin { s, psif_abs, bound, margin: bound - psif_abs, error: v.abs_error_estimate + bound * g.rel_error }
}

/// Largest Hölder quotient over a sample set, and the bound it must respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderReport {
    pub ratio_max: f64,
    /// Error of the quotient at the maximizing pair.
    pub ratio_error: f64,
    pub at: (f64, f64),
    /// `C_q‖f‖_p`.
    pub bound: f64,
    pub bound_error: f64,
    pub pairs: usize,
    /// Pairs with `bound − ratio < −10·error`.
    pub violations: usize,
}

impl HolderReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// `max |Ψ_f(s+h) − Ψ_f(s)|/h^{1/p}` over `s_samples × h_samples`.
pub fn holder_ratio_max(f: &TestFunction, p: f64, s_samples: &[f64], h_samples: &[f64], tol: f64) -> Result<HolderReport> {
    if let Some(h) = h_samples.iter().find(|h| !(**h > 0.0)) {
        return Err(Error::invalid(format!("Hölder increments must be positive, got {h}")));
    }
    let g = GrowthConstant::new(f, p, tol)?;
    let mut cache = PsifCache::new(f, tol);
    holder_with(&mut cache, &g, s_samples, h_samples)
}

/// As [`holder_ratio_max`], reusing `Ψ_f` values from a cache.
pub fn holder_with(cache: &mut PsifCache<'_>, g: &GrowthConstant, s_samples: &[f64], h_samples: &[f64]) -> Result<HolderReport> {
    let points: Vec<f64> = s_samples
        .iter()
        .flat_map(|&s| std::iter::once(s).chain(h_samples.iter().map(move |&h| s + h)))
        .collect();
    cache.prefetch(&points)?;
    let bound = g.value();
    let bound_error = bound * g.rel_error;
    let mut report = HolderReport { ratio_max: 0.0, ratio_error: 0.0, at: (0.0, 0.0), bound, bound_error, pairs: 0, violations: 0 };
    for &s in s_samples {
        let a = cache.get(s)?;
        for &h in h_samples {
            let b = cache.get(s + h)?;
            let scale = h.powf(g.exponent.inv_p());
            let ratio = (b.value - a.value).norm() / scale;
            let error = (a.abs_error_estimate + b.abs_error_estimate) / scale + bound_error;
            report.pairs += 1;
            if bound - ratio < -10.0 * error {
                report.violations += 1;
            }
            if ratio > report.ratio_max {
                report.ratio_max = ratio;
                report.ratio_error = error;
                report.at = (s, h);
            }
        }
    }
    Ok(report)
}

/// Caller-owned memo of `Ψ_f(s)` at one tolerance.
pub struct PsifCache<'f> {
    f: &'f TestFunction,
    tol: f64,
    values: HashMap<u64, QuadratureResult>,
}

impl<'f> PsifCache<'f> {
    pub fn new(f: &'f TestFunction, tol: f64) -> Self {
        PsifCache { f, tol, values: HashMap::new() }
    }

    pub fn function(&self) -> &TestFunction {
        self.f
    }

    pub fn get(&mut self, s: f64) -> Result<QuadratureResult> {
        if let Some(v) = self.values.get(&s.to_bits()) {
            return Ok(*v);
        }
        let v = psif(self.f, s, self.tol)?;
        self.values.insert(s.to_bits(), v);
        Ok(v)
    }

    /// Computes all missing points in parallel.
    pub fn prefetch(&mut self, points: &[f64]) -> Result<()> {
        let mut missing: Vec<f64> = points.iter().copied().filter(|s| !self.values.contains_key(&s.to_bits())).collect();
        missing.sort_by(f64::total_cmp);
        missing.dedup();
        let (f, tol) = (self.f, self.tol);
        let computed: Vec<(f64, QuadratureResult)> =
            missing.par_iter().map(|&s| psif(f, s, tol).map(|v| (s, v))).collect::<Result<_>>()?;
        self.values.extend(computed.into_iter().map(|(s, v)| (s.to_bits(), v)));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `Ψ_f` on a grid for one exponent.
#[derive(Debug, Clone)]
pub struct PsifSamples {
    pub f_id: String,
    pub p: f64,
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub errors: Vec<f64>,
    pub converged: Vec<bool>,
    norm: f64,
}

impl PsifSamples {
    /// Evaluates on `grid` (sorted on return) through `cache`.
    pub fn compute(cache: &mut PsifCache<'_>, p: f64, grid: &[f64], tol: f64) -> Result<Self> {
        let f = cache.function();
        let norm = lp_norm(f, p, tol)?;
        let f_id = f.id.clone();
        let mut grid = grid.to_vec();
        grid.sort_by(f64::total_cmp);
        cache.prefetch(&grid)?;
        let mut values = Vec::with_capacity(grid.len());
        let mut errors = Vec::with_capacity(grid.len());
        let mut converged = Vec::with_capacity(grid.len());
        for &s in &grid {
            let v = cache.get(s)?;
            values.push(v.value);
            errors.push(v.abs_error_estimate);
            converged.push(v.converged);
        }
        Ok(PsifSamples { f_id, p, grid, values, errors, converged, norm })
    }

    /// `‖Ψ_f‖′_p`, which is `‖f‖_p` by definition.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Growth margins at every grid point.
    pub fn margins(&self, g: &GrowthConstant) -> Vec<Margin> {
        self.grid
            .iter()
            .zip(self.values.iter().zip(&self.errors))
            .map(|(&s, (&v, &e))| {
                margin_at(g, s, &QuadratureResult { value: v, abs_error_estimate: e, evaluations: 0, converged: true })
            })
            .collect()
    }
}

/// `n` seeded samples from `[lo, hi]`, uniform or log-uniform.
pub fn sample_points(seed: u64, n: usize, lo: f64, hi: f64, log: bool) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            if log {
                (lo.ln() + u * (hi.ln() - lo.ln())).exp()
            } else {
                lo + u * (hi - lo)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::special::{erf, si};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn indicator_is_twice_sine_integral() {
        let f = builtin("indicator").unwrap();
        for &s in &[0.5, 1.0, PI, 10.0, -2.0] {
            let v = psif(&f, s, 1e-10).unwrap();
            assert!((v.value.re - 2.0 * si(s)).abs() < 1e-9, "s = {s}");
            assert!(v.value.im.abs() < 1e-9);
            assert!(v.converged);
        }
    }

    #[test]
    fn gaussian_is_pi_erf() {
        let f = builtin("gaussian").unwrap();
        for &s in &[0.5, 2.0, -7.0] {
            let v = psif(&f, s, 1e-10).unwrap();
            assert!((v.value - Complex64::new(PI * erf(s / 2.0), 0.0)).norm() < 1e-9, "s = {s}");
        }
    }

    #[test]
    fn catalog_matches_closed_forms() {
        for name in ["heat:0.5", "sinc", "power_tail:0.8", "abs_pow:2", "abs_pow_odd:3", "remark_piecewise"] {
            let f = builtin(name).unwrap();
            for &s in &[0.3, 1.0, -2.5, 6.0] {
                let v = psif(&f, s, 1e-9).unwrap();
                let want = f.closed_form_psif(s);
                if let Some(w) = want {
                    assert!((v.value - w).norm() < 1e-7, "{name} at {s}: {} vs {w}", v.value);
                }
                assert!(v.converged, "{name} at {s}");
            }
        }
    }

    #[test]
    fn zero_at_origin() {
        for name in crate::catalog::builtin_names() {
            let f = builtin(name).unwrap();
            assert_eq!(psif(&f, 0.0, 1e-8).unwrap().value, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn dirac_primitive() {
        assert_eq!(psif_dirac(0.0, 2.5), Complex64::new(2.5, 0.0));
        assert_eq!(psif_dirac(1.3, 0.0), Complex64::new(0.0, 0.0));
        let h = 1e-5;
        for &(a, s) in &[(0.7, 1.1), (-2.0, 3.0), (5.0, -0.4)] {
            let d = (psif_dirac(a, s + h) - psif_dirac(a, s - h)) / (2.0 * h);
            assert!((d - Complex64::from_polar(1.0, -a * s)).norm() < 1e-6);
        }
    }

    #[test]
    fn growth_bound_for_indicator() {
        for &s in &[0.1, -0.1, 1.0, -1.0, 10.0, -10.0] {
            let m = growth_bound_margin(&builtin("indicator").unwrap(), 1.0, s, 1e-10).unwrap();
            assert!((m.bound - 2.0 * s.abs()).abs() < 1e-9);
            assert!(m.holds(0.0), "{m:?}");
        }
        let m = growth_bound_margin(&builtin("indicator").unwrap(), 1.0, 0.0, 1e-10).unwrap();
        assert_eq!(m.margin, 0.0);
    }

    #[test]
    fn small_s_sharpness_and_little_o() {
        let f = builtin("indicator").unwrap();
        let ratios: Vec<f64> = [1e-1, 1e-2, 1e-3].iter().map(|&s| psif(&f, s, 1e-13).unwrap().value.norm() / (2.0 * s)).collect();
        assert!(ratios.windows(2).all(|w| (1.0 - w[1]) < (1.0 - w[0])));
        assert!((1.0 - ratios[2]).abs() < 1e-6);
        let large: Vec<f64> = [10.0, 1e2, 1e3, 1e4].iter().map(|&s| psif(&f, s, 1e-9).unwrap().value.norm() / s).collect();
        assert!(large.windows(2).all(|w| w[1] < w[0]), "{large:?}");
    }

    #[test]
    fn holder_bounds() {
        let ind = builtin("indicator").unwrap();
        let r = holder_ratio_max(&ind, 1.0, &[-3.0, 0.0, 1.0, 4.0], &[1e-3, 0.1, 1.0], 1e-11).unwrap();
        assert!(r.ratio_max <= 2.0 + r.ratio_error, "{r:?}");
        assert!(r.holds());
        let g = builtin("gaussian").unwrap();
        let r = holder_ratio_max(&g, 2.0, &[-1.0, 0.0, 0.5, 2.0], &[0.01, 0.3, 2.0], 1e-10).unwrap();
        let bound = (2.0 * PI).sqrt() * (PI / 2.0).powf(0.25);
        assert!((r.bound - bound).abs() < 1e-8);
        assert!(r.ratio_max <= bound);
        // Brute force over a fine grid of pairs stays below the same bound.
        let grid: Vec<f64> = (0..40).map(|k| -4.0 + 0.2 * k as f64).collect();
        let vals: Vec<Complex64> = grid.iter().map(|&s| Complex64::new(PI * erf(s / 2.0), 0.0)).collect();
        let brute = (0..grid.len())
            .flat_map(|i| (i + 1..grid.len()).map(move |j| (i, j)))
            .map(|(i, j)| (vals[j] - vals[i]).norm() / (grid[j] - grid[i]).sqrt())
            .fold(0.0, f64::max);
        assert!(brute <= bound);
    }

    #[test]
    fn holder_quotient_tends_to_transform() {
        // p = 1 quotients at small h approach |f̂(s)| = |2 sin s/s|.
        let f = builtin("indicator").unwrap();
        for &s in &[0.7, 2.0] {
            let h = 1e-4;
            let r = holder_ratio_max(&f, 1.0, &[s], &[h], 1e-13).unwrap();
            assert!((r.ratio_max - (2.0 * (s + h / 2.0).sin() / (s + h / 2.0)).abs()).abs() < 1e-6);
        }
    }

    #[test]
    fn samples_and_cache() {
        let f = builtin("gaussian").unwrap();
        let mut cache = PsifCache::new(&f, 1e-10);
        let samples = PsifSamples::compute(&mut cache, 2.0, &[1.0, 0.0, -1.0], 1e-10).unwrap();
        assert_eq!(samples.grid, vec![-1.0, 0.0, 1.0]);
        assert_eq!(samples.values[1], Complex64::new(0.0, 0.0));
        assert_eq!(samples.norm(), lp_norm(&f, 2.0, 1e-10).unwrap());
        assert_eq!(cache.len(), 3);
        let g = GrowthConstant::new(&f, 2.0, 1e-10).unwrap();
        assert!(samples.margins(&g).iter().all(|m| m.holds(10.0)));
    }

    #[test]
    fn seeded_samples_are_reproducible() {
        assert_eq!(sample_points(7, 5, 1e-3, 10.0, true), sample_points(7, 5, 1e-3, 10.0, true));
        assert!(sample_points(7, 50, -2.0, 3.0, false).iter().all(|&x| (-2.0..=3.0).contains(&x)));
    }

    #[test]
    fn undeclared_function_is_rejected() {
        let f = TestFunction::real("bare", |t| 1.0 / (1.0 + t.abs()), crate::quadrature::DecayInfo::Power { exponent: 1.0, onset: 1.0, bound: 1.0 });
        assert_eq!(psif(&f, 1.0, 1e-8).unwrap_err().hypothesis_name(), Some("L^p membership"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn linearity(alpha in -2.0f64..2.0, beta in -2.0f64..2.0, s in -6.0f64..6.0) {
            let f = builtin("gaussian").unwrap();
            let g = builtin("indicator").unwrap();
            let h = TestFunction::linear_combination(Complex64::new(alpha, 0.0), &f, Complex64::new(beta, 0.0), &g);
            let lhs = psif(&h, s, 1e-10).unwrap().value;
            let rhs = psif(&f, s, 1e-10).unwrap().value * alpha + psif(&g, s, 1e-10).unwrap().value * beta;
            prop_assert!((lhs - rhs).norm() < 1e-8);
        }

        #[test]
        fn conjugation_symmetry(s in 0.01f64..8.0) {
            for name in ["power_tail:0.8", "remark_piecewise", "sinc"] {
                let f = builtin(name).unwrap();
                let a = psif(&f, -s, 1e-9).unwrap().value;
                let b = -psif(&f, s, 1e-9).unwrap().value.conj();
                prop_assert!((a - b).norm() < 1e-7, "{}", name);
            }
        }
    }
}
