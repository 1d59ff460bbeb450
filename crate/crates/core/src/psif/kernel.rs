use std::f64::consts::PI;

use num_complex::Complex64;

use crate::catalog::TailTerm;
use crate::quadrature::DecayInfo;

/// Below this `|st|` the kernel is evaluated from its Taylor series.
const SERIES_SWITCH: f64 = 1e-4;

/// `u_s(t) = (1 − e^{−ist})/(it)`, with `u_s(0) = s`.
///
/// Elsewhere the real part is `sin(st)/t` and the imaginary part
/// `−2 sin²(st/2)/t`, which avoids cancellation in `1 − cos`.
pub fn u_kernel(s: f64, t: f64) -> Complex64 {
    let x = s * t;
    if x.abs() < SERIES_SWITCH {
        // s·Σ_{k=1}^{6} (−ix)^{k−1}/k!, accurate far below f64 resolution here.
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..=6 {
            term *= Complex64::new(0.0, -x) / k as f64;
            sum += term;
        }
        return sum * s;
    }
    let h = (0.5 * x).sin();
    Complex64::new(x.sin() / t, -2.0 * h * h / t)
}

/// Phase `θ ∈ (−π, π]` with `u_s(t) = |u_s(t)|·e^{iθ}`, and `θ = 0` where
/// `u_s(t) = 0`. For `s` of fixed sign `θ` depends only on `st`.
pub fn u_kernel_phase(s: f64, t: f64) -> f64 {
    let u = u_kernel(s, t);
    if u.re == 0.0 && u.im == 0.0 {
        return 0.0;
    }
    let theta = u.arg();
    if theta <= -PI {
        PI
    } else {
        theta
    }
}

/// `n`-th derivative in `t`,
/// `u_s^{(n)}(t) = (−1)^n n!/(i t^{n+1})·[1 − e^{−ist} Σ_{k≤n} (ist)^k/k!]`.
///
/// For `|st| ≤ max(1, n)` the bracket is evaluated as `e^{−ist}Σ_{k>n}`, which
/// is free of cancellation and regular at `t = 0`.
pub fn u_kernel_deriv(n: u32, s: f64, t: f64) -> Complex64 {
    if n == 0 {
        return u_kernel(s, t);
    }
    let x = s * t;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let n_fact: f64 = (1..=n).map(f64::from).product();
    let lead = Complex64::new(0.0, -sign * n_fact); // (−1)^n n!/i
    if x.abs() <= f64::from(n).max(1.0) {
        // Σ_{k>n} (is)^k t^{k−n−1}/k!, built term by term from k = n+1.
        let mut term = Complex64::new(0.0, s).powu(n + 1) / (1..=n + 1).map(f64::from).product::<f64>();
        let mut sum = term;
        let mut k = n + 1;
        loop {
            k += 1;
            term *= Complex64::new(0.0, s) * t / f64::from(k);
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() || k > n + 60 {
                break;
            }
        }
        return lead * Complex64::from_polar(1.0, -x) * sum;
    }
    let mut partial = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            term *= Complex64::new(0.0, x) / f64::from(k);
        }
        partial += term;
    }
    let bracket = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -x) * partial;
    lead * bracket / t.powi(n as i32 + 1)
}

/// Tail terms of `u_s(±τ)` as `τ → ∞`: `(left, right)`.
pub(crate) fn u_tails(s: f64) -> (Vec<TailTerm>, Vec<TailTerm>) {
    let i = Complex64::new(0.0, 1.0);
    let right = vec![TailTerm::new(-i, 1.0, 0.0), TailTerm::new(i, 1.0, -s)];
    let left = vec![TailTerm::new(i, 1.0, 0.0), TailTerm::new(-i, 1.0, s)];
    (left, right)
}

/// `|u_s(t)| ≤ 2/|t|`.
pub(crate) fn u_envelope() -> DecayInfo {
    DecayInfo::Power { exponent: 1.0, onset: 0.0, bound: 2.0 }
}

/// Tail terms of `−u_s′(±τ)`: `(left, right)`.
pub(crate) fn neg_u_prime_tails(s: f64) -> (Vec<TailTerm>, Vec<TailTerm>) {
    let i = Complex64::new(0.0, 1.0);
    let right = vec![TailTerm::new(-i, 2.0, 0.0), TailTerm::new(i, 2.0, -s), TailTerm::real(-s, 1.0, -s)];
    let left = vec![TailTerm::new(-i, 2.0, 0.0), TailTerm::new(i, 2.0, s), TailTerm::real(s, 1.0, s)];
    (left, right)
}

/// `|u_s′(t)| ≤ 2/t² + |s|/|t| ≤ (2 + |s|)/|t|` for `|t| ≥ 1`.
pub(crate) fn neg_u_prime_envelope(s: f64) -> DecayInfo {
    DecayInfo::Power { exponent: 1.0, onset: 1.0, bound: 2.0 + s.abs() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct(s: f64, t: f64) -> Complex64 {
        (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -s * t)) / Complex64::new(0.0, t)
    }

    #[test]
    fn removable_singularity() {
        assert_eq!(u_kernel(2.5, 0.0), Complex64::new(2.5, 0.0));
        assert_eq!(u_kernel(0.0, 3.0), Complex64::new(0.0, 0.0));
        assert_eq!(u_kernel_phase(1.0, 0.0), 0.0);
        assert_eq!(u_kernel_phase(0.0, 1.0), 0.0);
        // Both branches meet continuously at the switch.
        let t = SERIES_SWITCH / 3.0;
        let below = u_kernel(3.0 * (1.0 - 1e-9), t);
        let above = u_kernel(3.0 * (1.0 + 1e-9), t);
        assert!((below - above).norm() < 1e-8);
    }

    #[test]
    fn tail_terms_reproduce_kernel() {
        let s = 1.7;
        let (left, right) = u_tails(s);
        let eval = |terms: &[TailTerm], tau: f64| {
            terms.iter().map(|c| c.coef * tau.powf(-c.power) * Complex64::from_polar(1.0, c.freq * tau)).sum::<Complex64>()
        };
        for &tau in &[3.0, 17.5, 1e3] {
            assert!((eval(&right, tau) - u_kernel(s, tau)).norm() < 1e-14);
            assert!((eval(&left, tau) - u_kernel(s, -tau)).norm() < 1e-14);
        }
        let (left, right) = neg_u_prime_tails(s);
        for &tau in &[3.0, 17.5, 1e3] {
            assert!((eval(&right, tau) + u_kernel_deriv(1, s, tau)).norm() < 1e-13);
            assert!((eval(&left, tau) + u_kernel_deriv(1, s, -tau)).norm() < 1e-13);
        }
    }

    #[test]
    fn phase_is_function_of_product() {
        let a = u_kernel_phase(2.0, 3.0);
        assert!((a - u_kernel_phase(3.0, 2.0)).abs() < 1e-14);
        assert!((a - u_kernel_phase(6.0, 1.0)).abs() < 1e-14);
    }

    #[test]
    fn first_derivative_by_finite_difference() {
        let h = 1e-5;
        let fd = (u_kernel(1.0, 1.0 + h) - u_kernel(1.0, 1.0 - h)) / (2.0 * h);
        assert!((u_kernel_deriv(1, 1.0, 1.0) - fd).norm() < 1e-6);
        for &(s, t) in &[(0.3, 0.2), (5.0, -2.0), (1.0, 1e-7)] {
            let fd = (u_kernel(s, t + h) - u_kernel(s, t - h)) / (2.0 * h);
            assert!((u_kernel_deriv(1, s, t) - fd).norm() < 1e-6, "({s}, {t})");
        }
        let fd2 = (u_kernel(2.0, 1.5 + h) - 2.0 * u_kernel(2.0, 1.5) + u_kernel(2.0, 1.5 - h)) / (h * h);
        assert!((u_kernel_deriv(2, 2.0, 1.5) - fd2).norm() < 1e-4);
    }

    #[test]
    fn derivatives_decay_like_inverse_t() {
        for n in [1, 2] {
            let scaled: Vec<f64> = (2..8).map(|e| 10f64.powi(e)).map(|t| t * u_kernel_deriv(n, 1.3, t).norm()).collect();
            assert!(scaled.iter().all(|&v| v <= 1.3 * 2.0 + 1e-9), "n = {n}: {scaled:?}");
            assert!(scaled.iter().any(|&v| v > 0.1));
        }
    }

    proptest! {
        #[test]
        fn modulus_identity(s in -20.0f64..20.0, t in -50.0f64..50.0) {
            prop_assume!(t != 0.0);
            let u = u_kernel(s, t);
            let h = (0.5 * s * t).sin();
            let m2 = 4.0 * h * h / (t * t);
            prop_assert!((u.norm_sqr() - m2).abs() <= 1e-13 * (1.0 + m2));
        }

        #[test]
        fn agrees_with_direct_formula(s in -20.0f64..20.0, t in 0.01f64..50.0) {
            let u = u_kernel(s, t);
            prop_assert!((u - direct(s, t)).norm() <= 1e-12 * (1.0 + s.abs()));
        }

        #[test]
        fn polar_reconstruction(s in -20.0f64..20.0, t in -50.0f64..50.0) {
            let u = u_kernel(s, t);
            let back = Complex64::from_polar(u.norm(), u_kernel_phase(s, t));
            prop_assert!((back - u).norm() <= 1e-14 * (1.0 + u.norm()));
            let th = u_kernel_phase(s, t);
            prop_assert!(th > -PI && th <= PI);
        }

        #[test]
        fn series_branches_agree(n in 1u32..4, s in 0.5f64..3.0) {
            // Straddle the series/closed-form switch by evaluating just either side.
            let x0 = f64::from(n).max(1.0);
            let t0 = x0 / s;
            let a = u_kernel_deriv(n, s, t0 * (1.0 - 1e-12));
            let b = u_kernel_deriv(n, s, t0 * (1.0 + 1e-12));
            prop_assert!((a - b).norm() <= 1e-8 * (1.0 + a.norm()));
        }
    }
}
