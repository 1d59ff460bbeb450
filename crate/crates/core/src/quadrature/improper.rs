use num_complex::Complex64;

use super::{adaptive::Integrator, QuadratureResult};
use crate::error::{Error, Result};

/// Largest truncation point `integrate_line` will accept.
const MAX_TRUNCATION: f64 = 1.0e15;

/// Decay of an integrand away from the origin, in a form that yields a
/// certified bound on the discarded tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayInfo {
    /// Zero outside `[a, b]`.
    Compact { a: f64, b: f64 },
    /// `|f(t)| ≤ bound·|t|^{-exponent}` for `|t| ≥ onset`.
    Power { exponent: f64, onset: f64, bound: f64 },
    /// `|f(t)| ≤ bound·e^{-rate·|t|}` for `|t| ≥ onset`.
    Exponential { rate: f64, onset: f64, bound: f64 },
}

impl DecayInfo {
    /// Bound on `∫_{|t| > x} |f|` for `x` at or beyond the onset, `+∞` when the
    /// declared decay is not integrable.
    pub fn tail_bound(&self, x: f64) -> f64 {
        match *self {
            DecayInfo::Compact { a, b } => {
                if x >= a.abs().max(b.abs()) {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            DecayInfo::Power { exponent, onset, bound } => {
                if exponent <= 1.0 || x < onset {
                    f64::INFINITY
                } else {
                    2.0 * bound * x.powf(1.0 - exponent) / (exponent - 1.0)
                }
            }
            DecayInfo::Exponential { rate, onset, bound } => {
                if x < onset {
                    f64::INFINITY
                } else {
                    2.0 * bound * (-rate * x).exp() / rate
                }
            }
        }
    }

    /// Smallest symmetric truncation point whose tail bound is below `budget`.
    /// Geometric breakpoints keep far truncation cheap, so the cap is generous.
    pub fn truncation_point(&self, budget: f64) -> Result<f64> {
        let x = match *self {
            DecayInfo::Compact { a, b } => a.abs().max(b.abs()),
            DecayInfo::Power { exponent, onset, bound } => {
                if exponent <= 1.0 {
                    return Err(Error::UnreachableTolerance {
                        tol: budget,
                        reason: format!("power decay exponent {exponent} ≤ 1 gives a divergent tail"),
                    });
                }
                let x = (budget * (exponent - 1.0) / (2.0 * bound)).powf(1.0 / (1.0 - exponent));
                x.max(onset)
            }
            DecayInfo::Exponential { rate, onset, bound } => {
                let x = (2.0 * bound / (rate * budget)).ln() / rate;
                x.max(onset)
            }
        };
        if !(x.is_finite() && x <= MAX_TRUNCATION) {
            return Err(Error::UnreachableTolerance {
                tol: budget,
                reason: format!("tail bound needs truncation at {x:e}, beyond {MAX_TRUNCATION:e}"),
            });
        }
        Ok(x)
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, DecayInfo::Compact { .. })
    }

    /// Point beyond which the declared bound holds.
    pub fn onset(&self) -> f64 {
        match *self {
            DecayInfo::Compact { a, b } => a.abs().max(b.abs()),
            DecayInfo::Power { onset, .. } | DecayInfo::Exponential { onset, .. } => onset,
        }
    }

    /// Bound on `|f(t)|` for `|t| ≥ x`; `+∞` before the onset.
    pub fn envelope(&self, x: f64) -> f64 {
        if x < self.onset() {
            return f64::INFINITY;
        }
        match *self {
            DecayInfo::Compact { .. } => 0.0,
            DecayInfo::Power { exponent, bound, .. } => bound * x.powf(-exponent),
            DecayInfo::Exponential { rate, bound, .. } => bound * (-rate * x).exp(),
        }
    }

    /// Bound on `∫_{|t| > x} |f|^p`.
    pub fn power_tail_bound(&self, p: f64, x: f64) -> f64 {
        if x < self.onset() {
            return f64::INFINITY;
        }
        match *self {
            DecayInfo::Compact { .. } => 0.0,
            DecayInfo::Power { exponent, bound, .. } => {
                let e = exponent * p;
                if e <= 1.0 {
                    f64::INFINITY
                } else {
                    2.0 * bound.powf(p) * x.powf(1.0 - e) / (e - 1.0)
                }
            }
            DecayInfo::Exponential { rate, bound, .. } => 2.0 * bound.powf(p) * (-p * rate * x).exp() / (p * rate),
        }
    }

    /// Bound on `∫_{|t| > x} |f·k|` where `k` has decay `kernel`.
    pub fn product_tail_bound(&self, kernel: &DecayInfo, x: f64) -> f64 {
        use DecayInfo::*;
        if x < self.onset() || x < kernel.onset() {
            return f64::INFINITY;
        }
        match (*self, *kernel) {
            (Compact { .. }, _) | (_, Compact { .. }) => 0.0,
            (Exponential { rate: l1, bound: m1, .. }, Exponential { rate: l2, bound: m2, .. }) => {
                2.0 * m1 * m2 * (-(l1 + l2) * x).exp() / (l1 + l2)
            }
            (Exponential { rate, bound: m, .. }, Power { exponent, bound: k, .. })
            | (Power { exponent, bound: k, .. }, Exponential { rate, bound: m, .. }) => {
                2.0 * m * k * x.powf(-exponent) * (-rate * x).exp() / rate
            }
            (Power { exponent: b1, bound: m1, .. }, Power { exponent: b2, bound: m2, .. }) => {
                let e = b1 + b2;
                if e <= 1.0 {
                    f64::INFINITY
                } else {
                    2.0 * m1 * m2 * x.powf(1.0 - e) / (e - 1.0)
                }
            }
        }
    }

    /// Decay of `c·f`.
    pub fn scale_bound(self, c: f64) -> DecayInfo {
        match self {
            DecayInfo::Compact { .. } => self,
            DecayInfo::Power { exponent, onset, bound } => DecayInfo::Power { exponent, onset, bound: bound * c.abs() },
            DecayInfo::Exponential { rate, onset, bound } => DecayInfo::Exponential { rate, onset, bound: bound * c.abs() },
        }
    }

    /// Decay of `t ↦ f(t − a)`.
    pub fn shifted(self, a: f64) -> DecayInfo {
        match self {
            DecayInfo::Compact { a: lo, b: hi } => DecayInfo::Compact { a: lo + a, b: hi + a },
            DecayInfo::Power { exponent, onset, bound } => DecayInfo::Power {
                exponent,
                onset: (onset + a.abs()).max(2.0 * a.abs()),
                bound: bound * 2f64.powf(exponent),
            },
            DecayInfo::Exponential { rate, onset, bound } => DecayInfo::Exponential {
                rate,
                onset: onset + a.abs(),
                bound: bound * (rate * a.abs()).exp(),
            },
        }
    }

    /// Decay of `t ↦ f(a·t)`, `a ≠ 0`.
    pub fn scaled(self, a: f64) -> DecayInfo {
        let m = a.abs();
        match self {
            DecayInfo::Compact { a: lo, b: hi } => {
                let (x, y) = (lo / a, hi / a);
                DecayInfo::Compact { a: x.min(y), b: x.max(y) }
            }
            DecayInfo::Power { exponent, onset, bound } => DecayInfo::Power {
                exponent,
                onset: onset / m,
                bound: bound * m.powf(-exponent),
            },
            DecayInfo::Exponential { rate, onset, bound } => DecayInfo::Exponential {
                rate: rate * m,
                onset: onset / m,
                bound,
            },
        }
    }

    /// Rewrites the bound as a power law with the given exponent, valid from
    /// the same onset. `None` when the declared decay is slower.
    fn as_power(self, exponent: f64) -> Option<DecayInfo> {
        match self {
            DecayInfo::Compact { .. } => Some(DecayInfo::Power { exponent, onset: self.onset(), bound: 0.0 }),
            DecayInfo::Exponential { rate, onset, bound } => {
                // max_x x^β e^{−λx} = (β/(eλ))^β
                let c = if exponent == 0.0 { 1.0 } else { (exponent / (std::f64::consts::E * rate)).powf(exponent) };
                Some(DecayInfo::Power { exponent, onset, bound: bound * c })
            }
            DecayInfo::Power { exponent: b, onset, bound } => {
                if b < exponent {
                    None
                } else {
                    let onset_pos = onset.max(f64::MIN_POSITIVE);
                    Some(DecayInfo::Power { exponent, onset, bound: bound * onset_pos.powf(exponent - b) })
                }
            }
        }
    }

    /// Decay of `f + g`.
    pub fn sum(self, other: DecayInfo) -> DecayInfo {
        use DecayInfo::*;
        match (self, other) {
            (Compact { a: a1, b: b1 }, Compact { a: a2, b: b2 }) => Compact { a: a1.min(a2), b: b1.max(b2) },
            (Compact { .. }, d) | (d, Compact { .. }) => {
                let edge = if self.is_compact() { self.onset() } else { other.onset() };
                match d {
                    Power { exponent, onset, bound } => Power { exponent, onset: onset.max(edge), bound },
                    Exponential { rate, onset, bound } => Exponential { rate, onset: onset.max(edge), bound },
                    Compact { .. } => unreachable!(),
                }
            }
            (Exponential { rate: l1, onset: t1, bound: m1 }, Exponential { rate: l2, onset: t2, bound: m2 }) => {
                Exponential { rate: l1.min(l2), onset: t1.max(t2), bound: m1 + m2 }
            }
            (Power { exponent, .. }, Exponential { .. }) | (Exponential { .. }, Power { exponent, .. }) => {
                let onset = self.onset().max(other.onset());
                let (Some(Power { bound: m1, .. }), Some(Power { bound: m2, .. })) =
                    (self.as_power(exponent), other.as_power(exponent))
                else {
                    unreachable!()
                };
                Power { exponent, onset, bound: m1 + m2 }
            }
            (Power { exponent: b1, onset: t1, .. }, Power { exponent: b2, onset: t2, .. }) => {
                let exponent = b1.min(b2);
                let onset = t1.max(t2);
                let lift = |d: DecayInfo| match d {
                    Power { exponent: b, bound, .. } => bound * onset.max(f64::MIN_POSITIVE).powf(exponent - b),
                    _ => unreachable!(),
                };
                Power { exponent, onset, bound: lift(self) + lift(other) }
            }
        }
    }

    /// Decay of the convolution `f ∗ g` from `|f∗g(x)| ≤ ‖f‖₁·env_g(|x|/2) +
    /// sup|g|·∫_{|t|>|x|/2}|f|`. `f` (self) must be integrable and `g` bounded.
    pub fn convolution(self, l1_self: f64, other: DecayInfo, sup_other: f64) -> DecayInfo {
        use DecayInfo::*;
        if let (Compact { a: a1, b: b1 }, Compact { a: a2, b: b2 }) = (self, other) {
            return Compact { a: a1 + a2, b: b1 + b2 };
        }
        let near = other.scaled(0.5).scale_bound(l1_self);
        let far = match self {
            Compact { .. } => Compact { a: -2.0 * self.onset(), b: 2.0 * self.onset() },
            Exponential { rate, onset, bound } => Exponential {
                rate: rate / 2.0,
                onset: 2.0 * onset,
                bound: 2.0 * bound / rate * sup_other,
            },
            Power { exponent, onset, bound } => Power {
                exponent: exponent - 1.0,
                onset: 2.0 * onset,
                bound: 2.0 * bound * 2f64.powf(exponent - 1.0) / (exponent - 1.0) * sup_other,
            },
        };
        near.sum(far)
    }
}

/// `∫_{-∞}^{∞} f` with half the tolerance spent on the certified tail and half
/// on the finite part.
pub fn integrate_line<F: Fn(f64) -> Complex64>(f: F, decay: DecayInfo, tol: f64) -> Result<QuadratureResult> {
    integrate_line_with_breaks(f, decay, &[], tol)
}

/// As [`integrate_line`], with extra breakpoints (singularities, kinks) handed
/// to the finite-interval integrator.
pub fn integrate_line_with_breaks<F: Fn(f64) -> Complex64>(
    f: F,
    decay: DecayInfo,
    breaks: &[f64],
    tol: f64,
) -> Result<QuadratureResult> {
    let (lo, hi, tail) = match decay {
        DecayInfo::Compact { a, b } => (a, b, 0.0),
        _ => {
            let x = decay.truncation_point(tol / 2.0)?;
            (-x, x, decay.tail_bound(x))
        }
    };
    let mut cuts: Vec<f64> = breaks.to_vec();
    cuts.push(0.0);
    // Geometric cuts keep the far field from being sampled by a single rule.
    let mut r = 1.0;
    while r < hi.abs().max(lo.abs()) {
        cuts.push(r);
        cuts.push(-r);
        r *= 2.0;
    }
    let r = Integrator::new().breakpoints(&cuts).integrate(f, lo, hi, tol / 2.0);
    Ok(r.add_error(tail))
}

/// `∫_{onset}^∞ P(t)·t^{-power} dt` for a `period`-periodic, real `P` and
/// `power > 1`, `onset > 0`.
///
/// Whole periods are integrated up to `X = onset + N·period`; beyond `X`,
/// `P = m + (P − m)` and two integrations by parts give
/// `m·X^{1−γ}/(γ−1) + c·X^{−γ} + E` with
/// `c = (1/L)∫_X^{X+L}(X+L−u)(P(u)−m) du` and
/// `|E| ≤ γ·(L/2)·(A/2 + |c|)·X^{−γ−1}`, `A = ∫_X^{X+L}|P−m|`.
/// `N` is the smallest count that makes the `E` bound a quarter of `tol`.
pub fn integrate_periodic_tail<P: Fn(f64) -> f64>(
    periodic: P,
    period: f64,
    power: f64,
    onset: f64,
    tol: f64,
) -> QuadratureResult {
    assert!(power > 1.0 && onset > 0.0 && period > 0.0 && tol > 0.0);
    let gamma = power;
    let one_period = Integrator::new().max_segments(4_000);
    let inner_tol = tol * 1e-2;
    let re = |t: f64| Complex64::new(periodic(t), 0.0);

    // Period statistics are phase-locked to `onset`, hence independent of N.
    let mean_r = one_period.integrate(&re, onset, onset + period, inner_tol * period);
    let m = mean_r.value.re / period;
    let c_r = one_period.integrate(
        |u| Complex64::new((onset + period - u) * (periodic(u) - m), 0.0),
        onset,
        onset + period,
        inner_tol * period,
    );
    let c = c_r.value.re / period;
    let a_r = one_period.integrate(|u| Complex64::new((periodic(u) - m).abs(), 0.0), onset, onset + period, inner_tol);
    let spread = a_r.value.re.abs() / 2.0 + c.abs() + a_r.abs_error_estimate;

    let remainder_coeff = gamma * period / 2.0 * spread;
    let x_needed = (4.0 * remainder_coeff / tol).powf(1.0 / (gamma + 1.0));
    let n = (((x_needed - onset) / period).ceil().max(1.0)) as usize;
    let x = onset + n as f64 * period;

    let head = Integrator::new()
        .pieces(n)
        .max_segments(20 * n + 2_000)
        .integrate(|t| Complex64::new(periodic(t) * t.powf(-gamma), 0.0), onset, x, tol / 2.0);

    let tail_value = m * x.powf(1.0 - gamma) / (gamma - 1.0) + c * x.powf(-gamma);
    let remainder = remainder_coeff * x.powf(-gamma - 1.0);
    let stat_error = mean_r.abs_error_estimate / period * x.powf(1.0 - gamma) / (gamma - 1.0)
        + c_r.abs_error_estimate / period * x.powf(-gamma);
    let error = head.abs_error_estimate + remainder + stat_error;
    let value = head.value.re + tail_value;
    QuadratureResult {
        value: Complex64::new(value, 0.0),
        abs_error_estimate: error,
        evaluations: head.evaluations + mean_r.evaluations + c_r.evaluations + a_r.evaluations,
        converged: error <= tol && value.is_finite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_integral() {
        let decay = DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: 1.0 };
        let r = integrate_line(|t| Complex64::new((-t * t).exp(), 0.0), decay, 1e-10).unwrap();
        assert!(r.converged);
        assert!((r.value.re - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn compact_indicator() {
        let f = |t: f64| Complex64::new(if t.abs() < 1.0 { 1.0 } else { 0.0 }, 0.0);
        let r = integrate_line_with_breaks(f, DecayInfo::Compact { a: -1.0, b: 1.0 }, &[-1.0, 1.0], 1e-12).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn poisson_density_has_unit_mass() {
        let decay = DecayInfo::Power { exponent: 2.0, onset: 1.0, bound: 1.0 / PI };
        let r = integrate_line(|t| Complex64::new(1.0 / (PI * (t * t + 1.0)), 0.0), decay, 1e-9).unwrap();
        assert!(r.converged);
        assert!((r.value.re - 1.0).abs() < 1e-9, "{}", r.value.re);
    }

    #[test]
    fn unreachable_tolerance_is_reported() {
        let decay = DecayInfo::Power { exponent: 1.1, onset: 1.0, bound: 1.0 };
        let err = integrate_line(|t| Complex64::new((1.0 + t * t).powf(-0.55), 0.0), decay, 1e-12).unwrap_err();
        assert!(matches!(err, Error::UnreachableTolerance { .. }));
        let decay = DecayInfo::Power { exponent: 0.9, onset: 1.0, bound: 1.0 };
        assert!(decay.truncation_point(1.0).is_err());
    }

    #[test]
    fn power_tail_bound_is_sound() {
        // 1/(1+t²) ≤ t^{-2}; the true two-sided tail beyond X is 2(π/2 − atan X).
        let decay = DecayInfo::Power { exponent: 2.0, onset: 1.0, bound: 1.0 };
        for &x in &[1.0, 3.0, 10.0, 100.0, 1e4] {
            let exact = 2.0 * (PI / 2.0 - f64::atan(x));
            assert!(exact <= decay.tail_bound(x));
        }
    }

    #[test]
    fn decay_algebra_bounds_hold_pointwise() {
        // f = e^{-t²} ≤ e^{-|t|} beyond 1; g = 1/(1+t²) ≤ t^{-2}.
        let fe = DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: 1.0 };
        let gp = DecayInfo::Power { exponent: 2.0, onset: 1.0, bound: 1.0 };
        let f = |t: f64| (-t * t).exp();
        let g = |t: f64| 1.0 / (1.0 + t * t);
        let sum = fe.sum(gp);
        let shifted = gp.shifted(3.0);
        let scaled = fe.scaled(0.5);
        for k in 0..400 {
            let t = 1.0 + 0.37 * k as f64;
            assert!(f(t) + g(t) <= sum.envelope(t) * (1.0 + 1e-12));
            if t >= shifted.onset() {
                assert!(g(t - 3.0) <= shifted.envelope(t));
                assert!(g(-t - 3.0) <= shifted.envelope(t));
            }
            if t >= scaled.onset() {
                assert!(f(0.5 * t) <= scaled.envelope(t) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn convolution_decay_bounds_quadrature() {
        // indicator ∗ Poisson density: closed form (atan(x+1) − atan(x−1))/π.
        let ind = DecayInfo::Compact { a: -1.0, b: 1.0 };
        let pois = DecayInfo::Power { exponent: 2.0, onset: 1.0, bound: 1.0 / PI };
        let conv = ind.convolution(2.0, pois, 1.0 / PI);
        for k in 0..200 {
            let x = conv.onset() + 0.5 * k as f64;
            let exact = ((x + 1.0).atan() - (x - 1.0).atan()) / PI;
            assert!(exact <= conv.envelope(x), "x = {x}");
        }
    }

    #[test]
    fn refinement_does_not_increase_error() {
        let decay = DecayInfo::Exponential { rate: 1.0, onset: 1.0, bound: 1.0 };
        let f = |t: f64| Complex64::new((-t * t).exp() * t.cos(), 0.0);
        let mut prev = f64::INFINITY;
        for k in 4..12 {
            let tol = 10f64.powi(-k);
            let r = integrate_line(f, decay, tol).unwrap();
            assert!(r.abs_error_estimate <= prev);
            prev = r.abs_error_estimate;
        }
    }

    #[test]
    fn periodic_tail_matches_dirichlet_square() {
        // ∫_π^∞ sin²t/t² = π/2 − ∫_0^π sin²t/t²
        let head = Integrator::new().integrate(
            |t: f64| Complex64::new(if t == 0.0 { 1.0 } else { (t.sin() / t).powi(2) }, 0.0),
            0.0,
            PI,
            1e-14,
        );
        let r = integrate_periodic_tail(|t| t.sin().powi(2), PI, 2.0, PI, 1e-11);
        assert!(r.converged, "{r:?}");
        assert!((r.value.re + head.value.re - PI / 2.0).abs() < 1e-11);
    }

    #[test]
    fn periodic_tail_slow_decay() {
        // ∫_1^∞ (2 + sin 2πt)·t^{-1.1} dt: the sine part integrates by parts to
        // a value far below the mean part, which is 2·10 = 20.
        let r = integrate_periodic_tail(|t| 2.0 + (2.0 * PI * t).sin(), 1.0, 1.1, 1.0, 1e-8);
        assert!(r.converged);
        // Sine part: ∫_1^∞ sin(2πt) t^{-1.1} dt by lobe splitting.
        let s = crate::quadrature::integrate_oscillatory(|t| t.powf(-1.1), 2.0 * PI, 1.0, 1e-11);
        assert!((r.value.re - (20.0 + s.value.im)).abs() < 1e-8, "{} vs {}", r.value.re, 20.0 + s.value.im);
    }
}
