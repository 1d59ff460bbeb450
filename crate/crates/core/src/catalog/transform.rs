//! Translation, modulation, reflection, dilation and linear combination of
//! test functions. Metadata is carried over only where it stays exact;
//! closed-form oracles are always dropped so that identities relating a
//! transformed function to the original are checked, not assumed.

use std::sync::Arc;

use num_complex::Complex64;

use super::{AbsTail, Smoothness, TailExpansion, TailTerm, TestFunction};

impl TestFunction {
    fn derived(&self, id: String, eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> TestFunction {
        let mut g = TestFunction::new(id, eval, self.decay);
        g.lp_membership = self.lp_membership;
        g.known_lp_norm = self.known_lp_norm.clone();
        g.singular_points = self.singular_points.clone();
        g.oscillation = self.oscillation;
        g.smoothness = self.smoothness;
        g.sup_abs = self.sup_abs;
        g.real_valued = self.real_valued;
        g.nonnegative = self.nonnegative;
        g
    }

    /// `c·f`.
    pub fn scale(&self, c: Complex64) -> TestFunction {
        let f = self.eval.clone();
        let mut g = self.derived(format!("{}*({c})", self.id), move |t| c * f(t));
        g.decay = self.decay.scale_bound(c.norm());
        let m = c.norm();
        g.known_lp_norm = self.known_lp_norm.clone().map(|n| {
            Arc::new(move |p| n(p).map(|v| v * m)) as Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>
        });
        g.right_tail = self.right_tail.as_ref().map(|e| e.map_terms(|t| TailTerm { coef: c * t.coef, ..*t }));
        g.left_tail = self.left_tail.as_ref().map(|e| e.map_terms(|t| TailTerm { coef: c * t.coef, ..*t }));
        g.right_abs = self.right_abs.as_ref().map(|a| scale_abs(a, m));
        g.left_abs = self.left_abs.as_ref().map(|a| scale_abs(a, m));
        g.derivative = self.derivative.as_ref().map(|d| Arc::new(d.scale(c)));
        g.sup_abs = self.sup_abs * m;
        g.real_valued = self.real_valued && c.im == 0.0;
        g.nonnegative = self.nonnegative && c.im == 0.0 && c.re >= 0.0;
        g
    }

    /// `τ_a f(t) = f(t − a)`.
    pub fn translate(&self, a: f64) -> TestFunction {
        if a == 0.0 {
            return self.clone();
        }
        let f = self.eval.clone();
        let mut g = self.derived(format!("{}(t-{a})", self.id), move |t| f(t - a));
        g.decay = self.decay.shifted(a);
        g.singular_points = self.singular_points.iter().map(|x| x + a).collect();
        g.derivative = self.derivative.as_ref().map(|d| Arc::new(d.translate(a)));
        g
    }

    /// `e^{iat}·f(t)`.
    pub fn modulate(&self, a: f64) -> TestFunction {
        if a == 0.0 {
            return self.clone();
        }
        let f = self.eval.clone();
        let mut g = self.derived(format!("exp(i{a}t){}", self.id), move |t| Complex64::from_polar(1.0, a * t) * f(t));
        g.right_tail = self.right_tail.as_ref().map(|e| e.map_terms(|t| TailTerm { freq: t.freq + a, ..*t }));
        g.left_tail = self.left_tail.as_ref().map(|e| e.map_terms(|t| TailTerm { freq: t.freq - a, ..*t }));
        g.right_abs = self.right_abs.clone();
        g.left_abs = self.left_abs.clone();
        g.oscillation = self.oscillation + a.abs();
        g.real_valued = false;
        g.nonnegative = false;
        let s = self.smoothness;
        g.smoothness = Smoothness {
            absolutely_continuous: s.absolutely_continuous,
            bounded_variation: s.bounded_variation && self.in_l1(),
            limit_zero: s.limit_zero,
            derivative_lp: s.derivative_lp.intersect(&self.lp_membership),
            ratio_to_t_vanishes: s.ratio_to_t_vanishes,
            ..Smoothness::NONE
        };
        g
    }

    /// `f̃(t) = f(−t)`.
    pub fn reflect(&self) -> TestFunction {
        let f = self.eval.clone();
        let mut g = self.derived(format!("{}(-t)", self.id), move |t| f(-t));
        g.decay = self.decay.scaled(-1.0);
        g.singular_points = self.singular_points.iter().map(|x| -x).collect();
        g.right_tail = self.left_tail.clone();
        g.left_tail = self.right_tail.clone();
        g.right_abs = self.left_abs.clone();
        g.left_abs = self.right_abs.clone();
        g.derivative = self.derivative.as_ref().map(|d| Arc::new(d.reflect().scale(Complex64::new(-1.0, 0.0))));
        g
    }

    /// `t ↦ f(a·t + b)`, `a ≠ 0`.
    pub fn dilate(&self, a: f64, b: f64) -> TestFunction {
        assert!(a != 0.0 && a.is_finite(), "dilation factor must be finite and nonzero");
        let f = self.eval.clone();
        let mut g = self.derived(format!("{}({a}t+{b})", self.id), move |t| f(a * t + b));
        g.decay = self.decay.shifted(-b).scaled(a);
        g.singular_points = self.singular_points.iter().map(|x| (x - b) / a).collect();
        let m = a.abs();
        g.known_lp_norm = self.known_lp_norm.clone().map(|n| {
            Arc::new(move |p: f64| n(p).map(|v| v * m.powf(-1.0 / p))) as Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>
        });
        g.oscillation = self.oscillation * m;
        if b == 0.0 {
            let (right, left) = if a > 0.0 { (&self.right_tail, &self.left_tail) } else { (&self.left_tail, &self.right_tail) };
            let (right_abs, left_abs) = if a > 0.0 { (&self.right_abs, &self.left_abs) } else { (&self.left_abs, &self.right_abs) };
            g.right_tail = right.as_ref().map(|e| scale_expansion(e, m));
            g.left_tail = left.as_ref().map(|e| scale_expansion(e, m));
            g.right_abs = right_abs.as_ref().map(|t| scale_abs_argument(t, m));
            g.left_abs = left_abs.as_ref().map(|t| scale_abs_argument(t, m));
        }
        g.derivative = self.derivative.as_ref().map(|d| Arc::new(d.dilate(a, b).scale(Complex64::new(a, 0.0))));
        g
    }

    /// `α·f + β·g`.
    pub fn linear_combination(alpha: Complex64, f: &TestFunction, beta: Complex64, g: &TestFunction) -> TestFunction {
        let (ef, eg) = (f.eval.clone(), g.eval.clone());
        let mut h = TestFunction::new(
            format!("({alpha})*{}+({beta})*{}", f.id, g.id),
            move |t| alpha * ef(t) + beta * eg(t),
            f.decay.scale_bound(alpha.norm()).sum(g.decay.scale_bound(beta.norm())),
        );
        h.lp_membership = f.lp_membership.intersect(&g.lp_membership);
        h.singular_points = f.singular_points.iter().chain(&g.singular_points).copied().collect();
        h.singular_points.sort_by(f64::total_cmp);
        h.singular_points.dedup();
        h.oscillation = f.oscillation.max(g.oscillation);
        let combine = |a: &Option<TailExpansion>, b: &Option<TailExpansion>| match (a, b) {
            (Some(x), Some(y)) => {
                let mut terms: Vec<_> = x.terms.iter().map(|t| TailTerm { coef: alpha * t.coef, ..*t }).collect();
                terms.extend(y.terms.iter().map(|t| TailTerm { coef: beta * t.coef, ..*t }));
                Some(TailExpansion::new(x.onset.max(y.onset), terms))
            }
            _ => None,
        };
        h.right_tail = combine(&f.right_tail, &g.right_tail);
        h.left_tail = combine(&f.left_tail, &g.left_tail);
        h.right_abs = h.right_tail.as_ref().and_then(AbsTail::from_expansion);
        h.left_abs = h.left_tail.as_ref().and_then(AbsTail::from_expansion);
        let (a, b) = (f.smoothness, g.smoothness);
        h.smoothness = Smoothness {
            absolutely_continuous: a.absolutely_continuous && b.absolutely_continuous,
            bounded_variation: a.bounded_variation && b.bounded_variation,
            limit_zero: a.limit_zero && b.limit_zero,
            derivative_lp: a.derivative_lp.intersect(&b.derivative_lp),
            derivative_bv: a.derivative_bv && b.derivative_bv,
            moment_l1: a.moment_l1 && b.moment_l1,
            moment_absolutely_continuous: a.moment_absolutely_continuous && b.moment_absolutely_continuous,
            moment_limit_zero: a.moment_limit_zero && b.moment_limit_zero,
            moment_derivative_lp: a.moment_derivative_lp.intersect(&b.moment_derivative_lp),
            moment_derivative_bv: a.moment_derivative_bv && b.moment_derivative_bv,
            ratio_to_t_vanishes: a.ratio_to_t_vanishes && b.ratio_to_t_vanishes,
        };
        if let (Some(df), Some(dg)) = (f.derivative(), g.derivative()) {
            h.derivative = Some(Arc::new(TestFunction::linear_combination(alpha, df, beta, dg)));
        }
        h.sup_abs = alpha.norm() * f.sup_abs + beta.norm() * g.sup_abs;
        h.real_valued = f.real_valued && g.real_valued && alpha.im == 0.0 && beta.im == 0.0;
        h
    }
}

fn scale_abs(t: &AbsTail, m: f64) -> AbsTail {
    let profile = t.profile.clone();
    AbsTail { profile: Arc::new(move |x| m * profile(x)), ..t.clone() }
}

/// Modulus tail of `τ ↦ f(m·τ)` given that of `f`, `m > 0`.
fn scale_abs_argument(t: &AbsTail, m: f64) -> AbsTail {
    let profile = t.profile.clone();
    let factor = m.powf(-t.power);
    AbsTail {
        onset: t.onset / m,
        power: t.power,
        period: t.period / m,
        profile: Arc::new(move |x| factor * profile(m * x)),
    }
}

fn scale_expansion(e: &TailExpansion, m: f64) -> TailExpansion {
    TailExpansion {
        onset: e.onset / m,
        terms: e
            .terms
            .iter()
            .map(|t| TailTerm { coef: t.coef * m.powf(-t.power), power: t.power, freq: t.freq * m })
            .collect(),
    }
}
