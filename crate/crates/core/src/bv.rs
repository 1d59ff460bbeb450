//! Functions of bounded variation, represented as piecewise `C¹` functions
//! with finitely many jumps on a core interval plus certified tails.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::catalog::{builtin, ComplexFn, TailTerm, TestFunction};
use crate::error::{Error, Result};
use crate::quadrature::{DecayInfo, Integrator, QuadratureResult, OSCILLATION_LOBE_THRESHOLD};

/// Jump of `g` at `at`, from the left limit to the right limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub at: f64,
    pub left: Complex64,
    pub right: Complex64,
}

impl Jump {
    pub fn size(&self) -> Complex64 {
        self.right - self.left
    }
}

/// Behaviour of `g` beyond one edge of the core, in the variable `τ = |s|`.
#[derive(Debug, Clone, PartialEq)]
pub enum BvTail {
    /// `g ≡ 0`.
    Zero,
    /// `|g(±τ)|, |g'(±τ)| ≤ bound·e^{−rate·τ}`.
    Exponential { rate: f64, bound: f64 },
    /// `|g(±τ)| ≤ bound·τ^{−value_exponent}` and `|g'(±τ)| ≤ bound·τ^{−derivative_exponent}`;
    /// `exact`, when present, lists terms with `g(±τ) = Σ c·τ^{−β}·e^{iωτ}`.
    Power { value_exponent: f64, derivative_exponent: f64, bound: f64, exact: Option<Vec<TailTerm>> },
}

impl BvTail {
    pub fn value_exponent(&self) -> f64 {
        match self {
            BvTail::Zero | BvTail::Exponential { .. } => f64::INFINITY,
            BvTail::Power { value_exponent, .. } => *value_exponent,
        }
    }

    fn derivative_envelope(&self, edge: f64) -> DecayInfo {
        match *self {
            BvTail::Zero => DecayInfo::Compact { a: -edge, b: edge },
            BvTail::Exponential { rate, bound } => DecayInfo::Exponential { rate, onset: edge, bound },
            BvTail::Power { derivative_exponent, bound, .. } => {
                DecayInfo::Power { exponent: derivative_exponent, onset: edge, bound }
            }
        }
    }

    fn value_envelope(&self, edge: f64) -> DecayInfo {
        match *self {
            BvTail::Power { value_exponent, bound, .. } => DecayInfo::Power { exponent: value_exponent, onset: edge, bound },
            _ => self.derivative_envelope(edge),
        }
    }

    /// Bound on `sup_{τ ≥ edge} max(|g|, |g'|)`.
    fn sup(&self, edge: f64) -> f64 {
        match *self {
            BvTail::Zero => 0.0,
            BvTail::Exponential { rate, bound } => bound * (-rate * edge).exp(),
            BvTail::Power { value_exponent, derivative_exponent, bound, .. } => {
                bound * edge.powf(-value_exponent.min(derivative_exponent))
            }
        }
    }

    /// Tail of `e^{ixs}·g` on this side; `sign` is `+1` on the right.
    fn modulated(&self, x: f64, sign: f64) -> BvTail {
        let lift = 1.0 + x.abs();
        match self {
            BvTail::Zero => BvTail::Zero,
            BvTail::Exponential { rate, bound } => BvTail::Exponential { rate: *rate, bound: bound * lift },
            BvTail::Power { value_exponent, derivative_exponent, bound, exact } => BvTail::Power {
                value_exponent: *value_exponent,
                derivative_exponent: if x == 0.0 { *derivative_exponent } else { value_exponent.min(*derivative_exponent) },
                bound: bound * lift,
                exact: exact
                    .as_ref()
                    .map(|ts| ts.iter().map(|t| TailTerm { freq: t.freq + sign * x, ..*t }).collect()),
            },
        }
    }

    /// Tail of a product; `edge ≥ 1` is where both tails hold.
    fn product(&self, other: &BvTail, edge: f64) -> BvTail {
        use BvTail::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Exponential { rate: r1, bound: b1 }, Exponential { rate: r2, bound: b2 }) => {
                Exponential { rate: r1 + r2, bound: 2.0 * b1 * b2 }
            }
            (Exponential { rate, bound }, p @ Power { .. }) | (p @ Power { .. }, Exponential { rate, bound }) => {
                Exponential { rate: *rate, bound: 2.0 * bound * p.sup(edge) }
            }
            (
                Power { value_exponent: v1, derivative_exponent: d1, bound: b1, exact: e1 },
                Power { value_exponent: v2, derivative_exponent: d2, bound: b2, exact: e2 },
            ) => Power {
                value_exponent: v1 + v2,
                derivative_exponent: (d1 + v2).min(v1 + d2),
                bound: 2.0 * b1 * b2,
                exact: match (e1, e2) {
                    (Some(a), Some(b)) => Some(
                        a.iter()
                            .flat_map(|s| {
                                b.iter().map(move |t| TailTerm {
                                    coef: s.coef * t.coef,
                                    power: s.power + t.power,
                                    freq: s.freq + t.freq,
                                })
                            })
                            .collect(),
                    ),
                    _ => None,
                },
            },
        }
    }
}

/// Result of a (weighted) variation computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Variation {
    pub value: f64,
    pub error: f64,
    /// The certified tail bound diverges.
    pub divergent: bool,
}

/// A function of bounded variation on ℝ (locally, when tails are slow).
///
/// On `core = [lo, hi]` the function is `C¹` between consecutive
/// `breakpoints` and may jump at points listed in `jumps`; beyond the core
/// the side tails apply. `value` and `derivative` may be evaluated anywhere
/// except at jump points, where only the stored one-sided limits count.
#[derive(Clone)]
pub struct BvFunction {
    pub id: String,
    pub core: (f64, f64),
    pub breakpoints: Vec<f64>,
    value: ComplexFn,
    derivative: ComplexFn,
    pub jumps: Vec<Jump>,
    pub left_tail: BvTail,
    pub right_tail: BvTail,
    pub limit_zero: bool,
    /// `g` as an integrable test function, when it is one.
    pub function: Option<TestFunction>,
    pub sup_value: f64,
    /// Angular frequency of oscillation of `g'`, for quadrature planning.
    pub oscillation: f64,
    /// `γ` with `|g(x)| ≍ x^{−γ}` as `x → 0⁺`, for functions singular there.
    pub origin_exponent: Option<f64>,
}

impl fmt::Debug for BvFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BvFunction")
            .field("id", &self.id)
            .field("core", &self.core)
            .field("breakpoints", &self.breakpoints)
            .field("jumps", &self.jumps)
            .field("left_tail", &self.left_tail)
            .field("right_tail", &self.right_tail)
            .finish_non_exhaustive()
    }
}

impl BvFunction {
    /// A function with no jumps, zero tails and the given core; adjust with
    /// the `with_*` methods.
    pub fn new(
        id: impl Into<String>,
        core: (f64, f64),
        value: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        assert!(core.0 < core.1, "core must be a nondegenerate interval");
        BvFunction {
            id: id.into(),
            core,
            breakpoints: vec![core.0, core.1],
            value: Arc::new(value),
            derivative: Arc::new(derivative),
            jumps: Vec::new(),
            left_tail: BvTail::Zero,
            right_tail: BvTail::Zero,
            limit_zero: true,
            function: None,
            sup_value: f64::INFINITY,
            oscillation: 0.0,
            origin_exponent: None,
        }
    }

    /// Real-valued convenience constructor.
    pub fn real(
        id: impl Into<String>,
        core: (f64, f64),
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        BvFunction::new(id, core, move |s| Complex64::new(value(s), 0.0), move |s| Complex64::new(derivative(s), 0.0))
    }

    pub fn with_breakpoints(mut self, points: &[f64]) -> Self {
        self.breakpoints.extend(points.iter().copied().filter(|&x| x >= self.core.0 && x <= self.core.1));
        self.breakpoints.sort_by(f64::total_cmp);
        self.breakpoints.dedup();
        self
    }

    pub fn with_jumps(mut self, jumps: Vec<Jump>) -> Self {
        let points: Vec<f64> = jumps.iter().map(|j| j.at).collect();
        assert!(
            points.iter().all(|&x| x > self.core.0 && x < self.core.1),
            "jumps must lie strictly inside the core"
        );
        self.jumps = jumps;
        self.jumps.sort_by(|a, b| a.at.total_cmp(&b.at));
        self.with_breakpoints(&points)
    }

    pub fn with_tails(mut self, left: BvTail, right: BvTail) -> Self {
        self.left_tail = left;
        self.right_tail = right;
        self
    }

    pub fn with_function(mut self, f: TestFunction) -> Self {
        self.function = Some(f);
        self
    }

    pub fn with_sup(mut self, sup: f64) -> Self {
        self.sup_value = sup;
        self
    }

    pub fn with_oscillation(mut self, omega: f64) -> Self {
        self.oscillation = omega.abs();
        self
    }

    pub fn with_limit_zero(mut self, limit_zero: bool) -> Self {
        self.limit_zero = limit_zero;
        self
    }

    pub fn with_origin_exponent(mut self, gamma: f64) -> Self {
        self.origin_exponent = Some(gamma);
        self
    }

    #[inline]
    pub fn value(&self, s: f64) -> Complex64 {
        (self.value)(s)
    }

    #[inline]
    pub fn derivative(&self, s: f64) -> Complex64 {
        (self.derivative)(s)
    }

    fn jump_at(&self, s: f64) -> Option<&Jump> {
        self.jumps.iter().find(|j| j.at == s)
    }

    pub fn left_limit(&self, s: f64) -> Complex64 {
        self.jump_at(s).map_or_else(|| self.value(s), |j| j.left)
    }

    pub fn right_limit(&self, s: f64) -> Complex64 {
        self.jump_at(s).map_or_else(|| self.value(s), |j| j.right)
    }

    /// No jumps: piecewise `C¹` and continuous, hence absolutely continuous
    /// on compacts.
    pub fn is_absolutely_continuous(&self) -> bool {
        self.jumps.is_empty()
    }

    /// Smallest tail exponent of `|g|`; `∞` for compact or exponential tails.
    pub fn decay_exponent(&self) -> f64 {
        self.left_tail.value_exponent().min(self.right_tail.value_exponent())
    }

    fn edge(&self) -> f64 {
        self.core.0.abs().max(self.core.1.abs())
    }

    /// Symmetric envelope of `|g'|` away from the core.
    pub fn derivative_decay(&self) -> DecayInfo {
        let edge = self.edge();
        let l = self.left_tail.derivative_envelope(edge);
        let r = self.right_tail.derivative_envelope(edge);
        l.sum(r)
    }

    /// Symmetric envelope of `|g|` away from the core.
    pub fn value_decay(&self) -> DecayInfo {
        let edge = self.edge();
        self.left_tail.value_envelope(edge).sum(self.right_tail.value_envelope(edge))
    }

    /// Cut points of `[a, b]`: the endpoints plus interior breakpoints.
    pub fn cuts(&self, a: f64, b: f64) -> Vec<f64> {
        let mut c = vec![a];
        c.extend(self.breakpoints.iter().copied().filter(|&x| x > a && x < b));
        c.push(b);
        c
    }

    /// Jumps strictly inside `(a, b)`.
    pub fn jumps_in(&self, a: f64, b: f64) -> impl Iterator<Item = &Jump> {
        self.jumps.iter().filter(move |j| j.at > a && j.at < b)
    }

    /// `∫_a^b |s|^r·|dg(s)|`: absolutely continuous part by quadrature plus
    /// the jumps strictly inside `(a, b)`.
    pub fn variation(&self, a: f64, b: f64, r: f64, tol: f64) -> QuadratureResult {
        let weight = move |s: f64| if r == 0.0 { 1.0 } else { s.abs().powf(r) };
        let mut total = QuadratureResult::exact(Complex64::new(0.0, 0.0));
        let cuts = self.cuts(a, b);
        let share = tol / (cuts.len() as f64);
        for w in cuts.windows(2) {
            let pieces = lobe_pieces(self.oscillation, w[1] - w[0]);
            let mut breaks = Vec::new();
            if w[0] < 0.0 && w[1] > 0.0 {
                breaks.push(0.0);
            }
            let piece = Integrator::new().pieces(pieces).breakpoints(&breaks).integrate(
                |s| Complex64::new(weight(s) * self.derivative(s).norm(), 0.0),
                w[0],
                w[1],
                share,
            );
            total = total.combine(piece);
        }
        let jumps: f64 = self.jumps_in(a, b).map(|j| weight(j.at) * j.size().norm()).sum();
        total.value += jumps;
        total
    }

    /// `∫_ℝ |s|^r·|dg(s)|` with certified tails. Divergence of the tail bound
    /// is a legal outcome and is flagged.
    pub fn weighted_variation(&self, r: f64, tol: f64) -> Variation {
        let (lo, hi) = self.core;
        let core = self.variation(lo, hi, r, tol / 3.0);
        let mut value = core.value.re;
        let mut error = core.abs_error_estimate;
        let mut converged = core.converged;
        // Jumps sit strictly inside the core by construction.
        for (tail, edge, sign) in [(&self.right_tail, hi, 1.0), (&self.left_tail, -lo, -1.0)] {
            match tail_variation(self, tail, edge, sign, r, tol / 3.0) {
                TailVariation::Finite(v, e, ok) => {
                    value += v;
                    error += e;
                    converged &= ok;
                }
                TailVariation::Divergent => return Variation { value: f64::INFINITY, error: 0.0, divergent: true },
            }
        }
        if !converged {
            error = error.max(tol);
        }
        Variation { value, error, divergent: false }
    }

    /// `e^{ixs}·g(s)`.
    pub fn modulate(&self, x: f64) -> BvFunction {
        if x == 0.0 {
            return self.clone();
        }
        let (v, d) = (self.value.clone(), self.derivative.clone());
        let (v2, iu) = (self.value.clone(), Complex64::new(0.0, x));
        let mut g = BvFunction::new(
            format!("exp(i{x}s){}", self.id),
            self.core,
            move |s| Complex64::from_polar(1.0, x * s) * v(s),
            move |s| Complex64::from_polar(1.0, x * s) * (iu * v2(s) + d(s)),
        );
        g.breakpoints = self.breakpoints.clone();
        g.jumps = self
            .jumps
            .iter()
            .map(|j| {
                let e = Complex64::from_polar(1.0, x * j.at);
                Jump { at: j.at, left: e * j.left, right: e * j.right }
            })
            .collect();
        g.left_tail = self.left_tail.modulated(x, -1.0);
        g.right_tail = self.right_tail.modulated(x, 1.0);
        g.limit_zero = self.limit_zero;
        g.sup_value = self.sup_value;
        g.oscillation = self.oscillation + x.abs();
        g.function = self.function.as_ref().map(|f| f.modulate(x));
        g.origin_exponent = self.origin_exponent;
        g
    }

    /// Pointwise product. Cores are merged and must reach `|s| ≥ 1` when a
    /// power tail is involved so that the tail bounds compose.
    pub fn product(&self, other: &BvFunction) -> BvFunction {
        let core = (self.core.0.min(other.core.0), self.core.1.max(other.core.1));
        let has_power = [&self.left_tail, &self.right_tail, &other.left_tail, &other.right_tail]
            .iter()
            .any(|t| matches!(t, BvTail::Power { .. }));
        let core = if has_power { (core.0.min(-1.0), core.1.max(1.0)) } else { core };
        let (va, da, vb, db) = (self.value.clone(), self.derivative.clone(), other.value.clone(), other.derivative.clone());
        let (va2, vb2) = (self.value.clone(), other.value.clone());
        let mut g = BvFunction::new(
            format!("{}*{}", self.id, other.id),
            core,
            move |s| va(s) * vb(s),
            move |s| da(s) * vb2(s) + va2(s) * db(s),
        );
        let mut points: Vec<f64> = self.breakpoints.iter().chain(&other.breakpoints).copied().collect();
        points.extend(self.jumps.iter().chain(&other.jumps).map(|j| j.at));
        g = g.with_breakpoints(&points);
        let mut at: Vec<f64> = self.jumps.iter().chain(&other.jumps).map(|j| j.at).collect();
        at.sort_by(f64::total_cmp);
        at.dedup();
        g.jumps = at
            .into_iter()
            .map(|x| Jump {
                at: x,
                left: self.left_limit(x) * other.left_limit(x),
                right: self.right_limit(x) * other.right_limit(x),
            })
            .filter(|j| j.size().norm() > 0.0)
            .collect();
        g.left_tail = self.left_tail.product(&other.left_tail, (-core.0).max(1.0));
        g.right_tail = self.right_tail.product(&other.right_tail, core.1.max(1.0));
        g.limit_zero = self.limit_zero || other.limit_zero;
        g.sup_value = self.sup_value * other.sup_value;
        g.oscillation = self.oscillation + other.oscillation;
        g
    }

    /// `c·g` for a real constant.
    pub fn scale(&self, c: f64) -> BvFunction {
        let mut g = self.clone();
        let (v, d) = (self.value.clone(), self.derivative.clone());
        g.id = format!("{c}*{}", self.id);
        g.value = Arc::new(move |s| c * v(s));
        g.derivative = Arc::new(move |s| c * d(s));
        g.jumps = self.jumps.iter().map(|j| Jump { at: j.at, left: c * j.left, right: c * j.right }).collect();
        let scale_tail = |t: &BvTail| match t {
            BvTail::Zero => BvTail::Zero,
            BvTail::Exponential { rate, bound } => BvTail::Exponential { rate: *rate, bound: bound * c.abs() },
            BvTail::Power { value_exponent, derivative_exponent, bound, exact } => BvTail::Power {
                value_exponent: *value_exponent,
                derivative_exponent: *derivative_exponent,
                bound: bound * c.abs(),
                exact: exact.as_ref().map(|ts| ts.iter().map(|t| TailTerm { coef: c * t.coef, ..*t }).collect()),
            },
        };
        g.left_tail = scale_tail(&self.left_tail);
        g.right_tail = scale_tail(&self.right_tail);
        g.sup_value = self.sup_value * c.abs();
        g.function = self.function.as_ref().map(|f| f.scale(Complex64::new(c, 0.0)));
        g
    }

    /// Piecewise cubic Hermite interpolant through `(nodes, values,
    /// derivatives)` on the core; `outside` supplies value and derivative
    /// beyond it.
    pub fn hermite(
        id: impl Into<String>,
        nodes: Vec<f64>,
        values: Vec<Complex64>,
        derivatives: Vec<Complex64>,
        outside: (ComplexFn, ComplexFn),
    ) -> BvFunction {
        assert!(nodes.len() >= 2 && nodes.len() == values.len() && nodes.len() == derivatives.len());
        let core = (nodes[0], *nodes.last().unwrap());
        let data = Arc::new((nodes, values, derivatives));
        let (d1, d2) = (data.clone(), data.clone());
        let (o1, o2) = outside;
        BvFunction::new(
            id,
            core,
            move |s| hermite_eval(&d1, s).map_or_else(|| o1(s), |(v, _)| v),
            move |s| hermite_eval(&d2, s).map_or_else(|| o2(s), |(_, d)| d),
        )
    }
}

type HermiteData = (Vec<f64>, Vec<Complex64>, Vec<Complex64>);

fn hermite_eval(data: &HermiteData, s: f64) -> Option<(Complex64, Complex64)> {
    let (x, v, d) = data;
    if !(s >= x[0] && s <= x[x.len() - 1]) {
        return None;
    }
    let k = x.partition_point(|&xi| xi <= s).clamp(1, x.len() - 1) - 1;
    let h = x[k + 1] - x[k];
    let t = (s - x[k]) / h;
    let (t2, t3) = (t * t, t * t * t);
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let value = v[k] * h00 + d[k] * (h * h10) + v[k + 1] * h01 + d[k + 1] * (h * h11);
    let dh00 = (6.0 * t2 - 6.0 * t) / h;
    let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    let dh01 = (-6.0 * t2 + 6.0 * t) / h;
    let dh11 = 3.0 * t2 - 2.0 * t;
    let deriv = v[k] * dh00 + d[k] * dh10 + v[k + 1] * dh01 + d[k + 1] * dh11;
    Some((value, deriv))
}

/// Number of initial pieces so that each holds a bounded number of lobes.
pub(crate) fn lobe_pieces(omega: f64, len: f64) -> usize {
    let lobes = omega * len / PI;
    if lobes > OSCILLATION_LOBE_THRESHOLD {
        (lobes / 4.0).ceil().min(50_000.0) as usize
    } else {
        ((lobes / 4.0).ceil() as usize).max(1)
    }
}

enum TailVariation {
    Finite(f64, f64, bool),
    Divergent,
}

/// `∫_edge^∞ τ^r·|g'(sign·τ)| dτ`.
fn tail_variation(g: &BvFunction, tail: &BvTail, edge: f64, sign: f64, r: f64, tol: f64) -> TailVariation {
    let edge = edge.max(0.0);
    match tail {
        BvTail::Zero => TailVariation::Finite(0.0, 0.0, true),
        BvTail::Power { derivative_exponent, exact: Some(terms), .. }
            if !terms.is_empty()
                && terms.iter().all(|t| t.freq == 0.0 && t.power == terms[0].power)
                && edge > 0.0 =>
        {
            // g = C·τ^{−β}: |g'| = β|C|·τ^{−β−1} exactly.
            let beta = terms[0].power;
            if beta - r <= 0.0 {
                return TailVariation::Divergent;
            }
            let c: Complex64 = terms.iter().map(|t| t.coef).sum();
            let _ = derivative_exponent;
            TailVariation::Finite(beta * c.norm() * edge.powf(r - beta) / (beta - r), 0.0, true)
        }
        BvTail::Power { derivative_exponent, bound, .. } => {
            let e = derivative_exponent - r;
            if e <= 1.0 {
                return TailVariation::Divergent;
            }
            let far = |x: f64| bound * x.powf(1.0 - e) / (e - 1.0);
            numeric_tail(g, edge, sign, r, tol, far)
        }
        BvTail::Exponential { rate, bound } => {
            let far = |x: f64| {
                if x < 2.0 * r / rate {
                    f64::INFINITY
                } else {
                    2.0 * bound * x.powf(r) * (-rate * x).exp() / rate
                }
            };
            numeric_tail(g, edge, sign, r, tol, far)
        }
    }
}

fn numeric_tail(g: &BvFunction, edge: f64, sign: f64, r: f64, tol: f64, far: impl Fn(f64) -> f64) -> TailVariation {
    const CAP: f64 = 1e9;
    let mut x = edge.max(1.0) * 2.0;
    while far(x) > tol / 2.0 && x < CAP {
        x *= 2.0;
    }
    let bound = far(x);
    let mut cuts = vec![edge];
    let mut c = edge.max(1.0);
    while c < x {
        if c > edge {
            cuts.push(c);
        }
        c *= 2.0;
    }
    cuts.push(x);
    let share = tol / (2.0 * cuts.len() as f64);
    let mut value = 0.0;
    let mut error = bound;
    let mut ok = bound <= tol / 2.0;
    for w in cuts.windows(2) {
        let piece = Integrator::new().pieces(lobe_pieces(g.oscillation, w[1] - w[0])).integrate(
            |t| Complex64::new(t.powf(r) * g.derivative(sign * t).norm(), 0.0),
            w[0],
            w[1],
            share,
        );
        value += piece.value.re;
        error += piece.abs_error_estimate;
        ok &= piece.converged;
    }
    TailVariation::Finite(value, error, ok)
}

/// Names accepted by [`bv_builtin`].
pub const BV_CATALOG: &[&str] = &[
    "gauss-weierstrass",
    "abel-poisson",
    "cesaro-fejer",
    "dirichlet",
    "power-tail",
    "sinc",
    "indicator01",
    "gaussian",
    "origin-power",
];

/// Looks up a bounded-variation function by name, with an optional
/// `:parameter` suffix.
pub fn bv_builtin(spec: &str) -> Result<BvFunction> {
    let (name, param) = match spec.split_once(':') {
        Some((n, v)) => {
            let v: f64 = v.parse().map_err(|_| Error::InvalidArgument(format!("bad parameter in {spec:?}")))?;
            (n, Some(v))
        }
        None => (spec, None),
    };
    let positive = |v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidArgument(format!("parameter of {name} must be positive, got {v}")))
        }
    };
    match name {
        "gauss-weierstrass" => Ok(gauss_weierstrass_kernel(positive(param.unwrap_or(1.0))?)),
        "abel-poisson" => Ok(abel_poisson_kernel(positive(param.unwrap_or(1.0))?)),
        "cesaro-fejer" => Ok(cesaro_fejer_kernel(positive(param.unwrap_or(1.0))?)),
        "dirichlet" => Ok(dirichlet_kernel(positive(param.unwrap_or(1.0))?)),
        "power-tail" => {
            let alpha = param.unwrap_or(0.8);
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidArgument(format!("power-tail exponent must lie in (0, 1), got {alpha}")));
            }
            Ok(power_tail(alpha))
        }
        "sinc" => Ok(sinc()),
        "indicator01" => Ok(indicator01()),
        "gaussian" => Ok(gaussian(1.0, 1.0)),
        "origin-power" => {
            let gamma = param.unwrap_or(0.3);
            if !(gamma > 0.0 && gamma < 1.0) {
                return Err(Error::InvalidArgument(format!("origin-power exponent must lie in (0, 1), got {gamma}")));
            }
            Ok(origin_power(gamma))
        }
        _ => Err(Error::UnknownFunction {
            name: spec.to_string(),
            available: BV_CATALOG.join(", "),
        }),
    }
}

/// `c·e^{−b·s²}`, `b > 0`.
pub fn gaussian(c: f64, b: f64) -> BvFunction {
    let edge = 2.0 / b.sqrt();
    let fhat_c = c * (PI / b).sqrt();
    let function = TestFunction::real(format!("{c}*exp(-{b}t^2)"), move |t| c * (-b * t * t).exp(), DecayInfo::Exponential {
        rate: b.sqrt(),
        onset: edge,
        bound: c.abs(),
    })
    .with_lp(crate::catalog::LpSet::all())
    .with_fhat(move |s| Complex64::new(fhat_c * (-s * s / (4.0 * b)).exp(), 0.0))
    .with_smoothness(crate::catalog::Smoothness::schwartz())
    .with_sup(c.abs());
    BvFunction::real(format!("{c}*exp(-{b}s^2)"), (-edge, edge), move |s| c * (-b * s * s).exp(), move |s| {
        -2.0 * b * s * c * (-b * s * s).exp()
    })
    .with_breakpoints(&[0.0])
    .with_tails(
        BvTail::Exponential { rate: b.sqrt(), bound: c.abs() * 1f64.max(2.0 * b.sqrt() / E) },
        BvTail::Exponential { rate: b.sqrt(), bound: c.abs() * 1f64.max(2.0 * b.sqrt() / E) },
    )
    .with_function(function)
    .with_sup(c.abs())
}

/// `e^{−a²s²}`, the transform of the Gauss–Weierstrass density.
pub fn gauss_weierstrass_kernel(a: f64) -> BvFunction {
    let mut g = gaussian(1.0, a * a);
    g.id = format!("gauss-weierstrass:{a}");
    g
}

/// `e^{−a|s|}`, the transform of the Poisson density.
pub fn abel_poisson_kernel(a: f64) -> BvFunction {
    let edge = 1.0 / a;
    let function = TestFunction::real(format!("exp(-{a}|t|)"), move |t| (-a * t.abs()).exp(), DecayInfo::Exponential {
        rate: a,
        onset: 0.0,
        bound: 1.0,
    })
    .with_lp(crate::catalog::LpSet::all())
    .with_singular_points(vec![0.0])
    .with_fhat(move |s| Complex64::new(2.0 * a / (a * a + s * s), 0.0))
    .with_sup(1.0);
    BvFunction::real(format!("abel-poisson:{a}"), (-edge, edge), move |s| (-a * s.abs()).exp(), move |s| {
        -a * s.signum() * (-a * s.abs()).exp()
    })
    .with_breakpoints(&[0.0])
    .with_tails(
        BvTail::Exponential { rate: a, bound: 1f64.max(a) },
        BvTail::Exponential { rate: a, bound: 1f64.max(a) },
    )
    .with_function(function)
    .with_sup(1.0)
}

/// `(1 − a|s|)₊`, the transform of the Fejér density.
pub fn cesaro_fejer_kernel(a: f64) -> BvFunction {
    let edge = 1.0 / a;
    let tri = move |s: f64| (1.0 - a * s.abs()).max(0.0);
    let function = TestFunction::real(format!("(1-{a}|t|)+"), tri, DecayInfo::Compact { a: -edge, b: edge })
        .with_lp(crate::catalog::LpSet::all())
        .with_singular_points(vec![-edge, 0.0, edge])
        .with_fhat(move |s| {
            let x = s / (2.0 * a);
            let v = if x.abs() < 1e-8 { 1.0 / a } else { 4.0 * a * (x.sin() / s).powi(2) };
            Complex64::new(v, 0.0)
        })
        .with_sup(1.0);
    BvFunction::real(format!("cesaro-fejer:{a}"), (-edge, edge), tri, move |s| {
        if s.abs() < edge {
            -a * s.signum()
        } else {
            0.0
        }
    })
    .with_breakpoints(&[0.0])
    .with_function(function)
    .with_sup(1.0)
}

/// `χ_{[−1/a, 1/a]}`, the transform of the Dirichlet kernel.
pub fn dirichlet_kernel(a: f64) -> BvFunction {
    let edge = 1.0 / a;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let function = TestFunction::real(
        format!("chi[-{edge},{edge}]"),
        move |t| if t.abs() <= edge { 1.0 } else { 0.0 },
        DecayInfo::Compact { a: -edge, b: edge },
    )
    .with_lp(crate::catalog::LpSet::all())
    .with_singular_points(vec![-edge, edge])
    .with_fhat(move |s| Complex64::new(if s == 0.0 { 2.0 * edge } else { 2.0 * (s * edge).sin() / s }, 0.0))
    .with_sup(1.0);
    BvFunction::real(
        format!("dirichlet:{a}"),
        (-2.0 * edge, 2.0 * edge),
        move |s| if s.abs() <= edge { 1.0 } else { 0.0 },
        |_| 0.0,
    )
    .with_jumps(vec![Jump { at: -edge, left: zero, right: one }, Jump { at: edge, left: one, right: zero }])
    .with_function(function)
    .with_sup(1.0)
}

/// `s^{−α}` for `s > 1`, zero otherwise; `0 < α < 1`.
pub fn power_tail(alpha: f64) -> BvFunction {
    let zero = Complex64::new(0.0, 0.0);
    let f = builtin(&format!("power_tail:{alpha}")).expect("power_tail is a catalog entry");
    BvFunction::real(
        format!("power-tail:{alpha}"),
        (-1.0, 2.0),
        move |s| if s > 1.0 { s.powf(-alpha) } else { 0.0 },
        move |s| if s > 1.0 { -alpha * s.powf(-alpha - 1.0) } else { 0.0 },
    )
    .with_jumps(vec![Jump { at: 1.0, left: zero, right: Complex64::new(1.0, 0.0) }])
    .with_tails(
        BvTail::Zero,
        BvTail::Power {
            value_exponent: alpha,
            derivative_exponent: alpha + 1.0,
            bound: 1f64.max(alpha),
            exact: Some(vec![TailTerm::real(1.0, alpha, 0.0)]),
        },
    )
    .with_function(f)
    .with_sup(1.0)
}

/// `sin(s)/s`: bounded, tending to zero, but of unbounded variation.
pub fn sinc() -> BvFunction {
    let terms = vec![
        TailTerm::new(Complex64::new(0.0, -0.5), 1.0, 1.0),
        TailTerm::new(Complex64::new(0.0, 0.5), 1.0, -1.0),
    ];
    let tail = BvTail::Power { value_exponent: 1.0, derivative_exponent: 1.0, bound: 2.0, exact: Some(terms) };
    let f = builtin("sinc").expect("sinc is a catalog entry");
    BvFunction::real(
        "sinc",
        (-1.0, 1.0),
        |s| if s == 0.0 { 1.0 } else { s.sin() / s },
        |s| {
            if s.abs() < 1e-4 {
                -s / 3.0 + s.powi(3) / 30.0
            } else {
                s.cos() / s - s.sin() / (s * s)
            }
        },
    )
    .with_breakpoints(&[0.0])
    .with_tails(tail.clone(), tail)
    .with_function(f)
    .with_sup(1.0)
    .with_oscillation(1.0)
}

/// `s^{−γ}` on `(0, 1]`, zero elsewhere: singular at `0⁺`, with a jump at 1.
pub fn origin_power(gamma: f64) -> BvFunction {
    let zero = Complex64::new(0.0, 0.0);
    BvFunction::real(
        format!("origin-power:{gamma}"),
        (-1.0, 2.0),
        move |s| if s > 0.0 && s <= 1.0 { s.powf(-gamma) } else { 0.0 },
        move |s| if s > 0.0 && s < 1.0 { -gamma * s.powf(-gamma - 1.0) } else { 0.0 },
    )
    .with_breakpoints(&[0.0])
    .with_jumps(vec![Jump { at: 1.0, left: Complex64::new(1.0, 0.0), right: zero }])
    .with_origin_exponent(gamma)
    .with_sup(f64::INFINITY)
}

/// `χ_{[0,1]}`.
pub fn indicator01() -> BvFunction {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let f = builtin("indicator").expect("indicator is a catalog entry").dilate(2.0, -1.0);
    BvFunction::real("indicator01", (-1.0, 2.0), |s| if (0.0..=1.0).contains(&s) { 1.0 } else { 0.0 }, |_| 0.0)
        .with_jumps(vec![Jump { at: 0.0, left: zero, right: one }, Jump { at: 1.0, left: one, right: zero }])
        .with_function(f)
        .with_sup(1.0)
}
