//! Test functions on ℝ with the metadata the numerical routines rely on:
//! decay and tail expansions for certified truncation, `L^p` membership,
//! smoothness flags, and closed-form oracles where they exist.

mod builtin;
mod transform;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::bv::BvFunction;
use crate::quadrature::DecayInfo;

pub use builtin::{builtin, builtin_names, catalog_listing, CatalogEntry};

pub type ComplexFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An interval of exponents `p ⊂ [1, ∞)`; possibly empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpSet {
    lo: f64,
    lo_closed: bool,
    hi: f64,
    hi_closed: bool,
}

impl LpSet {
    pub const EMPTY: LpSet = LpSet { lo: 1.0, lo_closed: false, hi: 1.0, hi_closed: false };

    /// `[1, ∞)`.
    pub fn all() -> Self {
        LpSet { lo: 1.0, lo_closed: true, hi: f64::INFINITY, hi_closed: false }
    }

    /// `(lo, ∞)`.
    pub fn above(lo: f64) -> Self {
        LpSet { lo: lo.max(1.0), lo_closed: lo < 1.0, hi: f64::INFINITY, hi_closed: false }
    }

    /// `[1, hi)`.
    pub fn below(hi: f64) -> Self {
        LpSet { lo: 1.0, lo_closed: true, hi, hi_closed: false }
    }

    pub fn single(p: f64) -> Self {
        LpSet { lo: p, lo_closed: true, hi: p, hi_closed: true }
    }

    pub fn contains(&self, p: f64) -> bool {
        let above = if self.lo_closed { p >= self.lo } else { p > self.lo };
        let below = if self.hi_closed { p <= self.hi } else { p < self.hi };
        p >= 1.0 && p.is_finite() && above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn intersect(&self, other: &LpSet) -> LpSet {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        LpSet { lo, lo_closed, hi, hi_closed }
    }

    /// Whether some `p` in `(lo, hi]` belongs to the set.
    pub fn meets(&self, lo: f64, hi: f64) -> bool {
        !self.intersect(&LpSet { lo, lo_closed: false, hi, hi_closed: true }).is_empty()
    }
}

impl fmt::Display for LpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        let hi = if self.hi.is_infinite() { "inf".to_string() } else { self.hi.to_string() };
        write!(f, "{open}{}, {hi}{close}", self.lo)
    }
}

/// One term `coef·τ^{-power}·e^{i·freq·τ}` of a tail expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailTerm {
    pub coef: Complex64,
    pub power: f64,
    pub freq: f64,
}

impl TailTerm {
    pub fn new(coef: Complex64, power: f64, freq: f64) -> Self {
        TailTerm { coef, power, freq }
    }

    pub fn real(coef: f64, power: f64, freq: f64) -> Self {
        TailTerm { coef: Complex64::new(coef, 0.0), power, freq }
    }
}

/// Exact representation `f(±τ) = Σ terms` for `τ ≥ onset`. An empty term list
/// means the function vanishes there.
#[derive(Debug, Clone, PartialEq)]
pub struct TailExpansion {
    pub onset: f64,
    pub terms: Vec<TailTerm>,
}

impl TailExpansion {
    pub fn zero(onset: f64) -> Self {
        TailExpansion { onset, terms: Vec::new() }
    }

    pub fn new(onset: f64, terms: Vec<TailTerm>) -> Self {
        TailExpansion { onset, terms }
    }

    pub fn eval(&self, tau: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coef * tau.powf(-t.power) * Complex64::from_polar(1.0, t.freq * tau))
            .sum()
    }

    pub(crate) fn map_terms(&self, f: impl Fn(&TailTerm) -> TailTerm) -> Self {
        TailExpansion { onset: self.onset, terms: self.terms.iter().map(f).collect() }
    }
}

/// `|f(±τ)| = profile(τ)·τ^{-power}` for `τ ≥ onset`, with `profile` periodic
/// of the given period (`period = 0` for a constant profile).
#[derive(Clone)]
pub struct AbsTail {
    pub onset: f64,
    pub power: f64,
    pub period: f64,
    pub profile: RealFn,
}

impl fmt::Debug for AbsTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AbsTail")
            .field("onset", &self.onset)
            .field("power", &self.power)
            .field("period", &self.period)
            .finish()
    }
}

impl AbsTail {
    /// Derives the modulus from an exact expansion whose terms share one
    /// power and have commensurate frequencies.
    pub fn from_expansion(e: &TailExpansion) -> Option<AbsTail> {
        if e.terms.is_empty() {
            return Some(AbsTail { onset: e.onset, power: 1.0, period: 0.0, profile: Arc::new(|_| 0.0) });
        }
        let power = e.terms[0].power;
        if e.terms.iter().any(|t| (t.power - power).abs() > 1e-14) {
            return None;
        }
        let base = e.terms[0].freq;
        let diffs: Vec<f64> = e.terms.iter().map(|t| t.freq - base).collect();
        let step = diffs.iter().map(|d| d.abs()).filter(|&d| d > 1e-14).fold(f64::INFINITY, f64::min);
        let terms: Vec<(Complex64, f64)> = e.terms.iter().zip(&diffs).map(|(t, &d)| (t.coef, d)).collect();
        let profile: RealFn = Arc::new(move |tau| {
            terms
                .iter()
                .map(|&(c, d)| c * Complex64::from_polar(1.0, d * tau))
                .sum::<Complex64>()
                .norm()
        });
        if step.is_infinite() {
            return Some(AbsTail { onset: e.onset, power, period: 0.0, profile });
        }
        if diffs.iter().any(|d| ((d / step) - (d / step).round()).abs() > 1e-9) {
            return None;
        }
        Some(AbsTail { onset: e.onset, power, period: 2.0 * std::f64::consts::PI / step, profile })
    }
}

/// Regularity metadata consumed by hypothesis checkers. `moment_*` flags refer
/// to `h(x) = x·g(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Smoothness {
    pub absolutely_continuous: bool,
    /// Finite total variation over ℝ.
    pub bounded_variation: bool,
    pub limit_zero: bool,
    pub derivative_lp: LpSet,
    pub derivative_bv: bool,
    pub moment_l1: bool,
    pub moment_absolutely_continuous: bool,
    pub moment_limit_zero: bool,
    pub moment_derivative_lp: LpSet,
    pub moment_derivative_bv: bool,
    /// `f(t)/t → 0` as `|t| → ∞`.
    pub ratio_to_t_vanishes: bool,
}

impl Smoothness {
    pub const NONE: Smoothness = Smoothness {
        absolutely_continuous: false,
        bounded_variation: false,
        limit_zero: false,
        derivative_lp: LpSet::EMPTY,
        derivative_bv: false,
        moment_l1: false,
        moment_absolutely_continuous: false,
        moment_limit_zero: false,
        moment_derivative_lp: LpSet::EMPTY,
        moment_derivative_bv: false,
        ratio_to_t_vanishes: false,
    };

    /// Schwartz-class functions satisfy every flag.
    pub fn schwartz() -> Smoothness {
        Smoothness {
            absolutely_continuous: true,
            bounded_variation: true,
            limit_zero: true,
            derivative_lp: LpSet::all(),
            derivative_bv: true,
            moment_l1: true,
            moment_absolutely_continuous: true,
            moment_limit_zero: true,
            moment_derivative_lp: LpSet::all(),
            moment_derivative_bv: true,
            ratio_to_t_vanishes: true,
        }
    }
}

/// A function on ℝ together with everything the integrators need to know
/// about it. Immutable once built; cheap to clone.
#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    eval: ComplexFn,
    pub decay: DecayInfo,
    pub lp_membership: LpSet,
    known_lp_norm: Option<Arc<dyn Fn(f64) -> Option<f64> + Send + Sync>>,
    pub singular_points: Vec<f64>,
    closed_form_psif: Option<ComplexFn>,
    closed_form_fhat: Option<ComplexFn>,
    pub right_tail: Option<TailExpansion>,
    pub left_tail: Option<TailExpansion>,
    pub right_abs: Option<AbsTail>,
    pub left_abs: Option<AbsTail>,
    /// Largest angular frequency at which `f` itself oscillates.
    pub oscillation: f64,
    pub smoothness: Smoothness,
    derivative: Option<Arc<TestFunction>>,
    pub sup_abs: f64,
    pub real_valued: bool,
    /// `f ≥ 0` everywhere.
    pub nonnegative: bool,
    fhat_bv: Option<Arc<BvFunction>>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("decay", &self.decay)
            .field("lp_membership", &self.lp_membership)
            .field("singular_points", &self.singular_points)
            .finish_non_exhaustive()
    }
}

impl TestFunction {
    /// A bare function with the given decay; every other field takes its
    /// most conservative value until set.
    pub fn new(id: impl Into<String>, eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static, decay: DecayInfo) -> Self {
        TestFunction {
            id: id.into(),
            eval: Arc::new(eval),
            decay,
            lp_membership: LpSet::EMPTY,
            known_lp_norm: None,
            singular_points: Vec::new(),
            closed_form_psif: None,
            closed_form_fhat: None,
            right_tail: None,
            left_tail: None,
            right_abs: None,
            left_abs: None,
            oscillation: 0.0,
            smoothness: Smoothness::NONE,
            derivative: None,
            sup_abs: f64::INFINITY,
            real_valued: false,
            nonnegative: false,
            fhat_bv: None,
        }
    }

    pub fn real(id: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static, decay: DecayInfo) -> Self {
        let mut f = TestFunction::new(id, move |t| Complex64::new(eval(t), 0.0), decay);
        f.real_valued = true;
        f
    }

    pub fn with_lp(mut self, set: LpSet) -> Self {
        self.lp_membership = set;
        self
    }

    pub fn with_known_norms(mut self, norms: impl Fn(f64) -> Option<f64> + Send + Sync + 'static) -> Self {
        self.known_lp_norm = Some(Arc::new(norms));
        self
    }

    pub fn with_singular_points(mut self, points: Vec<f64>) -> Self {
        self.singular_points = points;
        self
    }

    pub fn with_psif(mut self, psif: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.closed_form_psif = Some(Arc::new(psif));
        self
    }

    pub fn with_fhat(mut self, fhat: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.closed_form_fhat = Some(Arc::new(fhat));
        self
    }

    /// Sets exact tail expansions and the moduli derived from them.
    pub fn with_tails(mut self, left: TailExpansion, right: TailExpansion) -> Self {
        self.left_abs = AbsTail::from_expansion(&left);
        self.right_abs = AbsTail::from_expansion(&right);
        self.left_tail = Some(left);
        self.right_tail = Some(right);
        self
    }

    pub fn with_abs_tails(mut self, left: Option<AbsTail>, right: Option<AbsTail>) -> Self {
        self.left_abs = left;
        self.right_abs = right;
        self
    }

    pub fn with_oscillation(mut self, omega: f64) -> Self {
        self.oscillation = omega.abs();
        self
    }

    pub fn with_smoothness(mut self, s: Smoothness) -> Self {
        self.smoothness = s;
        self
    }

    pub fn with_derivative(mut self, d: TestFunction) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Declares `f ≥ 0`.
    pub fn with_nonnegative(mut self) -> Self {
        self.real_valued = true;
        self.nonnegative = true;
        self
    }

    pub fn with_sup(mut self, sup: f64) -> Self {
        self.sup_abs = sup;
        self
    }

    pub fn with_fhat_bv(mut self, g: BvFunction) -> Self {
        self.fhat_bv = Some(Arc::new(g));
        self
    }

    #[inline]
    pub fn eval(&self, t: f64) -> Complex64 {
        (self.eval)(t)
    }

    pub fn eval_fn(&self) -> ComplexFn {
        self.eval.clone()
    }

    pub fn known_lp_norm(&self, p: f64) -> Option<f64> {
        self.known_lp_norm.as_ref().and_then(|n| n(p))
    }

    pub fn closed_form_psif(&self, s: f64) -> Option<Complex64> {
        self.closed_form_psif.as_ref().map(|f| f(s))
    }

    pub fn has_closed_form_psif(&self) -> bool {
        self.closed_form_psif.is_some()
    }

    pub fn closed_form_fhat(&self, s: f64) -> Option<Complex64> {
        self.closed_form_fhat.as_ref().map(|f| f(s))
    }

    pub fn has_closed_form_fhat(&self) -> bool {
        self.closed_form_fhat.is_some()
    }

    pub fn derivative(&self) -> Option<&TestFunction> {
        self.derivative.as_deref()
    }

    /// Closed-form transform as a bounded-variation function, when known.
    pub fn fhat_bv(&self) -> Option<&BvFunction> {
        self.fhat_bv.as_deref()
    }

    pub fn in_lp(&self, p: f64) -> bool {
        self.lp_membership.contains(p)
    }

    pub fn in_l1(&self) -> bool {
        self.in_lp(1.0)
    }

    /// Both tails are exact expansions.
    pub fn has_exact_tails(&self) -> bool {
        self.left_tail.is_some() && self.right_tail.is_some()
    }
}
