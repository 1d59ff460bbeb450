//! Sufficient conditions, read from declared metadata only, for `ĝ ∈ L¹`
//! and for `ĝ` of bounded variation. With `h(x) = x·g(x)`:
//!
//! - (a) `g ∈ L¹` absolutely continuous, `g → 0`, `g′ ∈ L^p` for some `1 < p ≤ 2`: `ĝ ∈ L¹`.
//! - (b) `g, h ∈ L¹`, `h` absolutely continuous, `h → 0`, `h′ ∈ L^p` for some `1 < p ≤ 2`: `ĝ ∈ BV`.
//! - (c) `g` absolutely continuous, `g, g′ ∈ L¹`, `g′ ∈ BV`: `ĝ ∈ L¹`.
//! - (d) `g, h ∈ L¹`, `h` absolutely continuous, `h′ ∈ L¹ ∩ BV`: `ĝ ∈ BV`.
//!
//! None of them is necessary.

use std::fmt;

use crate::catalog::TestFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    FhatInL1,
    FhatInBv,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::FhatInL1 => "fhat_in_L1",
            Conclusion::FhatInBv => "fhat_in_BV",
        })
    }
}

/// One clause with the conditions it found missing.
#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub label: char,
    pub conclusion: Conclusion,
    pub triggered: bool,
    pub missing: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropositionReport {
    pub id: String,
    pub clauses: Vec<Clause>,
    /// First clause giving `ĝ ∈ L¹`.
    pub fhat_in_l1: Option<char>,
    /// First clause giving `ĝ ∈ BV`.
    pub fhat_in_bv: Option<char>,
    /// A closed-form transform of bounded variation is on record.
    pub closed_form_bv: bool,
    /// `"sufficient only"` when the transform is known to be BV although no
    /// clause shows it.
    pub note: Option<&'static str>,
}

fn clause(label: char, conclusion: Conclusion, conditions: &[(bool, &'static str)]) -> Clause {
    let missing: Vec<&'static str> = conditions.iter().filter(|(ok, _)| !ok).map(|(_, name)| *name).collect();
    Clause { label, conclusion, triggered: missing.is_empty(), missing }
}

pub fn proposition_checker(g: &TestFunction) -> PropositionReport {
    let sm = &g.smoothness;
    let g_l1 = g.in_l1();
    let clauses = vec![
        clause('a', Conclusion::FhatInL1, &[
            (g_l1, "g in L1"),
            (sm.absolutely_continuous, "g absolutely continuous"),
            (sm.limit_zero, "g vanishes at infinity"),
            (sm.derivative_lp.meets(1.0, 2.0), "g' in Lp for some 1 < p <= 2"),
        ]),
        clause('b', Conclusion::FhatInBv, &[
            (g_l1, "g in L1"),
            (sm.moment_l1, "h in L1"),
            (sm.moment_absolutely_continuous, "h absolutely continuous"),
            (sm.moment_limit_zero, "h vanishes at infinity"),
            (sm.moment_derivative_lp.meets(1.0, 2.0), "h' in Lp for some 1 < p <= 2"),
        ]),
        clause('c', Conclusion::FhatInL1, &[
            (sm.absolutely_continuous, "g absolutely continuous"),
            (g_l1, "g in L1"),
            (sm.derivative_lp.contains(1.0), "g' in L1"),
            (sm.derivative_bv, "g' of bounded variation"),
        ]),
        clause('d', Conclusion::FhatInBv, &[
            (g_l1, "g in L1"),
            (sm.moment_l1, "h in L1"),
            (sm.moment_absolutely_continuous, "h absolutely continuous"),
            (sm.moment_derivative_lp.contains(1.0), "h' in L1"),
            (sm.moment_derivative_bv, "h' of bounded variation"),
        ]),
    ];
    let first = |c: Conclusion| clauses.iter().find(|k| k.triggered && k.conclusion == c).map(|k| k.label);
    let fhat_in_l1 = first(Conclusion::FhatInL1);
    let fhat_in_bv = first(Conclusion::FhatInBv);
    let closed_form_bv = g.fhat_bv().is_some();
    PropositionReport {
        id: g.id.clone(),
        fhat_in_l1,
        fhat_in_bv,
        closed_form_bv,
        note: (closed_form_bv && fhat_in_bv.is_none()).then_some("sufficient only"),
        clauses,
    }
}
