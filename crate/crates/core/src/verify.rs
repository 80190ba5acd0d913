//! Executable hypothesis/conclusion verdicts for the supported theorems.
//!
//! Each `verify_*` function checks a fixed hypothesis list against a
//! digraph. When every hypothesis holds, the conclusion is evaluated
//! and, where the statement allows an exceptional digraph, an escape
//! clause (an isomorphism test against that digraph) may satisfy it. A
//! *counterexample* is a digraph meeting all hypotheses whose conclusion
//! fails; for sound statements none should ever be found, which is
//! exactly what the hunting campaigns probe.
//!
//! Failed hypotheses are named individually (for example
//! `order_too_small` or `b0_violated_by_pair(x2,x3)`) so campaigns can
//! stratify rejections.

use crate::analysis::{
    bk_violating_pair, is_strong, is_underlying_2connected, satisfies_sum_condition,
    satisfies_wang, sum_violating_pair, wang_violating_pair, DominatingPair,
};
use crate::canon::{are_isomorphic, build_d10, build_d8};
use crate::cycles::{cycle_spectrum, find_cycle_of_length, CycleWitness, Spectrum};
use crate::digraph::BipartiteDigraph;
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Identifier of a supported theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T12,
    T13,
    T14,
    T15,
    T16,
    Cor,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T12,
        TheoremId::T13,
        TheoremId::T14,
        TheoremId::T15,
        TheoremId::T16,
        TheoremId::Cor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T12 => "t12",
            TheoremId::T13 => "t13",
            TheoremId::T14 => "t14",
            TheoremId::T15 => "t15",
            TheoremId::T16 => "t16",
            TheoremId::Cor => "cor",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<TheoremId, String> {
        match s.to_ascii_lowercase().as_str() {
            "t12" => Ok(TheoremId::T12),
            "t13" => Ok(TheoremId::T13),
            "t14" => Ok(TheoremId::T14),
            "t15" => Ok(TheoremId::T15),
            "t16" => Ok(TheoremId::T16),
            "cor" => Ok(TheoremId::Cor),
            _ => Err(format!("unknown theorem id {s:?} (expected t12..t16 or cor)")),
        }
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Evidence attached to an evaluated conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerdictEvidence {
    /// A concrete cycle establishing the conclusion.
    Cycle(CycleWitness),
    /// The computed cycle spectrum (for coverage-style conclusions,
    /// including failed ones).
    Spectrum(Spectrum),
}

impl Serialize for VerdictEvidence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            VerdictEvidence::Cycle(w) => serializer.serialize_str(&w.to_string()),
            VerdictEvidence::Spectrum(s) => s.serialize(serializer),
        }
    }
}

/// Outcome of checking one theorem against one digraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: TheoremId,
    pub hypotheses_met: bool,
    /// Named reasons, empty iff `hypotheses_met`.
    pub failed_hypotheses: Vec<String>,
    /// `None` exactly when the hypotheses failed.
    pub conclusion_holds: Option<bool>,
    /// Set when the conclusion holds only through the exceptional
    /// digraph's isomorphism branch.
    pub escape_clause: Option<String>,
    pub witness: Option<VerdictEvidence>,
    /// `hypotheses_met` and the conclusion failed.
    pub counterexample: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremVerdict {
    fn hypotheses_failed(theorem: TheoremId, failed: Vec<String>) -> TheoremVerdict {
        debug_assert!(!failed.is_empty());
        TheoremVerdict {
            theorem,
            hypotheses_met: false,
            failed_hypotheses: failed,
            conclusion_holds: None,
            escape_clause: None,
            witness: None,
            counterexample: false,
            note: None,
        }
    }

    fn concluded(
        theorem: TheoremId,
        holds: bool,
        escape_clause: Option<String>,
        witness: Option<VerdictEvidence>,
    ) -> TheoremVerdict {
        TheoremVerdict {
            theorem,
            hypotheses_met: true,
            failed_hypotheses: Vec::new(),
            conclusion_holds: Some(holds),
            escape_clause,
            witness,
            counterexample: !holds,
            note: None,
        }
    }
}

fn pair_failure(kind: &str, p: &DominatingPair) -> String {
    format!("{kind}_violated_by_pair({},{})", p.first, p.second)
}

/// Whether `d` is (isomorphic to) the directed cycle through all `2a`
/// vertices: strong with exactly one arc per vertex.
fn is_directed_full_cycle(d: &BipartiteDigraph) -> bool {
    d.arc_count() == d.order() && is_strong(d)
}

/// Hypotheses: strong; every dominating pair has one member of total
/// degree at least `2a - 1` and the other at least `a + 1`. Conclusion:
/// a cycle through all vertices exists.
pub fn verify_t12(d: &BipartiteDigraph) -> TheoremVerdict {
    let mut failed = Vec::new();
    if !is_strong(d) {
        failed.push("not_strong".to_string());
    }
    if !satisfies_wang(d) {
        failed.push(pair_failure("wang", &wang_violating_pair(d).unwrap()));
    }
    if !failed.is_empty() {
        return TheoremVerdict::hypotheses_failed(TheoremId::T12, failed);
    }
    match find_cycle_of_length(d, d.order()) {
        Some(w) => {
            TheoremVerdict::concluded(TheoremId::T12, true, None, Some(VerdictEvidence::Cycle(w)))
        }
        None => TheoremVerdict::concluded(TheoremId::T12, false, None, None),
    }
}

/// Hypotheses: half-order at least 4; strong; level-1 dominating-pair
/// degree condition. Conclusion: Hamiltonian, or isomorphic to the
/// 8-vertex exceptional digraph.
pub fn verify_t13(d: &BipartiteDigraph) -> TheoremVerdict {
    let mut failed = Vec::new();
    if d.half_order() < 4 {
        failed.push("order_too_small".to_string());
    }
    if !is_strong(d) {
        failed.push("not_strong".to_string());
    }
    if let Some(p) = bk_violating_pair(d, 1) {
        failed.push(pair_failure("b1", &p));
    }
    if !failed.is_empty() {
        return TheoremVerdict::hypotheses_failed(TheoremId::T13, failed);
    }
    if let Some(w) = find_cycle_of_length(d, d.order()) {
        return TheoremVerdict::concluded(
            TheoremId::T13,
            true,
            None,
            Some(VerdictEvidence::Cycle(w)),
        );
    }
    if are_isomorphic(d, &build_d8()) {
        return TheoremVerdict::concluded(
            TheoremId::T13,
            true,
            Some("isomorphic to D(8)".to_string()),
            None,
        );
    }
    TheoremVerdict::concluded(TheoremId::T13, false, None, None)
}

/// Hypotheses: order at least 8; strong; not the full directed cycle;
/// level-1 dominating-pair degree condition. Conclusion: cycles of every
/// even length up to `2a`, or isomorphic to the 8-vertex exceptional
/// digraph.
pub fn verify_t14(d: &BipartiteDigraph) -> TheoremVerdict {
    let mut failed = Vec::new();
    if d.order() < 8 {
        failed.push("order_too_small".to_string());
    }
    if !is_strong(d) {
        failed.push("not_strong".to_string());
    }
    if is_directed_full_cycle(d) {
        failed.push("is_directed_cycle".to_string());
    }
    if let Some(p) = bk_violating_pair(d, 1) {
        failed.push(pair_failure("b1", &p));
    }
    if !failed.is_empty() {
        return TheoremVerdict::hypotheses_failed(TheoremId::T14, failed);
    }
    let spectrum = cycle_spectrum(d);
    if spectrum.covers_even_up_to(d.order()) {
        return TheoremVerdict::concluded(
            TheoremId::T14,
            true,
            None,
            Some(VerdictEvidence::Spectrum(spectrum)),
        );
    }
    if are_isomorphic(d, &build_d8()) {
        return TheoremVerdict::concluded(
            TheoremId::T14,
            true,
            Some("isomorphic to D(8)".to_string()),
            None,
        );
    }
    TheoremVerdict::concluded(TheoremId::T14, false, None, Some(VerdictEvidence::Spectrum(spectrum)))
}

/// Hypotheses: order at least 8; strong; level-0 dominating-pair degree
/// condition; a cycle through all but two vertices exists. Conclusion:
/// cycles of every even length up to `2a - 2`.
pub fn verify_t15(d: &BipartiteDigraph) -> TheoremVerdict {
    let mut failed = Vec::new();
    if d.order() < 8 {
        failed.push("order_too_small".to_string());
    }
    if !is_strong(d) {
        failed.push("not_strong".to_string());
    }
    if let Some(p) = bk_violating_pair(d, 0) {
        failed.push(pair_failure("b0", &p));
    }
    let spectrum = cycle_spectrum(d);
    if d.order() >= 2 && !spectrum.contains(d.order() - 2) {
        failed.push("no_pre_hamiltonian".to_string());
    }
    if !failed.is_empty() {
        return TheoremVerdict::hypotheses_failed(TheoremId::T15, failed);
    }
    let holds = spectrum.covers_even_up_to(d.order() - 2);
    TheoremVerdict::concluded(TheoremId::T15, holds, None, Some(VerdictEvidence::Spectrum(spectrum)))
}

/// Hypotheses: order at least 10; strong; underlying graph not
/// 2-connected; level-0 dominating-pair degree condition. Conclusion: a
/// cycle through all but two vertices, or isomorphic to the 10-vertex
/// exceptional digraph.
pub fn verify_t16(d: &BipartiteDigraph) -> TheoremVerdict {
    let mut failed = Vec::new();
    if d.order() < 10 {
        failed.push("order_too_small".to_string());
    }
    if !is_strong(d) {
        failed.push("not_strong".to_string());
    }
    if is_underlying_2connected(d) {
        failed.push("underlying_2connected".to_string());
    }
    if let Some(p) = bk_violating_pair(d, 0) {
        failed.push(pair_failure("b0", &p));
    }
    if !failed.is_empty() {
        return TheoremVerdict::hypotheses_failed(TheoremId::T16, failed);
    }
    if let Some(w) = find_cycle_of_length(d, d.order() - 2) {
        return TheoremVerdict::concluded(
            TheoremId::T16,
            true,
            None,
            Some(VerdictEvidence::Cycle(w)),
        );
    }
    if are_isomorphic(d, &build_d10()) {
        return TheoremVerdict::concluded(
            TheoremId::T16,
            true,
            Some("isomorphic to D(10)".to_string()),
            None,
        );
    }
    TheoremVerdict::concluded(TheoremId::T16, false, None, None)
}

/// Hypotheses: order at least 8; strong; underlying graph not
/// 2-connected; dominating-pair degree sums at least `4a - 3`.
/// Conclusion: cycles of every even length up to `2(a - 1)`, or
/// isomorphic to the 10-vertex exceptional digraph.
pub fn verify_cor(d: &BipartiteDigraph) -> TheoremVerdict {
    let note = "conclusion read as even cycle lengths 2k for k in [1, a-1]; \
                odd-length cycles cannot occur in bipartite digraphs";
    let mut failed = Vec::new();
    if d.order() < 8 {
        failed.push("order_too_small".to_string());
    }
    if !is_strong(d) {
        failed.push("not_strong".to_string());
    }
    if is_underlying_2connected(d) {
        failed.push("underlying_2connected".to_string());
    }
    if !satisfies_sum_condition(d) {
        failed.push(pair_failure("sum", &sum_violating_pair(d).unwrap()));
    }
    if !failed.is_empty() {
        let mut v = TheoremVerdict::hypotheses_failed(TheoremId::Cor, failed);
        v.note = Some(note.to_string());
        return v;
    }
    let spectrum = cycle_spectrum(d);
    let mut v = if spectrum.covers_even_up_to(d.order() - 2) {
        TheoremVerdict::concluded(
            TheoremId::Cor,
            true,
            None,
            Some(VerdictEvidence::Spectrum(spectrum)),
        )
    } else if are_isomorphic(d, &build_d10()) {
        TheoremVerdict::concluded(
            TheoremId::Cor,
            true,
            Some("isomorphic to D(10)".to_string()),
            None,
        )
    } else {
        TheoremVerdict::concluded(
            TheoremId::Cor,
            false,
            None,
            Some(VerdictEvidence::Spectrum(spectrum)),
        )
    };
    v.note = Some(note.to_string());
    v
}

/// Dispatches to the checker for `theorem`.
pub fn verify(theorem: TheoremId, d: &BipartiteDigraph) -> TheoremVerdict {
    match theorem {
        TheoremId::T12 => verify_t12(d),
        TheoremId::T13 => verify_t13(d),
        TheoremId::T14 => verify_t14(d),
        TheoremId::T15 => verify_t15(d),
        TheoremId::T16 => verify_t16(d),
        TheoremId::Cor => verify_cor(d),
    }
}
