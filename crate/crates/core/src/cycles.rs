//! Exact-length directed cycle search and cycle spectra.
//!
//! The main engine ([`find_cycle_of_length`]) runs a depth-first search
//! over alternating paths with three refinements:
//!
//! - a per-branch `u64` bitset of used vertices, keyed by the
//!   interleaved rank `x0 < y0 < x1 < y1 < ..`;
//! - anchor canonicalization: the search fixes the least vertex of the
//!   cycle and only extends through strictly larger ranks, killing
//!   rotational symmetry;
//! - a one-step lookahead: a branch is cut as soon as no unused
//!   in-neighbor of the anchor remains to close the cycle.
//!
//! Candidates are tried in ascending rank order, so the first cycle
//! found is the lexicographically least witness. [`brute_oracle_has_cycle`]
//! re-decides the same predicate by plain sequence enumeration over a
//! boolean adjacency matrix and exists only to cross-check the engine.

use crate::analysis::bits64;
use crate::digraph::{bits, BipartiteDigraph, Part, Vertex};
use crate::error::Error;
use crate::Result;
use serde::{Serialize, Serializer};
use std::fmt;

/// Largest order accepted by [`brute_oracle_has_cycle`].
pub const ORACLE_MAX_ORDER: usize = 12;

/// A directed cycle given as its vertex sequence.
///
/// Valid witnesses visit distinct vertices, alternate parts, and follow
/// arcs of the digraph, including the closing arc back to the first
/// vertex. Use [`validate_witness`] to check a witness against a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    vertices: Vec<Vertex>,
}

impl CycleWitness {
    /// Wraps a vertex sequence without validation.
    pub fn new(vertices: Vec<Vertex>) -> CycleWitness {
        CycleWitness { vertices }
    }

    /// The vertex sequence.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Cycle length (number of vertices).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl fmt::Display for CycleWitness {
    /// Space-separated vertex names, e.g. `x0 y0 x1 y1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Set of even cycle lengths present in a digraph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Spectrum {
    present: Vec<usize>,
}

impl Spectrum {
    /// Lengths in increasing order.
    pub fn lengths(&self) -> &[usize] {
        &self.present
    }

    pub fn contains(&self, len: usize) -> bool {
        self.present.binary_search(&len).is_ok()
    }

    /// Whether every even length in `[2, upto]` is present.
    pub fn covers_even_up_to(&self, upto: usize) -> bool {
        (1..=upto / 2).all(|k| self.contains(2 * k))
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.present.serialize(serializer)
    }
}

/// Rank-indexed adjacency used by the search engine.
struct RankAdjacency {
    out: Vec<u64>,
    in_: Vec<u64>,
}

impl RankAdjacency {
    fn build(d: &BipartiteDigraph) -> RankAdjacency {
        let n = d.order();
        let mut out = vec![0u64; n];
        let mut in_ = vec![0u64; n];
        for v in d.vertices() {
            let opposite_rank = |idx: usize| match v.part {
                Part::X => Vertex::y(idx).rank(),
                Part::Y => Vertex::x(idx).rank(),
            };
            for j in bits(d.out_neighbors(v)) {
                out[v.rank()] |= 1 << opposite_rank(j);
            }
            for j in bits(d.in_neighbors(v)) {
                in_[v.rank()] |= 1 << opposite_rank(j);
            }
        }
        RankAdjacency { out, in_ }
    }
}

/// Extends `path` to a cycle of the requested length; `remaining` counts
/// vertices still to place. The final slot is pre-filtered to anchor
/// in-neighbors, so a full path always closes.
fn extend(
    adj: &RankAdjacency,
    eligible: u64,
    in_anchor: u64,
    path: &mut Vec<usize>,
    used: u64,
    remaining: usize,
) -> bool {
    if remaining == 0 {
        return true;
    }
    if in_anchor & !used == 0 {
        return false;
    }
    let last = *path.last().expect("path starts at the anchor");
    let mut cands = adj.out[last] & eligible & !used;
    if remaining == 1 {
        cands &= in_anchor;
    }
    for r in bits64(cands) {
        path.push(r);
        if extend(adj, eligible, in_anchor, path, used | 1 << r, remaining - 1) {
            return true;
        }
        path.pop();
    }
    false
}

/// Lexicographically least directed cycle with exactly `len` vertices,
/// or `None`. Odd or out-of-range lengths yield `None`.
///
/// The witness ordering is by interleaved rank (`x0 < y0 < x1 < ..`),
/// and the witness starts at its least vertex.
pub fn find_cycle_of_length(d: &BipartiteDigraph, len: usize) -> Option<CycleWitness> {
    let n = d.order();
    if len < 2 || len % 2 != 0 || len > n {
        return None;
    }
    let adj = RankAdjacency::build(d);
    for anchor in 0..=n - len {
        // Everything after the anchor must rank strictly higher.
        let eligible = !0u64 << (anchor + 1);
        let in_anchor = adj.in_[anchor] & eligible;
        let mut path = vec![anchor];
        if extend(&adj, eligible, in_anchor, &mut path, 1 << anchor, len - 1) {
            return Some(CycleWitness::new(path.into_iter().map(Vertex::from_rank).collect()));
        }
    }
    None
}

/// Whether a directed cycle with exactly `len` vertices exists.
pub fn has_cycle_of_length(d: &BipartiteDigraph, len: usize) -> bool {
    find_cycle_of_length(d, len).is_some()
}

/// Every even cycle length present in `d`, searched in decreasing order.
pub fn cycle_spectrum(d: &BipartiteDigraph) -> Spectrum {
    let mut present: Vec<usize> = (1..=d.half_order())
        .rev()
        .map(|k| 2 * k)
        .filter(|&len| has_cycle_of_length(d, len))
        .collect();
    present.reverse();
    Spectrum { present }
}

/// Whether a cycle through all `2a` vertices exists.
pub fn is_hamiltonian(d: &BipartiteDigraph) -> bool {
    has_cycle_of_length(d, d.order())
}

/// Whether a cycle through all but two vertices (length `2a - 2`) exists.
pub fn has_pre_hamiltonian(d: &BipartiteDigraph) -> bool {
    has_cycle_of_length(d, d.order().saturating_sub(2))
}

/// Checks a witness against `d`: even length in `[2, 2a]`, vertices
/// distinct and in range, parts alternating, and every arc present
/// including the closing arc.
pub fn validate_witness(d: &BipartiteDigraph, w: &CycleWitness) -> bool {
    let n = d.order();
    let len = w.len();
    if len < 2 || len % 2 != 0 || len > n {
        return false;
    }
    let mut seen = 0u64;
    for v in w.vertices() {
        if v.index >= d.half_order() {
            return false;
        }
        let bit = 1u64 << v.rank();
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    w.vertices()
        .iter()
        .zip(w.vertices().iter().cycle().skip(1))
        .all(|(from, to)| d.has_arc(*from, *to))
}

/// Decides the same predicate as [`has_cycle_of_length`] by enumerating
/// vertex sequences over a plain boolean adjacency matrix. Sequences are
/// rotation-pruned: the first vertex is the smallest id on the cycle.
///
/// Guarded to orders of at most [`ORACLE_MAX_ORDER`]; exists only to
/// cross-check the search engine.
pub fn brute_oracle_has_cycle(d: &BipartiteDigraph, len: usize) -> Result<bool> {
    let n = d.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::OracleOrderTooLarge { order: n });
    }
    if len < 2 || len % 2 != 0 || len > n {
        return Ok(false);
    }
    // Part-major ids: x_i is i, y_j is a + j.
    let all: Vec<Vertex> = d.vertices().collect();
    let mut adj = vec![vec![false; n]; n];
    for (ui, &u) in all.iter().enumerate() {
        for (vi, &v) in all.iter().enumerate() {
            adj[ui][vi] = d.has_arc(u, v);
        }
    }

    fn search(
        adj: &[Vec<bool>],
        start: usize,
        seq: &mut Vec<usize>,
        used: &mut [bool],
        len: usize,
    ) -> bool {
        if seq.len() == len {
            return adj[*seq.last().unwrap()][start];
        }
        for v in start + 1..adj.len() {
            if !used[v] && adj[*seq.last().unwrap()][v] {
                used[v] = true;
                seq.push(v);
                if search(adj, start, seq, used, len) {
                    return true;
                }
                seq.pop();
                used[v] = false;
            }
        }
        false
    }

    for start in 0..n {
        let mut used = vec![false; n];
        used[start] = true;
        let mut seq = vec![start];
        if search(&adj, start, &mut seq, &mut used, len) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::DigraphBuilder;
    use proptest::prelude::*;

    const EXEMPLAR_10: &str = "bbd 5\n30000\n33311\n33131\n33113\n03000\n";
    const EXEMPLAR_8: &str = "bbd 4\n3300\n0333\n0333\n0003\n";

    fn parse(text: &str) -> BipartiteDigraph {
        BipartiteDigraph::parse(text).unwrap()
    }

    fn complete_both(a: usize) -> BipartiteDigraph {
        let mut b = DigraphBuilder::new(a).unwrap();
        for i in 0..a {
            for j in 0..a {
                b.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
                b.add_arc(Vertex::y(j), Vertex::x(i)).unwrap();
            }
        }
        b.freeze()
    }

    fn directed_cycle(a: usize) -> BipartiteDigraph {
        let mut b = DigraphBuilder::new(a).unwrap();
        for i in 0..a {
            b.add_arc(Vertex::x(i), Vertex::y(i)).unwrap();
            b.add_arc(Vertex::y(i), Vertex::x((i + 1) % a)).unwrap();
        }
        b.freeze()
    }

    #[test]
    fn exemplar_10_has_no_length_8_cycle() {
        let d = parse(EXEMPLAR_10);
        assert!(!has_cycle_of_length(&d, 8));
        assert!(!has_pre_hamiltonian(&d));
        assert!(has_cycle_of_length(&d, 2));
    }

    #[test]
    fn exemplar_10_spectrum_and_hamiltonicity() {
        let d = parse(EXEMPLAR_10);
        assert_eq!(cycle_spectrum(&d).lengths(), &[2, 4, 6]);
        // Computed, and pinned by the brute oracle below: no length-10
        // cycle either.
        assert!(!is_hamiltonian(&d));
        assert!(!brute_oracle_has_cycle(&d, 10).unwrap());
        assert!(!brute_oracle_has_cycle(&d, 8).unwrap());
    }

    #[test]
    fn exemplar_8_has_no_length_6_cycle() {
        let d = parse(EXEMPLAR_8);
        assert!(!has_cycle_of_length(&d, 6));
        assert!(!has_pre_hamiltonian(&d));
        assert!(!brute_oracle_has_cycle(&d, 6).unwrap());
        assert_eq!(cycle_spectrum(&d).lengths(), &[2, 4]);
    }

    #[test]
    fn witnesses_are_lexicographically_least() {
        let d = parse(EXEMPLAR_10);
        assert_eq!(find_cycle_of_length(&d, 2).unwrap().to_string(), "x0 y0");
        assert_eq!(find_cycle_of_length(&d, 4).unwrap().to_string(), "y0 x1 y1 x2");
        // The smaller continuations y2 and y3 both dead-end: each can
        // only return to the already-used x2 region, so the least
        // 6-cycle routes through y4.
        let w6 = find_cycle_of_length(&d, 6).unwrap();
        assert!(validate_witness(&d, &w6));
        assert_eq!(w6.to_string(), "y0 x1 y1 x2 y4 x3");
    }

    #[test]
    fn complete_digraph_is_even_pancyclic() {
        for a in 1..=5 {
            let d = complete_both(a);
            let want: Vec<usize> = (1..=a).map(|k| 2 * k).collect();
            assert_eq!(cycle_spectrum(&d).lengths(), want.as_slice());
            assert!(is_hamiltonian(&d));
        }
    }

    #[test]
    fn directed_cycle_has_unique_length() {
        for a in 2..=6 {
            let d = directed_cycle(a);
            assert_eq!(cycle_spectrum(&d).lengths(), &[2 * a]);
        }
    }

    #[test]
    fn odd_and_out_of_range_lengths_are_absent() {
        let d = complete_both(3);
        for len in [0, 1, 3, 5, 7, 8, 100] {
            assert!(!has_cycle_of_length(&d, len), "len {len}");
        }
        assert!(!brute_oracle_has_cycle(&d, 3).unwrap());
        assert!(!brute_oracle_has_cycle(&d, 8).unwrap());
    }

    #[test]
    fn oracle_rejects_large_orders() {
        let d = complete_both(7);
        assert_eq!(
            brute_oracle_has_cycle(&d, 2).unwrap_err(),
            Error::OracleOrderTooLarge { order: 14 }
        );
    }

    #[test]
    fn validate_witness_rejects_bad_sequences() {
        let d = parse(EXEMPLAR_10);
        let ok = CycleWitness::new(vec![Vertex::x(0), Vertex::y(0)]);
        assert!(validate_witness(&d, &ok));
        let repeated =
            CycleWitness::new(vec![Vertex::x(0), Vertex::y(0), Vertex::x(0), Vertex::y(0)]);
        assert!(!validate_witness(&d, &repeated));
        let missing_arc = CycleWitness::new(vec![Vertex::x(0), Vertex::y(2)]);
        assert!(!validate_witness(&d, &missing_arc));
        let odd = CycleWitness::new(vec![Vertex::x(0)]);
        assert!(!validate_witness(&d, &odd));
        let out_of_range = CycleWitness::new(vec![Vertex::x(9), Vertex::y(0)]);
        assert!(!validate_witness(&d, &out_of_range));
        // A length-4 sequence using a length-2 cycle's arcs twice is not
        // reachable here, but a same-part step must also fail.
        let same_part = CycleWitness::new(vec![Vertex::x(0), Vertex::x(1)]);
        assert!(!validate_witness(&d, &same_part));
    }

    #[test]
    fn two_cycle_membership_matches_arc_codes() {
        let d = parse(EXEMPLAR_8);
        let has_both = (0..4).any(|i| (0..4).any(|j| d.arc_code(i, j) == crate::ArcCode::BOTH));
        assert_eq!(cycle_spectrum(&d).contains(2), has_both);
    }

    fn arb_digraph(max_a: usize) -> impl Strategy<Value = BipartiteDigraph> {
        (1usize..=max_a).prop_flat_map(|a| {
            proptest::collection::vec(0u8..4, a * a).prop_map(move |codes| {
                let mut b = DigraphBuilder::new(a).unwrap();
                for (k, code) in codes.iter().enumerate() {
                    let (i, j) = (k / a, k % a);
                    if code & 1 != 0 {
                        b.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
                    }
                    if code & 2 != 0 {
                        b.add_arc(Vertex::y(j), Vertex::x(i)).unwrap();
                    }
                }
                b.freeze()
            })
        })
    }

    proptest! {
        #[test]
        fn found_witnesses_validate(d in arb_digraph(5), k in 1usize..6) {
            let len = 2 * k;
            if let Some(w) = find_cycle_of_length(&d, len) {
                prop_assert_eq!(w.len(), len);
                prop_assert!(validate_witness(&d, &w));
                // The witness starts at its least vertex.
                let min = w.vertices().iter().map(|v| v.rank()).min().unwrap();
                prop_assert_eq!(w.vertices()[0].rank(), min);
            }
        }

        #[test]
        fn engine_agrees_with_brute_oracle(d in arb_digraph(4), k in 1usize..5) {
            let len = 2 * k;
            prop_assert_eq!(
                has_cycle_of_length(&d, len),
                brute_oracle_has_cycle(&d, len).unwrap()
            );
        }

        #[test]
        fn spectrum_grows_under_arc_addition(d in arb_digraph(4), i in 0usize..4, j in 0usize..4) {
            let a = d.half_order();
            let (i, j) = (i % a, j % a);
            let before = cycle_spectrum(&d);
            let bigger = d.with_arc(Vertex::x(i), Vertex::y(j)).unwrap();
            let after = cycle_spectrum(&bigger);
            for len in before.lengths() {
                prop_assert!(after.contains(*len));
            }
        }

        #[test]
        fn two_in_spectrum_iff_some_both_code(d in arb_digraph(5)) {
            let a = d.half_order();
            let has_both =
                (0..a).any(|i| (0..a).any(|j| d.arc_code(i, j) == crate::ArcCode::BOTH));
            prop_assert_eq!(cycle_spectrum(&d).contains(2), has_both);
        }
    }
}
