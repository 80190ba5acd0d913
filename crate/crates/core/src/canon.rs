//! Named constructions, isomorphism testing, and canonical forms.
//!
//! The isomorphism group for balanced bipartite digraphs permutes the
//! `x` part, permutes the `y` part, and may swap the two parts.
//!
//! [`canonical_form`] picks a distinguished serialization of the arc
//! matrix. In exact mode (half-order at most
//! [`EXACT_CANON_MAX_HALF_ORDER`]) it is the lexicographically least
//! serialization over the whole group, found by branch-and-bound over
//! row orders: for a fixed row order the best column order is simply the
//! lexicographic sort of the column vectors, so only row orders need
//! exploring. Above that, row orders are restricted to respect an
//! iterated degree-refinement coloring; the result is still invariant
//! under relabeling and equal forms still imply isomorphism, but it is
//! no longer guaranteed to be the global least serialization, so it is
//! flagged [`CanonMode::Heuristic`].

use crate::digraph::{BipartiteDigraph, DigraphBuilder, Part, Vertex};
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;

/// Largest half-order canonicalized by exhaustive search.
pub const EXACT_CANON_MAX_HALF_ORDER: usize = 7;

/// The 5-per-part exceptional digraph: strongly connected, satisfies the
/// level-0 dominating-pair degree condition, has a cut vertex, and has
/// no cycle through exactly eight vertices.
pub fn build_d10() -> BipartiteDigraph {
    let mut b = DigraphBuilder::new(5).expect("half-order 5 is valid");
    let both = |bb: &mut DigraphBuilder, i: usize, j: usize| {
        bb.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
        bb.add_arc(Vertex::y(j), Vertex::x(i)).unwrap();
    };
    // Complete bipartite subdigraph on {x1,x2,x3} x {y0,y1}.
    for i in 1..=3 {
        for j in 0..=1 {
            both(&mut b, i, j);
        }
    }
    // One-way arcs from {x1,x2,x3} to {y2,y3,y4}.
    for i in 1..=3 {
        for j in 2..=4 {
            b.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
        }
    }
    // Pendant-style 2-cycles.
    both(&mut b, 4, 1);
    both(&mut b, 0, 0);
    // Diagonal 2-cycles x_i <-> y_{i+1}.
    for i in 1..=3 {
        both(&mut b, i, i + 1);
    }
    b.freeze()
}

/// The 4-per-part exceptional digraph: strongly connected, satisfies the
/// level-0 dominating-pair degree condition, has a cut vertex, and has
/// no cycle through exactly six vertices.
pub fn build_d8() -> BipartiteDigraph {
    let mut b = DigraphBuilder::new(4).expect("half-order 4 is valid");
    let both = |bb: &mut DigraphBuilder, i: usize, j: usize| {
        bb.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
        bb.add_arc(Vertex::y(j), Vertex::x(i)).unwrap();
    };
    // Complete bipartite subdigraph on {x1,x2} x {y1,y2,y3}.
    for i in 1..=2 {
        for j in 1..=3 {
            both(&mut b, i, j);
        }
    }
    both(&mut b, 0, 0);
    both(&mut b, 0, 1);
    both(&mut b, 3, 3);
    b.freeze()
}

/// Complete bipartite digraph on `p` `x`-vertices and `q` `y`-vertices,
/// with all `2pq` arcs. The half-order is `max(p, q)`; when `p != q` the
/// remaining vertices are isolated.
pub fn build_complete(p: usize, q: usize) -> Result<BipartiteDigraph> {
    let mut b = DigraphBuilder::new(p.max(q))?;
    for i in 0..p {
        for j in 0..q {
            b.add_arc(Vertex::x(i), Vertex::y(j))?;
            b.add_arc(Vertex::y(j), Vertex::x(i))?;
        }
    }
    Ok(b.freeze())
}

/// Directed cycle through all `2a` vertices: `x_i -> y_i` and
/// `y_i -> x_(i+1 mod a)`.
pub fn build_directed_cycle(a: usize) -> Result<BipartiteDigraph> {
    let mut b = DigraphBuilder::new(a)?;
    for i in 0..a {
        b.add_arc(Vertex::x(i), Vertex::y(i))?;
        b.add_arc(Vertex::y(i), Vertex::x((i + 1) % a))?;
    }
    Ok(b.freeze())
}

/// A bijection in the allowed isomorphism group.
///
/// `x_image[i]` is the image of `x_i` and `y_image[j]` the image of
/// `y_j`; when `parts_swapped` is set, `x` vertices map into the `y`
/// part and vice versa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMapping {
    pub parts_swapped: bool,
    pub x_image: Vec<Vertex>,
    pub y_image: Vec<Vertex>,
}

/// Applies a mapping, producing the relabeled digraph.
///
/// # Panics
/// Panics if the mapping's shape does not match `d` (wrong lengths,
/// non-bijective images, or inconsistent parts).
pub fn apply_mapping(d: &BipartiteDigraph, m: &IsoMapping) -> BipartiteDigraph {
    let a = d.half_order();
    assert_eq!(m.x_image.len(), a, "x_image length");
    assert_eq!(m.y_image.len(), a, "y_image length");
    let (want_x, want_y) =
        if m.parts_swapped { (Part::Y, Part::X) } else { (Part::X, Part::Y) };
    assert!(m.x_image.iter().all(|v| v.part == want_x), "x images in wrong part");
    assert!(m.y_image.iter().all(|v| v.part == want_y), "y images in wrong part");
    let mut b = DigraphBuilder::new(a).expect("half-order already validated");
    for (from, to) in d.arcs() {
        let image = |v: Vertex| match v.part {
            Part::X => m.x_image[v.index],
            Part::Y => m.y_image[v.index],
        };
        b.add_arc(image(from), image(to)).expect("image stays in range");
    }
    let out = b.freeze();
    assert_eq!(out.arc_count(), d.arc_count(), "mapping must be a bijection");
    out
}

/// Relabels by index permutations, optionally swapping the parts.
/// `x_to[i]` is the new index of `x_i`; likewise `y_to` for `y_j`.
///
/// # Panics
/// Panics if either slice is not a permutation of `0..a`.
pub fn relabel(
    d: &BipartiteDigraph,
    x_to: &[usize],
    y_to: &[usize],
    swap_parts: bool,
) -> BipartiteDigraph {
    let (x_part, y_part) = if swap_parts { (Part::Y, Part::X) } else { (Part::X, Part::Y) };
    let m = IsoMapping {
        parts_swapped: swap_parts,
        x_image: x_to.iter().map(|&i| Vertex { part: x_part, index: i }).collect(),
        y_image: y_to.iter().map(|&j| Vertex { part: y_part, index: j }).collect(),
    };
    apply_mapping(d, &m)
}

/// Arc-code matrix `m[i][j]` of `d`.
fn code_matrix(d: &BipartiteDigraph) -> Vec<Vec<u8>> {
    let a = d.half_order();
    (0..a).map(|i| (0..a).map(|j| d.arc_code(i, j).bits()).collect()).collect()
}

/// Matrix of the digraph with parts swapped: entry `(j, i)` is the code
/// `(i, j)` with its two direction bits exchanged.
fn swapped_matrix(m: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let a = m.len();
    (0..a)
        .map(|j| {
            (0..a)
                .map(|i| match m[i][j] {
                    1 => 2,
                    2 => 1,
                    b => b,
                })
                .collect()
        })
        .collect()
}

/// Code-value histogram of a row; a necessary matching invariant, since
/// column permutations preserve it.
fn row_histogram(row: &[u8]) -> [usize; 4] {
    let mut h = [0; 4];
    for &c in row {
        h[c as usize] += 1;
    }
    h
}

/// Sorted multiset of column prefixes over the given row sequence.
fn column_prefixes(m: &[Vec<u8>], rows: &[usize]) -> Vec<Vec<u8>> {
    let a = m.len();
    let mut cols: Vec<Vec<u8>> =
        (0..a).map(|j| rows.iter().map(|&r| m[r][j]).collect()).collect();
    cols.sort_unstable();
    cols
}

/// Backtracking row matcher: assigns a row of `m1` to each row position
/// of `m2` in order, keeping the column-prefix multisets equal. On
/// success returns `(sigma, tau)` with `m1[i][j] == m2[sigma[i]][tau[j]]`.
fn match_rows(m1: &[Vec<u8>], m2: &[Vec<u8>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let a = m1.len();
    let h1: Vec<[usize; 4]> = m1.iter().map(|r| row_histogram(r)).collect();
    let h2: Vec<[usize; 4]> = m2.iter().map(|r| row_histogram(r)).collect();
    {
        let mut s1 = h1.clone();
        let mut s2 = h2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
    }

    // chosen[r] = row of m1 placed at row position r of m2.
    fn assign(
        m1: &[Vec<u8>],
        m2: &[Vec<u8>],
        h1: &[[usize; 4]],
        h2: &[[usize; 4]],
        chosen: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let a = m1.len();
        let r = chosen.len();
        if r == a {
            return true;
        }
        for s in 0..a {
            if used[s] || h1[s] != h2[r] {
                continue;
            }
            chosen.push(s);
            used[s] = true;
            let target_rows: Vec<usize> = (0..=r).collect();
            if column_prefixes(m1, chosen) == column_prefixes(m2, &target_rows)
                && assign(m1, m2, h1, h2, chosen, used)
            {
                return true;
            }
            chosen.pop();
            used[s] = false;
        }
        false
    }

    let mut chosen = Vec::with_capacity(a);
    let mut used = vec![false; a];
    if !assign(m1, m2, &h1, &h2, &mut chosen, &mut used) {
        return None;
    }

    // sigma: m1 row -> m2 row position.
    let mut sigma = vec![0; a];
    for (pos, &row) in chosen.iter().enumerate() {
        sigma[row] = pos;
    }
    // tau: match equal full columns greedily in index order.
    let row_order: Vec<usize> = (0..a).collect();
    let col_vec_1: Vec<Vec<u8>> =
        (0..a).map(|j| chosen.iter().map(|&r| m1[r][j]).collect()).collect();
    let col_vec_2: Vec<Vec<u8>> =
        (0..a).map(|c| row_order.iter().map(|&r| m2[r][c]).collect()).collect();
    let mut tau = vec![usize::MAX; a];
    let mut taken = vec![false; a];
    for j in 0..a {
        let c = (0..a).find(|&c| !taken[c] && col_vec_2[c] == col_vec_1[j])?;
        taken[c] = true;
        tau[j] = c;
    }
    Some((sigma, tau))
}

/// Finds an isomorphism from `d1` onto `d2` in the allowed group, if one
/// exists. Half-order or arc-count mismatches simply yield `None`.
pub fn find_isomorphism(d1: &BipartiteDigraph, d2: &BipartiteDigraph) -> Option<IsoMapping> {
    if d1.half_order() != d2.half_order() || d1.arc_count() != d2.arc_count() {
        return None;
    }
    let m1 = code_matrix(d1);
    let m2 = code_matrix(d2);
    for swap in [false, true] {
        let target = if swap { swapped_matrix(&m2) } else { m2.clone() };
        if let Some((sigma, tau)) = match_rows(&m1, &target) {
            let (x_part, y_part) = if swap { (Part::Y, Part::X) } else { (Part::X, Part::Y) };
            let mapping = IsoMapping {
                parts_swapped: swap,
                x_image: sigma.iter().map(|&i| Vertex { part: x_part, index: i }).collect(),
                y_image: tau.iter().map(|&j| Vertex { part: y_part, index: j }).collect(),
            };
            debug_assert_eq!(&apply_mapping(d1, &mapping), d2);
            return Some(mapping);
        }
    }
    None
}

/// Whether some allowed bijection maps `d1` exactly onto `d2`.
pub fn are_isomorphic(d1: &BipartiteDigraph, d2: &BipartiteDigraph) -> bool {
    find_isomorphism(d1, d2).is_some()
}

/// How a canonical form was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonMode {
    /// Search covered every allowed relabeling; equal forms are
    /// equivalent to isomorphism.
    Exact,
    /// Row orders were restricted by degree refinement. Still invariant
    /// under relabeling, and equal forms still imply isomorphism, but
    /// not guaranteed to be the global least serialization.
    Heuristic,
}

/// A distinguished serialization of a digraph's isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
    mode: CanonMode,
}

impl CanonicalForm {
    /// The canonical serialization in the digraph text format.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn mode(&self) -> CanonMode {
        self.mode
    }

    /// Lowercase hexadecimal rendering of [`CanonicalForm::bytes`].
    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Branch-and-bound over row orders. `position_class` restricts which
/// rows may occupy each position (heuristic mode); `None` allows all.
struct CanonSearch<'m> {
    m: &'m [Vec<u8>],
    a: usize,
    row_class: Option<Vec<usize>>,
    class_at_position: Option<Vec<usize>>,
    best: Option<Vec<u8>>,
}

impl CanonSearch<'_> {
    fn run(mut self) -> Vec<u8> {
        let groups = vec![(0..self.a).collect::<Vec<usize>>()];
        let mut prefix = Vec::with_capacity(self.a * self.a);
        self.recurse(0, &groups, &mut prefix);
        self.best.expect("at least one row order is always explored")
    }

    fn recurse(&mut self, used: u64, groups: &[Vec<usize>], prefix: &mut Vec<u8>) {
        let k = used.count_ones() as usize;
        if k == self.a {
            if self.best.as_ref().is_none_or(|b| prefix.as_slice() < b.as_slice()) {
                self.best = Some(prefix.clone());
            }
            return;
        }

        // Candidate rows for position k, deduplicated: identical rows
        // are interchangeable, so only the first of each is tried.
        let mut entries: Vec<(Vec<u8>, usize)> = Vec::new();
        'rows: for r in 0..self.a {
            if used >> r & 1 != 0 {
                continue;
            }
            if let (Some(rc), Some(cp)) = (&self.row_class, &self.class_at_position) {
                if rc[r] != cp[k] {
                    continue;
                }
            }
            for (_, prev) in &entries {
                if self.m[*prev] == self.m[r] {
                    continue 'rows;
                }
            }
            // Within each column group the final sort emits this row's
            // digits in ascending order.
            let mut contributed = Vec::with_capacity(self.a);
            for g in groups {
                let mut digits: Vec<u8> = g.iter().map(|&j| self.m[r][j]).collect();
                digits.sort_unstable();
                contributed.extend(digits);
            }
            entries.push((contributed, r));
        }
        entries.sort();

        let base_len = prefix.len();
        for (contributed, r) in entries {
            // Prune only when the running prefix ties the incumbent:
            // a strictly smaller prefix beats it regardless of the rest.
            // `best` improves during this loop, so recheck every turn.
            if let Some(best) = &self.best {
                if prefix.as_slice() == &best[..base_len]
                    && contributed.as_slice() > &best[base_len..base_len + self.a]
                {
                    // Entries are sorted; no later candidate can win.
                    break;
                }
            }
            let refined = refine_groups(groups, &self.m[r]);
            prefix.extend_from_slice(&contributed);
            self.recurse(used | 1 << r, &refined, prefix);
            prefix.truncate(base_len);
        }
    }
}

/// Splits each column group by this row's digit, subgroups in ascending
/// digit order; mirrors how the final column sort refines ties.
fn refine_groups(groups: &[Vec<usize>], row: &[u8]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        if g.len() == 1 {
            out.push(g.clone());
            continue;
        }
        let mut buckets: [Vec<usize>; 4] = Default::default();
        for &j in g {
            buckets[row[j] as usize].push(j);
        }
        for b in buckets {
            if !b.is_empty() {
                out.push(b);
            }
        }
    }
    out
}

/// Iterated degree-refinement coloring of rows and columns. Returns the
/// row class of each row plus the class occupying each row position,
/// both in an order determined only by isomorphism-invariant keys.
fn refinement_classes(m: &[Vec<u8>], a: usize) -> (Vec<usize>, Vec<usize>) {
    let mut row_color: Vec<u64> = (0..a).map(|i| pack_histogram(row_histogram(&m[i]))).collect();
    let mut col_color: Vec<u64> = (0..a)
        .map(|j| {
            let col: Vec<u8> = (0..a).map(|i| m[i][j]).collect();
            pack_histogram(row_histogram(&col))
        })
        .collect();
    normalize(&mut row_color);
    normalize(&mut col_color);

    loop {
        let before = (distinct(&row_color), distinct(&col_color));
        let mut new_row: Vec<Vec<u64>> = Vec::with_capacity(a);
        for i in 0..a {
            let mut nbrs: Vec<u64> = (0..a).map(|j| m[i][j] as u64 * 1000 + col_color[j]).collect();
            nbrs.sort_unstable();
            let mut key = vec![row_color[i]];
            key.extend(nbrs);
            new_row.push(key);
        }
        let mut new_col: Vec<Vec<u64>> = Vec::with_capacity(a);
        for j in 0..a {
            let mut nbrs: Vec<u64> = (0..a).map(|i| m[i][j] as u64 * 1000 + row_color[i]).collect();
            nbrs.sort_unstable();
            let mut key = vec![col_color[j]];
            key.extend(nbrs);
            new_col.push(key);
        }
        row_color = dense_ids(&new_row);
        col_color = dense_ids(&new_col);
        if (distinct(&row_color), distinct(&col_color)) == before {
            break;
        }
    }

    let row_class: Vec<usize> = row_color.iter().map(|&c| c as usize).collect();
    let mut class_at_position = Vec::with_capacity(a);
    let classes = distinct(&row_color);
    for c in 0..classes {
        let size = row_class.iter().filter(|&&x| x == c).count();
        class_at_position.extend(std::iter::repeat_n(c, size));
    }
    (row_class, class_at_position)
}

fn pack_histogram(h: [usize; 4]) -> u64 {
    h.iter().fold(0, |acc, &c| acc << 8 | c as u64)
}

fn distinct(colors: &[u64]) -> usize {
    let mut sorted: Vec<u64> = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

/// Replaces colors by their rank among the distinct values, preserving
/// the invariant ordering.
fn normalize(colors: &mut [u64]) {
    let mut sorted: Vec<u64> = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for c in colors.iter_mut() {
        *c = sorted.binary_search(c).unwrap() as u64;
    }
}

/// Dense invariant-ordered ids for composite keys.
fn dense_ids(keys: &[Vec<u64>]) -> Vec<u64> {
    let mut map: BTreeMap<&Vec<u64>, u64> = BTreeMap::new();
    for k in keys {
        map.entry(k).or_insert(0);
    }
    for (rank, (_, v)) in map.iter_mut().enumerate() {
        *v = rank as u64;
    }
    keys.iter().map(|k| map[k]).collect()
}

fn canonize_matrix(m: &[Vec<u8>], a: usize, exact: bool) -> Vec<u8> {
    let (row_class, class_at_position) = if exact {
        (None, None)
    } else {
        let (rc, cp) = refinement_classes(m, a);
        (Some(rc), Some(cp))
    };
    CanonSearch { m, a, row_class, class_at_position, best: None }.run()
}

/// Canonical form of `d`, invariant under the allowed isomorphism group.
pub fn canonical_form(d: &BipartiteDigraph) -> CanonicalForm {
    let a = d.half_order();
    let exact = a <= EXACT_CANON_MAX_HALF_ORDER;
    let m = code_matrix(d);
    let direct = canonize_matrix(&m, a, exact);
    let swapped = canonize_matrix(&swapped_matrix(&m), a, exact);
    let digits = direct.min(swapped);

    let mut bytes = format!("bbd {a}\n").into_bytes();
    for row in digits.chunks(a) {
        bytes.extend(row.iter().map(|&c| b'0' + c));
        bytes.push(b'\n');
    }
    CanonicalForm { bytes, mode: if exact { CanonMode::Exact } else { CanonMode::Heuristic } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{self, MaxBk};
    use crate::cycles;
    use crate::digraph::DigraphBuilder;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    const EXEMPLAR_10: &str = "bbd 5\n30000\n33311\n33131\n33113\n03000\n";
    const EXEMPLAR_8: &str = "bbd 4\n3300\n0333\n0333\n0003\n";

    fn random_relabeling(d: &BipartiteDigraph, rng: &mut StdRng) -> BipartiteDigraph {
        let a = d.half_order();
        let mut x_to: Vec<usize> = (0..a).collect();
        let mut y_to: Vec<usize> = (0..a).collect();
        x_to.shuffle(rng);
        y_to.shuffle(rng);
        relabel(d, &x_to, &y_to, rng.random_bool(0.5))
    }

    #[test]
    fn exemplar_constructions_match_frozen_serializations() {
        assert_eq!(build_d10().serialize(), EXEMPLAR_10);
        assert_eq!(build_d8().serialize(), EXEMPLAR_8);
        assert_eq!(build_d10().arc_count(), 28);
        assert_eq!(build_d8().arc_count(), 18);
    }

    #[test]
    fn exemplar_degrees_and_conditions() {
        let d10 = build_d10();
        assert_eq!(d10.degree(Vertex::x(0)).total(), 2);
        assert_eq!(d10.degree(Vertex::x(4)).total(), 2);
        assert!(analysis::satisfies_bk(&d10, 0));
        assert!(analysis::is_strong(&d10));
        let d8 = build_d8();
        assert!(analysis::is_strong(&d8));
        assert!(!cycles::has_cycle_of_length(&d8, 6));
        // The higher-level condition is not reached by either exemplar.
        assert_eq!(analysis::max_bk(&d10), MaxBk::Level(0));
        assert_eq!(analysis::max_bk(&d8), MaxBk::Level(0));
    }

    #[test]
    fn complete_construction_counts() {
        assert_eq!(build_complete(2, 3).unwrap().arc_count(), 12);
        assert_eq!(build_complete(2, 3).unwrap().half_order(), 3);
        assert!(cycles::is_hamiltonian(&build_complete(4, 4).unwrap()));
        assert_eq!(cycles::cycle_spectrum(&build_complete(1, 1).unwrap()).lengths(), &[2]);
    }

    #[test]
    fn directed_cycle_construction() {
        for a in 1..=5 {
            let d = build_directed_cycle(a).unwrap();
            assert_eq!(d.arc_count(), 2 * a);
            assert!(analysis::is_strong(&d));
            assert!(analysis::dominating_pairs(&d).is_empty());
            assert_eq!(cycles::cycle_spectrum(&d).lengths(), &[2 * a]);
        }
    }

    #[test]
    fn isomorphic_after_random_relabeling() {
        let mut rng = StdRng::seed_from_u64(7);
        for d in [build_d10(), build_d8(), build_directed_cycle(4).unwrap()] {
            for _ in 0..20 {
                let r = random_relabeling(&d, &mut rng);
                let m = find_isomorphism(&d, &r).expect("relabeling is an isomorphism");
                assert_eq!(apply_mapping(&d, &m), r);
            }
        }
    }

    #[test]
    fn non_isomorphic_pairs_are_rejected() {
        assert!(!are_isomorphic(&build_d10(), &build_complete(5, 5).unwrap()));
        assert!(!are_isomorphic(&build_d10(), &build_d8()));
        let c4 = build_directed_cycle(4).unwrap();
        let k44 = build_complete(4, 4).unwrap();
        assert!(!are_isomorphic(&c4, &k44));
        // Same arc count, different structure: two disjoint 2-cycles vs
        // a directed 4-cycle.
        let mut b = DigraphBuilder::new(2).unwrap();
        for i in 0..2 {
            b.add_arc(Vertex::x(i), Vertex::y(i)).unwrap();
            b.add_arc(Vertex::y(i), Vertex::x(i)).unwrap();
        }
        let two_cycles = b.freeze();
        let c2 = build_directed_cycle(2).unwrap();
        assert_eq!(two_cycles.arc_count(), c2.arc_count());
        assert!(!are_isomorphic(&two_cycles, &c2));
    }

    #[test]
    fn part_swap_is_detected() {
        let d8 = build_d8();
        let swapped = relabel(&d8, &[2, 0, 3, 1], &[1, 3, 0, 2], true);
        let m = find_isomorphism(&d8, &swapped).expect("swap relabeling is an isomorphism");
        assert!(m.parts_swapped);
        assert_eq!(apply_mapping(&d8, &m), swapped);
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_a_small_corpus() {
        let mut rng = StdRng::seed_from_u64(11);
        let corpus = vec![
            build_d8(),
            random_relabeling(&build_d8(), &mut rng),
            build_directed_cycle(4).unwrap(),
            relabel(&build_directed_cycle(4).unwrap(), &[1, 2, 3, 0], &[3, 0, 1, 2], true),
            build_complete(4, 4).unwrap(),
        ];
        for d in &corpus {
            assert!(are_isomorphic(d, d), "reflexive");
        }
        for d1 in &corpus {
            for d2 in &corpus {
                assert_eq!(are_isomorphic(d1, d2), are_isomorphic(d2, d1), "symmetric");
            }
        }
        for d1 in &corpus {
            for d2 in &corpus {
                for d3 in &corpus {
                    if are_isomorphic(d1, d2) && are_isomorphic(d2, d3) {
                        assert!(are_isomorphic(d1, d3), "transitive");
                    }
                }
            }
        }
    }

    #[test]
    fn relabeling_preserves_structural_invariants() {
        let mut rng = StdRng::seed_from_u64(23);
        for d in [build_d10(), build_d8()] {
            let spectrum = cycles::cycle_spectrum(&d);
            let mut degrees: Vec<usize> = d.vertices().map(|v| d.degree(v).total()).collect();
            degrees.sort_unstable();
            for _ in 0..10 {
                let r = random_relabeling(&d, &mut rng);
                assert_eq!(r.arc_count(), d.arc_count());
                let mut r_degrees: Vec<usize> =
                    r.vertices().map(|v| r.degree(v).total()).collect();
                r_degrees.sort_unstable();
                assert_eq!(r_degrees, degrees);
                assert_eq!(analysis::is_strong(&r), analysis::is_strong(&d));
                assert_eq!(
                    analysis::is_underlying_2connected(&r),
                    analysis::is_underlying_2connected(&d)
                );
                assert_eq!(analysis::max_bk(&r), analysis::max_bk(&d));
                assert_eq!(cycles::cycle_spectrum(&r), spectrum);
            }
        }
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let mut rng = StdRng::seed_from_u64(41);
        for d in [build_d10(), build_d8()] {
            let form = canonical_form(&d);
            assert_eq!(form.mode(), CanonMode::Exact);
            for _ in 0..100 {
                let r = random_relabeling(&d, &mut rng);
                assert_eq!(canonical_form(&r), form);
            }
        }
    }

    #[test]
    fn canonical_form_invariance_regression() {
        // This instance once produced order-dependent results: the
        // search pruned siblings against the incumbent even when the
        // running prefix was already strictly smaller, discarding the
        // true minimum on some relabelings.
        let d = BipartiteDigraph::parse("bbd 4\n3001\n1120\n1202\n1310\n").unwrap();
        let form = canonical_form(&d);
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..200 {
            let r = random_relabeling(&d, &mut rng);
            assert_eq!(canonical_form(&r), form);
        }
    }

    #[test]
    fn canonical_form_separates_non_isomorphic_digraphs() {
        let d10 = canonical_form(&build_d10());
        let k55 = canonical_form(&build_complete(5, 5).unwrap());
        assert_ne!(d10, k55);
        assert_ne!(canonical_form(&build_d8()), canonical_form(&build_complete(4, 4).unwrap()));
    }

    #[test]
    fn canonical_bytes_are_a_valid_serialization() {
        let form = canonical_form(&build_d8());
        let text = String::from_utf8(form.bytes().to_vec()).unwrap();
        let reparsed = BipartiteDigraph::parse(&text).unwrap();
        assert!(are_isomorphic(&reparsed, &build_d8()));
        let hex = form.to_hex();
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        assert_eq!(hex.len(), form.bytes().len() * 2);
    }

    #[test]
    fn dedup_at_half_order_two_matches_pairwise_classification() {
        // All 256 labeled digraphs at a = 2.
        let mut all = Vec::with_capacity(256);
        for code in 0u32..256 {
            let mut b = DigraphBuilder::new(2).unwrap();
            for k in 0..4 {
                let (i, j) = (k / 2, k % 2);
                let c = code >> (2 * k) & 3;
                if c & 1 != 0 {
                    b.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
                }
                if c & 2 != 0 {
                    b.add_arc(Vertex::y(j), Vertex::x(i)).unwrap();
                }
            }
            all.push(b.freeze());
        }
        let mut forms: Vec<CanonicalForm> = all.iter().map(canonical_form).collect();
        forms.sort_by(|a, b| a.bytes().cmp(b.bytes()));
        forms.dedup();
        let canon_classes = forms.len();

        let mut reps: Vec<&BipartiteDigraph> = Vec::new();
        for d in &all {
            if !reps.iter().any(|r| are_isomorphic(r, d)) {
                reps.push(d);
            }
        }
        assert_eq!(canon_classes, reps.len());
    }

    #[test]
    fn heuristic_mode_is_flagged_and_invariant() {
        let mut rng = StdRng::seed_from_u64(59);
        let d = build_complete(8, 8).unwrap();
        assert_eq!(canonical_form(&d).mode(), CanonMode::Heuristic);

        // A structured a = 8 instance with degree variety.
        let mut b = DigraphBuilder::new(8).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                if (i + 2 * j) % 3 == 0 {
                    b.add_arc(Vertex::x(i), Vertex::y(j)).unwrap();
                }
                if (2 * i + j) % 4 == 0 {
                    b.add_arc(Vertex::y(j), Vertex::x(i)).unwrap();
                }
            }
        }
        let d = b.freeze();
        let form = canonical_form(&d);
        assert_eq!(form.mode(), CanonMode::Heuristic);
        for _ in 0..20 {
            let r = random_relabeling(&d, &mut rng);
            assert_eq!(canonical_form(&r), form);
        }
    }
}
