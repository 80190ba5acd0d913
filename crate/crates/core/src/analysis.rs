//! Connectivity and degree-condition analysis.
//!
//! Strong connectivity is computed by bitset reachability closures; the
//! test suite cross-checks it against an independent Tarjan SCC
//! implementation ([`strongly_connected_components`]). Cut vertices of
//! the underlying undirected graph come from a lowpoint DFS.
//!
//! A *dominating pair* is an unordered pair of distinct same-part
//! vertices with at least one common out-neighbor. The degree conditions
//! checked here quantify over exactly these pairs:
//!
//! - [`satisfies_bk`]: every dominating pair has a member of total degree
//!   at least `2a - 2 + k`.
//! - [`satisfies_wang`]: one member has total degree at least `2a - 1`
//!   and the other at least `a + 1`.
//! - [`satisfies_sum_condition`]: the total degrees sum to at least
//!   `4a - 3`.
//!
//! All three hold vacuously when there are no dominating pairs.

use crate::digraph::{bits, BipartiteDigraph, Part, Vertex, VertexSet};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Iterator over the set bit positions of a `u64`.
pub(crate) fn bits64(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

/// Combined vertex id used for whole-digraph bitsets: `x_i` is `i`,
/// `y_j` is `half_order + j`.
fn id_of(v: Vertex, a: usize) -> usize {
    match v.part {
        Part::X => v.index,
        Part::Y => a + v.index,
    }
}

fn vertex_of(id: usize, a: usize) -> Vertex {
    if id < a {
        Vertex::x(id)
    } else {
        Vertex::y(id - a)
    }
}

/// Directed adjacency over combined ids, one `u64` row per vertex.
fn directed_rows(d: &BipartiteDigraph, forward: bool) -> Vec<u64> {
    let a = d.half_order();
    let mut rows = Vec::with_capacity(2 * a);
    for id in 0..2 * a {
        let v = vertex_of(id, a);
        let nbrs = if forward { d.out_neighbors(v) } else { d.in_neighbors(v) };
        let row = match v.part {
            Part::X => (nbrs as u64) << a,
            Part::Y => nbrs as u64,
        };
        rows.push(row);
    }
    rows
}

fn reachable_from(rows: &[u64], start: usize) -> u64 {
    let mut reached = 1u64 << start;
    let mut frontier = reached;
    while frontier != 0 {
        let mut next = 0u64;
        for id in bits64(frontier) {
            next |= rows[id];
        }
        frontier = next & !reached;
        reached |= frontier;
    }
    reached
}

/// Whether every vertex can reach every other vertex along arcs.
pub fn is_strong(d: &BipartiteDigraph) -> bool {
    let n = d.order();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    reachable_from(&directed_rows(d, true), 0) == full
        && reachable_from(&directed_rows(d, false), 0) == full
}

/// Strongly connected components via Tarjan's algorithm, in discovery
/// order. Kept separate from [`is_strong`] so the two can cross-check
/// each other.
pub fn strongly_connected_components(d: &BipartiteDigraph) -> Vec<Vec<Vertex>> {
    struct Tarjan<'a> {
        rows: &'a [u64],
        a: usize,
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        components: Vec<Vec<Vertex>>,
    }

    impl Tarjan<'_> {
        fn visit(&mut self, v: usize) {
            self.index[v] = Some(self.next_index);
            self.low[v] = self.next_index;
            self.next_index += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for w in bits64(self.rows[v]) {
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(wi) if self.on_stack[w] => {
                        self.low[v] = self.low[v].min(wi);
                    }
                    Some(_) => {}
                }
            }
            if self.low[v] == self.index[v].unwrap() {
                let mut component = Vec::new();
                loop {
                    let w = self.stack.pop().unwrap();
                    self.on_stack[w] = false;
                    component.push(vertex_of(w, self.a));
                    if w == v {
                        break;
                    }
                }
                component.sort();
                self.components.push(component);
            }
        }
    }

    let n = d.order();
    let rows = directed_rows(d, true);
    let mut t = Tarjan {
        rows: &rows,
        a: d.half_order(),
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        components: Vec::new(),
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    t.components
}

/// Undirected graph obtained by forgetting arc directions.
#[derive(Debug, Clone)]
pub struct UnderlyingGraph {
    half_order: usize,
    /// Symmetric adjacency over combined ids.
    adj: Vec<u64>,
}

/// The underlying undirected graph of `d`.
pub fn underlying_graph(d: &BipartiteDigraph) -> UnderlyingGraph {
    let a = d.half_order();
    let mut adj = vec![0u64; 2 * a];
    for i in 0..a {
        for j in 0..a {
            if d.arc_code(i, j).arc_count() > 0 {
                adj[i] |= 1 << (a + j);
                adj[a + j] |= 1 << i;
            }
        }
    }
    UnderlyingGraph { half_order: a, adj }
}

impl UnderlyingGraph {
    /// Total number of vertices.
    pub fn order(&self) -> usize {
        2 * self.half_order
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    /// Whether `u` and `v` are joined by an edge.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let a = self.half_order;
        self.adj[id_of(u, a)] >> id_of(v, a) & 1 != 0
    }

    /// Number of neighbors of `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[id_of(v, self.half_order)].count_ones() as usize
    }

    fn component_mask(&self, start: usize, removed: u64) -> u64 {
        let mut reached = 1u64 << start;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            for id in bits64(frontier) {
                next |= self.adj[id];
            }
            frontier = next & !reached & !removed;
            reached |= frontier;
        }
        reached
    }

    fn components_excluding(&self, removed: u64) -> Vec<u64> {
        let n = self.order();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut unseen = full & !removed;
        let mut parts = Vec::new();
        while unseen != 0 {
            let start = unseen.trailing_zeros() as usize;
            let mask = self.component_mask(start, removed);
            parts.push(mask);
            unseen &= !mask;
        }
        parts
    }

    /// Connected components, each sorted part-major, ordered by their
    /// smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_excluding(0)
            .into_iter()
            .map(|mask| bits64(mask).map(|id| vertex_of(id, self.half_order)).collect())
            .collect()
    }

    /// Whether all vertices lie in one component.
    pub fn is_connected(&self) -> bool {
        self.components_excluding(0).len() == 1
    }

    /// Vertices whose removal increases the number of components,
    /// sorted part-major. Computed by a lowpoint DFS.
    pub fn articulation_points(&self) -> Vec<Vertex> {
        struct Dfs<'a> {
            adj: &'a [u64],
            disc: Vec<Option<usize>>,
            low: Vec<usize>,
            time: usize,
            cuts: u64,
        }

        impl Dfs<'_> {
            fn visit(&mut self, v: usize, parent: Option<usize>) {
                self.disc[v] = Some(self.time);
                self.low[v] = self.time;
                self.time += 1;
                let mut children = 0;
                for w in bits64(self.adj[v]) {
                    if self.disc[w].is_none() {
                        children += 1;
                        self.visit(w, Some(v));
                        self.low[v] = self.low[v].min(self.low[w]);
                        if parent.is_some() && self.low[w] >= self.disc[v].unwrap() {
                            self.cuts |= 1 << v;
                        }
                    } else if Some(w) != parent {
                        self.low[v] = self.low[v].min(self.disc[w].unwrap());
                    }
                }
                if parent.is_none() && children >= 2 {
                    self.cuts |= 1 << v;
                }
            }
        }

        let n = self.order();
        let mut dfs =
            Dfs { adj: &self.adj, disc: vec![None; n], low: vec![0; n], time: 0, cuts: 0 };
        for v in 0..n {
            if dfs.disc[v].is_none() {
                dfs.visit(v, None);
            }
        }
        bits64(dfs.cuts).map(|id| vertex_of(id, self.half_order)).collect()
    }
}

/// Cut vertices of the underlying graph, sorted part-major.
pub fn cut_vertices(d: &BipartiteDigraph) -> Vec<Vertex> {
    underlying_graph(d).articulation_points()
}

/// Whether the underlying graph is 2-connected: at least 3 vertices,
/// connected, and free of cut vertices.
pub fn is_underlying_2connected(d: &BipartiteDigraph) -> bool {
    let g = underlying_graph(d);
    g.order() >= 3 && g.is_connected() && g.articulation_points().is_empty()
}

/// A cut vertex together with the split it induces.
///
/// `a_side` is the component of the underlying graph minus `cut` that
/// contains the smallest remaining vertex; `b_side` is everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub cut: Vertex,
    pub a_side: VertexSet,
    pub b_side: VertexSet,
}

/// Deterministic separation of `d` at a cut vertex.
///
/// Returns `None` when the underlying graph is disconnected or has no
/// cut vertex. Otherwise the cut is the smallest (part-major) cut vertex
/// and the sides are as documented on [`Separation`].
pub fn separation(d: &BipartiteDigraph) -> Option<Separation> {
    let g = underlying_graph(d);
    if !g.is_connected() {
        return None;
    }
    let cut = *g.articulation_points().first()?;
    let a = d.half_order();
    let removed = 1u64 << id_of(cut, a);
    let parts = g.components_excluding(removed);
    let smallest = parts
        .iter()
        .map(|mask| mask.trailing_zeros())
        .min()
        .expect("a separated graph has remaining vertices");
    let a_mask = *parts.iter().find(|mask| mask.trailing_zeros() == smallest).unwrap();
    let to_set = |mask: u64| bits64(mask).map(|id| vertex_of(id, a)).collect();
    let b_mask: u64 = parts.iter().filter(|&&m| m != a_mask).copied().fold(0, |acc, m| acc | m);
    Some(Separation { cut, a_side: to_set(a_mask), b_side: to_set(b_mask) })
}

/// An unordered same-part pair with a common out-neighbor.
///
/// `first < second` in part-major order; `witnesses` holds every common
/// out-neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingPair {
    pub first: Vertex,
    pub second: Vertex,
    pub witnesses: VertexSet,
}

/// All dominating pairs, `X`-part pairs first, each part ordered
/// lexicographically by index.
pub fn dominating_pairs(d: &BipartiteDigraph) -> Vec<DominatingPair> {
    let a = d.half_order();
    let mut pairs = Vec::new();
    for part in [Part::X, Part::Y] {
        for i in 0..a {
            for j in i + 1..a {
                let u = Vertex { part, index: i };
                let v = Vertex { part, index: j };
                let common = d.out_neighbors(u) & d.out_neighbors(v);
                if common != 0 {
                    let witnesses =
                        bits(common).map(|k| Vertex { part: part.opposite(), index: k }).collect();
                    pairs.push(DominatingPair { first: u, second: v, witnesses });
                }
            }
        }
    }
    pairs
}

/// First dominating pair (in [`dominating_pairs`] order) whose larger
/// total degree is below `threshold`, if any.
fn pair_below_max_threshold(d: &BipartiteDigraph, threshold: i64) -> Option<DominatingPair> {
    dominating_pairs(d).into_iter().find(|p| {
        let m = d.degree(p.first).total().max(d.degree(p.second).total());
        (m as i64) < threshold
    })
}

/// Whether every dominating pair has a member of total degree at least
/// `2a - 2 + k`. Vacuously true without dominating pairs.
pub fn satisfies_bk(d: &BipartiteDigraph, k: i64) -> bool {
    let bound = 2 * d.half_order() as i64 - 2 + k;
    pair_below_max_threshold(d, bound).is_none()
}

/// Witness pair for a `satisfies_bk` failure: the first dominating pair
/// whose larger total degree is below `2a - 2 + k`.
pub fn bk_violating_pair(d: &BipartiteDigraph, k: i64) -> Option<DominatingPair> {
    pair_below_max_threshold(d, 2 * d.half_order() as i64 - 2 + k)
}

/// Largest `k` for which [`satisfies_bk`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxBk {
    /// No dominating pairs: every `k` holds vacuously.
    Vacuous,
    /// Maximal satisfied level; can be negative.
    Level(i64),
}

impl Serialize for MaxBk {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MaxBk::Vacuous => serializer.serialize_str("vacuous"),
            MaxBk::Level(k) => serializer.serialize_i64(*k),
        }
    }
}

/// Largest `k` such that the digraph satisfies the level-`k` dominating
/// pair degree condition.
pub fn max_bk(d: &BipartiteDigraph) -> MaxBk {
    let floor = dominating_pairs(d)
        .iter()
        .map(|p| d.degree(p.first).total().max(d.degree(p.second).total()) as i64)
        .min();
    match floor {
        None => MaxBk::Vacuous,
        Some(m) => MaxBk::Level(m - (2 * d.half_order() as i64 - 2)),
    }
}

/// Whether every dominating pair has one member of total degree at least
/// `2a - 1` and the other at least `a + 1`.
pub fn satisfies_wang(d: &BipartiteDigraph) -> bool {
    wang_violating_pair(d).is_none()
}

/// First dominating pair violating the `satisfies_wang` bound, if any.
pub fn wang_violating_pair(d: &BipartiteDigraph) -> Option<DominatingPair> {
    let a = d.half_order();
    let high = 2 * a - 1;
    let low = a + 1;
    dominating_pairs(d).into_iter().find(|p| {
        let du = d.degree(p.first).total();
        let dv = d.degree(p.second).total();
        !((du >= high && dv >= low) || (dv >= high && du >= low))
    })
}

/// Whether every dominating pair has total degrees summing to at least
/// `4a - 3`.
pub fn satisfies_sum_condition(d: &BipartiteDigraph) -> bool {
    sum_violating_pair(d).is_none()
}

/// First dominating pair violating the degree-sum bound, if any.
pub fn sum_violating_pair(d: &BipartiteDigraph) -> Option<DominatingPair> {
    let bound = 4 * d.half_order() - 3;
    dominating_pairs(d)
        .into_iter()
        .find(|p| d.degree(p.first).total() + d.degree(p.second).total() < bound)
}

/// Degree row of the analysis report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeEntry {
    pub vertex: Vertex,
    pub out: usize,
    pub in_: usize,
}

impl Serialize for DegreeEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DegreeEntry", 4)?;
        s.serialize_field("v", &self.vertex.to_string())?;
        s.serialize_field("out", &self.out)?;
        s.serialize_field("in", &self.in_)?;
        s.serialize_field("total", &(self.out + self.in_))?;
        s.end()
    }
}

/// Summary of the structural and degree-condition checks.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub order: usize,
    pub strong: bool,
    pub underlying_2connected: bool,
    /// Cut vertex names, sorted part-major.
    pub cut_vertices: Vec<String>,
    /// Number of dominating pairs.
    pub dominating_pairs: usize,
    pub max_bk: MaxBk,
    pub wang: bool,
    pub sum_condition: bool,
    /// Per-vertex degrees in part-major order.
    pub degrees: Vec<DegreeEntry>,
}

/// Runs every check in this module over `d`.
pub fn analyze(d: &BipartiteDigraph) -> ConditionReport {
    ConditionReport {
        order: d.order(),
        strong: is_strong(d),
        underlying_2connected: is_underlying_2connected(d),
        cut_vertices: cut_vertices(d).iter().map(Vertex::to_string).collect(),
        dominating_pairs: dominating_pairs(d).len(),
        max_bk: max_bk(d),
        wang: satisfies_wang(d),
        sum_condition: satisfies_sum_condition(d),
        degrees: d
            .vertices()
            .map(|v| {
                let deg = d.degree(v);
                DegreeEntry { vertex: v, out: deg.out, in_: deg.in_ }
            })
            .collect(),
    }
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

    #[test]
    fn exemplar_10_structural_facts() {
        let d = parse(EXEMPLAR_10);
        assert_eq!(d.arc_count(), 28);
        assert!(is_strong(&d));
        assert!(!is_underlying_2connected(&d));
        assert_eq!(cut_vertices(&d), vec![Vertex::y(0), Vertex::y(1)]);
        let pairs = dominating_pairs(&d);
        assert_eq!(pairs.len(), 16);
        let x_pairs = pairs.iter().filter(|p| p.first.part == Part::X).count();
        assert_eq!((x_pairs, pairs.len() - x_pairs), (9, 7));
        // {x0, x4} is the one non-dominating X pair.
        assert!(!pairs
            .iter()
            .any(|p| (p.first, p.second) == (Vertex::x(0), Vertex::x(4))));
        assert_eq!(max_bk(&d), MaxBk::Level(0));
        assert!(satisfies_bk(&d, 0));
        assert!(!satisfies_bk(&d, 1));
        assert!(!satisfies_wang(&d));
        assert!(!satisfies_sum_condition(&d));
    }

    #[test]
    fn exemplar_10_degrees() {
        let d = parse(EXEMPLAR_10);
        let totals: Vec<usize> = d.vertices().map(|v| d.degree(v).total()).collect();
        assert_eq!(totals, vec![2, 8, 8, 8, 2, 8, 8, 4, 4, 4]);
    }

    #[test]
    fn exemplar_10_separation() {
        let s = separation(&parse(EXEMPLAR_10)).unwrap();
        assert_eq!(s.cut, Vertex::y(0));
        let a: Vec<String> = s.a_side.iter().map(|v| v.to_string()).collect();
        assert_eq!(a, ["x0"]);
        assert_eq!(s.b_side.len(), 8);
        assert!(!s.b_side.contains(Vertex::y(0)));
    }

    #[test]
    fn exemplar_8_structural_facts() {
        let d = parse(EXEMPLAR_8);
        assert_eq!(d.arc_count(), 18);
        assert!(is_strong(&d));
        assert!(!is_underlying_2connected(&d));
        assert_eq!(cut_vertices(&d), vec![Vertex::x(0), Vertex::y(1), Vertex::y(3)]);
        assert_eq!(max_bk(&d), MaxBk::Level(0));
        let totals: Vec<usize> = d.vertices().map(|v| d.degree(v).total()).collect();
        assert_eq!(totals, vec![4, 6, 6, 2, 2, 6, 4, 6]);
        let s = separation(&d).unwrap();
        assert_eq!(s.cut, Vertex::x(0));
        let b: Vec<String> = s.b_side.iter().map(|v| v.to_string()).collect();
        assert_eq!(b, ["y0"]);
    }

    #[test]
    fn empty_digraph_is_vacuous() {
        let d = BipartiteDigraph::new_empty(2).unwrap();
        assert!(!is_strong(&d));
        assert_eq!(strongly_connected_components(&d).len(), 4);
        assert!(dominating_pairs(&d).is_empty());
        assert_eq!(max_bk(&d), MaxBk::Vacuous);
        assert!(satisfies_bk(&d, 100));
        assert!(satisfies_wang(&d));
        assert!(satisfies_sum_condition(&d));
        assert!(separation(&d).is_none());
    }

    #[test]
    fn complete_digraph_conditions() {
        let d = complete_both(3);
        assert!(is_strong(&d));
        assert_eq!(strongly_connected_components(&d).len(), 1);
        assert!(is_underlying_2connected(&d));
        assert_eq!(dominating_pairs(&d).len(), 6);
        assert_eq!(max_bk(&d), MaxBk::Level(2));
        assert!(satisfies_wang(&d));
        assert!(satisfies_sum_condition(&d));
        assert!(separation(&d).is_none());
    }

    #[test]
    fn single_pair_digraph() {
        // x0 <-> y0 only: strong at a = 1, no dominating pairs.
        let mut b = DigraphBuilder::new(1).unwrap();
        b.add_arc(Vertex::x(0), Vertex::y(0)).unwrap();
        b.add_arc(Vertex::y(0), Vertex::x(0)).unwrap();
        let d = b.freeze();
        assert!(is_strong(&d));
        // Order 2 is below the 2-connectedness threshold.
        assert!(!is_underlying_2connected(&d));
        assert_eq!(max_bk(&d), MaxBk::Vacuous);
    }

    #[test]
    fn separation_requires_connected_underlying_graph() {
        // y1 is isolated, so the underlying graph is disconnected.
        let mut b = DigraphBuilder::new(2).unwrap();
        b.add_arc(Vertex::x(0), Vertex::y(0)).unwrap();
        b.add_arc(Vertex::y(0), Vertex::x(0)).unwrap();
        b.add_arc(Vertex::x(1), Vertex::y(0)).unwrap();
        b.add_arc(Vertex::y(0), Vertex::x(1)).unwrap();
        let d = b.freeze();
        assert!(!underlying_graph(&d).is_connected());
        assert_eq!(cut_vertices(&d), vec![Vertex::y(0)]);
        assert!(separation(&d).is_none());
    }

    #[test]
    fn dominating_pair_witnesses_are_exact() {
        let d = parse(EXEMPLAR_8);
        let pairs = dominating_pairs(&d);
        let p = pairs
            .iter()
            .find(|p| (p.first, p.second) == (Vertex::y(1), Vertex::y(2)))
            .unwrap();
        let w: Vec<String> = p.witnesses.iter().map(|v| v.to_string()).collect();
        assert_eq!(w, ["x1", "x2"]);
    }

    #[test]
    fn report_serialization_shape() {
        let d = parse(EXEMPLAR_8);
        let json = serde_json::to_value(analyze(&d)).unwrap();
        assert_eq!(json["order"], 8);
        assert_eq!(json["strong"], true);
        assert_eq!(json["underlying_2connected"], false);
        assert_eq!(json["cut_vertices"], serde_json::json!(["x0", "y1", "y3"]));
        assert_eq!(json["dominating_pairs"], 9);
        assert_eq!(json["max_bk"], 0);
        assert_eq!(json["degrees"][0], serde_json::json!({"v": "x0", "out": 2, "in": 2, "total": 4}));
        let vacuous = serde_json::to_value(analyze(&BipartiteDigraph::new_empty(1).unwrap())).unwrap();
        assert_eq!(vacuous["max_bk"], "vacuous");
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
        fn strongness_routes_agree(d in arb_digraph(6)) {
            prop_assert_eq!(is_strong(&d), strongly_connected_components(&d).len() == 1);
        }

        #[test]
        fn scc_partition_covers_all_vertices(d in arb_digraph(6)) {
            let sccs = strongly_connected_components(&d);
            let mut seen: Vec<Vertex> = sccs.into_iter().flatten().collect();
            seen.sort();
            let all: Vec<Vertex> = d.vertices().collect();
            prop_assert_eq!(seen, all);
        }

        #[test]
        fn articulation_matches_removal_oracle(d in arb_digraph(5)) {
            let g = underlying_graph(&d);
            let fast = g.articulation_points();
            let mut slow = Vec::new();
            let base = g.components().len();
            for v in d.vertices() {
                let a = d.half_order();
                let removed = 1u64 << id_of(v, a);
                if g.components_excluding(removed).len() > base {
                    slow.push(v);
                }
            }
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn bk_is_monotone_in_k(d in arb_digraph(5), k in -3i64..6) {
            if satisfies_bk(&d, k) {
                prop_assert!(satisfies_bk(&d, k - 1));
            }
        }

        #[test]
        fn max_bk_is_the_exact_threshold(d in arb_digraph(5)) {
            match max_bk(&d) {
                MaxBk::Vacuous => prop_assert!(dominating_pairs(&d).is_empty()),
                MaxBk::Level(m) => {
                    prop_assert!(satisfies_bk(&d, m));
                    prop_assert!(!satisfies_bk(&d, m + 1));
                }
            }
        }

        #[test]
        fn wang_and_sum_each_imply_level_one(d in arb_digraph(5)) {
            if satisfies_wang(&d) {
                prop_assert!(satisfies_bk(&d, 1));
            }
            if satisfies_sum_condition(&d) {
                prop_assert!(satisfies_bk(&d, 1));
            }
        }

        #[test]
        fn separation_sides_partition_the_digraph(d in arb_digraph(5)) {
            if let Some(s) = separation(&d) {
                prop_assert!(s.a_side.is_disjoint(&s.b_side));
                prop_assert!(!s.a_side.contains(s.cut));
                prop_assert!(!s.b_side.contains(s.cut));
                prop_assert_eq!(s.a_side.len() + s.b_side.len() + 1, d.order());
                // No underlying edges may join the two sides.
                let (fwd, bwd) = d.arcs_between(&s.a_side, &s.b_side).unwrap();
                prop_assert_eq!((fwd, bwd), (0, 0));
            }
        }
    }
}
