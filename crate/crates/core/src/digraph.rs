//! Balanced bipartite digraph representation and text format.
//!
//! Vertices are named `x0..x(a-1)` and `y0..y(a-1)` where `a` is the
//! half-order. Arcs always cross parts. Adjacency is stored as per-vertex
//! `u32` bitsets, which caps the half-order at [`MAX_HALF_ORDER`].
//!
//! The text format is line oriented:
//!
//! ```text
//! bbd 2
//! 30
//! 01
//! ```
//!
//! Row `i`, column `j` holds the arc code between `x_i` and `y_j`:
//! `0` no arc, `1` only `x_i -> y_j`, `2` only `y_j -> x_i`, `3` both.
//! Lines starting with `#` are comments. A trailing newline is required,
//! and `parse` followed by `serialize` reproduces the non-comment bytes
//! exactly.

use crate::error::Error;
use crate::Result;
use std::fmt;
use std::str::FromStr;

/// Largest supported half-order; one part must fit in a `u32` bitset.
pub const MAX_HALF_ORDER: usize = 32;

/// Side of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    X,
    Y,
}

impl Part {
    /// The other side.
    pub fn opposite(self) -> Part {
        match self {
            Part::X => Part::Y,
            Part::Y => Part::X,
        }
    }

    /// Letter used in vertex names.
    pub fn letter(self) -> char {
        match self {
            Part::X => 'x',
            Part::Y => 'y',
        }
    }
}

/// A vertex, identified by part and index within the part.
///
/// The derived order is part-major: `x0 < x1 < .. < y0 < y1 < ..`. Cycle
/// witnesses use the interleaved order given by [`Vertex::rank`] instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub part: Part,
    pub index: usize,
}

impl Vertex {
    /// The vertex `x<index>`.
    pub fn x(index: usize) -> Vertex {
        Vertex { part: Part::X, index }
    }

    /// The vertex `y<index>`.
    pub fn y(index: usize) -> Vertex {
        Vertex { part: Part::Y, index }
    }

    /// Position in the interleaved order `x0 < y0 < x1 < y1 < ..`.
    pub fn rank(self) -> usize {
        2 * self.index + usize::from(self.part == Part::Y)
    }

    /// Inverse of [`Vertex::rank`].
    pub fn from_rank(rank: usize) -> Vertex {
        Vertex {
            part: if rank % 2 == 0 { Part::X } else { Part::Y },
            index: rank / 2,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.part.letter(), self.index)
    }
}

impl FromStr for Vertex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Vertex, String> {
        let err = || format!("expected a vertex name like x0 or y3, got {s:?}");
        let mut chars = s.chars();
        let part = match chars.next() {
            Some('x') => Part::X,
            Some('y') => Part::Y,
            _ => return Err(err()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || rest.chars().any(|c| !c.is_ascii_digit()) {
            return Err(err());
        }
        let index: usize = rest.parse().map_err(|_| err())?;
        Ok(Vertex { part, index })
    }
}

/// Arc configuration between one `x` vertex and one `y` vertex.
///
/// Bit 0 is the `x -> y` arc, bit 1 the `y -> x` arc; the numeric value is
/// the digit used in the text format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArcCode(u8);

impl ArcCode {
    pub const NONE: ArcCode = ArcCode(0);
    pub const X_TO_Y: ArcCode = ArcCode(1);
    pub const Y_TO_X: ArcCode = ArcCode(2);
    pub const BOTH: ArcCode = ArcCode(3);

    /// Code from a matrix digit, `None` for characters outside `0..=3`.
    pub fn from_digit(c: char) -> Option<ArcCode> {
        match c {
            '0' => Some(ArcCode::NONE),
            '1' => Some(ArcCode::X_TO_Y),
            '2' => Some(ArcCode::Y_TO_X),
            '3' => Some(ArcCode::BOTH),
            _ => None,
        }
    }

    /// Digit used in the text format.
    pub fn digit(self) -> char {
        (b'0' + self.0) as char
    }

    /// Raw two-bit value.
    pub fn bits(self) -> u8 {
        self.0
    }

    /// Whether the `x -> y` arc is present.
    pub fn x_to_y(self) -> bool {
        self.0 & 1 != 0
    }

    /// Whether the `y -> x` arc is present.
    pub fn y_to_x(self) -> bool {
        self.0 & 2 != 0
    }

    /// Number of arcs encoded (0, 1, or 2).
    pub fn arc_count(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Code with both directions exchanged; used when the parts swap roles.
    pub fn swapped(self) -> ArcCode {
        match self.0 {
            1 => ArcCode(2),
            2 => ArcCode(1),
            b => ArcCode(b),
        }
    }
}

/// Set of vertices, stored as one bitset per part.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    x_bits: u32,
    y_bits: u32,
}

impl VertexSet {
    /// Empty set.
    pub fn new() -> VertexSet {
        VertexSet::default()
    }

    /// Bitset of the indices present in `part`.
    pub fn part_bits(&self, part: Part) -> u32 {
        match part {
            Part::X => self.x_bits,
            Part::Y => self.y_bits,
        }
    }

    pub fn insert(&mut self, v: Vertex) {
        match v.part {
            Part::X => self.x_bits |= 1 << v.index,
            Part::Y => self.y_bits |= 1 << v.index,
        }
    }

    pub fn remove(&mut self, v: Vertex) {
        match v.part {
            Part::X => self.x_bits &= !(1 << v.index),
            Part::Y => self.y_bits &= !(1 << v.index),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.part_bits(v.part) >> v.index & 1 != 0
    }

    pub fn len(&self) -> usize {
        (self.x_bits.count_ones() + self.y_bits.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.x_bits == 0 && self.y_bits == 0
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.x_bits & other.x_bits == 0 && self.y_bits & other.y_bits == 0
    }

    /// Members in part-major order (`x` ascending, then `y` ascending).
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.x_bits).map(Vertex::x).chain(bits(self.y_bits).map(Vertex::y))
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> VertexSet {
        let mut set = VertexSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// Iterator over the set bit positions of a `u32`.
pub(crate) fn bits(mut word: u32) -> impl Iterator<Item = usize> {
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

/// Out- and in-degree of a vertex, possibly restricted to a set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Degree {
    pub out: usize,
    pub in_: usize,
}

impl Degree {
    /// Total degree `out + in`.
    pub fn total(self) -> usize {
        self.out + self.in_
    }
}

/// Mutable arc accumulator; [`DigraphBuilder::freeze`] produces the
/// immutable digraph with both adjacency directions materialized.
#[derive(Debug, Clone)]
pub struct DigraphBuilder {
    half_order: usize,
    // Bit j of x_out[i]: arc x_i -> y_j. Bit j of x_in[i]: arc y_j -> x_i.
    x_out: Vec<u32>,
    x_in: Vec<u32>,
}

impl DigraphBuilder {
    /// Empty digraph on `a` vertices per part, `1 <= a <= MAX_HALF_ORDER`.
    pub fn new(half_order: usize) -> Result<DigraphBuilder> {
        if half_order == 0 {
            return Err(Error::InvalidHalfOrder);
        }
        if half_order > MAX_HALF_ORDER {
            return Err(Error::HalfOrderTooLarge { requested: half_order });
        }
        Ok(DigraphBuilder {
            half_order,
            x_out: vec![0; half_order],
            x_in: vec![0; half_order],
        })
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.index >= self.half_order {
            return Err(Error::VertexOutOfRange { vertex: v, half_order: self.half_order });
        }
        Ok(())
    }

    /// Adds the arc `from -> to`. Adding an arc twice is a no-op.
    pub fn add_arc(&mut self, from: Vertex, to: Vertex) -> Result<()> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        if from.part == to.part {
            return Err(Error::SamePartArc { from, to });
        }
        match from.part {
            Part::X => self.x_out[from.index] |= 1 << to.index,
            Part::Y => self.x_in[to.index] |= 1 << from.index,
        }
        Ok(())
    }

    /// Whether the arc `from -> to` is already present.
    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        if from.part == to.part {
            return false;
        }
        match from.part {
            Part::X => self.x_out[from.index] >> to.index & 1 != 0,
            Part::Y => self.x_in[to.index] >> from.index & 1 != 0,
        }
    }

    /// Number of arcs added so far.
    pub fn arc_count(&self) -> usize {
        self.x_out.iter().chain(&self.x_in).map(|w| w.count_ones() as usize).sum()
    }

    /// Finalizes into an immutable digraph.
    pub fn freeze(self) -> BipartiteDigraph {
        let a = self.half_order;
        let mut y_out = vec![0u32; a];
        let mut y_in = vec![0u32; a];
        for i in 0..a {
            for j in bits(self.x_in[i]) {
                y_out[j] |= 1 << i;
            }
            for j in bits(self.x_out[i]) {
                y_in[j] |= 1 << i;
            }
        }
        BipartiteDigraph { half_order: a, x_out: self.x_out, x_in: self.x_in, y_out, y_in }
    }
}

/// Immutable balanced bipartite digraph.
///
/// Stores adjacency bitsets in both directions for O(1) neighborhood
/// queries from either part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteDigraph {
    half_order: usize,
    x_out: Vec<u32>,
    x_in: Vec<u32>,
    y_out: Vec<u32>,
    y_in: Vec<u32>,
}

impl BipartiteDigraph {
    /// Digraph with no arcs on `a` vertices per part.
    pub fn new_empty(half_order: usize) -> Result<BipartiteDigraph> {
        Ok(DigraphBuilder::new(half_order)?.freeze())
    }

    /// Builder for incremental construction.
    pub fn builder(half_order: usize) -> Result<DigraphBuilder> {
        DigraphBuilder::new(half_order)
    }

    /// Vertices per part.
    pub fn half_order(&self) -> usize {
        self.half_order
    }

    /// Total number of vertices, `2 * half_order`.
    pub fn order(&self) -> usize {
        2 * self.half_order
    }

    /// All vertices in part-major order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let a = self.half_order;
        (0..a).map(Vertex::x).chain((0..a).map(Vertex::y))
    }

    /// Arc code between `x_i` and `y_j`.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    pub fn arc_code(&self, i: usize, j: usize) -> ArcCode {
        let xy = self.x_out[i] >> j & 1;
        let yx = self.x_in[i] >> j & 1;
        ArcCode((xy | yx << 1) as u8)
    }

    /// Whether the arc `from -> to` is present. Same-part queries return
    /// `false` (such arcs cannot exist).
    ///
    /// # Panics
    /// Panics if a vertex index is out of range.
    pub fn has_arc(&self, from: Vertex, to: Vertex) -> bool {
        if from.part == to.part {
            return false;
        }
        match from.part {
            Part::X => self.x_out[from.index] >> to.index & 1 != 0,
            Part::Y => self.y_out[from.index] >> to.index & 1 != 0,
        }
    }

    /// Total number of arcs.
    pub fn arc_count(&self) -> usize {
        self.x_out.iter().chain(&self.x_in).map(|w| w.count_ones() as usize).sum()
    }

    /// All arcs as `(from, to)` pairs, grouped by tail in part-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |v| {
            bits(self.out_neighbors(v))
                .map(move |j| (v, Vertex { part: v.part.opposite(), index: j }))
        })
    }

    /// Bitset of indices in the opposite part that `v` has arcs to.
    ///
    /// # Panics
    /// Panics if the vertex index is out of range.
    pub fn out_neighbors(&self, v: Vertex) -> u32 {
        match v.part {
            Part::X => self.x_out[v.index],
            Part::Y => self.y_out[v.index],
        }
    }

    /// Bitset of indices in the opposite part that have arcs to `v`.
    ///
    /// # Panics
    /// Panics if the vertex index is out of range.
    pub fn in_neighbors(&self, v: Vertex) -> u32 {
        match v.part {
            Part::X => self.x_in[v.index],
            Part::Y => self.y_in[v.index],
        }
    }

    /// Out-, in-, and (via [`Degree::total`]) total degree of `v`.
    pub fn degree(&self, v: Vertex) -> Degree {
        Degree {
            out: self.out_neighbors(v).count_ones() as usize,
            in_: self.in_neighbors(v).count_ones() as usize,
        }
    }

    /// Degree of `v` counting only arcs to and from members of `set`.
    pub fn degree_to_set(&self, v: Vertex, set: &VertexSet) -> Degree {
        let mask = set.part_bits(v.part.opposite());
        Degree {
            out: (self.out_neighbors(v) & mask).count_ones() as usize,
            in_: (self.in_neighbors(v) & mask).count_ones() as usize,
        }
    }

    /// Arc counts `(s_to_t, t_to_s)` between two disjoint vertex sets.
    pub fn arcs_between(&self, s: &VertexSet, t: &VertexSet) -> Result<(usize, usize)> {
        if !s.is_disjoint(t) {
            return Err(Error::OverlappingSets);
        }
        let mut s_to_t = 0;
        let mut t_to_s = 0;
        for v in s.iter() {
            let mask = t.part_bits(v.part.opposite());
            s_to_t += (self.out_neighbors(v) & mask).count_ones() as usize;
            t_to_s += (self.in_neighbors(v) & mask).count_ones() as usize;
        }
        Ok((s_to_t, t_to_s))
    }

    /// Copy of `self` with one extra arc.
    pub fn with_arc(&self, from: Vertex, to: Vertex) -> Result<BipartiteDigraph> {
        let mut b = DigraphBuilder {
            half_order: self.half_order,
            x_out: self.x_out.clone(),
            x_in: self.x_in.clone(),
        };
        b.add_arc(from, to)?;
        Ok(b.freeze())
    }

    /// Renders the text format; inverse of [`BipartiteDigraph::parse`].
    pub fn serialize(&self) -> String {
        let a = self.half_order;
        let mut out = format!("bbd {a}\n");
        for i in 0..a {
            for j in 0..a {
                out.push(self.arc_code(i, j).digit());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format.
    ///
    /// Comment lines start with `#` and may appear anywhere. Everything
    /// else must be exactly the header followed by `a` matrix rows, each
    /// terminated by a newline.
    pub fn parse(text: &str) -> Result<BipartiteDigraph> {
        fn fail(line: usize, reason: impl Into<String>) -> Error {
            Error::Parse { line, reason: reason.into() }
        }

        if !text.is_empty() && !text.ends_with('\n') {
            let last = text.lines().count();
            return Err(fail(last, "missing trailing newline"));
        }
        let mut content = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l))
            .filter(|(_, l)| !l.starts_with('#'));

        // Errors at end-of-input point one past the last line.
        let eof = text.lines().count() + 1;
        let (line, header) = content.next().ok_or_else(|| fail(eof, "missing header"))?;
        let a = match header.strip_prefix("bbd ") {
            Some(rest) if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) => {
                rest.parse::<usize>().map_err(|_| fail(line, "half-order out of range"))?
            }
            _ => return Err(fail(line, format!("expected header `bbd <a>`, got {header:?}"))),
        };
        if a == 0 {
            return Err(fail(line, "half-order must be at least 1"));
        }
        if a > MAX_HALF_ORDER {
            return Err(fail(
                line,
                format!("half-order {a} exceeds the supported maximum of {MAX_HALF_ORDER}"),
            ));
        }

        let mut builder = DigraphBuilder::new(a)?;
        for i in 0..a {
            let (line, row) = content.next().ok_or_else(|| fail(eof, "missing matrix row"))?;
            if row.chars().count() != a {
                return Err(fail(line, format!("expected {a} digits, got {:?}", row)));
            }
            for (j, c) in row.chars().enumerate() {
                let code = ArcCode::from_digit(c)
                    .ok_or_else(|| fail(line, format!("invalid arc code {c:?}")))?;
                if code.x_to_y() {
                    builder.add_arc(Vertex::x(i), Vertex::y(j))?;
                }
                if code.y_to_x() {
                    builder.add_arc(Vertex::y(j), Vertex::x(i))?;
                }
            }
        }
        if let Some((line, extra)) = content.next() {
            return Err(fail(line, format!("unexpected content after matrix: {extra:?}")));
        }
        Ok(builder.freeze())
    }
}

impl fmt::Display for BipartiteDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
