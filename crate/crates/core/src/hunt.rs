//! Instance generators and counterexample-search campaigns.
//!
//! All randomness comes from ChaCha12: the campaign seed expands through
//! `seed_from_u64`, and instance `i` draws from stream `i` of that
//! generator, so any instance can be regenerated in isolation and
//! workers need no coordination.
//!
//! The structured generator builds instances shaped like a separation
//! `A | u | B`: a cut vertex `u`, a small side `B` (one or two
//! vertices), and no arcs between `A` and `B`. Arcs are sampled at the
//! requested density, then a bounded repair loop adds admissible arcs
//! until the instance is strong and satisfies the level-0
//! dominating-pair degree condition; failures are discarded and counted.
//! Every emitted instance is checked to be strong, to satisfy the
//! level-0 condition, and to have a non-2-connected underlying graph.
//!
//! [`hunt_counterexamples`] maps the verifier over a generated stream in
//! parallel and folds the outcomes in instance order, so the report is
//! byte-identical for any worker count.

use crate::analysis::{
    bk_violating_pair, is_strong, is_underlying_2connected, satisfies_bk,
};
use crate::canon::canonical_form;
use crate::digraph::{BipartiteDigraph, DigraphBuilder, Part, Vertex, VertexSet, MAX_HALF_ORDER};
use crate::error::Error;
use crate::verify::{verify, TheoremId, TheoremVerdict};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use std::str::FromStr;

/// Largest half-order for exhaustive enumeration (`4^(a^2)` instances).
pub const EXHAUSTIVE_MAX_HALF_ORDER: usize = 3;

/// Repair additions allowed per structured instance, as a multiple of
/// the half-order.
const REPAIR_BUDGET_FACTOR: usize = 4;

/// Rejection-histogram key for structured instances that could not be
/// repaired.
pub const DISCARD_KEY: &str = "generator_discard";

/// Instance generation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenMode {
    /// Every possible arc present independently at `arc_density`.
    Random,
    /// Separation-shaped instances with repair (see module docs).
    Structured,
    /// All `4^(a^2)` labeled instances exactly once; `count` is ignored.
    Exhaustive,
}

impl FromStr for GenMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<GenMode, String> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(GenMode::Random),
            "structured" => Ok(GenMode::Structured),
            "exhaustive" => Ok(GenMode::Exhaustive),
            _ => Err(format!("unknown generation mode {s:?}")),
        }
    }
}

/// Parameters of a generation campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    #[serde(rename = "a")]
    pub half_order: usize,
    pub mode: GenMode,
    /// Per-arc presence probability (random and structured modes).
    pub arc_density: f64,
    pub seed: u64,
    /// Instances to generate; in exhaustive mode the full enumeration
    /// runs instead.
    pub count: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: &str| Err(Error::InvalidGenSpec { reason: reason.to_string() });
        if self.half_order == 0 {
            return fail("half-order must be at least 1");
        }
        if self.half_order > MAX_HALF_ORDER {
            return fail("half-order exceeds the supported maximum");
        }
        if !self.arc_density.is_finite() || !(0.0..=1.0).contains(&self.arc_density) {
            return fail("arc density must lie in [0, 1]");
        }
        if self.count == 0 {
            return fail("count must be at least 1");
        }
        if self.mode == GenMode::Structured && self.half_order < 3 {
            return fail("structured mode requires half-order at least 3");
        }
        if self.mode == GenMode::Exhaustive && self.half_order > EXHAUSTIVE_MAX_HALF_ORDER {
            return Err(Error::EnumerationTooLarge { half_order: self.half_order });
        }
        Ok(())
    }
}

/// Independent generator for instance `index`: ChaCha12 seeded from the
/// campaign seed, positioned on stream `index`.
fn substream(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The random-mode instance for `(seed, index)`: all `2a^2` arcs drawn
/// independently in a fixed order (row-major cells, `x->y` before
/// `y->x`).
pub fn random_instance(
    half_order: usize,
    arc_density: f64,
    seed: u64,
    index: u64,
) -> Result<BipartiteDigraph> {
    let mut rng = substream(seed, index);
    let mut b = DigraphBuilder::new(half_order)?;
    for i in 0..half_order {
        for j in 0..half_order {
            if rng.random_bool(arc_density) {
                b.add_arc(Vertex::x(i), Vertex::y(j))?;
            }
            if rng.random_bool(arc_density) {
                b.add_arc(Vertex::y(j), Vertex::x(i))?;
            }
        }
    }
    Ok(b.freeze())
}

/// Which block of the separation a vertex belongs to.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    A,
    B,
    Cut,
}

struct Layout {
    cut: Vertex,
    b_side: VertexSet,
}

impl Layout {
    fn block(&self, v: Vertex) -> Block {
        if v == self.cut {
            Block::Cut
        } else if self.b_side.contains(v) {
            Block::B
        } else {
            Block::A
        }
    }

    /// Arcs may stay within `A + cut` or within `B + cut`, never`A`-`B`.
    fn admissible(&self, from: Vertex, to: Vertex) -> bool {
        !matches!(
            (self.block(from), self.block(to)),
            (Block::A, Block::B) | (Block::B, Block::A)
        )
    }
}

/// Samples the separation layout: the cut vertex's part is a coin flip,
/// `B` has one opposite-part vertex, plus (on a second coin flip) one
/// same-part vertex.
fn sample_layout(a: usize, rng: &mut ChaCha12Rng) -> Layout {
    let cut_part = if rng.random_bool(0.5) { Part::X } else { Part::Y };
    let cut = Vertex { part: cut_part, index: rng.random_range(0..a) };
    let two_sided = rng.random_bool(0.5);
    let mut b_side = VertexSet::new();
    b_side.insert(Vertex { part: cut_part.opposite(), index: rng.random_range(0..a) });
    if two_sided {
        let mut idx = rng.random_range(0..a - 1);
        if idx >= cut.index {
            idx += 1;
        }
        b_side.insert(Vertex { part: cut_part, index: idx });
    }
    Layout { cut, b_side }
}

/// All arcs in canonical order: row-major cells, `x->y` before `y->x`.
fn arc_candidates(a: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..a).flat_map(move |i| {
        (0..a).flat_map(move |j| {
            [(Vertex::x(i), Vertex::y(j)), (Vertex::y(j), Vertex::x(i))]
        })
    })
}

/// Whether `to` is reachable from `from` along arcs.
fn reaches(d: &BipartiteDigraph, from: Vertex, to: Vertex) -> bool {
    let mut reached = VertexSet::new();
    reached.insert(from);
    let mut frontier = vec![from];
    while let Some(v) = frontier.pop() {
        for idx in crate::digraph::bits(d.out_neighbors(v)) {
            let w = Vertex { part: v.part.opposite(), index: idx };
            if w == to {
                return true;
            }
            if !reached.contains(w) {
                reached.insert(w);
                frontier.push(w);
            }
        }
    }
    from == to
}

/// The structured-mode instance for `(seed, index)`, or `None` when the
/// repair budget ran out before the instance met its contract.
///
/// Emitted instances always satisfy: strong, level-0 dominating-pair
/// degree condition, underlying graph not 2-connected.
pub fn structured_instance(
    half_order: usize,
    arc_density: f64,
    seed: u64,
    index: u64,
) -> Result<Option<BipartiteDigraph>> {
    let a = half_order;
    let mut rng = substream(seed, index);
    let layout = sample_layout(a, &mut rng);

    let mut b = DigraphBuilder::new(a)?;
    for (from, to) in arc_candidates(a) {
        if layout.admissible(from, to) && rng.random_bool(arc_density) {
            b.add_arc(from, to)?;
        }
    }
    let mut d = b.freeze();

    let mut additions = 0;
    let budget = REPAIR_BUDGET_FACTOR * a;
    loop {
        if !is_strong(&d) {
            let missing = arc_candidates(a).find(|&(from, to)| {
                layout.admissible(from, to) && !d.has_arc(from, to) && !reaches(&d, from, to)
            });
            match missing {
                Some((from, to)) if additions < budget => {
                    d = d.with_arc(from, to)?;
                    additions += 1;
                    continue;
                }
                _ => return Ok(None),
            }
        }
        match bk_violating_pair(&d, 0) {
            Some(pair) => {
                // Prefer raising the lowest-degree member.
                let (first, second) =
                    if d.degree(pair.first).total() <= d.degree(pair.second).total() {
                        (pair.first, pair.second)
                    } else {
                        (pair.second, pair.first)
                    };
                let candidate = [first, second].into_iter().find_map(|v| {
                    (0..a)
                        .flat_map(|idx| {
                            let w = Vertex { part: v.part.opposite(), index: idx };
                            [(v, w), (w, v)]
                        })
                        .find(|&(from, to)| {
                            layout.admissible(from, to) && !d.has_arc(from, to)
                        })
                });
                match candidate {
                    Some((from, to)) if additions < budget => {
                        d = d.with_arc(from, to)?;
                        additions += 1;
                    }
                    _ => return Ok(None),
                }
            }
            None => break,
        }
    }

    let sound = is_strong(&d) && satisfies_bk(&d, 0) && !is_underlying_2connected(&d);
    Ok(if sound { Some(d) } else { None })
}

/// Labeled instance `index` of the exhaustive enumeration: base-4
/// digits over row-major cells.
fn exhaustive_instance(half_order: usize, index: u64) -> Result<BipartiteDigraph> {
    let a = half_order;
    let mut b = DigraphBuilder::new(a)?;
    let mut rest = index;
    for i in 0..a {
        for j in 0..a {
            let code = (rest & 3) as u8;
            rest >>= 2;
            if code & 1 != 0 {
                b.add_arc(Vertex::x(i), Vertex::y(j))?;
            }
            if code & 2 != 0 {
                b.add_arc(Vertex::y(j), Vertex::x(i))?;
            }
        }
    }
    Ok(b.freeze())
}

/// Random-mode stream of `spec.count` instances.
pub fn gen_random(spec: &GenSpec) -> Result<impl Iterator<Item = BipartiteDigraph> + '_> {
    spec.validate()?;
    if spec.mode != GenMode::Random {
        return Err(Error::InvalidGenSpec { reason: "gen_random requires random mode".into() });
    }
    Ok((0..spec.count).map(move |i| {
        random_instance(spec.half_order, spec.arc_density, spec.seed, i)
            .expect("spec was validated")
    }))
}

/// Structured-mode stream; discarded attempts are skipped, so the
/// stream yields at most `spec.count` instances.
pub fn gen_structured(spec: &GenSpec) -> Result<impl Iterator<Item = BipartiteDigraph> + '_> {
    spec.validate()?;
    if spec.mode != GenMode::Structured {
        return Err(Error::InvalidGenSpec {
            reason: "gen_structured requires structured mode".into(),
        });
    }
    Ok((0..spec.count).filter_map(move |i| {
        structured_instance(spec.half_order, spec.arc_density, spec.seed, i)
            .expect("spec was validated")
    }))
}

/// Every labeled instance at the given half-order, exactly once.
/// Combine with standard iterator adapters to filter.
pub fn enumerate_all(half_order: usize) -> Result<impl Iterator<Item = BipartiteDigraph>> {
    if half_order == 0 {
        return Err(Error::InvalidHalfOrder);
    }
    if half_order > EXHAUSTIVE_MAX_HALF_ORDER {
        return Err(Error::EnumerationTooLarge { half_order });
    }
    let total = 1u64 << (2 * half_order * half_order);
    Ok((0..total).map(move |i| exhaustive_instance(half_order, i).expect("bounds checked")))
}

/// Representatives of the isomorphism classes at the given half-order,
/// deduplicated by canonical form, in first-seen order.
pub fn enumerate_distinct(half_order: usize) -> Result<Vec<BipartiteDigraph>> {
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for d in enumerate_all(half_order)? {
        if seen.insert(canonical_form(&d).bytes().to_vec()) {
            reps.push(d);
        }
    }
    Ok(reps)
}

/// One counterexample found by a campaign, serialized so it can be
/// re-verified standalone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRecord {
    /// Core text format.
    pub digraph: String,
    pub verdict: TheoremVerdict,
}

/// Aggregated campaign result.
///
/// `tested` always equals `hypotheses_met` plus the sum of the
/// rejection histogram; discarded structured instances count under
/// [`DISCARD_KEY`]. `duration_ms` is `None` from the library (reports
/// must be byte-identical across runs); callers that want wall-clock
/// time fill it in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HuntReport {
    pub theorem: TheoremId,
    pub spec: GenSpec,
    pub tested: u64,
    pub hypotheses_met: u64,
    /// Instance counts keyed by the family of the first failed
    /// hypothesis (the name up to any `(`).
    pub rejections: BTreeMap<String, u64>,
    pub counterexamples: Vec<CounterexampleRecord>,
    pub distinct_canonical_forms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

enum Outcome {
    Discarded,
    Verified { canon: Vec<u8>, rejection: Option<String>, record: Option<CounterexampleRecord> },
}

fn family(failure: &str) -> String {
    match failure.find('(') {
        Some(pos) => failure[..pos].to_string(),
        None => failure.to_string(),
    }
}

fn outcome(theorem: TheoremId, instance: Option<BipartiteDigraph>) -> Outcome {
    let Some(d) = instance else {
        return Outcome::Discarded;
    };
    let verdict = verify(theorem, &d);
    let canon = canonical_form(&d).bytes().to_vec();
    let rejection = verdict.failed_hypotheses.first().map(|f| family(f));
    let record = verdict
        .counterexample
        .then(|| CounterexampleRecord { digraph: d.serialize(), verdict: verdict.clone() });
    Outcome::Verified { canon, rejection, record }
}

/// Runs a campaign: generates instances per `spec`, verifies `theorem`
/// on each, and aggregates in instance order.
///
/// The report is deterministic for a fixed spec, independent of
/// `workers` (`None` uses the process-wide thread pool).
pub fn hunt_counterexamples(
    theorem: TheoremId,
    spec: &GenSpec,
    workers: Option<usize>,
) -> Result<HuntReport> {
    spec.validate()?;
    let total = match spec.mode {
        GenMode::Exhaustive => 1u64 << (2 * spec.half_order * spec.half_order),
        _ => spec.count,
    };

    let run = || -> Result<Vec<Outcome>> {
        (0..total)
            .into_par_iter()
            .map(|i| {
                let instance = match spec.mode {
                    GenMode::Random => {
                        Some(random_instance(spec.half_order, spec.arc_density, spec.seed, i)?)
                    }
                    GenMode::Structured => {
                        structured_instance(spec.half_order, spec.arc_density, spec.seed, i)?
                    }
                    GenMode::Exhaustive => Some(exhaustive_instance(spec.half_order, i)?),
                };
                Ok(outcome(theorem, instance))
            })
            .collect()
    };
    let outcomes = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidGenSpec { reason: format!("worker pool: {e}") })?
            .install(run),
        None => run(),
    }?;

    let mut report = HuntReport {
        theorem,
        spec: spec.clone(),
        tested: total,
        hypotheses_met: 0,
        rejections: BTreeMap::new(),
        counterexamples: Vec::new(),
        distinct_canonical_forms: 0,
        duration_ms: None,
    };
    let mut forms: HashSet<Vec<u8>> = HashSet::new();
    for o in outcomes {
        match o {
            Outcome::Discarded => {
                *report.rejections.entry(DISCARD_KEY.to_string()).or_insert(0) += 1;
            }
            Outcome::Verified { canon, rejection, record } => {
                forms.insert(canon);
                match rejection {
                    Some(fam) => *report.rejections.entry(fam).or_insert(0) += 1,
                    None => report.hypotheses_met += 1,
                }
                if let Some(r) = record {
                    report.counterexamples.push(r);
                }
            }
        }
    }
    report.distinct_canonical_forms = forms.len() as u64;
    debug_assert_eq!(
        report.tested,
        report.hypotheses_met + report.rejections.values().sum::<u64>()
    );
    Ok(report)
}
