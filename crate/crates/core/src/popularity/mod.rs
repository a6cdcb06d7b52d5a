//! Edge labels, the marked graph, and popularity checks.
//!
//! A matching `M` is popular iff the marked graph contains none of three
//! alternating structures: a cycle with a `+2` edge, a path from an
//! `M`-unmatched vertex with a `+2` edge, or a path with two `+2` edges.
//! [`find_forbidden_structure`] searches for them exactly; the brute-force
//! oracle in [`bruteforce`] checks popularity straight from the vote
//! definition and is used to cross-check the search.

pub mod bruteforce;
mod search;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roommates::{delta, Edge, Matching, PreferenceInstance, Vertex};

pub use bruteforce::{is_popular_bruteforce, solve_bruteforce, BruteForceOracle, BruteVerdict};
pub use search::{Detector, SearchOutcome, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    Minus2,
    Zero,
    Plus2,
}

impl EdgeLabel {
    pub fn value(self) -> i8 {
        match self {
            EdgeLabel::Minus2 => -2,
            EdgeLabel::Zero => 0,
            EdgeLabel::Plus2 => 2,
        }
    }
}

/// Label of a non-matching edge: `+2` when both endpoints prefer each other
/// to their current status, `-2` when both prefer their current status.
pub fn label_edge(inst: &PreferenceInstance, m: &Matching, e: Edge) -> Result<EdgeLabel> {
    if m.contains(e) {
        return Err(Error::EdgeInMatching { edge: e });
    }
    if !inst.has_edge(e.lo(), e.hi()) {
        return Err(Error::NotAnEdge { edge: e });
    }
    let (u, v) = (e.lo(), e.hi());
    let u_current = inst.status_rank(u, m);
    let v_current = inst.status_rank(v, m);
    let u_edge = inst.rank(u, v)?;
    let v_edge = inst.rank(v, u)?;
    Ok(if u_current < u_edge && v_current < v_edge {
        EdgeLabel::Minus2
    } else if u_current > u_edge && v_current > v_edge {
        EdgeLabel::Plus2
    } else {
        EdgeLabel::Zero
    })
}

/// The subgraph keeping every matching edge and every non-matching edge not
/// labeled `-2`.
#[derive(Debug, Clone)]
pub struct MarkedGraph<'a> {
    inst: &'a PreferenceInstance,
    matching: &'a Matching,
    labels: BTreeMap<Edge, EdgeLabel>,
    /// Kept non-matching edges per vertex, by ascending neighbor id.
    adj: Vec<Vec<(Vertex, EdgeLabel)>>,
}

impl<'a> MarkedGraph<'a> {
    pub fn build(inst: &'a PreferenceInstance, matching: &'a Matching) -> Self {
        let mut labels = BTreeMap::new();
        let mut adj = vec![Vec::new(); inst.num_vertices()];
        for e in inst.edges() {
            if matching.contains(e) {
                continue;
            }
            let label = label_edge(inst, matching, e).expect("instance edge outside the matching");
            if label != EdgeLabel::Minus2 {
                labels.insert(e, label);
                adj[e.lo() - 1].push((e.hi(), label));
                adj[e.hi() - 1].push((e.lo(), label));
            }
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        MarkedGraph { inst, matching, labels, adj }
    }

    pub fn instance(&self) -> &'a PreferenceInstance {
        self.inst
    }

    pub fn matching(&self) -> &'a Matching {
        self.matching
    }

    /// Label of a kept non-matching edge; `None` for matching edges and for
    /// dropped (`-2`) edges.
    pub fn label(&self, e: Edge) -> Option<EdgeLabel> {
        self.labels.get(&e).copied()
    }

    pub fn is_kept(&self, e: Edge) -> bool {
        self.matching.contains(e) || self.labels.contains_key(&e)
    }

    /// Matching edges plus labeled edges, lexicographically.
    pub fn kept_edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self.matching.edges();
        edges.extend(self.labels.keys().copied());
        edges.sort_unstable();
        edges
    }

    pub fn labeled_edges(&self) -> impl Iterator<Item = (Edge, EdgeLabel)> + '_ {
        self.labels.iter().map(|(&e, &l)| (e, l))
    }

    pub fn plus_edges(&self) -> Vec<Edge> {
        self.labeled_edges().filter(|&(_, l)| l == EdgeLabel::Plus2).map(|(e, _)| e).collect()
    }

    pub(crate) fn non_matching_neighbors(&self, v: Vertex) -> &[(Vertex, EdgeLabel)] {
        &self.adj[v - 1]
    }
}

pub fn build_marked_graph<'a>(inst: &'a PreferenceInstance, m: &'a Matching) -> MarkedGraph<'a> {
    MarkedGraph::build(inst, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    CycleWithPlus,
    PathFromUnmatchedWithPlus,
    PathWithTwoPlus,
}

impl WitnessKind {
    pub fn is_cycle(self) -> bool {
        self == WitnessKind::CycleWithPlus
    }
}

/// An alternating cycle or path certifying that a matching is not popular.
///
/// For cycles the closing edge runs from the last vertex back to the first.
/// `plus_positions[k] = i` means the edge leaving `vertices[i]` (towards
/// `vertices[i + 1]`, or back to the start for the closing edge) is `+2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<Vertex>,
    pub plus_positions: Vec<usize>,
}

impl Witness {
    /// Edges in traversal order.
    pub fn edges(&self) -> Vec<Edge> {
        let vs = &self.vertices;
        let mut edges: Vec<Edge> = vs.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        if self.kind.is_cycle() && vs.len() > 1 {
            edges.push(Edge::new(vs[vs.len() - 1], vs[0]));
        }
        edges
    }

    /// Builds a witness from a raw vertex sequence, putting it in canonical
    /// orientation and filling in the `+2` positions.
    pub(crate) fn canonical(g: &MarkedGraph<'_>, kind: WitnessKind, mut vertices: Vec<Vertex>) -> Witness {
        match kind {
            WitnessKind::CycleWithPlus => {
                let start = (0..vertices.len()).min_by_key(|&i| vertices[i]).unwrap_or(0);
                vertices.rotate_left(start);
                if vertices.len() > 2 && vertices[vertices.len() - 1] < vertices[1] {
                    vertices[1..].reverse();
                }
            }
            WitnessKind::PathFromUnmatchedWithPlus => {
                let m = g.matching();
                let first_free = !m.is_matched(vertices[0]);
                let last = vertices[vertices.len() - 1];
                let last_free = !m.is_matched(last);
                if (!first_free && last_free) || (first_free && last_free && last < vertices[0]) {
                    vertices.reverse();
                }
            }
            WitnessKind::PathWithTwoPlus => {
                if vertices[vertices.len() - 1] < vertices[0] {
                    vertices.reverse();
                }
            }
        }
        let mut w = Witness { kind, vertices, plus_positions: Vec::new() };
        w.plus_positions = w
            .edges()
            .iter()
            .enumerate()
            .filter(|&(_, &e)| g.label(e) == Some(EdgeLabel::Plus2))
            .map(|(i, _)| i)
            .collect();
        w
    }
}

/// Exhaustive search with the default node budget.
pub fn find_forbidden_structure(inst: &PreferenceInstance, m: &Matching) -> Result<Option<Witness>> {
    Detector::default().find(inst, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Popular,
    NotPopular(Witness),
}

impl Verdict {
    pub fn is_popular(&self) -> bool {
        matches!(self, Verdict::Popular)
    }
}

pub fn is_popular(inst: &PreferenceInstance, m: &Matching) -> Result<Verdict> {
    Detector::default().verdict(inst, m)
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidWitness { reason: reason.into() }
}

/// Re-checks every structural condition a witness must satisfy against
/// `(inst, m)`.
pub fn validate_witness(inst: &PreferenceInstance, m: &Matching, w: &Witness) -> Result<()> {
    m.validate(inst)?;
    let vs = &w.vertices;
    let cycle = w.kind.is_cycle();
    if cycle && (vs.len() < 4 || !vs.len().is_multiple_of(2)) {
        return Err(invalid("cycle must have even length of at least 4"));
    }
    if !cycle && vs.len() < 2 {
        return Err(invalid("path needs at least one edge"));
    }
    let mut seen = vec![false; inst.num_vertices() + 1];
    for &v in vs {
        if v == 0 || v > inst.num_vertices() {
            return Err(invalid(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(invalid(format!("vertex {v} repeated")));
        }
    }
    let edges = w.edges();
    for e in &edges {
        if !inst.has_edge(e.lo(), e.hi()) {
            return Err(invalid(format!("{e} is not an edge")));
        }
    }
    let in_m: Vec<bool> = edges.iter().map(|&e| m.contains(e)).collect();
    let pairs = if cycle { edges.len() } else { edges.len() - 1 };
    for i in 0..pairs {
        if in_m[i] == in_m[(i + 1) % edges.len()] {
            return Err(invalid(format!("edges {} and {} do not alternate", edges[i], edges[(i + 1) % edges.len()])));
        }
    }
    let g = MarkedGraph::build(inst, m);
    let mut plus = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        if in_m[i] {
            continue;
        }
        match g.label(e) {
            None => return Err(invalid(format!("{e} is labeled -2"))),
            Some(EdgeLabel::Plus2) => plus.push(i),
            Some(_) => {}
        }
    }
    if !cycle {
        if !in_m[0] && m.is_matched(vs[0]) {
            return Err(invalid(format!("path starts at matched vertex {} with a non-matching edge", vs[0])));
        }
        let last = vs[vs.len() - 1];
        if !in_m[edges.len() - 1] && m.is_matched(last) {
            return Err(invalid(format!("path ends at matched vertex {last} with a non-matching edge")));
        }
    }
    if plus != w.plus_positions {
        return Err(invalid(format!("+2 positions {:?} do not match {:?}", w.plus_positions, plus)));
    }
    let needed = match w.kind {
        WitnessKind::CycleWithPlus | WitnessKind::PathFromUnmatchedWithPlus => 1,
        WitnessKind::PathWithTwoPlus => 2,
    };
    if plus.len() < needed {
        return Err(invalid(format!("needs {needed} +2 edges, has {}", plus.len())));
    }
    if w.kind == WitnessKind::PathFromUnmatchedWithPlus && m.is_matched(vs[0]) {
        return Err(invalid("path does not start at an unmatched vertex"));
    }
    Ok(())
}

/// Swaps matched and unmatched edges along the witness. The result is
/// checked to beat `m` by at least one vote.
pub fn apply_witness(inst: &PreferenceInstance, m: &Matching, w: &Witness) -> Result<Matching> {
    validate_witness(inst, m, w)?;
    let edges = w.edges();
    let mut next = m.clone();
    for &e in &edges {
        next.remove(e);
    }
    for &e in edges.iter().filter(|&&e| !m.contains(e)) {
        next.insert(e).map_err(|_| invalid(format!("{e} collides after the exchange")))?;
    }
    let margin = delta(inst, &next, m);
    if margin < 1 {
        return Err(Error::InternalNonImprovement { rule: format!("{:?}", w.kind), delta: margin });
    }
    Ok(next)
}
