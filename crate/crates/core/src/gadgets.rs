//! Reduction from Partitioned Vertex Cover to popular matching.
//!
//! Every graph vertex `i` gets an Edge Coverage block `a_i, b_i, c_i, d_i`;
//! every graph edge `e = {i, j}` gets a pair `u^e_i, u^e_j` hanging off `b_i`
//! and `b_j`. A pair `{i, j}` adds `f_ij, f_ji` and two oppositely oriented
//! triangles `{c_i, d_j, f_ji}` and `{c_j, d_i, f_ij}`; a triple `{i, j, k}`
//! adds a `d`-triangle and a `c`-triangle oriented the other way round.
//!
//! In any matching, `i` counts as selected iff `{a_i, b_i}` is matched.
//! [`forward_matching`] turns a solution into a popular matching, and
//! [`improve`] turns any matching whose selection is not a solution into a
//! strictly more popular one.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pvc::{is_solution, solution_violation, validate_pvc, CoverSet, PvcInstance};
use crate::roommates::{delta, first_free_edge, validate_instance, Edge, Matching, PreferenceInstance, Vertex};

/// Symbolic name of a vertex of the reduced instance, in terms of the
/// source graph's vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GadgetName {
    A(Vertex),
    B(Vertex),
    C(Vertex),
    D(Vertex),
    /// `u^e_at` for graph edge `e` and endpoint `at`.
    U { edge: Edge, at: Vertex },
    /// `f_ij`: adjacent to `d_i` and `c_j`.
    F(Vertex, Vertex),
}

impl fmt::Display for GadgetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GadgetName::A(i) => write!(f, "a_{i}"),
            GadgetName::B(i) => write!(f, "b_{i}"),
            GadgetName::C(i) => write!(f, "c_{i}"),
            GadgetName::D(i) => write!(f, "d_{i}"),
            GadgetName::U { edge, at } => write!(f, "u e_{}_{} {at}", edge.lo(), edge.hi()),
            GadgetName::F(i, j) => write!(f, "f_{i}_{j}"),
        }
    }
}

/// Bijection between the vertices of the reduced instance and their names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMap {
    names: Vec<GadgetName>,
    ids: HashMap<GadgetName, Vertex>,
}

impl GadgetMap {
    /// `names[k]` names vertex `k + 1`.
    pub fn from_names(names: Vec<GadgetName>) -> Result<Self> {
        let mut ids = HashMap::with_capacity(names.len());
        for (k, &name) in names.iter().enumerate() {
            if ids.insert(name, k + 1).is_some() {
                return Err(Error::InconsistentMap { reason: format!("{name} named twice") });
            }
        }
        Ok(GadgetMap { names, ids })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: GadgetName) -> Option<Vertex> {
        self.ids.get(&name).copied()
    }

    pub fn name(&self, v: Vertex) -> GadgetName {
        self.names[v - 1]
    }

    /// `(id, name)` in id order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, GadgetName)> + '_ {
        self.names.iter().enumerate().map(|(k, &n)| (k + 1, n))
    }

    fn get(&self, name: GadgetName) -> Vertex {
        self.id(name).unwrap_or_else(|| panic!("{name} missing from gadget map"))
    }

    pub fn a(&self, i: Vertex) -> Vertex {
        self.get(GadgetName::A(i))
    }

    pub fn b(&self, i: Vertex) -> Vertex {
        self.get(GadgetName::B(i))
    }

    pub fn c(&self, i: Vertex) -> Vertex {
        self.get(GadgetName::C(i))
    }

    pub fn d(&self, i: Vertex) -> Vertex {
        self.get(GadgetName::D(i))
    }

    pub fn u(&self, edge: Edge, at: Vertex) -> Vertex {
        self.get(GadgetName::U { edge, at })
    }

    pub fn f(&self, i: Vertex, j: Vertex) -> Vertex {
        self.get(GadgetName::F(i, j))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HInstance {
    pub instance: PreferenceInstance,
    pub map: GadgetMap,
    pub source: PvcInstance,
}

pub fn reduce_pvc_to_pm(pvc: &PvcInstance) -> HInstance {
    let n = pvc.num_vertices();
    let mut names = Vec::new();
    for i in 1..=n {
        names.extend([GadgetName::A(i), GadgetName::B(i), GadgetName::C(i), GadgetName::D(i)]);
    }
    for e in pvc.edges() {
        names.push(GadgetName::U { edge: e, at: e.lo() });
        names.push(GadgetName::U { edge: e, at: e.hi() });
    }
    for &[i, j] in pvc.pairs() {
        names.push(GadgetName::F(i, j));
        names.push(GadgetName::F(j, i));
    }
    let map = GadgetMap::from_names(names).expect("generated names are distinct");

    let mut prefs: Vec<Vec<Vertex>> = vec![Vec::new(); map.len()];
    let mut push = |v: Vertex, list: &[Vertex]| prefs[v - 1].extend_from_slice(list);

    for i in 1..=n {
        let (a, b, c, d) = (map.a(i), map.b(i), map.c(i), map.d(i));
        push(a, &[b, c, d]);
        // u-vertices sit in the middle of b_i's list, ordered by the other
        // endpoint of their edge.
        let mut middle: Vec<Vertex> = Vec::new();
        for j in pvc.neighbors(i) {
            middle.push(map.u(Edge::new(i, j), i));
        }
        push(b, &[a]);
        push(b, &middle);
        push(b, &[c]);
        push(c, &[a, b]);
        push(d, &[a]);
    }
    for e in pvc.edges() {
        let (i, j) = (e.lo(), e.hi());
        let (ui, uj) = (map.u(e, i), map.u(e, j));
        push(ui, &[uj, map.b(i)]);
        push(uj, &[ui, map.b(j)]);
    }
    for &[i, j] in pvc.pairs() {
        for (p, q) in [(i, j), (j, i)] {
            push(map.c(p), &[map.f(q, p), map.d(q)]);
            push(map.d(p), &[map.c(q), map.f(p, q)]);
            push(map.f(p, q), &[map.d(p), map.c(q)]);
        }
    }
    for &[i, j, k] in pvc.triples() {
        // d_i -> d_j -> d_k -> d_i is the favored direction on the inner
        // triangle; the c-triangle favors the reverse.
        for (p, next, prev) in [(i, j, k), (j, k, i), (k, i, j)] {
            push(map.d(p), &[map.d(next), map.d(prev)]);
            push(map.c(p), &[map.c(prev), map.c(next)]);
        }
    }
    let instance = validate_instance(prefs).expect("gadget preference lists are symmetric");
    HInstance { instance, map, source: pvc.clone() }
}

impl HInstance {
    /// Recovers the source instance from a reduced instance and its map, and
    /// checks that reducing it again reproduces both exactly.
    pub fn from_parts(instance: PreferenceInstance, map: GadgetMap) -> Result<Self> {
        let bad = |reason: String| Error::InconsistentMap { reason };
        if map.len() != instance.num_vertices() {
            return Err(bad(format!("map names {} vertices, instance has {}", map.len(), instance.num_vertices())));
        }
        let n = map.iter().filter(|(_, name)| matches!(name, GadgetName::A(_))).count();
        let mut edges = Vec::new();
        let mut pairs = Vec::new();
        for (_, name) in map.iter() {
            match name {
                GadgetName::A(i) | GadgetName::B(i) | GadgetName::C(i) | GadgetName::D(i) if i == 0 || i > n => {
                    return Err(bad(format!("{name} is outside 1..={n}")));
                }
                GadgetName::U { edge, at } if at == edge.lo() => edges.push((edge.lo(), edge.hi())),
                GadgetName::F(i, j) if i < j => pairs.push([i, j]),
                _ => {}
            }
        }
        let paired: Vec<bool> = {
            let mut v = vec![false; n + 1];
            pairs.iter().flatten().filter(|&&i| i <= n).for_each(|&i| v[i] = true);
            v
        };
        let mut triples: Vec<[Vertex; 3]> = Vec::new();
        for i in (1..=n).filter(|&i| !paired[i]) {
            let d = map.id(GadgetName::D(i)).ok_or_else(|| bad(format!("d_{i} missing")))?;
            let mut group: Vec<Vertex> = instance
                .prefs(d)
                .iter()
                .filter_map(|&w| match map.name(w) {
                    GadgetName::D(j) => Some(j),
                    _ => None,
                })
                .collect();
            group.push(i);
            group.sort_unstable();
            let t: [Vertex; 3] = group.try_into().map_err(|g: Vec<Vertex>| bad(format!("d_{i} sits in a group of {}", g.len())))?;
            if !triples.contains(&t) {
                triples.push(t);
            }
        }
        triples.sort_unstable();
        let source = validate_pvc(n, edges, pairs, triples).map_err(|e| bad(e.to_string()))?;
        let rebuilt = reduce_pvc_to_pm(&source);
        if rebuilt.map != map {
            return Err(bad("vertex numbering differs from the canonical reduction".into()));
        }
        if rebuilt.instance != instance {
            return Err(bad("preference lists differ from the reduction of the recovered source".into()));
        }
        Ok(rebuilt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    pub source_vertices: usize,
    pub source_edges: usize,
    pub pairs: usize,
    pub triples: usize,
    pub vertices: usize,
    pub edges: usize,
    /// `4|V(G)| + 2|E(G)| + 2|P|`.
    pub expected_vertices: usize,
    /// `4|V(G)| + 3|E(G)| + 6|P| + 6|T|`.
    pub expected_edges: usize,
}

impl SizeReport {
    pub fn holds(&self) -> bool {
        self.vertices == self.expected_vertices && self.edges == self.expected_edges
    }
}

pub fn size_formulas(h: &HInstance) -> SizeReport {
    let g = &h.source;
    let (nv, ne, np, nt) = (g.num_vertices(), g.num_edges(), g.pairs().len(), g.triples().len());
    SizeReport {
        source_vertices: nv,
        source_edges: ne,
        pairs: np,
        triples: nt,
        vertices: h.instance.num_vertices(),
        edges: h.instance.num_edges(),
        expected_vertices: 4 * nv + 2 * ne + 2 * np,
        expected_edges: 4 * nv + 3 * ne + 6 * np + 6 * nt,
    }
}

/// The popular matching built from a solution: every `u` pair matched to
/// itself, unselected vertices in the `{a,d},{b,c}` configuration, and the
/// selector gadgets closed off around them.
pub fn forward_matching(h: &HInstance, u: &CoverSet) -> Result<Matching> {
    if let Some(reason) = solution_violation(&h.source, u) {
        return Err(Error::NotASolution { reason });
    }
    let map = &h.map;
    let mut edges = Vec::new();
    for e in h.source.edges() {
        edges.push(Edge::new(map.u(e, e.lo()), map.u(e, e.hi())));
    }
    let skip = |x: Vertex, edges: &mut Vec<Edge>| {
        edges.push(Edge::new(map.a(x), map.d(x)));
        edges.push(Edge::new(map.b(x), map.c(x)));
    };
    for &[i, j] in h.source.pairs() {
        let (x, y) = if u.contains(i) { (j, i) } else { (i, j) };
        skip(x, &mut edges);
        edges.push(Edge::new(map.a(y), map.b(y)));
        edges.push(Edge::new(map.f(x, y), map.c(y)));
        edges.push(Edge::new(map.f(y, x), map.d(y)));
    }
    for t in h.source.triples() {
        let x = *t.iter().find(|&&v| !u.contains(v)).expect("solution leaves one triple vertex out");
        let mut chosen: Vec<Vertex> = t.iter().copied().filter(|&v| v != x).collect();
        let dx = map.d(x);
        chosen.sort_by_key(|&v| h.instance.rank(dx, map.d(v)).expect("d-triangle edge"));
        let (y, z) = (chosen[0], chosen[1]);
        skip(x, &mut edges);
        edges.push(Edge::new(map.a(y), map.b(y)));
        edges.push(Edge::new(map.a(z), map.b(z)));
        edges.push(Edge::new(map.c(y), map.c(z)));
        edges.push(Edge::new(map.d(y), map.d(z)));
    }
    Matching::from_edges(&h.instance, edges)
}

/// Graph vertices whose `{a_i, b_i}` edge is matched.
pub fn extract_cover(h: &HInstance, m: &Matching) -> CoverSet {
    (1..=h.source.num_vertices())
        .filter(|&i| m.contains(Edge::new(h.map.a(i), h.map.b(i))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleTag {
    AddFreeEdge,
    ClaimAUnmatched,
    ClaimAMatchedToC,
    ClaimAMatchedToD,
    CoverViolationSwap,
    PairTriangleSwap,
    TripleTriangleSwap,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleTag::AddFreeEdge => "AddFreeEdge",
            RuleTag::ClaimAUnmatched => "ClaimA_Unmatched",
            RuleTag::ClaimAMatchedToC => "ClaimA_MatchedToC",
            RuleTag::ClaimAMatchedToD => "ClaimA_MatchedToD",
            RuleTag::CoverViolationSwap => "CoverViolationSwap",
            RuleTag::PairTriangleSwap => "PairTriangleSwap",
            RuleTag::TripleTriangleSwap => "TripleTriangleSwap",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImproveRule {
    pub tag: RuleTag,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Improvement {
    pub matching: Matching,
    pub rule: ImproveRule,
    /// Vote margin of the new matching over the old one.
    pub delta: i64,
}

/// Applies the first applicable improvement rule, or returns `None` when
/// none applies. Rules are tried in the order of [`RuleTag`]; within a rule
/// the lowest-indexed site wins.
pub fn improve(h: &HInstance, m: &Matching) -> Result<Option<Improvement>> {
    m.validate(&h.instance)?;
    let engine = Engine { h, m };
    let rules = [
        RuleTag::AddFreeEdge,
        RuleTag::ClaimAUnmatched,
        RuleTag::ClaimAMatchedToC,
        RuleTag::ClaimAMatchedToD,
        RuleTag::CoverViolationSwap,
        RuleTag::PairTriangleSwap,
        RuleTag::TripleTriangleSwap,
    ];
    for tag in rules {
        let site = match tag {
            RuleTag::AddFreeEdge => engine.add_free_edge(),
            RuleTag::ClaimAUnmatched => engine.a_unmatched(),
            RuleTag::ClaimAMatchedToC => engine.a_matched_to(GadgetName::C),
            RuleTag::ClaimAMatchedToD => engine.a_matched_to(GadgetName::D),
            RuleTag::CoverViolationSwap => engine.cover_violation(),
            RuleTag::PairTriangleSwap => engine.pair_triangle(),
            RuleTag::TripleTriangleSwap => engine.triple_triangle(),
        };
        let Some((removed, added)) = site else { continue };
        let next = exchange(m, &removed, &added)
            .unwrap_or_else(|| panic!("{tag} produced an invalid exchange: -{removed:?} +{added:?}"));
        let margin = delta(&h.instance, &next, m);
        if margin < 1 {
            return Err(Error::InternalNonImprovement { rule: tag.to_string(), delta: margin });
        }
        return Ok(Some(Improvement { matching: next, rule: ImproveRule { tag, removed, added }, delta: margin }));
    }
    Ok(None)
}

/// Repeatedly improves until no rule applies. Returns the final matching and
/// the rules used. "More popular than" is not transitive, so the step count
/// is capped rather than assumed finite.
pub fn improve_until_stuck(h: &HInstance, m: &Matching, max_steps: usize) -> Result<(Matching, Vec<ImproveRule>)> {
    let mut current = m.clone();
    let mut trail = Vec::new();
    for _ in 0..max_steps {
        match improve(h, &current)? {
            Some(step) => {
                trail.push(step.rule);
                current = step.matching;
            }
            None => break,
        }
    }
    Ok((current, trail))
}

fn exchange(m: &Matching, removed: &[Edge], added: &[Edge]) -> Option<Matching> {
    let mut next = m.clone();
    for &e in removed {
        if !next.remove(e) {
            return None;
        }
    }
    for &e in added {
        next.insert(e).ok()?;
    }
    Some(next)
}

struct Engine<'a> {
    h: &'a HInstance,
    m: &'a Matching,
}

type Swap = Option<(Vec<Edge>, Vec<Edge>)>;

impl Engine<'_> {
    fn n(&self) -> usize {
        self.h.source.num_vertices()
    }

    fn has(&self, u: Vertex, v: Vertex) -> bool {
        self.m.contains(Edge::new(u, v))
    }

    fn selected(&self, i: Vertex) -> bool {
        self.has(self.h.map.a(i), self.h.map.b(i))
    }

    /// `{a_i, d_i}` and `{b_i, c_i}` both matched.
    fn skipped(&self, i: Vertex) -> bool {
        let map = &self.h.map;
        self.has(map.a(i), map.d(i)) && self.has(map.b(i), map.c(i))
    }

    fn add_free_edge(&self) -> Swap {
        first_free_edge(&self.h.instance, self.m).map(|e| (vec![], vec![e]))
    }

    fn a_unmatched(&self) -> Swap {
        let map = &self.h.map;
        let i = (1..=self.n()).find(|&i| !self.m.is_matched(map.a(i)))?;
        let (a, b) = (map.a(i), map.b(i));
        let removed = self.m.partner(b).map(|w| vec![Edge::new(b, w)]).unwrap_or_default();
        Some((removed, vec![Edge::new(a, b)]))
    }

    /// `a_i` matched to `c_i` (or to `d_i` while `b_i` is not on `c_i`):
    /// pull `a_i` back to `b_i`, and if `b_i` sat on `u^e_i`, hand `u^e_i`
    /// back to its twin.
    fn a_matched_to(&self, which: fn(Vertex) -> GadgetName) -> Swap {
        let map = &self.h.map;
        (1..=self.n()).find_map(|i| {
            let (a, b, c) = (map.a(i), map.b(i), map.c(i));
            let other = map.get(which(i));
            if !self.has(a, other) || (other != c && self.has(b, c)) {
                return None;
            }
            let mut removed = vec![Edge::new(a, other)];
            let mut added = vec![Edge::new(a, b)];
            if let Some(w) = self.m.partner(b) {
                let GadgetName::U { edge, at } = map.name(w) else { return None };
                let j = edge.other(at);
                let twin = map.u(edge, j);
                removed.push(Edge::new(b, w));
                if self.has(twin, map.b(j)) {
                    removed.push(Edge::new(twin, map.b(j)));
                }
                added.push(Edge::new(w, twin));
            }
            Some((removed, added))
        })
    }

    fn cover_violation(&self) -> Swap {
        let map = &self.h.map;
        self.h.source.edges().find_map(|e| {
            let (i, j) = (e.lo(), e.hi());
            let (ui, uj) = (map.u(e, i), map.u(e, j));
            if !(self.skipped(i) && self.skipped(j) && self.has(ui, uj)) {
                return None;
            }
            let removed = vec![
                Edge::new(map.a(i), map.d(i)),
                Edge::new(map.b(i), map.c(i)),
                Edge::new(ui, uj),
                Edge::new(map.a(j), map.d(j)),
                Edge::new(map.b(j), map.c(j)),
            ];
            let added = vec![
                Edge::new(map.a(i), map.c(i)),
                Edge::new(map.b(i), ui),
                Edge::new(map.a(j), map.c(j)),
                Edge::new(map.b(j), uj),
            ];
            Some((removed, added))
        })
    }

    /// Rotates the single matched edge of a three-cycle `x -> y -> z` one
    /// step: `{x,y}` becomes `{z,x}`, `{y,z}` becomes `{x,y}`, `{z,x}`
    /// becomes `{y,z}`. The vertex losing its partner is the only one voting
    /// against.
    fn rotate(&self, x: Vertex, y: Vertex, z: Vertex) -> Swap {
        let steps = [((x, y), (z, x), z), ((y, z), (x, y), x), ((z, x), (y, z), y)];
        steps.into_iter().find_map(|((p, q), (r, s), newcomer)| {
            (self.has(p, q) && !self.m.is_matched(newcomer))
                .then(|| (vec![Edge::new(p, q)], vec![Edge::new(r, s)]))
        })
    }

    fn pair_triangle(&self) -> Swap {
        let map = &self.h.map;
        self.h.source.pairs().iter().find_map(|&[i, j]| {
            if !(self.selected(i) && self.selected(j)) {
                return None;
            }
            // {c_p, d_q} -> {f_qp, c_p} -> {d_q, f_qp} -> {c_p, d_q}
            [(i, j), (j, i)]
                .into_iter()
                .find_map(|(p, q)| self.rotate(map.c(p), map.d(q), map.f(q, p)))
        })
    }

    fn triple_triangle(&self) -> Swap {
        let map = &self.h.map;
        self.h.source.triples().iter().find_map(|&[i, j, k]| {
            if !(self.selected(i) && self.selected(j) && self.selected(k)) {
                return None;
            }
            // {d_i, d_j} -> {d_j, d_k} -> {d_k, d_i} -> {d_i, d_j}
            self.rotate(map.d(j), map.d(i), map.d(k))
        })
    }
}

/// Convenience: `is_solution` on the extracted cover.
pub fn encodes_solution(h: &HInstance, m: &Matching) -> bool {
    is_solution(&h.source, &extract_cover(h, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::popularity::{find_forbidden_structure, EdgeLabel, MarkedGraph};

    fn pair1() -> HInstance {
        reduce_pvc_to_pm(&validate_pvc(2, [(1, 2)], [[1, 2]], []).unwrap())
    }

    fn triple1() -> HInstance {
        reduce_pvc_to_pm(&validate_pvc(3, [(1, 2), (2, 3), (1, 3)], [], [[1, 2, 3]]).unwrap())
    }

    fn names(h: &HInstance, v: Vertex) -> Vec<String> {
        h.instance.prefs(v).iter().map(|&w| h.map.name(w).to_string()).collect()
    }

    fn cover(vs: &[Vertex]) -> CoverSet {
        vs.iter().copied().collect()
    }

    fn edges(h: &HInstance, list: &[(GadgetName, GadgetName)]) -> Vec<Edge> {
        list.iter().map(|&(p, q)| Edge::new(h.map.get(p), h.map.get(q))).collect()
    }

    use GadgetName::{A, B, C, D, F};

    fn u(i: Vertex, j: Vertex, at: Vertex) -> GadgetName {
        GadgetName::U { edge: Edge::new(i, j), at }
    }

    #[test]
    fn pair_gadget_preferences() {
        let h = pair1();
        assert_eq!((h.instance.num_vertices(), h.instance.num_edges()), (12, 17));
        assert_eq!(names(&h, h.map.a(1)), ["b_1", "c_1", "d_1"]);
        assert_eq!(names(&h, h.map.b(1)), ["a_1", "u e_1_2 1", "c_1"]);
        assert_eq!(names(&h, h.map.c(1)), ["a_1", "b_1", "f_2_1", "d_2"]);
        assert_eq!(names(&h, h.map.d(1)), ["a_1", "c_2", "f_1_2"]);
        assert_eq!(names(&h, h.map.f(1, 2)), ["d_1", "c_2"]);
        assert_eq!(names(&h, h.map.get(u(1, 2, 1))), ["u e_1_2 2", "b_1"]);
        let sizes = size_formulas(&h);
        assert_eq!(sizes.expected_vertices, 12);
    }

    #[test]
    fn triple_gadget_preferences() {
        let h = triple1();
        assert_eq!(names(&h, h.map.d(1)), ["a_1", "d_2", "d_3"]);
        assert_eq!(names(&h, h.map.d(2)), ["a_2", "d_3", "d_1"]);
        assert_eq!(names(&h, h.map.d(3)), ["a_3", "d_1", "d_2"]);
        assert_eq!(names(&h, h.map.c(1)), ["a_1", "b_1", "c_3", "c_2"]);
        assert_eq!(names(&h, h.map.c(2)), ["a_2", "b_2", "c_1", "c_3"]);
        assert_eq!(names(&h, h.map.c(3)), ["a_3", "b_3", "c_2", "c_1"]);
        assert_eq!(names(&h, h.map.b(2)), ["a_2", "u e_1_2 2", "u e_2_3 2", "c_2"]);
        assert_eq!(h.instance.rank(h.map.b(2), h.map.c(2)), Ok(4));
    }

    #[test]
    fn forward_matching_on_pair() {
        let h = pair1();
        let m = forward_matching(&h, &cover(&[2])).unwrap();
        let mut expected = edges(&h, &[
            (u(1, 2, 1), u(1, 2, 2)),
            (A(1), D(1)),
            (B(1), C(1)),
            (A(2), B(2)),
            (F(1, 2), C(2)),
            (F(2, 1), D(2)),
        ]);
        expected.sort();
        assert_eq!(m.edges(), expected);
        assert!(m.is_perfect());
        assert_eq!(find_forbidden_structure(&h.instance, &m), Ok(None));
        assert_eq!(extract_cover(&h, &m), cover(&[2]));

        let g = MarkedGraph::build(&h.instance, &m);
        let mut plus = edges(&h, &[(A(1), B(1)), (A(1), C(1))]);
        plus.sort();
        assert_eq!(g.plus_edges(), plus);
        let cx_fyx = Edge::new(h.map.c(1), h.map.f(2, 1));
        assert_eq!(g.label(cx_fyx), None);
        assert_eq!(crate::popularity::label_edge(&h.instance, &m, cx_fyx), Ok(EdgeLabel::Minus2));

        let mirror = forward_matching(&h, &cover(&[1])).unwrap();
        let mut expected = edges(&h, &[
            (u(1, 2, 1), u(1, 2, 2)),
            (A(2), D(2)),
            (B(2), C(2)),
            (A(1), B(1)),
            (F(2, 1), C(1)),
            (F(1, 2), D(1)),
        ]);
        expected.sort();
        assert_eq!(mirror.edges(), expected);

        assert!(matches!(forward_matching(&h, &cover(&[1, 2])), Err(Error::NotASolution { .. })));
    }

    #[test]
    fn forward_matching_on_triple() {
        let h = triple1();
        let m = forward_matching(&h, &cover(&[2, 3])).unwrap();
        assert!(m.contains(Edge::new(h.map.d(2), h.map.d(3))));
        assert!(m.contains(Edge::new(h.map.c(2), h.map.c(3))));
        assert!(m.is_perfect());
        assert_eq!(find_forbidden_structure(&h.instance, &m), Ok(None));
    }

    #[test]
    fn improve_rules_on_constructed_configurations() {
        let h = pair1();
        let empty = Matching::empty(h.instance.num_vertices());
        let step = improve(&h, &empty).unwrap().unwrap();
        assert_eq!(step.rule.tag, RuleTag::AddFreeEdge);
        assert_eq!(step.delta, 2);

        let both = Matching::from_edges(
            &h.instance,
            edges(&h, &[(A(1), B(1)), (A(2), B(2)), (u(1, 2, 1), u(1, 2, 2)), (C(1), D(2)), (D(1), F(1, 2))]),
        )
        .unwrap();
        let step = improve(&h, &both).unwrap().unwrap();
        assert_eq!(step.rule.tag, RuleTag::PairTriangleSwap);
        assert_eq!(step.rule.removed, edges(&h, &[(C(1), D(2))]));
        assert_eq!(step.rule.added, edges(&h, &[(F(2, 1), C(1))]));
        assert_eq!(step.delta, 1);

        let fwd = forward_matching(&h, &cover(&[2])).unwrap();
        assert_eq!(improve(&h, &fwd), Ok(None));
    }

    #[test]
    fn triple_rotation() {
        let h = triple1();
        let m = Matching::from_edges(
            &h.instance,
            edges(&h, &[
                (A(1), B(1)),
                (A(2), B(2)),
                (A(3), B(3)),
                (u(1, 2, 1), u(1, 2, 2)),
                (u(1, 3, 1), u(1, 3, 3)),
                (u(2, 3, 2), u(2, 3, 3)),
                (C(1), C(2)),
                (D(1), D(2)),
            ]),
        )
        .unwrap();
        let step = improve(&h, &m).unwrap().unwrap();
        assert_eq!(step.rule.tag, RuleTag::TripleTriangleSwap);
        assert_eq!(step.rule.removed, edges(&h, &[(D(1), D(2))]));
        assert_eq!(step.rule.added, edges(&h, &[(D(2), D(3))]));
        assert_eq!(step.delta, 1);
    }

    #[test]
    fn extract_on_empty_and_double_selection() {
        let h = pair1();
        assert!(extract_cover(&h, &Matching::empty(12)).is_empty());
        let both = Matching::from_edges(&h.instance, edges(&h, &[(A(1), B(1)), (A(2), B(2))])).unwrap();
        assert_eq!(extract_cover(&h, &both), cover(&[1, 2]));
        assert!(!encodes_solution(&h, &both));
    }

    #[test]
    fn empty_source() {
        let h = reduce_pvc_to_pm(&validate_pvc(0, [], [], []).unwrap());
        assert_eq!(size_formulas(&h).vertices, 0);
    }

    #[test]
    fn map_round_trip() {
        let h = triple1();
        let again = HInstance::from_parts(h.instance.clone(), h.map.clone()).unwrap();
        assert_eq!(again, h);
        let other = pair1();
        assert!(matches!(
            HInstance::from_parts(h.instance.clone(), other.map.clone()),
            Err(Error::InconsistentMap { .. })
        ));
    }
}
