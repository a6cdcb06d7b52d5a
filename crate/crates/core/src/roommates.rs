//! Roommates instances with strict preferences, matchings, and the vote
//! arithmetic used to compare two matchings.
//!
//! Vertices are 1-based. A vertex that is unmatched is treated as matched to
//! itself with rank `deg(v) + 1`, so "matched beats unmatched" falls out of
//! plain rank comparison.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based vertex id.
pub type Vertex = usize;

/// Undirected edge, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(&self) -> Vertex {
        self.0
    }

    pub fn hi(&self) -> Vertex {
        self.1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    pub fn other(&self, v: Vertex) -> Vertex {
        debug_assert!(self.contains(v));
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Undirected simple graph where every vertex ranks all of its neighbors
/// strictly. `prefs[v - 1]` lists the neighbors of `v`, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PreferenceInstance {
    prefs: Vec<Vec<Vertex>>,
}

/// Checks raw adjacency lists and builds an instance from them.
///
/// Per-vertex checks (range, self-loops, duplicates) run over all vertices
/// first; symmetry is checked afterwards.
pub fn validate_instance(prefs: Vec<Vec<Vertex>>) -> Result<PreferenceInstance> {
    let n = prefs.len();
    for (idx, list) in prefs.iter().enumerate() {
        let v = idx + 1;
        let mut seen = vec![false; n + 1];
        for &u in list {
            if u == 0 || u > n {
                return Err(Error::VertexOutOfRange { vertex: v, neighbor: u, n });
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: v });
            }
            if seen[u] {
                return Err(Error::DuplicateNeighbor { vertex: v, neighbor: u });
            }
            seen[u] = true;
        }
    }
    for (idx, list) in prefs.iter().enumerate() {
        let v = idx + 1;
        for &u in list {
            if !prefs[u - 1].contains(&v) {
                return Err(Error::AsymmetricAdjacency { vertex: v, neighbor: u });
            }
        }
    }
    Ok(PreferenceInstance { prefs })
}

impl PreferenceInstance {
    pub fn num_vertices(&self) -> usize {
        self.prefs.len()
    }

    pub fn num_edges(&self) -> usize {
        self.prefs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.prefs.len()
    }

    /// Preference list of `v`, most preferred first.
    pub fn prefs(&self, v: Vertex) -> &[Vertex] {
        &self.prefs[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.prefs[v - 1].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u >= 1 && u <= self.prefs.len() && self.prefs[u - 1].contains(&v)
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = self
            .vertices()
            .flat_map(|v| self.prefs(v).iter().filter(move |&&u| u > v).map(move |&u| Edge(v, u)))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// Rank `v` gives to `u`; `deg(v) + 1` when `u == v` (the unmatched status).
    pub fn rank(&self, v: Vertex, u: Vertex) -> Result<usize> {
        if v == u {
            return Ok(self.degree(v) + 1);
        }
        self.prefs(v)
            .iter()
            .position(|&w| w == u)
            .map(|p| p + 1)
            .ok_or(Error::NotANeighbor { vertex: v, other: u })
    }

    /// Rank of `v`'s status under `m`. Panics if `m` does not belong to this
    /// instance.
    pub fn status_rank(&self, v: Vertex, m: &Matching) -> usize {
        let partner = m.partner(v).unwrap_or(v);
        self.rank(v, partner).expect("matching edge is not an instance edge")
    }

    /// The same instance with edge `e` dropped from both preference lists.
    pub fn without_edge(&self, e: Edge) -> PreferenceInstance {
        let mut prefs = self.prefs.clone();
        prefs[e.lo() - 1].retain(|&w| w != e.hi());
        prefs[e.hi() - 1].retain(|&w| w != e.lo());
        PreferenceInstance { prefs }
    }
}

/// Set of pairwise vertex-disjoint edges of some instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<Vertex>>,
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.edges())
    }
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    pub fn from_edges<I>(inst: &PreferenceInstance, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut m = Matching::empty(inst.num_vertices());
        for e in edges {
            if !inst.has_edge(e.lo(), e.hi()) {
                return Err(Error::NotAnEdge { edge: e });
            }
            m.insert(e)?;
        }
        Ok(m)
    }

    /// Checks that this matching belongs to `inst`.
    pub fn validate(&self, inst: &PreferenceInstance) -> Result<()> {
        if self.mate.len() != inst.num_vertices() {
            return Err(Error::SizeMismatch { expected: inst.num_vertices(), found: self.mate.len() });
        }
        for e in self.edges() {
            if !inst.has_edge(e.lo(), e.hi()) {
                return Err(Error::NotAnEdge { edge: e });
            }
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.mate.len()
    }

    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.mate[v - 1]
    }

    pub fn is_matched(&self, v: Vertex) -> bool {
        self.mate[v - 1].is_some()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.mate[e.lo() - 1] == Some(e.hi())
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.mate.iter().all(Option::is_none)
    }

    /// Matching edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(i, m)| match *m {
                Some(u) if u > i + 1 => Some(Edge(i + 1, u)),
                _ => None,
            })
            .collect()
    }

    /// Adds `e`; both endpoints must be free.
    pub fn insert(&mut self, e: Edge) -> Result<()> {
        for v in [e.lo(), e.hi()] {
            if self.is_matched(v) {
                return Err(Error::NotDisjoint { vertex: v });
            }
        }
        self.mate[e.lo() - 1] = Some(e.hi());
        self.mate[e.hi() - 1] = Some(e.lo());
        Ok(())
    }

    /// Removes `e` if present; returns whether it was.
    pub fn remove(&mut self, e: Edge) -> bool {
        if !self.contains(e) {
            return false;
        }
        self.mate[e.lo() - 1] = None;
        self.mate[e.hi() - 1] = None;
        true
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }
}

/// Outcome of asking every vertex whether it prefers the first or the
/// second of two matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VoteTally {
    pub for_first: usize,
    pub for_second: usize,
    pub indifferent: usize,
}

impl VoteTally {
    pub fn total(&self) -> usize {
        self.for_first + self.for_second + self.indifferent
    }
}

pub fn vote(inst: &PreferenceInstance, first: &Matching, second: &Matching) -> VoteTally {
    let mut tally = VoteTally::default();
    for v in inst.vertices() {
        let a = inst.status_rank(v, first);
        let b = inst.status_rank(v, second);
        match a.cmp(&b) {
            std::cmp::Ordering::Less => tally.for_first += 1,
            std::cmp::Ordering::Greater => tally.for_second += 1,
            std::cmp::Ordering::Equal => tally.indifferent += 1,
        }
    }
    tally
}

/// Popularity margin of `challenger` over `incumbent`: votes for the
/// challenger minus votes for the incumbent.
pub fn delta(inst: &PreferenceInstance, challenger: &Matching, incumbent: &Matching) -> i64 {
    let t = vote(inst, challenger, incumbent);
    t.for_first as i64 - t.for_second as i64
}

/// True iff no edge has both endpoints free.
pub fn is_maximal(inst: &PreferenceInstance, m: &Matching) -> bool {
    first_free_edge(inst, m).is_none()
}

/// Lexicographically smallest edge with both endpoints unmatched.
pub fn first_free_edge(inst: &PreferenceInstance, m: &Matching) -> Option<Edge> {
    inst.edges()
        .into_iter()
        .find(|e| !m.is_matched(e.lo()) && !m.is_matched(e.hi()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    All,
    Maximal,
}

/// Enumerates matchings of `inst`. `budget` caps the number of search-tree
/// nodes; once exhausted the stream yields a single `BudgetExceeded` error.
pub fn enumerate_matchings(
    inst: &PreferenceInstance,
    mode: EnumerationMode,
    budget: Option<u64>,
) -> Matchings<'_> {
    let n = inst.num_vertices();
    Matchings {
        inst,
        edges: inst.edges(),
        mode,
        budget,
        nodes: 1,
        current: Matching::empty(n),
        stack: vec![Frame { idx: 0, state: FrameState::Fresh }],
        failed: false,
    }
}

#[derive(Debug, Clone, Copy)]
enum FrameState {
    Fresh,
    Excluded,
    Included,
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    idx: usize,
    state: FrameState,
}

/// Depth-first include/exclude search over the lexicographically sorted edge
/// list, exclude branch first.
pub struct Matchings<'a> {
    inst: &'a PreferenceInstance,
    edges: Vec<Edge>,
    mode: EnumerationMode,
    budget: Option<u64>,
    nodes: u64,
    current: Matching,
    stack: Vec<Frame>,
    failed: bool,
}

impl Matchings<'_> {
    /// Search-tree nodes visited so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn push(&mut self, idx: usize) -> bool {
        if let Some(b) = self.budget {
            if self.nodes >= b {
                return false;
            }
        }
        self.nodes += 1;
        self.stack.push(Frame { idx, state: FrameState::Fresh });
        true
    }
}

impl Iterator for Matchings<'_> {
    type Item = Result<Matching>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            let top = self.stack.last_mut()?;
            let idx = top.idx;
            if idx == self.edges.len() {
                self.stack.pop();
                if self.mode == EnumerationMode::Maximal && !is_maximal(self.inst, &self.current) {
                    continue;
                }
                return Some(Ok(self.current.clone()));
            }
            let ok = match top.state {
                FrameState::Fresh => {
                    top.state = FrameState::Excluded;
                    self.push(idx + 1)
                }
                FrameState::Excluded => {
                    let e = self.edges[idx];
                    if self.current.is_matched(e.lo()) || self.current.is_matched(e.hi()) {
                        self.stack.pop();
                        true
                    } else {
                        top.state = FrameState::Included;
                        self.current.insert(e).expect("endpoints checked free");
                        self.push(idx + 1)
                    }
                }
                FrameState::Included => {
                    self.current.remove(self.edges[idx]);
                    self.stack.pop();
                    true
                }
            };
            if !ok {
                self.failed = true;
                return Some(Err(Error::BudgetExceeded { budget: self.budget.unwrap_or(0) }));
            }
        }
    }
}
