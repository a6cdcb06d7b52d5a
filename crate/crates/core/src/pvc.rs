//! Partitioned Vertex Cover: a vertex cover problem where the vertex set is
//! split into pairs (edges) and triples (triangles), and a solution takes
//! exactly one vertex of every pair and two of every triple.
//!
//! Also hosts the classic 3-SAT reduction: one pair `{v_x, v_not_x}` per
//! variable, one triangle of occurrence vertices per clause, and a connector
//! from every occurrence to its literal's vertex.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roommates::{Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PvcInstance {
    n: usize,
    edges: BTreeSet<Edge>,
    pairs: Vec<[Vertex; 2]>,
    triples: Vec<[Vertex; 3]>,
}

/// Validates a PVC instance. Pairs and triples are normalized to ascending
/// vertex order and kept in the order given.
pub fn validate_pvc(
    n: usize,
    edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    pairs: impl IntoIterator<Item = [Vertex; 2]>,
    triples: impl IntoIterator<Item = [Vertex; 3]>,
) -> Result<PvcInstance> {
    let mut edge_set = BTreeSet::new();
    for (u, v) in edges {
        if u == v || u == 0 || v == 0 || u > n || v > n {
            return Err(Error::InvalidGraphEdge { u, v });
        }
        edge_set.insert(Edge::new(u, v));
    }
    let mut owner = vec![false; n + 1];
    let mut claim = |v: Vertex| -> Result<()> {
        if v == 0 || v > n {
            return Err(Error::NotPartition { vertex: v });
        }
        if std::mem::replace(&mut owner[v], true) {
            return Err(Error::Overlap { vertex: v });
        }
        Ok(())
    };

    let mut pair_list = Vec::new();
    for mut p in pairs {
        p.sort_unstable();
        if p[0] == p[1] {
            return Err(Error::Overlap { vertex: p[0] });
        }
        if !edge_set.contains(&Edge::new(p[0], p[1])) {
            return Err(Error::PairNotEdge { u: p[0], v: p[1] });
        }
        p.iter().try_for_each(|&v| claim(v))?;
        pair_list.push(p);
    }
    let mut triple_list = Vec::new();
    for mut t in triples {
        t.sort_unstable();
        let triangle = t[0] != t[1]
            && t[1] != t[2]
            && [(0, 1), (1, 2), (0, 2)].iter().all(|&(a, b)| edge_set.contains(&Edge::new(t[a], t[b])));
        if !triangle {
            return Err(Error::TripleNotTriangle(t));
        }
        t.iter().try_for_each(|&v| claim(v))?;
        triple_list.push(t);
    }
    if let Some(v) = (1..=n).find(|&v| !owner[v]) {
        return Err(Error::NotPartition { vertex: v });
    }
    Ok(PvcInstance { n, edges: edge_set, pairs: pair_list, triples: triple_list })
}

impl PvcInstance {
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&Edge::new(u, v))
    }

    pub fn pairs(&self) -> &[[Vertex; 2]] {
        &self.pairs
    }

    pub fn triples(&self) -> &[[Vertex; 3]] {
        &self.triples
    }

    /// Graph neighbors of `i`, ascending.
    pub fn neighbors(&self, i: Vertex) -> Vec<Vertex> {
        self.edges.iter().filter(|e| e.contains(i)).map(|e| e.other(i)).collect()
    }

    /// Size every solution has: one per pair, two per triple.
    pub fn solution_size(&self) -> usize {
        self.pairs.len() + 2 * self.triples.len()
    }
}

/// Selected vertex set `U`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoverSet(pub BTreeSet<Vertex>);

impl CoverSet {
    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Vertex> for CoverSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        CoverSet(iter.into_iter().collect())
    }
}

/// Why `u` fails to be a solution, or `None` when it is one.
pub fn solution_violation(pvc: &PvcInstance, u: &CoverSet) -> Option<String> {
    if let Some(v) = u.iter().find(|&v| v == 0 || v > pvc.n) {
        return Some(format!("vertex {v} is not in the graph"));
    }
    if let Some(e) = pvc.edges().find(|e| !u.contains(e.lo()) && !u.contains(e.hi())) {
        return Some(format!("edge {e} is uncovered"));
    }
    for p in &pvc.pairs {
        let k = p.iter().filter(|&&v| u.contains(v)).count();
        if k != 1 {
            return Some(format!("pair {p:?} has {k} selected vertices"));
        }
    }
    for t in &pvc.triples {
        let k = t.iter().filter(|&&v| u.contains(v)).count();
        if k != 2 {
            return Some(format!("triple {t:?} has {k} selected vertices"));
        }
    }
    None
}

pub fn is_solution(pvc: &PvcInstance, u: &CoverSet) -> bool {
    solution_violation(pvc, u).is_none()
}

/// All one-per-pair, two-per-triple selections in odometer order: pairs
/// before triples, earlier groups most significant; a pair picks its lower
/// vertex first, a triple drops its highest vertex first.
pub fn candidate_selections(pvc: &PvcInstance) -> impl Iterator<Item = CoverSet> + '_ {
    let mut choices: Vec<Vec<Vec<Vertex>>> = Vec::new();
    for p in &pvc.pairs {
        choices.push(vec![vec![p[0]], vec![p[1]]]);
    }
    for t in &pvc.triples {
        choices.push(vec![vec![t[0], t[1]], vec![t[0], t[2]], vec![t[1], t[2]]]);
    }
    let total: usize = choices.iter().map(Vec::len).product();
    (0..total).map(move |mut code| {
        let mut picked = vec![0; choices.len()];
        for (g, opts) in choices.iter().enumerate().rev() {
            picked[g] = code % opts.len();
            code /= opts.len();
        }
        picked.iter().zip(&choices).flat_map(|(&c, opts)| opts[c].iter().copied()).collect()
    })
}

pub fn solve_pvc_bruteforce(pvc: &PvcInstance) -> Option<CoverSet> {
    candidate_selections(pvc).find(|u| is_solution(pvc, u))
}

/// Every solution, in candidate order.
pub fn all_pvc_solutions(pvc: &PvcInstance) -> Vec<CoverSet> {
    candidate_selections(pvc).filter(|u| is_solution(pvc, u)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// DIMACS encoding: `var` or `-var`.
    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 {
            return None;
        }
        Some(Literal { var: x.unsigned_abs() as usize, negated: x < 0 })
    }

    pub fn holds(self, a: &Assignment) -> bool {
        a.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// 3-CNF formula. A clause is three literal occurrences; repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for lit in clauses.iter().flatten() {
            if lit.var == 0 || lit.var > num_vars {
                return Err(Error::VariableOutOfRange { var: lit.var, num_vars });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Index of the first clause `a` falsifies.
    pub fn first_unsatisfied(&self, a: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.iter().any(|l| l.holds(a)))
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.first_unsatisfied(a).is_none()
    }

    /// First satisfying assignment, trying all `2^n` in binary order.
    pub fn brute_force_sat(&self) -> Option<Assignment> {
        all_assignments(self.num_vars).find(|a| self.is_satisfied_by(a))
    }
}

/// All assignments over `n` variables; variable 1 is the most significant bit
/// and `false` comes first.
pub fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0u64..1 << n).map(move |bits| Assignment((0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect()))
}

/// Total truth assignment; `values[x - 1]` is the value of variable `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: usize) -> bool {
        self.0[var - 1]
    }
}

/// Where the 3-SAT reduction put each literal and clause occurrence.
///
/// Variable vertices come first (`v_x1, v_not_x1, v_x2, ...`), then the
/// occurrence vertices clause by clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralMap {
    num_vars: usize,
    occurrences: Vec<[Literal; 3]>,
}

impl LiteralMap {
    pub fn new(num_vars: usize, occurrences: Vec<[Literal; 3]>) -> Self {
        LiteralMap { num_vars, occurrences }
    }

    pub fn literal_vertex(&self, lit: Literal) -> Vertex {
        2 * (lit.var - 1) + 1 + usize::from(lit.negated)
    }

    /// `clause` and `pos` are 0-based.
    pub fn occurrence_vertex(&self, clause: usize, pos: usize) -> Vertex {
        2 * self.num_vars + 3 * clause + pos + 1
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `(clause, pos, literal, vertex)` for every occurrence, 0-based indices.
    pub fn occurrences(&self) -> impl Iterator<Item = (usize, usize, Literal, Vertex)> + '_ {
        self.occurrences.iter().enumerate().flat_map(move |(c, lits)| {
            lits.iter().enumerate().map(move |(p, &l)| (c, p, l, self.occurrence_vertex(c, p)))
        })
    }

    /// `(literal, vertex)` for every literal vertex, in vertex order.
    pub fn literals(&self) -> impl Iterator<Item = (Literal, Vertex)> + '_ {
        (1..=self.num_vars).flat_map(move |x| {
            [Literal::pos(x), Literal::neg(x)].into_iter().map(move |l| (l, self.literal_vertex(l)))
        })
    }
}

pub fn sat_to_pvc(cnf: &CnfFormula) -> (PvcInstance, LiteralMap) {
    let map = LiteralMap { num_vars: cnf.num_vars, occurrences: cnf.clauses.clone() };
    let n = 2 * cnf.num_vars + 3 * cnf.clauses.len();
    let mut edges = Vec::new();
    let mut pairs = Vec::new();
    let mut triples = Vec::new();
    for x in 1..=cnf.num_vars {
        let (p, q) = (map.literal_vertex(Literal::pos(x)), map.literal_vertex(Literal::neg(x)));
        edges.push((p, q));
        pairs.push([p, q]);
    }
    for (c, clause) in cnf.clauses.iter().enumerate() {
        let occ = [0, 1, 2].map(|p| map.occurrence_vertex(c, p));
        edges.extend([(occ[0], occ[1]), (occ[1], occ[2]), (occ[2], occ[0])]);
        triples.push(occ);
        for (p, &lit) in clause.iter().enumerate() {
            edges.push((occ[p], map.literal_vertex(lit)));
        }
    }
    let pvc = validate_pvc(n, edges, pairs, triples).expect("reduction output is a valid partition");
    (pvc, map)
}

/// Literal vertices of true literals, plus for each clause every occurrence
/// except its first satisfied one.
pub fn assignment_to_solution(cnf: &CnfFormula, a: &Assignment) -> Result<CoverSet> {
    if a.0.len() != cnf.num_vars {
        return Err(Error::AssignmentArity { expected: cnf.num_vars, found: a.0.len() });
    }
    if let Some(clause) = cnf.first_unsatisfied(a) {
        return Err(Error::Unsatisfied { clause });
    }
    let (_, map) = sat_to_pvc(cnf);
    let mut u: BTreeSet<Vertex> = BTreeSet::new();
    for x in 1..=cnf.num_vars {
        u.insert(map.literal_vertex(if a.value(x) { Literal::pos(x) } else { Literal::neg(x) }));
    }
    for (c, clause) in cnf.clauses.iter().enumerate() {
        let keep_out = clause.iter().position(|l| l.holds(a)).expect("clause is satisfied");
        u.extend((0..3).filter(|&p| p != keep_out).map(|p| map.occurrence_vertex(c, p)));
    }
    Ok(CoverSet(u))
}

/// Reads a truth assignment off a solution: `x` is true iff `v_x` is selected.
pub fn solution_to_assignment(cnf: &CnfFormula, u: &CoverSet) -> Result<Assignment> {
    let (pvc, map) = sat_to_pvc(cnf);
    if let Some(reason) = solution_violation(&pvc, u) {
        return Err(Error::NotASolution { reason });
    }
    let a = Assignment((1..=cnf.num_vars).map(|x| u.contains(map.literal_vertex(Literal::pos(x)))).collect());
    debug_assert!(cnf.is_satisfied_by(&a));
    Ok(a)
}

/// Distinct literal occurrences per clause; convenience for callers that
/// want set semantics.
pub fn distinct_literals(clause: &[Literal; 3]) -> usize {
    clause.iter().collect::<HashSet<_>>().len()
}
