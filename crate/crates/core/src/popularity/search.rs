//! Exact backtracking search for forbidden alternating structures.
//!
//! Every simple alternating path or cycle of the marked graph is reachable
//! from one of its endpoints (paths) or its smallest vertex (cycles), so the
//! search tries each start in turn and stops at the first hit. Worst case is
//! exponential; the node budget turns runaway searches into an explicit
//! error instead of a silent "popular".

use crate::error::{Error, Result};
use crate::roommates::{Matching, PreferenceInstance, Vertex};

use super::{EdgeLabel, MarkedGraph, Verdict, Witness, WitnessKind};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Detector {
    pub budget: Option<u64>,
}

impl Default for Detector {
    fn default() -> Self {
        Detector { budget: Some(DEFAULT_BUDGET) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    /// Search nodes expanded.
    pub nodes: u64,
}

impl Detector {
    pub fn with_budget(budget: Option<u64>) -> Self {
        Detector { budget }
    }

    pub fn search(&self, inst: &PreferenceInstance, m: &Matching) -> Result<SearchOutcome> {
        m.validate(inst)?;
        let g = MarkedGraph::build(inst, m);
        let mut s = Search {
            g: &g,
            m,
            budget: self.budget,
            nodes: 0,
            visited: vec![false; inst.num_vertices() + 1],
            path: Vec::new(),
        };
        let witness = s.run()?;
        Ok(SearchOutcome { witness, nodes: s.nodes })
    }

    pub fn find(&self, inst: &PreferenceInstance, m: &Matching) -> Result<Option<Witness>> {
        self.search(inst, m).map(|o| o.witness)
    }

    pub fn verdict(&self, inst: &PreferenceInstance, m: &Matching) -> Result<Verdict> {
        Ok(match self.find(inst, m)? {
            None => Verdict::Popular,
            Some(w) => Verdict::NotPopular(w),
        })
    }
}

struct Search<'g, 'a> {
    g: &'g MarkedGraph<'a>,
    m: &'a Matching,
    budget: Option<u64>,
    nodes: u64,
    visited: Vec<bool>,
    path: Vec<Vertex>,
}

impl Search<'_, '_> {
    fn run(&mut self) -> Result<Option<Witness>> {
        let n = self.g.instance().num_vertices();
        for s in 1..=n {
            if !self.m.is_matched(s) {
                if let Some(p) = self.path_from(s, 1)? {
                    return Ok(Some(Witness::canonical(self.g, WitnessKind::PathFromUnmatchedWithPlus, p)));
                }
            }
        }
        for s in 1..=n {
            if let Some(c) = self.cycle_from(s)? {
                return Ok(Some(Witness::canonical(self.g, WitnessKind::CycleWithPlus, c)));
            }
        }
        for s in 1..=n {
            if self.m.is_matched(s) {
                if let Some(p) = self.path_from(s, 2)? {
                    return Ok(Some(Witness::canonical(self.g, WitnessKind::PathWithTwoPlus, p)));
                }
            }
        }
        Ok(None)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(Error::BudgetExceeded { budget: b }),
            _ => Ok(()),
        }
    }

    fn enter(&mut self, v: Vertex) {
        self.visited[v] = true;
        self.path.push(v);
    }

    fn leave(&mut self) {
        if let Some(v) = self.path.pop() {
            self.visited[v] = false;
        }
    }

    fn unwind(&mut self) {
        while !self.path.is_empty() {
            self.leave();
        }
    }

    /// Paths starting at `s` that collect `threshold` plus edges. A matched
    /// start must leave through its matching edge.
    fn path_from(&mut self, s: Vertex, threshold: usize) -> Result<Option<Vec<Vertex>>> {
        self.tick()?;
        self.enter(s);
        let tip = match self.m.partner(s) {
            Some(p) => {
                self.enter(p);
                p
            }
            None => s,
        };
        let found = self.extend_path(tip, 0, threshold);
        self.unwind();
        found
    }

    /// `x` is the current tip and the next edge must be a non-matching one.
    fn extend_path(&mut self, x: Vertex, plus: usize, threshold: usize) -> Result<Option<Vec<Vertex>>> {
        let g = self.g;
        for &(y, label) in g.non_matching_neighbors(x) {
            if self.visited[y] {
                continue;
            }
            self.tick()?;
            let plus = (plus + usize::from(label == EdgeLabel::Plus2)).min(2);
            let partner = self.m.partner(y);
            if plus >= threshold {
                let mut p = self.path.clone();
                p.push(y);
                // The partner of an unvisited vertex is unvisited: matched
                // vertices enter the path together with their partner.
                if let Some(z) = partner {
                    p.push(z);
                }
                return Ok(Some(p));
            }
            let Some(z) = partner else { continue };
            if self.visited[z] {
                continue;
            }
            self.enter(y);
            self.enter(z);
            let found = self.extend_path(z, plus, threshold)?;
            self.leave();
            self.leave();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Alternating cycles whose smallest vertex is `s`, entered through the
    /// matching edge at `s`.
    fn cycle_from(&mut self, s: Vertex) -> Result<Option<Vec<Vertex>>> {
        let Some(p) = self.m.partner(s) else { return Ok(None) };
        if p < s {
            return Ok(None);
        }
        self.tick()?;
        self.enter(s);
        self.enter(p);
        let found = self.extend_cycle(s, p, 0);
        self.unwind();
        found
    }

    fn extend_cycle(&mut self, s: Vertex, x: Vertex, plus: usize) -> Result<Option<Vec<Vertex>>> {
        let g = self.g;
        for &(y, label) in g.non_matching_neighbors(x) {
            let plus = (plus + usize::from(label == EdgeLabel::Plus2)).min(2);
            if y == s {
                self.tick()?;
                if plus >= 1 {
                    return Ok(Some(self.path.clone()));
                }
                continue;
            }
            if y < s || self.visited[y] {
                continue;
            }
            let Some(z) = self.m.partner(y) else { continue };
            if z < s || self.visited[z] {
                continue;
            }
            self.tick()?;
            self.enter(y);
            self.enter(z);
            let found = self.extend_cycle(s, z, plus)?;
            self.leave();
            self.leave();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}
