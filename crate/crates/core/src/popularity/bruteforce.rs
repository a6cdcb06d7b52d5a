//! Popularity straight from the vote definition: compare a matching against
//! every other matching of the instance. Desk scale only.

use serde::Serialize;

use crate::error::Result;
use crate::roommates::{enumerate_matchings, is_maximal, EnumerationMode, Matching, PreferenceInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum BruteVerdict {
    Popular,
    /// `better` is the first matching in enumeration order with the largest
    /// margin over the checked matching.
    NotPopular { better: Matching, margin: i64 },
}

impl BruteVerdict {
    pub fn is_popular(&self) -> bool {
        matches!(self, BruteVerdict::Popular)
    }
}

/// All matchings of an instance together with every vertex's rank under
/// each, so repeated popularity checks cost `O(K n)` apiece.
pub struct BruteForceOracle<'a> {
    inst: &'a PreferenceInstance,
    matchings: Vec<Matching>,
    ranks: Vec<Vec<usize>>,
}

impl<'a> BruteForceOracle<'a> {
    pub fn new(inst: &'a PreferenceInstance, budget: Option<u64>) -> Result<Self> {
        let matchings = enumerate_matchings(inst, EnumerationMode::All, budget).collect::<Result<Vec<_>>>()?;
        let ranks = matchings.iter().map(|m| rank_vector(inst, m)).collect();
        Ok(BruteForceOracle { inst, matchings, ranks })
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn check(&self, m: &Matching) -> BruteVerdict {
        let mine = rank_vector(self.inst, m);
        let mut best: Option<(usize, i64)> = None;
        for (idx, other) in self.ranks.iter().enumerate() {
            let margin: i64 = other
                .iter()
                .zip(&mine)
                .map(|(o, r)| match o.cmp(r) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Greater => -1,
                    std::cmp::Ordering::Equal => 0,
                })
                .sum();
            if margin > 0 && best.is_none_or(|(_, b)| margin > b) {
                best = Some((idx, margin));
            }
        }
        match best {
            None => BruteVerdict::Popular,
            Some((idx, margin)) => BruteVerdict::NotPopular { better: self.matchings[idx].clone(), margin },
        }
    }

    /// First popular matching in enumeration order.
    pub fn first_popular(&self) -> Option<&Matching> {
        // Popular matchings are maximal; skipping the rest only saves time.
        self.matchings
            .iter()
            .filter(|m| is_maximal(self.inst, m))
            .find(|m| self.check(m).is_popular())
    }
}

fn rank_vector(inst: &PreferenceInstance, m: &Matching) -> Vec<usize> {
    inst.vertices().map(|v| inst.status_rank(v, m)).collect()
}

pub fn is_popular_bruteforce(inst: &PreferenceInstance, m: &Matching, budget: Option<u64>) -> Result<BruteVerdict> {
    m.validate(inst)?;
    Ok(BruteForceOracle::new(inst, budget)?.check(m))
}

pub fn solve_bruteforce(inst: &PreferenceInstance, budget: Option<u64>) -> Result<Option<Matching>> {
    Ok(BruteForceOracle::new(inst, budget)?.first_popular().cloned())
}
