//! Differential fuzzing: random instances, every matching checked by both
//! the characterization detector and brute force.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use popmatch::generate::random_instance;
use popmatch::popularity::{is_popular_bruteforce, BruteForceOracle, Detector};
use popmatch::roommates::{Edge, Matching, PreferenceInstance};

use crate::error::{CliError, CliResult};
use crate::formats::{write_instance, write_matching};
use crate::report::{DivergenceReport, FuzzSummary};

/// Popularity verdict under test: `Ok(true)` for popular.
pub type Checker = dyn Fn(&PreferenceInstance, &Matching) -> popmatch::Result<bool> + Sync;

pub fn characterization(budget: Option<u64>) -> impl Fn(&PreferenceInstance, &Matching) -> popmatch::Result<bool> + Sync {
    move |inst, m| Ok(Detector::with_budget(budget).find(inst, m)?.is_none())
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub max_n: usize,
    pub repro_dir: PathBuf,
    pub parallel: bool,
}

struct Disagreement {
    index: usize,
    inst: PreferenceInstance,
    matching: Matching,
    checker_popular: bool,
}

enum Outcome {
    Agreed(u64),
    Diverged(Disagreement),
}

/// Instance `k` depends only on the seed and `k`, so parallel and serial
/// runs see the same instances and report the same first divergence.
fn instance_seeds(cfg: &FuzzConfig) -> Vec<(usize, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let max_n = cfg.max_n.max(1);
    (0..cfg.count).map(|_| (rng.gen_range(1..=max_n), rng.gen())).collect()
}

fn check_instance(index: usize, n: usize, seed: u64, checker: &Checker) -> popmatch::Result<Outcome> {
    let inst = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.5);
    let oracle = BruteForceOracle::new(&inst, None)?;
    for m in oracle.matchings() {
        let expected = oracle.check(m).is_popular();
        let got = checker(&inst, m)?;
        if got != expected {
            return Ok(Outcome::Diverged(Disagreement { index, inst: inst.clone(), matching: m.clone(), checker_popular: got }));
        }
    }
    Ok(Outcome::Agreed(oracle.matchings().len() as u64))
}

fn disagrees(inst: &PreferenceInstance, m: &Matching, checker: &Checker) -> bool {
    match (checker(inst, m), is_popular_bruteforce(inst, m, None)) {
        (Ok(got), Ok(expected)) => got != expected.is_popular(),
        _ => false,
    }
}

/// Greedily deletes edges while the disagreement persists. Matched edges
/// leave the matching along with the instance.
fn minimize(mut inst: PreferenceInstance, mut m: Matching, checker: &Checker) -> (PreferenceInstance, Matching) {
    loop {
        let mut shrunk = false;
        for e in inst.edges() {
            let smaller = inst.without_edge(e);
            let kept: Vec<Edge> = m.edges().into_iter().filter(|&f| f != e).collect();
            let sub = Matching::from_edges(&smaller, kept).expect("remaining edges still form a matching");
            if disagrees(&smaller, &sub, checker) {
                inst = smaller;
                m = sub;
                shrunk = true;
                break;
            }
        }
        if !shrunk {
            return (inst, m);
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn run_fuzz(cfg: &FuzzConfig, checker: &Checker) -> CliResult<FuzzSummary> {
    let seeds = instance_seeds(cfg);
    let work = |&(k, &(n, s)): &(usize, &(usize, u64))| check_instance(k, n, s, checker);
    let indexed: Vec<(usize, &(usize, u64))> = seeds.iter().enumerate().collect();
    let outcomes: Vec<popmatch::Result<Outcome>> = if cfg.parallel {
        indexed.par_iter().map(work).collect()
    } else {
        indexed.iter().map(work).collect()
    };

    let mut summary = FuzzSummary {
        seed: cfg.seed,
        count: cfg.count,
        max_n: cfg.max_n,
        instances_checked: 0,
        matchings_checked: 0,
        divergence: None,
    };
    for outcome in outcomes {
        summary.instances_checked += 1;
        match outcome? {
            Outcome::Agreed(k) => summary.matchings_checked += k,
            Outcome::Diverged(d) => {
                summary.matchings_checked += 1;
                summary.divergence = Some(record(cfg, d, checker)?);
                break;
            }
        }
    }
    Ok(summary)
}

fn record(cfg: &FuzzConfig, d: Disagreement, checker: &Checker) -> CliResult<DivergenceReport> {
    let (inst, m) = minimize(d.inst, d.matching, checker);
    let checker_popular = checker(&inst, &m).unwrap_or(d.checker_popular);
    fs::create_dir_all(&cfg.repro_dir).map_err(|source| CliError::Io { path: cfg.repro_dir.clone(), source })?;
    let stem = format!("fuzz-{}-{}", cfg.seed, d.index);
    let inst_path = cfg.repro_dir.join(format!("{stem}.inst"));
    let match_path = cfg.repro_dir.join(format!("{stem}.match"));
    write_file(&inst_path, &write_instance(&inst))?;
    write_file(&match_path, &write_matching(&m))?;
    Ok(DivergenceReport {
        instance_index: d.index,
        vertices: inst.num_vertices(),
        edges: inst.num_edges(),
        matching: m.edges(),
        characterization_popular: checker_popular,
        bruteforce_popular: !checker_popular,
        instance_file: inst_path.display().to_string(),
        matching_file: match_path.display().to_string(),
    })
}
