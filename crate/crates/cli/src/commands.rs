use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use popmatch::gadgets::{extract_cover, forward_matching, improve, reduce_pvc_to_pm, size_formulas, HInstance};
use popmatch::popularity::{apply_witness, BruteForceOracle, BruteVerdict, Detector};
use popmatch::pvc::{is_solution, sat_to_pvc, solve_pvc_bruteforce};
use popmatch::roommates::{enumerate_matchings, EnumerationMode, Matching, PreferenceInstance};

use crate::error::{exit, CliError, CliResult};
use crate::formats::{
    parse_cover, parse_dimacs, parse_gadget_map, parse_instance, parse_matching, parse_pvc, write_gadget_map,
    write_instance, write_literal_map, write_matching, write_pvc,
};
use crate::fuzz::{characterization, run_fuzz, FuzzConfig};
use crate::report::{
    BruteForceResult, CharacterizationResult, ImprovementReport, InstanceStats, Popularity, PvcStats, RunReport,
};

#[derive(Debug, Parser)]
#[command(name = "popmatch", version, about = "Popular matchings in the roommates setting")]
pub struct Cli {
    /// Node budget for the exact searches; exceeding it exits with status 3.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Characterization,
    Bruteforce,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a DIMACS 3-CNF formula to Partitioned Vertex Cover.
    Sat2pvc {
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Literal and occurrence vertex map.
        #[arg(long)]
        map: PathBuf,
    },
    /// Reduce a PVC instance to a roommates instance.
    Pvc2pm {
        pvc: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Gadget vertex map.
        #[arg(long)]
        map: PathBuf,
    },
    /// Decide whether a matching is popular.
    Verify {
        instance: PathBuf,
        matching: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Characterization)]
        mode: Mode,
    },
    /// Find the first popular matching in enumeration order.
    Solve { instance: PathBuf },
    /// Find the first PVC solution in candidate order.
    SolvePvc { pvc: PathBuf },
    /// Build the popular matching of the reduced instance from a solution.
    Forward {
        pvc: PathBuf,
        cover: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read the selected vertex set off a matching of a reduced instance.
    Extract { instance: PathBuf, matching: PathBuf, map: PathBuf },
    /// Apply the first applicable improvement rule.
    Improve {
        instance: PathBuf,
        matching: PathBuf,
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the detector against brute force on random instances.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value = "fuzz-repro")]
        repro_dir: PathBuf,
        /// Check instances one at a time instead of in parallel.
        #[arg(long)]
        serial: bool,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn label(path: &Path) -> String {
    path.display().to_string()
}

fn write(report: &mut RunReport, path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    report.written.push(label(path));
    Ok(())
}

fn load_instance(path: &Path) -> CliResult<PreferenceInstance> {
    parse_instance(&label(path), &read(path)?)
}

fn load_matching(path: &Path, inst: &PreferenceInstance) -> CliResult<Matching> {
    parse_matching(&label(path), &read(path)?, inst)
}

fn load_reduction(instance: &Path, map: &Path) -> CliResult<HInstance> {
    let inst = load_instance(instance)?;
    let map = parse_gadget_map(&label(map), &read(map)?)?;
    Ok(HInstance::from_parts(inst, map)?)
}

fn popularity(popular: bool) -> Popularity {
    if popular {
        Popularity::Popular
    } else {
        Popularity::NotPopular
    }
}

fn verdict_code(good: bool) -> u8 {
    if good {
        exit::SUCCESS
    } else {
        exit::NEGATIVE
    }
}

/// Runs a parsed command. Returns the report and exit status; failures are
/// folded into the report so the caller always has something to print.
pub fn run(cli: &Cli, argv: Vec<String>) -> (RunReport, u8) {
    let start = Instant::now();
    let mut report = RunReport::new(argv);
    let code = match dispatch(cli, &mut report) {
        Ok(code) => code,
        Err(e) => {
            report.error = Some(e.to_string());
            e.exit_code()
        }
    };
    report.exit_code = Some(code);
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    (report, code)
}

fn dispatch(cli: &Cli, report: &mut RunReport) -> CliResult<u8> {
    let budget = cli.budget;
    match &cli.command {
        Command::Sat2pvc { cnf, out, map } => {
            let formula = parse_dimacs(&label(cnf), &read(cnf)?)?;
            let (pvc, lits) = sat_to_pvc(&formula);
            report.pvc = Some(PvcStats::from(&pvc));
            write(report, out, &write_pvc(&pvc))?;
            write(report, map, &write_literal_map(&lits))?;
            Ok(exit::SUCCESS)
        }
        Command::Pvc2pm { pvc, out, map } => {
            let pvc = parse_pvc(&label(pvc), &read(pvc)?)?;
            let h = reduce_pvc_to_pm(&pvc);
            report.pvc = Some(PvcStats::from(&pvc));
            report.instance = Some(InstanceStats::from(&h.instance));
            report.sizes = Some(size_formulas(&h));
            write(report, out, &write_instance(&h.instance))?;
            write(report, map, &write_gadget_map(&h.map))?;
            Ok(exit::SUCCESS)
        }
        Command::Verify { instance, matching, mode } => {
            let inst = load_instance(instance)?;
            let m = load_matching(matching, &inst)?;
            report.instance = Some(InstanceStats::from(&inst));
            let mut verdicts = Vec::new();
            if matches!(mode, Mode::Characterization | Mode::Both) {
                let outcome = Detector::with_budget(budget).search(&inst, &m)?;
                let improved = match &outcome.witness {
                    Some(w) => Some(apply_witness(&inst, &m, w)?.edges()),
                    None => None,
                };
                verdicts.push(outcome.witness.is_none());
                report.characterization = Some(CharacterizationResult {
                    verdict: popularity(outcome.witness.is_none()),
                    witness: outcome.witness,
                    improved,
                    search_nodes: outcome.nodes,
                });
            }
            if matches!(mode, Mode::Bruteforce | Mode::Both) {
                let oracle = BruteForceOracle::new(&inst, budget)?;
                let (better, margin) = match oracle.check(&m) {
                    BruteVerdict::Popular => (None, None),
                    BruteVerdict::NotPopular { better, margin } => (Some(better.edges()), Some(margin)),
                };
                verdicts.push(better.is_none());
                report.bruteforce = Some(BruteForceResult {
                    verdict: popularity(better.is_none()),
                    better,
                    margin,
                    matchings_enumerated: oracle.matchings().len(),
                });
            }
            if verdicts.windows(2).any(|w| w[0] != w[1]) {
                return Err(CliError::Disagreement(format!("on {}", label(matching))));
            }
            Ok(verdict_code(verdicts[0]))
        }
        Command::Solve { instance } => {
            let inst = load_instance(instance)?;
            report.instance = Some(InstanceStats::from(&inst));
            let detector = Detector::with_budget(budget);
            let mut found = None;
            for m in enumerate_matchings(&inst, EnumerationMode::Maximal, budget) {
                let m = m?;
                if detector.find(&inst, &m)?.is_none() {
                    found = Some(m);
                    break;
                }
            }
            report.matching = Some(found.as_ref().map(Matching::edges));
            Ok(verdict_code(found.is_some()))
        }
        Command::SolvePvc { pvc } => {
            let pvc = parse_pvc(&label(pvc), &read(pvc)?)?;
            report.pvc = Some(PvcStats::from(&pvc));
            let cover = solve_pvc_bruteforce(&pvc);
            report.cover = Some(cover.as_ref().map(|u| u.iter().collect()));
            Ok(verdict_code(cover.is_some()))
        }
        Command::Forward { pvc, cover, out } => {
            let pvc = parse_pvc(&label(pvc), &read(pvc)?)?;
            let u = parse_cover(&label(cover), &read(cover)?)?;
            let h = reduce_pvc_to_pm(&pvc);
            let m = forward_matching(&h, &u)?;
            report.pvc = Some(PvcStats::from(&pvc));
            report.instance = Some(InstanceStats::from(&h.instance));
            report.matching = Some(Some(m.edges()));
            if let Some(out) = out {
                write(report, out, &write_matching(&m))?;
            }
            Ok(exit::SUCCESS)
        }
        Command::Extract { instance, matching, map } => {
            let h = load_reduction(instance, map)?;
            let m = load_matching(matching, &h.instance)?;
            let u = extract_cover(&h, &m);
            let ok = is_solution(&h.source, &u);
            report.instance = Some(InstanceStats::from(&h.instance));
            report.cover = Some(Some(u.iter().collect()));
            report.is_solution = Some(ok);
            Ok(verdict_code(ok))
        }
        Command::Improve { instance, matching, map, out } => {
            let h = load_reduction(instance, map)?;
            let m = load_matching(matching, &h.instance)?;
            report.instance = Some(InstanceStats::from(&h.instance));
            let step = improve(&h, &m)?;
            report.improvement = Some(
                step.as_ref().map(|s| ImprovementReport::new(&s.rule, s.delta, s.matching.edges())),
            );
            if let (Some(step), Some(out)) = (&step, out) {
                write(report, out, &write_matching(&step.matching))?;
            }
            Ok(verdict_code(step.is_some()))
        }
        Command::Fuzz { seed, count, max_n, repro_dir, serial } => {
            let cfg = FuzzConfig {
                seed: *seed,
                count: *count,
                max_n: *max_n,
                repro_dir: repro_dir.clone(),
                parallel: !serial,
            };
            let summary = run_fuzz(&cfg, &characterization(budget))?;
            let diverged = summary.divergence.as_ref().map(|d| PathBuf::from(&d.instance_file));
            report.fuzz = Some(summary);
            match diverged {
                Some(path) => Err(CliError::Divergence { path }),
                None => Ok(exit::SUCCESS),
            }
        }
    }
}
