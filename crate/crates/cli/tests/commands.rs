use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use popmatch::popularity::is_popular_bruteforce;
use popmatch_cli::formats::{parse_instance, parse_matching};
use popmatch_cli::fuzz::{characterization, run_fuzz, FuzzConfig};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn popmatch(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_popmatch")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exited"), json, stdout)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pair_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (inst, map, fwd) = (dir.path().join("h.inst"), dir.path().join("h.map"), dir.path().join("f.match"));

    let (code, report, _) = popmatch(&["pvc2pm", s(&data("pair1.pvc")), "--out", s(&inst), "--map", s(&map)]);
    assert_eq!(code, 0);
    assert_eq!(report["instance"]["vertices"], 12);
    assert_eq!(report["sizes"]["expected_edges"], 17);

    let (code, _, _) = popmatch(&["forward", s(&data("pair1.pvc")), s(&data("pair1.cover")), "--out", s(&fwd)]);
    assert_eq!(code, 0);
    // {a_1,d_1} {b_1,c_1} {a_2,b_2} {c_2,f_12} {d_2,f_21} {u^e_1,u^e_2}
    assert_eq!(fs::read_to_string(&fwd).unwrap(), "1 4\n2 3\n5 6\n7 11\n8 12\n9 10\n");

    let (code, report, _) = popmatch(&["verify", s(&inst), s(&fwd), "--mode", "both"]);
    assert_eq!(code, 0);
    assert_eq!(report["characterization"]["verdict"], "popular");
    assert_eq!(report["bruteforce"]["verdict"], "popular");

    let (code, report, _) = popmatch(&["extract", s(&inst), s(&fwd), s(&map)]);
    assert_eq!((code, report["cover"].clone()), (0, serde_json::json!([2])));
    assert_eq!(report["is_solution"], true);

    // Both pair vertices selected, {c_1,d_2} matched on the first triangle.
    let both = dir.path().join("both.match");
    fs::write(&both, "1 2\n5 6\n9 10\n3 8\n4 11\n").unwrap();
    let (code, report, _) = popmatch(&["extract", s(&inst), s(&both), s(&map)]);
    assert_eq!((code, report["is_solution"].clone()), (1, Value::Bool(false)));
    let next = dir.path().join("next.match");
    let (code, report, _) = popmatch(&["improve", s(&inst), s(&both), s(&map), "--out", s(&next)]);
    assert_eq!(code, 0);
    assert_eq!(report["improvement"]["rule"], "PairTriangleSwap");
    assert_eq!(report["improvement"]["delta"], 1);
    assert_eq!(fs::read_to_string(&next).unwrap(), "1 2\n3 12\n4 11\n5 6\n9 10\n");

    let (code, report, _) = popmatch(&["improve", s(&inst), s(&fwd), s(&map)]);
    assert_eq!((code, report["improvement"].clone()), (1, Value::Null));
}

#[test]
fn sat_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (pvc, lits) = (dir.path().join("c.pvc"), dir.path().join("c.lits"));
    let (code, report, _) = popmatch(&["sat2pvc", s(&data("cnf1.cnf")), "--out", s(&pvc), "--map", s(&lits)]);
    assert_eq!(code, 0);
    assert_eq!(report["pvc"], serde_json::json!({"vertices": 9, "edges": 9, "pairs": 3, "triples": 1}));

    let (code, report, _) = popmatch(&["solve-pvc", s(&pvc)]);
    assert_eq!(code, 0);
    let cover: Vec<String> = report["cover"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let cover_file = dir.path().join("u.txt");
    fs::write(&cover_file, cover.join("\n")).unwrap();

    let (inst, map, fwd) = (dir.path().join("h.inst"), dir.path().join("h.map"), dir.path().join("f.match"));
    let (code, report, _) = popmatch(&["pvc2pm", s(&pvc), "--out", s(&inst), "--map", s(&map)]);
    assert_eq!((code, report["instance"]["vertices"].clone()), (0, Value::from(60)));
    assert_eq!(popmatch(&["forward", s(&pvc), s(&cover_file), "--out", s(&fwd)]).0, 0);
    let (code, report, _) = popmatch(&["verify", s(&inst), s(&fwd)]);
    assert_eq!((code, report["characterization"]["verdict"].clone()), (0, Value::from("popular")));
    let (code, report, _) = popmatch(&["extract", s(&inst), s(&fwd), s(&map)]);
    assert_eq!(code, 0);
    assert_eq!(report["cover"].to_string(), format!("[{}]", cover.join(",")));

    // A map from a different reduction does not fit this instance.
    let other = dir.path().join("other.map");
    popmatch(&["pvc2pm", s(&data("pair1.pvc")), "--out", s(&dir.path().join("x")), "--map", s(&other)]);
    let (code, report, _) = popmatch(&["extract", s(&inst), s(&fwd), s(&other)]);
    assert_eq!(code, 2);
    assert!(report["error"].as_str().unwrap().contains("gadget map"));
}

#[test]
fn verdicts_and_exit_codes() {
    let (p2, t3) = (data("p2.inst"), data("t3.inst"));
    let (code, report, _) = popmatch(&["verify", s(&p2), s(&data("p2.match")), "--mode", "both"]);
    assert_eq!(code, 0);
    assert_eq!(report["bruteforce"]["verdict"], "popular");

    let (code, report, _) = popmatch(&["verify", s(&t3), s(&data("t3_12.match")), "--mode", "both"]);
    assert_eq!(code, 1);
    assert_eq!(report["characterization"]["witness"]["vertices"], serde_json::json!([3, 2, 1]));
    assert_eq!(report["bruteforce"]["margin"], 1);

    let (code, report, _) = popmatch(&["verify", s(&t3), s(&data("t3_12.match")), "--budget", "1"]);
    assert_eq!(code, 3);
    assert!(report["error"].as_str().unwrap().contains("budget"));

    let (code, report, _) = popmatch(&["solve", s(&t3)]);
    assert_eq!((code, report["matching"].clone()), (1, Value::Null));
    let (code, report, _) = popmatch(&["solve", s(&p2)]);
    assert_eq!((code, report["matching"].clone()), (0, serde_json::json!([[1, 2]])));
    let (code, report, _) = popmatch(&["solve-pvc", s(&data("pvcno.pvc"))]);
    assert_eq!((code, report["cover"].clone()), (1, Value::Null));

    let (code, _, _) = popmatch(&["verify", s(&data("missing.inst")), s(&data("p2.match"))]);
    assert_eq!(code, 2);
    let (code, _, _) = popmatch(&["forward", s(&data("pair1.pvc")), s(&data("p2.match"))]);
    assert_eq!(code, 2);
}

#[test]
fn fuzz_agrees_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let repro = dir.path().join("r");
    let args = ["fuzz", "--seed", "1", "--count", "100", "--max-n", "6", "--repro-dir", s(&repro)];
    let (code, report, first) = popmatch(&args);
    assert_eq!(code, 0);
    assert_eq!(report["fuzz"]["instances_checked"], 100);
    assert!(report["fuzz"].get("divergence").is_none());
    assert_eq!(popmatch(&args).2, first);
    let mut serial = args.to_vec();
    serial.push("--serial");
    assert_eq!(popmatch(&serial).1["fuzz"], report["fuzz"]);
    assert_eq!(popmatch(&["fuzz", "--max-n", "2", "--repro-dir", s(&repro)]).0, 0);
    assert!(!repro.exists());
}

#[test]
fn fuzz_catches_an_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = FuzzConfig { seed: 5, count: 50, max_n: 6, repro_dir: dir.path().to_path_buf(), parallel: true };
    let honest = characterization(None);
    // Misses every witness that starts at vertex 1.
    let faulty = move |inst: &popmatch::roommates::PreferenceInstance, m: &popmatch::roommates::Matching| {
        let verdict = popmatch::popularity::find_forbidden_structure(inst, m)?;
        Ok(match verdict {
            Some(w) if w.vertices[0] == 1 => true,
            _ => honest(inst, m)?,
        })
    };
    let summary = run_fuzz(&cfg, &faulty).unwrap();
    let d = summary.divergence.expect("fault detected");
    assert!(d.characterization_popular && !d.bruteforce_popular);

    let inst = parse_instance("repro", &fs::read_to_string(&d.instance_file).unwrap()).unwrap();
    let m = parse_matching("repro", &fs::read_to_string(&d.matching_file).unwrap(), &inst).unwrap();
    assert_eq!(inst.num_edges(), d.edges);
    assert!(!is_popular_bruteforce(&inst, &m, None).unwrap().is_popular());
    assert!(faulty(&inst, &m).unwrap());
    // Minimal: dropping any further edge loses the disagreement.
    assert!(d.edges <= 3, "repro has {} edges", d.edges);
}
