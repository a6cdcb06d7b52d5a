use popmatch::gadgets::reduce_pvc_to_pm;
use popmatch::generate::{random_instance, random_maximal_matching, random_pvc};
use popmatch::pvc::{sat_to_pvc, solve_pvc_bruteforce, CnfFormula, Literal};
use popmatch_cli::formats::*;
use popmatch_cli::CliError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn instances_and_matchings_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 0..12 {
        let inst = random_instance(&mut rng, n, 0.5);
        let text = write_instance(&inst);
        let back = parse_instance("x", &text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(write_instance(&back), text);

        let m = random_maximal_matching(&mut rng, &inst);
        let mtext = write_matching(&m);
        assert_eq!(parse_matching("m", &mtext, &inst).unwrap(), m);
    }
}

#[test]
fn reduction_files_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..20 {
        let pvc = random_pvc(&mut rng, k % 3, k % 2, 0.4, k % 2 == 0);
        let text = write_pvc(&pvc);
        assert_eq!(parse_pvc("p", &text).unwrap(), pvc);

        let h = reduce_pvc_to_pm(&pvc);
        let mtext = write_gadget_map(&h.map);
        assert_eq!(parse_gadget_map("g", &mtext).unwrap(), h.map);

        if let Some(u) = solve_pvc_bruteforce(&pvc) {
            assert_eq!(parse_cover("c", &write_cover(&u)).unwrap(), u);
        }
    }
}

#[test]
fn literal_maps_round_trip() {
    let cnf = CnfFormula::new(
        2,
        vec![
            [Literal::pos(1), Literal::neg(2), Literal::pos(1)],
            [Literal::neg(1), Literal::neg(1), Literal::pos(2)],
        ],
    )
    .unwrap();
    let (_, map) = sat_to_pvc(&cnf);
    let text = write_literal_map(&map);
    assert!(text.contains("occ 2 3 2 10\n"));
    assert_eq!(parse_literal_map("l", &text).unwrap(), map);
    let moved = text.replace("lit -1 2", "lit -1 3");
    assert!(matches!(parse_literal_map("l", &moved), Err(CliError::Parse { line: 2, .. })));
}

#[test]
fn comments_and_layout_are_tolerated() {
    let text = "# header next\n3 3   # n m\n\n3: 1 2\n1: 2 3 # first\n2: 3 1\n";
    let inst = parse_instance("t3", text).unwrap();
    assert_eq!(inst.prefs(1), &[2, 3]);
    assert_eq!(write_instance(&inst), "3 3\n1: 2 3\n2: 3 1\n3: 1 2\n");
}

#[test]
fn malformed_inputs_are_rejected() {
    let bad_triple = "3 3\ne 1 2\ne 2 3\ne 1 3\nT 1 2\n";
    assert!(matches!(parse_pvc("p", bad_triple), Err(CliError::Parse { line: 5, .. })));
    assert!(matches!(parse_pvc("p", "2 1\ne 1 2\nQ 1 2\n"), Err(CliError::Parse { line: 3, .. })));
    assert!(matches!(parse_pvc("p", "2 2\ne 1 2\nP 1 2\n"), Err(CliError::Parse { .. })));
    assert!(matches!(
        parse_instance("i", "2 1\n1: 2\n2:\n"),
        Err(CliError::Core(popmatch::Error::AsymmetricAdjacency { .. }))
    ));
    assert!(matches!(parse_instance("i", "2 1\n1: 2\n"), Err(CliError::Parse { .. })));
    assert!(matches!(parse_gadget_map("g", "a_1 1\nz_1 2\n"), Err(CliError::Parse { line: 2, .. })));
    assert!(matches!(parse_gadget_map("g", "a_1 2\n"), Err(CliError::Parse { .. })));
    assert!(matches!(parse_cover("c", "1\n1\n"), Err(CliError::Parse { line: 2, .. })));
}

#[test]
fn dimacs() {
    let cnf = parse_dimacs("f", "c x1 or not x2 or x3\np cnf 3 1\n1 -2\n 3 0\n%\n0\n").unwrap();
    assert_eq!(cnf.clauses(), &[[Literal::pos(1), Literal::neg(2), Literal::pos(3)]]);

    let empty = parse_dimacs("f", "p cnf 1 0\n").unwrap();
    let (pvc, _) = sat_to_pvc(&empty);
    assert_eq!((pvc.num_vertices(), pvc.pairs().len()), (2, 1));

    assert!(matches!(
        parse_dimacs("f", "p cnf 2 1\n1 -2 0\n"),
        Err(CliError::ClauseArity { clause: 1, found: 2 })
    ));
    assert!(matches!(parse_dimacs("f", "p cnf 2 1\n1 -3 2 0\n"), Err(CliError::Parse { line: 2, .. })));
    assert!(matches!(parse_dimacs("f", "1 2 3 0\n"), Err(CliError::Parse { .. })));
    assert!(matches!(parse_dimacs("f", "p cnf 2 2\n1 2 2 0\n"), Err(CliError::Parse { .. })));
}
