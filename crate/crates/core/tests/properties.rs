use std::collections::BTreeSet;

use popmatch::gadgets::{reduce_pvc_to_pm, GadgetName, HInstance};
use popmatch::generate::{random_instance, random_matching, random_pvc};
use popmatch::popularity::{find_forbidden_structure, label_edge, EdgeLabel, MarkedGraph};
use popmatch::pvc::{
    all_pvc_solutions, assignment_to_solution, sat_to_pvc, solution_to_assignment, solve_pvc_bruteforce,
    validate_pvc, CnfFormula, Literal, PvcInstance,
};
use popmatch::roommates::{
    delta, enumerate_matchings, is_maximal, validate_instance, vote, Edge, EnumerationMode, PreferenceInstance,
    Vertex,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance() -> impl Strategy<Value = (PreferenceInstance, u64)> {
    (1usize..8, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_instance(&mut rng, n, 0.5), seed)
    })
}

fn formula() -> impl Strategy<Value = CnfFormula> {
    (1usize..=3).prop_flat_map(|n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(v, neg)| if neg { Literal::neg(v) } else { Literal::pos(v) });
        prop::collection::vec([lit.clone(), lit.clone(), lit], 0..=3)
            .prop_map(move |clauses| CnfFormula::new(n, clauses).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn vote_is_antisymmetric((inst, seed) in instance()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let m1 = random_matching(&mut rng, &inst, 0.6);
        let m2 = random_matching(&mut rng, &inst, 0.6);
        prop_assert_eq!(delta(&inst, &m1, &m2), -delta(&inst, &m2, &m1));
        prop_assert_eq!(delta(&inst, &m1, &m1), 0);
        prop_assert_eq!(vote(&inst, &m1, &m2).total(), inst.num_vertices());
    }

    #[test]
    fn enumerated_matchings_are_valid_and_distinct((inst, _) in instance()) {
        let all: Vec<_> = enumerate_matchings(&inst, EnumerationMode::All, None).map(Result::unwrap).collect();
        let distinct: BTreeSet<Vec<Edge>> = all.iter().map(|m| m.edges()).collect();
        prop_assert_eq!(distinct.len(), all.len());
        for m in &all {
            prop_assert!(m.validate(&inst).is_ok());
        }
        let maximal = enumerate_matchings(&inst, EnumerationMode::Maximal, None).map(Result::unwrap).count();
        prop_assert_eq!(maximal, all.iter().filter(|m| is_maximal(&inst, m)).count());
    }

    #[test]
    fn disjoint_edges_give_powers_of_two(k in 0usize..8) {
        let prefs = (1..=2 * k).map(|v| vec![if v % 2 == 1 { v + 1 } else { v - 1 }]).collect();
        let inst = validate_instance(prefs).unwrap();
        prop_assert_eq!(enumerate_matchings(&inst, EnumerationMode::All, None).count(), 1 << k);
    }

    #[test]
    fn labels_are_symmetric_and_minus_two_is_dropped((inst, seed) in instance()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let m = random_matching(&mut rng, &inst, 0.6);
        let g = MarkedGraph::build(&inst, &m);
        for e in inst.edges() {
            if m.contains(e) {
                prop_assert!(g.is_kept(e));
                continue;
            }
            let label = label_edge(&inst, &m, e).unwrap();
            prop_assert_eq!(label_edge(&inst, &m, Edge::new(e.hi(), e.lo())).unwrap(), label);
            prop_assert_eq!(g.is_kept(e), label != EdgeLabel::Minus2);
        }
    }

    #[test]
    fn popular_implies_maximal((inst, seed) in instance()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let m = random_matching(&mut rng, &inst, 0.8);
        if find_forbidden_structure(&inst, &m).unwrap().is_none() {
            prop_assert!(is_maximal(&inst, &m));
        }
    }

    #[test]
    fn sat_and_pvc_agree(cnf in formula()) {
        let (pvc, _) = sat_to_pvc(&cnf);
        let sat = cnf.brute_force_sat();
        prop_assert_eq!(sat.is_some(), solve_pvc_bruteforce(&pvc).is_some());
        for u in all_pvc_solutions(&pvc) {
            prop_assert_eq!(u.len(), pvc.solution_size());
            prop_assert!(cnf.is_satisfied_by(&solution_to_assignment(&cnf, &u).unwrap()));
        }
        if let Some(a) = sat {
            let u = assignment_to_solution(&cnf, &a).unwrap();
            prop_assert_eq!(solution_to_assignment(&cnf, &u).unwrap(), a);
        }
        prop_assert_eq!(sat_to_pvc(&cnf).0, pvc);
    }

    #[test]
    fn gadgets_are_symmetric(pairs in 0usize..3, triples in 0usize..2, seed in any::<u64>()) {
        prop_assume!(pairs + triples > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pvc = random_pvc(&mut rng, pairs, triples, 0.4, false);
        let h = reduce_pvc_to_pm(&pvc);
        let mut perms = Vec::new();
        for &[i, j] in pvc.pairs() {
            perms.push(vec![(i, j), (j, i)]);
        }
        for &[i, j, k] in pvc.triples() {
            perms.push(vec![(i, j), (j, k), (k, i)]);
        }
        for perm in perms {
            let pi = |v: Vertex| perm.iter().find(|&&(x, _)| x == v).map_or(v, |&(_, y)| y);
            let image = relabel(&pvc, pi);
            let h2 = reduce_pvc_to_pm(&image);
            assert_isomorphic(&h, &h2, pi);
        }
    }
}

fn relabel(pvc: &PvcInstance, pi: impl Fn(Vertex) -> Vertex) -> PvcInstance {
    validate_pvc(
        pvc.num_vertices(),
        pvc.edges().map(|e| (pi(e.lo()), pi(e.hi()))),
        pvc.pairs().iter().map(|p| p.map(&pi)),
        pvc.triples().iter().map(|t| t.map(&pi)),
    )
    .unwrap()
}

fn rename(name: GadgetName, pi: &impl Fn(Vertex) -> Vertex) -> GadgetName {
    match name {
        GadgetName::A(i) => GadgetName::A(pi(i)),
        GadgetName::B(i) => GadgetName::B(pi(i)),
        GadgetName::C(i) => GadgetName::C(pi(i)),
        GadgetName::D(i) => GadgetName::D(pi(i)),
        GadgetName::U { edge, at } => GadgetName::U { edge: Edge::new(pi(edge.lo()), pi(edge.hi())), at: pi(at) },
        GadgetName::F(i, j) => GadgetName::F(pi(i), pi(j)),
    }
}

/// Every list of `h`, renamed, equals the matching list of `h2`. The
/// u-vertices inside a `b` list are ranked by vertex label, which a
/// relabeling may reorder, so that block is compared as a set.
fn assert_isomorphic(h: &HInstance, h2: &HInstance, pi: impl Fn(Vertex) -> Vertex) {
    for (v, name) in h.map.iter() {
        let image = rename(name, &pi);
        let w = h2.map.id(image).expect("renamed vertex exists");
        let mapped: Vec<GadgetName> = h.instance.prefs(v).iter().map(|&x| rename(h.map.name(x), &pi)).collect();
        let actual: Vec<GadgetName> = h2.instance.prefs(w).iter().map(|&x| h2.map.name(x)).collect();
        if matches!(name, GadgetName::B(_)) {
            let k = mapped.len();
            assert_eq!((mapped[0], mapped[k - 1]), (actual[0], actual[k - 1]), "{name}");
            let mid = |l: &[GadgetName]| l[1..k - 1].iter().copied().collect::<BTreeSet<_>>();
            assert_eq!(mid(&mapped), mid(&actual), "{name}");
        } else {
            assert_eq!(mapped, actual, "{name} -> {image}");
        }
    }
}
