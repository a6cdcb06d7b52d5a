//! Seeded random instances and matchings for fuzzing and property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::pvc::{validate_pvc, PvcInstance};
use crate::roommates::{validate_instance, Matching, PreferenceInstance, Vertex};

/// Erdős–Rényi graph on `n` vertices with edge probability `p`, each
/// vertex ranking its neighbors by a uniformly random permutation.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> PreferenceInstance {
    let mut prefs = vec![Vec::new(); n];
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                prefs[u - 1].push(v);
                prefs[v - 1].push(u);
            }
        }
    }
    for list in &mut prefs {
        list.shuffle(rng);
    }
    validate_instance(prefs).expect("generated adjacency is symmetric and simple")
}

/// Greedy maximal matching over a random edge order.
pub fn random_maximal_matching<R: Rng + ?Sized>(rng: &mut R, inst: &PreferenceInstance) -> Matching {
    let mut edges = inst.edges();
    edges.shuffle(rng);
    let mut m = Matching::empty(inst.num_vertices());
    for e in edges {
        if !m.is_matched(e.lo()) && !m.is_matched(e.hi()) {
            m.insert(e).expect("endpoints are free");
        }
    }
    m
}

/// Matching built from a random edge order, keeping each free edge with
/// probability `keep`. Not necessarily maximal.
pub fn random_matching<R: Rng + ?Sized>(rng: &mut R, inst: &PreferenceInstance, keep: f64) -> Matching {
    let mut edges = inst.edges();
    edges.shuffle(rng);
    let mut m = Matching::empty(inst.num_vertices());
    for e in edges {
        if !m.is_matched(e.lo()) && !m.is_matched(e.hi()) && rng.gen_bool(keep) {
            m.insert(e).expect("endpoints are free");
        }
    }
    m
}

/// Random PVC instance with `pairs` pairs and `triples` triples over
/// shuffled vertex labels. Each cross-group edge appears with probability
/// `p`. With `planted`, a hidden solution is drawn first and only edges it
/// covers are offered, so the instance is solvable.
pub fn random_pvc<R: Rng + ?Sized>(
    rng: &mut R,
    pairs: usize,
    triples: usize,
    p: f64,
    planted: bool,
) -> PvcInstance {
    let n = 2 * pairs + 3 * triples;
    let mut labels: Vec<Vertex> = (1..=n).collect();
    labels.shuffle(rng);
    let (pair_labels, triple_labels) = labels.split_at(2 * pairs);
    let pair_list: Vec<[Vertex; 2]> = pair_labels.chunks(2).map(|c| [c[0], c[1]]).collect();
    let triple_list: Vec<[Vertex; 3]> = triple_labels.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();

    let mut group = vec![0; n + 1];
    let mut chosen = vec![false; n + 1];
    let mut edges = Vec::new();
    for (g, pr) in pair_list.iter().enumerate() {
        pr.iter().for_each(|&v| group[v] = g);
        chosen[pr[rng.gen_range(0..2)]] = true;
        edges.push((pr[0], pr[1]));
    }
    for (g, t) in triple_list.iter().enumerate() {
        let g = pairs + g;
        t.iter().for_each(|&v| group[v] = g);
        let out = rng.gen_range(0..3);
        (0..3).filter(|&k| k != out).for_each(|k| chosen[t[k]] = true);
        edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if group[u] != group[v] && (!planted || chosen[u] || chosen[v]) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    validate_pvc(n, edges, pair_list, triple_list).expect("generated partition is valid")
}
