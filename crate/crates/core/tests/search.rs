use std::collections::HashSet;

use hypercover::hypergraph::{binomial, canonical_form, ThreeGraph};
use hypercover::patterns::{NamedPattern, Pattern, PatternQuery};
use hypercover::search::*;
use proptest::prelude::*;
use rayon::prelude::*;

/// Any injective map of the pattern with the root sent to `u`.
fn brute_embeds(g: &ThreeGraph, f: &Pattern, u: usize) -> bool {
    fn go(g: &ThreeGraph, f: &Pattern, u: usize, phi: &mut Vec<usize>, used: u64) -> bool {
        if phi.len() == f.vertex_count() {
            return f.edges().iter().all(|&[a, b, c]| g.has_edge(phi[a], phi[b], phi[c]));
        }
        let p = phi.len();
        for w in 0..g.n() {
            if used >> w & 1 == 1 || (p == f.root()) != (w == u) {
                continue;
            }
            phi.push(w);
            if go(g, f, u, phi, used | 1 << w) {
                return true;
            }
            phi.pop();
        }
        false
    }
    f.vertex_count() <= g.n() && go(g, f, u, &mut Vec::new(), 0)
}

/// Rooted copies of the whole pattern, one per root choice allowed by `name`.
fn oracle_patterns(name: &str) -> Vec<Pattern> {
    let all = |p: Pattern| (0..p.vertex_count()).map(|r| p.with_root(r).unwrap()).collect::<Vec<_>>();
    match name {
        "T" => all(Pattern::generalized_triangle(0).unwrap()),
        "P2" => all(Pattern::linear_path(2, 0).unwrap()),
        "P2c" => vec![Pattern::linear_path(2, 2).unwrap()],
        _ => unreachable!(),
    }
}

fn oracle_covered(g: &ThreeGraph, pats: &[Pattern], u: usize) -> bool {
    pats.iter().any(|p| brute_embeds(g, p, u))
}

/// Minimum i-degree by direct counting over all i-sets.
fn oracle_min_degree(g: &ThreeGraph, i: usize) -> usize {
    let n = g.n();
    let edges: Vec<[usize; 3]> = g.edges().collect();
    if i == 1 {
        (0..n).map(|v| edges.iter().filter(|e| e.contains(&v)).count()).min().unwrap()
    } else {
        let mut best = usize::MAX;
        for a in 0..n {
            for b in a + 1..n {
                best = best.min(edges.iter().filter(|e| e.contains(&a) && e.contains(&b)).count());
            }
        }
        best
    }
}

fn query(name: &str) -> PatternQuery {
    name.parse::<NamedPattern>().unwrap().into()
}

fn value(out: &SearchOutcome) -> usize {
    match &out.outcome {
        Outcome::Value { value, .. } => *value,
        other => panic!("expected a value, got {other:?}"),
    }
}

#[test]
fn labeled_enumeration_counts() {
    assert_eq!(enumerate_threegraphs(4, false, |_| {}).unwrap(), 16);
    assert_eq!(enumerate_threegraphs(5, false, |_| {}).unwrap(), 1024);
    let mut seen = HashSet::new();
    enumerate_threegraphs(5, false, |g| {
        assert!(seen.insert(g.mask()));
    })
    .unwrap();
    assert_eq!(seen.len(), 1024);
}

#[test]
fn iso_enumeration_matches_canonicalised_labeled() {
    for n in [4, 5, 6] {
        let labeled: HashSet<ThreeGraph> = (0..1u64 << binomial(n, 3))
            .into_par_iter()
            .map(|m| canonical_form(&ThreeGraph::from_mask(n, m)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        let mut classes = Vec::new();
        let count = enumerate_threegraphs(n, true, |g| classes.push(g.clone())).unwrap();
        let distinct: HashSet<ThreeGraph> = classes.iter().cloned().collect();
        assert_eq!(count as usize, classes.len());
        assert_eq!(distinct.len(), classes.len(), "n={n}: a class was visited twice");
        assert_eq!(distinct, labeled, "n={n}");
    }
}

#[test]
fn iso_budget_reports_incomplete() {
    let e = enumerate_threegraphs_budgeted(7, true, Budget::nodes(500), |_| {}).unwrap();
    assert!(!e.complete);
    assert_eq!(e.visited, 500);
}

/// Thresholds from a brute-force pass over all graphs on 5 vertices.
#[test]
fn thresholds_match_oracle_at_n5() {
    for name in ["T", "P2", "P2c"] {
        let pats = oracle_patterns(name);
        for i in [1, 2] {
            let expected = (0..1u64 << 10)
                .into_par_iter()
                .filter_map(|m| {
                    let g = ThreeGraph::from_mask(5, m);
                    (0..5).any(|u| !oracle_covered(&g, &pats, u)).then(|| oracle_min_degree(&g, i))
                })
                .max()
                .unwrap();
            let out = compute_threshold_exact(5, &query(name), i, ThresholdOptions::default()).unwrap();
            assert_eq!(value(&out), expected, "{name} i={i}");
            let Outcome::Value { witness, certificate, histogram, .. } = &out.outcome else { unreachable!() };
            assert_eq!(witness.min_degree, expected);
            assert!(!oracle_covered(&witness.graph, &pats, witness.vertex));
            assert!(certificate.all_covered);
            assert_eq!(certificate.degree_floor, expected + 1);
            assert_eq!(histogram.iter().map(|r| r.graphs).sum::<u64>(), 1024);
            assert_eq!(out.stats.graphs, 1024);
        }
    }
}

#[test]
fn iso_threshold_agrees_with_labeled() {
    for (name, i) in [("T", 2), ("P2", 1), ("T", 1)] {
        let labeled = compute_threshold_exact(5, &query(name), i, ThresholdOptions::default()).unwrap();
        let iso = compute_threshold_exact(
            5,
            &query(name),
            i,
            ThresholdOptions {
                iso_reject: true,
                budget: Budget::UNLIMITED,
            },
        )
        .unwrap();
        assert_eq!(value(&labeled), value(&iso), "{name} i={i}");
        assert_eq!(iso.stats.graphs, 34);
    }
}

#[test]
fn threshold_budget_exceeded() {
    let out = compute_threshold_exact(
        6,
        &query("T"),
        2,
        ThresholdOptions {
            iso_reject: false,
            budget: Budget::nodes(1000),
        },
    )
    .unwrap();
    assert_eq!(out.outcome.kind(), "BudgetExceeded");
}

/// For every degree floor, the witness search finds a graph exactly when a
/// full enumeration contains one with vertex 0 uncovered.
#[test]
fn witness_search_agrees_with_enumeration_at_n5() {
    for name in ["T", "P2", "P2c"] {
        let pats = oracle_patterns(name);
        for i in [1, 2] {
            let graphs: Vec<(usize, bool)> = (0..1u64 << 10)
                .into_par_iter()
                .map(|m| {
                    let g = ThreeGraph::from_mask(5, m);
                    (oracle_min_degree(&g, i), !oracle_covered(&g, &pats, 0))
                })
                .collect();
            for d in 0..=binomial(5 - i, 3 - i) {
                let exists = graphs.iter().any(|&(deg, unc)| unc && deg >= d);
                for split in [None, Some(2)] {
                    let out = find_witness(
                        5,
                        &query(name),
                        i,
                        d,
                        WitnessOptions {
                            budget: Budget::UNLIMITED,
                            split_depth: split,
                        },
                    )
                    .unwrap();
                    match &out.outcome {
                        Outcome::Witness { witness } => {
                            assert!(exists, "{name} i={i} d={d}: spurious witness");
                            assert!(oracle_min_degree(&witness.graph, i) >= d);
                            assert!(!oracle_covered(&witness.graph, &pats, witness.vertex));
                        }
                        Outcome::Exhausted => assert!(!exists, "{name} i={i} d={d}: missed a witness"),
                        other => panic!("{other:?}"),
                    }
                }
            }
        }
    }
}

/// Same cross-check on all 2^20 graphs on 6 vertices, using the library
/// detectors (themselves checked against brute-force embedding).
#[test]
fn witness_search_agrees_with_enumeration_at_n6() {
    for name in ["T", "T1", "T2", "T3", "P2", "P2c"] {
        let det = hypercover::patterns::Detector::new(&query(name)).unwrap();
        for i in [1, 2] {
            let cap = binomial(6 - i, 3 - i);
            // best[d]: some graph with min degree >= d leaves vertex 0 uncovered.
            let top = (0..1u64 << 20)
                .into_par_iter()
                .filter_map(|m| {
                    let g = ThreeGraph::from_mask(6, m);
                    (!det.is_covered(&g, 0)).then(|| g.min_degree(i).unwrap())
                })
                .max();
            for d in 0..=cap {
                let exists = top.is_some_and(|t| t >= d);
                let out = find_witness(6, &query(name), i, d, WitnessOptions::default()).unwrap();
                let expected = if exists { "Witness" } else { "Exhausted" };
                assert_eq!(out.outcome.kind(), expected, "{name} i={i} d={d}");
            }
        }
    }
}

/// Graphs known to leave a vertex uncovered must not be missed.
#[test]
fn witness_search_finds_construction_floors() {
    for (n, name, i, d) in [(9, "P3", 1, 7), (8, "P3", 1, 6), (13, "T", 2, 2), (8, "P2", 1, 3), (9, "Pk:4", 2, 1)] {
        let out = find_witness(n, &query(name), i, d, WitnessOptions::default()).unwrap();
        assert_eq!(out.outcome.kind(), "Witness", "{name} n={n} i={i} d={d}");
    }
}

#[test]
fn witness_search_brackets_exact_threshold_at_n6() {
    for (name, i) in [("T", 2), ("P2", 2), ("P2", 1), ("T", 1)] {
        let c = value(&compute_threshold_exact(6, &query(name), i, ThresholdOptions::default()).unwrap());
        let at = find_witness(6, &query(name), i, c, WitnessOptions::default()).unwrap();
        assert_eq!(at.outcome.kind(), "Witness", "{name} i={i} d={c}");
        let above = find_witness(6, &query(name), i, c + 1, WitnessOptions::default()).unwrap();
        assert_eq!(above.outcome.kind(), "Exhausted", "{name} i={i} d={}", c + 1);
    }
}

#[test]
fn witness_search_is_deterministic_across_splits() {
    let run = |split| {
        find_witness(
            9,
            &query("T"),
            2,
            1,
            WitnessOptions {
                budget: Budget::UNLIMITED,
                split_depth: split,
            },
        )
        .unwrap()
        .outcome
    };
    let seq = run(None);
    assert_eq!(seq.kind(), "Witness");
    assert_eq!(seq, run(Some(1)));
    assert_eq!(run(Some(3)), run(Some(3)));
}

#[test]
fn witness_budget() {
    let out = find_witness(
        12,
        &query("P3"),
        2,
        2,
        WitnessOptions {
            budget: Budget::nodes(3),
            split_depth: Some(2),
        },
    )
    .unwrap();
    assert_eq!(out.outcome.kind(), "BudgetExceeded");
}

#[test]
fn random_graphs_are_reproducible() {
    let a = random_threegraph(8, None, DEFAULT_DENSITY, 1).unwrap();
    assert_eq!(a, random_threegraph(8, None, DEFAULT_DENSITY, 1).unwrap());
    for seed in 0..10 {
        let g = random_threegraph(8, Some((2, 3)), DEFAULT_DENSITY, seed).unwrap();
        assert!(oracle_min_degree(&g, 2) >= 3);
    }
    let d = (144 / 6 + 10 - 3) + 1;
    let g = random_threegraph(12, Some((1, d)), DEFAULT_DENSITY, 4).unwrap();
    assert!(oracle_min_degree(&g, 1) >= d);
}

#[test]
fn audits_are_reproducible() {
    let p = AuditParams {
        n: 8,
        k: None,
        samples: 40,
        seed: 11,
        density: 0.2,
    };
    let a = audit_theorem("s32", p).unwrap();
    let b = audit_theorem("s32", p).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.violations, 0);
    assert_ne!(a, audit_theorem("s32", AuditParams { seed: 12, ..p }).unwrap());
}

#[test]
fn pp2_exhaustive_at_n5() {
    let r = audit_exhaustive("pp2", 5, None).unwrap();
    let expected = (0..1u64 << 10)
        .filter(|&m| oracle_min_degree(&ThreeGraph::from_mask(5, m), 2) >= 2)
        .count();
    assert_eq!(r.graphs as usize, expected);
    assert_eq!(r.violations, 0);
}

#[test]
fn recorded_only_below_asserted_range() {
    let r = audit_exhaustive("s22", 5, None).unwrap();
    assert!(r.passed());
    let p = AuditParams {
        n: 8,
        k: None,
        samples: 30,
        seed: 3,
        density: 0.0,
    };
    let r = audit_theorem("p31", p).unwrap();
    assert!(!r.asserted);
    assert!(r.passed());
}

#[test]
fn erdos_gallai_small() {
    for n in 3..=6 {
        for k in 2..=3 {
            if n + 1 < 2 * k {
                continue;
            }
            let r = erdos_gallai_exhaustive(n, k).unwrap();
            assert!(r.holds() && r.tight(), "{r:?}");
        }
    }
}

#[test]
fn girth_on_random_graphs() {
    let r = girth_random(2000, 5);
    assert!(r.applicable > 500);
    assert_eq!(r.violations, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn repair_meets_floor(n in 6usize..=11, i in 1usize..=2, frac in 0.0f64..=1.0, density in 0.0f64..=1.0, seed: u64) {
        let cap = binomial(n - i, 3 - i);
        let d = (frac * cap as f64) as usize;
        let g = random_threegraph(n, Some((i, d)), density, seed).unwrap();
        prop_assert!(oracle_min_degree(&g, i) >= d);
    }

    #[test]
    fn infeasible_floor_rejected(n in 5usize..=10, i in 1usize..=2, extra in 1usize..5) {
        let cap = binomial(n - i, 3 - i);
        prop_assert!(random_threegraph(n, Some((i, cap + extra)), 0.5, 0).is_err());
    }
}
