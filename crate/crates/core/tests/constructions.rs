use hypercover::constructions::*;
use hypercover::hypergraph::{binomial, parse_document, VertexSet};
use hypercover::patterns::{covers_pk, covers_t, find_rooted_embedding, has_f_covering, NamedPattern, Pattern};

use ConstructionId::*;

fn graph(spec: ConstructionSpec) -> Construction {
    build(&spec).unwrap()
}

#[test]
fn builds_are_deterministic_and_round_trip() {
    let specs = [
        ConstructionSpec::with_n(G1, 7),
        ConstructionSpec::with_k(G2, 5),
        ConstructionSpec::with_n(G3, 12),
        ConstructionSpec::with_n(G4, 9),
        ConstructionSpec::with_n(G5, 7),
        ConstructionSpec::with_n(G6, 9),
        ConstructionSpec::with_n(G7, 10),
        ConstructionSpec::with_nk(G8, 13, 4),
        ConstructionSpec::with_nk(G9, 12, 3),
    ];
    for s in specs {
        let a = graph(s);
        let b = graph(s);
        assert_eq!(a.graph, b.graph);
        let doc = parse_document(&a.to_text()).unwrap();
        assert_eq!(doc.graph, a.graph);
        assert!(doc.comments.iter().any(|c| c.starts_with("apex") || c.starts_with("side-A")));
    }
}

#[test]
fn g2_codegrees() {
    for k in 4..=6 {
        let c = graph(ConstructionSpec::with_k(G2, k));
        let g = &c.graph;
        let cluster = |v: usize| (v - 1) / 3;
        for a in 0..c.n {
            for b in a + 1..c.n {
                let want = if a == 0 || cluster(a) == cluster(b) { 2 } else { k - 2 };
                assert_eq!(g.codegree(a, b), want, "k={k} pair ({a},{b})");
            }
        }
    }
}

#[test]
fn g2_and_g7_apex_has_no_embedding() {
    let g2 = graph(ConstructionSpec::with_k(G2, 4)).graph;
    for r in 0..5 {
        let t = Pattern::generalized_triangle(r).unwrap();
        assert!(find_rooted_embedding(&g2, &t, 0).is_none());
    }
    let g7 = graph(ConstructionSpec::with_n(G7, 8)).graph;
    for r in 0..7 {
        let p = Pattern::linear_path(3, r).unwrap();
        assert!(find_rooted_embedding(&g7, &p, 0).is_none());
    }
}

#[test]
fn g3_apex_uncovered_and_degree_formula() {
    for n in 9..=15 {
        let c = graph(ConstructionSpec::with_n(G3, n));
        assert!(!covers_t(&c.graph, 0).any(), "n={n}");
        // Degrees by part, counted from the definition.
        let s = n.div_ceil(3);
        let b = n - 1 - 2 * s;
        let expected = (s * s).min(s + s * b).min(if b > 0 { s * s + binomial(b - 1, 2) } else { usize::MAX });
        assert_eq!(c.graph.min_degree(1).unwrap(), expected, "n={n}");
    }
}

#[test]
fn g3_degree_floor_holds_only_when_three_divides_n() {
    for n in 9..=15 {
        let c = graph(ConstructionSpec::with_n(G3, n));
        let holds = c.graph.min_degree(1).unwrap() >= (n * n).div_ceil(9);
        assert_eq!(holds, n % 3 == 0, "n={n}");
    }
}

#[test]
fn g4_at_eight_vertices_leaves_everything_uncovered() {
    let c = graph(ConstructionSpec::with_n(G4, 8));
    let r = has_f_covering(&c.graph, &NamedPattern::P2.into()).unwrap();
    assert_eq!(r.uncovered, (0..8).collect::<Vec<_>>());
    let c = graph(ConstructionSpec::with_n(G4, 9));
    let r = has_f_covering(&c.graph, &NamedPattern::P2.into()).unwrap();
    assert_eq!(r.uncovered, vec![0, 1, 2, 3]);
}

#[test]
fn g6_link_of_apex_is_a_book() {
    use hypercover::patterns::{classify_no3matching, NoMatchingClass};
    for n in 8..=10 {
        let c = graph(ConstructionSpec::with_n(G6, n));
        let link = c.graph.link_graph(0).unwrap().without(VertexSet::singleton(0));
        // Drop the isolated apex by relabelling onto 0..n-1.
        let rows: Vec<(usize, usize)> = link.edges().into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
        let h = hypercover::hypergraph::TwoGraph::from_edges(n - 1, rows).unwrap();
        assert_eq!(classify_no3matching(&h).unwrap(), NoMatchingClass::Book);
    }
}

#[test]
fn g8_codegrees_by_side() {
    for k in 4..=6 {
        for n in 2 * k + 1..=2 * k + 4 {
            let c = graph(ConstructionSpec::with_nk(G8, n, k));
            let side = k - 2;
            let g = &c.graph;
            for a in 0..n {
                for b in a + 1..n {
                    let want = match (a < side, b < side) {
                        (true, true) => n - side,
                        (true, false) => n - 2,
                        (false, false) => side,
                        (false, true) => unreachable!(),
                    };
                    assert_eq!(g.codegree(a, b), want);
                }
            }
        }
    }
}

#[test]
fn g8_contains_a_path_through_every_vertex() {
    // With |A| = k-2 a linear k-path needs only ceil(k/2) vertices of A as
    // its shared vertices, so copies exist and cover every vertex.
    let c = graph(ConstructionSpec::with_nk(G8, 13, 4));
    for v in 0..13 {
        assert!(covers_pk(&c.graph, v, 4), "vertex {v}");
    }
}

#[test]
fn g9_side_a_uncovered() {
    for n in 12..=14 {
        let c = graph(ConstructionSpec::with_nk(G9, n, 3));
        assert_eq!(c.graph.min_degree(1).unwrap(), 10);
        let r = has_f_covering(&c.graph, &NamedPattern::P3.into()).unwrap();
        for v in 0..6 {
            assert!(r.uncovered.contains(&v));
        }
    }
}

#[test]
fn observation_reports() {
    let r = verify_observation(&ConstructionSpec::with_k(G2, 4)).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks[0].computed, "2");
    let r = verify_observation(&ConstructionSpec::with_n(G3, 12)).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks[0].computed, "16");
    let r = verify_observation(&ConstructionSpec::with_n(G7, 10)).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks.iter().map(|c| c.computed.as_str()).collect::<Vec<_>>(), vec!["1", "8", "false"]);
    let r = verify_observation(&ConstructionSpec::with_nk(G9, 12, 3)).unwrap();
    assert!(r.passed());
    let r = verify_observation(&ConstructionSpec::with_nk(G8, 13, 4)).unwrap();
    assert_eq!(r.checks[0].status, CheckStatus::Flagged);
    assert_eq!(r.checks[0].computed, "2");
    assert_eq!(r.checks[1].status, CheckStatus::Fail);
    let r = verify_observation(&ConstructionSpec::with_n(G3, 10)).unwrap();
    assert_eq!(r.checks[0].status, CheckStatus::Fail);
}
