use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial, ThreeGraph};
use crate::patterns::{Detector, PatternQuery};

use super::enumerate::{check_bounds, enumerate_threegraphs_budgeted};
use super::{Budget, Certificate, Meter, Outcome, SearchOutcome, SearchStats, WitnessGraph};

#[derive(Debug, Clone, Copy, Default)]
pub struct ThresholdOptions {
    /// Enumerate isomorphism classes instead of labeled graphs.
    pub iso_reject: bool,
    pub budget: Budget,
}

/// Number of graphs with a given minimum degree, and how many of them leave
/// some vertex uncovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub graphs: u64,
    pub uncovered: u64,
}

#[derive(Clone)]
struct Tally {
    graphs: Vec<u64>,
    uncovered: Vec<u64>,
    // Lowest-order witness per degree: (order key, graph, vertex).
    witness: Vec<Option<(u64, ThreeGraph, usize)>>,
}

impl Tally {
    fn new(levels: usize) -> Self {
        Tally {
            graphs: vec![0; levels],
            uncovered: vec![0; levels],
            witness: vec![None; levels],
        }
    }

    fn record(&mut self, det: &Detector, i: usize, key: u64, g: &ThreeGraph) {
        let d = g.min_degree(i).expect("i validated");
        self.graphs[d] += 1;
        if let Some(u) = det.first_uncovered(g) {
            self.uncovered[d] += 1;
            if self.witness[d].is_none() {
                self.witness[d] = Some((key, g.clone(), u));
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for d in 0..self.graphs.len() {
            self.graphs[d] += other.graphs[d];
            self.uncovered[d] += other.uncovered[d];
            let take = match (&self.witness[d], &other.witness[d]) {
                (None, Some(_)) => true,
                (Some(a), Some(b)) => b.0 < a.0,
                _ => false,
            };
            if take {
                self.witness[d] = other.witness[d].clone();
            }
        }
        self
    }
}

/// `c_i(n, F)`: the largest minimum `i`-degree of a graph on `n` vertices with
/// an uncovered vertex, found by exhaustive enumeration.
///
/// Labeled enumeration runs in parallel for `n <= 6`; with `iso_reject` one
/// graph per isomorphism class is checked, which allows `n = 7` under a
/// budget.
pub fn compute_threshold_exact(n: usize, pattern: &PatternQuery, i: usize, opts: ThresholdOptions) -> Result<SearchOutcome> {
    if !(1..=2).contains(&i) {
        return Err(invalid(format!("degree type i must be 1 or 2, got {i}")));
    }
    if n < 3 {
        return Err(invalid(format!("thresholds need n >= 3, got {n}")));
    }
    check_bounds(n, opts.iso_reject)?;
    let det = Detector::new(pattern)?;
    let levels = binomial(n - i, 3 - i) + 1;
    let meter = Meter::new(opts.budget);

    let (tally, total, complete) = if opts.iso_reject {
        let mut tally = Tally::new(levels);
        let mut order = 0u64;
        let e = enumerate_threegraphs_budgeted(n, true, opts.budget, |g| {
            tally.record(&det, i, order, g);
            order += 1;
        })?;
        (tally, e.visited, e.complete)
    } else {
        let total = 1u64 << binomial(n, 3);
        const CHUNK: u64 = 1 << 12;
        let tally = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut t = Tally::new(levels);
                for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    if !meter.tick() {
                        break;
                    }
                    t.record(&det, i, mask, &ThreeGraph::from_mask(n, mask));
                }
                t
            })
            .reduce(|| Tally::new(levels), Tally::merge);
        (tally, total, !meter.tripped())
    };

    let stats = SearchStats {
        nodes: total,
        graphs: tally.graphs.iter().sum(),
        elapsed: meter.elapsed(),
        seed: None,
    };
    if !complete {
        return Ok(SearchOutcome {
            outcome: Outcome::BudgetExceeded {
                progress: format!("checked {} graphs before the budget ran out", stats.graphs),
            },
            stats,
        });
    }
    let value = (0..levels).rev().find(|&d| tally.uncovered[d] > 0).ok_or_else(|| {
        Error::InternalInconsistency(format!("no graph on {n} vertices leaves a vertex uncovered"))
    })?;
    let (_, graph, vertex) = tally.witness[value].clone().expect("uncovered count implies a witness");
    let witness = WitnessGraph {
        min_degree: graph.min_degree(i)?,
        graph,
        vertex,
    };
    let certificate = Certificate {
        degree_floor: value + 1,
        graphs_checked: tally.graphs[value + 1..].iter().sum(),
        all_covered: tally.uncovered[value + 1..].iter().all(|&u| u == 0),
    };
    let histogram = (0..levels)
        .map(|d| DegreeRow {
            degree: d,
            graphs: tally.graphs[d],
            uncovered: tally.uncovered[d],
        })
        .collect();
    Ok(SearchOutcome {
        outcome: Outcome::Value {
            value,
            witness,
            certificate,
            histogram,
        },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::NamedPattern;

    #[test]
    fn empty_graph_is_the_only_witness_at_n3() {
        let out = compute_threshold_exact(3, &NamedPattern::T.into(), 2, ThresholdOptions::default()).unwrap();
        match out.outcome {
            Outcome::Value { value, .. } => assert_eq!(value, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let p: PatternQuery = NamedPattern::T.into();
        assert!(compute_threshold_exact(5, &p, 3, ThresholdOptions::default()).is_err());
        assert!(matches!(
            compute_threshold_exact(7, &p, 2, ThresholdOptions::default()),
            Err(Error::Infeasible(_))
        ));
    }
}
