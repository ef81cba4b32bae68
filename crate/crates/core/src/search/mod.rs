//! Exhaustive enumeration, exact thresholds, witness search, random sampling
//! and theorem audits.

mod audit;
mod enumerate;
mod random;
mod report;
mod threshold;
mod witness;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::hypergraph::{format_threegraph, ThreeGraph};

pub use audit::{
    audit_exhaustive, audit_theorem, erdos_gallai_exhaustive, girth_random, sgbt_exhaustive, theorem_registry,
    AuditParams, AuditReport, Conclusion, Counterexample, ErdosGallaiReport, GirthReport, SgbtReport,
    TheoremAudit, SGBT_MAX_N,
};
pub use enumerate::{enumerate_threegraphs, enumerate_threegraphs_budgeted, Enumeration, ISO_MAX_N, LABELED_MAX_N};
pub use random::{random_threegraph, random_threegraph_stream, DEFAULT_DENSITY};
pub use report::{strip_timestamp, Report};
pub use threshold::{compute_threshold_exact, DegreeRow, ThresholdOptions};
pub use witness::{find_witness, WitnessOptions, WITNESS_MAX_N};

/// Node and wall-clock limits; `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub seconds: Option<f64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        nodes: None,
        seconds: None,
    };

    pub fn nodes(nodes: u64) -> Self {
        Budget {
            nodes: Some(nodes),
            seconds: None,
        }
    }
}

/// Shared counter that trips once either limit is reached.
pub(crate) struct Meter {
    start: Instant,
    budget: Budget,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            start: Instant::now(),
            budget,
            nodes: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }

    /// Counts one node; returns false once the budget is spent.
    pub(crate) fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.tripped.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.budget.nodes.is_some_and(|b| count > b);
        let over_time = count.is_multiple_of(256)
            && self
                .budget
                .seconds
                .is_some_and(|s| self.start.elapsed().as_secs_f64() > s);
        if over_nodes || over_time {
            self.tripped.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub(crate) fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    pub(crate) fn count(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

fn graph_as_text<S: Serializer>(g: &ThreeGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_threegraph(g, &[]))
}

/// A graph together with a vertex it leaves uncovered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessGraph {
    #[serde(serialize_with = "graph_as_text")]
    pub graph: ThreeGraph,
    pub vertex: usize,
    pub min_degree: usize,
}

/// Proof that no graph with minimum degree `degree_floor` lacks a covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub degree_floor: usize,
    pub graphs_checked: u64,
    pub all_covered: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    Value {
        value: usize,
        witness: WitnessGraph,
        certificate: Certificate,
        histogram: Vec<DegreeRow>,
    },
    Witness {
        witness: WitnessGraph,
    },
    Exhausted,
    BudgetExceeded {
        progress: String,
    },
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Value { .. } => "Value",
            Outcome::Witness { .. } => "Witness",
            Outcome::Exhausted => "Exhausted",
            Outcome::BudgetExceeded { .. } => "BudgetExceeded",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub graphs: u64,
    /// Wall-clock time; kept out of serialized output so reports are
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub outcome: Outcome,
    pub stats: SearchStats,
}
