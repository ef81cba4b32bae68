//! `hypercover` command-line tool.

mod table;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypercover::constructions::{build, verify_observation, ConstructionId, ConstructionSpec};
use hypercover::hypergraph::{format_threegraph, parse_document};
use hypercover::patterns::{has_f_covering, NamedPattern, Pattern, PatternQuery};
use hypercover::search::{
    audit_exhaustive, audit_theorem, compute_threshold_exact, erdos_gallai_exhaustive, find_witness, girth_random,
    sgbt_exhaustive, AuditParams, Budget, Outcome, Report, SearchOutcome, ThresholdOptions, WitnessOptions,
    DEFAULT_DENSITY,
};

#[derive(Debug, Parser)]
#[command(name = "hypercover", version)]
#[command(about = "Vertex coverings of 3-graphs: constructions, detectors, thresholds and audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct BudgetArgs {
    /// Stop after visiting this many search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,

    /// Stop after this many seconds of wall-clock time.
    #[arg(long)]
    budget_seconds: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> anyhow::Result<Budget> {
        if self.budget_nodes == Some(0) || self.budget_seconds.is_some_and(|s| s <= 0.0) {
            bail!("budgets must be positive");
        }
        Ok(Budget {
            nodes: self.budget_nodes,
            seconds: self.budget_seconds,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Expectation {
    Witness,
    Exhausted,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an extremal construction and print it in the graph text format
    Gen {
        /// g1 .. g9
        construction: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Also check the stated properties; exit 1 if one fails.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: OutputArgs,
    },

    /// Report which vertices a pattern covers
    Detect {
        /// Graph file, or - for stdin.
        graph: PathBuf,
        /// Named pattern (T, T1, P2c, Pk:4, Skc:3, ...).
        #[arg(long, required_unless_present = "pattern_file")]
        pattern: Option<String>,
        /// Custom rooted pattern in the graph text format with an `r` line.
        #[arg(long, conflicts_with = "pattern")]
        pattern_file: Option<PathBuf>,
        /// Only test this vertex.
        #[arg(long)]
        vertex: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },

    /// Exact c_i(n,F) by exhaustive enumeration
    Threshold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        i: usize,
        /// Enumerate isomorphism classes (allows n = 7).
        #[arg(long)]
        iso_reject: bool,
        /// Exit 1 unless the computed value equals this.
        #[arg(long)]
        expect: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },

    /// Search for a graph with min i-degree >= d leaving vertex 0 uncovered
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        d: usize,
        /// Exit 1 unless the search ends this way.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },

    /// Check a degree-sufficiency statement on sampled or enumerated graphs
    Audit {
        /// Statement id (see `table`), or sgbt, erdos-gallai, girth.
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge density before repair.
        #[arg(long, default_value_t = DEFAULT_DENSITY)]
        density: f64,
        /// Check every labeled graph instead of sampling (n <= 6).
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        out: OutputArgs,
    },

    /// Run every check and print claim, method and status per statement
    Table {
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// 0: expectation met, 1: violation, 2: usage, parse, infeasible or budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Violation,
    Incomplete,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Violation => "violation",
            Status::Incomplete => "incomplete",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Violation => 1,
            Status::Incomplete => 2,
        }
    }
}

struct Emit {
    status: Status,
    text: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = matches!(
                e.downcast_ref::<hypercover::Error>(),
                Some(hypercover::Error::InternalInconsistency(_))
            );
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}

fn write_out(out: &OutputArgs, body: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

/// Writes text or a JSON report and returns the status.
fn finish<T: Serialize, R: Serialize>(
    command: &str,
    out: &OutputArgs,
    task: &T,
    result: &R,
    emit: Emit,
    started: Instant,
) -> anyhow::Result<Status> {
    let body = match out.format {
        Format::Text => emit.text,
        Format::Json => Report::new(command, task, emit.status.label(), result, started.elapsed())?.to_json(),
    };
    write_out(out, &body)?;
    Ok(emit.status)
}

fn named(pattern: &str) -> anyhow::Result<PatternQuery> {
    Ok(pattern.parse::<NamedPattern>()?.into())
}

fn read_input(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(command: Command) -> anyhow::Result<Status> {
    let started = Instant::now();
    match command {
        Command::Gen {
            construction,
            n,
            k,
            verify,
            out,
        } => {
            let spec = ConstructionSpec {
                id: construction.parse::<ConstructionId>()?,
                n,
                k,
            };
            let c = build(&spec)?;
            let report = if verify { Some(verify_observation(&spec)?) } else { None };
            let mut text = c.to_text();
            let mut status = Status::Pass;
            if let Some(r) = &report {
                for check in &r.checks {
                    text.push_str(&format!(
                        "c check {:?}: {} (expected {}, computed {})\n",
                        check.status, check.claim, check.expected, check.computed
                    ));
                }
                if !r.passed() {
                    status = Status::Violation;
                }
            }
            #[derive(Serialize)]
            struct GenResult<'a> {
                n: usize,
                k: Option<usize>,
                marker: Vec<usize>,
                graph: String,
                checks: Option<&'a hypercover::constructions::ObservationReport>,
            }
            let result = GenResult {
                n: c.n,
                k: c.k,
                marker: c.marker.vertices(),
                graph: c.to_text(),
                checks: report.as_ref(),
            };
            finish("gen", &out, &spec, &result, Emit { status, text }, started)
        }

        Command::Detect {
            graph,
            pattern,
            pattern_file,
            vertex,
            out,
        } => {
            let doc = parse_document(&read_input(&graph)?)?;
            if doc.root.is_some() {
                bail!("{}: root lines belong in pattern files", graph.display());
            }
            let g = doc.graph;
            let query = match (&pattern, &pattern_file) {
                (Some(p), _) => named(p)?,
                (None, Some(path)) => PatternQuery::Custom(Pattern::parse(&read_input(path)?)?),
                (None, None) => bail!("give --pattern or --pattern-file"),
            };
            if let Some(v) = vertex {
                if v >= g.n() {
                    bail!("vertex {v} out of range for n={}", g.n());
                }
            }
            let report = has_f_covering(&g, &query)?;
            let failing: Vec<usize> = match vertex {
                Some(v) => report.uncovered.iter().copied().filter(|&u| u == v).collect(),
                None => report.uncovered.clone(),
            };
            let mut text = String::new();
            for vc in &report.vertices {
                if vertex.is_some_and(|v| v != vc.vertex) {
                    continue;
                }
                let labels = if vc.labels.is_empty() {
                    "uncovered".to_string()
                } else {
                    vc.labels.join(" ")
                };
                text.push_str(&format!("{}: {labels}\n", vc.vertex));
            }
            let covering = failing.is_empty();
            text.push_str(&format!("{} covering: {}\n", report.pattern, if covering { "yes" } else { "no" }));
            #[derive(Serialize)]
            struct Task<'a> {
                graph: String,
                pattern: String,
                vertex: Option<usize>,
                n: usize,
                edges: usize,
                #[serde(skip_serializing_if = "Option::is_none")]
                pattern_file: Option<&'a PathBuf>,
            }
            let task = Task {
                graph: graph.display().to_string(),
                pattern: report.pattern.clone(),
                vertex,
                n: g.n(),
                edges: g.edge_count(),
                pattern_file: pattern_file.as_ref(),
            };
            let status = if covering { Status::Pass } else { Status::Violation };
            finish("detect", &out, &task, &report, Emit { status, text }, started)
        }

        Command::Threshold {
            n,
            pattern,
            i,
            iso_reject,
            expect,
            budget,
            out,
        } => {
            let query = named(&pattern)?;
            let opts = ThresholdOptions {
                iso_reject,
                budget: budget.budget()?,
            };
            let result = compute_threshold_exact(n, &query, i, opts)?;
            let (status, text) = match &result.outcome {
                Outcome::Value { value, .. } => {
                    let ok = expect.is_none_or(|e| e == *value);
                    (if ok { Status::Pass } else { Status::Violation }, format!("{value}\n"))
                }
                Outcome::BudgetExceeded { progress } => (Status::Incomplete, format!("budget exceeded: {progress}\n")),
                other => bail!("unexpected threshold outcome {}", other.kind()),
            };
            #[derive(Serialize)]
            struct Task<'a> {
                n: usize,
                pattern: &'a str,
                i: usize,
                iso_reject: bool,
                expect: Option<usize>,
                budget: &'a BudgetArgs,
            }
            let task = Task {
                n,
                pattern: &pattern,
                i,
                iso_reject,
                expect,
                budget: &budget,
            };
            finish("threshold", &out, &task, &result, Emit { status, text }, started)
        }

        Command::Witness {
            n,
            pattern,
            i,
            d,
            expect,
            budget,
            out,
        } => {
            let query = named(&pattern)?;
            let opts = WitnessOptions {
                budget: budget.budget()?,
                ..WitnessOptions::default()
            };
            let result: SearchOutcome = find_witness(n, &query, i, d, opts)?;
            let (found, text) = match &result.outcome {
                Outcome::Witness { witness } => {
                    let comments = vec![
                        format!("uncovered vertex {}", witness.vertex),
                        format!("min {i}-degree {}", witness.min_degree),
                    ];
                    (Some(Expectation::Witness), format!("Witness\n{}", format_threegraph(&witness.graph, &comments)))
                }
                Outcome::Exhausted => (Some(Expectation::Exhausted), "Exhausted\n".to_string()),
                Outcome::BudgetExceeded { progress } => (None, format!("BudgetExceeded: {progress}\n")),
                other => bail!("unexpected witness outcome {}", other.kind()),
            };
            let status = match (found, expect) {
                (None, _) => Status::Incomplete,
                (Some(f), Some(e)) if f != e => Status::Violation,
                _ => Status::Pass,
            };
            #[derive(Serialize)]
            struct Task<'a> {
                n: usize,
                pattern: &'a str,
                i: usize,
                d: usize,
                expect: Option<Expectation>,
                budget: &'a BudgetArgs,
            }
            let task = Task {
                n,
                pattern: &pattern,
                i,
                d,
                expect,
                budget: &budget,
            };
            finish("witness", &out, &task, &result, Emit { status, text }, started)
        }

        Command::Audit {
            theorem,
            n,
            k,
            samples,
            seed,
            density,
            exhaustive,
            out,
        } => {
            #[derive(Serialize)]
            struct Task<'a> {
                theorem: &'a str,
                n: Option<usize>,
                k: Option<usize>,
                samples: usize,
                seed: u64,
                density: f64,
                exhaustive: bool,
            }
            let task = Task {
                theorem: &theorem,
                n,
                k,
                samples,
                seed,
                density,
                exhaustive,
            };
            let verdict = |ok: bool| if ok { Status::Pass } else { Status::Violation };
            match theorem.as_str() {
                "sgbt" => {
                    let r = sgbt_exhaustive(n.unwrap_or(7))?;
                    let text = format!(
                        "sgbt n={}: {} graphs, {} with min degree >= 2 and no 3-matching ({} books, {} books minus spine), {} unclassified\n",
                        r.n, r.graphs, r.qualifying, r.books, r.book_minus, r.failure_count
                    );
                    finish("audit", &out, &task, &r, Emit { status: verdict(r.passed()), text }, started)
                }
                "erdos-gallai" => {
                    let (n, k) = (n.unwrap_or(7), k.unwrap_or(3));
                    let r = erdos_gallai_exhaustive(n, k)?;
                    let text = format!(
                        "erdos-gallai n={n} k={k}: max edges without a {k}-matching {} (bound {}, {})\n",
                        r.max_edges,
                        r.bound,
                        if r.tight() { "tight" } else { "not tight" }
                    );
                    finish("audit", &out, &task, &r, Emit { status: verdict(r.holds()), text }, started)
                }
                "girth" => {
                    let r = girth_random(samples as u64, seed);
                    let text = format!(
                        "girth: {} samples, {} with min degree >= 2, {} violations\n",
                        r.samples, r.applicable, r.violations
                    );
                    finish("audit", &out, &task, &r, Emit { status: verdict(r.violations == 0), text }, started)
                }
                id => {
                    let Some(n) = n else { bail!("audit {id} needs --n") };
                    let r = if exhaustive {
                        audit_exhaustive(id, n, k)?
                    } else {
                        audit_theorem(
                            id,
                            AuditParams {
                                n,
                                k,
                                samples,
                                seed,
                                density,
                            },
                        )?
                    };
                    let mut text = format!(
                        "{} n={}{}: {} {} graphs with min {}-degree >= {}, {} violations{}\n",
                        r.theorem,
                        r.n,
                        r.k.map(|k| format!(" k={k}")).unwrap_or_default(),
                        r.graphs,
                        r.mode,
                        r.i,
                        r.degree_floor,
                        r.violations,
                        if r.asserted { "" } else { " (recorded, not asserted)" }
                    );
                    for ce in &r.counterexamples {
                        text.push_str(&format!("counterexample {} vertices {:?}\n{}", ce.sample, ce.vertices, ce.graph));
                    }
                    finish("audit", &out, &task, &r, Emit { status: verdict(r.passed()), text }, started)
                }
            }
        }

        Command::Table { out } => {
            let rows = table::rows()?;
            let text = table::render(&rows);
            let ok = rows.iter().all(|r| r.status != table::RowStatus::Fail);
            let status = if ok { Status::Pass } else { Status::Violation };
            finish("table", &out, &serde_json::json!({}), &rows, Emit { status, text }, started)
        }
    }
}
