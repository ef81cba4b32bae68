use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial, triple_table, ThreeGraph};
use crate::patterns::{Detector, PatternQuery};

use super::{Budget, Meter, Outcome, SearchOutcome, SearchStats, WitnessGraph};

pub const WITNESS_MAX_N: usize = 16;

/// The uncovered vertex is fixed to this label.
const ROOT: usize = 0;

#[derive(Debug, Clone, Copy)]
pub struct WitnessOptions {
    pub budget: Budget,
    /// Depth at which the search tree is split across threads; `None` runs
    /// sequentially.
    pub split_depth: Option<usize>,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            budget: Budget::UNLIMITED,
            split_depth: Some(3),
        }
    }
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

/// Which `i`-sets each triple contains, and the reverse.
struct Sets {
    of_triple: Vec<[usize; 3]>,
    triples: Vec<Vec<usize>>,
    members: Vec<u64>,
}

impl Sets {
    fn new(n: usize, i: usize) -> Self {
        let count = binomial(n, i);
        let mut triples = vec![Vec::new(); count];
        let of_triple: Vec<[usize; 3]> = triple_table()[..binomial(n, 3)]
            .iter()
            .map(|&[a, b, c]| {
                if i == 1 {
                    [a, b, c]
                } else {
                    [pair_index(a, b), pair_index(a, c), pair_index(b, c)]
                }
            })
            .collect();
        for (t, sets) in of_triple.iter().enumerate() {
            for &s in sets {
                triples[s].push(t);
            }
        }
        let members = if i == 1 {
            (0..n).map(|v| 1u64 << v).collect()
        } else {
            (1..n).flat_map(|b| (0..b).map(move |a| 1u64 << a | 1 << b)).collect()
        };
        Sets {
            of_triple,
            triples,
            members,
        }
    }
}

fn pair_index(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

#[derive(Clone, Copy)]
enum Change {
    Included(usize),
    Excluded(usize, bool),
}

enum Step {
    Found(ThreeGraph),
    Done,
    Budget,
}

enum Task<'a> {
    Found(ThreeGraph),
    Budget,
    Explore(State<'a>),
}

#[derive(Clone)]
struct State<'a> {
    d: usize,
    det: &'a Detector,
    sets: &'a Sets,
    graph: ThreeGraph,
    status: Vec<u8>,
    incl: Vec<usize>,
    undec: Vec<usize>,
    // Per vertex: number of included or branch-excluded triples through it.
    touch: Vec<u32>,
    trail: Vec<Change>,
}

impl<'a> State<'a> {
    fn include(&mut self, t: usize) {
        self.status[t] = IN;
        self.graph.insert_index(t);
        for &s in &self.sets.of_triple[t] {
            self.incl[s] += 1;
            self.undec[s] -= 1;
        }
        for v in triple_table()[t] {
            self.touch[v] += 1;
        }
        self.trail.push(Change::Included(t));
    }

    /// Returns false when some `i`-set can no longer reach degree `d`.
    fn exclude(&mut self, t: usize, branch: bool) -> bool {
        self.status[t] = OUT;
        let mut ok = true;
        for &s in &self.sets.of_triple[t] {
            self.undec[s] -= 1;
            ok &= self.incl[s] + self.undec[s] >= self.d;
        }
        if branch {
            for v in triple_table()[t] {
                self.touch[v] += 1;
            }
        }
        self.trail.push(Change::Excluded(t, branch));
        ok
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail longer than mark") {
                Change::Included(t) => {
                    self.status[t] = UNDECIDED;
                    self.graph.remove_index(t);
                    for &s in &self.sets.of_triple[t] {
                        self.incl[s] -= 1;
                        self.undec[s] += 1;
                    }
                    for v in triple_table()[t] {
                        self.touch[v] -= 1;
                    }
                }
                Change::Excluded(t, branch) => {
                    self.status[t] = UNDECIDED;
                    for &s in &self.sets.of_triple[t] {
                        self.undec[s] += 1;
                    }
                    if branch {
                        for v in triple_table()[t] {
                            self.touch[v] -= 1;
                        }
                    }
                }
            }
        }
    }

    /// Excludes triples whose inclusion would cover the root and forces
    /// triples where an `i`-set has exactly enough left. False on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            if self.det.is_covered(&self.graph, ROOT) {
                return false;
            }
            for t in 0..self.status.len() {
                if self.status[t] != UNDECIDED {
                    continue;
                }
                self.graph.insert_index(t);
                let covered = self.det.is_covered(&self.graph, ROOT);
                self.graph.remove_index(t);
                if covered && !self.exclude(t, false) {
                    return false;
                }
            }
            let mut forced = false;
            for s in 0..self.incl.len() {
                if self.incl[s] >= self.d {
                    continue;
                }
                if self.incl[s] + self.undec[s] < self.d {
                    return false;
                }
                if self.incl[s] + self.undec[s] == self.d {
                    for &t in &self.sets.triples[s] {
                        if self.status[t] == UNDECIDED {
                            self.include(t);
                            forced = true;
                        }
                    }
                }
            }
            if !forced {
                return true;
            }
        }
    }

    /// The deficient `i`-set with the fewest undecided triples.
    fn pick(&self) -> Option<usize> {
        (0..self.incl.len())
            .filter(|&s| self.incl[s] < self.d)
            .min_by_key(|&s| (self.undec[s], s))
    }

    /// Undecided triples of `s` in colex order, each flagged with whether it
    /// must be explored. A candidate is skipped when an earlier one differs
    /// from it only by a permutation of untouched vertices, since such a
    /// permutation fixes the whole search state.
    fn candidates(&self, s: usize) -> Vec<(usize, bool)> {
        let mut seen: Vec<(u64, u32)> = Vec::new();
        self.sets.triples[s]
            .iter()
            .filter(|&&t| self.status[t] == UNDECIDED)
            .map(|&t| {
                let (mut fixed, mut free) = (0u64, 0u32);
                for v in triple_table()[t] {
                    if self.sets.members[s] >> v & 1 == 1 {
                        continue;
                    }
                    if v != ROOT && self.touch[v] == 0 {
                        free += 1;
                    } else {
                        fixed |= 1 << v;
                    }
                }
                let key = (fixed, free);
                let explore = free == 0 || !seen.contains(&key);
                if free > 0 {
                    seen.push(key);
                }
                (t, explore)
            })
            .collect()
    }

    fn step(&mut self, meter: &Meter) -> Step {
        if !meter.tick() {
            return Step::Budget;
        }
        let mark = self.trail.len();
        let result = self.branch(meter, &mut |st: &mut State<'a>, meter| st.step(meter));
        self.undo(mark);
        result
    }

    fn branch(&mut self, meter: &Meter, child: &mut dyn FnMut(&mut State<'a>, &Meter) -> Step) -> Step {
        if !self.propagate() {
            return Step::Done;
        }
        let Some(s) = self.pick() else {
            return Step::Found(self.graph.clone());
        };
        let cands = self.candidates(s);
        for j in 0..cands.len() {
            let (t, explore) = cands[j];
            if !explore {
                continue;
            }
            let mark = self.trail.len();
            let mut ok = true;
            for &(earlier, _) in &cands[..j] {
                ok &= self.exclude(earlier, true);
            }
            if !ok {
                self.undo(mark);
                break;
            }
            self.include(t);
            let r = child(self, meter);
            self.undo(mark);
            match r {
                Step::Done => {}
                other => return other,
            }
        }
        Step::Done
    }

    /// Sequential search down to `depth`; the remaining subtrees are pushed
    /// as tasks in search order. Returns false once the search must stop.
    fn split(&mut self, meter: &Meter, depth: usize, out: &mut Vec<Task<'a>>) -> bool {
        if depth == 0 {
            out.push(Task::Explore(self.clone()));
            return true;
        }
        if !meter.tick() {
            out.push(Task::Budget);
            return false;
        }
        let mark = self.trail.len();
        let result = self.branch(meter, &mut |st: &mut State<'a>, meter| {
            if st.split(meter, depth - 1, out) {
                Step::Done
            } else {
                Step::Budget
            }
        });
        self.undo(mark);
        match result {
            Step::Found(g) => {
                out.push(Task::Found(g));
                false
            }
            Step::Budget => false,
            Step::Done => true,
        }
    }
}

/// Searches for a graph on `n` vertices with minimum `i`-degree at least `d`
/// in which vertex 0 is not covered.
///
/// Each triple is included, excluded or undecided. Triples whose inclusion
/// would cover vertex 0 are excluded, `i`-sets that can no longer reach `d`
/// prune the branch, and sets with exactly `d` remaining options force them
/// in. Branching is on the most constrained deficient set; candidates that
/// differ only by untouched vertices are tried once. `Exhausted` means no
/// such graph exists.
pub fn find_witness(n: usize, pattern: &PatternQuery, i: usize, d: usize, opts: WitnessOptions) -> Result<SearchOutcome> {
    if !(1..=2).contains(&i) {
        return Err(invalid(format!("degree type i must be 1 or 2, got {i}")));
    }
    if !(3..=WITNESS_MAX_N).contains(&n) {
        return Err(invalid(format!("witness search supports 3 <= n <= {WITNESS_MAX_N}, got n={n}")));
    }
    let det = Detector::new(pattern)?;
    let sets = Sets::new(n, i);
    let mut root = State {
        d,
        det: &det,
        sets: &sets,
        graph: ThreeGraph::new(n)?,
        status: vec![UNDECIDED; binomial(n, 3)],
        incl: vec![0; sets.triples.len()],
        undec: sets.triples.iter().map(Vec::len).collect(),
        touch: vec![0; n],
        trail: Vec::new(),
    };
    let meter = Meter::new(opts.budget);

    let step = match opts.split_depth {
        None => root.step(&meter),
        Some(depth) => {
            let mut tasks = Vec::new();
            root.split(&meter, depth, &mut tasks);
            tasks
                .into_par_iter()
                .find_map_first(|task| match task {
                    Task::Found(g) => Some(Step::Found(g)),
                    Task::Budget => Some(Step::Budget),
                    Task::Explore(mut st) => match st.step(&meter) {
                        Step::Done => None,
                        other => Some(other),
                    },
                })
                .unwrap_or(Step::Done)
        }
    };

    let stats = SearchStats {
        nodes: meter.count(),
        graphs: 0,
        elapsed: meter.elapsed(),
        seed: None,
    };
    let outcome = match step {
        Step::Found(graph) => {
            let min_degree = graph.min_degree(i)?;
            if min_degree < d || det.is_covered(&graph, ROOT) {
                return Err(Error::InternalInconsistency(format!(
                    "witness failed re-validation (min degree {min_degree}, required {d})"
                )));
            }
            Outcome::Witness {
                witness: WitnessGraph {
                    graph,
                    vertex: ROOT,
                    min_degree,
                },
            }
        }
        Step::Done => Outcome::Exhausted,
        Step::Budget => Outcome::BudgetExceeded {
            progress: format!("visited {} search nodes", stats.nodes),
        },
    };
    Ok(SearchOutcome { outcome, stats })
}
