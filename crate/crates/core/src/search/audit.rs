use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{binomial, format_threegraph, ThreeGraph, TwoGraph};
use crate::patterns::{
    classify_no3matching, erdos_gallai_bound, longest_cycle_length, max_matching, Detector, NamedPattern,
    NoMatchingClass,
};

use super::enumerate::LABELED_MAX_N;
use super::random::random_threegraph_stream;

/// What every vertex must satisfy once the degree floor holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    Covered(NamedPattern),
    Either(NamedPattern, NamedPattern),
    Both(NamedPattern, NamedPattern),
}

impl Conclusion {
    pub fn describe(&self) -> String {
        match self {
            Conclusion::Covered(p) => format!("{p} covers every vertex"),
            Conclusion::Either(a, b) => format!("{a} or {b} covers every vertex"),
            Conclusion::Both(a, b) => format!("{a} and {b} both cover every vertex"),
        }
    }

    fn patterns(&self) -> Vec<NamedPattern> {
        match *self {
            Conclusion::Covered(p) => vec![p],
            Conclusion::Either(a, b) | Conclusion::Both(a, b) => vec![a, b],
        }
    }
}

impl Serialize for Conclusion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.describe())
    }
}

/// Checks a conclusion vertex by vertex.
struct Checker {
    conclusion: Conclusion,
    detectors: Vec<Detector>,
}

impl Checker {
    fn new(conclusion: Conclusion) -> Result<Self> {
        let detectors = conclusion
            .patterns()
            .into_iter()
            .map(|p| Detector::new(&p.into()))
            .collect::<Result<_>>()?;
        Ok(Checker { conclusion, detectors })
    }

    fn failing(&self, g: &ThreeGraph) -> Vec<usize> {
        (0..g.n())
            .filter(|&u| {
                let mut hits = self.detectors.iter().map(|d| d.is_covered(g, u));
                match self.conclusion {
                    Conclusion::Covered(_) => !hits.all(|h| h),
                    Conclusion::Either(..) => !hits.any(|h| h),
                    Conclusion::Both(..) => !hits.all(|h| h),
                }
            })
            .collect()
    }
}

/// A degree-sufficiency statement: minimum `i`-degree at least `floor(n, k)`
/// implies the conclusion.
pub struct TheoremAudit {
    pub id: &'static str,
    pub claim: &'static str,
    pub i: usize,
    /// Smallest `k` for parametrised statements; `None` when `k` is unused.
    pub min_k: Option<usize>,
    min_n: fn(usize) -> usize,
    asserted_n: fn(usize) -> usize,
    floor: fn(usize, usize) -> usize,
    conclusion: fn(usize) -> Conclusion,
}

impl TheoremAudit {
    /// Smallest `n` the statement covers for this `k`.
    pub fn min_n(&self, k: usize) -> usize {
        (self.min_n)(k)
    }

    /// Smallest `n` at which violations count as failures; below it results
    /// are recorded only.
    pub fn asserted_from(&self, k: usize) -> usize {
        (self.asserted_n)(k)
    }

    /// Degree floor `d`: the hypothesis is `delta_i >= d`.
    pub fn floor(&self, n: usize, k: usize) -> usize {
        (self.floor)(n, k)
    }

    pub fn conclusion(&self, k: usize) -> Conclusion {
        (self.conclusion)(k)
    }
}

fn c2(n: usize) -> usize {
    binomial(n, 2)
}

static REGISTRY: &[TheoremAudit] = &[
    TheoremAudit {
        id: "ttt2",
        claim: "c_2(n,T) = 1 for 5 <= n <= 10; for n >= 11 it is 2 when n-1 = 0 mod 3 and 1 otherwise",
        i: 2,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |n, _| if n >= 11 && (n - 1) % 3 == 0 { 3 } else { 2 },
        conclusion: |_| Conclusion::Covered(NamedPattern::T),
    },
    TheoremAudit {
        id: "ccc-i",
        claim: "c_1(n,T) <= n^2/6 + 5n/6 - 3",
        i: 1,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |n, _| (n * n + 5 * n - 18) / 6 + 1,
        conclusion: |_| Conclusion::Covered(NamedPattern::T),
    },
    TheoremAudit {
        id: "ccc-ii",
        claim: "delta_1 > n^2/6 + 5n/6 - 3 implies T1 or T2 covers every vertex",
        i: 1,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |n, _| (n * n + 5 * n - 18) / 6 + 1,
        conclusion: |_| Conclusion::Either(NamedPattern::T1, NamedPattern::T2),
    },
    TheoremAudit {
        id: "ccc-iii",
        claim: "delta_1 > n^2/4 + n/4 - 2 implies T1 and T2 both cover every vertex",
        i: 1,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |n, _| (n * n + n - 8) / 4 + 1,
        conclusion: |_| Conclusion::Both(NamedPattern::T1, NamedPattern::T2),
    },
    TheoremAudit {
        id: "s22",
        claim: "c_2(n,P_2) = 0",
        i: 2,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |_, _| 1,
        conclusion: |_| Conclusion::Covered(NamedPattern::P2),
    },
    TheoremAudit {
        id: "s21",
        claim: "c_1(n,P_2) = 3",
        i: 1,
        min_k: None,
        min_n: |_| 8,
        asserted_n: |_| 8,
        floor: |_, _| 4,
        conclusion: |_| Conclusion::Covered(NamedPattern::P2),
    },
    TheoremAudit {
        id: "pp2",
        claim: "delta_2 >= 2 implies every vertex is the centre of a P_2",
        i: 2,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |_, _| 2,
        conclusion: |_| Conclusion::Covered(NamedPattern::P2c),
    },
    TheoremAudit {
        id: "c1-p2-center",
        claim: "delta_1 >= n-1 implies every vertex is the centre of a P_2",
        i: 1,
        min_k: None,
        min_n: |_| 5,
        asserted_n: |_| 5,
        floor: |n, _| n - 1,
        conclusion: |_| Conclusion::Covered(NamedPattern::P2c),
    },
    TheoremAudit {
        id: "s32",
        claim: "delta_2 >= 2 implies an S_3 covers every vertex",
        i: 2,
        min_k: None,
        min_n: |_| 7,
        asserted_n: |_| 7,
        floor: |_, _| 2,
        conclusion: |_| Conclusion::Covered(NamedPattern::Sk(3)),
    },
    TheoremAudit {
        id: "s3-center",
        claim: "delta_2 >= 3 implies every vertex is the centre of an S_3",
        i: 2,
        min_k: None,
        min_n: |_| 7,
        asserted_n: |_| 7,
        floor: |_, _| 3,
        conclusion: |_| Conclusion::Covered(NamedPattern::Skc(3)),
    },
    TheoremAudit {
        id: "sk2-i",
        claim: "c_2(n,S_k) <= max{(4k^2-6k+2)/(n-1), k-2-(k^2-nk)/(n-1)}",
        i: 2,
        min_k: Some(3),
        min_n: |k| 2 * k + 1,
        asserted_n: |k| 2 * k + 1,
        floor: |n, k| {
            let x1 = (4 * k * k - 6 * k + 2) / (n - 1);
            let x2 = k - 2 + k * (n - k) / (n - 1);
            x1.max(x2) + 1
        },
        conclusion: |k| Conclusion::Covered(NamedPattern::Skc(k)),
    },
    TheoremAudit {
        id: "sk2-ii",
        claim: "c_1(n,S_k) <= max{C(2k-1,2), C(n-1,2) - C(n-k,2)}",
        i: 1,
        min_k: Some(3),
        min_n: |k| 2 * k + 1,
        asserted_n: |k| 2 * k + 1,
        floor: |n, k| c2(2 * k - 1).max(c2(n - 1) - c2(n - k)) + 1,
        conclusion: |k| Conclusion::Covered(NamedPattern::Skc(k)),
    },
    TheoremAudit {
        id: "p32-exact",
        claim: "c_2(n,P_3) = 1",
        i: 2,
        min_k: None,
        min_n: |_| 8,
        asserted_n: |_| 8,
        floor: |_, _| 2,
        conclusion: |_| Conclusion::Covered(NamedPattern::P3),
    },
    TheoremAudit {
        id: "p31",
        claim: "n-2 <= c_1(n,P_3) <= n+4",
        i: 1,
        min_k: None,
        min_n: |_| 8,
        asserted_n: |_| 9,
        floor: |n, _| n + 5,
        conclusion: |_| Conclusion::Covered(NamedPattern::P3),
    },
    TheoremAudit {
        id: "p32-pos2",
        claim: "delta_2 >= 3 implies every vertex lies in the first two edges of a P_3 at a shared vertex",
        i: 2,
        min_k: None,
        min_n: |_| 8,
        asserted_n: |_| 8,
        floor: |_, _| 3,
        conclusion: |_| Conclusion::Covered(NamedPattern::P3pos2),
    },
    TheoremAudit {
        id: "pk2-i",
        claim: "k-3 <= c_2(n,P_k) <= 2k-2",
        i: 2,
        min_k: Some(4),
        min_n: |k| 2 * k + 1,
        asserted_n: |k| 2 * k + 1,
        floor: |_, k| 2 * k - 1,
        conclusion: |k| Conclusion::Covered(NamedPattern::Pk(k)),
    },
    TheoremAudit {
        id: "pk2-ii",
        claim: "max{n-2, C(2k-1,2)} <= c_1(n,P_k) <= C(n-1,2) - C(n-2k+1,2)",
        i: 1,
        min_k: Some(4),
        min_n: |k| 4 * k,
        asserted_n: |k| 4 * k,
        floor: |n, k| c2(n - 1) - c2(n - 2 * k + 1) + 1,
        conclusion: |k| Conclusion::Covered(NamedPattern::Pk(k)),
    },
];

/// Every audited degree-sufficiency statement.
pub fn theorem_registry() -> &'static [TheoremAudit] {
    REGISTRY
}

fn lookup(id: &str) -> Result<&'static TheoremAudit> {
    REGISTRY.iter().find(|t| t.id == id).ok_or_else(|| {
        let ids: Vec<_> = REGISTRY.iter().map(|t| t.id).collect();
        invalid(format!("unknown theorem id {id:?}; known: {}", ids.join(", ")))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditParams {
    pub n: usize,
    pub k: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Sample index, or the edge mask for exhaustive runs.
    pub sample: u64,
    pub graph: String,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub theorem: String,
    pub claim: String,
    pub mode: String,
    pub n: usize,
    pub k: Option<usize>,
    pub i: usize,
    pub degree_floor: usize,
    pub conclusion: Conclusion,
    pub seed: Option<u64>,
    pub density: Option<f64>,
    /// Graphs meeting the hypothesis that were checked.
    pub graphs: u64,
    /// False when `n` is below the range where the statement is asserted.
    pub asserted: bool,
    pub violations: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        !self.asserted || self.violations == 0
    }
}

const KEPT_COUNTEREXAMPLES: usize = 5;

fn resolve(id: &str, n: usize, k: Option<usize>) -> Result<(&'static TheoremAudit, usize)> {
    let t = lookup(id)?;
    let k = match (t.min_k, k) {
        (None, _) => 0,
        (Some(_), None) => return Err(invalid(format!("{id} needs --k"))),
        (Some(min), Some(k)) if k < min || k > 6 => {
            return Err(invalid(format!("{id} needs {min} <= k <= 6, got k={k}")))
        }
        (Some(_), Some(k)) => k,
    };
    if n < t.min_n(k) || n > 16 {
        return Err(invalid(format!("{id} applies for {} <= n <= 16, got n={n}", t.min_n(k))));
    }
    let d = t.floor(n, k);
    let cap = binomial(n - t.i, 3 - t.i);
    if d > cap {
        return Err(Error::Infeasible(format!(
            "{id} at n={n} needs minimum {}-degree {d}, above the maximum {cap}",
            t.i
        )));
    }
    Ok((t, k))
}

fn report(t: &TheoremAudit, n: usize, k: usize, mode: String) -> AuditReport {
    AuditReport {
        theorem: t.id.into(),
        claim: t.claim.into(),
        mode,
        n,
        k: t.min_k.map(|_| k),
        i: t.i,
        degree_floor: t.floor(n, k),
        conclusion: t.conclusion(k),
        seed: None,
        density: None,
        graphs: 0,
        asserted: n >= t.asserted_from(k),
        violations: 0,
        counterexamples: Vec::new(),
    }
}

fn collect(rep: &mut AuditReport, results: Vec<(u64, ThreeGraph, Vec<usize>)>) {
    for (sample, g, bad) in results {
        if bad.is_empty() {
            continue;
        }
        rep.violations += 1;
        if rep.counterexamples.len() < KEPT_COUNTEREXAMPLES {
            rep.counterexamples.push(Counterexample {
                sample,
                graph: format_threegraph(&g, &[]),
                vertices: bad,
            });
        }
    }
}

/// Samples graphs meeting the hypothesis (random, then repaired up to the
/// degree floor) and checks the conclusion at every vertex. Sample `s` uses
/// stream `s` of the seed, so reports do not depend on thread scheduling.
pub fn audit_theorem(id: &str, params: AuditParams) -> Result<AuditReport> {
    let (t, k) = resolve(id, params.n, params.k)?;
    let checker = Checker::new(t.conclusion(k))?;
    let d = t.floor(params.n, k);
    let results = (0..params.samples as u64)
        .into_par_iter()
        .map(|s| {
            let g = random_threegraph_stream(params.n, Some((t.i, d)), params.density, params.seed, s)?;
            let bad = checker.failing(&g);
            Ok((s, g, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = report(t, params.n, k, "sampled".into());
    rep.seed = Some(params.seed);
    rep.density = Some(params.density);
    rep.graphs = params.samples as u64;
    collect(&mut rep, results);
    Ok(rep)
}

/// Checks the conclusion on every labeled graph on `n <= 6` vertices that
/// meets the hypothesis.
pub fn audit_exhaustive(id: &str, n: usize, k: Option<usize>) -> Result<AuditReport> {
    if n > LABELED_MAX_N {
        return Err(Error::Infeasible(format!(
            "exhaustive audits are limited to n <= {LABELED_MAX_N}, got n={n}"
        )));
    }
    let (t, k) = resolve(id, n, k)?;
    let checker = Checker::new(t.conclusion(k))?;
    let d = t.floor(n, k);
    let results: Vec<_> = (0..1u64 << binomial(n, 3))
        .into_par_iter()
        .filter_map(|mask| {
            let g = ThreeGraph::from_mask(n, mask);
            if g.min_degree(t.i).ok()? < d {
                return None;
            }
            let bad = checker.failing(&g);
            Some((mask, g, bad))
        })
        .collect();
    let mut rep = report(t, n, k, "exhaustive".into());
    rep.graphs = results.len() as u64;
    collect(&mut rep, results);
    Ok(rep)
}

/// Book classification of every 2-graph on `n` vertices with minimum degree
/// at least 2 and no 3-matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SgbtReport {
    pub n: usize,
    pub graphs: u64,
    pub qualifying: u64,
    pub books: u64,
    pub book_minus: u64,
    /// Qualifying graphs that are neither (edge masks, first few).
    pub failures: Vec<u64>,
    pub failure_count: u64,
}

impl SgbtReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

pub const SGBT_MAX_N: usize = 8;

#[derive(Default)]
struct SgbtTally {
    qualifying: u64,
    books: u64,
    book_minus: u64,
    failures: Vec<u64>,
    failure_count: u64,
}

/// Exhaustive check over all `2^C(n,2)` labeled 2-graphs (`7 <= n <= 8`).
pub fn sgbt_exhaustive(n: usize) -> Result<SgbtReport> {
    if !(7..=SGBT_MAX_N).contains(&n) {
        return Err(Error::Infeasible(format!("book classification runs for 7 <= n <= {SGBT_MAX_N}, got n={n}")));
    }
    let total = 1u64 << c2(n);
    const CHUNK: u64 = 1 << 14;
    let tally = (0..total / CHUNK)
        .into_par_iter()
        .map(|c| {
            let mut t = SgbtTally::default();
            for mask in c * CHUNK..(c + 1) * CHUNK {
                let h = TwoGraph::from_pair_mask(n, mask);
                if h.min_degree() < 2 || max_matching(&h).size >= 3 {
                    continue;
                }
                t.qualifying += 1;
                match classify_no3matching(&h) {
                    Ok(NoMatchingClass::Book) => t.books += 1,
                    Ok(NoMatchingClass::BookMinus) => t.book_minus += 1,
                    _ => {
                        t.failure_count += 1;
                        if t.failures.len() < KEPT_COUNTEREXAMPLES {
                            t.failures.push(mask);
                        }
                    }
                }
            }
            t
        })
        .reduce(SgbtTally::default, |mut a, b| {
            a.qualifying += b.qualifying;
            a.books += b.books;
            a.book_minus += b.book_minus;
            a.failure_count += b.failure_count;
            a.failures.extend(b.failures);
            a.failures.sort_unstable();
            a.failures.truncate(KEPT_COUNTEREXAMPLES);
            a
        });
    Ok(SgbtReport {
        n,
        graphs: total,
        qualifying: tally.qualifying,
        books: tally.books,
        book_minus: tally.book_minus,
        failures: tally.failures,
        failure_count: tally.failure_count,
    })
}

/// Largest edge count among `n`-vertex graphs without a `k`-matching,
/// against the closed-form bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErdosGallaiReport {
    pub n: usize,
    pub k: usize,
    pub bound: usize,
    pub max_edges: usize,
    pub graphs: u64,
}

impl ErdosGallaiReport {
    pub fn holds(&self) -> bool {
        self.max_edges <= self.bound
    }

    pub fn tight(&self) -> bool {
        self.max_edges == self.bound
    }
}

/// Exhaustive over all 2-graphs on `n <= 8` vertices.
pub fn erdos_gallai_exhaustive(n: usize, k: usize) -> Result<ErdosGallaiReport> {
    if n > 8 {
        return Err(Error::Infeasible(format!("exhaustive matching audit limited to n <= 8, got n={n}")));
    }
    let bound = erdos_gallai_bound(n, k)?;
    let total = 1u64 << c2(n);
    let max_edges = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let h = TwoGraph::from_pair_mask(n, mask);
            (max_matching(&h).size < k).then(|| mask.count_ones() as usize)
        })
        .max()
        .unwrap_or(0);
    Ok(ErdosGallaiReport {
        n,
        k,
        bound,
        max_edges,
        graphs: total,
    })
}

/// Random 2-graphs checked for a cycle of length at least `min degree + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthReport {
    pub samples: u64,
    pub seed: u64,
    /// Samples with minimum degree at least 2.
    pub applicable: u64,
    pub violations: u64,
}

pub fn girth_random(samples: u64, seed: u64) -> GirthReport {
    let (applicable, violations) = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let n = rng.gen_range(3..=14);
            let p = rng.gen_range(0.2..0.9);
            let mut h = TwoGraph::new(n).expect("n is small");
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        h.add_edge(a, b).expect("in range");
                    }
                }
            }
            let delta = h.min_degree();
            if delta < 2 {
                return (0, 0);
            }
            (1, u64::from(longest_cycle_length(&h) < delta + 1))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    GirthReport {
        samples,
        seed,
        applicable,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors() {
        let f = |id: &str, n, k| lookup(id).unwrap().floor(n, k);
        assert_eq!(f("ccc-ii", 12, 0), 32);
        assert_eq!(f("ccc-iii", 12, 0), 38);
        assert_eq!(f("ttt2", 13, 0), 3);
        assert_eq!(f("ttt2", 12, 0), 2);
        assert_eq!(f("pk2-ii", 16, 4), 70);
        assert_eq!(f("sk2-ii", 7, 3), 11);
    }

    #[test]
    fn unknown_and_out_of_range() {
        let p = AuditParams {
            n: 6,
            k: None,
            samples: 1,
            seed: 0,
            density: 0.5,
        };
        assert!(audit_theorem("nope", p).is_err());
        assert!(audit_theorem("s32", p).is_err());
        assert!(audit_theorem("sk2-i", AuditParams { n: 9, ..p }).is_err());
    }
}
