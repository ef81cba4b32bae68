//! Coverage detectors for the named patterns.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::hypergraph::{Bits, ThreeGraph, VertexSet};

use super::embed::EmbedContext;
use super::matching::has_matching_of_size;
use super::{NamedPattern, Pattern};

/// Which positions of the generalized triangle cover a vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct TrianglePositions {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
}

impl TrianglePositions {
    pub fn any(&self) -> bool {
        self.t1 || self.t2 || self.t3
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// `{u,x,y}, {s,t,x}, {s,t,y}` for distinct `u,x,y,s,t`.
pub fn covers_t1(g: &ThreeGraph, u: usize) -> bool {
    let n = g.n();
    for x in 0..n {
        for y in Bits(g.co_neighbors(u, x) & !((bit(x) << 1) - 1)) {
            let forbidden = bit(u) | bit(x) | bit(y);
            for s in 0..n {
                if forbidden & bit(s) == 0
                    && g.co_neighbors(x, s) & g.co_neighbors(y, s) & !forbidden != 0
                {
                    return true;
                }
            }
        }
    }
    false
}

/// `{u,a,b}, {u,c,d}, {a,b,c}` for distinct `u,a,b,c,d`.
pub fn covers_t2(g: &ThreeGraph, u: usize) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in Bits(g.co_neighbors(u, a) & !((bit(a) << 1) - 1)) {
            for c in Bits(g.co_neighbors(a, b) & !bit(u)) {
                if g.co_neighbors(u, c) & !(bit(a) | bit(b)) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

/// `{u,b,c}, {u,b,d}, {c,d,e}` for distinct `u,b,c,d,e`.
pub fn covers_t3(g: &ThreeGraph, u: usize) -> bool {
    let n = g.n();
    for b in 0..n {
        let m = g.co_neighbors(u, b);
        for c in Bits(m) {
            for d in Bits(m & !((bit(c) << 1) - 1)) {
                if g.co_neighbors(c, d) & !(bit(u) | bit(b)) != 0 {
                    return true;
                }
            }
        }
    }
    false
}

pub fn covers_t(g: &ThreeGraph, u: usize) -> TrianglePositions {
    assert!(u < g.n(), "vertex {u} out of range");
    TrianglePositions {
        t1: covers_t1(g, u),
        t2: covers_t2(g, u),
        t3: covers_t3(g, u),
    }
}

/// Two disjoint edges through `u` (u is the shared vertex of a `P_2`).
pub fn covers_p2_center(g: &ThreeGraph, u: usize) -> bool {
    covers_sk_center(g, u, 2)
}

/// A `k`-matching in the link graph of `u`.
pub fn covers_sk_center(g: &ThreeGraph, u: usize, k: usize) -> bool {
    assert!(u < g.n(), "vertex {u} out of range");
    has_matching_of_size(&g.link_unchecked(u), k)
}

/// `u` as a leaf of `S_k`: an edge `{u,a,c}` plus a `(k-1)`-matching in the
/// link of `c` avoiding `u` and `a`.
pub fn covers_sk_leaf(g: &ThreeGraph, u: usize, k: usize) -> bool {
    assert!(u < g.n(), "vertex {u} out of range");
    if k == 0 {
        return false;
    }
    for c in 0..g.n() {
        let m = g.co_neighbors(u, c);
        if m == 0 {
            continue;
        }
        let link = g.link_unchecked(c);
        for a in Bits(m) {
            let rest = link.without(VertexSet(bit(u) | bit(a) | bit(c)));
            if has_matching_of_size(&rest, k - 1) {
                return true;
            }
        }
    }
    false
}

pub fn covers_sk(g: &ThreeGraph, u: usize, k: usize) -> bool {
    covers_sk_center(g, u, k) || covers_sk_leaf(g, u, k)
}

/// `{u,v1,v2}, {u,v3,v4}, {v4,v5,v6}` on seven distinct vertices.
pub fn covers_p3_position2(g: &ThreeGraph, u: usize) -> bool {
    assert!(u < g.n(), "vertex {u} out of range");
    let n = g.n();
    for a in 0..n {
        for b in Bits(g.co_neighbors(u, a) & !((bit(a) << 1) - 1)) {
            let base = bit(u) | bit(a) | bit(b);
            for v4 in 0..n {
                if base & bit(v4) != 0 {
                    continue;
                }
                let m3 = g.co_neighbors(u, v4) & !base;
                if m3 == 0 {
                    continue;
                }
                for v5 in 0..n {
                    if (base | bit(v4)) & bit(v5) != 0 {
                        continue;
                    }
                    let m6 = g.co_neighbors(v4, v5) & !base;
                    let m3 = m3 & !bit(v5);
                    if m3 != 0 && m6 != 0 && !(m3 == m6 && m3.count_ones() == 1) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Rooted copies of `P_k`, one per root orbit, for `k <= 6`.
pub(crate) fn path_positions(k: usize) -> &'static [Pattern] {
    static CACHE: OnceLock<Vec<Vec<Pattern>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=6)
            .map(|k| {
                if k == 0 {
                    return Vec::new();
                }
                let base = Pattern::linear_path(k, 0).unwrap();
                base.orbit_representatives()
                    .into_iter()
                    .map(|r| base.with_root(r).unwrap())
                    .collect()
            })
            .collect()
    });
    &all[k]
}

/// `u` lies in some copy of `P_k`, in any position.
pub fn covers_pk(g: &ThreeGraph, u: usize, k: usize) -> bool {
    assert!(u < g.n(), "vertex {u} out of range");
    assert!((1..=6).contains(&k), "P_k detection supports 1 <= k <= 6");
    let ctx = EmbedContext::new(g);
    path_positions(k).iter().any(|p| ctx.find(p, u).is_some())
}

/// A named or custom pattern to test coverage against.
#[derive(Debug, Clone)]
pub enum PatternQuery {
    Named(NamedPattern),
    Custom(Pattern),
}

impl PatternQuery {
    pub fn name(&self) -> String {
        match self {
            PatternQuery::Named(p) => p.to_string(),
            PatternQuery::Custom(_) => "custom".into(),
        }
    }
}

impl From<NamedPattern> for PatternQuery {
    fn from(p: NamedPattern) -> Self {
        PatternQuery::Named(p)
    }
}

enum Check {
    T1,
    T2,
    T3,
    SkCenter(usize),
    SkLeaf(usize),
    P3Pos2,
    Embed(Pattern),
}

fn checks(q: &PatternQuery) -> crate::Result<Vec<(String, Check)>> {
    use NamedPattern::*;
    let named = match q {
        PatternQuery::Custom(p) => return Ok(vec![(format!("custom@{}", p.root()), Check::Embed(p.clone()))]),
        PatternQuery::Named(n) => *n,
    };
    Ok(match named {
        T => vec![("T1".into(), Check::T1), ("T2".into(), Check::T2), ("T3".into(), Check::T3)],
        T1 => vec![("T1".into(), Check::T1)],
        T2 => vec![("T2".into(), Check::T2)],
        T3 => vec![("T3".into(), Check::T3)],
        P2c => vec![("P2c".into(), Check::SkCenter(2))],
        Skc(k) => vec![(format!("Skc:{k}"), Check::SkCenter(k))],
        Sk(k) => vec![(format!("Sk:{k}@0"), Check::SkCenter(k)), (format!("Sk:{k}@1"), Check::SkLeaf(k))],
        P3pos2 => vec![("P3pos2".into(), Check::P3Pos2)],
        P2 | P3 | Pk(_) => named.positions()?.into_iter().map(|(l, p)| (l, Check::Embed(p))).collect(),
    })
}

fn run_check<'a>(g: &'a ThreeGraph, ctx: &OnceLock<EmbedContext<'a>>, check: &Check, u: usize) -> bool {
    match check {
        Check::T1 => covers_t1(g, u),
        Check::T2 => covers_t2(g, u),
        Check::T3 => covers_t3(g, u),
        Check::SkCenter(k) => covers_sk_center(g, u, *k),
        Check::SkLeaf(k) => covers_sk_leaf(g, u, *k),
        Check::P3Pos2 => covers_p3_position2(g, u),
        Check::Embed(p) => ctx.get_or_init(|| EmbedContext::new(g)).find(p, u).is_some(),
    }
}

/// Coverage of a single vertex, checked lazily position by position.
pub struct Detector {
    checks: Vec<(String, Check)>,
}

impl Detector {
    pub fn new(q: &PatternQuery) -> crate::Result<Self> {
        Ok(Detector { checks: checks(q)? })
    }

    pub fn position_labels(&self) -> Vec<&str> {
        self.checks.iter().map(|(l, _)| l.as_str()).collect()
    }

    /// Whether some position covers `u`.
    pub fn is_covered(&self, g: &ThreeGraph, u: usize) -> bool {
        assert!(u < g.n(), "vertex {u} out of range");
        let ctx = OnceLock::new();
        self.checks.iter().any(|(_, c)| run_check(g, &ctx, c, u))
    }

    /// All satisfied position labels at `u`.
    fn labels<'a>(&self, g: &'a ThreeGraph, ctx: &OnceLock<EmbedContext<'a>>, u: usize) -> Vec<String> {
        self.checks
            .iter()
            .filter(|(_, c)| run_check(g, ctx, c, u))
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// First vertex not covered, if any.
    pub fn first_uncovered(&self, g: &ThreeGraph) -> Option<usize> {
        let ctx = OnceLock::new();
        (0..g.n()).find(|&u| !self.checks.iter().any(|(_, c)| run_check(g, &ctx, c, u)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCover {
    pub vertex: usize,
    pub labels: Vec<String>,
}

/// Per-vertex position labels and the vertices with none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub pattern: String,
    pub vertices: Vec<VertexCover>,
    pub uncovered: Vec<usize>,
}

impl CoverReport {
    pub fn is_covering(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Runs the detector for every vertex (in parallel, merged in vertex order).
pub fn has_f_covering(g: &ThreeGraph, q: &PatternQuery) -> crate::Result<CoverReport> {
    let det = Detector::new(q)?;
    let ctx = OnceLock::new();
    let vertices: Vec<VertexCover> = (0..g.n())
        .into_par_iter()
        .map(|u| VertexCover {
            vertex: u,
            labels: det.labels(g, &ctx, u),
        })
        .collect();
    let uncovered = vertices.iter().filter(|v| v.labels.is_empty()).map(|v| v.vertex).collect();
    Ok(CoverReport {
        pattern: q.name(),
        vertices,
        uncovered,
    })
}
