use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{parse_document, ThreeGraph};

use super::embed::find_rooted_embedding;

/// Largest pattern this crate will embed.
pub const MAX_PATTERN_VERTICES: usize = 13;

/// A small 3-graph with a designated root vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    m: usize,
    edges: Vec<[usize; 3]>,
    root: usize,
}

impl Pattern {
    pub fn new(m: usize, edges: Vec<[usize; 3]>, root: usize) -> Result<Self> {
        if m > MAX_PATTERN_VERTICES {
            return Err(invalid(format!("patterns have at most {MAX_PATTERN_VERTICES} vertices, got {m}")));
        }
        if root >= m {
            return Err(invalid(format!("root {root} out of range for m={m}")));
        }
        let mut seen = std::collections::HashSet::new();
        let mut touched = 0u64;
        let mut sorted = Vec::with_capacity(edges.len());
        for [a, b, c] in edges {
            if a >= m || b >= m || c >= m {
                return Err(invalid(format!("pattern edge ({a},{b},{c}) out of range for m={m}")));
            }
            if a == b || b == c || a == c {
                return Err(invalid(format!("pattern edge ({a},{b},{c}) repeats a vertex")));
            }
            let mut e = [a, b, c];
            e.sort_unstable();
            if !seen.insert(e) {
                return Err(invalid(format!("duplicate pattern edge {e:?}")));
            }
            touched |= 1 << a | 1 << b | 1 << c;
            sorted.push(e);
        }
        if touched.count_ones() as usize != m {
            return Err(invalid("every pattern vertex must lie in an edge"));
        }
        Ok(Pattern { m, edges: sorted, root })
    }

    /// Parses the graph text format with an `r <root>` line.
    pub fn parse(text: &str) -> Result<Self> {
        let doc = parse_document(text)?;
        let root = doc.root.ok_or(Error::Parse {
            line: 0,
            message: "pattern file needs an 'r <root>' line".into(),
        })?;
        Pattern::new(doc.graph.n(), doc.graph.edges().collect(), root)
    }

    /// Generalized triangle on `0..5`: `{0,1,2}, {0,1,3}, {2,3,4}`.
    pub fn generalized_triangle(root: usize) -> Result<Self> {
        Pattern::new(5, vec![[0, 1, 2], [0, 1, 3], [2, 3, 4]], root)
    }

    /// Linear path `P_k` on `0..2k+1` with edges `{2i, 2i+1, 2i+2}`.
    pub fn linear_path(k: usize, root: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("a linear path needs k >= 1"));
        }
        Pattern::new(2 * k + 1, (0..k).map(|i| [2 * i, 2 * i + 1, 2 * i + 2]).collect(), root)
    }

    /// Star `S_k` with centre 0 and edges `{0, 2i-1, 2i}`.
    pub fn star(k: usize, root: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("a star needs k >= 1"));
        }
        Pattern::new(2 * k + 1, (1..=k).map(|i| [0, 2 * i - 1, 2 * i]).collect(), root)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn with_root(&self, root: usize) -> Result<Self> {
        Pattern::new(self.m, self.edges.clone(), root)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn as_graph(&self) -> ThreeGraph {
        ThreeGraph::from_edges(self.m, self.edges.iter().copied()).expect("validated pattern")
    }

    /// Vertex orbits under the automorphism group, each sorted, ordered by
    /// least member. Automorphisms are found as embeddings of the pattern
    /// into itself.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let g = self.as_graph();
        let mut orbit_of = vec![usize::MAX; self.m];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for p in 0..self.m {
            if orbit_of[p] != usize::MAX {
                continue;
            }
            let rooted = self.with_root(p).expect("in range");
            let id = out.len();
            let mut orbit = Vec::new();
            for q in p..self.m {
                if orbit_of[q] == usize::MAX && find_rooted_embedding(&g, &rooted, q).is_some() {
                    orbit_of[q] = id;
                    orbit.push(q);
                }
            }
            out.push(orbit);
        }
        out
    }

    /// One root per orbit (the least vertex of each).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        self.orbits().into_iter().map(|o| o[0]).collect()
    }
}

/// The patterns accepted by name on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedPattern {
    /// Generalized triangle, any position.
    T,
    T1,
    T2,
    T3,
    /// `P_2`, any position.
    P2,
    /// `P_2` with the probed vertex at the shared vertex.
    P2c,
    P3,
    /// `P_3` with the probed vertex in the first two edges.
    P3pos2,
    Pk(usize),
    Sk(usize),
    /// `S_k` with the probed vertex at the centre.
    Skc(usize),
}

impl NamedPattern {
    /// The patterns whose rooted embeddings decide coverage, each with a
    /// position label. A vertex is covered iff at least one embeds.
    pub fn positions(&self) -> Result<Vec<(String, Pattern)>> {
        use NamedPattern::*;
        let t = |r| Pattern::generalized_triangle(r);
        Ok(match *self {
            T => vec![("T1".into(), t(4)?), ("T2".into(), t(2)?), ("T3".into(), t(0)?)],
            T1 => vec![("T1".into(), t(4)?)],
            T2 => vec![("T2".into(), t(2)?)],
            T3 => vec![("T3".into(), t(0)?)],
            P2c => vec![("P2c".into(), Pattern::linear_path(2, 2)?)],
            P3pos2 => vec![("P3pos2".into(), Pattern::linear_path(3, 2)?)],
            Skc(k) => vec![(format!("Skc:{k}"), Pattern::star(k, 0)?)],
            P2 | P3 | Pk(_) | Sk(_) => {
                let base = match *self {
                    P2 => Pattern::linear_path(2, 0)?,
                    P3 => Pattern::linear_path(3, 0)?,
                    Pk(k) => Pattern::linear_path(k, 0)?,
                    Sk(k) => Pattern::star(k, 0)?,
                    _ => unreachable!(),
                };
                base.orbit_representatives()
                    .into_iter()
                    .map(|r| Ok((format!("{self}@{r}"), base.with_root(r)?)))
                    .collect::<Result<_>>()?
            }
        })
    }

    /// Number of pattern vertices.
    pub fn vertex_count(&self) -> usize {
        use NamedPattern::*;
        match *self {
            T | T1 | T2 | T3 | P2 | P2c => 5,
            P3 | P3pos2 => 7,
            Pk(k) | Sk(k) | Skc(k) => 2 * k + 1,
        }
    }
}

impl fmt::Display for NamedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedPattern::*;
        match self {
            T => write!(f, "T"),
            T1 => write!(f, "T1"),
            T2 => write!(f, "T2"),
            T3 => write!(f, "T3"),
            P2 => write!(f, "P2"),
            P2c => write!(f, "P2c"),
            P3 => write!(f, "P3"),
            P3pos2 => write!(f, "P3pos2"),
            Pk(k) => write!(f, "Pk:{k}"),
            Sk(k) => write!(f, "Sk:{k}"),
            Skc(k) => write!(f, "Skc:{k}"),
        }
    }
}

impl FromStr for NamedPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use NamedPattern::*;
        let param = |rest: &str| -> Result<usize> {
            let k: usize = rest
                .parse()
                .map_err(|_| invalid(format!("bad pattern parameter in '{s}'")))?;
            if k == 0 || 2 * k + 1 > MAX_PATTERN_VERTICES {
                return Err(invalid(format!("pattern parameter k={k} must be in 1..=6")));
            }
            Ok(k)
        };
        Ok(match s {
            "T" => T,
            "T1" => T1,
            "T2" => T2,
            "T3" => T3,
            "P2" => P2,
            "P2c" => P2c,
            "P3" => P3,
            "P3pos2" => P3pos2,
            _ => {
                if let Some(rest) = s.strip_prefix("Pk:") {
                    Pk(param(rest)?)
                } else if let Some(rest) = s.strip_prefix("Skc:") {
                    Skc(param(rest)?)
                } else if let Some(rest) = s.strip_prefix("Sk:") {
                    Sk(param(rest)?)
                } else {
                    return Err(invalid(format!("unknown pattern '{s}'")));
                }
            }
        })
    }
}
