use crate::hypergraph::{low_mask, Bits, ThreeGraph};

use super::Pattern;

/// Per-graph data reused across embedding queries.
pub struct EmbedContext<'a> {
    g: &'a ThreeGraph,
    degree: Vec<usize>,
    /// Vertices sharing at least one edge with each vertex.
    reach: Vec<u64>,
}

impl<'a> EmbedContext<'a> {
    pub fn new(g: &'a ThreeGraph) -> Self {
        let n = g.n();
        let degree = (0..n).map(|v| g.vertex_degree(v)).collect();
        let reach = (0..n)
            .map(|v| (0..n).filter(|&a| g.co_neighbors(v, a) != 0).fold(0u64, |m, a| m | 1 << a))
            .collect();
        EmbedContext { g, degree, reach }
    }

    /// Injective map `phi` from pattern vertices to graph vertices with
    /// `phi[root] = u` and every pattern edge mapped onto an edge.
    pub fn find(&self, f: &Pattern, u: usize) -> Option<Vec<usize>> {
        let n = self.g.n();
        let m = f.vertex_count();
        if u >= n || m > n || self.degree[u] < f.degree(f.root()) {
            return None;
        }
        let plan = Plan::new(f);
        let mut phi = vec![usize::MAX; m];
        phi[f.root()] = u;
        if self.extend(&plan, 1, &mut phi, 1u64 << u) {
            Some(phi)
        } else {
            None
        }
    }

    fn extend(&self, plan: &Plan, idx: usize, phi: &mut [usize], used: u64) -> bool {
        let Some(step) = plan.steps.get(idx) else {
            return true;
        };
        let mut cand = low_mask(self.g.n()) & !used;
        for &(x, y) in &step.closed {
            cand &= self.g.co_neighbors(phi[x], phi[y]);
        }
        for &x in &step.open {
            cand &= self.reach[phi[x]];
        }
        for w in Bits(cand) {
            if self.degree[w] < step.degree {
                continue;
            }
            phi[step.vertex] = w;
            if self.extend(plan, idx + 1, phi, used | 1 << w) {
                return true;
            }
        }
        phi[step.vertex] = usize::MAX;
        false
    }
}

/// Rooted embedding of `f` into `g` sending the root to `u`, or `None`.
pub fn find_rooted_embedding(g: &ThreeGraph, f: &Pattern, u: usize) -> Option<Vec<usize>> {
    EmbedContext::new(g).find(f, u)
}

struct Step {
    vertex: usize,
    degree: usize,
    /// Earlier pairs completing an edge with this vertex.
    closed: Vec<(usize, usize)>,
    /// Earlier vertices sharing an edge whose third vertex comes later.
    open: Vec<usize>,
}

struct Plan {
    steps: Vec<Step>,
}

impl Plan {
    /// Root first, then greedily the vertex most tied to those already
    /// placed, preferring higher pattern degree.
    fn new(f: &Pattern) -> Plan {
        let m = f.vertex_count();
        let mut placed = vec![false; m];
        let mut order = vec![f.root()];
        placed[f.root()] = true;
        while order.len() < m {
            let key = |p: usize| {
                let mut closed = 0;
                let mut touching = 0;
                for e in f.edges().iter().filter(|e| e.contains(&p)) {
                    let others = e.iter().filter(|&&x| x != p && placed[x]).count();
                    closed += (others == 2) as usize;
                    touching += (others > 0) as usize;
                }
                (closed, touching, f.degree(p), std::cmp::Reverse(p))
            };
            let next = (0..m).filter(|&p| !placed[p]).max_by_key(|&p| key(p)).unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut pos = vec![0; m];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        let steps = order
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let mut closed = Vec::new();
                let mut open = Vec::new();
                for e in f.edges().iter().filter(|e| e.contains(&p)) {
                    let others: Vec<usize> = e.iter().copied().filter(|&x| x != p).collect();
                    let (a, b) = (others[0], others[1]);
                    match (pos[a] < i, pos[b] < i) {
                        (true, true) => closed.push((a, b)),
                        (true, false) => open.push(a),
                        (false, true) => open.push(b),
                        (false, false) => {}
                    }
                }
                Step {
                    vertex: p,
                    degree: f.degree(p),
                    closed,
                    open,
                }
            })
            .collect();
        Plan { steps }
    }
}
