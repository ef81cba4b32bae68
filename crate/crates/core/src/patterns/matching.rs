//! Maximum matchings in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::hypergraph::{binomial, TwoGraph};

/// A maximum matching: its size and its edges `(a, b)` with `a < b`,
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn max_matching(h: &TwoGraph) -> Matching {
    let n = h.n();
    let mut mate = vec![usize::MAX; n];
    // Greedy start, then one augmenting search per free vertex.
    for v in 0..n {
        if mate[v] == usize::MAX {
            let free = (0..n).find(|&w| w > v && mate[w] == usize::MAX && h.has_edge(v, w));
            if let Some(w) = free {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut b = Blossom::new(h);
    for root in 0..n {
        if mate[root] == usize::MAX {
            if let Some(end) = b.find_path(root, &mate) {
                let mut v = end;
                while v != usize::MAX {
                    let pv = b.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = (0..n).filter(|&v| mate[v] != usize::MAX && v < mate[v]).map(|v| (v, mate[v])).collect();
    edges.sort_unstable();
    Matching {
        size: edges.len(),
        edges,
    }
}

/// Whether `h` has `k` pairwise disjoint edges.
pub fn has_matching_of_size(h: &TwoGraph, k: usize) -> bool {
    k == 0 || (h.edge_count() >= k && max_matching(h).size >= k)
}

struct Blossom<'a> {
    h: &'a TwoGraph,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(h: &'a TwoGraph) -> Self {
        let n = h.n();
        Blossom {
            h,
            parent: vec![usize::MAX; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize, mate: &[usize]) -> usize {
        let mut seen = vec![false; self.h.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == usize::MAX {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, mate: &[usize]) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, root: usize, mate: &[usize]) -> Option<usize> {
        let n = self.h.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = usize::MAX);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for to in crate::hypergraph::Bits(self.h.neighbors(v)) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != usize::MAX && self.parent[mate[to]] != usize::MAX) {
                    let cur = self.lca(v, to, mate);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to, mate);
                    self.mark_path(to, cur, v, mate);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == usize::MAX {
                    self.parent[to] = v;
                    if mate[to] == usize::MAX {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    queue.push_back(m);
                }
            }
        }
        None
    }
}

/// Largest edge count of an `n`-vertex graph with no `k`-matching:
/// `max{C(2k-1, 2), C(n, 2) - C(n-k+1, 2)}`.
pub fn erdos_gallai_bound(n: usize, k: usize) -> Result<usize> {
    if k == 0 || n + 1 < 2 * k {
        return Err(invalid(format!("need n >= 2k-1 >= 1, got n={n}, k={k}")));
    }
    let clique = binomial(2 * k - 1, 2);
    let cover = binomial(n, 2) - binomial(n - k + 1, 2);
    Ok(clique.max(cover))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(max_matching(&TwoGraph::cycle(5).unwrap()).size, 2);
        assert_eq!(max_matching(&TwoGraph::book(5).unwrap()).size, 2);
        let three = TwoGraph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(max_matching(&three).edges, vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(max_matching(&TwoGraph::new(0).unwrap()).size, 0);
    }

    #[test]
    fn needs_blossom() {
        // Triangle with a pendant edge at each corner.
        let g = TwoGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (0, 4), (1, 5)]).unwrap();
        assert_eq!(max_matching(&g).size, 3);
    }

    #[test]
    fn erdos_gallai_values() {
        assert_eq!(erdos_gallai_bound(7, 3).unwrap(), 11);
        assert_eq!(erdos_gallai_bound(5, 1).unwrap(), 0);
        assert_eq!(erdos_gallai_bound(9, 2).unwrap(), 8);
        assert!(erdos_gallai_bound(4, 3).is_err());
        assert!(erdos_gallai_bound(4, 0).is_err());
    }
}
