use std::fmt;

use crate::error::{invalid, Result};

use super::vertex_set::{low_mask, Bits, VertexSet};
use super::MAX_VERTICES;

/// A simple graph on `0..n` stored as neighbour masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoGraph {
    n: usize,
    adj: Vec<u64>,
}

impl TwoGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(invalid(format!("n={n} exceeds the supported maximum of {MAX_VERTICES}")));
        }
        Ok(TwoGraph { n, adj: vec![0; n] })
    }

    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        TwoGraph { n, adj }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n)?;
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Graph on `n` vertices whose edges are the set bits of `mask` over pairs
    /// in colex order (`{a<b}` has rank `C(b,2)+a`).
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        assert!(n * n.saturating_sub(1) / 2 <= 64, "pair mask needs C(n,2) <= 64");
        let mut g = TwoGraph { n, adj: vec![0; n] };
        let mut t = 0;
        for b in 1..n {
            for a in 0..b {
                if mask >> t & 1 == 1 {
                    g.adj[a] |= 1 << b;
                    g.adj[b] |= 1 << a;
                }
                t += 1;
            }
        }
        g
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for v in 0..n {
            g.adj[v] = low_mask(n) & !(1 << v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid("a cycle needs at least 3 vertices"));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Book graph `B_t`: spine `{0, 1}` plus pages `2..t+2`, each adjacent to
    /// both spine vertices.
    pub fn book(t: usize) -> Result<Self> {
        let mut g = Self::book_minus(t)?;
        g.add_edge(0, 1)?;
        Ok(g)
    }

    /// `B_t` with the spine edge removed.
    pub fn book_minus(t: usize) -> Result<Self> {
        let n = t + 2;
        Self::from_edges(n, (2..n).flat_map(|p| [(0, p), (1, p)]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        self.check_pair(a, b)?;
        let fresh = self.adj[a] >> b & 1 == 0;
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        self.check_pair(a, b)?;
        let present = self.adj[a] >> b & 1 == 1;
        self.adj[a] &= !(1 << b);
        self.adj[b] &= !(1 << a);
        Ok(present)
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(invalid(format!("self-loop at {a}")));
        }
        if a >= self.n || b >= self.n {
            return Err(invalid(format!("edge ({a},{b}) out of range for n={}", self.n)));
        }
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adj[a] >> b & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Minimum degree over the vertices in `among` (0 for an empty set).
    pub fn min_degree_among(&self, among: VertexSet) -> usize {
        among.iter().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Minimum degree over all vertices.
    pub fn min_degree(&self) -> usize {
        self.min_degree_among(VertexSet::full(self.n))
    }

    /// Vertices with at least one neighbour.
    pub fn support(&self) -> VertexSet {
        VertexSet(self.adj.iter().enumerate().fold(0, |acc, (v, &r)| if r != 0 { acc | 1 << v } else { acc }))
    }

    /// Edges `(a, b)` with `a < b`, ordered by `b` then `a`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for b in 0..self.n {
            for a in Bits(self.adj[b] & low_mask(b)) {
                out.push((a, b));
            }
        }
        out
    }

    /// Removes every edge touching `drop`; labels are kept.
    pub fn without(&self, drop: VertexSet) -> TwoGraph {
        let keep = !drop.0;
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &r)| if drop.contains(v) { 0 } else { r & keep })
            .collect();
        TwoGraph { n: self.n, adj }
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<TwoGraph> {
        if perm.len() != self.n {
            return Err(invalid("permutation length differs from vertex count"));
        }
        let mut g = TwoGraph::new(self.n)?;
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b])?;
        }
        Ok(g)
    }
}

impl fmt::Debug for TwoGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwoGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn book_shapes() {
        let b5 = TwoGraph::book(5).unwrap();
        assert_eq!(b5.n(), 7);
        assert_eq!(b5.edge_count(), 11);
        assert_eq!(b5.degree(0), 6);
        assert_eq!(b5.min_degree(), 2);
        let b5m = TwoGraph::book_minus(5).unwrap();
        assert_eq!(b5m.edge_count(), 10);
    }

    #[test]
    fn symmetric_and_loop_free() {
        let mut g = TwoGraph::new(4).unwrap();
        assert!(g.add_edge(0, 3).unwrap());
        assert!(g.has_edge(3, 0));
        assert!(g.add_edge(2, 2).is_err());
        assert!(g.add_edge(2, 4).is_err());
        assert!(g.remove_edge(3, 0).unwrap());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn pair_mask_order() {
        let g = TwoGraph::from_pair_mask(4, 0b100001);
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
    }
}
