use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{invalid, Result};

use super::triple::{binomial, rank_sorted, sort3, triple_table, TripleIndex};
use super::vertex_set::{low_mask, Bits, VertexSet};
use super::{TwoGraph, MAX_VERTICES};

/// A 3-uniform hypergraph on vertices `0..n`.
///
/// The canonical state is the edge bitset over colex-ranked triples. Each
/// graph also carries, for every pair `{a, b}`, the mask of vertices `c` with
/// `{a, b, c}` an edge; this is derived data kept in sync by every mutator and
/// ignored by equality and hashing.
#[derive(Clone)]
pub struct ThreeGraph {
    n: usize,
    words: Vec<u64>,
    pair: Vec<u64>,
    edges: usize,
}

impl ThreeGraph {
    /// The empty graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(invalid(format!("n={n} exceeds the supported maximum of {MAX_VERTICES}")));
        }
        Ok(Self::empty_unchecked(n))
    }

    pub(crate) fn empty_unchecked(n: usize) -> Self {
        ThreeGraph {
            n,
            words: vec![0; binomial(n, 3).div_ceil(64)],
            pair: vec![0; n * n],
            edges: 0,
        }
    }

    /// The complete 3-graph `K_n^3`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for t in 0..binomial(n, 3) {
            g.insert_index(t);
        }
        Ok(g)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut g = Self::new(n)?;
        for [a, b, c] in edges {
            g.add_edge(a, b, c)?;
        }
        Ok(g)
    }

    /// Graph whose edge set is given by the low `C(n,3)` bits of `mask`
    /// (requires `C(n,3) <= 64`, i.e. `n <= 8`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(binomial(n, 3) <= 64, "from_mask needs C(n,3) <= 64");
        let mut g = Self::empty_unchecked(n);
        for t in Bits(mask & low_mask(binomial(n, 3))) {
            g.insert_index(t);
        }
        g
    }

    /// The low 64 bits of the edge bitset.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Raw edge bitset words, bit `t` of the concatenation set iff triple `t`
    /// is an edge.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn triple_count(&self) -> usize {
        binomial(self.n, 3)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    fn check_triple(&self, a: usize, b: usize, c: usize) -> Result<(usize, usize, usize)> {
        if a == b || b == c || a == c {
            return Err(invalid(format!("triple ({a},{b},{c}) has repeated vertices")));
        }
        if a >= self.n || b >= self.n || c >= self.n {
            return Err(invalid(format!("triple ({a},{b},{c}) out of range for n={}", self.n)));
        }
        Ok(sort3(a, b, c))
    }

    /// Adds `{a, b, c}`; returns whether it was newly inserted.
    pub fn add_edge(&mut self, a: usize, b: usize, c: usize) -> Result<bool> {
        let (a, b, c) = self.check_triple(a, b, c)?;
        Ok(self.insert_index(rank_sorted(a, b, c)))
    }

    /// Removes `{a, b, c}`; returns whether it was present.
    pub fn remove_edge(&mut self, a: usize, b: usize, c: usize) -> Result<bool> {
        let (a, b, c) = self.check_triple(a, b, c)?;
        Ok(self.remove_index(rank_sorted(a, b, c)))
    }

    pub(crate) fn insert_index(&mut self, t: usize) -> bool {
        let (w, bit) = (t / 64, 1u64 << (t % 64));
        if self.words[w] & bit != 0 {
            return false;
        }
        self.words[w] |= bit;
        self.edges += 1;
        let [a, b, c] = triple_table()[t];
        self.toggle_pairs(a, b, c);
        true
    }

    pub(crate) fn remove_index(&mut self, t: usize) -> bool {
        let (w, bit) = (t / 64, 1u64 << (t % 64));
        if self.words[w] & bit == 0 {
            return false;
        }
        self.words[w] &= !bit;
        self.edges -= 1;
        let [a, b, c] = triple_table()[t];
        self.toggle_pairs(a, b, c);
        true
    }

    #[inline]
    fn toggle_pairs(&mut self, a: usize, b: usize, c: usize) {
        let n = self.n;
        self.pair[a * n + b] ^= 1 << c;
        self.pair[b * n + a] ^= 1 << c;
        self.pair[a * n + c] ^= 1 << b;
        self.pair[c * n + a] ^= 1 << b;
        self.pair[b * n + c] ^= 1 << a;
        self.pair[c * n + b] ^= 1 << a;
    }

    #[inline]
    pub fn contains_index(&self, t: TripleIndex) -> bool {
        self.words.get(t.0 / 64).is_some_and(|w| w >> (t.0 % 64) & 1 == 1)
    }

    /// Whether `{a, b, c}` is an edge; false for degenerate or out-of-range
    /// triples.
    #[inline]
    pub fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        a < self.n && b < self.n && c < self.n && self.co_neighbors(a, b) >> c & 1 == 1
    }

    /// `N({a, b})` as a mask: all `c` with `{a, b, c}` an edge.
    #[inline]
    pub fn co_neighbors(&self, a: usize, b: usize) -> u64 {
        self.pair[a * self.n + b]
    }

    #[inline]
    pub fn codegree(&self, a: usize, b: usize) -> usize {
        self.co_neighbors(a, b).count_ones() as usize
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        let row = &self.pair[v * self.n..(v + 1) * self.n];
        row.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// `d_G(S)` for `|S|` in `{1, 2}`.
    pub fn degree(&self, s: VertexSet) -> Result<usize> {
        if !s.within(self.n) {
            return Err(invalid(format!("vertex set {s:?} out of range for n={}", self.n)));
        }
        let mut it = s.iter();
        match s.len() {
            1 => Ok(self.vertex_degree(it.next().unwrap())),
            2 => Ok(self.codegree(it.next().unwrap(), it.next().unwrap())),
            k => Err(invalid(format!("degree is defined for 1- and 2-sets, got |S|={k}"))),
        }
    }

    /// Minimum `i`-degree `δ_i(G)` for `i` in `{1, 2}`. Graphs with fewer than
    /// `i` vertices report 0.
    pub fn min_degree(&self, i: usize) -> Result<usize> {
        match i {
            1 => Ok((0..self.n).map(|v| self.vertex_degree(v)).min().unwrap_or(0)),
            2 => Ok(self.min_codegree()),
            _ => Err(invalid(format!("minimum i-degree needs i in {{1,2}}, got {i}"))),
        }
    }

    pub fn min_codegree(&self) -> usize {
        let mut best = usize::MAX;
        for a in 0..self.n {
            for b in a + 1..self.n {
                best = best.min(self.codegree(a, b));
            }
        }
        if best == usize::MAX {
            0
        } else {
            best
        }
    }

    /// Link graph `G_u`: `{a, b}` is an edge iff `{u, a, b}` is. Vertex `u` is
    /// kept, isolated, so labels are unchanged.
    pub fn link_graph(&self, u: usize) -> Result<TwoGraph> {
        if u >= self.n {
            return Err(invalid(format!("vertex {u} out of range for n={}", self.n)));
        }
        Ok(self.link_unchecked(u))
    }

    pub(crate) fn link_unchecked(&self, u: usize) -> TwoGraph {
        let rows = self.pair[u * self.n..(u + 1) * self.n].to_vec();
        TwoGraph::from_rows_unchecked(self.n, rows)
    }

    /// Induced subgraph on `s`, relabelled order-preservingly to `0..|s|`.
    pub fn induced(&self, s: VertexSet) -> Result<ThreeGraph> {
        if !s.within(self.n) {
            return Err(invalid(format!("vertex set {s:?} out of range for n={}", self.n)));
        }
        let kept: Vec<usize> = s.iter().collect();
        let mut g = ThreeGraph::empty_unchecked(kept.len());
        for (z, &c) in kept.iter().enumerate() {
            for (y, &b) in kept[..z].iter().enumerate() {
                for (x, &a) in kept[..y].iter().enumerate() {
                    if self.has_edge(a, b, c) {
                        g.insert_index(rank_sorted(x, y, z));
                    }
                }
            }
        }
        Ok(g)
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<ThreeGraph> {
        if perm.len() != self.n {
            return Err(invalid("permutation length differs from vertex count"));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(invalid("not a permutation"));
            }
            seen |= 1 << p;
        }
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> ThreeGraph {
        let mut g = ThreeGraph::empty_unchecked(self.n);
        for [a, b, c] in self.edges() {
            let (x, y, z) = sort3(perm[a], perm[b], perm[c]);
            g.insert_index(rank_sorted(x, y, z));
        }
        g
    }

    /// Edges in colex order, each sorted ascending.
    pub fn edges(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let table = triple_table();
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            Bits(word).map(move |bit| table[w * 64 + bit])
        })
    }

    /// Index of the highest-ranked edge, if any.
    pub fn last_edge_index(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Pads the graph with isolated vertices up to `n` vertices.
    pub fn with_vertex_count(&self, n: usize) -> Result<ThreeGraph> {
        if n < self.n {
            return Err(invalid("cannot shrink a graph by padding"));
        }
        let mut g = ThreeGraph::new(n)?;
        for [a, b, c] in self.edges() {
            g.insert_index(rank_sorted(a, b, c));
        }
        Ok(g)
    }
}

impl PartialEq for ThreeGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}

impl Eq for ThreeGraph {}

impl Hash for ThreeGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for ThreeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ThreeGraph(n={}, edges=[", self.n)?;
        for (i, [a, b, c]) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}{b}{c}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_five_degrees() {
        let k5 = ThreeGraph::complete(5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.degree(VertexSet::singleton(0)).unwrap(), 6);
        assert_eq!(k5.degree(VertexSet::pair(0, 1)).unwrap(), 3);
        assert_eq!(k5.min_degree(2).unwrap(), 3);
        assert_eq!(k5.min_degree(1).unwrap(), 6);
    }

    #[test]
    fn degree_rejects_bad_sets() {
        let k5 = ThreeGraph::complete(5).unwrap();
        assert!(k5.degree(VertexSet::EMPTY).is_err());
        assert!(k5.degree(VertexSet::from_iter([0, 1, 2])).is_err());
        assert!(k5.degree(VertexSet::singleton(7)).is_err());
        assert!(k5.min_degree(3).is_err());
    }

    #[test]
    fn empty_graph_min_degree_is_zero() {
        let g = ThreeGraph::new(6).unwrap();
        assert_eq!(g.min_degree(1).unwrap(), 0);
        assert_eq!(g.min_degree(2).unwrap(), 0);
    }

    #[test]
    fn add_remove_keep_masks_in_sync() {
        let mut g = ThreeGraph::new(6).unwrap();
        assert!(g.add_edge(4, 1, 2).unwrap());
        assert!(!g.add_edge(1, 2, 4).unwrap());
        assert!(g.has_edge(2, 4, 1));
        assert_eq!(g.co_neighbors(1, 4), 1 << 2);
        assert!(g.remove_edge(2, 1, 4).unwrap());
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.co_neighbors(1, 4), 0);
        assert!(g.add_edge(1, 1, 2).is_err());
        assert!(g.add_edge(1, 2, 6).is_err());
    }

    #[test]
    fn induced_on_complete_is_complete() {
        let k6 = ThreeGraph::complete(6).unwrap();
        let sub = k6.induced(VertexSet::from_iter([0, 2, 3, 5])).unwrap();
        assert_eq!(sub, ThreeGraph::complete(4).unwrap());
    }

    #[test]
    fn last_edge() {
        let g = ThreeGraph::from_edges(8, [[0, 1, 2], [5, 6, 7], [1, 2, 3]]).unwrap();
        assert_eq!(g.last_edge_index(), Some(55));
        assert_eq!(ThreeGraph::new(4).unwrap().last_edge_index(), None);
    }

    #[test]
    fn from_mask_matches_index_order() {
        let g = ThreeGraph::from_mask(5, 0b1000000001);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![[0, 1, 2], [2, 3, 4]]);
        assert_eq!(g.mask(), 0b1000000001);
    }
}
