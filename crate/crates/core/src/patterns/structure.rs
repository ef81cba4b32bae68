//! Structure of 2-graphs: book classification and longest cycles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{low_mask, Bits, TwoGraph};

use super::matching::max_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NoMatchingClass {
    Book,
    BookMinus,
    NotApplicable,
}

/// For graphs on `n >= 7` vertices with minimum degree at least 2 and no
/// 3-matching, decides whether the graph is `B_{n-2}` or `B_{n-2}^-`. Other
/// inputs are `NotApplicable`; an applicable graph that is neither is
/// reported as an internal inconsistency.
pub fn classify_no3matching(h: &TwoGraph) -> Result<NoMatchingClass> {
    let n = h.n();
    if n < 7 || h.min_degree() < 2 || max_matching(h).size >= 3 {
        return Ok(NoMatchingClass::NotApplicable);
    }
    if let Some((x, y)) = book_spine(h) {
        return Ok(if h.has_edge(x, y) {
            NoMatchingClass::Book
        } else {
            NoMatchingClass::BookMinus
        });
    }
    Err(Error::InternalInconsistency(format!(
        "graph with minimum degree >= 2 and no 3-matching is neither a book nor a book minus its spine: {h:?}"
    )))
}

/// A pair `{x, y}` such that every other vertex is adjacent to exactly `x`
/// and `y`.
fn book_spine(h: &TwoGraph) -> Option<(usize, usize)> {
    let n = h.n();
    // Any page vertex has neighbourhood exactly the spine.
    let page = (0..n).find(|&v| h.degree(v) == 2)?;
    let spine = h.neighbors(page);
    let mut it = Bits(spine);
    let (x, y) = (it.next()?, it.next()?);
    let pages = low_mask(n) & !spine;
    Bits(pages).all(|v| h.neighbors(v) == spine).then_some((x, y))
}

/// Length of a longest cycle; 0 for forests.
pub fn longest_cycle_length(h: &TwoGraph) -> usize {
    if h.n() <= 20 {
        longest_cycle_dp(h)
    } else {
        longest_cycle_dfs(h)
    }
}

/// `reach[mask]` holds the endpoints `v` of paths that start at the lowest
/// vertex of `mask` and visit exactly `mask`.
fn longest_cycle_dp(h: &TwoGraph) -> usize {
    let n = h.n();
    if n < 3 {
        return 0;
    }
    let mut reach = vec![0u32; 1 << n];
    for s in 0..n {
        reach[1 << s] = 1 << s;
    }
    let mut best = 0;
    for mask in 1usize..1 << n {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        let s = mask.trailing_zeros() as usize;
        let size = mask.count_ones() as usize;
        if size >= 3 && size > best && (ends as u64) & h.neighbors(s) != 0 {
            best = size;
        }
        let higher = !((1u64 << (s + 1)) - 1) & !(mask as u64) & low_mask(n);
        for v in Bits(ends as u64) {
            for w in Bits(h.neighbors(v) & higher) {
                reach[mask | 1 << w] |= 1 << w;
            }
        }
    }
    best
}

fn longest_cycle_dfs(h: &TwoGraph) -> usize {
    fn go(h: &TwoGraph, s: usize, v: usize, used: u64, len: usize, best: &mut usize) {
        if len >= 3 && h.has_edge(v, s) {
            *best = (*best).max(len);
        }
        let higher = !((1u64 << (s + 1)) - 1);
        for w in Bits(h.neighbors(v) & higher & !used) {
            go(h, s, w, used | 1 << w, len + 1, best);
        }
    }
    let mut best = 0;
    for s in 0..h.n() {
        go(h, s, s, 1 << s, 1, &mut best);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn books() {
        assert_eq!(classify_no3matching(&TwoGraph::book(5).unwrap()).unwrap(), NoMatchingClass::Book);
        assert_eq!(
            classify_no3matching(&TwoGraph::book_minus(5).unwrap()).unwrap(),
            NoMatchingClass::BookMinus
        );
        assert_eq!(
            classify_no3matching(&TwoGraph::complete(7).unwrap()).unwrap(),
            NoMatchingClass::NotApplicable
        );
        assert_eq!(
            classify_no3matching(&TwoGraph::book(4).unwrap()).unwrap(),
            NoMatchingClass::NotApplicable
        );
    }

    #[test]
    fn relabelled_book() {
        let b = TwoGraph::book(6).unwrap().relabel(&[5, 7, 0, 1, 2, 3, 4, 6]).unwrap();
        assert_eq!(classify_no3matching(&b).unwrap(), NoMatchingClass::Book);
    }

    #[test]
    fn cycles() {
        assert_eq!(longest_cycle_length(&TwoGraph::cycle(5).unwrap()), 5);
        let tree = TwoGraph::from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (4, 5)]).unwrap();
        assert_eq!(longest_cycle_length(&tree), 0);
        assert_eq!(longest_cycle_length(&TwoGraph::book(5).unwrap()), 4);
        assert_eq!(longest_cycle_length(&TwoGraph::complete(8).unwrap()), 8);
    }

    #[test]
    fn dp_matches_dfs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(3..=9);
            let mut g = TwoGraph::new(n).unwrap();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            assert_eq!(longest_cycle_dp(&g), longest_cycle_dfs(&g));
        }
    }
}
