//! Colex ranking of vertex triples.
//!
//! The triple `a < b < c` has rank `C(c,3) + C(b,2) + C(a,1)`. The rank does
//! not depend on the vertex count, so a bitset written for `n` vertices is a
//! prefix of the bitset of the same graph padded with isolated vertices.

use std::sync::OnceLock;

use crate::error::{invalid, Result};

use super::MAX_VERTICES;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Colex rank of a triple, in `[0, C(n,3))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleIndex(pub usize);

#[inline]
pub(crate) fn rank_sorted(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c);
    c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
}

#[inline]
pub(crate) fn sort3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let (b, c) = if b < c { (b, c) } else { (c, b) };
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a, b, c)
}

/// Rank of the triple `{a, b, c}` among all triples on `n` vertices.
pub fn triple_index(a: usize, b: usize, c: usize, n: usize) -> Result<TripleIndex> {
    if a == b || b == c || a == c {
        return Err(invalid(format!("triple ({a},{b},{c}) has repeated vertices")));
    }
    if a >= n || b >= n || c >= n {
        return Err(invalid(format!("triple ({a},{b},{c}) out of range for n={n}")));
    }
    let (a, b, c) = sort3(a, b, c);
    Ok(TripleIndex(rank_sorted(a, b, c)))
}

/// Inverse of [`triple_index`]: the sorted triple with rank `t`.
pub fn triple_unindex(t: TripleIndex, n: usize) -> Result<[usize; 3]> {
    if t.0 >= binomial(n, 3) {
        return Err(invalid(format!("triple index {} out of range for n={n}", t.0)));
    }
    Ok(triple_table()[t.0])
}

/// All triples on `MAX_VERTICES` vertices, in colex order.
pub(crate) fn triple_table() -> &'static [[usize; 3]] {
    static TABLE: OnceLock<Vec<[usize; 3]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(binomial(MAX_VERTICES, 3));
        for c in 2..MAX_VERTICES {
            for b in 1..c {
                for a in 0..b {
                    out.push([a, b, c]);
                }
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_triples() {
        assert_eq!(triple_index(0, 1, 2, 5).unwrap(), TripleIndex(0));
        assert_eq!(triple_index(0, 1, 3, 5).unwrap(), TripleIndex(1));
        assert_eq!(triple_index(3, 1, 0, 5).unwrap(), TripleIndex(1));
    }

    #[test]
    fn last_triple_on_five_vertices_by_enumeration() {
        // Enumerate all triples of 0..5, sort by (c, b, a) and take the rank
        // of (2,3,4).
        let mut all = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    all.push((c, b, a));
                }
            }
        }
        all.sort();
        let pos = all.iter().position(|&t| t == (4, 3, 2)).unwrap();
        assert_eq!(pos, 9);
        assert_eq!(triple_index(2, 3, 4, 5).unwrap(), TripleIndex(pos));
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(triple_index(0, 0, 1, 5).is_err());
        assert!(triple_index(0, 1, 5, 5).is_err());
        assert!(triple_unindex(TripleIndex(10), 5).is_err());
    }

    #[test]
    fn round_trip_up_to_sixteen() {
        for n in 3..=16 {
            for c in 0..n {
                for b in 0..c {
                    for a in 0..b {
                        let t = triple_index(c, a, b, n).unwrap();
                        assert!(t.0 < binomial(n, 3));
                        assert_eq!(triple_unindex(t, n).unwrap(), [a, b, c]);
                    }
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(64, 3), 41664);
    }
}
