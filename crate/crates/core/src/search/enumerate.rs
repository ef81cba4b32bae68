use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::hypergraph::{binomial, canonical_form, ThreeGraph};

use super::{Budget, Meter};

pub const LABELED_MAX_N: usize = 6;
pub const ISO_MAX_N: usize = 7;

/// How many graphs were visited and whether the enumeration ran to the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    pub visited: u64,
    pub complete: bool,
}

pub(crate) fn check_bounds(n: usize, iso: bool) -> Result<()> {
    let max = if iso { ISO_MAX_N } else { LABELED_MAX_N };
    if n > max {
        let mode = if iso { "isomorph-rejected" } else { "labeled" };
        return Err(Error::Infeasible(format!("{mode} enumeration is limited to n <= {max}, got n={n}")));
    }
    Ok(())
}

/// Visits every 3-graph on `n` vertices, or one representative (in canonical
/// form) per isomorphism class when `iso` is set.
pub fn enumerate_threegraphs<F>(n: usize, iso: bool, visit: F) -> Result<u64>
where
    F: FnMut(&ThreeGraph),
{
    Ok(enumerate_threegraphs_budgeted(n, iso, Budget::UNLIMITED, visit)?.visited)
}

pub fn enumerate_threegraphs_budgeted<F>(n: usize, iso: bool, budget: Budget, mut visit: F) -> Result<Enumeration>
where
    F: FnMut(&ThreeGraph),
{
    check_bounds(n, iso)?;
    let meter = Meter::new(budget);
    if !iso {
        let total = 1u64 << binomial(n, 3);
        for mask in 0..total {
            if !meter.tick() {
                return Ok(Enumeration {
                    visited: mask,
                    complete: false,
                });
            }
            visit(&ThreeGraph::from_mask(n, mask));
        }
        return Ok(Enumeration {
            visited: total,
            complete: true,
        });
    }
    let root = ThreeGraph::new(n)?;
    let mut visited = 0;
    let complete = augment(&root, &meter, &mut visited, &mut visit);
    Ok(Enumeration { visited, complete })
}

/// The parent of a class: its canonical form minus the last edge, recanonised.
fn parent(canon: &ThreeGraph) -> Option<ThreeGraph> {
    let last = canon.last_edge_index()?;
    let mut p = canon.clone();
    p.remove_index(last);
    Some(canonical_form(&p))
}

/// Canonical augmentation: a child is kept only when `g` is its parent.
fn augment<F: FnMut(&ThreeGraph)>(g: &ThreeGraph, meter: &Meter, visited: &mut u64, visit: &mut F) -> bool {
    if !meter.tick() {
        return false;
    }
    visit(g);
    *visited += 1;
    let mut seen = HashSet::new();
    for t in 0..g.triple_count() {
        if g.words()[t / 64] >> (t % 64) & 1 == 1 {
            continue;
        }
        let mut h = g.clone();
        h.insert_index(t);
        let canon = canonical_form(&h);
        if seen.contains(&canon) || parent(&canon).as_ref() != Some(g) {
            continue;
        }
        seen.insert(canon.clone());
        if !augment(&canon, meter, visited, visit) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_threegraphs(4, false, |_| {}).unwrap(), 16);
        assert_eq!(enumerate_threegraphs(5, false, |_| {}).unwrap(), 1024);
    }

    #[test]
    fn class_counts_small() {
        assert_eq!(enumerate_threegraphs(3, true, |_| {}).unwrap(), 2);
        assert_eq!(enumerate_threegraphs(4, true, |_| {}).unwrap(), 5);
    }

    #[test]
    fn bounds() {
        assert!(matches!(enumerate_threegraphs(7, false, |_| {}), Err(Error::Infeasible(_))));
        assert!(matches!(enumerate_threegraphs(8, true, |_| {}), Err(Error::Infeasible(_))));
    }

    #[test]
    fn budget_stops_early() {
        let e = enumerate_threegraphs_budgeted(5, false, Budget::nodes(10), |_| {}).unwrap();
        assert_eq!(e, Enumeration { visited: 10, complete: false });
    }
}
