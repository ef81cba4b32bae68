use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::hypergraph::{binomial, triple_table, ThreeGraph, MAX_VERTICES};

pub const DEFAULT_DENSITY: f64 = 0.5;

/// A seeded random 3-graph: each triple independently with probability
/// `density`, then, if `target = (i, d)` is given, repaired until the minimum
/// `i`-degree is at least `d`.
pub fn random_threegraph(n: usize, target: Option<(usize, usize)>, density: f64, seed: u64) -> Result<ThreeGraph> {
    random_threegraph_stream(n, target, density, seed, 0)
}

/// As [`random_threegraph`], drawing from stream `stream` of the seed so that
/// independent samples can be generated in any order.
pub fn random_threegraph_stream(
    n: usize,
    target: Option<(usize, usize)>,
    density: f64,
    seed: u64,
    stream: u64,
) -> Result<ThreeGraph> {
    if n > MAX_VERTICES {
        return Err(invalid(format!("n={n} exceeds the supported maximum of {MAX_VERTICES}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density must lie in [0, 1], got {density}")));
    }
    if let Some((i, d)) = target {
        if !(1..=2).contains(&i) {
            return Err(invalid(format!("degree type i must be 1 or 2, got {i}")));
        }
        let cap = if n >= i { binomial(n - i, 3 - i) } else { 0 };
        if d > cap {
            return Err(invalid(format!(
                "no graph on {n} vertices has minimum {i}-degree {d} (the maximum is {cap})"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut g = ThreeGraph::new(n)?;
    for t in 0..binomial(n, 3) {
        if rng.gen_bool(density) {
            g.insert_index(t);
        }
    }
    if let Some((i, d)) = target {
        repair(&mut g, i, d);
    }
    Ok(g)
}

/// Adds the absent triple meeting the most deficient `i`-sets (lowest colex
/// rank on ties) until none is deficient.
fn repair(g: &mut ThreeGraph, i: usize, d: usize) {
    let n = g.n();
    loop {
        let deficit = |g: &ThreeGraph, a: usize, b: usize| -> bool {
            if i == 1 {
                g.vertex_degree(a) < d
            } else {
                g.codegree(a, b) < d
            }
        };
        let mut best: Option<(usize, usize)> = None;
        for (t, &[a, b, c]) in triple_table()[..binomial(n, 3)].iter().enumerate() {
            if g.words()[t / 64] >> (t % 64) & 1 == 1 {
                continue;
            }
            let hits = if i == 1 {
                [a, b, c].iter().filter(|&&v| deficit(g, v, v)).count()
            } else {
                [(a, b), (a, c), (b, c)].iter().filter(|&&(x, y)| deficit(g, x, y)).count()
            };
            if hits > 0 && best.is_none_or(|(h, _)| hits > h) {
                best = Some((hits, t));
            }
        }
        match best {
            Some((_, t)) => {
                g.insert_index(t);
            }
            None => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_threegraph(8, None, DEFAULT_DENSITY, 1).unwrap();
        let b = random_threegraph(8, None, DEFAULT_DENSITY, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_threegraph_stream(8, None, DEFAULT_DENSITY, 1, 1).unwrap());
    }

    #[test]
    fn repair_reaches_target() {
        for seed in 0..20 {
            let g = random_threegraph(8, Some((2, 3)), 0.1, seed).unwrap();
            assert!(g.min_degree(2).unwrap() >= 3);
            let g = random_threegraph(12, Some((1, 35)), 0.0, seed).unwrap();
            assert!(g.min_degree(1).unwrap() >= 35);
        }
    }

    #[test]
    fn infeasible_target() {
        assert!(random_threegraph(6, Some((2, 5)), 0.5, 0).is_err());
        assert!(random_threegraph(6, Some((2, 4)), 0.0, 0).is_ok());
        assert!(random_threegraph(6, Some((1, 11)), 0.5, 0).is_err());
        assert!(random_threegraph(6, Some((3, 1)), 0.5, 0).is_err());
    }
}
