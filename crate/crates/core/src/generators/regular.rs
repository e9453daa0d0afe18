use rand::seq::SliceRandom;
use rand::Rng;

use super::edge_rng;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Uniformly random pairing of the stubs of `degrees`; loops and repeated
/// pairs are kept. The stub total must be even.
pub fn realize_configuration<R: Rng>(degrees: &[u64], rng: &mut R) -> Vec<(usize, usize)> {
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d as usize))
        .collect();
    debug_assert!(stubs.len().is_multiple_of(2));
    stubs.shuffle(rng);
    stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

const MAX_REJECTIONS: usize = 100_000;

/// Uniform simple `d`-regular graph on `n` vertices by rejection sampling
/// over configuration pairings. Practical for small `d`.
pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::invalid(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    let mut rng = edge_rng(seed);
    let degrees = vec![d as u64; n];
    for _ in 0..MAX_REJECTIONS {
        let pairs = realize_configuration(&degrees, &mut rng);
        if pairs.iter().any(|&(u, v)| u == v) {
            continue;
        }
        let g = Graph::from_pairs(n, pairs)?;
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::Construction(format!(
        "no simple {d}-regular pairing found in {MAX_REJECTIONS} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_graphs() {
        for n in [4, 6, 10, 50] {
            for seed in 0..5 {
                let g = gen_random_regular(n, 3, seed).unwrap();
                assert!(g.is_simple());
                assert!(g.degrees().iter().all(|&x| x == 3));
            }
        }
        assert_eq!(
            gen_random_regular(20, 3, 1).unwrap(),
            gen_random_regular(20, 3, 1).unwrap()
        );
    }

    #[test]
    fn impossible_parameters() {
        assert!(gen_random_regular(5, 3, 0).is_err());
        assert!(gen_random_regular(3, 3, 0).is_err());
    }

    #[test]
    fn configuration_preserves_degrees() {
        let degrees = [3u64, 1, 2, 2, 4];
        let pairs = realize_configuration(&degrees, &mut edge_rng(2));
        let mut seen = [0u64; 5];
        for (u, v) in pairs {
            seen[u] += 1;
            seen[v] += 1;
        }
        assert_eq!(seen, degrees);
    }
}
