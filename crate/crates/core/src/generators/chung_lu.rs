use rand::Rng;

use super::{edge_rng, thinned_walk, SamplerPath};
use crate::graph::Graph;
use crate::weights::WeightSequence;

/// `min(1, w_i w_j / W)`.
#[inline]
pub fn chung_lu_probability(wi: f64, wj: f64, total: f64) -> f64 {
    (wi * wj / total).min(1.0)
}

/// Chung-Lu graph over `ws`; vertex `i` carries weight `ws.weights()[i]`.
pub fn gen_chung_lu(ws: &WeightSequence, seed: u64) -> Graph {
    gen_chung_lu_with(ws, seed, SamplerPath::Fast)
}

pub fn gen_chung_lu_with(ws: &WeightSequence, seed: u64, path: SamplerPath) -> Graph {
    let w = ws.weights();
    let total = ws.total();
    let n = w.len();
    let mut rng = edge_rng(seed);
    let mut pairs = Vec::new();

    match path {
        SamplerPath::Naive => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < chung_lu_probability(w[u], w[v], total) {
                        pairs.push((u, v, 1));
                    }
                }
            }
        }
        SamplerPath::Fast => {
            // weights are non-increasing, so along v = u+1.. the probability
            // is its own bound
            for u in 0..n.saturating_sub(1) {
                let base = u + 1;
                let prob = |k: usize| chung_lu_probability(w[u], w[base + k], total);
                thinned_walk(&mut rng, n - base, prob, prob, |k| {
                    pairs.push((u, base + k, 1))
                });
            }
        }
    }
    Graph::from_normalized(n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::power_law_weights;

    #[test]
    fn probability_examples() {
        assert_eq!(chung_lu_probability(1.0, 1.0, 2.0), 0.5);
        assert_eq!(chung_lu_probability(3.0, 3.0, 6.0), 1.0);
    }

    #[test]
    fn clamped_pair_always_present() {
        let ws = WeightSequence::new(vec![3.0, 3.0], 3.0).unwrap();
        for seed in 0..20 {
            for path in [SamplerPath::Fast, SamplerPath::Naive] {
                assert_eq!(gen_chung_lu_with(&ws, seed, path).num_pairs(), 1);
            }
        }
    }

    #[test]
    fn mean_degree_of_constant_weights() {
        let ws = WeightSequence::new(vec![5.0; 10_000], 3.0).unwrap();
        for seed in 0..20 {
            let g = gen_chung_lu(&ws, seed);
            let mean = 2.0 * g.num_edges() as f64 / g.n() as f64;
            assert!((4.5..=5.5).contains(&mean), "seed {seed}: {mean}");
            assert!(g.is_simple());
        }
    }

    #[test]
    fn deterministic() {
        let ws = power_law_weights(500, 2.5, 1.0).unwrap();
        assert_eq!(gen_chung_lu(&ws, 3), gen_chung_lu(&ws, 3));
        assert_ne!(gen_chung_lu(&ws, 3), gen_chung_lu(&ws, 4));
    }

    #[test]
    fn pair_frequency_within_three_sigma() {
        let ws = WeightSequence::new(vec![4.0, 3.0, 2.0, 1.5, 1.0], 3.0).unwrap();
        let w = ws.weights();
        let trials = 10_000;
        for path in [SamplerPath::Fast, SamplerPath::Naive] {
            let mut hits = [[0usize; 5]; 5];
            for seed in 0..trials {
                for &(u, v, _) in gen_chung_lu_with(&ws, seed, path).edges() {
                    hits[u][v] += 1;
                }
            }
            for u in 0..5 {
                for v in u + 1..5 {
                    let p = chung_lu_probability(w[u], w[v], ws.total());
                    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
                    let freq = hits[u][v] as f64 / trials as f64;
                    assert!(
                        (freq - p).abs() <= 3.0 * sigma + 1e-12,
                        "{path:?} ({u},{v}) freq {freq} p {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn paths_agree_in_distribution() {
        let ws = power_law_weights(2_000, 2.8, 1.0).unwrap();
        let mean_edges = |path| {
            (0..30)
                .map(|s| gen_chung_lu_with(&ws, s, path).num_edges() as f64)
                .sum::<f64>()
                / 30.0
        };
        let fast = mean_edges(SamplerPath::Fast);
        let naive = mean_edges(SamplerPath::Naive);
        assert!((fast - naive).abs() / naive < 0.03, "{fast} vs {naive}");
    }
}
