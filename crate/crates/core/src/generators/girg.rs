//! Geometric inhomogeneous random graphs on the torus `[0,1)^d` with the L∞
//! metric and edge probability `min{1, (w_u w_v / W)^α / ‖x_u - x_v‖^{αd}}`.

use rand::Rng;

use super::{edge_rng, position_rng, thinned_walk, SamplerPath};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weights::WeightSequence;

#[derive(Debug, Clone)]
pub struct GirgParams {
    pub dim: usize,
    pub alpha: f64,
    pub weights: WeightSequence,
}

impl GirgParams {
    pub fn new(dim: usize, alpha: f64, weights: WeightSequence) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("torus dimension must be at least 1"));
        }
        if !(alpha > 1.0) {
            return Err(Error::invalid(format!(
                "GIRG alpha must exceed 1, got {alpha}"
            )));
        }
        Ok(Self {
            dim,
            alpha,
            weights,
        })
    }
}

/// Uniform torus positions, `dim` coordinates per vertex, flattened.
pub fn girg_positions(n: usize, dim: usize, seed: u64) -> Vec<f64> {
    let mut rng = position_rng(seed);
    (0..n * dim).map(|_| rng.random::<f64>()).collect()
}

/// L∞ distance on the unit torus.
pub fn torus_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).abs();
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

/// Edge probability for weight product ratio `wuv_over_w = w_u w_v / W` at distance `r`.
#[inline]
pub fn girg_probability(wuv_over_w: f64, r: f64, dim: usize, alpha: f64) -> f64 {
    if r <= 0.0 {
        return 1.0;
    }
    let base = wuv_over_w / r.powi(dim as i32);
    if base >= 1.0 {
        1.0
    } else {
        base.powf(alpha)
    }
}

pub fn gen_girg(p: &GirgParams, seed: u64) -> Graph {
    gen_girg_with(p, seed, SamplerPath::Fast)
}

pub fn gen_girg_with(p: &GirgParams, seed: u64, path: SamplerPath) -> Graph {
    let n = p.weights.len();
    let pos = girg_positions(n, p.dim, seed);
    let mut rng = edge_rng(seed);
    let pairs = if path == SamplerPath::Fast && p.dim == 1 {
        sample_line(p, &pos, &mut rng)
    } else {
        sample_naive(p, &pos, &mut rng)
    };
    Graph::from_normalized(n, pairs)
}

fn sample_naive<R: Rng>(p: &GirgParams, pos: &[f64], rng: &mut R) -> Vec<(usize, usize, u32)> {
    let w = p.weights.weights();
    let total = p.weights.total();
    let d = p.dim;
    let n = w.len();
    let mut pairs = Vec::new();
    for u in 0..n {
        let xu = &pos[u * d..(u + 1) * d];
        for v in u + 1..n {
            let r = torus_distance(xu, &pos[v * d..(v + 1) * d]);
            let prob = girg_probability(w[u] * w[v] / total, r, d, p.alpha);
            if rng.random::<f64>() < prob {
                pairs.push((u, v, 1));
            }
        }
    }
    pairs
}

/// Vertices of one weight layer `[w_min 2^j, w_min 2^{j+1})`, sorted by position.
struct Layer {
    xs: Vec<f64>,
    ids: Vec<usize>,
    w_max: f64,
}

fn count_prefix(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    // pred is true on a prefix of 0..len
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// One-dimensional sampler: from each vertex, walk every weight layer
/// outward in both directions so that distances, and with them the
/// probability bounds, are monotone along the walk.
fn sample_line<R: Rng>(p: &GirgParams, pos: &[f64], rng: &mut R) -> Vec<(usize, usize, u32)> {
    let w = p.weights.weights();
    let total = p.weights.total();
    let alpha = p.alpha;
    let n = w.len();
    let w_min = p.weights.w_min();
    let layer_of = |v: usize| (w[v] / w_min).log2().floor().max(0.0) as usize;

    let num_layers = layer_of(0) + 1;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_layers];
    for v in 0..n {
        members[layer_of(v)].push(v);
    }
    let layers: Vec<Layer> = members
        .into_iter()
        .map(|mut ids| {
            ids.sort_unstable_by(|&a, &b| pos[a].total_cmp(&pos[b]).then(a.cmp(&b)));
            let w_max = ids.iter().map(|&v| w[v]).fold(0.0, f64::max);
            Layer {
                xs: ids.iter().map(|&v| pos[v]).collect(),
                ids,
                w_max,
            }
        })
        .collect();
    let rank: Vec<usize> = {
        let mut r = vec![0; n];
        for layer in &layers {
            for (k, &v) in layer.ids.iter().enumerate() {
                r[v] = k;
            }
        }
        r
    };

    let mut pairs = Vec::new();
    for u in 0..n {
        let xu = pos[u];
        let lu = layer_of(u);
        for (j, layer) in layers.iter().enumerate().skip(lu) {
            let len = layer.xs.len();
            if len == 0 {
                continue;
            }
            let bound_ratio = w[u] * layer.w_max / total;
            let mut walk = |elem: &dyn Fn(usize) -> (usize, f64), count: usize| {
                thinned_walk(
                    rng,
                    count,
                    |k| girg_probability(bound_ratio, elem(k).1, 1, alpha),
                    |k| {
                        let (v, r) = elem(k);
                        girg_probability(w[u] * w[v] / total, r, 1, alpha)
                    },
                    |k| {
                        let v = elem(k).0;
                        pairs.push((u.min(v), u.max(v), 1));
                    },
                );
            };

            if j == lu {
                // same layer: each pair once, from the endpoint that sees the
                // other at forward offset < 1/2
                let iu = rank[u];
                let fwd = |k: usize| {
                    let idx = iu + 1 + k;
                    if idx < len {
                        (layer.ids[idx], layer.xs[idx] - xu)
                    } else {
                        let idx = idx - len;
                        (layer.ids[idx], layer.xs[idx] + 1.0 - xu)
                    }
                };
                let count = count_prefix(len - 1, |k| fwd(k).1 < 0.5);
                walk(&fwd, count);
            } else {
                let start = layer.xs.partition_point(|&x| x < xu);
                let fwd = |k: usize| {
                    let idx = start + k;
                    if idx < len {
                        (layer.ids[idx], layer.xs[idx] - xu)
                    } else {
                        let idx = idx - len;
                        (layer.ids[idx], layer.xs[idx] + 1.0 - xu)
                    }
                };
                let count_fwd = count_prefix(len, |k| fwd(k).1 < 0.5);
                walk(&fwd, count_fwd);
                let back = |k: usize| {
                    if k < start {
                        let idx = start - 1 - k;
                        (layer.ids[idx], xu - layer.xs[idx])
                    } else {
                        let idx = len - 1 - (k - start);
                        (layer.ids[idx], xu + 1.0 - layer.xs[idx])
                    }
                };
                walk(&back, len - count_fwd);
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::power_law_weights;

    #[test]
    fn probability_examples() {
        assert_eq!(girg_probability(0.3, 0.0, 1, 2.0), 1.0);
        assert_eq!(girg_probability(1.0, 0.5, 1, 2.0), 1.0);
        assert!((girg_probability(0.01, 0.5, 1, 2.0) - 0.0004).abs() < 1e-15);
    }

    #[test]
    fn torus_wraps() {
        assert!((torus_distance(&[0.05], &[0.95]) - 0.1).abs() < 1e-12);
        assert!((torus_distance(&[0.1, 0.5], &[0.2, 0.9]) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        let ws = power_law_weights(10, 3.0, 1.0).unwrap();
        assert!(GirgParams::new(1, 1.0, ws.clone()).is_err());
        assert!(GirgParams::new(0, 2.0, ws).is_err());
    }

    #[test]
    fn positions_from_seed_alone() {
        let a = girg_positions(50, 2, 9);
        assert_eq!(a, girg_positions(50, 2, 9));
        assert!(a.iter().all(|&x| (0.0..1.0).contains(&x)));
    }

    #[test]
    fn deterministic_and_simple() {
        let ws = power_law_weights(800, 2.7, 1.0).unwrap();
        let p = GirgParams::new(1, 2.0, ws).unwrap();
        let g = gen_girg(&p, 11);
        assert_eq!(g, gen_girg(&p, 11));
        assert!(g.is_simple());
    }

    #[test]
    fn fast_pair_frequencies_match_probabilities() {
        // positions depend only on the seed, so fix them by conditioning on a
        // seed's positions and recomputing each pair's probability per trial
        let ws = WeightSequence::new(vec![6.0, 4.0, 3.0, 2.0, 1.5, 1.2, 1.0, 1.0], 3.0).unwrap();
        let p = GirgParams::new(1, 2.0, ws.clone()).unwrap();
        let n = ws.len();
        let trials = 6000u64;
        let mut expected = vec![vec![0.0; n]; n];
        let mut hits = vec![vec![0.0; n]; n];
        for seed in 0..trials {
            let pos = girg_positions(n, 1, seed);
            for u in 0..n {
                for v in u + 1..n {
                    let r = torus_distance(&pos[u..u + 1], &pos[v..v + 1]);
                    expected[u][v] +=
                        girg_probability(ws.weights()[u] * ws.weights()[v] / ws.total(), r, 1, 2.0);
                }
            }
            for &(u, v, _) in gen_girg(&p, seed).edges() {
                hits[u][v] += 1.0;
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let mean_p = expected[u][v] / trials as f64;
                let sigma = (mean_p * (1.0 - mean_p) / trials as f64).sqrt();
                let freq = hits[u][v] / trials as f64;
                assert!(
                    (freq - mean_p).abs() <= 4.0 * sigma + 1e-9,
                    "({u},{v}) freq {freq} expected {mean_p}"
                );
            }
        }
    }

    #[test]
    fn paths_agree_in_distribution() {
        let ws = power_law_weights(1500, 2.8, 1.0).unwrap();
        let p = GirgParams::new(1, 2.0, ws).unwrap();
        let mean_edges = |path| {
            (0..30)
                .map(|s| gen_girg_with(&p, s, path).num_edges() as f64)
                .sum::<f64>()
                / 30.0
        };
        let fast = mean_edges(SamplerPath::Fast);
        let naive = mean_edges(SamplerPath::Naive);
        assert!((fast - naive).abs() / naive < 0.03, "{fast} vs {naive}");
    }

    #[test]
    fn higher_dimension_uses_reference_path() {
        let ws = power_law_weights(200, 2.8, 1.0).unwrap();
        let p = GirgParams::new(2, 1.5, ws).unwrap();
        assert_eq!(
            gen_girg_with(&p, 5, SamplerPath::Fast),
            gen_girg_with(&p, 5, SamplerPath::Naive)
        );
    }
}
