//! Hyperbolic random graphs in the native disk model of radius
//! `R = 2 ln n + C_H` with logistic edge probabilities at temperature `T_H`.

use std::f64::consts::PI;

use rand::Rng;

use super::{edge_rng, position_rng, thinned_walk, SamplerPath};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicParams {
    pub alpha_h: f64,
    pub c_h: f64,
    pub t_h: f64,
    pub n: usize,
    /// Disk radius `2 ln n + C_H`.
    pub r_disk: f64,
}

impl HyperbolicParams {
    pub fn new(n: usize, alpha_h: f64, c_h: f64, t_h: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("hyperbolic graphs need n >= 2"));
        }
        if !(alpha_h > 0.0 && alpha_h.is_finite()) {
            return Err(Error::invalid(format!(
                "alpha_h must be positive, got {alpha_h}"
            )));
        }
        if !(t_h > 0.0 && t_h.is_finite()) {
            return Err(Error::invalid(format!(
                "temperature must be positive, got {t_h}"
            )));
        }
        let r_disk = 2.0 * (n as f64).ln() + c_h;
        if !(r_disk > 0.0) {
            return Err(Error::invalid(format!(
                "disk radius {r_disk} is not positive"
            )));
        }
        Ok(Self {
            alpha_h,
            c_h,
            t_h,
            n,
            r_disk,
        })
    }

    /// Radius with CDF `(cosh(α r) - 1) / (cosh(α R) - 1)` at quantile `u`.
    pub fn radius_quantile(&self, u: f64) -> f64 {
        let a = self.alpha_h;
        let ar = a * self.r_disk;
        let c = ar.cosh();
        let r = if c.is_finite() && c < 1e300 {
            (1.0 + u * (c - 1.0)).acosh() / a
        } else {
            // acosh(1 + u(cosh x - 1)) ≈ x + ln u once cosh overflows
            if u > 0.0 {
                self.r_disk + u.ln() / a
            } else {
                0.0
            }
        };
        r.clamp(0.0, self.r_disk)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarCoord {
    pub r: f64,
    pub phi: f64,
}

/// Vertex coordinates, a pure function of the seed.
pub fn hyperbolic_coords(p: &HyperbolicParams, seed: u64) -> Vec<PolarCoord> {
    let mut rng = position_rng(seed);
    (0..p.n)
        .map(|_| {
            let phi = 2.0 * PI * rng.random::<f64>();
            let r = p.radius_quantile(rng.random::<f64>());
            PolarCoord { r, phi }
        })
        .collect()
}

/// `cosh d = cosh(r_u - r_v) + 2 sinh r_u sinh r_v sin²(Δφ/2)`, clamped to `d >= 0`.
pub fn hyperbolic_distance(a: PolarCoord, b: PolarCoord) -> f64 {
    cosh_distance(a.r, b.r, a.phi - b.phi).acosh_or_zero()
}

#[inline]
fn cosh_distance(ru: f64, rv: f64, dphi: f64) -> f64 {
    let s = (0.5 * dphi).sin();
    (ru - rv).cosh() + 2.0 * ru.sinh() * rv.sinh() * s * s
}

trait AcoshOrZero {
    fn acosh_or_zero(self) -> f64;
}

impl AcoshOrZero for f64 {
    #[inline]
    fn acosh_or_zero(self) -> f64 {
        if self < 1.0 {
            0.0
        } else {
            self.acosh()
        }
    }
}

/// `1 / (1 + exp((d - R) / (2T)))`.
#[inline]
pub fn hyperbolic_probability(d: f64, r_disk: f64, t_h: f64) -> f64 {
    1.0 / (1.0 + ((d - r_disk) / (2.0 * t_h)).exp())
}

pub fn gen_hyperbolic(p: &HyperbolicParams, seed: u64) -> Graph {
    gen_hyperbolic_with(p, seed, SamplerPath::Fast)
}

pub fn gen_hyperbolic_with(p: &HyperbolicParams, seed: u64, path: SamplerPath) -> Graph {
    let coords = hyperbolic_coords(p, seed);
    let mut rng = edge_rng(seed);
    let pairs = match path {
        SamplerPath::Naive => sample_naive(p, &coords, &mut rng),
        SamplerPath::Fast => sample_banded(p, &coords, &mut rng),
    };
    Graph::from_normalized(p.n, pairs)
}

fn sample_naive<R: Rng>(
    p: &HyperbolicParams,
    coords: &[PolarCoord],
    rng: &mut R,
) -> Vec<(usize, usize, u32)> {
    let mut pairs = Vec::new();
    for u in 0..coords.len() {
        for v in u + 1..coords.len() {
            let d = hyperbolic_distance(coords[u], coords[v]);
            if rng.random::<f64>() < hyperbolic_probability(d, p.r_disk, p.t_h) {
                pairs.push((u, v, 1));
            }
        }
    }
    pairs
}

struct Band {
    lo: f64,
    hi: f64,
    phis: Vec<f64>,
    ids: Vec<usize>,
}

fn count_prefix(len: usize, pred: impl Fn(usize) -> bool) -> usize {
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

/// Radial bands no wider than the temperature, each sorted by angle. From
/// every vertex the sampler sweeps each band at or above its own outward in
/// angle; the distance lower bound over a band grows with the angle, so the
/// probability bound shrinks along the sweep.
fn sample_banded<R: Rng>(
    p: &HyperbolicParams,
    coords: &[PolarCoord],
    rng: &mut R,
) -> Vec<(usize, usize, u32)> {
    let n = coords.len();
    let width = p.t_h.min(1.0);
    let num_bands = ((p.r_disk / width).ceil() as usize).max(1);
    let band_of = |r: f64| ((r / width) as usize).min(num_bands - 1);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_bands];
    for (v, c) in coords.iter().enumerate() {
        members[band_of(c.r)].push(v);
    }
    let bands: Vec<Band> = members
        .into_iter()
        .enumerate()
        .map(|(j, mut ids)| {
            ids.sort_unstable_by(|&a, &b| coords[a].phi.total_cmp(&coords[b].phi).then(a.cmp(&b)));
            Band {
                lo: j as f64 * width,
                hi: if j + 1 == num_bands {
                    p.r_disk
                } else {
                    (j + 1) as f64 * width
                },
                phis: ids.iter().map(|&v| coords[v].phi).collect(),
                ids,
            }
        })
        .collect();
    let mut rank = vec![0usize; n];
    for band in &bands {
        for (k, &v) in band.ids.iter().enumerate() {
            rank[v] = k;
        }
    }

    let (r_disk, t_h) = (p.r_disk, p.t_h);
    let two_pi = 2.0 * PI;
    let mut pairs = Vec::new();
    for u in 0..n {
        let PolarCoord { r: ru, phi: phu } = coords[u];
        let tanh_ru = ru.tanh();
        let bu = band_of(ru);
        for (j, band) in bands.iter().enumerate().skip(bu) {
            let len = band.ids.len();
            if len == 0 {
                continue;
            }
            // smallest distance to any point of the band at angle theta
            let bound = |theta: f64| {
                let r_star = (tanh_ru * theta.cos()).atanh().clamp(band.lo, band.hi);
                let d = cosh_distance(ru, r_star, theta).acosh_or_zero();
                hyperbolic_probability(d, r_disk, t_h)
            };
            let mut walk = |elem: &dyn Fn(usize) -> (usize, f64), count: usize| {
                thinned_walk(
                    rng,
                    count,
                    |k| bound(elem(k).1),
                    |k| {
                        let (v, theta) = elem(k);
                        let d = cosh_distance(ru, coords[v].r, theta).acosh_or_zero();
                        hyperbolic_probability(d, r_disk, t_h)
                    },
                    |k| {
                        let v = elem(k).0;
                        pairs.push((u.min(v), u.max(v), 1));
                    },
                );
            };

            if j == bu {
                let iu = rank[u];
                let fwd = |k: usize| {
                    let idx = iu + 1 + k;
                    if idx < len {
                        (band.ids[idx], band.phis[idx] - phu)
                    } else {
                        let idx = idx - len;
                        (band.ids[idx], band.phis[idx] + two_pi - phu)
                    }
                };
                let count = count_prefix(len - 1, |k| fwd(k).1 < PI);
                walk(&fwd, count);
            } else {
                let start = band.phis.partition_point(|&x| x < phu);
                let fwd = |k: usize| {
                    let idx = start + k;
                    if idx < len {
                        (band.ids[idx], band.phis[idx] - phu)
                    } else {
                        let idx = idx - len;
                        (band.ids[idx], band.phis[idx] + two_pi - phu)
                    }
                };
                let count_fwd = count_prefix(len, |k| fwd(k).1 < PI);
                walk(&fwd, count_fwd);
                let back = |k: usize| {
                    if k < start {
                        let idx = start - 1 - k;
                        (band.ids[idx], phu - band.phis[idx])
                    } else {
                        let idx = len - 1 - (k - start);
                        (band.ids[idx], phu + two_pi - band.phis[idx])
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

    #[test]
    fn probability_examples() {
        assert_eq!(hyperbolic_probability(7.0, 7.0, 0.3), 0.5);
        let p = hyperbolic_probability(0.0, 40.0, 1.0);
        assert!((p - 1.0 / (1.0 + (-20.0f64).exp())).abs() < 1e-15);
        assert!(p > 0.999_999);
    }

    #[test]
    fn distance_law() {
        let a = PolarCoord { r: 1.0, phi: 0.0 };
        let b = PolarCoord { r: 2.0, phi: 0.0 };
        assert!((hyperbolic_distance(a, b) - 1.0).abs() < 1e-9);
        assert_eq!(hyperbolic_distance(a, a), 0.0);
        // opposite points pass through the origin
        let c = PolarCoord { r: 2.0, phi: PI };
        assert!((hyperbolic_distance(a, c) - 3.0).abs() < 1e-9);
        // agrees with the textbook form away from cancellation
        let (x, y) = (
            PolarCoord { r: 3.0, phi: 0.4 },
            PolarCoord { r: 2.5, phi: 1.9 },
        );
        let textbook =
            (x.r.cosh() * y.r.cosh() - x.r.sinh() * y.r.sinh() * (x.phi - y.phi).cos()).acosh();
        assert!((hyperbolic_distance(x, y) - textbook).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(HyperbolicParams::new(1, 0.75, 0.0, 0.1).is_err());
        assert!(HyperbolicParams::new(10, 0.0, 0.0, 0.1).is_err());
        assert!(HyperbolicParams::new(10, 0.75, 0.0, 0.0).is_err());
        assert!(HyperbolicParams::new(10, 0.75, -10.0, 0.1).is_err());
    }

    #[test]
    fn radius_distribution() {
        let p = HyperbolicParams::new(1000, 0.75, 0.0, 0.1).unwrap();
        assert_eq!(p.radius_quantile(0.0), 0.0);
        assert!((p.radius_quantile(1.0) - p.r_disk).abs() < 1e-9);
        // CDF at the sampled quantile returns the quantile
        for u in [0.01, 0.3, 0.5, 0.9] {
            let r = p.radius_quantile(u);
            let cdf = ((0.75 * r).cosh() - 1.0) / ((0.75 * p.r_disk).cosh() - 1.0);
            assert!((cdf - u).abs() < 1e-9);
        }
        let huge = HyperbolicParams::new(1000, 100.0, 0.0, 0.1).unwrap();
        let r = huge.radius_quantile(0.5);
        assert!(r.is_finite() && r <= huge.r_disk && r > huge.r_disk - 0.01);
    }

    #[test]
    fn coordinates_from_seed_alone() {
        let p = HyperbolicParams::new(200, 0.75, 0.0, 0.1).unwrap();
        let c = hyperbolic_coords(&p, 4);
        assert_eq!(c, hyperbolic_coords(&p, 4));
        assert!(c
            .iter()
            .all(|x| (0.0..2.0 * PI).contains(&x.phi) && x.r <= p.r_disk));
    }

    #[test]
    fn deterministic() {
        let p = HyperbolicParams::new(2000, 0.75, 0.0, 0.1).unwrap();
        let g = gen_hyperbolic(&p, 1);
        assert_eq!(g, gen_hyperbolic(&p, 1));
        assert!(g.is_simple());
        assert!(g.num_edges() > 0);
    }

    #[test]
    fn fast_pair_frequencies_match_probabilities() {
        let p = HyperbolicParams::new(6, 0.8, -1.0, 0.5).unwrap();
        let n = p.n;
        let trials = 6000u64;
        let mut expected = vec![vec![0.0; n]; n];
        let mut hits = vec![vec![0.0; n]; n];
        for seed in 0..trials {
            let c = hyperbolic_coords(&p, seed);
            for u in 0..n {
                for v in u + 1..n {
                    let d = hyperbolic_distance(c[u], c[v]);
                    expected[u][v] += hyperbolic_probability(d, p.r_disk, p.t_h);
                }
            }
            for &(u, v, _) in gen_hyperbolic(&p, seed).edges() {
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
        for t_h in [0.1, 0.7] {
            let p = HyperbolicParams::new(1500, 0.75, 0.0, t_h).unwrap();
            let mean_edges = |path| {
                (0..20)
                    .map(|s| gen_hyperbolic_with(&p, s, path).num_edges() as f64)
                    .sum::<f64>()
                    / 20.0
            };
            let fast = mean_edges(SamplerPath::Fast);
            let naive = mean_edges(SamplerPath::Naive);
            assert!(
                (fast - naive).abs() / naive < 0.04,
                "T={t_h}: {fast} vs {naive}"
            );
        }
    }
}
