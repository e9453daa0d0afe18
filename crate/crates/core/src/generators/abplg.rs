//! (α, β)-power-law multigraphs: `⌊e^α / i^β⌋` vertices of degree `i` for
//! `1 <= i <= ⌊e^{α/β}⌋`, realized by stub pairing.

use rand::Rng;
use serde::Serialize;

use super::{edge_rng, realize_configuration};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Prescribed degree counts and the per-vertex degree list they induce.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbplgSequence {
    pub e_alpha: f64,
    pub beta: f64,
    pub max_degree: usize,
    /// `counts[i - 1]` vertices of degree `i`.
    pub counts: Vec<usize>,
    /// Degrees in vertex order: ascending, plus the parity vertex if any.
    pub degrees: Vec<u64>,
    /// Whether a degree-1 vertex was appended to make the stub total even.
    pub parity_vertex: bool,
}

/// `floor`, except that values within 1e-9 relative of an integer snap to it,
/// so that e.g. `1000^{1/3}` counts as 10.
fn robust_floor(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.abs().max(1.0) {
        r
    } else {
        x.floor()
    }
}

pub fn abplg_degree_sequence(e_alpha: f64, beta: f64) -> Result<AbplgSequence> {
    if !(beta > 1.0) {
        return Err(Error::invalid(format!("beta must exceed 1, got {beta}")));
    }
    if !(e_alpha >= 1.0 && e_alpha.is_finite()) {
        return Err(Error::invalid(format!(
            "e^alpha must be at least 1, got {e_alpha}"
        )));
    }
    let max_degree = robust_floor(e_alpha.powf(1.0 / beta)) as usize;
    let counts: Vec<usize> = (1..=max_degree)
        .map(|i| robust_floor(e_alpha / (i as f64).powf(beta)) as usize)
        .collect();
    let mut degrees: Vec<u64> = counts
        .iter()
        .enumerate()
        .flat_map(|(i, &y)| std::iter::repeat_n(i as u64 + 1, y))
        .collect();
    let stubs: u64 = degrees.iter().sum();
    let parity_vertex = stubs % 2 == 1;
    if parity_vertex {
        degrees.push(1);
    }
    Ok(AbplgSequence {
        e_alpha,
        beta,
        max_degree,
        counts,
        degrees,
        parity_vertex,
    })
}

/// Samples the configuration model on the (α, β) degree sequence. Loops are
/// rewired against random other pairs, `(u,u),(x,y) -> (u,x),(u,y)`, for up to
/// `100 n` attempts and any survivors are dropped. With `simple` parallel
/// edges are collapsed as well.
pub fn gen_alpha_beta_plg(e_alpha: f64, beta: f64, seed: u64, simple: bool) -> Result<Graph> {
    let seq = abplg_degree_sequence(e_alpha, beta)?;
    let n = seq.degrees.len();
    let mut rng = edge_rng(seed);
    let mut pairs = realize_configuration(&seq.degrees, &mut rng);

    let mut loops: Vec<usize> = (0..pairs.len())
        .filter(|&i| pairs[i].0 == pairs[i].1)
        .collect();
    let mut attempts = 0usize;
    while let Some(&i) = loops.last() {
        if attempts >= 100 * n || pairs.len() < 2 {
            break;
        }
        attempts += 1;
        let j = loop {
            let j = rng.random_range(0..pairs.len());
            if j != i {
                break j;
            }
        };
        let u = pairs[i].0;
        let (x, y) = pairs[j];
        if x != u && y != u {
            pairs[i] = (u, x);
            pairs[j] = (u, y);
            loops.pop();
            if x == y {
                // j was a loop too and is now fixed
                loops.retain(|&k| k != j);
            }
        }
    }

    let triples = pairs
        .into_iter()
        .filter(|&(u, v)| u != v)
        .map(|(u, v)| (u.min(v), u.max(v), 1));
    let g = Graph::from_normalized(n, triples.collect());
    Ok(if simple { g.skeleton() } else { g })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thousand_cubed() {
        let s = abplg_degree_sequence(1000.0, 3.0).unwrap();
        assert_eq!(s.max_degree, 10);
        assert_eq!(s.counts, vec![1000, 125, 37, 15, 8, 4, 2, 1, 1, 1]);
        assert_eq!(s.degrees.len(), 1194);
        assert!(!s.parity_vertex);
    }

    #[test]
    fn smallest_instance() {
        let s = abplg_degree_sequence(1.0, 2.0).unwrap();
        assert_eq!(s.counts, vec![1]);
        assert!(s.parity_vertex);
        let g = gen_alpha_beta_plg(1.0, 2.0, 0, false).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.num_edges(), 1);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(abplg_degree_sequence(100.0, 1.0).is_err());
        assert!(abplg_degree_sequence(0.5, 2.0).is_err());
    }

    #[test]
    fn multigraph_histogram_exact() {
        let s = abplg_degree_sequence(1e5, 3.0).unwrap();
        for seed in 0..3 {
            let g = gen_alpha_beta_plg(1e5, 3.0, seed, false).unwrap();
            let mut hist = vec![0usize; s.max_degree + 1];
            for &d in g.degrees() {
                hist[d as usize] += 1;
            }
            let mut want = vec![0usize; s.max_degree + 1];
            for (i, &y) in s.counts.iter().enumerate() {
                want[i + 1] = y;
            }
            if s.parity_vertex {
                want[1] += 1;
            }
            assert_eq!(hist, want);
        }
    }

    #[test]
    fn simple_mode_is_simple() {
        let g = gen_alpha_beta_plg(1e4, 2.5, 3, true).unwrap();
        assert!(g.is_simple());
        let m = gen_alpha_beta_plg(1e4, 2.5, 3, false).unwrap();
        assert!(g.num_edges() <= m.num_edges());
        assert_eq!(gen_alpha_beta_plg(1e4, 2.5, 3, true).unwrap(), g);
    }
}
