//! Seed-reproducible random and deterministic power-law graph generators.
//!
//! # Seed policy
//!
//! Every generator is a pure function of its parameters and a 64-bit seed.
//! Randomness comes from ChaCha8 seeded with the seed; vertex positions (GIRG,
//! hyperbolic) use stream 0 and edge decisions use stream 1, so positions can
//! be re-derived without sampling any edge.
//!
//! Chung-Lu, GIRG (dimension 1) and hyperbolic graphs have two samplers that
//! produce the same distribution but consume the edge stream differently:
//! [`SamplerPath::Naive`] flips one coin per vertex pair, and
//! [`SamplerPath::Fast`] walks candidates in order of decreasing probability
//! bound and jumps with geometric skips, thinning each proposal to the exact
//! pair probability. The plain `gen_*` functions drive the fast path. GIRG in
//! dimension ≥ 2 always uses the naive path.

mod abplg;
mod chung_lu;
mod girg;
mod hyperbolic;
mod regular;

pub use abplg::{abplg_degree_sequence, gen_alpha_beta_plg, AbplgSequence};
pub use chung_lu::{chung_lu_probability, gen_chung_lu, gen_chung_lu_with};
pub use girg::{
    gen_girg, gen_girg_with, girg_positions, girg_probability, torus_distance, GirgParams,
};
pub use hyperbolic::{
    gen_hyperbolic, gen_hyperbolic_with, hyperbolic_coords, hyperbolic_distance,
    hyperbolic_probability, HyperbolicParams, PolarCoord,
};
pub use regular::{gen_random_regular, realize_configuration};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerPath {
    #[default]
    Fast,
    Naive,
}

pub(crate) fn position_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

pub(crate) fn edge_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

/// Number of failures before the first success of independent trials with
/// success probability `p` in (0, 1).
#[inline]
pub(crate) fn geometric_skip<R: Rng>(rng: &mut R, p: f64) -> usize {
    debug_assert!(p > 0.0 && p < 1.0);
    let u: f64 = 1.0 - rng.random::<f64>();
    let skip = (u.ln() / (-p).ln_1p()).floor();
    if skip >= usize::MAX as f64 {
        usize::MAX
    } else {
        skip as usize
    }
}

/// Walks `len` candidates whose pair probabilities are non-increasing along
/// the walk, calling `accept(k)` for each candidate chosen independently with
/// probability `prob(k)`. `bound(k)` must dominate `prob(j)` for every `j >= k`.
pub(crate) fn thinned_walk<R, B, P, A>(rng: &mut R, len: usize, bound: B, prob: P, mut accept: A)
where
    R: Rng,
    B: Fn(usize) -> f64,
    P: Fn(usize) -> f64,
    A: FnMut(usize),
{
    let mut pos = 0usize;
    while pos < len {
        let pbar = bound(pos).min(1.0);
        if pbar <= 0.0 {
            return;
        }
        let k = if pbar >= 1.0 {
            pos
        } else {
            match pos.checked_add(geometric_skip(rng, pbar)) {
                Some(k) if k < len => k,
                _ => return,
            }
        };
        let p = prob(k);
        if p >= pbar || rng.random::<f64>() * pbar < p {
            accept(k);
        }
        pos = k + 1;
    }
}
