//! Batch experiments: fitted PLB constants across seeds, and greedy versus
//! exact optima against the closed-form guarantees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{guarantee_bundle, GraphMode};
use crate::embed::embed;
use crate::error::{Error, Result};
use crate::exact::{exact, MDS_BUDGET, MIS_BUDGET, MVC_BUDGET};
use crate::generators::{
    gen_alpha_beta_plg, gen_chung_lu, gen_chung_lu_with, gen_girg_with, gen_hyperbolic_with,
    gen_random_regular, GirgParams, HyperbolicParams, SamplerPath,
};
use crate::graph::Graph;
use crate::plb::fit_plb;
use crate::report::{sig12, sig12_opt, SCHEMA_VERSION};
use crate::solvers::{
    greedy_mds, greedy_mis, greedy_vc_degree, matching_vc, validate_solution, Problem,
};
use crate::weights::power_law_weights;

pub const DEFAULT_ETA: f64 = 0.5;

/// Random graph model with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    ChungLu {
        n: usize,
        beta_prime: f64,
        w_min: f64,
    },
    Girg {
        n: usize,
        beta_prime: f64,
        w_min: f64,
        dim: usize,
        alpha: f64,
    },
    Hyperbolic {
        n: usize,
        alpha_h: f64,
        c_h: f64,
        t_h: f64,
    },
    Abplg {
        e_alpha: f64,
        beta: f64,
        simple: bool,
    },
}

impl Model {
    /// Exponent of the degree tail the model is built for: `β'` for weight
    /// models, `2 α_H + 1` for hyperbolic graphs, `β` for ABPLG.
    pub fn beta_prime(&self) -> f64 {
        match *self {
            Model::ChungLu { beta_prime, .. } | Model::Girg { beta_prime, .. } => beta_prime,
            Model::Hyperbolic { alpha_h, .. } => 2.0 * alpha_h + 1.0,
            Model::Abplg { beta, .. } => beta,
        }
    }

    /// The PLB exponent to check at: `β' - η`, except for ABPLG where the
    /// degree sequence already has exponent `β`.
    pub fn check_beta(&self, eta: f64) -> f64 {
        match self {
            Model::Abplg { beta, .. } => *beta,
            _ => self.beta_prime() - eta,
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph> {
        self.generate_with(seed, SamplerPath::Fast)
    }

    /// Generates with the given sampler; ABPLG has a single sampler.
    pub fn generate_with(&self, seed: u64, path: SamplerPath) -> Result<Graph> {
        match *self {
            Model::ChungLu {
                n,
                beta_prime,
                w_min,
            } => Ok(gen_chung_lu_with(
                &power_law_weights(n, beta_prime, w_min)?,
                seed,
                path,
            )),
            Model::Girg {
                n,
                beta_prime,
                w_min,
                dim,
                alpha,
            } => {
                let p = GirgParams::new(dim, alpha, power_law_weights(n, beta_prime, w_min)?)?;
                Ok(gen_girg_with(&p, seed, path))
            }
            Model::Hyperbolic {
                n,
                alpha_h,
                c_h,
                t_h,
            } => {
                let p = HyperbolicParams::new(n, alpha_h, c_h, t_h)?;
                Ok(gen_hyperbolic_with(&p, seed, path))
            }
            Model::Abplg {
                e_alpha,
                beta,
                simple,
            } => gen_alpha_beta_plg(e_alpha, beta, seed, simple),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub seed: u64,
    pub n: usize,
    pub m: u64,
    pub max_degree: u64,
    #[serde(serialize_with = "sig12")]
    pub c1_fit: f64,
    #[serde(serialize_with = "sig12")]
    pub c2_fit: f64,
    #[serde(serialize_with = "sig12")]
    pub c3_fit: f64,
    /// `None` when fewer than two distinct degrees fall in the fit window.
    #[serde(serialize_with = "sig12_opt")]
    pub tail_slope: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spread {
    #[serde(serialize_with = "sig12")]
    pub median: f64,
    #[serde(serialize_with = "sig12")]
    pub max: f64,
}

impl Spread {
    fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        let mut v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        Some(Spread {
            median: median_sorted(&v),
            max: v[v.len() - 1],
        })
    }
}

fn median_sorted(v: &[f64]) -> f64 {
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregates {
    pub c1: Spread,
    pub c2: Spread,
    pub c3: Spread,
    pub tail_slope: Option<Spread>,
}

/// Checks of one ratio-study instance. Every field must be true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RatioChecks {
    /// Greedy dominating set within the approximation factor.
    pub greedy_ratio: bool,
    /// Optimum dominating set at least the lower-bound fraction of `n`.
    pub mds_lower: bool,
    /// Greedy maximal independent set at least the same fraction.
    pub mis_lower: bool,
    /// Optimum vertex cover at least the same fraction.
    pub vc_lower: bool,
    /// Greedy dominating set within `Σ_{x ∈ OPT} H(|N[x]|)`.
    pub harmonic: bool,
    /// Matching cover at most twice the optimum.
    pub matching: bool,
    /// `OPT_MIS + OPT_VC = n`.
    pub gallai: bool,
}

impl RatioChecks {
    pub fn all(&self) -> bool {
        self.greedy_ratio
            && self.mds_lower
            && self.mis_lower
            && self.vc_lower
            && self.harmonic
            && self.matching
            && self.gallai
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub instance: String,
    pub seed: u64,
    pub n: usize,
    pub m: u64,
    /// Set when the instance was skipped; no other field is meaningful then.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(serialize_with = "sig12")]
    pub c1_fit: f64,
    pub greedy_size: usize,
    pub exact_size: usize,
    #[serde(serialize_with = "sig12")]
    pub ratio: f64,
    #[serde(serialize_with = "sig12")]
    pub theorem_bound: f64,
    #[serde(serialize_with = "sig12")]
    pub lower_fraction: f64,
    #[serde(serialize_with = "sig12")]
    pub harmonic_bound: f64,
    pub greedy_mis: usize,
    pub exact_mis: usize,
    pub greedy_vc_degree: usize,
    pub matching_vc: usize,
    pub exact_vc: usize,
    pub checks: Option<RatioChecks>,
    pub bound_respected: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RandomPlb,
    Embedded,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-plb" => Ok(Family::RandomPlb),
            "embedded" => Ok(Family::Embedded),
            _ => Err(Error::invalid(format!(
                "unknown family {s:?} (expected random-plb or embedded)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Model>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(serialize_with = "sig12")]
    pub beta: f64,
    #[serde(serialize_with = "sig12")]
    pub t: f64,
    pub seeds: Vec<u64>,
    pub per_trial: Vec<TrialRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggregates: Option<Aggregates>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_study: Option<Vec<RatioRow>>,
}

/// Least-squares slope of `ln P(deg >= k)` against `ln k` over the distinct
/// degrees `k` in `[10, Δ/10]`.
pub fn tail_slope(g: &Graph) -> Option<f64> {
    let n = g.n() as f64;
    let mut degs: Vec<u64> = g.degrees().to_vec();
    degs.sort_unstable();
    let hi = g.max_degree() as f64 / 10.0;
    let mut pts = Vec::new();
    let mut i = 0;
    while i < degs.len() {
        let k = degs[i];
        let at_least = (degs.len() - i) as f64;
        if k >= 10 && k as f64 <= hi {
            pts.push(((k as f64).ln(), (at_least / n).ln()));
        }
        while i < degs.len() && degs[i] == k {
            i += 1;
        }
    }
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn trial(model: &Model, beta: f64, t: f64, seed: u64) -> Result<TrialRow> {
    let g = model.generate(seed)?;
    let fit = fit_plb(&g, beta, t)?;
    Ok(TrialRow {
        seed,
        n: g.n(),
        m: g.num_edges(),
        max_degree: g.max_degree(),
        c1_fit: fit.c1_fit,
        c2_fit: fit.c2_fit,
        c3_fit: fit.c3_fit,
        tail_slope: tail_slope(&g),
    })
}

/// One graph per seed, PLB constants fitted at `(β, t)`. Trials run on up to
/// `jobs` threads; rows come back in seed order.
pub fn run_experiment(
    model: &Model,
    beta: f64,
    t: f64,
    seeds: &[u64],
    jobs: usize,
) -> Result<ExperimentReport> {
    if seeds.is_empty() {
        return Err(Error::invalid("at least one seed is required"));
    }
    let rows: Vec<Result<TrialRow>> = in_pool(jobs, || {
        seeds
            .par_iter()
            .map(|&seed| {
                trial(model, beta, t, seed).map_err(|e| Error::Trial {
                    seed,
                    source: Box::new(e),
                })
            })
            .collect()
    })?;
    let per_trial = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let spread = |f: fn(&TrialRow) -> f64| Spread::of(per_trial.iter().map(f)).expect("non-empty");
    let aggregates = Aggregates {
        c1: spread(|r| r.c1_fit),
        c2: spread(|r| r.c2_fit),
        c3: spread(|r| r.c3_fit),
        tail_slope: Spread::of(per_trial.iter().filter_map(|r| r.tail_slope)),
    };
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        model: Some(model.clone()),
        family: None,
        beta,
        t,
        seeds: seeds.to_vec(),
        per_trial,
        aggregates: Some(aggregates),
        ratio_study: None,
    })
}

/// Chung-Lu graph on power-law weights with exponent `β + η` and minimum
/// weight 2, made connected by chaining one vertex of each component to the
/// next.
pub fn random_plb_instance(n: usize, beta: f64, seed: u64) -> Result<Graph> {
    let g = gen_chung_lu(&power_law_weights(n, beta + DEFAULT_ETA, 2.0)?, seed);
    let (label, count) = g.components();
    let mut reps = vec![usize::MAX; count];
    for (v, &c) in label.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = v;
        }
    }
    let mut pairs: Vec<(usize, usize, u32)> = g.edges().to_vec();
    pairs.extend(reps.windows(2).map(|w| (w[0], w[1], 1)));
    Graph::from_edges(n, pairs)
}

/// Multigraph embedding of a random cubic graph whose output has at most
/// `size` vertices, using `c2 = 0.02`.
pub fn embedded_instance(size: usize, beta: f64, t: f64, seed: u64) -> Result<Graph> {
    let mut n = (size.saturating_sub(4)).max(4);
    n -= n % 2;
    while n >= 4 {
        let cubic = gen_random_regular(n, 3, seed)?;
        let e = embed(&cubic, GraphMode::Multigraph, beta, t, 0.02)?;
        if e.graph.n() <= size {
            return Ok(e.graph);
        }
        n -= 2;
    }
    Err(Error::TooSmall(format!(
        "no embedded instance fits {size} vertices"
    )))
}

fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

/// Greedy and exact optima of one instance against the guarantees, with
/// `c1` fitted on the instance.
pub fn ratio_row(instance: String, seed: u64, g: &Graph, beta: f64, t: f64) -> Result<RatioRow> {
    let mut row = RatioRow {
        instance,
        seed,
        n: g.n(),
        m: g.num_edges(),
        skipped: None,
        c1_fit: 0.0,
        greedy_size: 0,
        exact_size: 0,
        ratio: 0.0,
        theorem_bound: 0.0,
        lower_fraction: 0.0,
        harmonic_bound: 0.0,
        greedy_mis: 0,
        exact_mis: 0,
        greedy_vc_degree: 0,
        matching_vc: 0,
        exact_vc: 0,
        checks: None,
        bound_respected: false,
    };
    if g.first_isolated().is_some() {
        row.skipped = Some("isolated".into());
        return Ok(row);
    }
    let fit = fit_plb(g, beta, t)?;
    let bundle = guarantee_bundle(fit.c1_fit, beta, t)?;
    let gd = greedy_mds(g)?;
    let od = exact(g, Problem::Mds, MDS_BUDGET)?;
    let gi = greedy_mis(g);
    let oi = exact(g, Problem::Mis, MIS_BUDGET)?;
    let gv = greedy_vc_degree(g);
    let mv = matching_vc(g);
    let ov = exact(g, Problem::Mvc, MVC_BUDGET)?;
    let n = g.n() as f64;
    let harmonic_bound: f64 = od
        .witness
        .iter()
        .map(|&x| harmonic(g.distinct_degree(x) + 1))
        .sum();
    let valid = gd.valid
        && gi.valid
        && gv.valid
        && mv.valid
        && validate_solution(g, Problem::Mds, &od.witness).valid;
    let checks = RatioChecks {
        greedy_ratio: gd.size as f64 <= bundle.greedy_ds_ratio * od.size as f64,
        mds_lower: od.size as f64 >= bundle.mds_lb_fraction * n,
        mis_lower: gi.size as f64 >= bundle.mds_lb_fraction * n,
        vc_lower: ov.size as f64 >= bundle.mds_lb_fraction * n,
        harmonic: gd.size as f64 <= harmonic_bound + 1e-9,
        matching: mv.size <= 2 * ov.size,
        gallai: oi.size + ov.size == g.n(),
    };
    row.c1_fit = fit.c1_fit;
    row.greedy_size = gd.size;
    row.exact_size = od.size;
    row.ratio = gd.size as f64 / od.size as f64;
    row.theorem_bound = bundle.greedy_ds_ratio;
    row.lower_fraction = bundle.mds_lb_fraction;
    row.harmonic_bound = harmonic_bound;
    row.greedy_mis = gi.size;
    row.exact_mis = oi.size;
    row.greedy_vc_degree = gv.size;
    row.matching_vc = mv.size;
    row.exact_vc = ov.size;
    row.bound_respected = valid && checks.all();
    row.checks = Some(checks);
    Ok(row)
}

/// `count` instances of `size` vertices at most, instance `i` drawn with
/// seed `seed + i`.
pub fn ratio_study(
    family: Family,
    count: usize,
    size: usize,
    beta: f64,
    t: f64,
    seed: u64,
    jobs: usize,
) -> Result<ExperimentReport> {
    let budget = MDS_BUDGET.min(MIS_BUDGET).min(MVC_BUDGET);
    if size > budget {
        return Err(Error::BudgetExceeded { n: size, budget });
    }
    if size < 2 {
        return Err(Error::invalid("size must be at least 2"));
    }
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    let rows: Vec<Result<RatioRow>> = in_pool(jobs, || {
        seeds
            .par_iter()
            .enumerate()
            .map(|(i, &s)| {
                let (name, g) = match family {
                    Family::RandomPlb => (
                        format!("random-plb-{i}"),
                        random_plb_instance(size, beta, s),
                    ),
                    Family::Embedded => {
                        (format!("embedded-{i}"), embedded_instance(size, beta, t, s))
                    }
                };
                g.and_then(|g| ratio_row(name, s, &g, beta, t))
                    .map_err(|e| Error::Trial {
                        seed: s,
                        source: Box::new(e),
                    })
            })
            .collect()
    })?;
    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        model: None,
        family: Some(family),
        beta,
        t,
        seeds,
        per_trial: Vec::new(),
        aggregates: None,
        ratio_study: Some(rows.into_iter().collect::<Result<Vec<_>>>()?),
    })
}
