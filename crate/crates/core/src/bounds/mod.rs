//! Closed-form constants, approximation guarantees and inapproximability
//! factors for graphs with power-law bucket properties.
//!
//! Every function here works in `f64`. [`rational`] evaluates the same
//! formulas exactly whenever the exponents involved are integers.

pub mod rational;
mod zeta;

pub use zeta::zeta;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::sig12;

/// `log_3 5`.
pub fn log3_5() -> f64 {
    5f64.ln() / 3f64.ln()
}

fn require_beta_above_two(beta: f64) -> Result<()> {
    if !(beta > 2.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("beta must exceed 2, got {beta}")));
    }
    Ok(())
}

fn require_t(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!("t must be non-negative, got {t}")));
    }
    Ok(())
}

fn require_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

/// `a_{β,t} = 1 + (β-1)/(β-2) · 1/(1 - ((t+2)/(t+1))^{1-β})`.
pub fn const_a(beta: f64, t: f64) -> Result<f64> {
    require_beta_above_two(beta)?;
    require_t(t)?;
    let ratio = (t + 2.0) / (t + 1.0);
    // 1 - ratio^{1-β}, written to keep precision when the power is near 1
    let tail = -(((1.0 - beta) * ratio.ln()).exp_m1());
    Ok(1.0 + (beta - 1.0) / (beta - 2.0) / tail)
}

/// `b_{c1,β,t} = (c1 (β-1)/(β-2) 2^β (t+1)^{β-1})^{1/(β-2)}`.
pub fn const_b(c1: f64, beta: f64, t: f64) -> Result<f64> {
    require_beta_above_two(beta)?;
    require_t(t)?;
    require_positive("c1", c1)?;
    let base = c1 * (beta - 1.0) / (beta - 2.0) * 2f64.powf(beta) * (t + 1.0).powf(beta - 1.0);
    Ok(base.powf(1.0 / (beta - 2.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValues {
    #[serde(serialize_with = "sig12")]
    pub a: f64,
    #[serde(serialize_with = "sig12")]
    pub b: f64,
    /// Lower bound on `|OPT| / n` for dominating sets, independent sets and
    /// vertex covers.
    #[serde(serialize_with = "sig12")]
    pub mds_lb_fraction: f64,
    #[serde(serialize_with = "sig12")]
    pub greedy_ds_ratio: f64,
    #[serde(serialize_with = "sig12")]
    pub cds_ratio: f64,
}

pub fn guarantee_bundle(c1: f64, beta: f64, t: f64) -> Result<BoundValues> {
    let a = const_a(beta, t)?;
    let b = const_b(c1, beta, t)?;
    Ok(BoundValues {
        a,
        b,
        mds_lb_fraction: 1.0 / (2.0 * a * b + 1.0),
        greedy_ds_ratio: log3_5() * a * (b + 1.0).ln() + 1.0,
        cds_ratio: 2.0 + (2.0 * a * b + 1.0).ln(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    /// `g(x) = x`.
    Linear,
    /// `g(x) = ln(x + 1)`.
    Log1p,
}

impl FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "log1p" => Ok(Self::Log1p),
            other => Err(Error::Unsupported(format!(
                "potential {other:?}; only linear and log1p are certified"
            ))),
        }
    }
}

/// Per-element potential volume bound `c a g(arg) + C` with
/// `arg = (c1 (β-1)/(β-2) (n/M) 2^{β-1} (t+1)^{β-1})^{1/(β-2)}`.
///
/// The minimum-`n` condition under which the bound is proved is not checked.
#[allow(clippy::too_many_arguments)]
pub fn pvl_bound(
    kind: PotentialKind,
    c: f64,
    big_c: f64,
    c1: f64,
    beta: f64,
    t: f64,
    n: f64,
    m: f64,
) -> Result<f64> {
    let a = const_a(beta, t)?;
    require_positive("c1", c1)?;
    if !(n >= 1.0 && m >= 1.0 && m <= n * (n - 1.0)) {
        return Err(Error::invalid(format!(
            "volume M = {m} is infeasible for n = {n} (need 1 <= M <= n(n-1))"
        )));
    }
    let arg = (c1 * (beta - 1.0) / (beta - 2.0)
        * (n / m)
        * 2f64.powf(beta - 1.0)
        * (t + 1.0).powf(beta - 1.0))
    .powf(1.0 / (beta - 2.0));
    let g = match kind {
        PotentialKind::Linear => arg,
        PotentialKind::Log1p => arg.ln_1p(),
    };
    Ok(c * a * g + big_c)
}

/// Independent set size guaranteed by PLB-L, as a fraction of `n`.
pub fn mis_plbl_lower(c2: f64, beta: f64, t: f64, d_min: u64, connected: bool) -> Result<f64> {
    require_beta_above_two(beta)?;
    require_t(t)?;
    if d_min == 0 {
        return Err(Error::invalid("d_min must be at least 1"));
    }
    if connected && d_min == 1 {
        return Ok(c2 / (t + 1.0));
    }
    let d = d_min as f64;
    Ok(c2 * (t + 1.0).powf(beta - 1.0) / ((t + d).powf(beta) * (d + 1.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphMode {
    #[default]
    Multigraph,
    Simple,
}

impl fmt::Display for GraphMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphMode::Multigraph => "multigraph",
            GraphMode::Simple => "simple",
        })
    }
}

impl FromStr for GraphMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multigraph" | "multi" => Ok(Self::Multigraph),
            "simple" => Ok(Self::Simple),
            other => Err(Error::invalid(format!("unknown graph mode {other:?}"))),
        }
    }
}

/// Problems with an inapproximability result on PLB graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HardProblem {
    Mds,
    Mis,
    Mvc,
}

impl HardProblem {
    pub const ALL: [HardProblem; 3] = [HardProblem::Mds, HardProblem::Mis, HardProblem::Mvc];
}

impl fmt::Display for HardProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HardProblem::Mds => "mds",
            HardProblem::Mis => "mis",
            HardProblem::Mvc => "mvc",
        })
    }
}

impl FromStr for HardProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mds" => Ok(Self::Mds),
            "mis" => Ok(Self::Mis),
            "mvc" | "vc" => Ok(Self::Mvc),
            other => Err(Error::Unsupported(format!(
                "no hardness result for {other:?}"
            ))),
        }
    }
}

/// `K = 1/(t+1) + 1/(β-1)` for multigraphs, plus `(t+1)/(β-2) + 1` for simple graphs.
pub fn bracket_k(mode: GraphMode, beta: f64, t: f64) -> f64 {
    let k = 1.0 / (t + 1.0) + 1.0 / (beta - 1.0);
    match mode {
        GraphMode::Multigraph => k,
        GraphMode::Simple => k + (t + 1.0) / (beta - 2.0) + 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hardness {
    pub problem: HardProblem,
    pub mode: GraphMode,
    #[serde(serialize_with = "sig12")]
    pub factor: f64,
    /// Vertex growth `N / n` of the embedding behind the reduction.
    #[serde(serialize_with = "sig12")]
    pub growth_c: f64,
    /// `2 c2 K`, required to be below 1.
    #[serde(serialize_with = "sig12")]
    pub bracket: f64,
}

/// Inapproximability factor for `problem` on PLB graphs of the given mode,
/// conditional on the hardness of the problem on cubic graphs. `gamma` is only
/// used for independent sets, `c1` only for independent sets on simple graphs.
pub fn hardness_factor(
    problem: HardProblem,
    mode: GraphMode,
    c1: Option<f64>,
    c2: f64,
    beta: f64,
    t: f64,
    gamma: f64,
) -> Result<Hardness> {
    match mode {
        GraphMode::Multigraph if !(beta > 1.0) => {
            return Err(Error::invalid(format!("beta must exceed 1, got {beta}")))
        }
        GraphMode::Simple => require_beta_above_two(beta)?,
        _ => {}
    }
    require_t(t)?;
    require_positive("c2", c2)?;
    if problem == HardProblem::Mis && !(0.0..1.0 / 139.0).contains(&gamma) {
        return Err(Error::invalid(format!(
            "gamma must lie in [0, 1/139), got {gamma}"
        )));
    }
    let k = bracket_k(mode, beta, t);
    let x = 2.0 * c2 * k;
    if x >= 1.0 {
        return Err(Error::BracketViolated {
            what: "2 c2 K",
            value: x,
            limit: 1.0,
        });
    }
    let vc_gap = 10.0 * 5f64.sqrt() - 22.0;
    let g = 1.0 / 139.0 - gamma;
    let g140 = 140.0 / 139.0 - gamma;
    let (factor, growth_c) = match mode {
        GraphMode::Multigraph => {
            let growth = 1.0 + x / (1.0 - x);
            let f = match problem {
                HardProblem::Mds => 1.0 + 1.0 / (130.0 * (4.0 * x / (1.0 - x) + 15.0)),
                HardProblem::Mis => 1.0 + g * (1.0 - x) / (2.0 * x * g140 + 1.0 - x),
                HardProblem::Mvc => 1.0 + vc_gap * (1.0 - x) / (3.0 - 2.0 * x),
            };
            (f, growth)
        }
        GraphMode::Simple => {
            let growth = 1.0 / (1.0 - x);
            let f = match problem {
                HardProblem::Mds => {
                    1.0 + 1.0 / (130.0 * (4.0 * (1.0 - c2 / (t + 1.0)) / (1.0 - x) + 1.0))
                }
                HardProblem::Mis => {
                    let c1 = c1.ok_or(Error::MissingConstant("c1"))?;
                    require_positive("c1", c1)?;
                    let y = (t + 1.0) * (1.0 - x);
                    1.0 + g * y / (4.0 * c1 * g140 + y)
                }
                HardProblem::Mvc => {
                    let s = 1.0 / (beta - 1.0) + (t + 1.0) / (beta - 2.0) + 1.0;
                    1.0 + (1.0 - x) * vc_gap / (2.0 * c2 * s + 1.0)
                }
            };
            (f, growth)
        }
    };
    Ok(Hardness {
        problem,
        mode,
        factor,
        growth_c,
        bracket: x,
    })
}

/// `(a^{-c}, c/(1-2^{-c}) Σ_{i=a}^{b-1} i^{-c-1})`; the first never exceeds the second.
pub fn lemma22_bound(a: u64, b: u64, c: f64) -> Result<(f64, f64)> {
    if a < 1 || 2 * a > b {
        return Err(Error::invalid(format!(
            "need 1 <= a <= b/2, got a = {a}, b = {b}"
        )));
    }
    require_positive("c", c)?;
    let lhs = (a as f64).powf(-c);
    let sum = crate::report::compensated_sum((a..b).rev().map(|i| (i as f64).powf(-c - 1.0)));
    let rhs = c / (1.0 - 2f64.powf(-c)) * sum;
    Ok((lhs, rhs))
}
