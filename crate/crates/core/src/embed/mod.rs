//! Embedding cubic graphs into graphs with power-law bucket structure.
//!
//! The cubic input keeps vertex ids `0..n` and becomes a union of maximal
//! components of the output. The remaining vertices are disjoint gadgets
//! (cycles, regular cycles, stars) placed into degree buckets so that every
//! bucket in range reaches its PLB-L lower bound, then padded up to the
//! target vertex count `N`. Optima of the output are the input optimum plus
//! the closed-form gadget optima.

mod gadgets;

pub use gadgets::{gadget_opt, regular_cycle, GadgetKind};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::{bracket_k, GraphMode, HardProblem};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::plb::{check_plb, unit_bound, PlbParams, PlbReport, Property};
use crate::report::{sig12, SCHEMA_VERSION};
use crate::solvers::Problem;
use gadgets::{cycle_graph, regular_cycle_unchecked, star_graph};

/// One group of identical gadgets in the output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetEntry {
    /// Bucket of the gadget's highest degree.
    pub bucket: usize,
    pub kind: GadgetKind,
    /// Vertices per gadget.
    pub size: usize,
    /// Highest degree inside the gadget.
    pub degree: u64,
    pub count: usize,
}

impl GadgetEntry {
    /// Optimum of one gadget of this entry.
    pub fn opt(&self, problem: Problem) -> Result<usize> {
        let n = match self.kind {
            GadgetKind::RegularCycle => self.size / 2,
            _ => self.size,
        };
        gadget_opt(self.kind, n, problem)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbedParams {
    pub mode: GraphMode,
    #[serde(serialize_with = "sig12")]
    pub beta: f64,
    #[serde(serialize_with = "sig12")]
    pub t: f64,
    /// Fitted on the output.
    #[serde(serialize_with = "sig12")]
    pub c1: f64,
    #[serde(serialize_with = "sig12")]
    pub c2: f64,
    /// Fitted on the output.
    #[serde(serialize_with = "sig12")]
    pub c3: f64,
    /// Growth constant of the construction.
    #[serde(serialize_with = "sig12")]
    pub c: f64,
    pub n: usize,
    /// `⌈c n⌉`.
    pub n_target: usize,
    /// Final vertex count.
    #[serde(rename = "N")]
    pub big_n: usize,
    /// Highest bucket that would be filled at `Δ = ⌈N^{1/(β-1)}⌉`.
    pub max_bucket_target: usize,
    /// Highest bucket actually filled; lower than the target when the
    /// required gadgets do not fit into `N` vertices.
    pub max_bucket: usize,
}

/// Reduction constant `C` with `OPT(output) <= C OPT(input)` per problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthC {
    #[serde(serialize_with = "sig12")]
    pub mds: f64,
    #[serde(serialize_with = "sig12")]
    pub mis: f64,
    #[serde(serialize_with = "sig12")]
    pub mvc: f64,
}

impl GrowthC {
    pub fn get(&self, p: HardProblem) -> f64 {
        match p {
            HardProblem::Mds => self.mds,
            HardProblem::Mis => self.mis,
            HardProblem::Mvc => self.mvc,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbedResult {
    pub schema_version: u32,
    #[serde(skip)]
    pub graph: Graph,
    /// Output ids of the input vertices, in input order.
    pub input_component_map: Vec<usize>,
    pub gadget_inventory: Vec<GadgetEntry>,
    pub params_used: EmbedParams,
    #[serde(rename = "growth_C")]
    pub growth_c: GrowthC,
    pub plb: PlbReport,
}

fn check_cubic(g: &Graph) -> Result<()> {
    if !g.is_simple() {
        return Err(Error::NotCubic("simple"));
    }
    if g.n() == 0 || g.degrees().iter().any(|&d| d != 3) {
        return Err(Error::NotCubic("3-regular"));
    }
    Ok(())
}

fn check_common(beta: f64, t: f64, c2: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid(format!("t must be non-negative, got {t}")));
    }
    if !(c2 > 0.0 && c2.is_finite()) {
        return Err(Error::invalid(format!("c2 must be positive, got {c2}")));
    }
    if !beta.is_finite() {
        return Err(Error::invalid("beta must be finite"));
    }
    Ok(())
}

/// Smallest integer at least `x`, robust to `x` landing a rounding error
/// above an integer.
fn ceil_count(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn max_bucket_for(big_n: usize, beta: f64) -> usize {
    let delta = (big_n as f64).powf(1.0 / (beta - 1.0)).ceil().max(1.0) as u64;
    crate::graph::bucket_of(delta).unwrap_or(0).max(1)
}

struct Placement {
    gadgets: Vec<(GadgetEntry, Graph)>,
    big_n: usize,
}

/// Assembles input and gadgets, verifies PLB with fitted `c1`, `c3` and the
/// supplied `c2`, and fills in the report.
#[allow(clippy::too_many_arguments)]
fn finish(
    input: &Graph,
    mode: GraphMode,
    beta: f64,
    t: f64,
    c2: f64,
    c: f64,
    max_bucket_target: usize,
    max_bucket: usize,
    placement: Placement,
) -> Result<EmbedResult> {
    let n = input.n();
    let mut parts: Vec<&Graph> = vec![input];
    parts.extend(placement.gadgets.iter().map(|(_, g)| g));
    let (graph, _) = Graph::disjoint_union(&parts);
    if graph.n() != placement.big_n {
        return Err(Error::Construction(format!(
            "assembled {} vertices, planned {}",
            graph.n(),
            placement.big_n
        )));
    }

    let mut grouped: BTreeMap<(usize, GadgetKind, usize, u64), usize> = BTreeMap::new();
    for (e, _) in &placement.gadgets {
        *grouped
            .entry((e.bucket, e.kind, e.size, e.degree))
            .or_default() += 1;
    }
    let gadget_inventory = grouped
        .into_iter()
        .map(|((bucket, kind, size, degree), count)| GadgetEntry {
            bucket,
            kind,
            size,
            degree,
            count,
        })
        .collect();

    let fit = check_plb(&graph, &PlbParams::new(beta, t)?, &[])?;
    let params = PlbParams::new(beta, t)?
        .with_c1(fit.c1_fit)
        .with_c2(c2)
        .with_c3(fit.c3_fit.max(f64::MIN_POSITIVE));
    let plb = check_plb(&graph, &params, &Property::ALL)?;
    if !plb.pass() {
        return Err(Error::Construction(format!(
            "output fails PLB-L with c2 = {c2}: bucket {} holds {} of the required {}",
            plb.c2_bucket,
            plb.per_bucket.get(plb.c2_bucket).map_or(0, |b| b.count),
            plb.per_bucket
                .get(plb.c2_bucket)
                .map_or(0.0, |b| c2 * b.unit_bound)
        )));
    }

    let c_eff = graph.n() as f64 / n as f64;
    let damp = 1.0 - c2 / (t + 1.0);
    let growth_c = match mode {
        GraphMode::Multigraph => GrowthC {
            mds: (4.0 * c_eff + 11.0) / 3.0,
            mis: 2.0 * c_eff - 1.0,
            mvc: c_eff + 2.0,
        },
        GraphMode::Simple => GrowthC {
            mds: 4.0 * c_eff * damp - 3.0,
            mis: 4.0 * c_eff * plb.c1_fit / (t + 1.0) + 1.0,
            mvc: 2.0 * c_eff * damp - 1.0,
        },
    };

    Ok(EmbedResult {
        schema_version: SCHEMA_VERSION,
        input_component_map: (0..n).collect(),
        gadget_inventory,
        params_used: EmbedParams {
            mode,
            beta,
            t,
            c1: plb.c1_fit,
            c2,
            c3: plb.c3_fit,
            c,
            n,
            n_target: ceil_count(c * n as f64),
            big_n: graph.n(),
            max_bucket_target,
            max_bucket,
        },
        growth_c,
        plb,
        graph,
    })
}

fn round_up_even(x: usize) -> usize {
    x + x % 2
}

/// Embeds a simple cubic graph into a PLB multigraph with
/// `N = ⌈c n⌉` vertices (one more if needed for parity), where
/// `c = 1 + 2 c2 K / (1 - 2 c2 K)` and `K = 1/(t+1) + 1/(β-1)`.
///
/// The input fills bucket 1 together with an optional cycle. Each bucket
/// `d >= 2` up to the target maximum degree receives a `2^d`-regular cycle,
/// or a pair joined by `2^d` parallel edges when two vertices suffice.
/// Spare vertex pairs go round-robin to buckets `d >= 2`, lowest first,
/// while the bucket stays within the density of bucket 1, and otherwise
/// into the bucket-1 cycle.
pub fn embed_multigraph(g: &Graph, beta: f64, t: f64, c2: f64) -> Result<EmbedResult> {
    check_cubic(g)?;
    check_common(beta, t, c2)?;
    if !(beta > 1.0) {
        return Err(Error::invalid(format!("beta must exceed 1, got {beta}")));
    }
    let x = 2.0 * c2 * bracket_k(GraphMode::Multigraph, beta, t);
    if x >= 0.5 {
        return Err(Error::BracketViolated {
            what: "2 c2 (1/(t+1) + 1/(beta-1))",
            value: x,
            limit: 0.5,
        });
    }
    let n = g.n();
    let c = 1.0 + x / (1.0 - x);
    let mut big_n = ceil_count(c * n as f64).max(n);
    if (big_n - n) % 2 == 1 {
        big_n += 1;
    }
    let target = max_bucket_for(big_n, beta);
    let unit = |d: usize| unit_bound(big_n, beta, t, d);
    let need = |d: usize| ceil_count(c2 * unit(d));

    for top in (1..=target).rev() {
        let mut fill = if need(1) > n {
            round_up_even(need(1) - n).max(2)
        } else {
            0
        };
        let mut counts: Vec<usize> = (0..=top)
            .map(|d| {
                if d >= 2 {
                    round_up_even(need(d)).max(2)
                } else {
                    0
                }
            })
            .collect();
        let used = n + fill + counts.iter().sum::<usize>();
        if used > big_n {
            continue;
        }
        let mut pairs = (big_n - used) / 2;
        let density = (n + fill) as f64 / unit(1);
        let caps: Vec<usize> = (0..=top)
            .map(|d| (density * unit(d)).floor() as usize)
            .collect();
        while pairs > 0 {
            let mut placed = false;
            for d in 2..=top {
                if pairs > 0 && counts[d] + 2 <= caps[d] {
                    counts[d] += 2;
                    pairs -= 1;
                    placed = true;
                }
            }
            if !placed {
                break;
            }
        }
        fill += 2 * pairs;

        let mut gadgets = Vec::new();
        if fill > 0 {
            let entry = GadgetEntry {
                bucket: 1,
                kind: GadgetKind::Cycle,
                size: fill,
                degree: 2,
                count: 1,
            };
            gadgets.push((entry, cycle_graph(fill)));
        }
        for (d, &count) in counts.iter().enumerate().skip(2) {
            let degree = 1u32 << d;
            let (kind, graph) = if count == 2 {
                (GadgetKind::Star, star_graph(2, degree))
            } else {
                (
                    GadgetKind::RegularCycle,
                    regular_cycle_unchecked(count / 2, degree),
                )
            };
            let entry = GadgetEntry {
                bucket: d,
                kind,
                size: count,
                degree: u64::from(degree),
                count: 1,
            };
            gadgets.push((entry, graph));
        }
        return finish(
            g,
            GraphMode::Multigraph,
            beta,
            t,
            c2,
            c,
            target,
            top,
            Placement { gadgets, big_n },
        );
    }
    Err(Error::TooSmall(format!(
        "n = {n} leaves no room for the bucket gadgets within N = {big_n}"
    )))
}

/// Embeds a simple cubic graph into a simple PLB graph with `N = ⌈c n⌉`
/// vertices, `c = 1/(1 - 2 c2 K')`,
/// `K' = 1/(t+1) + 1/(β-1) + (t+1)/(β-2) + 1`.
///
/// Bucket `d >= 2` receives stars with `2^d` leaves, whose leaves populate
/// bucket 0. Spare vertices become extra stars within the density of bucket
/// 1, then extra leaves of the lowest-id star centres that have room, then
/// stars with at most three leaves. A single vertex that fits nowhere is
/// paired with a new vertex, giving `N + 1` vertices.
pub fn embed_simple(g: &Graph, beta: f64, t: f64, c2: f64) -> Result<EmbedResult> {
    check_cubic(g)?;
    check_common(beta, t, c2)?;
    if !(beta > 2.0) {
        return Err(Error::invalid(format!("beta must exceed 2, got {beta}")));
    }
    let x = 2.0 * c2 * bracket_k(GraphMode::Simple, beta, t);
    if x >= 1.0 {
        return Err(Error::BracketViolated {
            what: "2 c2 K'",
            value: x,
            limit: 1.0,
        });
    }
    let n = g.n();
    let c = 1.0 / (1.0 - x);
    let big_n = ceil_count(c * n as f64).max(n);
    let target = max_bucket_for(big_n, beta);
    let unit = |d: usize| unit_bound(big_n, beta, t, d);
    let need = |d: usize| ceil_count(c2 * unit(d));

    for top in (1..=target).rev() {
        let fill = if need(1) > n { (need(1) - n).max(3) } else { 0 };
        let mut stars: Vec<usize> = (0..=top)
            .map(|d| if d >= 2 { need(d) } else { 0 })
            .collect();
        if top >= 2 {
            let leaves = |s: &[usize]| s.iter().enumerate().map(|(d, &k)| k << d).sum::<usize>();
            while leaves(&stars) < need(0) {
                stars[2] += 1;
            }
        }
        let star_vertices = |s: &[usize]| {
            s.iter()
                .enumerate()
                .skip(2)
                .map(|(d, &k)| k * ((1 << d) + 1))
                .sum::<usize>()
        };
        let used = n + fill + star_vertices(&stars);
        if used > big_n {
            continue;
        }
        let mut left = big_n - used;
        let density = (n + fill) as f64 / unit(1);
        let caps: Vec<usize> = (0..=top)
            .map(|d| (density * unit(d)).floor() as usize)
            .collect();
        loop {
            let mut placed = false;
            for d in 2..=top {
                let size = (1 << d) + 1;
                if left >= size && stars[d] < caps[d] {
                    stars[d] += 1;
                    left -= size;
                    placed = true;
                }
            }
            if !placed {
                break;
            }
        }

        // (bucket, leaves) per star, lowest id first
        let mut star_leaves: Vec<(usize, usize)> = Vec::new();
        for (d, &k) in stars.iter().enumerate().skip(2) {
            star_leaves.extend(std::iter::repeat_n((d, 1usize << d), k));
        }
        let room: usize = star_leaves
            .iter()
            .map(|&(d, l)| (1 << (d + 1)) - 1 - l)
            .sum();
        let mut attach = left.min(room);
        if left - attach == 1 && attach > 0 {
            attach -= 1;
        }
        left -= attach;
        for (d, l) in star_leaves.iter_mut() {
            let extra = attach.min((1 << (*d + 1)) - 1 - *l);
            *l += extra;
            attach -= extra;
        }

        // small stars, 2 to 4 vertices, centre in bucket 0 or 1
        let mut small: Vec<usize> = Vec::new();
        while left >= 2 {
            let size = if left == 5 { 3 } else { left.min(4) };
            small.push(size);
            left -= size;
        }
        let mut final_n = big_n;
        if left == 1 {
            if let Some(s) = small.iter_mut().find(|s| **s <= 3) {
                *s += 1;
            } else if let Some(entry) = star_leaves
                .iter_mut()
                .find(|(d, l)| *l + 1 < (1 << (*d + 1)))
            {
                entry.1 += 1;
            } else {
                small.push(2);
                final_n += 1;
            }
        }

        let mut gadgets = Vec::new();
        if fill > 0 {
            let entry = GadgetEntry {
                bucket: 1,
                kind: GadgetKind::Cycle,
                size: fill,
                degree: 2,
                count: 1,
            };
            gadgets.push((entry, cycle_graph(fill)));
        }
        for (d, leaves) in star_leaves {
            let entry = GadgetEntry {
                bucket: d,
                kind: GadgetKind::Star,
                size: leaves + 1,
                degree: leaves as u64,
                count: 1,
            };
            gadgets.push((entry, star_graph(leaves + 1, 1)));
        }
        for size in small {
            let degree = (size - 1) as u64;
            let entry = GadgetEntry {
                bucket: crate::graph::bucket_of(degree).unwrap_or(0),
                kind: GadgetKind::Star,
                size,
                degree,
                count: 1,
            };
            gadgets.push((entry, star_graph(size, 1)));
        }
        return finish(
            g,
            GraphMode::Simple,
            beta,
            t,
            c2,
            c,
            target,
            top,
            Placement {
                gadgets,
                big_n: final_n,
            },
        );
    }
    Err(Error::TooSmall(format!(
        "n = {n} leaves no room for the bucket stars within N = {big_n}"
    )))
}

pub fn embed(g: &Graph, mode: GraphMode, beta: f64, t: f64, c2: f64) -> Result<EmbedResult> {
    match mode {
        GraphMode::Multigraph => embed_multigraph(g, beta, t, c2),
        GraphMode::Simple => embed_simple(g, beta, t, c2),
    }
}

/// Optimum of the whole embedded graph from the optimum of the input: the
/// gadgets are separate components, so optima add up.
pub fn reduction_opt(e: &EmbedResult, problem: Problem, opt_of_input: usize) -> Result<usize> {
    e.gadget_inventory
        .iter()
        .try_fold(opt_of_input, |acc, entry| {
            Ok(acc + entry.count * entry.opt(problem)?)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact;
    use crate::generators::gen_random_regular;
    use crate::graph::fixtures::*;

    fn input_is_component_union(e: &EmbedResult, input: &Graph) -> bool {
        let n = input.n();
        let g = &e.graph;
        (0..n).all(|v| {
            let mine: Vec<_> = g.neighbors(v).to_vec();
            mine == input.neighbors(v) && mine.iter().all(|&(u, _)| u < n)
        })
    }

    fn cases() -> Vec<Graph> {
        let mut gs = vec![complete(4), petersen()];
        for seed in 0..20u64 {
            let n = 4 + 2 * (seed as usize % 24);
            gs.push(gen_random_regular(n, 3, seed).unwrap());
        }
        gs
    }

    #[test]
    fn spec_growth_constants() {
        let e = embed_multigraph(&petersen(), 3.0, 0.0, 0.02).unwrap();
        assert!((e.params_used.c - 1.0638298).abs() < 1e-7);
        let e = embed_simple(&complete(4), 3.0, 0.0, 0.02).unwrap();
        assert!((e.params_used.c - 1.1627907).abs() < 1e-7);
        assert!(e.graph.is_simple());
        let e = embed_simple(&petersen(), 2.5, 0.0, 0.01).unwrap();
        assert!((e.params_used.c - 1.1029412).abs() < 1e-7);
    }

    #[test]
    fn bracket_errors() {
        assert!(matches!(
            embed_multigraph(&complete(4), 3.0, 0.0, 0.4),
            Err(Error::BracketViolated { .. })
        ));
        assert!(matches!(
            embed_simple(&complete(4), 3.0, 0.0, 0.2),
            Err(Error::BracketViolated { .. })
        ));
        assert!(matches!(
            embed_multigraph(&cycle(6), 3.0, 0.0, 0.02),
            Err(Error::NotCubic(_))
        ));
    }

    #[test]
    fn embeddings_are_valid() {
        for input in cases() {
            for mode in [GraphMode::Multigraph, GraphMode::Simple] {
                let (beta, c2) = match mode {
                    GraphMode::Multigraph => (3.0, 0.02),
                    GraphMode::Simple => (2.5, 0.01),
                };
                let e = embed(&input, mode, beta, 0.0, c2)
                    .unwrap_or_else(|err| panic!("{mode} n={}: {err}", input.n()));
                assert!(input_is_component_union(&e, &input));
                assert!(e.plb.pass());
                assert_eq!(e.plb.pass_l, Some(true));
                let limit = (e.params_used.c * input.n() as f64).ceil() as usize + 1;
                assert!(e.graph.n() <= limit, "{mode}: {} > {limit}", e.graph.n());
                if mode == GraphMode::Simple {
                    assert!(e.graph.is_simple());
                }
            }
        }
    }

    #[test]
    fn reduction_matches_oracle() {
        for input in cases().into_iter().take(8) {
            for mode in [GraphMode::Multigraph, GraphMode::Simple] {
                let e = embed(&input, mode, 3.0, 0.0, 0.02).unwrap();
                for (problem, budget) in
                    [(Problem::Mds, 30), (Problem::Mis, 40), (Problem::Mvc, 40)]
                {
                    if e.graph.n() > budget {
                        continue;
                    }
                    let opt_in = exact(&input, problem, 64).unwrap().size;
                    let whole = exact(&e.graph, problem, budget).unwrap().size;
                    assert_eq!(reduction_opt(&e, problem, opt_in).unwrap(), whole);
                    if problem != Problem::Mis || mode == GraphMode::Multigraph {
                        let hp = match problem {
                            Problem::Mds => HardProblem::Mds,
                            Problem::Mis => HardProblem::Mis,
                            _ => HardProblem::Mvc,
                        };
                        assert!(whole as f64 <= e.growth_c.get(hp) * opt_in as f64);
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let mut e = embed_multigraph(&complete(4), 3.0, 0.0, 0.02).unwrap();
        e.gadget_inventory = vec![
            GadgetEntry {
                bucket: 1,
                kind: GadgetKind::Cycle,
                size: 9,
                degree: 2,
                count: 1,
            },
            GadgetEntry {
                bucket: 2,
                kind: GadgetKind::RegularCycle,
                size: 8,
                degree: 4,
                count: 1,
            },
        ];
        assert_eq!(reduction_opt(&e, Problem::Mds, 1).unwrap(), 6);
        e.gadget_inventory = vec![GadgetEntry {
            bucket: 2,
            kind: GadgetKind::Star,
            size: 7,
            degree: 6,
            count: 1,
        }];
        assert_eq!(reduction_opt(&e, Problem::Mis, 4).unwrap(), 10);
        e.gadget_inventory.clear();
        assert_eq!(reduction_opt(&e, Problem::Mvc, 3).unwrap(), 3);
    }
}
