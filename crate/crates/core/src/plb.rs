//! Fitting and checking the power-law bucket properties PLB-U, PLB-L and
//! PLB-N.
//!
//! Degree bucket `d` holds the vertices of degree in `[2^d, 2^{d+1})`. With
//! the shifted power-law mass
//! `unit(d) = n (t+1)^{β-1} Σ_{i=2^d}^{2^{d+1}-1} (i+t)^{-β}`
//! a graph is PLB-U with `c1` when every bucket holds at most `c1 unit(d)`
//! vertices, and PLB-L with `c2` when every bucket between those of the
//! minimum and maximum positive degree holds at least `c2 unit(d)`. PLB-N
//! with `c3` asks that each vertex of degree `k` has at most
//! `c3 max(log2 n, (t+1)^{β-2} k Σ_{i=k}^{n-1} i (i+t)^{-β})` neighbours of
//! degree at least `k`, counted with multiplicity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bucket_of, Graph};
use crate::report::{compensated_sum, sig12, sig12_opt, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlbParams {
    pub beta: f64,
    pub t: f64,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub c3: Option<f64>,
}

impl PlbParams {
    pub fn new(beta: f64, t: f64) -> Result<Self> {
        if !(beta > 1.0 && beta.is_finite()) {
            return Err(Error::invalid(format!("beta must exceed 1, got {beta}")));
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::invalid(format!("t must be non-negative, got {t}")));
        }
        Ok(Self {
            beta,
            t,
            ..Self::default()
        })
    }

    pub fn with_c1(mut self, c1: f64) -> Self {
        self.c1 = Some(c1);
        self
    }

    pub fn with_c2(mut self, c2: f64) -> Self {
        self.c2 = Some(c2);
        self
    }

    pub fn with_c3(mut self, c3: f64) -> Self {
        self.c3 = Some(c3);
        self
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.beta, self.t)?;
        for (name, c) in [("c1", self.c1), ("c3", self.c3)] {
            if let Some(c) = c {
                if !(c > 0.0) {
                    return Err(Error::invalid(format!("{name} must be positive, got {c}")));
                }
            }
        }
        if let Some(c2) = self.c2 {
            // zero is allowed: it makes PLB-L vacuous
            if !(c2 >= 0.0) {
                return Err(Error::invalid(format!("c2 must be non-negative, got {c2}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    U,
    L,
    N,
}

impl Property {
    pub const ALL: [Property; 3] = [Property::U, Property::L, Property::N];
}

/// `n (t+1)^{β-1} Σ_{i=2^d}^{2^{d+1}-1} (i+t)^{-β}`.
pub fn unit_bound(n: usize, beta: f64, t: f64, d: usize) -> f64 {
    let lo = 1u64 << d;
    let hi = (1u64 << (d + 1)) - 1;
    let sum = compensated_sum((lo..=hi).map(|i| (i as f64 + t).powf(-beta)));
    n as f64 * (t + 1.0).powf(beta - 1.0) * sum
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BucketRow {
    pub d: usize,
    pub count: usize,
    #[serde(serialize_with = "sig12")]
    pub unit_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlbReport {
    pub schema_version: u32,
    #[serde(serialize_with = "sig12")]
    pub beta: f64,
    #[serde(serialize_with = "sig12")]
    pub t: f64,
    pub n: usize,
    #[serde(serialize_with = "sig12")]
    pub c1_fit: f64,
    /// Bucket attaining `c1_fit`.
    pub c1_bucket: usize,
    #[serde(serialize_with = "sig12")]
    pub c2_fit: f64,
    /// Bucket attaining `c2_fit`.
    pub c2_bucket: usize,
    #[serde(serialize_with = "sig12")]
    pub c3_fit: f64,
    pub worst_vertex: usize,
    pub per_bucket: Vec<BucketRow>,
    #[serde(serialize_with = "sig12_opt")]
    pub c1: Option<f64>,
    #[serde(serialize_with = "sig12_opt")]
    pub c2: Option<f64>,
    #[serde(serialize_with = "sig12_opt")]
    pub c3: Option<f64>,
    pub pass_u: Option<bool>,
    pub pass_l: Option<bool>,
    pub pass_n: Option<bool>,
    /// Bucket or vertex witnessing each failed check.
    pub witness_u: Option<usize>,
    pub witness_l: Option<usize>,
    pub witness_n: Option<usize>,
}

impl PlbReport {
    /// True when every requested check passed.
    pub fn pass(&self) -> bool {
        [self.pass_u, self.pass_l, self.pass_n]
            .iter()
            .all(|p| p.unwrap_or(true))
    }
}

fn buckets_with_bounds(g: &Graph, beta: f64, t: f64) -> Result<Vec<BucketRow>> {
    let b = g.degree_buckets();
    if b.non_isolated() == 0 {
        return Err(Error::NoBucket);
    }
    Ok(b.counts
        .iter()
        .enumerate()
        .map(|(d, &count)| BucketRow {
            d,
            count,
            unit_bound: unit_bound(g.n(), beta, t, d),
        })
        .collect())
}

fn fit_u(rows: &[BucketRow]) -> (f64, usize) {
    rows.iter()
        .filter(|r| r.count > 0)
        .map(|r| (r.count as f64 / r.unit_bound, r.d))
        .fold((0.0, 0), |best, x| if x.0 > best.0 { x } else { best })
}

fn fit_l(g: &Graph, rows: &[BucketRow]) -> (f64, usize) {
    let lo = bucket_of(g.min_positive_degree().expect("non-isolated vertex")).unwrap();
    let hi = bucket_of(g.max_degree()).unwrap();
    rows[lo..=hi]
        .iter()
        .map(|r| (r.count as f64 / r.unit_bound, r.d))
        .fold(
            (f64::INFINITY, lo),
            |best, x| if x.0 < best.0 { x } else { best },
        )
}

/// Smallest `c1` for which `g` is PLB-U.
pub fn fit_plb_u(g: &Graph, beta: f64, t: f64) -> Result<f64> {
    PlbParams::new(beta, t)?;
    Ok(fit_u(&buckets_with_bounds(g, beta, t)?).0)
}

/// Largest `c2` for which `g` is PLB-L; zero when a bucket in range is empty.
pub fn fit_plb_l(g: &Graph, beta: f64, t: f64) -> Result<f64> {
    PlbParams::new(beta, t)?;
    let rows = buckets_with_bounds(g, beta, t)?;
    Ok(fit_l(g, &rows).0)
}

/// Smallest `c3` for which `g` is PLB-N, with the vertex attaining it.
pub fn fit_plb_n(g: &Graph, beta: f64, t: f64) -> Result<(f64, usize)> {
    PlbParams::new(beta, t)?;
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid("PLB-N needs at least two vertices"));
    }
    // suffix[k] = Σ_{i=k}^{n-1} i (i+t)^{-β}, accumulated from the small end
    let mut suffix = vec![0.0f64; n + 1];
    let (mut acc, mut comp) = (0.0f64, 0.0f64);
    for i in (1..n).rev() {
        let x = i as f64 * (i as f64 + t).powf(-beta);
        let s = acc + x;
        if acc.abs() >= x.abs() {
            comp += (acc - s) + x;
        } else {
            comp += (x - s) + acc;
        }
        acc = s;
        suffix[i] = acc + comp;
    }
    let log_n = (n as f64).log2();
    let scale = (t + 1.0).powf(beta - 2.0);

    let degrees = g.degrees();
    let mut best = (0.0f64, 0usize);
    for v in 0..n {
        let k = degrees[v];
        if k == 0 {
            continue;
        }
        let a: u64 = g
            .neighbors(v)
            .iter()
            .filter(|&&(u, _)| degrees[u] >= k)
            .map(|&(_, m)| u64::from(m))
            .sum();
        let tail = suffix.get(k as usize).copied().unwrap_or(0.0);
        let b = log_n.max(scale * k as f64 * tail);
        let ratio = a as f64 / b;
        if ratio > best.0 {
            best = (ratio, v);
        }
    }
    Ok(best)
}

/// Fits all three constants without checking any.
pub fn fit_plb(g: &Graph, beta: f64, t: f64) -> Result<PlbReport> {
    check_plb(g, &PlbParams::new(beta, t)?, &[])
}

/// Fits all constants and checks the requested properties against the
/// constants in `p`. Comparisons are exact on the computed doubles.
pub fn check_plb(g: &Graph, p: &PlbParams, checks: &[Property]) -> Result<PlbReport> {
    p.validate()?;
    let rows = buckets_with_bounds(g, p.beta, p.t)?;
    let (c1_fit, c1_bucket) = fit_u(&rows);
    let (c2_fit, c2_bucket) = fit_l(g, &rows);
    let (c3_fit, worst_vertex) = fit_plb_n(g, p.beta, p.t)?;

    let mut report = PlbReport {
        schema_version: SCHEMA_VERSION,
        beta: p.beta,
        t: p.t,
        n: g.n(),
        c1_fit,
        c1_bucket,
        c2_fit,
        c2_bucket,
        c3_fit,
        worst_vertex,
        per_bucket: rows,
        c1: p.c1,
        c2: p.c2,
        c3: p.c3,
        pass_u: None,
        pass_l: None,
        pass_n: None,
        witness_u: None,
        witness_l: None,
        witness_n: None,
    };
    for &prop in checks {
        match prop {
            Property::U => {
                let c1 = p.c1.ok_or(Error::MissingConstant("c1"))?;
                let ok = c1_fit <= c1;
                report.pass_u = Some(ok);
                report.witness_u = (!ok).then_some(c1_bucket);
            }
            Property::L => {
                let c2 = p.c2.ok_or(Error::MissingConstant("c2"))?;
                let ok = c2_fit >= c2;
                report.pass_l = Some(ok);
                report.witness_l = (!ok).then_some(c2_bucket);
            }
            Property::N => {
                let c3 = p.c3.ok_or(Error::MissingConstant("c3"))?;
                let ok = c3_fit <= c3;
                report.pass_n = Some(ok);
                report.witness_n = (!ok).then_some(worst_vertex);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn cycle_six() {
        let g = cycle(6);
        assert!(close(unit_bound(6, 3.0, 0.0, 1), 0.972222222222, 1e-10));
        let c1 = fit_plb_u(&g, 3.0, 0.0).unwrap();
        assert!(close(c1, 6.17142857143, 1e-10));
        assert_eq!(fit_plb_l(&g, 3.0, 0.0).unwrap(), c1);
    }

    #[test]
    fn star_seven() {
        let g = star(7);
        assert!(close(
            fit_plb_u(&g, 3.0, 0.0).unwrap(),
            4.010255792916,
            1e-11
        ));
        assert_eq!(fit_plb_l(&g, 3.0, 0.0).unwrap(), 0.0);
        let (c3, v) = fit_plb_n(&g, 3.0, 0.0).unwrap();
        assert!(close(c3, 1.0 / 3.0, 1e-12));
        assert_ne!(v, 0);
    }

    #[test]
    fn single_edge() {
        let g = path(2);
        assert_eq!(fit_plb_u(&g, 3.0, 0.0).unwrap(), 1.0);
        assert_eq!(fit_plb_l(&g, 3.0, 0.0).unwrap(), 1.0);
        assert_eq!(fit_plb_n(&g, 3.0, 0.0).unwrap().0, 1.0);
    }

    #[test]
    fn triangle_neighbourhoods() {
        let (c3, _) = fit_plb_n(&complete(3), 3.0, 0.0).unwrap();
        assert!(close(c3, 2.0 / 3f64.log2(), 1e-12));
        assert!(close(c3, 1.26186, 1e-5));
    }

    #[test]
    fn all_isolated_rejected() {
        assert!(matches!(
            fit_plb_u(&Graph::empty(3), 3.0, 0.0),
            Err(Error::NoBucket)
        ));
        assert!(fit_plb_n(&Graph::empty(1), 3.0, 0.0).is_err());
    }

    #[test]
    fn check_examples() {
        let g = cycle(6);
        let p = PlbParams::new(3.0, 0.0).unwrap();
        let r = check_plb(&g, &p.with_c1(7.0), &[Property::U]).unwrap();
        assert_eq!(r.pass_u, Some(true));
        let r = check_plb(&g, &p.with_c1(6.0), &[Property::U]).unwrap();
        assert_eq!(r.pass_u, Some(false));
        assert_eq!(r.witness_u, Some(1));
        let r = check_plb(&star(7), &p.with_c2(0.0), &[Property::L]).unwrap();
        assert_eq!(r.pass_l, Some(true));
        assert!(matches!(
            check_plb(&g, &p, &[Property::N]),
            Err(Error::MissingConstant("c3"))
        ));
    }

    #[test]
    fn fitted_constants_are_tight() {
        for g in [cycle(6), star(7), petersen(), complete(5)] {
            let p = PlbParams::new(2.5, 1.0).unwrap();
            let r = fit_plb(&g, 2.5, 1.0).unwrap();
            let at = p.with_c1(r.c1_fit).with_c2(r.c2_fit).with_c3(r.c3_fit);
            assert!(check_plb(&g, &at, &Property::ALL).unwrap().pass());
            let below = p.with_c1(r.c1_fit * (1.0 - 1e-9));
            assert_eq!(
                check_plb(&g, &below, &[Property::U]).unwrap().pass_u,
                Some(false)
            );
        }
    }

    #[test]
    fn unit_bound_monotone_in_t() {
        // holds from bucket 2 on; bucket 1 rises then falls
        let at = |d, t| unit_bound(100, 2.5, t, d);
        assert!(at(1, 1.0) > at(1, 5.0));
        for d in 2..=10 {
            let vals: Vec<f64> = [0.0, 1.0, 2.0, 5.0]
                .iter()
                .map(|&t| unit_bound(100, 2.5, t, d))
                .collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "d={d}: {vals:?}");
        }
    }

    #[test]
    fn unit_bound_matches_rationals() {
        // integer beta and t make every term rational
        for (beta, t) in [(3u32, 0u32), (2, 1), (4, 3)] {
            for d in 0..7 {
                let mut sum = BigRational::zero();
                for i in (1u64 << d)..(1u64 << (d + 1)) {
                    let den = BigInt::from(i + u64::from(t)).pow(beta);
                    sum += BigRational::new(1.into(), den);
                }
                let n = 100u32;
                let scale = BigInt::from(n) * BigInt::from(t + 1).pow(beta - 1);
                let exact = (sum * BigRational::from_integer(scale)).to_f64().unwrap();
                let got = unit_bound(n as usize, beta as f64, t as f64, d);
                assert!(close(got, exact, 1e-12), "beta={beta} t={t} d={d}");
            }
        }
    }

    #[test]
    fn bounded_degree_neighbourhoods() {
        for g in [
            cycle(64),
            petersen(),
            crate::generators::gen_random_regular(200, 3, 1).unwrap(),
        ] {
            let (c3, _) = fit_plb_n(&g, 2.5, 0.0).unwrap();
            assert!(c3 <= g.max_degree() as f64 / (g.n() as f64).log2());
        }
    }

    #[test]
    fn upper_dominates_lower() {
        for seed in 0..5 {
            let ws = crate::weights::power_law_weights(2000, 2.6, 1.0).unwrap();
            let g = crate::generators::gen_chung_lu(&ws, seed);
            let r = fit_plb(&g, 2.6, 0.0).unwrap();
            assert!(r.c1_fit >= r.c2_fit);
        }
    }

    #[test]
    fn json_keys() {
        let r = fit_plb(&cycle(6), 3.0, 0.0).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "beta",
            "t",
            "c1_fit",
            "c2_fit",
            "c3_fit",
            "per_bucket",
            "worst_vertex",
            "pass_u",
            "pass_l",
            "pass_n",
            "schema_version",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["c1_fit"], serde_json::json!(6.17142857143));
    }

    proptest::proptest! {
        #[test]
        fn fits_are_consistent(
            n in 2usize..30,
            raw in proptest::collection::vec((0usize..30, 0usize..30, 1u32..3), 1..60),
            beta in 1.5f64..4.0,
            t in 0.0f64..4.0,
        ) {
            let edges: Vec<_> = raw.into_iter()
                .map(|(u, v, m)| (u % n, v % n, m))
                .filter(|&(u, v, _)| u != v)
                .collect();
            proptest::prop_assume!(!edges.is_empty());
            let g = Graph::from_edges(n, edges).unwrap();
            let r = fit_plb(&g, beta, t).unwrap();
            proptest::prop_assert!(r.c1_fit > 0.0 && r.c1_fit.is_finite());
            proptest::prop_assert!(r.c2_fit <= r.c1_fit);
            proptest::prop_assert!(r.c3_fit >= 0.0);
            let bucketed: usize = r.per_bucket.iter().map(|b| b.count).sum();
            proptest::prop_assert_eq!(bucketed + g.degree_buckets().isolated, n);
        }
    }
}
