//! Expected-degree weight sequences with a power-law tail.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// Positive weights sorted non-increasing, with cached total.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    w: Vec<f64>,
    total: f64,
    /// Nominal tail exponent the sequence was built for.
    pub beta_prime: f64,
    /// Upper end of the range where the lower tail inequality is expected.
    pub w_bar: Option<f64>,
}

impl WeightSequence {
    /// Wraps arbitrary positive weights; they are sorted non-increasing.
    pub fn new(mut w: Vec<f64>, beta_prime: f64) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::invalid("weight sequence is empty"));
        }
        if w.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::invalid("weights must be positive and finite"));
        }
        w.sort_unstable_by(|a, b| b.total_cmp(a));
        let total = w.iter().sum();
        Ok(Self {
            w,
            total,
            beta_prime,
            w_bar: None,
        })
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn w_min(&self) -> f64 {
        *self.w.last().expect("non-empty")
    }

    pub fn w_max(&self) -> f64 {
        self.w[0]
    }

    /// Number of weights `>= w`.
    pub fn count_at_least(&self, w: f64) -> usize {
        self.w.partition_point(|&x| x >= w)
    }

    /// One decimal per line, in sequence order.
    pub fn write_to<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for x in &self.w {
            writeln!(out, "{x}")?;
        }
        Ok(())
    }
}

/// Deterministic quantile weights `w_i = w_min (n/i)^{1/(β'-1)}`, `i = 1..=n`.
pub fn power_law_weights(n: usize, beta_prime: f64, w_min: f64) -> Result<WeightSequence> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(beta_prime > 2.0) {
        return Err(Error::invalid(format!(
            "beta' must exceed 2, got {beta_prime}"
        )));
    }
    if !(w_min >= 1.0) {
        return Err(Error::invalid(format!(
            "w_min must be at least 1, got {w_min}"
        )));
    }
    let exponent = 1.0 / (beta_prime - 1.0);
    let nf = n as f64;
    let w = (1..=n)
        .map(|i| w_min * (nf / i as f64).powf(exponent))
        .collect();
    let mut ws = WeightSequence::new(w, beta_prime)?;
    ws.w_bar = Some(nf.powf(exponent));
    Ok(ws)
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerLawFit {
    /// Largest constant for which the lower tail inequality holds on `[w_min, w_bar]`.
    pub c1_fit: f64,
    /// Smallest constant for which the upper tail inequality holds on `[w_min, ∞)`.
    pub c2_fit: f64,
    pub pass: bool,
}

/// Fits the two constants of the tail sandwich
/// `c1 n / w^{β'-1+η} <= |{v : w_v >= w}| <= c2 n / w^{β'-1-η}`.
///
/// The count is a left-continuous step function, so the lower constant is
/// evaluated both at each distinct weight and at the right limit just above it.
pub fn verify_general_power_law(ws: &WeightSequence, eta: f64, w_bar: f64) -> Result<PowerLawFit> {
    if ws.is_empty() {
        return Err(Error::invalid("weight sequence is empty"));
    }
    if !(eta > 0.0 && eta < ws.beta_prime - 2.0) {
        return Err(Error::invalid(format!(
            "eta must lie in (0, beta' - 2), got {eta}"
        )));
    }
    let n = ws.len() as f64;
    let lower_exp = ws.beta_prime - 1.0 + eta;
    let upper_exp = ws.beta_prime - 1.0 - eta;

    // distinct values in increasing order
    let mut values: Vec<f64> = ws.weights().iter().rev().copied().collect();
    values.dedup();

    let mut c1 = f64::INFINITY;
    let mut c2: f64 = 0.0;
    for (k, &v) in values.iter().enumerate() {
        let count = ws.count_at_least(v) as f64;
        c2 = c2.max(count * v.powf(upper_exp) / n);
        if v <= w_bar {
            c1 = c1.min(count * v.powf(lower_exp) / n);
            if v < w_bar {
                let next_count = values
                    .get(k + 1)
                    .map_or(0.0, |&next| ws.count_at_least(next) as f64);
                c1 = c1.min(next_count * v.powf(lower_exp) / n);
            }
        }
    }
    if !c1.is_finite() {
        // w_bar lies below every weight: the lower inequality is vacuous
        c1 = f64::INFINITY;
    }
    let pass = c1 > 0.0 && c2 > 0.0 && c2.is_finite() && c1.is_finite();
    Ok(PowerLawFit {
        c1_fit: c1,
        c2_fit: c2,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quantile_sequence() {
        let ws = power_law_weights(4, 3.0, 1.0).unwrap();
        let expected = [2.0, 2f64.sqrt(), (4.0f64 / 3.0).sqrt(), 1.0];
        for (a, b) in ws.weights().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(power_law_weights(1, 3.0, 2.5).unwrap().weights(), &[2.5]);
    }

    #[test]
    fn quantile_count() {
        let ws = power_law_weights(10_000, 2.5, 1.0).unwrap();
        assert_eq!(ws.count_at_least(10.0), 316);
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(power_law_weights(10, 2.0, 1.0).is_err());
        assert!(power_law_weights(10, 3.0, 0.5).is_err());
        assert!(power_law_weights(0, 3.0, 1.0).is_err());
    }

    #[test]
    fn quantile_sequence_passes() {
        let n = 10_000;
        let ws = power_law_weights(n, 3.0, 1.0).unwrap();
        let fit = verify_general_power_law(&ws, 0.5, (n as f64).powf(1.0 / 3.0)).unwrap();
        assert!(fit.pass, "{fit:?}");
        assert!(fit.c1_fit <= fit.c2_fit);
    }

    #[test]
    fn constant_sequence_fails_lower() {
        let ws = WeightSequence::new(vec![5.0; 100], 3.0).unwrap();
        let fit = verify_general_power_law(&ws, 0.5, 10.0).unwrap();
        assert!(!fit.pass);
        assert_eq!(fit.c1_fit, 0.0);
    }

    #[test]
    fn single_point() {
        let ws = power_law_weights(1, 3.0, 1.0).unwrap();
        let fit = verify_general_power_law(&ws, 0.5, ws.w_bar.unwrap()).unwrap();
        assert_eq!(fit.c1_fit, 1.0);
        assert_eq!(fit.c2_fit, 1.0);
        assert!(fit.pass);
    }

    #[test]
    fn export_lines() {
        let ws = power_law_weights(3, 3.0, 1.0).unwrap();
        let mut buf = Vec::new();
        ws.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let parsed: Vec<f64> = text.lines().map(|l| l.parse().unwrap()).collect();
        assert_eq!(parsed, ws.weights());
    }

    proptest::proptest! {
        #[test]
        fn closed_form_count_matches(n in 1usize..3000, beta in 2.05f64..4.0, w in 1.0f64..60.0) {
            let ws = power_law_weights(n, beta, 1.0).unwrap();
            let brute = ws.weights().iter().filter(|&&x| x >= w).count();
            proptest::prop_assert_eq!(ws.count_at_least(w), brute);
            // sorted, ends exactly at w_min
            proptest::prop_assert!(ws.weights().windows(2).all(|p| p[0] >= p[1]));
            proptest::prop_assert_eq!(ws.w_min(), 1.0);
            let total: f64 = ws.weights().iter().sum();
            proptest::prop_assert!((total - ws.total()).abs() <= 1e-9 * total);
        }
    }
}
