//! Shared pieces of the JSON reports.

use serde::Serializer;

/// Version stamp carried by every serialized report.
pub const SCHEMA_VERSION: u32 = 1;

/// `x` rounded to 12 significant decimal digits.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Serializes a float at 12 significant digits; non-finite values become `null`.
pub fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let r = round_sig12(*x);
    if r.is_finite() {
        s.serialize_f64(r)
    } else {
        s.serialize_none()
    }
}

pub fn sig12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig12(v, s),
        None => s.serialize_none(),
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig12(6.171428571428571), 6.17142857143);
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(round_sig12(-1.0 / 3.0), -0.333333333333);
    }

    #[test]
    fn compensation_helps() {
        let terms = std::iter::once(1e16)
            .chain(std::iter::repeat_n(1.0, 1000))
            .chain([-1e16]);
        assert_eq!(compensated_sum(terms), 1000.0);
    }
}
