//! Exact rational evaluation for the bound formulas whose exponents turn out
//! to be integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{GraphMode, HardProblem};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p/q`, an integer, or a decimal with optional exponent (`0.05`, `1e-3`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exp - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let mut r = Rational::from_integer(all) * pow(&ten, scale as i64);
    if neg {
        r = -r;
    }
    Some(r)
}

pub fn pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// The value of `r` when it is an integer.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `a_{β,t}`; exact when β is an integer.
pub fn const_a(beta: &Rational, t: &Rational) -> Option<Rational> {
    let bi = as_integer(beta)?;
    if bi <= 2 || t.is_negative() {
        return None;
    }
    let ratio = (t + int(2)) / (t + int(1));
    let tail = int(1) - pow(&ratio, 1 - bi);
    Some(int(1) + (beta - int(1)) / (beta - int(2)) / tail)
}

/// `1/(β-2)` when it is a positive integer.
fn inverse_gap(beta: &Rational) -> Option<i64> {
    if *beta <= int(2) {
        return None;
    }
    as_integer(&(beta - int(2)).recip()).filter(|&k| k >= 1)
}

/// `b_{c1,β,t}`; exact when `β = 2 + 1/k` for a positive integer `k`.
pub fn const_b(c1: &Rational, beta: &Rational, t: &Rational) -> Option<Rational> {
    let k = inverse_gap(beta)?;
    let base = c1 * (beta - int(1)) / (beta - int(2));
    // 2^{βk} = 2^{2k+1} and (t+1)^{(β-1)k} = (t+1)^{k+1}
    Some(pow(&base, k) * pow(&int(2), 2 * k + 1) * pow(&(t + int(1)), k + 1))
}

/// `1/(2ab+1)`.
pub fn mds_lb_fraction(c1: &Rational, beta: &Rational, t: &Rational) -> Option<Rational> {
    let a = const_a(beta, t)?;
    let b = const_b(c1, beta, t)?;
    Some((int(2) * a * b + int(1)).recip())
}

/// Linear potential volume bound `c a arg + C`.
pub fn pvl_linear(
    c: &Rational,
    big_c: &Rational,
    c1: &Rational,
    beta: &Rational,
    t: &Rational,
    n_over_m: &Rational,
) -> Option<Rational> {
    let a = const_a(beta, t)?;
    let k = inverse_gap(beta)?;
    let base = c1 * (beta - int(1)) / (beta - int(2)) * n_over_m;
    let arg = pow(&base, k) * pow(&int(2), k + 1) * pow(&(t + int(1)), k + 1);
    Some(c * a * arg + big_c)
}

pub fn mis_plbl_lower(
    c2: &Rational,
    beta: &Rational,
    t: &Rational,
    d_min: u64,
    connected: bool,
) -> Option<Rational> {
    if connected && d_min == 1 {
        return Some(c2 / (t + int(1)));
    }
    let bi = as_integer(beta)?;
    let d = int(d_min as i64);
    Some(c2 * pow(&(t + int(1)), bi - 1) / (pow(&(t + &d), bi) * (d + int(1))))
}

/// `(a^{-c}, c/(1-2^{-c}) Σ_{i=a}^{b-1} i^{-c-1})` for integer `c`.
pub fn lemma22(a: u64, b: u64, c: &Rational) -> Option<(Rational, Rational)> {
    let ci = as_integer(c).filter(|&c| c >= 1)?;
    let lhs = pow(&int(a as i64), -ci);
    let sum = (a..b).fold(Rational::zero(), |acc, i| {
        acc + pow(&int(i as i64), -ci - 1)
    });
    let rhs = c / (int(1) - pow(&int(2), -ci)) * sum;
    Some((lhs, rhs))
}

/// Hardness factor for the problems whose expression is rational in its
/// inputs (the vertex cover factors involve √5 and have no exact form).
pub fn hardness_factor(
    problem: HardProblem,
    mode: GraphMode,
    c1: Option<&Rational>,
    c2: &Rational,
    beta: &Rational,
    t: &Rational,
    gamma: &Rational,
) -> Result<Option<Rational>> {
    let one = int(1);
    let k = match mode {
        GraphMode::Multigraph => (t + int(1)).recip() + (beta - int(1)).recip(),
        GraphMode::Simple => {
            (t + int(1)).recip() + (beta - int(1)).recip() + (t + int(1)) / (beta - int(2)) + int(1)
        }
    };
    let x = int(2) * c2 * &k;
    if x >= one {
        return Err(Error::BracketViolated {
            what: "2 c2 K",
            value: to_f64(&x),
            limit: 1.0,
        });
    }
    let g = pow(&int(139), -1) - gamma;
    let g140 = int(140) / int(139) - gamma;
    let value = match (problem, mode) {
        (HardProblem::Mds, GraphMode::Multigraph) => {
            &one + (int(130) * (int(4) * &x / (&one - &x) + int(15))).recip()
        }
        (HardProblem::Mis, GraphMode::Multigraph) => {
            &one + &g * (&one - &x) / (int(2) * &x * &g140 + &one - &x)
        }
        (HardProblem::Mds, GraphMode::Simple) => {
            let lead = int(4) * (&one - c2 / (t + int(1))) / (&one - &x);
            &one + (int(130) * (lead + int(1))).recip()
        }
        (HardProblem::Mis, GraphMode::Simple) => {
            let c1 = c1.ok_or(Error::MissingConstant("c1"))?;
            let y = (t + int(1)) * (&one - &x);
            &one + &g * &y / (int(4) * c1 * &g140 + &y)
        }
        (HardProblem::Mvc, _) => return Ok(None),
    };
    Ok(Some(value))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(q("0.05"), Rational::new(1.into(), 20.into()));
        assert_eq!(q("-1.5"), Rational::new((-3).into(), 2.into()));
        assert_eq!(q("3"), int(3));
        assert_eq!(q("2/6"), Rational::new(1.into(), 3.into()));
        assert_eq!(q("1e-3"), Rational::new(1.into(), 1000.into()));
        assert_eq!(q(".5"), Rational::new(1.into(), 2.into()));
        assert!(parse_rational("abc").is_none());
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("").is_none());
    }

    #[test]
    fn constants() {
        assert_eq!(display(&const_a(&q("3"), &q("0")).unwrap()), "11/3");
        assert_eq!(display(&const_a(&q("3"), &q("1")).unwrap()), "23/5");
        assert!(const_a(&q("2.5"), &q("0")).is_none());
        assert_eq!(display(&const_b(&q("1"), &q("3"), &q("0")).unwrap()), "16");
        assert_eq!(display(&const_b(&q("2"), &q("3"), &q("0")).unwrap()), "32");
        assert_eq!(
            display(&const_b(&q("1"), &q("2.5"), &q("0")).unwrap()),
            "288"
        );
        assert_eq!(
            display(&mds_lb_fraction(&q("1"), &q("3"), &q("0")).unwrap()),
            "3/355"
        );
    }

    #[test]
    fn lemma_fixtures() {
        let (l, r) = lemma22(2, 4, &q("2")).unwrap();
        assert_eq!(display(&l), "1/4");
        assert_eq!(r, q("8/3") * (q("1/8") + q("1/27")));
        assert_eq!(lemma22(1, 2, &q("1")).unwrap(), (int(1), int(2)));
    }

    #[test]
    fn mds_multigraph_fixture() {
        let f = hardness_factor(
            HardProblem::Mds,
            GraphMode::Multigraph,
            None,
            &q("0.05"),
            &q("3"),
            &q("0"),
            &q("0"),
        )
        .unwrap()
        .unwrap();
        assert!((to_f64(&f) - 1.00048977).abs() < 5e-9);
    }
}
