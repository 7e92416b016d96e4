//! Exact rational helpers on top of [`num_rational::BigRational`].

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always normalized (lowest terms, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q`, normalized. Panics when `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn pow2(exp: u64) -> BigInt {
    BigInt::one() << exp
}

/// `4^exp` as an integer.
pub fn pow4(exp: u64) -> BigInt {
    pow2(2 * exp)
}

/// `2^exp` for a possibly negative exponent.
pub fn pow2_signed(exp: i64) -> Rational {
    if exp >= 0 {
        Rational::from_integer(pow2(exp as u64))
    } else {
        Rational::new(BigInt::one(), pow2(exp.unsigned_abs()))
    }
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Decimal rendering rounded half away from zero to `digits` fractional digits.
pub fn format_decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + half()).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let mut out = String::new();
    if x.is_negative() && !rounded.is_zero() {
        out.push('-');
    }
    write!(out, "{whole}").unwrap();
    if digits > 0 {
        let frac = frac.to_string();
        out.push('.');
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `p/q`, `p`, or a finite decimal such as `0.666666`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut numer: BigInt = digits.parse().map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rational::new(numer, denom));
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(p))
}

/// Closest fraction to `x` whose denominator does not exceed `max_denom`
/// (continued-fraction convergents plus the best semiconvergent).
/// On an exact tie the convergent is returned.
pub fn closest_with_bounded_denominator(x: &Rational, max_denom: &BigInt) -> Rational {
    assert!(max_denom >= &BigInt::one(), "denominator bound must be positive");
    if x.denom() <= max_denom {
        return x.clone();
    }
    // Convergents p0/q0 (previous) and p1/q1 (current).
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = num.div_floor(&den);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_denom {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let rem = &num - &a * &den;
        num = std::mem::replace(&mut den, rem);
    }
    let k = (max_denom - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&conv - x).abs() <= (&semi - x).abs() {
        conv
    } else {
        semi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("4/8").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(format_rational(&int(1)), "1");
        assert_eq!(format_rational(&ratio(2, 3)), "2/3");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&ratio(2, 3), 4), "0.6667");
        assert_eq!(format_decimal(&ratio(1, 2), 0), "1");
        assert_eq!(format_decimal(&ratio(-1, 8), 2), "-0.13");
        assert_eq!(format_decimal(&ratio(1, 100), 1), "0.0");
    }

    #[test]
    fn bounded_denominator_matches_brute_force() {
        // brute force over all p/q with q <= 16
        let xs = [ratio(6666660, 10000000), ratio(314159, 100000), ratio(-7, 1000), ratio(1, 3)];
        for x in xs {
            let bound = BigInt::from(16);
            let got = closest_with_bounded_denominator(&x, &bound);
            let mut best: Option<Rational> = None;
            for q in 1..=16i64 {
                let centre = (&x * int(q)).round().to_integer();
                for dp in -1..=1 {
                    let cand = Rational::new(&centre + BigInt::from(dp), BigInt::from(q));
                    let better = match &best {
                        None => true,
                        Some(b) => (&cand - &x).abs() < (b - &x).abs(),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
            assert_eq!((&got - &x).abs(), (best.unwrap() - &x).abs(), "x = {x}");
            assert!(got.denom() <= &bound);
        }
    }

    #[test]
    fn powers() {
        assert_eq!(pow4(2), BigInt::from(16));
        assert_eq!(pow2_signed(-3), ratio(1, 8));
        assert_eq!(pow2_signed(3), int(8));
    }
}
