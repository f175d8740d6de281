//! Exact rational scalars: text format, float conversion, and
//! continued-fraction reconstruction.
//!
//! The text format is `a/b` with the denominator omitted when it is 1,
//! e.g. `1/6`, `-3`, `0`. All higher layers speak this format.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses the `a/b` text format.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational literal `{s}`"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats in the `a/b` text format.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of lossy conversions for huge operands
        let n = big_to_f64(r.numer());
        let d = big_to_f64(r.denom());
        n / d
    })
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(match n.sign() {
        Sign::Minus => f64::NEG_INFINITY,
        _ => f64::INFINITY,
    })
}

/// Reconstructs the rational with smallest denominator ≤ `max_den` close to
/// `x`, by walking the continued-fraction convergents. Returns `None` when
/// no convergent with denominator ≤ `max_den` lands within `tol` of `x`.
pub fn reconstruct(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // convergents p_k/q_k of the continued fraction of x
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    let mut frac = x - x.floor();
    let max_den_big = BigInt::from(max_den);
    for _ in 0..64 {
        let cand = Rat::new(p1.clone(), q1.clone());
        if (to_f64(&cand) - x).abs() <= tol {
            return Some(cand);
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let a = (1.0 / frac).floor();
        frac = 1.0 / frac - a;
        let a = BigInt::from(a as i64);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > max_den_big {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let cand = Rat::new(p1, q1);
    ((to_f64(&cand) - x).abs() <= tol).then_some(cand)
}

/// Relative gap |a - b| / max(1, |b|) between a float and an exact target.
pub fn rel_err(a: f64, b: &Rat) -> f64 {
    let bf = to_f64(b);
    (a - bf).abs() / bf.abs().max(1.0)
}

pub fn sum(rs: &[Rat]) -> Rat {
    rs.iter().fold(Rat::zero(), |acc, r| acc + r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-3", "1/6", "-22/7", "100000/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
        assert_eq!(fmt_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(fmt_rat(&parse_rat("-2/-4").unwrap()), "1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn reconstructs_small_denominators() {
        let x = 1.0 / 3.0;
        assert_eq!(reconstruct(x, 1_000_000, 1e-12).unwrap(), rat(1, 3));
        let x = 0.037_037_037_037_037_035;
        assert_eq!(reconstruct(x, 1_000_000, 1e-12).unwrap(), rat(1, 27));
        // sqrt(2) has no small-denominator representation within 1e-13
        assert!(reconstruct(std::f64::consts::SQRT_2, 10, 1e-13).is_none());
    }

    #[test]
    fn reconstructs_integers_and_negatives() {
        assert_eq!(reconstruct(4.0, 100, 1e-12).unwrap(), int(4));
        assert_eq!(reconstruct(-0.25, 100, 1e-12).unwrap(), rat(-1, 4));
        assert_eq!(reconstruct(0.0, 100, 1e-12).unwrap(), int(0));
    }
}
