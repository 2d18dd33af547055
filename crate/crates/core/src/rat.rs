//! Exact rational arithmetic helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar type used for all measures, volumes and density values.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`, panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

/// Parse a rational from `p/q`, an integer literal, or a decimal literal.
/// Decimal literals convert exactly (e.g. `0.25` becomes `1/4`).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = frac.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(num, den);
        let int_part = Rat::from_integer(int_part);
        return Some(if neg { int_part - frac_part } else { int_part + frac_part });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

/// Floor of a rational as a `BigInt`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// `10^-k` as a rational.
pub fn pow10_inv(k: u32) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(10u32).pow(k))
}
