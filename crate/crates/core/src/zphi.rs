//! Exact arithmetic in ℚ(φ) where φ = (1+√5)/2 satisfies φ² = φ + 1.
//!
//! Elements are stored as `a + b·φ` with rational coefficients. Signs and
//! comparisons are decided exactly by integer case analysis on
//! `2a + b + b√5`, never by floating point. Rational enclosures of values
//! are produced on demand at a configurable width via integer square roots.

use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rat::{rat, ratio, Rat};

/// `a + b·φ` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QPhi {
    pub a: Rat,
    pub b: Rat,
}

impl QPhi {
    pub fn new(a: Rat, b: Rat) -> QPhi {
        QPhi { a, b }
    }

    pub fn from_int(a: i64, b: i64) -> QPhi {
        QPhi::new(rat(a), rat(b))
    }

    pub fn from_rat(a: Rat) -> QPhi {
        QPhi::new(a, rat(0))
    }

    pub fn phi() -> QPhi {
        QPhi::from_int(0, 1)
    }

    pub fn zero() -> QPhi {
        QPhi::from_int(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate: φ ↦ φ' = 1 − φ, so `a + bφ ↦ (a+b) − bφ`.
    pub fn star(&self) -> QPhi {
        QPhi::new(&self.a + &self.b, -self.b.clone())
    }

    /// Exact sign of `a + bφ = (2a + b + b√5)/2`.
    pub fn sign(&self) -> Ordering {
        let p = &self.a + &self.a + &self.b; // 2a + b
        let q = self.b.clone();
        // sign of p + q√5 by case analysis with p² vs 5q²
        let sp = rat_sign(&p);
        let sq = rat_sign(&q);
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            _ => {
                // opposite signs: compare p² with 5q²; sign follows the term
                // with larger square (√5 > 1 tips ties toward q)
                let p2 = &p * &p;
                let q2 = &q * &q * rat(5);
                match p2.cmp(&q2) {
                    Ordering::Greater => sp,
                    _ => sq,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Rational enclosure `[lo, hi]` with `hi − lo ≤ width`.
    pub fn enclosure(&self, width: &Rat) -> (Rat, Rat) {
        // a + bφ = a + b/2 + (b/2)√5; enclose √5 to width/(|b|+1)
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let half_b = &self.b / rat(2);
        let base = &self.a + &half_b;
        let target = width / (half_b.abs() + rat(1));
        let (s_lo, s_hi) = sqrt5_enclosure(&target);
        let (t1, t2) = (&base + &half_b * &s_lo, &base + &half_b * &s_hi);
        if t1 <= t2 {
            (t1, t2)
        } else {
            (t2, t1)
        }
    }

    /// Largest integer ≤ `a + bφ`, computed exactly.
    pub fn floor(&self) -> i64 {
        // start from a midpoint estimate and correct by exact comparisons
        use num_traits::ToPrimitive;
        let (lo, hi) = self.enclosure(&ratio(1, 2));
        let mut k = crate::rat::floor_int(&lo).to_i64().expect("desk-scale value");
        let _ = hi;
        while &(self.clone() - QPhi::from_rat(rat(k + 1))).sign() != &Ordering::Less {
            k += 1;
        }
        while (self.clone() - QPhi::from_rat(rat(k))).sign() == Ordering::Less {
            k -= 1;
        }
        k
    }
}

impl PartialOrd for QPhi {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QPhi {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign()
    }
}

impl Add for QPhi {
    type Output = QPhi;
    fn add(self, rhs: QPhi) -> QPhi {
        QPhi::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for QPhi {
    type Output = QPhi;
    fn sub(self, rhs: QPhi) -> QPhi {
        QPhi::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for QPhi {
    type Output = QPhi;
    fn neg(self) -> QPhi {
        QPhi::new(-self.a, -self.b)
    }
}

impl Mul for QPhi {
    type Output = QPhi;
    fn mul(self, rhs: QPhi) -> QPhi {
        // (a + bφ)(c + dφ) = ac + bd + (ad + bc + bd)φ
        let bd = &self.b * &rhs.b;
        QPhi::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.d_slot() + &self.b * &rhs.a + bd,
        )
    }
}

impl QPhi {
    fn d_slot(&self) -> Rat {
        self.b.clone()
    }
}

impl Add for &QPhi {
    type Output = QPhi;
    fn add(self, rhs: &QPhi) -> QPhi {
        self.clone() + rhs.clone()
    }
}

impl Sub for &QPhi {
    type Output = QPhi;
    fn sub(self, rhs: &QPhi) -> QPhi {
        self.clone() - rhs.clone()
    }
}

impl Neg for &QPhi {
    type Output = QPhi;
    fn neg(self) -> QPhi {
        -self.clone()
    }
}

impl Mul for &QPhi {
    type Output = QPhi;
    fn mul(self, rhs: &QPhi) -> QPhi {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for QPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*phi", self.b)
        } else if self.b.is_negative() {
            write!(f, "{}{}*phi", self.a, self.b)
        } else {
            write!(f, "{}+{}*phi", self.a, self.b)
        }
    }
}

fn rat_sign(r: &Rat) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Rational enclosure `[lo, hi]` of √5 with `hi − lo ≤ width`.
pub fn sqrt5_enclosure(width: &Rat) -> (Rat, Rat) {
    assert!(width.is_positive());
    // pick denominator D with 1/D ≤ width, then lo = floor(√(5D²))/D
    let inv = (rat(1) / width).ceil().to_integer();
    let d: num_bigint::BigInt = inv.max(num_bigint::BigInt::from(1));
    let n: num_bigint::BigInt = num_bigint::BigInt::from(5) * &d * &d;
    let s = n.sqrt(); // floor integer square root
    let lo = Rat::new(s.clone(), d.clone());
    let hi = Rat::new(s + 1, d);
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let phi = QPhi::phi();
        assert_eq!(phi.clone() * phi.clone(), QPhi::from_int(1, 1));
    }

    #[test]
    fn star_is_ring_automorphism() {
        let x = QPhi::from_int(2, -3);
        let y = QPhi::from_int(-1, 5);
        assert_eq!((x.clone() * y.clone()).star(), x.star() * y.star());
        assert_eq!((x.clone() + y.clone()).star(), x.star() + y.star());
        // φ·φ' = -1, φ + φ' = 1
        assert_eq!(QPhi::phi() * QPhi::phi().star(), QPhi::from_int(-1, 0));
        assert_eq!(QPhi::phi() + QPhi::phi().star(), QPhi::from_int(1, 0));
    }

    #[test]
    fn exact_signs() {
        // φ ≈ 1.618: 3φ − 5 ≈ −0.146 and 5φ − 8 ≈ 0.09
        assert!(QPhi::from_int(-5, 3).is_negative());
        assert!(QPhi::from_int(-8, 5).is_positive());
        assert!(QPhi::from_int(-3, 2).is_positive()); // 2φ − 3 ≈ 0.236
        assert!(QPhi::from_int(0, 0).sign() == Ordering::Equal);
        // conjugate φ' ≈ -0.618
        assert!(QPhi::phi().star().is_negative());
        // 13 − 8φ > 0 (8φ ≈ 12.94)
        assert!(QPhi::from_int(13, -8).is_positive());
        // 12 − 8φ < 0
        assert!(QPhi::from_int(12, -8).is_negative());
    }

    #[test]
    fn ordering_and_floor() {
        assert!(QPhi::phi() > QPhi::from_int(1, 0));
        assert!(QPhi::phi() < QPhi::from_int(2, 0));
        assert_eq!(QPhi::phi().floor(), 1);
        assert_eq!(QPhi::from_int(0, 5).floor(), 8); // 5φ ≈ 8.09
        assert_eq!(QPhi::from_int(0, -1).floor(), -2); // −φ ≈ −1.618
        assert_eq!(QPhi::from_int(3, 0).floor(), 3);
    }

    #[test]
    fn enclosure_widths() {
        let w = ratio(1, 1_000_000_000);
        let (lo, hi) = QPhi::phi().enclosure(&w);
        assert!(&hi - &lo <= w);
        assert!(lo <= ratio(1618033989, 1000000000));
        assert!(hi >= ratio(1618033988, 1000000000));
        let (slo, shi) = sqrt5_enclosure(&w);
        assert!(&shi - &slo <= w);
        assert!(&slo * &slo <= rat(5));
        assert!(&shi * &shi >= rat(5));
    }
}
