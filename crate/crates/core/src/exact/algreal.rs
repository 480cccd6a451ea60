//! Real algebraic numbers of degree at most 2.
//!
//! The transversal solver produces line parameters of the form
//! `a + b*sqrt(d)` with rational `a, b` and a common integer radicand `d`
//! per solve. All range checks, orderings and betweenness decisions on
//! those values are exact. Values from different solves are compared via
//! their canonical minimal polynomials plus adaptive rational enclosures,
//! so no floating point ever decides a predicate.

use super::{exact_sqrt, rat_to_f64, sqrt_enclosure, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `a + b*sqrt(d)` with `b != 0` and `d > 1` not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
    pub d: BigInt,
}

/// Exact real number of algebraic degree one or two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgReal {
    Rat(Rat),
    Quad(QuadExt),
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgReal::Rat(r) => write!(f, "{}", r),
            AlgReal::Quad(q) => write!(f, "{} + {}*sqrt({})", q.a, q.b, q.d),
        }
    }
}

impl From<Rat> for AlgReal {
    fn from(r: Rat) -> Self {
        AlgReal::Rat(r)
    }
}

impl AlgReal {
    pub fn zero() -> AlgReal {
        AlgReal::Rat(Rat::zero())
    }

    pub fn one() -> AlgReal {
        AlgReal::Rat(Rat::one())
    }

    /// Build `a + b*sqrt(d)`, folding perfect squares and vanishing radical
    /// parts back into the rational case.
    pub fn quad(a: Rat, b: Rat, d: BigInt) -> AlgReal {
        assert!(!d.is_negative(), "negative radicand");
        if b.is_zero() || d.is_zero() {
            return AlgReal::Rat(a);
        }
        if let Some(root) = exact_sqrt(&d) {
            return AlgReal::Rat(a + b * Rat::from(root));
        }
        AlgReal::Quad(QuadExt { a, b, d })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AlgReal::Rat(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgReal::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            AlgReal::Rat(r) => Some(r),
            AlgReal::Quad(_) => None,
        }
    }

    /// The radicand, if irrational.
    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            AlgReal::Rat(_) => None,
            AlgReal::Quad(q) => Some(&q.d),
        }
    }

    fn parts(&self, d: &BigInt) -> (Rat, Rat) {
        match self {
            AlgReal::Rat(r) => (r.clone(), Rat::zero()),
            AlgReal::Quad(q) => {
                assert_eq!(&q.d, d, "mixing incompatible radicands");
                (q.a.clone(), q.b.clone())
            }
        }
    }

    fn common_radicand<'a>(&'a self, other: &'a AlgReal) -> Option<BigInt> {
        match (self.radicand(), other.radicand()) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(d1), Some(d2)) => {
                assert_eq!(d1, d2, "mixing incompatible radicands");
                Some(d1.clone())
            }
        }
    }

    pub fn add(&self, other: &AlgReal) -> AlgReal {
        match self.common_radicand(other) {
            None => {
                let (AlgReal::Rat(x), AlgReal::Rat(y)) = (self, other) else { unreachable!() };
                AlgReal::Rat(x + y)
            }
            Some(d) => {
                let (a1, b1) = self.parts(&d);
                let (a2, b2) = other.parts(&d);
                AlgReal::quad(a1 + a2, b1 + b2, d)
            }
        }
    }

    pub fn sub(&self, other: &AlgReal) -> AlgReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgReal {
        match self {
            AlgReal::Rat(r) => AlgReal::Rat(-r),
            AlgReal::Quad(q) => {
                AlgReal::Quad(QuadExt { a: -&q.a, b: -&q.b, d: q.d.clone() })
            }
        }
    }

    pub fn mul(&self, other: &AlgReal) -> AlgReal {
        match self.common_radicand(other) {
            None => {
                let (AlgReal::Rat(x), AlgReal::Rat(y)) = (self, other) else { unreachable!() };
                AlgReal::Rat(x * y)
            }
            Some(d) => {
                let (a1, b1) = self.parts(&d);
                let (a2, b2) = other.parts(&d);
                let rd = Rat::from(d.clone());
                AlgReal::quad(&a1 * &a2 + &b1 * &b2 * rd, &a1 * &b2 + &b1 * &a2, d)
            }
        }
    }

    pub fn div(&self, other: &AlgReal) -> AlgReal {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> AlgReal {
        match self {
            AlgReal::Rat(r) => {
                assert!(!r.is_zero(), "division by zero");
                AlgReal::Rat(r.recip())
            }
            AlgReal::Quad(q) => {
                // 1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)
                let norm = &q.a * &q.a - &q.b * &q.b * Rat::from(q.d.clone());
                debug_assert!(!norm.is_zero());
                AlgReal::quad(&q.a / &norm, -&q.b / &norm, q.d.clone())
            }
        }
    }

    pub fn scale(&self, k: &Rat) -> AlgReal {
        match self {
            AlgReal::Rat(r) => AlgReal::Rat(r * k),
            AlgReal::Quad(q) => AlgReal::quad(&q.a * k, &q.b * k, q.d.clone()),
        }
    }

    pub fn add_rat(&self, k: &Rat) -> AlgReal {
        self.add(&AlgReal::Rat(k.clone()))
    }

    /// Exact sign.
    pub fn sign(&self) -> Ordering {
        match self {
            AlgReal::Rat(r) => r.cmp(&Rat::zero()),
            AlgReal::Quad(q) => {
                let sa = q.a.cmp(&Rat::zero());
                let sb = q.b.cmp(&Rat::zero());
                if sa == Ordering::Equal {
                    return sb;
                }
                if sb == Ordering::Equal {
                    return sa;
                }
                if sa == sb {
                    return sa;
                }
                // a and b have opposite signs; compare a^2 with b^2 d.
                let lhs = &q.a * &q.a;
                let rhs = &q.b * &q.b * Rat::from(q.d.clone());
                // Equality impossible: would make sqrt(d) rational.
                debug_assert_ne!(lhs, rhs);
                if lhs > rhs {
                    sa
                } else {
                    sb
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

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        self.sub(&AlgReal::Rat(r.clone())).sign()
    }

    /// True iff the value lies in the half-open interval [lo, hi).
    pub fn in_half_open_unit(&self) -> bool {
        self.cmp_rat(&Rat::zero()) != Ordering::Less && self.cmp_rat(&Rat::one()) == Ordering::Less
    }

    /// Exact comparison between arbitrary degree-<=2 reals, including values
    /// from different solves (different radicands).
    pub fn cmp_any(&self, other: &AlgReal) -> Ordering {
        match (self, other) {
            (AlgReal::Rat(x), AlgReal::Rat(y)) => x.cmp(y),
            (AlgReal::Quad(q1), AlgReal::Quad(q2)) if q1.d == q2.d => self.sub(other).sign(),
            (AlgReal::Rat(_), AlgReal::Quad(q)) => {
                let (a, b) = self.parts(&q.d);
                AlgReal::quad(a - &q.a, b - &q.b, q.d.clone()).sign()
            }
            (AlgReal::Quad(q), AlgReal::Rat(_)) => {
                let (a, b) = other.parts(&q.d);
                AlgReal::quad(&q.a - a, &q.b - b, q.d.clone()).sign()
            }
            (AlgReal::Quad(q1), AlgReal::Quad(q2)) => cmp_cross_field(q1, q2),
        }
    }

    /// Rational enclosure with width below 2^-bits.
    pub fn rat_enclosure(&self, bits: u64) -> (Rat, Rat) {
        match self {
            AlgReal::Rat(r) => (r.clone(), r.clone()),
            AlgReal::Quad(q) => {
                // Pad for the multiplication by b.
                let extra = 16 + q.b.numer().magnitude().bits().max(1)
                    - q.b.denom().magnitude().bits().min(q.b.numer().magnitude().bits());
                let (slo, shi) = sqrt_enclosure(&q.d, bits + extra);
                let (t1, t2) = (&q.b * slo, &q.b * shi);
                if q.b.is_positive() {
                    (&q.a + t1, &q.a + t2)
                } else {
                    (&q.a + t2, &q.a + t1)
                }
            }
        }
    }

    /// Approximate double value; never used in predicates.
    pub fn to_f64(&self) -> f64 {
        match self {
            AlgReal::Rat(r) => rat_to_f64(r),
            AlgReal::Quad(q) => {
                rat_to_f64(&q.a) + rat_to_f64(&q.b) * rat_to_f64(&Rat::from(q.d.clone())).sqrt()
            }
        }
    }

    /// Canonical identity key: the primitive integer minimal polynomial plus
    /// the root-side marker. Equal keys mean equal real numbers, across
    /// solves with different radicand representations.
    pub fn key(&self) -> AlgKey {
        match self {
            AlgReal::Rat(r) => AlgKey::Rat(r.clone()),
            AlgReal::Quad(q) => {
                // minimal polynomial: x^2 - 2a x + (a^2 - b^2 d)
                let c1 = -(&q.a + &q.a);
                let c0 = &q.a * &q.a - &q.b * &q.b * Rat::from(q.d.clone());
                let den = c1.denom() / c1.denom().gcd(c0.denom()) * c0.denom();
                let a2: BigInt = den.clone();
                let a1: BigInt = (c1 * Rat::from(den.clone())).to_integer();
                let a0: BigInt = (c0 * Rat::from(den)).to_integer();
                let g = a2.gcd(&a1).gcd(&a0);
                AlgKey::Quad {
                    c2: &a2 / &g,
                    c1: &a1 / &g,
                    c0: &a0 / &g,
                    upper: q.b.is_positive(),
                }
            }
        }
    }
}

/// Structured identity of a degree-<=2 real, suitable for ordering and
/// deduplication across solves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgKey {
    Rat(Rat),
    Quad { c2: BigInt, c1: BigInt, c0: BigInt, upper: bool },
}

/// Compare `a1 + b1 sqrt(d1)` with `a2 + b2 sqrt(d2)` for distinct d1, d2.
fn cmp_cross_field(q1: &QuadExt, q2: &QuadExt) -> Ordering {
    // Zero test first: r + u sqrt(p) - v sqrt(q) = 0 with u, v != 0 forces
    // r = 0, u^2 p = v^2 q and matching signs.
    let r = &q1.a - &q2.a;
    if r.is_zero()
        && &q1.b * &q1.b * Rat::from(q1.d.clone()) == &q2.b * &q2.b * Rat::from(q2.d.clone())
        && q1.b.is_positive() == q2.b.is_positive()
    {
        return Ordering::Equal;
    }
    // Not equal: adaptive enclosures must separate eventually.
    let mut bits = 64u64;
    loop {
        let (lo1, hi1) = AlgReal::Quad(q1.clone()).rat_enclosure(bits);
        let (lo2, hi2) = AlgReal::Quad(q2.clone()).rat_enclosure(bits);
        if hi1 < lo2 {
            return Ordering::Less;
        }
        if hi2 < lo1 {
            return Ordering::Greater;
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "failed to separate distinct algebraic numbers");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn q(a: Rat, b: Rat, d: i64) -> AlgReal {
        AlgReal::quad(a, b, BigInt::from(d))
    }

    #[test]
    fn perfect_square_folds_to_rational() {
        assert_eq!(q(rat(1, 2), rat(3, 1), 9), AlgReal::Rat(rat(19, 2)));
        assert_eq!(q(rat(5, 1), rat(0, 1), 7), AlgReal::Rat(rat(5, 1)));
    }

    #[test]
    fn field_arithmetic() {
        // (1 + sqrt2)(1 - sqrt2) = -1
        let x = q(rat(1, 1), rat(1, 1), 2);
        let y = q(rat(1, 1), rat(-1, 1), 2);
        assert_eq!(x.mul(&y), AlgReal::Rat(rat(-1, 1)));
        // 1/(1 + sqrt2) = -1 + sqrt2
        assert_eq!(x.inv(), q(rat(-1, 1), rat(1, 1), 2));
        assert!(x.mul(&x.inv()).sub(&AlgReal::one()).is_zero());
    }

    #[test]
    fn signs_are_exact() {
        // 7/5 - sqrt(2) < 0, 3/2 - sqrt(2) > 0
        assert_eq!(q(rat(7, 5), rat(-1, 1), 2).sign(), Ordering::Less);
        assert_eq!(q(rat(3, 2), rat(-1, 1), 2).sign(), Ordering::Greater);
        assert_eq!(AlgReal::zero().sign(), Ordering::Equal);
    }

    #[test]
    fn half_open_range() {
        assert!(q(rat(0, 1), rat(1, 2), 2).in_half_open_unit()); // sqrt2/2
        assert!(!q(rat(0, 1), rat(1, 1), 2).in_half_open_unit()); // sqrt2 > 1
        assert!(AlgReal::zero().in_half_open_unit());
        assert!(!AlgReal::one().in_half_open_unit());
    }

    #[test]
    fn cross_field_comparison() {
        // sqrt(2) < sqrt(3), and 8 = sqrt(64)-style disguises agree.
        let a = q(rat(0, 1), rat(1, 1), 2);
        let b = q(rat(0, 1), rat(1, 1), 3);
        assert_eq!(a.cmp_any(&b), Ordering::Less);
        // 2*sqrt(2) == sqrt(8) across different radicands.
        let x = q(rat(0, 1), rat(2, 1), 2);
        let y = q(rat(0, 1), rat(1, 1), 8);
        assert_eq!(x.cmp_any(&y), Ordering::Equal);
        assert_eq!(x.key(), y.key());
        // and the conjugate root has a different key.
        let y_neg = q(rat(0, 1), rat(-1, 1), 8);
        assert_ne!(x.key(), y_neg.key());
    }

    #[test]
    fn enclosure_width() {
        let x = q(rat(1, 3), rat(-7, 2), 5);
        let (lo, hi) = x.rat_enclosure(100);
        assert!(lo <= hi);
        assert!(&hi - &lo <= Rat::new(BigInt::one(), BigInt::one() << 100));
        // value is in the enclosure: check via square comparison
        assert!(x.cmp_rat(&lo) != Ordering::Less);
        assert!(x.cmp_rat(&hi) != Ordering::Greater);
    }

    #[test]
    fn quadratic_roots_certify() {
        // roots of x^2 - x - 1: golden ratio
        let phi = q(rat(1, 2), rat(1, 2), 5);
        let val = phi.mul(&phi).sub(&phi).sub(&AlgReal::one());
        assert!(val.is_zero());
    }
}
