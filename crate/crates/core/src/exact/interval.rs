//! Outward-rounded f64 intervals.
//!
//! Rust gives no access to rounding-mode control, so every arithmetic
//! result is widened by one ulp on each side. The resulting enclosures are
//! a little loose but always sound, which is the only property the
//! prefilters rely on.

use super::{f64_enclosure, next_down, next_up, Rat};
use std::ops::{Add, Mul, Neg, Sub};

/// Closed interval `[lo, hi]` with outward rounding.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Iv {
    pub lo: f64,
    pub hi: f64,
}

impl Iv {
    pub const ZERO: Iv = Iv { lo: 0.0, hi: 0.0 };

    pub fn point(x: f64) -> Iv {
        Iv { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Iv {
        debug_assert!(lo <= hi || (lo.is_nan() || hi.is_nan()));
        if lo.is_nan() || hi.is_nan() {
            return Iv::everything();
        }
        Iv { lo, hi }
    }

    pub fn everything() -> Iv {
        Iv { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn from_rat(x: &Rat) -> Iv {
        let (lo, hi) = f64_enclosure(x);
        Iv { lo, hi }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }

    /// Certain sign: -1, 0 never (zero is never certain), +1, or None.
    pub fn certain_sign(&self) -> Option<i8> {
        if self.lo > 0.0 {
            Some(1)
        } else if self.hi < 0.0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// True if the whole interval is strictly below `x`.
    pub fn strictly_below(&self, x: f64) -> bool {
        self.hi < x
    }

    /// True if the whole interval is strictly above `x`.
    pub fn strictly_above(&self, x: f64) -> bool {
        self.lo > x
    }

    pub fn intersects(&self, other: &Iv) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Iv) -> Iv {
        Iv { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Iv) -> Option<Iv> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(Iv { lo, hi })
        } else {
            None
        }
    }

    fn widened(lo: f64, hi: f64) -> Iv {
        if lo.is_nan() || hi.is_nan() {
            return Iv::everything();
        }
        Iv { lo: next_down(lo), hi: next_up(hi) }
    }
}

impl Add for Iv {
    type Output = Iv;
    fn add(self, rhs: Iv) -> Iv {
        Iv::widened(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Iv {
    type Output = Iv;
    fn sub(self, rhs: Iv) -> Iv {
        Iv::widened(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Mul for Iv {
    type Output = Iv;
    fn mul(self, rhs: Iv) -> Iv {
        let p = [self.lo * rhs.lo, self.lo * rhs.hi, self.hi * rhs.lo, self.hi * rhs.hi];
        if p.iter().any(|v| v.is_nan()) {
            return Iv::everything();
        }
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Iv::widened(lo, hi)
    }
}

impl Neg for Iv {
    type Output = Iv;
    fn neg(self) -> Iv {
        Iv { lo: -self.hi, hi: -self.lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic_encloses_exact_result() {
        let a = Iv::from_rat(&rat(1, 3));
        let b = Iv::from_rat(&rat(-2, 7));
        let sum = a + b;
        let exact = rat(1, 3) + rat(-2, 7);
        let (lo, hi) = crate::exact::f64_enclosure(&exact);
        assert!(sum.lo <= lo && hi <= sum.hi);

        let prod = a * b;
        let exact = rat(1, 3) * rat(-2, 7);
        let (lo, hi) = crate::exact::f64_enclosure(&exact);
        assert!(prod.lo <= lo && hi <= prod.hi);
    }

    #[test]
    fn sign_certainty() {
        assert_eq!(Iv::new(0.5, 1.0).certain_sign(), Some(1));
        assert_eq!(Iv::new(-1.0, -0.5).certain_sign(), Some(-1));
        assert_eq!(Iv::new(-0.1, 0.1).certain_sign(), None);
        assert!(Iv::new(-0.0, 0.0).contains_zero());
    }

    #[test]
    fn nan_poisoning_becomes_everything() {
        let inf = Iv::new(f64::NEG_INFINITY, f64::INFINITY);
        let z = Iv::ZERO;
        let prod = inf * z;
        assert_eq!(prod.lo, f64::NEG_INFINITY);
        assert_eq!(prod.hi, f64::INFINITY);
    }
}
