//! Exact arithmetic substrate: arbitrary-precision rationals, certified
//! double-precision enclosures, and real quadratic irrationalities.
//!
//! Every geometric predicate in this crate ultimately bottoms out in the
//! types defined here. Rationals are the ground truth; `f64` intervals are
//! a prefilter that is always allowed to say "don't know".

mod algreal;
mod decimal;
mod interval;

pub use algreal::{AlgKey, AlgReal, QuadExt};
pub use decimal::{render_decimal, render_f64, render_rat};
pub use interval::Iv;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational scalar. Always stored in canonical reduced
/// form (gcd 1, positive denominator) by construction.
pub type Rat = num_rational::BigRational;

/// Shorthand rational constructor for literals in code and tests.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a scalar literal: a decimal string (`-12.5`, `3`, `0.1e-3`) or an
/// explicit fraction (`-7/12`). Decimal strings convert exactly, so `0.1`
/// becomes 1/10 rather than the nearest binary float.
pub fn parse_scalar(s: &str) -> Result<Rat, ScalarParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ScalarParseError(s.to_string()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| ScalarParseError(s.to_string()))?;
        let d: BigInt = d.trim().parse().map_err(|_| ScalarParseError(s.to_string()))?;
        if d.is_zero() {
            return Err(ScalarParseError(s.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    // Split off an exponent part, if any.
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| ScalarParseError(s.to_string()))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    let digits: String = format!("{}{}", int_part, frac_part);
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(ScalarParseError(s.to_string()));
    }
    let numer: BigInt = digits.parse().map_err(|_| ScalarParseError(s.to_string()))?;
    let scale = frac_part.len() as i32 - exp;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rat::new(numer, ten.pow(scale as u32))
    } else {
        Rat::from(numer * ten.pow((-scale) as u32))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarParseError(pub String);

impl std::fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid scalar literal: {:?}", self.0)
    }
}

impl std::error::Error for ScalarParseError {}

/// Render a rational exactly as a decimal string if its denominator is of
/// the form 2^a 5^b, otherwise as `p/q`. The output round-trips through
/// [`parse_scalar`] without loss.
pub fn format_scalar(x: &Rat) -> String {
    let mut d: BigUint = x.denom().magnitude().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let k = twos.max(fives);
    if k == 0 {
        return x.numer().to_string();
    }
    let scaled: BigInt = x.numer() * BigInt::from(10u32).pow(k) / x.denom();
    let neg = scaled.sign() == Sign::Minus;
    let digits = scaled.magnitude().to_string();
    let digits = if digits.len() <= k as usize {
        format!("{}{}", "0".repeat(k as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - k as usize;
    let mut frac = digits[split..].to_string();
    while frac.len() > 1 && frac.ends_with('0') {
        frac.pop();
    }
    let body = if frac.chars().all(|c| c == '0') {
        digits[..split].to_string()
    } else {
        format!("{}.{}", &digits[..split], frac)
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

/// Round to the nearest multiple of 2^-bits (ties toward +inf). Used to keep
/// generated coordinates on a dyadic grid with bounded denominators.
pub fn dyadic_round(x: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = x * Rat::from(scale.clone());
    let half = rat(1, 2);
    let shifted = scaled + half;
    Rat::new(shifted.floor().to_integer(), scale)
}

/// Next representable double above `f`.
pub fn next_up(f: f64) -> f64 {
    if f.is_nan() || f == f64::INFINITY {
        return f;
    }
    if f == 0.0 {
        return f64::from_bits(1);
    }
    let bits = f.to_bits();
    f64::from_bits(if f > 0.0 { bits + 1 } else { bits - 1 })
}

/// Next representable double below `f`.
pub fn next_down(f: f64) -> f64 {
    -next_up(-f)
}

/// A reasonably close f64 approximation of a rational, safe against
/// overflow of numerator or denominator individually.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let shift = 56i64 - (n.bits() as i64 - d.bits() as i64);
    let q: BigUint = if shift >= 0 {
        (n << shift as u64) / d
    } else {
        n / (d << (-shift) as u64)
    };
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let mag = qf * pow2(-shift as i32);
    if x.numer().sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn pow2(e: i32) -> f64 {
    // 2^e without going through powi's potential libm differences.
    if (-1022..=1023).contains(&e) {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e > 0 {
        f64::INFINITY
    } else {
        0.0
    }
}

/// A certified enclosure lo <= x <= hi in doubles. Infinite bounds signal
/// magnitude overflow; the enclosure is always valid.
pub fn f64_enclosure(x: &Rat) -> (f64, f64) {
    let a = rat_to_f64(x);
    let (mut lo, mut hi) = if a.is_finite() {
        (a, a)
    } else if a > 0.0 {
        (f64::MAX, f64::INFINITY)
    } else {
        (f64::NEG_INFINITY, f64::MIN)
    };
    let mut guard = 0;
    while !f64_le(lo, x) {
        lo = next_down(lo);
        guard += 1;
        debug_assert!(guard < 64, "enclosure adjustment runaway");
    }
    while !f64_ge(hi, x) {
        hi = next_up(hi);
        guard += 1;
        debug_assert!(guard < 64, "enclosure adjustment runaway");
    }
    (lo, hi)
}

fn f64_le(f: f64, x: &Rat) -> bool {
    if f == f64::NEG_INFINITY {
        return true;
    }
    if f == f64::INFINITY {
        return false;
    }
    match Rat::from_float(f) {
        Some(r) => r <= *x,
        None => false,
    }
}

fn f64_ge(f: f64, x: &Rat) -> bool {
    if f == f64::INFINITY {
        return true;
    }
    if f == f64::NEG_INFINITY {
        return false;
    }
    match Rat::from_float(f) {
        Some(r) => r >= *x,
        None => false,
    }
}

/// Rational enclosure of sqrt(n) with error below 2^-bits; `n` must be
/// nonnegative.
pub fn sqrt_enclosure(n: &BigInt, bits: u64) -> (Rat, Rat) {
    assert!(!n.is_negative(), "sqrt of negative integer");
    let scaled: BigUint = n.magnitude() << (2 * bits);
    let root = scaled.sqrt();
    let denom = BigInt::one() << bits;
    let lo = Rat::new(BigInt::from(root.clone()), denom.clone());
    let hi = Rat::new(BigInt::from(root + BigUint::one()), denom);
    (lo, hi)
}

/// Exact test for a perfect square; returns the root when one exists.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.magnitude().sqrt();
    if &r * &r == *n.magnitude() {
        Some(BigInt::from(r))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parse_is_exact() {
        assert_eq!(parse_scalar("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_scalar("-2.5e-3").unwrap(), rat(-1, 400));
        assert_eq!(parse_scalar("42").unwrap(), rat(42, 1));
        assert_eq!(parse_scalar("7/12").unwrap(), rat(7, 12));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("abc").is_err());
    }

    #[test]
    fn scalar_format_round_trips() {
        for r in [rat(1, 10), rat(-3, 8), rat(7, 12), rat(0, 1), rat(123, 1), rat(1, 1 << 20)] {
            let s = format_scalar(&r);
            assert_eq!(parse_scalar(&s).unwrap(), r, "through {:?}", s);
        }
        assert_eq!(format_scalar(&rat(1, 10)), "0.1");
        assert_eq!(format_scalar(&rat(7, 12)), "7/12");
        assert_eq!(format_scalar(&rat(-5, 2)), "-2.5");
    }

    #[test]
    fn enclosure_brackets_value() {
        for r in [rat(1, 3), rat(-7, 11), rat(1, 10), rat(0, 1), rat(1 << 40, 3)] {
            let (lo, hi) = f64_enclosure(&r);
            assert!(Rat::from_float(lo).map_or(lo < 0.0, |l| l <= r));
            assert!(Rat::from_float(hi).map_or(hi > 0.0, |h| h >= r));
            assert!(hi - lo <= rat_to_f64(&r).abs() * 1e-14 + f64::MIN_POSITIVE);
        }
    }

    #[test]
    fn dyadic_round_error_bound() {
        let x = rat(1, 3);
        let y = dyadic_round(&x, 20);
        assert!((&y - &x).abs() <= rat(1, 1 << 21));
        assert_eq!(y.denom().magnitude().bits() as u32 <= 21, true);
    }

    #[test]
    fn sqrt_enclosure_brackets() {
        let (lo, hi) = sqrt_enclosure(&BigInt::from(2), 80);
        assert!(&lo * &lo <= rat(2, 1));
        assert!(&hi * &hi >= rat(2, 1));
        assert!(&hi - &lo <= Rat::new(BigInt::one(), BigInt::one() << 79));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(144)), Some(BigInt::from(12)));
        assert_eq!(exact_sqrt(&BigInt::from(2)), None);
        assert_eq!(exact_sqrt(&BigInt::from(-4)), None);
        assert_eq!(exact_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
    }
}
