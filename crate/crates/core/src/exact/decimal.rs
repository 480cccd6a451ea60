//! Certified decimal rendering.
//!
//! Report files print every numeric value through [`render_decimal`], which
//! rounds to twelve significant digits with round-half-even semantics. For
//! rational inputs the rounding is computed exactly; for quadratic
//! irrationals an enclosure is refined until both endpoints render to the
//! same string, which certifies the output (a tie point is rational, so an
//! irrational value can never sit on one).

use super::{AlgReal, Rat};
use num_bigint::BigUint;
use num_traits::{Signed, Zero};

const DIGITS: u32 = 12;

/// Render with twelve significant digits, round-half-even, deterministic
/// across platforms and worker counts.
pub fn render_decimal(x: &AlgReal) -> String {
    match x {
        AlgReal::Rat(r) => render_rat(r),
        AlgReal::Quad(_) => {
            let mut bits = 64u64;
            loop {
                let (lo, hi) = x.rat_enclosure(bits);
                let slo = render_rat(&lo);
                let shi = render_rat(&hi);
                if slo == shi {
                    return slo;
                }
                bits *= 2;
                assert!(bits <= 1 << 16, "decimal rendering failed to converge");
            }
        }
    }
}

/// Exact round-half-even rendering of a rational.
pub fn render_rat(x: &Rat) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.numer().magnitude().clone();
    let b = x.denom().magnitude().clone();

    // Decimal exponent e with 10^e <= a/b < 10^(e+1); start from a bit-length
    // estimate and correct exactly.
    let mut e = {
        let ba = a.bits() as i64;
        let bb = b.bits() as i64;
        ((ba - bb) as f64 * 0.30102999566398119) as i64
    };
    while ge_pow10(&a, &b, e + 1) {
        e += 1;
    }
    while !ge_pow10(&a, &b, e) {
        e -= 1;
    }

    // m = round_half_even(a/b * 10^(DIGITS-1-e)) in [10^(DIGITS-1), 10^DIGITS].
    let shift = DIGITS as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (a * pow10(shift as u64), b)
    } else {
        (a, b * pow10((-shift) as u64))
    };
    let (mut m, r) = (&num / &den, &num % &den);
    let twice = &r + &r;
    if twice > den || (twice == den && (&m % 2u8) == BigUint::from(1u8)) {
        m += 1u8;
    }
    if m == pow10(DIGITS as u64) {
        m = pow10(DIGITS as u64 - 1);
        e += 1;
    }

    format_mantissa(neg, &m, e)
}

fn pow10(k: u64) -> BigUint {
    BigUint::from(10u8).pow(k as u32)
}

/// a/b >= 10^e, exactly.
fn ge_pow10(a: &BigUint, b: &BigUint, e: i64) -> bool {
    if e >= 0 {
        *a >= b * pow10(e as u64)
    } else {
        a * pow10((-e) as u64) >= *b
    }
}

/// Lay out a DIGITS-digit mantissa around exponent `e`, fixed-point for
/// moderate magnitudes and scientific otherwise; trailing fraction zeros
/// are trimmed.
fn format_mantissa(neg: bool, m: &BigUint, e: i64) -> String {
    let digits = m.to_str_radix(10);
    debug_assert_eq!(digits.len(), DIGITS as usize);
    let sign = if neg { "-" } else { "" };
    let body = if (-4..=(DIGITS as i64 + 3)).contains(&e) {
        if e >= 0 {
            let point = (e + 1) as usize;
            if point >= digits.len() {
                let mut s = digits.clone();
                s.push_str(&"0".repeat(point - digits.len()));
                s
            } else {
                trim_fraction(&format!("{}.{}", &digits[..point], &digits[point..]))
            }
        } else {
            let zeros = "0".repeat((-e - 1) as usize);
            trim_fraction(&format!("0.{}{}", zeros, digits))
        }
    } else {
        let frac = trim_zeros(&digits[1..]);
        let head = &digits[..1];
        let mant = if frac.is_empty() {
            head.to_string()
        } else {
            format!("{}.{}", head, frac)
        };
        format!("{}e{}", mant, e)
    };
    format!("{}{}", sign, body)
}

fn trim_zeros(s: &str) -> &str {
    s.trim_end_matches('0')
}

fn trim_fraction(s: &str) -> String {
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

/// Convenience wrapper for rendering a plain f64 that is already exact in
/// intent (grid parameters, style attributes); goes through the same
/// rational pipeline so output stays platform-independent.
pub fn render_f64(x: f64) -> String {
    match Rat::from_float(x) {
        Some(r) => render_rat(&r),
        None => "nan".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_bigint::BigInt;

    #[test]
    fn simple_values() {
        assert_eq!(render_rat(&rat(1, 1)), "1");
        assert_eq!(render_rat(&rat(-3, 2)), "-1.5");
        assert_eq!(render_rat(&rat(1, 3)), "0.333333333333");
        assert_eq!(render_rat(&rat(2, 3)), "0.666666666667");
        assert_eq!(render_rat(&rat(0, 5)), "0");
        assert_eq!(render_rat(&rat(1, 10000)), "0.0001");
        assert_eq!(render_rat(&rat(1, 10000000)), "1e-7");
    }

    #[test]
    fn half_even_ties() {
        // 0.1234567890125 has thirteen digits, tie on the last: round to even.
        let x = Rat::new(BigInt::from(1234567890125i64), BigInt::from(10i64).pow(13));
        assert_eq!(render_rat(&x), "0.123456789012");
        let y = Rat::new(BigInt::from(1234567890135i64), BigInt::from(10i64).pow(13));
        assert_eq!(render_rat(&y), "0.123456789014");
    }

    #[test]
    fn scientific_for_extremes() {
        let big = Rat::from(BigInt::from(10u8).pow(20));
        assert_eq!(render_rat(&big), "1e20");
        let tiny = Rat::new(BigInt::from(3), BigInt::from(10u8).pow(9));
        assert_eq!(render_rat(&tiny), "3e-9");
    }

    #[test]
    fn carry_at_all_nines() {
        // 0.9999999999996 rounds up to 1.
        let x = Rat::new(BigInt::from(9999999999996i64), BigInt::from(10i64).pow(13));
        assert_eq!(render_rat(&x), "1");
    }

    #[test]
    fn quadratic_rendering_converges() {
        let s2 = AlgReal::quad(rat(0, 1), rat(1, 1), BigInt::from(2));
        assert_eq!(render_decimal(&s2), "1.41421356237");
        let phi = AlgReal::quad(rat(1, 2), rat(1, 2), BigInt::from(5));
        assert_eq!(render_decimal(&phi), "1.61803398875");
    }
}
