//! Exact univariate polynomial arithmetic, Sturm chains, and real-root
//! counting over the rationals, plus the sparse trivariate polynomials used
//! for implicit surfaces.
//!
//! Root counts are certified: Sturm chains are built on the squarefree part
//! with sign-preserving content normalization, endpoints are handled by
//! exact one-sided sign limits, and multiplicities come from Yun's
//! squarefree decomposition. No floating point is involved anywhere.

use crate::exact::Rat;
use crate::geom::{Dir3, Point3};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

/// Univariate polynomial with exact rational coefficients, ascending degree,
/// no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> UniPoly {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    /// `∏ (x − r)` over the given roots, with multiplicity by repetition.
    pub fn from_roots(roots: &[Rat]) -> UniPoly {
        let mut p = UniPoly::constant(Rat::one());
        for r in roots {
            p = p.mul(&UniPoly::from_coeffs(vec![-r.clone(), Rat::one()]));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            coeffs.push(a + b);
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        if k.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, mut n: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(Rat::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    /// Panics when `d` is zero.
    pub fn divmod(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().unwrap();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        while r.len() > dd && !r.is_empty() {
            let rl = r.last().unwrap();
            if rl.is_zero() {
                r.pop();
                continue;
            }
            let k = r.len() - 1 - dd;
            let f = rl / lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &f * c;
            }
            debug_assert!(r.last().unwrap().is_zero());
            r.pop();
            q[k] = f;
        }
        (UniPoly::from_coeffs(q), UniPoly::from_coeffs(r))
    }

    /// Exact quotient; panics when the division is not exact.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Divide by the positive rational content, preserving the sign of
    /// every coefficient. Keeps Sturm-chain coefficients small without
    /// disturbing sign variations.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        debug_assert!(content.is_positive());
        self.scale(&content.recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r.primitive();
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&lead.recip())
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g)
    }

    /// Yun's squarefree decomposition: returns `(q_i, i)` with
    /// `self = lc · ∏ q_i^i`, each `q_i` squarefree and monic-free
    /// (primitive), pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        assert!(!self.is_zero());
        if self.degree() == Some(0) {
            return Vec::new();
        }
        let p = self.primitive();
        let dp = p.derivative();
        let g = p.gcd(&dp);
        if g.degree() == Some(0) {
            return vec![(p, 1)];
        }
        let mut out = Vec::new();
        let mut w = p.div_exact(&g);
        let mut y = dp.div_exact(&g);
        let mut i = 1u32;
        loop {
            let z = y.sub(&w.derivative());
            if z.is_zero() {
                if w.degree().unwrap_or(0) > 0 {
                    out.push((w.primitive(), i));
                }
                break;
            }
            let q = w.gcd(&z);
            if q.degree().unwrap_or(0) > 0 {
                out.push((q.primitive(), i));
            }
            w = w.div_exact(&q);
            y = z.div_exact(&q);
            i += 1;
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// An interval endpoint for root counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

/// Which one-sided limit to take at a finite endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Sturm chain of the squarefree part of a polynomial, with an exact
/// sign-variation count at arbitrary (possibly infinite) endpoints.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    /// Build the chain `p, p', −rem(p, p'), …` on the squarefree part of
    /// `p`; every term is content-normalized with its sign preserved.
    pub fn new(p: &UniPoly) -> Result<SturmChain, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let p0 = p.squarefree_part().primitive();
        let mut chain = vec![p0.clone()];
        let p1 = p0.derivative().primitive();
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].divmod(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().primitive());
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn chain(&self) -> &[UniPoly] {
        &self.chain
    }

    /// Sign of `q` in the one-sided limit at `c`: factor out `(x−c)^m`.
    fn one_sided_sign(q: &UniPoly, c: &Rat, side: Side) -> i8 {
        debug_assert!(!q.is_zero());
        let v = q.eval(c);
        if !v.is_zero() {
            return if v.is_positive() { 1 } else { -1 };
        }
        let linear = UniPoly::from_coeffs(vec![-c.clone(), Rat::one()]);
        let mut u = q.clone();
        let mut m = 0u32;
        loop {
            let (quot, r) = u.divmod(&linear);
            debug_assert!(r.is_zero());
            u = quot;
            m += 1;
            let uv = u.eval(c);
            if !uv.is_zero() {
                let s: i8 = if uv.is_positive() { 1 } else { -1 };
                return match side {
                    Side::Right => s,
                    Side::Left => {
                        if m % 2 == 0 {
                            s
                        } else {
                            -s
                        }
                    }
                };
            }
        }
    }

    fn sign_at_bound(q: &UniPoly, at: &Bound, side: Side) -> i8 {
        match at {
            Bound::Finite(c) => Self::one_sided_sign(q, c, side),
            Bound::PosInf => {
                if q.leading().unwrap().is_positive() {
                    1
                } else {
                    -1
                }
            }
            Bound::NegInf => {
                let s: i8 = if q.leading().unwrap().is_positive() { 1 } else { -1 };
                if q.degree().unwrap() % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    fn variations(&self, at: &Bound, side: Side) -> usize {
        let mut count = 0;
        let mut prev: Option<i8> = None;
        for q in &self.chain {
            let s = Self::sign_at_bound(q, at, side);
            if let Some(p) = prev {
                if p != s {
                    count += 1;
                }
            }
            prev = Some(s);
        }
        count
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Bound, hi: &Bound) -> usize {
        let va = self.variations(lo, Side::Right);
        let vb = self.variations(hi, Side::Left);
        va.saturating_sub(vb)
    }
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize, AlgebraError> {
    Ok(SturmChain::new(p)?.count_open(lo, hi))
}

/// Total number of real roots counted with multiplicity, via Yun's
/// decomposition: `Σ i · #roots(q_i)`.
pub fn count_with_multiplicity(p: &UniPoly) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut total = 0usize;
    for (q, mult) in p.squarefree_decomposition() {
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        total += mult as usize * sturm_count(&q, &Bound::NegInf, &Bound::PosInf)?;
    }
    Ok(total)
}

/// Sparse trivariate polynomial: exponent triple → coefficient, zero
/// coefficients never stored. The map is ordered so iteration, printing,
/// and hashing are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), Rat>,
}

impl TriPoly {
    pub fn zero() -> TriPoly {
        TriPoly::default()
    }

    pub fn constant(c: Rat) -> TriPoly {
        let mut p = TriPoly::zero();
        p.add_term((0, 0, 0), c);
        p
    }

    /// The monomial `x^i y^j z^k`.
    pub fn monomial(i: u32, j: u32, k: u32, c: Rat) -> TriPoly {
        let mut p = TriPoly::zero();
        p.add_term((i, j, k), c);
        p
    }

    pub fn var(axis: usize) -> TriPoly {
        match axis {
            0 => TriPoly::monomial(1, 0, 0, Rat::one()),
            1 => TriPoly::monomial(0, 1, 0, Rat::one()),
            2 => TriPoly::monomial(0, 0, 1, Rat::one()),
            _ => panic!("axis out of range"),
        }
    }

    pub fn add_term(&mut self, key: (u32, u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum total degree `i + j + k` over stored terms; `None` if zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j, k)| i + j + k).max()
    }

    pub fn add(&self, other: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TriPoly) -> TriPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> TriPoly {
        if k.is_zero() {
            return TriPoly::zero();
        }
        TriPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn mul(&self, other: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for ((i1, j1, k1), c1) in &self.terms {
            for ((i2, j2, k2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2, k1 + k2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> TriPoly {
        let mut base = self.clone();
        let mut acc = TriPoly::constant(Rat::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, p: &Point3) -> Rat {
        let mut acc = Rat::zero();
        for ((i, j, k), c) in &self.terms {
            acc = acc + c * pow_rat(&p.x, *i) * pow_rat(&p.y, *j) * pow_rat(&p.z, *k);
        }
        acc
    }

    /// Exact substitution `(x,y,z) = anchor + τ·direction`, yielding a
    /// univariate polynomial in τ. A zero result means the whole line lies
    /// in the surface; the caller must treat that case separately.
    pub fn restrict_to_line(&self, anchor: &Point3, direction: &Dir3) -> UniPoly {
        assert!(!direction.is_zero(), "restriction needs a nonzero direction");
        let dmax = self.terms.keys().fold((0, 0, 0), |m, k| (m.0.max(k.0), m.1.max(k.1), m.2.max(k.2)));
        let powers = |a: &Rat, d: &Rat, top: u32| -> Vec<UniPoly> {
            let lin = UniPoly::from_coeffs(vec![a.clone(), d.clone()]);
            let mut out = Vec::with_capacity(top as usize + 1);
            out.push(UniPoly::constant(Rat::one()));
            for i in 1..=top {
                let prev = out[(i - 1) as usize].clone();
                out.push(prev.mul(&lin));
            }
            out
        };
        let px = powers(&anchor.x, &direction.x, dmax.0);
        let py = powers(&anchor.y, &direction.y, dmax.1);
        let pz = powers(&anchor.z, &direction.z, dmax.2);
        let mut acc = UniPoly::zero();
        for ((i, j, k), c) in &self.terms {
            let term = px[*i as usize].mul(&py[*j as usize]).mul(&pz[*k as usize]).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Canonical sparse text form: one `coeff x^i y^j z^k` monomial per
    /// line, highest exponents first.
    pub fn to_text(&self) -> String {
        use crate::exact::format_scalar;
        let mut lines = Vec::with_capacity(self.terms.len());
        for ((i, j, k), c) in self.terms.iter().rev() {
            lines.push(format!("{} x^{} y^{} z^{}", format_scalar(c), i, j, k));
        }
        if lines.is_empty() {
            lines.push("0 x^0 y^0 z^0".to_string());
        }
        lines.join("\n") + "\n"
    }

    /// Parse the sparse monomial format. Each non-comment line is a
    /// coefficient (decimal or `p/q`) followed by optional `x^i y^j z^k`
    /// factors; bare `x`, `y`, `z` mean exponent 1.
    pub fn parse(text: &str) -> Result<TriPoly, AlgebraError> {
        use crate::exact::parse_scalar;
        let mut out = TriPoly::zero();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let coeff_tok = tokens.next().unwrap();
            let coeff = parse_scalar(coeff_tok)
                .map_err(|e| AlgebraError::Parse(format!("line {}: {}", lineno + 1, e)))?;
            let mut expo = (0u32, 0u32, 0u32);
            for tok in tokens {
                let (var, pow) = match tok.split_once('^') {
                    Some((v, p)) => {
                        let pw: u32 = p.parse().map_err(|_| {
                            AlgebraError::Parse(format!("line {}: bad exponent {:?}", lineno + 1, p))
                        })?;
                        (v, pw)
                    }
                    None => (tok, 1),
                };
                match var {
                    "x" => expo.0 += pow,
                    "y" => expo.1 += pow,
                    "z" => expo.2 += pow,
                    _ => {
                        return Err(AlgebraError::Parse(format!(
                            "line {}: unknown factor {:?}",
                            lineno + 1,
                            tok
                        )))
                    }
                }
            }
            out.add_term(expo, coeff);
        }
        Ok(out)
    }
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc = acc * x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn b(x: i64) -> Bound {
        Bound::Finite(rat(x, 1))
    }

    #[test]
    fn divmod_and_gcd() {
        let p = UniPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let d = UniPoly::from_ints(&[-1, 1]); // x - 1
        let (q, r) = p.divmod(&d);
        assert_eq!(q, UniPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let g = p.gcd(&UniPoly::from_ints(&[1, 1])); // gcd with x + 1
        assert_eq!(g, UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn sturm_basic_counts() {
        // x^2 - 1 on (-2, 2) → 2
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &b(-2), &b(2)).unwrap(), 2);
        // x^2 + 1 on (-inf, inf) → 0
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
        // (x-1)(x-2)(x-3) on (3/2, inf) → 2
        let r = UniPoly::from_roots(&[rat(1, 1), rat(2, 1), rat(3, 1)]);
        assert_eq!(sturm_count(&r, &Bound::Finite(rat(3, 2)), &Bound::PosInf).unwrap(), 2);
    }

    #[test]
    fn sturm_open_interval_excludes_endpoint_roots() {
        let p = UniPoly::from_roots(&[rat(0, 1), rat(1, 1), rat(2, 1)]);
        // (0, 2) open: only the root at 1
        assert_eq!(sturm_count(&p, &b(0), &b(2)).unwrap(), 1);
        // (-1, 3): all three
        assert_eq!(sturm_count(&p, &b(-1), &b(3)).unwrap(), 3);
        // multiple root at an endpoint
        let q = UniPoly::from_roots(&[rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(sturm_count(&q, &b(0), &b(2)).unwrap(), 1);
    }

    #[test]
    fn multiplicity_counts() {
        // (x-1)^3 → 3
        let p = UniPoly::from_roots(&[rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(count_with_multiplicity(&p).unwrap(), 3);
        // (x^2+1)^2 → 0
        let q = UniPoly::from_ints(&[1, 0, 1]).pow(2);
        assert_eq!(count_with_multiplicity(&q).unwrap(), 0);
        // (x^2-1)^2 (x-2) → 5
        let r = UniPoly::from_ints(&[-1, 0, 1]).pow(2).mul(&UniPoly::from_ints(&[-2, 1]));
        assert_eq!(count_with_multiplicity(&r).unwrap(), 5);
    }

    #[test]
    fn multiplicity_additivity_on_coprime_factors() {
        let p = UniPoly::from_roots(&[rat(1, 2), rat(1, 2), rat(-3, 1)]);
        let q = UniPoly::from_ints(&[2, 0, 1]); // x^2 + 2, no real roots
        let pq = p.mul(&q);
        assert_eq!(
            count_with_multiplicity(&pq).unwrap(),
            count_with_multiplicity(&p).unwrap() + count_with_multiplicity(&q).unwrap()
        );
    }

    #[test]
    fn yun_decomposition_structure() {
        // (x-1)^2 (x+2)^3
        let p = UniPoly::from_roots(&[rat(1, 1), rat(1, 1), rat(-2, 1), rat(-2, 1), rat(-2, 1)]);
        let decomp = p.squarefree_decomposition();
        let mults: Vec<u32> = decomp.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![2, 3]);
        for (q, _) in &decomp {
            assert_eq!(q.degree(), Some(1));
        }
    }

    #[test]
    fn restriction_examples() {
        // x^2 + y^2 + z^2 - 1 on the x-axis → t^2 - 1
        let sphere = TriPoly::var(0)
            .pow(2)
            .add(&TriPoly::var(1).pow(2))
            .add(&TriPoly::var(2).pow(2))
            .sub(&TriPoly::constant(Rat::one()));
        let p = sphere.restrict_to_line(&Point3::origin(), &Dir3::ints(1, 0, 0));
        assert_eq!(p, UniPoly::from_ints(&[-1, 0, 1]));
        // z restricted to a line inside z = 0 → zero polynomial
        let zp = TriPoly::var(2);
        let r = zp.restrict_to_line(&Point3::origin(), &Dir3::ints(1, 1, 0));
        assert!(r.is_zero());
    }

    #[test]
    fn restriction_is_linear() {
        let p = TriPoly::var(0).pow(2).mul(&TriPoly::var(1));
        let q = TriPoly::var(2).pow(3).scale(&rat(5, 3));
        let anchor = Point3::new(rat(1, 2), rat(-1, 3), rat(2, 1));
        let dir = Dir3::new(rat(3, 1), rat(1, 7), rat(-2, 5));
        let lhs = p.add(&q).restrict_to_line(&anchor, &dir);
        let rhs = p.restrict_to_line(&anchor, &dir).add(&q.restrict_to_line(&anchor, &dir));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tripoly_text_round_trip() {
        let p = TriPoly::var(0).pow(2).add(&TriPoly::monomial(0, 1, 3, rat(-7, 2)));
        let text = p.to_text();
        let back = TriPoly::parse(&text).unwrap();
        assert_eq!(p, back);
        // parse tolerates bare variables and decimal coefficients
        let q = TriPoly::parse("0.5 x y^2\n-1 z\n").unwrap();
        assert_eq!(q.eval(&Point3::ints(2, 3, 1)), rat(8, 1));
        assert!(TriPoly::parse("1 w^2").is_err());
    }

    #[test]
    fn display_form() {
        let p = UniPoly::from_ints(&[1, 0, -2, 0, 0, 3]);
        assert_eq!(p.to_string(), "3*t^5 - 2*t^2 + 1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }
}
