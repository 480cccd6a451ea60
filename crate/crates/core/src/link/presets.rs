//! Built-in parametrized link presets.
//!
//! Every preset samples a documented closed-form parametrization at `n`
//! equally spaced angles per component. The trigonometric values are
//! computed by rational Taylor series with certified truncation and then
//! rounded to 48-bit dyadics, so preset coordinates are exact rationals
//! within 2⁻⁴⁸ of the smooth model — far below the 10⁻¹² of-diameter
//! documentation bound — and identical on every platform.

use super::{LinkError, PolyLink};
use crate::exact::{dyadic_round, parse_scalar, rat, Rat};
use crate::geom::Point3;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Catalog entry: name, minimum edges per component, documented class.
pub const PRESETS: &[(&str, usize, &str)] = &[
    ("round_unknot", 3, "unknot (regular planar polygon, strictly convex)"),
    ("trefoil_t23", 30, "trefoil knot, the (2,3) torus knot"),
    ("figure_eight", 40, "figure-eight knot (4_1)"),
    ("hopf", 8, "Hopf link (two round circles, linking number 1)"),
    ("whitehead", 16, "Whitehead link (linking number 0, non-split)"),
    ("borromean", 12, "Borromean rings (three ellipses, pairwise unlinked)"),
];

/// Precision of the dyadic rounding applied to every sampled coordinate.
const COORD_BITS: u32 = 48;

fn pi() -> Rat {
    parse_scalar("3.14159265358979323846264338327950288419716939937511").unwrap()
}

/// (cos, sin) of 2π·k/n as 48-bit dyadic rationals.
///
/// The fraction is reduced to a quadrant, folded into [0, π/4], and the
/// series is truncated once terms drop below 2⁻⁸⁰; total error stays below
/// 2⁻⁴⁷ per component.
pub fn cos_sin_frac(k: i64, n: i64) -> (Rat, Rat) {
    assert!(n > 0);
    let k = k.rem_euclid(n);
    // u = k/n in [0,1); quadrant q and within-quadrant fraction v in [0,1).
    let q = (4 * k) / n;
    let rem = 4 * k - q * n; // v = rem/n
    // Fold to an angle ≤ π/4: v ≤ 1/2 directly, else the complement.
    let (c, s) = if 2 * rem <= n {
        let phi = pi() * rat(rem, 2 * n); // (π/2)·v
        cos_sin_small(&phi)
    } else {
        let phi = pi() * rat(n - rem, 2 * n); // (π/2)·(1−v)
        let (c0, s0) = cos_sin_small(&phi);
        (s0, c0)
    };
    let (cq, sq) = match q {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        3 => (s, -c),
        _ => unreachable!(),
    };
    (dyadic_round(&cq, COORD_BITS), dyadic_round(&sq, COORD_BITS))
}

/// Taylor series of (cos φ, sin φ) for 0 ≤ φ ≤ π/4, truncated below 2⁻⁸⁰.
fn cos_sin_small(phi: &Rat) -> (Rat, Rat) {
    // Round the angle itself to a dyadic first so term denominators stay
    // small; the induced error is below 2⁻⁹⁶.
    let x = dyadic_round(phi, 96);
    let x2 = &x * &x;
    let cutoff = Rat::new(BigInt::one(), BigInt::one() << 80);
    let mut cos_acc = Rat::one();
    let mut sin_acc = x.clone();
    // cos term: (−1)^i x^{2i}/(2i)!  /  sin term: (−1)^i x^{2i+1}/(2i+1)!
    let mut cterm = Rat::one();
    let mut sterm = x.clone();
    let mut i: i64 = 1;
    loop {
        cterm = -(cterm * &x2) / rat((2 * i - 1) * (2 * i), 1);
        sterm = -(sterm * &x2) / rat((2 * i) * (2 * i + 1), 1);
        cos_acc = cos_acc + &cterm;
        sin_acc = sin_acc + &sterm;
        if cterm.abs() < cutoff && sterm.abs() < cutoff {
            break;
        }
        i += 1;
    }
    (cos_acc, sin_acc)
}

fn point(x: Rat, y: Rat, z: Rat) -> Point3 {
    Point3::new(x, y, z)
}

/// The regular `n`-gon of circumradius 2 in the plane z = 0.
fn round_unknot(n: usize) -> Vec<Vec<Point3>> {
    let two = rat(2, 1);
    let ring = (0..n)
        .map(|k| {
            let (c, s) = cos_sin_frac(k as i64, n as i64);
            point(&two * c, &two * s, Rat::zero())
        })
        .collect();
    vec![ring]
}

/// The (2,3) torus knot ((2+cos 3u)·cos 2u, (2+cos 3u)·sin 2u, sin 3u).
fn trefoil(n: usize) -> Vec<Vec<Point3>> {
    let two = rat(2, 1);
    let ring = (0..n)
        .map(|k| {
            let (c3, s3) = cos_sin_frac(3 * k as i64, n as i64);
            let (c2, s2) = cos_sin_frac(2 * k as i64, n as i64);
            let r = &two + c3;
            point(&r * c2, &r * s2, s3)
        })
        .collect();
    vec![ring]
}

/// The figure-eight knot ((2+cos 2u)·cos 3u, (2+cos 2u)·sin 3u, sin 4u).
fn figure_eight(n: usize) -> Vec<Vec<Point3>> {
    let two = rat(2, 1);
    let ring = (0..n)
        .map(|k| {
            let (c2, _) = cos_sin_frac(2 * k as i64, n as i64);
            let (c3, s3) = cos_sin_frac(3 * k as i64, n as i64);
            let (_, s4) = cos_sin_frac(4 * k as i64, n as i64);
            let r = &two + c2;
            point(&r * c3, &r * s3, s4)
        })
        .collect();
    vec![ring]
}

/// Two unit circles in perpendicular planes, each through the other's
/// center: the standard Hopf configuration.
fn hopf(n: usize) -> Vec<Vec<Point3>> {
    let a = (0..n)
        .map(|k| {
            let (c, s) = cos_sin_frac(k as i64, n as i64);
            point(c, s, Rat::zero())
        })
        .collect();
    let b = (0..n)
        .map(|k| {
            let (c, s) = cos_sin_frac(k as i64, n as i64);
            point(Rat::one() + c, Rat::zero(), s)
        })
        .collect();
    vec![a, b]
}

/// Whitehead link: component A is a circle of radius 13/10 in the plane
/// y = 1/2; component B is a figure-eight space curve
/// (sin 2u, sin u, cos(u)/2) whose upper lobe threads A twice in opposite
/// directions, with the self-crossing of B acting as the clasp.
fn whitehead(n: usize) -> Vec<Vec<Point3>> {
    let r = rat(13, 10);
    let half = rat(1, 2);
    let a = (0..n)
        .map(|k| {
            let (c, s) = cos_sin_frac(k as i64, n as i64);
            point(&r * c, half.clone(), &r * s)
        })
        .collect();
    let b = (0..n)
        .map(|k| {
            let (c1, s1) = cos_sin_frac(k as i64, n as i64);
            let (_, s2) = cos_sin_frac(2 * k as i64, n as i64);
            point(s2, s1, &half * c1)
        })
        .collect();
    vec![a, b]
}

/// Borromean rings: the three ellipses x²/4 + y² = 1, y²/4 + z² = 1,
/// z²/4 + x² = 1 in the coordinate planes. Each pair is unlinked; the
/// triple is not splittable.
fn borromean(n: usize) -> Vec<Vec<Point3>> {
    let two = rat(2, 1);
    let mk = |axis: usize| -> Vec<Point3> {
        (0..n)
            .map(|k| {
                let (c, s) = cos_sin_frac(k as i64, n as i64);
                let major = &two * c;
                let minor = s;
                match axis {
                    0 => point(major, minor, Rat::zero()),
                    1 => point(Rat::zero(), major, minor),
                    _ => point(minor, Rat::zero(), major),
                }
            })
            .collect()
    };
    vec![mk(0), mk(1), mk(2)]
}

/// Build a preset by name with `n` vertices per parametrized component.
///
/// Geometry depends only on `(name, n)`; the seed is accepted for interface
/// symmetry with the perturbation pipeline and recorded by callers, never
/// used here.
pub fn preset(name: &str, n: usize, _seed: u64) -> Result<PolyLink, LinkError> {
    let entry = PRESETS
        .iter()
        .find(|(p, _, _)| *p == name)
        .ok_or_else(|| LinkError::UnknownPreset(name.to_string()))?;
    if n < entry.1 {
        return Err(LinkError::TooFewEdges { name: name.to_string(), min: entry.1, got: n });
    }
    let components = match name {
        "round_unknot" => round_unknot(n),
        "trefoil_t23" => trefoil(n),
        "figure_eight" => figure_eight(n),
        "hopf" => hopf(n),
        "whitehead" => whitehead(n),
        "borromean" => borromean(n),
        _ => unreachable!(),
    };
    PolyLink::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_to_f64;

    #[test]
    fn trig_matches_f64() {
        for n in [5i64, 7, 16, 60] {
            for k in 0..n {
                let (c, s) = cos_sin_frac(k, n);
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
                assert!((rat_to_f64(&c) - theta.cos()).abs() < 1e-12, "cos {k}/{n}");
                assert!((rat_to_f64(&s) - theta.sin()).abs() < 1e-12, "sin {k}/{n}");
            }
        }
    }

    #[test]
    fn trig_pythagoras_nearly_exact() {
        let (c, s) = cos_sin_frac(3, 7);
        let r2 = &c * &c + &s * &s;
        let err = rat_to_f64(&(r2 - Rat::one()));
        assert!(err.abs() < 1e-13);
    }

    #[test]
    fn quadrant_symmetries() {
        let n = 12;
        for k in 0..n {
            let (c, s) = cos_sin_frac(k, n);
            let (c2, s2) = cos_sin_frac(k + n / 4, n);
            // rotating a quarter turn: (c,s) -> (-s, c)
            assert_eq!(c2, -s.clone());
            assert_eq!(s2, c);
        }
    }

    #[test]
    fn all_presets_build_and_validate() {
        for (name, min, _) in PRESETS {
            let link = preset(name, *min, 0).unwrap();
            assert!(link.num_components() >= 1);
            let bigger = preset(name, min + 9, 0).unwrap();
            assert_eq!(bigger.num_components(), link.num_components());
        }
        assert!(matches!(preset("nope", 10, 0), Err(LinkError::UnknownPreset(_))));
        assert!(matches!(preset("trefoil_t23", 5, 0), Err(LinkError::TooFewEdges { .. })));
    }

    #[test]
    fn round_unknot_is_strictly_convex_planar() {
        let link = preset("round_unknot", 16, 0).unwrap();
        let ring = link.component(0);
        let n = ring.len();
        for v in ring {
            assert!(v.z.is_zero());
        }
        // strict convexity: every consecutive edge pair turns the same way
        for i in 0..n {
            let a = &ring[i];
            let b = &ring[(i + 1) % n];
            let c = &ring[(i + 2) % n];
            let cross = (&b.x - &a.x) * (&c.y - &b.y) - (&b.y - &a.y) * (&c.x - &b.x);
            assert!(cross.is_positive(), "reflex corner at {i}");
        }
    }

    #[test]
    fn preset_is_deterministic() {
        let a = preset("trefoil_t23", 40, 0).unwrap();
        let b = preset("trefoil_t23", 40, 7).unwrap();
        assert_eq!(a.component(0), b.component(0));
    }
}
