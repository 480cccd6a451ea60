//! Exact 3D predicates and line representations.
//!
//! Coordinates are arbitrary-precision rationals, so every predicate here
//! is decided exactly; hardware floating point appears only inside
//! [`orient3d_sign`] as a conservative prefilter that escalates to the
//! rational path whenever its error interval straddles zero. Directions
//! are kept unnormalized (no square roots) and compared projectively.

use crate::exact::{Iv, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// A point of 3-space with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

/// An unnormalized direction (or displacement) vector; never the zero
/// vector when used as a line direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dir3 {
    pub x: Rat,
    pub y: Rat,
    pub z: Rat,
}

/// A closed straight segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment3 {
    pub a: Point3,
    pub b: Point3,
}

/// A line in Plücker coordinates: `moment = p × direction` for any point
/// `p` on the line. The Plücker relation `moment · direction = 0` holds by
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerLine {
    pub direction: Dir3,
    pub moment: Dir3,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("degenerate secant: the two points coincide")]
    DegenerateSecant,
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Point3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Point3 {
        Point3 { x, y, z }
    }

    /// Integer-coordinate constructor, mostly for tests and presets.
    pub fn ints(x: i64, y: i64, z: i64) -> Point3 {
        Point3::new(Rat::from_integer(x.into()), Rat::from_integer(y.into()), Rat::from_integer(z.into()))
    }

    pub fn origin() -> Point3 {
        Point3::ints(0, 0, 0)
    }

    /// Displacement `self − other`.
    pub fn sub(&self, other: &Point3) -> Dir3 {
        Dir3 { x: &self.x - &other.x, y: &self.y - &other.y, z: &self.z - &other.z }
    }

    pub fn add_dir(&self, d: &Dir3) -> Point3 {
        Point3 { x: &self.x + &d.x, y: &self.y + &d.y, z: &self.z + &d.z }
    }

    /// `self + t·d`.
    pub fn translate(&self, d: &Dir3, t: &Rat) -> Point3 {
        Point3 { x: &self.x + &d.x * t, y: &self.y + &d.y * t, z: &self.z + &d.z * t }
    }

    pub fn dist2(&self, other: &Point3) -> Rat {
        self.sub(other).norm2()
    }

    /// Position vector as a direction.
    pub fn as_dir(&self) -> Dir3 {
        Dir3 { x: self.x.clone(), y: self.y.clone(), z: self.z.clone() }
    }
}

impl Dir3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Dir3 {
        Dir3 { x, y, z }
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Dir3 {
        Dir3::new(Rat::from_integer(x.into()), Rat::from_integer(y.into()), Rat::from_integer(z.into()))
    }

    pub fn zero() -> Dir3 {
        Dir3::ints(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Dir3) -> Rat {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Dir3) -> Dir3 {
        Dir3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rat) -> Dir3 {
        Dir3 { x: &self.x * k, y: &self.y * k, z: &self.z * k }
    }

    pub fn add(&self, other: &Dir3) -> Dir3 {
        Dir3 { x: &self.x + &other.x, y: &self.y + &other.y, z: &self.z + &other.z }
    }

    pub fn sub(&self, other: &Dir3) -> Dir3 {
        Dir3 { x: &self.x - &other.x, y: &self.y - &other.y, z: &self.z - &other.z }
    }

    pub fn neg(&self) -> Dir3 {
        Dir3 { x: -&self.x, y: -&self.y, z: -&self.z }
    }

    /// Projective equality: same line direction, either orientation.
    pub fn parallel(&self, other: &Dir3) -> bool {
        self.cross(other).is_zero()
    }

    /// Same direction including orientation (projective equality plus a
    /// positive dot product).
    pub fn same_ray(&self, other: &Dir3) -> bool {
        self.parallel(other) && self.dot(other).is_positive()
    }

    /// Canonical representative of the unoriented direction: divide by the
    /// first nonzero coordinate. Panics on the zero vector.
    pub fn projective_normal_form(&self) -> (Rat, Rat, Rat) {
        let lead = if !self.x.is_zero() {
            self.x.clone()
        } else if !self.y.is_zero() {
            self.y.clone()
        } else {
            assert!(!self.z.is_zero(), "projective form of zero vector");
            self.z.clone()
        };
        (&self.x / &lead, &self.y / &lead, &self.z / &lead)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            crate::exact::rat_to_f64(&self.x),
            crate::exact::rat_to_f64(&self.y),
            crate::exact::rat_to_f64(&self.z),
        ]
    }
}

impl Segment3 {
    pub fn new(a: Point3, b: Point3) -> Result<Segment3, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment3 { a, b })
    }

    pub fn direction(&self) -> Dir3 {
        self.b.sub(&self.a)
    }

    /// Point at parameter `t` (0 ↦ a, 1 ↦ b).
    pub fn point_at(&self, t: &Rat) -> Point3 {
        self.a.translate(&self.direction(), t)
    }

    pub fn line(&self) -> PluckerLine {
        line_through(&self.a, &self.b).expect("segment endpoints distinct")
    }
}

/// Exact signed volume-form determinant of four points: the 3×3 determinant
/// with rows q−p, r−p, s−p (raw convention, so the unit tetrahedron gives 1).
/// Zero iff the points are coplanar; the sign flips under odd permutations.
pub fn orient3d(p: &Point3, q: &Point3, r: &Point3, s: &Point3) -> Rat {
    let u = q.sub(p);
    let v = r.sub(p);
    let w = s.sub(p);
    det3(&u, &v, &w)
}

/// Determinant of three direction rows.
pub fn det3(u: &Dir3, v: &Dir3, w: &Dir3) -> Rat {
    u.dot(&v.cross(w))
}

/// Sign of [`orient3d`] with a floating-point interval prefilter; the
/// exact rational path runs only when the interval straddles zero.
pub fn orient3d_sign(p: &Point3, q: &Point3, r: &Point3, s: &Point3) -> Ordering {
    let iv = |a: &Rat, b: &Rat| Iv::from_rat(a) - Iv::from_rat(b);
    let u = [iv(&q.x, &p.x), iv(&q.y, &p.y), iv(&q.z, &p.z)];
    let v = [iv(&r.x, &p.x), iv(&r.y, &p.y), iv(&r.z, &p.z)];
    let w = [iv(&s.x, &p.x), iv(&s.y, &p.y), iv(&s.z, &p.z)];
    let det = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0]);
    if let Some(s) = det.certain_sign() {
        return match s {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        };
    }
    orient3d(p, q, r, s).cmp(&Rat::zero())
}

/// True iff the three points lie on one line (including repeated points).
pub fn collinear3(p: &Point3, q: &Point3, r: &Point3) -> bool {
    q.sub(p).cross(&r.sub(p)).is_zero()
}

/// The line through two distinct points.
pub fn line_through(p: &Point3, q: &Point3) -> Result<PluckerLine, GeomError> {
    if p == q {
        return Err(GeomError::DegenerateSecant);
    }
    let direction = q.sub(p);
    let moment = p.as_dir().cross(&direction);
    Ok(PluckerLine { direction, moment })
}

impl PluckerLine {
    /// `moment · direction`, exactly zero for every well-formed line.
    pub fn plucker_residual(&self) -> Rat {
        self.moment.dot(&self.direction)
    }

    /// A point lies on the line iff its moment against the direction equals
    /// the line's moment.
    pub fn contains_point(&self, p: &Point3) -> bool {
        p.as_dir().cross(&self.direction) == self.moment
    }

    /// Canonical form of the projective 6-tuple: every component divided by
    /// the first nonzero direction component. Two `PluckerLine` values
    /// describe the same unoriented line iff their canonical tuples agree.
    pub fn canonical_tuple(&self) -> [Rat; 6] {
        let d = &self.direction;
        let lead = if !d.x.is_zero() {
            &d.x
        } else if !d.y.is_zero() {
            &d.y
        } else {
            &d.z
        };
        [
            &d.x / lead,
            &d.y / lead,
            &d.z / lead,
            &self.moment.x / lead,
            &self.moment.y / lead,
            &self.moment.z / lead,
        ]
    }

    /// Same unoriented line.
    pub fn same_line(&self, other: &PluckerLine) -> bool {
        self.canonical_tuple() == other.canonical_tuple()
    }

    /// The point of the line closest to the origin (rational since no
    /// normalization is needed): `(direction × moment) / |direction|²`.
    pub fn anchor(&self) -> Point3 {
        let n2 = self.direction.norm2();
        let d = self.direction.cross(&self.moment);
        Point3::new(&d.x / &n2, &d.y / &n2, &d.z / &n2)
    }
}

/// Reciprocal product of two lines: `(d1 × d2) · (p1 − p2)` in point form,
/// computed from the Plücker data as `d1·m2 + d2·m1`. Exactly zero iff the
/// lines are coplanar (they meet or are parallel).
pub fn side_product(l1: &PluckerLine, l2: &PluckerLine) -> Rat {
    l1.direction.dot(&l2.moment) + l2.direction.dot(&l1.moment)
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegMeet {
    Disjoint,
    /// One common point, at parameter `s` on the first segment and `t` on
    /// the second (both in [0,1]).
    Point { s: Rat, t: Rat },
    /// Collinear segments sharing more than one point.
    Overlap,
}

/// Exact intersection classification of two closed segments.
pub fn segment_meet(s1: &Segment3, s2: &Segment3) -> SegMeet {
    let d1 = s1.direction();
    let d2 = s2.direction();
    let r = s2.a.sub(&s1.a);
    let n = d1.cross(&d2);
    if n.is_zero() {
        // Parallel lines.
        if !r.cross(&d1).is_zero() {
            return SegMeet::Disjoint;
        }
        // Collinear: compare parameter intervals along d1.
        let len2 = d1.norm2();
        let u0 = d1.dot(&r);
        let u1 = d1.dot(&s2.b.sub(&s1.a));
        let (lo, hi) = if u0 <= u1 { (u0, u1) } else { (u1, u0) };
        let zero = Rat::zero();
        if hi < zero || lo > len2 {
            return SegMeet::Disjoint;
        }
        if hi == zero {
            // touch at s1.a
            let t = if d1.dot(&r).is_zero() { Rat::zero() } else { Rat::one() };
            return SegMeet::Point { s: Rat::zero(), t };
        }
        if lo == len2 {
            let t = if d1.dot(&r) == len2 { Rat::zero() } else { Rat::one() };
            return SegMeet::Point { s: Rat::one(), t };
        }
        return SegMeet::Overlap;
    }
    // Non-parallel: coplanar iff the triple product vanishes.
    if !det3(&d1, &d2, &r).is_zero() {
        return SegMeet::Disjoint;
    }
    let n2 = n.norm2();
    let s = det3(&r, &d2, &n) / &n2;
    let t = det3(&r, &d1, &n) / &n2;
    let zero = Rat::zero();
    let one = Rat::one();
    if s >= zero && s <= one && t >= zero && t <= one {
        SegMeet::Point { s, t }
    } else {
        SegMeet::Disjoint
    }
}

/// Squared distance from a point to a closed segment, exact.
pub fn dist2_point_segment(p: &Point3, s: &Segment3) -> Rat {
    let d = s.direction();
    let len2 = d.norm2();
    let mut t = d.dot(&p.sub(&s.a)) / &len2;
    let zero = Rat::zero();
    let one = Rat::one();
    if t < zero {
        t = zero;
    } else if t > one {
        t = one;
    }
    p.dist2(&s.point_at(&t))
}

/// Squared distance between two closed segments, exact: the unconstrained
/// critical point when it lands in the unit square, plus the four
/// point–segment boundary cases.
pub fn dist2_segments(s1: &Segment3, s2: &Segment3) -> Rat {
    let d1 = s1.direction();
    let d2 = s2.direction();
    let r = s1.a.sub(&s2.a);
    let a = d1.norm2();
    let b = d1.dot(&d2);
    let c = d2.norm2();
    let e = d1.dot(&r);
    let f = d2.dot(&r);
    let det = &a * &c - &b * &b;
    let mut best: Option<Rat> = None;
    let mut consider = |v: Rat| match &mut best {
        Some(m) => {
            if v < *m {
                *m = v;
            }
        }
        None => best = Some(v),
    };
    if !det.is_zero() {
        let s = (&b * &f - &c * &e) / &det;
        let t = (&a * &f - &b * &e) / &det;
        let zero = Rat::zero();
        let one = Rat::one();
        if s >= zero && s <= one && t >= zero && t <= one {
            consider(s1.point_at(&s).dist2(&s2.point_at(&t)));
        }
    }
    consider(dist2_point_segment(&s1.a, s2));
    consider(dist2_point_segment(&s1.b, s2));
    consider(dist2_point_segment(&s2.a, s1));
    consider(dist2_point_segment(&s2.b, s1));
    best.expect("at least one candidate")
}
