//! Explicit algebraic surfaces bounding knotted and linked solid tori,
//! and the degree-8 verification pipeline.
//!
//! A torus of radii r₁ > r₂ is the zero set of the quartic
//!
//! ```text
//! (x² + y² + z² + r₁² − r₂²)² − 4 r₁² (x² + y²)
//! ```
//!
//! (squaring `(√(x²+y²) − r₁)² + z² = r₂²` once; the inner sign on r₁² is
//! forced by the outer equator point (r₁+r₂, 0, 0), which must vanish).
//! Multiplying two such quartics, the second moved by an exact rational
//! quarter turn and a translation by r₁ so the core circles form a Hopf
//! link, gives a degree-8 surface bounding two linked solid tori. A line
//! crossing both solid tori twice meets the surface in at least 8 points
//! counted with multiplicity, so no polynomial of degree < 8 can vanish
//! on such a configuration; [`verify_degree_bound`] runs that argument
//! with exact Sturm counting and reports the implied bound.

use crate::algebra::{count_with_multiplicity, AlgebraError, TriPoly, UniPoly};
use crate::exact::{rat, rat_to_f64, Rat};
use crate::geom::{Dir3, PluckerLine, Point3};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("torus radii must satisfy r1 > r2 > 0, got r1 = {r1}, r2 = {r2}")]
    BadRadii { r1: String, r2: String },
    #[error("pose rotation determinant {det} is not within 1e-12 of 1")]
    BadPose { det: f64 },
    #[error("zero quaternion does not define a rotation")]
    ZeroQuaternion,
    #[error(
        "linked pair requires r1 > 2 r2 (minimum core distance r1 must \
         exceed the tube diameter), got r1 = {r1}, r2 = {r2}"
    )]
    ToriTooClose { r1: String, r2: String },
    #[error("line direction is zero")]
    ZeroDirection,
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A rational rigid-motion approximation: a rotation matrix with
/// rational entries and determinant within 10⁻¹² of 1, plus a rational
/// translation. Quaternion-derived poses are exactly orthogonal with
/// determinant exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pose {
    pub rotation: [[Rat; 3]; 3],
    pub translation: Dir3,
}

impl Pose {
    pub fn identity() -> Pose {
        let r = |i: usize, j: usize| if i == j { Rat::one() } else { Rat::zero() };
        Pose {
            rotation: [
                [r(0, 0), r(0, 1), r(0, 2)],
                [r(1, 0), r(1, 1), r(1, 2)],
                [r(2, 0), r(2, 1), r(2, 2)],
            ],
            translation: Dir3::zero(),
        }
    }

    /// Exactly orthogonal rational rotation from an integer quaternion
    /// (a, b, c, d) — the Pythagorean-quadruple parametrization of
    /// SO(3) ∩ GL₃(ℚ). Determinant is exactly 1.
    pub fn from_quaternion(a: i64, b: i64, c: i64, d: i64) -> Result<Pose, SurfaceError> {
        let n = a * a + b * b + c * c + d * d;
        if n == 0 {
            return Err(SurfaceError::ZeroQuaternion);
        }
        let e = |num: i64| rat(num, n);
        let rotation = [
            [
                e(a * a + b * b - c * c - d * d),
                e(2 * (b * c - a * d)),
                e(2 * (b * d + a * c)),
            ],
            [
                e(2 * (b * c + a * d)),
                e(a * a - b * b + c * c - d * d),
                e(2 * (c * d - a * b)),
            ],
            [
                e(2 * (b * d - a * c)),
                e(2 * (c * d + a * b)),
                e(a * a - b * b - c * c + d * d),
            ],
        ];
        Ok(Pose { rotation, translation: Dir3::zero() })
    }

    /// Quarter turn about the x-axis: (x, y, z) ↦ (x, −z, y).
    pub fn quarter_turn_x() -> Pose {
        Pose::from_quaternion(1, 1, 0, 0).expect("nonzero quaternion")
    }

    pub fn translated(mut self, t: Dir3) -> Pose {
        self.translation = t;
        self
    }

    pub fn det(&self) -> Rat {
        let m = &self.rotation;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Map a body-frame point into world coordinates: R·p + t.
    pub fn apply(&self, p: &Point3) -> Point3 {
        let m = &self.rotation;
        let row = |i: usize| {
            &m[i][0] * &p.x + &m[i][1] * &p.y + &m[i][2] * &p.z
        };
        Point3::new(
            row(0) + &self.translation.x,
            row(1) + &self.translation.y,
            row(2) + &self.translation.z,
        )
    }

    /// Exact inverse of the rotation block (adjugate over determinant);
    /// equals the transpose exactly for orthogonal poses but stays exact
    /// for merely near-orthogonal ones.
    fn rotation_inverse(&self) -> [[Rat; 3]; 3] {
        let m = &self.rotation;
        let det = self.det();
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        // Adjugate: transpose of the cofactor matrix.
        [
            [
                cof(1, 2, 1, 2) / &det,
                -cof(0, 2, 1, 2) / &det,
                cof(0, 1, 1, 2) / &det,
            ],
            [
                -cof(1, 2, 0, 2) / &det,
                cof(0, 2, 0, 2) / &det,
                -cof(0, 1, 0, 2) / &det,
            ],
            [
                cof(1, 2, 0, 1) / &det,
                -cof(0, 2, 0, 1) / &det,
                cof(0, 1, 0, 1) / &det,
            ],
        ]
    }
}

/// A torus of radii r₁ > r₂ > 0 under a rational pose.
#[derive(Clone, Debug)]
pub struct TorusSpec {
    pub r1: Rat,
    pub r2: Rat,
    pub pose: Pose,
}

impl TorusSpec {
    pub fn new(r1: Rat, r2: Rat, pose: Pose) -> Result<TorusSpec, SurfaceError> {
        if !(r1 > r2 && r2.is_positive()) {
            return Err(SurfaceError::BadRadii {
                r1: r1.to_string(),
                r2: r2.to_string(),
            });
        }
        let det = pose.det();
        let off = &det - Rat::one();
        if off.abs() > rat(1, 1_000_000_000_000) {
            return Err(SurfaceError::BadPose { det: rat_to_f64(&det) });
        }
        Ok(TorusSpec { r1, r2, pose })
    }
}

/// Sixteen rational points exactly on the posed torus: a 4×4 grid of
/// tangent-half-angle parameters (cos, sin) = ((1−t²)/(1+t²), 2t/(1+t²)),
/// mapped through the pose. Used to certify [`torus_quartic`].
pub fn torus_sample_points(spec: &TorusSpec) -> Vec<Point3> {
    let half_tans = [rat(0, 1), rat(1, 1), rat(1, 2), rat(-1, 3)];
    let cos_sin = |t: &Rat| {
        let t2 = t * t;
        let den = rat(1, 1) + &t2;
        ((rat(1, 1) - &t2) / &den, (rat(2, 1) * t) / &den)
    };
    let mut points = Vec::with_capacity(16);
    for tt in &half_tans {
        let (ct, st) = cos_sin(tt);
        for tp in &half_tans {
            let (cp, sp) = cos_sin(tp);
            let ring = &spec.r1 + &spec.r2 * &cp;
            let body = Point3::new(&ring * &ct, &ring * &st, &spec.r2 * &sp);
            points.push(spec.pose.apply(&body));
        }
    }
    points
}

/// The degree-4 polynomial vanishing on the torus of `spec`, built by
/// exact substitution of the inverse pose into the body-frame quartic.
/// Certified on construction: all sixteen [`torus_sample_points`]
/// evaluate to exactly zero.
pub fn torus_quartic(spec: &TorusSpec) -> TriPoly {
    let inv = spec.pose.rotation_inverse();
    let t = &spec.pose.translation;
    let shifted = [
        TriPoly::var(0).sub(&TriPoly::constant(t.x.clone())),
        TriPoly::var(1).sub(&TriPoly::constant(t.y.clone())),
        TriPoly::var(2).sub(&TriPoly::constant(t.z.clone())),
    ];
    // Body coordinates as linear polynomials in world coordinates.
    let body: Vec<TriPoly> = (0..3)
        .map(|i| {
            let mut acc = TriPoly::zero();
            for (j, s) in shifted.iter().enumerate() {
                acc = acc.add(&s.scale(&inv[i][j]));
            }
            acc
        })
        .collect();
    let planar2 = body[0].mul(&body[0]).add(&body[1].mul(&body[1]));
    let radial2 = planar2.add(&body[2].mul(&body[2]));
    let r1sq = &spec.r1 * &spec.r1;
    let inner = radial2.add(&TriPoly::constant(&r1sq - &spec.r2 * &spec.r2));
    let quartic = inner.mul(&inner).sub(&planar2.scale(&(rat(4, 1) * &r1sq)));
    for p in torus_sample_points(spec) {
        assert!(
            quartic.eval(&p).is_zero(),
            "torus quartic must vanish on its own sample points"
        );
    }
    quartic
}

/// The canonical pose of the second torus of a linked pair: a quarter
/// turn about the x-axis followed by a translation by r₁ along x. The
/// two core circles then pass through each other's centers — a Hopf
/// link — and the minimum distance between them is exactly r₁.
pub fn linked_partner_pose(r1: &Rat) -> Pose {
    Pose::quarter_turn_x().translated(Dir3::new(r1.clone(), Rat::zero(), Rat::zero()))
}

/// Product of two torus quartics in the canonical Hopf-linked
/// configuration. Requires r₁ > 2 r₂: the cores are at distance r₁, so
/// the closed tubes of radius r₂ are disjoint exactly when r₁ > 2 r₂.
/// The product has total degree exactly 8 (the leading forms
/// (x²+y²+z²)² of both factors are positive definite, so no
/// cancellation can lower the degree).
pub fn linked_pair_surface(r1: &Rat, r2: &Rat) -> Result<TriPoly, SurfaceError> {
    if *r1 <= rat(2, 1) * r2 {
        return Err(SurfaceError::ToriTooClose {
            r1: r1.to_string(),
            r2: r2.to_string(),
        });
    }
    let first = TorusSpec::new(r1.clone(), r2.clone(), Pose::identity())?;
    let second = TorusSpec::new(r1.clone(), r2.clone(), linked_partner_pose(r1))?;
    let product = torus_quartic(&first).mul(&torus_quartic(&second));
    debug_assert_eq!(product.total_degree(), Some(8));
    Ok(product)
}

/// A line through both solid tori of every canonical linked pair: the
/// x-axis. It pierces the first torus at x = ±(r₁±r₂) and the second at
/// x = ±r₂ and x = 2r₁ ∓ r₂ — eight crossings, all simple.
pub fn piercing_line() -> (Point3, Dir3) {
    (Point3::origin(), Dir3::ints(1, 0, 0))
}

/// The outcome of the degree-bound argument for one surface and line.
#[derive(Clone, Debug)]
pub struct Degree8Report {
    pub surface: TriPoly,
    pub anchor: Point3,
    pub line: PluckerLine,
    pub restricted: UniPoly,
    /// Real roots of the restriction counted with multiplicity; `None`
    /// when the restriction is identically zero (line inside surface).
    pub root_count: Option<usize>,
    /// The implied lower bound on the surface degree; asserted only for
    /// a nonzero restriction.
    pub implied_degree_bound: Option<usize>,
}

impl Degree8Report {
    /// True when the line lies inside the surface and no bound follows.
    pub fn is_flagged(&self) -> bool {
        self.restricted.is_zero()
    }
}

/// Restrict the surface to the line and count real roots with
/// multiplicity by exact Sturm chains. A zero restriction (the line lies
/// in the surface) is flagged with no claimed bound. Emitted reports
/// satisfy root_count ≤ deg(restriction) ≤ total degree of the surface.
pub fn verify_degree_bound(
    surface: &TriPoly,
    anchor: &Point3,
    direction: &Dir3,
) -> Result<Degree8Report, SurfaceError> {
    if direction.is_zero() {
        return Err(SurfaceError::ZeroDirection);
    }
    let restricted = surface.restrict_to_line(anchor, direction);
    let line = PluckerLine {
        direction: direction.clone(),
        moment: anchor.as_dir().cross(direction),
    };
    let (root_count, implied_degree_bound) = if restricted.is_zero() {
        (None, None)
    } else {
        let count = count_with_multiplicity(&restricted)?;
        let rdeg = restricted.degree().unwrap_or(0);
        let sdeg = surface.total_degree().unwrap_or(0) as usize;
        if count > rdeg || rdeg > sdeg {
            return Err(SurfaceError::Inconsistent(format!(
                "root count {count} vs restriction degree {rdeg} vs surface degree {sdeg}"
            )));
        }
        (Some(count), Some(count))
    };
    Ok(Degree8Report {
        surface: surface.clone(),
        anchor: anchor.clone(),
        line,
        restricted,
        root_count,
        implied_degree_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec_2_half() -> TorusSpec {
        TorusSpec::new(rat(2, 1), rat(1, 2), Pose::identity()).unwrap()
    }

    #[test]
    fn radii_and_pose_validation() {
        assert!(matches!(
            TorusSpec::new(rat(1, 2), rat(2, 1), Pose::identity()),
            Err(SurfaceError::BadRadii { .. })
        ));
        assert!(matches!(
            TorusSpec::new(rat(2, 1), rat(0, 1), Pose::identity()),
            Err(SurfaceError::BadRadii { .. })
        ));
        let mut stretched = Pose::identity();
        stretched.rotation[0][0] = rat(2, 1);
        assert!(matches!(
            TorusSpec::new(rat(2, 1), rat(1, 2), stretched),
            Err(SurfaceError::BadPose { .. })
        ));
        assert!(matches!(
            Pose::from_quaternion(0, 0, 0, 0),
            Err(SurfaceError::ZeroQuaternion)
        ));
    }

    #[test]
    fn quaternion_rotations_are_exactly_orthogonal() {
        for (a, b, c, d) in [(1, 1, 0, 0), (2, 1, 0, 0), (1, 2, 3, 4), (3, 1, -2, 5)] {
            let pose = Pose::from_quaternion(a, b, c, d).unwrap();
            assert_eq!(pose.det(), Rat::one());
            let m = &pose.rotation;
            for i in 0..3 {
                for j in 0..3 {
                    let dot = (0..3).map(|k| &m[k][i] * &m[k][j]).sum::<Rat>();
                    let expect = if i == j { Rat::one() } else { Rat::zero() };
                    assert_eq!(dot, expect, "column {i}·{j}");
                }
            }
        }
        let q = Pose::quarter_turn_x();
        assert_eq!(q.apply(&Point3::ints(0, 1, 0)), Point3::ints(0, 0, 1));
        assert_eq!(q.apply(&Point3::ints(0, 0, 1)), Point3::ints(0, -1, 0));
    }

    #[test]
    fn torus_quartic_vanishes_on_equator_not_on_axis() {
        let q = torus_quartic(&spec_2_half());
        assert_eq!(q.total_degree(), Some(4));
        assert!(q.eval(&Point3::new(rat(5, 2), rat(0, 1), rat(0, 1))).is_zero());
        assert!(q.eval(&Point3::new(rat(3, 2), rat(0, 1), rat(0, 1))).is_zero());
        assert!(!q.eval(&Point3::origin()).is_zero());
        for p in torus_sample_points(&spec_2_half()) {
            assert!(q.eval(&p).is_zero());
        }
    }

    #[test]
    fn posed_torus_still_vanishes_exactly() {
        let pose = Pose::from_quaternion(1, 2, 3, 4)
            .unwrap()
            .translated(Dir3::new(rat(7, 3), rat(-1, 5), rat(2, 1)));
        let spec = TorusSpec::new(rat(3, 1), rat(2, 3), pose).unwrap();
        let q = torus_quartic(&spec);
        assert_eq!(q.total_degree(), Some(4));
        for p in torus_sample_points(&spec) {
            assert!(q.eval(&p).is_zero(), "sample must vanish under exact pose");
        }
    }

    #[test]
    fn torus_on_x_axis_has_the_four_classical_roots() {
        let q = torus_quartic(&spec_2_half());
        let (anchor, dir) = piercing_line();
        let restricted = q.restrict_to_line(&anchor, &dir);
        let expected = UniPoly::from_roots(&[rat(5, 2), rat(-5, 2), rat(3, 2), rat(-3, 2)]);
        assert_eq!(restricted, expected);
        assert_eq!(count_with_multiplicity(&restricted).unwrap(), 4);
    }

    #[test]
    fn linked_pair_requires_separated_tubes() {
        assert!(matches!(
            linked_pair_surface(&rat(1, 1), &rat(1, 2)),
            Err(SurfaceError::ToriTooClose { .. })
        ));
        assert!(matches!(
            linked_pair_surface(&rat(2, 1), &rat(1, 1)),
            Err(SurfaceError::ToriTooClose { .. })
        ));
        assert!(linked_pair_surface(&rat(2, 1), &rat(1, 2)).is_ok());
    }

    #[test]
    fn linked_pair_has_degree_exactly_eight_and_vanishes_on_both_tori() {
        let surface = linked_pair_surface(&rat(2, 1), &rat(1, 2)).unwrap();
        assert_eq!(surface.total_degree(), Some(8));
        let first = spec_2_half();
        let second =
            TorusSpec::new(rat(2, 1), rat(1, 2), linked_partner_pose(&rat(2, 1))).unwrap();
        for p in torus_sample_points(&first)
            .into_iter()
            .chain(torus_sample_points(&second))
        {
            assert!(surface.eval(&p).is_zero());
        }
    }

    #[test]
    fn x_axis_restriction_has_eight_simple_roots() {
        let surface = linked_pair_surface(&rat(2, 1), &rat(1, 2)).unwrap();
        let (anchor, dir) = piercing_line();
        let restricted = surface.restrict_to_line(&anchor, &dir);
        // First factor: ±(r1±r2); second: ±r2 and 2r1 ∓ r2.
        let expected = UniPoly::from_roots(&[
            rat(5, 2),
            rat(-5, 2),
            rat(3, 2),
            rat(-3, 2),
            rat(1, 2),
            rat(-1, 2),
            rat(7, 2),
            rat(9, 2),
        ]);
        assert_eq!(restricted, expected);
    }

    #[test]
    fn degree_bound_report_for_the_linked_pair() {
        let surface = linked_pair_surface(&rat(2, 1), &rat(1, 2)).unwrap();
        let (anchor, dir) = piercing_line();
        let report = verify_degree_bound(&surface, &anchor, &dir).unwrap();
        assert!(!report.is_flagged());
        assert_eq!(report.root_count, Some(8));
        assert_eq!(report.implied_degree_bound, Some(8));
        assert_eq!(report.restricted.degree(), Some(8));
        assert!(report.line.plucker_residual().is_zero());
        let rc = report.root_count.unwrap();
        let rdeg = report.restricted.degree().unwrap();
        let sdeg = report.surface.total_degree().unwrap() as usize;
        assert!(rc <= rdeg && rdeg <= sdeg);
    }

    #[test]
    fn sphere_secant_yields_bound_two() {
        let sphere = TriPoly::var(0)
            .mul(&TriPoly::var(0))
            .add(&TriPoly::var(1).mul(&TriPoly::var(1)))
            .add(&TriPoly::var(2).mul(&TriPoly::var(2)))
            .sub(&TriPoly::constant(Rat::one()));
        let report =
            verify_degree_bound(&sphere, &Point3::origin(), &Dir3::ints(1, 0, 0)).unwrap();
        assert_eq!(report.root_count, Some(2));
        assert_eq!(report.implied_degree_bound, Some(2));
    }

    #[test]
    fn line_inside_plane_is_flagged_without_bound() {
        let plane = TriPoly::var(2);
        let report =
            verify_degree_bound(&plane, &Point3::origin(), &Dir3::ints(1, 0, 0)).unwrap();
        assert!(report.is_flagged());
        assert_eq!(report.root_count, None);
        assert_eq!(report.implied_degree_bound, None);
        assert!(matches!(
            verify_degree_bound(&plane, &Point3::origin(), &Dir3::zero()),
            Err(SurfaceError::ZeroDirection)
        ));
    }

    #[test]
    fn misprinted_inner_sign_fails_at_the_outer_equator() {
        // The form with −r1² in the inner term does not contain the
        // outer equator point (r1 + r2, 0, 0); the +r1² form does. This
        // pins the sign convention used by `torus_quartic`.
        let r1 = rat(2, 1);
        let r2 = rat(1, 2);
        let p = Point3::new(&r1 + &r2, rat(0, 1), rat(0, 1));
        let sq = |v: &Rat| v * v;
        let planar = sq(&p.x) + sq(&p.y);
        let radial = &planar + sq(&p.z);
        let good = sq(&(&radial + sq(&r1) - sq(&r2))) - rat(4, 1) * sq(&r1) * &planar;
        let bad = sq(&(&radial - sq(&r1) - sq(&r2))) - rat(4, 1) * sq(&r1) * &planar;
        assert!(good.is_zero());
        assert!(!bad.is_zero());
    }
}
