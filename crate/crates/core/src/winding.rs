//! Winding invariants of closed trisecant families.
//!
//! For components K and H of a link, a closed family of trisecants — pairs
//! of endpoints on K with a middle point on H — carries an ordered pair of
//! winding numbers (ω₁, ω₂): ω₂ is the degree of the middle-point map
//! around H, and ω₁ counts the turning of the trisecant direction in the
//! plane perpendicular to H at the middle point. The perpendicular planes
//! form a circle bundle over H whose trivialization is not canonical; we
//! fix the discrete rotation-minimizing frame and report ω₁ relative to
//! it. Changing the frame by one of degree difference d changes ω₁ by
//! d·ω₂, so ω₁ is frame-independent exactly when ω₂ = 0 — the case that
//! matters for the obstruction argument.
//!
//! ω₂ is computed exactly: middle parameters are rationals, each cyclic
//! step contributes its minimal wrapped increment, and the total is an
//! integer identically when the family closes up. ω₁ accumulates projected
//! angles in floating point and must land within 10⁻⁶ of an integer.

use crate::exact::{rat, rat_to_f64, Rat};
use crate::geom::Dir3;
use crate::link::{LinkPoint, PolyLink};
use crate::obstruction::ObstructionAtlas;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WindingError {
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("component {component} has {got} edges; a normal frame needs at least 3")]
    TooFewEdges { component: usize, got: usize },
    #[error("family is empty")]
    EmptyFamily,
    #[error("frame is for component {frame}, family middles lie on component {family}")]
    ComponentMismatch { frame: usize, family: usize },
    #[error(
        "trisecant direction at record {index} is perpendicular to the frame \
         plane: projected angle undefined"
    )]
    DegenerateProjection { index: usize },
    #[error("winding accumulation is not an integer: defect {defect:.3e} turns")]
    NotInteger { defect: f64 },
}

/// One verified trisecant of a family: endpoints on K, middle on H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrisecantRecord {
    pub a: LinkPoint,
    pub b: LinkPoint,
    pub middle: LinkPoint,
}

/// A cyclic family of trisecants with endpoints on component `k` and
/// middle points on component `h`; consecutive records (including the
/// wrap from last to first) are continuity neighbors.
#[derive(Clone, Debug)]
pub struct TrisecantFamily {
    pub k: usize,
    pub h: usize,
    pub records: Vec<TrisecantRecord>,
}

/// Discrete normal frame along a component: per edge, an exactly
/// orthogonal pair of rational vectors perpendicular to the edge
/// direction, approximately unit length, transported by
/// rotation-minimizing projection from edge to edge.
#[derive(Clone, Debug)]
pub struct NormalFrame {
    pub component: usize,
    /// (u, v) per edge, ordered so that (tangent, u, v) is right-handed.
    pub frames: Vec<(Dir3, Dir3)>,
    /// Net rotation (in turns) by which the transported frame misses its
    /// starting position after one loop; reported, not corrected.
    pub holonomy_turns: f64,
}

/// Rescale to roughly unit length without leaving the rationals (dyadic
/// factor from a floating-point inverse square root); direction is
/// preserved exactly.
fn normalize_approx(d: &Dir3) -> Dir3 {
    let n2 = rat_to_f64(&d.norm2());
    if n2 <= 0.0 {
        return d.clone();
    }
    let s = 1.0 / n2.sqrt();
    match Rat::from_float(s) {
        Some(k) => d.scale(&k),
        None => d.clone(),
    }
}

/// Component of `u` perpendicular to `d`, exact.
fn reject(u: &Dir3, d: &Dir3) -> Dir3 {
    let coeff = u.dot(d) / d.norm2();
    u.sub(&d.scale(&coeff))
}

/// Build the discrete rotation-minimizing frame along component `h`.
///
/// The initial vector prefers the binormal of the first two edges, so a
/// planar polygon gets the plane normal as its first frame vector and the
/// transport fixes it exactly: planar holonomy is exactly zero.
pub fn build_normal_frame(link: &PolyLink, h: usize) -> Result<NormalFrame, WindingError> {
    if h >= link.num_components() {
        return Err(WindingError::BadComponent(h));
    }
    let n = link.component_len(h);
    if n < 3 {
        return Err(WindingError::TooFewEdges { component: h, got: n });
    }
    let dirs: Vec<Dir3> = (0..n)
        .map(|e| {
            link.edge_segment(crate::link::EdgeRef { component: h, edge: e }).direction()
        })
        .collect();
    let mut u = dirs[0].cross(&dirs[1]);
    if u.is_zero() {
        for axis in [Dir3::ints(1, 0, 0), Dir3::ints(0, 1, 0), Dir3::ints(0, 0, 1)] {
            u = dirs[0].cross(&axis);
            if !u.is_zero() {
                break;
            }
        }
    }
    u = normalize_approx(&u);
    let mut frames: Vec<(Dir3, Dir3)> = Vec::with_capacity(n);
    for (e, d) in dirs.iter().enumerate() {
        if e > 0 {
            let projected = reject(&u, d);
            u = if projected.is_zero() {
                // The tangent turned onto u itself; fall back to the
                // previous v, which is perpendicular to the old u.
                reject(&frames[e - 1].1, d)
            } else {
                projected
            };
            u = normalize_approx(&u);
        }
        let v = normalize_approx(&d.cross(&u));
        frames.push((u.clone(), v));
    }
    // Close the loop: transport once more onto edge 0 and compare.
    let closed = reject(&frames[n - 1].0, &dirs[0]);
    let (u0, v0) = &frames[0];
    let x = rat_to_f64(&closed.dot(u0));
    let y = rat_to_f64(&closed.dot(v0));
    let holonomy_turns = y.atan2(x) / std::f64::consts::TAU;
    Ok(NormalFrame { component: h, frames, holonomy_turns })
}

/// Exact re-verification of a family: every record's three points are
/// collinear with the middle strictly between, endpoints on `k`, middle
/// on `h`.
pub fn verify_family(link: &PolyLink, family: &TrisecantFamily) -> bool {
    family.records.iter().all(|r| {
        if r.a.component != family.k || r.b.component != family.k {
            return false;
        }
        if r.middle.component != family.h {
            return false;
        }
        let a = link.point_at(&r.a);
        let b = link.point_at(&r.b);
        let m = link.point_at(&r.middle);
        crate::geom::collinear3(&a, &b, &m) && m.sub(&a).dot(&m.sub(&b)).is_negative()
    })
}

/// Wrap a parameter difference to the minimal representative in
/// (-1/2, 1/2].
fn wrap_increment(d: &Rat) -> Rat {
    let shifted = d + rat(1, 2);
    let frac = &shifted - shifted.floor();
    frac - rat(1, 2)
}

/// Wrap an angle difference into (-π, π].
fn wrap_angle(mut step: f64) -> f64 {
    while step > std::f64::consts::PI {
        step -= std::f64::consts::TAU;
    }
    while step <= -std::f64::consts::PI {
        step += std::f64::consts::TAU;
    }
    step
}

/// Angle (radians) of each record's trisecant direction in the frame at
/// its middle point.
fn projected_angles(
    link: &PolyLink,
    family: &TrisecantFamily,
    frame: &NormalFrame,
) -> Result<Vec<f64>, WindingError> {
    let nh = link.component_len(family.h);
    let mut angles: Vec<f64> = Vec::with_capacity(family.records.len());
    for (i, r) in family.records.iter().enumerate() {
        let a = link.point_at(&r.a);
        let b = link.point_at(&r.b);
        let dir = b.sub(&a);
        let (u, v) = &frame.frames[r.middle.edge % nh];
        let x = dir.dot(u);
        let y = dir.dot(v);
        if x.is_zero() && y.is_zero() {
            return Err(WindingError::DegenerateProjection { index: i });
        }
        angles.push(rat_to_f64(&y).atan2(rat_to_f64(&x)));
    }
    Ok(angles)
}

/// The angle-accumulation profile of a family for plotting: one row per
/// record plus a closing row, each holding the middle point's circle
/// parameter, the frame angle of the trisecant direction in turns, and
/// the accumulated turning so far. The closing row repeats record 0; its
/// accumulated value is ω₁ for a well-formed closed family.
pub fn angle_profile(
    link: &PolyLink,
    family: &TrisecantFamily,
    frame: &NormalFrame,
) -> Result<Vec<(Rat, f64, f64)>, WindingError> {
    if family.records.is_empty() {
        return Err(WindingError::EmptyFamily);
    }
    if frame.component != family.h {
        return Err(WindingError::ComponentMismatch {
            frame: frame.component,
            family: family.h,
        });
    }
    let angles = projected_angles(link, family, frame)?;
    let m = angles.len();
    let param = |i: usize| link.circle_param(&family.records[i % m].middle);
    let mut rows = Vec::with_capacity(m + 1);
    let mut accumulated = 0.0f64;
    rows.push((param(0), angles[0] / std::f64::consts::TAU, 0.0));
    for i in 1..=m {
        accumulated += wrap_angle(angles[i % m] - angles[i - 1]);
        rows.push((
            param(i),
            angles[i % m] / std::f64::consts::TAU,
            accumulated / std::f64::consts::TAU,
        ));
    }
    Ok(rows)
}

/// Compute the winding pair (ω₁, ω₂) of a closed family relative to a
/// normal frame on its middle component.
pub fn winding_pair(
    link: &PolyLink,
    family: &TrisecantFamily,
    frame: &NormalFrame,
) -> Result<(i64, i64), WindingError> {
    if family.records.is_empty() {
        return Err(WindingError::EmptyFamily);
    }
    if frame.component != family.h {
        return Err(WindingError::ComponentMismatch {
            frame: frame.component,
            family: family.h,
        });
    }
    let m = family.records.len();

    // ω₂: exact degree of the middle-parameter map. Each cyclic step
    // contributes its minimal wrapped increment; the total telescopes to
    // an integer exactly whenever the cyclic list closes up.
    let params: Vec<Rat> = family
        .records
        .iter()
        .map(|r| link.circle_param(&r.middle))
        .collect();
    let mut total = Rat::zero();
    for i in 0..m {
        let d = &params[(i + 1) % m] - &params[i];
        total += wrap_increment(&d);
    }
    if !total.is_integer() {
        let defect = rat_to_f64(&(&total - total.round()));
        return Err(WindingError::NotInteger { defect: defect.abs() });
    }
    let omega2 = rat_to_f64(&total).round() as i64;

    // ω₁: accumulated turning of the projected trisecant direction. The
    // frame pair is exactly orthogonal with near-equal lengths, so the
    // per-step minimal increments accumulate the honest winding as long
    // as each step turns less than half a turn.
    let angles = projected_angles(link, family, frame)?;
    let mut accumulated = 0.0f64;
    for i in 0..m {
        accumulated += wrap_angle(angles[(i + 1) % m] - angles[i]);
    }
    let turns = accumulated / std::f64::consts::TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() >= 1e-6 {
        return Err(WindingError::NotInteger { defect: (turns - rounded).abs() });
    }
    Ok((rounded as i64, omega2))
}

/// Assemble the closed chains of an atlas whose middle edges all lie on
/// component `h` into cyclic trisecant families ready for
/// [`winding_pair`]. Chains with odd glue monodromy (winding class 1)
/// close as unordered pairs only, so they are traversed twice to produce
/// a closed ordered family.
pub fn extract_families(
    atlas: &ObstructionAtlas,
    link: &PolyLink,
    k: usize,
    h: usize,
) -> Vec<TrisecantFamily> {
    let mut families = Vec::new();
    if atlas.component != k || h >= link.num_components() {
        return families;
    }
    for chain in &atlas.chains {
        if !chain.closed || chain.arcs.is_empty() {
            continue;
        }
        if !chain
            .arcs
            .iter()
            .all(|&(i, _)| atlas.arcs[i].middle_edge.component == h)
        {
            continue;
        }
        let swaps = chain.glues.iter().filter(|&&e| e != 0).count();
        let passes = if swaps % 2 == 1 { 2 } else { 1 };
        let mut records: Vec<TrisecantRecord> = Vec::new();
        let mut swapped = false;
        for _ in 0..passes {
            for (step, &(arc_idx, forward)) in chain.arcs.iter().enumerate() {
                let arc = &atlas.arcs[arc_idx];
                let take = |s: &crate::obstruction::ArcSample| -> TrisecantRecord {
                    if swapped {
                        TrisecantRecord {
                            a: s.b.clone(),
                            b: s.a.clone(),
                            middle: s.middle.clone(),
                        }
                    } else {
                        TrisecantRecord {
                            a: s.a.clone(),
                            b: s.b.clone(),
                            middle: s.middle.clone(),
                        }
                    }
                };
                let mut push = |r: TrisecantRecord| {
                    if records.last() != Some(&r) {
                        records.push(r);
                    }
                };
                if forward {
                    for s in arc.samples.iter() {
                        push(take(s));
                    }
                } else {
                    for s in arc.samples.iter().rev() {
                        push(take(s));
                    }
                }
                if chain.glues[step] != 0 {
                    swapped = !swapped;
                }
            }
        }
        // Drop a duplicated closing record.
        if records.len() > 1 && records.first() == records.last() {
            records.pop();
        }
        if !records.is_empty() {
            families.push(TrisecantFamily { k, h, records });
        }
    }
    families
}
