//! Piecewise-linear links: representation, exact validation, file IO,
//! intrinsic coordinates, and seeded general-position perturbation.

mod presets;

pub use presets::{cos_sin_frac, preset, PRESETS};

use crate::exact::{f64_enclosure, format_scalar, parse_scalar, rat, rat_to_f64, Rat};
use crate::geom::{dist2_segments, segment_meet, Point3, SegMeet, Segment3};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Identity of one edge: component index plus edge index within it. Edge
/// `e` joins vertex `e` to vertex `e+1 mod n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub component: usize,
    pub edge: usize,
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.component, self.edge)
    }
}

/// Intrinsic coordinate of a point on the link: the edge that carries it
/// and the local parameter `t ∈ [0,1)`. The half-open range gives every
/// point, vertices included, exactly one address.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkPoint {
    pub component: usize,
    pub edge: usize,
    pub t: Rat,
}

impl LinkPoint {
    pub fn new(component: usize, edge: usize, t: Rat) -> LinkPoint {
        debug_assert!(!t.is_negative() && t < Rat::one());
        LinkPoint { component, edge, t }
    }

    pub fn edge_ref(&self) -> EdgeRef {
        EdgeRef { component: self.component, edge: self.edge }
    }
}

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("link parse error: {0}")]
    Parse(String),
    #[error("link validation failed: {message}")]
    Validation { message: String, witnesses: Vec<EdgeRef> },
    #[error(
        "perturbation magnitude {magnitude} exceeds half the minimum feature separation {separation}"
    )]
    PerturbTooLarge { magnitude: String, separation: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("preset {name:?} needs at least {min} edges per component, got {got}")]
    TooFewEdges { name: String, min: usize, got: usize },
    #[error("component {0} out of range")]
    BadComponent(usize),
}

/// A multi-component closed polygonal curve with exact rational vertices.
/// Construction validates the full embedding invariant set; a value of this
/// type is always a genuine PL link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLink {
    components: Vec<Vec<Point3>>,
    labels: Vec<String>,
}

fn default_label(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{}{}", letter, i / 26)
    }
}

impl PolyLink {
    pub fn new(components: Vec<Vec<Point3>>) -> Result<PolyLink, LinkError> {
        let labels = (0..components.len()).map(default_label).collect();
        PolyLink::with_labels(components, labels)
    }

    pub fn with_labels(
        components: Vec<Vec<Point3>>,
        labels: Vec<String>,
    ) -> Result<PolyLink, LinkError> {
        if labels.len() != components.len() {
            return Err(LinkError::Parse(format!(
                "{} labels for {} components",
                labels.len(),
                components.len()
            )));
        }
        let link = PolyLink { components, labels };
        link.validate()?;
        Ok(link)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, c: usize) -> &[Point3] {
        &self.components[c]
    }

    pub fn component_len(&self, c: usize) -> usize {
        self.components[c].len()
    }

    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn vertex(&self, c: usize, i: usize) -> &Point3 {
        let n = self.components[c].len();
        &self.components[c][i % n]
    }

    pub fn total_edges(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    /// The closed segment of one edge.
    pub fn edge_segment(&self, e: EdgeRef) -> Segment3 {
        let a = self.vertex(e.component, e.edge).clone();
        let b = self.vertex(e.component, e.edge + 1).clone();
        Segment3::new(a, b).expect("validated links have no degenerate edges")
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, verts)| (0..verts.len()).map(move |e| EdgeRef { component: c, edge: e }))
    }

    /// Ambient position of an intrinsic point.
    pub fn point_at(&self, p: &LinkPoint) -> Point3 {
        let a = self.vertex(p.component, p.edge);
        let b = self.vertex(p.component, p.edge + 1);
        a.translate(&b.sub(a), &p.t)
    }

    /// Do two edges share a vertex (including an edge with itself)?
    pub fn edges_adjacent(&self, e1: EdgeRef, e2: EdgeRef) -> bool {
        if e1.component != e2.component {
            return false;
        }
        if e1.edge == e2.edge {
            return true;
        }
        let n = self.components[e1.component].len();
        (e1.edge + 1) % n == e2.edge || (e2.edge + 1) % n == e1.edge
    }

    /// Normalized circle parameter of an intrinsic point: `(edge + t) / n`.
    /// Uniform in edge index, not arclength — the map is exact and
    /// invertible, which matters more here than metric fidelity.
    pub fn circle_param(&self, p: &LinkPoint) -> Rat {
        let n = self.components[p.component].len();
        (Rat::from_integer(BigInt::from(p.edge)) + &p.t) / rat(n as i64, 1)
    }

    /// Inverse of [`circle_param`]: wraps `u` into [0,1) first.
    pub fn point_from_param(&self, component: usize, u: &Rat) -> LinkPoint {
        use num_traits::ToPrimitive;
        let n = self.components[component].len();
        let scaled = u * rat(n as i64, 1);
        let floor = scaled.floor();
        let t = &scaled - &floor;
        let nn = BigInt::from(n);
        let edge = ((floor.to_integer() % &nn) + &nn) % &nn;
        LinkPoint::new(component, edge.to_usize().unwrap(), t)
    }

    /// Squared diameter: the maximum vertex–vertex squared distance.
    pub fn diameter2(&self) -> Rat {
        let mut best = Rat::zero();
        let all: Vec<&Point3> = self.components.iter().flatten().collect();
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                let d = all[i].dist2(all[j]);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Rational approximation of the diameter (within 10⁻¹² relative),
    /// suitable for choosing magnitudes, never for predicates.
    pub fn diameter_approx(&self) -> Rat {
        let d2 = rat_to_f64(&self.diameter2());
        Rat::from_float(d2.sqrt()).unwrap_or_else(Rat::zero)
    }

    /// Minimum squared distance over non-adjacent edge pairs: the feature
    /// separation that bounds safe perturbation. Uses a float prescan to
    /// pick candidate pairs, then exact arithmetic on those.
    pub fn min_feature_separation2(&self) -> Rat {
        let edges: Vec<EdgeRef> = self.edges().collect();
        let segs: Vec<Segment3> = edges.iter().map(|&e| self.edge_segment(e)).collect();
        let approx: Vec<[[f64; 3]; 2]> = segs
            .iter()
            .map(|s| {
                [
                    [rat_to_f64(&s.a.x), rat_to_f64(&s.a.y), rat_to_f64(&s.a.z)],
                    [rat_to_f64(&s.b.x), rat_to_f64(&s.b.y), rat_to_f64(&s.b.z)],
                ]
            })
            .collect();
        let mut best_f = f64::INFINITY;
        let mut dists = vec![f64::INFINITY; edges.len() * edges.len()];
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if self.edges_adjacent(edges[i], edges[j]) {
                    continue;
                }
                let d = seg_dist_f64(&approx[i], &approx[j]);
                dists[i * edges.len() + j] = d;
                if d < best_f {
                    best_f = d;
                }
            }
        }
        let mut best: Option<Rat> = None;
        let cutoff = best_f * 4.0 + 1e-9;
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if dists[i * edges.len() + j] <= cutoff {
                    let d2 = dist2_segments(&segs[i], &segs[j]);
                    if best.as_ref().map(|b| d2 < *b).unwrap_or(true) {
                        best = Some(d2);
                    }
                }
            }
        }
        best.unwrap_or_else(Rat::zero)
    }

    /// Displace every vertex by a seed-derived dyadic jitter with max-norm
    /// at most `magnitude`, then revalidate. Deterministic in the seed.
    pub fn perturb(&self, magnitude: &Rat, seed: u64) -> Result<PolyLink, LinkError> {
        if magnitude.is_zero() {
            return Ok(self.clone());
        }
        assert!(magnitude.is_positive(), "perturbation magnitude must be nonnegative");
        let sep2 = self.min_feature_separation2();
        // magnitude < sep/2  ⟺  4·magnitude² < sep²
        if rat(4, 1) * magnitude * magnitude >= sep2 {
            return Err(LinkError::PerturbTooLarge {
                magnitude: format_scalar(magnitude),
                separation: format!("sqrt({})", format_scalar(&sep2)),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = BigInt::from(1u64 << 30);
        let mut components = Vec::with_capacity(self.components.len());
        for verts in &self.components {
            let mut moved = Vec::with_capacity(verts.len());
            for p in verts {
                let mut coords = [p.x.clone(), p.y.clone(), p.z.clone()];
                for c in &mut coords {
                    let v: i64 = rng.gen_range(-(1i64 << 30)..=(1i64 << 30));
                    *c = &*c + magnitude * Rat::new(BigInt::from(v), scale.clone());
                }
                let [x, y, z] = coords;
                moved.push(Point3::new(x, y, z));
            }
            components.push(moved);
        }
        PolyLink::with_labels(components, self.labels.clone())
    }

    /// Full embedding validation; every constructor funnels through here.
    fn validate(&self) -> Result<(), LinkError> {
        if self.components.is_empty() {
            return Err(LinkError::Validation {
                message: "link has no components".into(),
                witnesses: vec![],
            });
        }
        for (c, verts) in self.components.iter().enumerate() {
            if verts.len() < 3 {
                return Err(LinkError::Validation {
                    message: format!("component {} has fewer than 3 vertices", c),
                    witnesses: vec![],
                });
            }
            for i in 0..verts.len() {
                if verts[i] == verts[(i + 1) % verts.len()] {
                    return Err(LinkError::Validation {
                        message: format!("component {} has equal consecutive vertices", c),
                        witnesses: vec![EdgeRef { component: c, edge: i }],
                    });
                }
            }
        }
        let edges: Vec<EdgeRef> = self.edges().collect();
        let segs: Vec<Segment3> = edges.iter().map(|&e| self.edge_segment(e)).collect();
        let boxes: Vec<[f64; 6]> = segs.iter().map(seg_box).collect();
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if !boxes_overlap(&boxes[i], &boxes[j]) {
                    continue;
                }
                let adjacent = self.edges_adjacent(edges[i], edges[j]);
                match segment_meet(&segs[i], &segs[j]) {
                    SegMeet::Disjoint => {}
                    SegMeet::Overlap => {
                        return Err(LinkError::Validation {
                            message: format!("edges {} and {} overlap", edges[i], edges[j]),
                            witnesses: vec![edges[i], edges[j]],
                        });
                    }
                    SegMeet::Point { s, t } => {
                        if adjacent {
                            // The only allowed contact is the shared vertex.
                            let at_shared = (s.is_zero() || s == Rat::one())
                                && (t.is_zero() || t == Rat::one());
                            if !at_shared {
                                return Err(LinkError::Validation {
                                    message: format!(
                                        "adjacent edges {} and {} meet away from their shared vertex",
                                        edges[i], edges[j]
                                    ),
                                    witnesses: vec![edges[i], edges[j]],
                                });
                            }
                        } else {
                            return Err(LinkError::Validation {
                                message: format!("edges {} and {} intersect", edges[i], edges[j]),
                                witnesses: vec![edges[i], edges[j]],
                            });
                        }
                    }
                }
            }
        }
        // No vertex may lie in the open interior of a non-incident edge.
        for (c, verts) in self.components.iter().enumerate() {
            for (vi, v) in verts.iter().enumerate() {
                for (ei, seg) in segs.iter().enumerate() {
                    let e = edges[ei];
                    let incident = e.component == c
                        && (e.edge == vi || (e.edge + 1) % self.components[c].len() == vi);
                    if incident {
                        continue;
                    }
                    if point_in_open_segment(v, seg) {
                        return Err(LinkError::Validation {
                            message: format!(
                                "vertex {} of component {} lies inside edge {}",
                                vi, c, e
                            ),
                            witnesses: vec![e],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical document form (see the file-format notes in the README).
    pub fn to_document(&self) -> String {
        let file = LinkFile {
            version: 1,
            labels: self.labels.clone(),
            components: self
                .components
                .iter()
                .map(|verts| {
                    verts
                        .iter()
                        .map(|p| {
                            [format_scalar(&p.x), format_scalar(&p.y), format_scalar(&p.z)]
                        })
                        .collect()
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
        s.push('\n');
        s
    }

    pub fn from_document(text: &str) -> Result<PolyLink, LinkError> {
        let file: LinkFile =
            serde_json::from_str(text).map_err(|e| LinkError::Parse(e.to_string()))?;
        if file.version != 1 {
            return Err(LinkError::Parse(format!("unsupported version {}", file.version)));
        }
        let mut components = Vec::with_capacity(file.components.len());
        for comp in &file.components {
            let mut verts = Vec::with_capacity(comp.len());
            for [x, y, z] in comp {
                let parse = |s: &str| {
                    parse_scalar(s).map_err(|e| LinkError::Parse(format!("coordinate {s:?}: {e}")))
                };
                verts.push(Point3::new(parse(x)?, parse(y)?, parse(z)?));
            }
            components.push(verts);
        }
        let labels = if file.labels.is_empty() {
            (0..components.len()).map(default_label).collect()
        } else {
            file.labels
        };
        PolyLink::with_labels(components, labels)
    }
}

#[derive(Serialize, Deserialize)]
struct LinkFile {
    version: u32,
    #[serde(default)]
    labels: Vec<String>,
    components: Vec<Vec<[String; 3]>>,
}

/// Is `p` strictly inside segment `s` (collinear, excluding endpoints)?
fn point_in_open_segment(p: &Point3, s: &Segment3) -> bool {
    let d = s.direction();
    if !p.sub(&s.a).cross(&d).is_zero() {
        return false;
    }
    let u = d.dot(&p.sub(&s.a));
    u.is_positive() && u < d.norm2()
}

/// Certified enclosing box of a segment (outward-rounded floats).
fn seg_box(s: &Segment3) -> [f64; 6] {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for p in [&s.a, &s.b] {
        for (k, coord) in [&p.x, &p.y, &p.z].into_iter().enumerate() {
            let (lo, hi) = f64_enclosure(coord);
            b[k] = b[k].min(lo);
            b[3 + k] = b[3 + k].max(hi);
        }
    }
    b
}

fn boxes_overlap(a: &[f64; 6], b: &[f64; 6]) -> bool {
    (0..3).all(|k| a[k] <= b[3 + k] && b[k] <= a[3 + k])
}

/// Plain floating-point segment–segment distance, used only to rank
/// candidate pairs before exact evaluation.
fn seg_dist_f64(s1: &[[f64; 3]; 2], s2: &[[f64; 3]; 2]) -> f64 {
    let sub = |a: &[f64; 3], b: &[f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let lerp = |a: &[f64; 3], d: &[f64; 3], t: f64| {
        [a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]]
    };
    let d1 = sub(&s1[1], &s1[0]);
    let d2 = sub(&s2[1], &s2[0]);
    let r = sub(&s1[0], &s2[0]);
    let a = dot(&d1, &d1);
    let b = dot(&d1, &d2);
    let c = dot(&d2, &d2);
    let e = dot(&d1, &r);
    let f = dot(&d2, &r);
    let det = a * c - b * b;
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    let mut best = f64::INFINITY;
    let mut check = |s: f64, t: f64| {
        let p = lerp(&s1[0], &d1, s);
        let q = lerp(&s2[0], &d2, t);
        let d = sub(&p, &q);
        best = best.min(dot(&d, &d).sqrt());
    };
    if det.abs() > 1e-30 {
        let s = clamp((b * f - c * e) / det);
        let t = clamp((a * f - b * e) / det);
        check(s, t);
    }
    for t in [0.0, 1.0] {
        // endpoint of s2 against s1
        let q = lerp(&s2[0], &d2, t);
        let s = if a > 0.0 { clamp(dot(&d1, &sub(&q, &s1[0])) / a) } else { 0.0 };
        check(s, t);
        // endpoint of s1 against s2
        let p = lerp(&s1[0], &d1, t);
        let u = if c > 0.0 { clamp(dot(&d2, &sub(&p, &s2[0])) / c) } else { 0.0 };
        check(t, u);
    }
    best
}

/// PL analogues of the smooth general-position conditions, with witnesses.
/// Filled in by the enumeration engine (`gp_diagnose`): the line conditions
/// need the transversal solver. The smooth condition V (special points of
/// the projection) has no PL counterpart and is reported as not applicable.
#[derive(Clone, Debug, Default)]
pub struct GPReport {
    /// I/II analogue: no edge's line contains a vertex outside that edge.
    pub collinear_vertex: GPCheck,
    /// III analogue: no line meets five or more edges.
    pub five_edge_line: GPCheck,
    /// IV analogue: no edge quadruple with a tangent (double-root) or
    /// degenerate-infinite transversal family.
    pub tangent_family: GPCheck,
}

#[derive(Clone, Debug, Default)]
pub struct GPCheck {
    pub witnesses: Vec<GPWitness>,
}

impl GPCheck {
    pub fn pass(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GPWitness {
    pub edges: Vec<EdgeRef>,
    pub note: String,
}

impl GPReport {
    pub fn all_pass(&self) -> bool {
        self.collinear_vertex.pass() && self.five_edge_line.pass() && self.tangent_family.pass()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point3> {
        vec![
            Point3::ints(0, 0, 0),
            Point3::ints(4, 0, 0),
            Point3::ints(4, 4, 0),
            Point3::ints(0, 4, 0),
        ]
    }

    #[test]
    fn square_is_valid() {
        let link = PolyLink::new(vec![square()]).unwrap();
        assert_eq!(link.num_components(), 1);
        assert_eq!(link.total_edges(), 4);
        assert_eq!(link.label(0), "A");
    }

    #[test]
    fn crossing_edges_rejected() {
        // bowtie: edges 0-1 and 2-3 cross at the middle
        let bad = vec![
            Point3::ints(0, 0, 0),
            Point3::ints(4, 4, 0),
            Point3::ints(4, 0, 0),
            Point3::ints(0, 4, 0),
        ];
        let err = PolyLink::new(vec![bad]).unwrap_err();
        match err {
            LinkError::Validation { witnesses, .. } => assert!(!witnesses.is_empty()),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn vertex_inside_edge_rejected() {
        let bad = vec![
            Point3::ints(0, 0, 0),
            Point3::ints(4, 0, 0),
            Point3::ints(4, 4, 0),
            Point3::ints(2, 0, 0), // sits inside edge 0
        ];
        assert!(PolyLink::new(vec![bad]).is_err());
    }

    #[test]
    fn duplicate_consecutive_vertices_rejected() {
        let bad = vec![Point3::ints(0, 0, 0), Point3::ints(0, 0, 0), Point3::ints(1, 1, 0)];
        assert!(PolyLink::new(vec![bad]).is_err());
    }

    #[test]
    fn document_round_trip_is_exact() {
        let link = preset("trefoil_t23", 30, 0).unwrap();
        let doc = link.to_document();
        let back = PolyLink::from_document(&doc).unwrap();
        assert_eq!(link, back);
        // decimal strings parse to exact rationals
        let doc2 = r#"{"version":1,"components":[[["0.1","0","0"],["1","0","0"],["0.5","1","0"]]]}"#;
        let tri = PolyLink::from_document(doc2).unwrap();
        assert_eq!(tri.vertex(0, 0).x, rat(1, 10));
    }

    #[test]
    fn intrinsic_coordinates_round_trip() {
        let link = PolyLink::new(vec![square()]).unwrap();
        let p = LinkPoint::new(0, 2, rat(1, 3));
        let u = link.circle_param(&p);
        assert_eq!(u, rat(7, 12));
        let back = link.point_from_param(0, &u);
        assert_eq!(back, p);
        // wraparound
        let q = link.point_from_param(0, &rat(13, 12));
        assert_eq!(q.edge, 0);
        assert_eq!(q.t, rat(1, 3));
        let r = link.point_from_param(0, &rat(-1, 12));
        assert_eq!(r.edge, 3);
        assert_eq!(r.t, rat(2, 3));
    }

    #[test]
    fn point_at_interpolates() {
        let link = PolyLink::new(vec![square()]).unwrap();
        let p = link.point_at(&LinkPoint::new(0, 0, rat(1, 4)));
        assert_eq!(p, Point3::ints(1, 0, 0));
    }

    #[test]
    fn feature_separation_of_square_pair() {
        // two parallel squares 3 apart: separation is 3
        let far = square().iter().map(|p| Point3::new(p.x.clone(), p.y.clone(), &p.z + rat(3, 1))).collect();
        let link = PolyLink::new(vec![square(), far]).unwrap();
        assert_eq!(link.min_feature_separation2(), rat(9, 1));
    }

    #[test]
    fn perturb_determinism_and_bounds() {
        let link = preset("trefoil_t23", 30, 0).unwrap();
        let mag = rat(1, 1000);
        let a = link.perturb(&mag, 42).unwrap();
        let b = link.perturb(&mag, 42).unwrap();
        assert_eq!(a, b);
        let c = link.perturb(&mag, 43).unwrap();
        assert_ne!(a, c);
        // displacement bound holds exactly, and zero magnitude is identity
        for ci in 0..link.num_components() {
            for vi in 0..link.component_len(ci) {
                let d = link.vertex(ci, vi).sub(a.vertex(ci, vi));
                for coord in [&d.x, &d.y, &d.z] {
                    assert!(coord.abs() <= mag);
                }
            }
        }
        assert_eq!(link.perturb(&Rat::zero(), 9).unwrap(), link);
    }

    #[test]
    fn perturb_rejects_oversized_magnitude() {
        let link = PolyLink::new(vec![square()]).unwrap();
        let err = link.perturb(&rat(10, 1), 1).unwrap_err();
        assert!(matches!(err, LinkError::PerturbTooLarge { .. }));
    }

    #[test]
    fn adjacent_edges_sharing_vertex_allowed() {
        // a zigzag where consecutive edges form acute angles is fine
        let zig = vec![
            Point3::ints(0, 0, 0),
            Point3::ints(2, 1, 0),
            Point3::ints(4, 0, 0),
            Point3::ints(2, 5, 1),
        ];
        assert!(PolyLink::new(vec![zig]).is_ok());
    }
}
