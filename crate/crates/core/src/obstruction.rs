//! The secant Möbius strip of a component and its trisecant obstruction
//! locus.
//!
//! For a component K of a link, the unordered pairs {a, b} of distinct
//! circle parameters form an open Möbius strip M — the space of secants of
//! K. The obstruction locus O ⊂ M consists of the pairs whose secant
//! carries a third link point strictly between its endpoints (a
//! trisecant); the middle point may lie on any component. This module
//! traces O by certified sampling, locates its self-crossings (each one is
//! a quadrisecant, certified through the stabbing kernel), groups arcs into
//! chains classified by their winding around M, searches for clear fibers,
//! and builds the chord disk that a clear fiber spans.
//!
//! # Chart and lifts
//!
//! M is charted by ordered pairs (a, b) with 0 ≤ a < b < 1; the strip
//! topology enters through the glue (a, 1) ~ (0, a), equivalently the lift
//! transformation g(x, y) = (y, x + 1). Each traced arc stays inside one
//! chart rectangle (the parameter intervals of its two endpoint edges), so
//! wraparound appears only when arcs are matched end-to-end into chains;
//! the accumulated g-exponent of a closed chain gives its winding class:
//! odd → 1 (the endpoints travel half way around and switch places), even
//! nonzero → 2 (each endpoint winds once), zero → 0.
//!
//! # Certification
//!
//! Every stored sample is an exactly verified trisecant: the three points
//! are constructed rationally, collinearity is an identity of the
//! construction, and strict betweenness plus the edge-interval conditions
//! are checked with exact rational signs. A float-interval prefilter (the
//! same outward-rounded arithmetic the stabbing engine uses) discards the
//! overwhelming majority of invalid samples without touching big-rational
//! arithmetic; it only ever skips work on a proof of invalidity.

use crate::exact::{f64_enclosure, rat, Iv, Rat};
use crate::geom::{collinear3, det3, orient3d, Point3};
use crate::link::{EdgeRef, LinkPoint, PolyLink};
use crate::stabbing::{transversal_key, transversals_of_quadruple, QuadKey, Transversal};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("samples per edge must be at least 4, got {0}")]
    TooFewSamples(usize),
    #[error("degenerate pair: the two circle parameters coincide")]
    DiagonalPair,
    #[error(
        "arc continuity failure in pair {e1}/{e2} with middle {em}: chart \
         jump above the step bound survives refinement near a = {near}"
    )]
    StepSize { e1: EdgeRef, e2: EdgeRef, em: EdgeRef, near: Rat },
    #[error("chain lift is not closed: start {start:?}, end {end:?}")]
    NotClosed { start: (String, String), end: (String, String) },
    #[error("chord fan obstructed: far edge {far}, blocking edge {blocker}")]
    ChordObstructed { far: EdgeRef, blocker: EdgeRef, witness: Point3 },
}

/// Tracing configuration; [`TraceOptions::default`] documents the shipped
/// defaults.
#[derive(Clone, Debug)]
pub struct TraceOptions {
    /// Coarse samples per endpoint edge (≥ 4).
    pub samples_per_edge: usize,
    /// Chart-space exclusion band around the diagonal a = b, as a fraction
    /// of the component's (unit) parameter length.
    pub diagonal_margin: Rat,
    /// Bisection depth cap for localizing arc endpoints.
    pub max_refine_depth: u32,
}

impl Default for TraceOptions {
    fn default() -> TraceOptions {
        TraceOptions {
            samples_per_edge: 8,
            diagonal_margin: rat(1, 1000),
            max_refine_depth: 16,
        }
    }
}

/// Canonical chart point of M: ordered pair 0 ≤ a < b < 1, unique per
/// unordered pair of distinct circle parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusCoord {
    pub a: Rat,
    pub b: Rat,
}

impl MoebiusCoord {
    /// Canonicalize an unordered pair: wrap both into [0,1), order them.
    /// Equal parameters (a degenerate secant) are rejected.
    pub fn new(x: &Rat, y: &Rat) -> Result<MoebiusCoord, ObstructionError> {
        let wrap = |v: &Rat| -> Rat { v - v.floor() };
        let (mut a, mut b) = (wrap(x), wrap(y));
        if a == b {
            return Err(ObstructionError::DiagonalPair);
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(MoebiusCoord { a, b })
    }
}

/// One exactly verified trisecant on an arc: endpoints on the traced
/// component (in chart order), the middle point strictly between them.
#[derive(Clone, Debug)]
pub struct ArcSample {
    pub a: LinkPoint,
    pub b: LinkPoint,
    pub middle: LinkPoint,
    pub coord: MoebiusCoord,
}

/// A maximal sampled run of trisecants with fixed endpoint-edge pair and
/// fixed middle edge, polyline-ordered by the first chart coordinate.
#[derive(Clone, Debug)]
pub struct ObstructionArc {
    /// Endpoint edges on the traced component, `endpoints.0.edge <
    /// endpoints.1.edge`; the chart rectangle of the arc.
    pub endpoints: (EdgeRef, EdgeRef),
    /// Edge carrying every middle point (any component).
    pub middle_edge: EdgeRef,
    pub samples: Vec<ArcSample>,
    /// True when the first and last samples coincide (a loop inside one
    /// rectangle; does not occur for validated links, kept for shape).
    pub closed: bool,
}

/// A certified self-crossing of O: two arcs over the same endpoint pair
/// with distinct middle edges meeting at one secant — a quadrisecant.
#[derive(Clone, Debug)]
pub struct Crossing {
    /// Indices into [`ObstructionAtlas::arcs`] of the two arms.
    pub arcs: (usize, usize),
    /// Display chart location (a certified rational enclosure midpoint of
    /// the exact, possibly irrational, crossing parameters).
    pub at: MoebiusCoord,
    /// The exact quadrisecant line through the crossing, in canonical
    /// form; carries the surd-exact hit parameters.
    pub transversal: Transversal,
    pub key: QuadKey,
}

/// A chain of arcs matched end-to-end (continuation across edge events and
/// the Möbius glue).
#[derive(Clone, Debug)]
pub struct Chain {
    /// (arc index, traversed forward) in traversal order.
    pub arcs: Vec<(usize, bool)>,
    /// Glue exponent at each junction: `glues[i]` relates the exit of
    /// `arcs[i]` to the entry of the next arc (`coords(exit) =
    /// g^e(coords(entry))`, g the Möbius glue). Closed chains carry one
    /// entry per arc (the last closes the loop); open chains one fewer.
    /// Nonzero exponents swap the endpoint roles a ↔ b.
    pub glues: Vec<i64>,
    pub closed: bool,
    /// Winding class around M for closed chains: 0, 1, or 2.
    pub winding: Option<u8>,
}

#[derive(Clone, Debug)]
pub struct ObstructionAtlas {
    pub component: usize,
    pub samples_per_edge: usize,
    pub diagonal_margin: Rat,
    pub arcs: Vec<ObstructionArc>,
    pub crossings: Vec<Crossing>,
    pub chains: Vec<Chain>,
}

/// Triangle fan of chords from a clear apex over its component: vertex 0
/// is the apex, vertices 1.. are the component cycle starting at the
/// vertex after the apex edge; one triangle per component edge (the one or
/// two triangles meeting the apex's own edge are degenerate slivers).
#[derive(Clone, Debug)]
pub struct ChordDisk {
    pub apex: LinkPoint,
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

// ---------------------------------------------------------------------------
// Per-sample trisecant solve.
//
// Fix a point A on edge ei of the traced component. For an endpoint edge
// ej and a middle edge ek, the condition "the line through A and B(t) on
// ej meets the supporting line of ek" expands to orient3d(A, B(t), P, Q) =
// 0, which is linear in t: c0 + t·c1 with c0 = det[Bj−A, P−A, Q−A] and
// c1 = det[Dj, P−A, Q−A]. The in-range root (if any) determines the far
// endpoint B; the hit parameter u on ek and strict betweenness of the hit
// complete the trisecant test. The interval prefilter runs the same
// computation denominator-free: with dir̂ = c1·Bj − c0·Dj − c1·A (a
// positive multiple of B−A up to the sign of c1), every range condition
// becomes a pure sign test, so one straddling interval is the only way
// exact arithmetic is ever consulted.
// ---------------------------------------------------------------------------

type IvV = [Iv; 3];

fn ivv_sub(a: &IvV, b: &IvV) -> IvV {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn ivv_cross(a: &IvV, b: &IvV) -> IvV {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn ivv_dot(a: &IvV, b: &IvV) -> Iv {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn ivv_det3(u: &IvV, v: &IvV, w: &IvV) -> Iv {
    ivv_dot(u, &ivv_cross(v, w))
}

fn ivv_scale(a: &IvV, k: Iv) -> IvV {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn ivv_add(a: &IvV, b: &IvV) -> IvV {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn iv_point(p: &Point3) -> IvV {
    [
        Iv::from_rat(&p.x),
        Iv::from_rat(&p.y),
        Iv::from_rat(&p.z),
    ]
}

fn iv_of_rat(x: &Rat) -> Iv {
    let (lo, hi) = f64_enclosure(x);
    Iv::new(lo, hi)
}

/// Immutable tracing context shared by all triples.
struct Ctx<'a> {
    link: &'a PolyLink,
    comp: usize,
    /// Edges on the traced component.
    n: usize,
    /// Float enclosures of every vertex, indexed like the link.
    iv_verts: Vec<Vec<IvV>>,
}

impl<'a> Ctx<'a> {
    fn build(link: &'a PolyLink, comp: usize) -> Ctx<'a> {
        let iv_verts = (0..link.num_components())
            .map(|c| link.component(c).iter().map(iv_point).collect())
            .collect();
        Ctx { link, comp, n: link.component_len(comp), iv_verts }
    }

    fn iv_vert(&self, e: EdgeRef, end: usize) -> &IvV {
        let n = self.link.component_len(e.component);
        &self.iv_verts[e.component][(e.edge + end) % n]
    }
}

/// Interval prefilter: `true` means the sample is provably not a
/// trisecant; `false` means the exact path must decide.
fn prefilter_invalid(ctx: &Ctx, ei: usize, ej: usize, ek: EdgeRef, frac: &Rat) -> bool {
    let k = ctx.comp;
    let a0 = ctx.iv_vert(EdgeRef { component: k, edge: ei }, 0);
    let a1 = ctx.iv_vert(EdgeRef { component: k, edge: ei }, 1);
    let f = iv_of_rat(frac);
    let a = ivv_add(a0, &ivv_scale(&ivv_sub(a1, a0), f));

    let bj = ctx.iv_vert(EdgeRef { component: k, edge: ej }, 0);
    let dj = ivv_sub(ctx.iv_vert(EdgeRef { component: k, edge: ej }, 1), bj);
    let p = ctx.iv_vert(ek, 0);
    let q = ctx.iv_vert(ek, 1);
    let pa = ivv_sub(p, &a);
    let qa = ivv_sub(q, &a);

    let c1 = ivv_det3(&dj, &pa, &qa);
    let s1 = match c1.certain_sign() {
        Some(0) => return true, // c1 = 0 exactly: no isolated solution
        Some(s) => s,
        None => return false,
    };
    let c0 = ivv_det3(&ivv_sub(bj, &a), &pa, &qa);
    // t = -c0/c1 in [0,1): t >= 0 iff c0·c1 <= 0; t < 1 iff (c0+c1)·c1 > 0.
    if (c0 * c1).strictly_above(0.0) {
        return true;
    }
    if ((c0 + c1) * c1).strictly_below(0.0) {
        return true;
    }
    // dir̂ = c1·B − c1·A = c1·bj − c0·dj − c1·a.
    let dir = ivv_sub(&ivv_sub(&ivv_scale(bj, c1), &ivv_scale(&dj, c0)), &ivv_scale(&a, c1));
    let dk = ivv_sub(q, p);
    let nv = ivv_cross(&dir, &dk);
    let n2 = ivv_dot(&nv, &nv);
    if !n2.strictly_above(0.0) {
        return false; // possibly parallel: decide exactly
    }
    // u = (r × dir)·n / n² with r = p − A: u in [0,1) via signs.
    let w = ivv_dot(&ivv_cross(&pa, &dir), &nv);
    if w.strictly_below(0.0) {
        return true;
    }
    if (w - n2).strictly_above(0.0) {
        return true;
    }
    // Strict betweenness of m = p + u·dk between A and B:
    // with m̂ = n²·p + w·dk, X = m̂ − n²·A, Y = c1·m̂ − n²·(c1·bj − c0·dj),
    // sign((m−A)·(m−B)) = sign(X·Y)·sign(c1); required negative.
    let mh = ivv_add(&ivv_scale(p, n2), &ivv_scale(&dk, w));
    let x = ivv_sub(&mh, &ivv_scale(&a, n2));
    let bh = ivv_sub(&ivv_scale(bj, c1), &ivv_scale(&dj, c0));
    let y = ivv_sub(&ivv_scale(&mh, c1), &ivv_scale(&bh, n2));
    let xy = ivv_dot(&x, &y);
    if s1 > 0 && xy.strictly_above(0.0) {
        return true;
    }
    if s1 < 0 && xy.strictly_below(0.0) {
        return true;
    }
    false
}

/// Exact per-sample decision. `margin_near` marks endpoint-edge pairs
/// whose parameter intervals approach the diagonal closer than the margin,
/// the only case where the per-sample margin test can fire.
fn exact_sample(
    ctx: &Ctx,
    ei: usize,
    ej: usize,
    ek: EdgeRef,
    frac: &Rat,
    margin_near: bool,
    opts: &TraceOptions,
) -> Option<ArcSample> {
    let link = ctx.link;
    let k = ctx.comp;
    let n = ctx.n;
    let seg_i = link.edge_segment(EdgeRef { component: k, edge: ei });
    let a_pt = seg_i.point_at(frac);
    let seg_j = link.edge_segment(EdgeRef { component: k, edge: ej });
    let dj = seg_j.direction();
    let seg_k = link.edge_segment(ek);
    let (p, q) = (&seg_k.a, &seg_k.b);

    let pa = p.sub(&a_pt);
    let qa = q.sub(&a_pt);
    let c1 = det3(&dj, &pa, &qa);
    if c1.is_zero() {
        return None;
    }
    let c0 = det3(&seg_j.a.sub(&a_pt), &pa, &qa);
    let t = -(&c0 / &c1);
    if t.is_negative() || t >= Rat::one() {
        return None;
    }
    let b_pt = seg_j.point_at(&t);
    if b_pt == a_pt {
        return None;
    }
    let dir = b_pt.sub(&a_pt);
    let dk = q.sub(p);
    let nv = dir.cross(&dk);
    if nv.is_zero() {
        return None; // line parallel to (or along) the middle edge
    }
    let u = pa.cross(&dir).dot(&nv) / nv.norm2();
    if u.is_negative() || u >= Rat::one() {
        return None;
    }
    let m_pt = seg_k.point_at(&u);
    if !m_pt.sub(&a_pt).dot(&m_pt.sub(&b_pt)).is_negative() {
        return None; // middle not strictly between
    }

    let pa_param = (Rat::from_integer(BigInt::from(ei)) + frac) / rat(n as i64, 1);
    let pb_param = (Rat::from_integer(BigInt::from(ej)) + &t) / rat(n as i64, 1);
    if margin_near {
        let d = (&pa_param - &pb_param).abs();
        let gap = if d > rat(1, 2) { Rat::one() - &d } else { d.clone() };
        if gap < opts.diagonal_margin {
            return None;
        }
    }
    debug_assert!(pa_param < pb_param);
    let a_lp = if frac == &Rat::one() {
        LinkPoint::new(k, (ei + 1) % n, Rat::zero())
    } else {
        LinkPoint::new(k, ei, frac.clone())
    };
    Some(ArcSample {
        a: a_lp,
        b: LinkPoint::new(k, ej, t),
        middle: LinkPoint::new(ek.component, ek.edge, u),
        coord: MoebiusCoord { a: pa_param, b: pb_param },
    })
}

fn probe(
    ctx: &Ctx,
    ei: usize,
    ej: usize,
    ek: EdgeRef,
    frac: &Rat,
    margin_near: bool,
    opts: &TraceOptions,
) -> Option<ArcSample> {
    if prefilter_invalid(ctx, ei, ej, ek, frac) {
        return None;
    }
    exact_sample(ctx, ei, ej, ek, frac, margin_near, opts)
}

/// Sweep position where the far endpoint crosses an edge boundary.
///
/// orient3d is affine in each argument, so "the line from A(frac) to a
/// fixed vertex X is coplanar with the middle edge" — which is where the
/// linear-in-t solve has its root at t = 0 (X the near vertex of ej) or
/// t = 1 (the far vertex) — is linear in `frac` and solves exactly. Arc
/// ends snapped to these roots match the neighboring triple's arc ends
/// with zero error: the adjacent rectangle derives the identical rational
/// from the identical equation.
fn t_boundary_root(ctx: &Ctx, ei: usize, ej: usize, ek: EdgeRef, far_end: bool) -> Option<Rat> {
    let k = ctx.comp;
    let seg_i = ctx.link.edge_segment(EdgeRef { component: k, edge: ei });
    let seg_j = ctx.link.edge_segment(EdgeRef { component: k, edge: ej });
    let seg_k = ctx.link.edge_segment(ek);
    let x = if far_end { &seg_j.b } else { &seg_j.a };
    let g0 = orient3d(&seg_i.a, x, &seg_k.a, &seg_k.b);
    let g1 = orient3d(&seg_i.b, x, &seg_k.a, &seg_k.b);
    if g0 == g1 {
        return None;
    }
    Some(&g0 / &(&g0 - &g1))
}

/// Sample at a snapped junction: the far endpoint sits exactly on the
/// vertex heading edge `b_vertex_edge` (an index that may equal the
/// component length, putting the chart coordinate on the glue edge b = 1).
fn boundary_sample(
    ctx: &Ctx,
    ei: usize,
    b_vertex_edge: usize,
    ek: EdgeRef,
    frac: &Rat,
    margin_near: bool,
    opts: &TraceOptions,
) -> Option<ArcSample> {
    if frac.is_negative() || frac > &Rat::one() {
        return None;
    }
    let link = ctx.link;
    let k = ctx.comp;
    let n = ctx.n;
    let seg_i = link.edge_segment(EdgeRef { component: k, edge: ei });
    let a_pt = seg_i.point_at(frac);
    let b_pt = link.vertex(k, b_vertex_edge).clone();
    if b_pt == a_pt {
        return None;
    }
    let seg_k = link.edge_segment(ek);
    let (p, q) = (&seg_k.a, &seg_k.b);
    let dir = b_pt.sub(&a_pt);
    let dk = q.sub(p);
    let nv = dir.cross(&dk);
    if nv.is_zero() {
        return None;
    }
    debug_assert!(orient3d(&a_pt, &b_pt, p, q).is_zero(), "junction must be coplanar");
    let pa = p.sub(&a_pt);
    let u = pa.cross(&dir).dot(&nv) / nv.norm2();
    if u.is_negative() || u >= Rat::one() {
        return None;
    }
    let m_pt = seg_k.point_at(&u);
    if !m_pt.sub(&a_pt).dot(&m_pt.sub(&b_pt)).is_negative() {
        return None;
    }
    let pa_param = (rat(ei as i64, 1) + frac) / rat(n as i64, 1);
    let pb_param = rat(b_vertex_edge as i64, n as i64);
    if pa_param >= pb_param {
        return None; // junction collapses onto the diagonal corner
    }
    if margin_near {
        let d = (&pa_param - &pb_param).abs();
        let gap = if d > rat(1, 2) { Rat::one() - &d } else { d.clone() };
        if gap < opts.diagonal_margin {
            return None;
        }
    }
    let a_lp = if frac == &Rat::one() {
        LinkPoint::new(k, (ei + 1) % n, Rat::zero())
    } else {
        LinkPoint::new(k, ei, frac.clone())
    };
    Some(ArcSample {
        a: a_lp,
        b: LinkPoint::new(k, b_vertex_edge % n, Rat::zero()),
        middle: LinkPoint::new(ek.component, ek.edge, u),
        coord: MoebiusCoord { a: pa_param, b: pb_param },
    })
}

/// Chart-space distance between consecutive samples, L∞.
fn chart_gap(s1: &ArcSample, s2: &ArcSample) -> Rat {
    let da = (&s1.coord.a - &s2.coord.a).abs();
    let db = (&s1.coord.b - &s2.coord.b).abs();
    if da > db {
        da
    } else {
        db
    }
}

/// Trace one (endpoint-edge-pair, middle-edge) triple into arcs.
fn trace_triple(
    ctx: &Ctx,
    ei: usize,
    ej: usize,
    ek: EdgeRef,
    opts: &TraceOptions,
) -> Result<Vec<ObstructionArc>, ObstructionError> {
    let s = opts.samples_per_edge as i64;
    let n = ctx.n as i64;
    // Per-sample margin tests are needed only when the two parameter
    // intervals can approach the diagonal within the margin: adjacent
    // edges (linearly or around the wrap).
    let linear_gap = rat((ej as i64 - ei as i64 - 1).max(0), n);
    let wrap_gap = rat((ei as i64 + n - ej as i64 - 1).max(0), n);
    let min_gap = if linear_gap < wrap_gap { linear_gap } else { wrap_gap };
    let margin_near = min_gap < opts.diagonal_margin;

    let bound = rat(4, s * n);
    let min_step = rat(1, s * 4096);
    let probe_at =
        |frac: &Rat| -> Option<ArcSample> { probe(ctx, ei, ej, ek, frac, margin_near, opts) };

    // Coarse grid (both endpoints included: junction samples shared with
    // the neighboring endpoint edge make chain matching exact there).
    let mut map: BTreeMap<Rat, Option<ArcSample>> = BTreeMap::new();
    for l in 0..=s {
        let f = rat(l, s);
        let r = probe_at(&f);
        map.insert(f, r);
    }

    // Continuity refinement between consecutive valid samples.
    let mut work: Vec<(Rat, Rat)> = {
        let keys: Vec<&Rat> = map.keys().collect();
        keys.windows(2)
            .filter(|w| map[w[0]].is_some() && map[w[1]].is_some())
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    };
    while let Some((p1, p2)) = work.pop() {
        let (s1, s2) = match (&map[&p1], &map[&p2]) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        if chart_gap(s1, s2) <= bound {
            continue;
        }
        if &p2 - &p1 <= min_step {
            return Err(ObstructionError::StepSize {
                e1: EdgeRef { component: ctx.comp, edge: ei },
                e2: EdgeRef { component: ctx.comp, edge: ej },
                em: ek,
                near: p1,
            });
        }
        let mid = (&p1 + &p2) / rat(2, 1);
        let r = probe_at(&mid);
        let valid = r.is_some();
        map.insert(mid.clone(), r);
        if valid {
            work.push((p1, mid.clone()));
            work.push((mid, p2));
        }
        // An invalid midpoint splits the run; boundary refinement below
        // localizes the two new arc ends.
    }

    // Split into runs and refine run boundaries by bisection.
    let entries: Vec<(Rat, Option<ArcSample>)> = map.into_iter().collect();
    let mut arcs = Vec::new();
    let mut run: Vec<(Rat, ArcSample)> = Vec::new();
    let mut flush = |run: &mut Vec<(Rat, ArcSample)>| {
        if run.is_empty() {
            return;
        }
        let samples: Vec<ArcSample> = run.iter().map(|(_, s)| s.clone()).collect();
        let closed = samples.len() > 1 && samples.first().unwrap().coord == samples.last().unwrap().coord;
        arcs.push(ObstructionArc {
            endpoints: (
                EdgeRef { component: ctx.comp, edge: ei },
                EdgeRef { component: ctx.comp, edge: ej },
            ),
            middle_edge: ek,
            samples,
            closed,
        });
        run.clear();
    };
    // Localize an arc end inside the (valid, invalid) position bracket:
    // first try the exact junction roots where the far endpoint leaves its
    // edge (quitting with a zero-error chart point shared by the adjacent
    // rectangle), then fall back to bisection.
    let refine_boundary = |valid_pos: &Rat, invalid_pos: &Rat| -> Option<(Rat, ArcSample)> {
        let mut roots: Vec<(Rat, usize)> = Vec::new();
        for (far_end, b_edge) in [(true, ej + 1), (false, ej)] {
            if let Some(r) = t_boundary_root(ctx, ei, ej, ek, far_end) {
                let inside = if valid_pos < invalid_pos {
                    &r > valid_pos && &r <= invalid_pos
                } else {
                    &r >= invalid_pos && &r < valid_pos
                };
                if inside {
                    roots.push((r, b_edge));
                }
            }
        }
        roots.sort();
        let pick = if valid_pos < invalid_pos { roots.first() } else { roots.last() };
        if let Some((r, b_edge)) = pick {
            if let Some(s) = boundary_sample(ctx, ei, *b_edge, ek, r, margin_near, opts) {
                return Some((r.clone(), s));
            }
        }
        let mut lo = valid_pos.clone();
        let mut hi = invalid_pos.clone();
        let mut best: Option<(Rat, ArcSample)> = None;
        for _ in 0..opts.max_refine_depth {
            let mid = (&lo + &hi) / rat(2, 1);
            match probe_at(&mid) {
                Some(sample) => {
                    best = Some((mid.clone(), sample));
                    lo = mid;
                }
                None => hi = mid,
            }
        }
        best
    };
    for idx in 0..entries.len() {
        match &entries[idx].1 {
            Some(sample) => {
                if run.is_empty() && idx > 0 {
                    // Left arc end lies in (previous invalid, this valid).
                    if let Some((pos, refined)) =
                        refine_boundary(&entries[idx].0, &entries[idx - 1].0)
                    {
                        run.push((pos, refined));
                    }
                }
                run.push((entries[idx].0.clone(), sample.clone()));
            }
            None => {
                if let Some((last_pos, _)) = run.last().cloned() {
                    if let Some((pos, refined)) = refine_boundary(&last_pos, &entries[idx].0) {
                        run.push((pos, refined));
                    }
                }
                flush(&mut run);
            }
        }
    }
    flush(&mut run);
    Ok(arcs)
}

// ---------------------------------------------------------------------------
// Crossings.
// ---------------------------------------------------------------------------

/// Axis-aligned chart bounding box of an arc's polyline.
fn arc_bbox(arc: &ObstructionArc) -> (Rat, Rat, Rat, Rat) {
    let mut it = arc.samples.iter();
    let first = it.next().expect("arcs are nonempty");
    let (mut ax0, mut ax1) = (first.coord.a.clone(), first.coord.a.clone());
    let (mut bx0, mut bx1) = (first.coord.b.clone(), first.coord.b.clone());
    for s in it {
        if s.coord.a < ax0 {
            ax0 = s.coord.a.clone();
        }
        if s.coord.a > ax1 {
            ax1 = s.coord.a.clone();
        }
        if s.coord.b < bx0 {
            bx0 = s.coord.b.clone();
        }
        if s.coord.b > bx1 {
            bx1 = s.coord.b.clone();
        }
    }
    (ax0, ax1, bx0, bx1)
}

fn boxes_overlap(u: &(Rat, Rat, Rat, Rat), v: &(Rat, Rat, Rat, Rat), pad: &Rat) -> bool {
    !(&u.1 + pad < v.0 || &v.1 + pad < u.0 || &u.3 + pad < v.2 || &v.3 + pad < u.2)
}

/// Certified rational display value of a possibly irrational circle
/// parameter (midpoint of a 64-bit enclosure).
fn display_param(x: &crate::exact::AlgReal) -> Rat {
    match x {
        crate::exact::AlgReal::Rat(r) => r.clone(),
        other => {
            let (lo, hi) = other.rat_enclosure(64);
            (lo + hi) / rat(2, 1)
        }
    }
}

fn detect_crossings(link: &PolyLink, comp: usize, arcs: &[ObstructionArc]) -> Vec<Crossing> {
    let n = link.component_len(comp);
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (idx, arc) in arcs.iter().enumerate() {
        groups
            .entry((arc.endpoints.0.edge, arc.endpoints.1.edge))
            .or_default()
            .push(idx);
    }
    let pad = rat(1, n as i64); // generous: one edge of chart space
    let mut found: BTreeMap<QuadKey, Crossing> = BTreeMap::new();
    for ((ei, ej), members) in &groups {
        for (xi, &i) in members.iter().enumerate() {
            for &j in &members[xi + 1..] {
                if arcs[i].middle_edge == arcs[j].middle_edge {
                    continue;
                }
                if !boxes_overlap(&arc_bbox(&arcs[i]), &arc_bbox(&arcs[j]), &pad) {
                    continue;
                }
                let refs = [
                    EdgeRef { component: comp, edge: *ei },
                    EdgeRef { component: comp, edge: *ej },
                    arcs[i].middle_edge,
                    arcs[j].middle_edge,
                ];
                for t in transversals_of_quadruple(link, refs) {
                    if t.hits.len() < 4 {
                        continue;
                    }
                    // The crossing pair is the two outermost hits; both
                    // must lie on the group's endpoint edges.
                    let first = &t.hits[0].at;
                    let last = &t.hits[t.hits.len() - 1].at;
                    if first.component != comp || last.component != comp {
                        continue;
                    }
                    let outer = if first.edge < last.edge {
                        (first.edge, last.edge)
                    } else {
                        (last.edge, first.edge)
                    };
                    if outer != (*ei, *ej) {
                        continue;
                    }
                    let key = transversal_key(&t);
                    if found.contains_key(&key) {
                        continue;
                    }
                    let param = |h: &crate::stabbing::AlgLinkPoint| -> Rat {
                        (display_param(&h.t) + rat(h.edge as i64, 1)) / rat(n as i64, 1)
                    };
                    let (pa, pb) = (param(first), param(last));
                    let at = if pa < pb {
                        MoebiusCoord { a: pa, b: pb }
                    } else {
                        MoebiusCoord { a: pb, b: pa }
                    };
                    found.insert(key.clone(), Crossing { arcs: (i, j), at, transversal: t, key });
                }
            }
        }
    }
    found.into_values().collect()
}

// ---------------------------------------------------------------------------
// Chains and winding.
// ---------------------------------------------------------------------------

/// Lift transformation on chart coordinates: Φ(x, y) = (x+dx, y+dy), or
/// (y+dx, x+dy) when `swap` is set. The Möbius glue is g = {swap, dx: 0,
/// dy: 1}; compositions track how a chain wraps around M.
#[derive(Clone, Debug)]
struct LiftMap {
    swap: bool,
    dx: Rat,
    dy: Rat,
}

impl LiftMap {
    fn identity() -> LiftMap {
        LiftMap { swap: false, dx: Rat::zero(), dy: Rat::zero() }
    }

    fn glue(e: i64) -> LiftMap {
        match e {
            0 => LiftMap::identity(),
            1 => LiftMap { swap: true, dx: Rat::zero(), dy: Rat::one() },
            -1 => LiftMap { swap: true, dx: -Rat::one(), dy: Rat::zero() },
            _ => unreachable!("only unit glue steps arise"),
        }
    }

    fn apply(&self, v: &(Rat, Rat)) -> (Rat, Rat) {
        if self.swap {
            (&v.1 + &self.dx, &v.0 + &self.dy)
        } else {
            (&v.0 + &self.dx, &v.1 + &self.dy)
        }
    }

    /// self ∘ other (apply `other` first).
    fn compose(&self, other: &LiftMap) -> LiftMap {
        let (dx, dy) = if self.swap {
            (&self.dx + &other.dy, &self.dy + &other.dx)
        } else {
            (&self.dx + &other.dx, &self.dy + &other.dy)
        };
        LiftMap { swap: self.swap ^ other.swap, dx, dy }
    }
}

/// Winding class of a closed chain from its lift monodromy: `start` is the
/// initial lift, `end` the same chain point after one traversal. Within
/// `tol`: (a, b) → (a+k, b+k) is class 0 (k = 0) or 2 (k ≠ 0); a swapped
/// return (a, b) → (b+k, a+k′) is class 1.
pub fn winding_class(
    start: &(Rat, Rat),
    end: &(Rat, Rat),
    tol: &Rat,
) -> Result<u8, ObstructionError> {
    let near_integer = |x: &Rat| -> Option<BigInt> {
        let rounded = (x + rat(1, 2)).floor();
        if (x - &rounded).abs() <= *tol {
            Some(rounded.to_integer())
        } else {
            None
        }
    };
    let d0 = &end.0 - &start.0;
    let d1 = &end.1 - &start.1;
    if let (Some(k0), Some(k1)) = (near_integer(&d0), near_integer(&d1)) {
        if k0 == k1 {
            return Ok(if k0.is_zero() { 0 } else { 2 });
        }
    }
    let s0 = &end.0 - &start.1;
    let s1 = &end.1 - &start.0;
    if near_integer(&s0).is_some() && near_integer(&s1).is_some() {
        return Ok(1);
    }
    Err(ObstructionError::NotClosed {
        start: (start.0.to_string(), start.1.to_string()),
        end: (end.0.to_string(), end.1.to_string()),
    })
}

fn sample_coord(s: &ArcSample) -> (Rat, Rat) {
    (s.coord.a.clone(), s.coord.b.clone())
}

fn arc_end(arc: &ObstructionArc, which: usize) -> (Rat, Rat) {
    if which == 0 {
        sample_coord(arc.samples.first().expect("arcs are nonempty"))
    } else {
        sample_coord(arc.samples.last().expect("arcs are nonempty"))
    }
}

fn linf(u: &(Rat, Rat), v: &(Rat, Rat)) -> Rat {
    let da = (&u.0 - &v.0).abs();
    let db = (&u.1 - &v.1).abs();
    if da > db {
        da
    } else {
        db
    }
}

/// Match arc ends into chains. Two ends connect when one's coordinates
/// equal a glue image of the other's within `tol`; matches are chosen
/// greedily by increasing distance, deterministically tie-broken.
fn assemble_chains(arcs: &[ObstructionArc], tol: &Rat) -> Vec<Chain> {
    let ends: Vec<(usize, usize)> =
        arcs.iter().enumerate().flat_map(|(i, _)| [(i, 0), (i, 1)]).collect();
    // Candidate matches over glue exponents -1, 0, +1.
    let mut cands: Vec<(Rat, usize, usize, i64)> = Vec::new();
    for a in 0..ends.len() {
        for b in (a + 1)..ends.len() {
            if ends[a].0 == ends[b].0 {
                continue; // an arc does not match itself
            }
            let ca = arc_end(&arcs[ends[a].0], ends[a].1);
            let cb = arc_end(&arcs[ends[b].0], ends[b].1);
            for e in [0i64, 1, -1] {
                let img = LiftMap::glue(e).apply(&cb);
                let d = linf(&ca, &img);
                if d <= *tol {
                    cands.push((d, a, b, e));
                    break;
                }
            }
        }
    }
    cands.sort_by(|u, v| u.0.cmp(&v.0).then(u.1.cmp(&v.1)).then(u.2.cmp(&v.2)));
    // matched[end] = (other end, glue exponent with coords(end) ≈ g^e(other))
    let mut matched: Vec<Option<(usize, i64)>> = vec![None; ends.len()];
    for (_, a, b, e) in cands {
        if matched[a].is_none() && matched[b].is_none() {
            matched[a] = Some((b, e));
            matched[b] = Some((a, -e));
        }
    }

    let mut visited = vec![false; arcs.len()];
    let mut chains = Vec::new();
    for start in 0..arcs.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut seq: Vec<(usize, bool)> = vec![(start, true)];
        let mut glues: Vec<i64> = Vec::new();
        let mut lift = LiftMap::identity();
        let mut closed = false;
        // Walk forward from the end of the start arc.
        let mut cur = 2 * start + 1; // end-index into `ends`
        loop {
            let Some((other, e)) = matched[cur] else { break };
            let (next_arc, next_which) = ends[other];
            if next_arc == start {
                closed = true;
                glues.push(e);
                lift = lift.compose(&LiftMap::glue(e));
                break;
            }
            if visited[next_arc] {
                break; // defensive: should not happen with pair matching
            }
            visited[next_arc] = true;
            let forward = next_which == 0;
            seq.push((next_arc, forward));
            glues.push(e);
            lift = lift.compose(&LiftMap::glue(e));
            cur = 2 * next_arc + if forward { 1 } else { 0 };
        }
        if !closed {
            // Extend backward from the start arc's start end.
            let mut cur = 2 * start;
            loop {
                let Some((other, e)) = matched[cur] else { break };
                let (prev_arc, prev_which) = ends[other];
                if visited[prev_arc] {
                    break;
                }
                visited[prev_arc] = true;
                let forward = prev_which == 1; // entered at its end → traversed forward toward it
                seq.insert(0, (prev_arc, forward));
                // Forward-order relation for the step prev → first is the
                // inverse of the matched relation seen from this side.
                glues.insert(0, -e);
                cur = 2 * prev_arc + if forward { 0 } else { 1 };
            }
        }
        let winding = if closed {
            let s0 = arc_end(&arcs[start], 0);
            let end = lift.apply(&s0);
            let tol_total = tol * rat((seq.len() as i64 + 1) * 2, 1);
            winding_class(&s0, &end, &tol_total).ok()
        } else {
            None
        };
        chains.push(Chain { arcs: seq, glues, closed, winding });
    }
    chains
}

// ---------------------------------------------------------------------------
// Tracing driver.
// ---------------------------------------------------------------------------

/// Trace the obstruction locus of `component` with default options.
pub fn trace_obstruction(
    link: &PolyLink,
    component: usize,
    samples_per_edge: usize,
) -> Result<ObstructionAtlas, ObstructionError> {
    let opts = TraceOptions { samples_per_edge, ..TraceOptions::default() };
    trace_obstruction_with(link, component, &opts)
}

/// Trace the obstruction locus of `component`: arcs per
/// (endpoint-edge-pair, middle-edge) triple, certified crossings, and
/// chains with winding classes.
pub fn trace_obstruction_with(
    link: &PolyLink,
    component: usize,
    opts: &TraceOptions,
) -> Result<ObstructionAtlas, ObstructionError> {
    if component >= link.num_components() {
        return Err(ObstructionError::BadComponent(component));
    }
    if opts.samples_per_edge < 4 {
        return Err(ObstructionError::TooFewSamples(opts.samples_per_edge));
    }
    let ctx = Ctx::build(link, component);
    let n = ctx.n;
    let mut triples: Vec<(usize, usize, EdgeRef)> = Vec::new();
    for ei in 0..n {
        for ej in (ei + 1)..n {
            for ek in link.edges() {
                if ek.component == component && (ek.edge == ei || ek.edge == ej) {
                    continue;
                }
                triples.push((ei, ej, ek));
            }
        }
    }
    let per: Result<Vec<Vec<ObstructionArc>>, ObstructionError> = triples
        .par_iter()
        .map(|&(ei, ej, ek)| trace_triple(&ctx, ei, ej, ek, opts))
        .collect();
    let arcs: Vec<ObstructionArc> = per?.into_iter().flatten().collect();
    let crossings = detect_crossings(link, component, &arcs);
    let tol = rat(1, (opts.samples_per_edge as i64) * (n as i64) * 2048);
    let chains = assemble_chains(&arcs, &tol);
    Ok(ObstructionAtlas {
        component,
        samples_per_edge: opts.samples_per_edge,
        diagonal_margin: opts.diagonal_margin.clone(),
        arcs,
        crossings,
        chains,
    })
}

// ---------------------------------------------------------------------------
// Clear fibers and the chord disk.
//
// The fiber L_a ⊂ M of an apex parameter a is clear when no trisecant has
// an endpoint at K(a) — equivalently, for every far edge F of K, no link
// point lies strictly inside a chord from the apex to F. With T the
// triangle conv{apex, F} and U = T minus (F ∪ {apex}), the set of open
// chord interiors is exactly U, so per (far edge, test edge) the question
// is an exact segment-versus-U intersection. That decision is shared
// verbatim by the chord-disk verifier, which makes "a clear apex yields a
// verified disk" true by construction.
// ---------------------------------------------------------------------------

fn in_closed_segment(x: &Point3, a: &Point3, b: &Point3) -> bool {
    collinear3(a, b, x) && !x.sub(a).dot(&x.sub(b)).is_positive()
}

/// Witness of `[x0, x1] ∩ U ≠ ∅` for the open chord fan U from `apex`
/// over `[fq, fr]`; `None` certifies emptiness.
fn chord_fan_witness(
    apex: &Point3,
    fq: &Point3,
    fr: &Point3,
    x0: &Point3,
    x1: &Point3,
) -> Option<Point3> {
    let e1 = fq.sub(apex);
    let e2 = fr.sub(apex);
    let nrm = e1.cross(&e2);
    if nrm.is_zero() {
        // Apex collinear with the far edge. Inside it the fan is empty;
        // otherwise U is the open gap between the apex and the edge.
        if in_closed_segment(apex, fq, fr) {
            return None;
        }
        let near = if e1.norm2() < e2.norm2() { fq } else { fr };
        return open_gap_witness(apex, near, x0, x1);
    }
    let nn = nrm.norm2();
    let bary = |y: &Point3| -> (Rat, Rat) {
        let w = y.sub(apex);
        let alpha = det3(&w, &e2, &nrm) / &nn;
        let beta = det3(&e1, &w, &nrm) / &nn;
        (alpha, beta)
    };
    let in_u = |y: &Point3| -> bool {
        let (alpha, beta) = bary(y);
        !alpha.is_negative()
            && !beta.is_negative()
            && &alpha + &beta < Rat::one()
            && !(alpha.is_zero() && beta.is_zero())
    };
    let d0 = x0.sub(apex).dot(&nrm);
    let d1 = x1.sub(apex).dot(&nrm);
    match (d0.is_zero(), d1.is_zero()) {
        (false, false) => {
            if d0.is_positive() == d1.is_positive() {
                return None; // strictly one side of the plane
            }
            let tau = &d0 / (&d0 - &d1);
            let y = x0.translate(&x1.sub(x0), &tau);
            if in_u(&y) {
                Some(y)
            } else {
                None
            }
        }
        (true, false) => {
            if in_u(x0) {
                Some(x0.clone())
            } else {
                None
            }
        }
        (false, true) => {
            if in_u(x1) {
                Some(x1.clone())
            } else {
                None
            }
        }
        (true, true) => {
            // Coplanar. A test line through the apex meets T only along a
            // single chord: its points are collinear middles (the middle
            // edge runs along the secant), which the obstruction locus
            // excludes, and for the disk they are boundary contact.
            if x1.sub(x0).cross(&apex.sub(x0)).is_zero() {
                return None;
            }
            // Clip the segment by the triangle's three half-planes in
            // barycentric-linear form.
            let (a0, b0) = bary(x0);
            let (a1, b1) = bary(x1);
            let (da, db) = (&a1 - &a0, &b1 - &b0);
            let mut lo = Rat::zero();
            let mut hi = Rat::one();
            // Each constraint c0 + τ·dc ≥ 0 clips [lo, hi].
            let mut clip = |c0: &Rat, dc: &Rat| -> bool {
                if dc.is_zero() {
                    return !c0.is_negative();
                }
                let bound = -(c0 / dc);
                if dc.is_positive() {
                    if bound > lo {
                        lo = bound;
                    }
                } else if bound < hi {
                    hi = bound;
                }
                true
            };
            let g0 = Rat::one() - &a0 - &b0;
            let dg = -(&da + &db);
            if !clip(&a0, &da) || !clip(&b0, &db) || !clip(&g0, &dg) || lo > hi {
                return None;
            }
            let at = |tau: &Rat| -> Point3 { x0.translate(&x1.sub(x0), tau) };
            let ylo = at(&lo);
            let yhi = at(&hi);
            // Entirely inside the far edge (γ ≡ 0 on the clipped range)?
            let gamma = |y: &Point3| -> Rat {
                let (alpha, beta) = bary(y);
                Rat::one() - alpha - beta
            };
            if gamma(&ylo).is_zero() && gamma(&yhi).is_zero() {
                return None;
            }
            if lo == hi {
                return if in_u(&ylo) { Some(ylo) } else { None };
            }
            let mid = at(&((&lo + &hi) / rat(2, 1)));
            if in_u(&mid) {
                return Some(mid);
            }
            // The midpoint can only fail by hitting the apex exactly;
            // a quarter point then lies in U.
            let quarter = at(&((&lo + &hi * rat(3, 1)) / rat(4, 1)));
            debug_assert!(in_u(&quarter));
            Some(quarter)
        }
    }
}

/// Degenerate-fan witness: does `[x0, x1]` meet the open segment
/// `(apex, near)`?
fn open_gap_witness(apex: &Point3, near: &Point3, x0: &Point3, x1: &Point3) -> Option<Point3> {
    let du = near.sub(apex);
    let ds = x1.sub(x0);
    let w0 = x0.sub(apex);
    let cr = du.cross(&ds);
    if cr.is_zero() {
        // Parallel. Off the line the segments are disjoint; on it the
        // overlap consists of collinear middles, which do not obstruct.
        return None;
    }
    if !det3(&w0, &ds, &du).is_zero() {
        return None; // skew lines
    }
    // Unique line intersection: position on the test segment and on the
    // gap, both by the standard cross-product ratios.
    let cc = cr.norm2();
    let tau = w0.cross(&du).dot(&cr) / &cc;
    if tau.is_negative() || tau > Rat::one() {
        return None;
    }
    let sigma = w0.cross(&ds).dot(&cr) / &cc;
    if sigma.is_positive() && sigma < Rat::one() {
        Some(x0.translate(&ds, &tau))
    } else {
        None
    }
}

/// Interval screen for [`chord_fan_witness`]: `Some(true)` certifies an
/// obstruction exists, `Some(false)` certifies clearance, `None` defers
/// to exact arithmetic. Only the generic transversal case is screened.
fn chord_fan_iv(apex: &IvV, fq: &IvV, fr: &IvV, x0: &IvV, x1: &IvV) -> Option<bool> {
    let e1 = ivv_sub(fq, apex);
    let e2 = ivv_sub(fr, apex);
    let nrm = ivv_cross(&e1, &e2);
    let d0 = ivv_dot(&ivv_sub(x0, apex), &nrm);
    let d1 = ivv_dot(&ivv_sub(x1, apex), &nrm);
    if (d0.strictly_above(0.0) && d1.strictly_above(0.0))
        || (d0.strictly_below(0.0) && d1.strictly_below(0.0))
    {
        return Some(false);
    }
    let s0 = d0.certain_sign()?;
    let s1 = d1.certain_sign()?;
    if s0 == 0 || s1 == 0 || s0 == s1 {
        return None; // touching or coplanar cases: exact path decides
    }
    // Ŷ = d0·x1 − d1·x0 − (d0−d1)·apex = (d0−d1)·(Y − apex).
    let delta = d0 - d1;
    let sd = delta.certain_sign()?;
    if sd == 0 {
        return None;
    }
    let yh = ivv_sub(
        &ivv_sub(&ivv_scale(x1, d0), &ivv_scale(x0, d1)),
        &ivv_scale(apex, delta),
    );
    let nn = ivv_dot(&nrm, &nrm);
    let ah = ivv_det3(&yh, &e2, &nrm); // δ·α·nn
    let bh = ivv_det3(&e1, &yh, &nrm); // δ·β·nn
    let gh = delta * nn - ah - bh; // δ·γ·nn
    let pos = |v: Iv| -> Option<bool> {
        if (if sd > 0 { v } else { -v }).strictly_above(0.0) {
            Some(true)
        } else if (if sd > 0 { v } else { -v }).strictly_below(0.0) {
            Some(false)
        } else {
            None
        }
    };
    match (pos(ah), pos(bh), pos(gh)) {
        (Some(true), Some(true), Some(true)) => Some(true),
        (Some(false), _, _) | (_, Some(false), _) | (_, _, Some(false)) => Some(false),
        _ => None,
    }
}

/// Exact per-pair clearance decision used by both the fiber sweep and the
/// disk verifier: is any point of `test` strictly inside a chord from
/// `apex` over `far`?
fn pair_obstructed(link: &PolyLink, apex: &Point3, far: EdgeRef, test: EdgeRef) -> Option<Point3> {
    let f = link.edge_segment(far);
    let s = link.edge_segment(test);
    chord_fan_witness(apex, &f.a, &f.b, &s.a, &s.b)
}

/// Search the fibers L_a for a clear apex: sweep dyadic parameters on
/// every edge of the component (midpoints first, then deeper levels),
/// skip fibers the atlas already covers, and verify surviving candidates
/// exactly. `Some` is exact; `None` means every sampled fiber at the
/// documented resolution is obstructed.
pub fn find_clear_arc(
    atlas: &ObstructionAtlas,
    link: &PolyLink,
    component: usize,
) -> Option<LinkPoint> {
    const SWEEP_LEVELS: u32 = 3;
    let n = link.component_len(component);
    // Chart intervals covered by arc coordinates: a fiber whose parameter
    // lies inside any of them is crossed by a certified-nearby arc.
    let mut covered: Vec<(Rat, Rat)> = Vec::new();
    for arc in &atlas.arcs {
        let (a0, a1, b0, b1) = arc_bbox(arc);
        covered.push((a0, a1));
        covered.push((b0, b1));
    }
    let iv_verts: Vec<Vec<IvV>> = (0..link.num_components())
        .map(|c| link.component(c).iter().map(iv_point).collect())
        .collect();
    let iv_seg = |e: EdgeRef| -> (IvV, IvV) {
        let vs = &iv_verts[e.component];
        let m = vs.len();
        (vs[e.edge % m], vs[(e.edge + 1) % m])
    };

    for level in 1..=SWEEP_LEVELS {
        let den = 1i64 << level;
        for edge in 0..n {
            for num in (1..den).step_by(2) {
                let t = rat(num, den);
                let param = (rat(edge as i64, 1) + &t) / rat(n as i64, 1);
                if covered.iter().any(|(lo, hi)| *lo <= param && param <= *hi) {
                    continue;
                }
                let apex_lp = LinkPoint::new(component, edge, t);
                let apex_pt = link.point_at(&apex_lp);
                let apex_iv = iv_point(&apex_pt);
                let mut clear = true;
                'scan: for far in 0..n {
                    if far == edge {
                        continue;
                    }
                    let far_ref = EdgeRef { component, edge: far };
                    let (fq, fr) = iv_seg(far_ref);
                    for test in link.edges() {
                        if test == far_ref {
                            continue;
                        }
                        let (x0, x1) = iv_seg(test);
                        match chord_fan_iv(&apex_iv, &fq, &fr, &x0, &x1) {
                            Some(false) => continue,
                            Some(true) => {
                                clear = false;
                                break 'scan;
                            }
                            None => {
                                if pair_obstructed(link, &apex_pt, far_ref, test).is_some() {
                                    clear = false;
                                    break 'scan;
                                }
                            }
                        }
                    }
                }
                if clear {
                    return Some(apex_lp);
                }
            }
        }
    }
    None
}

/// Build and exactly verify the chord fan from a clear apex: one triangle
/// per component edge (degenerate slivers at the apex's own edge keep the
/// boundary equal to the component cycle), every chord interior certified
/// disjoint from the link.
pub fn build_chord_disk(
    link: &PolyLink,
    component: usize,
    apex: &LinkPoint,
) -> Result<ChordDisk, ObstructionError> {
    if component >= link.num_components() {
        return Err(ObstructionError::BadComponent(component));
    }
    let n = link.component_len(component);
    let apex_pt = link.point_at(apex);
    for far in 0..n {
        let far_ref = EdgeRef { component, edge: far };
        let seg = link.edge_segment(far_ref);
        if in_closed_segment(&apex_pt, &seg.a, &seg.b) {
            continue; // the fan over the apex's own edge is empty
        }
        for test in link.edges() {
            if test == far_ref {
                continue;
            }
            if let Some(witness) = pair_obstructed(link, &apex_pt, far_ref, test) {
                return Err(ObstructionError::ChordObstructed {
                    far: far_ref,
                    blocker: test,
                    witness,
                });
            }
        }
    }
    let mut vertices = vec![apex_pt];
    vertices.extend(link.component(component).iter().cloned());
    let triangles = (0..n).map(|k| [0, 1 + k, 1 + (k + 1) % n]).collect();
    Ok(ChordDisk { apex: apex.clone(), vertices, triangles })
}
