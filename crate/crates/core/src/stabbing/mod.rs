//! Enumeration and certification of quadrisecants: lines meeting a link in
//! four or more points.
//!
//! The engine iterates edge quadruples (with conservative box pruning),
//! solves each through the exact bilinear kernel, extends every candidate
//! line against all remaining edges so hit lists are maximal, and merges
//! duplicates under a canonical algebraic key. Hit parameters live in a
//! real quadratic extension field; every reported incidence is certified
//! by exact resubstitution, never by tolerance.

pub mod bvh;
pub mod kernel;

use crate::exact::{AlgKey, AlgReal, Rat};
use crate::geom::{Point3, Segment3};
use crate::link::{EdgeRef, GPReport, GPWitness, PolyLink};
use bvh::{Box3, EdgeBvh};
use kernel::{AVec, ISeg};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

pub use kernel::SolveOutcome;

/// A point of the link with an algebraic (degree ≤ 2) edge parameter.
/// The rational `LinkPoint` cannot express where a quadrisecant pierces an
/// edge, so hits carry this wider coordinate.
#[derive(Clone, Debug)]
pub struct AlgLinkPoint {
    pub component: usize,
    pub edge: usize,
    pub t: AlgReal,
}

impl AlgLinkPoint {
    pub fn edge_ref(&self) -> EdgeRef {
        EdgeRef { component: self.component, edge: self.edge }
    }
}

/// One intersection of a transversal line with the link.
#[derive(Clone, Debug)]
pub struct Hit {
    pub at: AlgLinkPoint,
    /// Parameter along the canonical line frame: 0 at the first hit,
    /// 1 at the last.
    pub lambda: AlgReal,
}

/// A full edge lying on the transversal line.
#[derive(Clone, Debug)]
pub struct ContainedRun {
    pub edge: EdgeRef,
    /// Line parameters of the edge's two endpoints, in edge order (the
    /// first may exceed the second when the edge runs against the line).
    pub lambda_in: AlgReal,
    pub lambda_out: AlgReal,
}

/// A line with its complete, certified list of link intersections.
///
/// The frame is canonical: the anchor is the first hit, anchor + direction
/// the last, and the hit order is normalized so the transversal is
/// independent of how it was discovered.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub anchor: [AlgReal; 3],
    pub direction: [AlgReal; 3],
    /// Sorted strictly by `lambda`; every vertex hit is owned by the edge
    /// that starts there (half-open convention).
    pub hits: Vec<Hit>,
    pub runs: Vec<ContainedRun>,
}

/// Canonical identity of a transversal: the sorted (component, edge,
/// minimal-polynomial key) triples of its hits. Identical lines found from
/// different quadruples — hence with different surd representations —
/// produce equal keys.
pub type QuadKey = Vec<(usize, usize, AlgKey)>;

#[derive(Clone, Debug)]
pub struct Quadrisecant {
    pub transversal: Transversal,
    /// Component labels of the first four hits in line order, e.g. "ABAB".
    pub pattern: String,
    /// Whether the secant between consecutive hits 1-2, 2-3, 3-4 is a
    /// subset of the link (possible only along collinear edges).
    pub contained: [bool; 3],
    /// 2 when this line is a double root of its quadruple's eliminant.
    pub multiplicity: u8,
    pub near_degenerate: bool,
    pub key: QuadKey,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DegenerateKind {
    /// The eliminant of the quadruple vanished identically; the solution
    /// set is a continuum and cannot be enumerated.
    InfiniteFamily,
    /// A double root with an in-range solution: the transversal family is
    /// tangent to the quadruple.
    DoubleRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Degeneracy {
    pub edges: [EdgeRef; 4],
    pub kind: DegenerateKind,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Sorted by canonical key.
    pub quadrisecants: Vec<Quadrisecant>,
    /// Quadruples the solver could not enumerate or flagged as boundary
    /// cases, sorted and deduplicated.
    pub degeneracies: Vec<Degeneracy>,
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub workers: usize,
    /// Abort with an error if any degeneracy is encountered.
    pub strict: bool,
    /// Conservative box pruning; disable to force the naive quadruple
    /// sweep (the result must not change, only the running time).
    pub prune: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { workers: 1, strict: false, prune: true }
    }
}

#[derive(Debug, Error)]
pub enum StabbingError {
    #[error("strict mode: {count} degenerate configurations (first: {first})")]
    StrictDegenerate { count: usize, first: String },
    #[error("worker pool construction failed: {0}")]
    Pool(String),
}

/// Integer-scaled flat view of a link: all vertex coordinates multiplied
/// by the least common denominator, edges indexed consecutively.
struct Scaled {
    edges: Vec<ISeg>,
    refs: Vec<EdgeRef>,
    /// Certified float enclosures of the scaled edges, shared by every
    /// per-quadruple prefilter call.
    ivs: Vec<kernel::IvSeg>,
}

impl Scaled {
    fn build(link: &PolyLink) -> Scaled {
        let mut denom = BigInt::one();
        for c in 0..link.num_components() {
            for p in link.component(c) {
                for coord in [&p.x, &p.y, &p.z] {
                    denom = denom.lcm(coord.denom());
                }
            }
        }
        let scale = Rat::from_integer(denom);
        let to_int = |r: &Rat| -> BigInt {
            let v = r * &scale;
            debug_assert!(v.is_integer());
            v.to_integer()
        };
        let mut edges = Vec::new();
        let mut refs = Vec::new();
        for e in link.edges() {
            let seg = link.edge_segment(e);
            edges.push(ISeg {
                a: [to_int(&seg.a.x), to_int(&seg.a.y), to_int(&seg.a.z)],
                b: [to_int(&seg.b.x), to_int(&seg.b.y), to_int(&seg.b.z)],
            });
            refs.push(e);
        }
        let max_bits = edges
            .iter()
            .flat_map(|e| e.a.iter().chain(e.b.iter()))
            .map(|v| v.bits())
            .max()
            .unwrap_or(0);
        let shift = kernel::IvSeg::shift_for_bits(max_bits);
        let ivs = edges.iter().map(|e| kernel::IvSeg::enclose(e, shift)).collect();
        Scaled { edges, refs, ivs }
    }

    fn point(&self, flat: usize, u: &AlgReal) -> AVec {
        kernel::point_on(&self.edges[flat], u)
    }
}

/// Hits and contained edges of one line against the whole (scaled) link.
struct RawExtension {
    /// (flat edge index, edge parameter, raw line parameter)
    hits: Vec<(usize, AlgReal, AlgReal)>,
    /// (flat edge index, raw line parameters of its endpoints)
    runs: Vec<(usize, AlgReal, AlgReal)>,
}

fn extend_line(scaled: &Scaled, anchor: &AVec, dir: &AVec) -> RawExtension {
    let dir2 = kernel::avec_dot(dir, dir);
    let lambda_of = |p: &AVec| -> AlgReal {
        kernel::avec_dot(&kernel::avec_sub(p, anchor), dir).div(&dir2)
    };
    let mut hits = Vec::new();
    let mut runs = Vec::new();
    for (idx, e) in scaled.edges.iter().enumerate() {
        match kernel::line_hit(anchor, dir, &e.a, &e.b) {
            kernel::LineHit::Miss => {}
            kernel::LineHit::At { u, lambda } => {
                if u.in_half_open_unit() {
                    hits.push((idx, u, lambda));
                }
            }
            kernel::LineHit::Along => {
                let la = lambda_of(&kernel::avec_from_int(&e.a));
                let lb = lambda_of(&kernel::avec_from_int(&e.b));
                // The start vertex is owned by this edge; the end vertex
                // is reported by the successor edge's own hit.
                hits.push((idx, AlgReal::zero(), la.clone()));
                runs.push((idx, la, lb));
            }
        }
    }
    RawExtension { hits, runs }
}

/// Turn a raw extension into a canonical `Transversal` in original
/// (unscaled) coordinates. Returns `None` for lines with fewer than two
/// link points.
fn assemble(scaled: &Scaled, raw: RawExtension, unscale: &Rat) -> Option<Transversal> {
    let mut hits = raw.hits;
    if hits.len() < 2 {
        return None;
    }
    hits.sort_by(|a, b| a.2.cmp_any(&b.2));
    // Distinct link points have distinct line parameters on a validated
    // link; equality would mean two edges share an interior point.
    debug_assert!(hits.windows(2).all(|w| w[0].2.cmp_any(&w[1].2).is_lt()));

    let hit_key = |h: &(usize, AlgReal, AlgReal)| -> (usize, usize, AlgKey) {
        let r = scaled.refs[h.0];
        (r.component, r.edge, h.1.key())
    };
    if hit_key(&hits[0]) > hit_key(&hits[hits.len() - 1]) {
        hits.reverse();
    }

    // Canonical line parameters: affine transform sending the first hit
    // to 0 and the last to 1 (monotone along the chosen orientation).
    let l0 = hits[0].2.clone();
    let span = hits[hits.len() - 1].2.sub(&l0);
    let canon = |l: &AlgReal| l.sub(&l0).div(&span);

    let first_pt = scaled.point(hits[0].0, &hits[0].1);
    let last_pt = scaled.point(hits[hits.len() - 1].0, &hits[hits.len() - 1].1);
    let anchor = [
        first_pt[0].scale(unscale),
        first_pt[1].scale(unscale),
        first_pt[2].scale(unscale),
    ];
    let direction = [
        last_pt[0].sub(&first_pt[0]).scale(unscale),
        last_pt[1].sub(&first_pt[1]).scale(unscale),
        last_pt[2].sub(&first_pt[2]).scale(unscale),
    ];

    let hits = hits
        .into_iter()
        .map(|(idx, u, l)| {
            let r = scaled.refs[idx];
            Hit {
                at: AlgLinkPoint { component: r.component, edge: r.edge, t: u },
                lambda: canon(&l),
            }
        })
        .collect();
    let runs = raw
        .runs
        .into_iter()
        .map(|(idx, la, lb)| ContainedRun {
            edge: scaled.refs[idx],
            lambda_in: canon(&la),
            lambda_out: canon(&lb),
        })
        .collect();
    Some(Transversal { anchor, direction, hits, runs })
}

/// Canonical dedup key of a transversal.
pub fn transversal_key(t: &Transversal) -> QuadKey {
    let mut key: QuadKey =
        t.hits.iter().map(|h| (h.at.component, h.at.edge, h.at.t.key())).collect();
    key.sort();
    key
}

/// Pattern word and per-secant containment flags of a transversal with at
/// least four hits.
pub fn classify_pattern(link: &PolyLink, t: &Transversal) -> (String, [bool; 3]) {
    assert!(t.hits.len() >= 4, "classification requires at least four hits");
    let pattern: String = t.hits.iter().take(4).map(|h| link.label(h.at.component)).collect();

    // Merge the contained-edge intervals and test coverage of each of the
    // three leading secants.
    let mut ivs: Vec<(AlgReal, AlgReal)> = t
        .runs
        .iter()
        .map(|r| {
            if r.lambda_in.cmp_any(&r.lambda_out).is_le() {
                (r.lambda_in.clone(), r.lambda_out.clone())
            } else {
                (r.lambda_out.clone(), r.lambda_in.clone())
            }
        })
        .collect();
    ivs.sort_by(|a, b| a.0.cmp_any(&b.0));
    let mut merged: Vec<(AlgReal, AlgReal)> = Vec::new();
    for iv in ivs {
        match merged.last_mut() {
            Some(last) if iv.0.cmp_any(&last.1).is_le() => {
                if iv.1.cmp_any(&last.1).is_gt() {
                    last.1 = iv.1;
                }
            }
            _ => merged.push(iv),
        }
    }
    let covered = |lo: &AlgReal, hi: &AlgReal| -> bool {
        merged
            .iter()
            .any(|(a, b)| a.cmp_any(lo).is_le() && b.cmp_any(hi).is_ge())
    };
    let mut contained = [false; 3];
    for (i, flag) in contained.iter_mut().enumerate() {
        *flag = covered(&t.hits[i].lambda, &t.hits[i + 1].lambda);
    }
    (pattern, contained)
}

fn make_quadrisecant(link: &PolyLink, t: Transversal, multiplicity: u8) -> Quadrisecant {
    let (pattern, contained) = classify_pattern(link, &t);
    let key = transversal_key(&t);
    Quadrisecant {
        transversal: t,
        pattern,
        contained,
        multiplicity,
        near_degenerate: multiplicity > 1,
        key,
    }
}

#[derive(Default)]
struct PairOutput {
    quads: Vec<Quadrisecant>,
    degs: Vec<Degeneracy>,
}

/// Least common denominator scale factor of the link, as a rational for
/// unscaling field coordinates.
fn link_unscale(link: &PolyLink) -> Rat {
    let mut denom = BigInt::one();
    for c in 0..link.num_components() {
        for p in link.component(c) {
            for coord in [&p.x, &p.y, &p.z] {
                denom = denom.lcm(coord.denom());
            }
        }
    }
    Rat::new(BigInt::one(), denom)
}

fn process_quadruple(
    link: &PolyLink,
    scaled: &Scaled,
    unscale: &Rat,
    q: [usize; 4],
    out: &mut PairOutput,
) {
    let [i, j, k, l] = q;
    if kernel::prefilter_skips(&scaled.ivs[i], &scaled.ivs[j], &scaled.ivs[k], &scaled.ivs[l]) {
        return;
    }
    let outcome =
        kernel::solve_lean(&scaled.edges[i], &scaled.edges[j], &scaled.edges[k], &scaled.edges[l]);
    let edges = [scaled.refs[i], scaled.refs[j], scaled.refs[k], scaled.refs[l]];
    let (solutions, double_root) = match outcome {
        kernel::Lean::DegenerateInfinite => {
            out.degs.push(Degeneracy { edges, kind: DegenerateKind::InfiniteFamily });
            return;
        }
        kernel::Lean::Clean { solutions, double_root_in_range } => {
            (solutions, double_root_in_range)
        }
    };
    if double_root && !solutions.is_empty() {
        out.degs.push(Degeneracy { edges, kind: DegenerateKind::DoubleRoot });
    }
    for sol in &solutions {
        let anchor = scaled.point(i, &sol.s);
        let bpt = scaled.point(j, &sol.t);
        let dir = kernel::avec_sub(&bpt, &anchor);
        let raw = extend_line(scaled, &anchor, &dir);
        if let Some(t) = assemble(scaled, raw, unscale) {
            if t.hits.len() >= 4 {
                out.quads.push(make_quadrisecant(link, t, sol.multiplicity));
            }
        }
    }
}

/// Enumerate all quadrisecants of a validated link.
///
/// Deterministic: the result is identical for any worker count and for
/// pruning on or off.
pub fn enumerate_quadrisecants(
    link: &PolyLink,
    opts: &EnumerateOptions,
) -> Result<Enumeration, StabbingError> {
    let scaled = Scaled::build(link);
    let unscale = link_unscale(link);
    let n = scaled.edges.len();
    let boxes: Vec<Box3> =
        scaled.refs.iter().map(|&e| Box3::of_segment(&link.edge_segment(e))).collect();
    let bvh = if opts.prune { Some(EdgeBvh::build(boxes.clone())) } else { None };

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }

    let work = |&(i, j): &(usize, usize)| -> PairOutput {
        let mut out = PairOutput::default();
        let ks: Vec<usize> = match &bvh {
            Some(tree) => tree
                .candidates(&boxes[i], &boxes[j])
                .into_iter()
                .filter(|&k| k > j)
                .collect(),
            None => (j + 1..n).collect(),
        };
        for (a, &k) in ks.iter().enumerate() {
            for &l in &ks[a + 1..] {
                process_quadruple(link, &scaled, &unscale, [i, j, k, l], &mut out);
            }
        }
        out
    };

    let results: Vec<PairOutput> = if opts.workers <= 1 {
        pairs.iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| StabbingError::Pool(e.to_string()))?;
        pool.install(|| pairs.par_iter().map(work).collect())
    };

    let mut by_key: BTreeMap<QuadKey, Quadrisecant> = BTreeMap::new();
    let mut degeneracies: Vec<Degeneracy> = Vec::new();
    for chunk in results {
        for q in chunk.quads {
            match by_key.entry(q.key.clone()) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(q);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let cur = o.get_mut();
                    cur.near_degenerate |= q.near_degenerate;
                    cur.multiplicity = cur.multiplicity.max(q.multiplicity);
                }
            }
        }
        degeneracies.extend(chunk.degs);
    }
    degeneracies.sort();
    degeneracies.dedup();

    if opts.strict {
        if let Some(first) = degeneracies.first() {
            return Err(StabbingError::StrictDegenerate {
                count: degeneracies.len(),
                first: format!(
                    "{:?} on edges {} {} {} {}",
                    first.kind, first.edges[0], first.edges[1], first.edges[2], first.edges[3]
                ),
            });
        }
    }

    Ok(Enumeration { quadrisecants: by_key.into_values().collect(), degeneracies })
}

/// The spec'd per-quadruple kernel on arbitrary rational segments: scale
/// to integers locally and solve.
pub fn transversals_of_four_edges(
    e1: &Segment3,
    e2: &Segment3,
    e3: &Segment3,
    e4: &Segment3,
) -> SolveOutcome {
    let mut denom = BigInt::one();
    for seg in [e1, e2, e3, e4] {
        for p in [&seg.a, &seg.b] {
            for c in [&p.x, &p.y, &p.z] {
                denom = denom.lcm(c.denom());
            }
        }
    }
    let scale = Rat::from_integer(denom);
    let to_seg = |seg: &Segment3| -> ISeg {
        let f = |r: &Rat| (r * &scale).to_integer();
        ISeg {
            a: [f(&seg.a.x), f(&seg.a.y), f(&seg.a.z)],
            b: [f(&seg.b.x), f(&seg.b.y), f(&seg.b.z)],
        }
    };
    kernel::solve(&to_seg(e1), &to_seg(e2), &to_seg(e3), &to_seg(e4))
}

/// Maximal transversals arising from one specific edge quadruple: solve
/// the quadruple exactly, then extend each in-range solution line against
/// the whole link and assemble it canonically. Used for targeted
/// cross-checks (the obstruction atlas certifies its crossing candidates
/// through this) — results carry the same canonical form and keys as
/// [`enumerate_quadrisecants`] output.
pub fn transversals_of_quadruple(link: &PolyLink, refs: [EdgeRef; 4]) -> Vec<Transversal> {
    let scaled = Scaled::build(link);
    let unscale = link_unscale(link);
    let mut flat = [0usize; 4];
    for (slot, r) in refs.iter().enumerate() {
        match scaled.refs.iter().position(|x| x == r) {
            Some(i) => flat[slot] = i,
            None => return Vec::new(),
        }
    }
    let [i, j, k, l] = flat;
    let outcome =
        kernel::solve_lean(&scaled.edges[i], &scaled.edges[j], &scaled.edges[k], &scaled.edges[l]);
    let solutions = match outcome {
        kernel::Lean::DegenerateInfinite => return Vec::new(),
        kernel::Lean::Clean { solutions, .. } => solutions,
    };
    let mut out = Vec::new();
    for sol in &solutions {
        let anchor = scaled.point(i, &sol.s);
        let bpt = scaled.point(j, &sol.t);
        let dir = kernel::avec_sub(&bpt, &anchor);
        let raw = extend_line(&scaled, &anchor, &dir);
        if let Some(t) = assemble(&scaled, raw, &unscale) {
            out.push(t);
        }
    }
    out
}

/// All link intersections of an explicitly given rational line, as a
/// canonical transversal. `None` when the line meets the link in fewer
/// than two points.
pub fn transversal_from_line(
    link: &PolyLink,
    anchor: &Point3,
    toward: &Point3,
) -> Option<Transversal> {
    let scaled = Scaled::build(link);
    let unscale = link_unscale(link);
    let scale = unscale.recip();
    let lift = |p: &Point3| -> AVec {
        [
            AlgReal::Rat(&p.x * &scale),
            AlgReal::Rat(&p.y * &scale),
            AlgReal::Rat(&p.z * &scale),
        ]
    };
    let a = lift(anchor);
    let b = lift(toward);
    let dir = kernel::avec_sub(&b, &a);
    if kernel::avec_is_zero(&dir) {
        return None;
    }
    let raw = extend_line(&scaled, &a, &dir);
    assemble(&scaled, raw, &unscale)
}

/// Exact re-verification of a transversal against its link: every hit and
/// run endpoint must satisfy the incidence identity
/// `edge point(t) = anchor + λ·direction` in the field, with hits strictly
/// ordered and the canonical frame normalized.
pub fn verify_transversal(link: &PolyLink, t: &Transversal) -> bool {
    if t.hits.len() < 2 {
        return false;
    }
    let point_at = |comp: usize, edge: usize, u: &AlgReal| -> [AlgReal; 3] {
        let seg = link.edge_segment(EdgeRef { component: comp, edge });
        let lerp = |a: &Rat, b: &Rat| -> AlgReal {
            u.scale(&(b - a)).add_rat(a)
        };
        [lerp(&seg.a.x, &seg.b.x), lerp(&seg.a.y, &seg.b.y), lerp(&seg.a.z, &seg.b.z)]
    };
    let on_line = |lambda: &AlgReal, x: &[AlgReal; 3]| -> bool {
        (0..3).all(|c| {
            t.anchor[c].add(&t.direction[c].mul(lambda)).sub(&x[c]).is_zero()
        })
    };
    if !t.hits[0].lambda.is_zero() || !t.hits[t.hits.len() - 1].lambda.sub(&AlgReal::one()).is_zero()
    {
        return false;
    }
    for w in t.hits.windows(2) {
        if !w[0].lambda.cmp_any(&w[1].lambda).is_lt() {
            return false;
        }
    }
    for h in &t.hits {
        if !h.at.t.in_half_open_unit() {
            return false;
        }
        let x = point_at(h.at.component, h.at.edge, &h.at.t);
        if !on_line(&h.lambda, &x) {
            return false;
        }
    }
    for r in &t.runs {
        let p = point_at(r.edge.component, r.edge.edge, &AlgReal::zero());
        let q = point_at(r.edge.component, r.edge.edge, &AlgReal::one());
        if !on_line(&r.lambda_in, &p) || !on_line(&r.lambda_out, &q) {
            return false;
        }
    }
    true
}

/// Exact re-verification of a quadrisecant: transversal validity, at least
/// four hits (strict betweenness of the middle two follows from the strict
/// λ ordering), and consistent classification.
pub fn verify_quadrisecant(link: &PolyLink, q: &Quadrisecant) -> bool {
    if q.transversal.hits.len() < 4 || !verify_transversal(link, &q.transversal) {
        return false;
    }
    let (pattern, contained) = classify_pattern(link, &q.transversal);
    pattern == q.pattern && contained == q.contained && q.key == transversal_key(&q.transversal)
}

/// Closed intersection of a rational line with a rational segment: the
/// contact points (both endpoints for a contained segment), or `None`
/// when they do not meet.
fn line_segment_contacts(anchor: &Point3, dirp: &Point3, seg: &Segment3) -> Option<Vec<Point3>> {
    let dir = dirp.sub(anchor);
    let dseg = seg.b.sub(&seg.a);
    let n = dir.cross(&dseg);
    let r = seg.a.sub(anchor);
    if n.norm2().is_zero() {
        if r.cross(&dir).norm2().is_zero() {
            return Some(vec![seg.a.clone(), seg.b.clone()]);
        }
        return None;
    }
    if !r.dot(&dir.cross(&dseg)).is_zero() {
        return None;
    }
    let n2 = n.dot(&n);
    let u = r.cross(&dir).dot(&n) / &n2;
    if u.is_negative() || u > Rat::one() {
        return None;
    }
    Some(vec![seg.a.add_dir(&dseg.scale(&u))])
}

/// Does some line meet all four coplanar segments in at least four
/// distinct points? By a pivoting argument, a transversal of four closed
/// coplanar segments can be moved until it passes through two of the
/// eight endpoints, so only those candidate lines are examined. Contact
/// points are collected exactly and deduplicated, which keeps shared
/// vertices of adjacent edges from being double-counted (a convex
/// polygon's vertex lines are harmless).
fn coplanar_quadruple_has_transversal(segs: &[Segment3; 4]) -> bool {
    let mut pts: Vec<Point3> = Vec::with_capacity(8);
    for s in segs {
        pts.push(s.a.clone());
        pts.push(s.b.clone());
    }
    let line_stabs = |x: &Point3, y: &Point3| -> bool {
        let mut contacts: Vec<Point3> = Vec::new();
        for s in segs {
            match line_segment_contacts(x, y, s) {
                None => return false,
                Some(cs) => contacts.extend(cs),
            }
        }
        contacts.sort_by(|a, b| (&a.x, &a.y, &a.z).cmp(&(&b.x, &b.y, &b.z)));
        contacts.dedup();
        contacts.len() >= 4
    };
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] != pts[j] && line_stabs(&pts[i], &pts[j]) {
                return true;
            }
        }
    }
    false
}

fn all_coplanar(segs: &[Segment3; 4]) -> bool {
    let mut pts: Vec<&Point3> = Vec::with_capacity(8);
    for s in segs {
        pts.push(&s.a);
        pts.push(&s.b);
    }
    // Find an affine basis among the points, then test the rest.
    let origin = pts[0];
    let mut u = None;
    let mut v = None;
    for p in &pts[1..] {
        let d = p.sub(origin);
        if d.norm2().is_zero() {
            continue;
        }
        match (&u, &v) {
            (None, _) => u = Some(d),
            (Some(du), None) => {
                if !du.cross(&d).norm2().is_zero() {
                    v = Some(d);
                }
            }
            _ => break,
        }
    }
    let (du, dv) = match (u, v) {
        (Some(du), Some(dv)) => (du, dv),
        // All points collinear (or coincident): trivially coplanar.
        _ => return true,
    };
    let normal = du.cross(&dv);
    pts.iter().all(|p| p.sub(origin).dot(&normal).is_zero())
}

/// Diagnose the piecewise-linear general-position conditions:
/// no vertex on the line of a non-incident edge; no line through five
/// edges; no tangential or un-enumerable transversal family that actually
/// touches the link.
pub fn gp_diagnose(link: &PolyLink) -> GPReport {
    let mut report = GPReport::default();

    // Condition I/II analogue: vertices against edge lines.
    for e in link.edges() {
        let seg = link.edge_segment(e);
        let d = seg.b.sub(&seg.a);
        for c in 0..link.num_components() {
            let len = link.component_len(c);
            for vi in 0..len {
                if c == e.component && (vi == e.edge || vi == (e.edge + 1) % len) {
                    continue;
                }
                let v = link.vertex(c, vi);
                if v.sub(&seg.a).cross(&d).norm2().is_zero() {
                    report.collinear_vertex.witnesses.push(GPWitness {
                        edges: vec![e],
                        note: format!("vertex {}#{} lies on the edge's line", link.label(c), vi),
                    });
                }
            }
        }
    }

    // Conditions III and IV need the enumeration.
    let en = enumerate_quadrisecants(link, &EnumerateOptions::default())
        .expect("non-strict enumeration is total");
    for q in &en.quadrisecants {
        if q.transversal.hits.len() >= 5 {
            report.five_edge_line.witnesses.push(GPWitness {
                edges: q.transversal.hits.iter().map(|h| h.at.edge_ref()).collect(),
                note: format!("one line meets {} edges", q.transversal.hits.len()),
            });
        }
    }
    for d in &en.degeneracies {
        match d.kind {
            DegenerateKind::DoubleRoot => {
                report.tangent_family.witnesses.push(GPWitness {
                    edges: d.edges.to_vec(),
                    note: "tangential transversal family (double root)".to_string(),
                });
            }
            DegenerateKind::InfiniteFamily => {
                let segs = [
                    link.edge_segment(d.edges[0]),
                    link.edge_segment(d.edges[1]),
                    link.edge_segment(d.edges[2]),
                    link.edge_segment(d.edges[3]),
                ];
                // A continuum of candidate lines is harmless unless some
                // of them actually meet all four segments.
                let touches = if all_coplanar(&segs) {
                    coplanar_quadruple_has_transversal(&segs)
                } else {
                    true // cannot decide: report conservatively
                };
                if touches {
                    report.tangent_family.witnesses.push(GPWitness {
                        edges: d.edges.to_vec(),
                        note: "un-enumerable transversal family touching the link".to_string(),
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::link::preset;

    fn pt(x: i64, y: i64, z: i64) -> Point3 {
        Point3::ints(x, y, z)
    }

    #[test]
    fn round_unknot_has_no_quadrisecants() {
        let link = preset("round_unknot", 16, 0).unwrap();
        let en = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        assert!(en.quadrisecants.is_empty());
        // Coplanar quadruples are honestly flagged, but none of them
        // touches the polygon (convexity), as gp_diagnose confirms below.
        assert!(en
            .degeneracies
            .iter()
            .all(|d| d.kind == DegenerateKind::InfiniteFamily));
    }

    #[test]
    fn gp_clean_on_round_unknot() {
        let link = preset("round_unknot", 16, 0).unwrap();
        let report = gp_diagnose(&link);
        assert!(report.all_pass(), "witnesses: {:?}", report);
    }

    /// The exact preset has mirror symmetries that make a handful of
    /// symmetric quadruples exactly degenerate (their key vertices are
    /// forced onto a common plane through the symmetry axis), so the
    /// trefoil is always enumerated after a small jitter.
    fn perturbed_trefoil(n: usize) -> PolyLink {
        preset("trefoil_t23", n, 0).unwrap().perturb(&rat(3, 500_000), 7).unwrap()
    }

    #[test]
    fn trefoil_quadrisecants_exist_and_verify() {
        let link = perturbed_trefoil(30);
        let en = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        assert!(!en.quadrisecants.is_empty(), "trefoil must have a quadrisecant");
        assert!(en.degeneracies.is_empty(), "{:?}", en.degeneracies);
        for q in &en.quadrisecants {
            assert!(verify_quadrisecant(&link, q));
            assert_eq!(q.pattern, "AAAA");
        }
    }

    #[test]
    fn unperturbed_symmetry_degeneracies_are_flagged() {
        // Sanity-pin the behavior discussed above: the exact symmetric
        // trefoil reports infinite families instead of silently dropping
        // quadruples.
        let link = preset("trefoil_t23", 30, 0).unwrap();
        let en = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        assert!(!en.degeneracies.is_empty());
        assert!(en
            .degeneracies
            .iter()
            .all(|d| d.kind == DegenerateKind::InfiniteFamily));
    }

    #[test]
    fn pruning_changes_nothing() {
        let link = perturbed_trefoil(30);
        let pruned = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        let naive = enumerate_quadrisecants(
            &link,
            &EnumerateOptions { prune: false, ..Default::default() },
        )
        .unwrap();
        let keys = |e: &Enumeration| -> Vec<QuadKey> {
            e.quadrisecants.iter().map(|q| q.key.clone()).collect()
        };
        assert_eq!(keys(&pruned), keys(&naive));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let link = preset("hopf", 12, 0).unwrap();
        let one = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        let eight = enumerate_quadrisecants(
            &link,
            &EnumerateOptions { workers: 8, ..Default::default() },
        )
        .unwrap();
        assert_eq!(format!("{:?}", one), format!("{:?}", eight));
    }

    #[test]
    fn hopf_has_alternating_pattern() {
        let link = preset("hopf", 12, 0).unwrap();
        let en = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        let abab = en.quadrisecants.iter().filter(|q| q.pattern == "ABAB").count();
        assert!(abab >= 1, "patterns: {:?}", en
            .quadrisecants
            .iter()
            .map(|q| q.pattern.clone())
            .collect::<Vec<_>>());
        for q in &en.quadrisecants {
            assert!(verify_quadrisecant(&link, q));
        }
    }

    #[test]
    fn isometry_permutes_nothing_in_the_keys() {
        // Exact rational rotation (3-4-5 in the xy-plane) + translation:
        // hit parameters are affine-invariant, so key sets must be equal.
        let link = perturbed_trefoil(30);
        let rot = |p: &Point3| -> Point3 {
            let c = rat(3, 5);
            let s = rat(4, 5);
            Point3 {
                x: &c * &p.x - &s * &p.y + rat(1, 1),
                y: &s * &p.x + &c * &p.y - rat(2, 1),
                z: p.z.clone() + rat(3, 1),
            }
        };
        let moved = PolyLink::new(
            (0..link.num_components())
                .map(|c| link.component(c).iter().map(&rot).collect())
                .collect(),
        )
        .unwrap();
        let before = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        let after = enumerate_quadrisecants(&moved, &EnumerateOptions::default()).unwrap();
        let keys = |e: &Enumeration| -> Vec<QuadKey> {
            e.quadrisecants.iter().map(|q| q.key.clone()).collect()
        };
        assert_eq!(keys(&before), keys(&after));
    }

    /// One component holding a straight collinear run on the x-axis from
    /// (1,0,0) to (2,0,0), closed far above; two small triangles crossing
    /// the axis transversally at x = 0 and x = 3.
    fn collinear_run_link() -> PolyLink {
        let a = vec![
            pt(1, 0, 0),
            pt(2, 0, 0),
            pt(2, 1, 4),
            pt(1, 1, 4),
        ];
        let b = vec![pt(0, -1, -1), pt(0, 1, 1), pt(0, 0, 5)];
        let c = vec![pt(3, -1, -1), pt(3, 1, 1), pt(3, 0, 5)];
        PolyLink::new(vec![a, b, c]).unwrap()
    }

    #[test]
    fn contained_secant_classification() {
        let link = collinear_run_link();
        let t = transversal_from_line(&link, &pt(0, 0, 0), &pt(1, 0, 0)).unwrap();
        assert_eq!(t.hits.len(), 4, "hits: {:?}", t.hits);
        assert!(verify_transversal(&link, &t));
        let (pattern, contained) = classify_pattern(&link, &t);
        assert_eq!(pattern, "BAAC");
        assert_eq!(contained, [false, true, false]);
    }

    /// A component whose zigzag descents all cross the x-axis at their
    /// midpoints with pairwise independent directions, closed high above.
    /// The strictly convex height profile keeps every other triple of
    /// vertices off a common line, so the axis is the only long secant.
    fn five_crossing_link() -> PolyLink {
        let mut v = Vec::new();
        for k in 0..5i64 {
            v.push(Point3::ints(2 * k, 1, k * k + 1));
            v.push(Point3::ints(2 * k + 1, -1, -(k * k + 1)));
        }
        v.push(pt(9, 6, 6));
        v.push(pt(-2, 6, 6));
        PolyLink::new(vec![v]).unwrap()
    }

    #[test]
    fn five_edge_line_reported_with_all_hits() {
        let link = five_crossing_link();
        let axis = transversal_from_line(&link, &pt(0, 0, 0), &pt(1, 0, 0))
            .expect("the x-axis is a transversal");
        assert_eq!(axis.hits.len(), 5);
        for h in &axis.hits {
            assert_eq!(h.at.t, AlgReal::Rat(rat(1, 2)));
            assert_eq!(h.at.edge_ref().component, 0);
            assert_eq!(h.at.edge_ref().edge % 2, 0);
        }
        let en = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        let long = en
            .quadrisecants
            .iter()
            .find(|q| q.key == transversal_key(&axis))
            .expect("the axis line must appear in the enumeration");
        assert_eq!(long.transversal.hits.len(), 5);
        let report = gp_diagnose(&link);
        assert!(!report.five_edge_line.pass());
        assert!(report.collinear_vertex.pass());
    }

    #[test]
    fn gp_detects_vertex_on_edge_line() {
        // Vertex (5,0,0) of the second component sits on the line of the
        // first component's bottom edge (the x-axis).
        let a = vec![pt(0, 0, 0), pt(2, 0, 0), pt(2, 3, 1), pt(0, 3, 1)];
        let b = vec![pt(5, 0, 0), pt(7, 1, 2), pt(5, 2, 4)];
        let link = PolyLink::new(vec![a, b]).unwrap();
        let report = gp_diagnose(&link);
        assert!(!report.collinear_vertex.pass());
    }

    #[test]
    fn public_kernel_wrapper_matches_direct_solve() {
        let e1 = Segment3 { a: pt(1, -1, 0), b: pt(1, 1, 0) };
        let e2 = Segment3 { a: pt(2, -1, -1), b: pt(2, 1, 1) };
        let e3 = Segment3 { a: pt(3, -1, 1), b: pt(3, 1, -1) };
        let e4 = Segment3 { a: pt(4, -2, -1), b: pt(4, 2, 1) };
        let out = transversals_of_four_edges(&e1, &e2, &e3, &e4);
        assert!(out
            .solutions
            .iter()
            .any(|s| s.s == AlgReal::Rat(rat(1, 2)) && s.t == AlgReal::Rat(rat(1, 2))));
    }
}
