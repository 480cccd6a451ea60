//! Conservative pruning for the quadruple enumeration.
//!
//! Every edge gets a certified floating-point bounding box. For a fixed
//! anchor pair of edges, a transversal passes through both of their boxes;
//! parametrizing candidate lines as X(λ) = A + λ(B − A) with A in the
//! first box and B in the second, each axis of a third box constrains λ to
//! an outward-rounded interval. If the three axis intervals have empty
//! intersection, no line through the first two boxes can meet the third —
//! so the whole subtree of a box hierarchy can be skipped. The test is
//! conservative only (never prunes a true transversal); all hits are
//! certified later by the exact kernel.

use crate::exact::{f64_enclosure, next_down, next_up};
use crate::geom::Segment3;

#[derive(Clone, Copy, Debug)]
pub struct Box3 {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

impl Box3 {
    pub fn of_segment(seg: &Segment3) -> Self {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in [&seg.a, &seg.b] {
            for (k, c) in [&p.x, &p.y, &p.z].into_iter().enumerate() {
                let (l, h) = f64_enclosure(c);
                lo[k] = lo[k].min(l);
                hi[k] = hi[k].max(h);
            }
        }
        Box3 { lo, hi }
    }

    pub fn union(&self, other: &Box3) -> Box3 {
        let mut lo = [0.0; 3];
        let mut hi = [0.0; 3];
        for k in 0..3 {
            lo[k] = self.lo[k].min(other.lo[k]);
            hi[k] = self.hi[k].max(other.hi[k]);
        }
        Box3 { lo, hi }
    }

    fn center(&self, axis: usize) -> f64 {
        0.5 * (self.lo[axis] + self.hi[axis])
    }
}

/// Outward-rounded interval subtraction: [a] − [b].
fn isub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (next_down(a.0 - b.1), next_up(a.1 - b.0))
}

/// Conservative λ-set contributed by one axis: all λ for which some
/// A in `ia`, B in `ib` put A + λ(B − A) inside `ic`.
enum AxisSet {
    All,
    Interval(f64, f64),
    /// (−∞, neg_hi] ∪ [pos_lo, ∞); either ray may be absent (NaN-free
    /// encoding: use ±∞ for a missing ray).
    Rays { neg_hi: f64, pos_lo: f64 },
    Empty,
}

fn axis_set(ia: (f64, f64), ib: (f64, f64), ic: (f64, f64)) -> AxisSet {
    let num = isub(ic, ia); // C − A
    let den = isub(ib, ia); // B − A
    let den_has_zero = den.0 <= 0.0 && den.1 >= 0.0;
    if den_has_zero {
        if num.0 <= 0.0 && num.1 >= 0.0 {
            // Both can vanish: λ unconstrained on this axis.
            return AxisSet::All;
        }
        // Direction component may vanish but the gap cannot: only large
        // |λ| works. With num one-signed and den straddling zero the set
        // is two rays whose cutoffs come from the extreme quotients.
        if den.0 == 0.0 && den.1 == 0.0 {
            return AxisSet::Empty;
        }
        // Which sign of den yields which ray depends on the sign of num;
        // in each case the cutoff quotient uses the num value of smallest
        // magnitude against the den endpoint of largest magnitude.
        let (neg_hi, pos_lo) = if num.0 > 0.0 {
            (
                if den.0 < 0.0 { next_up(num.0 / den.0) } else { f64::NEG_INFINITY },
                if den.1 > 0.0 { next_down(num.0 / den.1) } else { f64::INFINITY },
            )
        } else {
            (
                if den.1 > 0.0 { next_up(num.1 / den.1) } else { f64::NEG_INFINITY },
                if den.0 < 0.0 { next_down(num.1 / den.0) } else { f64::INFINITY },
            )
        };
        return AxisSet::Rays { neg_hi, pos_lo };
    }
    let q = [num.0 / den.0, num.0 / den.1, num.1 / den.0, num.1 / den.1];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in q {
        if v.is_nan() {
            return AxisSet::All;
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    AxisSet::Interval(next_down(lo), next_up(hi))
}

/// Intersect a union of disjoint intervals with one axis constraint.
fn intersect(set: &mut Vec<(f64, f64)>, axis: AxisSet) {
    match axis {
        AxisSet::All => {}
        AxisSet::Empty => set.clear(),
        AxisSet::Interval(lo, hi) => {
            set.retain_mut(|iv| {
                iv.0 = iv.0.max(lo);
                iv.1 = iv.1.min(hi);
                iv.0 <= iv.1
            });
        }
        AxisSet::Rays { neg_hi, pos_lo } => {
            let mut out = Vec::with_capacity(set.len() * 2);
            for &(lo, hi) in set.iter() {
                if neg_hi > f64::NEG_INFINITY && lo <= neg_hi {
                    out.push((lo, hi.min(neg_hi)));
                }
                if pos_lo < f64::INFINITY && hi >= pos_lo {
                    out.push((lo.max(pos_lo), hi));
                }
            }
            *set = out;
        }
    }
}

/// Can some straight line pass through `a`, `b`, and `c`? Conservative:
/// `true` may be wrong, `false` is certain.
pub fn line_can_meet(a: &Box3, b: &Box3, c: &Box3) -> bool {
    let mut lam = vec![(f64::NEG_INFINITY, f64::INFINITY)];
    for k in 0..3 {
        let axis = axis_set((a.lo[k], a.hi[k]), (b.lo[k], b.hi[k]), (c.lo[k], c.hi[k]));
        intersect(&mut lam, axis);
        if lam.is_empty() {
            return false;
        }
    }
    true
}

enum Node {
    Leaf { start: usize, end: usize },
    Inner { left: usize, right: usize },
}

/// A static median-split hierarchy over edge bounding boxes.
pub struct EdgeBvh {
    boxes: Vec<Box3>,
    nodes: Vec<(Box3, Node)>,
    order: Vec<usize>,
    root: usize,
}

const LEAF_SIZE: usize = 4;

impl EdgeBvh {
    pub fn build(boxes: Vec<Box3>) -> Self {
        let mut order: Vec<usize> = (0..boxes.len()).collect();
        let mut bvh = EdgeBvh { boxes, nodes: Vec::new(), order: Vec::new(), root: 0 };
        if bvh.boxes.is_empty() {
            bvh.nodes.push((
                Box3 { lo: [0.0; 3], hi: [0.0; 3] },
                Node::Leaf { start: 0, end: 0 },
            ));
            return bvh;
        }
        let root = bvh.split(&mut order, 0);
        bvh.order = order;
        bvh.root = root;
        bvh
    }

    fn split(&mut self, order: &mut [usize], offset: usize) -> usize {
        let mut bb = self.boxes[order[0]];
        for &i in order.iter().skip(1) {
            bb = bb.union(&self.boxes[i]);
        }
        if order.len() <= LEAF_SIZE {
            self.nodes.push((bb, Node::Leaf { start: offset, end: offset + order.len() }));
            return self.nodes.len() - 1;
        }
        let mut axis = 0;
        let mut widest = f64::NEG_INFINITY;
        for k in 0..3 {
            let w = bb.hi[k] - bb.lo[k];
            if w > widest {
                widest = w;
                axis = k;
            }
        }
        let mid = order.len() / 2;
        order.sort_by(|&i, &j| {
            self.boxes[i]
                .center(axis)
                .partial_cmp(&self.boxes[j].center(axis))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let (lo, hi) = order.split_at_mut(mid);
        let left = self.split(lo, offset);
        let right = self.split(hi, offset + mid);
        self.nodes.push((bb, Node::Inner { left, right }));
        self.nodes.len() - 1
    }

    pub fn edge_box(&self, i: usize) -> &Box3 {
        &self.boxes[i]
    }

    /// All edges whose box admits a common line with the two anchors.
    /// Results are in ascending index order.
    pub fn candidates(&self, a: &Box3, b: &Box3) -> Vec<usize> {
        let mut out = Vec::new();
        if self.boxes.is_empty() {
            return out;
        }
        let mut stack = vec![self.root];
        while let Some(n) = stack.pop() {
            let (bb, node) = &self.nodes[n];
            if !line_can_meet(a, b, bb) {
                continue;
            }
            match node {
                Node::Leaf { start, end } => {
                    for &i in &self.order[*start..*end] {
                        if line_can_meet(a, b, &self.boxes[i]) {
                            out.push(i);
                        }
                    }
                }
                Node::Inner { left, right } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(lo: [f64; 3], hi: [f64; 3]) -> Box3 {
        Box3 { lo, hi }
    }

    #[test]
    fn collinear_boxes_pass() {
        let a = boxed([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]);
        let b = boxed([5.0, 0.0, 0.0], [6.0, 1.0, 1.0]);
        let c = boxed([10.0, 0.0, 0.0], [11.0, 1.0, 1.0]);
        assert!(line_can_meet(&a, &b, &c));
    }

    #[test]
    fn far_offset_box_pruned() {
        // Tiny anchors near the x-axis; target far off in y at an x
        // position between them, so any through-line stays near the axis.
        let a = boxed([0.0, 0.0, 0.0], [0.1, 0.1, 0.1]);
        let b = boxed([10.0, 0.0, 0.0], [10.1, 0.1, 0.1]);
        let c = boxed([5.0, 50.0, 0.0], [5.1, 50.1, 0.1]);
        assert!(!line_can_meet(&a, &b, &c));
    }

    #[test]
    fn behind_anchor_extension_allowed() {
        // The line extends beyond the anchor pair: a box behind A on the
        // A→B line must not be pruned (λ < 0).
        let a = boxed([0.0, -0.1, -0.1], [0.1, 0.1, 0.1]);
        let b = boxed([10.0, -0.1, -0.1], [10.1, 0.1, 0.1]);
        let c = boxed([-20.0, -0.5, -0.5], [-19.0, 0.5, 0.5]);
        assert!(line_can_meet(&a, &b, &c));
    }

    #[test]
    fn meet_test_is_conservative() {
        // Sample genuine lines through the first two boxes; whenever such
        // a line crosses the third box (with a safety margin), the filter
        // must not prune. Plain slab test for the sampled verdict.
        fn crosses(a: [f64; 3], b: [f64; 3], c: &Box3, margin: f64) -> bool {
            let (mut l, mut h) = (f64::NEG_INFINITY, f64::INFINITY);
            for k in 0..3 {
                let d = b[k] - a[k];
                let (clo, chi) = (c.lo[k] + margin, c.hi[k] - margin);
                if clo > chi {
                    return false;
                }
                if d == 0.0 {
                    if a[k] < clo || a[k] > chi {
                        return false;
                    }
                    continue;
                }
                let (t0, t1) = ((clo - a[k]) / d, (chi - a[k]) / d);
                let (t0, t1) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
                l = l.max(t0);
                h = h.min(t1);
                if l > h {
                    return false;
                }
            }
            true
        }
        fn rnd(state: &mut u64) -> f64 {
            *state ^= *state << 13;
            *state ^= *state >> 7;
            *state ^= *state << 17;
            (*state >> 11) as f64 / (1u64 << 53) as f64
        }
        fn rnd_box(state: &mut u64) -> Box3 {
            let c = [rnd(state) * 8.0 - 4.0, rnd(state) * 8.0 - 4.0, rnd(state) * 8.0 - 4.0];
            let e = [rnd(state) * 1.5, rnd(state) * 1.5, rnd(state) * 1.5];
            Box3 {
                lo: [c[0] - e[0], c[1] - e[1], c[2] - e[2]],
                hi: [c[0] + e[0], c[1] + e[1], c[2] + e[2]],
            }
        }
        fn rnd_in(state: &mut u64, b: &Box3) -> [f64; 3] {
            [
                b.lo[0] + rnd(state) * (b.hi[0] - b.lo[0]),
                b.lo[1] + rnd(state) * (b.hi[1] - b.lo[1]),
                b.lo[2] + rnd(state) * (b.hi[2] - b.lo[2]),
            ]
        }
        let mut state = 0x2545f4914f6cdd1du64;
        let mut hits = 0usize;
        for _ in 0..4000 {
            let (ba, bb, bc) = (rnd_box(&mut state), rnd_box(&mut state), rnd_box(&mut state));
            let a = rnd_in(&mut state, &ba);
            let b = rnd_in(&mut state, &bb);
            if crosses(a, b, &bc, 1e-9) {
                hits += 1;
                assert!(
                    line_can_meet(&ba, &bb, &bc),
                    "pruned a box crossed by a real line: a={a:?} b={b:?}"
                );
            }
        }
        assert!(hits > 150, "sampling produced too few crossing cases: {hits}");
    }

    #[test]
    fn bvh_candidates_match_brute_force() {
        // Deterministic pseudo-random boxes; BVH candidate set must equal
        // the direct per-box filter.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut boxes = Vec::new();
        for _ in 0..120 {
            let c = [next() * 20.0 - 10.0, next() * 20.0 - 10.0, next() * 20.0 - 10.0];
            let e = [next() * 0.5, next() * 0.5, next() * 0.5];
            boxes.push(Box3 {
                lo: [c[0] - e[0], c[1] - e[1], c[2] - e[2]],
                hi: [c[0] + e[0], c[1] + e[1], c[2] + e[2]],
            });
        }
        let bvh = EdgeBvh::build(boxes.clone());
        for (i, j) in [(0usize, 1usize), (5, 80), (30, 31), (100, 7)] {
            let got = bvh.candidates(&boxes[i], &boxes[j]);
            let want: Vec<usize> = (0..boxes.len())
                .filter(|&k| line_can_meet(&boxes[i], &boxes[j], &boxes[k]))
                .collect();
            assert_eq!(got, want, "candidate mismatch for anchors ({i},{j})");
        }
    }
}
