//! Deterministic rendering of results: versioned structured-text
//! reports, CSV tables, SVG chart drawings, and triangle meshes.
//!
//! Every numeric value flows through the certified decimal renderer, so
//! each emitted file is a pure function of its mathematical inputs:
//! reruns with different worker counts, or on different platforms,
//! produce byte-identical output. Reports carry no timestamps or
//! environment details; the reproducibility context lives in the run
//! manifest, which records the full effective configuration of the run.
//!
//! Structured reports additionally state a per-record *residual bound*:
//! an exact upper bound on the distance between any printed decimal and
//! the (possibly irrational) value it stands for, computed from the
//! printed string and a certified enclosure — never from the printing
//! path itself.

use crate::algebra::UniPoly;
use crate::exact::{
    parse_scalar, rat, rat_to_f64, render_decimal, render_f64, render_rat, AlgReal, Rat,
};
use crate::link::PolyLink;
use crate::obstruction::{ChordDisk, ObstructionAtlas};
use crate::stabbing::{Enumeration, Transversal};
use crate::surfaces::Degree8Report;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

/// Version stamp of every structured output produced by this module.
pub const SCHEMA_VERSION: u32 = 1;

fn pow10_rat(k: i64) -> Rat {
    let p = BigInt::from(10u8).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Smallest power of ten that bounds `b` from above, as `1e<k>`.
fn bound_pow10(b: &Rat) -> String {
    if b.is_zero() {
        return "0".to_string();
    }
    let mut k = rat_to_f64(b).abs().log10().ceil() as i64 + 1;
    while pow10_rat(k - 1) >= *b {
        k -= 1;
    }
    while pow10_rat(k) < *b {
        k += 1;
    }
    format!("1e{k}")
}

/// Exact bound on |value − printed| for one rendered scalar.
fn print_error(value: &AlgReal, printed: &str) -> Rat {
    let p = parse_scalar(printed).expect("rendered decimals parse back");
    match value {
        AlgReal::Rat(r) => (r - &p).abs(),
        other => {
            let (lo, hi) = other.rat_enclosure(128);
            (lo - &p).abs().max((hi - &p).abs())
        }
    }
}

/// Render an algebraic scalar and fold its print error into `worst`.
fn scalar(value: &AlgReal, worst: &mut Rat) -> String {
    let s = render_decimal(value);
    let err = print_error(value, &s);
    if err > *worst {
        *worst = err;
    }
    s
}

fn triple(values: &[AlgReal; 3], worst: &mut Rat) -> String {
    format!(
        "({}, {}, {})",
        scalar(&values[0], worst),
        scalar(&values[1], worst),
        scalar(&values[2], worst)
    )
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn transversal_lines(out: &mut String, t: &Transversal, indent: &str) {
    let mut worst = Rat::zero();
    let anchor = triple(&t.anchor, &mut worst);
    let direction = triple(&t.direction, &mut worst);
    let mut hits = String::new();
    for (i, h) in t.hits.iter().enumerate() {
        let _ = writeln!(
            hits,
            "{indent}hit {}: component {} edge {} t {} lambda {}",
            i + 1,
            h.at.component,
            h.at.edge,
            scalar(&h.at.t, &mut worst),
            scalar(&h.lambda, &mut worst),
        );
    }
    let _ = writeln!(out, "{indent}anchor: {anchor}");
    let _ = writeln!(out, "{indent}direction: {direction}");
    let _ = writeln!(out, "{indent}residual bound: {}", bound_pow10(&worst));
    out.push_str(&hits);
    for r in &t.runs {
        let mut w = Rat::zero();
        let _ = writeln!(
            out,
            "{indent}contained run: edge {} lambda {} to {}",
            r.edge,
            scalar(&r.lambda_in, &mut w),
            scalar(&r.lambda_out, &mut w),
        );
    }
}

/// The primary structured report of a quadrisecant enumeration.
pub fn quadrisecants_report(source: &str, link: &PolyLink, e: &Enumeration) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "quadrisecants report v{SCHEMA_VERSION}");
    let _ = writeln!(out, "link: {source}");
    let _ = writeln!(out, "components: {}", link.num_components());
    let _ = writeln!(out, "edges: {}", link.total_edges());
    let _ = writeln!(out, "quadrisecants: {}", e.quadrisecants.len());
    let _ = writeln!(out, "degeneracies: {}", e.degeneracies.len());
    for (i, q) in e.quadrisecants.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "quadrisecant {}", i + 1);
        let _ = writeln!(out, "  pattern: {}", q.pattern);
        let _ = writeln!(out, "  multiplicity: {}", q.multiplicity);
        let _ = writeln!(out, "  near degenerate: {}", yes_no(q.near_degenerate));
        let contained: Vec<&str> = ["1-2", "2-3", "3-4"]
            .iter()
            .zip(q.contained.iter())
            .filter(|(_, &c)| c)
            .map(|(s, _)| *s)
            .collect();
        let _ = writeln!(
            out,
            "  contained secants: {}",
            if contained.is_empty() {
                "none".to_string()
            } else {
                contained.join(",")
            }
        );
        transversal_lines(&mut out, &q.transversal, "  ");
    }
    for (i, d) in e.degeneracies.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "degeneracy {}", i + 1);
        let kind = match d.kind {
            crate::stabbing::DegenerateKind::InfiniteFamily => "infinite family",
            crate::stabbing::DegenerateKind::DoubleRoot => "double root",
        };
        let _ = writeln!(out, "  kind: {kind}");
        let _ = writeln!(
            out,
            "  edges: {} {} {} {}",
            d.edges[0], d.edges[1], d.edges[2], d.edges[3]
        );
    }
    out
}

/// CSV table of an enumeration: one row per quadrisecant, first four
/// hits in line order.
pub fn quadrisecants_csv(e: &Enumeration) -> String {
    let mut out = String::from(
        "index,pattern,multiplicity,anchor_x,anchor_y,anchor_z,\
         dir_x,dir_y,dir_z,c1,e1,t1,c2,e2,t2,c3,e3,t3,c4,e4,t4\n",
    );
    for (i, q) in e.quadrisecants.iter().enumerate() {
        let t = &q.transversal;
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            i + 1,
            q.pattern,
            q.multiplicity,
            render_decimal(&t.anchor[0]),
            render_decimal(&t.anchor[1]),
            render_decimal(&t.anchor[2]),
            render_decimal(&t.direction[0]),
            render_decimal(&t.direction[1]),
            render_decimal(&t.direction[2]),
        );
        for h in t.hits.iter().take(4) {
            let _ = write!(
                out,
                ",{},{},{}",
                h.at.component,
                h.at.edge,
                render_decimal(&h.at.t)
            );
        }
        out.push('\n');
    }
    out
}

/// The primary structured report of an obstruction atlas.
pub fn obstruction_report(atlas: &ObstructionAtlas) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "obstruction report v{SCHEMA_VERSION}");
    let _ = writeln!(out, "component: {}", atlas.component);
    let _ = writeln!(out, "samples per edge: {}", atlas.samples_per_edge);
    let _ = writeln!(out, "diagonal margin: {}", render_rat(&atlas.diagonal_margin));
    let _ = writeln!(out, "arcs: {}", atlas.arcs.len());
    let _ = writeln!(out, "crossings: {}", atlas.crossings.len());
    let _ = writeln!(out, "chains: {}", atlas.chains.len());
    for (i, arc) in atlas.arcs.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "arc {}", i + 1);
        let _ = writeln!(out, "  endpoints: {} / {}", arc.endpoints.0, arc.endpoints.1);
        let _ = writeln!(out, "  middle: {}", arc.middle_edge);
        let _ = writeln!(out, "  samples: {}", arc.samples.len());
        let _ = writeln!(out, "  closed: {}", yes_no(arc.closed));
        let a_lo = arc.samples.iter().map(|s| &s.coord.a).min();
        let a_hi = arc.samples.iter().map(|s| &s.coord.a).max();
        let b_lo = arc.samples.iter().map(|s| &s.coord.b).min();
        let b_hi = arc.samples.iter().map(|s| &s.coord.b).max();
        if let (Some(al), Some(ah), Some(bl), Some(bh)) = (a_lo, a_hi, b_lo, b_hi) {
            let _ = writeln!(
                out,
                "  a range: [{}, {}]",
                render_rat(al),
                render_rat(ah)
            );
            let _ = writeln!(
                out,
                "  b range: [{}, {}]",
                render_rat(bl),
                render_rat(bh)
            );
        }
    }
    for (i, c) in atlas.crossings.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "crossing {}", i + 1);
        let _ = writeln!(
            out,
            "  at: ({}, {})",
            render_rat(&c.at.a),
            render_rat(&c.at.b)
        );
        let _ = writeln!(out, "  arcs: {} / {}", c.arcs.0 + 1, c.arcs.1 + 1);
        let _ = writeln!(out, "  hits: {}", c.transversal.hits.len());
    }
    for (i, chain) in atlas.chains.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "chain {}", i + 1);
        let _ = writeln!(out, "  arcs: {}", chain.arcs.len());
        let _ = writeln!(out, "  closed: {}", yes_no(chain.closed));
        let _ = writeln!(
            out,
            "  winding class: {}",
            match chain.winding {
                Some(w) => w.to_string(),
                None => "unknown".to_string(),
            }
        );
        let members: Vec<String> = chain
            .arcs
            .iter()
            .map(|&(idx, fwd)| format!("{}{}", idx + 1, if fwd { "+" } else { "-" }))
            .collect();
        let _ = writeln!(out, "  members: {}", members.join(" "));
        let glues: Vec<String> = chain.glues.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "  glues: {}", glues.join(" "));
    }
    out
}

const SVG_MARGIN: i64 = 20;
const SVG_SCALE: i64 = 800;

fn svg_x(a: &Rat) -> String {
    render_rat(&(rat(SVG_MARGIN, 1) + rat(SVG_SCALE, 1) * a))
}

fn svg_y(b: &Rat) -> String {
    render_rat(&(rat(SVG_MARGIN + SVG_SCALE, 1) - rat(SVG_SCALE, 1) * b))
}

/// Chart square of the secant Möbius strip: the region 0 ≤ a < b < 1
/// above the diagonal, with traced arcs as polylines and crossings as
/// dots. Purely deterministic text.
pub fn obstruction_svg(atlas: &ObstructionAtlas) -> String {
    let side = SVG_SCALE + 2 * SVG_MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {side} {side}\">"
    );
    let _ = writeln!(
        out,
        "  <!-- obstruction chart v{SCHEMA_VERSION}: component {}, {} samples per edge -->",
        atlas.component, atlas.samples_per_edge
    );
    let z = rat(0, 1);
    let o = rat(1, 1);
    let _ = writeln!(
        out,
        "  <rect x=\"{}\" y=\"{}\" width=\"{SVG_SCALE}\" height=\"{SVG_SCALE}\" \
         fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>",
        svg_x(&z),
        svg_y(&o),
    );
    let _ = writeln!(
        out,
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\" \
         stroke-width=\"1\" stroke-dasharray=\"6 4\"/>",
        svg_x(&z),
        svg_y(&z),
        svg_x(&o),
        svg_y(&o),
    );
    for arc in &atlas.arcs {
        let points: Vec<String> = arc
            .samples
            .iter()
            .map(|s| format!("{},{}", svg_x(&s.coord.a), svg_y(&s.coord.b)))
            .collect();
        let _ = writeln!(
            out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f77b4\" \
             stroke-width=\"1.5\"/>",
            points.join(" ")
        );
    }
    for c in &atlas.crossings {
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#d62728\"/>",
            svg_x(&c.at.a),
            svg_y(&c.at.b),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// The chord disk as an OFF triangle mesh (vertex 0 is the apex).
pub fn chord_disk_mesh(disk: &ChordDisk) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "OFF");
    let _ = writeln!(
        out,
        "# chord disk v{SCHEMA_VERSION}: apex at component {} edge {} t {}",
        disk.apex.component,
        disk.apex.edge,
        render_rat(&disk.apex.t)
    );
    let _ = writeln!(out, "{} {} 0", disk.vertices.len(), disk.triangles.len());
    for v in &disk.vertices {
        let _ = writeln!(
            out,
            "{} {} {}",
            render_rat(&v.x),
            render_rat(&v.y),
            render_rat(&v.z)
        );
    }
    for t in &disk.triangles {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

/// One family line of a winding report, pre-rendered by the caller.
pub struct FamilyLine {
    pub records: usize,
    /// Ok((ω₁, ω₂)) or the failure message.
    pub outcome: Result<(i64, i64), String>,
}

/// The primary structured report of a winding analysis.
pub fn winding_report(
    k: usize,
    h: usize,
    holonomy_turns: f64,
    families: &[FamilyLine],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "winding report v{SCHEMA_VERSION}");
    let _ = writeln!(out, "K: {k}");
    let _ = writeln!(out, "H: {h}");
    let _ = writeln!(out, "frame holonomy turns: {}", render_f64(holonomy_turns));
    let _ = writeln!(out, "families: {}", families.len());
    for (i, f) in families.iter().enumerate() {
        let _ = writeln!(out);
        let _ = writeln!(out, "family {}", i + 1);
        let _ = writeln!(out, "  records: {}", f.records);
        match &f.outcome {
            Ok((w1, w2)) => {
                let _ = writeln!(out, "  omega1: {w1}");
                let _ = writeln!(out, "  omega2: {w2}");
            }
            Err(msg) => {
                let _ = writeln!(out, "  error: {msg}");
            }
        }
    }
    out
}

/// CSV of an angle-accumulation profile (see `winding::angle_profile`).
pub fn winding_csv(profile: &[(Rat, f64, f64)]) -> String {
    let mut out = String::from("index,middle_param,angle_turns,accumulated_turns\n");
    for (i, (param, angle, acc)) in profile.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            i,
            render_rat(param),
            render_f64(*angle),
            render_f64(*acc)
        );
    }
    out
}

/// Exact display of a univariate polynomial in the line parameter `t`,
/// highest degree first, coefficients as exact fractions.
pub fn unipoly_text(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let coeffs = p.coeffs();
    let mut parts: Vec<String> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let var = match k {
            0 => String::new(),
            1 => " t".to_string(),
            _ => format!(" t^{k}"),
        };
        let coeff = if mag.is_one() && k > 0 {
            String::new()
        } else {
            format!(" {mag}")
        };
        if parts.is_empty() {
            let sign = if c.is_negative() { "-" } else { "" };
            parts.push(format!("{sign}{}{}", coeff.trim_start(), var).trim_start().to_string());
        } else {
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push(format!("{sign}{coeff}{var}"));
        }
    }
    parts.join(" ")
}

/// The degree-bound verdict as structured text.
pub fn degree8_text(report: &Degree8Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "degree8 report v{SCHEMA_VERSION}");
    let _ = writeln!(
        out,
        "surface degree: {}",
        report
            .surface
            .total_degree()
            .map_or("0 (zero polynomial)".to_string(), |d| d.to_string())
    );
    let _ = writeln!(out, "surface: {}", report.surface.to_text());
    let _ = writeln!(
        out,
        "anchor: ({}, {}, {})",
        render_rat(&report.anchor.x),
        render_rat(&report.anchor.y),
        render_rat(&report.anchor.z)
    );
    let _ = writeln!(
        out,
        "direction: ({}, {}, {})",
        render_rat(&report.line.direction.x),
        render_rat(&report.line.direction.y),
        render_rat(&report.line.direction.z)
    );
    let _ = writeln!(
        out,
        "plucker moment: ({}, {}, {})",
        render_rat(&report.line.moment.x),
        render_rat(&report.line.moment.y),
        render_rat(&report.line.moment.z)
    );
    let _ = writeln!(out, "restriction: {}", unipoly_text(&report.restricted));
    if report.is_flagged() {
        let _ = writeln!(out, "restriction is identically zero: line lies in the surface");
        let _ = writeln!(out, "conclusion: none (flagged)");
    } else {
        let _ = writeln!(
            out,
            "restriction degree: {}",
            report.restricted.degree().unwrap_or(0)
        );
        let _ = writeln!(
            out,
            "real roots with multiplicity: {}",
            report.root_count.unwrap_or(0)
        );
        let _ = writeln!(
            out,
            "conclusion: surface degree is at least {}",
            report.implied_degree_bound.unwrap_or(0)
        );
    }
    out
}

/// The reproducibility manifest: the full effective configuration of a
/// run, one `key: value` line per entry, in the caller's order.
pub fn manifest_text(entries: &[(&str, String)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "manifest v{SCHEMA_VERSION}");
    for (k, v) in entries {
        let _ = writeln!(out, "{k}: {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::preset;
    use crate::obstruction::{trace_obstruction, MoebiusCoord};
    use crate::stabbing::{enumerate_quadrisecants, EnumerateOptions};
    use crate::surfaces::{linked_pair_surface, piercing_line, verify_degree_bound};

    #[test]
    fn bound_rendering_is_a_true_upper_bound() {
        assert_eq!(bound_pow10(&rat(0, 1)), "0");
        assert_eq!(bound_pow10(&rat(1, 1000)), "1e-3");
        assert_eq!(bound_pow10(&rat(1, 999)), "1e-2");
        assert_eq!(bound_pow10(&rat(3, 1)), "1e1");
        assert_eq!(bound_pow10(&rat(1, 1)), "1e0");
        for b in [rat(7, 1_000_000_000), rat(13, 5), rat(1, 3)] {
            let s = bound_pow10(&b);
            let k: i64 = s[2..].parse().unwrap();
            assert!(b <= pow10_rat(k));
            assert!(b > pow10_rat(k - 1));
        }
    }

    #[test]
    fn empty_enumeration_report_is_stable() {
        let link = preset("round_unknot", 16, 0).unwrap();
        let e = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        let text = quadrisecants_report("round_unknot", &link, &e);
        assert!(text.starts_with("quadrisecants report v1\n"));
        assert!(text.contains("quadrisecants: 0"));
        // Coplanar quadruples of the planar polygon are honestly flagged.
        assert!(text.contains(&format!("degeneracies: {}", e.degeneracies.len())));
        if !e.degeneracies.is_empty() {
            assert!(text.contains("kind: infinite family"));
        }
        assert_eq!(text, quadrisecants_report("round_unknot", &link, &e));
        let csv = quadrisecants_csv(&e);
        assert_eq!(csv.lines().count(), 1, "header only");
    }

    #[test]
    fn hopf_report_lists_certified_records() {
        let link = preset("hopf", 12, 0)
            .unwrap()
            .perturb(&rat(1, 1_000_000), 5)
            .unwrap();
        let e = enumerate_quadrisecants(&link, &EnumerateOptions::default()).unwrap();
        assert!(!e.quadrisecants.is_empty());
        let text = quadrisecants_report("hopf", &link, &e);
        assert!(text.contains("pattern: ABAB"));
        assert!(text.contains("residual bound: "));
        assert!(!text.contains("residual bound: 1e1"), "bounds stay tiny");
        let csv = quadrisecants_csv(&e);
        assert_eq!(csv.lines().count(), e.quadrisecants.len() + 1);
    }

    #[test]
    fn obstruction_outputs_for_a_convex_polygon() {
        let link = preset("round_unknot", 16, 0).unwrap();
        let atlas = trace_obstruction(&link, 0, 4).unwrap();
        let text = obstruction_report(&atlas);
        assert!(text.contains("arcs: 0"));
        assert!(text.contains("crossings: 0"));
        let svg = obstruction_svg(&atlas);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("polyline"));
        assert!(svg.contains("<rect"));
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn svg_places_chart_points_exactly() {
        assert_eq!(svg_x(&rat(0, 1)), "20");
        assert_eq!(svg_x(&rat(1, 1)), "820");
        assert_eq!(svg_y(&rat(0, 1)), "820");
        assert_eq!(svg_y(&rat(1, 1)), "20");
        assert_eq!(svg_x(&rat(1, 4)), "220");
        let c = MoebiusCoord::new(&rat(1, 4), &rat(3, 4)).unwrap();
        assert_eq!(svg_y(&c.b), "220");
    }

    #[test]
    fn chord_disk_mesh_is_well_formed() {
        let link = preset("round_unknot", 8, 0).unwrap();
        let atlas = trace_obstruction(&link, 0, 4).unwrap();
        let apex = crate::obstruction::find_clear_arc(&atlas, &link, 0)
            .expect("convex polygon has a clear fiber");
        let disk = crate::obstruction::build_chord_disk(&link, 0, &apex).unwrap();
        let mesh = chord_disk_mesh(&disk);
        let mut lines = mesh.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let _comment = lines.next().unwrap();
        let counts = lines.next().unwrap();
        assert_eq!(
            counts,
            format!("{} {} 0", disk.vertices.len(), disk.triangles.len())
        );
        assert_eq!(
            mesh.lines().count(),
            3 + disk.vertices.len() + disk.triangles.len()
        );
    }

    #[test]
    fn unipoly_rendering_is_exact_and_readable() {
        assert_eq!(unipoly_text(&UniPoly::zero()), "0");
        assert_eq!(unipoly_text(&UniPoly::from_ints(&[-1, 0, 1])), "t^2 - 1");
        assert_eq!(
            unipoly_text(&UniPoly::from_coeffs(vec![rat(3, 2), rat(-1, 3), rat(-1, 1)])),
            "- t^2 - 1/3 t + 3/2"
        );
        assert_eq!(unipoly_text(&UniPoly::from_ints(&[5])), "5");
    }

    #[test]
    fn degree8_text_carries_the_conclusion() {
        let surface = linked_pair_surface(&rat(2, 1), &rat(1, 2)).unwrap();
        let (anchor, dir) = piercing_line();
        let report = verify_degree_bound(&surface, &anchor, &dir).unwrap();
        let text = degree8_text(&report);
        assert!(text.contains("surface degree: 8"));
        assert!(text.contains("real roots with multiplicity: 8"));
        assert!(text.contains("conclusion: surface degree is at least 8"));
        assert_eq!(text, degree8_text(&report), "deterministic");
    }

    #[test]
    fn manifest_preserves_entry_order() {
        let text = manifest_text(&[
            ("subcommand", "quadrisecants".to_string()),
            ("seed", "7".to_string()),
        ]);
        assert_eq!(text, "manifest v1\nsubcommand: quadrisecants\nseed: 7\n");
    }
}
