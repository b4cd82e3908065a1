//! File formats and deterministic SVG rendering.
//!
//! Rationals are always written as `"num/den"` strings. Every list is emitted
//! in a canonical order so that identical inputs give byte-identical files.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::count::{CountResult, SolvedCurve};
use crate::curve::PlaneTropicalCurve;
use crate::error::{Error, Result};
use crate::lattice::{classify_cell, CellClass, LatticePoint, LatticePolygon};
use crate::rational::RationalPoint;
use crate::subdivision::{AdmissibilityMode, NuEntry, Subdivision};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
}

impl From<&LatticePolygon> for PolygonJson {
    fn from(p: &LatticePolygon) -> Self {
        Self {
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
        }
    }
}

/// Parses `{"vertices": [[x, y], ...]}`; the polygon is canonicalized.
pub fn polygon_from_json(text: &str) -> Result<LatticePolygon> {
    let json: PolygonJson = serde_json::from_str(text)?;
    LatticePolygon::new(json.vertices.iter().map(|&[x, y]| LatticePoint::new(x, y)))
}

pub fn polygon_to_json(p: &LatticePolygon) -> String {
    serde_json::to_string_pretty(&PolygonJson::from(p)).expect("plain data")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsJson {
    pub points: Vec<RationalPoint>,
}

/// Parses `{"points": [["p/q", "p/q"], ...]}`.
pub fn points_from_json(text: &str) -> Result<Vec<RationalPoint>> {
    Ok(serde_json::from_str::<PointsJson>(text)?.points)
}

pub fn points_to_json(points: &[RationalPoint]) -> String {
    serde_json::to_string_pretty(&PointsJson {
        points: points.to_vec(),
    })
    .expect("plain data")
}

/// One solved curve in a count file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub cells: Vec<Vec<[i64; 2]>>,
    pub nu: Vec<NuEntry>,
    /// Subdivision edge of each marked point, as a pair of lattice points.
    pub assignment: Vec<[[i64; 2]; 2]>,
    pub weight: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<[[[i64; 2]; 2]; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResultJson {
    pub polygon: PolygonJson,
    pub mode: String,
    pub points: Vec<RationalPoint>,
    pub subdivisions_searched: usize,
    pub curves: Vec<CurveRecord>,
    pub total: u64,
}

fn edge_json(sub: &Subdivision, e: usize) -> [[i64; 2]; 2] {
    let (a, b) = sub.edge_points(e);
    [[a.x, a.y], [b.x, b.y]]
}

pub fn curve_record(c: &SolvedCurve) -> CurveRecord {
    let sub = c.subdivision();
    let json = sub.to_json_value(Some(c.curve.lifting()));
    CurveRecord {
        cells: json.cells,
        nu: json.nu,
        assignment: c.assignment.iter().map(|&e| edge_json(sub, e)).collect(),
        weight: c.weight,
        sigma: c.sigma.map(|(a, b)| [edge_json(sub, a), edge_json(sub, b)]),
    }
}

pub fn count_result_json(r: &CountResult) -> CountResultJson {
    CountResultJson {
        polygon: PolygonJson::from(&r.polygon),
        mode: r.mode.to_string(),
        points: r.points.clone(),
        subdivisions_searched: r.subdivisions_searched,
        curves: r.curves.iter().map(curve_record).collect(),
        total: r.total,
    }
}

pub fn count_result_to_json(r: &CountResult) -> String {
    let mut s = serde_json::to_string_pretty(&count_result_json(r)).expect("plain data");
    s.push('\n');
    s
}

pub fn parse_mode(s: &str) -> Result<AdmissibilityMode> {
    match s {
        "nodal" => Ok(AdmissibilityMode::Nodal),
        "cusp" => Ok(AdmissibilityMode::OneCusp),
        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEdgeJson {
    pub from: usize,
    pub to: usize,
    pub direction: [i64; 2],
    pub weight: i64,
    /// Index of the dual subdivision edge.
    pub dual_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRayJson {
    pub from: usize,
    pub direction: [i64; 2],
    pub weight: i64,
    pub dual_edge: usize,
}

/// A curve with its dual subdivision; vertex `i` is dual to cell `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub vertices: Vec<RationalPoint>,
    pub edges: Vec<CurveEdgeJson>,
    pub rays: Vec<CurveRayJson>,
    pub cells: Vec<Vec<[i64; 2]>>,
    pub subdivision_edges: Vec<[[i64; 2]; 2]>,
    pub nu: Vec<NuEntry>,
}

pub fn curve_json(c: &PlaneTropicalCurve) -> CurveJson {
    let sub = c.subdivision();
    let json = sub.to_json_value(Some(c.lifting()));
    CurveJson {
        vertices: c.vertices().to_vec(),
        edges: c
            .edges()
            .iter()
            .map(|e| CurveEdgeJson {
                from: e.from,
                to: e.to,
                direction: [e.direction.x, e.direction.y],
                weight: e.weight,
                dual_edge: e.dual_edge,
            })
            .collect(),
        rays: c
            .rays()
            .iter()
            .map(|r| CurveRayJson {
                from: r.from,
                direction: [r.direction.x, r.direction.y],
                weight: r.weight,
                dual_edge: r.dual_edge,
            })
            .collect(),
        cells: json.cells,
        subdivision_edges: (0..sub.edges().len()).map(|e| edge_json(sub, e)).collect(),
        nu: json.nu,
    }
}

pub fn curve_to_json(c: &PlaneTropicalCurve) -> String {
    serde_json::to_string_pretty(&curve_json(c)).expect("plain data")
}

const PANEL: f64 = 400.0;
const GAP: f64 = 20.0;

/// Square viewport around a bounding box with a 10% margin.
struct View {
    min_x: f64,
    max_y: f64,
    scale: f64,
    offset: f64,
}

impl View {
    fn new(points: impl IntoIterator<Item = (f64, f64)>, offset: f64) -> Self {
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for (x, y) in points {
            lo_x = lo_x.min(x);
            lo_y = lo_y.min(y);
            hi_x = hi_x.max(x);
            hi_y = hi_y.max(y);
        }
        if lo_x > hi_x {
            (lo_x, lo_y, hi_x, hi_y) = (0.0, 0.0, 0.0, 0.0);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1.0);
        let (cx, cy) = ((lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0);
        let full = span * 1.2;
        Self {
            min_x: cx - full / 2.0,
            max_y: cy + full / 2.0,
            scale: PANEL / full,
            offset,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.offset + (x - self.min_x) * self.scale,
            (self.max_y - y) * self.scale,
        )
    }

    /// Length in model units of the panel diagonal, enough to leave it.
    fn reach(&self) -> f64 {
        2.0 * PANEL / self.scale
    }
}

/// Fixed precision keeps the output byte-stable.
fn n(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), width: f64, color: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"/>"#,
        n(a.0),
        n(a.1),
        n(b.0),
        n(b.1),
        n(width)
    );
}

fn label(out: &mut String, at: (f64, f64), text: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" font-family="sans-serif" fill="black">{text}</text>"#,
        n(at.0 + 4.0),
        n(at.1 - 4.0)
    );
}

/// The curve with its marked points on the left, the dual subdivision on
/// the right.
pub fn curve_svg(c: &PlaneTropicalCurve, marks: &[RationalPoint]) -> String {
    let verts: Vec<(f64, f64)> = c.vertices().iter().map(|v| v.to_f64()).collect();
    let mark_pts: Vec<(f64, f64)> = marks.iter().map(|m| m.to_f64()).collect();
    let view = View::new(verts.iter().chain(&mark_pts).copied(), 0.0);
    let width = 2.0 * PANEL + GAP;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = n(width),
        h = n(PANEL)
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="curve-panel"><rect x="0" y="0" width="{p}" height="{p}"/></clipPath></defs>"#,
        p = n(PANEL)
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{p}" height="{p}" fill="white" stroke="#999"/>"##,
        p = n(PANEL)
    );
    out.push_str("<g clip-path=\"url(#curve-panel)\">\n");
    for e in c.edges() {
        let (a, b) = (view.map(verts[e.from]), view.map(verts[e.to]));
        line(&mut out, a, b, 1.0 + e.weight as f64, "#1f4e9a");
        if e.weight > 1 {
            label(&mut out, ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0), &e.weight.to_string());
        }
    }
    for r in c.rays() {
        let (x, y) = verts[r.from];
        let (dx, dy) = (r.direction.x as f64, r.direction.y as f64);
        let len = (dx * dx + dy * dy).sqrt();
        let far = view.reach() / len;
        let a = view.map((x, y));
        let b = view.map((x + dx * far, y + dy * far));
        line(&mut out, a, b, 1.0 + r.weight as f64, "#1f4e9a");
        if r.weight > 1 {
            let near = 40.0 / view.scale / len;
            label(&mut out, view.map((x + dx * near, y + dy * near)), &r.weight.to_string());
        }
    }
    for m in &mark_pts {
        let (x, y) = view.map(*m);
        let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="4" fill="#c0392b"/>"##, n(x), n(y));
    }
    out.push_str("</g>\n");
    subdivision_panel(&mut out, c.subdivision(), PANEL + GAP);
    out.push_str("</svg>\n");
    out
}

fn subdivision_panel(out: &mut String, sub: &Subdivision, offset: f64) {
    let poly = sub.polygon();
    let view = View::new(poly.vertices().iter().map(|v| (v.x as f64, v.y as f64)), offset);
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="0" width="{p}" height="{p}" fill="white" stroke="#999"/>"##,
        n(offset),
        p = n(PANEL)
    );
    for cell in sub.cells() {
        let fill = match classify_cell(cell) {
            CellClass::Triangle => "#eef3fb",
            CellClass::Parallelogram => "#f4f4f4",
            _ => "#fde9c9",
        };
        let pts: Vec<String> = cell
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = view.map((v.x as f64, v.y as f64));
                format!("{},{}", n(x), n(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
            pts.join(" ")
        );
    }
    for p in poly.lattice_points() {
        let (x, y) = view.map((p.x as f64, p.y as f64));
        let fill = if sub.is_vertex(p) { "black" } else { "#999" };
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3" fill="{fill}"/>"#, n(x), n(y));
    }
}

/// The dual subdivision alone, for viewers.
pub fn subdivision_svg(sub: &Subdivision) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{p}" height="{p}" viewBox="0 0 {p} {p}">"#,
        p = n(PANEL)
    );
    subdivision_panel(&mut out, sub, 0.0);
    out.push_str("</svg>\n");
    out
}

/// File name stem for the `i`-th curve of a count.
pub fn curve_file_stem(i: usize) -> String {
    format!("curve-{i:03}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{count_random, CountOptions};
    use crate::curve::{corner_locus, TropicalPolynomial};
    use crate::rational::int;

    #[test]
    fn polygon_round_trip_canonicalizes() {
        let p = polygon_from_json(r#"{"vertices": [[0,2],[0,0],[2,0]]}"#).unwrap();
        assert_eq!(p.vertices()[0], LatticePoint::new(0, 0));
        assert_eq!(polygon_from_json(&polygon_to_json(&p)).unwrap(), p);
        assert!(matches!(polygon_from_json("{\"vertices\": 3}"), Err(Error::Json(_))));
    }

    #[test]
    fn points_round_trip() {
        let pts = vec![
            RationalPoint::new(crate::rational::frac(1, 3), int(-2)),
            RationalPoint::from_ints(4, 5),
        ];
        let text = points_to_json(&pts);
        assert!(text.contains("\"1/3\""));
        assert_eq!(points_from_json(&text).unwrap(), pts);
        assert!(points_from_json(r#"{"points": [["1/0", "1"]]}"#).is_err());
    }

    #[test]
    fn count_json_is_stable() {
        let delta = polygon_from_json(r#"{"vertices": [[0,0],[2,0],[0,2]]}"#).unwrap();
        let run = || {
            let r = count_random(&delta, AdmissibilityMode::Nodal, 3, 8, CountOptions::default())
                .unwrap();
            let svg: Vec<String> = r.curves.iter().map(|c| curve_svg(&c.curve, &r.points)).collect();
            (count_result_to_json(&r), svg)
        };
        let (a, sa) = run();
        let (b, sb) = run();
        assert_eq!(a, b);
        assert_eq!(sa, sb);
        let keys: Vec<usize> = ["\"polygon\"", "\"mode\"", "\"points\"", "\"curves\"", "\"total\""]
            .iter()
            .map(|k| a.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn svg_marks_and_weight_labels() {
        let mut coeffs = std::collections::BTreeMap::new();
        for (w, c) in [((0, 0), 0), ((2, 0), 0), ((0, 2), 0), ((1, 1), -1)] {
            coeffs.insert(LatticePoint::new(w.0, w.1), int(c));
        }
        let c = corner_locus(&TropicalPolynomial::new(coeffs).unwrap()).unwrap();
        let marks = [RationalPoint::from_ints(-3, 0)];
        let svg = curve_svg(&c, &marks);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 1 + c.subdivision().polygon().lattice_points().len());
        assert!(svg.contains(">2</text>"));
        assert!(svg.contains(r##"fill="#c0392b""##));
    }

    #[test]
    fn curve_json_lists_duals() {
        let mut coeffs = std::collections::BTreeMap::new();
        for w in [(0, 0), (1, 0), (0, 1)] {
            coeffs.insert(LatticePoint::new(w.0, w.1), int(0));
        }
        let c = corner_locus(&TropicalPolynomial::new(coeffs).unwrap()).unwrap();
        let j = curve_json(&c);
        assert_eq!(j.vertices.len(), 1);
        assert_eq!(j.rays.len(), 3);
        assert_eq!(j.cells.len(), 1);
        assert!(curve_to_json(&c).contains("\"0/1\""));
    }
}
