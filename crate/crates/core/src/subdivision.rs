//! Lattice subdivisions of a Newton polygon and the lifting functions that
//! induce them.
//!
//! A [`Subdivision`] stores its cells in canonical order together with a
//! derived vertex/edge structure. The linear conditions on lifting values
//! (coplanarity inside a cell, strict convexity across an internal edge) are
//! produced here once and reused by the regularity test, the rank
//! computation and the curve solver.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{classify_cell, orient, CellClass, LatticePoint, LatticePolygon};
use crate::linalg::Matrix;
use crate::lp::{max_margin, LinearForm};
use crate::rational::{self, int, Rational};

/// Values of a lifting function at lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LiftingFunction {
    pub values: BTreeMap<LatticePoint, Rational>,
}

impl LiftingFunction {
    pub fn new(values: BTreeMap<LatticePoint, Rational>) -> Self {
        Self { values }
    }

    pub fn get(&self, p: &LatticePoint) -> Option<&Rational> {
        self.values.get(p)
    }

    /// Shifted so that the value at the lexicographically least point is zero.
    pub fn normalized(&self) -> Self {
        let Some(base) = self.values.values().next().cloned() else {
            return self.clone();
        };
        Self::new(self.values.iter().map(|(k, v)| (*k, v - &base)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AdmissibilityMode {
    Nodal,
    OneCusp,
}

impl fmt::Display for AdmissibilityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityMode::Nodal => write!(f, "nodal"),
            AdmissibilityMode::OneCusp => write!(f, "cusp"),
        }
    }
}

/// Edge of a subdivision, endpoints as vertex indices with `a < b`.
///
/// `left` is the cell in which `a -> b` is a counterclockwise edge, `right`
/// the cell in which `b -> a` is. Boundary edges of the polygon have exactly
/// one of the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubEdge {
    pub a: usize,
    pub b: usize,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

impl SubEdge {
    pub fn is_boundary(&self) -> bool {
        self.left.is_none() || self.right.is_none()
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> {
        self.left.into_iter().chain(self.right)
    }

    /// The cell on the other side of `cell`, if any.
    pub fn across(&self, cell: usize) -> Option<usize> {
        if self.left == Some(cell) {
            self.right
        } else {
            self.left
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subdivision {
    polygon: LatticePolygon,
    cells: Vec<LatticePolygon>,
    vertices: Vec<LatticePoint>,
    edges: Vec<SubEdge>,
    /// Per cell, vertex indices counterclockwise.
    cell_vertices: Vec<Vec<usize>>,
    /// Per cell, edge indices counterclockwise (edge `i` follows vertex `i`).
    cell_edges: Vec<Vec<usize>>,
}

impl Subdivision {
    /// Validates that `cells` tile `polygon` face to face.
    pub fn new(polygon: LatticePolygon, cells: Vec<LatticePolygon>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidGeometry("subdivision without cells".into()));
        }
        let mut cells = cells;
        cells.sort();
        if cells.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGeometry("repeated cell".into()));
        }
        let area: i64 = cells.iter().map(|c| c.normalized_area()).sum();
        if area != polygon.normalized_area() {
            return Err(Error::InvalidGeometry(format!(
                "cell areas sum to {area}, polygon has {}",
                polygon.normalized_area()
            )));
        }
        for c in &cells {
            if let Some(v) = c.vertices().iter().find(|v| !polygon.contains(**v)) {
                return Err(Error::InvalidGeometry(format!("cell vertex {v} outside polygon")));
            }
        }
        let vertices: Vec<LatticePoint> = cells
            .iter()
            .flat_map(|c| c.vertices().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<LatticePoint, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();

        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        let mut cell_vertices = Vec::with_capacity(cells.len());
        for (ci, c) in cells.iter().enumerate() {
            let ids: Vec<usize> = c.vertices().iter().map(|v| index[v]).collect();
            for i in 0..ids.len() {
                let key = (ids[i], ids[(i + 1) % ids.len()]);
                if directed.insert(key, ci).is_some() {
                    return Err(Error::InvalidGeometry("overlapping cells".into()));
                }
            }
            cell_vertices.push(ids);
        }
        let on_polygon_boundary = |a: LatticePoint, b: LatticePoint| {
            polygon
                .edges()
                .iter()
                .any(|&(u, v)| orient(u, v, a) == 0 && orient(u, v, b) == 0)
        };
        let mut edge_map: BTreeMap<(usize, usize), SubEdge> = BTreeMap::new();
        for (&(u, v), &ci) in &directed {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let e = edge_map.entry((a, b)).or_insert(SubEdge {
                a,
                b,
                left: None,
                right: None,
            });
            if u < v {
                e.left = Some(ci);
            } else {
                e.right = Some(ci);
            }
        }
        for e in edge_map.values() {
            if e.is_boundary() && !on_polygon_boundary(vertices[e.a], vertices[e.b]) {
                return Err(Error::InvalidGeometry(format!(
                    "edge {}-{} has a cell on one side only",
                    vertices[e.a], vertices[e.b]
                )));
            }
        }
        let edges: Vec<SubEdge> = edge_map.values().copied().collect();
        let edge_index: HashMap<(usize, usize), usize> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.a, e.b), i))
            .collect();
        let cell_edges = cell_vertices
            .iter()
            .map(|ids| {
                (0..ids.len())
                    .map(|i| {
                        let (u, v) = (ids[i], ids[(i + 1) % ids.len()]);
                        edge_index[&(u.min(v), u.max(v))]
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            polygon,
            cells,
            vertices,
            edges,
            cell_vertices,
            cell_edges,
        })
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn cells(&self) -> &[LatticePolygon] {
        &self.cells
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SubEdge] {
        &self.edges
    }

    pub fn cell_vertex_ids(&self, cell: usize) -> &[usize] {
        &self.cell_vertices[cell]
    }

    pub fn cell_edge_ids(&self, cell: usize) -> &[usize] {
        &self.cell_edges[cell]
    }

    pub fn vertex_index(&self, p: LatticePoint) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }

    pub fn edge_points(&self, e: usize) -> (LatticePoint, LatticePoint) {
        let e = &self.edges[e];
        (self.vertices[e.a], self.vertices[e.b])
    }

    pub fn edge_vector(&self, e: usize) -> LatticePoint {
        let (a, b) = self.edge_points(e);
        b.sub(a)
    }

    pub fn classes(&self) -> Vec<CellClass> {
        self.cells.iter().map(classify_cell).collect()
    }

    /// For a parallelogram cell, the edge opposite to `edge` (both given as
    /// edge indices).
    pub fn opposite_edge(&self, cell: usize, edge: usize) -> Option<usize> {
        let ids = &self.cell_edges[cell];
        if ids.len() != 4 {
            return None;
        }
        let pos = ids.iter().position(|&e| e == edge)?;
        Some(ids[(pos + 2) % 4])
    }

    /// Cell containing the given lattice point as a vertex of the given edge.
    pub fn is_vertex(&self, p: LatticePoint) -> bool {
        self.vertex_index(p).is_some()
    }

    /// One homogeneous linear equation on lifting values (indexed by vertex)
    /// per vertex beyond the third of every non-triangular cell.
    pub fn coplanarity_rows(&self) -> Vec<Vec<i64>> {
        let mut rows = Vec::new();
        for ids in &self.cell_vertices {
            if ids.len() <= 3 {
                continue;
            }
            let (u0, u1, u2) = (ids[0], ids[1], ids[2]);
            for &w in &ids[3..] {
                rows.push(self.affine_dependence(w, [u0, u1, u2]));
            }
        }
        rows
    }

    /// Row `r` with `r . nu = D nu(w) - sum lambda_j D nu(u_j)` where
    /// `w = sum lambda_j u_j` and `D = orient(u0, u1, u2)`.
    fn affine_dependence(&self, w: usize, base: [usize; 3]) -> Vec<i64> {
        let p = |i: usize| self.vertices[i];
        let [u0, u1, u2] = base;
        let d = orient(p(u0), p(u1), p(u2));
        let l0 = orient(p(w), p(u1), p(u2));
        let l1 = orient(p(u0), p(w), p(u2));
        let l2 = orient(p(u0), p(u1), p(w));
        let mut row = vec![0i64; self.vertices.len()];
        row[w] += d as i64;
        row[u0] -= l0 as i64;
        row[u1] -= l1 as i64;
        row[u2] -= l2 as i64;
        if d < 0 {
            row.iter_mut().for_each(|v| *v = -*v);
        }
        row
    }

    /// One strict inequality `row . nu > 0` per internal edge: the lift of a
    /// vertex across the edge lies strictly above the plane of the cell on
    /// the left.
    pub fn convexity_rows(&self) -> Vec<Vec<i64>> {
        self.edges
            .iter()
            .filter(|e| !e.is_boundary())
            .map(|e| {
                let left = e.left.unwrap();
                let right = e.right.unwrap();
                let c = *self.cell_vertices[left]
                    .iter()
                    .find(|&&v| v != e.a && v != e.b)
                    .expect("cell has a third vertex");
                let w = *self.cell_vertices[right]
                    .iter()
                    .find(|&&v| v != e.a && v != e.b)
                    .expect("cell has a third vertex");
                self.affine_dependence(w, [e.a, e.b, c])
            })
            .collect()
    }

    /// Checks a lifting function against the subdivision: coplanar on every
    /// cell and strictly convex across every internal edge.
    pub fn induced_by(&self, nu: &LiftingFunction) -> bool {
        let Some(vals) = self
            .vertices
            .iter()
            .map(|v| nu.get(v).cloned())
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let eval = |row: &[i64]| -> Rational {
            row.iter()
                .zip(&vals)
                .filter(|(c, _)| **c != 0)
                .map(|(c, v)| v * int(*c))
                .sum()
        };
        self.coplanarity_rows().iter().all(|r| eval(r).is_zero())
            && self.convexity_rows().iter().all(|r| eval(r).is_positive())
    }

    /// Lifting values at the subdivision vertices, in vertex order.
    pub fn values_of(&self, nu: &LiftingFunction) -> Option<Vec<Rational>> {
        self.vertices.iter().map(|v| nu.get(v).cloned()).collect()
    }

    pub fn to_json_value(&self, nu: Option<&LiftingFunction>) -> SubdivisionJson {
        SubdivisionJson {
            cells: self
                .cells
                .iter()
                .map(|c| c.vertices().iter().map(|v| [v.x, v.y]).collect())
                .collect(),
            nu: nu
                .map(|nu| {
                    nu.values
                        .iter()
                        .map(|(p, v)| NuEntry(p.x, p.y, rational::to_string(v)))
                        .collect()
                })
                .unwrap_or_default(),
        }
    }

    pub fn from_json_value(json: &SubdivisionJson) -> Result<(Self, Option<LiftingFunction>)> {
        let cells = json
            .cells
            .iter()
            .map(|c| LatticePolygon::new(c.iter().map(|&[x, y]| LatticePoint::new(x, y))))
            .collect::<Result<Vec<_>>>()?;
        let all: Vec<LatticePoint> = cells
            .iter()
            .flat_map(|c| c.vertices().iter().copied())
            .collect();
        let polygon = LatticePolygon::hull_of(&all)?;
        let sub = Self::new(polygon, cells)?;
        let nu = if json.nu.is_empty() {
            None
        } else {
            let mut values = BTreeMap::new();
            for NuEntry(x, y, v) in &json.nu {
                values.insert(LatticePoint::new(*x, *y), rational::parse(v)?);
            }
            Some(LiftingFunction::new(values))
        };
        Ok((sub, nu))
    }
}

impl PartialOrd for Subdivision {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by polygon, then by the sorted cell list.
impl Ord for Subdivision {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.polygon, &self.cells).cmp(&(&other.polygon, &other.cells))
    }
}

impl fmt::Display for Subdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// `{"cells": [[[x,y],...],...], "nu": [[x,y,"p/q"],...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionJson {
    pub cells: Vec<Vec<[i64; 2]>>,
    #[serde(default)]
    pub nu: Vec<NuEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuEntry(pub i64, pub i64, pub String);

/// Regular subdivision induced by the lower convex hull of the lifted
/// support, together with the lower-hull function on the support.
pub fn lower_hull_subdivision(
    support: &[LatticePoint],
    lift: &BTreeMap<LatticePoint, Rational>,
) -> Result<(Subdivision, LiftingFunction)> {
    let mut pts: Vec<LatticePoint> = support.to_vec();
    pts.sort();
    pts.dedup();
    let polygon = LatticePolygon::hull_of(&pts)
        .map_err(|_| Error::InvalidGeometry("support is collinear".into()))?;
    let h = |p: &LatticePoint| -> Result<Rational> {
        lift.get(p)
            .cloned()
            .ok_or_else(|| Error::InvalidGeometry(format!("no lift value at {p}")))
    };
    let heights: Vec<Rational> = pts.iter().map(h).collect::<Result<_>>()?;
    let n = pts.len();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    // Lower facets: planes through three affinely independent lifted points
    // with every lifted point on or above. Brute force is fine at this scale.
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let d = orient(pts[i], pts[j], pts[k]);
                if d == 0 {
                    continue;
                }
                let (pi, pj, pk) = (pts[i], pts[j], pts[k]);
                // Plane height at q: sum of barycentric weights times heights.
                let plane_at = |q: LatticePoint| -> Rational {
                    let l0 = orient(q, pj, pk);
                    let l1 = orient(pi, q, pk);
                    let l2 = orient(pi, pj, q);
                    (&heights[i] * int(l0 as i64)
                        + &heights[j] * int(l1 as i64)
                        + &heights[k] * int(l2 as i64))
                        / int(d as i64)
                };
                let mut on = Vec::new();
                let mut ok = true;
                for (t, q) in pts.iter().enumerate() {
                    let diff = &heights[t] - plane_at(*q);
                    if diff.is_negative() {
                        ok = false;
                        break;
                    }
                    if diff.is_zero() {
                        on.push(t);
                    }
                }
                if ok {
                    faces.insert(on);
                }
            }
        }
    }
    let cells: Vec<LatticePolygon> = faces
        .iter()
        .map(|f| {
            let fp: Vec<LatticePoint> = f.iter().map(|&t| pts[t]).collect();
            LatticePolygon::hull_of(&fp)
        })
        .collect::<Result<_>>()?;
    let sub = Subdivision::new(polygon, cells)?;
    // Lower-hull function on the support: the minimum over facet planes, i.e.
    // the value on the cell containing the point.
    let mut values = BTreeMap::new();
    for (t, q) in pts.iter().enumerate() {
        let cell = sub
            .cells()
            .iter()
            .position(|c| c.contains(*q))
            .expect("cells cover the polygon");
        let ids = sub.cell_vertex_ids(cell);
        let vs = sub.vertices();
        let (u0, u1, u2) = (vs[ids[0]], vs[ids[1]], vs[ids[2]]);
        let hv = |p: LatticePoint| heights[pts.binary_search(&p).unwrap()].clone();
        let d = orient(u0, u1, u2);
        let val = (hv(u0) * int(orient(*q, u1, u2) as i64)
            + hv(u1) * int(orient(u0, *q, u2) as i64)
            + hv(u2) * int(orient(u0, u1, *q) as i64))
            / int(d as i64);
        debug_assert!(val <= heights[t]);
        values.insert(*q, val);
    }
    Ok((sub, LiftingFunction::new(values)))
}

fn rows_to_forms(rows: &[Vec<i64>], nvars: usize) -> Vec<LinearForm<Rational>> {
    rows.iter()
        .map(|r| {
            debug_assert_eq!(r.len(), nvars);
            LinearForm::new(r.iter().map(|&v| int(v)).collect(), Rational::zero())
        })
        .collect()
}

/// A lifting function inducing `sub`, if one exists. The witness vanishes at
/// the first three vertices of the polygon.
pub fn is_regular(sub: &Subdivision) -> Option<LiftingFunction> {
    let nv = sub.vertices().len();
    let mut eqs = rows_to_forms(&sub.coplanarity_rows(), nv);
    for v in sub.polygon().vertices().iter().take(3) {
        let mut c = vec![Rational::zero(); nv];
        c[sub.vertex_index(*v).expect("polygon vertices are subdivision vertices")] = int(1);
        eqs.push(LinearForm::new(c, Rational::zero()));
    }
    let strict = rows_to_forms(&sub.convexity_rows(), nv);
    let point = max_margin(nv, &eqs, &strict, int(1)).into_point()?;
    let nu = LiftingFunction::new(sub.vertices().iter().copied().zip(point).collect());
    debug_assert!(sub.induced_by(&nu));
    Some(nu)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: i64,
    pub rank_exp: i64,
    pub d: i64,
    /// `m -> number of m-gons`.
    pub gon_counts: BTreeMap<usize, i64>,
    /// `2m -> number of 2m-gons with all opposite edges parallel`.
    pub parallel_even_counts: BTreeMap<usize, i64>,
    /// Right-hand side of the upper bound on `2d` (only meaningful when a
    /// cell other than a triangle or parallelogram is present).
    pub d_bound: i64,
}

fn opposite_edges_parallel(cell: &LatticePolygon) -> bool {
    let e = cell.edge_vectors();
    let n = e.len();
    n % 2 == 0 && (0..n / 2).all(|i| crate::lattice::cross(e[i], e[i + n / 2]) == 0)
}

/// Dimension of the family of lifting functions (modulo constants) inducing
/// `sub`, checked against the expected rank and its known bounds.
pub fn rank_report(sub: &Subdivision) -> Result<RankReport> {
    let nv = sub.vertices().len();
    let rows = sub.coplanarity_rows();
    let constraint_rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
            nv,
        )
        .rank()
    };
    // Regular subdivisions have a nonempty open cone inside the coplanarity
    // subspace, so its dimension is the subspace dimension; constants are
    // divided out.
    let rank = nv as i64 - constraint_rank as i64 - 1;
    let rank_exp = nv as i64
        - 1
        - sub
            .cells()
            .iter()
            .map(|c| c.len() as i64 - 3)
            .sum::<i64>();
    let d = rank - rank_exp;
    let mut gon_counts = BTreeMap::new();
    let mut parallel_even_counts = BTreeMap::new();
    for c in sub.cells() {
        *gon_counts.entry(c.len()).or_insert(0) += 1;
        if opposite_edges_parallel(c) {
            *parallel_even_counts.entry(c.len()).or_insert(0) += 1;
        }
    }
    let mut bound = -1;
    for (&k, &count) in &gon_counts {
        if k >= 4 && k % 2 == 0 {
            let m = (k / 2) as i64;
            let primed = parallel_even_counts.get(&k).copied().unwrap_or(0);
            bound += (2 * m - 3) * count - primed;
        } else if k >= 5 {
            let m = ((k - 1) / 2) as i64;
            bound += (2 * m - 2) * count;
        }
    }
    let only_tri_par = sub
        .cells()
        .iter()
        .all(|c| matches!(classify_cell(c), CellClass::Triangle | CellClass::Parallelogram));
    let report = RankReport {
        rank,
        rank_exp,
        d,
        gon_counts,
        parallel_even_counts,
        d_bound: bound,
    };
    if only_tri_par {
        if d != 0 {
            return Err(Error::Inconsistent(format!(
                "rank {rank} differs from expected rank {rank_exp} for {sub}"
            )));
        }
    } else if d < 0 || 2 * d > bound {
        return Err(Error::Inconsistent(format!(
            "defect {d} outside [0, {bound}/2] for {sub}"
        )));
    }
    Ok(report)
}

/// Admissibility of `sub` as the dual of a nodal or 1-cuspidal tropical
/// limit. `Err` carries the first violated clause.
pub fn admissible(sub: &Subdivision, mode: AdmissibilityMode) -> std::result::Result<(), String> {
    let mut quads = 0;
    for c in sub.cells() {
        match classify_cell(c) {
            CellClass::Triangle | CellClass::Parallelogram => {}
            CellClass::Trapezoid => return Err(format!("trapezoid forbidden: {c}")),
            CellClass::GenericQuadrilateral => match mode {
                AdmissibilityMode::Nodal => {
                    return Err(format!("quadrilateral {c} not allowed in a nodal limit"))
                }
                AdmissibilityMode::OneCusp => {
                    quads += 1;
                    if quads > 1 {
                        return Err("more than one exceptional quadrilateral".into());
                    }
                }
            },
            CellClass::Other(k) => return Err(format!("cell {c} is a {k}-gon")),
        }
    }
    for p in sub.polygon().boundary_points() {
        if !sub.is_vertex(p) {
            return Err(format!("boundary lattice point {p} is not a vertex"));
        }
    }
    if mode == AdmissibilityMode::OneCusp && quads == 0 {
        return Err("no exceptional quadrilateral".into());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Abort once a partial tiling needs more cells than this.
    pub max_cells: usize,
    /// Keep only subdivisions of this rank; `None` keeps every rank.
    pub rank: Option<i64>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            max_cells: 64,
            rank: None,
        }
    }
}

/// Every regular admissible subdivision of `delta` for `mode` with the given
/// rank, each exactly once, sorted canonically.
pub fn enumerate_admissible_subdivisions(
    delta: &LatticePolygon,
    mode: AdmissibilityMode,
    rank: i64,
) -> Result<Vec<Subdivision>> {
    enumerate_with(
        delta,
        mode,
        EnumerationOptions {
            rank: Some(rank),
            ..Default::default()
        },
    )
}

pub fn enumerate_with(
    delta: &LatticePolygon,
    mode: AdmissibilityMode,
    opts: EnumerationOptions,
) -> Result<Vec<Subdivision>> {
    let tilings = admissible_tilings(delta, mode, opts.max_cells)?;
    let kept = crate::par::try_map(tilings, |cells| -> Result<Option<Subdivision>> {
        let sub = Subdivision::new(delta.clone(), cells)?;
        if admissible(&sub, mode).is_err() || is_regular(&sub).is_none() {
            return Ok(None);
        }
        let report = rank_report(&sub)?;
        Ok(match opts.rank {
            Some(r) if r != report.rank => None,
            _ => Some(sub),
        })
    })?;
    let mut out: Vec<Subdivision> = kept.into_iter().flatten().collect();
    out.sort();
    Ok(out)
}

/// Exhaustive face-to-face tilings of `delta` by the cell shapes allowed in
/// `mode`, using every boundary lattice point as a vertex. Regularity is not
/// checked here.
pub fn admissible_tilings(
    delta: &LatticePolygon,
    mode: AdmissibilityMode,
    max_cells: usize,
) -> Result<Vec<Vec<LatticePolygon>>> {
    let boundary = delta.boundary_points();
    let interior = delta.interior_points();
    if interior.len() > 20 {
        return Err(Error::ResourceLimit(format!(
            "{} interior points is beyond exhaustive enumeration",
            interior.len()
        )));
    }
    // Boundary unit edges, counterclockwise.
    let mut unit_edges = Vec::new();
    for (a, b) in delta.edges() {
        let v = b.sub(a);
        let g = num_integer::Integer::gcd(&v.x.abs(), &v.y.abs());
        let step = LatticePoint::new(v.x / g, v.y / g);
        let mut p = a;
        for _ in 0..g {
            let q = p.add(step);
            unit_edges.push((p, q));
            p = q;
        }
    }
    let mut results = Vec::new();
    for mask in 0u32..(1u32 << interior.len()) {
        let mut verts: Vec<LatticePoint> = boundary.clone();
        verts.extend(
            interior
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| *p),
        );
        verts.sort();
        let search = TilingSearch::new(&verts, mode);
        search.run(&unit_edges, max_cells, &mut results)?;
    }
    Ok(results)
}

struct TilingSearch {
    mode: AdmissibilityMode,
    /// Candidate cells by one of their counterclockwise directed edges.
    by_edge: HashMap<(LatticePoint, LatticePoint), Vec<usize>>,
    candidates: Vec<(LatticePolygon, CellClass)>,
}

impl TilingSearch {
    fn new(verts: &[LatticePoint], mode: AdmissibilityMode) -> Self {
        let n = verts.len();
        let mut candidates = Vec::new();
        let mut consider = |pts: &[LatticePoint]| {
            let Ok(poly) = LatticePolygon::new(pts.iter().copied()) else {
                return;
            };
            let class = classify_cell(&poly);
            let allowed = match class {
                CellClass::Triangle | CellClass::Parallelogram => true,
                CellClass::GenericQuadrilateral => mode == AdmissibilityMode::OneCusp,
                _ => false,
            };
            if !allowed {
                return;
            }
            let clean = verts
                .iter()
                .all(|v| poly.vertices().contains(v) || !poly.contains(*v));
            if clean {
                candidates.push((poly, class));
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    consider(&[verts[i], verts[j], verts[k]]);
                    for l in k + 1..n {
                        consider(&[verts[i], verts[j], verts[k], verts[l]]);
                    }
                }
            }
        }
        let mut by_edge: HashMap<(LatticePoint, LatticePoint), Vec<usize>> = HashMap::new();
        for (ci, (poly, _)) in candidates.iter().enumerate() {
            for e in poly.edges() {
                by_edge.entry(e).or_default().push(ci);
            }
        }
        Self {
            mode,
            by_edge,
            candidates,
        }
    }

    fn run(
        &self,
        unit_edges: &[(LatticePoint, LatticePoint)],
        max_cells: usize,
        out: &mut Vec<Vec<LatticePolygon>>,
    ) -> Result<()> {
        let open: BTreeSet<(LatticePoint, LatticePoint)> = unit_edges.iter().copied().collect();
        let mut placed = Vec::new();
        self.extend(open, &mut placed, 0, max_cells, out)
    }

    /// `open` holds directed edges that must still appear counterclockwise in
    /// some cell. The least open edge is always the one branched on, so each
    /// tiling is produced once.
    fn extend(
        &self,
        open: BTreeSet<(LatticePoint, LatticePoint)>,
        placed: &mut Vec<usize>,
        quads: usize,
        max_cells: usize,
        out: &mut Vec<Vec<LatticePolygon>>,
    ) -> Result<()> {
        let Some(&edge) = open.iter().next() else {
            if self.mode == AdmissibilityMode::Nodal || quads == 1 {
                out.push(
                    placed
                        .iter()
                        .map(|&c| self.candidates[c].0.clone())
                        .collect(),
                );
            }
            return Ok(());
        };
        if placed.len() >= max_cells {
            return Err(Error::ResourceLimit(format!(
                "partial tiling exceeds {max_cells} cells"
            )));
        }
        let Some(cands) = self.by_edge.get(&edge) else {
            return Ok(());
        };
        'cand: for &ci in cands {
            let (poly, class) = &self.candidates[ci];
            let is_quad = *class == CellClass::GenericQuadrilateral;
            if is_quad && quads >= 1 {
                continue;
            }
            let mut next = open.clone();
            for (u, v) in poly.edges() {
                if next.remove(&(u, v)) {
                    continue;
                }
                if next.contains(&(v, u)) {
                    // The other side of this edge is already claimed.
                    continue 'cand;
                }
                next.insert((v, u));
            }
            for &pi in placed.iter() {
                if interiors_overlap(poly, &self.candidates[pi].0) {
                    continue 'cand;
                }
            }
            placed.push(ci);
            let r = self.extend(next, placed, quads + usize::from(is_quad), max_cells, out);
            placed.pop();
            r?;
        }
        Ok(())
    }
}

/// Separating-axis test on the edge lines of two convex polygons.
fn interiors_overlap(p: &LatticePolygon, q: &LatticePolygon) -> bool {
    let separated_by = |edges: &[(LatticePoint, LatticePoint)], other: &LatticePolygon| {
        edges.iter().any(|&(a, b)| {
            other.vertices().iter().all(|&v| orient(a, b, v) <= 0)
        })
    };
    !(separated_by(&p.edges(), q) || separated_by(&q.edges(), p))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::frac;

    pub(crate) fn poly(v: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::new(v.iter().map(|&p| p.into())).unwrap()
    }

    fn deg(d: i64) -> LatticePolygon {
        poly(&[(0, 0), (d, 0), (0, d)])
    }

    fn four_triangles() -> Subdivision {
        Subdivision::new(
            deg(2),
            vec![
                poly(&[(0, 0), (1, 0), (0, 1)]),
                poly(&[(1, 0), (2, 0), (1, 1)]),
                poly(&[(0, 1), (1, 1), (0, 2)]),
                poly(&[(1, 0), (1, 1), (0, 1)]),
            ],
        )
        .unwrap()
    }

    fn lift_of(points: &[LatticePoint], f: impl Fn(LatticePoint) -> Rational) -> BTreeMap<LatticePoint, Rational> {
        points.iter().map(|&p| (p, f(p))).collect()
    }

    #[test]
    fn flat_lift_gives_single_cell() {
        let t = deg(1);
        let (sub, nu) = lower_hull_subdivision(&t.lattice_points(), &lift_of(&t.lattice_points(), |_| int(0))).unwrap();
        assert_eq!(sub.cells(), &[t]);
        assert!(nu.values.values().all(|v| v.is_zero()));
    }

    #[test]
    fn parabolic_lift_gives_unit_triangles() {
        let pts = deg(2).lattice_points();
        let (sub, _) = lower_hull_subdivision(&pts, &lift_of(&pts, |p| int(p.x * p.x + p.x * p.y + p.y * p.y))).unwrap();
        assert_eq!(sub, four_triangles());
    }

    #[test]
    fn dented_lift_matches_brute_force() {
        // Lift 0 at the corners of the degree-2 triangle, -1 at the midpoints.
        let pts = deg(2).lattice_points();
        let corners = [LatticePoint::new(0, 0), LatticePoint::new(2, 0), LatticePoint::new(0, 2)];
        let lift = lift_of(&pts, |p| if corners.contains(&p) { int(0) } else { int(-1) });
        let (sub, nu) = lower_hull_subdivision(&pts, &lift).unwrap();
        // The midpoint triangle is a flat facet at height -1; the three corner
        // triangles each rise to their corner.
        assert_eq!(sub, four_triangles());
        assert_eq!(nu.get(&LatticePoint::new(1, 1)), Some(&int(-1)));
    }

    #[test]
    fn non_vertex_points_are_not_cell_vertices() {
        // The middle of the bottom edge is lifted above the hull.
        let pts = deg(2).lattice_points();
        let lift = lift_of(&pts, |p| if p == LatticePoint::new(1, 0) { int(5) } else { int(p.x * p.x + p.y * p.y) });
        let (sub, nu) = lower_hull_subdivision(&pts, &lift).unwrap();
        assert!(!sub.is_vertex(LatticePoint::new(1, 0)));
        assert_eq!(nu.get(&LatticePoint::new(1, 0)), Some(&int(2)));
    }

    #[test]
    fn collinear_support_rejected() {
        let pts = vec![LatticePoint::new(0, 0), LatticePoint::new(1, 0), LatticePoint::new(2, 0)];
        assert!(lower_hull_subdivision(&pts, &lift_of(&pts, |_| int(0))).is_err());
    }

    #[test]
    fn regularity_witnesses() {
        let nu = is_regular(&four_triangles()).expect("regular");
        assert!(four_triangles().induced_by(&nu));
        let single = Subdivision::new(deg(1), vec![deg(1)]).unwrap();
        let nu = is_regular(&single).unwrap();
        assert!(nu.values.values().all(|v| v.is_zero()));
    }

    /// Square [0,3]^2 around the unit square [1,2]^2, each trapezoid between
    /// them cut by the diagonal turning the same way.
    pub(crate) fn pinwheel() -> Subdivision {
        let cells = vec![
            poly(&[(1, 1), (2, 1), (2, 2), (1, 2)]),
            poly(&[(0, 0), (3, 0), (2, 1)]),
            poly(&[(0, 0), (2, 1), (1, 1)]),
            poly(&[(3, 0), (3, 3), (2, 2)]),
            poly(&[(3, 0), (2, 2), (2, 1)]),
            poly(&[(3, 3), (0, 3), (1, 2)]),
            poly(&[(3, 3), (1, 2), (2, 2)]),
            poly(&[(0, 3), (0, 0), (1, 1)]),
            poly(&[(0, 3), (1, 1), (1, 2)]),
        ];
        Subdivision::new(poly(&[(0, 0), (3, 0), (3, 3), (0, 3)]), cells).unwrap()
    }

    #[test]
    fn pinwheel_is_not_regular() {
        assert!(is_regular(&pinwheel()).is_none());
    }

    #[test]
    fn tiling_validation() {
        // Overlapping cells.
        assert!(Subdivision::new(
            deg(1),
            vec![deg(1), deg(1)]
        )
        .is_err());
        // T-junction: the big triangle's edge carries a vertex of the others.
        let bad = Subdivision::new(
            poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]),
            vec![
                poly(&[(0, 0), (2, 0), (0, 2)]),
                poly(&[(2, 0), (2, 2), (1, 1)]),
                poly(&[(2, 2), (0, 2), (1, 1)]),
            ],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn rank_examples() {
        let r = rank_report(&four_triangles()).unwrap();
        assert_eq!((r.rank_exp, r.d, r.rank), (5, 0, 5));
        let par = poly(&[(0, 0), (2, 0), (3, 1), (1, 1)]);
        let single = Subdivision::new(par.clone(), vec![par]).unwrap();
        let r = rank_report(&single).unwrap();
        assert_eq!((r.rank_exp, r.d, r.rank), (2, 0, 2));
        let quad = poly(&[(0, 3), (1, 1), (3, 0), (4, 0)]);
        let single = Subdivision::new(quad.clone(), vec![quad]).unwrap();
        let r = rank_report(&single).unwrap();
        assert_eq!(r.d, 0);
        assert_eq!(r.d_bound, 0);
    }

    #[test]
    fn admissibility_clauses() {
        assert!(admissible(&four_triangles(), AdmissibilityMode::Nodal).is_ok());
        let s = Subdivision::new(
            deg(2),
            vec![poly(&[(0, 0), (2, 0), (1, 1), (0, 1)]), poly(&[(0, 1), (1, 1), (0, 2)])],
        )
        .unwrap();
        let reason = admissible(&s, AdmissibilityMode::OneCusp).unwrap_err();
        assert!(reason.contains("trapezoid forbidden"), "{reason}");
        // Missing boundary vertex.
        let s = Subdivision::new(deg(2), vec![deg(2)]).unwrap();
        assert!(admissible(&s, AdmissibilityMode::Nodal).is_err());
    }

    #[test]
    fn enumerate_unit_and_degree_two() {
        let subs = enumerate_admissible_subdivisions(&deg(1), AdmissibilityMode::Nodal, 2).unwrap();
        assert_eq!(subs.len(), 1);
        let subs = enumerate_admissible_subdivisions(&deg(2), AdmissibilityMode::Nodal, 5).unwrap();
        assert!(subs.contains(&four_triangles()));
        for s in &subs {
            assert_eq!(rank_report(s).unwrap().rank, 5);
        }
    }

    #[test]
    fn witness_round_trip_through_lower_hull() {
        let subs = enumerate_with(&deg(2), AdmissibilityMode::Nodal, EnumerationOptions::default()).unwrap();
        assert!(!subs.is_empty());
        for s in subs {
            let nu = is_regular(&s).unwrap();
            let (back, _) = lower_hull_subdivision(s.vertices(), &nu.values).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn json_round_trip() {
        let s = four_triangles();
        let nu = LiftingFunction::new(lift_of(s.vertices(), |p| frac(p.x * p.x + p.y * p.y, 3)));
        let json = serde_json::to_string(&s.to_json_value(Some(&nu))).unwrap();
        let parsed: SubdivisionJson = serde_json::from_str(&json).unwrap();
        let (back, back_nu) = Subdivision::from_json_value(&parsed).unwrap();
        assert_eq!(back, s);
        assert_eq!(back_nu.unwrap(), nu);
    }
}
