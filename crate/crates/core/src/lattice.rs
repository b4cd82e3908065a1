//! Exact lattice geometry in the plane.
//!
//! Everything here is integer arithmetic on `i64` coordinates; products of
//! coordinates are formed in `i128` so cross products never overflow for
//! polygons of any size the enumeration can handle.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn sub(self, other: Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self::new(x, y)
    }
}

/// `(b - a) x (c - a)`; positive when `a, b, c` turn counterclockwise.
pub fn orient(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    cross(b.sub(a), c.sub(a))
}

pub fn cross(u: LatticePoint, v: LatticePoint) -> i128 {
    u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSegment {
    a: LatticePoint,
    b: LatticePoint,
}

impl LatticeSegment {
    pub fn new(a: LatticePoint, b: LatticePoint) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidGeometry(format!("degenerate segment at {a}")));
        }
        Ok(Self { a, b })
    }

    pub fn endpoints(&self) -> (LatticePoint, LatticePoint) {
        (self.a, self.b)
    }

    pub fn vector(&self) -> LatticePoint {
        self.b.sub(self.a)
    }

    /// Number of lattice points on the closed segment minus one.
    pub fn integer_length(&self) -> i64 {
        let v = self.vector();
        v.x.abs().gcd(&v.y.abs())
    }
}

pub fn integer_length(s: &LatticeSegment) -> i64 {
    s.integer_length()
}

/// Primitive direction of a nonzero integer vector.
pub fn primitive(v: LatticePoint) -> LatticePoint {
    let g = v.x.abs().gcd(&v.y.abs());
    debug_assert!(g > 0);
    LatticePoint::new(v.x / g, v.y / g)
}

/// A strictly convex lattice polygon, vertices counterclockwise starting at
/// the lexicographically least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellClass {
    Triangle,
    Parallelogram,
    Trapezoid,
    GenericQuadrilateral,
    Other(usize),
}

impl LatticePolygon {
    /// Builds a polygon from its vertices in any order. Every given point must
    /// be a vertex of the convex hull (no repeated, interior or collinear
    /// points) and the polygon must have positive area.
    pub fn new(points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        let mut pts: Vec<LatticePoint> = points.into_iter().collect();
        let given = pts.len();
        pts.sort();
        pts.dedup();
        if pts.len() != given {
            return Err(Error::InvalidGeometry("repeated vertex".into()));
        }
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            return Err(Error::InvalidGeometry("polygon has zero area".into()));
        }
        if hull.len() != given {
            return Err(Error::InvalidGeometry(
                "vertices are not in strictly convex position".into(),
            ));
        }
        Ok(Self { vertices: hull })
    }

    /// Convex hull of an arbitrary point set, collinear boundary points dropped.
    pub fn hull_of(points: &[LatticePoint]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let hull = convex_hull(&pts);
        if hull.len() < 3 {
            return Err(Error::InvalidGeometry("points are collinear".into()));
        }
        Ok(Self { vertices: hull })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges in counterclockwise order, `edges()[i]` runs from vertex `i` to `i + 1`.
    pub fn edges(&self) -> Vec<(LatticePoint, LatticePoint)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn edge_vectors(&self) -> Vec<LatticePoint> {
        self.edges().into_iter().map(|(a, b)| b.sub(a)).collect()
    }

    /// Twice the Euclidean area.
    pub fn normalized_area(&self) -> i64 {
        let n = self.vertices.len();
        let twice: i128 = (0..n)
            .map(|i| cross(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum();
        debug_assert!(twice > 0);
        twice as i64
    }

    /// Closed containment test.
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.edges().iter().all(|&(a, b)| orient(a, b, p) >= 0)
    }

    pub fn contains_strictly(&self, p: LatticePoint) -> bool {
        self.edges().iter().all(|&(a, b)| orient(a, b, p) > 0)
    }

    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.contains(p) && !self.contains_strictly(p)
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// All lattice points of the closed polygon, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = LatticePoint::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn boundary_points(&self) -> Vec<LatticePoint> {
        self.lattice_points()
            .into_iter()
            .filter(|&p| !self.contains_strictly(p))
            .collect()
    }

    pub fn interior_points(&self) -> Vec<LatticePoint> {
        self.lattice_points()
            .into_iter()
            .filter(|&p| self.contains_strictly(p))
            .collect()
    }

    /// Boundary lattice point count, from edge gcds.
    pub fn boundary_count(&self) -> i64 {
        self.edge_vectors()
            .iter()
            .map(|v| v.x.abs().gcd(&v.y.abs()))
            .sum()
    }

    pub fn classify(&self) -> CellClass {
        classify_cell(self)
    }

    pub fn transformed(&self, map: &UnimodularAffineMap) -> Self {
        let pts: Vec<_> = self.vertices.iter().map(|&v| map.apply(v)).collect();
        // Unimodular maps preserve strict convexity; only the order changes.
        Self::new(pts).expect("unimodular image of a polygon is a polygon")
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Andrew's monotone chain; counterclockwise, collinear points removed,
/// starting at the lexicographically least point.
fn convex_hull(sorted: &[LatticePoint]) -> Vec<LatticePoint> {
    if sorted.len() < 3 {
        return sorted.to_vec();
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in sorted {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn lattice_points(p: &LatticePolygon) -> Vec<LatticePoint> {
    p.lattice_points()
}

pub fn normalized_area(p: &LatticePolygon) -> i64 {
    p.normalized_area()
}

pub fn classify_cell(p: &LatticePolygon) -> CellClass {
    let e = p.edge_vectors();
    match e.len() {
        3 => CellClass::Triangle,
        4 => {
            let first = cross(e[0], e[2]) == 0;
            let second = cross(e[1], e[3]) == 0;
            match (first, second) {
                (true, true) => CellClass::Parallelogram,
                (false, false) => CellClass::GenericQuadrilateral,
                _ => CellClass::Trapezoid,
            }
        }
        k => CellClass::Other(k),
    }
}

/// `x -> matrix * x + translation` with `det(matrix) = +-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularAffineMap {
    matrix: [[i64; 2]; 2],
    translation: LatticePoint,
}

impl UnimodularAffineMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: LatticePoint) -> Result<Self> {
        let det = matrix[0][0] as i128 * matrix[1][1] as i128
            - matrix[0][1] as i128 * matrix[1][0] as i128;
        if det.abs() != 1 {
            return Err(Error::InvalidGeometry(format!("determinant {det} is not +-1")));
        }
        Ok(Self { matrix, translation })
    }

    pub fn identity() -> Self {
        Self {
            matrix: [[1, 0], [0, 1]],
            translation: LatticePoint::new(0, 0),
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn translation(&self) -> LatticePoint {
        self.translation
    }

    pub fn det(&self) -> i64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    pub fn apply_linear(&self, v: LatticePoint) -> LatticePoint {
        let m = self.matrix;
        LatticePoint::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y)
    }

    pub fn apply(&self, v: LatticePoint) -> LatticePoint {
        self.apply_linear(v).add(self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.matrix;
        let b = other.matrix;
        let matrix = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        Self {
            matrix,
            translation: self.apply(other.translation),
        }
    }

    pub fn inverse(&self) -> Self {
        let m = self.matrix;
        let d = self.det();
        let inv = [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]];
        let lin = Self {
            matrix: inv,
            translation: LatticePoint::new(0, 0),
        };
        let t = lin.apply_linear(self.translation);
        Self {
            matrix: inv,
            translation: LatticePoint::new(-t.x, -t.y),
        }
    }
}

/// Integer parameters of a quadrilateral in the position
/// `(0,m), (p,q), (p+r,0), (p+r+s,0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadParameters {
    pub m: i64,
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl QuadParameters {
    pub fn vertices(&self) -> [LatticePoint; 4] {
        let Self { m, p, q, r, s } = *self;
        [
            LatticePoint::new(0, m),
            LatticePoint::new(p, q),
            LatticePoint::new(p + r, 0),
            LatticePoint::new(p + r + s, 0),
        ]
    }
}

/// Finds a unimodular affine map taking `quad` to the normal position where
/// `e1` becomes `[(0,m),(p,q)]` and `e2` becomes `[(p,q),(p+r,0)]`.
///
/// The position is unique up to the shear `(x, y) -> (x + k y, y)`; the
/// representative with the smallest positive `p` is returned. Some edge pairs
/// admit no such position at all (the shared vertex lies farther from both
/// opposite edges than the remaining vertices), which is reported as an error.
pub fn normalize_quadrilateral(
    quad: &LatticePolygon,
    e1: (LatticePoint, LatticePoint),
    e2: (LatticePoint, LatticePoint),
) -> Result<(UnimodularAffineMap, QuadParameters)> {
    if classify_cell(quad) != CellClass::GenericQuadrilateral {
        return Err(Error::InvalidGeometry(format!(
            "{quad} is not a quadrilateral without parallel edges"
        )));
    }
    let is_edge = |(a, b): (LatticePoint, LatticePoint)| {
        quad.edges()
            .iter()
            .any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    };
    if !is_edge(e1) || !is_edge(e2) {
        return Err(Error::InvalidGeometry("given segments are not edges of the quadrilateral".into()));
    }
    let shared = [e1.0, e1.1]
        .into_iter()
        .find(|v| *v == e2.0 || *v == e2.1)
        .ok_or_else(|| Error::InvalidGeometry("edges are not adjacent".into()))?;
    let apex = if e1.0 == shared { e1.1 } else { e1.0 };
    let foot = if e2.0 == shared { e2.1 } else { e2.0 };
    let far = *quad
        .vertices()
        .iter()
        .find(|v| **v != shared && **v != apex && **v != foot)
        .expect("quadrilateral has four vertices");

    // Send foot -> far to the positive x-axis.
    let base = far.sub(foot);
    let s = base.x.abs().gcd(&base.y.abs());
    let u = LatticePoint::new(base.x / s, base.y / s);
    // Complete u to a basis: find w with cross(u, w) = 1.
    let (g, a, b) = ext_gcd(u.x, u.y);
    debug_assert_eq!(g, 1);
    // cross(u, w) = u.x * w.y - u.y * w.x = 1 with w = (-b, a).
    let w = LatticePoint::new(-b, a);
    debug_assert_eq!(cross(u, w), 1);
    // Linear map L with L(u) = e_x, L(w) = e_y is the inverse of [u w].
    let mut lin = UnimodularAffineMap::new([[u.x, w.x], [u.y, w.y]], LatticePoint::new(0, 0))?
        .inverse();
    let height = |v: LatticePoint, lin: &UnimodularAffineMap| lin.apply_linear(v.sub(foot)).y;
    if height(apex, &lin) < 0 {
        let flip = UnimodularAffineMap::new([[1, 0], [0, -1]], LatticePoint::new(0, 0))?;
        lin = flip.compose(&lin);
    }
    let a_rel = lin.apply_linear(apex.sub(foot));
    let b_rel = lin.apply_linear(shared.sub(foot));
    let m = a_rel.y;
    let q = b_rel.y;
    if !(0 < q && q < m) {
        return Err(Error::InvalidGeometry(format!(
            "{quad} has no normal position for the given edge pair"
        )));
    }
    // After the shear x -> x + k y and a translation putting the apex on the
    // y-axis: p = (b.x - a.x) + k (q - m), r = -b.x - k q.
    let p0 = b_rel.x - a_rel.x;
    let r0 = -b_rel.x;
    // Largest k with p > 0 and r > 0.
    let k = Integer::div_floor(&(p0 - 1), &(m - q)).min(Integer::div_floor(&(r0 - 1), &q));
    let p = p0 - k * (m - q);
    let r = r0 - k * q;
    let shear = UnimodularAffineMap::new([[1, k], [0, 1]], LatticePoint::new(0, 0))?;
    let lin = shear.compose(&lin);
    let apex_img = lin.apply_linear(apex);
    let map = UnimodularAffineMap::new(lin.matrix(), LatticePoint::new(-apex_img.x, m - apex_img.y))?;
    let params = QuadParameters { m, p, q, r, s };
    debug_assert_eq!(map.apply(apex), LatticePoint::new(0, m));
    debug_assert_eq!(map.apply(shared), LatticePoint::new(p, q));
    debug_assert_eq!(map.apply(foot), LatticePoint::new(p + r, 0));
    debug_assert_eq!(map.apply(far), LatticePoint::new(p + r + s, 0));
    Ok((map, params))
}

/// Returns `(g, a, b)` with `a x + b y = g = gcd(x, y) >= 0`.
pub fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (x, y);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Number of nodes and number of point conditions for rational curves with
/// one cusp on the toric surface of `delta`.
pub fn problem_parameters(delta: &LatticePolygon) -> Result<(i64, i64)> {
    let total = delta.lattice_points().len() as i64;
    let interior = delta.interior_points().len() as i64;
    let n = interior - 1;
    if n < 0 {
        return Err(Error::InvalidProblem(format!(
            "{delta} has no interior lattice points, so no rational cuspidal curve exists"
        )));
    }
    Ok((n, total - n - 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::new(v.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn lattice_points_of_small_polygons() {
        let unit = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(
            unit.lattice_points(),
            vec![(0, 0).into(), (0, 1).into(), (1, 0).into()]
        );
        let tri3 = poly(&[(0, 0), (3, 0), (0, 3)]);
        assert_eq!(tri3.lattice_points().len(), 10);
        assert_eq!(tri3.interior_points(), vec![LatticePoint::new(1, 1)]);
        let pent = poly(&[(0, 0), (2, 0), (2, 1), (0, 2)]);
        assert_eq!(pent.lattice_points().len(), 7);
        assert_eq!(pent.interior_points(), vec![LatticePoint::new(1, 1)]);
    }

    #[test]
    fn integer_lengths() {
        let seg = |a: (i64, i64), b: (i64, i64)| LatticeSegment::new(a.into(), b.into()).unwrap();
        assert_eq!(seg((0, 0), (4, 6)).integer_length(), 2);
        assert_eq!(seg((0, 0), (1, 0)).integer_length(), 1);
        assert_eq!(seg((0, 3), (1, 1)).integer_length(), 1);
        assert!(LatticeSegment::new((1, 1).into(), (1, 1).into()).is_err());
    }

    #[test]
    fn areas() {
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).normalized_area(), 1);
        assert_eq!(poly(&[(0, 0), (3, 0), (0, 3)]).normalized_area(), 9);
        assert_eq!(poly(&[(0, 0), (2, 0), (3, 1), (1, 1)]).normalized_area(), 4);
    }

    #[test]
    fn classification() {
        assert_eq!(poly(&[(0, 0), (2, 0), (3, 1), (1, 1)]).classify(), CellClass::Parallelogram);
        assert_eq!(poly(&[(0, 0), (3, 0), (2, 1), (0, 1)]).classify(), CellClass::Trapezoid);
        assert_eq!(
            poly(&[(0, 3), (1, 1), (3, 0), (4, 0)]).classify(),
            CellClass::GenericQuadrilateral
        );
        assert_eq!(poly(&[(0, 0), (1, 0), (0, 1)]).classify(), CellClass::Triangle);
        assert_eq!(
            poly(&[(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)]).classify(),
            CellClass::Other(5)
        );
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(LatticePolygon::new([(0, 0), (1, 0), (2, 0)].map(Into::into)).is_err());
        assert!(LatticePolygon::new([(0, 0), (1, 0), (2, 0), (0, 1)].map(Into::into)).is_err());
        assert!(LatticePolygon::new([(0, 0), (2, 0), (0, 2), (1, 0)].map(Into::into)).is_err());
        let p = poly(&[(0, 1), (1, 0), (0, 0)]);
        assert_eq!(p.vertices()[0], LatticePoint::new(0, 0));
        assert_eq!(p.vertices()[1], LatticePoint::new(1, 0));
    }

    #[test]
    fn problem_parameters_examples() {
        assert_eq!(problem_parameters(&poly(&[(0, 0), (3, 0), (0, 3)])).unwrap(), (0, 7));
        assert_eq!(
            problem_parameters(&poly(&[(0, 0), (2, 0), (2, 1), (0, 2)])).unwrap(),
            (0, 4)
        );
        assert!(matches!(
            problem_parameters(&poly(&[(0, 0), (2, 0), (0, 2)])),
            Err(Error::InvalidProblem(_))
        ));
    }

    fn normal_quad() -> LatticePolygon {
        poly(&[(0, 3), (1, 1), (3, 0), (4, 0)])
    }

    #[test]
    fn normal_position_is_fixed_by_identity() {
        let q = normal_quad();
        let e1 = ((0, 3).into(), (1, 1).into());
        let e2 = ((1, 1).into(), (3, 0).into());
        let (map, params) = normalize_quadrilateral(&q, e1, e2).unwrap();
        assert_eq!(map, UnimodularAffineMap::identity());
        assert_eq!(params, QuadParameters { m: 3, p: 1, q: 1, r: 2, s: 1 });
    }

    #[test]
    fn sheared_quadrilateral_normalizes_back() {
        let shear = UnimodularAffineMap::new([[1, 1], [0, 1]], LatticePoint::new(0, 0)).unwrap();
        let q = normal_quad().transformed(&shear);
        let e1 = (shear.apply((0, 3).into()), shear.apply((1, 1).into()));
        let e2 = (shear.apply((1, 1).into()), shear.apply((3, 0).into()));
        let (map, params) = normalize_quadrilateral(&q, e1, e2).unwrap();
        assert_eq!(params, QuadParameters { m: 3, p: 1, q: 1, r: 2, s: 1 });
        assert_eq!(map.compose(&shear), UnimodularAffineMap::identity());
    }

    #[test]
    fn unreachable_normal_position_is_reported() {
        // The shared vertex (5,5) is farther from both opposite edges than
        // the other endpoints.
        let q = poly(&[(0, 0), (3, 1), (5, 5), (1, 3)]);
        let e1 = ((3, 1).into(), (5, 5).into());
        let e2 = ((5, 5).into(), (1, 3).into());
        assert!(normalize_quadrilateral(&q, e1, e2).is_err());
        assert!(normalize_quadrilateral(&q, e2, e1).is_err());
    }

    #[test]
    fn affine_map_inverse_and_compose() {
        let m = UnimodularAffineMap::new([[2, 1], [1, 1]], LatticePoint::new(3, -2)).unwrap();
        let id = m.compose(&m.inverse());
        assert_eq!(id, UnimodularAffineMap::identity());
        assert!(UnimodularAffineMap::new([[2, 0], [0, 1]], LatticePoint::new(0, 0)).is_err());
    }
}
