//! Plane tropical curves dual to regular subdivisions.
//!
//! Convention: `N(x) = max_w (w . x + c_w)` and the lifting function is
//! `nu(w) = -c_w`. The curve vertex dual to a cell is the gradient of the
//! affine function that agrees with `nu` on the cell.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{classify_cell, cross, primitive, CellClass, LatticePoint};
use crate::rational::{int, Rational, RationalPoint};
use crate::subdivision::{lower_hull_subdivision, AdmissibilityMode, LiftingFunction, Subdivision};

use num_integer::Integer;
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial {
    coeffs: BTreeMap<LatticePoint, Rational>,
}

impl TropicalPolynomial {
    pub fn new(coeffs: BTreeMap<LatticePoint, Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidGeometry("empty tropical polynomial".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn coefficients(&self) -> &BTreeMap<LatticePoint, Rational> {
        &self.coeffs
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.coeffs.keys().copied().collect()
    }

    pub fn eval(&self, x: &RationalPoint) -> Rational {
        self.coeffs
            .iter()
            .map(|(w, c)| x.dot_lattice(w.x, w.y) + c)
            .max()
            .expect("nonempty")
    }

    /// Monomials attaining the maximum at `x`.
    pub fn argmax(&self, x: &RationalPoint) -> Vec<LatticePoint> {
        let best = self.eval(x);
        self.coeffs
            .iter()
            .filter(|(w, c)| x.dot_lattice(w.x, w.y) + *c == best)
            .map(|(w, _)| *w)
            .collect()
    }

    /// `nu = -c`.
    pub fn lifting(&self) -> BTreeMap<LatticePoint, Rational> {
        self.coeffs.iter().map(|(w, c)| (*w, -c)).collect()
    }

    /// Polynomial whose corner locus is the curve dual to `(sub, nu)`.
    pub fn from_lifting(nu: &LiftingFunction) -> Self {
        Self {
            coeffs: nu.values.iter().map(|(w, v)| (*w, -v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveEdge {
    pub from: usize,
    pub to: usize,
    /// Primitive direction from `from` to `to`.
    pub direction: LatticePoint,
    pub weight: i64,
    /// Index of the dual subdivision edge.
    pub dual_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRay {
    pub from: usize,
    pub direction: LatticePoint,
    pub weight: i64,
    pub dual_edge: usize,
}

/// A line `point + t * direction`, the whole curve when the Newton polygon is
/// a segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveLine {
    pub point: RationalPoint,
    pub direction: LatticePoint,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTropicalCurve {
    subdivision: Subdivision,
    nu: LiftingFunction,
    /// One vertex per cell, same index.
    vertices: Vec<RationalPoint>,
    edges: Vec<CurveEdge>,
    rays: Vec<CurveRay>,
    /// Per subdivision edge, the dual curve element.
    dual_of: Vec<Element>,
}

/// A piece of a tropical curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
    Ray(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub element: Element,
    /// True for a point in the relative interior of an edge or ray.
    pub interior: bool,
}

/// Outward normal of the cell on the left of the directed edge `a -> b`.
fn outward(a: LatticePoint, b: LatticePoint) -> LatticePoint {
    let d = b.sub(a);
    LatticePoint::new(d.y, -d.x)
}

fn lattice_length(v: LatticePoint) -> i64 {
    v.x.abs().gcd(&v.y.abs())
}

impl PlaneTropicalCurve {
    /// Curve dual to a subdivision with an inducing lifting function.
    pub fn from_subdivision(sub: Subdivision, nu: &LiftingFunction) -> Result<Self> {
        if !sub.induced_by(nu) {
            return Err(Error::InvalidGeometry(
                "lifting function does not induce the subdivision".into(),
            ));
        }
        let values = sub.values_of(nu).expect("checked by induced_by");
        let vs = sub.vertices();
        let vertices: Vec<RationalPoint> = (0..sub.cells().len())
            .map(|c| {
                let ids = sub.cell_vertex_ids(c);
                let (i0, i1, i2) = (ids[0], ids[1], ids[2]);
                let (p0, p1, p2) = (vs[i0], vs[i1], vs[i2]);
                // Solve a . (p1 - p0) = nu1 - nu0, a . (p2 - p0) = nu2 - nu0.
                let (u, w) = (p1.sub(p0), p2.sub(p0));
                let (du, dw) = (&values[i1] - &values[i0], &values[i2] - &values[i0]);
                let det = int((u.x as i128 * w.y as i128 - u.y as i128 * w.x as i128) as i64);
                let x = (&du * int(w.y) - &dw * int(u.y)) / &det;
                let y = (&dw * int(u.x) - &du * int(w.x)) / &det;
                RationalPoint::new(x, y)
            })
            .collect();
        let mut edges = Vec::new();
        let mut rays = Vec::new();
        let mut dual_of = Vec::with_capacity(sub.edges().len());
        for (ei, e) in sub.edges().iter().enumerate() {
            let (a, b) = (vs[e.a], vs[e.b]);
            let weight = lattice_length(b.sub(a));
            match (e.left, e.right) {
                (Some(l), Some(r)) => {
                    dual_of.push(Element::Edge(edges.len()));
                    edges.push(CurveEdge {
                        from: l,
                        to: r,
                        direction: primitive(outward(a, b)),
                        weight,
                        dual_edge: ei,
                    });
                }
                (Some(l), None) => {
                    dual_of.push(Element::Ray(rays.len()));
                    rays.push(CurveRay {
                        from: l,
                        direction: primitive(outward(a, b)),
                        weight,
                        dual_edge: ei,
                    });
                }
                (None, Some(r)) => {
                    dual_of.push(Element::Ray(rays.len()));
                    rays.push(CurveRay {
                        from: r,
                        direction: primitive(outward(b, a)),
                        weight,
                        dual_edge: ei,
                    });
                }
                (None, None) => unreachable!("edges belong to a cell"),
            }
        }
        let nu = LiftingFunction::new(
            vs.iter().copied().zip(values).collect(),
        );
        Ok(Self {
            subdivision: sub,
            nu,
            vertices,
            edges,
            rays,
            dual_of,
        })
    }

    pub fn subdivision(&self) -> &Subdivision {
        &self.subdivision
    }

    pub fn lifting(&self) -> &LiftingFunction {
        &self.nu
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn edges(&self) -> &[CurveEdge] {
        &self.edges
    }

    pub fn rays(&self) -> &[CurveRay] {
        &self.rays
    }

    /// Curve element dual to the subdivision edge `e`.
    pub fn dual_of_edge(&self, e: usize) -> Element {
        self.dual_of[e]
    }

    /// Subdivision edge dual to an edge or ray.
    pub fn dual_edge(&self, el: Element) -> Option<usize> {
        match el {
            Element::Vertex(_) => None,
            Element::Edge(i) => Some(self.edges[i].dual_edge),
            Element::Ray(i) => Some(self.rays[i].dual_edge),
        }
    }

    /// Where `x` lies on the curve, if it does.
    pub fn incidence(&self, x: &RationalPoint) -> Option<Incidence> {
        if let Some(i) = self.vertices.iter().position(|v| v == x) {
            return Some(Incidence {
                element: Element::Vertex(i),
                interior: false,
            });
        }
        // Parameter t with x = p + t u, if x is on that line.
        let along = |p: &RationalPoint, u: LatticePoint| -> Option<Rational> {
            let dx = &x.x - &p.x;
            let dy = &x.y - &p.y;
            if &dx * int(u.y) != &dy * int(u.x) {
                return None;
            }
            Some(if u.x != 0 { dx / int(u.x) } else { dy / int(u.y) })
        };
        for (i, e) in self.edges.iter().enumerate() {
            let p = &self.vertices[e.from];
            let q = &self.vertices[e.to];
            if let Some(t) = along(p, e.direction) {
                if t.is_positive() && t < along_end(p, q, e.direction) {
                    return Some(Incidence {
                        element: Element::Edge(i),
                        interior: true,
                    });
                }
            }
        }
        for (i, r) in self.rays.iter().enumerate() {
            if let Some(t) = along(&self.vertices[r.from], r.direction) {
                if t.is_positive() {
                    return Some(Incidence {
                        element: Element::Ray(i),
                        interior: true,
                    });
                }
            }
        }
        None
    }

    /// Weighted outgoing directions sum to zero at every vertex.
    pub fn is_balanced(&self) -> bool {
        let mut sum = vec![(0i64, 0i64); self.vertices.len()];
        for e in &self.edges {
            let (dx, dy) = (e.direction.x * e.weight, e.direction.y * e.weight);
            sum[e.from].0 += dx;
            sum[e.from].1 += dy;
            sum[e.to].0 -= dx;
            sum[e.to].1 -= dy;
        }
        for r in &self.rays {
            sum[r.from].0 += r.direction.x * r.weight;
            sum[r.from].1 += r.direction.y * r.weight;
        }
        sum.iter().all(|s| *s == (0, 0))
    }

    /// First Betti number of the parameterizing graph.
    pub fn genus(&self) -> usize {
        GammaGraph::new(&self.subdivision, &[]).betti()
    }

    /// Orientation induced by marked points placed on the curve.
    pub fn orient(&self, marks: &[RationalPoint], mode: AdmissibilityMode) -> Result<OrientedForest> {
        let mut marked = Vec::with_capacity(marks.len());
        for (i, m) in marks.iter().enumerate() {
            let inc = self.incidence(m).ok_or_else(|| {
                Error::ViolatedStructure(format!("marked point {i} is not on the curve"))
            })?;
            if !inc.interior {
                return Err(Error::ViolatedStructure(format!(
                    "marked point {i} is a vertex of the curve"
                )));
            }
            let e = self.dual_edge(inc.element).expect("edge or ray");
            if marked.contains(&e) {
                return Err(Error::ViolatedStructure(format!(
                    "two marked points on the edge dual to subdivision edge {e}"
                )));
            }
            marked.push(e);
        }
        OrientedForest::new(&self.subdivision, &marked, mode)
    }
}

/// Length parameter of `q` along `p + t u`.
fn along_end(p: &RationalPoint, q: &RationalPoint, u: LatticePoint) -> Rational {
    if u.x != 0 {
        (&q.x - &p.x) / int(u.x)
    } else {
        (&q.y - &p.y) / int(u.y)
    }
}

/// Curve of a polynomial with collinear support: parallel lines.
pub fn corner_locus_collinear(f: &TropicalPolynomial) -> Result<Vec<CurveLine>> {
    let support = f.support();
    let base = support[0];
    let dir = support
        .iter()
        .map(|w| w.sub(base))
        .find(|v| *v != LatticePoint::new(0, 0))
        .ok_or_else(|| Error::InvalidGeometry("support is a single point".into()))?;
    if support.iter().any(|w| cross(w.sub(base), dir) != 0) {
        return Err(Error::InvalidGeometry("support is not collinear".into()));
    }
    let u = primitive(dir);
    // Position along the segment and lift, lower hull in one dimension.
    let mut pts: Vec<(i64, Rational)> = f
        .coefficients()
        .iter()
        .map(|(w, c)| {
            let d = w.sub(base);
            let t = if u.x != 0 { d.x / u.x } else { d.y / u.y };
            (t, -c)
        })
        .collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (t1, v1) = &hull[hull.len() - 2];
            let (t2, v2) = &hull[hull.len() - 1];
            // Drop the middle point unless it is strictly below the chord.
            let lhs = (v2 - v1) * int(p.0 - t1);
            let rhs = (&p.1 - v1) * int(t2 - t1);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let normal = LatticePoint::new(-u.y, u.x);
    Ok(hull
        .windows(2)
        .map(|w| {
            let (t1, v1) = &w[0];
            let (t2, v2) = &w[1];
            // x . u = (v2 - v1) / (t2 - t1); take the point on the span of u.
            let s = (v2 - v1) / int(t2 - t1);
            let norm = int(u.x * u.x + u.y * u.y);
            let point = RationalPoint::new(&s * int(u.x) / &norm, &s * int(u.y) / &norm);
            CurveLine {
                point,
                direction: normal,
                weight: t2 - t1,
            }
        })
        .collect())
}

/// Corner locus of a tropical polynomial whose support spans the plane.
pub fn corner_locus(f: &TropicalPolynomial) -> Result<PlaneTropicalCurve> {
    let support = f.support();
    let (sub, nu) = lower_hull_subdivision(&support, &f.lifting())?;
    let restricted = LiftingFunction::new(
        sub.vertices()
            .iter()
            .map(|v| (*v, nu.get(v).cloned().expect("vertex in support")))
            .collect(),
    );
    PlaneTropicalCurve::from_subdivision(sub, &restricted)
}

/// Node of the parameterizing graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    /// Vertex dual to a triangle or quadrilateral cell.
    Cell(usize),
    /// One of the two crossing lines through a parallelogram cell.
    Crossing(usize, u8),
    /// Unbounded end dual to a boundary edge.
    End(usize),
    /// One side of a cut at a marked point.
    Mark(usize, u8),
}

/// Segment of the parameterizing graph lying on the dual of a subdivision
/// edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub u: usize,
    pub v: usize,
    pub dual_edge: usize,
}

/// The parameterizing graph, optionally cut at marked edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGraph {
    pub nodes: Vec<Node>,
    pub links: Vec<Link>,
    index: BTreeMap<Node, usize>,
}

impl GammaGraph {
    /// `marked[i]` is the subdivision edge carrying marked point `i`.
    pub fn new(sub: &Subdivision, marked: &[usize]) -> Self {
        let mut g = GammaGraph {
            nodes: Vec::new(),
            links: Vec::new(),
            index: BTreeMap::new(),
        };
        let classes: Vec<CellClass> = sub.cells().iter().map(classify_cell).collect();
        let side = |cell: usize, edge: usize| -> Node {
            if classes[cell] == CellClass::Parallelogram {
                let pos = sub
                    .cell_edge_ids(cell)
                    .iter()
                    .position(|&e| e == edge)
                    .expect("edge of cell");
                Node::Crossing(cell, (pos % 2) as u8)
            } else {
                Node::Cell(cell)
            }
        };
        let mut mark_of: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &e) in marked.iter().enumerate() {
            mark_of.insert(e, i);
        }
        for (ei, e) in sub.edges().iter().enumerate() {
            let mut sides: Vec<Node> = e.cells().map(|c| side(c, ei)).collect();
            if sides.len() == 1 {
                sides.push(Node::End(ei));
            }
            let (s0, s1) = (g.node(sides[0]), g.node(sides[1]));
            match mark_of.get(&ei) {
                Some(&i) => {
                    let (m0, m1) = (g.node(Node::Mark(i, 0)), g.node(Node::Mark(i, 1)));
                    g.links.push(Link { u: s0, v: m0, dual_edge: ei });
                    g.links.push(Link { u: m1, v: s1, dual_edge: ei });
                }
                None => g.links.push(Link { u: s0, v: s1, dual_edge: ei }),
            }
        }
        g
    }

    fn node(&mut self, n: Node) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        self.nodes.push(n);
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub fn node_index(&self, n: Node) -> Option<usize> {
        self.index.get(&n).copied()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (li, l) in self.links.iter().enumerate() {
            adj[l.u].push((l.v, li));
            adj[l.v].push((l.u, li));
        }
        adj
    }

    /// Connected components as lists of node indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &(v, _) in &adj[comp[i]] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    }

    pub fn betti(&self) -> usize {
        self.links.len() + self.components().len() - self.nodes.len()
    }

    /// Every component reaches an unbounded end.
    pub fn every_component_has_end(&self) -> bool {
        self.components()
            .iter()
            .all(|c| c.iter().any(|&n| matches!(self.nodes[n], Node::End(_))))
    }
}

/// Orientation of the cut parameterizing graph: every link points towards
/// the free end of its component, except that the two links at the
/// quadrilateral vertex off the path between the two free ends point into
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedForest {
    pub graph: GammaGraph,
    /// Per link, `(tail, head)` node indices.
    pub directed: Vec<(usize, usize)>,
    /// The quadrilateral cell, in cusp mode.
    pub quad_cell: Option<usize>,
    /// Subdivision edges of the two quadrilateral sides whose dual links
    /// point into the quadrilateral vertex.
    pub sigma: Option<(usize, usize)>,
}

impl OrientedForest {
    pub fn new(sub: &Subdivision, marked: &[usize], mode: AdmissibilityMode) -> Result<Self> {
        let graph = GammaGraph::new(sub, marked);
        if graph.betti() != 0 {
            return Err(Error::ViolatedStructure(
                "the cut parameterizing graph has a cycle".into(),
            ));
        }
        let adj = graph.adjacency();
        let mut directed = vec![(usize::MAX, usize::MAX); graph.links.len()];
        let ends_of = |comp: &[usize]| -> Vec<usize> {
            comp.iter()
                .copied()
                .filter(|&n| matches!(graph.nodes[n], Node::End(_)))
                .collect()
        };
        // Orient everything reachable from `root` (avoiding `blocked`)
        // towards `root`.
        let orient_towards = |root: usize, blocked: Option<usize>, directed: &mut Vec<(usize, usize)>| {
            let mut queue = VecDeque::from([root]);
            let mut seen = vec![false; graph.nodes.len()];
            seen[root] = true;
            if let Some(b) = blocked {
                seen[b] = true;
            }
            while let Some(u) = queue.pop_front() {
                for &(v, li) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        directed[li] = (v, u);
                        queue.push_back(v);
                    }
                }
            }
        };

        let quad_cell = match mode {
            AdmissibilityMode::Nodal => None,
            AdmissibilityMode::OneCusp => Some(
                sub.cells()
                    .iter()
                    .position(|c| classify_cell(c) == CellClass::GenericQuadrilateral)
                    .ok_or_else(|| Error::ViolatedStructure("no quadrilateral cell".into()))?,
            ),
        };
        let quad_node = quad_cell.map(|c| graph.node_index(Node::Cell(c)).expect("cell node"));
        let mut sigma = None;
        for comp in graph.components() {
            let ends = ends_of(&comp);
            let is_quad_comp = quad_node.is_some_and(|q| comp.contains(&q));
            if !is_quad_comp {
                if ends.len() != 1 {
                    return Err(Error::ViolatedStructure(format!(
                        "component with {} unbounded ends",
                        ends.len()
                    )));
                }
                orient_towards(ends[0], None, &mut directed);
                continue;
            }
            let q = quad_node.unwrap();
            if ends.len() != 2 {
                return Err(Error::ViolatedStructure(format!(
                    "quadrilateral component has {} unbounded ends",
                    ends.len()
                )));
            }
            // Branches at the quadrilateral vertex; each end must lie in its
            // own branch, i.e. the path between the ends passes through it.
            let mut into_quad = Vec::new();
            let mut branch_ends = 0;
            for &(v, li) in &adj[q] {
                let mut stack = vec![v];
                let mut seen = vec![false; graph.nodes.len()];
                seen[q] = true;
                seen[v] = true;
                let mut end = None;
                while let Some(u) = stack.pop() {
                    if matches!(graph.nodes[u], Node::End(_)) {
                        end = Some(u);
                    }
                    for &(w, _) in &adj[u] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                match end {
                    Some(e) => {
                        branch_ends += 1;
                        directed[li] = (q, v);
                        orient_towards(e, Some(q), &mut directed);
                    }
                    None => {
                        directed[li] = (v, q);
                        orient_towards(v, Some(q), &mut directed);
                        // Within the branch links point towards v, then into q.
                        into_quad.push(graph.links[li].dual_edge);
                    }
                }
            }
            if branch_ends != 2 || into_quad.len() != 2 {
                return Err(Error::ViolatedStructure(
                    "path between the unbounded ends avoids the quadrilateral vertex".into(),
                ));
            }
            into_quad.sort();
            sigma = Some((into_quad[0], into_quad[1]));
        }
        if directed.iter().any(|&(a, _)| a == usize::MAX) {
            return Err(Error::Inconsistent("unoriented link".into()));
        }
        let forest = Self {
            graph,
            directed,
            quad_cell,
            sigma,
        };
        forest.check_indegrees()?;
        Ok(forest)
    }

    /// Trivalent and quadrilateral vertices have in-degree two, each line of
    /// a crossing in-degree one, mark sides zero and unbounded ends one.
    fn check_indegrees(&self) -> Result<()> {
        let mut indeg = vec![0usize; self.graph.nodes.len()];
        for &(_, h) in &self.directed {
            indeg[h] += 1;
        }
        for (i, n) in self.graph.nodes.iter().enumerate() {
            let want = match n {
                Node::Cell(_) => 2,
                Node::Crossing(..) | Node::End(_) => 1,
                Node::Mark(..) => 0,
            };
            if indeg[i] != want {
                return Err(Error::ViolatedStructure(format!(
                    "{n:?} has in-degree {} instead of {want}",
                    indeg[i]
                )));
            }
        }
        Ok(())
    }
}

/// Every marked point sits on the dual of its edge with all other monomials
/// strictly below: exact check against the polynomial.
pub fn marks_on_edges(curve: &PlaneTropicalCurve, marks: &[RationalPoint], edges: &[usize]) -> bool {
    let f = TropicalPolynomial::from_lifting(curve.lifting());
    marks.iter().zip(edges).all(|(m, &e)| {
        let (a, b) = curve.subdivision().edge_points(e);
        let mut arg = f.argmax(m);
        arg.sort();
        let mut want = vec![a, b];
        want.sort();
        arg == want
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::subdivision::tests::poly;

    fn lp(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn rp(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    fn poly_of(terms: &[((i64, i64), Rational)]) -> TropicalPolynomial {
        TropicalPolynomial::new(terms.iter().map(|(w, c)| (lp(w.0, w.1), c.clone())).collect())
            .unwrap()
    }

    fn tropical_line() -> PlaneTropicalCurve {
        corner_locus(&poly_of(&[((0, 0), int(0)), ((1, 0), int(0)), ((0, 1), int(0))])).unwrap()
    }

    /// Degree `d` polynomial with coefficients `-(i^2 + ij + j^2)`.
    fn convex_degree(d: i64) -> TropicalPolynomial {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=d - i {
                terms.push(((i, j), int(-(i * i + i * j + j * j))));
            }
        }
        poly_of(&terms)
    }

    #[test]
    fn line_has_one_vertex_three_rays() {
        let c = tropical_line();
        assert_eq!(c.vertices(), &[rp(0, 0)]);
        assert!(c.edges().is_empty());
        let mut dirs: Vec<_> = c.rays().iter().map(|r| r.direction).collect();
        dirs.sort();
        assert_eq!(dirs, vec![lp(-1, 0), lp(0, -1), lp(1, 1)]);
        assert!(c.is_balanced());
        assert_eq!(c.genus(), 0);
    }

    #[test]
    fn incidence_on_the_line() {
        let c = tropical_line();
        let ray_dir = |p: RationalPoint| match c.incidence(&p) {
            Some(Incidence { element: Element::Ray(i), interior: true }) => c.rays()[i].direction,
            other => panic!("{other:?}"),
        };
        assert_eq!(ray_dir(rp(-2, 0)), lp(-1, 0));
        assert_eq!(ray_dir(rp(5, 5)), lp(1, 1));
        assert_eq!(
            c.incidence(&rp(0, 0)),
            Some(Incidence { element: Element::Vertex(0), interior: false })
        );
        assert_eq!(c.incidence(&rp(1, 2)), None);
        assert_eq!(c.incidence(&RationalPoint::new(frac(-1, 3), int(0))).map(|i| i.interior), Some(true));
    }

    #[test]
    fn evaluation_and_argmax() {
        let f = poly_of(&[((0, 0), int(0)), ((1, 0), int(0)), ((0, 1), int(0))]);
        assert_eq!(f.eval(&rp(2, -1)), int(2));
        assert_eq!(f.argmax(&rp(2, -1)), vec![lp(1, 0)]);
        assert_eq!(f.argmax(&rp(0, 0)).len(), 3);
    }

    #[test]
    fn collinear_support_gives_parallel_lines() {
        let lines = corner_locus_collinear(&poly_of(&[((0, 0), int(0)), ((2, 0), int(0))])).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].point, rp(0, 0));
        assert_eq!(lines[0].direction, lp(0, 1));
        assert_eq!(lines[0].weight, 2);

        // A dominated middle monomial does not split the line.
        let lines = corner_locus_collinear(&poly_of(&[
            ((0, 0), int(0)),
            ((1, 0), int(-5)),
            ((2, 0), int(0)),
        ]))
        .unwrap();
        assert_eq!(lines.len(), 1);

        // Otherwise two weight one lines, at x = -1 and x = 1.
        let lines = corner_locus_collinear(&poly_of(&[
            ((0, 0), int(0)),
            ((1, 0), int(1)),
            ((2, 0), int(0)),
        ]))
        .unwrap();
        let xs: Vec<_> = lines.iter().map(|l| (l.point.x.clone(), l.weight)).collect();
        assert_eq!(xs, vec![(int(-1), 1), (int(1), 1)]);

        assert!(corner_locus_collinear(&convex_degree(1)).is_err());
    }

    #[test]
    fn smooth_conic() {
        let c = corner_locus(&convex_degree(2)).unwrap();
        assert_eq!(c.subdivision().cells().len(), 4);
        assert_eq!(c.vertices().len(), 4);
        assert_eq!(c.edges().len(), 3);
        assert_eq!(c.rays().len(), 6);
        assert!(c.is_balanced());
        assert_eq!(c.genus(), 0);
    }

    #[test]
    fn smooth_cubic_has_genus_one() {
        let c = corner_locus(&convex_degree(3)).unwrap();
        assert_eq!(c.subdivision().cells().len(), 9);
        assert!(c.is_balanced());
        assert_eq!(c.genus(), 1);
    }

    #[test]
    fn weighted_edges_balance() {
        // A double edge: support of degree 2 with a heavy middle coefficient
        // along the bottom side merged into one cell edge of length 2.
        let f = poly_of(&[((0, 0), int(0)), ((2, 0), int(0)), ((0, 2), int(0)), ((1, 1), int(-1))]);
        let c = corner_locus(&f).unwrap();
        assert!(c.rays().iter().any(|r| r.weight == 2));
        assert!(c.is_balanced());
    }

    #[test]
    fn orientation_of_marked_line() {
        let c = tropical_line();
        let forest = c.orient(&[rp(-2, 0), rp(0, -3)], AdmissibilityMode::Nodal).unwrap();
        assert_eq!(forest.graph.betti(), 0);
        assert_eq!(forest.graph.components().len(), 3);
        assert!(forest.sigma.is_none());

        let same_ray = c.orient(&[rp(-2, 0), rp(-3, 0)], AdmissibilityMode::Nodal);
        assert!(matches!(same_ray, Err(Error::ViolatedStructure(_))));
        let at_vertex = c.orient(&[rp(0, 0), rp(0, -3)], AdmissibilityMode::Nodal);
        assert!(matches!(at_vertex, Err(Error::ViolatedStructure(_))));
        let off = c.orient(&[rp(1, 2), rp(0, -3)], AdmissibilityMode::Nodal);
        assert!(matches!(off, Err(Error::ViolatedStructure(_))));
        // One mark leaves a component with two free ends.
        let under = c.orient(&[rp(-2, 0)], AdmissibilityMode::Nodal);
        assert!(matches!(under, Err(Error::ViolatedStructure(_))));
    }

    #[test]
    fn quadrilateral_orientation_picks_marked_sides() {
        let quad = poly(&[(0, 3), (1, 1), (3, 0), (4, 0)]);
        let sub = Subdivision::new(quad.clone(), vec![quad]).unwrap();
        let find = |a: LatticePoint, b: LatticePoint| {
            (0..sub.edges().len())
                .find(|&e| {
                    let (p, q) = sub.edge_points(e);
                    (p, q) == (a, b) || (p, q) == (b, a)
                })
                .unwrap()
        };
        let e1 = find(lp(0, 3), lp(1, 1));
        let e2 = find(lp(1, 1), lp(3, 0));
        let forest = OrientedForest::new(&sub, &[e1, e2], AdmissibilityMode::OneCusp).unwrap();
        assert_eq!(forest.sigma, Some((e1.min(e2), e1.max(e2))));
        assert!(OrientedForest::new(&sub, &[e1], AdmissibilityMode::OneCusp).is_err());
    }

    #[test]
    fn parameterizing_graph_of_crossing() {
        // Unit square split into nothing: a parallelogram cell is a crossing
        // of two lines, so the graph is two disjoint paths.
        let sq = poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let sub = Subdivision::new(sq.clone(), vec![sq]).unwrap();
        let g = GammaGraph::new(&sub, &[]);
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.betti(), 0);
        assert!(g.every_component_has_end());
    }
}
