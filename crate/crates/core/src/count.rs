//! Counting tropical curves through marked points.
//!
//! For every admissible subdivision of the right rank the marked points are
//! assigned to distinct subdivision edges, one point per edge. Each
//! assignment turns the incidence conditions into linear equations on the
//! lifting values; together with coplanarity and the normalization they
//! form a square system. A depth-first search over partial assignments is
//! pruned by a combinatorial test on the cut parameterizing graph and by a
//! floating point margin LP; complete assignments are then solved and
//! checked exactly.

use std::collections::BTreeMap;

use log::{debug, info};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{marks_on_edges, GammaGraph, OrientedForest, PlaneTropicalCurve};
use crate::error::{Error, Result};
use crate::lattice::{classify_cell, cross, problem_parameters, CellClass, LatticePolygon};
use crate::linalg::{solve_affine, AffineSolution, Scalar};
use crate::lp::{max_margin, LinearForm};
use crate::rational::{int, Rational, RationalPoint};
use crate::subdivision::{
    enumerate_with, AdmissibilityMode, EnumerationOptions, LiftingFunction, Subdivision,
};

/// Number of marked points for a problem on `delta`.
pub fn point_count(delta: &LatticePolygon, mode: AdmissibilityMode) -> Result<usize> {
    match mode {
        AdmissibilityMode::Nodal => Ok(delta.boundary_count() as usize - 1),
        AdmissibilityMode::OneCusp => {
            let (_, s) = problem_parameters(delta)?;
            Ok(s as usize)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolvedCurve {
    pub curve: PlaneTropicalCurve,
    /// Subdivision edge carrying each marked point.
    pub assignment: Vec<usize>,
    pub weight: u64,
    /// Sides of the quadrilateral entering the multiplicity, cusp mode only.
    pub sigma: Option<(usize, usize)>,
}

impl SolvedCurve {
    pub fn subdivision(&self) -> &Subdivision {
        self.curve.subdivision()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub polygon: LatticePolygon,
    pub mode: AdmissibilityMode,
    pub points: Vec<RationalPoint>,
    pub curves: Vec<SolvedCurve>,
    pub total: u64,
    /// Subdivisions that passed every filter and were searched.
    pub subdivisions_searched: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub max_cells: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { max_cells: 64 }
    }
}

fn forms_exact(rows: &[Vec<i64>]) -> Vec<LinearForm<Rational>> {
    rows.iter()
        .map(|r| LinearForm::new(r.iter().map(|&v| int(v)).collect(), int(0)))
        .collect()
}

fn to_f64_form(f: &LinearForm<Rational>) -> LinearForm<f64> {
    LinearForm::new(
        f.coeffs.iter().map(<f64 as Scalar>::from_rational).collect(),
        <f64 as Scalar>::from_rational(&f.constant),
    )
}

/// Linear data of one subdivision, shared by every assignment.
struct System<'a> {
    sub: &'a Subdivision,
    nv: usize,
    base_eq: Vec<LinearForm<Rational>>,
    convex: Vec<LinearForm<Rational>>,
}

impl<'a> System<'a> {
    fn new(sub: &'a Subdivision) -> Self {
        let nv = sub.vertices().len();
        let mut base_eq = forms_exact(&sub.coplanarity_rows());
        let mut fix = vec![int(0); nv];
        fix[0] = int(1);
        base_eq.push(LinearForm::new(fix, int(0)));
        Self {
            sub,
            nv,
            base_eq,
            convex: forms_exact(&sub.convexity_rows()),
        }
    }

    /// `nu(a) - nu(b) - (a - b) . x = 0` for the edge `(a, b)`.
    fn incidence(&self, x: &RationalPoint, e: usize) -> LinearForm<Rational> {
        let edge = self.sub.edges()[e];
        let (pa, pb) = self.sub.edge_points(e);
        let mut c = vec![int(0); self.nv];
        c[edge.a] = int(1);
        c[edge.b] = int(-1);
        let d = pa.sub(pb);
        LinearForm::new(c, -x.dot_lattice(d.x, d.y))
    }

    /// Every other vertex of the adjacent cells lies strictly above the
    /// plane through the lifted edge at slope `x`, so `x` is interior to the
    /// dual of `e` and not on any other edge.
    fn interior(&self, x: &RationalPoint, e: usize) -> Vec<LinearForm<Rational>> {
        let edge = self.sub.edges()[e];
        let pa = self.sub.vertices()[edge.a];
        let mut out = Vec::new();
        for cell in edge.cells() {
            for &w in self.sub.cell_vertex_ids(cell) {
                if w == edge.a || w == edge.b {
                    continue;
                }
                let d = self.sub.vertices()[w].sub(pa);
                let mut c = vec![int(0); self.nv];
                c[w] = int(1);
                c[edge.a] = int(-1);
                out.push(LinearForm::new(c, -x.dot_lattice(d.x, d.y)));
            }
        }
        out
    }
}

/// Unique lifting function for a complete assignment, or `None` when the
/// incidence system has no solution inducing the subdivision with every
/// point interior to its edge. A consistent system with a positive
/// dimensional solution set is reported as [`Error::SingularSystem`].
pub fn solve_positions(
    sub: &Subdivision,
    points: &[RationalPoint],
    assignment: &[usize],
) -> Result<Option<LiftingFunction>> {
    let sys = System::new(sub);
    solve_with(&sys, points, assignment)
}

fn solve_with(
    sys: &System<'_>,
    points: &[RationalPoint],
    assignment: &[usize],
) -> Result<Option<LiftingFunction>> {
    let mut eqs = sys.base_eq.clone();
    let mut strict = sys.convex.clone();
    for (x, &e) in points.iter().zip(assignment) {
        eqs.push(sys.incidence(x, e));
        strict.extend(sys.interior(x, e));
    }
    let rows: Vec<(Vec<Rational>, Rational)> = eqs
        .iter()
        .map(|f| (f.coeffs.clone(), -f.constant.clone()))
        .collect();
    let point = match solve_affine(&rows, sys.nv) {
        AffineSolution::Inconsistent => return Ok(None),
        AffineSolution::Family { origin, directions } if directions.is_empty() => origin,
        AffineSolution::Family { directions, .. } => {
            if max_margin(sys.nv, &eqs, &strict, int(1)).strictly_feasible() {
                return Err(Error::SingularSystem(format!(
                    "{}-dimensional family of solutions",
                    directions.len()
                )));
            }
            return Ok(None);
        }
    };
    if strict.iter().all(|f| f.eval(&point).is_positive()) {
        Ok(Some(LiftingFunction::new(
            sys.sub.vertices().iter().copied().zip(point).collect(),
        )))
    } else {
        Ok(None)
    }
}

/// Product of the normalized areas of the triangles, times
/// `|det(sigma', sigma'')|` for the quadrilateral in cusp mode.
pub fn weight(sub: &Subdivision, forest: &OrientedForest) -> u64 {
    let tri: u64 = sub
        .cells()
        .iter()
        .filter(|c| classify_cell(c) == CellClass::Triangle)
        .map(|c| c.normalized_area() as u64)
        .product();
    match forest.sigma {
        Some((a, b)) => {
            let det = cross(sub.edge_vector(a), sub.edge_vector(b)).unsigned_abs();
            tri * det as u64
        }
        None => tri,
    }
}

/// Search over assignments for one subdivision.
struct Search<'a> {
    sys: System<'a>,
    points: &'a [RationalPoint],
    mode: AdmissibilityMode,
    /// Per point and edge, the incidence equation and interior forms in f64.
    approx: Vec<Vec<(LinearForm<f64>, Vec<LinearForm<f64>>)>>,
    base_eq_f: Vec<LinearForm<f64>>,
    convex_f: Vec<LinearForm<f64>>,
}

/// Prune only when the float LP is clearly infeasible.
const PRUNE_TOL: f64 = 1e-7;

impl<'a> Search<'a> {
    fn new(sub: &'a Subdivision, points: &'a [RationalPoint], mode: AdmissibilityMode) -> Self {
        let sys = System::new(sub);
        let approx = points
            .iter()
            .map(|x| {
                (0..sub.edges().len())
                    .map(|e| {
                        (
                            to_f64_form(&sys.incidence(x, e)),
                            sys.interior(x, e).iter().map(to_f64_form).collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        let base_eq_f = sys.base_eq.iter().map(to_f64_form).collect();
        let convex_f = sys.convex.iter().map(to_f64_form).collect();
        Self {
            sys,
            points,
            mode,
            approx,
            base_eq_f,
            convex_f,
        }
    }

    fn plausible(&self, assignment: &[usize]) -> bool {
        if !GammaGraph::new(self.sys.sub, assignment).every_component_has_end() {
            return false;
        }
        let mut eqs = self.base_eq_f.clone();
        let mut strict = self.convex_f.clone();
        for (i, &e) in assignment.iter().enumerate() {
            let (eq, int) = &self.approx[i][e];
            eqs.push(eq.clone());
            strict.extend(int.iter().cloned());
        }
        match max_margin(self.sys.nv, &eqs, &strict, 1.0) {
            crate::lp::MarginOutcome::Inconsistent => false,
            crate::lp::MarginOutcome::Optimal { margin, .. } => margin > -PRUNE_TOL,
        }
    }

    fn run(&self) -> Result<Vec<SolvedCurve>> {
        let mut out = Vec::new();
        let mut assignment = Vec::with_capacity(self.points.len());
        self.dfs(&mut assignment, &mut out)?;
        Ok(out)
    }

    fn dfs(&self, assignment: &mut Vec<usize>, out: &mut Vec<SolvedCurve>) -> Result<()> {
        if assignment.len() == self.points.len() {
            return self.leaf(assignment, out);
        }
        for e in 0..self.sys.sub.edges().len() {
            if assignment.contains(&e) {
                continue;
            }
            assignment.push(e);
            if self.plausible(assignment) {
                self.dfs(assignment, out)?;
            }
            assignment.pop();
        }
        Ok(())
    }

    fn leaf(&self, assignment: &[usize], out: &mut Vec<SolvedCurve>) -> Result<()> {
        let nu = match solve_with(&self.sys, self.points, assignment) {
            Ok(Some(nu)) => nu,
            Ok(None) => return Ok(()),
            Err(Error::SingularSystem(m)) => {
                return Err(Error::NonGenericConfiguration(format!(
                    "{m} for subdivision {}",
                    self.sys.sub
                )))
            }
            Err(e) => return Err(e),
        };
        let curve = PlaneTropicalCurve::from_subdivision(self.sys.sub.clone(), &nu)?;
        if !marks_on_edges(&curve, self.points, assignment) {
            return Err(Error::Inconsistent(
                "solved curve misses its marked points".into(),
            ));
        }
        // A solved curve that breaks the orientation rules means the points
        // sit in special position relative to this subdivision.
        let forest = match OrientedForest::new(self.sys.sub, assignment, self.mode) {
            Ok(f) => f,
            Err(Error::ViolatedStructure(m)) => {
                return Err(Error::NonGenericConfiguration(format!(
                    "{m} for subdivision {}",
                    self.sys.sub
                )))
            }
            Err(e) => return Err(e),
        };
        let w = weight(self.sys.sub, &forest);
        out.push(SolvedCurve {
            curve,
            assignment: assignment.to_vec(),
            weight: w,
            sigma: forest.sigma,
        });
        Ok(())
    }
}

/// All tropical curves of the given kind through `points` with their
/// multiplicities.
pub fn enumerate_curves(
    delta: &LatticePolygon,
    points: &[RationalPoint],
    mode: AdmissibilityMode,
) -> Result<CountResult> {
    enumerate_curves_with(delta, points, mode, CountOptions::default())
}

pub fn enumerate_curves_with(
    delta: &LatticePolygon,
    points: &[RationalPoint],
    mode: AdmissibilityMode,
    opts: CountOptions,
) -> Result<CountResult> {
    let n = point_count(delta, mode)?;
    if points.len() != n {
        return Err(Error::InvalidProblem(format!(
            "{mode} count on {delta} needs {n} points, got {}",
            points.len()
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NonGenericConfiguration("repeated marked point".into()));
    }
    let subs: Vec<Subdivision> = enumerate_with(
        delta,
        mode,
        EnumerationOptions {
            max_cells: opts.max_cells,
            rank: Some(n as i64),
        },
    )?
    .into_iter()
    .filter(|s| {
        let g = GammaGraph::new(s, &[]);
        g.betti() == 0 && g.components().len() == 1
    })
    .collect();
    info!("{} candidate subdivisions for {mode} count on {delta}", subs.len());
    let per_sub: Vec<Vec<SolvedCurve>> = crate::par::try_map(subs.iter().collect(), |s| {
        let found = Search::new(s, points, mode).run()?;
        if !found.is_empty() {
            debug!("{} curve(s) dual to {s}", found.len());
        }
        Ok(found)
    })?;
    let mut curves: Vec<SolvedCurve> = per_sub.into_iter().flatten().collect();
    curves.sort_by(|a, b| {
        (a.subdivision(), &a.assignment).cmp(&(b.subdivision(), &b.assignment))
    });
    let total = curves.iter().map(|c| c.weight).sum();
    Ok(CountResult {
        polygon: delta.clone(),
        mode,
        points: points.to_vec(),
        curves,
        total,
        subdivisions_searched: subs.len(),
    })
}

/// Random rational points with large denominators, generic with
/// probability one.
pub fn random_generic_configuration(
    delta: &LatticePolygon,
    mode: AdmissibilityMode,
    seed: u64,
) -> Result<Vec<RationalPoint>> {
    let n = point_count(delta, mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coord = || {
        let den: i64 = rng.gen_range(1000..10_000);
        let num: i64 = rng.gen_range(-20 * den..=20 * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    };
    let mut pts: Vec<RationalPoint> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = RationalPoint::new(coord(), coord());
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Ok(pts)
}

/// Draws configurations from `seed` onwards until one is generic, at most
/// `budget` attempts.
pub fn count_random(
    delta: &LatticePolygon,
    mode: AdmissibilityMode,
    seed: u64,
    budget: u32,
    opts: CountOptions,
) -> Result<CountResult> {
    let mut last = None;
    for attempt in 0..budget.max(1) {
        let pts = random_generic_configuration(delta, mode, seed.wrapping_add(attempt as u64))?;
        match enumerate_curves_with(delta, &pts, mode, opts) {
            Err(e @ Error::NonGenericConfiguration(_)) => {
                info!("configuration {attempt} rejected: {e}");
                last = Some(e);
            }
            other => return other,
        }
    }
    Err(last.unwrap_or_else(|| Error::NonGenericConfiguration("no attempt made".into())))
}

/// Number of rational plane curves of degree `d` through `3d - 1` general
/// points, by the associativity recursion.
pub fn kontsevich_oracle(d: u32) -> BigInt {
    let mut n: BTreeMap<u32, BigInt> = BTreeMap::new();
    n.insert(1, BigInt::one());
    for k in 2..=d {
        let mut acc = BigInt::zero();
        for a in 1..k {
            let b = k - a;
            let (na, nb) = (&n[&a], &n[&b]);
            let (ab, bb) = (BigInt::from(a), BigInt::from(b));
            let top = 3 * k - 4;
            let term = &bb * binom(top, 3 * a - 2) - &ab * binom(top, 3 * a - 1);
            acc += na * nb * &ab * &ab * &bb * term;
        }
        n.insert(k, acc);
    }
    n[&d].clone()
}

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl CountResult {
    pub fn total_u64(&self) -> u64 {
        self.total
    }
}

/// `BigInt` to `u64` for small oracle values.
pub fn small(v: &BigInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(d: i64) -> LatticePolygon {
        LatticePolygon::new([(0, 0), (d, 0), (0, d)].map(Into::into)).unwrap()
    }

    #[test]
    fn kontsevich_numbers() {
        let want = [1u64, 1, 12, 620, 87304];
        for (d, w) in (1..=5).zip(want) {
            assert_eq!(kontsevich_oracle(d), BigInt::from(w));
        }
    }

    #[test]
    fn lines_and_conics() {
        for d in 1..=2 {
            let r = count_random(&deg(d), AdmissibilityMode::Nodal, 7, 32, CountOptions::default()).unwrap();
            assert_eq!(r.total, 1, "degree {d}");
        }
    }

    #[test]
    fn quadrilateral_weight_uses_sigma() {
        use crate::curve::OrientedForest;
        use crate::lattice::LatticePoint;
        let quad = LatticePolygon::new(
            [(0, 3), (1, 1), (3, 0), (4, 0)].map(|(x, y)| LatticePoint::new(x, y)),
        )
        .unwrap();
        let sub = Subdivision::new(quad.clone(), vec![quad]).unwrap();
        let side = |a: (i64, i64), b: (i64, i64)| {
            let (a, b) = (LatticePoint::new(a.0, a.1), LatticePoint::new(b.0, b.1));
            (0..sub.edges().len())
                .find(|&e| {
                    let (p, q) = sub.edge_points(e);
                    (p, q) == (a, b) || (p, q) == (b, a)
                })
                .unwrap()
        };
        let marked = [side((0, 3), (1, 1)), side((1, 1), (3, 0))];
        let forest = OrientedForest::new(&sub, &marked, AdmissibilityMode::OneCusp).unwrap();
        assert_eq!(weight(&sub, &forest), 3);
    }

    #[test]
    fn wrong_point_count_rejected() {
        let pts = vec![RationalPoint::from_ints(0, 0)];
        assert!(matches!(
            enumerate_curves(&deg(1), &pts, AdmissibilityMode::Nodal),
            Err(Error::InvalidProblem(_))
        ));
    }
}
