//! Cuspidal curves inside a single lattice quadrilateral.
//!
//! A quadrilateral without parallel edges is brought to the position
//! `(0,m), (p,q), (p+r,0), (p+r+s,0)`. The number of rational 1-cuspidal
//! curves with prescribed truncations on two of its edges is a lattice
//! index, computed here both by a closed formula and by enumerating the
//! finite group cut out by the two edge characters.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{classify_cell, cross, CellClass, LatticePoint, LatticePolygon, QuadParameters};
use crate::rational::{frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalQuadrilateral {
    params: QuadParameters,
}

impl NormalQuadrilateral {
    pub fn new(m: i64, p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Self::from_params(QuadParameters { m, p, q, r, s })
    }

    pub fn from_params(params: QuadParameters) -> Result<Self> {
        let QuadParameters { m, p, q, r, s } = params;
        if !(p > 0 && 0 < q && q < m && r > 0 && s > 0) {
            return Err(Error::InvalidGeometry(format!(
                "parameters {params:?} out of range"
            )));
        }
        // The listed order must be the counterclockwise boundary order: the
        // turns at (p,q) and at (0,m) are left turns.
        if (m - q) * r <= p * q || (p + r + s) * (m - q) <= m * p {
            return Err(Error::InvalidGeometry(format!(
                "parameters {params:?} are not in convex position"
            )));
        }
        let poly = LatticePolygon::new(params.vertices())?;
        match classify_cell(&poly) {
            CellClass::GenericQuadrilateral => Ok(Self { params }),
            CellClass::Trapezoid | CellClass::Parallelogram => Err(Error::InvalidGeometry(format!(
                "{poly} has a pair of parallel edges"
            ))),
            other => Err(Error::InvalidGeometry(format!("{poly} classifies as {other:?}"))),
        }
    }

    pub fn params(&self) -> QuadParameters {
        self.params
    }

    pub fn polygon(&self) -> LatticePolygon {
        LatticePolygon::new(self.params.vertices()).expect("validated")
    }

    pub fn d1(&self) -> i64 {
        self.params.p.gcd(&(self.params.m - self.params.q))
    }

    pub fn d2(&self) -> i64 {
        self.params.q.gcd(&self.params.r)
    }

    /// Edge `(0,m) -> (p,q)`.
    pub fn edge_a(&self) -> LatticePoint {
        LatticePoint::new(self.params.p, self.params.q - self.params.m)
    }

    /// Edge `(p,q) -> (p+r,0)`.
    pub fn edge_b(&self) -> LatticePoint {
        LatticePoint::new(self.params.r, -self.params.q)
    }

    /// Edge `(p+r,0) -> (p+r+s,0)`.
    pub fn edge_c(&self) -> LatticePoint {
        LatticePoint::new(self.params.s, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspParameters {
    #[serde(with = "crate::rational::serde_rational")]
    pub eta: Rational,
    #[serde(with = "crate::rational::serde_rational")]
    pub xi: Rational,
}

/// `eta = q/m` and `xi = ((p+r+s) eta^2 - (r+s) eta) / ((p+r) eta - r)`.
pub fn eta_xi(quad: &NormalQuadrilateral) -> Result<CuspParameters> {
    eta_xi_params(quad.params)
}

/// [`eta_xi`] on raw parameters. The denominator vanishes exactly when
/// `(0,m), (p,q), (p+r,0)` are collinear, so validated quadrilaterals never
/// hit that case.
pub fn eta_xi_params(params: QuadParameters) -> Result<CuspParameters> {
    let QuadParameters { m, p, q, r, s } = params;
    if m == 0 {
        return Err(Error::DegenerateParameters("m = 0".into()));
    }
    let eta = frac(q, m);
    let den = &eta * int(p + r) - int(r);
    if den == int(0) {
        return Err(Error::DegenerateParameters(format!(
            "(p+r) q = r m for {params:?}"
        )));
    }
    let xi = (&eta * &eta * int(p + r + s) - &eta * int(r + s)) / den;
    if eta == int(0) || eta == int(1) || xi == eta {
        return Err(Error::DegenerateParameters(format!(
            "eta = {eta}, xi = {xi} for {params:?}"
        )));
    }
    Ok(CuspParameters { eta, xi })
}

/// Cuspidal curves with fixed truncations on the two edges meeting at
/// `(p,q)`: `|pq - (m-q)r| / (d1 d2)`.
pub fn count_adjacent(quad: &NormalQuadrilateral) -> u64 {
    let QuadParameters { m, p, q, r, .. } = quad.params;
    let area = (p * q - (m - q) * r).unsigned_abs();
    let div = (quad.d1() * quad.d2()) as u64;
    assert_eq!(area % div, 0, "lattice index must be integral");
    area / div
}

/// Cuspidal curves with fixed truncations on the opposite edges
/// `[(0,m),(p,q)]` and `[(p+r,0),(p+r+s,0)]`: `(m-q) / d1`.
pub fn count_opposite(quad: &NormalQuadrilateral) -> u64 {
    let QuadParameters { m, q, s, .. } = quad.params;
    let area = cross(quad.edge_a(), quad.edge_c()).unsigned_abs() as u64;
    let div = (quad.d1() * s) as u64;
    assert_eq!(area % div, 0, "lattice index must be integral");
    let count = area / div;
    debug_assert_eq!(count, ((m - q) / quad.d1()) as u64);
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgePair {
    Adjacent,
    Opposite,
}

/// Smith normal form of a nonsingular 2x2 integer matrix: `(u, d, v)` with
/// `u * m * v = diag(d[0], d[1])`, `d[0] | d[1]`, `d >= 0`, `u` and `v`
/// unimodular.
pub fn smith_normal_form_2x2(m: [[i64; 2]; 2]) -> ([[i64; 2]; 2], [i64; 2], [[i64; 2]; 2]) {
    let mut a = m;
    let mut u = [[1, 0], [0, 1]];
    let mut v = [[1, 0], [0, 1]];
    let row_op = |a: &mut [[i64; 2]; 2], u: &mut [[i64; 2]; 2], i: usize, j: usize, k: i64| {
        // row_i -= k row_j
        for c in 0..2 {
            a[i][c] -= k * a[j][c];
            u[i][c] -= k * u[j][c];
        }
    };
    let col_op = |a: &mut [[i64; 2]; 2], v: &mut [[i64; 2]; 2], i: usize, j: usize, k: i64| {
        // col_i -= k col_j
        for r in 0..2 {
            a[r][i] -= k * a[r][j];
            v[r][i] -= k * v[r][j];
        }
    };
    loop {
        // Move the smallest nonzero entry to (0,0).
        let mut best = None;
        for i in 0..2 {
            for j in 0..2 {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj): (usize, usize)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        if bi == 1 {
            a.swap(0, 1);
            u.swap(0, 1);
        }
        if bj == 1 {
            for r in 0..2 {
                a[r].swap(0, 1);
                v[r].swap(0, 1);
            }
        }
        let piv = a[0][0];
        let k = Integer::div_floor(&a[1][0], &piv);
        row_op(&mut a, &mut u, 1, 0, k);
        let k = Integer::div_floor(&a[0][1], &piv);
        col_op(&mut a, &mut v, 1, 0, k);
        if a[1][0] != 0 || a[0][1] != 0 {
            continue;
        }
        if a[1][1] % piv != 0 {
            // Fold the remainder back into the first row.
            for c in 0..2 {
                a[0][c] += a[1][c];
                u[0][c] += u[1][c];
            }
            continue;
        }
        break;
    }
    for i in 0..2 {
        if a[i][i] < 0 {
            for c in 0..2 {
                a[i][c] = -a[i][c];
                u[i][c] = -u[i][c];
            }
        }
    }
    (u, [a[0][0], a[1][1]], v)
}

/// Brute-force count: the points `theta` of `(R/Z)^2` with `M theta` integral
/// are enumerated through the Smith normal form of the exponent matrix `M`
/// whose rows are the two edge vectors; those on which both primitive edge
/// characters are trivial are counted.
pub fn binomial_oracle(quad: &NormalQuadrilateral, pair: EdgePair) -> Result<u64> {
    eta_xi(quad)?;
    let e1 = quad.edge_a();
    let e2 = match pair {
        EdgePair::Adjacent => quad.edge_b(),
        EdgePair::Opposite => quad.edge_c(),
    };
    Ok(character_kernel(e1, e2))
}

/// Size of the common kernel of the characters `e1 / l1` and `e2 / l2` on the
/// finite group `{theta : e1.theta, e2.theta in Z}`.
pub fn character_kernel(e1: LatticePoint, e2: LatticePoint) -> u64 {
    let m = [[e1.x, e1.y], [e2.x, e2.y]];
    let (_, d, v) = smith_normal_form_2x2(m);
    assert!(d[0] > 0 && d[1] > 0, "exponent matrix must be nonsingular");
    let l1 = e1.x.abs().gcd(&e1.y.abs());
    let l2 = e2.x.abs().gcd(&e2.y.abs());
    let (p1, p2) = (
        LatticePoint::new(e1.x / l1, e1.y / l1),
        LatticePoint::new(e2.x / l2, e2.y / l2),
    );
    let den = d[0] * d[1];
    let mut count = 0;
    for k1 in 0..d[0] {
        for k2 in 0..d[1] {
            // theta = v (k1/d0, k2/d1), scaled by den.
            let t = [k1 * d[1], k2 * d[0]];
            let theta = [
                v[0][0] * t[0] + v[0][1] * t[1],
                v[1][0] * t[0] + v[1][1] * t[1],
            ];
            let trivial = |p: LatticePoint| (p.x * theta[0] + p.y * theta[1]) % den == 0;
            if trivial(p1) && trivial(p2) {
                count += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionShape {
    /// Trapezoid with parallel edges of integer lengths `p` and `q`.
    Trapezoid { p: i64, q: i64 },
    /// Triangle `(0,0), (0,r), (p,q)`.
    Triangle { p: i64, q: i64, r: i64 },
}

/// Polar-curve intersection count bounds: `upper` is the intersection number
/// of the curve with a polar, `lower` the sum of local contributions forced
/// by a rational cuspidal curve. `lower > upper` rules the curve out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub shape: ObstructionShape,
    pub upper: i64,
    pub lower: i64,
    pub forbidden: bool,
}

pub fn nonexistence_certificate(shape: ObstructionShape) -> Result<Certificate> {
    let (p, q) = match shape {
        ObstructionShape::Trapezoid { p, q } => {
            if p < 1 || q < 1 {
                return Err(Error::InvalidProblem(format!("trapezoid parameters {p}, {q} must be positive")));
            }
            (p, q)
        }
        ObstructionShape::Triangle { p, q, r } => {
            if p < 1 || q < 1 || !(0 < r && r < p + q) {
                return Err(Error::InvalidProblem(format!(
                    "triangle parameters need p, q > 0 and 0 < r < p + q, got {p}, {q}, {r}"
                )));
            }
            (p, q)
        }
    };
    let d = p + q;
    let upper = d * (d - 1);
    let lower = (d - 1) * (d - 2) + 2 * d - 1;
    Ok(Certificate {
        shape,
        upper,
        lower,
        forbidden: lower > upper,
    })
}
