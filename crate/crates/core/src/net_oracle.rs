//! Numeric count of cuspidal cubics in a general net.
//!
//! Seven random complex points cut out a net `f = f3 + a f1 + b f2` of plane
//! cubics (in a random affine chart of the net). A member has a cusp at
//! `(x, y)` when `f = f_x = f_y = 0` and the quadratic part there is
//! degenerate, `f_xx f_yy - f_xy^2 = 0`. The square system in `(a, b, x, y)`
//! is solved by Newton's method from many random starts; distinct converged
//! roots are counted until no new roots appear for several rounds.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

type C = Complex64;

/// Exponents `(i, j)` of the ten cubic monomials `x^i y^j`.
const MONOMIALS: [(u32, u32); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetOracleOptions {
    pub nets: usize,
    pub starts_per_round: usize,
    /// Rounds without a new root before a net's count is accepted.
    pub quiet_rounds: usize,
    pub max_rounds: usize,
    pub seed: u64,
}

impl Default for NetOracleOptions {
    fn default() -> Self {
        Self {
            nets: 3,
            starts_per_round: 400,
            quiet_rounds: 4,
            max_rounds: 60,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetOracleReport {
    /// Root count per net.
    pub counts: Vec<usize>,
    /// Whether every net's count stopped growing within the round budget.
    pub converged: Vec<bool>,
}

impl NetOracleReport {
    /// The common count when all nets converged and agree.
    pub fn count(&self) -> Option<usize> {
        let first = *self.counts.first()?;
        (self.converged.iter().all(|c| *c) && self.counts.iter().all(|c| *c == first))
            .then_some(first)
    }
}

/// Value of `d^dx/dx d^dy/dy` of the cubic with coefficients `c` at `(x, y)`.
fn deriv(c: &[C; 10], dx: u32, dy: u32, x: C, y: C) -> C {
    let mut acc = C::new(0.0, 0.0);
    for (k, &(i, j)) in MONOMIALS.iter().enumerate() {
        if i < dx || j < dy {
            continue;
        }
        let fall = |n: u32, d: u32| (0..d).map(|t| (n - t) as f64).product::<f64>();
        let coef = fall(i, dx) * fall(j, dy);
        acc += c[k] * coef * x.powu(i - dx) * y.powu(j - dy);
    }
    acc
}

/// Gaussian elimination with partial pivoting on an `n x (n + 1)` system.
fn solve(mut m: Vec<Vec<C>>) -> Option<Vec<C>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))?;
        if m[piv][col].norm() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..=n {
                let v = m[col][c];
                m[r][c] -= f * v;
            }
        }
    }
    let mut x = vec![C::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = m[r][n];
        for c in r + 1..n {
            s -= m[r][c] * x[c];
        }
        x[r] = s / m[r][r];
    }
    Some(x)
}

/// Basis of the cubics through the given points (a 3-dimensional space for
/// seven general points), normalized to unit coefficient norm.
fn net_through(points: &[(C, C)]) -> Vec<[C; 10]> {
    let rows: Vec<Vec<C>> = points
        .iter()
        .map(|&(x, y)| {
            MONOMIALS
                .iter()
                .map(|&(i, j)| x.powu(i) * y.powu(j))
                .collect()
        })
        .collect();
    // Reduced row echelon form.
    let mut m = rows;
    let (nr, nc) = (m.len(), 10);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nc {
        if row == nr {
            break;
        }
        let piv = (row..nr)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap();
        if m[piv][col].norm() < 1e-12 {
            continue;
        }
        m.swap(row, piv);
        let inv = C::new(1.0, 0.0) / m[row][col];
        for c in 0..nc {
            m[row][c] *= inv;
        }
        for r in 0..nr {
            if r != row {
                let f = m[r][col];
                for c in 0..nc {
                    let v = m[row][c];
                    m[r][c] -= f * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..nc)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [C::new(0.0, 0.0); 10];
            v[free] = C::new(1.0, 0.0);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][free];
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            v.map(|z| z / norm)
        })
        .collect()
}

fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> C {
    C::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

struct Net {
    f: [[C; 10]; 3],
}

impl Net {
    /// `f3 + a f1 + b f2`.
    fn member(&self, a: C, b: C) -> [C; 10] {
        let mut out = self.f[2];
        for k in 0..10 {
            out[k] += a * self.f[0][k] + b * self.f[1][k];
        }
        out
    }

    fn residual_and_jacobian(&self, z: [C; 4]) -> ([C; 4], [[C; 4]; 4]) {
        let [a, b, x, y] = z;
        let f = self.member(a, b);
        let d = |c: &[C; 10], i, j| deriv(c, i, j, x, y);
        let (fxx, fxy, fyy) = (d(&f, 2, 0), d(&f, 1, 1), d(&f, 0, 2));
        let res = [d(&f, 0, 0), d(&f, 1, 0), d(&f, 0, 1), fxx * fyy - fxy * fxy];
        let hess_d = |g: &[C; 10]| {
            d(g, 2, 0) * fyy + fxx * d(g, 0, 2) - C::new(2.0, 0.0) * fxy * d(g, 1, 1)
        };
        let (f1, f2) = (&self.f[0], &self.f[1]);
        let jac = [
            [d(f1, 0, 0), d(f2, 0, 0), d(&f, 1, 0), d(&f, 0, 1)],
            [d(f1, 1, 0), d(f2, 1, 0), fxx, fxy],
            [d(f1, 0, 1), d(f2, 0, 1), fxy, fyy],
            [
                hess_d(f1),
                hess_d(f2),
                d(&f, 3, 0) * fyy + fxx * d(&f, 1, 2) - C::new(2.0, 0.0) * fxy * d(&f, 2, 1),
                d(&f, 2, 1) * fyy + fxx * d(&f, 0, 3) - C::new(2.0, 0.0) * fxy * d(&f, 1, 2),
            ],
        ];
        (res, jac)
    }

    fn newton(&self, mut z: [C; 4]) -> Option<[C; 4]> {
        for _ in 0..80 {
            let (res, jac) = self.residual_and_jacobian(z);
            let sys: Vec<Vec<C>> = (0..4)
                .map(|i| {
                    let mut r = jac[i].to_vec();
                    r.push(-res[i]);
                    r
                })
                .collect();
            let step = solve(sys)?;
            let mut size = 0.0f64;
            for k in 0..4 {
                z[k] += step[k];
                size = size.max(step[k].norm());
            }
            if z.iter().any(|v| !v.is_finite() || v.norm() > 1e6) {
                return None;
            }
            if size < 1e-13 * (1.0 + z.iter().map(|v| v.norm()).fold(0.0, f64::max)) {
                let (res, _) = self.residual_and_jacobian(z);
                return (res.iter().all(|r| r.norm() < 1e-8)).then_some(z);
            }
        }
        None
    }
}

/// Counts cuspidal members in `opts.nets` random nets of cubics.
pub fn cuspidal_cubics_in_nets(opts: NetOracleOptions) -> NetOracleReport {
    let mut counts = Vec::new();
    let mut converged = Vec::new();
    for net_idx in 0..opts.nets {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(net_idx as u64 * 7_919));
        let pts: Vec<(C, C)> = (0..7)
            .map(|_| (random_complex(&mut rng, 1.0), random_complex(&mut rng, 1.0)))
            .collect();
        let basis = net_through(&pts);
        assert_eq!(basis.len(), 3, "seven general points impose independent conditions");
        // A random chart of the net.
        let mut f = [[C::new(0.0, 0.0); 10]; 3];
        for row in f.iter_mut() {
            let w: Vec<C> = (0..3).map(|_| random_complex(&mut rng, 1.0)).collect();
            for k in 0..10 {
                row[k] = w[0] * basis[0][k] + w[1] * basis[1][k] + w[2] * basis[2][k];
            }
        }
        let net = Net { f };
        let mut roots: Vec<[C; 4]> = Vec::new();
        let mut quiet = 0;
        let mut done = false;
        for _ in 0..opts.max_rounds {
            let before = roots.len();
            for _ in 0..opts.starts_per_round {
                let scale = [1.0, 3.0, 10.0][rng.gen_range(0..3)];
                let start = [0; 4].map(|_| random_complex(&mut rng, scale));
                if let Some(z) = net.newton(start) {
                    let close = |r: &[C; 4]| {
                        (0..4).all(|k| (r[k] - z[k]).norm() < 1e-6 * (1.0 + z[k].norm()))
                    };
                    if !roots.iter().any(close) {
                        roots.push(z);
                    }
                }
            }
            if roots.len() == before {
                quiet += 1;
                if quiet >= opts.quiet_rounds {
                    done = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        log::info!("net {net_idx}: {} cuspidal members", roots.len());
        counts.push(roots.len());
        converged.push(done);
    }
    NetOracleReport { counts, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_monomial() {
        let mut c = [C::new(0.0, 0.0); 10];
        c[7] = C::new(1.0, 0.0); // x^2 y
        let (x, y) = (C::new(2.0, 0.0), C::new(3.0, 0.0));
        assert_eq!(deriv(&c, 0, 0, x, y), C::new(12.0, 0.0));
        assert_eq!(deriv(&c, 1, 0, x, y), C::new(12.0, 0.0));
        assert_eq!(deriv(&c, 2, 1, x, y), C::new(2.0, 0.0));
        assert_eq!(deriv(&c, 0, 2, x, y), C::new(0.0, 0.0));
    }

    #[test]
    fn net_vanishes_at_base_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<(C, C)> = (0..7)
            .map(|_| (random_complex(&mut rng, 1.0), random_complex(&mut rng, 1.0)))
            .collect();
        for f in net_through(&pts) {
            for &(x, y) in &pts {
                assert!(deriv(&f, 0, 0, x, y).norm() < 1e-9);
            }
        }
    }
}
