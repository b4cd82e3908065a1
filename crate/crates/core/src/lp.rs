//! Strict linear feasibility through a margin-maximizing simplex.
//!
//! A system `E x = e`, `a_i . x + c_i > 0` has a solution exactly when the
//! optimum of `max t  s.t.  E x = e,  a_i . x + c_i >= t,  t <= cap` is
//! positive. Equalities are eliminated first, the remaining problem always
//! has a feasible slack basis, so a single simplex phase suffices. Bland's
//! rule rules out cycling.

use crate::linalg::{dot, solve_affine, AffineSolution, Scalar};

/// `coeffs . x + constant` (strict: `> 0`; equality: `= 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm<T> {
    pub coeffs: Vec<T>,
    pub constant: T,
}

impl<T: Scalar> LinearForm<T> {
    pub fn new(coeffs: Vec<T>, constant: T) -> Self {
        Self { coeffs, constant }
    }

    pub fn eval(&self, x: &[T]) -> T {
        dot(&self.coeffs, x).add(&self.constant)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MarginOutcome<T> {
    /// The equalities alone have no solution.
    Inconsistent,
    /// Best achievable margin (capped) with a point attaining it.
    Optimal { margin: T, point: Vec<T> },
}

impl<T: Scalar> MarginOutcome<T> {
    pub fn strictly_feasible(&self) -> bool {
        matches!(self, MarginOutcome::Optimal { margin, .. } if margin.is_pos())
    }

    pub fn into_point(self) -> Option<Vec<T>> {
        match self {
            MarginOutcome::Optimal { margin, point } if margin.is_pos() => Some(point),
            _ => None,
        }
    }
}

/// Maximizes the smallest value of the `strict` forms subject to the
/// `equalities` (each form `= 0`), capped at `cap`.
pub fn max_margin<T: Scalar>(
    nvars: usize,
    equalities: &[LinearForm<T>],
    strict: &[LinearForm<T>],
    cap: T,
) -> MarginOutcome<T> {
    let rows: Vec<(Vec<T>, T)> = equalities
        .iter()
        .map(|f| (f.coeffs.clone(), f.constant.neg()))
        .collect();
    let (origin, directions) = match solve_affine(&rows, nvars) {
        AffineSolution::Inconsistent => return MarginOutcome::Inconsistent,
        AffineSolution::Family { origin, directions } => (origin, directions),
    };
    let k = directions.len();
    // Reduced constraints g . y + h > 0 over the free parameters y.
    let mut reduced: Vec<(Vec<T>, T)> = strict
        .iter()
        .map(|f| {
            let g: Vec<T> = directions.iter().map(|d| dot(&f.coeffs, d)).collect();
            let h = f.eval(&origin);
            (g, h)
        })
        .collect();
    for (g, h) in reduced.iter_mut() {
        // Row scaling does not change the sign of the optimum and keeps the
        // floating point instance well conditioned.
        let scale = g.iter().fold(T::zero(), |m, v| {
            let a = v.abs_();
            if a > m {
                a
            } else {
                m
            }
        });
        if scale.is_pos() {
            for v in g.iter_mut() {
                *v = v.div(&scale);
            }
            *h = h.div(&scale);
        }
    }

    let lift = |y: &[T]| -> Vec<T> {
        let mut x = origin.clone();
        for (d, yi) in directions.iter().zip(y) {
            for (xj, dj) in x.iter_mut().zip(d) {
                *xj = xj.add(&dj.mul(yi));
            }
        }
        x
    };

    if k == 0 {
        let margin = reduced
            .iter()
            .map(|(_, h)| h.clone())
            .fold(cap, |m, h| if h < m { h } else { m });
        return MarginOutcome::Optimal {
            margin,
            point: lift(&[]),
        };
    }
    simplex_margin(k, &reduced, cap, lift)
}

fn simplex_margin<T: Scalar>(
    k: usize,
    reduced: &[(Vec<T>, T)],
    cap: T,
    lift: impl Fn(&[T]) -> Vec<T>,
) -> MarginOutcome<T> {
    let min_h = reduced
        .iter()
        .map(|(_, h)| h.clone())
        .fold(T::zero(), |m, h| if h < m { h } else { m });
    let min_h = if cap < min_h { cap.clone() } else { min_h };
    // t = t' + shift with t' >= 0; the origin y = 0, t' = 0 is feasible.
    let shift = min_h.sub(&T::one());

    // Columns: y+ (k), y- (k), t' (1), slacks (m).
    let m = reduced.len() + 1;
    let n = 2 * k + 1;
    let width = n + m + 1;
    let mut tab = vec![T::zero(); (m + 1) * width];
    let idx = |r: usize, c: usize| r * width + c;
    for (i, (g, h)) in reduced.iter().enumerate() {
        for j in 0..k {
            tab[idx(i, j)] = g[j].neg();
            tab[idx(i, k + j)] = g[j].clone();
        }
        tab[idx(i, 2 * k)] = T::one();
        tab[idx(i, n + i)] = T::one();
        tab[idx(i, width - 1)] = h.sub(&shift);
    }
    let cap_row = m - 1;
    tab[idx(cap_row, 2 * k)] = T::one();
    tab[idx(cap_row, n + cap_row)] = T::one();
    tab[idx(cap_row, width - 1)] = cap.sub(&shift);
    // Objective row holds reduced costs c_j - z_j; maximize t'.
    tab[idx(m, 2 * k)] = T::one();
    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();

    let max_iter = 50 * (m + n) + 1000;
    for _ in 0..max_iter {
        let Some(enter) = (0..n + m).find(|&c| tab[idx(m, c)].is_pos()) else {
            break;
        };
        let mut leave: Option<(usize, T)> = None;
        for r in 0..m {
            let a = &tab[idx(r, enter)];
            if !a.is_pos() {
                continue;
            }
            let ratio = tab[idx(r, width - 1)].div(a);
            match &leave {
                None => leave = Some((r, ratio)),
                Some((lr, lratio)) => {
                    let diff = ratio.sub(lratio);
                    if diff.is_neg() || (diff.is_zero_() && basis[r] < basis[*lr]) {
                        leave = Some((r, ratio));
                    }
                }
            }
        }
        // The objective is bounded by the cap row, so a pivot row exists.
        let Some((pr, _)) = leave else { break };
        let pivot = tab[idx(pr, enter)].clone();
        for c in 0..width {
            tab[idx(pr, c)] = tab[idx(pr, c)].div(&pivot);
        }
        for r in 0..=m {
            if r == pr {
                continue;
            }
            let factor = tab[idx(r, enter)].clone();
            if factor.is_zero_() {
                continue;
            }
            for c in 0..width {
                let v = tab[idx(r, c)].sub(&factor.mul(&tab[idx(pr, c)]));
                tab[idx(r, c)] = v;
            }
        }
        basis[pr] = enter;
    }

    let mut vars = vec![T::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            vars[b] = tab[idx(r, width - 1)].clone();
        }
    }
    let y: Vec<T> = (0..k).map(|j| vars[j].sub(&vars[k + j])).collect();
    let margin = vars[2 * k].add(&shift);
    MarginOutcome::Optimal {
        margin,
        point: lift(&y),
    }
}
