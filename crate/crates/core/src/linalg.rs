//! Dense linear algebra over an ordered field.
//!
//! The exact path uses [`Rational`]; the `f64` instance exists for the
//! search-pruning LPs and treats magnitudes below [`F64_EPS`] as zero.

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

pub const F64_EPS: f64 = 1e-9;

pub trait Scalar: Clone + Debug + PartialOrd {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero_(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs_(&self) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        rational::int(v)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero_(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs_(&self) -> Self {
        Signed::abs(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        rational::to_f64(q)
    }
    fn is_zero_(&self) -> bool {
        self.abs() < F64_EPS
    }
    fn is_pos(&self) -> bool {
        *self >= F64_EPS
    }
    fn is_neg(&self) -> bool {
        *self <= -F64_EPS
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs_(&self) -> Self {
        self.abs()
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self { rows: n, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns. Only the
    /// first `limit` columns are eligible as pivots (augmented systems).
    pub fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit.min(self.cols) {
            if row == self.rows {
                break;
            }
            // Largest magnitude pivot keeps the f64 path stable; harmless for
            // exact arithmetic.
            let mut best: Option<usize> = None;
            for r in row..self.rows {
                let v = self.get(r, col);
                if !v.is_zero_() {
                    match best {
                        Some(b) if self.get(b, col).abs_() >= v.abs_() => {}
                        _ => best = Some(r),
                    }
                }
            }
            let Some(p) = best else { continue };
            self.swap_rows(row, p);
            let inv = T::one().div(self.get(row, col));
            for c in 0..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero_() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c).sub(&factor.mul(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let c = self.cols;
        self.rref_limited(c)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(i, f).neg();
                }
                v
            })
            .collect()
    }
}

/// Solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineSolution<T> {
    Inconsistent,
    /// `x = origin + directions * y`, `y` free.
    Family {
        origin: Vec<T>,
        directions: Vec<Vec<T>>,
    },
}

/// Solves `A x = b` where `rows[i] = (a_i, b_i)`.
pub fn solve_affine<T: Scalar>(rows: &[(Vec<T>, T)], nvars: usize) -> AffineSolution<T> {
    let mut m = Matrix::zeros(rows.len(), nvars + 1);
    for (i, (a, b)) in rows.iter().enumerate() {
        for (j, v) in a.iter().enumerate() {
            m.set(i, j, v.clone());
        }
        m.set(i, nvars, b.clone());
    }
    let pivots = m.rref_limited(nvars);
    for r in pivots.len()..m.rows {
        if !m.get(r, nvars).is_zero_() {
            return AffineSolution::Inconsistent;
        }
    }
    let mut origin = vec![T::zero(); nvars];
    for (i, &p) in pivots.iter().enumerate() {
        origin[p] = m.get(i, nvars).clone();
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let directions = free
        .iter()
        .map(|&f| {
            let mut v = vec![T::zero(); nvars];
            v[f] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m.get(i, f).neg();
            }
            v
        })
        .collect();
    AffineSolution::Family { origin, directions }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn exact_solve_unique() {
        let rows = vec![
            (vec![int(2), int(1)], int(5)),
            (vec![int(1), int(-1)], int(1)),
        ];
        match solve_affine(&rows, 2) {
            AffineSolution::Family { origin, directions } => {
                assert!(directions.is_empty());
                assert_eq!(origin, vec![int(2), int(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_and_family() {
        let rows = vec![(vec![int(1), int(1)], int(1)), (vec![int(2), int(2)], int(3))];
        assert_eq!(solve_affine(&rows, 2), AffineSolution::Inconsistent);
        let rows = vec![(vec![int(1), int(1)], frac(1, 2))];
        match solve_affine(&rows, 2) {
            AffineSolution::Family { origin, directions } => {
                assert_eq!(directions.len(), 1);
                assert_eq!(&origin[0] + &origin[1], frac(1, 2));
                assert_eq!(&directions[0][0] + &directions[0][1], int(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Matrix::from_rows(
            vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)]],
            3,
        );
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(dot(m.row(0), &v), int(0));
        }
        let mf = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]], 2);
        assert_eq!(mf.rank(), 2);
    }
}
