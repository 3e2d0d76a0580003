use num_traits::{One, Zero};

use crate::exact::scalar::{QuadraticScalar, Rational};

/// Field operations needed by exact elimination.
///
/// Implemented for ℚ and ℚ(√3); both are exact, so elimination introduces no
/// error of any kind.
pub trait FieldScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Panics on zero divisor; callers only divide by pivots.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl FieldScalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl FieldScalar for QuadraticScalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        QuadraticScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self * &rhs.inverse().expect("division by zero in exact elimination")
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Matrix over ℚ: the workhorse for generator matrices, characteristic
/// matrices of rational point sets, and kernel bases.
pub type ExactMatrix = Mat<Rational>;

/// Which null space `kernel_basis` returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSide {
    Left,
    Right,
}

/// Output of `rref`.
#[derive(Debug, Clone)]
pub struct RrefResult<T> {
    pub reduced: Mat<T>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl<T: FieldScalar> Mat<T> {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Mat { rows, cols, entries }
    }

    pub fn from_rows(rows_vec: Vec<Vec<T>>) -> Self {
        let rows = rows_vec.len();
        let cols = rows_vec.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows * cols);
        for r in rows_vec {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r);
        }
        Mat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must match");
        let mut out: Mat<T> = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    let cur = out.at(r, c).add(&prod);
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    /// Exact reduced row-echelon form with a deterministic pivot rule:
    /// columns are scanned left to right and the pivot is the first row
    /// (top to bottom among unreduced rows) with a nonzero entry.
    pub fn rref(&self) -> RrefResult<T> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;

        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(r) = found else { continue };
            m.swap_rows(pivot_row, r);

            // Normalize the pivot row.
            let inv_pivot = T::one().div(m.at(pivot_row, col));
            for c in col..m.cols {
                let v = m.at(pivot_row, c).mul(&inv_pivot);
                *m.at_mut(pivot_row, c) = v;
            }

            // Eliminate the column everywhere else.
            for r2 in 0..m.rows {
                if r2 == pivot_row || m.at(r2, col).is_zero() {
                    continue;
                }
                let factor = m.at(r2, col).clone();
                for c in col..m.cols {
                    let sub = factor.mul(m.at(pivot_row, c));
                    let v = m.at(r2, c).sub(&sub);
                    *m.at_mut(r2, c) = v;
                }
            }

            pivot_cols.push(col);
            pivot_row += 1;
        }

        RrefResult {
            rank: pivot_cols.len(),
            reduced: m,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the requested null space, one basis vector per row.
    ///
    /// The right kernel has `cols − rank` rows; the left kernel (vectors `v`
    /// with `v·M = 0`) has `rows − rank`. The basis derives from the RREF
    /// free columns, so it is deterministic.
    pub fn kernel_basis(&self, side: KernelSide) -> Mat<T> {
        match side {
            KernelSide::Left => self.transpose().kernel_basis(KernelSide::Right),
            KernelSide::Right => {
                let RrefResult {
                    reduced,
                    rank,
                    pivot_cols,
                } = self.rref();
                let n = self.cols;
                let free_cols: Vec<usize> =
                    (0..n).filter(|c| !pivot_cols.contains(c)).collect();
                let mut basis = Mat::zeros(free_cols.len(), n);
                for (k, &fc) in free_cols.iter().enumerate() {
                    *basis.at_mut(k, fc) = T::one();
                    for (pr, &pc) in pivot_cols.iter().enumerate() {
                        let v = reduced.at(pr, fc);
                        if !v.is_zero() {
                            *basis.at_mut(k, pc) = v.neg();
                        }
                    }
                }
                debug_assert_eq!(basis.rows, n - rank);
                basis
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn rmat(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_entries(rows, cols, vals.iter().map(|&v| ratio(v, 1)).collect())
    }

    #[test]
    fn rref_identity() {
        let m = ExactMatrix::identity(3);
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.reduced, m);
    }

    #[test]
    fn rref_rank_deficient() {
        let m = rmat(2, 2, &[1, 1, 1, 1]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = rmat(3, 4, &[2, 4, 1, 7, 0, 3, 3, 1, 2, 7, 4, 8]);
        let once = m.rref().reduced;
        let twice = once.rref().reduced;
        assert_eq!(once, twice);
    }

    #[test]
    fn kernel_identity_is_empty() {
        let m = ExactMatrix::identity(4);
        assert_eq!(m.kernel_basis(KernelSide::Right).rows(), 0);
        assert_eq!(m.kernel_basis(KernelSide::Left).rows(), 0);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let m = rmat(1, 2, &[1, 1]);
        let k = m.kernel_basis(KernelSide::Right);
        assert_eq!(k.rows(), 1);
        // spans (1, −1): the RREF free column gets 1, pivot −1
        let prod = m.matmul(&k.transpose());
        assert!(prod.is_zero());
        let nonzero = k.row(0).iter().any(|v| !FieldScalar::is_zero(v));
        assert!(nonzero);
    }

    #[test]
    fn rank_nullity() {
        let m = rmat(3, 5, &[1, 2, 3, 4, 5, 2, 4, 6, 8, 10, 0, 1, 0, 1, 0]);
        let r = m.rref();
        let k = m.kernel_basis(KernelSide::Right);
        assert_eq!(r.rank + k.rows(), m.cols());
        assert!(m.matmul(&k.transpose()).is_zero());
        let lk = m.kernel_basis(KernelSide::Left);
        assert_eq!(lk.rows(), m.rows() - r.rank);
        assert!(lk.matmul(&m).is_zero());
    }
}
