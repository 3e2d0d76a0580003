use rayon::prelude::*;

use crate::exact::matrix::ExactMatrix;
use crate::exact::{ratio, Rational};

/// Dense integer matrix.
///
/// Characteristic matrices of integer-coordinate point sets live here:
/// integer entries make Gram products and modular rank certificates cheap
/// while staying exact. Conversion to `ExactMatrix` is lossless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_data(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Exact product ᵗA·B accumulated in i128 (overflow-checked when
    /// narrowing back; entries of the inputs are far below the bound in
    /// every use this crate makes).
    pub fn gram_with(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row counts must match");
        let cols_a = self.cols;
        let cols_b = other.cols;
        let data: Vec<i64> = (0..cols_a)
            .into_par_iter()
            .flat_map_iter(|ca| {
                let mut out = vec![0i64; cols_b];
                for (idx, acc) in out.iter_mut().enumerate() {
                    let mut s: i128 = 0;
                    for r in 0..self.rows {
                        s += self.at(r, ca) as i128 * other.at(r, idx) as i128;
                    }
                    *acc = i64::try_from(s).expect("gram entry exceeds i64");
                }
                out
            })
            .collect();
        IntMatrix {
            rows: cols_a,
            cols: cols_b,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_entries(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| ratio(v, 1)).collect(),
        )
    }

    /// Lossless scaled copy: entries divided by `denom` as exact rationals.
    pub fn to_exact_scaled(&self, denom: i64) -> ExactMatrix {
        ExactMatrix::from_entries(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| Rational::new(v.into(), denom.into())).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_product() {
        // A = [[1,2],[3,4]], ᵗA·A = [[10,14],[14,20]]
        let a = IntMatrix::from_data(2, 2, vec![1, 2, 3, 4]);
        let g = a.gram_with(&a);
        assert_eq!(g.row(0), &[10, 14]);
        assert_eq!(g.row(1), &[14, 20]);
    }

    #[test]
    fn exact_conversion_roundtrip() {
        let a = IntMatrix::from_data(2, 3, vec![1, -2, 3, 0, 5, -6]);
        let e = a.to_exact();
        assert_eq!(e.rank(), 2);
        let scaled = a.to_exact_scaled(2);
        assert_eq!(*scaled.at(0, 1), crate::exact::ratio(-1, 1));
    }
}
