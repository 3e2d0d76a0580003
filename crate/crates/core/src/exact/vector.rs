use num_traits::Zero;

use crate::error::CoreError;
use crate::exact::scalar::QuadraticScalar;

/// Exact vector with ℚ(√3) coordinates.
///
/// Root and lattice vectors produced by this crate always have rational
/// inner products with one another; the √3 component appears only in E₆
/// coordinates and cancels in every pairing the constructions use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactVector {
    coords: Vec<QuadraticScalar>,
}

impl ExactVector {
    pub fn new(coords: Vec<QuadraticScalar>) -> Self {
        ExactVector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        ExactVector {
            coords: vec![QuadraticScalar::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[QuadraticScalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &QuadraticScalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QuadraticScalar::is_zero)
    }

    pub fn negated(&self) -> ExactVector {
        ExactVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &ExactVector) -> Result<ExactVector, CoreError> {
        self.check_dim(other)?;
        Ok(ExactVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Exact inner product Σᵢ vᵢ·wᵢ.
    pub fn inner_product(&self, other: &ExactVector) -> Result<QuadraticScalar, CoreError> {
        self.check_dim(other)?;
        let mut acc = QuadraticScalar::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc += &(a * b);
        }
        Ok(acc)
    }

    fn check_dim(&self, other: &ExactVector) -> Result<(), CoreError> {
        if self.dim() != other.dim() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, QuadraticScalar as Q};

    fn unit(dim: usize, i: usize) -> ExactVector {
        let mut coords = vec![Q::zero(); dim];
        coords[i] = Q::from_int(1);
        ExactVector::new(coords)
    }

    #[test]
    fn standard_basis_inner_products() {
        let e1 = unit(3, 0);
        assert_eq!(e1.inner_product(&e1).unwrap(), Q::from_int(1));
        let e2 = unit(3, 1);
        assert!(e1.inner_product(&e2).unwrap().is_zero());
    }

    #[test]
    fn sqrt3_inner_product() {
        // ⟨(√3/2, 1/2), (√3/2, −1/2)⟩ = 3/4 − 1/4 = 1/2
        let v = ExactVector::new(vec![Q::sqrt3_multiple(ratio(1, 2)), Q::from_rational(ratio(1, 2))]);
        let w = ExactVector::new(vec![Q::sqrt3_multiple(ratio(1, 2)), Q::from_rational(ratio(-1, 2))]);
        let ip = v.inner_product(&w).unwrap();
        assert_eq!(ip, Q::from_rational(ratio(1, 2)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let v = unit(3, 0);
        let w = unit(4, 0);
        assert!(matches!(
            v.inner_product(&w),
            Err(CoreError::DimensionMismatch { expected: 3, found: 4 })
        ));
    }
}
