use rayon::prelude::*;

use crate::exact::intmat::IntMatrix;

/// Arithmetic modulo the Mersenne prime 2³¹ − 1.
///
/// The modular path never asserts an equality on its own: a rank computed
/// here is a certified *lower bound* on the rational rank (a nonsingular
/// minor mod p is nonsingular over ℚ). Callers upgrade it to an exact rank
/// only when it meets an a-priori upper bound such as the column count.
pub const MODULUS: u64 = (1 << 31) - 1;

/// Residue class mod 2³¹ − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct M31(pub u64);

impl std::ops::Mul for M31 {
    type Output = M31;
    #[inline]
    fn mul(self, rhs: M31) -> M31 {
        M31(mod_mul(self.0, rhs.0))
    }
}

impl std::ops::Sub for M31 {
    type Output = M31;
    #[inline]
    fn sub(self, rhs: M31) -> M31 {
        M31(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + MODULUS - rhs.0
        })
    }
}

impl M31 {
    pub fn from_i64(v: i64) -> Self {
        let m = MODULUS as i64;
        let r = ((v % m) + m) % m;
        M31(r as u64)
    }

    pub fn inv(self) -> M31 {
        // Fermat: a^(p-2) mod p
        assert!(self.0 != 0, "inverse of zero residue");
        let mut base = self.0;
        let mut exp = MODULUS - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mod_mul(acc, base);
            }
            base = mod_mul(base, base);
            exp >>= 1;
        }
        M31(acc)
    }
}

/// (a·b) mod (2³¹−1) via Mersenne folding; inputs < 2³¹.
#[inline]
fn mod_mul(a: u64, b: u64) -> u64 {
    let t = a as u128 * b as u128;
    let folded = (t & MODULUS as u128) as u64 + ((t >> 31) as u64 & MODULUS) + (t >> 62) as u64;
    let folded = (folded & MODULUS) + (folded >> 31);
    if folded >= MODULUS {
        folded - MODULUS
    } else {
        folded
    }
}

/// Row-reduces a copy of `m` modulo 2³¹ − 1 and returns the modular rank.
///
/// Row eliminations are parallelized; pivot choice is the same deterministic
/// first-nonzero rule the exact elimination uses, so repeated runs agree.
pub fn mersenne31_rank(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut data: Vec<Vec<u64>> = (0..rows)
        .map(|r| m.row(r).iter().map(|&v| M31::from_i64(v).0).collect())
        .collect();

    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r][col] != 0) else {
            continue;
        };
        data.swap(rank, pivot);

        let inv = M31(data[rank][col]).inv();
        {
            let prow = &mut data[rank];
            for c in col..cols {
                prow[c] = mod_mul(prow[c], inv.0);
            }
        }
        let (head, tail) = data.split_at_mut(rank + 1);
        let prow = &head[rank];
        tail.par_iter_mut().for_each(|row| {
            let f = row[col];
            if f == 0 {
                return;
            }
            for c in col..cols {
                let sub = mod_mul(f, prow[c]);
                row[c] = if row[c] >= sub {
                    row[c] - sub
                } else {
                    row[c] + MODULUS - sub
                };
            }
        });
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_inv() {
        let a = M31::from_i64(123456789);
        let inv = a.inv();
        assert_eq!((a * inv).0, 1);
        assert_eq!(M31::from_i64(-1).0, MODULUS - 1);
    }

    #[test]
    fn modular_rank_matches_exact_on_small_cases() {
        let m = IntMatrix::from_data(3, 4, vec![1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        assert_eq!(mersenne31_rank(&m), 2);
        assert_eq!(m.to_exact().rank(), 2);

        let id = {
            let mut z = IntMatrix::zeros(5, 5);
            for i in 0..5 {
                z.set(i, i, 7);
            }
            z
        };
        assert_eq!(mersenne31_rank(&id), 5);
    }
}
