//! Antipodal point sets, half selections, and obstruction certificates.
//!
//! Coordinates are stored as integer numerators over one common denominator
//! (with a separate √3 numerator plane for the E₆ model), so every inner
//! product is computed in machine integers and converted to an exact rational
//! at the end. This representation is exact: nothing is rounded, ever.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::CoreError;
use crate::exact::{ExactVector, QuadraticScalar, Rational};

/// Finite set of equal-norm vectors with `X = −X` and an explicit pairing.
#[derive(Debug, Clone)]
pub struct PointSet {
    dim: usize,
    denom: i64,
    rat: Vec<i64>,
    sqrt3: Option<Vec<i64>>,
    norm2: Rational,
    pairs: Vec<[u32; 2]>,
}

impl PointSet {
    /// Builds a point set from integer numerator rows over `denom`,
    /// validating every structural invariant: equal squared norms, exact
    /// antipodal closure with a perfect matching, and no duplicates.
    pub fn from_integer_rows(
        dim: usize,
        denom: i64,
        rat: Vec<i64>,
        sqrt3: Option<Vec<i64>>,
    ) -> Result<PointSet, CoreError> {
        assert!(denom > 0, "denominator must be positive");
        if dim == 0 || !rat.len().is_multiple_of(dim) {
            return Err(CoreError::InvalidData(format!(
                "coordinate buffer length {} is not a multiple of dim {dim}",
                rat.len()
            )));
        }
        let n = rat.len() / dim;
        if let Some(s) = &sqrt3 {
            if s.len() != rat.len() {
                return Err(CoreError::InvalidData(
                    "sqrt3 plane length differs from rational plane".into(),
                ));
            }
        }
        if n == 0 || !n.is_multiple_of(2) {
            return Err(CoreError::InvalidData(format!(
                "antipodal set must have a positive even number of points, got {n}"
            )));
        }

        // Common squared norm, computed exactly from the first point.
        let norm_num = |idx: usize| -> i128 {
            let row = &rat[idx * dim..(idx + 1) * dim];
            let mut s: i128 = row.iter().map(|&v| v as i128 * v as i128).sum();
            if let Some(q) = &sqrt3 {
                let qrow = &q[idx * dim..(idx + 1) * dim];
                s += 3 * qrow.iter().map(|&v| v as i128 * v as i128).sum::<i128>();
            }
            s
        };
        // Cross term a·b must vanish for the norm to be rational; all sets in
        // this crate satisfy it, but verify rather than assume.
        let norm_cross = |idx: usize| -> i128 {
            match &sqrt3 {
                None => 0,
                Some(q) => {
                    let row = &rat[idx * dim..(idx + 1) * dim];
                    let qrow = &q[idx * dim..(idx + 1) * dim];
                    2 * row
                        .iter()
                        .zip(qrow)
                        .map(|(&a, &b)| a as i128 * b as i128)
                        .sum::<i128>()
                }
            }
        };

        let expected = norm_num(0);
        for i in 0..n {
            if norm_num(i) != expected || norm_cross(i) != 0 {
                return Err(CoreError::InvalidData(format!(
                    "point {i} does not share the common squared norm"
                )));
            }
        }
        let norm2 = Rational::new(expected.into(), (denom as i128 * denom as i128).into());

        // Antipodal matching over exact coordinate rows.
        let key = |idx: usize, negate: bool| -> Vec<i64> {
            let sign = if negate { -1 } else { 1 };
            let mut k: Vec<i64> = rat[idx * dim..(idx + 1) * dim]
                .iter()
                .map(|&v| sign * v)
                .collect();
            if let Some(q) = &sqrt3 {
                k.extend(q[idx * dim..(idx + 1) * dim].iter().map(|&v| sign * v));
            }
            k
        };
        let mut index: HashMap<Vec<i64>, u32> = HashMap::with_capacity(n);
        for i in 0..n {
            if index.insert(key(i, false), i as u32).is_some() {
                return Err(CoreError::InvalidData(format!("duplicate point at index {i}")));
            }
        }
        let mut pairs = Vec::with_capacity(n / 2);
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let j = *index
                .get(&key(i, true))
                .ok_or_else(|| CoreError::InvalidData(format!("point {i} has no antipode")))?
                as usize;
            if j == i || seen[j] {
                return Err(CoreError::InvalidData(format!(
                    "antipodal matching failure at index {i}"
                )));
            }
            seen[i] = true;
            seen[j] = true;
            pairs.push([i as u32, j as u32]);
        }

        Ok(PointSet {
            dim,
            denom,
            rat,
            sqrt3,
            norm2,
            pairs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rat.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.rat.is_empty()
    }

    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[[u32; 2]] {
        &self.pairs
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn norm2(&self) -> &Rational {
        &self.norm2
    }

    pub fn has_sqrt3(&self) -> bool {
        self.sqrt3.is_some()
    }

    /// Integer numerator row of point `i` (coordinates are `row/denom`).
    pub fn rat_row(&self, i: usize) -> &[i64] {
        &self.rat[i * self.dim..(i + 1) * self.dim]
    }

    pub fn sqrt3_row(&self, i: usize) -> Option<&[i64]> {
        self.sqrt3
            .as_ref()
            .map(|q| &q[i * self.dim..(i + 1) * self.dim])
    }

    /// Exact coordinates of point `i`.
    pub fn point(&self, i: usize) -> ExactVector {
        let row = self.rat_row(i);
        let qrow = self.sqrt3_row(i);
        let coords = (0..self.dim)
            .map(|c| {
                let a = Rational::new(row[c].into(), self.denom.into());
                let b = match qrow {
                    Some(q) => Rational::new(q[c].into(), self.denom.into()),
                    None => Rational::zero(),
                };
                QuadraticScalar::new(a, b)
            })
            .collect();
        ExactVector::new(coords)
    }

    /// Raw integer inner product pieces `(Σaᵢaⱼ + 3Σbᵢbⱼ, Σaᵢbⱼ + bᵢaⱼ)`;
    /// the exact inner product is `(p.0 + p.1·√3) / denom²`.
    pub fn raw_dot(&self, i: usize, j: usize) -> (i128, i128) {
        let ri = self.rat_row(i);
        let rj = self.rat_row(j);
        let mut rat: i128 = ri
            .iter()
            .zip(rj)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        let mut cross: i128 = 0;
        if let Some(q) = &self.sqrt3 {
            let qi = &q[i * self.dim..(i + 1) * self.dim];
            let qj = &q[j * self.dim..(j + 1) * self.dim];
            rat += 3 * qi
                .iter()
                .zip(qj)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>();
            cross += ri
                .iter()
                .zip(qj)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>();
            cross += qi
                .iter()
                .zip(rj)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum::<i128>();
        }
        (rat, cross)
    }

    /// Exact inner product of points `i` and `j`.
    pub fn inner_product(&self, i: usize, j: usize) -> QuadraticScalar {
        let (rat, cross) = self.raw_dot(i, j);
        let d2: i128 = self.denom as i128 * self.denom as i128;
        QuadraticScalar::new(
            Rational::new(rat.into(), d2.into()),
            Rational::new(cross.into(), d2.into()),
        )
    }

    /// Inner product of `i` and `j` divided by the common squared norm,
    /// i.e. the cosine on the unit sphere. Errors if a √3 component
    /// survives (cannot happen for the generated families).
    pub fn normalized_inner_product(&self, i: usize, j: usize) -> Result<Rational, CoreError> {
        let ip = self.inner_product(i, j);
        let r = ip.as_rational().ok_or_else(|| {
            CoreError::InvalidData("irrational inner product; data corrupted".into())
        })?;
        Ok(r / &self.norm2)
    }

    /// Antipode index of point `i`.
    pub fn antipode(&self, i: usize) -> usize {
        for p in &self.pairs {
            if p[0] as usize == i {
                return p[1] as usize;
            }
            if p[1] as usize == i {
                return p[0] as usize;
            }
        }
        unreachable!("pairing is a perfect matching")
    }
}

/// One representative per antipodal pair, encoded as a sign over each pair:
/// `+1` keeps `pairs[k][0]`, `−1` keeps `pairs[k][1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSelection {
    signs: Vec<i8>,
}

impl HalfSelection {
    pub fn from_signs(signs: Vec<i8>) -> Result<HalfSelection, CoreError> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(CoreError::InvalidData("selection signs must be ±1".into()));
        }
        Ok(HalfSelection { signs })
    }

    /// All-`+1` selection (first element of every pair).
    pub fn canonical(set: &PointSet) -> HalfSelection {
        HalfSelection {
            signs: vec![1; set.n_pairs()],
        }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, pair: usize) -> i8 {
        self.signs[pair]
    }

    pub fn flip(&mut self, pair: usize) {
        self.signs[pair] = -self.signs[pair];
    }

    /// Index of the selected representative of pair `k`.
    pub fn selected(&self, set: &PointSet, k: usize) -> usize {
        let p = set.pairs()[k];
        if self.signs[k] == 1 {
            p[0] as usize
        } else {
            p[1] as usize
        }
    }

    /// Selected point indices in pair order.
    pub fn selected_indices(&self, set: &PointSet) -> Vec<usize> {
        (0..self.signs.len()).map(|k| self.selected(set, k)).collect()
    }

    /// Reconstructs a selection from a set of chosen point indices,
    /// validating that exactly one point per pair is chosen.
    pub fn from_selected_indices(set: &PointSet, chosen: &[usize]) -> Result<HalfSelection, CoreError> {
        if chosen.len() != set.n_pairs() {
            return Err(CoreError::InvalidData(format!(
                "expected {} chosen indices, got {}",
                set.n_pairs(),
                chosen.len()
            )));
        }
        let mut mark = vec![false; set.len()];
        for &i in chosen {
            if i >= set.len() || mark[i] {
                return Err(CoreError::InvalidData(format!("bad or repeated index {i}")));
            }
            mark[i] = true;
        }
        let mut signs = Vec::with_capacity(set.n_pairs());
        for p in set.pairs() {
            match (mark[p[0] as usize], mark[p[1] as usize]) {
                (true, false) => signs.push(1),
                (false, true) => signs.push(-1),
                _ => {
                    return Err(CoreError::InvalidData(format!(
                        "pair ({}, {}) is not represented exactly once",
                        p[0], p[1]
                    )))
                }
            }
        }
        Ok(HalfSelection { signs })
    }

    /// Integer numerator sum of the selected representatives
    /// (coordinates of the true sum are `raw/denom`). √3 plane included
    /// as a second buffer when present.
    pub fn raw_sum(&self, set: &PointSet) -> (Vec<i64>, Option<Vec<i64>>) {
        let mut rat = vec![0i64; set.dim()];
        let mut quad = set.has_sqrt3().then(|| vec![0i64; set.dim()]);
        for k in 0..self.signs.len() {
            let idx = self.selected(set, k);
            for (acc, &v) in rat.iter_mut().zip(set.rat_row(idx)) {
                *acc += v;
            }
            if let (Some(q), Some(row)) = (quad.as_mut(), set.sqrt3_row(idx)) {
                for (acc, &v) in q.iter_mut().zip(row) {
                    *acc += v;
                }
            }
        }
        (rat, quad)
    }
}

/// Which parity argument a certificate encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionKind {
    /// A linear coordinate of any half-sum is forced into a coset missing 0
    /// by half-integer contributions (A_odd via ρ, E₇ via the 35 spinor pairs).
    HalfIntegerCoordinate,
    /// The coordinate-sum functional of any half-sum is ≡ n(n−1) mod 4 ≠ 0
    /// (D_n with n ≡ 2, 3 mod 4).
    LatticeParity,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionKind::HalfIntegerCoordinate => write!(f, "half-integer-coordinate"),
            ObstructionKind::LatticeParity => write!(f, "lattice-parity"),
        }
    }
}

/// Linear functional used by a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionFunctional {
    Coordinate(usize),
    CoordinateSum,
}

/// Proof that no half of a point set sums to zero.
///
/// The claim: writing `v_p = φ(representative of pair p)` for the stored
/// functional φ, every half-sum has φ-value in `S + 2M` where `S = Σ v_p`
/// and `M` is the ℤ-module generated by the `v_p`; the certificate asserts
/// `0 ∉ S + 2M`. This is re-checked arithmetically by [`Self::reverify`].
#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    pub kind: ObstructionKind,
    pub functional: ObstructionFunctional,
    /// S: the functional summed over one representative per pair.
    pub pair_sum: Rational,
    /// Generator g of M (gcd of the functional values); the coset step is 2g.
    pub module_gcd: Rational,
    pub detail: String,
}

impl ObstructionCertificate {
    /// Applies the stored functional to the exact coordinates of point `i`.
    /// Only meaningful for points with rational functional values.
    fn apply(&self, set: &PointSet, i: usize) -> Option<Rational> {
        let p = set.point(i);
        let val = match self.functional {
            ObstructionFunctional::Coordinate(c) => p.coord(c).clone(),
            ObstructionFunctional::CoordinateSum => {
                let mut acc = QuadraticScalar::zero();
                for c in p.coords() {
                    acc += c;
                }
                acc
            }
        };
        val.as_rational().cloned()
    }

    /// Recomputes the parity argument from scratch against `set` and
    /// checks both internal consistency and the impossibility claim.
    pub fn reverify(&self, set: &PointSet) -> bool {
        let mut sum = Rational::zero();
        let mut gcd: Option<Rational> = None;
        for k in 0..set.n_pairs() {
            let rep = set.pairs()[k][0] as usize;
            let Some(v) = self.apply(set, rep) else {
                return false;
            };
            sum += &v;
            if !v.is_zero() {
                gcd = Some(match gcd {
                    None => v.abs(),
                    Some(g) => rational_gcd(&g, &v.abs()),
                });
            }
        }
        let Some(g) = gcd else {
            // All functional values are zero: every half-sum has φ-value 0,
            // so no obstruction can be claimed on this functional.
            return false;
        };
        // Consistency: same module, and the stored S in the same coset.
        if g != self.module_gcd {
            return false;
        }
        let step = &g + &g;
        if !is_integer(&((&sum - &self.pair_sum) / &step)) {
            return false;
        }
        // The claim itself: 0 ∉ S + 2M, i.e. S/(2g) is not an integer.
        !is_integer(&(&sum / &step))
    }
}

fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

use num_traits::One;

/// gcd of positive rationals: gcd(a/b, c/d) = gcd(ad, cb)/(bd).
fn rational_gcd(x: &Rational, y: &Rational) -> Rational {
    let num = (x.numer() * y.denom()).gcd(&(y.numer() * x.denom()));
    Rational::new(num, x.denom() * y.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn cross_polytope(dim: usize) -> PointSet {
        let mut rows = Vec::new();
        for i in 0..dim {
            for s in [1i64, -1] {
                let mut r = vec![0i64; dim];
                r[i] = s;
                rows.extend(r);
            }
        }
        PointSet::from_integer_rows(dim, 1, rows, None).unwrap()
    }

    #[test]
    fn cross_polytope_structure() {
        let x = cross_polytope(4);
        assert_eq!(x.len(), 8);
        assert_eq!(x.n_pairs(), 4);
        assert_eq!(*x.norm2(), ratio(1, 1));
        for p in x.pairs() {
            let a = x.point(p[0] as usize);
            let b = x.point(p[1] as usize);
            assert_eq!(a.negated(), b);
        }
    }

    #[test]
    fn rejects_non_antipodal_input() {
        // Three points can never pair up.
        let rows = vec![1, 0, -1, 0, 0, 1];
        assert!(PointSet::from_integer_rows(2, 1, rows, None).is_err());
        // Mixed norms.
        let rows = vec![1, 0, -1, 0, 2, 0, -2, 0];
        assert!(PointSet::from_integer_rows(2, 1, rows, None).is_err());
        // Duplicate points.
        let rows = vec![1, 0, 1, 0, -1, 0, -1, 0];
        assert!(PointSet::from_integer_rows(2, 1, rows, None).is_err());
    }

    #[test]
    fn selection_roundtrip() {
        let x = cross_polytope(3);
        let sel = HalfSelection::from_signs(vec![1, -1, 1]).unwrap();
        let chosen = sel.selected_indices(&x);
        let back = HalfSelection::from_selected_indices(&x, &chosen).unwrap();
        assert_eq!(sel, back);
        // Not one-per-pair: both members of pair 0.
        let bad = vec![0, 1, 4];
        assert!(HalfSelection::from_selected_indices(&x, &bad).is_err());
    }

    #[test]
    fn raw_sum_tracks_flips() {
        let x = cross_polytope(3);
        let mut sel = HalfSelection::canonical(&x);
        let (s0, _) = sel.raw_sum(&x);
        sel.flip(0);
        let (s1, _) = sel.raw_sum(&x);
        // Flipping pair 0 moves the sum by −2·(first representative).
        let rep = x.rat_row(x.pairs()[0][0] as usize);
        for c in 0..3 {
            assert_eq!(s1[c], s0[c] - 2 * rep[c]);
        }
    }
}
