//! Homogeneous harmonic polynomials with exact integer coefficient bases,
//! Gegenbauer polynomial evaluation, and characteristic matrices of point
//! selections.
//!
//! The degree-i harmonic space is realized as the exact kernel of the
//! Laplacian, viewed as a linear map from degree-i to degree-(i−2)
//! homogeneous polynomials in monomial coordinates. The resulting basis is
//! not orthonormal (orthonormalization would force square roots), but every
//! property tested downstream (±1 left-null vectors, column rank, Gram
//! orthogonality between degrees) depends only on the column span, which is
//! basis-independent.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::CoreError;
use crate::exact::{ratio, IntMatrix, KernelSide, Mat, QuadraticScalar, Rational};
use crate::points::{HalfSelection, PointSet};

/// Homogeneous polynomial with exact rational coefficients, keyed by dense
/// exponent vectors. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: BTreeMap<Vec<u8>, Rational>) -> Result<Self, CoreError> {
        let mut degree = None;
        for (exp, coeff) in &terms {
            if exp.len() != dim {
                return Err(CoreError::DimensionMismatch {
                    expected: dim,
                    found: exp.len(),
                });
            }
            if coeff.is_zero() {
                return Err(CoreError::InvalidData("zero coefficient stored".into()));
            }
            let d = exp.iter().map(|&e| e as usize).sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(CoreError::InvalidData(
                        "polynomial is not homogeneous".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(Polynomial {
            dim,
            degree: degree.unwrap_or(0),
            terms,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            degree: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(dim: usize, exp: Vec<u8>, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Polynomial::new(dim, terms).expect("single term is homogeneous")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, Rational> {
        &self.terms
    }

    /// Exact evaluation at ℚ(√3) coordinates.
    pub fn eval_quad(&self, coords: &[QuadraticScalar]) -> QuadraticScalar {
        assert_eq!(coords.len(), self.dim);
        let mut acc = QuadraticScalar::zero();
        for (exp, coeff) in &self.terms {
            let mut term = QuadraticScalar::new(coeff.clone(), Rational::zero());
            for (v, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &coords[v];
                }
            }
            acc += &term;
        }
        acc
    }

    /// Σ_j ∂²p/∂x_j², exactly.
    pub fn laplacian(&self) -> Polynomial {
        let mut out: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (exp, coeff) in &self.terms {
            for j in 0..self.dim {
                let e = exp[j] as i64;
                if e < 2 {
                    continue;
                }
                let mut nexp = exp.clone();
                nexp[j] -= 2;
                let c = coeff * ratio(e * (e - 1), 1);
                let entry = out.entry(nexp).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Polynomial::new(self.dim, out).expect("derivative of homogeneous is homogeneous")
    }
}

/// Dimension of the space of degree-i harmonic polynomials in n variables:
/// binom(n+i−1, i) − binom(n+i−3, i−2).
pub fn harm_dim(n: usize, i: usize) -> usize {
    assert!(n >= 1);
    let full = binom(n + i - 1, i);
    let sub = if i >= 2 { binom(n + i - 3, i - 2) } else { 0 };
    (full - sub) as usize
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc
}

/// Degree-i Gegenbauer polynomial C_i^{(λ)} with λ = (n−2)/2, evaluated
/// exactly via the three-term recurrence
/// C_0 = 1, C_1 = 2λt, i·C_i = 2(i+λ−1)·t·C_{i−1} − (i+2λ−2)·C_{i−2}.
pub fn gegenbauer(n: usize, i: usize, t: &Rational) -> Rational {
    assert!(n >= 2, "sphere dimension needs n >= 2");
    let lambda = ratio(n as i64 - 2, 2);
    if i == 0 {
        return Rational::one();
    }
    let mut prev = Rational::one();
    let mut cur = ratio(2, 1) * &lambda * t;
    for k in 2..=i {
        let kq = ratio(k as i64, 1);
        let a = ratio(2, 1) * (&kq + &lambda - Rational::one()) * t * &cur;
        let b = (&kq + ratio(2, 1) * &lambda - ratio(2, 1)) * &prev;
        let next = (a - b) / kq;
        prev = cur;
        cur = next;
    }
    cur
}

/// All degree-d exponent vectors over `dim` variables in descending
/// lexicographic order (x₁ powers first): the canonical monomial order
/// everything in this module shares.
pub fn monomials(dim: usize, degree: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; dim];
    fn rec(dim: usize, pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == dim - 1 {
            cur[pos] = left as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u8;
            rec(dim, pos + 1, left - e, cur, out);
        }
    }
    if dim == 0 {
        return out;
    }
    rec(dim, 0, degree, &mut cur, &mut out);
    out
}

/// A compiled term: integer coefficient and the sparse exponent list.
#[derive(Debug, Clone)]
struct CompiledTerm {
    coeff: i64,
    powers: Vec<(u16, u8)>,
}

/// Basis of the degree-i harmonics in n variables with primitive integer
/// coefficient vectors, plus a compiled form for fast exact evaluation.
#[derive(Debug)]
pub struct HarmonicBasis {
    pub dim: usize,
    pub degree: usize,
    pub polys: Vec<Polynomial>,
    compiled: Vec<Vec<CompiledTerm>>,
}

impl HarmonicBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Evaluates basis element `b` at an integer coordinate row, exactly.
    /// The caller accounts for the uniform denominator scale.
    fn eval_int(&self, b: usize, coords: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for term in &self.compiled[b] {
            let mut prod: i128 = term.coeff as i128;
            for &(v, e) in &term.powers {
                let x = coords[v as usize] as i128;
                for _ in 0..e {
                    prod *= x;
                }
            }
            acc += prod;
        }
        i64::try_from(acc).expect("characteristic matrix entry exceeds i64")
    }
}

/// Computes (and caches per `(n, i)`) the exact harmonic basis: the right
/// kernel of the Laplacian matrix in monomial coordinates, rows cleared to
/// primitive integer vectors, ordered by their RREF free columns.
pub fn harmonic_basis(n: usize, i: usize) -> Arc<HarmonicBasis> {
    assert!(n >= 2 && i >= 1, "harmonic basis needs n >= 2, i >= 1");
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<HarmonicBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&(n, i)) {
        return Arc::clone(b);
    }
    let built = Arc::new(build_basis(n, i));
    cache
        .lock()
        .unwrap()
        .entry((n, i))
        .or_insert_with(|| Arc::clone(&built))
        .clone()
}

fn build_basis(n: usize, i: usize) -> HarmonicBasis {
    let source = monomials(n, i);
    let target = monomials(n, i.saturating_sub(2));
    let target_index: HashMap<&[u8], usize> = target
        .iter()
        .enumerate()
        .map(|(k, m)| (m.as_slice(), k))
        .collect();

    // Laplacian as a (deg i−2 monomials) × (deg i monomials) matrix.
    let rows = if i >= 2 { target.len() } else { 0 };
    let mut lap: Mat<Rational> = Mat::zeros(rows, source.len());
    if i >= 2 {
        for (col, exp) in source.iter().enumerate() {
            for j in 0..n {
                let e = exp[j] as i64;
                if e < 2 {
                    continue;
                }
                let mut t = exp.clone();
                t[j] -= 2;
                let row = target_index[t.as_slice()];
                let cur = lap.at(row, col) + ratio(e * (e - 1), 1);
                *lap.at_mut(row, col) = cur;
            }
        }
    }

    let kernel = lap.kernel_basis(KernelSide::Right);
    assert_eq!(kernel.rows(), harm_dim(n, i), "kernel dimension mismatch");

    let mut polys = Vec::with_capacity(kernel.rows());
    let mut compiled = Vec::with_capacity(kernel.rows());
    for r in 0..kernel.rows() {
        let cleared = clear_denominators(kernel.row(r));
        let mut terms = BTreeMap::new();
        let mut cterms = Vec::new();
        for (c, v) in cleared.iter().enumerate() {
            if *v == 0 {
                continue;
            }
            terms.insert(source[c].clone(), ratio(*v, 1));
            let powers: Vec<(u16, u8)> = source[c]
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(var, &e)| (var as u16, e))
                .collect();
            cterms.push(CompiledTerm { coeff: *v, powers });
        }
        polys.push(Polynomial::new(n, terms).expect("homogeneous by construction"));
        compiled.push(cterms);
    }

    HarmonicBasis {
        dim: n,
        degree: i,
        polys,
        compiled,
    }
}

/// Scales a rational row to a primitive integer vector (lcm of denominators
/// over gcd of numerators), keeping the leading sign.
fn clear_denominators(row: &[Rational]) -> Vec<i64> {
    let mut lcm = num_bigint::BigInt::one();
    for v in row {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let scaled: Vec<num_bigint::BigInt> = row.iter().map(|v| (v * &lcm).to_integer()).collect();
    let mut gcd = num_bigint::BigInt::zero();
    for v in &scaled {
        if !v.is_zero() {
            gcd = gcd.gcd(v);
        }
    }
    if gcd.is_zero() {
        gcd = num_bigint::BigInt::one();
    }
    scaled
        .iter()
        .map(|v| {
            let q = v / &gcd;
            i64::try_from(&q).expect("primitive harmonic coefficient exceeds i64")
        })
        .collect()
}

/// Characteristic matrix of a point selection: rows are points (selection
/// order), columns the harmonic basis, entries the exact evaluations.
///
/// For integer-numerator coordinates the true entry is the stored integer
/// divided by `denom^degree`; that factor is uniform over the whole matrix,
/// so ranks, kernels, ±1 left-null tests and cross-degree Gram products are
/// unaffected and run on the integer data. The √3 coordinate model (E₆)
/// keeps exact quadratic entries instead.
#[derive(Debug)]
pub struct CharacteristicMatrix {
    pub degree: usize,
    pub denom: i64,
    pub data: CharMatrixData,
}

#[derive(Debug)]
pub enum CharMatrixData {
    Int(IntMatrix),
    Quad(Mat<QuadraticScalar>),
}

impl CharacteristicMatrix {
    pub fn rows(&self) -> usize {
        match &self.data {
            CharMatrixData::Int(m) => m.rows(),
            CharMatrixData::Quad(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match &self.data {
            CharMatrixData::Int(m) => m.cols(),
            CharMatrixData::Quad(m) => m.cols(),
        }
    }

    /// The integer data, when the underlying points are rational.
    pub fn as_int(&self) -> Option<&IntMatrix> {
        match &self.data {
            CharMatrixData::Int(m) => Some(m),
            CharMatrixData::Quad(_) => None,
        }
    }

    /// Exact rational matrix including the denominator scale (integer data
    /// only; √3 matrices are already exact in quadratic form).
    pub fn to_exact(&self) -> Option<Mat<Rational>> {
        match &self.data {
            CharMatrixData::Int(m) => {
                let scale = self.denom.checked_pow(self.degree as u32)?;
                Some(m.to_exact_scaled(scale))
            }
            CharMatrixData::Quad(_) => None,
        }
    }
}

/// Builds the characteristic matrix of the points selected by `sel` (or of
/// the full set when `sel` is `None`), for the degree-`i` harmonic basis in
/// the set's ambient dimension.
pub fn characteristic_matrix(
    set: &PointSet,
    sel: Option<&HalfSelection>,
    i: usize,
) -> Result<CharacteristicMatrix, CoreError> {
    let basis = harmonic_basis(set.dim(), i);
    let indices: Vec<usize> = match sel {
        Some(s) => {
            if s.len() != set.n_pairs() {
                return Err(CoreError::DimensionMismatch {
                    expected: set.n_pairs(),
                    found: s.len(),
                });
            }
            s.selected_indices(set)
        }
        None => (0..set.len()).collect(),
    };

    let cols = basis.len();
    let data = if set.has_sqrt3() {
        let mut m: Mat<QuadraticScalar> = Mat::zeros(indices.len(), cols);
        for (r, &idx) in indices.iter().enumerate() {
            let pt = set.point(idx);
            for (c, poly) in basis.polys.iter().enumerate() {
                *m.at_mut(r, c) = poly.eval_quad(pt.coords());
            }
        }
        CharMatrixData::Quad(m)
    } else {
        let basis_ref = &basis;
        let rows_data: Vec<i64> = indices
            .par_iter()
            .flat_map_iter(|&idx| {
                let coords = set.rat_row(idx);
                (0..cols).map(move |b| basis_ref.eval_int(b, coords))
            })
            .collect();
        CharMatrixData::Int(IntMatrix::from_data(indices.len(), cols, rows_data))
    };

    Ok(CharacteristicMatrix {
        degree: i,
        denom: set.denom(),
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{construct_half, generate_roots, HalfOutcome, RootFamily};

    #[test]
    fn harm_dim_table() {
        assert_eq!(harm_dim(4, 0), 1);
        assert_eq!(harm_dim(3, 1), 3);
        assert_eq!(harm_dim(2, 2), 2);
        assert_eq!(harm_dim(8, 3), 112);
        assert_eq!(harm_dim(8, 5), 672);
        assert_eq!(harm_dim(23, 3), 2277);
        assert_eq!(harm_dim(24, 3), 2576);
    }

    #[test]
    fn gegenbauer_values() {
        // n=4 (λ=1): C_2 = 4t² − 1 vanishes at t = 1/2.
        assert!(gegenbauer(4, 2, &ratio(1, 2)).is_zero());
        // n=8 (λ=3): C_1 = 6t = 3 at t = 1/2.
        assert_eq!(gegenbauer(8, 1, &ratio(1, 2)), ratio(3, 1));
        // C_0 is identically 1.
        assert_eq!(gegenbauer(4, 0, &ratio(7, 9)), ratio(1, 1));
    }

    #[test]
    fn gegenbauer_positive_at_one() {
        for n in 3..=24 {
            for i in 0..=12 {
                let v = gegenbauer(n, i, &ratio(1, 1));
                assert!(v > Rational::zero(), "C_{i} at t=1 for n={n} must be positive");
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        // Δ(x²) = 2
        let p = Polynomial::monomial(2, vec![2, 0], ratio(1, 1));
        let lp = p.laplacian();
        assert_eq!(lp.terms().len(), 1);
        assert_eq!(lp.terms()[&vec![0u8, 0]], ratio(2, 1));
        // Δ(x² − y²) = 0
        let mut terms = BTreeMap::new();
        terms.insert(vec![2u8, 0], ratio(1, 1));
        terms.insert(vec![0u8, 2], ratio(-1, 1));
        let p = Polynomial::new(2, terms).unwrap();
        assert!(p.laplacian().is_zero());
        // Δ(x³) = 6x
        let p = Polynomial::monomial(2, vec![3, 0], ratio(1, 1));
        let lp = p.laplacian();
        assert_eq!(lp.terms()[&vec![1u8, 0]], ratio(6, 1));
    }

    #[test]
    fn basis_dimensions_and_harmonicity() {
        for (n, i) in [(2, 2), (3, 1), (3, 2), (4, 3), (8, 3)] {
            let b = harmonic_basis(n, i);
            assert_eq!(b.len(), harm_dim(n, i), "dim for n={n}, i={i}");
            for p in &b.polys {
                assert!(p.laplacian().is_zero(), "basis element not harmonic");
            }
        }
    }

    #[test]
    fn degree_two_basis_in_the_plane() {
        // harm_dim(2,2) = 2, spanning {x² − y², xy}: check span equality by
        // stacking coefficient vectors of both bases and comparing rank.
        let b = harmonic_basis(2, 2);
        let order = monomials(2, 2);
        let coeff_row = |p: &Polynomial| -> Vec<Rational> {
            order
                .iter()
                .map(|m| p.terms().get(m).cloned().unwrap_or_else(Rational::zero))
                .collect()
        };
        let mut rows: Vec<Vec<Rational>> = b.polys.iter().map(coeff_row).collect();
        let mut terms = BTreeMap::new();
        terms.insert(vec![2u8, 0], ratio(1, 1));
        terms.insert(vec![0u8, 2], ratio(-1, 1));
        rows.push(coeff_row(&Polynomial::new(2, terms).unwrap()));
        rows.push(coeff_row(&Polynomial::monomial(2, vec![1, 1], ratio(1, 1))));
        let stacked = Mat::from_rows(rows);
        assert_eq!(stacked.rank(), 2);
    }

    #[test]
    fn basis_monomial_matrix_has_full_row_rank() {
        let b = harmonic_basis(4, 3);
        let order = monomials(4, 3);
        let mut m: Mat<Rational> = Mat::zeros(b.len(), order.len());
        for (r, p) in b.polys.iter().enumerate() {
            for (c, mono) in order.iter().enumerate() {
                if let Some(v) = p.terms().get(mono) {
                    *m.at_mut(r, c) = v.clone();
                }
            }
        }
        assert_eq!(m.rank(), b.len());
    }

    #[test]
    fn degree_one_char_matrix_is_the_coordinate_matrix() {
        let set = generate_roots(RootFamily::D(4)).unwrap();
        let cm = characteristic_matrix(&set, None, 1).unwrap();
        let m = cm.as_int().unwrap();
        assert_eq!(m.rows(), 24);
        assert_eq!(m.cols(), 4);
        // Degree-1 monomial order is x1 > x2 > …, so row = coordinates.
        for r in 0..set.len() {
            for c in 0..4 {
                assert_eq!(m.at(r, c), set.rat_row(r)[c]);
            }
        }
    }

    #[test]
    fn e8_half_characteristic_matrices() {
        let (set, outcome) = construct_half(RootFamily::E(8)).unwrap();
        let sel = match outcome {
            HalfOutcome::Half(s) => s,
            _ => unreachable!(),
        };
        let h1 = characteristic_matrix(&set, Some(&sel), 1).unwrap();
        assert_eq!((h1.rows(), h1.cols()), (120, 8));
        assert_eq!(h1.to_exact().unwrap().rank(), 8);
        let h3 = characteristic_matrix(&set, Some(&sel), 3).unwrap();
        assert_eq!((h3.rows(), h3.cols()), (120, 112));
    }

    #[test]
    fn e6_char_matrix_is_quadratic_and_full_rank() {
        let (set, outcome) = construct_half(RootFamily::E(6)).unwrap();
        let sel = match outcome {
            HalfOutcome::Half(s) => s,
            _ => unreachable!(),
        };
        let h1 = characteristic_matrix(&set, Some(&sel), 1).unwrap();
        assert_eq!((h1.rows(), h1.cols()), (36, 6));
        match &h1.data {
            CharMatrixData::Quad(m) => assert_eq!(m.rank(), 6),
            _ => panic!("E6 coordinates need the quadratic field"),
        }
    }

    #[test]
    fn column_space_invariance_of_left_kernel() {
        // Replace the degree-2 basis in the plane by an invertible integer
        // recombination and check the two left kernels span the same space.
        let set = generate_roots(RootFamily::A(2)).unwrap(); // 6 points in R^3
        let cm = characteristic_matrix(&set, None, 2).unwrap();
        let h = cm.to_exact().unwrap();
        let mut recombined = h.clone();
        for r in 0..h.rows() {
            // col0 += col1, col1 += 2·col2: unimodular on the right
            let v = recombined.at(r, 0) + recombined.at(r, 1);
            *recombined.at_mut(r, 0) = v;
            let v = recombined.at(r, 1) + ratio(2, 1) * recombined.at(r, 2);
            *recombined.at_mut(r, 1) = v;
        }
        let k1 = h.kernel_basis(KernelSide::Left);
        let k2 = recombined.kernel_basis(KernelSide::Left);
        assert_eq!(k1.rows(), k2.rows());
        // Same row space: stacking must not increase the rank.
        let mut rows = Vec::new();
        for r in 0..k1.rows() {
            rows.push(k1.row(r).to_vec());
        }
        for r in 0..k2.rows() {
            rows.push(k2.row(r).to_vec());
        }
        if !rows.is_empty() {
            assert_eq!(Mat::from_rows(rows).rank(), k1.rows());
        }
    }
}
