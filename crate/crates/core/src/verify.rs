//! Harmonic-index design verification: exact Gegenbauer moment tests,
//! ±1 left-null-vector searches over characteristic matrices, cross-degree
//! Gram orthogonality, and the seeded greedy search for zero-sum halves.
//!
//! Every verdict is exact. The Mersenne-prime fast paths only ever do two
//! things: certify a rank lower bound (a nonzero modular minor is nonzero
//! over ℚ) and discard enumeration candidates that are provably not ±1
//! (a true ±1 witness reduces to ±1 modulo any prime, so the filter never
//! loses one); everything that survives is re-verified in exact arithmetic.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::CoreError;
use crate::exact::{
    mersenne31_rank, ratio, ExactVector, IntMatrix, KernelSide, Mat, QuadraticScalar, Rational,
    M31, MODULUS,
};
use crate::harmonic::{gegenbauer, CharMatrixData, CharacteristicMatrix};
use crate::points::{HalfSelection, PointSet};

/// Exact tally of raw integer inner products over all ordered pairs
/// (diagonal included) of a point set or of a selected half.
///
/// Keys are the `raw_dot` numerators (inner product × denom²); the exact
/// normalized value of key `v` is `v / (denom² · norm2)`.
#[derive(Debug, Clone)]
pub struct InnerHistogram {
    pub counts: HashMap<i64, u64>,
    pub n_points: usize,
}

/// Builds the histogram for the full set (`sel = None`) or a half.
///
/// The full-set path walks one representative per antipodal pair and
/// reflects counts through ±, which quarters the work; the result is the
/// exact ordered-pair tally either way. Errors if any inner product has a
/// surviving √3 component.
pub fn inner_histogram(
    set: &PointSet,
    sel: Option<&HalfSelection>,
) -> Result<InnerHistogram, CoreError> {
    if set.has_sqrt3() {
        return inner_histogram_quad(set, sel);
    }
    let dim = set.dim();
    let norm_raw: i64 = {
        let (n, _) = set.raw_dot(0, 0);
        i64::try_from(n).expect("norm numerator fits i64")
    };

    let rows: Vec<usize> = match sel {
        Some(s) => s.selected_indices(set),
        None => set.pairs().iter().map(|p| p[0] as usize).collect(),
    };
    let n_rep = rows.len();

    // Raw inner products are bounded by the norm numerator (Cauchy-Schwarz),
    // so the tally lives in a flat array indexed by value + norm.
    let width = (2 * norm_raw + 1) as usize;
    let offset = norm_raw;

    let max_abs = rows
        .iter()
        .flat_map(|&idx| set.rat_row(idx).iter())
        .map(|v| v.abs())
        .max()
        .unwrap_or(0);

    // i16 coordinates with i32 accumulation vectorize well and stay exact
    // whenever dim·max² fits; every generated family does by a wide margin.
    let tally: Vec<u64> = if max_abs <= 127 && (dim as i64) * max_abs * max_abs < (1 << 30) {
        let coords: Vec<i16> = rows
            .iter()
            .flat_map(|&idx| set.rat_row(idx).iter().map(|&v| v as i16))
            .collect();
        (0..n_rep)
            .into_par_iter()
            .fold(
                || vec![0u64; width],
                |mut local: Vec<u64>, a| {
                    let ra = &coords[a * dim..(a + 1) * dim];
                    for b in (a + 1)..n_rep {
                        let rb = &coords[b * dim..(b + 1) * dim];
                        let mut ip: i32 = 0;
                        for c in 0..dim {
                            ip += ra[c] as i32 * rb[c] as i32;
                        }
                        local[(ip as i64 + offset) as usize] += 1;
                    }
                    local
                },
            )
            .reduce(
                || vec![0u64; width],
                |mut acc, other| {
                    for (a, o) in acc.iter_mut().zip(other) {
                        *a += o;
                    }
                    acc
                },
            )
    } else {
        let coords: Vec<i64> = rows
            .iter()
            .flat_map(|&idx| set.rat_row(idx).iter().copied())
            .collect();
        (0..n_rep)
            .into_par_iter()
            .fold(
                || vec![0u64; width],
                |mut local: Vec<u64>, a| {
                    let ra = &coords[a * dim..(a + 1) * dim];
                    for b in (a + 1)..n_rep {
                        let rb = &coords[b * dim..(b + 1) * dim];
                        let mut ip: i64 = 0;
                        for c in 0..dim {
                            ip += ra[c] * rb[c];
                        }
                        local[(ip + offset) as usize] += 1;
                    }
                    local
                },
            )
            .reduce(
                || vec![0u64; width],
                |mut acc, other| {
                    for (a, o) in acc.iter_mut().zip(other) {
                        *a += o;
                    }
                    acc
                },
            )
    };

    // Unordered representative-pair tallies expand to the ordered-pair
    // histogram: a half counts both orders; the full set additionally
    // reflects through each antipode, then adds the in-pair ±norm entries.
    let mut counts: HashMap<i64, u64> = HashMap::new();
    let n_points = if sel.is_none() { 2 * n_rep } else { n_rep };
    for (slot, &c) in tally.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let v = slot as i64 - offset;
        if sel.is_none() {
            *counts.entry(v).or_insert(0) += 4 * c;
            *counts.entry(-v).or_insert(0) += 4 * c;
        } else {
            *counts.entry(v).or_insert(0) += 2 * c;
        }
    }
    *counts.entry(norm_raw).or_insert(0) += n_points as u64;
    if sel.is_none() {
        *counts.entry(-norm_raw).or_insert(0) += n_points as u64;
    }
    Ok(InnerHistogram { counts, n_points })
}

/// Exact path for √3 coordinate models (E₆ scale: no performance concern).
fn inner_histogram_quad(
    set: &PointSet,
    sel: Option<&HalfSelection>,
) -> Result<InnerHistogram, CoreError> {
    let rows: Vec<usize> = match sel {
        Some(s) => s.selected_indices(set),
        None => (0..set.len()).collect(),
    };
    let mut counts: HashMap<i64, u64> = HashMap::new();
    for &a in &rows {
        for &b in &rows {
            let (rat, cross) = set.raw_dot(a, b);
            if cross != 0 {
                return Err(CoreError::InvalidData(
                    "irrational inner product in histogram".into(),
                ));
            }
            let key = i64::try_from(rat).expect("inner product fits i64");
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    Ok(InnerHistogram {
        counts,
        n_points: rows.len(),
    })
}

/// Exact Gegenbauer moment Σ_{x,y} C_i^{(λ)}(⟨x,y⟩ / norm2) from a
/// prebuilt histogram. λ = (n−2)/2 for the set's ambient dimension n.
pub fn gegenbauer_moment_from_histogram(
    set: &PointSet,
    hist: &InnerHistogram,
    i: usize,
) -> Rational {
    let d2 = ratio(set.denom() * set.denom(), 1);
    let mut acc = Rational::zero();
    for (&raw, &count) in &hist.counts {
        let t = ratio(raw, 1) / (&d2 * set.norm2());
        acc += gegenbauer(set.dim(), i, &t) * ratio(count as i64, 1);
    }
    acc
}

/// Exact Gegenbauer moment of the full set or a half. The moment is a
/// positive-semidefinite sum, so it is ≥ 0 and equals 0 exactly when the
/// configuration is a harmonic-index-{i} design.
pub fn gegenbauer_moment(
    set: &PointSet,
    sel: Option<&HalfSelection>,
    i: usize,
) -> Result<Rational, CoreError> {
    let hist = inner_histogram(set, sel)?;
    Ok(gegenbauer_moment_from_histogram(set, &hist, i))
}

/// Per-index design verdicts.
#[derive(Debug, Clone)]
pub struct DesignReport {
    pub indices: Vec<usize>,
    pub moments: Vec<Rational>,
    /// verdict per index: true iff the exact moment is zero.
    pub verdicts: Vec<bool>,
    pub all_zero: bool,
}

/// Tests the harmonic-index-T design property, one exact moment per index,
/// sharing a single pair histogram across all indices.
pub fn is_harmonic_t_design(
    set: &PointSet,
    sel: Option<&HalfSelection>,
    indices: &[usize],
) -> Result<DesignReport, CoreError> {
    let hist = inner_histogram(set, sel)?;
    let moments: Vec<Rational> = indices
        .iter()
        .map(|&i| gegenbauer_moment_from_histogram(set, &hist, i))
        .collect();
    let verdicts: Vec<bool> = moments.iter().map(Rational::is_zero).collect();
    let all_zero = verdicts.iter().all(|&v| v);
    Ok(DesignReport {
        indices: indices.to_vec(),
        moments,
        verdicts,
        all_zero,
    })
}

/// Exact componentwise sum of the selected representatives.
pub fn sum_vector(set: &PointSet, sel: &HalfSelection) -> ExactVector {
    let (rat, quad) = sel.raw_sum(set);
    let coords = (0..set.dim())
        .map(|c| {
            QuadraticScalar::new(
                Rational::new(rat[c].into(), set.denom().into()),
                match &quad {
                    Some(q) => Rational::new(q[c].into(), set.denom().into()),
                    None => Rational::zero(),
                },
            )
        })
        .collect();
    ExactVector::new(coords)
}

/// Exact test of ᵗH_i · H_j = 0 for two characteristic matrices over the
/// same point selection (same rows, same order).
pub fn gram_orthogonality(
    hi: &CharacteristicMatrix,
    hj: &CharacteristicMatrix,
) -> Result<bool, CoreError> {
    if hi.rows() != hj.rows() {
        return Err(CoreError::DimensionMismatch {
            expected: hi.rows(),
            found: hj.rows(),
        });
    }
    match (&hi.data, &hj.data) {
        (CharMatrixData::Int(a), CharMatrixData::Int(b)) => Ok(a.gram_with(b).is_zero()),
        (CharMatrixData::Quad(a), CharMatrixData::Quad(b)) => {
            Ok(a.transpose().matmul(b).is_zero())
        }
        _ => Err(CoreError::InvalidData(
            "mixed scalar fields in Gram product".into(),
        )),
    }
}

/// Search status for the ±1 left-null-vector question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSearchStatus {
    /// A ±1 vector in the left null space exists; the witness re-verifies.
    Found,
    /// Certified none: either the left kernel is trivial or the full
    /// enumeration over the kernel completed without a witness.
    None,
    /// The kernel dimension exceeds the cap (or could not be certified);
    /// no verdict is asserted.
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct SignSearchResult {
    pub status: SignSearchStatus,
    /// ±1 witness over the matrix rows, present iff status is `Found`.
    pub witness: Option<Vec<i8>>,
    /// Exact left-kernel dimension when determined.
    pub kernel_dim: Option<usize>,
    /// Lower bound on the kernel dimension when the exact value was not
    /// computed (infeasible path).
    pub kernel_dim_lower: Option<usize>,
    /// Exact rank when certified.
    pub rank: Option<usize>,
    pub enumerated: u64,
    /// Mechanism record: how the kernel was obtained and the search decided.
    pub notes: String,
}

#[derive(Debug, Clone, Copy)]
pub struct SignSearchOptions {
    /// Kernel dimensions above this cap report `Infeasible` rather than
    /// attempting 2^(k−1) enumeration.
    pub k_max: usize,
    /// Rough exact-elimination budget (rows·cols·min(rows,cols)); above it
    /// the kernel must come from a verified hint or the search is infeasible.
    pub exact_ops_budget: u128,
}

impl Default for SignSearchOptions {
    fn default() -> Self {
        SignSearchOptions {
            k_max: 26,
            exact_ops_budget: 60_000_000,
        }
    }
}

/// Decides whether any ±1 vector lies in the left null space of `h`.
///
/// `kernel_hint` may supply a matrix (same rows) whose columns are claimed
/// to span the left kernel, in practice the degree-1 characteristic matrix,
/// whose columns annihilate odd-degree matrices by Gram orthogonality. The
/// claim is verified exactly before use: hint columns must be independent,
/// must annihilate `h`, and must number exactly rows − rank(h).
pub fn sign_kernel_search(
    h: &CharacteristicMatrix,
    kernel_hint: Option<&CharacteristicMatrix>,
    opts: SignSearchOptions,
) -> Result<SignSearchResult, CoreError> {
    match &h.data {
        CharMatrixData::Int(m) => sign_search_int(m, kernel_hint, opts),
        CharMatrixData::Quad(m) => sign_search_exact_field(m, opts),
    }
}

fn elimination_cost(rows: usize, cols: usize) -> u128 {
    rows as u128 * cols as u128 * rows.min(cols) as u128
}

fn sign_search_int(
    m: &IntMatrix,
    kernel_hint: Option<&CharacteristicMatrix>,
    opts: SignSearchOptions,
) -> Result<SignSearchResult, CoreError> {
    let rows = m.rows();
    let cols = m.cols();
    let rank_p = mersenne31_rank(m);
    if rank_p == rows {
        // Modular full row rank certifies rational full row rank, so the
        // left kernel is exactly {0}.
        return Ok(SignSearchResult {
            status: SignSearchStatus::None,
            witness: None,
            kernel_dim: Some(0),
            kernel_dim_lower: None,
            rank: Some(rows),
            enumerated: 0,
            notes: "full row rank (modular certificate); trivial left kernel".into(),
        });
    }

    let small = elimination_cost(rows, cols) <= opts.exact_ops_budget;
    let (kernel, rank, mechanism): (Mat<Rational>, usize, String) = if small {
        let exact = m.to_exact();
        let rank = exact.rank();
        let kernel = exact.kernel_basis(KernelSide::Left);
        (kernel, rank, "exact elimination".into())
    } else if rank_p == cols {
        // Full column rank is exact; kernel dimension is rows − cols. A
        // verified hint must supply the kernel at this scale.
        let k = rows - cols;
        match kernel_hint.and_then(verified_hint_basis(m, k)) {
            Some(basis) => (basis, cols, "full column rank + verified kernel hint".into()),
            None => {
                return Ok(SignSearchResult {
                    status: SignSearchStatus::Infeasible,
                    witness: None,
                    kernel_dim: Some(k),
                    kernel_dim_lower: Some(k),
                    rank: Some(cols),
                    enumerated: 0,
                    notes: format!(
                        "kernel dimension {k} known exactly but no verified basis \
                         available at this scale (exact elimination over budget)"
                    ),
                });
            }
        }
    } else {
        // Rank not certified and the matrix is too large to eliminate
        // exactly: report bounds honestly. rank_p only bounds the rank from
        // below, so the kernel dimension sits in [rows−cols, rows−rank_p].
        return Ok(SignSearchResult {
            status: SignSearchStatus::Infeasible,
            witness: None,
            kernel_dim: None,
            kernel_dim_lower: Some(rows.saturating_sub(cols)),
            rank: None,
            enumerated: 0,
            notes: format!(
                "rank not certified (modular rank {rank_p}); kernel dimension \
                 between rows − cols = {} and rows − modular rank = {}; exact \
                 elimination over budget",
                rows.saturating_sub(cols),
                rows - rank_p
            ),
        });
    };

    let k = kernel.rows();
    debug_assert_eq!(k, rows - rank);
    // 2^(k−1) must fit the enumeration counter; anything near that scale is
    // out of reach regardless of the configured cap.
    let k_max = opts.k_max.min(62);
    if k == 0 {
        return Ok(SignSearchResult {
            status: SignSearchStatus::None,
            witness: None,
            kernel_dim: Some(0),
            kernel_dim_lower: None,
            rank: Some(rank),
            enumerated: 0,
            notes: format!("trivial left kernel ({mechanism})"),
        });
    }
    if k > k_max {
        return Ok(SignSearchResult {
            status: SignSearchStatus::Infeasible,
            witness: None,
            kernel_dim: Some(k),
            kernel_dim_lower: Some(k),
            rank: Some(rank),
            enumerated: 0,
            notes: format!("kernel dimension {k} exceeds cap {k_max}"),
        });
    }

    let (status, witness, enumerated) = enumerate_pm_one(&kernel, m)?;
    Ok(SignSearchResult {
        status,
        witness,
        kernel_dim: Some(k),
        kernel_dim_lower: None,
        rank: Some(rank),
        enumerated,
        notes: format!("{mechanism}; pivot enumeration over 2^{}", k - 1),
    })
}

/// Checks a kernel hint exactly: the hint's columns (transposed to rows
/// here) must annihilate `m` and be independent, `k` of them.
fn verified_hint_basis(
    m: &IntMatrix,
    k: usize,
) -> impl Fn(&CharacteristicMatrix) -> Option<Mat<Rational>> + '_ {
    move |hint: &CharacteristicMatrix| {
        let hint_int = hint.as_int()?;
        if hint_int.rows() != m.rows() || hint_int.cols() != k {
            return None;
        }
        if !hint_int.gram_with(m).is_zero() {
            return None;
        }
        let basis = hint_int.to_exact().transpose();
        if basis.rank() != k {
            return None;
        }
        Some(basis)
    }
}

/// Exhaustive ±1 enumeration over the kernel row space: RREF the basis,
/// prescribe signs on the pivot coordinates (first fixed +1 by the global
/// negation symmetry), filter candidates modulo a Mersenne prime, and
/// re-verify every survivor in exact arithmetic, including `w·M = 0`.
fn enumerate_pm_one(
    kernel: &Mat<Rational>,
    m: &IntMatrix,
) -> Result<(SignSearchStatus, Option<Vec<i8>>, u64), CoreError> {
    let rref = kernel.rref();
    let w = rref.reduced;
    let pivots = rref.pivot_cols;
    let k = kernel.rows();
    assert_eq!(pivots.len(), k, "kernel basis rows must be independent");
    let n = w.cols();
    let total: u64 = 1u64 << (k - 1);

    // Columns to scan, pivots excluded (their values are prescribed).
    let scan_cols: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    // Modular table, column-major. A denominator divisible by the modulus
    // would break the reduction; fall back to exact-only enumeration then.
    let mut table: Vec<u64> = Vec::with_capacity(scan_cols.len() * k);
    let mut modular_ok = true;
    'build: for &c in &scan_cols {
        for r in 0..k {
            let v = w.at(r, c);
            let den = M31::from_i64(sign_fold(v.denom()));
            if den.0 == 0 {
                modular_ok = false;
                break 'build;
            }
            let num = M31::from_i64(sign_fold(v.numer()));
            table.push((num * den.inv()).0);
        }
    }

    let survivors: Vec<u64> = if modular_ok {
        (0..total)
            .into_par_iter()
            .filter(|&mask| {
                let mut signs = [0u64; 64];
                for (t, s) in signs.iter_mut().enumerate().take(k) {
                    let neg = t > 0 && (mask >> (t - 1)) & 1 == 1;
                    *s = if neg { MODULUS - 1 } else { 1 };
                }
                for col in 0..scan_cols.len() {
                    let base = col * k;
                    let mut acc: u64 = 0;
                    for t in 0..k {
                        acc = (acc + (M31(signs[t]) * M31(table[base + t])).0) % MODULUS;
                    }
                    if acc != 1 && acc != MODULUS - 1 {
                        return false;
                    }
                }
                true
            })
            .collect()
    } else {
        (0..total).collect()
    };

    let mut survivors = survivors;
    survivors.sort_unstable();
    for &mask in &survivors {
        if let Some(witness) = exact_pm_one_candidate(&w, &pivots, mask, m) {
            return Ok((SignSearchStatus::Found, Some(witness), total));
        }
    }
    Ok((SignSearchStatus::None, None, total))
}

/// Folds a BigInt into an i64-compatible residue for M31 conversion.
fn sign_fold(v: &num_bigint::BigInt) -> i64 {
    use num_integer::Integer;
    let m = num_bigint::BigInt::from(MODULUS);
    let r = v.mod_floor(&m);
    i64::try_from(&r).expect("residue fits i64")
}

/// Exact check of one candidate: build w = Σ s_t · Wrow_t, demand every
/// entry ±1, and confirm w·M = 0 with integer arithmetic.
fn exact_pm_one_candidate(
    w: &Mat<Rational>,
    pivots: &[usize],
    mask: u64,
    m: &IntMatrix,
) -> Option<Vec<i8>> {
    let k = pivots.len();
    let n = w.cols();
    let one = Rational::one();
    let mut cand: Vec<Rational> = vec![Rational::zero(); n];
    for t in 0..k {
        let neg = t > 0 && (mask >> (t - 1)) & 1 == 1;
        for c in 0..n {
            let v = w.at(t, c);
            if v.is_zero() {
                continue;
            }
            if neg {
                cand[c] -= v;
            } else {
                cand[c] += v;
            }
        }
    }
    let mut signs: Vec<i8> = Vec::with_capacity(n);
    for v in &cand {
        if *v == one {
            signs.push(1);
        } else if *v == -&one {
            signs.push(-1);
        } else {
            return None;
        }
    }
    // Final exact re-verification: the ±1 vector annihilates the matrix.
    for c in 0..m.cols() {
        let mut acc: i128 = 0;
        for (r, &s) in signs.iter().enumerate() {
            acc += s as i128 * m.at(r, c) as i128;
        }
        if acc != 0 {
            return None;
        }
    }
    Some(signs)
}

/// Exact-field search used for √3 matrices (small scales only): exact
/// elimination, then exact enumeration without a modular filter.
fn sign_search_exact_field(
    m: &Mat<QuadraticScalar>,
    opts: SignSearchOptions,
) -> Result<SignSearchResult, CoreError> {
    let rows = m.rows();
    if elimination_cost(rows, m.cols()) > opts.exact_ops_budget {
        return Ok(SignSearchResult {
            status: SignSearchStatus::Infeasible,
            witness: None,
            kernel_dim: None,
            kernel_dim_lower: Some(rows.saturating_sub(m.cols())),
            rank: None,
            enumerated: 0,
            notes: "quadratic-field matrix over exact budget".into(),
        });
    }
    let rank = m.rank();
    let kernel = m.kernel_basis(KernelSide::Left);
    let k = kernel.rows();
    if k == 0 {
        return Ok(SignSearchResult {
            status: SignSearchStatus::None,
            witness: None,
            kernel_dim: Some(0),
            kernel_dim_lower: None,
            rank: Some(rank),
            enumerated: 0,
            notes: "trivial left kernel (exact elimination over ℚ(√3))".into(),
        });
    }
    if k > opts.k_max.min(62) {
        return Ok(SignSearchResult {
            status: SignSearchStatus::Infeasible,
            witness: None,
            kernel_dim: Some(k),
            kernel_dim_lower: Some(k),
            rank: Some(rank),
            enumerated: 0,
            notes: format!("kernel dimension {k} exceeds cap {}", opts.k_max.min(62)),
        });
    }
    let w = kernel.rref().reduced;
    let n = w.cols();
    let total: u64 = 1 << (k - 1);
    let one = QuadraticScalar::one();
    for mask in 0..total {
        let mut cand: Vec<QuadraticScalar> = vec![QuadraticScalar::zero(); n];
        for t in 0..k {
            let neg = t > 0 && (mask >> (t - 1)) & 1 == 1;
            for c in 0..n {
                let v = w.at(t, c);
                if crate::exact::FieldScalar::is_zero(v) {
                    continue;
                }
                if neg {
                    cand[c] = crate::exact::FieldScalar::sub(&cand[c], v);
                } else {
                    cand[c] = crate::exact::FieldScalar::add(&cand[c], v);
                }
            }
        }
        let mut signs: Vec<i8> = Vec::with_capacity(n);
        let mut ok = true;
        for v in &cand {
            if *v == one {
                signs.push(1);
            } else if *v == -&one {
                signs.push(-1);
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(SignSearchResult {
                status: SignSearchStatus::Found,
                witness: Some(signs),
                kernel_dim: Some(k),
                kernel_dim_lower: None,
                rank: Some(rank),
                enumerated: total,
                notes: "exact enumeration over ℚ(√3)".into(),
            });
        }
    }
    Ok(SignSearchResult {
        status: SignSearchStatus::None,
        witness: None,
        kernel_dim: Some(k),
        kernel_dim_lower: None,
        rank: Some(rank),
        enumerated: total,
        notes: "exact enumeration over ℚ(√3)".into(),
    })
}

/// Result of the greedy zero-sum half search.
#[derive(Debug, Clone)]
pub struct LocalSearchOutcome {
    pub selection: Option<HalfSelection>,
    pub seed: u64,
    pub restarts_used: usize,
    pub steps: u64,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Greedy descent on Q(sel) = |Σ selected|² (integer-scaled, with the √3
/// plane weighted by 3 so Q = 0 iff the sum vanishes identically).
///
/// From a seeded random selection, repeatedly flips the pair whose toggle
/// most decreases Q (flipping pair p moves the sum by −2·x_p, so the best
/// flip maximizes ⟨sum, x_p⟩), with ties broken by lowest pair index, until
/// Q = 0 (success) or a local minimum triggers a reseeded restart. Fully
/// deterministic given the seed.
pub fn local_search_half(
    set: &PointSet,
    seed: u64,
    max_restarts: usize,
) -> LocalSearchOutcome {
    let dim = set.dim();
    let pairs = set.n_pairs();
    let mut rng = seed;
    let mut steps: u64 = 0;

    // ν = |x|² at integer scale (same for every point).
    let (nu_rat, _) = set.raw_dot(0, 0);
    let nu = nu_rat as i64;

    for restart in 0..max_restarts {
        let mut sel_signs: Vec<i8> = (0..pairs)
            .map(|_| if splitmix64(&mut rng) & 1 == 0 { 1 } else { -1 })
            .collect();
        let sel = HalfSelection::from_signs(sel_signs.clone()).expect("signs are ±1");
        let (mut sum_rat, sum_quad) = sel.raw_sum(set);
        let mut sum_quad = sum_quad.unwrap_or_else(|| vec![0i64; dim]);

        loop {
            let q: i128 = sum_rat.iter().map(|&v| (v as i128) * (v as i128)).sum::<i128>()
                + 3 * sum_quad
                    .iter()
                    .map(|&v| (v as i128) * (v as i128))
                    .sum::<i128>();
            if q == 0 {
                let found = HalfSelection::from_signs(sel_signs).expect("signs are ±1");
                // Re-verify from scratch: the incremental sums must agree
                // with a fresh summation before success is reported.
                let (rat, quad) = found.raw_sum(set);
                assert!(
                    rat.iter().all(|&v| v == 0)
                        && quad.map_or(true, |qv| qv.iter().all(|&v| v == 0)),
                    "incremental zero sum contradicted by recomputation"
                );
                return LocalSearchOutcome {
                    selection: Some(found),
                    seed,
                    restarts_used: restart,
                    steps,
                };
            }

            // Best flip: maximize ⟨sum, selected_p⟩; improving iff > ν.
            let mut best_pair = usize::MAX;
            let mut best_dot: i64 = nu;
            for p in 0..pairs {
                let idx = if sel_signs[p] == 1 {
                    set.pairs()[p][0] as usize
                } else {
                    set.pairs()[p][1] as usize
                };
                let row = set.rat_row(idx);
                let mut dot: i64 = 0;
                for c in 0..dim {
                    dot += sum_rat[c] * row[c];
                }
                if let Some(qrow) = set.sqrt3_row(idx) {
                    for c in 0..dim {
                        dot += 3 * sum_quad[c] * qrow[c];
                    }
                }
                if dot > best_dot {
                    best_dot = dot;
                    best_pair = p;
                }
            }
            if best_pair == usize::MAX {
                break; // local minimum; restart
            }
            let idx = if sel_signs[best_pair] == 1 {
                set.pairs()[best_pair][0] as usize
            } else {
                set.pairs()[best_pair][1] as usize
            };
            for c in 0..dim {
                sum_rat[c] -= 2 * set.rat_row(idx)[c];
            }
            if let Some(qrow) = set.sqrt3_row(idx) {
                for c in 0..dim {
                    sum_quad[c] -= 2 * qrow[c];
                }
            }
            sel_signs[best_pair] = -sel_signs[best_pair];
            steps += 1;
        }
    }

    LocalSearchOutcome {
        selection: None,
        seed,
        restarts_used: max_restarts,
        steps,
    }
}

/// True iff the all-ones row vector annihilates the matrix: the direct
/// "selection is an index-i design" test on a characteristic matrix.
pub fn all_ones_annihilates(h: &CharacteristicMatrix) -> bool {
    match &h.data {
        CharMatrixData::Int(m) => (0..m.cols()).all(|c| {
            let mut acc: i128 = 0;
            for r in 0..m.rows() {
                acc += m.at(r, c) as i128;
            }
            acc == 0
        }),
        CharMatrixData::Quad(m) => (0..m.cols()).all(|c| {
            let mut acc = QuadraticScalar::zero();
            for r in 0..m.rows() {
                acc += m.at(r, c);
            }
            acc.is_zero()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::characteristic_matrix;
    use crate::roots::{construct_half, generate_roots, HalfOutcome, RootFamily};

    fn e8_half() -> (PointSet, HalfSelection) {
        let (set, outcome) = construct_half(RootFamily::E(8)).unwrap();
        match outcome {
            HalfOutcome::Half(sel) => (set, sel),
            _ => unreachable!(),
        }
    }

    #[test]
    fn full_e8_is_a_seven_design() {
        let set = generate_roots(RootFamily::E(8)).unwrap();
        let report = is_harmonic_t_design(&set, None, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        assert!(report.all_zero, "moments: {:?}", report.moments);
        // Degree 8 must NOT vanish: E8 is tight.
        let m8 = gegenbauer_moment(&set, None, 8).unwrap();
        assert!(m8 > Rational::zero());
    }

    #[test]
    fn e8_half_moments() {
        let (set, sel) = e8_half();
        let report = is_harmonic_t_design(&set, Some(&sel), &[1, 2, 4, 6]).unwrap();
        assert!(report.all_zero, "even indices and 1 must vanish on the half");
        let m3 = gegenbauer_moment(&set, Some(&sel), 3).unwrap();
        assert!(m3 > Rational::zero(), "index 3 moment must be positive, got {m3}");
    }

    #[test]
    fn odd_moments_vanish_on_antipodal_sets() {
        for fam in [RootFamily::A(3), RootFamily::D(5), RootFamily::E(6), RootFamily::E(7)] {
            let set = generate_roots(fam).unwrap();
            for i in [1, 3, 5] {
                let m = gegenbauer_moment(&set, None, i).unwrap();
                assert!(m.is_zero(), "{} odd moment {i} must vanish", fam.name());
            }
        }
    }

    #[test]
    fn sum_vector_matches_moment_one() {
        let (set, sel) = e8_half();
        assert!(sum_vector(&set, &sel).is_zero());
        assert!(gegenbauer_moment(&set, Some(&sel), 1).unwrap().is_zero());

        // Flip one pair: the selected point x becomes −x, the sum becomes
        // −2x, and moment 1 must turn positive.
        let mut flipped = sel.clone();
        flipped.flip(0);
        let sv = sum_vector(&set, &flipped);
        let x0 = set.point(sel.selected(&set, 0));
        let minus_two_x0 = ExactVector::new(
            x0.coords()
                .iter()
                .map(|c| {
                    let two = QuadraticScalar::from_int(2);
                    -&(c * &two)
                })
                .collect(),
        );
        assert_eq!(sv, minus_two_x0);
        assert!(gegenbauer_moment(&set, Some(&flipped), 1).unwrap() > Rational::zero());
    }

    #[test]
    fn design_test_equivalence_on_characteristic_matrices() {
        // For i ∈ {1, 3}: all-ones annihilates H̃_i ⇔ the moment vanishes.
        let (set, sel) = e8_half();
        for i in [1usize, 3] {
            let h = characteristic_matrix(&set, Some(&sel), i).unwrap();
            let annihilated = all_ones_annihilates(&h);
            let moment_zero = gegenbauer_moment(&set, Some(&sel), i).unwrap().is_zero();
            assert_eq!(annihilated, moment_zero, "equivalence at degree {i}");
        }
    }

    #[test]
    fn e8_index3_sign_search_exhausts_none() {
        let (set, sel) = e8_half();
        let h3 = characteristic_matrix(&set, Some(&sel), 3).unwrap();
        let res = sign_kernel_search(&h3, None, SignSearchOptions::default()).unwrap();
        assert_eq!(res.status, SignSearchStatus::None);
        assert_eq!(res.rank, Some(112));
        assert_eq!(res.kernel_dim, Some(8));
        assert_eq!(res.enumerated, 128);
    }

    #[test]
    fn e8_index3_kernel_hint_agrees_with_exact_path() {
        // Dual route: the H̃_1 columns span the left kernel of H̃_3; forcing
        // the hint path must reproduce the exact-elimination verdict.
        let (set, sel) = e8_half();
        let h3 = characteristic_matrix(&set, Some(&sel), 3).unwrap();
        let h1 = characteristic_matrix(&set, Some(&sel), 1).unwrap();
        let opts = SignSearchOptions {
            exact_ops_budget: 0, // force the hint path
            ..Default::default()
        };
        let res = sign_kernel_search(&h3, Some(&h1), opts).unwrap();
        assert_eq!(res.status, SignSearchStatus::None);
        assert_eq!(res.kernel_dim, Some(8));
        assert_eq!(res.enumerated, 128);
    }

    #[test]
    fn zero_kernel_reports_none_without_enumeration() {
        let m = IntMatrix::from_data(3, 3, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let h = CharacteristicMatrix {
            degree: 1,
            denom: 1,
            data: CharMatrixData::Int(m),
        };
        let res = sign_kernel_search(&h, None, SignSearchOptions::default()).unwrap();
        assert_eq!(res.status, SignSearchStatus::None);
        assert_eq!(res.enumerated, 0);
        assert_eq!(res.kernel_dim, Some(0));
    }

    #[test]
    fn e8_index5_search_exhausts_none() {
        // The degree-1 columns sit inside the left kernel of H̃_5 as well
        // (1 + 5 < 7), so the kernel is 8-dimensional and the verdict comes
        // from exhausting the 2^7 sign assignments.
        let (set, sel) = e8_half();
        let h5 = characteristic_matrix(&set, Some(&sel), 5).unwrap();
        let res = sign_kernel_search(&h5, None, SignSearchOptions::default()).unwrap();
        assert_eq!(res.status, SignSearchStatus::None);
        assert_eq!(res.rank, Some(112));
        assert_eq!(res.kernel_dim, Some(8));
        assert_eq!(res.enumerated, 128);
    }

    #[test]
    fn sign_search_finds_planted_witness() {
        // A 4×2 matrix whose left kernel contains the ±1 vector (1,1,−1,−1).
        let m = IntMatrix::from_data(4, 2, vec![1, 3, 2, 1, 1, 3, 2, 1]);
        let h = CharacteristicMatrix {
            degree: 1,
            denom: 1,
            data: CharMatrixData::Int(m),
        };
        let res = sign_kernel_search(&h, None, SignSearchOptions::default()).unwrap();
        assert_eq!(res.status, SignSearchStatus::Found);
        let w = res.witness.unwrap();
        assert_eq!(w.len(), 4);
        // Verify annihilation by hand.
        let hint = [[1i64, 3], [2, 1], [1, 3], [2, 1]];
        for c in 0..2 {
            let s: i64 = (0..4).map(|r| w[r] as i64 * hint[r][c]).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn infeasible_when_kernel_exceeds_cap() {
        let m = IntMatrix::from_data(6, 1, vec![1, -1, 1, -1, 1, -1]);
        let h = CharacteristicMatrix {
            degree: 1,
            denom: 1,
            data: CharMatrixData::Int(m),
        };
        let opts = SignSearchOptions {
            k_max: 2,
            ..Default::default()
        };
        let res = sign_kernel_search(&h, None, opts).unwrap();
        assert_eq!(res.status, SignSearchStatus::Infeasible);
        assert_eq!(res.kernel_dim, Some(5));
    }

    #[test]
    fn gram_orthogonality_on_e8_half() {
        let (set, sel) = e8_half();
        let h1 = characteristic_matrix(&set, Some(&sel), 1).unwrap();
        let h3 = characteristic_matrix(&set, Some(&sel), 3).unwrap();
        let h5 = characteristic_matrix(&set, Some(&sel), 5).unwrap();
        // Distinct odd degrees with sum below the design strength vanish;
        // (3,5) sums past it and carries no guarantee.
        assert!(gram_orthogonality(&h1, &h3).unwrap());
        assert!(gram_orthogonality(&h1, &h5).unwrap());
        // The Gram matrix of a full-column-rank matrix with itself is nonzero.
        assert!(!gram_orthogonality(&h1, &h1).unwrap());
    }

    #[test]
    fn local_search_on_roots() {
        // E8: existence guaranteed; several seeds must all succeed.
        let set = generate_roots(RootFamily::E(8)).unwrap();
        for seed in [1u64, 2, 42] {
            let out = local_search_half(&set, seed, 100);
            let sel = out.selection.expect("E8 search must find a zero-sum half");
            assert!(sum_vector(&set, &sel).is_zero());
        }
        // A3: no half exists; bounded restarts must come back empty.
        let set = generate_roots(RootFamily::A(3)).unwrap();
        let out = local_search_half(&set, 7, 25);
        assert!(out.selection.is_none());
        assert_eq!(out.restarts_used, 25);
    }

    #[test]
    fn e6_index3_search_over_quadratic_field() {
        // The E6 coordinates live in Q(sqrt3); the whole pipeline must stay
        // exact there. H~_3 of the constructed half is 36x50 of rank 30, so
        // the left kernel has dimension 6 and 2^5 candidates decide it.
        let (set, outcome) = construct_half(RootFamily::E(6)).unwrap();
        let sel = match outcome {
            HalfOutcome::Half(s) => s,
            _ => unreachable!(),
        };
        let h3 = characteristic_matrix(&set, Some(&sel), 3).unwrap();
        assert_eq!((h3.rows(), h3.cols()), (36, 50));
        let res = sign_kernel_search(&h3, None, SignSearchOptions::default()).unwrap();
        assert_eq!(res.status, SignSearchStatus::None);
        assert_eq!(res.rank, Some(30));
        assert_eq!(res.kernel_dim, Some(6));
        assert_eq!(res.enumerated, 32);
    }

    #[test]
    fn moment_invariant_under_negation_and_permutation() {
        // Global negation: rebuild D4 with swapped pair members.
        let set = generate_roots(RootFamily::D(4)).unwrap();
        let m3 = gegenbauer_moment(&set, None, 3).unwrap();
        let m4 = gegenbauer_moment(&set, None, 4).unwrap();
        let mut rows = Vec::new();
        for i in (0..set.len()).rev() {
            rows.extend(set.rat_row(i).iter().map(|&v| -v));
        }
        let negated = PointSet::from_integer_rows(set.dim(), set.denom(), rows, None).unwrap();
        assert_eq!(gegenbauer_moment(&negated, None, 3).unwrap(), m3);
        assert_eq!(gegenbauer_moment(&negated, None, 4).unwrap(), m4);
    }
}
