//! The 196560 minimal vectors of the Leech lattice in the three-type
//! decomposition over the extended Golay code, the explicit zero-sum half,
//! and the 4600-point tight 7-design on S^22 cut out of the kissing
//! configuration.
//!
//! Scaling convention: vectors are kept at integer scale (squared norm 32);
//! normalization to the unit sphere happens only when inner products are
//! divided by the common squared norm, never in the coordinates.

use crate::error::CoreError;
use crate::golay::{generate_golay, GolayCode};
use crate::points::{HalfSelection, PointSet};

/// Type tag of a minimal vector, with its block metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeechMinType {
    /// (±4², 0²²): one of the 1104 two-support vectors.
    A,
    /// (±2⁸, 0¹⁶) on an octad, even number of minus signs.
    B { octad: usize },
    /// (∓3, ±1²³) with the sign changes on a codeword support.
    C { position: usize },
}

/// The minimal-vector set plus the block structure of its generation order.
#[derive(Debug)]
pub struct LeechSet {
    pub points: PointSet,
    pub code: GolayCode,
    a_pairs: usize,
    b_pairs_per_octad: usize,
    c_pairs_per_position: usize,
}

pub const LEECH_COUNT: usize = 196_560;
pub const LEECH_A_COUNT: usize = 1104;
pub const LEECH_B_COUNT: usize = 97_152;
pub const LEECH_C_COUNT: usize = 98_304;

/// Generates Λ₂₄(1) with every structural invariant validated: the three
/// type counts, common squared norm 32, antipodal closure, no duplicates.
///
/// Generation order (each representative immediately followed by its
/// antipode, so pair `k` is points `2k, 2k+1`):
/// 1. type a, by support pair (i, j) lexicographically, the (+,+) vector
///    then the (+,−) vector (mirroring the D_n plus/minus root order);
/// 2. type b, by octad in codeword-index order; representatives carry `+2`
///    at the smallest octad position, the next six signs count in binary,
///    and the last sign restores even minus parity;
/// 3. type c, by distinguished position `k` then codeword index, the
///    representative being the codeword with bit 0 clear.
pub fn generate_leech_min() -> Result<LeechSet, CoreError> {
    let code = generate_golay();
    let dim = 24usize;
    let mut rows: Vec<i64> = Vec::with_capacity(LEECH_COUNT * dim);

    fn push(rows: &mut Vec<i64>, row: [i64; 24]) {
        rows.extend(row);
        rows.extend(row.map(|v| -v));
    }

    // Type a: (±4, ±4) at positions i < j.
    for i in 0..dim {
        for j in (i + 1)..dim {
            for minus_sign in [1i64, -1] {
                let mut r = [0i64; 24];
                r[i] = 4;
                r[j] = 4 * minus_sign;
                push(&mut rows, r);
            }
        }
    }
    let a_pairs = rows.len() / dim / 2;

    // Type b: ±2 on each octad, even number of minus signs.
    for octad in &code.octads {
        for mask in 0u32..64 {
            let mut signs = [1i64; 8];
            let mut minus = 0;
            for t in 0..6 {
                if mask >> t & 1 == 1 {
                    signs[1 + t] = -1;
                    minus += 1;
                }
            }
            if minus % 2 == 1 {
                signs[7] = -1;
            }
            let mut r = [0i64; 24];
            for (slot, &pos) in octad.support.iter().enumerate() {
                r[pos as usize] = 2 * signs[slot];
            }
            push(&mut rows, r);
        }
    }
    let b_pairs_per_octad = 64;

    // Type c: all-ones with sign flips on a codeword support, and the
    // distinguished coordinate pushed to ∓3 on the same side as its sign.
    for k in 0..dim {
        for &w in code.codewords.iter().filter(|&&w| w & 1 == 0) {
            let mut r = [0i64; 24];
            for (j, slot) in r.iter_mut().enumerate() {
                *slot = 1 - 2 * (w >> j & 1) as i64;
            }
            r[k] -= 4 * r[k].signum();
            push(&mut rows, r);
        }
    }
    let c_pairs_per_position = 2048;

    let points = PointSet::from_integer_rows(dim, 1, rows, None)?;
    if points.len() != LEECH_COUNT {
        return Err(CoreError::InvalidData(format!(
            "minimal vector count {} != {LEECH_COUNT}",
            points.len()
        )));
    }
    Ok(LeechSet {
        points,
        code,
        a_pairs,
        b_pairs_per_octad,
        c_pairs_per_position,
    })
}

impl LeechSet {
    /// Type tag of point `idx` in generation order.
    pub fn min_type(&self, idx: usize) -> LeechMinType {
        let pair = idx / 2;
        if pair < self.a_pairs {
            return LeechMinType::A;
        }
        let pair = pair - self.a_pairs;
        let b_total = 759 * self.b_pairs_per_octad;
        if pair < b_total {
            return LeechMinType::B {
                octad: pair / self.b_pairs_per_octad,
            };
        }
        let pair = pair - b_total;
        LeechMinType::C {
            position: pair / self.c_pairs_per_position,
        }
    }

    pub fn type_counts(&self) -> (usize, usize, usize) {
        (
            self.a_pairs * 2,
            759 * self.b_pairs_per_octad * 2,
            24 * self.c_pairs_per_position * 2,
        )
    }

    /// The explicit zero-sum half: type a by the D₂₄ sign identity, type b
    /// per octad by the sign-triple rule on its three smallest positions,
    /// type c by the Golay complementary-pair half.
    pub fn construct_half(&self) -> HalfSelection {
        let mut signs: Vec<i8> = Vec::with_capacity(self.points.n_pairs());

        // Type a: pair order per (i, j) is plus-pair then minus-pair; the
        // D_{4k} identity signs use 1-based indices.
        for i in 1..=24i64 {
            for j in (i + 1)..=24 {
                signs.push(if ((i + j) / 2) % 2 == 0 { 1 } else { -1 });
                signs.push(if (i + j) % 2 == 0 { 1 } else { -1 });
            }
        }
        debug_assert_eq!(signs.len(), self.a_pairs);

        // Type b: representative has +2 at the smallest octad position;
        // select it iff the product of the first three signs is +1, i.e.
        // mask bits 0 and 1 agree.
        for _octad in 0..759 {
            for mask in 0u32..64 {
                let keep = (mask & 1) == (mask >> 1 & 1);
                signs.push(if keep { 1 } else { -1 });
            }
        }

        // Type c: representative codeword has bit 0 clear; it belongs to the
        // selected Golay half iff its first-three-bit parity is odd.
        for _k in 0..24 {
            for &w in self.code.codewords.iter().filter(|&&w| w & 1 == 0) {
                signs.push(if GolayCode::in_half(w) { 1 } else { -1 });
            }
        }

        debug_assert_eq!(signs.len(), self.points.n_pairs());
        HalfSelection::from_signs(signs).expect("signs are ±1")
    }
}

/// Squared norm of the tight 7-design points in the flattened frame.
pub const TIGHT7_NORM2: i64 = 12;
pub const TIGHT7_COUNT: usize = 4600;

/// Builds the tight 7-design on S^22 from the Leech kissing configuration.
///
/// Fixes u = (4, 4, 0, …, 0) (the first generated minimal vector), collects
/// the 4600 minimal vectors at normalized inner product 1/2 with u
/// (⟨x, u⟩ = 16), and projects each to x − u/2 inside the hyperplane u^⊥,
/// where the projected points have squared norm 24.
///
/// The returned set carries these points in an orthogonal coordinate frame
/// for u^⊥ (the directions ε₁−ε₂, then ε_{2m+1}∓ε_{2m+2} for each later
/// coordinate pair, all of squared norm 2), which maps the configuration
/// similarly onto ℤ²³ with squared norm 12. Normalized inner products, and
/// hence every design and kernel property, are unchanged; the frame is what
/// lets degree-i harmonic polynomials in the intrinsic 23 variables be
/// evaluated exactly.
pub fn construct_tight7(leech: &LeechSet) -> Result<PointSet, CoreError> {
    let set = &leech.points;
    let u_idx = 0usize;
    {
        let u = set.rat_row(u_idx);
        if u[0] != 4 || u[1] != 4 || u.iter().skip(2).any(|&v| v != 0) {
            return Err(CoreError::InvalidData(
                "generation order changed: point 0 is not (4,4,0,…)".into(),
            ));
        }
    }

    let mut rows: Vec<i64> = Vec::new();
    let mut count = 0usize;
    for x in 0..set.len() {
        let (ip, _) = set.raw_dot(x, u_idx);
        if ip != 16 {
            continue;
        }
        count += 1;
        let r = set.rat_row(x);
        // Projection x − u/2 (u/2 = (2,2,0,…)); still integral.
        let mut p = [0i64; 24];
        p.copy_from_slice(r);
        p[0] -= 2;
        p[1] -= 2;
        let n2: i64 = p.iter().map(|v| v * v).sum();
        if n2 != 24 {
            return Err(CoreError::InvalidData(format!(
                "projected point has squared norm {n2}, expected 24"
            )));
        }
        // Flatten to the u^⊥ frame; every frame coordinate must be even.
        let mut y = [0i64; 23];
        y[0] = p[0] - p[1];
        for m in 0..11 {
            y[1 + 2 * m] = p[2 + 2 * m] - p[3 + 2 * m];
            y[2 + 2 * m] = p[2 + 2 * m] + p[3 + 2 * m];
        }
        if y.iter().any(|v| v % 2 != 0) {
            return Err(CoreError::InvalidData(
                "odd frame coordinate; flattening invariant broken".into(),
            ));
        }
        rows.extend(y.map(|v| v / 2));
    }

    if count != TIGHT7_COUNT {
        return Err(CoreError::InvalidData(format!(
            "kissing shell count {count} != {TIGHT7_COUNT}"
        )));
    }
    let points = PointSet::from_integer_rows(23, 1, rows, None)?;
    debug_assert_eq!(*points.norm2(), crate::exact::ratio(TIGHT7_NORM2, 1));
    Ok(points)
}
