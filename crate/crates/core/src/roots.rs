//! Generation of the simply-laced root systems A_l, D_n, E_6, E_7, E_8 as
//! exact antipodal point sets, closed-form zero-sum halves where they exist,
//! and parity obstruction certificates where they do not.
//!
//! Pair ordering convention: each antipodal pair is generated as
//! (representative, −representative), so pair `k` of the resulting point set
//! is `[2k, 2k+1]` and a half selection's sign is relative to the generated
//! representative (the "positive" root).

use crate::error::CoreError;
use crate::exact::ratio;
use crate::points::{
    HalfSelection, ObstructionCertificate, ObstructionFunctional, ObstructionKind, PointSet,
};

/// One of the simply-laced families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootFamily {
    /// A_l, l ≥ 1: the l(l+1) vectors ±(ε_i − ε_j) in ℝ^{l+1}.
    A(usize),
    /// D_n, n ≥ 3: the 2n(n−1) vectors ±ε_i ± ε_j in ℝ^n.
    ///
    /// n = 3 is accepted: the parity argument needs nothing beyond n ≥ 3
    /// even though the family is usually listed from n = 4.
    D(usize),
    /// E_m, m ∈ {6, 7, 8}.
    E(usize),
}

impl RootFamily {
    pub fn name(&self) -> String {
        match self {
            RootFamily::A(l) => format!("A{l}"),
            RootFamily::D(n) => format!("D{n}"),
            RootFamily::E(m) => format!("E{m}"),
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            RootFamily::A(l) if *l >= 1 => Ok(()),
            RootFamily::D(n) if *n >= 3 => Ok(()),
            RootFamily::E(m) if (6..=8).contains(m) => Ok(()),
            _ => Err(CoreError::InvalidParameter(format!(
                "unsupported root family {}",
                self.name()
            ))),
        }
    }

    /// Closed-form root count: l(l+1), 2n(n−1), 72, 126, 240.
    pub fn root_count(&self) -> usize {
        match self {
            RootFamily::A(l) => l * (l + 1),
            RootFamily::D(n) => 2 * n * (n - 1),
            RootFamily::E(6) => 72,
            RootFamily::E(7) => 126,
            RootFamily::E(8) => 240,
            RootFamily::E(_) => unreachable!(),
        }
    }
}

/// Outcome of a half construction or search.
#[derive(Debug, Clone)]
pub enum HalfOutcome {
    Half(HalfSelection),
    Obstructed(ObstructionCertificate),
}

/// Outcome of the exhaustive brute-force search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(HalfSelection),
    /// Every sign assignment was enumerated; no half sums to zero.
    ExhaustedNone { enumerated: u64 },
}

/// Generates the root system as an exact point set with all invariants
/// validated (common squared norm 2, antipodal closure, no duplicates).
pub fn generate_roots(family: RootFamily) -> Result<PointSet, CoreError> {
    family.validate()?;
    let set = match family {
        RootFamily::A(l) => {
            let dim = l + 1;
            let mut rows = Vec::with_capacity(l * (l + 1) * dim);
            for i in 0..dim {
                for j in (i + 1)..dim {
                    push_two_signed(&mut rows, dim, &[(i, 1), (j, -1)]);
                }
            }
            PointSet::from_integer_rows(dim, 1, rows, None)?
        }
        RootFamily::D(n) => {
            let mut rows = Vec::with_capacity(2 * n * (n - 1) * n);
            d_rows(&mut rows, n, n);
            PointSet::from_integer_rows(n, 1, rows, None)?
        }
        RootFamily::E(8) => {
            // Integer-part roots are the D_8 vectors; the spinor part has
            // coordinates ±1/2 with an even number of minus signs.
            let dim = 8;
            let mut rows = Vec::new();
            d_rows(&mut rows, dim, dim);
            for r in rows.iter_mut() {
                *r *= 2; // common denominator 2
            }
            for signs in half_sum_patterns(dim, |c| parity_product(c) == 1) {
                rows.extend(signs.iter().copied());
                rows.extend(signs.iter().map(|&v| -v));
            }
            PointSet::from_integer_rows(dim, 2, rows, None)?
        }
        RootFamily::E(7) => {
            // ±(ε_i − ε_j) plus the half-coordinate vectors with Σ c_i = 0,
            // all inside the Σx = 0 hyperplane of ℝ^8.
            let dim = 8;
            let mut rows = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    push_two_signed(&mut rows, dim, &[(i, 2), (j, -2)]);
                }
            }
            for signs in half_sum_patterns(dim, |c| c.iter().sum::<i64>() == 0) {
                rows.extend(signs.iter().copied());
                rows.extend(signs.iter().map(|&v| -v));
            }
            PointSet::from_integer_rows(dim, 2, rows, None)?
        }
        RootFamily::E(6) => {
            // D_5 inside the first five coordinates plus the spinor part
            // (√3/2)c_6 ε_6 + (1/2)Σ c_i ε_i with Π c_i = −1.
            let dim = 6;
            let mut rat = Vec::new();
            let mut quad = Vec::new();
            let mut d5 = Vec::new();
            d_rows(&mut d5, 5, 5);
            for chunk in d5.chunks(5) {
                for &v in chunk {
                    rat.push(2 * v);
                }
                rat.push(0);
                quad.extend([0i64; 6]);
            }
            for five in half_sum_patterns(5, |_| true) {
                let c6 = -parity_product(&five);
                for rep in [1i64, -1] {
                    rat.extend(five.iter().map(|&v| rep * v));
                    rat.push(0);
                    quad.extend([0i64; 5]);
                    quad.push(rep * c6);
                }
            }
            PointSet::from_integer_rows(dim, 2, rat, Some(quad))?
        }
        RootFamily::E(_) => unreachable!(),
    };
    debug_assert_eq!(set.len(), family.root_count());
    debug_assert_eq!(*set.norm2(), ratio(2, 1));
    Ok(set)
}

/// Appends the D_n pair blocks (ε_i + ε_j then ε_i − ε_j, each with its
/// antipode) for 0-based i < j < n, embedded in `dim` coordinates.
fn d_rows(rows: &mut Vec<i64>, n: usize, dim: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            push_two_signed(rows, dim, &[(i, 1), (j, 1)]);
            push_two_signed(rows, dim, &[(i, 1), (j, -1)]);
        }
    }
}

/// Pushes the vector with the given sparse entries, then its antipode.
fn push_two_signed(rows: &mut Vec<i64>, dim: usize, entries: &[(usize, i64)]) {
    for sign in [1i64, -1] {
        let mut r = vec![0i64; dim];
        for &(idx, v) in entries {
            r[idx] = sign * v;
        }
        rows.extend(r);
    }
}

/// All ±1 patterns of length `dim` passing `keep`, with the first sign fixed
/// to +1 so exactly one pattern per antipodal pair is produced. Patterns are
/// emitted in binary counting order (bit 0 = +1), so generation is canonical.
fn half_sum_patterns(dim: usize, keep: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << (dim - 1)) {
        let mut c = Vec::with_capacity(dim);
        c.push(1i64);
        for b in 0..(dim - 1) {
            c.push(if mask >> b & 1 == 0 { 1 } else { -1 });
        }
        if keep(&c) {
            out.push(c);
        }
    }
    out
}

fn parity_product(c: &[i64]) -> i64 {
    c.iter().product::<i64>().signum()
}

/// Constructs a zero-sum half by the family's explicit sign identity, or
/// returns a parity obstruction certificate when none exists.
///
/// Returned halves always satisfy `Σ selected = 0` exactly; certificates
/// always pass [`ObstructionCertificate::reverify`] against the generated set.
pub fn construct_half(family: RootFamily) -> Result<(PointSet, HalfOutcome), CoreError> {
    family.validate()?;
    let set = generate_roots(family)?;
    let outcome = match family {
        RootFamily::A(l) => {
            if l % 2 == 0 {
                HalfOutcome::Half(a_even_half(l))
            } else {
                // ρ's ε_1 coefficient is l/2, a half-integer, while every
                // sum of roots has integer coordinates.
                HalfOutcome::Obstructed(ObstructionCertificate {
                    kind: ObstructionKind::HalfIntegerCoordinate,
                    functional: ObstructionFunctional::Coordinate(0),
                    pair_sum: ratio(l as i64, 1),
                    module_gcd: ratio(1, 1),
                    detail: format!(
                        "rho's first coordinate is {l}/2, not an integer; \
                         no sum of the positive roots can reach it"
                    ),
                })
            }
        }
        RootFamily::D(n) => match n % 4 {
            0 | 1 => HalfOutcome::Half(d_half(n)),
            _ => {
                let tri = (n * (n - 1) / 2) as i64;
                HalfOutcome::Obstructed(ObstructionCertificate {
                    kind: ObstructionKind::LatticeParity,
                    functional: ObstructionFunctional::CoordinateSum,
                    pair_sum: ratio(2 * tri, 1),
                    module_gcd: ratio(2, 1),
                    detail: format!(
                        "coordinate sum of rho is n(n-1)/2 = {tri}, odd; \
                         root sums only reach even multiples"
                    ),
                })
            }
        },
        RootFamily::E(8) => HalfOutcome::Half(e8_half()),
        RootFamily::E(6) => HalfOutcome::Half(e6_half()),
        RootFamily::E(m) if m != 7 => unreachable!("validated above"),
        RootFamily::E(_) => {
            // 28 integer pairs plus 35 pairs contributing ±1/2 each to the
            // first coordinate: an odd count of half-integers can't sum to 0.
            HalfOutcome::Obstructed(ObstructionCertificate {
                kind: ObstructionKind::HalfIntegerCoordinate,
                functional: ObstructionFunctional::Coordinate(0),
                pair_sum: ratio(7, 1) + ratio(35, 2),
                module_gcd: ratio(1, 2),
                detail: "thirty-five pairs contribute ±1/2 to the first \
                         coordinate, so every half-sum is a half-integer there"
                    .to_string(),
            })
        }
    };
    if let HalfOutcome::Half(sel) = &outcome {
        debug_assert!({
            let (rat, quad) = sel.raw_sum(&set);
            rat.iter().all(|&v| v == 0) && quad.is_none_or(|q| q.iter().all(|&v| v == 0))
        });
    }
    Ok((set, outcome))
}

/// A_{2k} half: the pair for ε_i − ε_j (1-based i < j) takes sign (−1)^{i+j}.
fn a_even_half(l: usize) -> HalfSelection {
    let mut signs = Vec::new();
    for i in 1..=(l + 1) {
        for j in (i + 1)..=(l + 1) {
            signs.push(if (i + j) % 2 == 0 { 1 } else { -1 });
        }
    }
    HalfSelection::from_signs(signs).expect("signs are ±1")
}

/// D_n half for n ≡ 0, 1 (mod 4): signs (−1)^⌊(i+j)/2⌋ on ε_i + ε_j and
/// (−1)^{i+j} on ε_i − ε_j over the first 4k coordinates, with the extra
/// column handled by the alternating correction identity when n = 4k + 1.
fn d_half(n: usize) -> HalfSelection {
    let body = if n.is_multiple_of(4) { n } else { n - 1 };
    let mut signs = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if j <= body {
                signs.push(if ((i + j) / 2) % 2 == 0 { 1 } else { -1 });
                signs.push(if (i + j) % 2 == 0 { 1 } else { -1 });
            } else {
                // pair (i, n) with n = 4k+1: +(−1)^i on the plus root,
                // −(−1)^i on the minus root
                let s = if i % 2 == 0 { 1 } else { -1 };
                signs.push(s);
                signs.push(-s);
            }
        }
    }
    HalfSelection::from_signs(signs).expect("signs are ±1")
}

/// Sign for a spinor representative (first sign +1): keep it iff
/// c_1·c_2·c_3 = +1, i.e. iff its triple lies in
/// {(+,+,+), (+,−,−), (−,+,−), (−,−,+)}.
fn spinor_sign(pattern: &[i64]) -> i8 {
    if pattern[0] * pattern[1] * pattern[2] > 0 {
        1
    } else {
        -1
    }
}

fn e8_half() -> HalfSelection {
    let mut signs: Vec<i8> = Vec::new();
    // D_8 block in generation order.
    let d8 = d_half(8);
    signs.extend(d8.signs());
    // Spinor block: generation order fixes c_1 = +1.
    for pattern in half_sum_patterns(8, |c| parity_product(c) == 1) {
        signs.push(spinor_sign(&pattern));
    }
    HalfSelection::from_signs(signs).expect("signs are ±1")
}

fn e6_half() -> HalfSelection {
    let mut signs: Vec<i8> = Vec::new();
    let d5 = d_half(5);
    signs.extend(d5.signs());
    for pattern in half_sum_patterns(5, |_| true) {
        // c_6 is determined by the five free signs; the selection rule only
        // inspects (c_1, c_2, c_3).
        signs.push(spinor_sign(&pattern));
    }
    HalfSelection::from_signs(signs).expect("signs are ±1")
}

/// Exhaustively enumerates the `2^(pairs−1)` sign assignments (the first
/// pair's sign is fixed by the global-negation symmetry of the zero-sum
/// property) in Gray-code order and returns the first zero-sum half found,
/// or certifies that none exists.
pub fn brute_force_half_search(set: &PointSet, limit: usize) -> Result<SearchOutcome, CoreError> {
    let pairs = set.n_pairs();
    if pairs == 0 {
        return Err(CoreError::InvalidData("empty point set".into()));
    }
    if pairs > limit {
        return Err(CoreError::TooLarge(format!(
            "{pairs} pairs exceeds the enumeration limit {limit}"
        )));
    }

    let dim = set.dim();
    let quad_plane = set.has_sqrt3();
    // Doubled representative rows: a flip moves the running sum by ∓2·rep.
    let mut rep2_rat = vec![0i64; pairs * dim];
    let mut rep2_quad = vec![0i64; pairs * dim];
    for k in 0..pairs {
        let rep = set.pairs()[k][0] as usize;
        for c in 0..dim {
            rep2_rat[k * dim + c] = 2 * set.rat_row(rep)[c];
            if let Some(q) = set.sqrt3_row(rep) {
                rep2_quad[k * dim + c] = 2 * q[c];
            }
        }
    }

    let mut signs: Vec<i8> = vec![1; pairs];
    let sel = HalfSelection::from_signs(signs.clone()).expect("signs are ±1");
    let (mut sum_rat, sum_quad) = sel.raw_sum(set);
    let mut sum_quad = sum_quad.unwrap_or_else(|| vec![0i64; dim]);

    let is_zero = |rat: &[i64], quad: &[i64]| -> bool {
        rat.iter().all(|&v| v == 0) && (!quad_plane || quad.iter().all(|&v| v == 0))
    };

    let total: u64 = 1u64 << (pairs - 1);
    for step in 0..total {
        if step > 0 {
            // Gray code over pairs 1..pairs: flip the pair indexed by the
            // lowest set bit of `step`, offset past the fixed pair 0.
            let k = step.trailing_zeros() as usize + 1;
            let dir = -(signs[k] as i64); // new sign minus old sign, halved
            signs[k] = -signs[k];
            for c in 0..dim {
                sum_rat[c] += dir * rep2_rat[k * dim + c];
                if quad_plane {
                    sum_quad[c] += dir * rep2_quad[k * dim + c];
                }
            }
        }
        if is_zero(&sum_rat, &sum_quad) {
            return Ok(SearchOutcome::Found(
                HalfSelection::from_signs(signs).expect("signs are ±1"),
            ));
        }
    }
    Ok(SearchOutcome::ExhaustedNone { enumerated: total })
}
