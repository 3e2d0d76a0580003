//! Inner-product distributions, intersection numbers for inner-product
//! relations, and the parity obstructions that rule out association-scheme
//! structure on any half of an antipodal configuration.
//!
//! The parity argument: for classes i, j whose inner products are negatives
//! of each other and any x, y in a half X, the z-count over the full set
//! splits as p̃_{ij} = p^X_{ij} + p^X_{ji}. A symmetric scheme on X forces
//! p^X_{ij} = p^X_{ji}, so an odd p̃_{ij}^k is a contradiction. Everything
//! here is computed on the full set only; which half is taken never matters.

use std::collections::HashMap;


use crate::error::CoreError;
use crate::exact::{ratio, Rational};
use crate::points::{HalfSelection, PointSet};
use crate::verify::inner_histogram;

/// Ordered list of normalized inner-product values defining relations
/// R_0 (value 1, the identity), R_1, …
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSpec {
    values: Vec<Rational>,
}

impl ClassSpec {
    pub fn new(values: Vec<Rational>) -> Result<ClassSpec, CoreError> {
        if values.first() != Some(&ratio(1, 1)) {
            return Err(CoreError::InvalidData(
                "class 0 must be the identity value 1".into(),
            ));
        }
        for (a, v) in values.iter().enumerate() {
            if values[..a].contains(v) {
                return Err(CoreError::InvalidData(format!(
                    "duplicate class value {v}"
                )));
            }
        }
        Ok(ClassSpec { values })
    }

    /// E₈ classes in the convention ⟨x,y⟩ = 2 − i on roots of norm 2:
    /// normalized values 1, 1/2, 0, −1/2, −1.
    pub fn e8_default() -> ClassSpec {
        ClassSpec::new(vec![
            ratio(1, 1),
            ratio(1, 2),
            ratio(0, 1),
            ratio(-1, 2),
            ratio(-1, 1),
        ])
        .expect("static spec")
    }

    /// Λ₂₄(1) classes: 1, 0, 1/4, −1/4, 1/2, −1/2 in the stated order,
    /// with the antipodal class −1 appended.
    pub fn leech_default() -> ClassSpec {
        ClassSpec::new(vec![
            ratio(1, 1),
            ratio(0, 1),
            ratio(1, 4),
            ratio(-1, 4),
            ratio(1, 2),
            ratio(-1, 2),
            ratio(-1, 1),
        ])
        .expect("static spec")
    }

    /// Tight 7-design classes: 1, 1/3, 0, −1/3, −1.
    pub fn tight7_default() -> ClassSpec {
        ClassSpec::new(vec![
            ratio(1, 1),
            ratio(1, 3),
            ratio(0, 1),
            ratio(-1, 3),
            ratio(-1, 1),
        ])
        .expect("static spec")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn class_of(&self, v: &Rational) -> Option<usize> {
        self.values.iter().position(|u| u == v)
    }

    /// The class whose value is the negative of class `i`'s, if listed.
    pub fn negation_partner(&self, i: usize) -> Option<usize> {
        let neg = -&self.values[i];
        self.class_of(&neg)
    }

    /// Raw integer keys (value · norm2 · denom²) for fast classification.
    fn raw_table(&self, set: &PointSet) -> Result<HashMap<i64, usize>, CoreError> {
        let scale = set.norm2() * ratio(set.denom() * set.denom(), 1);
        let mut map = HashMap::new();
        for (idx, v) in self.values.iter().enumerate() {
            let raw = v * &scale;
            if !raw.denom().is_one() {
                return Err(CoreError::InvalidData(format!(
                    "class value {v} is not realizable at integer scale"
                )));
            }
            let key = i64::try_from(raw.numer()).map_err(|_| {
                CoreError::InvalidData(format!("class value {v} out of range"))
            })?;
            map.insert(key, idx);
        }
        Ok(map)
    }
}

use num_traits::One;

/// Exact ordered-pair tally of normalized inner products over distinct
/// points of the set (or of a selected half), ascending by value.
pub fn inner_distribution(
    set: &PointSet,
    sel: Option<&HalfSelection>,
) -> Result<Vec<(Rational, u64)>, CoreError> {
    let hist = inner_histogram(set, sel)?;
    let scale = set.norm2() * ratio(set.denom() * set.denom(), 1);
    let mut out: Vec<(Rational, u64)> = Vec::new();
    for (&raw, &count) in &hist.counts {
        let v = ratio(raw, 1) / &scale;
        if v == ratio(1, 1) {
            // Drop the diagonal contribution; keep any genuine distinct-pair
            // duplicates (impossible for valid sets, which bar duplicates).
            let extra = count - hist.n_points as u64;
            if extra > 0 {
                out.push((v, extra));
            }
            continue;
        }
        out.push((v, count));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// How intersection counts are checked for constancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Every ordered pair of the set.
    Full,
    /// The first `per_class` ordered pairs of each class, scanning points
    /// lexicographically by index. Deterministic and documented.
    Sampled { per_class: usize },
}

/// Intersection counts p_{ij}^k with per-triple constancy flags.
#[derive(Debug, Clone)]
pub struct IntersectionTable {
    pub n_classes: usize,
    /// First-seen count per (i, j, k), flattened as (i·n + j)·n + k.
    counts: Vec<u64>,
    /// Whether the count stayed constant over every checked pair of R_k.
    well_defined: Vec<bool>,
    /// Ordered pairs examined per class k.
    pub pairs_checked: Vec<u64>,
    /// Valency of each class (count of y per x), when constant.
    pub valencies: Vec<Option<u64>>,
    pub mode: CheckMode,
}

impl IntersectionTable {
    pub fn p(&self, i: usize, j: usize, k: usize) -> u64 {
        self.counts[(i * self.n_classes + j) * self.n_classes + k]
    }

    pub fn well_defined(&self, i: usize, j: usize, k: usize) -> bool {
        self.well_defined[(i * self.n_classes + j) * self.n_classes + k]
    }
}

/// Computes intersection numbers over representative pairs of each class.
///
/// `mode` `Full` checks constancy over every ordered pair (feasible for the
/// root systems); `Sampled` uses the documented deterministic prefix sample
/// (the Leech scale). Errors if a checked pair's inner product is not
/// covered by the class list.
pub fn intersection_numbers(
    set: &PointSet,
    spec: &ClassSpec,
    mode: CheckMode,
) -> Result<IntersectionTable, CoreError> {
    let n = spec.len();
    let raw = spec.raw_table(set)?;
    let total = set.len();

    let class_of_pair = |a: usize, b: usize| -> Result<usize, CoreError> {
        let (ip, cross) = set.raw_dot(a, b);
        if cross != 0 {
            return Err(CoreError::InvalidData("irrational inner product".into()));
        }
        let key = i64::try_from(ip).expect("inner product fits i64");
        raw.get(&key).copied().ok_or_else(|| {
            CoreError::InvalidData(format!(
                "inner product {key} (raw) not covered by the class spec"
            ))
        })
    };

    // Deterministic pair streams per class.
    let per_class_cap = match mode {
        CheckMode::Full => u64::MAX,
        CheckMode::Sampled { per_class } => per_class as u64,
    };

    let mut counts: Vec<u64> = vec![0; n * n * n];
    let mut seen: Vec<bool> = vec![false; n * n * n];
    let mut well: Vec<bool> = vec![true; n * n * n];
    let mut pairs_checked: Vec<u64> = vec![0; n];
    let mut valencies: Vec<Option<u64>> = vec![None; n];
    let mut valency_ok = vec![true; n];

    'outer: for x in 0..total {
        // Valency check for this x.
        let mut val = vec![0u64; n];
        for y in 0..total {
            val[class_of_pair(x, y)?] += 1;
        }
        for i in 0..n {
            match valencies[i] {
                None => valencies[i] = Some(val[i]),
                Some(v) if v != val[i] => valency_ok[i] = false,
                _ => {}
            }
        }

        for y in 0..total {
            let k = class_of_pair(x, y)?;
            if pairs_checked[k] >= per_class_cap {
                continue;
            }
            pairs_checked[k] += 1;
            // z-scan: joint class table for this pair.
            let mut table = vec![0u64; n * n];
            for z in 0..total {
                let i = class_of_pair(x, z)?;
                let j = class_of_pair(z, y)?;
                table[i * n + j] += 1;
            }
            for i in 0..n {
                for j in 0..n {
                    let idx = (i * n + j) * n + k;
                    if !seen[idx] {
                        seen[idx] = true;
                        counts[idx] = table[i * n + j];
                    } else if counts[idx] != table[i * n + j] {
                        well[idx] = false;
                    }
                }
            }
        }
        if let CheckMode::Sampled { .. } = mode {
            if pairs_checked.iter().all(|&c| c >= per_class_cap) && x > 0 {
                break 'outer;
            }
        }
    }

    for i in 0..n {
        if !valency_ok[i] {
            valencies[i] = None;
        }
    }

    Ok(IntersectionTable {
        n_classes: n,
        counts,
        well_defined: well,
        pairs_checked,
        valencies,
        mode,
    })
}

/// A triple whose full-set intersection number is odd: proof that no half
/// carries a symmetric association scheme with these classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub p_tilde: u64,
    /// Constant over every checked pair of R_k.
    pub constant: bool,
    pub pairs_checked: u64,
}

/// Runs the parity argument: for every class pair (i, j) with negated inner
/// products (both admissible inside a half, i.e. value ≠ −1) and every
/// half-admissible class k, flags the triples whose p̃_{ij}^k is odd.
///
/// `spec` lists the full antipodal classes including −1; the half's putative
/// classes are exactly those with value ≠ −1.
pub fn half_parity_obstruction(
    set: &PointSet,
    spec: &ClassSpec,
    mode: CheckMode,
) -> Result<Vec<ParityWitness>, CoreError> {
    let table = intersection_numbers(set, spec, mode)?;
    let minus_one = ratio(-1, 1);
    let half_class = |c: usize| spec.values()[c] != minus_one;

    let mut witnesses = Vec::new();
    for i in 0..spec.len() {
        if !half_class(i) {
            continue;
        }
        let Some(j) = spec.negation_partner(i) else {
            continue;
        };
        if !half_class(j) || j < i {
            // j < i: the (j, i) sweep already covered the unordered pair.
            continue;
        }
        for k in 0..spec.len() {
            if !half_class(k) {
                continue;
            }
            let p = table.p(i, j, k);
            if p % 2 == 1 {
                witnesses.push(ParityWitness {
                    i,
                    j,
                    k,
                    p_tilde: p,
                    constant: table.well_defined(i, j, k),
                    pairs_checked: table.pairs_checked[k],
                });
            }
        }
    }
    Ok(witnesses)
}

/// Checks the halving identity behind the parity argument on concrete data:
/// for classes (i, j) with negated values, a fixed half X, and every checked
/// pair x, y ∈ X: the full-set z-count of (x,z) ∈ R_i, (z,y) ∈ R_j equals
/// the in-half count of the same pattern plus the in-half count with i and
/// j exchanged.
pub fn halving_identity_holds(
    set: &PointSet,
    sel: &HalfSelection,
    spec: &ClassSpec,
    i: usize,
    j: usize,
    max_pairs: Option<usize>,
) -> Result<bool, CoreError> {
    let raw = spec.raw_table(set)?;
    let classify = |a: usize, b: usize| -> Option<usize> {
        let (ip, _) = set.raw_dot(a, b);
        raw.get(&i64::try_from(ip).ok()?).copied()
    };
    let selected = sel.selected_indices(set);
    let in_half: std::collections::HashSet<usize> = selected.iter().copied().collect();
    let cap = max_pairs.unwrap_or(usize::MAX);

    let mut checked = 0usize;
    for &x in &selected {
        for &y in &selected {
            if checked >= cap {
                return Ok(true);
            }
            checked += 1;
            let mut full_count = 0u64;
            let mut half_ij = 0u64;
            let mut half_ji = 0u64;
            for z in 0..set.len() {
                let ci = classify(x, z);
                let cj = classify(z, y);
                let (Some(ci), Some(cj)) = (ci, cj) else {
                    return Err(CoreError::InvalidData(
                        "class spec does not cover an occurring value".into(),
                    ));
                };
                if ci == i && cj == j {
                    full_count += 1;
                    if in_half.contains(&z) {
                        half_ij += 1;
                    }
                }
                if ci == j && cj == i && in_half.contains(&z) {
                    half_ji += 1;
                }
            }
            if full_count != half_ij + half_ji {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{construct_half, generate_roots, HalfOutcome, RootFamily};

    #[test]
    fn class_spec_validation() {
        assert!(ClassSpec::new(vec![ratio(1, 2)]).is_err());
        assert!(ClassSpec::new(vec![ratio(1, 1), ratio(1, 2), ratio(1, 2)]).is_err());
        let spec = ClassSpec::e8_default();
        assert_eq!(spec.len(), 5);
        assert_eq!(spec.negation_partner(1), Some(3));
        assert_eq!(spec.negation_partner(2), Some(2));
        assert_eq!(spec.negation_partner(0), Some(4));
    }

    #[test]
    fn e8_inner_distribution() {
        let set = generate_roots(RootFamily::E(8)).unwrap();
        let dist = inner_distribution(&set, None).unwrap();
        let values: Vec<Rational> = dist.iter().map(|(v, _)| v.clone()).collect();
        assert_eq!(
            values,
            vec![ratio(-1, 1), ratio(-1, 2), ratio(0, 1), ratio(1, 2)]
        );
        // Exactly one point at inner product −1 from each point.
        let at_minus_one = dist.iter().find(|(v, _)| *v == ratio(-1, 1)).unwrap().1;
        assert_eq!(at_minus_one, 240);
        let total: u64 = dist.iter().map(|(_, c)| c).sum();
        assert_eq!(total, 240 * 239);
    }

    #[test]
    fn half_distribution_has_no_antipodal_value() {
        let (set, outcome) = construct_half(RootFamily::E(8)).unwrap();
        let sel = match outcome {
            HalfOutcome::Half(s) => s,
            _ => unreachable!(),
        };
        let dist = inner_distribution(&set, Some(&sel)).unwrap();
        assert!(dist.iter().all(|(v, _)| *v != ratio(-1, 1)));
    }

    #[test]
    fn e8_intersection_numbers() {
        let set = generate_roots(RootFamily::E(8)).unwrap();
        let spec = ClassSpec::e8_default();
        let table = intersection_numbers(&set, &spec, CheckMode::Full).unwrap();
        // p̃_13^1 = 1 with indices following the ⟨x,y⟩ = 2 − i convention.
        assert_eq!(table.p(1, 3, 1), 1);
        assert!(table.well_defined(1, 3, 1));
        // Identity-class pattern: p_{i0}^k = δ_{ik}.
        for i in 0..spec.len() {
            for k in 0..spec.len() {
                let expect = if i == k { 1 } else { 0 };
                assert_eq!(table.p(i, 0, k), expect, "p_({i},0)^{k}");
                assert!(table.well_defined(i, 0, k));
            }
        }
        // Row sums against valencies wherever the row is well defined.
        for i in 0..spec.len() {
            let v = table.valencies[i].expect("E8 valencies are constant");
            for k in 0..spec.len() {
                if (0..spec.len()).all(|j| table.well_defined(i, j, k)) {
                    let sum: u64 = (0..spec.len()).map(|j| table.p(i, j, k)).sum();
                    assert_eq!(sum, v, "row sum for i={i}, k={k}");
                }
            }
        }
    }

    #[test]
    fn e8_parity_witness() {
        let set = generate_roots(RootFamily::E(8)).unwrap();
        let witnesses =
            half_parity_obstruction(&set, &ClassSpec::e8_default(), CheckMode::Full).unwrap();
        assert!(
            witnesses
                .iter()
                .any(|w| (w.i, w.j, w.k) == (1, 3, 1) && w.p_tilde == 1 && w.constant),
            "expected the (1,3,1) witness, got {witnesses:?}"
        );
    }

    #[test]
    fn cross_polytope_has_no_witnesses() {
        let mut rows = Vec::new();
        for i in 0..4 {
            for s in [1i64, -1] {
                let mut r = vec![0i64; 4];
                r[i] = s;
                rows.extend(r);
            }
        }
        let set = PointSet::from_integer_rows(4, 1, rows, None).unwrap();
        let spec =
            ClassSpec::new(vec![ratio(1, 1), ratio(0, 1), ratio(-1, 1)]).unwrap();
        let witnesses = half_parity_obstruction(&set, &spec, CheckMode::Full).unwrap();
        assert!(witnesses.is_empty(), "got {witnesses:?}");
    }

    #[test]
    fn halving_identity_on_e8() {
        let (set, outcome) = construct_half(RootFamily::E(8)).unwrap();
        let sel = match outcome {
            HalfOutcome::Half(s) => s,
            _ => unreachable!(),
        };
        let spec = ClassSpec::e8_default();
        // Exhaustive over all 120×120 half pairs for the (1,3) classes.
        assert!(halving_identity_holds(&set, &sel, &spec, 1, 3, None).unwrap());
    }

    #[test]
    fn coverage_failure_is_an_error() {
        let set = generate_roots(RootFamily::E(8)).unwrap();
        // Spec missing the 0 class: classification must fail.
        let spec = ClassSpec::new(vec![
            ratio(1, 1),
            ratio(1, 2),
            ratio(-1, 2),
            ratio(-1, 1),
        ])
        .unwrap();
        assert!(intersection_numbers(&set, &spec, CheckMode::Full).is_err());
    }
}
