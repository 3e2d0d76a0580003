//! On-disk text formats: point sets, selections, and the histogram cache.
//!
//! Point-set files are line-oriented with a fixed header and one row of
//! coordinate tokens per point. Tokens are `p/q` for rationals and
//! `p/q+r/s~3` for a + b·√3 values; the writer always emits reduced
//! fractions with explicit denominators, so parse → serialize round-trips
//! byte-identically.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use antipodal_core::exact::{parse_rational, rational_token, Rational};
use antipodal_core::points::{HalfSelection, PointSet};
use num_integer::Integer;
use num_traits::Zero;

use crate::CliError;

pub const POINTSET_MAGIC: &str = "pointset v1";
pub const SELECTION_MAGIC: &str = "selection v1";
pub const GOLAY_MAGIC: &str = "golaycode v1";

/// FNV-1a over bytes: the content key used to tie selections and caches to
/// the exact point data they were computed from. Not cryptographic; it only
/// guards against accidental mismatches.
pub fn content_key(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Content key of a point set's exact data (dimensions, denominator, and
/// both coordinate planes).
pub fn pointset_key(set: &PointSet) -> u64 {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend((set.dim() as u64).to_le_bytes());
    buf.extend((set.len() as u64).to_le_bytes());
    buf.extend(set.denom().to_le_bytes());
    for i in 0..set.len() {
        for &v in set.rat_row(i) {
            buf.extend(v.to_le_bytes());
        }
        if let Some(q) = set.sqrt3_row(i) {
            for &v in q {
                buf.extend(v.to_le_bytes());
            }
        }
    }
    content_key(&buf)
}

fn quad_token(a: &Rational, b: &Rational) -> String {
    format!("{}+{}~3", rational_token(a), rational_token(b))
}

/// Serializes a point set in canonical form.
pub fn write_pointset(set: &PointSet) -> String {
    let field = if set.has_sqrt3() { "quadrat3" } else { "rat" };
    let mut out = String::new();
    let _ = writeln!(out, "{POINTSET_MAGIC}");
    let _ = writeln!(out, "dim {}", set.dim());
    let _ = writeln!(out, "norm2 {}", rational_token(set.norm2()));
    let _ = writeln!(out, "field {field}");
    let _ = writeln!(out, "count {}", set.len());
    let denom: num_bigint::BigInt = set.denom().into();
    for i in 0..set.len() {
        let rat = set.rat_row(i);
        let quad = set.sqrt3_row(i);
        let mut row = String::new();
        for c in 0..set.dim() {
            if c > 0 {
                row.push(' ');
            }
            let a = Rational::new(rat[c].into(), denom.clone());
            match quad {
                None => row.push_str(&rational_token(&a)),
                Some(q) => {
                    let b = Rational::new(q[c].into(), denom.clone());
                    row.push_str(&quad_token(&a, &b));
                }
            }
        }
        let _ = writeln!(out, "{row}");
    }
    out
}

fn parse_quad_token(tok: &str) -> Result<(Rational, Rational), CliError> {
    let body = tok
        .strip_suffix("~3")
        .ok_or_else(|| CliError::Parse(format!("expected `p/q+r/s~3`, got `{tok}`")))?;
    // Split at the `+` that separates the two fractions; the second fraction
    // may itself start with a minus sign.
    let plus = body[1..]
        .find('+')
        .map(|p| p + 1)
        .ok_or_else(|| CliError::Parse(format!("missing `+` in quadratic token `{tok}`")))?;
    let a = parse_rational(&body[..plus]).map_err(|e| CliError::Parse(e.to_string()))?;
    let b = parse_rational(&body[plus + 1..]).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok((a, b))
}

/// Parses a canonical point-set file back into an exact `PointSet`,
/// re-validating every structural invariant.
pub fn read_pointset(text: &str) -> Result<PointSet, CliError> {
    let mut lines = text.lines();
    let magic = lines.next().unwrap_or_default();
    if magic != POINTSET_MAGIC {
        return Err(CliError::Parse(format!(
            "not a point-set file (header `{magic}`)"
        )));
    }
    let mut dim = 0usize;
    let mut norm2: Option<Rational> = None;
    let mut field = String::new();
    let mut count = 0usize;
    for _ in 0..4 {
        let line = lines.next().unwrap_or_default();
        let (k, v) = line
            .split_once(' ')
            .ok_or_else(|| CliError::Parse(format!("bad header line `{line}`")))?;
        match k {
            "dim" => dim = v.parse().map_err(|_| CliError::Parse("bad dim".into()))?,
            "norm2" => {
                norm2 = Some(parse_rational(v).map_err(|e| CliError::Parse(e.to_string()))?)
            }
            "field" => field = v.to_string(),
            "count" => count = v.parse().map_err(|_| CliError::Parse("bad count".into()))?,
            _ => return Err(CliError::Parse(format!("unknown header key `{k}`"))),
        }
    }
    let quad_field = match field.as_str() {
        "rat" => false,
        "quadrat3" => true,
        other => return Err(CliError::Parse(format!("unknown field tag `{other}`"))),
    };

    // First pass: exact rational coordinates.
    let mut a_parts: Vec<Rational> = Vec::with_capacity(count * dim);
    let mut b_parts: Vec<Rational> = Vec::with_capacity(count * dim);
    let mut rows_seen = 0usize;
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split(' ').collect();
        if toks.len() != dim {
            return Err(CliError::Parse(format!(
                "row {rows_seen} has {} tokens, expected {dim}",
                toks.len()
            )));
        }
        for tok in toks {
            if quad_field {
                let (a, b) = parse_quad_token(tok)?;
                a_parts.push(a);
                b_parts.push(b);
            } else {
                let a = parse_rational(tok).map_err(|e| CliError::Parse(e.to_string()))?;
                a_parts.push(a);
                b_parts.push(Rational::zero());
            }
        }
        rows_seen += 1;
    }
    if rows_seen != count {
        return Err(CliError::Parse(format!(
            "row count {rows_seen} does not match header count {count}"
        )));
    }

    // Common denominator over every fraction, then integer numerators.
    let mut lcm = num_bigint::BigInt::from(1);
    for v in a_parts.iter().chain(&b_parts) {
        lcm = lcm.lcm(v.denom());
    }
    let denom = i64::try_from(&lcm)
        .map_err(|_| CliError::Parse("coordinate denominators exceed supported scale".into()))?;
    let to_int = |v: &Rational| -> Result<i64, CliError> {
        let scaled = v * Rational::new(lcm.clone(), 1.into());
        i64::try_from(scaled.numer())
            .map_err(|_| CliError::Parse("coordinate numerator exceeds supported scale".into()))
    };
    let rat: Vec<i64> = a_parts.iter().map(&to_int).collect::<Result<_, _>>()?;
    let sqrt3: Option<Vec<i64>> = if b_parts.iter().any(|v| !v.is_zero()) || quad_field {
        Some(b_parts.iter().map(&to_int).collect::<Result<_, _>>()?)
    } else {
        None
    };

    let set = PointSet::from_integer_rows(dim, denom, rat, sqrt3)
        .map_err(|e| CliError::Parse(format!("invalid point data: {e}")))?;
    if let Some(n2) = norm2 {
        if &n2 != set.norm2() {
            return Err(CliError::Parse(format!(
                "declared norm2 {} does not match computed {}",
                rational_token(&n2),
                rational_token(set.norm2())
            )));
        }
    }
    Ok(set)
}

/// Serializes a selection: the chosen point indices in pair order, tied to
/// the point-set file by name and content key.
pub fn write_selection(
    set: &PointSet,
    sel: &HalfSelection,
    pointset_name: &str,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SELECTION_MAGIC}");
    let _ = writeln!(out, "pointset {pointset_name}");
    let _ = writeln!(out, "pointset_key {:016x}", pointset_key(set));
    let _ = writeln!(out, "count {}", sel.len());
    for idx in sel.selected_indices(set) {
        let _ = writeln!(out, "{idx}");
    }
    out
}

/// Parses a selection file; returns the referenced point-set name, the key,
/// and the chosen indices (validated later against the loaded set).
pub fn read_selection(text: &str) -> Result<(String, u64, Vec<usize>), CliError> {
    let mut lines = text.lines();
    let magic = lines.next().unwrap_or_default();
    if magic != SELECTION_MAGIC {
        return Err(CliError::Parse(format!(
            "not a selection file (header `{magic}`)"
        )));
    }
    let mut name = String::new();
    let mut key = 0u64;
    let mut count = 0usize;
    for _ in 0..3 {
        let line = lines.next().unwrap_or_default();
        let (k, v) = line
            .split_once(' ')
            .ok_or_else(|| CliError::Parse(format!("bad header line `{line}`")))?;
        match k {
            "pointset" => name = v.to_string(),
            "pointset_key" => {
                key = u64::from_str_radix(v, 16)
                    .map_err(|_| CliError::Parse("bad pointset_key".into()))?
            }
            "count" => count = v.parse().map_err(|_| CliError::Parse("bad count".into()))?,
            _ => return Err(CliError::Parse(format!("unknown header key `{k}`"))),
        }
    }
    let mut indices = Vec::with_capacity(count);
    for line in lines {
        if line.is_empty() {
            continue;
        }
        indices.push(
            line.parse::<usize>()
                .map_err(|_| CliError::Parse(format!("bad index line `{line}`")))?,
        );
    }
    if indices.len() != count {
        return Err(CliError::Parse(format!(
            "index count {} does not match header count {count}",
            indices.len()
        )));
    }
    Ok((name, key, indices))
}

/// Loads a selection file along with its referenced point set (resolved
/// relative to the selection file's directory), verifying the content key.
pub fn load_selection(path: &Path) -> Result<(PointSet, HalfSelection), CliError> {
    let text = fs::read_to_string(path)?;
    let (name, key, indices) = read_selection(&text)?;
    let ps_path = path.parent().unwrap_or_else(|| Path::new(".")).join(&name);
    let ps_text = fs::read_to_string(&ps_path)?;
    let set = read_pointset(&ps_text)?;
    if pointset_key(&set) != key {
        return Err(CliError::Parse(format!(
            "point-set content key mismatch for {}",
            ps_path.display()
        )));
    }
    let sel = HalfSelection::from_selected_indices(&set, &indices)
        .map_err(|e| CliError::Parse(format!("invalid selection: {e}")))?;
    Ok((set, sel))
}

/// Histogram cache: one line `raw_value count` per class, keyed to the set.
pub fn write_histogram_cache(key: u64, n_points: usize, counts: &[(i64, u64)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "histcache v1");
    let _ = writeln!(out, "pointset_key {key:016x}");
    let _ = writeln!(out, "n_points {n_points}");
    for (raw, count) in counts {
        let _ = writeln!(out, "{raw} {count}");
    }
    out
}

pub fn read_histogram_cache(text: &str) -> Result<(u64, usize, Vec<(i64, u64)>), CliError> {
    let mut lines = text.lines();
    if lines.next() != Some("histcache v1") {
        return Err(CliError::Parse("not a histogram cache".into()));
    }
    let key_line = lines.next().unwrap_or_default();
    let key = key_line
        .strip_prefix("pointset_key ")
        .and_then(|v| u64::from_str_radix(v, 16).ok())
        .ok_or_else(|| CliError::Parse("bad cache key".into()))?;
    let n_line = lines.next().unwrap_or_default();
    let n_points = n_line
        .strip_prefix("n_points ")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| CliError::Parse("bad cache n_points".into()))?;
    let mut counts = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let (a, b) = line
            .split_once(' ')
            .ok_or_else(|| CliError::Parse("bad cache row".into()))?;
        counts.push((
            a.parse().map_err(|_| CliError::Parse("bad cache raw".into()))?,
            b.parse().map_err(|_| CliError::Parse("bad cache count".into()))?,
        ));
    }
    Ok((key, n_points, counts))
}
