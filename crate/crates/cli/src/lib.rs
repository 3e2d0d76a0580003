//! Command implementations behind the `antipodal` binary: generation of the
//! supported point configurations, half construction and search, exact
//! design verification, ±1 left-null index searches, association-scheme
//! analysis, and the three-row summary table.
//!
//! Every command is deterministic given its flags and seed; reports embed
//! the seed and carry all exact values as reduced-fraction strings.

pub mod formats;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Instant;

use antipodal_core::error::CoreError;
use antipodal_core::exact::{parse_rational, rational_token, Rational};
use antipodal_core::harmonic::{characteristic_matrix, harm_dim, CharacteristicMatrix};
use antipodal_core::leech::{construct_tight7, generate_leech_min, LeechSet};
use antipodal_core::points::{HalfSelection, ObstructionCertificate, PointSet};
use antipodal_core::roots::{
    brute_force_half_search, construct_half, generate_roots, HalfOutcome, RootFamily,
    SearchOutcome,
};
use antipodal_core::scheme::{
    half_parity_obstruction, inner_distribution, intersection_numbers, CheckMode, ClassSpec,
};
use antipodal_core::verify::{
    gegenbauer_moment_from_histogram, inner_histogram, local_search_half, sign_kernel_search,
    sum_vector, InnerHistogram, SignSearchOptions, SignSearchStatus,
};
use num_traits::Zero;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_OBSTRUCTION: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

/// Characteristic matrices above this entry count are not materialized;
/// the search reports infeasible instead of thrashing memory.
pub const MAX_CHAR_ENTRIES: usize = 40_000_000;

/// Default seed documented for the reproducible searches.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug)]
pub enum CliError {
    Io(std::io::Error),
    Parse(String),
    Core(CoreError),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

/// A generatable configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Root(RootFamily),
    Golay,
    Leech,
    Tight7,
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Root(f) => f.name(),
            Target::Golay => "golay".into(),
            Target::Leech => "leech".into(),
            Target::Tight7 => "tight7".into(),
        }
    }
}

/// Parses `A 4`, `D 12`, `E 8`, `golay`, `leech`, `tight7`.
pub fn parse_target(args: &[String]) -> Result<Target, CliError> {
    let usage = || {
        CliError::Usage(
            "expected a target: `A <l>`, `D <n>`, `E <m>`, `golay`, `leech`, or `tight7`".into(),
        )
    };
    match args {
        [one] => match one.to_ascii_lowercase().as_str() {
            "golay" => Ok(Target::Golay),
            "leech" => Ok(Target::Leech),
            "tight7" => Ok(Target::Tight7),
            _ => Err(usage()),
        },
        [fam, param] => {
            let p: usize = param.parse().map_err(|_| usage())?;
            let family = match fam.to_ascii_uppercase().as_str() {
                "A" => RootFamily::A(p),
                "D" => RootFamily::D(p),
                "E" => RootFamily::E(p),
                _ => return Err(usage()),
            };
            family
                .validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Target::Root(family))
        }
        _ => Err(usage()),
    }
}

/// Structured machine-readable report written next to human output.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub target: Option<String>,
    pub inputs: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub threads: usize,
    pub status: String,
    pub exit_code: i32,
    pub timings_ms: BTreeMap<String, u128>,
    pub values: serde_json::Value,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            tool: "antipodal",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            target: None,
            inputs: BTreeMap::new(),
            seed: None,
            threads: rayon::current_num_threads(),
            status: "ok".into(),
            exit_code: EXIT_OK,
            timings_ms: BTreeMap::new(),
            values: serde_json::Value::Null,
        }
    }

    pub fn write_if(&self, path: Option<&Path>) -> Result<(), CliError> {
        if let Some(p) = path {
            let text = serde_json::to_string_pretty(self)
                .map_err(|e| CliError::Parse(e.to_string()))?;
            fs::write(p, text + "\n")?;
        }
        Ok(())
    }
}

fn certificate_json(cert: &ObstructionCertificate) -> serde_json::Value {
    serde_json::json!({
        "kind": cert.kind.to_string(),
        "functional": format!("{:?}", cert.functional),
        "pair_sum": rational_token(&cert.pair_sum),
        "module_gcd": rational_token(&cert.module_gcd),
        "detail": cert.detail,
    })
}

fn vector_tokens(v: &antipodal_core::exact::ExactVector) -> Vec<String> {
    v.coords().iter().map(|c| c.to_string()).collect()
}

/// Materializes the points for a target. Leech-backed targets return the
/// carrier so half construction can reuse the code structure.
pub enum Generated {
    Plain(PointSet),
    Leech(Box<LeechSet>),
    Tight7(PointSet),
}

impl Generated {
    pub fn points(&self) -> &PointSet {
        match self {
            Generated::Plain(p) | Generated::Tight7(p) => p,
            Generated::Leech(l) => &l.points,
        }
    }
}

pub fn build_target(target: Target) -> Result<Generated, CliError> {
    match target {
        Target::Root(f) => Ok(Generated::Plain(generate_roots(f)?)),
        Target::Leech => Ok(Generated::Leech(Box::new(generate_leech_min()?))),
        Target::Tight7 => {
            let leech = generate_leech_min()?;
            Ok(Generated::Tight7(construct_tight7(&leech)?))
        }
        Target::Golay => Err(CliError::Usage(
            "the Golay code is not a point set; use `generate golay`".into(),
        )),
    }
}

/// `generate <target> --out <path>`: writes the canonical point-set file
/// (or the code file for `golay`) and prints count and norm.
pub fn cmd_generate(
    target: Target,
    out: &Path,
    report_path: Option<&Path>,
) -> Result<i32, CliError> {
    let mut report = Report::new("generate");
    report.target = Some(target.name());
    let t0 = Instant::now();

    if target == Target::Golay {
        let code = antipodal_core::golay::generate_golay();
        let mut text = String::new();
        use std::fmt::Write as _;
        let _ = writeln!(text, "{}", formats::GOLAY_MAGIC);
        let _ = writeln!(text, "words 4096");
        let _ = writeln!(text, "octads {}", code.octads.len());
        for row in &code.generator {
            let bits: String = (0..24)
                .map(|b| if row >> b & 1 == 1 { '1' } else { '0' })
                .collect();
            let _ = writeln!(text, "{bits}");
        }
        fs::write(out, &text)?;
        let half = code.half();
        let sums = antipodal_core::golay::GolayCode::coordinate_sums(&half);
        println!(
            "golay: 4096 codewords, 759 octads, generator written to {}",
            out.display()
        );
        report.timings_ms.insert("total".into(), t0.elapsed().as_millis());
        report.values = serde_json::json!({
            "codewords": 4096,
            "octads": 759,
            "half_size": half.len(),
            "half_coordinate_sums": sums.to_vec(),
        });
        report.write_if(report_path)?;
        return Ok(EXIT_OK);
    }

    let generated = build_target(target)?;
    let set = generated.points();
    fs::write(out, formats::write_pointset(set))?;
    println!(
        "{}: {} points, dim {}, norm2 {}, written to {}",
        target.name(),
        set.len(),
        set.dim(),
        rational_token(set.norm2()),
        out.display()
    );
    report.timings_ms.insert("total".into(), t0.elapsed().as_millis());
    report.values = serde_json::json!({
        "count": set.len(),
        "dim": set.dim(),
        "norm2": rational_token(set.norm2()),
        "pairs": set.n_pairs(),
        "pointset_key": format!("{:016x}", formats::pointset_key(set)),
    });
    report.write_if(report_path)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfMethod {
    Construct,
    LocalSearch,
    BruteForce,
}

impl HalfMethod {
    pub fn parse(s: &str) -> Result<HalfMethod, CliError> {
        match s {
            "construct" => Ok(HalfMethod::Construct),
            "local-search" => Ok(HalfMethod::LocalSearch),
            "brute-force" => Ok(HalfMethod::BruteForce),
            other => Err(CliError::Usage(format!(
                "unknown method `{other}` (construct | local-search | brute-force)"
            ))),
        }
    }
}

/// `half <target> --method …`: writes the point set next to the selection,
/// plus a report with the exact sum vector. Obstructions exit 2 with the
/// certificate; exhausted searches exit 3.
#[allow(clippy::too_many_arguments)]
pub fn cmd_half(
    target: Target,
    method: HalfMethod,
    seed: u64,
    restarts: usize,
    limit: usize,
    out: &Path,
    report_path: Option<&Path>,
) -> Result<i32, CliError> {
    let mut report = Report::new("half");
    report.target = Some(target.name());
    report.seed = Some(seed);
    let t0 = Instant::now();

    let generated = build_target(target)?;
    let set = generated.points();

    let outcome: Result<HalfSelection, (String, serde_json::Value, i32)> = match method {
        HalfMethod::Construct => match (&generated, target) {
            (Generated::Leech(l), _) => Ok(l.construct_half()),
            (_, Target::Root(f)) => {
                let (_, res) = construct_half(f)?;
                match res {
                    HalfOutcome::Half(sel) => Ok(sel),
                    HalfOutcome::Obstructed(cert) => {
                        let ok = cert.reverify(set);
                        Err((
                            "obstruction".into(),
                            serde_json::json!({
                                "certificate": certificate_json(&cert),
                                "reverified": ok,
                            }),
                            EXIT_OBSTRUCTION,
                        ))
                    }
                }
            }
            (_, Target::Tight7) => {
                return Err(CliError::Usage(
                    "no closed-form half is known for tight7; use --method local-search".into(),
                ))
            }
            _ => unreachable!(),
        },
        HalfMethod::LocalSearch => {
            let res = local_search_half(set, seed, restarts);
            match res.selection {
                Some(sel) => Ok(sel),
                None => Err((
                    "exhausted".into(),
                    serde_json::json!({
                        "restarts_used": res.restarts_used,
                        "steps": res.steps,
                    }),
                    EXIT_EXHAUSTED,
                )),
            }
        }
        HalfMethod::BruteForce => match brute_force_half_search(set, limit) {
            Ok(SearchOutcome::Found(sel)) => Ok(sel),
            Ok(SearchOutcome::ExhaustedNone { enumerated }) => Err((
                "exhausted".into(),
                serde_json::json!({ "enumerated": enumerated }),
                EXIT_EXHAUSTED,
            )),
            Err(CoreError::TooLarge(msg)) => Err((
                "infeasible".into(),
                serde_json::json!({ "reason": msg }),
                EXIT_INFEASIBLE,
            )),
            Err(e) => return Err(e.into()),
        },
    };

    report.timings_ms.insert("search".into(), t0.elapsed().as_millis());

    match outcome {
        Ok(sel) => {
            let sum = sum_vector(set, &sel);
            let points_name = format!(
                "{}.points",
                out.file_stem().and_then(|s| s.to_str()).unwrap_or("half")
            );
            let points_path = out
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(&points_name);
            fs::write(&points_path, formats::write_pointset(set))?;
            fs::write(out, formats::write_selection(set, &sel, &points_name))?;
            println!(
                "{}: selected {} of {} points; sum is {}; selection written to {}",
                target.name(),
                sel.len(),
                set.len(),
                if sum.is_zero() { "the zero vector" } else { "nonzero" },
                out.display()
            );
            report.values = serde_json::json!({
                "selected": sel.len(),
                "sum_vector": vector_tokens(&sum),
                "sum_is_zero": sum.is_zero(),
                "pointset_file": points_name,
            });
            report.write_if(report_path)?;
            Ok(EXIT_OK)
        }
        Err((status, values, code)) => {
            println!("{}: {status}", target.name());
            report.status = status;
            report.exit_code = code;
            report.values = values;
            report.write_if(report_path)?;
            Ok(code)
        }
    }
}

/// Parses `1,2,4` plus `a..b` ranges, e.g. `1..7` or `1,2,5..9`.
pub fn parse_indices(spec: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a
                .parse()
                .map_err(|_| CliError::Usage(format!("bad index range `{part}`")))?;
            let b: usize = b
                .parse()
                .map_err(|_| CliError::Usage(format!("bad index range `{part}`")))?;
            if a > b {
                return Err(CliError::Usage(format!("empty index range `{part}`")));
            }
            out.extend(a..=b);
        } else {
            out.push(
                part.parse()
                    .map_err(|_| CliError::Usage(format!("bad index `{part}`")))?,
            );
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no indices given".into()));
    }
    Ok(out)
}

/// Loads either a selection file (set + half) or a plain point-set file.
pub fn load_input(path: &Path) -> Result<(PointSet, Option<HalfSelection>), CliError> {
    let text = fs::read_to_string(path)?;
    let first = text.lines().next().unwrap_or_default();
    if first == formats::SELECTION_MAGIC {
        let (set, sel) = formats::load_selection(path)?;
        Ok((set, Some(sel)))
    } else if first == formats::POINTSET_MAGIC {
        Ok((formats::read_pointset(&text)?, None))
    } else {
        Err(CliError::Parse(format!(
            "unrecognized file header `{first}`"
        )))
    }
}

/// Builds the ordered-pair histogram, honoring a cache file when it matches
/// the set's content key (full-set histograms only; halves are cheap at the
/// scales where caching matters and depend on the selection).
fn histogram_with_cache(
    set: &PointSet,
    sel: Option<&HalfSelection>,
    cache: Option<&Path>,
) -> Result<InnerHistogram, CliError> {
    let key = formats::pointset_key(set);
    if sel.is_none() {
        if let Some(cpath) = cache {
            if let Ok(text) = fs::read_to_string(cpath) {
                if let Ok((ck, n_points, counts)) = formats::read_histogram_cache(&text) {
                    if ck == key {
                        return Ok(InnerHistogram {
                            counts: counts.into_iter().collect(),
                            n_points,
                        });
                    }
                }
            }
        }
    }
    let hist = inner_histogram(set, sel)?;
    if sel.is_none() {
        if let Some(cpath) = cache {
            let mut counts: Vec<(i64, u64)> =
                hist.counts.iter().map(|(&k, &v)| (k, v)).collect();
            counts.sort_unstable();
            fs::write(
                cpath,
                formats::write_histogram_cache(key, hist.n_points, &counts),
            )?;
        }
    }
    Ok(hist)
}

/// `verify <file> --indices T`: exact per-index moments and verdicts.
pub fn cmd_verify(
    input: &Path,
    indices: &[usize],
    report_path: Option<&Path>,
    cache: Option<&Path>,
) -> Result<i32, CliError> {
    let mut report = Report::new("verify");
    report
        .inputs
        .insert("input".into(), input.display().to_string());
    let (set, sel) = load_input(input)?;
    let t0 = Instant::now();
    let hist = histogram_with_cache(&set, sel.as_ref(), cache)?;
    report
        .timings_ms
        .insert("histogram".into(), t0.elapsed().as_millis());

    let mut rows = Vec::new();
    for &i in indices {
        let m = gegenbauer_moment_from_histogram(&set, &hist, i);
        let zero = m.is_zero();
        println!(
            "index {i}: moment {} -> {}",
            rational_token(&m),
            if zero { "zero" } else { "nonzero" }
        );
        rows.push(serde_json::json!({
            "index": i,
            "moment": rational_token(&m),
            "zero": zero,
        }));
    }
    let mut values = serde_json::json!({ "moments": rows });
    if let Some(s) = &sel {
        let sum = sum_vector(&set, s);
        values["sum_vector"] = serde_json::json!(vector_tokens(&sum));
        values["sum_is_zero"] = serde_json::json!(sum.is_zero());
    }
    report.values = values;
    report.write_if(report_path)?;
    Ok(EXIT_OK)
}

/// Outcome summary of one index search, shared by `search-index` and the
/// table pipeline.
#[derive(Debug, Serialize)]
pub struct IndexSearchSummary {
    pub index: usize,
    pub rows: usize,
    pub cols: usize,
    pub status: String,
    pub rank: Option<usize>,
    pub kernel_dim: Option<usize>,
    pub kernel_dim_lower: Option<usize>,
    pub enumerated: u64,
    pub notes: String,
}

/// Writes a characteristic matrix in the plain text matrix format: header
/// (`matrix v1`, rows, cols, scale) and one row of integer entries per
/// point; true entries are the integers divided by `denom^degree`.
pub fn dump_characteristic_matrix(
    h: &CharacteristicMatrix,
    path: &Path,
) -> Result<(), CliError> {
    let Some(m) = h.as_int() else {
        return Err(CliError::Usage(
            "matrix export supports rational-coordinate sets only".into(),
        ));
    };
    let mut text = String::new();
    use std::fmt::Write as _;
    let _ = writeln!(text, "matrix v1");
    let _ = writeln!(text, "rows {}", m.rows());
    let _ = writeln!(text, "cols {}", m.cols());
    let _ = writeln!(text, "scale {}^{}", h.denom, h.degree);
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "{}", row.join(" "));
    }
    fs::write(path, text)?;
    Ok(())
}

/// Runs the characteristic-matrix build and ±1 left-null search for one
/// index, with feasibility guards that refuse to materialize matrices whose
/// kernel is provably beyond the enumeration cap (rows − cols > k_max) or
/// whose size exceeds the memory cap.
pub fn run_index_search(
    set: &PointSet,
    sel: &HalfSelection,
    index: usize,
    kmax: usize,
) -> Result<IndexSearchSummary, CliError> {
    run_index_search_with_dump(set, sel, index, kmax, None)
}

/// `run_index_search` plus an optional matrix export once the matrix is
/// materialized (infeasible guards fire before any export).
pub fn run_index_search_with_dump(
    set: &PointSet,
    sel: &HalfSelection,
    index: usize,
    kmax: usize,
    dump: Option<&Path>,
) -> Result<IndexSearchSummary, CliError> {
    if index == 0 {
        return Err(CliError::Usage(
            "index 0 is the constant function; the design test needs index >= 1".into(),
        ));
    }
    let rows = set.n_pairs();
    let cols = harm_dim(set.dim(), index);
    let k_floor = rows.saturating_sub(cols);

    if rows.saturating_mul(cols) > MAX_CHAR_ENTRIES {
        return Ok(IndexSearchSummary {
            index,
            rows,
            cols,
            status: "infeasible".into(),
            rank: None,
            kernel_dim: None,
            kernel_dim_lower: Some(k_floor),
            enumerated: 0,
            notes: format!(
                "characteristic matrix would hold {} entries, over the \
                 materialization cap {MAX_CHAR_ENTRIES}; kernel dimension \
                 not certified (at least rows - cols = {k_floor})",
                rows * cols
            ),
        });
    }

    // Materialize (and export, when asked) before the kernel-size guard so
    // small matrices remain inspectable even when enumeration is off the
    // table.
    let h = characteristic_matrix(set, Some(sel), index)?;
    if let Some(path) = dump {
        dump_characteristic_matrix(&h, path)?;
    }
    if k_floor > kmax {
        return Ok(IndexSearchSummary {
            index,
            rows,
            cols,
            status: "infeasible".into(),
            rank: None,
            kernel_dim: None,
            kernel_dim_lower: Some(k_floor),
            enumerated: 0,
            notes: format!(
                "left kernel has dimension at least rows - cols = {k_floor} \
                 (exactly that if the matrix has full column rank), beyond the \
                 enumeration cap {kmax}"
            ),
        });
    }
    let hint: Option<CharacteristicMatrix> = if index % 2 == 1 && index > 1 {
        Some(characteristic_matrix(set, Some(sel), 1)?)
    } else {
        None
    };
    let res = sign_kernel_search(
        &h,
        hint.as_ref(),
        SignSearchOptions {
            k_max: kmax,
            ..Default::default()
        },
    )?;
    let status = match res.status {
        SignSearchStatus::Found => "found",
        SignSearchStatus::None => "none",
        SignSearchStatus::Infeasible => "infeasible",
    };
    Ok(IndexSearchSummary {
        index,
        rows,
        cols,
        status: status.into(),
        rank: res.rank,
        kernel_dim: res.kernel_dim,
        kernel_dim_lower: res.kernel_dim_lower,
        enumerated: res.enumerated,
        notes: res.notes,
    })
}

/// `search-index <selection> --index i`: exit 0 when a witness half exists,
/// 3 when the enumeration certifies none, 4 when infeasible.
pub fn cmd_search_index(
    selection: &Path,
    index: usize,
    kmax: usize,
    report_path: Option<&Path>,
    dump_matrix: Option<&Path>,
) -> Result<i32, CliError> {
    let mut report = Report::new("search-index");
    report
        .inputs
        .insert("selection".into(), selection.display().to_string());
    let (set, sel) = formats::load_selection(selection)?;
    let t0 = Instant::now();
    let summary = run_index_search_with_dump(&set, &sel, index, kmax, dump_matrix)?;
    report
        .timings_ms
        .insert("search".into(), t0.elapsed().as_millis());

    println!(
        "index {}: {} (matrix {}x{}, rank {}, kernel {}, enumerated {})",
        summary.index,
        summary.status,
        summary.rows,
        summary.cols,
        summary
            .rank
            .map_or("uncertified".into(), |r| r.to_string()),
        summary
            .kernel_dim
            .or(summary.kernel_dim_lower)
            .map_or("unknown".into(), |k| k.to_string()),
        summary.enumerated
    );
    println!("  {}", summary.notes);

    let code = match summary.status.as_str() {
        "found" => EXIT_OK,
        "none" => EXIT_EXHAUSTED,
        _ => EXIT_INFEASIBLE,
    };
    report.status = summary.status.clone();
    report.exit_code = code;
    report.values = serde_json::to_value(&summary).map_err(|e| CliError::Parse(e.to_string()))?;
    report.write_if(report_path)?;
    Ok(code)
}

/// Default class spec for a target's full configuration.
pub fn default_spec(set: &PointSet) -> Result<ClassSpec, CliError> {
    // Derive from the actual distribution: 1 first, then the distinct
    // normalized values in descending order.
    let dist = inner_distribution(set, None)?;
    let mut values: Vec<Rational> = dist.into_iter().map(|(v, _)| v).collect();
    values.sort_by(|a, b| b.cmp(a));
    values.retain(|v| *v != Rational::from_integer(1.into()));
    let mut all = vec![Rational::from_integer(1.into())];
    all.extend(values);
    Ok(ClassSpec::new(all)?)
}

pub fn parse_spec(s: &str) -> Result<ClassSpec, CliError> {
    let values: Result<Vec<Rational>, _> = s.split(',').map(|t| parse_rational(t.trim())).collect();
    Ok(ClassSpec::new(values.map_err(|e| CliError::Parse(e.to_string()))?)?)
}

/// `scheme <target|file>`: intersection table, CSV export, parity witnesses.
#[allow(clippy::too_many_arguments)]
pub fn cmd_scheme(
    set: &PointSet,
    label: &str,
    spec: Option<ClassSpec>,
    mode_flag: &str,
    sample: usize,
    csv_path: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<i32, CliError> {
    let mut report = Report::new("scheme");
    report.target = Some(label.to_string());

    let spec = match spec {
        Some(s) => s,
        None => default_spec(set)?,
    };
    let mode = match mode_flag {
        "full" => CheckMode::Full,
        "sampled" => CheckMode::Sampled { per_class: sample },
        "auto" => {
            if set.len() <= 600 {
                CheckMode::Full
            } else {
                CheckMode::Sampled { per_class: sample }
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown mode `{other}` (full | sampled | auto)"
            )))
        }
    };
    if matches!(mode, CheckMode::Full) && set.len() > 2000 {
        println!("full constancy checking on {} points is refused; use --mode sampled", set.len());
        report.status = "infeasible".into();
        report.exit_code = EXIT_INFEASIBLE;
        report.write_if(report_path)?;
        return Ok(EXIT_INFEASIBLE);
    }

    let t0 = Instant::now();
    let table = intersection_numbers(set, &spec, mode)?;
    let witnesses = half_parity_obstruction(set, &spec, mode)?;
    report
        .timings_ms
        .insert("analysis".into(), t0.elapsed().as_millis());

    let n = spec.len();
    if let Some(csv) = csv_path {
        let mut text = String::from("i,j,k,p,well_defined\n");
        use std::fmt::Write as _;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let _ = writeln!(
                        text,
                        "{i},{j},{k},{},{}",
                        table.p(i, j, k),
                        table.well_defined(i, j, k)
                    );
                }
            }
        }
        fs::write(csv, text)?;
    }

    let spec_strings: Vec<String> = spec.values().iter().map(rational_token).collect();
    println!("classes: {}", spec_strings.join(", "));
    println!(
        "mode: {:?}; pairs checked per class: {:?}",
        mode, table.pairs_checked
    );
    if witnesses.is_empty() {
        println!("no parity witnesses: the argument does not obstruct these classes");
    }
    for w in &witnesses {
        println!(
            "parity witness: p~({},{})^{} = {} ({}; checked {} pairs): no half is a \
             symmetric association scheme with these classes",
            w.i,
            w.j,
            w.k,
            w.p_tilde,
            if w.constant { "constant" } else { "NOT constant" },
            w.pairs_checked
        );
    }

    report.values = serde_json::json!({
        "classes": spec_strings,
        "valencies": table.valencies,
        "witnesses": witnesses.iter().map(|w| serde_json::json!({
            "i": w.i, "j": w.j, "k": w.k,
            "p_tilde": w.p_tilde,
            "constant": w.constant,
            "pairs_checked": w.pairs_checked,
        })).collect::<Vec<_>>(),
    });
    report.write_if(report_path)?;
    Ok(EXIT_OK)
}

/// One row of the summary table.
#[derive(Debug, Serialize)]
pub struct TableRow {
    pub design: String,
    pub existence: Vec<usize>,
    pub nonexistence: Vec<usize>,
    pub unresolved: Vec<usize>,
    pub details: Vec<serde_json::Value>,
}

/// `table1`: runs the full pipeline for E₈, the tight 7-design on S^22, and
/// the tight 11-design on S^23 (Leech minimal vectors), and reports per odd
/// index whether a half that is also an index-i design exists, does not, or
/// is beyond the configured caps. Infeasible cells are marked, never guessed.
pub fn cmd_table1(seed: u64, report_path: Option<&Path>) -> Result<i32, CliError> {
    let mut report = Report::new("table1");
    report.seed = Some(seed);
    let t_all = Instant::now();
    let mut rows: Vec<TableRow> = Vec::new();

    // E8.
    {
        let (set, outcome) = construct_half(RootFamily::E(8))?;
        let sel = match outcome {
            HalfOutcome::Half(s) => s,
            HalfOutcome::Obstructed(_) => unreachable!("E8 has a constructed half"),
        };
        let mut row = TableRow {
            design: "E8".into(),
            existence: vec![],
            nonexistence: vec![],
            unresolved: vec![],
            details: vec![],
        };
        if sum_vector(&set, &sel).is_zero() {
            row.existence.push(1);
        }
        for index in [3usize, 5] {
            let s = run_index_search(&set, &sel, index, 26)?;
            match s.status.as_str() {
                "none" => row.nonexistence.push(index),
                "found" => row.existence.push(index),
                _ => row.unresolved.push(index),
            }
            row.details
                .push(serde_json::to_value(&s).map_err(|e| CliError::Parse(e.to_string()))?);
        }
        rows.push(row);
    }

    // Tight 7-design on S^22.
    let leech = generate_leech_min()?;
    {
        let t7 = construct_tight7(&leech)?;
        let mut row = TableRow {
            design: "tight 7-design on S^22".into(),
            existence: vec![],
            nonexistence: vec![],
            unresolved: vec![],
            details: vec![],
        };
        let found = local_search_half(&t7, seed, 100);
        match found.selection {
            Some(sel) if sum_vector(&t7, &sel).is_zero() => {
                row.existence.push(1);
                row.details.push(serde_json::json!({
                    "index": 1,
                    "method": "local-search",
                    "seed": seed,
                    "restarts_used": found.restarts_used,
                    "steps": found.steps,
                }));
                for index in [3usize, 5] {
                    let s = run_index_search(&t7, &sel, index, 26)?;
                    match s.status.as_str() {
                        "none" => row.nonexistence.push(index),
                        "found" => row.existence.push(index),
                        _ => row.unresolved.push(index),
                    }
                    row.details.push(
                        serde_json::to_value(&s).map_err(|e| CliError::Parse(e.to_string()))?,
                    );
                }
            }
            _ => {
                row.unresolved.extend([1, 3, 5]);
                row.details.push(serde_json::json!({
                    "index": 1,
                    "method": "local-search",
                    "seed": seed,
                    "status": "not found within restarts",
                }));
            }
        }
        rows.push(row);
    }

    // Tight 11-design on S^23: the Leech minimal vectors.
    {
        let mut row = TableRow {
            design: "tight 11-design on S^23".into(),
            existence: vec![],
            nonexistence: vec![],
            unresolved: vec![],
            details: vec![],
        };
        let sel = leech.construct_half();
        let sum = sum_vector(&leech.points, &sel);
        if sum.is_zero() {
            row.existence.push(1);
        }
        row.details.push(serde_json::json!({
            "index": 1,
            "method": "construct",
            "sum_is_zero": sum.is_zero(),
        }));
        for index in [3usize, 5, 7, 9] {
            let s = run_index_search(&leech.points, &sel, index, 26)?;
            match s.status.as_str() {
                "none" => row.nonexistence.push(index),
                "found" => row.existence.push(index),
                _ => row.unresolved.push(index),
            }
            row.details
                .push(serde_json::to_value(&s).map_err(|e| CliError::Parse(e.to_string()))?);
        }
        rows.push(row);
    }

    let fmt_list = |v: &[usize]| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    };
    println!(
        "{:<26} {:<12} {:<14} Unknown/Infeasible",
        "", "Existence", "Nonexistence"
    );
    for row in &rows {
        println!(
            "{:<26} {:<12} {:<14} {}",
            row.design,
            fmt_list(&row.existence),
            fmt_list(&row.nonexistence),
            fmt_list(&row.unresolved)
        );
    }

    report
        .timings_ms
        .insert("total".into(), t_all.elapsed().as_millis());
    report.values =
        serde_json::to_value(&rows).map_err(|e| CliError::Parse(e.to_string()))?;
    report.write_if(report_path)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_parsing() {
        let t = parse_target(&["E".into(), "8".into()]).unwrap();
        assert_eq!(t, Target::Root(RootFamily::E(8)));
        assert_eq!(parse_target(&["leech".into()]).unwrap(), Target::Leech);
        assert!(parse_target(&["E".into(), "9".into()]).is_err());
        assert!(parse_target(&["B".into(), "2".into()]).is_err());
        assert!(parse_target(&[]).is_err());
    }

    #[test]
    fn index_parsing() {
        assert_eq!(parse_indices("1,2,4,6").unwrap(), vec![1, 2, 4, 6]);
        assert_eq!(parse_indices("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_indices("1,3..5").unwrap(), vec![1, 3, 4, 5]);
        assert!(parse_indices("").is_err());
        assert!(parse_indices("5..2").is_err());
    }

    #[test]
    fn default_spec_for_e8_matches_paper_order() {
        let set = generate_roots(RootFamily::E(8)).unwrap();
        let spec = default_spec(&set).unwrap();
        let toks: Vec<String> = spec.values().iter().map(rational_token).collect();
        assert_eq!(toks, vec!["1/1", "1/2", "0/1", "-1/2", "-1/1"]);
    }
}
