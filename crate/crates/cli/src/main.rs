use std::path::PathBuf;
use std::process::ExitCode;

use antipodal_cli::{
    cmd_generate, cmd_half, cmd_scheme, cmd_search_index, cmd_table1, cmd_verify, default_spec,
    load_input, parse_indices, parse_spec, parse_target, CliError, HalfMethod, DEFAULT_SEED,
    EXIT_USAGE,
};
use clap::{Parser, Subcommand};

/// Exact construction and verification of antipodal spherical configurations
/// and their zero-sum halves.
#[derive(Parser)]
#[command(name = "antipodal", version, about)]
struct Cli {
    /// Worker threads for partitionable phases (default: ANTIPODAL_THREADS
    /// or all cores). Output is independent of the thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point set (A l | D n | E m | leech | tight7) or the Golay code.
    Generate {
        /// Target, e.g. `E 8`, `D 12`, `leech`, `tight7`, `golay`.
        #[arg(num_args = 1..=2)]
        target: Vec<String>,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        /// Optional JSON report path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Construct or search for a zero-sum half of a target.
    Half {
        #[arg(num_args = 1..=2)]
        target: Vec<String>,
        /// construct | local-search | brute-force.
        #[arg(long, default_value = "construct")]
        method: String,
        /// Seed for local-search (deterministic given the seed).
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Restart budget for local-search.
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        /// Pair-count cap for brute-force enumeration.
        #[arg(long, default_value_t = 30)]
        limit: usize,
        /// Selection output file (the point set is written next to it).
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Verify harmonic-index design properties of a selection or point set.
    Verify {
        /// Selection file or point-set file.
        input: PathBuf,
        /// Indices, e.g. `1,2,4,6` or `1..7`.
        #[arg(long)]
        indices: String,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Histogram cache file (reused when the content key matches).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Search for a ±1 left-null vector of a characteristic matrix.
    SearchIndex {
        /// Selection file.
        selection: PathBuf,
        /// Harmonic degree to test.
        #[arg(long)]
        index: usize,
        /// Kernel-dimension cap for enumeration.
        #[arg(long, default_value_t = 26)]
        kmax: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Export the characteristic matrix for offline inspection.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Intersection numbers and half-scheme parity obstructions.
    Scheme {
        /// Target (`E 8`, `leech`, …) or a point-set file path.
        #[arg(num_args = 1..=2)]
        target: Vec<String>,
        /// Comma-separated normalized class values, value 1 first.
        #[arg(long)]
        spec: Option<String>,
        /// full | sampled | auto.
        #[arg(long, default_value = "auto")]
        mode: String,
        /// Pairs per class in sampled mode.
        #[arg(long, default_value_t = 40)]
        sample: usize,
        /// CSV output of the intersection table.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the full half-design pipeline for E8, the tight 7-design, and
    /// the tight 11-design, and print the summary table.
    Table1 {
        /// Seed for the tight-7 local search.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn init_threads(cli_threads: Option<usize>) {
    let n = cli_threads.or_else(|| {
        std::env::var("ANTIPODAL_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn run() -> Result<i32, CliError> {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match cli.command {
        Command::Generate { target, out, report } => {
            let t = parse_target(&target)?;
            cmd_generate(t, &out, report.as_deref())
        }
        Command::Half {
            target,
            method,
            seed,
            restarts,
            limit,
            out,
            report,
        } => {
            let t = parse_target(&target)?;
            let m = HalfMethod::parse(&method)?;
            cmd_half(t, m, seed, restarts, limit, &out, report.as_deref())
        }
        Command::Verify {
            input,
            indices,
            report,
            cache,
        } => {
            let idx = parse_indices(&indices)?;
            cmd_verify(&input, &idx, report.as_deref(), cache.as_deref())
        }
        Command::SearchIndex {
            selection,
            index,
            kmax,
            report,
            dump_matrix,
        } => cmd_search_index(&selection, index, kmax, report.as_deref(), dump_matrix.as_deref()),
        Command::Scheme {
            target,
            spec,
            mode,
            sample,
            csv,
            report,
        } => {
            // A single argument naming an existing file loads that file;
            // otherwise the argument list is a generation target.
            let (set, label) = if target.len() == 1 && PathBuf::from(&target[0]).is_file() {
                let path = PathBuf::from(&target[0]);
                let (set, _) = load_input(&path)?;
                (set, target[0].clone())
            } else {
                let t = parse_target(&target)?;
                let generated = antipodal_cli::build_target(t)?;
                (generated.points().clone(), t.name())
            };
            let spec = match spec {
                Some(s) => Some(parse_spec(&s)?),
                None => Some(default_spec(&set)?),
            };
            cmd_scheme(
                &set,
                &label,
                spec,
                &mode,
                sample,
                csv.as_deref(),
                report.as_deref(),
            )
        }
        Command::Table1 { seed, report } => cmd_table1(seed, report.as_deref()),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("antipodal: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
