//! `ak`: enumerate trivalent graphs, compute graph-homology dimensions, and
//! print surgery plans.
//!
//! Exit codes: 0 ok, 2 bad input, 3 infeasible vertex typing, 4 resource
//! limit, 5 oracle or rank cross-check mismatch.

mod config;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ak_core::homology::{self, HomologyOptions, OracleCheck};
use ak_core::multigraph::{enumerate_trivalent, io as gio, EnumerateOptions};
use ak_core::oracle::{self, OracleOptions};
use ak_core::surgery;
use ak_core::{Convention, Error, Limits, Parallelism, TadpolePolicy};
use clap::{Parser, Subcommand, ValueEnum};

use crate::config::Config;

#[derive(Parser, Debug)]
#[command(name = "ak", version, about = "Trivalent graph homology and Y-link surgery plans")]
struct Cli {
    /// Optional TOML config; command-line flags and environment variables win.
    #[arg(long, global = true, env = "AK_CONFIG")]
    config: Option<PathBuf>,
    /// Ceiling on the number of isomorphism classes.
    #[arg(long, global = true, env = "AK_MAX_CLASSES")]
    max_classes: Option<usize>,
    /// Ceiling on stored matrix entries during elimination.
    #[arg(long, global = true, env = "AK_MAX_MATRIX_ENTRIES")]
    max_matrix_entries: Option<usize>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, env = "AK_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write one canonical representative per isomorphism class.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Tadpoles::Exclude)]
        tadpoles: Tadpoles,
        #[arg(long, value_enum, default_value_t = GraphFormat::Jsonl)]
        format: GraphFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dimension report for A_k under a sign convention.
    Dim {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Conv::Even)]
        convention: Conv,
        #[arg(long, value_enum, default_value_t = Tadpoles::Exclude)]
        tadpoles: Tadpoles,
        /// Recompute with the labelled-graph oracle (k <= 2) and fail on mismatch.
        #[arg(long)]
        oracle_check: bool,
        /// Attach a zero or nonzero certificate for every enumerated class.
        #[arg(long)]
        certify: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the relation matrix in MatrixMarket coordinate format.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Surgery plan for a graph file in an ambient dimension d.
    Plan {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "ambient-dim")]
        ambient_dim: u32,
        #[arg(long, value_enum, default_value_t = PlanFormat::Json)]
        format: PlanFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tadpoles {
    Exclude,
    Include,
}

impl From<Tadpoles> for TadpolePolicy {
    fn from(t: Tadpoles) -> Self {
        match t {
            Tadpoles::Exclude => TadpolePolicy::Exclude,
            Tadpoles::Include => TadpolePolicy::Include,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Conv {
    Even,
    Odd,
}

impl From<Conv> for Convention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Even => Convention::Even,
            Conv::Odd => Convention::Odd,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Jsonl,
    GraphText,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlanFormat {
    Json,
    /// Per-vertex Y-link view as JSON.
    Ylink,
    Text,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => 4,
            Error::Infeasible { .. } => 3,
            Error::RankMismatch { .. } => 5,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn write_failure(e: io::Error) -> Failure {
    Failure { code: 2, message: format!("write failed: {e}") }
}

struct Settings {
    limits: Limits,
    parallelism: Parallelism,
}

fn settings(cli: &Cli) -> Result<Settings, Failure> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let defaults = Limits::default();
    let limits = Limits {
        max_classes: cli.max_classes.or(cfg.max_classes).unwrap_or(defaults.max_classes),
        max_matrix_entries: cli.max_matrix_entries.or(cfg.max_matrix_entries).unwrap_or(defaults.max_matrix_entries),
    };
    let threads = cli.threads.or(cfg.threads);
    let parallelism = match threads {
        Some(0) => return Err(Failure { code: 2, message: "--threads must be at least 1".into() }),
        Some(1) => Parallelism::Sequential,
        Some(n) => {
            // the global pool can only be configured once per process
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Parallelism::Parallel
        }
        None => Parallelism::Parallel,
    };
    Ok(Settings { limits, parallelism })
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).map_err(|e| io_failure(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_enumerate(
    s: &Settings,
    k: usize,
    tadpoles: Tadpoles,
    format: GraphFormat,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let opts = EnumerateOptions { policy: tadpoles.into(), max_classes: s.limits.max_classes, parallelism: s.parallelism };
    let graphs = enumerate_trivalent(k, opts)?;
    let mut w = output(out)?;
    for (i, g) in graphs.iter().enumerate() {
        let text = match format {
            GraphFormat::Jsonl => gio::to_jsonl_line(g) + "\n",
            GraphFormat::GraphText => {
                let sep = if i == 0 { "" } else { "\n" };
                format!("{sep}# class {i}\n{}", gio::to_text(g))
            }
            GraphFormat::Dot => gio::to_dot(g).replacen("graph G ", &format!("graph class{i} "), 1),
        };
        w.write_all(text.as_bytes()).map_err(write_failure)?;
    }
    w.flush().map_err(write_failure)
}

#[allow(clippy::too_many_arguments)]
fn run_dim(
    s: &Settings,
    k: usize,
    convention: Convention,
    policy: TadpolePolicy,
    oracle_check: bool,
    certify: bool,
    json: Option<&Path>,
    dump_matrix: Option<&Path>,
) -> Result<(), Failure> {
    if oracle_check && k > oracle::MAX_K {
        return Err(Failure { code: 2, message: format!("--oracle-check supports k <= {} only", oracle::MAX_K) });
    }
    let opts = HomologyOptions { limits: s.limits, parallelism: s.parallelism };
    let comp = homology::compute(k, convention, policy, &opts)?;
    let mut report = comp.report();
    if certify {
        report.certificates = comp.certify_all()?;
    }
    let other = match policy {
        TadpolePolicy::Exclude => TadpolePolicy::Include,
        TadpolePolicy::Include => TadpolePolicy::Exclude,
    };
    report.tadpole_comparison = Some(homology::compute(k, convention, other, &opts)?.report().summary());

    if let Some(p) = dump_matrix {
        fs::write(p, comp.matrix.to_matrix_market()).map_err(|e| io_failure(p, e))?;
    }
    let mut mismatch = None;
    if oracle_check {
        let o = oracle::brute_dimension_with(
            k,
            convention,
            policy,
            &OracleOptions { paranoid: false, parallelism: s.parallelism, limits: s.limits },
        )?;
        let agree = o.dim == report.dimension;
        report.oracle_check = Some(OracleCheck { basis_size: o.basis_size, rank: o.rank, dimension: o.dim, agree });
        report.notes.push(if agree {
            format!("labelled-graph oracle agrees: dimension {}", o.dim)
        } else {
            format!("labelled-graph oracle disagrees: oracle {} vs pipeline {}", o.dim, report.dimension)
        });
        if !agree {
            mismatch = Some(Failure {
                code: 5,
                message: format!("oracle dimension {} differs from computed dimension {}", o.dim, report.dimension),
            });
        }
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    let mut w = output(json)?;
    w.write_all(text.as_bytes()).map_err(write_failure)?;
    w.flush().map_err(write_failure)?;
    match mismatch {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn run_plan(graph: &Path, d: u32, format: PlanFormat) -> Result<(), Failure> {
    let text = fs::read_to_string(graph).map_err(|e| io_failure(graph, e))?;
    let g = gio::parse_text(&text)?;
    let plan = surgery::plan(&g, d)?;
    let out = match format {
        PlanFormat::Json => serde_json::to_string_pretty(&plan).expect("plan serializes") + "\n",
        PlanFormat::Ylink => serde_json::to_string_pretty(&surgery::y_link_report(&plan)).expect("report serializes") + "\n",
        PlanFormat::Text => surgery::render_text(&plan),
    };
    let mut w = output(None)?;
    w.write_all(out.as_bytes()).map_err(write_failure)?;
    w.flush().map_err(write_failure)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let s = settings(&cli)?;
    match cli.command {
        Command::Enumerate { k, tadpoles, format, output } => run_enumerate(&s, k, tadpoles, format, output.as_deref()),
        Command::Dim { k, convention, tadpoles, oracle_check, certify, json, dump_matrix } => run_dim(
            &s,
            k,
            convention.into(),
            tadpoles.into(),
            oracle_check,
            certify,
            json.as_deref(),
            dump_matrix.as_deref(),
        ),
        Command::Plan { graph, ambient_dim, format } => run_plan(&graph, ambient_dim, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ak: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
