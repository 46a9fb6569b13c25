//! Command-line front end.
//!
//! Subcommands: `mindist`, `grayseq`, `dedup`, `codeinfo`, `dual`, `equiv`.
//! Data goes to stdout, diagnostics to stderr. Exit codes are stable:
//! 0 success, 2 malformed input (parse errors carry a line number, bad
//! sequence parameters), 3 a refused size limit, 4 an invalid design,
//! 1 anything else.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::design::{
    complete_pair_design, fano_plane, parse_design, run_dedup_store, Design, DirStore,
};
use crate::equiv::{are_equivalent, render_code_set, EquivLimits};
use crate::error::{Error, Result};
use crate::gf2::{parse_generator_matrix, render_generator_matrix, DEFAULT_ENUM_LIMIT_K};
use crate::gray::{constant_weight_sequence, swap_deltas};
use crate::mindist::{min_distance, DistanceOptions, Engine};

#[derive(Parser)]
#[command(
    name = "lincode",
    version,
    about = "Workbench for binary linear codes: distances, constant-weight Gray sequences, \
             equivalence, and design-scheduled deduplication"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Gray,
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum distance of the code in a generator-matrix file
    Mindist {
        /// Enumeration engine
        #[arg(long, value_enum, default_value_t = Method::Gray)]
        method: Method,
        /// Worker threads (parallel method only)
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Abort once the distance is known to be at most this weight
        #[arg(long)]
        stop_at: Option<usize>,
        /// Largest dimension to enumerate
        #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT_K)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        file: PathBuf,
    },
    /// Emit the weight-t revolving-door sequence for word length k
    Grayseq {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        t: usize,
        /// Print 0/1 words (g_k first) instead of support sets
        #[arg(long, conflicts_with = "deltas")]
        words: bool,
        /// Print the swap pairs between consecutive words
        #[arg(long)]
        deltas: bool,
        /// With --deltas: print raw `out,in` pairs instead of sorted [a,b]
        #[arg(long, requires = "deltas")]
        machine: bool,
    },
    /// Deduplicate code libraries with a block-design schedule
    Dedup {
        /// `fano`, `complete`, or a design file path
        #[arg(long)]
        design: String,
        /// Survivor library output path
        #[arg(long)]
        out: PathBuf,
        /// Audit JSON output path (default: stdout)
        #[arg(long)]
        audit: Option<PathBuf>,
        /// Largest code length attempted by the equivalence search
        #[arg(long, default_value_t = EquivLimits::default().max_n)]
        max_n: usize,
        /// Largest dimension attempted by the equivalence search
        #[arg(long, default_value_t = EquivLimits::default().max_k)]
        max_k: usize,
        /// Library files, one per set, in precedence order
        #[arg(required = true)]
        libs: Vec<PathBuf>,
    },
    /// Basic facts about a code: dimensions, duality, weight enumerator
    Codeinfo {
        #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT_K)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        file: PathBuf,
    },
    /// Print a generator matrix of the dual code
    Dual { file: PathBuf },
    /// Decide permutation equivalence of two codes
    Equiv {
        #[arg(long, default_value_t = EquivLimits::default().max_n)]
        max_n: usize,
        #[arg(long, default_value_t = EquivLimits::default().max_k)]
        max_k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        file_a: PathBuf,
        file_b: PathBuf,
    },
}

/// Parses arguments from the process environment, runs the command, and
/// returns the process exit code.
#[must_use]
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        // Downstream closed the pipe; stop quietly like any line-oriented tool.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Stable mapping from error kinds to exit codes.
#[must_use]
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::BadWeightParams { .. }
        | Error::DuplicateId { .. }
        | Error::RankOutOfRange { .. }
        | Error::WeightMismatch { .. }
        | Error::InvalidDimensions { .. }
        | Error::RankDeficient { .. }
        | Error::LengthMismatch { .. } => 2,
        Error::EnumerationLimit { .. } | Error::EquivLimit { .. } | Error::WordWidthLimit { .. } => 3,
        Error::InvalidDesign { .. } => 4,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Mindist {
            method,
            workers,
            stop_at,
            max_k,
            format,
            file,
        } => cmd_mindist(method, workers, stop_at, max_k, format, &file),
        Cmd::Grayseq {
            k,
            t,
            words,
            deltas,
            machine,
        } => cmd_grayseq(k, t, words, deltas, machine),
        Cmd::Dedup {
            design,
            out,
            audit,
            max_n,
            max_k,
            libs,
        } => cmd_dedup(&design, &out, audit.as_deref(), max_n, max_k, &libs),
        Cmd::Codeinfo { max_k, format, file } => cmd_codeinfo(max_k, format, &file),
        Cmd::Dual { file } => cmd_dual(&file),
        Cmd::Equiv {
            max_n,
            max_k,
            format,
            file_a,
            file_b,
        } => cmd_equiv(max_n, max_k, format, &file_a, &file_b),
    }
}

fn read_matrix(path: &Path) -> Result<crate::gf2::GeneratorMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_generator_matrix(&text)
}

fn cmd_mindist(
    method: Method,
    workers: usize,
    stop_at: Option<usize>,
    max_k: usize,
    format: Format,
    file: &Path,
) -> Result<()> {
    let m = read_matrix(file)?;
    let engine = match method {
        Method::Direct => Engine::Direct,
        Method::Gray => Engine::Gray,
        Method::Parallel => Engine::Parallel,
    };
    let opts = DistanceOptions {
        max_k,
        stop_at,
        workers,
    };
    let report = min_distance(&m, engine, &opts)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        )?,
        Format::Text => {
            writeln!(out, "n = {}, k = {}", report.n, report.k)?;
            writeln!(
                out,
                "d = {}{}",
                report.d,
                if report.stopped_early {
                    " (upper bound, stopped early)"
                } else {
                    ""
                }
            )?;
            let combo: Vec<String> = report.witness_combo.iter().map(|i| i.to_string()).collect();
            writeln!(
                out,
                "witness = {} (rows {{{}}})",
                report.witness.to_row_string(),
                combo.join(",")
            )?;
            writeln!(out, "xor_row_ops = {}", report.xor_row_ops)?;
            writeln!(out, "codewords_enumerated = {}", report.codewords_enumerated)?;
            writeln!(out, "wall_time_ms = {}", report.wall_time_ms)?;
            writeln!(out, "workers = {}", report.workers)?;
        }
    }
    Ok(())
}

fn cmd_grayseq(k: usize, t: usize, words: bool, deltas: bool, machine: bool) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if deltas {
        for d in swap_deltas(k, t)? {
            if machine {
                writeln!(out, "{},{}", d.out_pos, d.in_pos)?;
            } else {
                writeln!(out, "[{},{}]", d.out_pos.min(d.in_pos), d.out_pos.max(d.in_pos))?;
            }
        }
    } else if words {
        for w in constant_weight_sequence(k, t)? {
            // Sequence words print g_k first (coordinate k leftmost).
            let s: String = w.to_row_string().chars().rev().collect();
            writeln!(out, "{s}")?;
        }
    } else {
        for w in constant_weight_sequence(k, t)? {
            let parts: Vec<String> = w.support().iter().map(|p| p.to_string()).collect();
            writeln!(out, "{{{}}}", parts.join(","))?;
        }
    }
    Ok(())
}

fn cmd_dedup(
    design_spec: &str,
    out: &Path,
    audit_path: Option<&Path>,
    max_n: usize,
    max_k: usize,
    libs: &[PathBuf],
) -> Result<()> {
    let design: Design = match design_spec {
        "fano" => fano_plane(),
        "complete" => complete_pair_design(libs.len()),
        path => parse_design(&std::fs::read_to_string(path)?)?,
    };
    let limits = EquivLimits { max_n, max_k };

    // Work on copies so purging never rewrites the user's input files.
    let workdir = tempfile::tempdir()?;
    let mut labels: Vec<String> = Vec::with_capacity(libs.len());
    for (i, lib) in libs.iter().enumerate() {
        let stem = lib
            .file_stem()
            .and_then(|s| s.to_str())
            .map(str::to_string)
            .unwrap_or_else(|| format!("set{}", i + 1));
        let mut label = stem.clone();
        let mut suffix = 1;
        while labels.contains(&label) {
            suffix += 1;
            label = format!("{stem}_{suffix}");
        }
        std::fs::copy(lib, workdir.path().join(format!("{label}.lib")))?;
        labels.push(label);
    }

    let mut store = DirStore::open(workdir.path().to_path_buf(), labels, limits.clone())?;
    let (union, audit) = run_dedup_store(&mut store, &design, &limits)?;

    std::fs::write(out, render_code_set(&union))?;
    let audit_json = serde_json::to_string(&audit).expect("audit serializes");
    match audit_path {
        Some(p) => std::fs::write(p, format!("{audit_json}\n"))?,
        None => writeln!(std::io::stdout().lock(), "{audit_json}")?,
    }
    Ok(())
}

fn cmd_codeinfo(max_k: usize, format: Format, file: &Path) -> Result<()> {
    let m = read_matrix(file)?;
    let enumerator = if m.k() <= max_k {
        Some(m.weight_enumerator(max_k)?)
    } else {
        None
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "n": m.n(),
                "k": m.k(),
                "rank": m.k(),
                "self_orthogonal": m.is_self_orthogonal(),
                "self_dual": m.is_self_dual(),
                "weight_enumerator": enumerator.as_ref().map(|e| e.counts().to_vec()),
            });
            writeln!(out, "{value}")?;
        }
        Format::Text => {
            writeln!(out, "n = {}", m.n())?;
            writeln!(out, "k = {}", m.k())?;
            writeln!(out, "rank = {}", m.k())?;
            writeln!(out, "self_orthogonal = {}", m.is_self_orthogonal())?;
            writeln!(out, "self_dual = {}", m.is_self_dual())?;
            match &enumerator {
                Some(e) => {
                    let parts: Vec<String> = e.counts().iter().map(|c| c.to_string()).collect();
                    writeln!(out, "weight_enumerator = [{}]", parts.join(", "))?;
                }
                None => writeln!(
                    out,
                    "weight_enumerator = (skipped: k = {} exceeds limit {max_k})",
                    m.k()
                )?,
            }
        }
    }
    Ok(())
}

fn cmd_dual(file: &Path) -> Result<()> {
    let m = read_matrix(file)?;
    write!(
        std::io::stdout().lock(),
        "{}",
        render_generator_matrix(&m.dual())
    )?;
    Ok(())
}

fn cmd_equiv(max_n: usize, max_k: usize, format: Format, file_a: &Path, file_b: &Path) -> Result<()> {
    let a = read_matrix(file_a)?;
    let b = read_matrix(file_b)?;
    let limits = EquivLimits { max_n, max_k };
    let witness = are_equivalent(&a, &b, &limits)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "equivalent": witness.is_some(),
                "witness": witness.as_ref().map(|p| p.image().to_vec()),
            });
            writeln!(out, "{value}")?;
        }
        Format::Text => match witness {
            Some(p) => {
                writeln!(out, "equivalent = true")?;
                writeln!(out, "witness = {p}")?;
            }
            None => writeln!(out, "equivalent = false")?,
        },
    }
    Ok(())
}
