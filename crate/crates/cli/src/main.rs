use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mzv::cache::{ValueCache, CACHE_ENV};
use mzv::direct::primes_in;
use mzv::dsh::perm::{groupring_identity_check, groupring_sides};
use mzv::dsh::spaces::{cyclic_kernel, dimension_d};
use mzv::finite::{prime_sweep, zeta_f, zeta_f_sharp, zeta_natural_f};
use mzv::index::index_of_word;
use mzv::regularize::{
    associator_coefficient, natural_regularize, shuffle_regularize_index, stuffle_regularize,
};
use mzv::relations::congruence::{
    opposite_parity_indices, verify_binomial_batch, verify_same_parity, verify_word_form,
    RelationOptions, RelationReport,
};
use mzv::{Evaluator, Index, Word};

#[derive(Parser)]
#[command(
    name = "mzv",
    version,
    about = "Multiple zeta values, finite variants and double shuffle checks"
)]
struct Cli {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 60)]
    digits: u32,
    /// Persistent value cache (JSON lines); defaults to $MZV_CACHE_PATH.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ζ(k) for an admissible index, or the associator coefficient of a word.
    Eval {
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        index: Option<Index>,
        #[arg(long)]
        word: Option<Word>,
    },
    /// Regularized polynomial in T of an arbitrary index.
    Reg {
        #[arg(long)]
        index: Index,
        #[arg(long, value_enum, default_value_t = RegScheme::Stuffle)]
        scheme: RegScheme,
    },
    /// Finite real values and their mod-p counterparts.
    #[command(subcommand)]
    Finite(FiniteCommand),
    /// Truncated harmonic sums modulo primes.
    Modp(ModpArgs),
    /// Linearized double shuffle spaces and group ring identities.
    #[command(subcommand)]
    Dsh(DshCommand),
    /// Numeric congruence checks modulo products and lower depth.
    #[command(subcommand)]
    Relations(RelationsCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum RegScheme {
    Stuffle,
    Shuffle,
    Natural,
}

#[derive(Clone, Copy, ValueEnum)]
enum FiniteScheme {
    #[value(name = "F")]
    F,
    #[value(name = "Fsharp")]
    Fsharp,
    #[value(name = "natural")]
    Natural,
}

#[derive(Subcommand)]
enum FiniteCommand {
    Eval {
        #[arg(long)]
        index: Index,
        #[arg(long, value_enum, default_value_t = FiniteScheme::F)]
        scheme: FiniteScheme,
    },
    Modp(ModpArgs),
}

#[derive(Args)]
struct ModpArgs {
    #[arg(long)]
    index: Index,
    /// Inclusive range such as `5..100`.
    #[arg(long, value_parser = parse_range)]
    primes: RangeInclusive<u64>,
    /// Use the weighted sum over `0 < |m_i| < p/2`.
    #[arg(long)]
    natural: bool,
}

#[derive(Subcommand)]
enum DshCommand {
    /// `dim D_{n,d}` over a range of degrees.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_range)]
        d: RangeInclusive<u64>,
    },
    /// Cyclically invariant part of `D_{n,d}`.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// The identity `1 + sh c = c (1 + sh τ)` in `Z[S_{n+1}]`.
    Groupring {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum RelationsCommand {
    /// Opposite-parity binomial congruence for one index or a whole range.
    Binomial {
        #[arg(long)]
        index: Option<Index>,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Same-parity congruence for `ζ^F`.
    SameParity {
        #[arg(long)]
        index: Index,
        /// Which merged-index pattern to test.
        #[arg(long, value_enum, default_value_t = Reading::Both)]
        reading: Reading,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Congruence through associator coefficients of two words.
    WordForm {
        #[arg(long)]
        index: Index,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reading {
    /// `(…, k_i + k_{i+1}, k_{i+1}, …)`
    Repeated,
    /// `(…, k_i + k_{i+1}, k_{i+2}, …)`
    Merged,
    Both,
}

#[derive(Args)]
struct Bounds {
    /// Largest admissible coefficient in a relation (exclusive).
    #[arg(long, default_value_t = 10_000)]
    height: i64,
    /// Precision below which every verdict is inconclusive.
    #[arg(long, default_value_t = 60)]
    min_digits: u32,
}

impl Bounds {
    fn options(&self) -> RelationOptions {
        RelationOptions {
            height_bound: self.height,
            min_digits: self.min_digits,
            ..RelationOptions::default()
        }
    }
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|v| v..=v),
    }
}

#[derive(Serialize)]
struct ValueRow {
    input: String,
    value: String,
    error_bound: f64,
    digits: u32,
}

#[derive(Serialize)]
struct RegRow {
    degree: u32,
    coefficient: String,
    value: String,
}

#[derive(Serialize)]
struct ModpRow {
    index: String,
    p: u64,
    residue: u64,
}

#[derive(Serialize)]
struct DimRow {
    n: usize,
    d: u32,
    dim: Option<usize>,
}

#[derive(Serialize)]
struct KernelRow {
    n: usize,
    d: u32,
    dim_d: usize,
    dimension: usize,
    orders_agree: bool,
}

#[derive(Serialize)]
struct GroupRingRow {
    n: usize,
    holds: bool,
    holds_without_tau: bool,
}

#[derive(Serialize)]
struct RelationRow {
    target: String,
    verdict: String,
    height: String,
    residual_log10: String,
    coefficients: String,
    evidence: &'static str,
}

impl From<&RelationReport> for RelationRow {
    fn from(r: &RelationReport) -> Self {
        RelationRow {
            target: r.target.clone(),
            verdict: serde_json::to_value(r.verdict)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default(),
            height: r.height.clone().unwrap_or_default(),
            residual_log10: match (r.residual_is_zero, r.residual_log10) {
                (true, _) => "-inf".into(),
                (false, Some(x)) => format!("{x:.1}"),
                (false, None) => String::new(),
            },
            coefficients: r
                .coefficients
                .iter()
                .map(|c| format!("{}={}", c.label, c.value))
                .collect::<Vec<_>>()
                .join("; "),
            evidence: r.evidence,
        }
    }
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

struct Output {
    format: Format,
}

impl Output {
    /// JSON prints `full`; CSV prints the flat `rows`.
    fn emit<F: Serialize, R: Serialize>(&self, full: &F, rows: &[R]) -> AnyResult<()> {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, full)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for r in rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    fn rows<R: Serialize>(&self, rows: &[R]) -> AnyResult<()> {
        self.emit(&rows, rows)
    }
}

fn evaluator(cli: &Cli) -> AnyResult<Evaluator> {
    let store = match &cli.cache {
        Some(path) => Some(ValueCache::open(path)?),
        None => ValueCache::from_env()?,
    };
    Ok(match store {
        Some(s) => Evaluator::with_cache(cli.digits, Arc::new(s)),
        None => Evaluator::new(cli.digits),
    })
}

fn value_row(input: String, v: &mzv::BigReal) -> ValueRow {
    ValueRow {
        input,
        value: v.to_decimal(v.digits()),
        error_bound: v.error_bound(),
        digits: v.digits(),
    }
}

fn modp(out: &Output, args: &ModpArgs) -> AnyResult<bool> {
    let primes = primes_in(args.primes.clone());
    let values = prime_sweep(&args.index, &primes, args.natural)?;
    let rows: Vec<ModpRow> = values
        .iter()
        .map(|v| ModpRow {
            index: args.index.to_string(),
            p: v.p,
            residue: v.residue,
        })
        .collect();
    out.rows(&rows)?;
    Ok(true)
}

fn relations(out: &Output, reports: Vec<RelationReport>) -> AnyResult<bool> {
    let rows: Vec<RelationRow> = reports.iter().map(RelationRow::from).collect();
    out.emit(&reports, &rows)?;
    Ok(reports.iter().all(RelationReport::confirmed))
}

/// Returns whether every verdict produced was positive.
fn run(cli: &Cli) -> AnyResult<bool> {
    let out = Output { format: cli.format };
    match &cli.command {
        Command::Eval { index, word } => {
            let ev = evaluator(cli)?;
            let row = match (index, word) {
                (Some(k), _) => value_row(k.to_string(), &ev.eval_admissible(k)?),
                (None, Some(w)) => {
                    let v = match index_of_word(w) {
                        Ok(k) if k.is_admissible() => ev.eval_admissible(&k)?,
                        _ => ev.eval_combo(&associator_coefficient(w)),
                    };
                    value_row(w.to_string(), &v)
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            out.rows(&[row])?;
            Ok(true)
        }
        Command::Reg { index, scheme } => {
            let ev = evaluator(cli)?;
            let poly = match scheme {
                RegScheme::Stuffle => stuffle_regularize(index),
                RegScheme::Shuffle => shuffle_regularize_index(index),
                RegScheme::Natural => natural_regularize(index),
            };
            let rows: Vec<RegRow> = poly
                .coefficients()
                .map(|(d, c)| RegRow {
                    degree: d,
                    coefficient: c.to_string(),
                    value: ev.eval_combo(c).to_decimal(cli.digits),
                })
                .collect();
            out.emit(&poly, &rows)?;
            Ok(true)
        }
        Command::Finite(FiniteCommand::Eval { index, scheme }) => {
            let ev = evaluator(cli)?;
            let combo = match scheme {
                FiniteScheme::F => zeta_f(index),
                FiniteScheme::Fsharp => zeta_f_sharp(index),
                FiniteScheme::Natural => zeta_natural_f(index),
            };
            let row = value_row(index.to_string(), &ev.eval_combo(&combo));
            out.emit(
                &serde_json::json!({ "combination": combo, "value": row }),
                &[row],
            )?;
            Ok(true)
        }
        Command::Finite(FiniteCommand::Modp(args)) | Command::Modp(args) => modp(&out, args),
        Command::Dsh(DshCommand::Dim { n, d }) => {
            let rows: Vec<DimRow> = d
                .clone()
                .map(|d| DimRow {
                    n: *n,
                    d: d as u32,
                    dim: dimension_d(*n, d as u32),
                })
                .collect();
            out.rows(&rows)?;
            Ok(rows.iter().all(|r| r.dim.is_some()))
        }
        Command::Dsh(DshCommand::Cyclic { n, d }) => {
            let report = cyclic_kernel(*n, *d)?;
            let row = KernelRow {
                n: report.n,
                d: report.d,
                dim_d: report.dim_d,
                dimension: report.dimension,
                orders_agree: report.orders_agree,
            };
            out.emit(&report, &[row])?;
            Ok(report.orders_agree)
        }
        Command::Dsh(DshCommand::Groupring { n }) => {
            let (l, r) = groupring_sides(*n, None);
            let row = GroupRingRow {
                n: *n,
                holds: groupring_identity_check(*n),
                holds_without_tau: l == r,
            };
            let ok = row.holds;
            out.rows(&[row])?;
            Ok(ok)
        }
        Command::Relations(cmd) => {
            let ev = evaluator(cli)?;
            let reports = match cmd {
                RelationsCommand::Binomial {
                    index,
                    max_weight,
                    max_depth,
                    bounds,
                } => {
                    let ks = match index {
                        Some(k) => vec![k.clone()],
                        None => opposite_parity_indices(*max_weight, *max_depth),
                    };
                    verify_binomial_batch(&ks, &ev, &bounds.options())?
                }
                RelationsCommand::SameParity {
                    index,
                    reading,
                    bounds,
                } => {
                    let r = verify_same_parity(index, &ev, &bounds.options())?;
                    match reading {
                        Reading::Repeated => vec![r.repeated],
                        Reading::Merged => vec![r.merged],
                        Reading::Both => vec![r.repeated, r.merged],
                    }
                }
                RelationsCommand::WordForm { index, bounds } => {
                    vec![verify_word_form(index, &ev, &bounds.options())?]
                }
            };
            relations(&out, reports)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if cli.cache.is_none() && std::env::var_os(CACHE_ENV).is_some() {
                eprintln!("(cache taken from ${CACHE_ENV})");
            }
            ExitCode::from(2)
        }
    }
}
