//! Command-line front end for `addbasis`.
//!
//! Every command that produces counts computes them twice, directly and
//! through the difference-set formula, and fails with exit code 3 if they
//! ever disagree. Exit code 2 means the input was rejected.

pub mod bench;
pub mod output;
pub mod rows;
pub mod source;

use std::io::Write;

use addbasis::{verify_identity, EstimateVariant, Instance};
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::output::{EstimateReport, Format, RowRecord};
use crate::rows::{single_row, sweep_rows, RowOptions};
use crate::source::{Preset, RangeSpec, Sequence, Source};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] addbasis::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(e) if e.is_invariant_violation() => 3,
            CliError::Model(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "addbasis", version, about = "Count representations n = a_1 x_1 + ... + a_N x_N with x_1 + ... + x_N = theta")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and formula count for a single n.
    Count(CountArgs),
    /// One row per n over a range, checking exact == formula on each.
    Sweep(SweepArgs),
    /// Compare the heuristic estimate variants against exact counts.
    Estimate(EstimateArgs),
    /// Verify the Lagrange power-sum identities over a range of exponents.
    Identities(IdentitiesArgs),
    /// Time the dynamic programs over a size grid (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    /// squares | powers:k | primes | list:c1,c2,... | file:PATH
    #[arg(long)]
    pub seq: Option<String>,
    /// lagrange | goldbach | waring:k
    #[arg(long, conflicts_with = "seq")]
    pub preset: Option<String>,
    /// Use the first k terms of the sequence.
    #[arg(long = "N", value_name = "k")]
    pub fixed_len: Option<usize>,
    /// Use every term not exceeding n.
    #[arg(long = "auto-N")]
    pub auto_len: bool,
    /// Number of parts.
    #[arg(long)]
    pub theta: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateFlags {
    /// Estimate variants to report (repeatable); all when omitted.
    #[arg(long, value_parser = parse_variant)]
    pub variant: Vec<EstimateVariant>,
    /// Include axis intercepts and plane distances.
    #[arg(long)]
    pub geometry: bool,
    /// Add k to every formula value before checking it; forces exit code 3.
    #[arg(long, hide = true, value_name = "k", default_value_t = 0)]
    pub perturb_formula: u64,
}

fn parse_variant(s: &str) -> Result<EstimateVariant, String> {
    s.parse()
}

impl EstimateFlags {
    fn variants(&self) -> Vec<EstimateVariant> {
        if self.variant.is_empty() {
            EstimateVariant::ALL.to_vec()
        } else {
            self.variant.clone()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long)]
    pub n: u64,
    /// Print every term of the alternating sum.
    #[arg(long)]
    pub breakdown: bool,
    /// Also report heuristic estimates.
    #[arg(long)]
    pub estimates: bool,
    #[command(flatten)]
    pub estimate: EstimateFlags,
    /// Cross-check with the brute-force and generating-series oracles when
    /// their work fits in this budget.
    #[arg(long)]
    pub budget: Option<u128>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    /// Inclusive range a..b or a..b:step.
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub breakdown: bool,
    #[arg(long)]
    pub estimates: bool,
    #[command(flatten)]
    pub estimate: EstimateFlags,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub seq: SeqArgs,
    #[arg(long)]
    pub n: String,
    #[command(flatten)]
    pub estimate: EstimateFlags,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    /// squares | powers:k | primes | list:c1,c2,... | file:PATH
    #[arg(long)]
    pub seq: String,
    #[arg(long = "N", value_name = "k")]
    pub fixed_len: Option<usize>,
    /// Inclusive exponent range, e.g. -3..6.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: bench::Suite,
    /// Largest denumerant target.
    #[arg(long, default_value_t = 100_000)]
    pub max_s: u64,
    /// Denumerant coefficients.
    #[arg(long, default_value = "1,2,3")]
    pub coeffs: String,
    /// Largest representation target.
    #[arg(long, default_value_t = 5_000)]
    pub max_n: u64,
    #[arg(long, default_value_t = 4)]
    pub theta: u64,
    /// Grid points.
    #[arg(long, default_value_t = 5)]
    pub steps: u64,
}

struct Resolved {
    seq: Sequence,
    theta: u64,
    preset: Option<Preset>,
}

fn resolve(args: &SeqArgs) -> Result<Resolved, CliError> {
    match (&args.seq, &args.preset) {
        (Some(spec), None) => {
            let seq = Sequence::new(Source::parse(spec)?, args.fixed_len, args.auto_len)?;
            let theta = args
                .theta
                .ok_or_else(|| CliError::Usage("--theta is required".into()))?;
            Ok(Resolved { seq, theta, preset: None })
        }
        (None, Some(name)) => {
            let preset: Preset = name.parse()?;
            let auto = args.fixed_len.is_none();
            let seq = Sequence::new(Source::Builtin(preset.kind()), args.fixed_len, auto)?;
            Ok(Resolved {
                seq,
                theta: args.theta.unwrap_or_else(|| preset.default_theta()),
                preset: Some(preset),
            })
        }
        _ => Err(CliError::Usage("exactly one of --seq or --preset is required".into())),
    }
}

fn targets(range: &str, preset: Option<Preset>) -> Result<Vec<u64>, CliError> {
    let range: RangeSpec = range.parse()?;
    let mut ns = range.nonnegative("--n")?;
    if let Some(p) = preset {
        ns.retain(|&n| p.keeps(n));
    }
    if ns.is_empty() {
        return Err(CliError::Usage("no targets left in range".into()));
    }
    Ok(ns)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Count(args) => {
            let r = resolve(&args.seq)?;
            let instance = Instance::new(r.seq.weights_for(args.n)?, args.n, r.theta);
            let opts = RowOptions {
                breakdown: args.breakdown,
                estimates: args.estimates || !args.estimate.variant.is_empty(),
                geometry: args.estimate.geometry,
                perturb: args.estimate.perturb_formula,
            };
            let row = single_row(instance, &opts, args.budget)?;
            let variants = args.estimate.variants();
            let record = RowRecord::new(&row, &variants);
            output::write_single(out, &record, args.output.format, &variants, opts.geometry)?;
        }
        Command::Sweep(args) => {
            let r = resolve(&args.seq)?;
            let ns = targets(&args.n, r.preset)?;
            let opts = RowOptions {
                breakdown: args.breakdown,
                estimates: args.estimates || !args.estimate.variant.is_empty(),
                geometry: args.estimate.geometry,
                perturb: args.estimate.perturb_formula,
            };
            let rows = sweep_rows(&r.seq, r.theta, &ns, &opts)?;
            let variants = if opts.estimates { args.estimate.variants() } else { Vec::new() };
            let records: Vec<RowRecord> = rows.iter().map(|row| RowRecord::new(row, &variants)).collect();
            output::write_rows(out, &records, args.output.format, &variants, opts.geometry)?;
        }
        Command::Estimate(args) => {
            let r = resolve(&args.seq)?;
            let ns = targets(&args.n, r.preset)?;
            let opts = RowOptions {
                breakdown: false,
                estimates: true,
                geometry: args.estimate.geometry,
                perturb: args.estimate.perturb_formula,
            };
            let rows = sweep_rows(&r.seq, r.theta, &ns, &opts)?;
            let variants = args.estimate.variants();
            let report = EstimateReport {
                rows: rows.iter().map(|row| RowRecord::new(row, &variants)).collect(),
                summary: output::summarize(&rows, &variants),
            };
            output::write_estimate_report(out, &report, args.output.format, &variants, opts.geometry)?;
            if !report.summary.sign_relation_holds {
                return Err(CliError::Invariant(
                    "parity-corrected estimate is not (-1)^(N-1) times the literal one".into(),
                ));
            }
        }
        Command::Identities(args) => {
            let source = Source::parse(&args.seq)?;
            let seq = Sequence::new(source, args.fixed_len, false)?;
            let weights = seq.weights(seq.len_for(0)?)?;
            let range: RangeSpec = args.t.parse()?;
            let report = verify_identity(&weights, range.start, range.end)?;
            let records = output::identity_records(&report);
            output::write_identities(out, &records, args.output.format)?;
            let bad = report
                .mismatches()
                .next()
                .map(|c| format!("identity fails at t={}: {} != {}", c.case.t, c.lhs, c.rhs));
            if let Some(msg) = bad {
                return Err(CliError::Invariant(msg));
            }
        }
        Command::Bench(args) => {
            let rows = match args.suite {
                bench::Suite::Denumerant => {
                    let coeffs = args
                        .coeffs
                        .split(',')
                        .map(|c| c.trim().parse::<u64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| CliError::Usage(format!("bad --coeffs {:?}", args.coeffs)))?;
                    bench::run_denumerant(&coeffs, args.max_s, args.steps)?
                }
                bench::Suite::Representation => {
                    bench::run_representation(args.max_n, args.theta, args.steps)?
                }
            };
            bench::write_csv(out, &rows)?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs, returning the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return e.exit_code();
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
