//! Argument definitions and implementations of the `fqt` subcommands.

use std::fs::File;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqt_core::analysis::{analyze_dataset, Baselines};
use fqt_core::dataset::{Dataset, NormalizationScheme};
use fqt_core::membership::RampMembership;
use fqt_core::regression::{ols_fit, CovariateUnit};
use fqt_core::synth::{generate, SynthConfig};

use crate::error::CliError;
use crate::formats::{self, ParseMode};
use crate::render::{render_baselines, render_memberships, render_report, OutputFormat};

/// Qualitative regression with fuzzy-group sample weights.
#[derive(Debug, Parser)]
#[command(name = "fqt", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit per-group weights and report contributions, crossings, and
    /// covariate thresholds.
    Analyze(AnalyzeArgs),
    /// Fit only the two single-predictor baselines (raw covariate and
    /// membership degree).
    Baseline(AnalyzeArgs),
    /// Evaluate the membership ramp at the given covariate values.
    Membership(MembershipArgs),
    /// Generate a seeded synthetic cohort with known group weights.
    Synth(SynthArgs),
    /// Audit a dataset file and list rule violations.
    Validate(ValidateArgs),
}

/// Input file schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Schema {
    /// `id,<group...>,x,y` with membership degrees in [0, 1].
    Processed,
    /// `id,<group>_q<item>...,x,y` with questionnaire scores in 1..=5.
    Raw,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input CSV path.
    #[arg(long)]
    input: PathBuf,
    /// Input file schema.
    #[arg(long, value_enum, default_value_t = Schema::Processed)]
    schema: Schema,
    /// Score normalization for the raw schema: div5 or affine.
    #[arg(long, value_parser = parse_scheme)]
    normalization: Option<NormalizationScheme>,
}

#[derive(Debug, Args)]
struct RampArgs {
    /// Covariate value at which membership starts rising from 0.
    #[arg(long, default_value_t = 0.0)]
    mf_lower: f64,
    /// Covariate value of full membership.
    #[arg(long, default_value_t = 16.0)]
    mf_upper: f64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    ramp: RampArgs,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write results here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    /// Covariate values to evaluate.
    #[arg(required = true, allow_negative_numbers = true)]
    values: Vec<f64>,
    #[command(flatten)]
    ramp: RampArgs,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Write results here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Number of samples to draw.
    #[arg(long)]
    samples: usize,
    /// Ground-truth group weight as name=weight; repeat per group.
    #[arg(long = "group", value_parser = parse_group, required = true)]
    groups: Vec<(String, f64)>,
    /// Standard deviation of the additive Gaussian response noise.
    #[arg(long, default_value_t = 0.0)]
    noise_sigma: f64,
    /// Degree draw range as lo:hi (default 0.5:1).
    #[arg(long, value_parser = parse_range)]
    membership_range: Option<(f64, f64)>,
    /// Covariate draw range as lo:hi (default 4:16).
    #[arg(long, value_parser = parse_range)]
    covariate_range: Option<(f64, f64)>,
    /// RNG seed; equal seeds give byte-identical cohorts.
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    ramp: RampArgs,
    /// Write the cohort CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
}

fn parse_scheme(cell: &str) -> Result<NormalizationScheme, String> {
    cell.parse().map_err(|e: fqt_core::Error| e.to_string())
}

fn parse_range(cell: &str) -> Result<(f64, f64), String> {
    let Some((lo, hi)) = cell.split_once(':') else {
        return Err(format!("expected lo:hi, got '{cell}'"));
    };
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound '{hi}'"))?;
    Ok((lo, hi))
}

fn parse_group(cell: &str) -> Result<(String, f64), String> {
    let Some((name, weight)) = cell.split_once('=') else {
        return Err(format!("expected name=weight, got '{cell}'"));
    };
    let name = name.trim();
    if name.is_empty() {
        return Err("group name must be nonempty".to_string());
    }
    let weight: f64 = weight
        .trim()
        .parse()
        .map_err(|_| format!("bad weight '{weight}'"))?;
    Ok((name.to_string(), weight))
}

fn ramp_of(args: &RampArgs) -> Result<RampMembership, CliError> {
    RampMembership::new(args.mf_lower, args.mf_upper).map_err(|e| CliError::Usage(e.to_string()))
}

fn load_dataset(args: &InputArgs, mode: ParseMode) -> Result<Dataset, CliError> {
    if args.normalization.is_some() && args.schema != Schema::Raw {
        return Err(CliError::Usage(
            "--normalization applies only to --schema raw".to_string(),
        ));
    }
    let file = File::open(&args.input).map_err(|source| CliError::Read {
        path: args.input.clone(),
        source,
    })?;
    let dataset = match args.schema {
        Schema::Processed => formats::parse_processed(file, mode)?,
        Schema::Raw => {
            let scheme = args.normalization.unwrap_or(NormalizationScheme::Div5);
            formats::parse_raw(file, scheme, mode)?
        }
    };
    Ok(dataset)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let ramp = ramp_of(&args.ramp)?;
    let dataset = load_dataset(&args.input, ParseMode::Strict)?;
    let report = analyze_dataset(&dataset, &ramp).map_err(CliError::Fit)?;
    write_output(args.output.as_deref(), &render_report(&report, args.format))
}

fn cmd_baseline(args: AnalyzeArgs) -> Result<(), CliError> {
    let ramp = ramp_of(&args.ramp)?;
    let dataset = load_dataset(&args.input, ParseMode::Strict)?;
    let xs = dataset.covariate_values();
    let ys = dataset.response_values();
    let mus: Vec<f64> = xs.iter().map(|&x| ramp.eval(x)).collect();
    let raw = ols_fit(&xs, &ys, CovariateUnit::RawX).map_err(CliError::Fit)?;
    let membership = ols_fit(&mus, &ys, CovariateUnit::Membership).map_err(CliError::Fit)?;
    let baselines = Baselines::new(raw, membership).map_err(CliError::Fit)?;
    write_output(
        args.output.as_deref(),
        &render_baselines(&baselines, args.format),
    )
}

fn cmd_membership(args: MembershipArgs) -> Result<(), CliError> {
    let ramp = ramp_of(&args.ramp)?;
    if let Some(bad) = args.values.iter().find(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!(
            "covariate values must be finite, got {bad}"
        )));
    }
    let pairs: Vec<(f64, f64)> = args.values.iter().map(|&x| (x, ramp.eval(x))).collect();
    write_output(
        args.output.as_deref(),
        &render_memberships(&pairs, args.format),
    )
}

fn cmd_synth(args: SynthArgs) -> Result<(), CliError> {
    let ramp = ramp_of(&args.ramp)?;
    let mut cfg = SynthConfig::new(args.samples, args.groups, args.noise_sigma, args.seed);
    if let Some(range) = args.membership_range {
        cfg.membership_range = range;
    }
    if let Some(range) = args.covariate_range {
        cfg.covariate_range = range;
    }
    let cohort = generate(&cfg, &ramp).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut buffer = Vec::new();
    formats::write_processed(&cohort.dataset, &mut buffer)?;
    let text = String::from_utf8(buffer).expect("csv output is utf-8");
    if cohort.clamped > 0 {
        eprintln!("note: {} response(s) clamped into [0, 100]", cohort.clamped);
    }
    write_output(args.output.as_deref(), &text)
}

fn cmd_validate(args: ValidateArgs) -> Result<(), CliError> {
    let dataset = load_dataset(&args.input, ParseMode::Lenient)?;
    let violations = dataset.validate();
    if violations.is_empty() {
        println!("ok: {} record(s), no violations", dataset.len());
        return Ok(());
    }
    for violation in &violations {
        println!("{violation}");
    }
    Err(CliError::Violations(violations.len()))
}

/// Runs the selected subcommand.
pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Baseline(args) => cmd_baseline(args),
        Command::Membership(args) => cmd_membership(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Validate(args) => cmd_validate(args),
    }
}
