//! `bohr` - sharp Bohr-type radii for a class of close-to-convex harmonic
//! mappings: single radii, reference-table reproduction, figure data, and the
//! verification suites.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bohr_cli::commands::{cmd_figure, cmd_radius, cmd_table, CmdError, RadiusRequest};
use bohr_cli::config::Config;
use bohr_cli::verify::{cmd_verify, VerifyOptions};
use bohr_core::radius::DEFAULT_TOL;
use bohr_core::series::FVariant;

#[derive(Parser)]
#[command(
    name = "bohr",
    version,
    about = "Sharp Bohr and Bohr-Rogosinski radii for a class of close-to-convex harmonic mappings"
)]
struct Cli {
    /// Flat key=value file supplying defaults for any flag left unset.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one radius equation and print the certified root.
    Radius(RadiusArgs),
    /// Reproduce a reference table as CSV on standard output.
    Table(TableArgs),
    /// Emit plot data (TSV) for one figure curve over a dense M grid.
    Figure(FigureArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Squared,
    Linear,
}

impl From<VariantArg> for FVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Squared => FVariant::Squared,
            VariantArg::Linear => FVariant::Linear,
        }
    }
}

#[derive(Args)]
struct RadiusArgs {
    /// Equation tag: phi, phi-star, cor3.5, cor3.6, cor3.8, cor3.9, cor3.11,
    /// cor3.12, cor3.13, cor3.25, cor3.26, ana-rmn, ana-rpmn, ana-rn,
    /// ana-rpn, ana-ra0, ana-rpa0, ana-quintic, ana-quartic.
    #[arg(long)]
    functional: Option<String>,
    /// Class constant M in [0, 1/(2(ln 4 - 1))).
    #[arg(long = "M")]
    class_m: Option<f64>,
    /// Weight on the growth power (default 0).
    #[arg(long)]
    beta: Option<f64>,
    /// Weight on the Bohr-Rogosinski head (default 0).
    #[arg(long)]
    mu: Option<f64>,
    /// Weight on the quadratic tail (default 0).
    #[arg(long)]
    lambda: Option<f64>,
    /// Growth exponent m >= 1 (also the m index of ana-rmn/ana-rpmn).
    #[arg(long = "m")]
    power: Option<u32>,
    /// Tail start index N >= 1 (also the N index of the ana-* equations).
    #[arg(long = "N")]
    start: Option<u32>,
    /// Comma-separated polynomial weights lambda_1,lambda_2,...
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<f64>>,
    /// Constant-term modulus for ana-ra0 / ana-rpa0.
    #[arg(long)]
    a0: Option<f64>,
    /// Area-majorant variant (default squared).
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Residual tolerance (default 1e-12, minimum 1e-14).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct TableArgs {
    /// Table label: 1, 2, 4, 5, 6 or 7 (the source numbering has no table 3).
    #[arg(long)]
    table: Option<u8>,
    /// Area-majorant variant (default squared).
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Emit the comparison even when entries mismatch, and exit 0.
    #[arg(long)]
    no_fail: bool,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure number, 1..5.
    #[arg(long)]
    figure: Option<u8>,
    /// Number of grid samples (minimum 50).
    #[arg(long)]
    samples: Option<usize>,
    /// Which curve of the figure to emit (1 or 2; default 1).
    #[arg(long)]
    curve: Option<usize>,
    /// Area-majorant variant (default squared).
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the sampled-class suite (default 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the quadrature suite and shrink sample counts.
    #[arg(long)]
    quick: bool,
}

fn load_config(path: &Option<PathBuf>) -> Result<Config, CmdError> {
    match path {
        Some(p) => Config::load(p).map_err(CmdError::usage),
        None => Ok(Config::default()),
    }
}

fn merged<T: std::str::FromStr>(
    cli: Option<T>,
    cfg: &Config,
    key: &str,
) -> Result<Option<T>, CmdError>
where
    T::Err: std::fmt::Display,
{
    match cli {
        Some(v) => Ok(Some(v)),
        None => cfg.get_parsed(key).map_err(CmdError::usage),
    }
}

fn run(cli: Cli) -> Result<(), CmdError> {
    let cfg = load_config(&cli.config)?;
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Radius(args) => {
            let poly = match args.poly {
                Some(p) => Some(p),
                None => match cfg.get("poly") {
                    Some(raw) => Some(
                        raw.split(',')
                            .map(|s| s.trim().parse::<f64>())
                            .collect::<Result<Vec<f64>, _>>()
                            .map_err(|e| CmdError::usage(format!("config key poly: {e}")))?,
                    ),
                    None => None,
                },
            };
            let variant = match args.variant {
                Some(v) => Some(v),
                None => parse_variant_key(&cfg)?,
            };
            let req = RadiusRequest {
                functional: merged(args.functional, &cfg, "functional")?
                    .ok_or_else(|| CmdError::usage("--functional is required"))?,
                class_m: merged(args.class_m, &cfg, "M")?,
                beta: merged(args.beta, &cfg, "beta")?.unwrap_or(0.0),
                mu: merged(args.mu, &cfg, "mu")?.unwrap_or(0.0),
                lambda: merged(args.lambda, &cfg, "lambda")?.unwrap_or(0.0),
                power: merged(args.power, &cfg, "m")?.unwrap_or(1),
                start: merged(args.start, &cfg, "N")?.unwrap_or(1),
                poly: poly.unwrap_or_default(),
                a0: merged(args.a0, &cfg, "a0")?,
                variant: variant.map(FVariant::from).unwrap_or_default(),
                tol: merged(args.tol, &cfg, "tol")?.unwrap_or(DEFAULT_TOL),
            };
            cmd_radius(&mut stdout, &req)
        }
        Command::Table(args) => {
            let table = merged(args.table, &cfg, "table")?
                .ok_or_else(|| CmdError::usage("--table is required"))?;
            let variant = match args.variant {
                Some(v) => Some(v),
                None => parse_variant_key(&cfg)?,
            };
            let no_fail = args.no_fail || cfg.get_flag("no-fail").map_err(CmdError::usage)?;
            cmd_table(&mut stdout, table, variant.map(FVariant::from).unwrap_or_default(), no_fail)
        }
        Command::Figure(args) => {
            let figure = merged(args.figure, &cfg, "figure")?
                .ok_or_else(|| CmdError::usage("--figure is required"))?;
            let samples = merged(args.samples, &cfg, "samples")?
                .ok_or_else(|| CmdError::usage("--samples is required"))?;
            let curve = merged(args.curve, &cfg, "curve")?.unwrap_or(1);
            let variant = match args.variant {
                Some(v) => Some(v),
                None => parse_variant_key(&cfg)?,
            };
            cmd_figure(
                &mut stdout,
                figure,
                samples,
                curve,
                variant.map(FVariant::from).unwrap_or_default(),
            )
        }
        Command::Verify(args) => {
            let opts = VerifyOptions {
                seed: merged(args.seed, &cfg, "seed")?.unwrap_or(42),
                quick: args.quick || cfg.get_flag("quick").map_err(CmdError::usage)?,
            };
            cmd_verify(&mut stdout, &opts)
        }
    }
}

fn parse_variant_key(cfg: &Config) -> Result<Option<VariantArg>, CmdError> {
    match cfg.get("variant") {
        None => Ok(None),
        Some("squared") => Ok(Some(VariantArg::Squared)),
        Some("linear") => Ok(Some(VariantArg::Linear)),
        Some(other) => Err(CmdError::usage(format!(
            "config key variant={other}: expected squared or linear"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let _ = writeln!(std::io::stderr(), "error: {}", err.message);
            ExitCode::from(err.code as u8)
        }
    }
}
