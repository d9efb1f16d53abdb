//! `su11sim`: sweeps and consistency validation for an SU(1,1)
//! four-wave-mixer interferometer.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use su11_cli::{
    parse_int_range, render, render_report, run_sweep, run_validate, ConfigError, InputKind, Level,
    OutputFormat, PhaseAxis, Range, SweepConfig, SweepMode,
};

/// Phase-sensitivity simulator for an SU(1,1) four-wave-mixer
/// interferometer.
///
/// All angles are in radians; the mixer gain β is dimensionless.  Ranges
/// are written as a single number or START:STOP:COUNT (inclusive, linearly
/// spaced); a sweep walks the cartesian product of all supplied ranges in
/// lexicographic order (twice_k, β, phase, ζ, N).
#[derive(Parser)]
#[command(name = "su11sim", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Evaluate phase-sensitivity formulas over a parameter grid.
    ///
    /// Examples:
    ///   su11sim sweep --mode beta_sweep --input vacuum --beta 0.5:2.0:4
    ///   su11sim sweep --mode k_sweep --input coherent_intelligent \
    ///       --twice-k 1:6:6 --zeta 0.5 --numeric-check
    ///   su11sim sweep --mode photon_budget --n-total 1:10:10 --format json
    #[command(verbatim_doc_comment)]
    Sweep(SweepArgs),
    /// Run the built-in consistency suite and exit nonzero on any failure.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Which closed-form family the rows carry: phi_sweep, beta_sweep and
    /// k_sweep report the gain-based formulas; photon_budget reports the
    /// fixed-photon-number formula.
    #[arg(long, value_enum)]
    mode: SweepMode,

    /// Input state fed into the first mixer.
    #[arg(long, value_enum, default_value = "vacuum")]
    input: InputKind,

    /// Gain range for the mixers.
    #[arg(long, default_value = "1.0")]
    beta: String,

    /// Net internal phase φ range (radians).
    #[arg(long, conflicts_with_all = ["phi1", "phi2"])]
    phi: Option<String>,

    /// First arm phase range; combines with --phi2 as φ = −(φ₁+φ₂).
    #[arg(long, requires = "phi2")]
    phi1: Option<String>,

    /// Second arm phase range; combines with --phi1 as φ = −(φ₁+φ₂).
    #[arg(long, requires = "phi1")]
    phi2: Option<String>,

    /// Integer range for twice the representation index k (≥ 1); the step
    /// must land on integers.
    #[arg(long = "twice-k", default_value = "1")]
    twice_k: String,

    /// Real coherent amplitude range, confined to [0, 0.95].
    #[arg(long, default_value = "0.0")]
    zeta: String,

    /// Photon budget range N (photon_budget mode).
    #[arg(long = "n-total", default_value = "10.0")]
    n_total: String,

    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,

    /// Also evaluate the truncated Fock-space route for every row and
    /// report the relative discrepancy.  Large β needs large Fock boxes;
    /// rows whose truncation would leak are flagged, not dropped.
    #[arg(long)]
    numeric_check: bool,

    /// Write the table to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Override the default truncation-dimension cap of 4096.
    #[arg(long = "dim-cap")]
    dim_cap: Option<usize>,
}

#[derive(Args)]
struct ValidateArgs {
    /// fast keeps every truncation at dimension ≤ 128; full uses the
    /// acceptance-grid dimensions.
    #[arg(long, value_enum, default_value = "fast")]
    level: Level,

    /// Build the mixer unitaries with the opposite generator sign; the
    /// route-agreement checks must then fail (sign-convention probe).
    #[arg(long, hide = true)]
    flipped_fwm: bool,
}

fn build_config(args: &SweepArgs) -> Result<SweepConfig, ConfigError> {
    let phase = match (&args.phi, &args.phi1, &args.phi2) {
        (Some(phi), _, _) => PhaseAxis::Single(Range::parse(phi)?),
        (None, Some(p1), Some(p2)) => PhaseAxis::Arms {
            phi1: Range::parse(p1)?,
            phi2: Range::parse(p2)?,
        },
        _ => PhaseAxis::Single(Range::single(0.0)),
    };
    Ok(SweepConfig {
        mode: args.mode,
        input: args.input,
        twice_k: parse_int_range(&args.twice_k)?,
        beta: Range::parse(&args.beta)?,
        phase,
        zeta: Range::parse(&args.zeta)?,
        n_total: Range::parse(&args.n_total)?,
        numeric_check: args.numeric_check,
        dim_cap: args.dim_cap,
    })
}

fn run_sweep_command(args: &SweepArgs) -> ExitCode {
    let cfg = match build_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("su11sim: {e}");
            return ExitCode::from(2);
        }
    };
    let rows = match run_sweep(&cfg) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("su11sim: {e}");
            return ExitCode::from(2);
        }
    };
    let text = render(&rows, args.format);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("su11sim: cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}

fn run_validate_command(args: &ValidateArgs) -> ExitCode {
    let report = run_validate(args.level, args.flipped_fwm);
    print!("{}", render_report(&report));
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Sweep(args) => run_sweep_command(&args),
        Command::Validate(args) => run_validate_command(&args),
    }
}
