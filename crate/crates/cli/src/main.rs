use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hybridfso_cli::execute;
use hybridfso_cli::spec::{
    parse_snr_range, workers_from_env, Command, MonteCarloMode, Regime, RunSpec, WORKERS_ENV,
};

#[derive(Parser)]
#[command(
    name = "hybridfso",
    version,
    about = "Outage and DPSK BER of multi-hop hybrid FSO/RF relay chains"
)]
#[command(
    after_help = "Monte Carlo worker count: set HYBRIDFSO_WORKERS (default: available cores)."
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Outage probability sweep to CSV
    Outage(SweepArgs),
    /// DPSK bit-error-rate sweep to CSV
    Ber(SweepArgs),
    /// Run the acceptance suite and emit a JSON report
    Validate(ValidateArgs),
    /// Quick numerical self-check
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "moderate")]
    regime: Regime,
    /// receive antennas at the first relay
    #[arg(long = "N", default_value_t = 2)]
    n: u32,
    /// relays in the chain
    #[arg(long = "M", default_value_t = 2)]
    m: u32,
    /// fixed AF gain constant
    #[arg(long = "C", default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    gamma_th_db: f64,
    /// average SNR grid, start:stop:step in dB
    #[arg(long, default_value = "10:40:2", value_parser = parse_snr_range, allow_hyphen_values = true)]
    snr: (f64, f64, f64),
    /// Monte Carlo trials per point, 0 to skip the simulation
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// first-hop draw shared by both AF branches, or drawn per branch
    #[arg(long, value_enum, default_value = "independent")]
    mode: MonteCarloMode,
    /// CSV path (stdout if absent)
    #[arg(long)]
    output: Option<PathBuf>,
    /// also write a matplotlib script that plots the CSV
    #[arg(long)]
    plot_script: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo trials per comparison
    #[arg(long, default_value_t = 10_000_000)]
    trials: u64,
    /// JSON report path (stdout if absent)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn to_spec(cli: Cli, workers: usize) -> RunSpec {
    let base = RunSpec {
        workers,
        ..RunSpec::default()
    };
    let sweep = |command, a: SweepArgs| RunSpec {
        command,
        regime: a.regime,
        n: a.n,
        m: a.m,
        c: a.c,
        eta: a.eta,
        gamma_th_db: a.gamma_th_db,
        snr_start_db: a.snr.0,
        snr_stop_db: a.snr.1,
        snr_step_db: a.snr.2,
        trials: a.trials,
        seed: a.seed,
        mode: a.mode,
        output: a.output,
        plot_script: a.plot_script,
        ..base.clone()
    };
    match cli.command {
        Sub::Outage(a) => sweep(Command::Outage, a),
        Sub::Ber(a) => sweep(Command::Ber, a),
        Sub::Validate(a) => RunSpec {
            command: Command::Validate,
            seed: a.seed,
            trials: a.trials,
            output: a.output,
            ..base
        },
        Sub::Selftest(a) => RunSpec {
            command: Command::Selftest,
            seed: a.seed,
            output: a.output,
            ..base
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = match workers_from_env() {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e} ({WORKERS_ENV})");
            return ExitCode::from(2);
        }
    };
    let spec = to_spec(cli, workers);
    match execute(
        &spec,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    ) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
