mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use hbsa_experiments::NoiseParam;
use hbsa_measurement::Timing;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

macro_rules! internal_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Internal(e.to_string())
            }
        }
    )*};
}

internal_from!(
    hbsa_circuit::CircuitError,
    hbsa_measurement::MeasureError,
    hbsa_experiments::ExperimentError
);

fn dispatch(cli: Cli) -> Result<commands::Report, CliError> {
    let g = cli.global;
    if !(g.t0_ns.is_finite() && g.t1_ns.is_finite() && g.t0_ns >= 0.0 && g.t1_ns >= 0.0) {
        return Err(CliError::Usage(
            "--t0-ns and --t1-ns must be finite and non-negative".into(),
        ));
    }
    let timing = Timing {
        t0_ns: g.t0_ns,
        t1_ns: g.t1_ns,
    };
    match cli.command {
        Command::Analyze { state } => commands::analyze(state, g.format, timing),
        Command::Table { check, ui_pairing } => {
            commands::table(check, ui_pairing, g.format, timing)
        }
        Command::Verify => commands::verify(g.format),
        Command::Trace { state } => commands::trace(state, g.format),
        Command::Sweep {
            hwp_jitter,
            fs_leakage,
            bs_imbalance,
        } => commands::sweep_cmd(
            [
                (NoiseParam::HwpJitter, hwp_jitter),
                (NoiseParam::FsLeakage, fs_leakage),
                (NoiseParam::BsImbalance, bs_imbalance),
            ],
            g.format,
        ),
        Command::RunFile {
            path,
            check,
            against_reference,
        } => commands::run_file(&path, check, against_reference, g.format, timing),
        Command::Sample { state, shots, seed } => {
            if shots == 0 {
                return Err(CliError::Usage("--shots must be at least 1".into()));
            }
            commands::sample(state, shots, seed, g.format, timing)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(report) => {
            print!("{}", report.text);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("hbsa: {e}");
            ExitCode::from(2)
        }
    }
}
