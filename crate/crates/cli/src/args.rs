//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbsa_state::{Arm, HyperBellIndex};

/// Hyperentangled Bell-state analyzer.
///
/// State selectors name a spatial and a polarization Bell state, each as
/// phi+, phi-, psi+ or psi-, followed by `s` (spatial) or `p` (polarization):
/// `psi+s,phi-p` is ψ+ in the spatial arms times φ− in polarization.
///
/// Exit status: 0 on success, 1 when a check fails, 2 on usage, parse or
/// internal errors.
#[derive(Debug, Parser)]
#[command(name = "hbsa", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Length of the short delay t0 in nanoseconds.
    #[arg(long = "t0-ns", default_value_t = 6.0, global = true)]
    pub t0_ns: f64,
    /// Length of the long delay t1 in nanoseconds.
    #[arg(long = "t1-ns", default_value_t = 10.0, global = true)]
    pub t1_ns: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    StructuredRecords,
    FlatTable,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Click distribution of one input state.
    Analyze {
        #[arg(value_parser = parse_selector)]
        state: HyperBellIndex,
    },
    /// Signature table of all 16 inputs.
    Table {
        /// Compare with the reference table; exit 1 on any difference.
        #[arg(long)]
        check: bool,
        /// Interferometer arm pairs, e.g. `a1:b2,b1:a2`.
        #[arg(long = "ui-pairing", value_parser = parse_pairing)]
        ui_pairing: Option<Pairing>,
    },
    /// Run every built-in check.
    Verify,
    /// Stage-by-stage states of one input, checked against the worked examples.
    Trace {
        #[arg(value_parser = parse_selector)]
        state: HyperBellIndex,
    },
    /// Confusion-matrix summaries over noise parameter grids.
    Sweep {
        /// Half-wave plate angle offset in degrees, as `start:stop:count`.
        #[arg(long = "hwp-jitter", value_parser = parse_range)]
        hwp_jitter: Option<Range>,
        /// Frequency shifter leakage amplitude, as `start:stop:count`.
        #[arg(long = "fs-leakage", value_parser = parse_range)]
        fs_leakage: Option<Range>,
        /// Beam splitter imbalance, as `start:stop:count`.
        #[arg(long = "bs-imbalance", value_parser = parse_range)]
        bs_imbalance: Option<Range>,
    },
    /// Run a circuit description file on all 16 inputs.
    RunFile {
        path: PathBuf,
        /// Check normalization, isometry and disjointness; exit 1 on failure.
        #[arg(long)]
        check: bool,
        /// Compare the table with the reference table; exit 1 on any difference.
        #[arg(long = "against-reference")]
        against_reference: bool,
    },
    /// Draw detection events for one input.
    Sample {
        #[arg(value_parser = parse_selector)]
        state: HyperBellIndex,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pairing(pub Vec<(Arm, Arm)>);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

pub fn parse_selector(s: &str) -> Result<HyperBellIndex, String> {
    s.parse().map_err(|_| {
        format!(
            "unknown state selector `{s}`; valid selectors: {}",
            HyperBellIndex::selectors().join(" ")
        )
    })
}

pub fn parse_pairing(s: &str) -> Result<Pairing, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (m, n) = part
            .trim()
            .split_once(':')
            .ok_or_else(|| format!("expected `m:n` arm pair, got `{part}`"))?;
        let arm = |x: &str| {
            x.trim()
                .parse::<Arm>()
                .map_err(|_| format!("unknown arm `{x}` (a1, a2, b1, b2)"))
        };
        out.push((arm(m)?, arm(n)?));
    }
    Ok(Pairing(out))
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let bad = || format!("expected `start:stop:count`, got `{s}`");
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok(Range { start, stop, count })
}
