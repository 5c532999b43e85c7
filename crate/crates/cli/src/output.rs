//! Rendering helpers shared by the commands.

use std::fmt::Write as _;

use hbsa_measurement::{DetectionEvent, Timing, SCHEMA_VERSION};
use hbsa_state::{HyperBellIndex, TwoPhotonState};
use serde::Serialize;

use crate::CliError;

/// Wraps a payload with the schema version.
#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn json<T: Serialize>(kind: &str, body: T) -> Result<String, CliError> {
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        kind,
        body,
    };
    serde_json::to_string_pretty(&doc)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(e.to_string()))
}

pub fn csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn title(idx: HyperBellIndex) -> String {
    format!(
        "{idx}  ({}s ⊗ {}p)",
        idx.spatial.symbol(),
        idx.polarization.symbol()
    )
}

pub fn event_line(e: &DetectionEvent, timing: Timing) -> String {
    format!(
        "{} {}  {:<6} {:>5} ns",
        e.first,
        e.second,
        e.interval.to_string(),
        timing.nanoseconds(e.interval)
    )
}

/// Amplitudes of a state, one term per line.
pub fn state_lines(s: &TwoPhotonState) -> String {
    let mut out = String::new();
    for ((a, b), c) in s.iter() {
        let _ = writeln!(out, "    {:+.6}{:+.6}i  |{a}; {b}>", c.re, c.im);
    }
    out
}

#[derive(Serialize)]
pub struct Term {
    pub first: String,
    pub second: String,
    pub re: f64,
    pub im: f64,
}

pub fn terms(s: &TwoPhotonState) -> Vec<Term> {
    s.iter()
        .map(|((a, b), c)| Term {
            first: a.to_string(),
            second: b.to_string(),
            re: c.re,
            im: c.im,
        })
        .collect()
}
