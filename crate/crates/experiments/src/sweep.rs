//! One-parameter noise sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::confusion::{confusion_matrix_with, ideal_classifier};
use crate::noise::{NoiseParam, NoiseParams};
use crate::ExperimentError;

/// Default number of grid points.
pub const GRID_POINTS: usize = 11;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "param-name")]
    pub param: &'static str,
    #[serde(rename = "param-value")]
    pub value: f64,
    #[serde(rename = "min-diagonal")]
    pub min_diagonal: f64,
    #[serde(rename = "mean-diagonal")]
    pub mean_diagonal: f64,
    #[serde(rename = "unclassified-mass")]
    pub unclassified_mass: f64,
}

/// `count` evenly spaced points from `start` to `stop` inclusive.
pub fn grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, ExperimentError> {
    match count {
        0 => Err(ExperimentError::Grid(count)),
        1 => Ok(vec![start]),
        n => Ok((0..n)
            .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
            .collect()),
    }
}

/// Sweeps `param` over `values` with the other parameters held at `base`.
pub fn sweep(
    param: NoiseParam,
    values: &[f64],
    base: &NoiseParams,
) -> Result<Vec<SweepRow>, ExperimentError> {
    let classifier = ideal_classifier()?;
    values
        .par_iter()
        .map(|&v| {
            let mut p = *base;
            match param {
                NoiseParam::HwpJitter => p.hwp_jitter = v,
                NoiseParam::FsLeakage => p.fs_leakage = v,
                NoiseParam::BsImbalance => p.bs_imbalance = v,
            }
            let m = confusion_matrix_with(&classifier, &p)?;
            Ok(SweepRow {
                param: param.name(),
                value: v,
                min_diagonal: m.min_diagonal(),
                mean_diagonal: m.mean_diagonal(),
                unclassified_mass: m.unclassified_mass(),
            })
        })
        .collect()
}

/// True when `mean_diagonal` never increases along the rows.
pub fn is_non_increasing(rows: &[SweepRow], slack: f64) -> bool {
    rows.windows(2)
        .all(|w| w[1].mean_diagonal <= w[0].mean_diagonal + slack)
}

pub fn to_csv(rows: &[SweepRow]) -> Result<String, ExperimentError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| ExperimentError::Export(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ExperimentError::Export(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ExperimentError::Export(e.to_string()))
}
