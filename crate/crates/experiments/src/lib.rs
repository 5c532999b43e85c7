//! Noise studies, group counting and shot sampling on top of the analyzer.

pub mod confusion;
pub mod groups;
pub mod noise;
pub mod sampling;
pub mod sweep;

pub use confusion::{confusion_matrix, confusion_matrix_with, ideal_classifier, ConfusionMatrix};
pub use groups::{group_count, groups};
pub use noise::{perturb, perturb_element, perturbed_circuit, NoiseParam, NoiseParams};
pub use sampling::sample_events;
pub use sweep::{grid, is_non_increasing, sweep, SweepRow, GRID_POINTS};

use hbsa_circuit::CircuitError;
use hbsa_elements::ElementError;
use hbsa_measurement::MeasureError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error("{name} = {value} is not a valid noise parameter")]
    Param { name: &'static str, value: f64 },
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("at least one shot is required")]
    NoShots,
    #[error("cannot sample: {0}")]
    Sampling(String),
    #[error("a grid needs at least one point, got {0}")]
    Grid(usize),
    #[error("export failed: {0}")]
    Export(String),
}
