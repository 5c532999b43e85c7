//! Click statistics of analyzer outputs, the 16-row signature table, the
//! reference table, and event classification.

pub mod detection;
pub mod event;
pub mod export;
pub mod reference;
pub mod table;

pub use detection::{detection_distribution, PROBABILITY_FLOOR};
pub use event::{interval_class, DetectionEvent, DetectorId, IntervalClass, Timing};
pub use export::{
    table_document, to_csv, to_json, EventRecord, RowRecord, TableDocument, SCHEMA_VERSION,
};
pub use reference::{expand_entry, oracle_intervals, oracle_table};
pub use table::{
    build_table, classify, default_aux, diff_tables, interval_groups, signature_table, Classifier,
    EventSets, IntervalMismatch, RowDiff, SignatureTable, TableDiff, ROW_TOLERANCE,
};

use hbsa_circuit::CircuitError;
use hbsa_state::{HyperBellIndex, Label, RelDelay, StateError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeasureError {
    #[error("unknown detector `{0}` (expected e.g. a11H)")]
    BadDetector(String),
    #[error("unknown interval class `{0}` (expected 0, t0, t1 or t1±t0)")]
    BadInterval(String),
    #[error("relative delay {0:?} is not one of 0, t0, t1, t1±t0")]
    UnreachableInterval(RelDelay),
    #[error("photon {0} reached detection without a frequency path")]
    UnsetPath(Label),
    #[error("input {input}: {source}")]
    Input {
        input: HyperBellIndex,
        source: Box<MeasureError>,
    },
    #[error("input {input}: {source}")]
    Circuit {
        input: HyperBellIndex,
        source: CircuitError,
    },
    #[error(transparent)]
    State(#[from] StateError),
    #[error("input {input}: probabilities sum to {total}")]
    RowNotNormalized { input: HyperBellIndex, total: f64 },
    #[error("event {event} occurs for both {first} and {second}")]
    Overlap {
        event: DetectionEvent,
        first: HyperBellIndex,
        second: HyperBellIndex,
    },
    #[error("event {0} does not occur for any input")]
    UnknownEvent(DetectionEvent),
    #[error("export failed: {0}")]
    Export(String),
}

impl MeasureError {
    /// Attaches the input that produced this error.
    pub fn for_input(self, input: HyperBellIndex) -> MeasureError {
        MeasureError::Input {
            input,
            source: Box::new(self),
        }
    }
}
