//! The analyzer pipeline as a sequence of lifted elements, its worked-example
//! reference states, and a text format for circuits.

pub mod dsl;
pub mod program;
pub mod reference;

pub use dsl::{parse_circuit, serialize_circuit, ParseError, ParseErrorKind, SerializeError};
pub use program::{
    build_hbsa_circuit, build_hbsa_circuit_with, run, stage_of, stage_snapshots, stage_states,
    Circuit, Step, HBSA_WIRING,
};
pub use reference::{check_worked_example, worked_example, worked_examples, StageVerdict};

use hbsa_elements::ElementError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CircuitError {
    #[error("step {index} ({name}): {source}")]
    Step {
        index: usize,
        name: String,
        source: ElementError,
    },
    #[error(transparent)]
    Element(#[from] ElementError),
}
