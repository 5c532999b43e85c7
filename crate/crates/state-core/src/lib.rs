//! Discrete label space and amplitude vectors for two photons carrying spatial,
//! polarization, frequency-path, frequency and delay degrees of freedom.

pub mod bell;
pub mod label;
pub mod observable;
pub mod state;

pub use bell::{
    frequency_bell, make_custom, make_hyper_bell, make_with_aux, polarization_bell, spatial_bell,
    Bell, HyperBellIndex, Part,
};
pub use label::{Arm, DelayTag, Freq, Label, Pol, RelDelay, XTag};
pub use num_complex::Complex64;
pub use observable::{same_ray, ObservableKey, ObservableState};
pub use state::{equal_up_to_global_phase, TwoPhotonState};

/// Amplitudes smaller than this are dropped.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Default tolerance for state comparisons.
pub const COMPARE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StateError {
    #[error("cannot normalize the zero state")]
    ZeroState,
    #[error("{0} part has zero norm")]
    ZeroPart(&'static str),
    #[error("unknown {kind} '{name}'")]
    UnknownName { kind: &'static str, name: String },
}
