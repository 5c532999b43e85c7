//! Linear-optical elements as sparse single-photon maps, and their action on
//! two-photon states.

pub mod element;
pub mod lift;
pub mod map;

pub use element::{
    bs, bs_imbalanced, delay, fbs, fs, fs_leaky, fs_on_x1, hwp, stage2_map, ui, ui_as_printed,
    DelayKind, Element, HADAMARD_ANGLE,
};
pub use lift::{apply_map, lift, Slot, TwoPhotonOperator};
pub use map::{Column, FbsInverse, PhotonMap, SinglePhotonMap};

use hbsa_state::{Arm, Label};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ElementError {
    #[error("{element}: label [{label}] outside domain: {reason}")]
    Domain {
        element: String,
        label: Label,
        reason: &'static str,
    },
    #[error("ui needs two different arms, got m = n = {0}")]
    SameArms(Arm),
    #[error("frequency shifter path must be x1 or x2")]
    UnsetPath,
    #[error("{name} = {value} outside [{min}, {max}]")]
    ParamRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
}
