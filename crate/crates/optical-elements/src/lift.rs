//! Acting with single-photon maps on two-photon states.

use std::fmt;
use std::str::FromStr;

use hbsa_state::{Complex64, Label, TwoPhotonState, ZERO_THRESHOLD};
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::map::{Column, PhotonMap};
use crate::ElementError;

/// Which photon(s) an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    A,
    B,
    Both,
}

impl Slot {
    pub fn acts_on_a(self) -> bool {
        matches!(self, Slot::A | Slot::Both)
    }

    pub fn acts_on_b(self) -> bool {
        matches!(self, Slot::B | Slot::Both)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::A => "A",
            Slot::B => "B",
            Slot::Both => "both",
        })
    }
}

impl FromStr for Slot {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Slot::A),
            "B" => Ok(Slot::B),
            "both" => Ok(Slot::Both),
            _ => Err(()),
        }
    }
}

/// An element lifted to the two-photon space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoPhotonOperator {
    pub element: Element,
    pub slot: Slot,
}

pub fn lift(element: Element, slot: Slot) -> TwoPhotonOperator {
    TwoPhotonOperator { element, slot }
}

impl TwoPhotonOperator {
    pub fn apply(&self, state: &TwoPhotonState) -> Result<TwoPhotonState, ElementError> {
        apply_map(&self.element, self.slot, state)
    }
}

impl fmt::Display for TwoPhotonOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.element, self.slot)
    }
}

fn image<M: PhotonMap + ?Sized>(map: &M, l: &Label, acts: bool) -> Result<Column, ElementError> {
    if acts {
        map.column(l)
    } else {
        Ok(vec![(*l, Complex64::new(1.0, 0.0))])
    }
}

/// Applies `map` to the chosen photon(s) of `state` by linearity.
pub fn apply_map<M: PhotonMap + ?Sized>(
    map: &M,
    slot: Slot,
    state: &TwoPhotonState,
) -> Result<TwoPhotonState, ElementError> {
    let mut out = TwoPhotonState::new();
    for (&(a, b), &c) in state.iter() {
        let ca = image(map, &a, slot.acts_on_a())?;
        let cb = image(map, &b, slot.acts_on_b())?;
        for (la, xa) in &ca {
            for (lb, xb) in &cb {
                out.accumulate(*la, *lb, c * xa * xb);
            }
        }
    }
    out.prune(ZERO_THRESHOLD);
    Ok(out)
}
