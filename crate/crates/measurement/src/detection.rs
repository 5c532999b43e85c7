//! From final states to click statistics.
//!
//! The two photons are indistinguishable once they reach the detectors, and a
//! coincidence record only fixes the delay of one click relative to the other.
//! An outcome is therefore an unordered pair of full labels at a relative delay.
//! Its amplitude is the sum of the two orderings; a pair of identical labels at
//! zero delay counts twice (Fock normalization). Frequency is not recorded, so
//! outcomes that differ only in frequency add as probabilities.

use std::collections::BTreeMap;

use hbsa_state::{ObservableKey, ObservableState, TwoPhotonState, XTag, ZERO_THRESHOLD};

use crate::event::{DetectionEvent, DetectorId, IntervalClass};
use crate::MeasureError;

/// Probabilities below this are dropped from distributions.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

fn detector(l: &hbsa_state::Label) -> DetectorId {
    DetectorId::new(l.arm, l.xtag, l.pol)
}

/// Click distribution of a two-photon state, sorted by event.
pub fn detection_distribution(
    state: &TwoPhotonState,
) -> Result<Vec<(DetectionEvent, f64)>, MeasureError> {
    for (&(a, b), _) in state.iter() {
        for l in [a, b] {
            if l.xtag == XTag::Unset {
                return Err(MeasureError::UnsetPath(l));
            }
        }
    }
    let obs = ObservableState::from_state(state);
    let mut outcomes: BTreeMap<ObservableKey, f64> = BTreeMap::new();
    for (&k, _) in obs.iter() {
        let swapped = k.exchanged();
        let canonical = k.min(swapped);
        if outcomes.contains_key(&canonical) {
            continue;
        }
        let p = if swapped == k {
            2.0 * obs.amplitude(&k).norm_sqr()
        } else {
            (obs.amplitude(&k) + obs.amplitude(&swapped)).norm_sqr()
        };
        outcomes.insert(canonical, p);
    }
    let mut events: BTreeMap<DetectionEvent, f64> = BTreeMap::new();
    for (k, p) in outcomes {
        if p < ZERO_THRESHOLD * ZERO_THRESHOLD {
            continue;
        }
        let interval = IntervalClass::from_rel(k.rel)?;
        let e = DetectionEvent::new(detector(&k.first), detector(&k.second), interval);
        *events.entry(e).or_insert(0.0) += p;
    }
    Ok(events
        .into_iter()
        .filter(|(_, p)| *p >= PROBABILITY_FLOOR)
        .collect())
}
