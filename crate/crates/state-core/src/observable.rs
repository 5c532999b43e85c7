//! Two-photon states as seen by time-resolved coincidence detection.
//!
//! Detectors only register the delay of one photon relative to the other, so
//! amplitudes that differ by a common delay shift are added coherently. The
//! key keeps photon order; [`ObservableState::symmetrized`] projects onto the
//! exchange-symmetric part, which is all that two indistinguishable photons
//! can reveal.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::label::{DelayTag, Label, RelDelay};
use crate::state::{equal_up_to_phase, norm, TwoPhotonState};
use crate::{StateError, ZERO_THRESHOLD};

/// Photon labels with delays stripped, plus the delay of the first relative to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObservableKey {
    pub first: Label,
    pub second: Label,
    pub rel: RelDelay,
}

impl ObservableKey {
    pub fn new(first: Label, second: Label, rel: RelDelay) -> Self {
        ObservableKey {
            first: first.with_delay(DelayTag::ZERO),
            second: second.with_delay(DelayTag::ZERO),
            rel,
        }
    }

    /// The same configuration written with the photon order reversed.
    pub fn exchanged(self) -> Self {
        ObservableKey {
            first: self.second,
            second: self.first,
            rel: self.rel.negated(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ObservableState {
    amps: BTreeMap<ObservableKey, Complex64>,
}

impl ObservableState {
    pub fn from_terms<I: IntoIterator<Item = (ObservableKey, Complex64)>>(terms: I) -> Self {
        let mut amps = BTreeMap::new();
        for (k, c) in terms {
            *amps.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let mut s = ObservableState { amps };
        s.prune();
        s
    }

    pub fn from_state(state: &TwoPhotonState) -> Self {
        Self::from_terms(
            state
                .iter()
                .map(|(&(a, b), &c)| (ObservableKey::new(a, b, a.delay.minus(b.delay)), c)),
        )
    }

    fn prune(&mut self) {
        self.amps.retain(|_, c| c.norm() >= ZERO_THRESHOLD);
    }

    /// `(P + P_swap) / 2` applied to the state.
    pub fn symmetrized(&self) -> Self {
        Self::from_terms(
            self.amps
                .iter()
                .flat_map(|(&k, &c)| [(k, c * 0.5), (k.exchanged(), c * 0.5)]),
        )
    }

    pub fn amplitude(&self, key: &ObservableKey) -> Complex64 {
        self.amps.get(key).copied().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> &BTreeMap<ObservableKey, Complex64> {
        &self.amps
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ObservableKey, &Complex64)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    pub fn normalize(&self) -> Result<Self, StateError> {
        let n = self.norm();
        if n < ZERO_THRESHOLD {
            return Err(StateError::ZeroState);
        }
        Ok(Self::from_terms(self.amps.iter().map(|(k, c)| (*k, c / n))))
    }

    /// Overlap `|<a|b>|` of the two normalized rays, in [0, 1].
    pub fn ray_overlap(&self, other: &Self) -> Result<f64, StateError> {
        let a = self.normalize()?;
        let b = other.normalize()?;
        Ok(crate::state::inner(&a.amps, &b.amps).norm())
    }
}

/// True iff both states are nonzero and equal up to a global phase after normalization.
pub fn same_ray(a: &ObservableState, b: &ObservableState, tol: f64) -> bool {
    match (a.normalize(), b.normalize()) {
        (Ok(a), Ok(b)) => equal_up_to_phase(&a.amps, &b.amps, tol),
        _ => false,
    }
}
