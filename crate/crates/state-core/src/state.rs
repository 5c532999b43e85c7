//! Sparse two-photon amplitude vectors.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::label::Label;
use crate::{StateError, ZERO_THRESHOLD};

/// Superposition over ordered pairs (photon A, photon B).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TwoPhotonState {
    amps: BTreeMap<(Label, Label), Complex64>,
}

impl TwoPhotonState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sums duplicate pairs and drops sub-threshold entries.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((Label, Label), Complex64)>,
    {
        let mut s = Self::new();
        for ((a, b), c) in terms {
            s.accumulate(a, b, c);
        }
        s.prune(ZERO_THRESHOLD);
        s
    }

    /// Adds `c` to the amplitude of `|a, b>` without pruning.
    pub fn accumulate(&mut self, a: Label, b: Label, c: Complex64) {
        *self.amps.entry((a, b)).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn prune(&mut self, threshold: f64) {
        self.amps.retain(|_, c| c.norm() >= threshold);
    }

    pub fn amplitude(&self, a: &Label, b: &Label) -> Complex64 {
        self.amps
            .get(&(*a, *b))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn amplitudes(&self) -> &BTreeMap<(Label, Label), Complex64> {
        &self.amps
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Label, Label), &Complex64)> {
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
        let mut out = self.scaled(Complex64::new(1.0 / n, 0.0));
        out.prune(ZERO_THRESHOLD);
        Ok(out)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        TwoPhotonState {
            amps: self.amps.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// `self + other`, pruned.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.amps {
            out.accumulate(a, b, c);
        }
        out.prune(ZERO_THRESHOLD);
        out
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        inner(&self.amps, &other.amps)
    }

    /// Exchanges the roles of photon A and photon B.
    pub fn swapped(&self) -> Self {
        TwoPhotonState {
            amps: self.amps.iter().map(|(&(a, b), &c)| ((b, a), c)).collect(),
        }
    }

    /// Euclidean distance `||self - other||`.
    pub fn distance(&self, other: &Self) -> f64 {
        distance(&self.amps, &other.amps, Complex64::new(1.0, 0.0))
    }
}

/// `sqrt(sum |c|^2)` of a sparse vector.
pub fn norm<K>(v: &BTreeMap<K, Complex64>) -> f64 {
    v.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `<a|b>` of two sparse vectors.
pub fn inner<K: Ord>(a: &BTreeMap<K, Complex64>, b: &BTreeMap<K, Complex64>) -> Complex64 {
    a.iter()
        .filter_map(|(k, x)| b.get(k).map(|y| x.conj() * y))
        .sum()
}

/// `||a - phase * b||`.
pub fn distance<K: Ord>(
    a: &BTreeMap<K, Complex64>,
    b: &BTreeMap<K, Complex64>,
    phase: Complex64,
) -> f64 {
    let mut acc = 0.0;
    for (k, x) in a {
        let y = b.get(k).copied().unwrap_or_default() * phase;
        acc += (x - y).norm_sqr();
    }
    for (k, y) in b {
        if !a.contains_key(k) {
            acc += (y * phase).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Smallest `||a - c b||` over the unit phase `c` fixed by the largest shared component.
///
/// Returns `None` when the supports share no component.
pub fn phase_aligned_distance<K: Ord>(
    a: &BTreeMap<K, Complex64>,
    b: &BTreeMap<K, Complex64>,
) -> Option<f64> {
    let (key, x) = a
        .iter()
        .filter(|(k, _)| b.contains_key(*k))
        .max_by(|(_, x), (_, y)| x.norm_sqr().total_cmp(&y.norm_sqr()))?;
    let y = b[key];
    if x.norm() == 0.0 || y.norm() == 0.0 {
        return None;
    }
    let ratio = x / y;
    let phase = ratio / ratio.norm();
    Some(distance(a, b, phase))
}

/// True iff some unit complex `c` gives `||a - c b|| <= tol`.
pub fn equal_up_to_phase<K: Ord>(
    a: &BTreeMap<K, Complex64>,
    b: &BTreeMap<K, Complex64>,
    tol: f64,
) -> bool {
    if a.is_empty() && b.is_empty() {
        return true;
    }
    match phase_aligned_distance(a, b) {
        Some(d) => d <= tol,
        None => norm(a) <= tol && norm(b) <= tol,
    }
}

/// Global-phase-insensitive comparison of two normalized states.
pub fn equal_up_to_global_phase(s1: &TwoPhotonState, s2: &TwoPhotonState, tol: f64) -> bool {
    equal_up_to_phase(&s1.amps, &s2.amps, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{Arm, Freq, Pol};

    fn l(arm: Arm, pol: Pol) -> Label {
        Label::new(arm, pol, Freq::W1)
    }

    fn sample() -> TwoPhotonState {
        TwoPhotonState::from_terms([
            (
                (l(Arm::A1, Pol::H), l(Arm::B1, Pol::H)),
                Complex64::new(0.6, 0.0),
            ),
            (
                (l(Arm::A2, Pol::V), l(Arm::B2, Pol::V)),
                Complex64::new(0.0, 0.8),
            ),
        ])
    }

    #[test]
    fn norm_and_normalize() {
        let s = sample();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let big = s.scaled(Complex64::new(2.0, 0.0));
        assert!((big.norm() - 2.0).abs() < 1e-15);
        assert!((big.normalize().unwrap().norm() - 1.0).abs() < 1e-15);
        assert!(matches!(
            TwoPhotonState::new().normalize(),
            Err(StateError::ZeroState)
        ));
    }

    #[test]
    fn global_phase() {
        let s = sample();
        assert!(equal_up_to_global_phase(
            &s,
            &s.scaled(Complex64::new(-1.0, 0.0)),
            1e-12
        ));
        assert!(equal_up_to_global_phase(
            &s,
            &s.scaled(Complex64::new(0.0, 1.0)),
            1e-12
        ));
        let other = TwoPhotonState::from_terms([(
            (l(Arm::A1, Pol::H), l(Arm::B2, Pol::H)),
            Complex64::new(1.0, 0.0),
        )]);
        assert!(!equal_up_to_global_phase(&s, &other, 1e-10));
    }

    #[test]
    fn accumulate_cancels() {
        let a = l(Arm::A1, Pol::H);
        let b = l(Arm::B1, Pol::V);
        let s = TwoPhotonState::from_terms([
            ((a, b), Complex64::new(0.5, 0.0)),
            ((a, b), Complex64::new(-0.5, 0.0)),
        ]);
        assert!(s.is_empty());
    }
}
