//! Finite-shot sampling of detection events.

use std::collections::BTreeMap;

use hbsa_measurement::{detection_distribution, DetectionEvent};
use hbsa_state::TwoPhotonState;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ExperimentError;

/// Draws `shots` events from the exact click distribution of `state`.
pub fn sample_events(
    state: &TwoPhotonState,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<DetectionEvent, u64>, ExperimentError> {
    if shots == 0 {
        return Err(ExperimentError::NoShots);
    }
    let dist = detection_distribution(state)?;
    let weights = WeightedIndex::new(dist.iter().map(|(_, p)| *p))
        .map_err(|e| ExperimentError::Sampling(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist[weights.sample(&mut rng)].0).or_insert(0) += 1;
    }
    Ok(counts)
}
