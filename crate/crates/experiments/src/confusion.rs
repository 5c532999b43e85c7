//! Confusion matrices of the ideal classifier on imperfect circuits.

use hbsa_circuit::build_hbsa_circuit;
use hbsa_measurement::{build_table, default_aux, signature_table, Classifier, MeasureError};
use hbsa_state::HyperBellIndex;
use serde::Serialize;

use crate::noise::{perturbed_circuit, NoiseParams};
use crate::ExperimentError;

/// `entries[i][j]`: probability that input `i` (in `HyperBellIndex::all()` order)
/// is classified as `j`. `unclassified[i]`: probability of an event no ideal row contains.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusionMatrix {
    pub entries: Vec<Vec<f64>>,
    pub unclassified: Vec<f64>,
}

impl ConfusionMatrix {
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.entries.len())
            .map(|i| self.entries[i][i])
            .collect()
    }

    pub fn min_diagonal(&self) -> f64 {
        self.diagonal().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn mean_diagonal(&self) -> f64 {
        let d = self.diagonal();
        d.iter().sum::<f64>() / d.len() as f64
    }

    /// Unclassified probability averaged over inputs.
    pub fn unclassified_mass(&self) -> f64 {
        self.unclassified.iter().sum::<f64>() / self.unclassified.len() as f64
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.entries[i].iter().sum::<f64>() + self.unclassified[i]
    }
}

/// The classifier built from the ideal analyzer's table.
pub fn ideal_classifier() -> Result<Classifier, ExperimentError> {
    Ok(Classifier::new(&signature_table(&build_hbsa_circuit())?)?)
}

pub fn confusion_matrix_with(
    classifier: &Classifier,
    p: &NoiseParams,
) -> Result<ConfusionMatrix, ExperimentError> {
    let table = build_table(&perturbed_circuit(p)?, &default_aux())?;
    let mut entries = vec![vec![0.0; 16]; 16];
    let mut unclassified = vec![0.0; 16];
    for (idx, row) in &table.rows {
        let i = idx.ordinal();
        for (e, prob) in row {
            match classifier.classify(e) {
                Ok(j) => entries[i][j.ordinal()] += prob,
                Err(MeasureError::UnknownEvent(_)) => unclassified[i] += prob,
                Err(other) => return Err(other.into()),
            }
        }
    }
    Ok(ConfusionMatrix {
        entries,
        unclassified,
    })
}

pub fn confusion_matrix(p: &NoiseParams) -> Result<ConfusionMatrix, ExperimentError> {
    confusion_matrix_with(&ideal_classifier()?, p)
}

/// Row labels of a confusion matrix.
pub fn row_labels() -> Vec<HyperBellIndex> {
    HyperBellIndex::all()
}
