//! Signature tables, classification and table comparison.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hbsa_circuit::{run, Circuit};
use hbsa_state::{frequency_bell, make_with_aux, Bell, Freq, HyperBellIndex, Part};
use rayon::prelude::*;

use crate::detection::detection_distribution;
use crate::event::{DetectionEvent, DetectorId, IntervalClass};
use crate::MeasureError;

/// Row sums may deviate from 1 by at most this much.
pub const ROW_TOLERANCE: f64 = 1e-10;

/// Per-input click distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureTable {
    pub rows: BTreeMap<HyperBellIndex, Vec<(DetectionEvent, f64)>>,
}

/// Per-input event sets without probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSets {
    pub rows: BTreeMap<HyperBellIndex, BTreeSet<DetectionEvent>>,
}

impl SignatureTable {
    pub fn event_sets(&self) -> EventSets {
        EventSets {
            rows: self
                .rows
                .iter()
                .map(|(k, v)| (*k, v.iter().map(|(e, _)| *e).collect()))
                .collect(),
        }
    }

    pub fn row_total(&self, idx: &HyperBellIndex) -> f64 {
        self.rows
            .get(idx)
            .map_or(0.0, |r| r.iter().map(|(_, p)| p).sum())
    }

    /// Fails on the first event that appears in two rows.
    pub fn check_disjoint(&self) -> Result<(), MeasureError> {
        let mut owner: HashMap<DetectionEvent, HyperBellIndex> = HashMap::new();
        for (idx, row) in &self.rows {
            for (e, _) in row {
                if let Some(prev) = owner.insert(*e, *idx) {
                    return Err(MeasureError::Overlap {
                        event: *e,
                        first: prev,
                        second: *idx,
                    });
                }
            }
        }
        Ok(())
    }

    /// Interval classes present in each row.
    pub fn intervals(&self) -> BTreeMap<HyperBellIndex, BTreeSet<IntervalClass>> {
        self.rows
            .iter()
            .map(|(k, v)| (*k, v.iter().map(|(e, _)| e.interval).collect()))
            .collect()
    }
}

/// The auxiliary frequency state of the scheme.
pub fn default_aux() -> Part<Freq> {
    frequency_bell(Bell::PsiPlus)
}

/// Runs all 16 inputs (with auxiliary state `aux`) through `circuit`.
///
/// Checks row normalization but not disjointness.
pub fn build_table(circuit: &Circuit, aux: &Part<Freq>) -> Result<SignatureTable, MeasureError> {
    let rows: Result<Vec<_>, MeasureError> = HyperBellIndex::all()
        .into_par_iter()
        .map(|idx| {
            let input = make_with_aux(idx, aux).map_err(MeasureError::State)?;
            let out = run(circuit, &input)
                .map_err(|source| MeasureError::Circuit { input: idx, source })?;
            let dist = detection_distribution(&out).map_err(|e| e.for_input(idx))?;
            let total: f64 = dist.iter().map(|(_, p)| p).sum();
            if (total - 1.0).abs() > ROW_TOLERANCE {
                return Err(MeasureError::RowNotNormalized { input: idx, total });
            }
            Ok((idx, dist))
        })
        .collect();
    Ok(SignatureTable {
        rows: rows?.into_iter().collect(),
    })
}

/// The signature table of `circuit`; fails unless rows are normalized and disjoint.
pub fn signature_table(circuit: &Circuit) -> Result<SignatureTable, MeasureError> {
    let t = build_table(circuit, &default_aux())?;
    t.check_disjoint()?;
    Ok(t)
}

/// Event-to-input lookup built from a disjoint table.
#[derive(Debug, Clone)]
pub struct Classifier {
    owner: HashMap<DetectionEvent, HyperBellIndex>,
}

impl Classifier {
    pub fn new(table: &SignatureTable) -> Result<Self, MeasureError> {
        table.check_disjoint()?;
        let owner = table
            .rows
            .iter()
            .flat_map(|(idx, row)| row.iter().map(move |(e, _)| (*e, *idx)))
            .collect();
        Ok(Classifier { owner })
    }

    pub fn classify(&self, event: &DetectionEvent) -> Result<HyperBellIndex, MeasureError> {
        self.owner
            .get(event)
            .copied()
            .ok_or(MeasureError::UnknownEvent(*event))
    }
}

/// The input whose row contains `event`.
pub fn classify(
    event: &DetectionEvent,
    table: &SignatureTable,
) -> Result<HyperBellIndex, MeasureError> {
    Classifier::new(table)?.classify(event)
}

/// An event whose detector pair matches but whose interval class does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMismatch {
    pub detectors: (DetectorId, DetectorId),
    pub expected: IntervalClass,
    pub found: IntervalClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDiff {
    pub input: HyperBellIndex,
    pub missing: Vec<DetectionEvent>,
    pub extra: Vec<DetectionEvent>,
    pub interval_mismatches: Vec<IntervalMismatch>,
}

impl RowDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.interval_mismatches.is_empty()
    }
}

/// Rows that differ; empty means exact agreement.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableDiff {
    pub rows: Vec<RowDiff>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn matching_rows(&self) -> usize {
        16 - self.rows.len()
    }
}

/// Compares `computed` against `oracle` row by row.
pub fn diff_tables(computed: &EventSets, oracle: &EventSets) -> TableDiff {
    let empty = BTreeSet::new();
    let mut rows = Vec::new();
    for idx in HyperBellIndex::all() {
        let c = computed.rows.get(&idx).unwrap_or(&empty);
        let o = oracle.rows.get(&idx).unwrap_or(&empty);
        let mut missing: Vec<DetectionEvent> = o.difference(c).copied().collect();
        let mut extra: Vec<DetectionEvent> = c.difference(o).copied().collect();
        let mut interval_mismatches = Vec::new();
        missing.retain(|m| {
            let Some(pos) = extra.iter().position(|e| e.detectors() == m.detectors()) else {
                return true;
            };
            let e = extra.remove(pos);
            interval_mismatches.push(IntervalMismatch {
                detectors: m.detectors(),
                expected: m.interval,
                found: e.interval,
            });
            false
        });
        let row = RowDiff {
            input: idx,
            missing,
            extra,
            interval_mismatches,
        };
        if !row.is_empty() {
            rows.push(row);
        }
    }
    TableDiff { rows }
}

/// Rows grouped by their interval class; rows with several classes are listed under each.
pub fn interval_groups(table: &SignatureTable) -> BTreeMap<IntervalClass, Vec<HyperBellIndex>> {
    let mut out: BTreeMap<IntervalClass, Vec<HyperBellIndex>> = BTreeMap::new();
    for (idx, classes) in table.intervals() {
        for c in classes {
            out.entry(c).or_default().push(idx);
        }
    }
    out
}
