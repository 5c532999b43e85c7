//! Structured and flat-table renderings of a signature table.

use serde::Serialize;

use crate::event::{IntervalClass, Timing};
use crate::table::SignatureTable;
use crate::MeasureError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct EventRecord {
    pub det1: String,
    pub det2: String,
    pub interval: String,
    pub interval_ns: f64,
    pub probability: f64,
}

#[derive(Debug, Serialize)]
pub struct RowRecord {
    pub spatial: String,
    pub polarization: String,
    /// The interval class shared by every event of the row, if there is one.
    pub interval: Option<String>,
    pub events: Vec<EventRecord>,
}

#[derive(Debug, Serialize)]
pub struct TableDocument {
    pub schema_version: u32,
    pub timing: Timing,
    pub rows: Vec<RowRecord>,
}

fn common_interval(classes: impl IntoIterator<Item = IntervalClass>) -> Option<IntervalClass> {
    let mut it = classes.into_iter();
    let first = it.next()?;
    it.all(|c| c == first).then_some(first)
}

pub fn table_document(table: &SignatureTable, timing: Timing) -> TableDocument {
    let rows = table
        .rows
        .iter()
        .map(|(idx, row)| RowRecord {
            spatial: idx.spatial.ascii().to_string(),
            polarization: idx.polarization.ascii().to_string(),
            interval: common_interval(row.iter().map(|(e, _)| e.interval)).map(|c| c.to_string()),
            events: row
                .iter()
                .map(|(e, p)| EventRecord {
                    det1: e.first.to_string(),
                    det2: e.second.to_string(),
                    interval: e.interval.to_string(),
                    interval_ns: timing.nanoseconds(e.interval),
                    probability: *p,
                })
                .collect(),
        })
        .collect();
    TableDocument {
        schema_version: SCHEMA_VERSION,
        timing,
        rows,
    }
}

pub fn to_json(table: &SignatureTable, timing: Timing) -> Result<String, MeasureError> {
    serde_json::to_string_pretty(&table_document(table, timing))
        .map_err(|e| MeasureError::Export(e.to_string()))
}

#[derive(Debug, Serialize)]
struct FlatRow<'a> {
    spatial: &'a str,
    pol: &'a str,
    interval: String,
    det1: String,
    det2: String,
    probability: f64,
}

/// One CSV line per (input, event).
pub fn to_csv(table: &SignatureTable) -> Result<String, MeasureError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (idx, row) in &table.rows {
        for (e, p) in row {
            w.serialize(FlatRow {
                spatial: idx.spatial.ascii(),
                pol: idx.polarization.ascii(),
                interval: e.interval.to_string(),
                det1: e.first.to_string(),
                det2: e.second.to_string(),
                probability: *p,
            })
            .map_err(|e| MeasureError::Export(e.to_string()))?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| MeasureError::Export(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| MeasureError::Export(e.to_string()))
}
