//! Command implementations. Each returns the text to print and whether all
//! checks passed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use hbsa_circuit::{
    build_hbsa_circuit, build_hbsa_circuit_with, check_worked_example, parse_circuit, run,
    stage_snapshots, worked_example, worked_examples, Circuit, StageVerdict,
};
use hbsa_elements::SinglePhotonMap;
use hbsa_experiments::{grid, sample_events, sweep, NoiseParam, NoiseParams, SweepRow};
use hbsa_measurement::{
    build_table, classify, default_aux, detection_distribution, diff_tables, oracle_intervals,
    oracle_table, table_document, to_csv, DetectionEvent, EventRecord, SignatureTable, TableDiff,
    Timing,
};
use hbsa_state::{make_hyper_bell, DelayTag, HyperBellIndex, Label};
use serde::Serialize;

use crate::args::{Format, Pairing, Range};
use crate::output::{csv, event_line, json, state_lines, terms, title, Term};
use crate::CliError;

pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, ok: true }
    }
}

fn records(row: &[(DetectionEvent, f64)], timing: Timing) -> Vec<EventRecord> {
    row.iter()
        .map(|(e, p)| EventRecord {
            det1: e.first.to_string(),
            det2: e.second.to_string(),
            interval: e.interval.to_string(),
            interval_ns: timing.nanoseconds(e.interval),
            probability: *p,
        })
        .collect()
}

fn canonical_output(idx: HyperBellIndex) -> Result<hbsa_state::TwoPhotonState, CliError> {
    Ok(run(&build_hbsa_circuit(), &make_hyper_bell(idx))?)
}

pub fn analyze(idx: HyperBellIndex, format: Format, timing: Timing) -> Result<Report, CliError> {
    let dist = detection_distribution(&canonical_output(idx)?)?;
    let text = match format {
        Format::Human => {
            let mut s = format!("{}\n", title(idx));
            for (e, p) in &dist {
                let _ = writeln!(s, "  {}  p = {p:.6}", event_line(e, timing));
            }
            let total: f64 = dist.iter().map(|(_, p)| p).sum();
            let _ = writeln!(s, "  {} events, total probability {total:.12}", dist.len());
            s
        }
        Format::StructuredRecords => {
            #[derive(Serialize)]
            struct Body {
                input: String,
                timing: Timing,
                events: Vec<EventRecord>,
            }
            json(
                "analysis",
                Body {
                    input: idx.to_string(),
                    timing,
                    events: records(&dist, timing),
                },
            )?
        }
        Format::FlatTable => {
            let t = SignatureTable {
                rows: BTreeMap::from([(idx, dist)]),
            };
            to_csv(&t)?
        }
    };
    Ok(Report::ok(text))
}

fn render_table(t: &SignatureTable, format: Format, timing: Timing) -> Result<String, CliError> {
    Ok(match format {
        Format::Human => {
            let mut s = String::new();
            for (idx, row) in &t.rows {
                let _ = writeln!(s, "{}  [{} events]", title(*idx), row.len());
                for (e, p) in row {
                    let _ = writeln!(s, "  {}  p = {p:.6}", event_line(e, timing));
                }
            }
            s
        }
        Format::StructuredRecords => {
            let mut s = serde_json::to_string_pretty(&table_document(t, timing))
                .map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::FlatTable => to_csv(t)?,
    })
}

#[derive(Serialize)]
struct DiffRecord {
    input: String,
    kind: &'static str,
    det1: String,
    det2: String,
    expected: String,
    found: String,
}

fn diff_records(d: &TableDiff) -> Vec<DiffRecord> {
    let mut out = Vec::new();
    for r in &d.rows {
        let input = r.input.to_string();
        for e in &r.missing {
            out.push(DiffRecord {
                input: input.clone(),
                kind: "missing",
                det1: e.first.to_string(),
                det2: e.second.to_string(),
                expected: e.interval.to_string(),
                found: String::new(),
            });
        }
        for e in &r.extra {
            out.push(DiffRecord {
                input: input.clone(),
                kind: "extra",
                det1: e.first.to_string(),
                det2: e.second.to_string(),
                expected: String::new(),
                found: e.interval.to_string(),
            });
        }
        for m in &r.interval_mismatches {
            out.push(DiffRecord {
                input: input.clone(),
                kind: "interval",
                det1: m.detectors.0.to_string(),
                det2: m.detectors.1.to_string(),
                expected: m.expected.to_string(),
                found: m.found.to_string(),
            });
        }
    }
    out
}

fn render_diff(d: &TableDiff, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Human => {
            let mut s = String::new();
            for r in &d.rows {
                let _ = writeln!(
                    s,
                    "{}: {} missing, {} extra, {} interval mismatches",
                    title(r.input),
                    r.missing.len(),
                    r.extra.len(),
                    r.interval_mismatches.len()
                );
                for e in &r.missing {
                    let _ = writeln!(s, "  - {e}");
                }
                for e in &r.extra {
                    let _ = writeln!(s, "  + {e}");
                }
                for m in &r.interval_mismatches {
                    let _ = writeln!(
                        s,
                        "  ~ {} {}: expected {}, found {}",
                        m.detectors.0, m.detectors.1, m.expected, m.found
                    );
                }
            }
            let _ = writeln!(s, "{}/16 rows match", d.matching_rows());
            s
        }
        Format::StructuredRecords => {
            #[derive(Serialize)]
            struct Body {
                matching_rows: usize,
                differences: Vec<DiffRecord>,
            }
            json(
                "table-diff",
                Body {
                    matching_rows: d.matching_rows(),
                    differences: diff_records(d),
                },
            )?
        }
        Format::FlatTable => csv(diff_records(d))?,
    })
}

pub fn table(
    check: bool,
    pairing: Option<Pairing>,
    format: Format,
    timing: Timing,
) -> Result<Report, CliError> {
    let circuit = match pairing {
        Some(Pairing(p)) => {
            build_hbsa_circuit_with(&p).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => build_hbsa_circuit(),
    };
    let t = build_table(&circuit, &default_aux())?;
    if !check {
        return Ok(Report::ok(render_table(&t, format, timing)?));
    }
    let d = diff_tables(&t.event_sets(), &oracle_table());
    Ok(Report {
        text: render_diff(&d, format)?,
        ok: d.is_empty(),
    })
}

/// One named pass/fail check.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn render_checks(kind: &str, checks: &[Check], format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Human => {
            let mut s = String::new();
            for c in checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(s, "{status} {}: {}", c.name, c.detail);
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
            s
        }
        Format::StructuredRecords => {
            #[derive(Serialize)]
            struct Body<'a> {
                checks: &'a [Check],
            }
            json(kind, Body { checks })?
        }
        Format::FlatTable => csv(checks)?,
    })
}

fn checks_report(kind: &str, checks: Vec<Check>, format: Format) -> Result<Report, CliError> {
    Ok(Report {
        text: render_checks(kind, &checks, format)?,
        ok: checks.iter().all(|c| c.passed),
    })
}

fn verdict_check(idx: HyperBellIndex, v: &StageVerdict) -> Check {
    Check {
        name: format!("{idx} stage {}", v.stage),
        passed: v.passed,
        detail: v.detail.clone(),
    }
}

pub fn verify(format: Format) -> Result<Report, CliError> {
    let circuit = build_hbsa_circuit();
    let mut checks = Vec::new();
    for ex in worked_examples() {
        for v in check_worked_example(&circuit, &ex)? {
            checks.push(verdict_check(ex.input, &v));
        }
    }
    let t = build_table(&circuit, &default_aux())?;
    checks.push(Check {
        name: "row normalization".into(),
        passed: true,
        detail: "all 16 rows sum to 1 within 1e-10".into(),
    });
    let d = diff_tables(&t.event_sets(), &oracle_table());
    checks.push(Check {
        name: "signature table".into(),
        passed: d.is_empty(),
        detail: format!("{}/16 rows match the reference", d.matching_rows()),
    });
    let reference = oracle_intervals();
    let bad: Vec<String> = t
        .intervals()
        .into_iter()
        .filter(|(idx, c)| c.len() != 1 || !c.contains(&reference[idx]))
        .map(|(idx, _)| idx.to_string())
        .collect();
    checks.push(Check {
        name: "interval groups".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "each row has the reference interval class".into()
        } else {
            format!("rows off: {}", bad.join(" "))
        },
    });
    let round_trip = match t.check_disjoint() {
        Err(e) => Err(e.to_string()),
        Ok(()) => t
            .rows
            .iter()
            .flat_map(|(idx, row)| row.iter().map(move |(e, _)| (idx, e)))
            .try_for_each(|(idx, e)| match classify(e, &t) {
                Ok(j) if j == *idx => Ok(()),
                Ok(j) => Err(format!("{e} from {idx} classified as {j}")),
                Err(err) => Err(err.to_string()),
            }),
    };
    checks.push(Check {
        name: "classifier round trip".into(),
        passed: round_trip.is_ok(),
        detail: round_trip
            .err()
            .unwrap_or_else(|| "16/16 inputs recovered".into()),
    });
    checks_report("verify", checks, format)
}

pub fn trace(idx: HyperBellIndex, format: Format) -> Result<Report, CliError> {
    let circuit = build_hbsa_circuit();
    let input = make_hyper_bell(idx);
    let snaps = stage_snapshots(&circuit, &input)?;
    let verdicts: Option<Vec<StageVerdict>> = match worked_example(idx) {
        Some(ex) => {
            let mut v = vec![StageVerdict {
                stage: 0,
                passed: snaps[0].1 == input,
                detail: "constructed input".into(),
            }];
            v.extend(check_worked_example(&circuit, &ex)?);
            Some(v)
        }
        None => None,
    };
    let verdict_for = |k: usize| {
        verdicts
            .as_ref()
            .and_then(|v| v.iter().find(|x| x.stage as usize == k))
    };
    let ok = verdicts.as_ref().is_none_or(|v| v.iter().all(|x| x.passed));
    let text = match format {
        Format::Human => {
            let mut s = format!("{}\n", title(idx));
            for (k, (name, state)) in snaps.iter().enumerate() {
                let _ = writeln!(s, "{name}: {} terms", state.len());
                s.push_str(&state_lines(state));
                match verdict_for(k) {
                    Some(v) => {
                        let status = if v.passed { "PASS" } else { "FAIL" };
                        let _ = writeln!(s, "  {status} {name}: {}", v.detail);
                    }
                    None => {
                        let _ = writeln!(s, "  {name}: no reference state");
                    }
                }
            }
            s
        }
        Format::StructuredRecords => {
            #[derive(Serialize)]
            struct Snapshot {
                name: String,
                terms: Vec<Term>,
                status: &'static str,
                detail: String,
            }
            #[derive(Serialize)]
            struct Body {
                input: String,
                snapshots: Vec<Snapshot>,
            }
            let snapshots = snaps
                .iter()
                .enumerate()
                .map(|(k, (name, st))| {
                    let (status, detail) = match verdict_for(k) {
                        Some(v) => (if v.passed { "pass" } else { "fail" }, v.detail.clone()),
                        None => ("no-reference", String::new()),
                    };
                    Snapshot {
                        name: name.clone(),
                        terms: terms(st),
                        status,
                        detail,
                    }
                })
                .collect();
            json(
                "trace",
                Body {
                    input: idx.to_string(),
                    snapshots,
                },
            )?
        }
        Format::FlatTable => {
            #[derive(Serialize)]
            struct Row {
                snapshot: String,
                first: String,
                second: String,
                re: f64,
                im: f64,
            }
            csv(snaps.iter().flat_map(|(name, st)| {
                terms(st).into_iter().map(move |t| Row {
                    snapshot: name.clone(),
                    first: t.first,
                    second: t.second,
                    re: t.re,
                    im: t.im,
                })
            }))?
        }
    };
    Ok(Report { text, ok })
}

pub fn sweep_cmd(
    ranges: [(NoiseParam, Option<Range>); 3],
    format: Format,
) -> Result<Report, CliError> {
    let mut requested: Vec<(NoiseParam, Range)> = ranges
        .into_iter()
        .filter_map(|(p, r)| r.map(|r| (p, r)))
        .collect();
    if requested.is_empty() {
        requested.push((
            NoiseParam::HwpJitter,
            Range {
                start: 0.0,
                stop: 5.0,
                count: hbsa_experiments::GRID_POINTS,
            },
        ));
    }
    let mut rows: Vec<SweepRow> = Vec::new();
    for (param, r) in requested {
        let values = grid(r.start, r.stop, r.count)?;
        for v in &values {
            NoiseParams::single(param, *v)
                .validate()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        rows.extend(sweep(param, &values, &NoiseParams::ideal())?);
    }
    let text = match format {
        Format::Human => {
            let mut s = format!(
                "{:<13} {:>10} {:>13} {:>14} {:>18}\n",
                "param", "value", "min-diagonal", "mean-diagonal", "unclassified-mass"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<13} {:>10.4} {:>13.9} {:>14.9} {:>18.9}",
                    r.param, r.value, r.min_diagonal, r.mean_diagonal, r.unclassified_mass
                );
            }
            s
        }
        Format::StructuredRecords => {
            #[derive(Serialize)]
            struct Body<'a> {
                rows: &'a [SweepRow],
            }
            json("sweep", Body { rows: &rows })?
        }
        Format::FlatTable => hbsa_experiments::sweep::to_csv(&rows)?,
    };
    Ok(Report::ok(text))
}

fn isometry_checks(circuit: &Circuit) -> Vec<Check> {
    let domain = Label::enumerate(&[DelayTag::ZERO, DelayTag::T0, DelayTag::T1, DelayTag::T0_T1]);
    circuit
        .steps
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let m = SinglePhotonMap::tabulate_domain(&step.op.element, &domain);
            let defect = m.isometry_defect();
            Check {
                name: format!("step {} isometry ({})", i + 1, step.name),
                passed: defect <= 1e-12,
                detail: format!("defect {defect:.3e}"),
            }
        })
        .collect()
}

pub fn run_file(
    path: &Path,
    check: bool,
    against_reference: bool,
    format: Format,
    timing: Timing,
) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let circuit = parse_circuit(&text).map_err(|e| {
        CliError::Parse(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.kind
        ))
    })?;
    if !check && !against_reference {
        let t = build_table(&circuit, &default_aux())?;
        return Ok(Report::ok(render_table(&t, format, timing)?));
    }
    let mut checks = Vec::new();
    if check {
        checks.extend(isometry_checks(&circuit));
    }
    match build_table(&circuit, &default_aux()) {
        Err(e) => checks.push(Check {
            name: "signature table".into(),
            passed: false,
            detail: e.to_string(),
        }),
        Ok(t) => {
            if check {
                checks.push(Check {
                    name: "row normalization".into(),
                    passed: true,
                    detail: "all 16 rows sum to 1 within 1e-10".into(),
                });
                let disjoint = t.check_disjoint();
                checks.push(Check {
                    name: "disjoint rows".into(),
                    passed: disjoint.is_ok(),
                    detail: disjoint
                        .err()
                        .map_or("no event occurs for two inputs".into(), |e| e.to_string()),
                });
            }
            if against_reference {
                let d = diff_tables(&t.event_sets(), &oracle_table());
                checks.push(Check {
                    name: "reference table".into(),
                    passed: d.is_empty(),
                    detail: format!("{}/16 rows match", d.matching_rows()),
                });
            }
        }
    }
    checks_report("run-file", checks, format)
}

pub fn sample(
    idx: HyperBellIndex,
    shots: u64,
    seed: u64,
    format: Format,
    timing: Timing,
) -> Result<Report, CliError> {
    let counts = sample_events(&canonical_output(idx)?, shots, seed)?;
    #[derive(Serialize)]
    struct Count {
        det1: String,
        det2: String,
        interval: String,
        count: u64,
    }
    let rows: Vec<Count> = counts
        .iter()
        .map(|(e, n)| Count {
            det1: e.first.to_string(),
            det2: e.second.to_string(),
            interval: e.interval.to_string(),
            count: *n,
        })
        .collect();
    let text = match format {
        Format::Human => {
            let mut s = format!("{}  {shots} shots, seed {seed}\n", title(idx));
            for (e, n) in &counts {
                let _ = writeln!(s, "  {}  {n}", event_line(e, timing));
            }
            s
        }
        Format::StructuredRecords => {
            #[derive(Serialize)]
            struct Body {
                input: String,
                shots: u64,
                seed: u64,
                counts: Vec<Count>,
            }
            json(
                "sample",
                Body {
                    input: idx.to_string(),
                    shots,
                    seed,
                    counts: rows,
                },
            )?
        }
        Format::FlatTable => csv(rows)?,
    };
    Ok(Report::ok(text))
}
