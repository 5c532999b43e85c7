//! Line-oriented circuit description format.
//!
//! ```text
//! circuit <name>
//! hwp <angle-deg> on <A|B|both>
//! fbs on <A|B|both>
//! fs on <A|B|both> [arm x1|x2]
//! stage2 on <A|B|both>
//! bs on <A|B|both>
//! ui m=<arm> n=<arm> on <A|B|both>
//! delay <t0|t1> on <A|B|both>
//! ```
//!
//! `#` starts a comment. Arms are `a1|a2|b1|b2`.

use std::fmt;

use hbsa_elements::{bs, delay, fbs, fs, fs_on_x1, hwp, stage2_map, ui, DelayKind, Element, Slot};
use hbsa_state::{Arm, XTag};

use crate::program::{Circuit, Step};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseErrorKind {
    Lexical(char),
    UnknownElement(String),
    Argument(String),
    DuplicateFbs(&'static str),
    Header(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Lexical(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnknownElement(e) => write!(f, "unknown element '{e}'"),
            ParseErrorKind::Argument(msg) => f.write_str(msg),
            ParseErrorKind::DuplicateFbs(photon) => {
                write!(
                    f,
                    "photon {photon} already passed a frequency beam splitter"
                )
            }
            ParseErrorKind::Header(msg) => f.write_str(msg),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("step {index} ({name}) has no text form")]
pub struct SerializeError {
    pub index: usize,
    pub name: String,
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn is_token_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+' | '=' | '_')
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token<'_>>, ParseError> {
    let code = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in code.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
            }
        } else if is_token_char(c) {
            start.get_or_insert(i);
        } else {
            return Err(ParseError {
                line: line_no,
                column: code[..i].chars().count() + 1,
                kind: ParseErrorKind::Lexical(c),
            });
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    Ok(tokens)
}

struct Line<'a> {
    no: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn err_at(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.no,
            column,
            kind,
        }
    }

    fn arg_err(&self, i: usize, msg: String) -> ParseError {
        let column = self.tokens.get(i).map_or(self.end_column, |t| t.column);
        self.err_at(column, ParseErrorKind::Argument(msg))
    }

    fn get(&self, i: usize, what: &str) -> Result<Token<'a>, ParseError> {
        self.tokens
            .get(i)
            .copied()
            .ok_or_else(|| self.arg_err(i, format!("missing {what}")))
    }

    /// `on <slot>` starting at token `i`; returns the slot and the next index.
    fn slot(&self, i: usize) -> Result<(Slot, usize), ParseError> {
        let on = self.get(i, "'on'")?;
        if on.text != "on" {
            return Err(self.arg_err(i, format!("expected 'on', found '{}'", on.text)));
        }
        let s = self.get(i + 1, "photon slot (A, B or both)")?;
        let slot = s.text.parse().map_err(|_| {
            self.arg_err(i + 1, format!("expected A, B or both, found '{}'", s.text))
        })?;
        Ok((slot, i + 2))
    }

    fn finish(&self, next: usize) -> Result<(), ParseError> {
        match self.tokens.get(next) {
            None => Ok(()),
            Some(t) => Err(self.arg_err(next, format!("unexpected argument '{}'", t.text))),
        }
    }

    fn keyed_arm(&self, i: usize, key: &str) -> Result<Arm, ParseError> {
        let t = self.get(i, &format!("{key}=<arm>"))?;
        let value = t
            .text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| self.arg_err(i, format!("expected {key}=<arm>, found '{}'", t.text)))?;
        value
            .parse()
            .map_err(|_| self.arg_err(i, format!("unknown arm '{value}'")))
    }
}

/// Parses a circuit description.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit = Circuit::new("unnamed");
    let mut named = false;
    let mut fbs_seen = [false, false];
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let tokens = tokenize(raw, no)?;
        let Some(head) = tokens.first().copied() else {
            continue;
        };
        let line = Line {
            no,
            end_column: raw
                .split('#')
                .next()
                .unwrap_or("")
                .trim_end()
                .chars()
                .count()
                + 1,
            tokens,
        };
        let (element, slot) = match head.text {
            "circuit" => {
                if named {
                    return Err(line.err_at(
                        head.column,
                        ParseErrorKind::Header("duplicate 'circuit' line".into()),
                    ));
                }
                if !circuit.steps.is_empty() {
                    return Err(line.err_at(
                        head.column,
                        ParseErrorKind::Header("'circuit' line must precede all steps".into()),
                    ));
                }
                let name = line.get(1, "circuit name")?;
                line.finish(2)?;
                circuit.name = name.text.to_string();
                named = true;
                continue;
            }
            "hwp" => {
                let a = line.get(1, "angle in degrees")?;
                let angle: f64 = a
                    .text
                    .parse()
                    .ok()
                    .filter(|x: &f64| x.is_finite())
                    .ok_or_else(|| line.arg_err(1, format!("invalid angle '{}'", a.text)))?;
                let (slot, next) = line.slot(2)?;
                line.finish(next)?;
                (hwp(angle), slot)
            }
            "fbs" => {
                let (slot, next) = line.slot(1)?;
                line.finish(next)?;
                for (i, name) in [(0, "A"), (1, "B")] {
                    let acts = if i == 0 {
                        slot.acts_on_a()
                    } else {
                        slot.acts_on_b()
                    };
                    if acts && fbs_seen[i] {
                        return Err(line.err_at(head.column, ParseErrorKind::DuplicateFbs(name)));
                    }
                    fbs_seen[i] |= acts;
                }
                (fbs(), slot)
            }
            "fs" => {
                let (slot, next) = line.slot(1)?;
                let element = match line.tokens.get(next) {
                    None => fs(),
                    Some(t) if t.text == "arm" => {
                        let p = line.get(next + 1, "frequency path (x1 or x2)")?;
                        let path: XTag = p.text.parse().map_err(|_| {
                            line.arg_err(next + 1, format!("expected x1 or x2, found '{}'", p.text))
                        })?;
                        line.finish(next + 2)?;
                        match path {
                            XTag::X1 => fs_on_x1(),
                            _ => Element::Fs {
                                path: Some(path),
                                leakage: 0.0,
                            },
                        }
                    }
                    Some(t) => {
                        return Err(
                            line.arg_err(next, format!("expected 'arm', found '{}'", t.text))
                        )
                    }
                };
                (element, slot)
            }
            "stage2" => {
                let (slot, next) = line.slot(1)?;
                line.finish(next)?;
                (stage2_map(), slot)
            }
            "bs" => {
                let (slot, next) = line.slot(1)?;
                line.finish(next)?;
                (bs(), slot)
            }
            "ui" => {
                let m = line.keyed_arm(1, "m")?;
                let n = line.keyed_arm(2, "n")?;
                let element = ui(m, n).map_err(|e| line.arg_err(2, e.to_string()))?;
                let (slot, next) = line.slot(3)?;
                line.finish(next)?;
                (element, slot)
            }
            "delay" => {
                let k = line.get(1, "delay (t0 or t1)")?;
                let kind = match k.text {
                    "t0" => DelayKind::T0,
                    "t1" => DelayKind::T1,
                    other => {
                        return Err(line.arg_err(1, format!("expected t0 or t1, found '{other}'")))
                    }
                };
                let (slot, next) = line.slot(2)?;
                line.finish(next)?;
                (delay(kind), slot)
            }
            other => {
                return Err(line.err_at(head.column, ParseErrorKind::UnknownElement(other.into())))
            }
        };
        circuit.steps.push(Step::new(element, slot));
    }
    Ok(circuit)
}

fn step_line(step: &Step) -> Option<String> {
    let slot = step.op.slot;
    let body = match &step.op.element {
        Element::Hwp { angle_deg } => format!("hwp {angle_deg}"),
        Element::Fbs => "fbs".into(),
        Element::Fs { path, leakage } if *leakage == 0.0 => {
            return Some(match path {
                None => format!("fs on {slot}"),
                Some(p) => format!("fs on {slot} arm {p}"),
            })
        }
        Element::Stage2 { .. } if step.op.element.is_ideal() => "stage2".into(),
        Element::Bs { imbalance } if *imbalance == 0.0 => "bs".into(),
        Element::Ui { m, n } => format!("ui m={m} n={n}"),
        Element::Delay(kind) => format!("delay {kind}"),
        _ => return None,
    };
    Some(format!("{body} on {slot}"))
}

/// Writes a circuit in the description format, one step per line.
pub fn serialize_circuit(circuit: &Circuit) -> Result<String, SerializeError> {
    let mut out = format!("circuit {}\n", circuit.name);
    for (index, step) in circuit.steps.iter().enumerate() {
        let line = step_line(step).ok_or_else(|| SerializeError {
            index,
            name: step.name.clone(),
        })?;
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
