//! The reference signature table, transcribed row by row.
//!
//! Each entry such as `a11^{H(V)}b22^{V(H)}` stands for two events: the
//! superscripts outside the parentheses read together, then the ones inside.

use std::collections::{BTreeMap, BTreeSet};

use hbsa_state::{Bell, HyperBellIndex};

use crate::event::{DetectionEvent, DetectorId, IntervalClass};
use crate::table::EventSets;

const ROWS: [(Bell, Bell, &str, &str); 16] = {
    use Bell::*;
    [
        (PhiPlus, PhiPlus, "0", "a11^{H(V)}b22^{V(H)}, a12^{H(V)}b21^{V(H)}, b11^{H(V)}a22^{V(H)}, b12^{H(V)}a21^{V(H)}"),
        (PhiPlus, PhiMinus, "0", "a11^{H(V)}b21^{H(V)}, a12^{H(V)}b22^{H(V)}, b11^{H(V)}a21^{H(V)}, b12^{H(V)}a22^{H(V)}"),
        (PhiMinus, PhiPlus, "0", "a11^{H(V)}a12^{H(V)}, a12^{H(V)}a11^{H(V)}, a21^{H(V)}a22^{H(V)}, a22^{H(V)}a21^{H(V)}, b11^{H(V)}b12^{H(V)}, b12^{H(V)} b11^{H(V)}, b21^{H(V)} b22^{H(V)}, b22^{H(V)}b21^{H(V)}"),
        (PhiMinus, PhiMinus, "0", "a11^{H(V)}a11^{V(H)}, a12^{H(V)}a12^{V(H)}, a21^{H(V)}a21^{V(H)}, a22^{H(V)}a22^{V(H)}, b11^{H(V)} b11^{V(H)}, b12^{H(V)} b12^{V(H)}, b21^{H(V)} b21^{V(H)},  b22^{H(V)} b22^{V(H)}"),
        (PsiPlus, PsiPlus, "t0", "a11^{H(V)}b12^{H(V)}, a12^{H(V)}b11^{H(V)}, a21^{H(V)}b22^{H(V)}, a22^{H(V)}b21^{H(V)}, a11^{H(V)}a22^{V(H)},  a12^{H(V)}a21^{V(H)}, b11^{H(V)}b22^{V(H)}, b12^{H(V)}b21^{V(H)}"),
        (PsiPlus, PsiMinus, "t0", "a11^{H(V)}b11^{V(H)}, a12^{H(V)}b12^{V(H)}, a21^{H(V)}b21^{V(H)}, a22^{H(V)}b22^{V(H)}, a11^{H(V)}a21^{H(V)},  a12^{H(V)}a22^{H(V)}, b11^{H(V)}b21^{H(V)},  b12^{H(V)}b22^{H(V)}"),
        (PsiMinus, PsiPlus, "t0", "a11^{H(V)}a12^{H(V)}, a12^{H(V)}a11^{H(V)}, a21^{H(V)}a22^{H(V)}, a22^{H(V)}a21^{H(V)}, b11^{H(V)}b12^{H(V)},  b12^{H(V)}b11^{H(V)}, b21^{H(V)}b22^{H(V)}, b22^{H(V)}b21^{H(V)}, a11^{H(V)}b22^{V(H)},  a12^{H(V)}b21^{V(H)}, a21^{H(V)}b12^{V(H)}, a22^{H(V)} b11^{V(H)}"),
        (PsiMinus, PsiMinus, "t0", "a11^{H(V)}a11^{V(H)}, a12^{H(V)}a12^{V(H)},  a21^{H(V)}a21^{V(H)}, a22^{H(V)}a22^{V(H)}, b11^{H(V)} b11^{V(H)}, b12^{H(V)} b12^{V(H)}, b21^{H(V)}b21^{V(H)}, b22^{H(V)}b22^{V(H)}, a11^{H(V)}b21^{H(V)}, a12^{H(V)} b22^{H(V)},  a21^{H(V)}b11^{H(V)}, a22^{H(V)}b12^{H(V)}"),
        (PhiPlus, PsiPlus, "t1", "a11^{H(V)}a12^{V(H)}, a12^{H(V)}a11^{V(H)}, a21^{H(V)}a22^{V(H)}, a22^{H(V)}a21^{V(H)}, b11^{H(V)}b12^{V(H)}, b12^{H(V)}b11^{V(H)}, b21^{H(V)}b22^{V(H)}, b22^{H(V)}b21^{V(H)}, a11^{H(V)}b22^{V(H)}, a12^{H(V)}b21^{V(H)}, a21^{H(V)}b12^{V(H)}, a22^{H(V)}b11^{V(H)}"),
        (PhiPlus, PsiMinus, "t1", "a11^{H(V)}a11^{H(V)}, a12^{H(V)}a12^{H(V)}, a21^{H(V)}a21^{H(V)}, a22^{H(V)}a22^{H(V)}, b11^{H(V)}b11^{H(V)}, b12^{H(V)}b12^{H(V)}, b21^{H(V)}b21^{H(V)}, b22^{H(V)}b22^{H(V)}, a11^{H(V)}b21^{H(V)}, a12^{H(V)}b22^{H(V)}, a21^{H(V)}b11^{H(V)}, a22^{H(V)}b12^{H(V)}"),
        (PhiMinus, PsiPlus, "t1", "a11^{H(V)}a12^{H(V)}, a12^{H(V)}a11^{H(V)}, a21^{H(V)}a22^{H(V)}, a22^{H(V)}a21^{H(V)}, b11^{H(V)}b12^{H(V)},  b12^{H(V)}b11^{H(V)}, b21^{H(V)}b22^{H(V)}, b22^{H(V)}b21^{H(V)}, a11^{H(V)}b22^{H(V)},  a12^{H(V)}b21^{H(V)}, a21^{H(V)}b12^{H(V)}, a22^{H(V)}b11^{H(V)}"),
        (PhiMinus, PsiMinus, "t1", "a11^{H(V)}a11^{V(H)}, a12^{H(V)}a12^{V(H)}, a21^{H(V)}a21^{V(H)}, a22^{H(V)}a22^{V(H)}, b11^{H(V)}b11^{V(H)}, b12^{H(V)}b12^{V(H)}, b21^{H(V)}b21^{V(H)}, b22^{H(V)}b22^{V(H)}, a11^{H(V)}b21^{V(H)}, a12^{H(V)}b22^{V(H)}, a21^{H(V)}b11^{V(H)}, a22^{H(V)}b12^{V(H)}"),
        (PsiPlus, PhiPlus, "t1pmt0", "a11^{H(V)}a22^{H(V)}, a11^{H(V)}a22^{V(H)}, a12^{H(V)}a21^{H(V)}, a12^{H(V)}a21^{V(H)}, b11^{H(V)}b22^{H(V)}, b11^{H(V)}b22^{V(H)}, b12^{H(V)}b21^{H(V)}, b12^{H(V)}b21^{V(H)}, a11^{H(V)}b12^{H(V)}, a11^{H(V)}b12^{V(H)}, a12^{H(V)}b11^{H(V)}, a12^{H(V)}b11^{V(H)}, a21^{H(V)}b22^{H(V)}, a21^{H(V)}b22^{V(H)}, a22^{H(V)}b21^{H(V)}, a22^{H(V)}b21^{V(H)}"),
        (PsiPlus, PhiMinus, "t1pmt0", "a11^{H(V)}a21^{H(V)}, a11^{H(V)}a21^{V(H)}, a12^{H(V)}a22^{H(V)}, a12^{H(V)}a22^{V(H)}, b11^{H(V)}b21^{H(V)}, b12^{H(V)}b22^{H(V)}, b11^{H(V)}b21^{V(H)}, b12^{H(V)}b22^{V(H)}, a11^{H(V)}b11^{H(V)}, a11^{H(V)}b11^{V(H)}, a12^{H(V)}b12^{H(V)}, a12^{H(V)}b12^{V(H)}, a21^{H(V)}b21^{H(V)}, a21^{H(V)}b21^{V(H)}, a22^{H(V)}b22^{H(V)}, a22^{H(V)}b22^{V(H)}"),
        (PsiMinus, PhiPlus, "t1pmt0", "a11^{H(V)}a12^{H(V)}, a12^{H(V)}a11^{H(V)}, a21^{H(V)}a22^{H(V)}, a22^{H(V)}a21^{H(V)}, b11^{H(V)}b12^{H(V)}, b12^{H(V)}b11^{H(V)}, b21^{H(V)}b22^{H(V)}, b22^{H(V)}b21^{H(V)}, a11^{H(V)}b22^{H(V)}, a12^{H(V)}b21^{H(V)}, a11^{H(V)}b22^{V(H)}, a12^{H(V)}b21^{V(H)}, a21^{H(V)}b12^{H(V)}, a22^{H(V)}b11^{H(V)}, a21^{H(V)}b12^{V(H)}, a22^{H(V)}b11^{V(H)}, a11^{H(V)}a12^{V(H)}, a12^{H(V)}a11^{V(H)}, a21^{H(V)}a22^{V(H)}, a22^{H(V)}a21^{V(H)}, b11^{H(V)}b12^{V(H)}, b12^{H(V)}b11^{V(H)}, b21^{H(V)}b22^{V(H)}, b22^{H(V)}b21^{V(H)}"),
        (PsiMinus, PhiMinus, "t1pmt0", "a11^{H(V)}a11^{H(V)}, a11^{H(V)}a11^{V(H)}, a12^{H(V)}a12^{H(V)}, a12^{H(V)}a12^{V(H)}, a21^{H(V)}a21^{H(V)}, a21^{H(V)}a21^{V(H)}, a22^{H(V)}a22^{H(V)}, a22^{H(V)}a22^{V(H)}, b11^{H(V)}b11^{H(V)}, b11^{H(V)}b11^{V(H)}, b12^{H(V)}b12^{H(V)}, b12^{H(V)}b12^{V(H)}, b21^{H(V)}b21^{H(V)}, b21^{H(V)}b21^{V(H)}, b22^{H(V)}b22^{H(V)}, b22^{H(V)}b22^{V(H)}, a11^{H(V)}b21^{H(V)}, a12^{H(V)}b22^{H(V)}, a11^{H(V)}b21^{V(H)}, a12^{H(V)}b22^{V(H)}, a21^{H(V)}b11^{H(V)}, a21^{H(V)}b11^{V(H)}, a22^{H(V)}b12^{H(V)}, a22^{H(V)}b12^{V(H)}"),
    ]
};

/// One `port^{P(Q)}` factor: port name and the outer/inner polarization letters.
fn factor(s: &str) -> Option<(&str, char, char)> {
    let (port, rest) = s.split_once("^{")?;
    let rest = rest.strip_suffix(")}")?;
    let mut c = rest.chars();
    let outer = c.next()?;
    if c.next()? != '(' {
        return None;
    }
    let inner = c.next()?;
    if c.next().is_some() {
        return None;
    }
    Some((port.trim(), outer, inner))
}

fn detector(port: &str, pol: char) -> DetectorId {
    format!("{port}{pol}")
        .parse()
        .expect("valid detector in reference table")
}

/// Expands one signature entry into its two events.
pub fn expand_entry(entry: &str, interval: IntervalClass) -> [DetectionEvent; 2] {
    let compact: String = entry.split_whitespace().collect();
    let split = compact[1..].find(['a', 'b']).expect("two factors") + 1;
    let (f1, f2) = compact.split_at(split);
    let (p1, o1, i1) = factor(f1).expect("first factor");
    let (p2, o2, i2) = factor(f2).expect("second factor");
    [
        DetectionEvent::new(detector(p1, o1), detector(p2, o2), interval),
        DetectionEvent::new(detector(p1, i1), detector(p2, i2), interval),
    ]
}

/// Expected event sets, one per input.
pub fn oracle_table() -> EventSets {
    let mut rows = BTreeMap::new();
    for (s, p, interval, entries) in ROWS {
        let interval: IntervalClass = interval.parse().expect("interval");
        let events: BTreeSet<DetectionEvent> = entries
            .split(',')
            .flat_map(|e| expand_entry(e, interval))
            .collect();
        rows.insert(HyperBellIndex::new(s, p), events);
    }
    EventSets { rows }
}

/// Interval class of each reference row.
pub fn oracle_intervals() -> BTreeMap<HyperBellIndex, IntervalClass> {
    ROWS.iter()
        .map(|(s, p, i, _)| (HyperBellIndex::new(*s, *p), i.parse().expect("interval")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use hbsa_state::{Arm, Pol, XTag};

    #[test]
    fn expansion() {
        let [e1, e2] = expand_entry("a11^{H(V)}b21^{H(V)}", IntervalClass::Zero);
        let d = |arm, path, pol| DetectorId::new(arm, path, pol);
        assert_eq!(
            e1,
            DetectionEvent::new(
                d(Arm::A1, XTag::X1, Pol::H),
                d(Arm::B2, XTag::X1, Pol::H),
                IntervalClass::Zero
            )
        );
        assert_eq!(
            e2,
            DetectionEvent::new(
                d(Arm::A1, XTag::X1, Pol::V),
                d(Arm::B2, XTag::X1, Pol::V),
                IntervalClass::Zero
            )
        );
    }

    #[test]
    fn row_sizes() {
        let t = oracle_table();
        assert_eq!(t.rows.len(), 16);
        let sizes: Vec<usize> = HyperBellIndex::all()
            .iter()
            .map(|i| t.rows[i].len())
            .collect();
        assert_eq!(
            sizes,
            [8, 8, 16, 24, 8, 8, 16, 16, 32, 32, 16, 16, 32, 40, 16, 16]
        );
    }

    #[test]
    fn one_interval_per_group_of_four() {
        let intervals = oracle_intervals();
        for class in IntervalClass::ALL {
            assert_eq!(intervals.values().filter(|&&c| c == class).count(), 4);
        }
    }

    #[test]
    fn closed_under_polarization_swap() {
        for (_, events) in oracle_table().rows {
            for e in &events {
                let flip = |d: DetectorId| DetectorId::new(d.arm, d.path, d.pol.flipped());
                let swapped = DetectionEvent::new(flip(e.first), flip(e.second), e.interval);
                assert!(events.contains(&swapped), "{e}");
            }
        }
    }
}
