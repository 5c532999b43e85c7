//! Detectors, interval classes and detection events.

use std::fmt;
use std::str::FromStr;

use hbsa_state::{Arm, DelayTag, Pol, RelDelay, XTag};
use serde::{Deserialize, Serialize};

use crate::MeasureError;

/// Detector behind output port `a_ij`/`b_ij` (arm `a_i`/`b_i`, frequency path `x_j`)
/// registering one polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DetectorId {
    pub arm: Arm,
    pub path: XTag,
    pub pol: Pol,
}

impl DetectorId {
    pub fn new(arm: Arm, path: XTag, pol: Pol) -> Self {
        DetectorId { arm, path, pol }
    }

    /// All 16 detectors.
    pub fn all() -> Vec<DetectorId> {
        let mut out = Vec::with_capacity(16);
        for arm in Arm::ALL {
            for path in [XTag::X1, XTag::X2] {
                for pol in Pol::ALL {
                    out.push(DetectorId::new(arm, path, pol));
                }
            }
        }
        out
    }
}

impl fmt::Display for DetectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.arm.side(),
            self.arm.index(),
            self.path.index().unwrap_or(0),
            self.pol
        )
    }
}

impl FromStr for DetectorId {
    type Err = MeasureError;

    /// Parses `a11H`-style names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MeasureError::BadDetector(s.to_string());
        if s.len() != 4 || !s.is_ascii() {
            return Err(bad());
        }
        let arm: Arm = s[0..2].parse().map_err(|_| bad())?;
        let path = match &s[2..3] {
            "1" => XTag::X1,
            "2" => XTag::X2,
            _ => return Err(bad()),
        };
        let pol = match &s[3..4] {
            "H" => Pol::H,
            "V" => Pol::V,
            _ => return Err(bad()),
        };
        Ok(DetectorId::new(arm, path, pol))
    }
}

/// Time between the two clicks, up to the resolution the scheme relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IntervalClass {
    Zero,
    T0,
    T1,
    T1PmT0,
}

impl IntervalClass {
    pub const ALL: [IntervalClass; 4] = [
        IntervalClass::Zero,
        IntervalClass::T0,
        IntervalClass::T1,
        IntervalClass::T1PmT0,
    ];

    pub fn from_rel(r: RelDelay) -> Result<IntervalClass, MeasureError> {
        match (r.d0.abs(), r.d1.abs()) {
            (0, 0) => Ok(IntervalClass::Zero),
            (1, 0) => Ok(IntervalClass::T0),
            (0, 1) => Ok(IntervalClass::T1),
            (1, 1) => Ok(IntervalClass::T1PmT0),
            _ => Err(MeasureError::UnreachableInterval(r)),
        }
    }

    /// Nominal interval in nanoseconds; `t1±t0` reports `t1 + t0`.
    pub fn nanoseconds(self, t0_ns: f64, t1_ns: f64) -> f64 {
        match self {
            IntervalClass::Zero => 0.0,
            IntervalClass::T0 => t0_ns,
            IntervalClass::T1 => t1_ns,
            IntervalClass::T1PmT0 => t1_ns + t0_ns,
        }
    }
}

impl fmt::Display for IntervalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntervalClass::Zero => "0",
            IntervalClass::T0 => "t0",
            IntervalClass::T1 => "t1",
            IntervalClass::T1PmT0 => "t1±t0",
        })
    }
}

impl FromStr for IntervalClass {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(IntervalClass::Zero),
            "t0" => Ok(IntervalClass::T0),
            "t1" => Ok(IntervalClass::T1),
            "t1±t0" | "t1pmt0" => Ok(IntervalClass::T1PmT0),
            _ => Err(MeasureError::BadInterval(s.to_string())),
        }
    }
}

/// Nominal delay lengths used to report intervals in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub t0_ns: f64,
    pub t1_ns: f64,
}

impl Default for Timing {
    fn default() -> Self {
        Timing {
            t0_ns: 6.0,
            t1_ns: 10.0,
        }
    }
}

impl Timing {
    pub fn nanoseconds(&self, class: IntervalClass) -> f64 {
        class.nanoseconds(self.t0_ns, self.t1_ns)
    }
}

/// Interval class between photons carrying delays `d1` and `d2`.
pub fn interval_class(d1: DelayTag, d2: DelayTag) -> Result<IntervalClass, MeasureError> {
    IntervalClass::from_rel(d1.minus(d2))
}

/// Unordered pair of clicked detectors plus the interval between the clicks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DetectionEvent {
    pub first: DetectorId,
    pub second: DetectorId,
    pub interval: IntervalClass,
}

impl DetectionEvent {
    /// Orders the detectors so that `(d1, d2)` and `(d2, d1)` give the same event.
    pub fn new(d1: DetectorId, d2: DetectorId, interval: IntervalClass) -> Self {
        let (first, second) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        DetectionEvent {
            first,
            second,
            interval,
        }
    }

    pub fn detectors(&self) -> (DetectorId, DetectorId) {
        (self.first, self.second)
    }
}

impl fmt::Display for DetectionEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} @ {}", self.first, self.second, self.interval)
    }
}
