//! Single-photon labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::StateError;

/// Spatial mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Arm {
    A1,
    A2,
    B1,
    B2,
}

impl Arm {
    pub const ALL: [Arm; 4] = [Arm::A1, Arm::A2, Arm::B1, Arm::B2];

    /// `'a'` or `'b'`.
    pub fn side(self) -> char {
        match self {
            Arm::A1 | Arm::A2 => 'a',
            Arm::B1 | Arm::B2 => 'b',
        }
    }

    /// Mode index, 1 or 2.
    pub fn index(self) -> u8 {
        match self {
            Arm::A1 | Arm::B1 => 1,
            Arm::A2 | Arm::B2 => 2,
        }
    }

    /// The arm on the other side with the same index (a1 <-> b1, a2 <-> b2).
    pub fn partner(self) -> Arm {
        match self {
            Arm::A1 => Arm::B1,
            Arm::A2 => Arm::B2,
            Arm::B1 => Arm::A1,
            Arm::B2 => Arm::A2,
        }
    }
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side(), self.index())
    }
}

impl FromStr for Arm {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a1" => Ok(Arm::A1),
            "a2" => Ok(Arm::A2),
            "b1" => Ok(Arm::B1),
            "b2" => Ok(Arm::B2),
            _ => Err(StateError::UnknownName {
                kind: "arm",
                name: s.to_string(),
            }),
        }
    }
}

/// Polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pol {
    H,
    V,
}

impl Pol {
    pub const ALL: [Pol; 2] = [Pol::H, Pol::V];

    pub fn flipped(self) -> Pol {
        match self {
            Pol::H => Pol::V,
            Pol::V => Pol::H,
        }
    }
}

impl fmt::Display for Pol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pol::H => "H",
            Pol::V => "V",
        })
    }
}

/// Frequency-path tag written by the frequency beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum XTag {
    Unset,
    X1,
    X2,
}

impl XTag {
    pub const ALL: [XTag; 3] = [XTag::Unset, XTag::X1, XTag::X2];

    /// x1 <-> x2; `Unset` stays unset.
    pub fn flipped(self) -> XTag {
        match self {
            XTag::Unset => XTag::Unset,
            XTag::X1 => XTag::X2,
            XTag::X2 => XTag::X1,
        }
    }

    /// 1 or 2, `None` when unset.
    pub fn index(self) -> Option<u8> {
        match self {
            XTag::Unset => None,
            XTag::X1 => Some(1),
            XTag::X2 => Some(2),
        }
    }
}

impl fmt::Display for XTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XTag::Unset => "-",
            XTag::X1 => "x1",
            XTag::X2 => "x2",
        })
    }
}

impl FromStr for XTag {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x1" => Ok(XTag::X1),
            "x2" => Ok(XTag::X2),
            _ => Err(StateError::UnknownName {
                kind: "frequency path",
                name: s.to_string(),
            }),
        }
    }
}

/// Frequency bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Freq {
    W1,
    W2,
}

impl Freq {
    pub const ALL: [Freq; 2] = [Freq::W1, Freq::W2];

    pub fn flipped(self) -> Freq {
        match self {
            Freq::W1 => Freq::W2,
            Freq::W2 => Freq::W1,
        }
    }
}

impl fmt::Display for Freq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Freq::W1 => "w1",
            Freq::W2 => "w2",
        })
    }
}

/// Accumulated delay as counts of t0 and t1 applications.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct DelayTag {
    pub n0: u32,
    pub n1: u32,
}

impl DelayTag {
    pub const ZERO: DelayTag = DelayTag { n0: 0, n1: 0 };
    pub const T0: DelayTag = DelayTag { n0: 1, n1: 0 };
    pub const T1: DelayTag = DelayTag { n0: 0, n1: 1 };
    pub const T0_T1: DelayTag = DelayTag { n0: 1, n1: 1 };

    pub fn new(n0: u32, n1: u32) -> Self {
        DelayTag { n0, n1 }
    }

    pub fn plus(self, other: DelayTag) -> DelayTag {
        DelayTag {
            n0: self.n0 + other.n0,
            n1: self.n1 + other.n1,
        }
    }

    /// Signed difference `self - other`.
    pub fn minus(self, other: DelayTag) -> RelDelay {
        RelDelay {
            d0: self.n0 as i64 - other.n0 as i64,
            d1: self.n1 as i64 - other.n1 as i64,
        }
    }
}

impl fmt::Display for DelayTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n0, self.n1) {
            (0, 0) => f.write_str("I"),
            (1, 0) => f.write_str("D(t0)"),
            (0, 1) => f.write_str("D(t1)"),
            (1, 1) => f.write_str("D(t0+t1)"),
            (a, b) => write!(f, "D({a}t0+{b}t1)"),
        }
    }
}

/// Signed delay difference between two photons.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct RelDelay {
    pub d0: i64,
    pub d1: i64,
}

impl RelDelay {
    pub const ZERO: RelDelay = RelDelay { d0: 0, d1: 0 };

    pub fn new(d0: i64, d1: i64) -> Self {
        RelDelay { d0, d1 }
    }

    pub fn negated(self) -> RelDelay {
        RelDelay {
            d0: -self.d0,
            d1: -self.d1,
        }
    }
}

impl fmt::Display for RelDelay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d0, self.d1)
    }
}

/// Full discrete state of one photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub arm: Arm,
    pub pol: Pol,
    pub xtag: XTag,
    pub freq: Freq,
    pub delay: DelayTag,
}

impl Label {
    /// A label before any frequency routing or delay.
    pub fn new(arm: Arm, pol: Pol, freq: Freq) -> Self {
        Label {
            arm,
            pol,
            xtag: XTag::Unset,
            freq,
            delay: DelayTag::ZERO,
        }
    }

    pub fn with_arm(self, arm: Arm) -> Self {
        Label { arm, ..self }
    }

    pub fn with_pol(self, pol: Pol) -> Self {
        Label { pol, ..self }
    }

    pub fn with_xtag(self, xtag: XTag) -> Self {
        Label { xtag, ..self }
    }

    pub fn with_freq(self, freq: Freq) -> Self {
        Label { freq, ..self }
    }

    pub fn with_delay(self, delay: DelayTag) -> Self {
        Label { delay, ..self }
    }

    pub fn delayed_by(self, extra: DelayTag) -> Self {
        Label {
            delay: self.delay.plus(extra),
            ..self
        }
    }

    /// Every label whose delay lies in `delays`.
    pub fn enumerate(delays: &[DelayTag]) -> Vec<Label> {
        let mut out = Vec::with_capacity(48 * delays.len());
        for &arm in &Arm::ALL {
            for &pol in &Pol::ALL {
                for &xtag in &XTag::ALL {
                    for &freq in &Freq::ALL {
                        for &delay in delays {
                            out.push(Label {
                                arm,
                                pol,
                                xtag,
                                freq,
                                delay,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.arm, self.pol, self.xtag, self.freq, self.delay
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_space_size() {
        let delays = [DelayTag::ZERO, DelayTag::T0, DelayTag::T1, DelayTag::T0_T1];
        assert_eq!(Label::enumerate(&delays).len(), 4 * 2 * 3 * 2 * 4);
    }

    #[test]
    fn arm_round_trip() {
        for arm in Arm::ALL {
            assert_eq!(arm.to_string().parse::<Arm>().unwrap(), arm);
        }
        assert!("c1".parse::<Arm>().is_err());
    }

    #[test]
    fn delay_arithmetic() {
        let d = DelayTag::T0.plus(DelayTag::T1);
        assert_eq!(d, DelayTag::T0_T1);
        assert_eq!(DelayTag::T1.minus(DelayTag::T0), RelDelay::new(-1, 1));
    }
}
