//! The element catalogue.

use std::fmt;

use hbsa_state::{Arm, DelayTag, Label, Pol, XTag};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::map::{Column, PhotonMap};
use crate::ElementError;

/// Which delay a delay line adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DelayKind {
    T0,
    T1,
}

impl DelayKind {
    pub fn tag(self) -> DelayTag {
        match self {
            DelayKind::T0 => DelayTag::T0,
            DelayKind::T1 => DelayTag::T1,
        }
    }
}

impl fmt::Display for DelayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DelayKind::T0 => "t0",
            DelayKind::T1 => "t1",
        })
    }
}

/// A single-photon linear-optical element.
///
/// Labels an element does not address pass through unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Element {
    /// Half-wave plate with its fast axis at `angle_deg` from horizontal.
    Hwp { angle_deg: f64 },
    /// Frequency beam splitter: writes the frequency-path tag from the frequency.
    Fbs,
    /// Frequency shifter. With `path` set it only acts on that frequency path.
    /// `leakage` is the amplitude left in the unflipped bin.
    Fs { path: Option<XTag>, leakage: f64 },
    /// Net per-photon map of a polarizing beam splitter followed by a pair of
    /// half-wave plates: H keeps the path, V swaps x1 and x2, then a Hadamard
    /// (a plate at `hwp_angle_deg`) acts on polarization.
    Stage2 { hwp_angle_deg: f64 },
    /// Beam splitters mixing a_i with b_i. `imbalance` shifts the
    /// transmission amplitude to sqrt(1/2 + imbalance).
    Bs { imbalance: f64 },
    /// Unbalanced interferometer on arms `m` and `n`.
    Ui { m: Arm, n: Arm },
    /// The unbalanced interferometer with the |V,m> output written exactly as
    /// |H,m> (delay aside). Not an isometry once delays are compared relatively.
    UiAsPrinted { m: Arm, n: Arm },
    /// Pure delay line.
    Delay(DelayKind),
}

pub const HADAMARD_ANGLE: f64 = 22.5;

pub fn hwp(angle_deg: f64) -> Element {
    Element::Hwp { angle_deg }
}

pub fn fbs() -> Element {
    Element::Fbs
}

pub fn fs() -> Element {
    Element::Fs {
        path: None,
        leakage: 0.0,
    }
}

pub fn fs_on_x1() -> Element {
    Element::Fs {
        path: Some(XTag::X1),
        leakage: 0.0,
    }
}

/// Frequency shifter restricted to `path` (or everywhere) with leakage amplitude in [0, 1].
pub fn fs_leaky(path: Option<XTag>, leakage: f64) -> Result<Element, ElementError> {
    check_range("fs_leakage", leakage, 0.0, 1.0)?;
    if path == Some(XTag::Unset) {
        return Err(ElementError::UnsetPath);
    }
    Ok(Element::Fs { path, leakage })
}

pub fn stage2_map() -> Element {
    Element::Stage2 {
        hwp_angle_deg: HADAMARD_ANGLE,
    }
}

pub fn bs() -> Element {
    Element::Bs { imbalance: 0.0 }
}

/// Beam splitter with transmission amplitude sqrt(1/2 + imbalance), |imbalance| <= 1/2.
pub fn bs_imbalanced(imbalance: f64) -> Result<Element, ElementError> {
    check_range("bs_imbalance", imbalance, -0.5, 0.5)?;
    Ok(Element::Bs { imbalance })
}

pub fn ui(m: Arm, n: Arm) -> Result<Element, ElementError> {
    if m == n {
        return Err(ElementError::SameArms(m));
    }
    Ok(Element::Ui { m, n })
}

pub fn ui_as_printed(m: Arm, n: Arm) -> Result<Element, ElementError> {
    if m == n {
        return Err(ElementError::SameArms(m));
    }
    Ok(Element::UiAsPrinted { m, n })
}

pub fn delay(kind: DelayKind) -> Element {
    Element::Delay(kind)
}

fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<(), ElementError> {
    if value.is_finite() && (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(ElementError::ParamRange {
            name,
            value,
            min,
            max,
        })
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn column(terms: impl IntoIterator<Item = (Label, f64)>) -> Column {
    terms
        .into_iter()
        .filter(|(_, c)| *c != 0.0)
        .map(|(l, c)| (l, re(c)))
        .collect()
}

/// Polarization rotation of a half-wave plate.
fn plate(angle_deg: f64, pol: Pol) -> [(Pol, f64); 2] {
    let t = 2.0 * angle_deg.to_radians();
    let (s, c) = t.sin_cos();
    match pol {
        Pol::H => [(Pol::H, c), (Pol::V, s)],
        Pol::V => [(Pol::H, s), (Pol::V, -c)],
    }
}

/// Rows of the unbalanced interferometer over the basis `[Hm, Vm, Hn, Vn]`.
fn ui_column(pol: Pol, on_m: bool, as_printed: bool) -> ([f64; 4], DelayTag) {
    match (pol, on_m) {
        (Pol::H, true) => ([1.0, 1.0, -1.0, -1.0], DelayTag::ZERO),
        (Pol::V, false) => ([1.0, -1.0, -1.0, 1.0], DelayTag::T0),
        (Pol::V, true) if as_printed => ([1.0, 1.0, -1.0, -1.0], DelayTag::T1),
        (Pol::V, true) => ([1.0, -1.0, 1.0, -1.0], DelayTag::T1),
        (Pol::H, false) => ([1.0, 1.0, 1.0, 1.0], DelayTag::T0_T1),
    }
}

impl Element {
    fn domain_error(&self, label: &Label, reason: &'static str) -> ElementError {
        ElementError::Domain {
            element: self.to_string(),
            label: *label,
            reason,
        }
    }

    /// True when the element's parameters are the ideal ones.
    pub fn is_ideal(&self) -> bool {
        match self {
            Element::Fs { leakage, .. } => *leakage == 0.0,
            Element::Bs { imbalance } => *imbalance == 0.0,
            Element::Stage2 { hwp_angle_deg } => *hwp_angle_deg == HADAMARD_ANGLE,
            _ => true,
        }
    }
}

impl PhotonMap for Element {
    fn column(&self, l: &Label) -> Result<Column, ElementError> {
        let l = *l;
        Ok(match self {
            Element::Hwp { angle_deg } => {
                column(plate(*angle_deg, l.pol).map(|(p, c)| (l.with_pol(p), c)))
            }
            Element::Fbs => {
                if l.xtag != XTag::Unset {
                    return Err(self.domain_error(&l, "frequency path already set"));
                }
                let x = match l.freq {
                    hbsa_state::Freq::W1 => XTag::X1,
                    hbsa_state::Freq::W2 => XTag::X2,
                };
                vec![(l.with_xtag(x), re(1.0))]
            }
            Element::Fs { path, leakage } => {
                if let Some(p) = path {
                    if l.xtag == XTag::Unset {
                        return Err(self.domain_error(&l, "frequency path not set"));
                    }
                    if l.xtag != *p {
                        return Ok(vec![(l, re(1.0))]);
                    }
                }
                let flip = (1.0 - leakage * leakage).sqrt();
                let stay = match l.freq {
                    hbsa_state::Freq::W1 => *leakage,
                    hbsa_state::Freq::W2 => -*leakage,
                };
                column([(l, stay), (l.with_freq(l.freq.flipped()), flip)])
            }
            Element::Stage2 { hwp_angle_deg } => {
                if l.xtag == XTag::Unset {
                    return Err(self.domain_error(&l, "frequency path not set"));
                }
                let x = match l.pol {
                    Pol::H => l.xtag,
                    Pol::V => l.xtag.flipped(),
                };
                column(plate(*hwp_angle_deg, l.pol).map(|(p, c)| (l.with_pol(p).with_xtag(x), c)))
            }
            Element::Bs { imbalance } => {
                let t = (0.5 + imbalance).sqrt();
                let r = (0.5 - imbalance).sqrt();
                let (a, b) = match l.arm.side() {
                    'a' => (l.arm, l.arm.partner()),
                    _ => (l.arm.partner(), l.arm),
                };
                if l.arm == a {
                    column([(l.with_arm(a), t), (l.with_arm(b), r)])
                } else {
                    column([(l.with_arm(a), r), (l.with_arm(b), -t)])
                }
            }
            Element::Ui { m, n } | Element::UiAsPrinted { m, n } => {
                if l.arm != *m && l.arm != *n {
                    return Ok(vec![(l, re(1.0))]);
                }
                let printed = matches!(self, Element::UiAsPrinted { .. });
                let (rows, d) = ui_column(l.pol, l.arm == *m, printed);
                let basis = [(*m, Pol::H), (*m, Pol::V), (*n, Pol::H), (*n, Pol::V)];
                column(
                    basis.iter().zip(rows).map(|(&(arm, pol), c)| {
                        (l.with_arm(arm).with_pol(pol).delayed_by(d), 0.5 * c)
                    }),
                )
            }
            Element::Delay(kind) => vec![(l.delayed_by(kind.tag()), re(1.0))],
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Hwp { angle_deg } => write!(f, "hwp {angle_deg}"),
            Element::Fbs => f.write_str("fbs"),
            Element::Fs { path, leakage } => {
                f.write_str("fs")?;
                if let Some(p) = path {
                    write!(f, " arm {p}")?;
                }
                if *leakage != 0.0 {
                    write!(f, " leakage={leakage}")?;
                }
                Ok(())
            }
            Element::Stage2 { hwp_angle_deg } => {
                f.write_str("stage2")?;
                if *hwp_angle_deg != HADAMARD_ANGLE {
                    write!(f, " hwp={hwp_angle_deg}")?;
                }
                Ok(())
            }
            Element::Bs { imbalance } => {
                f.write_str("bs")?;
                if *imbalance != 0.0 {
                    write!(f, " imbalance={imbalance}")?;
                }
                Ok(())
            }
            Element::Ui { m, n } => write!(f, "ui m={m} n={n}"),
            Element::UiAsPrinted { m, n } => write!(f, "ui-as-printed m={m} n={n}"),
            Element::Delay(kind) => write!(f, "delay {kind}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hbsa_state::Freq;
    use std::f64::consts::FRAC_1_SQRT_2;

    const H: f64 = FRAC_1_SQRT_2;

    fn base() -> Label {
        Label::new(Arm::A1, Pol::H, Freq::W1)
    }

    fn coeff(col: &Column, l: &Label) -> f64 {
        col.iter().filter(|(k, _)| k == l).map(|(_, c)| c.re).sum()
    }

    #[test]
    fn hwp_hadamard() {
        let e = hwp(22.5);
        let h = base();
        let v = h.with_pol(Pol::V);
        let ch = e.column(&h).unwrap();
        assert!((coeff(&ch, &h) - H).abs() < 1e-15 && (coeff(&ch, &v) - H).abs() < 1e-15);
        let cv = e.column(&v).unwrap();
        assert!((coeff(&cv, &h) - H).abs() < 1e-15 && (coeff(&cv, &v) + H).abs() < 1e-15);
    }

    #[test]
    fn hwp_zero_angle() {
        let e = hwp(0.0);
        let v = base().with_pol(Pol::V);
        assert_eq!(e.column(&v).unwrap(), vec![(v, re(-1.0))]);
        assert_eq!(e.column(&base()).unwrap(), vec![(base(), re(1.0))]);
    }

    #[test]
    fn fbs_routes_by_frequency() {
        let c = fbs().column(&base()).unwrap();
        assert_eq!(c, vec![(base().with_xtag(XTag::X1), re(1.0))]);
        let w2 = base().with_freq(Freq::W2);
        assert_eq!(
            fbs().column(&w2).unwrap(),
            vec![(w2.with_xtag(XTag::X2), re(1.0))]
        );
        assert!(matches!(
            fbs().column(&base().with_xtag(XTag::X1)),
            Err(ElementError::Domain { .. })
        ));
    }

    #[test]
    fn fs_variants() {
        assert_eq!(
            fs().column(&base()).unwrap(),
            vec![(base().with_freq(Freq::W2), re(1.0))]
        );
        let x1 = base().with_xtag(XTag::X1);
        assert_eq!(
            fs_on_x1().column(&x1).unwrap(),
            vec![(x1.with_freq(Freq::W2), re(1.0))]
        );
        let x2 = base().with_xtag(XTag::X2).with_freq(Freq::W2);
        assert_eq!(fs_on_x1().column(&x2).unwrap(), vec![(x2, re(1.0))]);
        assert!(fs_on_x1().column(&base()).is_err());
    }

    #[test]
    fn fs_full_leakage_does_not_flip() {
        let e = fs_leaky(None, 1.0).unwrap();
        let col = e.column(&base()).unwrap();
        assert_eq!(col, vec![(base(), re(1.0))]);
        assert!(fs_leaky(None, 1.5).is_err());
    }

    #[test]
    fn stage2_examples() {
        let x1 = base().with_xtag(XTag::X1);
        let c = stage2_map().column(&x1).unwrap();
        assert!((coeff(&c, &x1) - H).abs() < 1e-15);
        assert!((coeff(&c, &x1.with_pol(Pol::V)) - H).abs() < 1e-15);
        let v1 = x1.with_pol(Pol::V);
        let c = stage2_map().column(&v1).unwrap();
        let x2 = x1.with_xtag(XTag::X2);
        assert!((coeff(&c, &x2) - H).abs() < 1e-15);
        assert!((coeff(&c, &x2.with_pol(Pol::V)) + H).abs() < 1e-15);
    }

    #[test]
    fn bs_columns() {
        let a1 = base();
        let c = bs().column(&a1).unwrap();
        assert!((coeff(&c, &a1) - H).abs() < 1e-15);
        assert!((coeff(&c, &a1.with_arm(Arm::B1)) - H).abs() < 1e-15);
        let b2 = a1.with_arm(Arm::B2);
        let c = bs().column(&b2).unwrap();
        assert!((coeff(&c, &a1.with_arm(Arm::A2)) - H).abs() < 1e-15);
        assert!((coeff(&c, &b2) + H).abs() < 1e-15);
        assert!(bs_imbalanced(0.7).is_err());
    }

    #[test]
    fn ui_h_m_and_v_n() {
        let e = ui(Arm::A1, Arm::B2).unwrap();
        let c = e.column(&base()).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|(l, _)| l.delay == DelayTag::ZERO));
        let signs: Vec<f64> = c.iter().map(|(_, c)| c.re).collect();
        assert_eq!(signs, vec![0.5, 0.5, -0.5, -0.5]);
        let vn = base().with_arm(Arm::B2).with_pol(Pol::V);
        let c = e.column(&vn).unwrap();
        assert!(c.iter().all(|(l, _)| l.delay == DelayTag::T0));
        let signs: Vec<f64> = c.iter().map(|(_, c)| c.re).collect();
        assert_eq!(signs, vec![0.5, -0.5, -0.5, 0.5]);
    }

    #[test]
    fn ui_ignores_other_arms() {
        let e = ui(Arm::A1, Arm::B2).unwrap();
        let l = base().with_arm(Arm::A2);
        assert_eq!(e.column(&l).unwrap(), vec![(l, re(1.0))]);
        assert!(matches!(
            ui(Arm::A1, Arm::A1),
            Err(ElementError::SameArms(Arm::A1))
        ));
    }

    #[test]
    fn delay_line() {
        let c = delay(DelayKind::T1).column(&base()).unwrap();
        assert_eq!(c, vec![(base().with_delay(DelayTag::T1), re(1.0))]);
    }
}
