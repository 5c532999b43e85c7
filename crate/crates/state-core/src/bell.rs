//! Bell states, hyper-Bell indices and input-state constructors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::label::{Arm, Freq, Label, Pol};
use crate::state::TwoPhotonState;
use crate::{StateError, ZERO_THRESHOLD};

/// One of the four Bell states of a two-level degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    /// φ states are even parity, ψ states odd.
    pub fn is_phi(self) -> bool {
        matches!(self, Bell::PhiPlus | Bell::PhiMinus)
    }

    pub fn sign(self) -> f64 {
        match self {
            Bell::PhiPlus | Bell::PsiPlus => 1.0,
            Bell::PhiMinus | Bell::PsiMinus => -1.0,
        }
    }

    /// ASCII name, e.g. `phi+`.
    pub fn ascii(self) -> &'static str {
        match self {
            Bell::PhiPlus => "phi+",
            Bell::PhiMinus => "phi-",
            Bell::PsiPlus => "psi+",
            Bell::PsiMinus => "psi-",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Bell::PhiPlus => "φ+",
            Bell::PhiMinus => "φ−",
            Bell::PsiPlus => "ψ+",
            Bell::PsiMinus => "ψ−",
        }
    }

    fn from_ascii(s: &str) -> Option<Bell> {
        Bell::ALL.into_iter().find(|b| b.ascii() == s)
    }

    /// Amplitudes over `{|00>, |01>, |10>, |11>}` given the two basis values of a qubit.
    fn pairs<T: Copy + Ord>(self, zero: T, one: T) -> Part<T> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = self.sign();
        let terms = if self.is_phi() {
            [((zero, zero), h), ((one, one), s * h)]
        } else {
            [((zero, one), h), ((one, zero), s * h)]
        };
        Part::new(terms.map(|(k, c)| (k, Complex64::new(c, 0.0))))
    }
}

impl fmt::Display for Bell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ascii())
    }
}

/// Spatial Bell label times polarization Bell label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HyperBellIndex {
    pub spatial: Bell,
    pub polarization: Bell,
}

impl HyperBellIndex {
    pub fn new(spatial: Bell, polarization: Bell) -> Self {
        HyperBellIndex {
            spatial,
            polarization,
        }
    }

    /// All 16 indices, spatial label major.
    pub fn all() -> Vec<HyperBellIndex> {
        let mut out = Vec::with_capacity(16);
        for s in Bell::ALL {
            for p in Bell::ALL {
                out.push(HyperBellIndex::new(s, p));
            }
        }
        out
    }

    /// Position in [`HyperBellIndex::all`].
    pub fn ordinal(self) -> usize {
        let pos = |b: Bell| Bell::ALL.iter().position(|&x| x == b).unwrap();
        4 * pos(self.spatial) + pos(self.polarization)
    }

    /// Valid selector strings, in canonical order.
    pub fn selectors() -> Vec<String> {
        Self::all().iter().map(|i| i.to_string()).collect()
    }
}

impl fmt::Display for HyperBellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}s,{}p", self.spatial, self.polarization)
    }
}

impl FromStr for HyperBellIndex {
    type Err = StateError;

    /// Parses selectors such as `psi+s,phi-p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StateError::UnknownName {
            kind: "state selector",
            name: s.to_string(),
        };
        let (sp, po) = s.trim().split_once(',').ok_or_else(bad)?;
        let sp = sp.trim().strip_suffix('s').and_then(Bell::from_ascii);
        let po = po.trim().strip_suffix('p').and_then(Bell::from_ascii);
        match (sp, po) {
            (Some(sp), Some(po)) => Ok(HyperBellIndex::new(sp, po)),
            _ => Err(bad()),
        }
    }
}

/// Two-photon amplitudes in a single degree of freedom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part<T: Ord> {
    pub amps: BTreeMap<(T, T), Complex64>,
}

impl<T: Copy + Ord> Part<T> {
    pub fn new<I: IntoIterator<Item = ((T, T), Complex64)>>(terms: I) -> Self {
        let mut amps = BTreeMap::new();
        for (k, c) in terms {
            *amps.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Part { amps }
    }

    /// A single product term `|first, second>`.
    pub fn product(first: T, second: T) -> Self {
        Part::new([((first, second), Complex64::new(1.0, 0.0))])
    }

    fn normalized(&self, what: &'static str) -> Result<Self, StateError> {
        let n = crate::state::norm(&self.amps);
        if n < ZERO_THRESHOLD {
            return Err(StateError::ZeroPart(what));
        }
        Ok(Part {
            amps: self
                .amps
                .iter()
                .map(|(k, c)| (*k, c / n))
                .filter(|(_, c)| c.norm() >= ZERO_THRESHOLD)
                .collect(),
        })
    }
}

/// Spatial Bell state: φ± = (a1 b1 ± a2 b2)/√2, ψ± = (a1 b2 ± a2 b1)/√2.
pub fn spatial_bell(b: Bell) -> Part<Arm> {
    let mut p = b.pairs(0u8, 1u8);
    let arm = |i: u8, side: char| match (i, side) {
        (0, 'a') => Arm::A1,
        (1, 'a') => Arm::A2,
        (0, _) => Arm::B1,
        _ => Arm::B2,
    };
    Part {
        amps: std::mem::take(&mut p.amps)
            .into_iter()
            .map(|((i, j), c)| ((arm(i, 'a'), arm(j, 'b')), c))
            .collect(),
    }
}

/// Polarization Bell state: φ± = (HH ± VV)/√2, ψ± = (HV ± VH)/√2.
pub fn polarization_bell(b: Bell) -> Part<Pol> {
    b.pairs(Pol::H, Pol::V)
}

/// Frequency Bell state over (ω1, ω2).
pub fn frequency_bell(b: Bell) -> Part<Freq> {
    b.pairs(Freq::W1, Freq::W2)
}

/// Tensor product of a spatial, a polarization and a frequency part, normalized.
pub fn make_custom(
    spatial: &Part<Arm>,
    pol: &Part<Pol>,
    freq: &Part<Freq>,
) -> Result<TwoPhotonState, StateError> {
    let spatial = spatial.normalized("spatial")?;
    let pol = pol.normalized("polarization")?;
    let freq = freq.normalized("frequency")?;
    let mut terms = Vec::new();
    for (&(sa, sb), &cs) in &spatial.amps {
        for (&(pa, pb), &cp) in &pol.amps {
            for (&(fa, fb), &cf) in &freq.amps {
                terms.push((
                    (Label::new(sa, pa, fa), Label::new(sb, pb, fb)),
                    cs * cp * cf,
                ));
            }
        }
    }
    TwoPhotonState::from_terms(terms).normalize()
}

/// Hyper-Bell state with the auxiliary frequency state ψ+.
pub fn make_hyper_bell(idx: HyperBellIndex) -> TwoPhotonState {
    make_with_aux(idx, &frequency_bell(Bell::PsiPlus)).expect("Bell parts are normalized")
}

/// Hyper-Bell state with an arbitrary auxiliary frequency state.
pub fn make_with_aux(idx: HyperBellIndex, aux: &Part<Freq>) -> Result<TwoPhotonState, StateError> {
    make_custom(
        &spatial_bell(idx.spatial),
        &polarization_bell(idx.polarization),
        aux,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::XTag;

    #[test]
    fn selector_round_trip() {
        for idx in HyperBellIndex::all() {
            assert_eq!(idx.to_string().parse::<HyperBellIndex>().unwrap(), idx);
        }
        assert!("phi-s".parse::<HyperBellIndex>().is_err());
        assert!("phi-p,phi+s".parse::<HyperBellIndex>().is_err());
    }

    #[test]
    fn ordinals_are_positions() {
        for (i, idx) in HyperBellIndex::all().into_iter().enumerate() {
            assert_eq!(idx.ordinal(), i);
        }
    }

    #[test]
    fn phi_phi_terms() {
        let s = make_hyper_bell(HyperBellIndex::new(Bell::PhiPlus, Bell::PhiPlus));
        assert_eq!(s.len(), 8);
        let amp = 1.0 / (2.0 * 2f64.sqrt());
        for (&(a, b), c) in s.iter() {
            assert!((c.re - amp).abs() < 1e-15 && c.im == 0.0);
            assert_eq!(a.arm.index(), b.arm.index());
            assert_eq!(a.pol, b.pol);
            assert_ne!(a.freq, b.freq);
            assert_eq!(a.xtag, XTag::Unset);
        }
    }

    #[test]
    fn psi_minus_phi_minus_signs() {
        let s = make_hyper_bell(HyperBellIndex::new(Bell::PsiMinus, Bell::PhiMinus));
        let l = |arm, pol, f| Label::new(arm, pol, f);
        let c1 = s.amplitude(&l(Arm::A1, Pol::H, Freq::W1), &l(Arm::B2, Pol::H, Freq::W2));
        let c2 = s.amplitude(&l(Arm::A2, Pol::H, Freq::W1), &l(Arm::B1, Pol::H, Freq::W2));
        let c3 = s.amplitude(&l(Arm::A1, Pol::V, Freq::W1), &l(Arm::B2, Pol::V, Freq::W2));
        assert!((c1 + c2).norm() < 1e-15 && c1.norm() > 0.1);
        assert!((c1 + c3).norm() < 1e-15);
    }

    #[test]
    fn custom_product_aux() {
        let s = make_custom(
            &spatial_bell(Bell::PhiPlus),
            &polarization_bell(Bell::PhiPlus),
            &Part::product(Freq::W1, Freq::W2),
        )
        .unwrap();
        assert_eq!(s.len(), 4);
        for (_, c) in s.iter() {
            assert!((c.re - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn custom_rescales_parts() {
        let mut freq = frequency_bell(Bell::PsiPlus);
        for c in freq.amps.values_mut() {
            *c *= 3.0;
        }
        let idx = HyperBellIndex::new(Bell::PsiPlus, Bell::PhiMinus);
        let s = make_with_aux(idx, &freq).unwrap();
        assert!(s.distance(&make_hyper_bell(idx)) < 1e-15);
    }

    #[test]
    fn zero_part_rejected() {
        let empty: Part<Pol> = Part::new([]);
        assert!(matches!(
            make_custom(
                &spatial_bell(Bell::PhiPlus),
                &empty,
                &frequency_bell(Bell::PsiPlus)
            ),
            Err(StateError::ZeroPart("polarization"))
        ));
    }
}
