//! Expected intermediate states for the four worked examples.
//!
//! Stages 1 to 3 are ordered two-photon states. The stage-4 states mix delays,
//! so they are written as observable states keyed by relative delay and
//! compared after exchange symmetrization. Terms are transcribed sign for sign;
//! normalization is applied at comparison time.

use hbsa_state::{
    equal_up_to_global_phase, same_ray, Arm, Bell, Complex64, Freq, HyperBellIndex, Label,
    ObservableKey, ObservableState, Pol, RelDelay, TwoPhotonState, XTag, COMPARE_TOLERANCE,
};

use crate::program::{stage_snapshots, Circuit};
use crate::CircuitError;

/// Frequency-path pattern multiplying a reference state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathPattern {
    /// `x1 x2 + x2 x1`
    Cross,
    /// `x1 x1 + x2 x2`
    Same,
}

impl PathPattern {
    fn terms(self) -> [(XTag, XTag); 2] {
        match self {
            PathPattern::Cross => [(XTag::X1, XTag::X2), (XTag::X2, XTag::X1)],
            PathPattern::Same => [(XTag::X1, XTag::X1), (XTag::X2, XTag::X2)],
        }
    }
}

fn sign(c: char) -> f64 {
    if c == '-' {
        -1.0
    } else {
        1.0
    }
}

/// Parses `"+a1b1 -a2b2"`.
pub fn arm_terms(s: &str) -> Vec<(f64, Arm, Arm)> {
    s.split_whitespace()
        .map(|t| {
            let (sg, rest) = t.split_at(1);
            (
                sign(sg.chars().next().unwrap()),
                rest[0..2].parse().expect("arm"),
                rest[2..4].parse().expect("arm"),
            )
        })
        .collect()
}

/// Parses `"+HV -VH"`.
pub fn pol_terms(s: &str) -> Vec<(f64, Pol, Pol)> {
    let pol = |c: char| if c == 'H' { Pol::H } else { Pol::V };
    s.split_whitespace()
        .map(|t| {
            let c: Vec<char> = t.chars().collect();
            (sign(c[0]), pol(c[1]), pol(c[2]))
        })
        .collect()
}

fn label(arm: Arm, pol: Pol, x: XTag) -> Label {
    Label::new(arm, pol, Freq::W2).with_xtag(x)
}

/// `arms ⊗ pols ⊗ paths ⊗ |w2 w2>`, all delays zero.
pub fn product_state(arms: &str, pols: &str, paths: PathPattern) -> TwoPhotonState {
    let mut terms = Vec::new();
    for (sa, a1, a2) in arm_terms(arms) {
        for (sp, p1, p2) in pol_terms(pols) {
            for (x1, x2) in paths.terms() {
                terms.push((
                    (label(a1, p1, x1), label(a2, p2, x2)),
                    Complex64::new(sa * sp, 0.0),
                ));
            }
        }
    }
    TwoPhotonState::from_terms(terms)
}

/// Sum of `coef · delay-pair · arms ⊗ pols`, all times `paths ⊗ |w2 w2>`.
///
/// `rel` is the delay of the first photon minus that of the second.
pub fn delayed_state(terms: &[(f64, RelDelay, &str, &str)], paths: PathPattern) -> ObservableState {
    let mut out = Vec::new();
    for &(coef, rel, arms, pols) in terms {
        for (sa, a1, a2) in arm_terms(arms) {
            for (sp, p1, p2) in pol_terms(pols) {
                for (x1, x2) in paths.terms() {
                    out.push((
                        ObservableKey::new(label(a1, p1, x1), label(a2, p2, x2), rel),
                        Complex64::new(coef * sa * sp, 0.0),
                    ));
                }
            }
        }
    }
    ObservableState::from_terms(out)
}

const II: RelDelay = RelDelay { d0: 0, d1: 0 };
const I_T0: RelDelay = RelDelay { d0: -1, d1: 0 };
const T0_I: RelDelay = RelDelay { d0: 1, d1: 0 };
const I_T1: RelDelay = RelDelay { d0: 0, d1: -1 };
const T1_I: RelDelay = RelDelay { d0: 0, d1: 1 };
const I_T01: RelDelay = RelDelay { d0: -1, d1: -1 };
const T1_T0: RelDelay = RelDelay { d0: -1, d1: 1 };

/// A worked example: input index, expected states after stages 1 to 3, and the
/// expected stage-4 state.
#[derive(Debug, Clone)]
pub struct WorkedExample {
    pub input: HyperBellIndex,
    pub stages: [TwoPhotonState; 3],
    pub stage4: ObservableState,
}

pub fn worked_examples() -> Vec<WorkedExample> {
    use Bell::*;
    use PathPattern::*;
    vec![
        WorkedExample {
            input: HyperBellIndex::new(PhiPlus, PhiPlus),
            stages: [
                product_state("+a1b1 +a2b2", "+HH +VV", Cross),
                product_state("+a1b1 +a2b2", "+HH +VV", Cross),
                product_state(
                    "+a1a1 -a1b1 +b1a1 -b1b1 +a2a2 -a2b2 +b2a2 -b2b2",
                    "+HH +VV",
                    Cross,
                ),
            ],
            stage4: delayed_state(&[(1.0, II, "+b1a2 +a2b1 -a1b2 -b2a1", "+HV +VH")], Cross),
        },
        WorkedExample {
            input: HyperBellIndex::new(PsiPlus, PsiMinus),
            stages: [
                product_state("+a1b2 +a2b1", "-HV +VH", Cross),
                product_state("+a1b2 +a2b1", "-HV +VH", Same),
                product_state(
                    "+a1a2 -a1b2 +b1a2 -b1b2 +a2a1 -a2b1 +b2a1 -b2b1",
                    "+HV -VH",
                    Same,
                ),
            ],
            stage4: delayed_state(
                &[
                    (1.0, I_T0, "-a1a2 -b2b1 +b1b2 +a2a1", "+HH -VV"),
                    (-1.0, I_T0, "+a1b1 +b2a2 -b1a1 -a2b2", "+HV -VH"),
                    (1.0, T0_I, "+b1b2 +a2a1 -a1a2 -b2b1", "+HH -VV"),
                    (-1.0, T0_I, "+b1a1 +a2b2 -a1b1 -b2a2", "+HV -VH"),
                ],
                Same,
            ),
        },
        WorkedExample {
            input: HyperBellIndex::new(PhiMinus, PsiPlus),
            stages: [
                product_state("+a1b1 -a2b2", "+HH -VV", Cross),
                product_state("+a1b1 -a2b2", "+HV +VH", Cross),
                product_state(
                    "+a1a1 -a1b1 +b1a1 -b1b1 -a2a2 +a2b2 -b2a2 +b2b2",
                    "+HV +VH",
                    Cross,
                ),
            ],
            stage4: delayed_state(
                &[
                    (1.0, I_T1, "+a1a1 -b2b2 +a1b2 -b2a1", "+HH -VV"),
                    (-1.0, I_T1, "+b1b1 +b1a2 -a2b1 +a2a2", "+HH -VV"),
                    (-1.0, T1_I, "+b1b1 -a2a2 -b1a2 +a2b1", "+HH -VV"),
                    (1.0, T1_I, "+a1a1 -b2b2 +b2a1 -a1b2", "+HH -VV"),
                ],
                Cross,
            ),
        },
        WorkedExample {
            input: HyperBellIndex::new(PsiMinus, PhiMinus),
            stages: [
                product_state("+a1b2 -a2b1", "+HV +VH", Cross),
                product_state("+a1b2 -a2b1", "+HH -VV", Same),
                product_state(
                    "+a1a2 -a1b2 +b1a2 -b1b2 -a2a1 +a2b1 -b2a1 +b2b1",
                    "+HH -VV",
                    Same,
                ),
            ],
            stage4: delayed_state(
                &[
                    (1.0, I_T01, "-a1a1 -a1b2 +b2a1 +b2b2", "+HH +HV +VH +VV"),
                    (1.0, I_T01, "+b1b1 +b1a2 -a2b1 -a2a2", "+HH +HV +VH +VV"),
                    (1.0, T1_T0, "+a1a1 -a1b2 +b2a1 -b2b2", "+HH -HV -VH +VV"),
                    (1.0, T1_T0, "+b1b1 -b1a2 +a2b1 -a2a2", "+HH -HV -VH +VV"),
                ],
                Same,
            ),
        },
    ]
}

pub fn worked_example(input: HyperBellIndex) -> Option<WorkedExample> {
    worked_examples().into_iter().find(|w| w.input == input)
}

/// Outcome of comparing one snapshot with its reference.
#[derive(Debug, Clone, PartialEq)]
pub struct StageVerdict {
    pub stage: u8,
    pub passed: bool,
    pub detail: String,
}

/// Compares an observed stage-4 state with a reference after exchange symmetrization.
pub fn compare_stage4(computed: &TwoPhotonState, reference: &ObservableState) -> StageVerdict {
    let c = ObservableState::from_state(computed).symmetrized();
    let r = reference.symmetrized();
    let (passed, detail) = if r.is_empty() {
        (
            false,
            "reference has no exchange-symmetric component".to_string(),
        )
    } else {
        let ok = same_ray(&c, &r, COMPARE_TOLERANCE);
        let overlap = c.ray_overlap(&r).unwrap_or(0.0);
        (ok, format!("overlap {overlap:.12}"))
    };
    StageVerdict {
        stage: 4,
        passed,
        detail,
    }
}

/// Runs `example.input` through `circuit` and checks the four stage snapshots.
pub fn check_worked_example(
    circuit: &Circuit,
    example: &WorkedExample,
) -> Result<Vec<StageVerdict>, CircuitError> {
    let input = hbsa_state::make_hyper_bell(example.input);
    let snaps = stage_snapshots(circuit, &input)?;
    let mut out = Vec::new();
    for (k, reference) in example.stages.iter().enumerate() {
        let stage = k as u8 + 1;
        let Some((_, s)) = snaps.get(k + 1) else {
            break;
        };
        let reference = reference.normalize().expect("reference is nonzero");
        let ok = equal_up_to_global_phase(s, &reference, COMPARE_TOLERANCE);
        let overlap = s.inner(&reference).norm();
        out.push(StageVerdict {
            stage,
            passed: ok,
            detail: format!("overlap {overlap:.12}"),
        });
    }
    if let Some((_, s)) = snaps.get(4) {
        out.push(compare_stage4(s, &example.stage4));
    }
    Ok(out)
}
