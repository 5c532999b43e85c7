//! Circuits as ordered lists of lifted elements.

use hbsa_elements::{
    bs, fbs, fs_on_x1, hwp, lift, stage2_map, ui, Element, Slot, TwoPhotonOperator, HADAMARD_ANGLE,
};
use hbsa_state::{Arm, TwoPhotonState};

use crate::CircuitError;

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub op: TwoPhotonOperator,
    pub name: String,
}

impl Step {
    /// A step named after its operator.
    pub fn new(element: Element, slot: Slot) -> Self {
        let op = lift(element, slot);
        Step {
            name: op.to_string(),
            op,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub name: String,
    pub steps: Vec<Step>,
}

impl Circuit {
    pub fn new(name: impl Into<String>) -> Self {
        Circuit {
            name: name.into(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, element: Element, slot: Slot) -> &mut Self {
        self.steps.push(Step::new(element, slot));
        self
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Circuit) -> Circuit {
        let mut out = self.clone();
        out.steps.extend(other.steps.iter().cloned());
        out
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The two unbalanced interferometers, as (m, n) arm pairs.
pub const HBSA_WIRING: [(Arm, Arm); 2] = [(Arm::A1, Arm::B2), (Arm::B1, Arm::A2)];

/// The full analyzer with the default interferometer wiring.
pub fn build_hbsa_circuit() -> Circuit {
    build_hbsa_circuit_with(&HBSA_WIRING).expect("default wiring is valid")
}

/// The full analyzer with the given (m, n) pairs for the interferometer stage.
pub fn build_hbsa_circuit_with(wiring: &[(Arm, Arm)]) -> Result<Circuit, CircuitError> {
    let mut c = Circuit::new("hbsa");
    c.push(hwp(HADAMARD_ANGLE), Slot::Both)
        .push(fbs(), Slot::Both)
        .push(fs_on_x1(), Slot::Both)
        .push(stage2_map(), Slot::Both)
        .push(bs(), Slot::Both);
    for &(m, n) in wiring {
        c.push(ui(m, n)?, Slot::Both);
    }
    Ok(c)
}

pub fn run(circuit: &Circuit, state: &TwoPhotonState) -> Result<TwoPhotonState, CircuitError> {
    let mut s = state.clone();
    for (i, step) in circuit.steps.iter().enumerate() {
        s = apply_step(i, step, &s)?;
    }
    Ok(s)
}

/// The state after every step, in order.
pub fn stage_states(
    circuit: &Circuit,
    state: &TwoPhotonState,
) -> Result<Vec<(String, TwoPhotonState)>, CircuitError> {
    let mut out = Vec::with_capacity(circuit.len());
    let mut s = state.clone();
    for (i, step) in circuit.steps.iter().enumerate() {
        s = apply_step(i, step, &s)?;
        out.push((step.name.clone(), s.clone()));
    }
    Ok(out)
}

fn apply_step(
    index: usize,
    step: &Step,
    state: &TwoPhotonState,
) -> Result<TwoPhotonState, CircuitError> {
    step.op.apply(state).map_err(|source| CircuitError::Step {
        index,
        name: step.name.clone(),
        source,
    })
}

/// Analyzer stage an element belongs to: 1 plates, frequency routing and shifting;
/// 2 polarizing split; 3 beam splitters; 4 interferometers and delays.
pub fn stage_of(element: &Element) -> u8 {
    match element {
        Element::Hwp { .. } | Element::Fbs | Element::Fs { .. } => 1,
        Element::Stage2 { .. } => 2,
        Element::Bs { .. } => 3,
        Element::Ui { .. } | Element::UiAsPrinted { .. } | Element::Delay(_) => 4,
    }
}

/// Input plus the state at the end of each run of same-stage steps.
pub fn stage_snapshots(
    circuit: &Circuit,
    state: &TwoPhotonState,
) -> Result<Vec<(String, TwoPhotonState)>, CircuitError> {
    let states = stage_states(circuit, state)?;
    let mut out = vec![("input".to_string(), state.clone())];
    for (i, (_, s)) in states.iter().enumerate() {
        let stage = stage_of(&circuit.steps[i].op.element);
        let last = circuit
            .steps
            .get(i + 1)
            .is_none_or(|next| stage_of(&next.op.element) != stage);
        if last {
            out.push((format!("stage {stage}"), s.clone()));
        }
    }
    Ok(out)
}
