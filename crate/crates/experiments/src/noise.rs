//! Imperfect elements.

use hbsa_circuit::{build_hbsa_circuit, Circuit, Step};
use hbsa_elements::{bs_imbalanced, fs_leaky, Element};
use serde::{Deserialize, Serialize};

use crate::ExperimentError;

/// Deviations of the analyzer elements from their ideal form.
///
/// `hwp_jitter` (degrees) is added to every half-wave plate angle, including
/// the plate inside the stage-2 block. `fs_leakage` is the amplitude left on
/// the unflipped frequency, in [0, 1]. `bs_imbalance` shifts the beam splitter
/// transmission amplitude to sqrt(1/2 + imbalance), in [-1/2, 1/2].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseParams {
    pub hwp_jitter: f64,
    pub fs_leakage: f64,
    pub bs_imbalance: f64,
}

/// The parameters that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NoiseParam {
    HwpJitter,
    FsLeakage,
    BsImbalance,
}

impl NoiseParam {
    pub const ALL: [NoiseParam; 3] = [
        NoiseParam::HwpJitter,
        NoiseParam::FsLeakage,
        NoiseParam::BsImbalance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoiseParam::HwpJitter => "hwp_jitter",
            NoiseParam::FsLeakage => "fs_leakage",
            NoiseParam::BsImbalance => "bs_imbalance",
        }
    }
}

impl NoiseParams {
    pub fn ideal() -> Self {
        NoiseParams::default()
    }

    /// Only `param` set to `value`.
    pub fn single(param: NoiseParam, value: f64) -> Self {
        let mut p = NoiseParams::ideal();
        match param {
            NoiseParam::HwpJitter => p.hwp_jitter = value,
            NoiseParam::FsLeakage => p.fs_leakage = value,
            NoiseParam::BsImbalance => p.bs_imbalance = value,
        }
        p
    }

    pub fn get(&self, param: NoiseParam) -> f64 {
        match param {
            NoiseParam::HwpJitter => self.hwp_jitter,
            NoiseParam::FsLeakage => self.fs_leakage,
            NoiseParam::BsImbalance => self.bs_imbalance,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if !self.hwp_jitter.is_finite() {
            return Err(ExperimentError::Param {
                name: "hwp_jitter",
                value: self.hwp_jitter,
            });
        }
        fs_leaky(None, self.fs_leakage)?;
        bs_imbalanced(self.bs_imbalance)?;
        Ok(())
    }
}

/// `element` with the deviations in `p` applied.
pub fn perturb_element(element: &Element, p: &NoiseParams) -> Result<Element, ExperimentError> {
    Ok(match *element {
        Element::Hwp { angle_deg } => Element::Hwp {
            angle_deg: angle_deg + p.hwp_jitter,
        },
        Element::Stage2 { hwp_angle_deg } => Element::Stage2 {
            hwp_angle_deg: hwp_angle_deg + p.hwp_jitter,
        },
        Element::Fs { path, .. } => fs_leaky(path, p.fs_leakage)?,
        Element::Bs { .. } => bs_imbalanced(p.bs_imbalance)?,
        _ => element.clone(),
    })
}

/// `circuit` with every element perturbed by `p`.
pub fn perturb(circuit: &Circuit, p: &NoiseParams) -> Result<Circuit, ExperimentError> {
    p.validate()?;
    let mut out = Circuit::new(circuit.name.clone());
    for step in &circuit.steps {
        let e = perturb_element(&step.op.element, p)?;
        out.steps.push(Step::new(e, step.op.slot));
    }
    Ok(out)
}

/// The analyzer with imperfect elements.
pub fn perturbed_circuit(p: &NoiseParams) -> Result<Circuit, ExperimentError> {
    perturb(&build_hbsa_circuit(), p)
}
