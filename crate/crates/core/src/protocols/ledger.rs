use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Who performs a protocol step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepParty {
    AliceLocal,
    BobLocal,
    Classical,
}

/// One step of a protocol. `operands` are qubit indices in the protocol's
/// register: even indices are Alice's, odd ones Bob's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub party: StepParty,
    pub operation: String,
    pub operands: Vec<usize>,
}

impl Step {
    pub fn alice(operation: impl Into<String>, operands: Vec<usize>) -> Self {
        Self {
            party: StepParty::AliceLocal,
            operation: operation.into(),
            operands,
        }
    }

    pub fn bob(operation: impl Into<String>, operands: Vec<usize>) -> Self {
        Self {
            party: StepParty::BobLocal,
            operation: operation.into(),
            operands,
        }
    }

    pub fn classical(operation: impl Into<String>) -> Self {
        Self {
            party: StepParty::Classical,
            operation: operation.into(),
            operands: Vec::new(),
        }
    }
}

/// Entanglement and communication accounting for one protocol run.
///
/// A shared |B1⟩ counts as one ebit; separable Bell-diagonal mixtures are
/// free. `classical_bits` counts protocol messages only, not the shared
/// randomness used to prepare separable inputs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResourceLedger {
    pub ebits_consumed: f64,
    pub ebits_distilled: f64,
    pub classical_bits: u32,
    pub steps: Vec<Step>,
}

impl ResourceLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn consume(&mut self, ebits: f64) {
        self.ebits_consumed += ebits;
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, steps: impl IntoIterator<Item = Step>) {
        self.steps.extend(steps);
    }

    pub fn message(&mut self, bits: u32, what: impl Into<String>) {
        self.classical_bits += bits;
        self.steps.push(Step::classical(what));
    }

    /// Appends `other`, shifting its qubit operands by `offset` qubits.
    pub fn absorb(&mut self, other: ResourceLedger, offset: usize) {
        self.ebits_consumed += other.ebits_consumed;
        self.ebits_distilled += other.ebits_distilled;
        self.classical_bits += other.classical_bits;
        self.steps.extend(other.steps.into_iter().map(|mut s| {
            s.operands.iter_mut().for_each(|q| *q += offset);
            s
        }));
    }

    /// Structural LOCC audit: every quantum step stays on one side of the
    /// Alice:Bob cut, and communication steps touch no qubits.
    pub fn audit(&self) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            let ok = match step.party {
                StepParty::AliceLocal => step.operands.iter().all(|q| q % 2 == 0),
                StepParty::BobLocal => step.operands.iter().all(|q| q % 2 == 1),
                StepParty::Classical => step.operands.is_empty(),
            };
            if !ok {
                return Err(Error::LoccViolation(format!(
                    "step {i} ({:?} {}) acts on qubits {:?}",
                    step.party, step.operation, step.operands
                )));
            }
        }
        Ok(())
    }
}
