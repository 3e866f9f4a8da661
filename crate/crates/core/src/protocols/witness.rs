//! Entanglement-budget witnesses for the necessity of the shared ebits.
//!
//! A cloner acting linearly on a separable input must still output the
//! mixture of the clones, whose log-negativity then bounds from above the
//! entanglement the protocol has to supply.

use serde::Serialize;

use super::cloning::{clone_four_1_to_n, clone_pair_mixture, FourInput};
use crate::bell::{BellEnsemble, BellLabel};
use crate::error::Result;
use crate::measures::{log_negativity_report, MeasureReport};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessityWitness {
    pub output: BellEnsemble,
    pub input_report: MeasureReport,
    pub output_report: MeasureReport,
}

/// Runs the two-state cloner (n = 2) on `½(P[B1] + P[B2])`.
pub fn necessity_witness_two() -> Result<NecessityWitness> {
    let input = BellEnsemble::bell_diagonal([0.5, 0.5, 0.0, 0.0])?;
    let (output, _) = clone_pair_mixture(&input, [BellLabel::B1, BellLabel::B2], 2)?;
    Ok(NecessityWitness {
        input_report: log_negativity_report(&input, "half(B1+B2)")?,
        output_report: log_negativity_report(&output, "half(B1B1+B2B2)")?,
        output,
    })
}

/// Runs the four-state cloner (n = 2) on the uniform mixture, which yields
/// the Smolin state; the ancilla it consumes is `¼ Σ_i P[B_i^⊗3]`.
pub fn necessity_witness_four() -> Result<NecessityWitness> {
    let (output, _) = clone_four_1_to_n(FourInput::Distribution([0.25; 4]), 2)?;
    let ancilla = BellEnsemble::correlated([0.25; 4], 3)?;
    Ok(NecessityWitness {
        input_report: log_negativity_report(&output, "smolin")?,
        output_report: log_negativity_report(&ancilla, "rho3")?,
        output: ancilla,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_state_budget() {
        let w = necessity_witness_two().unwrap();
        assert_eq!(
            w.output,
            BellEnsemble::correlated([0.5, 0.5, 0.0, 0.0], 2).unwrap()
        );
        assert!(w.input_report.value.abs() < 1e-9);
        assert!((w.output_report.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn four_state_budget() {
        let w = necessity_witness_four().unwrap();
        assert!(w.input_report.value.abs() < 1e-9);
        assert!((w.output_report.value - 2.0).abs() < 1e-9);
    }
}
