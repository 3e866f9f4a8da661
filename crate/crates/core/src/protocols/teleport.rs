//! Two-sided teleportation of a Bell pair through a shared multi-pair state.
//!
//! Register layout: the input pair is pair 0 (qubits 0, 1), the channel's
//! sending pair is pair 1 (qubits 2, 3) and every further channel pair is a
//! receiver. Alice Bell-measures qubits (0, 2), Bob qubits (1, 3), and both
//! apply the outcome's Pauli correction to their qubit of every receiver.

use nalgebra::DMatrix;

use super::ledger::{ResourceLedger, Step};
use crate::bell::BellLabel;
use crate::dense::{
    self, gates, ComplexMatrix, DenseState, Party, PureBranch, QubitLabel, Role, C64,
};
use crate::error::{Error, Result};

/// Correction for a measurement outcome on a |B1⟩ channel:
/// B1 → I, B2 → σz, B3 → σx, B4 → σy.
pub fn correction_pauli(outcome: BellLabel) -> usize {
    match outcome.bits() {
        0b00 => 0,
        0b01 => 3,
        0b10 => 1,
        _ => 2,
    }
}

fn check_pair_layout(state: &DenseState, what: &str) -> Result<()> {
    if !state.n_qubits().is_multiple_of(2) {
        return Err(Error::InvalidState(format!("{what}: odd number of qubits")));
    }
    for (q, l) in state.labels().iter().enumerate() {
        let party = if q % 2 == 0 { Party::Alice } else { Party::Bob };
        if l.party != party {
            return Err(Error::InvalidState(format!(
                "{what}: qubit {q} belongs to {:?}, expected {party:?}",
                l.party
            )));
        }
    }
    Ok(())
}

/// Teleports the two-qubit `input` through `channel`, whose first pair is
/// consumed and whose remaining pairs all receive a copy. The result covers
/// the receiving pairs, averaged over all measurement outcomes.
pub fn teleport_pairs(input: &DenseState, channel: &DenseState) -> Result<DenseState> {
    if input.n_qubits() != 2 {
        return Err(Error::InvalidState(
            "teleportation input must be two qubits".into(),
        ));
    }
    check_pair_layout(input, "input")?;
    check_pair_layout(channel, "channel")?;
    let channel_pairs = channel.n_qubits() / 2;
    if channel_pairs < 2 {
        return Err(Error::InvalidState(
            "channel needs a sending pair and a receiving pair".into(),
        ));
    }
    let input = input.clone().with_labels(vec![
        QubitLabel::new(Party::Alice, 0, Role::Input),
        QubitLabel::new(Party::Bob, 0, Role::Input),
    ])?;
    let joint = input.tensor(channel)?;
    let receivers: Vec<usize> = (2..=channel_pairs).collect();

    let mut outcomes: Vec<(DenseState, f64)> = Vec::new();
    for alice in joint.bell_measurement([0, 2])? {
        for bob in alice.state.bell_measurement([1, 3])? {
            let mut s = bob.state;
            let (pa, pb) = (
                correction_pauli(alice.outcome),
                correction_pauli(bob.outcome),
            );
            for &r in &receivers {
                if pa != 0 {
                    s = s.apply_unitary(&gates::pauli(pa), &[2 * r])?;
                }
                if pb != 0 {
                    s = s.apply_unitary(&gates::pauli(pb), &[2 * r + 1])?;
                }
            }
            outcomes.push((s, alice.probability * bob.probability));
        }
    }
    let parts: Vec<(&DenseState, f64)> = outcomes.iter().map(|(s, p)| (s, *p)).collect();
    let averaged = DenseState::mix(&parts)?;
    let keep: Vec<usize> = (4..joint.n_qubits()).collect();
    let out = averaged.partial_trace(&keep)?;
    out.with_labels(QubitLabel::pairs(channel_pairs - 1, Role::Source))
}

/// Teleportation of a two-qubit state through a two-pair channel laid out as
/// `A1, B1, A2, B2`; Alice uses `A1 → A2`, Bob `B1 → B2`.
pub fn teleport_two_qubit(channel: &DenseState, input: &DenseState) -> Result<DenseState> {
    if channel.n_qubits() != 4 {
        return Err(Error::InvalidState(format!(
            "channel must have 4 qubits, got {}",
            channel.n_qubits()
        )));
    }
    teleport_pairs(input, channel)
}

/// Ledger entries for one teleportation into `receivers` pairs.
pub fn teleport_steps(receivers: usize) -> ResourceLedger {
    let mut ledger = ResourceLedger::new();
    ledger.push(Step::alice("bell-measurement", vec![0, 2]));
    ledger.push(Step::bob("bell-measurement", vec![1, 3]));
    ledger.message(4, "broadcast both 2-bit outcomes");
    let alice_targets = (0..receivers).map(|r| 2 * (r + 2)).collect();
    let bob_targets = (0..receivers).map(|r| 2 * (r + 2) + 1).collect();
    ledger.push(Step::alice("pauli-correction", alice_targets));
    ledger.push(Step::bob("pauli-correction", bob_targets));
    ledger
}

/// The channel with |B1⟩ on A1A2 and on B1B2: two ideal teleportations.
pub fn ideal_channel() -> Result<DenseState> {
    // |Φ+⟩_{A1A2}|Φ+⟩_{B1B2} = ½ Σ_{x,y} |x y x y⟩ in A1 B1 A2 B2 order.
    let mut amps = vec![C64::new(0.0, 0.0); 16];
    for x in 0..2 {
        for y in 0..2 {
            amps[(x << 3) | (y << 2) | (x << 1) | y] = C64::new(0.5, 0.0);
        }
    }
    DenseState::pure(
        PureBranch::new(amps, 1.0)?,
        QubitLabel::pairs(2, Role::Ancilla),
    )
}

/// The channel `¼ Σ_i P[B_i ⊗ B_i]` on pairs (A1B1)(A2B2).
pub fn smolin_channel() -> Result<DenseState> {
    super::preparation::smolin().to_dense_with_role(Role::Ancilla)
}

/// `σ_i ⊗ σ_j ↦ δ_ij σ_i ⊗ σ_j` applied to a 4×4 operator via its Pauli
/// expansion.
pub fn correlated_pauli_filter(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if rho.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.nrows(),
        });
    }
    let mut out = DMatrix::from_element(4, 4, C64::new(0.0, 0.0));
    for i in 0..4 {
        let p = gates::kron(&gates::pauli(i), &gates::pauli(i));
        let coefficient = (&p * rho).trace() / C64::new(4.0, 0.0);
        out += p * coefficient;
    }
    Ok(out)
}

/// Choi matrix of [`correlated_pauli_filter`].
pub fn correlated_pauli_filter_choi() -> Result<ComplexMatrix> {
    dense::choi_from_operator_map(4, correlated_pauli_filter)
}

/// Choi matrix of the two-qubit channel induced by teleporting through `channel`.
pub fn teleport_choi(channel: &DenseState) -> Result<ComplexMatrix> {
    let labels = [
        QubitLabel::new(Party::Alice, 0, Role::Input),
        QubitLabel::new(Party::Bob, 0, Role::Input),
    ];
    dense::choi_matrix(&labels, |input| teleport_two_qubit(channel, input))
}
