use serde::{Deserialize, Serialize};

use super::ledger::Step;
use crate::bell::BellEnsemble;
use crate::dense::{self, gates, DenseState, Party};
use crate::error::{Error, Result};

/// A local operation on Bell pairs, executable on both engines.
///
/// Pair `k` occupies qubits `2k` (Alice) and `2k + 1` (Bob).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum LoccOp {
    /// C-NOT on each side from the source pair to the target pair.
    Bxor { source: usize, target: usize },
    /// Hadamard on both qubits of the pair.
    BilateralHadamard { pair: usize },
    /// S on Alice's qubit, S† on Bob's.
    BilateralPhase { pair: usize },
    /// A Pauli (1 = σx, 2 = σy, 3 = σz) on one qubit.
    Pauli {
        pair: usize,
        pauli: usize,
        side: Party,
    },
    /// With probability `probability`, one party applies `pauli` to its
    /// qubit of every listed pair; otherwise nothing.
    RandomPauli {
        pairs: Vec<usize>,
        pauli: usize,
        side: Party,
        probability: f64,
    },
}

fn qubit(pair: usize, side: Party) -> usize {
    match side {
        Party::Alice => 2 * pair,
        Party::Bob => 2 * pair + 1,
    }
}

fn pauli_name(index: usize) -> &'static str {
    match index {
        1 => "sigma-x",
        2 => "sigma-y",
        3 => "sigma-z",
        _ => "identity",
    }
}

fn local_step(side: Party, op: &str, operands: Vec<usize>) -> Step {
    match side {
        Party::Alice => Step::alice(op, operands),
        Party::Bob => Step::bob(op, operands),
    }
}

impl LoccOp {
    pub fn apply(&self, e: &BellEnsemble) -> Result<BellEnsemble> {
        match *self {
            LoccOp::Bxor { source, target } => e.bxor(source, target),
            LoccOp::BilateralHadamard { pair } => e.bilateral_hadamard(pair),
            LoccOp::BilateralPhase { pair } => e.bilateral_phase(pair),
            LoccOp::Pauli { pair, pauli, side } => e.one_sided_pauli(pair, pauli, side),
            LoccOp::RandomPauli {
                ref pairs,
                pauli,
                side,
                probability,
            } => {
                check_probability(probability)?;
                let mut flipped = e.clone();
                for &p in pairs {
                    flipped = flipped.one_sided_pauli(p, pauli, side)?;
                }
                BellEnsemble::mix(&[(e, 1.0 - probability), (&flipped, probability)])
            }
        }
    }

    pub fn apply_dense(&self, s: &DenseState) -> Result<DenseState> {
        match *self {
            LoccOp::Bxor { source, target } => {
                if source == target {
                    return Err(Error::SourceEqualsTarget);
                }
                s.apply_unitary(&gates::cnot(), &[2 * source, 2 * target])?
                    .apply_unitary(&gates::cnot(), &[2 * source + 1, 2 * target + 1])
            }
            LoccOp::BilateralHadamard { pair } => s
                .apply_unitary(&gates::hadamard(), &[2 * pair])?
                .apply_unitary(&gates::hadamard(), &[2 * pair + 1]),
            LoccOp::BilateralPhase { pair } => s
                .apply_unitary(&gates::phase_s(), &[2 * pair])?
                .apply_unitary(&gates::phase_s_dagger(), &[2 * pair + 1]),
            LoccOp::Pauli { pair, pauli, side } => {
                if !(1..=3).contains(&pauli) {
                    return Err(Error::InvalidParameter(format!(
                        "pauli index {pauli} not in 1..=3"
                    )));
                }
                s.apply_unitary(&dense::pauli(pauli), &[qubit(pair, side)])
            }
            LoccOp::RandomPauli {
                ref pairs,
                pauli,
                side,
                probability,
            } => {
                check_probability(probability)?;
                let mut flipped = s.clone();
                for &p in pairs {
                    flipped = flipped.apply_unitary(&dense::pauli(pauli), &[qubit(p, side)])?;
                }
                DenseState::mix(&[(s, 1.0 - probability), (&flipped, probability)])
            }
        }
    }

    /// The local steps this operation decomposes into.
    pub fn steps(&self) -> Vec<Step> {
        match *self {
            LoccOp::Bxor { source, target } => vec![
                Step::alice("cnot", vec![2 * source, 2 * target]),
                Step::bob("cnot", vec![2 * source + 1, 2 * target + 1]),
            ],
            LoccOp::BilateralHadamard { pair } => vec![
                Step::alice("hadamard", vec![2 * pair]),
                Step::bob("hadamard", vec![2 * pair + 1]),
            ],
            LoccOp::BilateralPhase { pair } => vec![
                Step::alice("phase", vec![2 * pair]),
                Step::bob("phase-dagger", vec![2 * pair + 1]),
            ],
            LoccOp::Pauli { pair, pauli, side } => {
                vec![local_step(side, pauli_name(pauli), vec![qubit(pair, side)])]
            }
            LoccOp::RandomPauli {
                ref pairs,
                pauli,
                side,
                ..
            } => vec![local_step(
                side,
                &format!("random-{}", pauli_name(pauli)),
                pairs.iter().map(|&p| qubit(p, side)).collect(),
            )],
        }
    }

    /// Inverse at the level of density operators. Every unitary op here is
    /// an involution up to phase; the random flip is not invertible.
    pub fn inverse(&self) -> Option<LoccOp> {
        match self {
            LoccOp::RandomPauli { .. } => None,
            op => Some(op.clone()),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbabilities(format!("flip probability {p}")))
    }
}

pub fn run_symbolic(ops: &[LoccOp], e: &BellEnsemble) -> Result<BellEnsemble> {
    ops.iter().try_fold(e.clone(), |acc, op| op.apply(&acc))
}

pub fn run_dense(ops: &[LoccOp], s: &DenseState) -> Result<DenseState> {
    ops.iter()
        .try_fold(s.clone(), |acc, op| op.apply_dense(&acc))
}

pub fn steps_of(ops: &[LoccOp]) -> Vec<Step> {
    ops.iter().flat_map(LoccOp::steps).collect()
}

/// The reversed list of inverses, or `None` if some op is not invertible.
pub fn inverse_of(ops: &[LoccOp]) -> Option<Vec<LoccOp>> {
    ops.iter().rev().map(LoccOp::inverse).collect()
}
