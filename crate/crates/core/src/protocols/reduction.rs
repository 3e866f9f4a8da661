use serde::{Deserialize, Serialize};

use super::ops::LoccOp;
use crate::bell::BellLabel;
use crate::dense::{self, gates, ComplexMatrix, DenseState, Party, QubitLabel, Role};
use crate::error::{Error, Result};
use crate::tol;

/// A local Clifford factor acting on one Bell pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalFactor {
    /// H ⊗ H: `(a, b) ↦ (b, a)`.
    Hadamard,
    /// S ⊗ S†: `(a, b) ↦ (a, a ⊕ b)`.
    Phase,
    /// A Pauli on Alice's qubit: XOR with the corresponding label.
    AlicePauli(usize),
}

impl LocalFactor {
    pub fn apply_label(self, l: BellLabel) -> BellLabel {
        match self {
            LocalFactor::Hadamard => BellLabel::new(l.b(), l.a()),
            LocalFactor::Phase => BellLabel::new(l.a(), l.a() ^ l.b()),
            LocalFactor::AlicePauli(k) => l.xor(BellLabel::from_bits(match k {
                1 => 0b10,
                2 => 0b11,
                3 => 0b01,
                _ => 0b00,
            })),
        }
    }

    pub fn alice_matrix(self) -> ComplexMatrix {
        match self {
            LocalFactor::Hadamard => gates::hadamard(),
            LocalFactor::Phase => gates::phase_s(),
            LocalFactor::AlicePauli(k) => gates::pauli(k),
        }
    }

    pub fn bob_matrix(self) -> ComplexMatrix {
        match self {
            LocalFactor::Hadamard => gates::hadamard(),
            LocalFactor::Phase => gates::phase_s_dagger(),
            LocalFactor::AlicePauli(_) => gates::identity(2),
        }
    }

    /// `None` for the identity Pauli, which needs no operation.
    pub fn op(self, pair: usize) -> Option<LoccOp> {
        match self {
            LocalFactor::Hadamard => Some(LoccOp::BilateralHadamard { pair }),
            LocalFactor::Phase => Some(LoccOp::BilateralPhase { pair }),
            LocalFactor::AlicePauli(0) => None,
            LocalFactor::AlicePauli(pauli) => Some(LoccOp::Pauli {
                pair,
                pauli,
                side: Party::Alice,
            }),
        }
    }
}

/// Local unitaries taking a set of two Bell states onto {B1, B3}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReduction {
    pub pair: [BellLabel; 2],
    /// Factors in application order.
    pub factors: Vec<LocalFactor>,
    /// Images of `pair[0]` and `pair[1]`.
    pub image: [BellLabel; 2],
}

impl PairReduction {
    pub fn map_label(&self, l: BellLabel) -> BellLabel {
        self.factors.iter().fold(l, |acc, f| f.apply_label(acc))
    }

    /// Inverse map at label level.
    pub fn unmap_label(&self, l: BellLabel) -> BellLabel {
        // Every factor is an involution on labels.
        self.factors
            .iter()
            .rev()
            .fold(l, |acc, f| f.apply_label(acc))
    }

    pub fn alice_unitary(&self) -> ComplexMatrix {
        self.factors
            .iter()
            .fold(gates::identity(2), |acc, f| f.alice_matrix() * acc)
    }

    pub fn bob_unitary(&self) -> ComplexMatrix {
        self.factors
            .iter()
            .fold(gates::identity(2), |acc, f| f.bob_matrix() * acc)
    }

    pub fn forward_ops(&self, pair: usize) -> Vec<LoccOp> {
        self.factors.iter().filter_map(|f| f.op(pair)).collect()
    }

    pub fn inverse_ops(&self, pair: usize) -> Vec<LoccOp> {
        self.factors
            .iter()
            .rev()
            .filter_map(|f| f.op(pair))
            .collect()
    }

    /// Dense certificate: `U_A ⊗ V_B |B_l⟩` has fidelity 1 with the image
    /// for both labels of the pair. Returns the worst deviation.
    pub fn certify(&self) -> Result<f64> {
        let u = gates::kron(&self.alice_unitary(), &self.bob_unitary());
        let labels = QubitLabel::pairs(1, Role::Source);
        let mut worst = 0.0f64;
        for (l, img) in self.pair.iter().zip(self.image) {
            let s = DenseState::pure(dense::bell_state(*l), labels.clone())?;
            let f = s
                .apply_unitary(&u, &[0, 1])?
                .fidelity(&dense::bell_state(img))?;
            worst = worst.max((1.0 - f).abs());
        }
        Ok(worst)
    }
}

/// Linear parts of the 24 label permutations reachable with local Cliffords,
/// enumerated shortest first.
const LINEAR_WORDS: [&[LocalFactor]; 6] = [
    &[],
    &[LocalFactor::Hadamard],
    &[LocalFactor::Phase],
    &[LocalFactor::Hadamard, LocalFactor::Phase],
    &[LocalFactor::Phase, LocalFactor::Hadamard],
    &[
        LocalFactor::Hadamard,
        LocalFactor::Phase,
        LocalFactor::Hadamard,
    ],
];

/// The 24 local Clifford factor words: six linear parts, each followed by
/// one of four Alice-side Pauli translations.
pub fn local_clifford_table() -> Vec<Vec<LocalFactor>> {
    LINEAR_WORDS
        .iter()
        .flat_map(|word| {
            (0..4).map(move |k| {
                let mut w = word.to_vec();
                if k != 0 {
                    w.push(LocalFactor::AlicePauli(k));
                }
                w
            })
        })
        .collect()
}

/// First entry of [`local_clifford_table`] mapping `pair` onto {B1, B3},
/// certified on the dense oracle.
pub fn pair_reduction_table(pair: [BellLabel; 2]) -> Result<PairReduction> {
    if pair[0] == pair[1] {
        return Err(Error::InvalidParameter(format!(
            "pair labels must be distinct, got {} twice",
            pair[0]
        )));
    }
    let target = |l: BellLabel| l == BellLabel::B1 || l == BellLabel::B3;
    for factors in local_clifford_table() {
        let candidate = PairReduction {
            pair,
            image: [BellLabel::B1; 2],
            factors,
        };
        let image = pair.map(|l| candidate.map_label(l));
        if target(image[0]) && target(image[1]) {
            let reduction = PairReduction { image, ..candidate };
            let defect = reduction.certify()?;
            if defect > tol::CIRCUIT {
                return Err(Error::InvalidState(format!(
                    "reduction {:?} fails dense certification ({defect:e})",
                    reduction.factors
                )));
            }
            return Ok(reduction);
        }
    }
    unreachable!("the local Clifford table acts transitively on label pairs")
}
