//! Dense state-vector oracle.
//!
//! Mixed states are kept as weighted pure branches; a density matrix is only
//! materialized for registers of at most [`MAX_MATRIX_QUBITS`] qubits. Qubit 0
//! is the most significant bit of a basis index.

mod choi;
pub mod gates;
pub mod linalg;

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

pub use choi::{apply_via_choi, choi_from_operator_map, choi_matrix};
pub use gates::{cnot, hadamard, pauli, phase_s, phase_s_dagger};
pub use linalg::{hermitian_eigenvalues, max_abs_diff, trace_distance, trace_norm};

use crate::bell::BellLabel;
use crate::error::{Error, Result};
use crate::tol;

pub type C64 = nalgebra::Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;

/// Largest register held as a pure branch.
pub const MAX_BRANCH_QUBITS: usize = 14;
/// Largest register for which a density matrix is materialized.
pub const MAX_MATRIX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Source,
    Ancilla,
    Input,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QubitLabel {
    pub party: Party,
    pub pair: usize,
    pub role: Role,
}

impl QubitLabel {
    pub fn new(party: Party, pair: usize, role: Role) -> Self {
        Self { party, pair, role }
    }

    /// Labels for `n_pairs` Bell pairs laid out pair by pair, Alice first.
    pub fn pairs(n_pairs: usize, role: Role) -> Vec<QubitLabel> {
        (0..n_pairs)
            .flat_map(|p| {
                [
                    QubitLabel::new(Party::Alice, p, role),
                    QubitLabel::new(Party::Bob, p, role),
                ]
            })
            .collect()
    }
}

/// One pure component of a mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct PureBranch {
    amplitudes: Vec<C64>,
    weight: f64,
}

impl PureBranch {
    pub fn new(amplitudes: Vec<C64>, weight: f64) -> Result<Self> {
        if amplitudes.is_empty() || !amplitudes.len().is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "amplitude vector length {} is not a power of two",
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol::CIRCUIT {
            return Err(Error::InvalidState(format!("branch norm {norm} != 1")));
        }
        if !(weight > 0.0 && weight <= 1.0 + tol::CIRCUIT) {
            return Err(Error::InvalidState(format!(
                "branch weight {weight} outside (0, 1]"
            )));
        }
        Ok(Self { amplitudes, weight })
    }

    /// Normalizes `amplitudes`, folding the squared norm into the weight.
    fn from_unnormalized(amplitudes: Vec<C64>, weight: f64) -> Option<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let w = weight * norm_sqr;
        if w <= tol::BRANCH_WEIGHT {
            return None;
        }
        let scale = 1.0 / norm_sqr.sqrt();
        Some(Self {
            amplitudes: amplitudes.into_iter().map(|z| z * scale).collect(),
            weight: w,
        })
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn inner(&self, other: &PureBranch) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn tensor(&self, other: &PureBranch) -> PureBranch {
        let mut amps = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        PureBranch {
            amplitudes: amps,
            weight: self.weight * other.weight,
        }
    }
}

/// The two-qubit amplitude vector of a Bell state.
pub fn bell_state(label: BellLabel) -> PureBranch {
    let mut amps = vec![C64::new(0.0, 0.0); 4];
    for x in 0..2usize {
        let y = x ^ label.a() as usize;
        let sign = if label.b() && x == 1 { -1.0 } else { 1.0 };
        amps[(x << 1) | y] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
    }
    PureBranch {
        amplitudes: amps,
        weight: 1.0,
    }
}

/// Tensor product of Bell states, one per pair.
pub fn bell_string_state(labels: &[BellLabel]) -> PureBranch {
    labels
        .iter()
        .map(|&l| bell_state(l))
        .reduce(|acc, b| acc.tensor(&b))
        .unwrap_or(PureBranch {
            amplitudes: vec![C64::new(1.0, 0.0)],
            weight: 1.0,
        })
}

/// A bipartition of a register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    left: BTreeSet<usize>,
    right: BTreeSet<usize>,
}

impl Cut {
    pub fn new(left: impl IntoIterator<Item = usize>, n_qubits: usize) -> Result<Self> {
        let left: BTreeSet<usize> = left.into_iter().collect();
        if let Some(&bad) = left.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::QubitOutOfRange {
                index: bad,
                n_qubits,
            });
        }
        let right: BTreeSet<usize> = (0..n_qubits).filter(|q| !left.contains(q)).collect();
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidCut("both sides must be non-empty".into()));
        }
        Ok(Self { left, right })
    }

    /// All Alice qubits against all Bob qubits.
    pub fn alice_bob(labels: &[QubitLabel]) -> Result<Self> {
        let left = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.party == Party::Alice)
            .map(|(i, _)| i);
        Self::new(left, labels.len())
    }

    pub fn left(&self) -> &BTreeSet<usize> {
        &self.left
    }

    pub fn right(&self) -> &BTreeSet<usize> {
        &self.right
    }

    pub fn n_qubits(&self) -> usize {
        self.left.len() + self.right.len()
    }
}

/// One outcome of a Bell measurement.
#[derive(Debug, Clone)]
pub struct BellOutcome {
    pub outcome: BellLabel,
    pub probability: f64,
    pub state: DenseState,
}

/// A mixed state over a labelled qubit register.
#[derive(Debug, Clone)]
pub struct DenseState {
    branches: Vec<PureBranch>,
    labels: Vec<QubitLabel>,
}

#[inline]
fn bit_pos(n: usize, q: usize) -> usize {
    n - 1 - q
}

impl DenseState {
    pub fn new(branches: Vec<PureBranch>, labels: Vec<QubitLabel>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > MAX_BRANCH_QUBITS {
            return Err(Error::RegisterTooLarge(n, MAX_BRANCH_QUBITS));
        }
        if branches.is_empty() {
            return Err(Error::InvalidState("no branches".into()));
        }
        for b in &branches {
            if b.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: b.n_qubits(),
                });
            }
        }
        let total: f64 = branches.iter().map(|b| b.weight).sum();
        if (total - 1.0).abs() > tol::CIRCUIT {
            return Err(Error::InvalidState(format!(
                "branch weights sum to {total}"
            )));
        }
        Ok(Self { branches, labels })
    }

    pub fn pure(branch: PureBranch, labels: Vec<QubitLabel>) -> Result<Self> {
        Self::new(
            vec![PureBranch {
                weight: 1.0,
                ..branch
            }],
            labels,
        )
    }

    /// Builds a state from branches whose weights may have drifted slightly,
    /// renormalizing the weights.
    fn from_parts(mut branches: Vec<PureBranch>, labels: Vec<QubitLabel>) -> Result<Self> {
        let total: f64 = branches.iter().map(|b| b.weight).sum();
        if total <= 0.0 {
            return Err(Error::InvalidState("zero total weight".into()));
        }
        for b in &mut branches {
            b.weight /= total;
        }
        Self::new(branches, labels)
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn branches(&self) -> &[PureBranch] {
        &self.branches
    }

    pub fn with_labels(mut self, labels: Vec<QubitLabel>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                got: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits() {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits: self.n_qubits(),
            });
        }
        Ok(())
    }

    /// Register concatenation: `self` occupies the leading qubits.
    pub fn tensor(&self, other: &DenseState) -> Result<DenseState> {
        let n = self.n_qubits() + other.n_qubits();
        if n > MAX_BRANCH_QUBITS {
            return Err(Error::RegisterTooLarge(n, MAX_BRANCH_QUBITS));
        }
        let branches = self
            .branches
            .iter()
            .flat_map(|a| other.branches.iter().map(move |b| a.tensor(b)))
            .collect();
        let labels = self.labels.iter().chain(&other.labels).copied().collect();
        DenseState::from_parts(branches, labels)
    }

    /// Convex combination of states on identical registers.
    pub fn mix(parts: &[(&DenseState, f64)]) -> Result<DenseState> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidProbabilities("empty mixture".into()))?;
        let total: f64 = parts.iter().map(|(_, w)| w).sum();
        if parts.iter().any(|(_, w)| *w < 0.0) || (total - 1.0).abs() > tol::CIRCUIT {
            return Err(Error::InvalidProbabilities(format!(
                "weights sum to {total}"
            )));
        }
        let mut branches = Vec::new();
        for (state, w) in parts {
            if state.labels.len() != first.0.labels.len() {
                return Err(Error::DimensionMismatch {
                    expected: first.0.n_qubits(),
                    got: state.n_qubits(),
                });
            }
            if *w == 0.0 {
                continue;
            }
            branches.extend(state.branches.iter().map(|b| PureBranch {
                amplitudes: b.amplitudes.clone(),
                weight: b.weight * w,
            }));
        }
        DenseState::from_parts(branches, first.0.labels.clone())
    }

    /// Applies `u` to `targets`; `targets[0]` is the most significant qubit of `u`.
    pub fn apply_unitary(&self, u: &ComplexMatrix, targets: &[usize]) -> Result<DenseState> {
        let k = targets.len();
        for &t in targets {
            self.check_qubit(t)?;
        }
        if targets.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::DuplicateQubits);
        }
        if u.nrows() != 1 << k {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                got: u.nrows(),
            });
        }
        let defect = gates::unitarity_defect(u).ok_or(Error::NonUnitary(f64::INFINITY))?;
        if defect > tol::CIRCUIT {
            return Err(Error::NonUnitary(defect));
        }
        let n = self.n_qubits();
        let positions: Vec<usize> = targets.iter().map(|&t| bit_pos(n, t)).collect();
        let target_mask: usize = positions.iter().map(|p| 1 << p).sum();
        let offsets: Vec<usize> = (0..1usize << k)
            .map(|s| {
                (0..k)
                    .filter(|j| (s >> (k - 1 - j)) & 1 == 1)
                    .map(|j| 1 << positions[j])
                    .sum()
            })
            .collect();
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let mut out = b.amplitudes.clone();
                let mut gathered = vec![C64::new(0.0, 0.0); 1 << k];
                for base in (0..1usize << n).filter(|i| i & target_mask == 0) {
                    for (s, off) in offsets.iter().enumerate() {
                        gathered[s] = b.amplitudes[base | off];
                    }
                    for (r, off) in offsets.iter().enumerate() {
                        out[base | off] = (0..1usize << k).map(|c| u[(r, c)] * gathered[c]).sum();
                    }
                }
                PureBranch {
                    amplitudes: out,
                    weight: b.weight,
                }
            })
            .collect();
        Ok(DenseState {
            branches,
            labels: self.labels.clone(),
        })
    }

    /// Projective measurement of two qubits in the Bell basis; `pair[0]`
    /// plays the first qubit of each Bell state. Zero-probability outcomes
    /// are omitted.
    pub fn bell_measurement(&self, pair: [usize; 2]) -> Result<Vec<BellOutcome>> {
        self.check_qubit(pair[0])?;
        self.check_qubit(pair[1])?;
        if pair[0] == pair[1] {
            return Err(Error::DuplicateQubits);
        }
        let n = self.n_qubits();
        let (p0, p1) = (bit_pos(n, pair[0]), bit_pos(n, pair[1]));
        let mask = (1 << p0) | (1 << p1);
        let offsets = [0, 1 << p1, 1 << p0, (1 << p0) | (1 << p1)];
        let mut outcomes = Vec::new();
        for label in BellLabel::ALL {
            let bell = bell_state(label);
            let mut branches = Vec::new();
            for b in &self.branches {
                let mut out = vec![C64::new(0.0, 0.0); b.amplitudes.len()];
                for base in (0..1usize << n).filter(|i| i & mask == 0) {
                    let overlap: C64 = offsets
                        .iter()
                        .zip(&bell.amplitudes)
                        .map(|(off, bz)| bz.conj() * b.amplitudes[base | off])
                        .sum();
                    for (off, bz) in offsets.iter().zip(&bell.amplitudes) {
                        out[base | off] = overlap * bz;
                    }
                }
                branches.extend(PureBranch::from_unnormalized(out, b.weight));
            }
            let probability: f64 = branches.iter().map(|b| b.weight).sum();
            if branches.is_empty() {
                continue;
            }
            outcomes.push(BellOutcome {
                outcome: label,
                probability,
                state: DenseState::from_parts(branches, self.labels.clone())?,
            });
        }
        Ok(outcomes)
    }

    /// Two-outcome measurement of the computational-basis parity of two qubits.
    /// Returns `(parity, probability, post-state)`, omitting impossible outcomes.
    pub fn parity_measurement(&self, pair: [usize; 2]) -> Result<Vec<(bool, f64, DenseState)>> {
        self.check_qubit(pair[0])?;
        self.check_qubit(pair[1])?;
        if pair[0] == pair[1] {
            return Err(Error::DuplicateQubits);
        }
        let n = self.n_qubits();
        let (p0, p1) = (bit_pos(n, pair[0]), bit_pos(n, pair[1]));
        let mut outcomes = Vec::new();
        for parity in [false, true] {
            let branches: Vec<PureBranch> = self
                .branches
                .iter()
                .filter_map(|b| {
                    let out = b
                        .amplitudes
                        .iter()
                        .enumerate()
                        .map(|(i, z)| {
                            let par = ((i >> p0) ^ (i >> p1)) & 1 == 1;
                            if par == parity {
                                *z
                            } else {
                                C64::new(0.0, 0.0)
                            }
                        })
                        .collect();
                    PureBranch::from_unnormalized(out, b.weight)
                })
                .collect();
            if branches.is_empty() {
                continue;
            }
            let probability = branches.iter().map(|b| b.weight).sum();
            outcomes.push((
                parity,
                probability,
                DenseState::from_parts(branches, self.labels.clone())?,
            ));
        }
        Ok(outcomes)
    }

    /// Reduced state on `keep`, in register order. Each pure branch splits
    /// into one branch per basis state of the traced-out qubits.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DenseState> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        for &q in keep {
            self.check_qubit(q)?;
        }
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let n = self.n_qubits();
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let keep: Vec<usize> = keep.into_iter().collect();
        let spread = |bits: usize, qubits: &[usize]| -> usize {
            let m = qubits.len();
            (0..m)
                .filter(|j| (bits >> (m - 1 - j)) & 1 == 1)
                .map(|j| 1 << bit_pos(n, qubits[j]))
                .sum()
        };
        let keep_offsets: Vec<usize> = (0..1usize << keep.len())
            .map(|k| spread(k, &keep))
            .collect();
        let mut branches = Vec::new();
        for b in &self.branches {
            for t in 0..1usize << traced.len() {
                let base = spread(t, &traced);
                let v: Vec<C64> = keep_offsets
                    .iter()
                    .map(|off| b.amplitudes[base | off])
                    .collect();
                branches.extend(PureBranch::from_unnormalized(v, b.weight));
            }
        }
        let labels = keep.iter().map(|&q| self.labels[q]).collect();
        DenseState::from_parts(branches, labels)
    }

    pub fn density_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.n_qubits();
        if n > MAX_MATRIX_QUBITS {
            return Err(Error::RegisterTooLarge(n, MAX_MATRIX_QUBITS));
        }
        let d = 1 << n;
        let mut rho = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
        for b in &self.branches {
            let v = nalgebra::DVector::from_column_slice(&b.amplitudes);
            rho += (&v * v.adjoint()) * C64::new(b.weight, 0.0);
        }
        Ok(rho)
    }

    /// Density operator with the qubits on the right of `cut` transposed.
    pub fn partial_transpose(&self, cut: &Cut) -> Result<ComplexMatrix> {
        let n = self.n_qubits();
        if cut.n_qubits() != n {
            return Err(Error::InvalidCut(format!(
                "cut covers {} qubits, register has {n}",
                cut.n_qubits()
            )));
        }
        let rho = self.density_matrix()?;
        let mask: usize = cut.right().iter().map(|&q| 1 << bit_pos(n, q)).sum();
        let d = 1 << n;
        Ok(DMatrix::from_fn(d, d, |i, j| {
            let i2 = (i & !mask) | (j & mask);
            let j2 = (j & !mask) | (i & mask);
            rho[(i2, j2)]
        }))
    }

    /// log2 of the trace norm of the partial transpose, clamped at zero.
    pub fn log_negativity(&self, cut: &Cut) -> Result<f64> {
        let norm = trace_norm(&self.partial_transpose(cut)?)?;
        Ok(norm.log2().max(0.0))
    }

    /// ⟨target|ρ|target⟩.
    pub fn fidelity(&self, target: &PureBranch) -> Result<f64> {
        if target.n_qubits() != self.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits(),
                got: target.n_qubits(),
            });
        }
        Ok(self
            .branches
            .iter()
            .map(|b| b.weight * target.inner(b).norm_sqr())
            .sum())
    }

    /// Probability of every Bell-string basis state, for registers laid out
    /// pair by pair with the Alice qubit first. Index `i` of the result
    /// encodes the string with pair 0 in the most significant two bits,
    /// `(a, b)` ordered as in [`BellLabel`].
    pub fn bell_basis_probabilities(&self) -> Result<Vec<f64>> {
        let n = self.n_qubits();
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidState(
                "odd register cannot be read as Bell pairs".into(),
            ));
        }
        for (q, l) in self.labels.iter().enumerate() {
            let party = if q % 2 == 0 { Party::Alice } else { Party::Bob };
            if l.party != party {
                return Err(Error::InvalidState(format!(
                    "qubit {q} belongs to {:?}; expected pair-by-pair layout",
                    l.party
                )));
            }
        }
        // CNOT(A -> B) then H(A) maps |B(a, b)> to |b>_A |a>_B up to phase.
        let mut rotated = self.clone();
        for p in 0..n / 2 {
            rotated = rotated.apply_unitary(&cnot(), &[2 * p, 2 * p + 1])?;
            rotated = rotated.apply_unitary(&hadamard(), &[2 * p])?;
        }
        let mut probs = vec![0.0; 1 << n];
        for b in &rotated.branches {
            for (i, z) in b.amplitudes.iter().enumerate() {
                let mut idx = 0;
                for p in 0..n / 2 {
                    let pair_bits = (i >> (n - 2 - 2 * p)) & 0b11;
                    let (bit_b, bit_a) = (pair_bits >> 1, pair_bits & 1);
                    idx = (idx << 2) | (bit_a << 1) | bit_b;
                }
                probs[idx] += b.weight * z.norm_sqr();
            }
        }
        Ok(probs)
    }
}
