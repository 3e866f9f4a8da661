use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::BellLabel;
use crate::dense::{self, DenseState, Party, PureBranch, QubitLabel, Role, MAX_BRANCH_QUBITS};
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::tol;

/// One Bell label per pair; pair `k` is Alice qubit `2k` and Bob qubit `2k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BellString(Vec<BellLabel>);

impl BellString {
    pub fn new(labels: Vec<BellLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidState(
                "a Bell string needs at least one pair".into(),
            ));
        }
        Ok(Self(labels))
    }

    /// `label` repeated on `n` pairs.
    pub fn uniform(label: BellLabel, n: usize) -> Result<Self> {
        Self::new(vec![label; n])
    }

    pub fn labels(&self) -> &[BellLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The common label if every pair carries the same one.
    pub fn uniform_label(&self) -> Option<BellLabel> {
        let first = self.0[0];
        self.0.iter().all(|&l| l == first).then_some(first)
    }

    pub fn to_bits(&self) -> String {
        self.0
            .iter()
            .map(|l| l.bit_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BellString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", names.join("⊗"))
    }
}

/// Result of distinguishing {B1, B2} from {B3, B4} on one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SetOutcome {
    /// The measured bit-flip bit: `false` for {B1, B2}, `true` for {B3, B4}.
    pub a: bool,
    pub probability: f64,
    /// The remaining pairs, or `None` if the measured pair was the only one.
    pub conditional: Option<BellEnsemble>,
}

/// A probability distribution over Bell strings of equal length, kept in
/// canonical (sorted, merged, pruned) form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellEnsemble {
    entries: BTreeMap<BellString, f64>,
    n_pairs: usize,
}

impl BellEnsemble {
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BellString, f64)>,
    {
        let mut merged: BTreeMap<BellString, f64> = BTreeMap::new();
        let mut n_pairs = None;
        for (s, p) in entries {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidProbabilities(format!(
                    "probability {p} for {s}"
                )));
            }
            match n_pairs {
                None => n_pairs = Some(s.len()),
                Some(n) if n != s.len() => return Err(Error::LengthMismatch(n, s.len())),
                _ => {}
            }
            *merged.entry(s).or_insert(0.0) += p;
        }
        let n_pairs =
            n_pairs.ok_or_else(|| Error::InvalidProbabilities("empty ensemble".into()))?;
        merged.retain(|_, p| *p >= tol::PRUNE);
        let total: f64 = merged.values().sum();
        if (total - 1.0).abs() > tol::CIRCUIT {
            return Err(Error::InvalidProbabilities(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self {
            entries: merged,
            n_pairs,
        })
    }

    pub fn pure(string: BellString) -> Self {
        let n_pairs = string.len();
        Self {
            entries: BTreeMap::from([(string, 1.0)]),
            n_pairs,
        }
    }

    pub fn single(label: BellLabel) -> Self {
        Self::pure(BellString(vec![label]))
    }

    /// A single-pair Bell-diagonal state `Σ_k probs[k] P[B_{k+1}]`.
    pub fn bell_diagonal(probs: [f64; 4]) -> Result<Self> {
        Self::correlated(probs, 1)
    }

    /// `Σ_k probs[k] P[B_{k+1}^⊗n]`: perfectly correlated strings.
    pub fn correlated(probs: [f64; 4], n: usize) -> Result<Self> {
        let entries = BellLabel::ALL
            .iter()
            .zip(probs)
            .map(|(&l, p)| Ok((BellString::uniform(l, n)?, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(entries)
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    /// Number of strings with non-zero probability.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BellString, f64)> {
        self.entries.iter().map(|(s, p)| (s, *p))
    }

    pub fn probability(&self, string: &BellString) -> f64 {
        self.entries.get(string).copied().unwrap_or(0.0)
    }

    /// The single string, if the ensemble is a point mass.
    pub fn as_pure(&self) -> Option<&BellString> {
        match self.entries.len() {
            1 => self.entries.keys().next(),
            _ => None,
        }
    }

    /// Largest probability difference over the union of supports.
    pub fn max_abs_diff(&self, other: &BellEnsemble) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|s| (self.probability(s) - other.probability(s)).abs())
            .fold(0.0, f64::max)
    }

    fn check_pair(&self, pair: usize) -> Result<()> {
        if pair >= self.n_pairs {
            return Err(Error::PairOutOfRange {
                index: pair,
                len: self.n_pairs,
            });
        }
        Ok(())
    }

    fn rewrite<F>(&self, f: F) -> BellEnsemble
    where
        F: Fn(&mut [BellLabel]),
    {
        let mut entries = BTreeMap::new();
        for (s, p) in &self.entries {
            let mut labels = s.0.clone();
            f(&mut labels);
            *entries.entry(BellString(labels)).or_insert(0.0) += p;
        }
        BellEnsemble {
            entries,
            n_pairs: self.n_pairs,
        }
    }

    /// Bilateral C-NOT: Alice and Bob each apply C-NOT from their `source`
    /// qubit to their `target` qubit. Source `(a_s, b_s ⊕ b_t)`, target
    /// `(a_s ⊕ a_t, b_t)`.
    pub fn bxor(&self, source: usize, target: usize) -> Result<BellEnsemble> {
        self.check_pair(source)?;
        self.check_pair(target)?;
        if source == target {
            return Err(Error::SourceEqualsTarget);
        }
        Ok(self.rewrite(|l| {
            let (s, t) = (l[source], l[target]);
            l[source] = BellLabel::new(s.a(), s.b() ^ t.b());
            l[target] = BellLabel::new(s.a() ^ t.a(), t.b());
        }))
    }

    /// Hadamard on both qubits of `pair`: `(a, b) ↦ (b, a)`.
    pub fn bilateral_hadamard(&self, pair: usize) -> Result<BellEnsemble> {
        self.check_pair(pair)?;
        Ok(self.rewrite(|l| l[pair] = BellLabel::new(l[pair].b(), l[pair].a())))
    }

    /// S on Alice's qubit and S† on Bob's: `(a, b) ↦ (a, a ⊕ b)`.
    pub fn bilateral_phase(&self, pair: usize) -> Result<BellEnsemble> {
        self.check_pair(pair)?;
        Ok(self.rewrite(|l| l[pair] = BellLabel::new(l[pair].a(), l[pair].a() ^ l[pair].b())))
    }

    /// A Pauli on one side of `pair`; σx flips `a`, σz flips `b`, σy both.
    /// Either side gives the same projector, so `side` does not affect the result.
    pub fn one_sided_pauli(&self, pair: usize, pauli: usize, side: Party) -> Result<BellEnsemble> {
        let _ = side;
        self.check_pair(pair)?;
        let flip = match pauli {
            1 => BellLabel::B3,
            2 => BellLabel::B4,
            3 => BellLabel::B2,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "pauli index {pauli} not in 1..=3"
                )))
            }
        };
        Ok(self.rewrite(|l| l[pair] = l[pair].xor(flip)))
    }

    /// Both parties measure their qubit of `pair` in the computational basis
    /// and compare: parity 0 identifies {B1, B2}, parity 1 {B3, B4}. The
    /// measured pair is removed from the conditional ensembles.
    pub fn discriminate_sets(&self, pair: usize) -> Result<Vec<SetOutcome>> {
        self.check_pair(pair)?;
        let mut outcomes = Vec::new();
        for a in [false, true] {
            let selected: Vec<(BellString, f64)> = self
                .entries
                .iter()
                .filter(|(s, _)| s.0[pair].a() == a)
                .map(|(s, p)| {
                    let mut rest = s.0.clone();
                    rest.remove(pair);
                    (BellString(rest), *p)
                })
                .collect();
            let probability: f64 = selected.iter().map(|(_, p)| p).sum();
            if probability < tol::PRUNE {
                continue;
            }
            let conditional = if self.n_pairs > 1 {
                Some(BellEnsemble::from_entries(
                    selected.into_iter().map(|(s, p)| (s, p / probability)),
                )?)
            } else {
                None
            };
            outcomes.push(SetOutcome {
                a,
                probability,
                conditional,
            });
        }
        Ok(outcomes)
    }

    /// Marginal on every pair except `pair`.
    pub fn discard_pair(&self, pair: usize) -> Result<BellEnsemble> {
        self.check_pair(pair)?;
        if self.n_pairs == 1 {
            return Err(Error::InvalidState("cannot discard the only pair".into()));
        }
        BellEnsemble::from_entries(self.entries.iter().map(|(s, p)| {
            let mut rest = s.0.clone();
            rest.remove(pair);
            (BellString(rest), *p)
        }))
    }

    /// Convex combination of ensembles over the same number of pairs.
    pub fn mix(parts: &[(&BellEnsemble, f64)]) -> Result<BellEnsemble> {
        let total: f64 = parts.iter().map(|(_, w)| w).sum();
        if parts.is_empty()
            || parts.iter().any(|(_, w)| *w < 0.0)
            || (total - 1.0).abs() > tol::CIRCUIT
        {
            return Err(Error::InvalidProbabilities(format!(
                "mixture weights sum to {total}"
            )));
        }
        let n = parts[0].0.n_pairs;
        if let Some((e, _)) = parts.iter().find(|(e, _)| e.n_pairs != n) {
            return Err(Error::LengthMismatch(n, e.n_pairs));
        }
        BellEnsemble::from_entries(
            parts
                .iter()
                .flat_map(|(e, w)| e.entries.iter().map(move |(s, p)| (s.clone(), p * w))),
        )
    }

    /// Tensor product: `self` on the leading pairs.
    pub fn product(&self, other: &BellEnsemble) -> BellEnsemble {
        let mut entries = BTreeMap::new();
        for (s, p) in &self.entries {
            for (t, q) in &other.entries {
                let mut labels = s.0.clone();
                labels.extend_from_slice(&t.0);
                *entries.entry(BellString(labels)).or_insert(0.0) += p * q;
            }
        }
        BellEnsemble {
            entries,
            n_pairs: self.n_pairs + other.n_pairs,
        }
    }

    /// Tensor product of a sequence of ensembles.
    pub fn product_of(parts: &[BellEnsemble]) -> Result<BellEnsemble> {
        parts
            .iter()
            .cloned()
            .reduce(|acc, e| acc.product(&e))
            .ok_or_else(|| Error::InvalidState("empty product".into()))
    }

    /// Dense rendering `Σ_s p_s P[|s⟩]`, every qubit tagged with `role`.
    pub fn to_dense_with_role(&self, role: Role) -> Result<DenseState> {
        let n_qubits = 2 * self.n_pairs;
        if n_qubits > MAX_BRANCH_QUBITS {
            return Err(Error::RegisterTooLarge(n_qubits, MAX_BRANCH_QUBITS));
        }
        let branches = self
            .entries
            .iter()
            .map(|(s, p)| PureBranch::new(dense::bell_string_state(&s.0).amplitudes().to_vec(), *p))
            .collect::<Result<Vec<_>>>()?;
        DenseState::new(branches, QubitLabel::pairs(self.n_pairs, role))
    }

    pub fn to_dense(&self) -> Result<DenseState> {
        self.to_dense_with_role(Role::Source)
    }

    /// Reads the Bell-basis populations of a dense state laid out pair by pair.
    pub fn from_dense(state: &DenseState) -> Result<BellEnsemble> {
        let n_pairs = state.n_qubits() / 2;
        let probs = state.bell_basis_probabilities()?;
        // Absorb rounding so that exact outputs read back exactly.
        let total: f64 = probs.iter().filter(|p| **p >= tol::PRUNE).sum();
        BellEnsemble::from_entries(
            probs
                .iter()
                .enumerate()
                .filter(|(_, p)| **p >= tol::PRUNE)
                .map(|(i, p)| {
                    let labels = (0..n_pairs)
                        .map(|k| BellLabel::from_bits((i >> (2 * (n_pairs - 1 - k))) & 0b11))
                        .collect();
                    (BellString(labels), *p / total)
                }),
        )
    }

    /// One line per string: `probability a1b1 a2b2 ...`, sorted.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|(s, p)| format!("{} {}\n", sig17(*p), s.to_bits()))
            .collect()
    }

    pub fn from_text(text: &str) -> Result<BellEnsemble> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let p: f64 = fields
                .next()
                .and_then(|f| f.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad probability", lineno + 1)))?;
            let labels = fields
                .map(|f| {
                    if f.len() != 2 {
                        return Err(Error::Parse(format!(
                            "line {}: bad label {f:?}",
                            lineno + 1
                        )));
                    }
                    f.parse()
                })
                .collect::<Result<Vec<BellLabel>>>()?;
            entries.push((BellString::new(labels)?, p));
        }
        BellEnsemble::from_entries(entries)
    }
}

impl From<BellLabel> for BellEnsemble {
    fn from(label: BellLabel) -> Self {
        BellEnsemble::single(label)
    }
}

impl fmt::Display for BellEnsemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
