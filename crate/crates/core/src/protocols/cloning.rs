use serde::{Deserialize, Serialize};

use super::ledger::ResourceLedger;
use super::ops::{run_dense, run_symbolic, steps_of, LoccOp};
use super::preparation::rho_m_circuit;
use super::reduction::pair_reduction_table;
use super::teleport::{teleport_pairs, teleport_steps};
use crate::bell::{BellEnsemble, BellLabel, BellString};
use crate::dense::{DenseState, Role};
use crate::error::{Error, Result};
use crate::tol;

/// Local operations cloning pair 0 onto pairs `1..n`, which must hold |B1⟩:
/// reduce the declared pair onto {B1, B3}, fan out with bilateral C-NOTs,
/// then undo the reduction on every pair.
pub fn clone_pair_circuit(pair: [BellLabel; 2], n: usize) -> Result<Vec<LoccOp>> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let reduction = pair_reduction_table(pair)?;
    let mut ops = reduction.forward_ops(0);
    ops.extend((1..n).map(|k| LoccOp::Bxor {
        source: 0,
        target: k,
    }));
    for k in 0..n {
        ops.extend(reduction.inverse_ops(k));
    }
    Ok(ops)
}

fn check_pair_input(input: &BellEnsemble, pair: [BellLabel; 2]) -> Result<()> {
    if input.n_pairs() != 1 {
        return Err(Error::InvalidParameter(
            "cloning input must be a single pair".into(),
        ));
    }
    if let Some((s, _)) = input.iter().find(|(s, _)| !pair.contains(&s.labels()[0])) {
        return Err(Error::InputNotInPair(s.to_string()));
    }
    Ok(())
}

fn with_ancillas(input: &BellEnsemble, n: usize) -> Result<BellEnsemble> {
    if n == 1 {
        return Ok(input.clone());
    }
    Ok(input.product(&BellEnsemble::pure(BellString::uniform(
        BellLabel::B1,
        n - 1,
    )?)))
}

/// 1 → n cloning of a state supported on the declared pair of Bell labels,
/// consuming `n - 1` shared |B1⟩ pairs.
pub fn clone_pair_mixture(
    input: &BellEnsemble,
    pair: [BellLabel; 2],
    n: usize,
) -> Result<(BellEnsemble, ResourceLedger)> {
    check_pair_input(input, pair)?;
    let ops = clone_pair_circuit(pair, n)?;
    let out = run_symbolic(&ops, &with_ancillas(input, n)?)?;
    let mut ledger = ResourceLedger::new();
    ledger.consume((n - 1) as f64);
    ledger.extend(steps_of(&ops));
    Ok((out, ledger))
}

pub fn clone_pair_1_to_n(
    input: BellLabel,
    pair: [BellLabel; 2],
    n: usize,
) -> Result<(BellEnsemble, ResourceLedger)> {
    clone_pair_mixture(&input.into(), pair, n)
}

/// The same circuit on the dense engine.
pub fn clone_pair_dense(
    input: &BellEnsemble,
    pair: [BellLabel; 2],
    n: usize,
) -> Result<DenseState> {
    check_pair_input(input, pair)?;
    let ops = clone_pair_circuit(pair, n)?;
    run_dense(&ops, &with_ancillas(input, n)?.to_dense()?)
}

/// Input to the four-state cloner: a label or a Bell-diagonal distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourInput {
    Label(BellLabel),
    Distribution([f64; 4]),
}

impl FourInput {
    pub fn probabilities(&self) -> Result<[f64; 4]> {
        match *self {
            FourInput::Label(l) => {
                let mut q = [0.0; 4];
                q[l.bits()] = 1.0;
                Ok(q)
            }
            FourInput::Distribution(q) => {
                let total: f64 = q.iter().sum();
                if q.iter().any(|p| p.is_nan() || *p < 0.0) || (total - 1.0).abs() > tol::CIRCUIT {
                    return Err(Error::InvalidProbabilities(format!("{q:?}")));
                }
                Ok(q)
            }
        }
    }

    pub fn ensemble(&self) -> Result<BellEnsemble> {
        BellEnsemble::bell_diagonal(self.probabilities()?)
    }
}

impl From<BellLabel> for FourInput {
    fn from(l: BellLabel) -> Self {
        FourInput::Label(l)
    }
}

fn check_copies(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n = {n}; cloning needs n >= 2"
        )));
    }
    Ok(())
}

/// 1 → n cloning of an arbitrary Bell state by teleporting it through
/// `¼ Σ_i P[B_i^⊗(n+1)]` into `n` receiving pairs.
///
/// The symbolic result is the correlated mixture `Σ_k q_k P[B_k^⊗n]`; the
/// dense route ([`clone_four_dense`]) re-derives it gate by gate. Consumes
/// the ebits of preparing the ancilla: `n` for even `n`, `n - 1` for odd.
pub fn clone_four_1_to_n(input: FourInput, n: usize) -> Result<(BellEnsemble, ResourceLedger)> {
    check_copies(n)?;
    let q = input.probabilities()?;
    let out = BellEnsemble::correlated(q, n)?;
    let mut ledger = ResourceLedger::new();
    // The ancilla occupies pairs 1..=n+1 of the joint register.
    ledger.absorb(rho_m_circuit(n + 1)?.ledger()?, 2);
    ledger.absorb(teleport_steps(n), 0);
    Ok((out, ledger))
}

/// Dense execution: prepare the ancilla gate by gate, then Bell-measure and
/// correct. Limited to `n <= 5` by the register size.
pub fn clone_four_dense(input: FourInput, n: usize) -> Result<DenseState> {
    check_copies(n)?;
    let source = input.ensemble()?.to_dense_with_role(Role::Input)?;
    let ancilla = rho_m_circuit(n + 1)?.run_dense()?;
    teleport_pairs(&source, &ancilla)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::linalg::trace_distance;
    use BellLabel as L;

    #[test]
    fn clone_b3_twice() {
        let (e, ledger) = clone_pair_1_to_n(L::B3, [L::B1, L::B3], 2).unwrap();
        assert_eq!(
            e.as_pure().unwrap(),
            &BellString::uniform(L::B3, 2).unwrap()
        );
        assert_eq!(ledger.ebits_consumed, 1.0);
        assert_eq!(ledger.classical_bits, 0);
        ledger.audit().unwrap();
    }

    #[test]
    fn clone_b1_five_times() {
        let (e, ledger) = clone_pair_1_to_n(L::B1, [L::B1, L::B3], 5).unwrap();
        assert_eq!(
            e.as_pure().unwrap(),
            &BellString::uniform(L::B1, 5).unwrap()
        );
        assert_eq!(ledger.ebits_consumed, 4.0);
    }

    #[test]
    fn linearity_on_mixture() {
        let rho_sep = BellEnsemble::bell_diagonal([0.5, 0.5, 0.0, 0.0]).unwrap();
        let (e, _) = clone_pair_mixture(&rho_sep, [L::B1, L::B2], 2).unwrap();
        assert_eq!(
            e,
            BellEnsemble::correlated([0.5, 0.5, 0.0, 0.0], 2).unwrap()
        );
    }

    #[test]
    fn input_outside_pair() {
        assert!(matches!(
            clone_pair_1_to_n(L::B2, [L::B1, L::B3], 2),
            Err(Error::InputNotInPair(_))
        ));
    }

    #[test]
    fn single_copy_is_free_identity() {
        let (e, ledger) = clone_pair_1_to_n(L::B4, [L::B2, L::B4], 1).unwrap();
        assert_eq!(e, L::B4.into());
        assert_eq!(ledger.ebits_consumed, 0.0);
        assert!(ledger.steps.is_empty());
    }

    #[test]
    fn dense_pair_cloning_is_exact() {
        let (e, _) = clone_pair_1_to_n(L::B4, [L::B1, L::B4], 3).unwrap();
        let d = clone_pair_dense(&L::B4.into(), [L::B1, L::B4], 3).unwrap();
        let target = crate::dense::bell_string_state(&[L::B4; 3]);
        assert!((d.fidelity(&target).unwrap() - 1.0).abs() < 1e-12);
        let td = trace_distance(
            &e.to_dense().unwrap().density_matrix().unwrap(),
            &d.density_matrix().unwrap(),
        )
        .unwrap();
        assert!(td < 1e-10);
    }

    #[test]
    fn four_state_examples() {
        let (e, ledger) = clone_four_1_to_n(L::B4.into(), 2).unwrap();
        assert_eq!(
            e.as_pure().unwrap(),
            &BellString::uniform(L::B4, 2).unwrap()
        );
        assert_eq!(ledger.ebits_consumed, 2.0);
        ledger.audit().unwrap();
        let (e, ledger) = clone_four_1_to_n(L::B2.into(), 3).unwrap();
        assert_eq!(
            e.as_pure().unwrap(),
            &BellString::uniform(L::B2, 3).unwrap()
        );
        assert_eq!(ledger.ebits_consumed, 2.0);
        assert_eq!(ledger.classical_bits, 4);
        let (e, _) = clone_four_1_to_n(FourInput::Distribution([0.25; 4]), 2).unwrap();
        assert_eq!(e, super::super::preparation::smolin());
        assert!(clone_four_1_to_n(FourInput::Distribution([0.5; 4]), 2).is_err());
        assert!(clone_four_1_to_n(L::B1.into(), 1).is_err());
    }

    #[test]
    fn four_state_dense_joint_output() {
        for n in [2, 3] {
            let input = FourInput::Distribution([0.4, 0.1, 0.3, 0.2]);
            let (e, _) = clone_four_1_to_n(input, n).unwrap();
            let d = clone_four_dense(input, n).unwrap();
            let td = trace_distance(
                &e.to_dense().unwrap().density_matrix().unwrap(),
                &d.density_matrix().unwrap(),
            )
            .unwrap();
            assert!(td < 1e-10, "n = {n}: {td}");
        }
    }
}
