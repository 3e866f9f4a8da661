use super::ledger::{ResourceLedger, Step};
use super::ops::{run_dense, run_symbolic, steps_of, LoccOp};
use crate::bell::{BellEnsemble, BellLabel};
use crate::dense::{DenseState, Party};
use crate::error::{Error, Result};
use crate::tol;

/// `¼ Σ_i P[B_i^⊗m]`, the target of [`prepare_rho_m`].
pub fn rho_m(m: usize) -> Result<BellEnsemble> {
    BellEnsemble::correlated([0.25; 4], m)
}

/// The two-pair member of the family, separable across Alice:Bob.
pub fn smolin() -> BellEnsemble {
    rho_m(2).expect("two pairs")
}

/// Ebits needed to share one pair: 1 for a Bell state, 0 for a Bell-diagonal
/// mixture whose largest weight is at most ½ (such mixtures are separable).
pub fn ancilla_cost(pair_state: &BellEnsemble) -> Result<f64> {
    if pair_state.n_pairs() != 1 {
        return Err(Error::InvalidParameter(
            "ancilla cost is defined per pair".into(),
        ));
    }
    if pair_state.as_pure().is_some() {
        return Ok(1.0);
    }
    let max = pair_state.iter().map(|(_, p)| p).fold(0.0, f64::max);
    if max <= 0.5 + tol::CIRCUIT {
        Ok(0.0)
    } else {
        Err(Error::InvalidParameter(format!(
            "mixture with largest weight {max} is entangled; no fixed ebit cost"
        )))
    }
}

/// A product of single-pair states followed by local operations.
#[derive(Debug, Clone)]
pub struct PreparationCircuit {
    pub factors: Vec<BellEnsemble>,
    pub ops: Vec<LoccOp>,
}

impl PreparationCircuit {
    pub fn initial(&self) -> Result<BellEnsemble> {
        BellEnsemble::product_of(&self.factors)
    }

    pub fn ledger(&self) -> Result<ResourceLedger> {
        let mut ledger = ResourceLedger::new();
        for (k, f) in self.factors.iter().enumerate() {
            let cost = ancilla_cost(f)?;
            if cost == 0.0 {
                ledger.push(Step::alice("prepare-separable", vec![2 * k]));
                ledger.push(Step::classical("shared-randomness"));
                ledger.push(Step::bob("prepare-separable", vec![2 * k + 1]));
            }
            ledger.consume(cost);
        }
        ledger.extend(steps_of(&self.ops));
        Ok(ledger)
    }

    pub fn run(&self) -> Result<(BellEnsemble, ResourceLedger)> {
        Ok((run_symbolic(&self.ops, &self.initial()?)?, self.ledger()?))
    }

    pub fn run_dense(&self) -> Result<DenseState> {
        run_dense(&self.ops, &self.initial()?.to_dense()?)
    }
}

fn two_outcome(x: BellLabel, y: BellLabel) -> Result<BellEnsemble> {
    BellEnsemble::mix(&[(&x.into(), 0.5), (&y.into(), 0.5)])
}

/// Preparation of `¼ Σ_i P[B_i^⊗m]` from local operations on a product of
/// Bell pairs and separable two-outcome mixtures.
///
/// Odd `m`: `P[B1]^⊗(m-1) ⊗ ½(P[B1] + P[B2])`, Bob flips all his qubits with
/// σx with probability ½, then C-NOT from every pair into the last one.
/// Even `m`: `½(P[B1] + P[B3]) ⊗ P[B1]^⊗(m-2) ⊗ ½(P[B1] + P[B2])`, C-NOT from
/// the first pair into pairs `2..m-1`, then from every pair into the last.
/// In both cases the last pair's bit-flip bit collects an odd number of
/// copies of the common bit.
pub fn rho_m_circuit(m: usize) -> Result<PreparationCircuit> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must be at least 2"
        )));
    }
    let last = m - 1;
    let mut factors = Vec::with_capacity(m);
    let mut ops = Vec::new();
    if m % 2 == 1 {
        factors.extend(std::iter::repeat_n(
            BellEnsemble::single(BellLabel::B1),
            m - 1,
        ));
        factors.push(two_outcome(BellLabel::B1, BellLabel::B2)?);
        ops.push(LoccOp::RandomPauli {
            pairs: (0..m).collect(),
            pauli: 1,
            side: Party::Bob,
            probability: 0.5,
        });
    } else {
        factors.push(two_outcome(BellLabel::B1, BellLabel::B3)?);
        factors.extend(std::iter::repeat_n(
            BellEnsemble::single(BellLabel::B1),
            m - 2,
        ));
        factors.push(two_outcome(BellLabel::B1, BellLabel::B2)?);
        ops.extend((1..last).map(|k| LoccOp::Bxor {
            source: 0,
            target: k,
        }));
    }
    ops.extend((0..last).map(|k| LoccOp::Bxor {
        source: k,
        target: last,
    }));
    Ok(PreparationCircuit { factors, ops })
}

/// Runs the preparation symbolically, returning the state and its ledger.
pub fn prepare_rho_m(m: usize) -> Result<(BellEnsemble, ResourceLedger)> {
    rho_m_circuit(m)?.run()
}

/// Runs the preparation circuit gate by gate on the dense engine.
pub fn prepare_rho_m_dense(m: usize) -> Result<DenseState> {
    rho_m_circuit(m)?.run_dense()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::linalg::trace_distance;

    #[test]
    fn three_pairs() {
        let (e, ledger) = prepare_rho_m(3).unwrap();
        assert_eq!(e, rho_m(3).unwrap());
        assert_eq!(ledger.ebits_consumed, 2.0);
        ledger.audit().unwrap();
    }

    #[test]
    fn four_pairs() {
        let c = rho_m_circuit(4).unwrap();
        assert_eq!(
            c.ops,
            vec![
                LoccOp::Bxor {
                    source: 0,
                    target: 1
                },
                LoccOp::Bxor {
                    source: 0,
                    target: 2
                },
                LoccOp::Bxor {
                    source: 0,
                    target: 3
                },
                LoccOp::Bxor {
                    source: 1,
                    target: 3
                },
                LoccOp::Bxor {
                    source: 2,
                    target: 3
                },
            ]
        );
        let (e, ledger) = c.run().unwrap();
        assert_eq!(e, rho_m(4).unwrap());
        assert_eq!(ledger.ebits_consumed, 2.0);
    }

    #[test]
    fn two_pairs_is_smolin() {
        let (e, ledger) = prepare_rho_m(2).unwrap();
        assert_eq!(e, smolin());
        assert_eq!(ledger.ebits_consumed, 0.0);
    }

    #[test]
    fn dense_preparation_matches() {
        for m in 2..=5 {
            let dense = prepare_rho_m_dense(m).unwrap().density_matrix().unwrap();
            let target = rho_m(m)
                .unwrap()
                .to_dense()
                .unwrap()
                .density_matrix()
                .unwrap();
            assert!(trace_distance(&dense, &target).unwrap() < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn costs() {
        assert_eq!(ancilla_cost(&BellLabel::B4.into()).unwrap(), 1.0);
        assert_eq!(
            ancilla_cost(&BellEnsemble::bell_diagonal([0.5, 0.0, 0.5, 0.0]).unwrap()).unwrap(),
            0.0
        );
        assert!(ancilla_cost(&BellEnsemble::bell_diagonal([0.7, 0.3, 0.0, 0.0]).unwrap()).is_err());
        assert!(ancilla_cost(&smolin()).is_err());
        assert!(rho_m_circuit(1).is_err());
    }
}
