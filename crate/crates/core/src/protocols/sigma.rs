use super::ops::{inverse_of, run_symbolic, LoccOp};
use crate::bell::{BellEnsemble, BellLabel, BellString};
use crate::error::{Error, Result};

/// The σ-family construction and its intermediate states.
#[derive(Debug, Clone)]
pub struct SigmaRun {
    /// `σ₁ ⊗ P[B1^⊗(n-1)]`.
    pub input: BellEnsemble,
    /// `p P[B1^⊗n] + (1-p) P[B3^⊗n]`, before the closing Hadamards.
    pub sigma_prime: BellEnsemble,
    /// `p P[B1^⊗n] + (1-p) P[B2^⊗n]`.
    pub output: BellEnsemble,
    pub steps: Vec<LoccOp>,
}

impl SigmaRun {
    /// The steps in reverse order, mapping `output` back to `input`.
    pub fn inverse_steps(&self) -> Vec<LoccOp> {
        inverse_of(&self.steps).expect("sigma steps are unitary")
    }
}

/// `σ₁ = p P[B1] + (1-p) P[B2]`.
pub fn sigma1(p: f64) -> Result<BellEnsemble> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must lie in (0, 1)"
        )));
    }
    BellEnsemble::bell_diagonal([p, 1.0 - p, 0.0, 0.0])
}

/// Builds `σ_n` from `σ₁` and `n - 1` shared |B1⟩ pairs with local unitaries:
/// bilateral Hadamard on pair 0, C-NOT from pair 0 into each other pair,
/// then bilateral Hadamard on every pair.
pub fn build_sigma_n(p: f64, n: usize) -> Result<SigmaRun> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut input = sigma1(p)?;
    if n > 1 {
        input = input.product(&BellEnsemble::pure(BellString::uniform(
            BellLabel::B1,
            n - 1,
        )?));
    }
    let mut head = vec![LoccOp::BilateralHadamard { pair: 0 }];
    head.extend((1..n).map(|k| LoccOp::Bxor {
        source: 0,
        target: k,
    }));
    let tail: Vec<LoccOp> = (0..n)
        .map(|pair| LoccOp::BilateralHadamard { pair })
        .collect();
    let sigma_prime = run_symbolic(&head, &input)?;
    let output = run_symbolic(&tail, &sigma_prime)?;
    let steps = head.into_iter().chain(tail).collect();
    Ok(SigmaRun {
        input,
        sigma_prime,
        output,
        steps,
    })
}
