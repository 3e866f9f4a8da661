use serde::Serialize;

use super::cloning::{clone_four_1_to_n, clone_four_dense, FourInput};
use super::ledger::{ResourceLedger, Step};
use super::ops::{run_dense, run_symbolic, steps_of, LoccOp};
use crate::bell::{BellEnsemble, BellLabel};
use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::tol;

fn check_quasi_pure_params(p: [f64; 4], n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "n = {n} must be odd and at least 3"
        )));
    }
    let total: f64 = p.iter().sum();
    if p.iter().any(|x| x.is_nan() || *x < 0.0) || (total - 1.0).abs() > tol::CIRCUIT {
        return Err(Error::InvalidProbabilities(format!("{p:?}")));
    }
    if let Some(x) = p.iter().find(|x| **x > 0.5 + tol::CIRCUIT) {
        return Err(Error::InvalidProbabilities(format!(
            "component {x} exceeds 1/2; the single-pair input would be entangled"
        )));
    }
    Ok(())
}

/// Prepares `ρ(p) = Σ_i p_i P[B_i^⊗n]` by cloning the separable pair
/// `Σ_i p_i P[B_i]` with the four-state cloner. Costs `n - 1` ebits.
pub fn prepare_quasi_pure(p: [f64; 4], n: usize) -> Result<(BellEnsemble, ResourceLedger)> {
    check_quasi_pure_params(p, n)?;
    let (out, clone_ledger) = clone_four_1_to_n(FourInput::Distribution(p), n)?;
    let mut ledger = ResourceLedger::new();
    ledger.push(Step::alice("prepare-separable", vec![0]));
    ledger.push(Step::classical("shared-randomness"));
    ledger.push(Step::bob("prepare-separable", vec![1]));
    ledger.absorb(clone_ledger, 0);
    Ok((out, ledger))
}

pub fn prepare_quasi_pure_dense(p: [f64; 4], n: usize) -> Result<DenseState> {
    check_quasi_pure_params(p, n)?;
    clone_four_dense(FourInput::Distribution(p), n)
}

/// One measurement branch of the distillation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistillBranch {
    /// Parity observed on the measured pair.
    pub a: bool,
    pub probability: f64,
    /// What remains; pure when the branch succeeded.
    pub output: Option<BellEnsemble>,
    pub ebits: f64,
}

/// Pairs feeding the final C-NOT target. The target's bit-flip bit picks up
/// one copy of the common bit per source, so the source count must be even
/// to leave it equal to that bit: all other pairs for odd `n`, all but
/// pair 0 for even `n`.
fn cascade_sources(n: usize) -> std::ops::Range<usize> {
    if n % 2 == 1 {
        0..n - 1
    } else {
        1..n - 1
    }
}

pub fn distillation_circuit(n: usize) -> Vec<LoccOp> {
    cascade_sources(n)
        .map(|k| LoccOp::Bxor {
            source: k,
            target: n - 1,
        })
        .collect()
}

fn check_uniform_strings(e: &BellEnsemble) -> Result<()> {
    if e.n_pairs() < 2 {
        return Err(Error::InvalidParameter(
            "distillation needs at least two pairs".into(),
        ));
    }
    if let Some((s, _)) = e.iter().find(|(s, _)| s.uniform_label().is_none()) {
        return Err(Error::InvalidState(format!(
            "{s} is not of the form B_i^⊗n"
        )));
    }
    Ok(())
}

/// C-NOT cascade into the last pair, then both parties measure its parity.
///
/// For odd `n` every branch leaves `B1^⊗(n-1)` (parity 0) or `B3^⊗(n-1)`
/// (parity 1). For even `n` pair 0 is left out of the cascade and is
/// dropped afterwards unless its label is already fixed.
pub fn distill_quasi_pure(e: &BellEnsemble) -> Result<(Vec<DistillBranch>, ResourceLedger)> {
    check_uniform_strings(e)?;
    let n = e.n_pairs();
    let ops = distillation_circuit(n);
    let after = run_symbolic(&ops, e)?;
    let mut ledger = ResourceLedger::new();
    ledger.extend(steps_of(&ops));
    ledger.push(Step::alice("measure-z", vec![2 * (n - 1)]));
    ledger.push(Step::bob("measure-z", vec![2 * (n - 1) + 1]));
    ledger.message(2, "exchange parity bits");

    let mut branches = Vec::new();
    let mut dropped_first = false;
    for outcome in after.discriminate_sets(n - 1)? {
        let mut output = outcome.conditional;
        if n.is_multiple_of(2) {
            if let Some(rest) = output.as_ref().filter(|r| r.as_pure().is_none()) {
                dropped_first = true;
                output = if rest.n_pairs() > 1 {
                    Some(rest.discard_pair(0)?)
                } else {
                    None
                };
            }
        }
        let ebits = match output.as_ref().and_then(|o| o.as_pure()) {
            Some(s) => s.len() as f64,
            None => 0.0,
        };
        branches.push(DistillBranch {
            a: outcome.a,
            probability: outcome.probability,
            output,
            ebits,
        });
    }
    if dropped_first {
        ledger.push(Step::alice("discard", vec![0]));
        ledger.push(Step::bob("discard", vec![1]));
    }
    ledger.ebits_distilled = branches
        .iter()
        .map(|b| b.ebits)
        .fold(f64::INFINITY, f64::min);
    Ok((branches, ledger))
}

/// Dense counterpart: the same cascade, a computational-basis parity
/// measurement on the last pair, and the remaining pairs traced out.
pub fn distill_quasi_pure_dense(e: &BellEnsemble) -> Result<Vec<(bool, f64, DenseState)>> {
    check_uniform_strings(e)?;
    let n = e.n_pairs();
    let after = run_dense(&distillation_circuit(n), &e.to_dense()?)?;
    let keep: Vec<usize> = (0..2 * (n - 1)).collect();
    after
        .parity_measurement([2 * (n - 1), 2 * (n - 1) + 1])?
        .into_iter()
        .map(|(a, p, s)| Ok((a, p, s.partial_trace(&keep)?)))
        .collect()
}

/// The conditional string expected in each branch for odd `n`.
pub fn expected_branch_label(a: bool) -> BellLabel {
    if a {
        BellLabel::B3
    } else {
        BellLabel::B1
    }
}
