//! Closed-form entanglement quantities and dense bound witnesses.
//!
//! Distillable-entanglement values for the correlated Bell mixtures are
//! formula constants; [`log_negativity_report`] provides the matching dense
//! upper-bound witness.

use serde::{Deserialize, Serialize};

use crate::bell::BellEnsemble;
use crate::dense::Cut;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    DenseWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub quantity: String,
    pub state: String,
    pub cut: String,
    /// In ebits.
    pub value: f64,
    pub provenance: Provenance,
}

impl MeasureReport {
    pub fn formula(quantity: &str, state: impl Into<String>, value: f64) -> Self {
        Self {
            quantity: quantity.to_string(),
            state: state.into(),
            cut: "Alice:Bob".to_string(),
            value,
            provenance: Provenance::Formula,
        }
    }
}

fn check_open_unit(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "p = {p} must lie in (0, 1)"
        )))
    }
}

fn check_copies(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("n must be at least 1".into()))
    }
}

/// `H₂(x) = -x log₂ x - (1-x) log₂(1-x)`, with `H₂(0) = H₂(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!(
            "binary entropy argument {x} outside [0, 1]"
        )));
    }
    let term = |t: f64| if t == 0.0 { 0.0 } else { -t * t.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Entanglement cost of `p P[B1] + (1-p) P[B2]`: `H₂(½ + √(p(1-p)))`.
pub fn ec_sigma1(p: f64) -> Result<f64> {
    check_open_unit(p)?;
    binary_entropy((0.5 + (p * (1.0 - p)).sqrt()).min(1.0))
}

/// Distillable entanglement of `p P[B1] + (1-p) P[B2]`: `1 - H₂(p)`.
pub fn ed_sigma1(p: f64) -> Result<f64> {
    check_open_unit(p)?;
    Ok(1.0 - binary_entropy(p)?)
}

/// `E_c(σ_N) = E_c(σ₁) + (n - 1)`.
pub fn ec_sigma_n(p: f64, n: usize) -> Result<f64> {
    check_copies(n)?;
    Ok(ec_sigma1(p)? + (n - 1) as f64)
}

/// `E_D(σ_N) = n - H₂(p)`.
pub fn ed_sigma_n(p: f64, n: usize) -> Result<f64> {
    check_open_unit(p)?;
    check_copies(n)?;
    Ok(n as f64 - binary_entropy(p)?)
}

/// `E_c(σ_N) - E_D(σ_N)`, strictly positive away from `p = ½`.
pub fn irreversibility_gap(p: f64, n: usize) -> Result<f64> {
    if p == 0.5 {
        return Err(Error::InvalidParameter(
            "p = 1/2 gives a separable state with zero gap".into(),
        ));
    }
    Ok(ec_sigma_n(p, n)? - ed_sigma_n(p, n)?)
}

/// Distillable entanglement of `½(P[B1^⊗n] + P[B3^⊗n])`.
pub fn ed_rho2n(n: usize) -> Result<f64> {
    check_copies(n)?;
    Ok((n - 1) as f64)
}

/// Distillable entanglement of `¼ Σ_i P[B_i^⊗m]`: `m - 1` for odd `m`,
/// `m - 2` for even `m`.
pub fn ed_rho_m(m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "m = {m} must be at least 2"
        )));
    }
    Ok(if m % 2 == 1 { m - 1 } else { m - 2 } as f64)
}

/// Log-negativity of an ensemble across the Alice:Bob cut.
pub fn log_negativity_report(state: &BellEnsemble, name: &str) -> Result<MeasureReport> {
    let dense = state.to_dense()?;
    let cut = Cut::alice_bob(dense.labels())?;
    Ok(MeasureReport {
        quantity: "log-negativity".to_string(),
        state: name.to_string(),
        cut: "Alice:Bob".to_string(),
        value: dense.log_negativity(&cut)?,
        provenance: Provenance::DenseWitness,
    })
}

/// One row of the σ-family curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaRow {
    pub p: f64,
    pub ec_sigma1: f64,
    pub ed_sigma1: f64,
    pub ec_sigma_n: f64,
    pub ed_sigma_n: f64,
    pub gap: f64,
}

/// The σ-family quantities on `p = k / (grid + 1)`, `k = 1..=grid`.
pub fn sigma_curve(n: usize, grid: usize) -> Result<Vec<SigmaRow>> {
    if grid == 0 {
        return Err(Error::InvalidParameter(
            "grid must have at least one point".into(),
        ));
    }
    check_copies(n)?;
    (1..=grid)
        .map(|k| {
            let p = k as f64 / (grid + 1) as f64;
            let ec_n = ec_sigma_n(p, n)?;
            let ed_n = ed_sigma_n(p, n)?;
            Ok(SigmaRow {
                p,
                ec_sigma1: ec_sigma1(p)?,
                ed_sigma1: ed_sigma1(p)?,
                ec_sigma_n: ec_n,
                ed_sigma_n: ed_n,
                gap: ec_n - ed_n,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // 50-digit reference values (mpmath).
    const H2_QUARTER: f64 = 0.811_278_124_459_132_863_909_695_792_039_137_6;
    const EC_QUARTER: f64 = 0.354_578_902_665_269_884_199_912_180_174_616_7;
    const ED_QUARTER: f64 = 0.188_721_875_540_867_136_090_304_207_960_862_4;
    const GAP_0999: f64 = 0.008_523_330_222_529_701_175_065_858_386_175_2;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.25).unwrap() - H2_QUARTER).abs() < 1e-15);
        assert!((binary_entropy(0.25).unwrap() - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn sigma1_formulas() {
        assert_eq!(ec_sigma1(0.5).unwrap(), 0.0);
        assert_eq!(ed_sigma1(0.5).unwrap(), 0.0);
        assert!((ec_sigma1(0.25).unwrap() - EC_QUARTER).abs() < 1e-14);
        assert!((ed_sigma1(0.25).unwrap() - ED_QUARTER).abs() < 1e-14);
        assert!(ec_sigma1(0.25).unwrap() > ed_sigma1(0.25).unwrap());
        let near_one = 1.0 - 1e-12;
        assert!((ec_sigma1(near_one).unwrap() - 1.0).abs() < 1e-4);
        assert!((ed_sigma1(near_one).unwrap() - 1.0).abs() < 1e-9);
        assert!(ec_sigma1(0.0).is_err() && ed_sigma1(1.0).is_err());
    }

    #[test]
    fn sigma_n_formulas() {
        for p in [0.1, 0.25, 0.7] {
            assert_eq!(ec_sigma_n(p, 1).unwrap(), ec_sigma1(p).unwrap());
            assert_eq!(ed_sigma_n(p, 1).unwrap(), ed_sigma1(p).unwrap());
            for n in 1..8 {
                let ed = ed_sigma_n(p, n).unwrap();
                assert!((ed - (n as f64 - binary_entropy(p).unwrap())).abs() < 1e-15);
            }
        }
        assert!(ec_sigma_n(0.3, 0).is_err());
    }

    #[test]
    fn gap_values() {
        let g = irreversibility_gap(0.999, 1).unwrap();
        assert!(g > 0.0 && (g - GAP_0999).abs() < 1e-12);
        assert!(
            (irreversibility_gap(0.25, 5).unwrap() - irreversibility_gap(0.25, 1).unwrap()).abs()
                < 1e-12
        );
        assert!(irreversibility_gap(0.5, 3).is_err());
    }

    #[test]
    fn ed_constants() {
        assert_eq!(ed_rho2n(1).unwrap(), 0.0);
        assert_eq!(ed_rho2n(2).unwrap(), 1.0);
        let table: Vec<f64> = (2..=8).map(|m| ed_rho_m(m).unwrap()).collect();
        assert_eq!(table, vec![0.0, 2.0, 2.0, 4.0, 4.0, 6.0, 6.0]);
        assert!(ed_rho_m(1).is_err());
    }

    #[test]
    fn curve_shape() {
        let rows = sigma_curve(3, 99).unwrap();
        assert_eq!(rows.len(), 99);
        assert!(rows.windows(2).all(|w| w[0].p < w[1].p));
        for r in &rows {
            if r.p == 0.5 {
                assert!(r.gap.abs() < 1e-12);
            } else {
                assert!(r.gap > 0.0, "p = {}", r.p);
            }
        }
        assert!(sigma_curve(3, 0).is_err());
    }
}
