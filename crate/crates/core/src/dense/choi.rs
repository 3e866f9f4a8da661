use nalgebra::DMatrix;

use super::{ComplexMatrix, DenseState, PureBranch, QubitLabel, C64};
use crate::error::{Error, Result};
use crate::tol;

fn basis(dim: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[k] = C64::new(1.0, 0.0);
    v
}

fn superposition(dim: usize, k: usize, l: usize, phase: C64) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    v[k] = C64::new(h, 0.0);
    v[l] = phase * h;
    v
}

/// A fixed, generic pure state used to probe linearity.
fn probe_state(dim: usize) -> Vec<C64> {
    let raw: Vec<C64> = (0..dim)
        .map(|k| {
            let k = k as f64;
            C64::new((1.3 * k + 0.7).cos(), (2.1 * k + 0.2).sin())
        })
        .collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|z| z / norm).collect()
}

/// Normalized Choi matrix `(1/d) Σ_kl |k⟩⟨l| ⊗ Φ(|k⟩⟨l|)` of a map on operators.
pub fn choi_from_operator_map<F>(dim_in: usize, map: F) -> Result<ComplexMatrix>
where
    F: Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
{
    let mut blocks: Vec<Vec<ComplexMatrix>> = Vec::with_capacity(dim_in);
    for k in 0..dim_in {
        let mut row = Vec::with_capacity(dim_in);
        for l in 0..dim_in {
            let mut e = DMatrix::from_element(dim_in, dim_in, C64::new(0.0, 0.0));
            e[(k, l)] = C64::new(1.0, 0.0);
            row.push(map(&e)?);
        }
        blocks.push(row);
    }
    assemble(dim_in, &blocks)
}

fn assemble(dim_in: usize, blocks: &[Vec<ComplexMatrix>]) -> Result<ComplexMatrix> {
    let dim_out = blocks[0][0].nrows();
    let d = dim_in * dim_out;
    let mut choi = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for (k, row) in blocks.iter().enumerate() {
        for (l, block) in row.iter().enumerate() {
            if block.nrows() != dim_out || block.ncols() != dim_out {
                return Err(Error::DimensionMismatch {
                    expected: dim_out,
                    got: block.nrows(),
                });
            }
            choi.view_mut((k * dim_out, l * dim_out), (dim_out, dim_out))
                .copy_from(&(block / C64::new(dim_in as f64, 0.0)));
        }
    }
    Ok(choi)
}

/// Output of the map with Choi matrix `choi` on the operator `rho`.
pub fn apply_via_choi(choi: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim_in = rho.nrows();
    if !choi.nrows().is_multiple_of(dim_in) {
        return Err(Error::DimensionMismatch {
            expected: dim_in,
            got: choi.nrows(),
        });
    }
    let dim_out = choi.nrows() / dim_in;
    let mut out = DMatrix::from_element(dim_out, dim_out, C64::new(0.0, 0.0));
    for k in 0..dim_in {
        for l in 0..dim_in {
            out += choi.view((k * dim_out, l * dim_out), (dim_out, dim_out)) * rho[(k, l)];
        }
    }
    Ok(out * C64::new(dim_in as f64, 0.0))
}

/// Choi matrix of a channel given as a function on dense states.
///
/// The channel is only ever fed valid states: each operator `|k⟩⟨l|` is
/// recovered from the images of `|k⟩`, `|l⟩` and two superpositions. The
/// result is then checked against a direct evaluation on a generic input.
pub fn choi_matrix<F>(input_labels: &[QubitLabel], channel: F) -> Result<ComplexMatrix>
where
    F: Fn(&DenseState) -> Result<DenseState>,
{
    let dim_in = 1usize << input_labels.len();
    let run = |amps: Vec<C64>| -> Result<ComplexMatrix> {
        let input = DenseState::pure(PureBranch::new(amps, 1.0)?, input_labels.to_vec())?;
        channel(&input)?.density_matrix()
    };

    let diag: Vec<ComplexMatrix> = (0..dim_in)
        .map(|k| run(basis(dim_in, k)))
        .collect::<Result<_>>()?;
    let dim_out = diag[0].nrows();
    let zero = DMatrix::from_element(dim_out, dim_out, C64::new(0.0, 0.0));
    let mut blocks = vec![vec![zero; dim_in]; dim_in];
    let i = C64::new(0.0, 1.0);
    let half_one_plus_i = C64::new(0.5, 0.5);
    for k in 0..dim_in {
        blocks[k][k] = diag[k].clone();
        for l in k + 1..dim_in {
            // |k⟩⟨l| = P[+] + i P[+i] - (1+i)/2 (P[k] + P[l])
            let plus = run(superposition(dim_in, k, l, C64::new(1.0, 0.0)))?;
            let plus_i = run(superposition(dim_in, k, l, i))?;
            let kl = plus + plus_i * i - (&diag[k] + &diag[l]) * half_one_plus_i;
            blocks[l][k] = kl.adjoint();
            blocks[k][l] = kl;
        }
    }
    let choi = assemble(dim_in, &blocks)?;

    let probe = probe_state(dim_in);
    let probe_v = nalgebra::DVector::from_column_slice(&probe);
    let probe_rho = &probe_v * probe_v.adjoint();
    let direct = run(probe)?;
    let reconstructed = apply_via_choi(&choi, &probe_rho)?;
    let residual = super::max_abs_diff(&direct, &reconstructed)?;
    if residual > tol::CHOI_LINEARITY {
        return Err(Error::NonLinearChannel(residual));
    }
    Ok(choi)
}
