use nalgebra::DMatrix;

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Matrices with an identically zero imaginary part take the real symmetric
/// path, which is several times faster at the sizes used here.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    // Decompose each coupled block separately: nalgebra's QR iteration can
    // return NaN on matrices with decoupled zero rows, and Bell-mixture
    // density matrices are mostly such blocks.
    let mut values = Vec::with_capacity(m.nrows());
    for block in coupled_blocks(m) {
        if let [i] = block[..] {
            values.push(m[(i, i)].re);
            continue;
        }
        let sub = DMatrix::from_fn(block.len(), block.len(), |r, c| m[(block[r], block[c])]);
        let scale = sub.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if sub.iter().all(|z| z.im == 0.0) {
            let real = sub.map(|z| z.re / scale);
            values.extend(real.symmetric_eigenvalues().iter().map(|v| v * scale));
        } else {
            let unit = sub.map(|z| z / scale);
            values.extend(unit.symmetric_eigenvalues().iter().map(|v| v * scale));
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidState(
            "eigenvalue computation did not converge".into(),
        ));
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Index sets of the connected components of the nonzero pattern.
fn coupled_blocks(m: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for r in 0..n {
        for c in r + 1..n {
            if m[(r, c)] != C64::new(0.0, 0.0) || m[(c, r)] != C64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    blocks.into_values().collect()
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|v| v.abs()).sum())
}

/// Half the trace norm of the difference of two density operators.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    Ok(0.5 * trace_norm(&(a - b))?)
}

/// Largest entry-wise modulus of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    Ok((a - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

pub fn is_hermitian(m: &ComplexMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()).is_ok_and(|d| d <= tol)
}
