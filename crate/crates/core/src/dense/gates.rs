use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;

use super::{ComplexMatrix, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

fn mat2(entries: [C64; 4]) -> ComplexMatrix {
    DMatrix::from_row_slice(2, 2, &entries)
}

/// Pauli operator by index: 0 = I, 1 = σx, 2 = σy, 3 = σz.
///
/// Panics on an index above 3.
pub fn pauli(index: usize) -> ComplexMatrix {
    match index {
        0 => mat2([ONE, ZERO, ZERO, ONE]),
        1 => mat2([ZERO, ONE, ONE, ZERO]),
        2 => mat2([ZERO, -I, I, ZERO]),
        3 => mat2([ONE, ZERO, ZERO, -ONE]),
        _ => panic!("pauli index {index} out of range 0..=3"),
    }
}

pub fn hadamard() -> ComplexMatrix {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    mat2([h, h, h, -h])
}

/// Phase gate diag(1, i).
pub fn phase_s() -> ComplexMatrix {
    mat2([ONE, ZERO, ZERO, I])
}

/// Inverse phase gate diag(1, -i).
pub fn phase_s_dagger() -> ComplexMatrix {
    mat2([ONE, ZERO, ZERO, -I])
}

/// Controlled-NOT with the first qubit as control.
pub fn cnot() -> ComplexMatrix {
    let mut m = DMatrix::from_element(4, 4, ZERO);
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    m
}

pub fn identity(dim: usize) -> ComplexMatrix {
    DMatrix::identity(dim, dim)
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Largest entry of |U†U - I|, or `None` if the matrix is not square.
pub fn unitarity_defect(u: &ComplexMatrix) -> Option<f64> {
    if !u.is_square() {
        return None;
    }
    let prod = u.adjoint() * u;
    let n = u.nrows();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            let expected = if r == c { ONE } else { ZERO };
            worst = worst.max((prod[(r, c)] - expected).norm());
        }
    }
    Some(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-14)
    }

    #[test]
    fn pauli_zero_is_identity() {
        assert!(close(&pauli(0), &identity(2)));
    }

    #[test]
    fn paulis_are_hermitian_involutions() {
        for k in 0..4 {
            let p = pauli(k);
            assert!(close(&p, &p.adjoint()));
            assert!(close(&(&p * &p), &identity(2)));
            assert!(unitarity_defect(&p).unwrap() < 1e-15);
        }
    }

    #[test]
    fn clifford_generators_are_unitary() {
        for g in [hadamard(), phase_s(), phase_s_dagger(), cnot()] {
            assert!(unitarity_defect(&g).unwrap() < 1e-15);
        }
        assert!(close(&(phase_s() * phase_s_dagger()), &identity(2)));
    }

    #[test]
    #[should_panic]
    fn pauli_index_out_of_range() {
        pauli(4);
    }
}
