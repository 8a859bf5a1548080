//! Pauli matrices and embedded spin operators `I_k = σ_k/2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// The bare Pauli matrix σ_axis.
pub fn sigma(axis: Axis) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    match axis {
        Axis::X => ComplexMatrix::from_rows(vec![ZERO, ONE, ONE, ZERO]),
        Axis::Y => ComplexMatrix::from_rows(vec![ZERO, -i, i, ZERO]),
        Axis::Z => ComplexMatrix::from_rows(vec![ONE, ZERO, ZERO, -ONE]),
    }
}

/// Tensor product of the given single-qubit factors, first factor most significant.
pub fn tensor(factors: &[ComplexMatrix]) -> ComplexMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kron(f))
}

/// `σ_axis/2` on qubit `k` (1-based) of an `n`-qubit register.
pub fn spin_op(axis: Axis, k: usize, n: usize) -> Result<ComplexMatrix> {
    if k == 0 || k > n {
        return Err(Error::BadIndex { index: k, count: n });
    }
    let half = sigma(axis).scale_real(0.5);
    let factors: Vec<ComplexMatrix> = (1..=n)
        .map(|slot| {
            if slot == k {
                half.clone()
            } else {
                ComplexMatrix::identity(2)
            }
        })
        .collect();
    Ok(tensor(&factors))
}

/// Three-qubit `I_axis` on qubit `k`; `k` must be 1, 2 or 3.
pub(crate) fn spin3(axis: Axis, k: usize) -> ComplexMatrix {
    spin_op(axis, k, 3).expect("qubit index in 1..=3")
}

/// Three-qubit `I_z^(j) I_z^(k)`.
pub(crate) fn zz3(j: usize, k: usize) -> ComplexMatrix {
    &spin3(Axis::Z, j) * &spin3(Axis::Z, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_op_x_on_first_qubit() {
        let op = spin_op(Axis::X, 1, 3).unwrap();
        assert_eq!(op[(0, 4)], Complex64::new(0.5, 0.0));
        assert_eq!(op[(0, 1)], ZERO);
        let expected = tensor(&[
            sigma(Axis::X).scale_real(0.5),
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(2),
        ]);
        assert_eq!(op, expected);
    }

    #[test]
    fn spin_op_z_on_middle_qubit() {
        let op = spin_op(Axis::Z, 2, 3).unwrap();
        let diag: Vec<f64> = op.diagonal().iter().map(|z| z.re).collect();
        assert_eq!(diag, vec![0.5, 0.5, -0.5, -0.5, 0.5, 0.5, -0.5, -0.5]);
    }

    #[test]
    fn spin_op_y_on_last_qubit() {
        let i2 = ComplexMatrix::identity(2);
        let expected = i2.kron(&i2).kron(&sigma(Axis::Y).scale_real(0.5));
        assert_eq!(spin_op(Axis::Y, 3, 3).unwrap(), expected);
    }

    #[test]
    fn spin_op_rejects_bad_index() {
        assert_eq!(
            spin_op(Axis::X, 0, 3),
            Err(Error::BadIndex { index: 0, count: 3 })
        );
        assert!(spin_op(Axis::X, 4, 3).is_err());
    }
}
