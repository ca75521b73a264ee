use std::ops::Deref;

use super::eigen::eigenvalues_unchecked;
use super::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hermitian, unit-trace, positive semidefinite matrix.
///
/// `try_new` enforces all three properties. `unchecked` wraps a matrix as-is
/// and is used for nonphysical parameter sets that must still be carried
/// through the pipeline, and for outputs of maps that preserve the
/// invariants by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T, const N: usize> {
    mat: Matrix<T, N>,
}

impl<T: Real, const N: usize> DensityMatrix<T, N> {
    pub fn try_new(mat: Matrix<T, N>) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::invalid("density matrix has non-finite entries"));
        }
        let herm = mat.hermiticity_residue();
        if herm > T::tol(1e-12) {
            return Err(Error::invalid(format!(
                "density matrix is not Hermitian (residue {:.3e})",
                herm.as_f64()
            )));
        }
        let tr = mat.trace();
        if (tr.re - T::one()).abs() > T::tol(1e-12) || tr.im.abs() > T::tol(1e-12) {
            return Err(Error::invalid(format!(
                "density matrix trace is {}+{}i",
                tr.re, tr.im
            )));
        }
        let min = eigenvalues_unchecked(&mat)[0];
        if min < -T::tol(1e-10) {
            return Err(Error::Nonphysical {
                min_eigenvalue: min.as_f64(),
            });
        }
        Ok(Self { mat })
    }

    pub fn unchecked(mat: Matrix<T, N>) -> Self {
        Self { mat }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            mat: Matrix::identity().scale(T::one() / T::from_usize(N).unwrap()),
        }
    }

    pub fn matrix(&self) -> &Matrix<T, N> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<T, N> {
        self.mat
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [T; N] {
        eigenvalues_unchecked(&self.mat)
    }

    pub fn purity(&self) -> T {
        super::hs_norm_sq(&self.mat)
    }
}

impl<T, const N: usize> Deref for DensityMatrix<T, N> {
    type Target = Matrix<T, N>;

    fn deref(&self) -> &Matrix<T, N> {
        &self.mat
    }
}

/// Von Neumann entropy in bits. Eigenvalues at or below zero contribute nothing.
pub fn von_neumann_entropy<T: Real, const N: usize>(rho: &Matrix<T, N>) -> T {
    eigenvalues_unchecked(rho)
        .into_iter()
        .filter(|&l| l > T::zero())
        .map(|l| -l * l.log2())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{re, Matrix2, Matrix4};
    use approx::assert_abs_diff_eq;

    #[test]
    fn entropy_examples() {
        let pure = Matrix4::<f64>::from_diagonal([0.0, 1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(von_neumann_entropy(&pure), 0.0);
        assert_abs_diff_eq!(
            von_neumann_entropy(&Matrix2::<f64>::identity().scale(0.5)),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            von_neumann_entropy(&Matrix4::<f64>::identity().scale(0.25)),
            2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn entropy_ignores_diagonal_order() {
        let a = von_neumann_entropy(&Matrix4::<f64>::from_diagonal([0.1, 0.2, 0.3, 0.4]));
        let b = von_neumann_entropy(&Matrix4::<f64>::from_diagonal([0.4, 0.1, 0.3, 0.2]));
        assert_abs_diff_eq!(a, b, epsilon = 1e-15);
    }

    #[test]
    fn construction_checks() {
        assert!(DensityMatrix::try_new(Matrix4::<f64>::identity().scale(0.25)).is_ok());
        assert!(matches!(
            DensityMatrix::try_new(Matrix4::<f64>::identity().scale(0.3)),
            Err(Error::InvalidInput(_))
        ));
        let neg = Matrix2::<f64>::from_diagonal([1.2, -0.2]);
        match DensityMatrix::try_new(neg) {
            Err(Error::Nonphysical { min_eigenvalue }) => {
                assert_abs_diff_eq!(min_eigenvalue, -0.2, epsilon = 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut skew = Matrix2::<f64>::identity().scale(0.5);
        skew[(0, 1)] = re(0.1);
        assert!(DensityMatrix::try_new(skew).is_err());
    }
}
