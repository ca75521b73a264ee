use super::{kron, paulis, Matrix2, Matrix4};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Pauli-basis coordinates of a two-qubit operator:
/// `ρ = ¼(I⊗I + Σ xᵢ σᵢ⊗I + Σ yⱼ I⊗σⱼ + Σ Tᵢⱼ σᵢ⊗σⱼ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FanoDecomposition<T> {
    /// Alice's Bloch vector.
    pub x: [T; 3],
    /// Bob's Bloch vector.
    pub y: [T; 3],
    /// Correlation matrix.
    pub t: [[T; 3]; 3],
}

impl<T: Real> FanoDecomposition<T> {
    pub fn zero() -> Self {
        Self {
            x: [T::zero(); 3],
            y: [T::zero(); 3],
            t: [[T::zero(); 3]; 3],
        }
    }

    pub fn x_norm_sq(&self) -> T {
        self.x.iter().map(|v| *v * *v).sum()
    }

    pub fn t_frobenius_sq(&self) -> T {
        self.t.iter().flatten().map(|v| *v * *v).sum()
    }

    /// `T Tᵀ`.
    pub fn t_tt(&self) -> [[T; 3]; 3] {
        let t = &self.t;
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| t[i][k] * t[j][k]).sum()))
    }
}

/// `tr(ρ P)` without forming the product.
fn expectation<T: Real>(rho: &Matrix4<T>, p: &Matrix4<T>) -> num_complex::Complex<T> {
    let mut acc = num_complex::Complex::new(T::zero(), T::zero());
    for i in 0..4 {
        for j in 0..4 {
            acc += rho[(i, j)] * p[(j, i)];
        }
    }
    acc
}

fn real_part<T: Real>(z: num_complex::Complex<T>) -> Result<T> {
    if z.im.abs() > T::tol(1e-12) {
        return Err(Error::invalid(format!(
            "Pauli expectation has imaginary residue {:.3e}",
            z.im.as_f64()
        )));
    }
    Ok(z.re)
}

pub fn fano_decompose<T: Real>(rho: &Matrix4<T>) -> Result<FanoDecomposition<T>> {
    let residue = rho.hermiticity_residue();
    if residue > T::tol(1e-12) {
        return Err(Error::invalid(format!(
            "matrix is not Hermitian (residue {:.3e})",
            residue.as_f64()
        )));
    }
    let s = paulis::<T>();
    let id = Matrix2::identity();
    let mut f = FanoDecomposition::zero();
    for i in 0..3 {
        f.x[i] = real_part(expectation(rho, &kron(&s[i], &id)))?;
        f.y[i] = real_part(expectation(rho, &kron(&id, &s[i])))?;
        for j in 0..3 {
            f.t[i][j] = real_part(expectation(rho, &kron(&s[i], &s[j])))?;
        }
    }
    Ok(f)
}

pub fn fano_compose<T: Real>(f: &FanoDecomposition<T>) -> Matrix4<T> {
    let s = paulis::<T>();
    let id = Matrix2::identity();
    let mut m = Matrix4::identity();
    for i in 0..3 {
        m = m + kron(&s[i], &id).scale(f.x[i]) + kron(&id, &s[i]).scale(f.y[i]);
        for j in 0..3 {
            m = m + kron(&s[i], &s[j]).scale(f.t[i][j]);
        }
    }
    m.scale(T::lit(0.25))
}
