//! Cyclic Jacobi eigenvalue iteration for small Hermitian matrices.

use num_complex::Complex;

use super::{re, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Real eigenvalues of a Hermitian matrix, ascending.
///
/// Fails if the input deviates from Hermiticity by more than `1e-10`
/// or contains non-finite entries.
pub fn eigenvalues_hermitian<T: Real, const N: usize>(m: &Matrix<T, N>) -> Result<[T; N]> {
    if !m.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let residue = m.hermiticity_residue();
    if residue > T::tol(1e-10) {
        return Err(Error::invalid(format!(
            "matrix is not Hermitian (residue {:.3e})",
            residue.as_f64()
        )));
    }
    Ok(jacobi(m.hermitian_part()))
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues<T: Real, const N: usize>(m: &[[T; N]; N]) -> [T; N] {
    let mut a = Matrix::<T, N>::zeros();
    for i in 0..N {
        for j in 0..N {
            a[(i, j)] = re((m[i][j] + m[j][i]) * T::lit(0.5));
        }
    }
    jacobi(a)
}

/// Eigenvalues of the Hermitian part of `m`, skipping validation.
pub(crate) fn eigenvalues_unchecked<T: Real, const N: usize>(m: &Matrix<T, N>) -> [T; N] {
    jacobi(m.hermitian_part())
}

fn off_diagonal_mass<T: Real, const N: usize>(a: &Matrix<T, N>) -> T {
    let mut s = T::zero();
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi<T: Real, const N: usize>(mut a: Matrix<T, N>) -> [T; N] {
    let scale = super::hs_norm_sq(&a);
    let threshold = scale * T::epsilon() * T::epsilon();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&a) <= threshold {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut vals: [T; N] = std::array::from_fn(|i| a[(i, i)].re);
    vals.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    vals
}

/// Annihilate `a[p][q]` with a unitary plane rotation `A ← J† A J`.
fn rotate<T: Real, const N: usize>(a: &mut Matrix<T, N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == T::zero() {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (g + g);
    let t = {
        let mag = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -mag
        } else {
            mag
        }
    };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;
    // J restricted to the (p, q) plane
    let jpp: Complex<T> = re(cs);
    let jpq: Complex<T> = re(sn);
    let jqp: Complex<T> = phase.conj() * (-sn);
    let jqq: Complex<T> = phase.conj() * cs;

    for k in 0..N {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..N {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = re(T::zero());
    a[(q, p)] = re(T::zero());
    a[(p, p)] = re(a[(p, p)].re);
    a[(q, q)] = re(a[(q, q)].re);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, hs_norm_sq, Matrix2, Matrix4};
    use approx::assert_abs_diff_eq;

    #[test]
    fn maximally_mixed() {
        let ev = eigenvalues_hermitian(&Matrix4::<f64>::identity().scale(0.25)).unwrap();
        for v in ev {
            assert_abs_diff_eq!(v, 0.25, epsilon = 1e-15);
        }
    }

    #[test]
    fn diagonal_sorted() {
        let m = Matrix4::from_diagonal([0.3, 0.1, 0.4, 0.2]);
        let ev = eigenvalues_hermitian(&m).unwrap();
        assert_eq!(ev, [0.1, 0.2, 0.3, 0.4]);
    }

    #[test]
    fn complex_two_by_two_matches_closed_form() {
        // [[a, b], [b*, d]] has eigenvalues (a+d)/2 ± sqrt(((a−d)/2)² + |b|²)
        let m = Matrix2::from_rows([[re(0.7), c(0.2, -0.15)], [c(0.2, 0.15), re(0.3)]]);
        let mean = 0.5;
        let half = (0.2f64.powi(2) + 0.2f64.powi(2) + 0.15f64.powi(2)).sqrt();
        let ev = eigenvalues_hermitian(&m).unwrap();
        assert_abs_diff_eq!(ev[0], mean - half, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], mean + half, epsilon = 1e-14);
    }

    #[test]
    fn trace_and_purity_are_preserved() {
        let m = Matrix4::from_rows([
            [re(0.4), c(0.1, 0.05), c(0.0, -0.02), c(0.03, 0.0)],
            [c(0.1, -0.05), re(0.3), c(0.07, 0.01), c(0.0, 0.04)],
            [c(0.0, 0.02), c(0.07, -0.01), re(0.2), c(-0.05, 0.0)],
            [c(0.03, 0.0), c(0.0, -0.04), c(-0.05, 0.0), re(0.1)],
        ]);
        let ev = eigenvalues_hermitian(&m).unwrap();
        assert_abs_diff_eq!(ev.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            ev.iter().map(|v| v * v).sum::<f64>(),
            hs_norm_sq(&m),
            epsilon = 1e-12
        );
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = Matrix2::from_rows([[re(0.5), re(0.3)], [re(0.0), re(0.5)]]);
        assert!(eigenvalues_hermitian(&m).is_err());
    }

    #[test]
    fn real_symmetric_three_by_three() {
        let ev = symmetric_eigenvalues(&[[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]]);
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[2], 5.0, epsilon = 1e-14);
    }

    #[test]
    fn single_precision_works() {
        let ev =
            eigenvalues_hermitian(&Matrix4::<f32>::from_diagonal([0.4, 0.3, 0.2, 0.1])).unwrap();
        assert_eq!(ev, [0.1, 0.2, 0.3, 0.4]);
    }
}
