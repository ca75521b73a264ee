//! Dense complex matrices of qubit dimension (2, 4, 8).
//!
//! Basis ordering is the computational one, with qubit 0 as the most
//! significant (leftmost) tensor factor: for two qubits the rows are
//! `|00⟩, |01⟩, |10⟩, |11⟩`, Alice first and Bob second.

mod density;
mod eigen;
mod fano;

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use density::{von_neumann_entropy, DensityMatrix};
pub use eigen::{eigenvalues_hermitian, symmetric_eigenvalues};
pub use fano::{fano_compose, fano_decompose, FanoDecomposition};

/// Square complex matrix with compile-time dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T, const N: usize> {
    data: [[Complex<T>; N]; N],
}

pub type Matrix2<T> = Matrix<T, 2>;
pub type Matrix4<T> = Matrix<T, 4>;
pub type Matrix8<T> = Matrix<T, 8>;

/// One party of a two-qubit system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Qubit {
    /// Alice, the inertial observer (tensor factor 0).
    A,
    /// Bob, the accelerated observer (tensor factor 1).
    B,
}

impl Qubit {
    pub fn index(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
        }
    }

    pub fn other(self) -> Qubit {
        match self {
            Qubit::A => Qubit::B,
            Qubit::B => Qubit::A,
        }
    }
}

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

impl<T: Real, const N: usize> Matrix<T, N> {
    pub fn zeros() -> Self {
        Self {
            data: [[Complex::new(T::zero(), T::zero()); N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = re(T::one());
        }
        m
    }

    pub fn from_rows(data: [[Complex<T>; N]; N]) -> Self {
        Self { data }
    }

    pub fn from_real_rows(rows: [[T; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = re(rows[i][j]);
            }
        }
        m
    }

    pub fn from_diagonal(diag: [T; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i][i] = re(d);
        }
        m
    }

    /// `|v⟩⟨v|` for a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex<T>; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub const fn dim(&self) -> usize {
        N
    }

    pub fn rows(&self) -> &[[Complex<T>; N]; N] {
        &self.data
    }

    pub fn diagonal(&self) -> [Complex<T>; N] {
        std::array::from_fn(|i| self.data[i][i])
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(re(T::zero()), |acc, i| acc + self.data[i][i])
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let mut m = *self;
        for row in m.data.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    /// `self · other · self†`.
    pub fn conjugate(&self, other: &Self) -> Self {
        *self * *other * self.adjoint()
    }

    /// Largest `|m_ij − conj(m_ji)|`.
    pub fn hermiticity_residue(&self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in i..N {
                worst = worst.max((self.data[i][j] - self.data[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.data[i][j] - other.data[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// True when every entry off the diagonal and anti-diagonal is within `tol` of zero.
    pub fn is_x_form(&self, tol: T) -> bool {
        self.x_form_residue() <= tol
    }

    /// Largest modulus among entries outside the diagonal and anti-diagonal.
    pub fn x_form_residue(&self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                if i != j && i + j != N - 1 {
                    worst = worst.max(self.data[i][j].norm());
                }
            }
        }
        worst
    }

    /// Hermitian part `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(T::lit(0.5))
    }
}

/// Squared Hilbert–Schmidt norm `tr(m†m)`.
pub fn hs_norm_sq<T: Real, const N: usize>(m: &Matrix<T, N>) -> T {
    m.data.iter().flatten().map(|z| z.norm_sqr()).sum()
}

/// Kronecker product of two single-qubit operators, `a` on qubit 0.
pub fn kron<T: Real>(a: &Matrix2<T>, b: &Matrix2<T>) -> Matrix4<T> {
    let mut m = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.data[2 * i + k][2 * j + l] = a.data[i][j] * b.data[k][l];
                }
            }
        }
    }
    m
}

/// Lift a single-qubit operator onto one factor of a two-qubit space.
pub fn on_qubit<T: Real>(op: &Matrix2<T>, which: Qubit) -> Matrix4<T> {
    match which {
        Qubit::A => kron(op, &Matrix2::identity()),
        Qubit::B => kron(&Matrix2::identity(), op),
    }
}

/// Pauli matrices `[σx, σy, σz]`.
pub fn paulis<T: Real>() -> [Matrix2<T>; 3] {
    let (o, l) = (T::zero(), T::one());
    [
        Matrix2::from_rows([[re(o), re(l)], [re(l), re(o)]]),
        Matrix2::from_rows([[re(o), c(o, -l)], [c(o, l), re(o)]]),
        Matrix2::from_rows([[re(l), re(o)], [re(o), re(-l)]]),
    ]
}

fn qubit_count(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

/// Reduced state on the qubits listed in `keep` (qubit 0 is the leftmost factor).
///
/// `keep` must be strictly increasing and `M` must equal `2^keep.len()`.
pub fn partial_trace<T: Real, const N: usize, const M: usize>(
    m: &Matrix<T, N>,
    keep: &[usize],
) -> Result<Matrix<T, M>> {
    let n = qubit_count(N)
        .ok_or_else(|| Error::invalid(format!("dimension {N} is not a qubit register")))?;
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&q| q >= n) {
        return Err(Error::invalid(format!(
            "subsystem selector {keep:?} inconsistent with {n} qubits"
        )));
    }
    if 1usize << keep.len() != M {
        return Err(Error::invalid(format!(
            "keeping {} qubits yields dimension {}, not {M}",
            keep.len(),
            1usize << keep.len()
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    // bit position of qubit q inside a full index
    let bit = |q: usize| n - 1 - q;
    let assemble = |kept: usize, env: usize| -> usize {
        let mut idx = 0;
        for (pos, &q) in keep.iter().enumerate() {
            if kept >> (keep.len() - 1 - pos) & 1 == 1 {
                idx |= 1 << bit(q);
            }
        }
        for (pos, &q) in traced.iter().enumerate() {
            if env >> (traced.len() - 1 - pos) & 1 == 1 {
                idx |= 1 << bit(q);
            }
        }
        idx
    };
    let mut out = Matrix::<T, M>::zeros();
    for i in 0..M {
        for j in 0..M {
            let mut acc = re(T::zero());
            for e in 0..(N / M) {
                acc += m.data[assemble(i, e)][assemble(j, e)];
            }
            out.data[i][j] = acc;
        }
    }
    Ok(out)
}

/// Single-qubit marginal of a two-qubit matrix.
pub fn reduced_state<T: Real>(m: &Matrix4<T>, keep: Qubit) -> Matrix2<T> {
    partial_trace(m, &[keep.index()]).expect("two-qubit selector is always consistent")
}

impl<T, const N: usize> Index<(usize, usize)> for Matrix<T, N> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for Matrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i][j]
    }
}

impl<T: Real, const N: usize> Add for Matrix<T, N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] += rhs.data[i][j];
            }
        }
        self
    }
}

impl<T: Real, const N: usize> Sub for Matrix<T, N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

impl<T: Real, const N: usize> Mul for Matrix<T, N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.data[i][k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..N {
                    out.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        out
    }
}
