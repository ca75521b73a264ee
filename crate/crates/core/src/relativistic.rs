//! Unruh degradation of Bob's qubit.
//!
//! Bob's Unruh modes are rewritten in the Rindler basis,
//! `|0⟩ → cos r |0⟩_I|0⟩_II + sin r |1⟩_I|1⟩_II` and `|1⟩ → |1⟩_I|0⟩_II`,
//! and region II is traced out. `r ∈ [0, π/4]`, with `π/4` the infinite
//! acceleration limit.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, re, DensityMatrix, Matrix4, Matrix8};
use crate::scalar::Real;
use crate::states::XStateParams;

/// Rindler mixing angle `r`, with `cos r = (e^{−2πωc/a} + 1)^{−1/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Acceleration<T>(T);

impl<T: Real> Acceleration<T> {
    pub fn new(r: T) -> Result<Self> {
        let max = T::FRAC_PI_4();
        // allow a rounding slack at the upper endpoint
        if !r.is_finite() || r < T::zero() || r > max + T::epsilon() * T::lit(4.0) {
            return Err(Error::invalid(format!(
                "acceleration angle r = {r} outside [0, π/4]"
            )));
        }
        Ok(Self(r.min(max)))
    }

    pub fn zero() -> Self {
        Self(T::zero())
    }

    pub fn infinite() -> Self {
        Self(T::FRAC_PI_4())
    }

    /// Mixing angle from frequency `ω`, proper acceleration `a` and light speed `c`.
    pub fn from_physical(omega: T, accel: T, light_speed: T) -> Result<Self> {
        let boltz = (-T::lit(2.0) * T::PI() * omega * light_speed / accel).exp();
        Self::new((T::one() / (boltz + T::one()).sqrt()).acos())
    }

    pub fn r(self) -> T {
        self.0
    }
}

/// Closed-form density matrix of Alice and Bob's region-I mode for a Bell-diagonal input.
pub fn unruh_transform_closed<T: Real>(
    p: &XStateParams<T>,
    r: Acceleration<T>,
) -> DensityMatrix<T, 4> {
    let (s, c) = r.r().sin_cos();
    let (c2, s2) = (c * c, s * s);
    let one = T::one();
    let q = T::lit(0.25);
    let mut m = Matrix4::zeros();
    m[(0, 0)] = re((one + p.c3) * c2 * q);
    m[(1, 1)] = re(((one + p.c3) * s2 + (one - p.c3)) * q);
    m[(2, 2)] = re((one - p.c3) * c2 * q);
    m[(3, 3)] = re(((one + p.c3) + (one - p.c3) * s2) * q);
    m[(0, 3)] = re(p.c_minus() * c * q);
    m[(3, 0)] = m[(0, 3)];
    m[(1, 2)] = re(p.c_plus() * c * q);
    m[(2, 1)] = m[(1, 2)];
    DensityMatrix::unchecked(m)
}

/// Isometry from Bob's qubit into the (I, II) mode pair, columns indexed by
/// Bob's basis state and rows by `2·n_I + n_II`.
fn rindler_isometry<T: Real>(r: Acceleration<T>) -> [[T; 2]; 4] {
    let (s, c) = r.r().sin_cos();
    let o = T::zero();
    [[c, o], [o, o], [o, T::one()], [s, o]]
}

/// Embed Bob's qubit into regions I ⊗ II for an arbitrary two-qubit state.
pub fn rindler_embed<T: Real>(rho: &Matrix4<T>, r: Acceleration<T>) -> Matrix8<T> {
    let v = rindler_isometry(r);
    let mut out = Matrix8::zeros();
    for a in 0..2 {
        for ap in 0..2 {
            for m in 0..4 {
                for mp in 0..4 {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for b in 0..2 {
                        for bp in 0..2 {
                            let w = v[m][b] * v[mp][bp];
                            if w != T::zero() {
                                acc += rho[(2 * a + b, 2 * ap + bp)] * w;
                            }
                        }
                    }
                    out[(4 * a + m, 4 * ap + mp)] = acc;
                }
            }
        }
    }
    out
}

/// Unruh transform of any two-qubit state by explicit embedding and
/// tracing over region II.
pub fn rindler_embed_and_trace<T: Real>(
    rho: &Matrix4<T>,
    r: Acceleration<T>,
) -> DensityMatrix<T, 4> {
    let full = rindler_embed(rho, r);
    let kept = partial_trace(&full, &[0, 1]).expect("three-qubit selector");
    DensityMatrix::unchecked(kept)
}
