//! Two qubits coupled to independent thermal reservoirs with mean occupation `n̄`.
//!
//! The generator is
//! `dρ/dt = ½(n̄+1)Γ Σᵢ([σ₋ⁱ, ρσ₊ⁱ] + [σ₋ⁱρ, σ₊ⁱ]) + ½n̄Γ Σᵢ([σ₊ⁱ, ρσ₋ⁱ] + [σ₊ⁱρ, σ₋ⁱ])`
//! with `σ₊ = |1⟩⟨0|` and `σ₋ = |0⟩⟨1|`, so `|0⟩` is the ground level.
//! Time enters the closed form only through the monitor parameter
//! `X = exp(−Γ(2n̄+1)t)`, which runs from 1 at `t = 0` to 0 as `t → ∞`.
//!
//! The closed-form populations are written in the level order
//! `|11⟩, |10⟩, |01⟩, |00⟩` (excited-excited first); [`to_thermal_order`]
//! and [`from_thermal_order`] convert from and to the crate-wide order.

use crate::error::{Error, Result};
use crate::linalg::{re, DensityMatrix, Matrix2, Matrix4, Qubit};
use crate::scalar::Real;

/// Elapsed time expressed either directly or through `X`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Clock<T> {
    Time(T),
    Monitor(T),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalParams<T> {
    nbar: T,
    gamma: T,
    clock: Clock<T>,
}

impl<T: Real> ThermalParams<T> {
    pub fn new(nbar: T, gamma: T, clock: Clock<T>) -> Result<Self> {
        if !nbar.is_finite() || nbar < T::zero() {
            return Err(Error::invalid(format!(
                "mean occupation n̄ = {nbar} must be ≥ 0"
            )));
        }
        if !gamma.is_finite() || gamma <= T::zero() {
            return Err(Error::invalid(format!(
                "emission rate Γ = {gamma} must be > 0"
            )));
        }
        match clock {
            Clock::Time(t) if !(t >= T::zero()) || t.is_nan() => {
                return Err(Error::invalid(format!("time t = {t} must be ≥ 0")))
            }
            Clock::Monitor(x) if !(x >= T::zero() && x <= T::one()) => {
                return Err(Error::invalid(format!(
                    "monitor parameter X = {x} outside [0, 1]"
                )))
            }
            _ => {}
        }
        Ok(Self { nbar, gamma, clock })
    }

    /// Parameters with `Γ = 1`, time measured through `X`.
    pub fn monitor(nbar: T, x: T) -> Result<Self> {
        Self::new(nbar, T::one(), Clock::Monitor(x))
    }

    pub fn timed(nbar: T, gamma: T, t: T) -> Result<Self> {
        Self::new(nbar, gamma, Clock::Time(t))
    }

    pub fn nbar(&self) -> T {
        self.nbar
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn clock(&self) -> Clock<T> {
        self.clock
    }

    /// Total relaxation rate `Γ(2n̄+1)`.
    pub fn rate(&self) -> T {
        self.gamma * (T::lit(2.0) * self.nbar + T::one())
    }

    /// `X = exp(−Γ(2n̄+1)t)`.
    pub fn x(&self) -> T {
        match self.clock {
            Clock::Monitor(x) => x,
            Clock::Time(t) => (-self.rate() * t).exp(),
        }
    }

    /// Elapsed time; infinite when `X = 0`.
    pub fn time(&self) -> T {
        match self.clock {
            Clock::Time(t) => t,
            Clock::Monitor(x) if x == T::zero() => T::infinity(),
            Clock::Monitor(x) => -x.ln() / self.rate(),
        }
    }

    /// Same reservoir, evaluated at a different `X`.
    pub fn with_monitor(&self, x: T) -> Result<Self> {
        Self::new(self.nbar, self.gamma, Clock::Monitor(x))
    }
}

fn reverse_levels<T: Real>(m: &Matrix4<T>) -> Matrix4<T> {
    let mut out = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = m[(3 - i, 3 - j)];
        }
    }
    out
}

/// Reorder from `|00⟩..|11⟩` to `|11⟩, |10⟩, |01⟩, |00⟩`.
pub fn to_thermal_order<T: Real>(m: &Matrix4<T>) -> Matrix4<T> {
    reverse_levels(m)
}

/// Inverse of [`to_thermal_order`].
pub fn from_thermal_order<T: Real>(m: &Matrix4<T>) -> Matrix4<T> {
    reverse_levels(m)
}

/// Closed-form state at monitor value `X` for an X-form initial state.
pub fn thermal_evolve_closed<T: Real>(
    rho0: &Matrix4<T>,
    tp: &ThermalParams<T>,
) -> Result<DensityMatrix<T, 4>> {
    let residue = rho0.x_form_residue();
    if residue > T::tol(1e-12) {
        return Err(Error::invalid(format!(
            "thermal closed form needs an X-form state (off-pattern residue {:.3e})",
            residue.as_f64()
        )));
    }
    let n = tp.nbar();
    let x = tp.x();
    let x2 = x * x;
    let one = T::one();
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);

    let s = to_thermal_order(rho0);
    let (r11, r22, r33, r44) = (s[(0, 0)].re, s[(1, 1)].re, s[(2, 2)].re, s[(3, 3)].re);
    let n2 = n * n;
    let denom = (two * n + one) * (two * n + one);

    // shared X² coefficient
    let q = (two * r11 + two * r44 - one) * n2 + (three * r11 + r44 - one) * n + r11;

    let p11 = n2 + (two * (r11 - r44) * n2 + (r11 - r44 + one) * n) * x + q * x2;
    let p22 = n * (n + one)
        - (two * (r11 + two * r33 + r44 - one) * n2
            + (r11 + four * r33 + three * r44 - two) * n
            + (r33 + r44 - one))
            * x
        - q * x2;
    // the constant term −(r22 + r44 − 1) mirrors the one in p22
    let p33 = n * (n + one)
        + (two * (r11 + two * r33 + r44 - one) * n2 + (three * r11 + four * r33 + r44 - two) * n
            - (r22 + r44 - one))
            * x
        - q * x2;
    let p44 = (n + one) * (n + one) - (n + one) * (two * n * (r11 - r44) + (r11 - r44 + one)) * x
        + q * x2;

    let mut out = Matrix4::zeros();
    out[(0, 0)] = re(p11 / denom);
    out[(1, 1)] = re(p22 / denom);
    out[(2, 2)] = re(p33 / denom);
    out[(3, 3)] = re(p44 / denom);
    for (i, j) in [(0, 3), (3, 0), (1, 2), (2, 1)] {
        out[(i, j)] = s[(i, j)] * x;
    }
    Ok(DensityMatrix::unchecked(from_thermal_order(&out)))
}

fn ladder<T: Real>() -> (Matrix2<T>, Matrix2<T>) {
    let (o, l) = (re(T::zero()), re(T::one()));
    // σ+ = |1⟩⟨0|, σ− = |0⟩⟨1|
    let raise = Matrix2::from_rows([[o, o], [l, o]]);
    (raise, raise.adjoint())
}

fn commutator<T: Real>(a: &Matrix4<T>, b: &Matrix4<T>) -> Matrix4<T> {
    *a * *b - *b * *a
}

/// Right-hand side of the thermal master equation, term by term.
pub fn lindblad_rhs<T: Real>(rho: &Matrix4<T>, nbar: T, gamma: T) -> Matrix4<T> {
    let (raise, lower) = ladder::<T>();
    let half = T::lit(0.5);
    let mut out = Matrix4::zeros();
    for q in [Qubit::A, Qubit::B] {
        let sp = crate::linalg::on_qubit(&raise, q);
        let sm = crate::linalg::on_qubit(&lower, q);
        let emission = commutator(&sm, &(*rho * sp)) + commutator(&(sm * *rho), &sp);
        let absorption = commutator(&sp, &(*rho * sm)) + commutator(&(sp * *rho), &sm);
        out = out
            + emission.scale(half * (nbar + T::one()) * gamma)
            + absorption.scale(half * nbar * gamma);
    }
    out
}

fn rk4_step<T: Real>(rho: &Matrix4<T>, h: T, nbar: T, gamma: T) -> Matrix4<T> {
    let half = T::lit(0.5);
    let k1 = lindblad_rhs(rho, nbar, gamma);
    let k2 = lindblad_rhs(&(*rho + k1.scale(h * half)), nbar, gamma);
    let k3 = lindblad_rhs(&(*rho + k2.scale(h * half)), nbar, gamma);
    let k4 = lindblad_rhs(&(*rho + k3.scale(h)), nbar, gamma);
    let incr = k1 + k2.scale(T::lit(2.0)) + k3.scale(T::lit(2.0)) + k4;
    *rho + incr.scale(h / T::lit(6.0))
}

/// Classical fourth-order Runge–Kutta integration of the master equation up
/// to the time encoded in `tp`, with steps no longer than `step`.
pub fn integrate_lindblad<T: Real>(
    rho0: &Matrix4<T>,
    tp: &ThermalParams<T>,
    step: T,
) -> Result<DensityMatrix<T, 4>> {
    if !(step > T::zero()) {
        return Err(Error::invalid(format!(
            "integration step {step} must be > 0"
        )));
    }
    let t = tp.time();
    if !t.is_finite() {
        return Err(Error::Integration(
            "cannot integrate to infinite time (X = 0)".into(),
        ));
    }
    let steps = (t / step).ceil().to_usize().unwrap_or(0).max(1);
    if steps > 50_000_000 {
        return Err(Error::invalid(format!(
            "{steps} integration steps requested"
        )));
    }
    let h = t / T::from_usize(steps).unwrap();
    let tr0 = rho0.trace().re;
    let mut rho = *rho0;
    for _ in 0..steps {
        rho = rk4_step(&rho, h, tp.nbar(), tp.gamma());
    }
    let drift = (rho.trace().re - tr0).abs();
    if !rho.is_finite() || drift > T::tol(1e-6) {
        return Err(Error::Integration(format!(
            "trace drifted by {:.3e} with step {h}",
            drift.as_f64()
        )));
    }
    Ok(DensityMatrix::unchecked(rho))
}

/// Integrate, halving the step until two successive results agree to `1e-8`.
pub fn integrate_lindblad_converged<T: Real>(
    rho0: &Matrix4<T>,
    tp: &ThermalParams<T>,
    initial_step: T,
) -> Result<DensityMatrix<T, 4>> {
    let mut step = initial_step;
    let mut prev = integrate_lindblad(rho0, tp, step)?;
    for _ in 0..12 {
        step *= T::lit(0.5);
        let next = integrate_lindblad(rho0, tp, step)?;
        if next.max_abs_diff(&prev) < T::tol(1e-8) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Integration(format!(
        "no step-halving convergence down to step {step}"
    )))
}

/// Stationary product state: ground population `(n̄+1)/(2n̄+1)` per qubit.
pub fn thermal_fixed_point<T: Real>(nbar: T) -> DensityMatrix<T, 4> {
    let d = (T::lit(2.0) * nbar + T::one()).powi(2);
    let e = nbar * (nbar + T::one()) / d;
    let m = Matrix4::from_diagonal([(nbar + T::one()).powi(2) / d, e, e, nbar * nbar / d]);
    DensityMatrix::unchecked(m)
}
