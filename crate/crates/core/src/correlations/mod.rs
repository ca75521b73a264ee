//! Quantum correlation measures of two-qubit states, measured on Alice's side.
//!
//! * geometric discord `D_G = min ‖ρ − χ‖²` over zero-discord states `χ`,
//! * measurement-induced nonlocality `MIN = max ‖ρ − Π(ρ)‖²` over
//!   measurements that leave Alice's marginal invariant,
//! * entropic discord `D = S(ρ_A) − S(ρ) + min Σ_k p_k S(ρ_k)`.
//!
//! The geometric measures have closed forms in terms of the Fano coordinates
//! `(x, y, T)`; each closed form has a brute-force counterpart that optimizes
//! over projective measurements `Π_± = (I ± n̂·σ)/2` directly.

mod search;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    fano_decompose, hs_norm_sq, on_qubit, paulis, reduced_state, symmetric_eigenvalues,
    von_neumann_entropy, Matrix2, Matrix4, Qubit,
};
use crate::scalar::Real;

pub use search::{sphere_search, Goal, Optimum, MIN_GRID_DENSITY};

/// Below this Bloch-vector length MIN uses the unconstrained branch.
pub const MIN_X_THRESHOLD: f64 = 1e-9;

/// Measurement axis `n̂ = (sinθ cosφ, sinθ sinφ, cosθ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementDirection<T> {
    theta: T,
    phi: T,
}

impl<T: Real> MeasurementDirection<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() || theta < T::zero() || theta > T::PI() {
            return Err(Error::invalid(format!(
                "measurement angles θ = {theta}, φ = {phi} invalid"
            )));
        }
        Ok(Self::raw(theta, phi).normalized())
    }

    pub(crate) fn raw(theta: T, phi: T) -> Self {
        Self { theta, phi }
    }

    /// Wrap φ into `[0, 2π)`.
    pub(crate) fn normalized(self) -> Self {
        let tau = T::TAU();
        let mut phi = self.phi % tau;
        if phi < T::zero() {
            phi += tau;
        }
        if phi >= tau {
            phi = T::zero();
        }
        Self {
            theta: self.theta,
            phi,
        }
    }

    /// Direction of a nonzero vector.
    pub fn along(v: [T; 3]) -> Result<Self> {
        let norm = v.iter().map(|a| *a * *a).sum::<T>().sqrt();
        if !(norm > T::zero()) {
            return Err(Error::invalid("cannot take the direction of a zero vector"));
        }
        let theta = (v[2] / norm).max(-T::one()).min(T::one()).acos();
        let phi = v[1].atan2(v[0]);
        Ok(Self::raw(theta, phi).normalized())
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Projectors `(Π₊, Π₋)` onto `±n̂`.
    pub fn projectors(&self) -> (Matrix2<T>, Matrix2<T>) {
        let n = self.unit_vector();
        let s = paulis::<T>();
        let ns = s[0].scale(n[0]) + s[1].scale(n[1]) + s[2].scale(n[2]);
        let half = T::lit(0.5);
        let id = Matrix2::identity();
        ((id + ns).scale(half), (id - ns).scale(half))
    }
}

/// `Σ_± (Π_± ⊗ I) ρ (Π_± ⊗ I)`.
pub fn post_measurement_state<T: Real>(
    rho: &Matrix4<T>,
    d: &MeasurementDirection<T>,
) -> Matrix4<T> {
    let (p, m) = d.projectors();
    on_qubit(&p, Qubit::A).conjugate(rho) + on_qubit(&m, Qubit::A).conjugate(rho)
}

fn clamp_nonneg<T: Real>(v: T) -> T {
    v.max(T::zero())
}

/// Closed-form geometric discord `¼(‖x‖² + ‖T‖² − k_max)`, with `k_max` the
/// largest eigenvalue of `x xᵀ + T Tᵀ`.
pub fn gmqd_closed<T: Real>(rho: &Matrix4<T>) -> Result<T> {
    let f = fano_decompose(rho)?;
    let tt = f.t_tt();
    let k: [[T; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| f.x[i] * f.x[j] + tt[i][j]));
    let k_max = symmetric_eigenvalues(&k)[2];
    Ok(clamp_nonneg(
        (f.x_norm_sq() + f.t_frobenius_sq() - k_max) * T::lit(0.25),
    ))
}

/// Which branch of the MIN closed form applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinBranch {
    /// `x ≠ 0`: the only admissible axis is `±x̂`.
    LocalVector,
    /// `x = 0`: every axis leaves Alice's marginal invariant.
    Unconstrained,
}

fn min_branch<T: Real>(x: &[T; 3]) -> MinBranch {
    let norm = x.iter().map(|v| *v * *v).sum::<T>().sqrt();
    if norm > T::lit(MIN_X_THRESHOLD) {
        MinBranch::LocalVector
    } else {
        MinBranch::Unconstrained
    }
}

/// Closed-form measurement-induced nonlocality.
pub fn min_closed<T: Real>(rho: &Matrix4<T>) -> Result<T> {
    let f = fano_decompose(rho)?;
    let tt = f.t_tt();
    let trace: T = (0..3).map(|i| tt[i][i]).sum();
    let sub = match min_branch(&f.x) {
        MinBranch::LocalVector => {
            let x = f.x;
            let quad: T = (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .map(|(i, j)| x[i] * tt[i][j] * x[j])
                .sum();
            quad / f.x_norm_sq()
        }
        MinBranch::Unconstrained => symmetric_eigenvalues(&tt)[0],
    };
    Ok(clamp_nonneg((trace - sub) * T::lit(0.25)))
}

/// `‖ρ − Π_n̂(ρ)‖²`.
pub fn measurement_disturbance<T: Real>(rho: &Matrix4<T>, d: &MeasurementDirection<T>) -> T {
    hs_norm_sq(&(*rho - post_measurement_state(rho, d)))
}

/// Geometric discord by direct minimization of `‖ρ − Π(ρ)‖²` over measurement axes.
pub fn gmqd_bruteforce<T: Real>(rho: &Matrix4<T>, grid_density: usize) -> Result<Optimum<T>> {
    sphere_search(grid_density, Goal::Minimize, |d| {
        measurement_disturbance(rho, d)
    })
}

/// MIN by direct search. With a nonzero local Bloch vector the admissible
/// measurement is fixed to `±x̂` and no search is needed.
pub fn min_bruteforce<T: Real>(rho: &Matrix4<T>, grid_density: usize) -> Result<Optimum<T>> {
    let x = alice_bloch_vector(rho);
    match min_branch(&x) {
        MinBranch::LocalVector => {
            let d = MeasurementDirection::along(x)?;
            let v = measurement_disturbance(rho, &d);
            Ok(Optimum {
                value: v,
                direction: d,
                grid_value: v,
            })
        }
        MinBranch::Unconstrained => sphere_search(grid_density, Goal::Maximize, |d| {
            measurement_disturbance(rho, d)
        }),
    }
}

/// Alice's Bloch vector read off her reduced state.
fn alice_bloch_vector<T: Real>(rho: &Matrix4<T>) -> [T; 3] {
    let a = reduced_state(rho, Qubit::A);
    let two = T::lit(2.0);
    [
        two * a[(0, 1)].re,
        -two * a[(0, 1)].im,
        a[(0, 0)].re - a[(1, 1)].re,
    ]
}

/// Conditional entropy `Σ_k p_k S(ρ_k)` after measuring Alice along `d`.
pub fn conditional_entropy<T: Real>(rho: &Matrix4<T>, d: &MeasurementDirection<T>) -> T {
    let (p, m) = d.projectors();
    [p, m]
        .iter()
        .map(|proj| {
            let branch = on_qubit(proj, Qubit::A).conjugate(rho);
            let pk = branch.trace().re;
            if pk < T::lit(1e-12) {
                T::zero()
            } else {
                pk * von_neumann_entropy(&branch.scale(T::one() / pk))
            }
        })
        .sum()
}

/// Entropic discord with the measurement optimized by grid search.
pub fn quantum_discord<T: Real>(rho: &Matrix4<T>, grid_density: usize) -> Result<Optimum<T>> {
    let base = von_neumann_entropy(&reduced_state(rho, Qubit::A)) - von_neumann_entropy(rho);
    let opt = sphere_search(grid_density, Goal::Minimize, |d| {
        conditional_entropy(rho, d)
    })?;
    Ok(Optimum {
        value: clamp_nonneg(base + opt.value),
        direction: opt.direction,
        grid_value: clamp_nonneg(base + opt.grid_value),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Gmqd,
    Min,
    Discord,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Gmqd, Measure::Min, Measure::Discord];

    pub fn token(self) -> &'static str {
        match self {
            Measure::Gmqd => "gmqd",
            Measure::Min => "min",
            Measure::Discord => "discord",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.token() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown measure '{s}' (expected gmqd, min or discord)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics<T> {
    /// Length of Alice's Bloch vector; decides the MIN branch.
    pub x_norm: T,
    pub min_branch: MinBranch,
    /// Optimal axis of the entropic-discord search, when computed.
    pub discord_optimum: Option<Optimum<T>>,
}

/// Requested measures of one state. Unrequested measures are `None`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationReport<T> {
    pub gmqd: Option<T>,
    pub min_nl: Option<T>,
    /// Entropic discord in bits.
    pub discord: Option<T>,
    pub diagnostics: Diagnostics<T>,
}

impl<T: Real> CorrelationReport<T> {
    pub fn get(&self, m: Measure) -> Option<T> {
        match m {
            Measure::Gmqd => self.gmqd,
            Measure::Min => self.min_nl,
            Measure::Discord => self.discord,
        }
    }
}

/// All three measures.
pub fn correlation_report<T: Real>(
    rho: &Matrix4<T>,
    grid_density: usize,
) -> Result<CorrelationReport<T>> {
    correlation_report_for(rho, &Measure::ALL, grid_density)
}

/// Only the listed measures; `grid_density` matters only for discord.
pub fn correlation_report_for<T: Real>(
    rho: &Matrix4<T>,
    measures: &[Measure],
    grid_density: usize,
) -> Result<CorrelationReport<T>> {
    let x = alice_bloch_vector(rho);
    let discord_optimum = if measures.contains(&Measure::Discord) {
        Some(quantum_discord(rho, grid_density)?)
    } else {
        None
    };
    Ok(CorrelationReport {
        gmqd: measures
            .contains(&Measure::Gmqd)
            .then(|| gmqd_closed(rho))
            .transpose()?,
        min_nl: measures
            .contains(&Measure::Min)
            .then(|| min_closed(rho))
            .transpose()?,
        discord: discord_optimum.map(|o| o.value),
        diagnostics: Diagnostics {
            x_norm: x.iter().map(|v| *v * *v).sum::<T>().sqrt(),
            min_branch: min_branch(&x),
            discord_optimum,
        },
    })
}
