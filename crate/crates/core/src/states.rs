//! Bell-diagonal X-states `¼(I + Σ cᵢ σᵢ⊗σᵢ)` and the named presets.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{re, DensityMatrix, Matrix4};
use crate::scalar::Real;

/// Correlation coefficients `(c1, c2, c3)` of a Bell-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XStateParams<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
}

/// Sign patterns `(ε1, ε2, ε3)` with `ε1 ε2 ε3 = −1`.
const BELL_SIGNS: [[f64; 3]; 4] = [
    [-1.0, -1.0, -1.0],
    [-1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0],
];

impl<T: Real> XStateParams<T> {
    /// Fails unless every `|cᵢ| ≤ 1`. Physicality is not checked here.
    pub fn new(c1: T, c2: T, c3: T) -> Result<Self> {
        for (name, v) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !v.is_finite() || v.abs() > T::one() {
                return Err(Error::invalid(format!("{name} = {v} outside [-1, 1]")));
            }
        }
        Ok(Self { c1, c2, c3 })
    }

    /// Werner-like family `|c1| = |c2| = |c3| = c` on the singlet sign pattern.
    pub fn werner_like(c: T) -> Result<Self> {
        Self::new(-c, -c, -c)
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Eigenvalues `(1 + ε·c)/4` of the state, one per sign pattern.
    pub fn bell_eigenvalues(&self) -> [T; 4] {
        let c = self.as_array();
        BELL_SIGNS.map(|eps| {
            let s: T = (0..3).map(|i| T::lit(eps[i]) * c[i]).sum();
            (T::one() + s) * T::lit(0.25)
        })
    }

    pub fn min_eigenvalue(&self) -> T {
        self.bell_eigenvalues()
            .into_iter()
            .fold(T::infinity(), |a, b| a.min(b))
    }

    pub fn is_physical(&self) -> bool {
        self.min_eigenvalue() >= -T::tol(1e-12)
    }

    /// `c1 + c2`.
    pub fn c_plus(&self) -> T {
        self.c1 + self.c2
    }

    /// `c1 − c2`.
    pub fn c_minus(&self) -> T {
        self.c1 - self.c2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatePreset {
    Bell,
    Werner,
    General,
    GeneralFig4,
}

impl StatePreset {
    pub const ALL: [StatePreset; 4] = [
        StatePreset::Bell,
        StatePreset::Werner,
        StatePreset::General,
        StatePreset::GeneralFig4,
    ];

    /// Presets whose parameters describe a positive semidefinite state.
    pub const PHYSICAL: [StatePreset; 3] = [
        StatePreset::Bell,
        StatePreset::Werner,
        StatePreset::GeneralFig4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatePreset::Bell => "bell",
            StatePreset::Werner => "werner",
            StatePreset::General => "general",
            StatePreset::GeneralFig4 => "general-fig4",
        }
    }

    pub fn params<T: Real>(self) -> XStateParams<T> {
        let [c1, c2, c3] = match self {
            StatePreset::Bell => [1.0, -1.0, 1.0],
            StatePreset::Werner => [-0.8, -0.8, -0.8],
            // nonphysical for every sign choice: 0.7 + 0.9 − 0.4 > 1
            StatePreset::General => [0.7, 0.9, 0.4],
            StatePreset::GeneralFig4 => [0.2, -0.3, 0.3],
        };
        XStateParams {
            c1: T::lit(c1),
            c2: T::lit(c2),
            c3: T::lit(c3),
        }
    }
}

impl fmt::Display for StatePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatePreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown state preset '{s}'")))
    }
}

pub fn preset<T: Real>(name: &str) -> Result<XStateParams<T>> {
    Ok(name.parse::<StatePreset>()?.params())
}

/// Build `¼(I + Σ cᵢ σᵢ⊗σᵢ)` with an exact X-form zero pattern.
///
/// Without `unchecked`, nonphysical parameters are rejected with the
/// offending minimum eigenvalue.
pub fn make_x_state<T: Real>(p: &XStateParams<T>, unchecked: bool) -> Result<DensityMatrix<T, 4>> {
    let p = XStateParams::new(p.c1, p.c2, p.c3)?;
    if !unchecked && !p.is_physical() {
        return Err(Error::Nonphysical {
            min_eigenvalue: p.min_eigenvalue().as_f64(),
        });
    }
    let q = T::lit(0.25);
    let mut m = Matrix4::zeros();
    m[(0, 0)] = re((T::one() + p.c3) * q);
    m[(1, 1)] = re((T::one() - p.c3) * q);
    m[(2, 2)] = re((T::one() - p.c3) * q);
    m[(3, 3)] = re((T::one() + p.c3) * q);
    m[(0, 3)] = re(p.c_minus() * q);
    m[(3, 0)] = re(p.c_minus() * q);
    m[(1, 2)] = re(p.c_plus() * q);
    m[(2, 1)] = re(p.c_plus() * q);
    Ok(DensityMatrix::unchecked(m))
}

/// Diagnostic summary of how close a matrix is to a valid X-form density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValidationReport<T> {
    pub hermiticity_residue: T,
    pub trace_deviation: T,
    pub min_eigenvalue: T,
    pub x_form_residue: T,
}

impl<T: Real> ValidationReport<T> {
    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_residue <= T::tol(1e-12)
    }

    pub fn is_unit_trace(&self) -> bool {
        self.trace_deviation <= T::tol(1e-12)
    }

    pub fn is_positive(&self) -> bool {
        self.min_eigenvalue >= -T::tol(1e-10)
    }

    pub fn is_x_form(&self) -> bool {
        self.x_form_residue <= T::tol(1e-12)
    }

    pub fn is_valid(&self) -> bool {
        self.is_hermitian() && self.is_unit_trace() && self.is_positive()
    }
}

pub fn validate_density_matrix<T: Real>(m: &Matrix4<T>) -> ValidationReport<T> {
    let tr = m.trace();
    ValidationReport {
        hermiticity_residue: m.hermiticity_residue(),
        trace_deviation: (tr - re(T::one())).norm(),
        min_eigenvalue: DensityMatrix::unchecked(*m).eigenvalues()[0],
        x_form_residue: m.x_form_residue(),
    }
}
