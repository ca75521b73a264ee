//! Single-qubit Kraus channels applied independently to Alice and Bob.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{
    hs_norm_sq, kron, on_qubit, paulis, re, DensityMatrix, Matrix2, Matrix4, Qubit,
};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    Depolarizing,
    PhaseFlip,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::Depolarizing,
        ChannelKind::PhaseFlip,
    ];

    /// Short token used on the command line.
    pub fn token(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::Depolarizing => "dep",
            ChannelKind::PhaseFlip => "pf",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::Depolarizing => "depolarizing",
            ChannelKind::PhaseFlip => "phase-flip",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ChannelKind::ALL
            .into_iter()
            .find(|k| k.token() == s || k.name() == s)
            .ok_or_else(|| {
                Error::invalid(format!("unknown channel '{s}' (expected ad, dep or pf)"))
            })
    }
}

/// A channel kind together with its decoherence parameter `p ∈ [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec<T> {
    kind: ChannelKind,
    p: T,
}

impl<T: Real> ChannelSpec<T> {
    pub fn new(kind: ChannelKind, p: T) -> Result<Self> {
        if !p.is_finite() || p < T::zero() || p > T::one() {
            return Err(Error::invalid(format!(
                "decoherence parameter p = {p} outside [0, 1]"
            )));
        }
        Ok(Self { kind, p })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> T {
        self.p
    }
}

/// Kraus operators `{M_μ}` of a single-qubit channel.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet<T> {
    pub ops: Vec<Matrix2<T>>,
}

impl<T: Real> KrausSet<T> {
    /// `Σ M†M`.
    pub fn completeness(&self) -> Matrix2<T> {
        self.ops
            .iter()
            .fold(Matrix2::zeros(), |acc, m| acc + m.adjoint() * *m)
    }

    /// Hilbert–Schmidt distance of `Σ M†M` from the identity.
    pub fn completeness_defect(&self) -> T {
        hs_norm_sq(&(self.completeness() - Matrix2::identity())).sqrt()
    }
}

pub fn kraus_set<T: Real>(spec: &ChannelSpec<T>) -> KrausSet<T> {
    let p = spec.p();
    let one = T::one();
    let o = re(T::zero());
    let ops = match spec.kind() {
        ChannelKind::AmplitudeDamping => vec![
            Matrix2::from_rows([[re(one), o], [o, re((one - p).sqrt())]]),
            Matrix2::from_rows([[o, re(p.sqrt())], [o, o]]),
        ],
        ChannelKind::Depolarizing => {
            let [sx, sy, sz] = paulis();
            // clamp guards 1 − 3p/4 against rounding below zero; it is ≥ 1/4 for p ≤ 1
            let w0 = (one - T::lit(0.75) * p).max(T::zero()).sqrt();
            let w = (p * T::lit(0.25)).sqrt();
            vec![
                Matrix2::identity().scale(w0),
                sx.scale(w),
                sy.scale(w),
                sz.scale(w),
            ]
        }
        ChannelKind::PhaseFlip => {
            let [_, _, sz] = paulis();
            vec![
                Matrix2::identity().scale((one - p).sqrt()),
                sz.scale(p.sqrt()),
            ]
        }
    };
    KrausSet { ops }
}

/// Channel acting on one qubit of a two-qubit state.
pub fn apply_single_qubit_channel<T: Real>(
    rho: &Matrix4<T>,
    spec: &ChannelSpec<T>,
    which: Qubit,
) -> DensityMatrix<T, 4> {
    let out = kraus_set(spec)
        .ops
        .iter()
        .map(|k| on_qubit(k, which).conjugate(rho))
        .fold(Matrix4::zeros(), |acc, term| acc + term);
    DensityMatrix::unchecked(out)
}

/// The same channel on both qubits: `Σ (A_k1 ⊗ A_k2) ρ (A_k1 ⊗ A_k2)†`.
pub fn apply_two_qubit_channel<T: Real>(
    rho: &Matrix4<T>,
    spec: &ChannelSpec<T>,
) -> DensityMatrix<T, 4> {
    let ks = kraus_set(spec);
    let mut out = Matrix4::zeros();
    for a in &ks.ops {
        for b in &ks.ops {
            out = out + kron(a, b).conjugate(rho);
        }
    }
    DensityMatrix::unchecked(out)
}
