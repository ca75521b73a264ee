mod common;

use num_complex::Complex;
use xstate_core::linalg::{kron, Matrix2, Matrix4};
use xstate_core::noise::{apply_two_qubit_channel, ChannelKind, ChannelSpec};
use xstate_core::relativistic::{unruh_transform_closed, Acceleration};
use xstate_core::states::StatePreset;
use xstate_core::thermal::{
    integrate_lindblad, integrate_lindblad_converged, lindblad_rhs, thermal_evolve_closed,
    thermal_fixed_point, ThermalParams,
};

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

fn initial_states() -> Vec<(String, Matrix4<f64>)> {
    let mut out = Vec::new();
    for preset in StatePreset::ALL {
        for r in [0.0, FRAC_PI_8, FRAC_PI_4] {
            let rho = unruh_transform_closed(&preset.params(), Acceleration::new(r).unwrap());
            out.push((format!("{preset} r={r:.3}"), rho.into_matrix()));
        }
    }
    out
}

/// Each qubit relaxes independently: populations approach the Gibbs values
/// at rate `Γ(2n̄+1)` and coherences at half that rate. Written as a product
/// of single-qubit affine Bloch maps.
fn exact_by_bloch_maps(rho: &Matrix4<f64>, nbar: f64, x: f64) -> Matrix4<f64> {
    let z_eq = 1.0 / (2.0 * nbar + 1.0);
    let s = x.sqrt();
    // transfer on (1, σx, σy, σz)
    let lam = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, s, 0.0, 0.0],
        [0.0, 0.0, s, 0.0],
        [z_eq * (1.0 - x), 0.0, 0.0, x],
    ];
    let sigma = {
        let o = Complex::new(0.0, 0.0);
        let l = Complex::new(1.0, 0.0);
        let i = Complex::new(0.0, 1.0);
        [
            Matrix2::identity(),
            Matrix2::from_rows([[o, l], [l, o]]),
            Matrix2::from_rows([[o, -i], [i, o]]),
            Matrix2::from_rows([[l, o], [o, -l]]),
        ]
    };
    let mut out = Matrix4::zeros();
    for a in 0..4 {
        for b in 0..4 {
            let coeff = (*rho * kron(&sigma[a], &sigma[b])).trace();
            for mu in 0..4 {
                for nu in 0..4 {
                    let w = lam[mu][a] * lam[nu][b];
                    if w != 0.0 {
                        out = out + kron(&sigma[mu], &sigma[nu]).map(|z| z * coeff * (w / 4.0));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn closed_form_matches_rk4_across_grid() {
    let gamma = 1.0;
    for (label, rho) in initial_states() {
        for nbar in [0.01, 0.1, 0.3, 1.0] {
            for t in [0.1, 0.5, 1.0, 3.0] {
                let tp = ThermalParams::timed(nbar, gamma, t).unwrap();
                let closed = thermal_evolve_closed(&rho, &tp).unwrap();
                let rk = integrate_lindblad_converged(&rho, &tp, 0.01).unwrap();
                let diff = closed.max_abs_diff(&rk);
                assert!(diff <= 1e-6, "{label} n̄={nbar} t={t}: {diff:.2e}");
            }
        }
    }
}

#[test]
fn closed_form_matches_independent_bloch_solution() {
    for (label, rho) in initial_states() {
        for nbar in [0.0, 0.01, 0.1, 0.3, 1.0, 4.0] {
            for x in [1.0, 0.9, 0.5, 0.1, 1e-3, 0.0] {
                let tp = ThermalParams::monitor(nbar, x).unwrap();
                let closed = thermal_evolve_closed(&rho, &tp).unwrap();
                let exact = exact_by_bloch_maps(&rho, nbar, x);
                let diff = closed.max_abs_diff(&exact);
                assert!(diff <= 1e-13, "{label} n̄={nbar} X={x}: {diff:.2e}");
            }
        }
    }
}

#[test]
fn closed_form_after_channels_matches_rk4() {
    let rho = unruh_transform_closed(
        &StatePreset::GeneralFig4.params(),
        Acceleration::new(0.4).unwrap(),
    );
    for kind in ChannelKind::ALL {
        let noisy = apply_two_qubit_channel(rho.matrix(), &ChannelSpec::new(kind, 0.3).unwrap());
        let tp = ThermalParams::timed(0.2, 0.7, 1.3).unwrap();
        let closed = thermal_evolve_closed(noisy.matrix(), &tp).unwrap();
        let rk = integrate_lindblad(noisy.matrix(), &tp, 1e-3).unwrap();
        assert!(closed.max_abs_diff(&rk) <= 1e-6);
    }
}

#[test]
fn monitor_parameter_composes_as_semigroup() {
    for (label, rho) in initial_states() {
        for nbar in [0.0, 0.1, 1.0] {
            for (x1, x2) in [(0.9, 0.5), (0.3, 0.7), (0.25, 0.25), (1.0, 0.4)] {
                let step1 = thermal_evolve_closed(&rho, &ThermalParams::monitor(nbar, x1).unwrap())
                    .unwrap();
                let two = thermal_evolve_closed(
                    step1.matrix(),
                    &ThermalParams::monitor(nbar, x2).unwrap(),
                )
                .unwrap();
                let one =
                    thermal_evolve_closed(&rho, &ThermalParams::monitor(nbar, x1 * x2).unwrap())
                        .unwrap();
                assert!(two.max_abs_diff(&one) <= 1e-10, "{label} n̄={nbar}");
            }
        }
    }
}

#[test]
fn fixed_point_is_stationary_and_reached() {
    for nbar in [0.0, 0.05, 0.5, 2.0] {
        let fp = thermal_fixed_point(nbar);
        let rhs = lindblad_rhs(fp.matrix(), nbar, 1.3);
        assert!(rhs.max_abs_diff(&Matrix4::zeros()) <= 1e-15);
        for (_, rho) in initial_states() {
            let end =
                thermal_evolve_closed(&rho, &ThermalParams::monitor(nbar, 0.0).unwrap()).unwrap();
            assert!(end.max_abs_diff(&fp) <= 1e-14);
        }
    }
}

#[test]
fn identity_at_unit_monitor() {
    for (_, rho) in initial_states() {
        let same = thermal_evolve_closed(&rho, &ThermalParams::monitor(0.7, 1.0).unwrap()).unwrap();
        assert!(same.max_abs_diff(&rho) <= 1e-15);
    }
}

#[test]
fn rejects_non_x_states() {
    let mut rng = common::rng(21);
    let rho = common::random_density_matrix(&mut rng);
    assert!(thermal_evolve_closed(&rho, &ThermalParams::monitor(0.1, 0.5).unwrap()).is_err());
}
