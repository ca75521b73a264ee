mod common;

use num_complex::Complex;
use xstate_core::linalg::Qubit;
use xstate_core::linalg::{fano_decompose, paulis, Matrix2, Matrix4};
use xstate_core::noise::{
    apply_single_qubit_channel, apply_two_qubit_channel, kraus_set, ChannelKind, ChannelSpec,
};
use xstate_core::relativistic::{rindler_embed_and_trace, unruh_transform_closed, Acceleration};
use xstate_core::states::{make_x_state, StatePreset};

type C = Complex<f64>;

/// Bob's mode mapped into (I, II) by the two-mode squeezing isometry, written
/// as an explicit 8×4 matrix and traced over the last factor by hand.
fn unruh_by_hand(rho: &Matrix4<f64>, r: f64) -> [[C; 4]; 4] {
    let (s, c) = r.sin_cos();
    // w[(n_I, n_II)][b]
    let mut w = [[0.0f64; 2]; 4];
    w[0][0] = c; // |0⟩ → cos r |00⟩
    w[3][0] = s; //     + sin r |11⟩
    w[2][1] = 1.0; // |1⟩ → |10⟩
    let mut v = [[0.0f64; 4]; 8];
    for a in 0..2 {
        for m in 0..4 {
            for b in 0..2 {
                v[4 * a + m][2 * a + b] = w[m][b];
            }
        }
    }
    let mut big = [[C::new(0.0, 0.0); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..4 {
                for l in 0..4 {
                    big[i][j] += rho[(k, l)] * (v[i][k] * v[j][l]);
                }
            }
        }
    }
    let mut out = [[C::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = big[2 * i][2 * j] + big[2 * i + 1][2 * j + 1];
        }
    }
    out
}

fn r_grid() -> Vec<f64> {
    (0..=16)
        .map(|k| std::f64::consts::FRAC_PI_4 * k as f64 / 16.0)
        .collect()
}

#[test]
fn closed_unruh_matches_embedding_for_every_preset() {
    for preset in StatePreset::ALL {
        let p = preset.params::<f64>();
        let rho = make_x_state(&p, true).unwrap();
        for r in r_grid() {
            let acc = Acceleration::new(r).unwrap();
            let closed = unruh_transform_closed(&p, acc);
            let embedded = rindler_embed_and_trace(rho.matrix(), acc);
            let hand = unruh_by_hand(rho.matrix(), r);
            assert!(closed.max_abs_diff(&embedded) <= 1e-14, "{preset} r={r}");
            for i in 0..4 {
                for j in 0..4 {
                    assert!(
                        (closed[(i, j)] - hand[i][j]).norm() <= 1e-14,
                        "{preset} r={r} ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn embedding_matches_hand_construction_on_random_states() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let rho = common::random_density_matrix(&mut rng);
        for r in [0.0, 0.3, std::f64::consts::FRAC_PI_4] {
            let lib = rindler_embed_and_trace(&rho, Acceleration::new(r).unwrap());
            let hand = unruh_by_hand(&rho, r);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((lib[(i, j)] - hand[i][j]).norm() <= 1e-14);
                }
            }
        }
    }
}

#[test]
fn alice_marginal_untouched_by_acceleration() {
    let mut rng = common::rng(12);
    for _ in 0..20 {
        let rho = common::random_density_matrix(&mut rng);
        let out = rindler_embed_and_trace(&rho, Acceleration::new(0.6).unwrap());
        let a0 = xstate_core::linalg::reduced_state(&rho, Qubit::A);
        let a1 = xstate_core::linalg::reduced_state(out.matrix(), Qubit::A);
        assert!(a0.max_abs_diff(&a1) <= 1e-14);
    }
}

/// Pauli transfer matrix of each channel, acting on `(1, x, y, z)`.
fn transfer(kind: ChannelKind, p: f64) -> [[f64; 4]; 4] {
    match kind {
        ChannelKind::AmplitudeDamping => {
            let s = (1.0 - p).sqrt();
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, s, 0.0, 0.0],
                [0.0, 0.0, s, 0.0],
                [p, 0.0, 0.0, 1.0 - p],
            ]
        }
        ChannelKind::Depolarizing => {
            let q = 1.0 - p;
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, q, 0.0, 0.0],
                [0.0, 0.0, q, 0.0],
                [0.0, 0.0, 0.0, q],
            ]
        }
        ChannelKind::PhaseFlip => {
            let q = 1.0 - 2.0 * p;
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, q, 0.0, 0.0],
                [0.0, 0.0, q, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]
        }
    }
}

fn pauli_coefficients(rho: &Matrix4<f64>) -> [[f64; 4]; 4] {
    let f = fano_decompose(rho).unwrap();
    let mut r = [[0.0; 4]; 4];
    r[0][0] = 1.0;
    for i in 0..3 {
        r[i + 1][0] = f.x[i];
        r[0][i + 1] = f.y[i];
        for j in 0..3 {
            r[i + 1][j + 1] = f.t[i][j];
        }
    }
    r
}

fn from_pauli_coefficients(r: &[[f64; 4]; 4]) -> Matrix4<f64> {
    let [sx, sy, sz] = paulis();
    let basis = [Matrix2::identity(), sx, sy, sz];
    let mut m = Matrix4::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            m = m + xstate_core::linalg::kron(&basis[mu], &basis[nu]).scale(r[mu][nu] / 4.0);
        }
    }
    m
}

#[test]
fn two_qubit_channels_match_transfer_matrices() {
    let mut rng = common::rng(13);
    for kind in ChannelKind::ALL {
        for p in [0.0, 0.1, 0.37, 0.5, 0.8, 1.0] {
            let spec = ChannelSpec::new(kind, p).unwrap();
            let lam = transfer(kind, p);
            for _ in 0..10 {
                let rho = common::random_density_matrix(&mut rng);
                let r = pauli_coefficients(&rho);
                let mut out = [[0.0; 4]; 4];
                for mu in 0..4 {
                    for nu in 0..4 {
                        for a in 0..4 {
                            for b in 0..4 {
                                out[mu][nu] += lam[mu][a] * r[a][b] * lam[nu][b];
                            }
                        }
                    }
                }
                let expected = from_pauli_coefficients(&out);
                let got = apply_two_qubit_channel(&rho, &spec);
                assert!(got.max_abs_diff(&expected) <= 1e-13, "{kind:?} p={p}");
                let sequential = apply_single_qubit_channel(
                    apply_single_qubit_channel(&rho, &spec, Qubit::A).matrix(),
                    &spec,
                    Qubit::B,
                );
                assert!(got.max_abs_diff(&sequential) <= 1e-13);
            }
        }
    }
}

#[test]
fn kraus_sets_are_complete_and_preserve_physicality() {
    let mut rng = common::rng(14);
    for kind in ChannelKind::ALL {
        for k in 0..=20 {
            let spec = ChannelSpec::new(kind, k as f64 / 20.0).unwrap();
            assert!(kraus_set(&spec).completeness_defect() <= 1e-14);
            let rho = common::random_low_rank_state(&mut rng);
            let out = apply_two_qubit_channel(&rho, &spec);
            assert!((out.trace().re - 1.0).abs() <= 1e-13);
            assert!(common::min_eigenvalue_by_cholesky(out.matrix()) >= -1e-10);
        }
    }
}

#[test]
fn channels_keep_x_form() {
    for preset in StatePreset::ALL {
        let rho = make_x_state(&preset.params::<f64>(), true).unwrap();
        for kind in ChannelKind::ALL {
            let out = apply_two_qubit_channel(rho.matrix(), &ChannelSpec::new(kind, 0.42).unwrap());
            assert!(out.is_x_form(1e-15));
        }
    }
}
