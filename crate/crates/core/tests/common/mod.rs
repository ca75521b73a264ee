#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use xstate_core::linalg::{Matrix2, Matrix4};
use xstate_core::states::XStateParams;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn ginibre<const N: usize>(rng: &mut ChaCha8Rng) -> [[Complex<f64>; N]; N] {
    std::array::from_fn(|_| std::array::from_fn(|_| Complex::new(gauss(rng), gauss(rng))))
}

/// `G G† / tr`, with `G` a complex Gaussian matrix; full rank almost surely.
pub fn random_density_matrix(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let g = Matrix4::from_rows(ginibre::<4>(rng));
    let m = g * g.adjoint();
    m.scale(1.0 / m.trace().re)
}

/// Random rank-deficient state (rank 1 or 2).
pub fn random_low_rank_state(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let rank = rng.gen_range(1..=2);
    let mut m = Matrix4::zeros();
    for _ in 0..rank {
        let v: [Complex<f64>; 4] = std::array::from_fn(|_| Complex::new(gauss(rng), gauss(rng)));
        m = m + Matrix4::outer(&v);
    }
    m.scale(1.0 / m.trace().re)
}

/// Hermitian unit-trace matrix, not necessarily positive.
pub fn random_hermitian_unit_trace(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let g = Matrix4::from_rows(ginibre::<4>(rng));
    let mut h = g.hermitian_part();
    let shift = (1.0 - h.trace().re) / 4.0;
    h = h + Matrix4::identity().scale(shift);
    h
}

/// Haar-random single-qubit unitary from a uniform point on S³.
pub fn random_unitary2(rng: &mut ChaCha8Rng) -> Matrix2<f64> {
    let v: [f64; 4] = std::array::from_fn(|_| gauss(rng));
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let a = Complex::new(v[0] / n, v[1] / n);
    let b = Complex::new(v[2] / n, v[3] / n);
    Matrix2::from_rows([[a, b], [-b.conj(), a.conj()]])
}

/// Uniform sample from the tetrahedron of physical Bell-diagonal states.
pub fn random_physical_x_params(rng: &mut ChaCha8Rng) -> XStateParams<f64> {
    loop {
        let c: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let p = XStateParams::new(c[0], c[1], c[2]).unwrap();
        if p.is_physical() {
            return p;
        }
    }
}

/// Brute-force Hermitian check of the minimum eigenvalue through the
/// characteristic behaviour of `ρ + s·I`: the smallest `s` on a bisection
/// for which a Cholesky factorization succeeds.
pub fn min_eigenvalue_by_cholesky(m: &Matrix4<f64>) -> f64 {
    let pd = |s: f64| -> bool {
        let a = *m + Matrix4::identity().scale(s);
        let mut l = [[Complex::new(0.0, 0.0); 4]; 4];
        for j in 0..4 {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[j][k].norm_sqr();
            }
            if d <= 0.0 {
                return false;
            }
            l[j][j] = Complex::new(d.sqrt(), 0.0);
            for i in (j + 1)..4 {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[i][k] * l[j][k].conj();
                }
                l[i][j] = s / l[j][j].re;
            }
        }
        true
    };
    // Gershgorin bound brackets the spectrum
    let radius = (0..4)
        .map(|i| (0..4).map(|j| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if pd(-mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
