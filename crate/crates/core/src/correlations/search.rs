//! Exhaustive search over measurement axes on the Bloch sphere.
//!
//! A uniform `(θ, φ)` grid is scanned first; the best cell is then polished
//! by alternating golden-section searches along θ and φ inside the cell's
//! neighbourhood. Evaluation order is fixed, so results are reproducible.

use super::MeasurementDirection;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Smallest accepted number of θ samples.
pub const MIN_GRID_DENSITY: usize = 90;

const REFINE_ROUNDS: usize = 3;
const GOLDEN_ITERS: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Goal {
    Minimize,
    Maximize,
}

/// Best measurement axis found and the objective value there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum<T> {
    pub value: T,
    pub direction: MeasurementDirection<T>,
    /// Best value on the raw grid, before refinement.
    pub grid_value: T,
}

impl<T: Real> Optimum<T> {
    /// Improvement contributed by the refinement stage.
    pub fn grid_residual(&self) -> T {
        (self.grid_value - self.value).abs()
    }
}

fn better<T: Real>(goal: Goal, candidate: T, incumbent: T) -> bool {
    match goal {
        Goal::Minimize => candidate < incumbent,
        Goal::Maximize => candidate > incumbent,
    }
}

/// Golden-section search on `[lo, hi]`; returns `(argbest, best)`.
fn golden<T: Real>(goal: Goal, mut lo: T, mut hi: T, f: &mut impl FnMut(T) -> T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut a = hi - (hi - lo) * inv_phi;
    let mut b = lo + (hi - lo) * inv_phi;
    let mut fa = f(a);
    let mut fb = f(b);
    for _ in 0..GOLDEN_ITERS {
        if better(goal, fa, fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - (hi - lo) * inv_phi;
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + (hi - lo) * inv_phi;
            fb = f(b);
        }
    }
    if better(goal, fa, fb) {
        (a, fa)
    } else {
        (b, fb)
    }
}

/// Optimize `objective` over unit vectors `n̂(θ, φ)`.
///
/// `grid_density` is the number of θ intervals on `[0, π]`; φ uses twice as
/// many on `[0, 2π)`.
pub fn sphere_search<T: Real>(
    grid_density: usize,
    goal: Goal,
    mut objective: impl FnMut(&MeasurementDirection<T>) -> T,
) -> Result<Optimum<T>> {
    if grid_density < MIN_GRID_DENSITY {
        return Err(Error::invalid(format!(
            "grid density {grid_density} below the minimum of {MIN_GRID_DENSITY}"
        )));
    }
    let n_theta = grid_density;
    let n_phi = 2 * grid_density;
    let d_theta = T::PI() / T::from_usize(n_theta).unwrap();
    let d_phi = T::TAU() / T::from_usize(n_phi).unwrap();

    let mut best_theta = T::zero();
    let mut best_phi = T::zero();
    let mut best = objective(&MeasurementDirection::raw(T::zero(), T::zero()));
    for i in 0..=n_theta {
        let theta = d_theta * T::from_usize(i).unwrap();
        // the poles need a single azimuth
        let phis = if i == 0 || i == n_theta { 1 } else { n_phi };
        for j in 0..phis {
            let phi = d_phi * T::from_usize(j).unwrap();
            let v = objective(&MeasurementDirection::raw(theta, phi));
            if better(goal, v, best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }
    let grid_value = best;

    let (mut theta, mut phi, mut value) = (best_theta, best_phi, best);
    for _ in 0..REFINE_ROUNDS {
        let lo = (theta - d_theta).max(T::zero());
        let hi = (theta + d_theta).min(T::PI());
        let (t, v) = golden(goal, lo, hi, &mut |t| {
            objective(&MeasurementDirection::raw(t, phi))
        });
        if !better(goal, value, v) {
            theta = t;
            value = v;
        }
        let (p, v) = golden(goal, phi - d_phi, phi + d_phi, &mut |p| {
            objective(&MeasurementDirection::raw(theta, p))
        });
        if !better(goal, value, v) {
            phi = p;
            value = v;
        }
    }

    Ok(Optimum {
        value,
        direction: MeasurementDirection::raw(theta, phi).normalized(),
        grid_value,
    })
}
