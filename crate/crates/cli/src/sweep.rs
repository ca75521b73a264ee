//! One- and two-parameter sweeps of the evaluation pipeline.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use xstate_core::correlations::{CorrelationReport, Measure};
use xstate_core::noise::ChannelSpec;
use xstate_core::pipeline::{evaluate, StateSpec};
use xstate_core::relativistic::Acceleration;
use xstate_core::states::XStateParams;
use xstate_core::thermal::{Clock, ThermalParams};
use xstate_core::{Error, PipelineConfig64, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepVar {
    R,
    P,
    X,
    /// Werner-like strength: `(c1, c2, c3) = (−c, −c, −c)`.
    C,
    Nbar,
}

impl SweepVar {
    pub const ALL: [SweepVar; 5] = [
        SweepVar::R,
        SweepVar::P,
        SweepVar::X,
        SweepVar::C,
        SweepVar::Nbar,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SweepVar::R => "r",
            SweepVar::P => "p",
            SweepVar::X => "X",
            SweepVar::C => "c",
            SweepVar::Nbar => "nbar",
        }
    }

    /// Closed interval of admissible values.
    pub fn domain(self) -> (f64, f64) {
        match self {
            SweepVar::R => (0.0, FRAC_PI_4),
            SweepVar::P | SweepVar::X | SweepVar::C => (0.0, 1.0),
            SweepVar::Nbar => (0.0, f64::INFINITY),
        }
    }

    /// `cfg` with this variable set to `v`.
    pub fn apply(self, cfg: &PipelineConfig64, v: f64) -> Result<PipelineConfig64> {
        let mut out = cfg.clone();
        match self {
            SweepVar::R => out.r = Acceleration::new(v)?,
            SweepVar::P => {
                let ch = cfg
                    .channel
                    .ok_or_else(|| Error::invalid("sweeping p needs a channel (--channel)"))?;
                out.channel = Some(ChannelSpec::new(ch.kind(), v)?);
            }
            SweepVar::X => {
                let tp = cfg
                    .thermal
                    .ok_or_else(|| Error::invalid("sweeping X needs a reservoir (--nbar)"))?;
                out.thermal = Some(tp.with_monitor(v)?);
            }
            SweepVar::C => out.state = StateSpec::Explicit(XStateParams::werner_like(v)?),
            SweepVar::Nbar => {
                let tp = cfg
                    .thermal
                    .ok_or_else(|| Error::invalid("sweeping nbar needs --X or --t/--gamma"))?;
                out.thermal = Some(ThermalParams::new(v, tp.gamma(), tp.clock())?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for SweepVar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepVar::ALL
            .into_iter()
            .find(|v| v.token() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown sweep variable '{s}' (expected r, p, X, c or nbar)"
                ))
            })
    }
}

/// Evenly spaced samples `from..=to`; the last sample is `to` exactly.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    (0..=steps)
        .map(|i| {
            if i == steps {
                to
            } else {
                from + (to - from) * i as f64 / steps as f64
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub fixed: PipelineConfig64,
}

impl SweepSpec {
    pub fn new(
        var: SweepVar,
        from: f64,
        to: f64,
        steps: usize,
        fixed: PipelineConfig64,
    ) -> Result<Self> {
        if steps == 0 {
            return Err(Error::invalid("a sweep needs at least one step"));
        }
        if !(from.is_finite() && to.is_finite()) || from > to {
            return Err(Error::invalid(format!(
                "sweep range {from}..{to} must be finite with from ≤ to"
            )));
        }
        let (lo, hi) = var.domain();
        // r tolerates rounding of a typed-in π/4
        let slack = if var == SweepVar::R { 1e-12 } else { 0.0 };
        if from < lo - slack || to > hi + slack {
            return Err(Error::invalid(format!(
                "{var} range {from}..{to} leaves [{lo}, {hi}]"
            )));
        }
        let spec = Self {
            var,
            from,
            to,
            steps,
            fixed,
        };
        // surface missing context (no channel for p, ...) before any work starts
        var.apply(&spec.fixed, from)?;
        Ok(spec)
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.from, self.to, self.steps)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<(f64, CorrelationReport<f64>)>,
}

impl SweepTable {
    pub fn column(&self, m: Measure) -> Vec<f64> {
        self.rows
            .iter()
            .map(|(_, r)| r.get(m).unwrap_or(f64::NAN))
            .collect()
    }
}

/// Run `f` on a pool of `workers` threads (`0` = one per core).
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Integration(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Evaluate every config; results come back in input order whatever the
/// scheduling.
pub fn evaluate_all(cfgs: &[PipelineConfig64]) -> Result<Vec<CorrelationReport<f64>>> {
    cfgs.par_iter().map(evaluate).collect()
}

pub fn sweep(spec: &SweepSpec, workers: usize) -> Result<SweepTable> {
    let xs = spec.values();
    let cfgs = xs
        .iter()
        .map(|&v| spec.var.apply(&spec.fixed, v))
        .collect::<Result<Vec<_>>>()?;
    let reports = with_workers(workers, || evaluate_all(&cfgs))??;
    Ok(SweepTable {
        spec: spec.clone(),
        rows: xs.into_iter().zip(reports).collect(),
    })
}

/// Values on the grid `ys × xs`, rows indexed by `y`.
pub fn surface(
    fixed: &PipelineConfig64,
    (xvar, xs): (SweepVar, &[f64]),
    (yvar, ys): (SweepVar, &[f64]),
    measure: Measure,
    workers: usize,
) -> Result<Vec<Vec<f64>>> {
    let mut cfgs = Vec::with_capacity(xs.len() * ys.len());
    for &y in ys {
        let row = yvar.apply(fixed, y)?;
        for &x in xs {
            cfgs.push(xvar.apply(&row, x)?.with_measures(&[measure]));
        }
    }
    let reports = with_workers(workers, || evaluate_all(&cfgs))??;
    Ok(reports
        .chunks(xs.len())
        .map(|row| {
            row.iter()
                .map(|r| r.get(measure).unwrap_or(f64::NAN))
                .collect()
        })
        .collect())
}

/// Thermal parameters at `X` with `Γ = 1`, or `None` for no reservoir.
pub fn reservoir(nbar: Option<f64>, x: f64) -> Result<Option<ThermalParams<f64>>> {
    nbar.map(|n| ThermalParams::new(n, 1.0, Clock::Monitor(x)))
        .transpose()
}
