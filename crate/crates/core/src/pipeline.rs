//! End-to-end evaluation: initial X-state, Unruh transform, noise, thermal
//! reservoir, then the requested correlation measures.

use std::fmt;
use std::str::FromStr;

use crate::correlations::{correlation_report_for, CorrelationReport, Measure, MIN_GRID_DENSITY};
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::noise::{apply_two_qubit_channel, ChannelSpec};
use crate::relativistic::{unruh_transform_closed, Acceleration};
use crate::scalar::Real;
use crate::states::{make_x_state, StatePreset, XStateParams};
use crate::thermal::{thermal_evolve_closed, ThermalParams};

/// Order of the two noise stages; they do not commute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StageOrder {
    #[default]
    ChannelThenThermal,
    ThermalThenChannel,
}

impl StageOrder {
    pub fn token(self) -> &'static str {
        match self {
            StageOrder::ChannelThenThermal => "cn-th",
            StageOrder::ThermalThenChannel => "th-cn",
        }
    }
}

impl fmt::Display for StageOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for StageOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cn-th" => Ok(StageOrder::ChannelThenThermal),
            "th-cn" => Ok(StageOrder::ThermalThenChannel),
            _ => Err(Error::invalid(format!(
                "unknown stage order '{s}' (expected cn-th or th-cn)"
            ))),
        }
    }
}

/// Initial state: a named preset or explicit coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec<T> {
    Preset(StatePreset),
    Explicit(XStateParams<T>),
}

impl<T: Real> StateSpec<T> {
    pub fn params(&self) -> XStateParams<T> {
        match self {
            StateSpec::Preset(p) => p.params(),
            StateSpec::Explicit(p) => *p,
        }
    }

    pub fn label(&self) -> String {
        match self {
            StateSpec::Preset(p) => p.name().to_string(),
            StateSpec::Explicit(p) => format!("{},{},{}", p.c1, p.c2, p.c3),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig<T> {
    pub state: StateSpec<T>,
    pub r: Acceleration<T>,
    pub channel: Option<ChannelSpec<T>>,
    pub thermal: Option<ThermalParams<T>>,
    pub order: StageOrder,
    pub measures: Vec<Measure>,
    /// Allow nonphysical initial parameters.
    pub unchecked: bool,
    /// θ resolution of the entropic-discord search.
    pub grid_density: usize,
}

impl<T: Real> PipelineConfig<T> {
    /// Noiseless, inertial configuration reporting GMQD and MIN.
    pub fn new(state: StateSpec<T>) -> Self {
        Self {
            state,
            r: Acceleration::zero(),
            channel: None,
            thermal: None,
            order: StageOrder::default(),
            measures: vec![Measure::Gmqd, Measure::Min],
            unchecked: false,
            grid_density: MIN_GRID_DENSITY,
        }
    }

    pub fn preset(p: StatePreset) -> Self {
        Self::new(StateSpec::Preset(p))
    }

    pub fn with_r(mut self, r: Acceleration<T>) -> Self {
        self.r = r;
        self
    }

    pub fn with_channel(mut self, channel: Option<ChannelSpec<T>>) -> Self {
        self.channel = channel;
        self
    }

    pub fn with_thermal(mut self, thermal: Option<ThermalParams<T>>) -> Self {
        self.thermal = thermal;
        self
    }

    pub fn with_measures(mut self, measures: &[Measure]) -> Self {
        self.measures = measures.to_vec();
        self
    }

    pub fn with_unchecked(mut self, unchecked: bool) -> Self {
        self.unchecked = unchecked;
        self
    }
}

/// Run the state pipeline and return the final two-qubit state.
pub fn prepare_state<T: Real>(cfg: &PipelineConfig<T>) -> Result<DensityMatrix<T, 4>> {
    let params = cfg.state.params();
    make_x_state(&params, cfg.unchecked)?;
    let mut rho = unruh_transform_closed(&params, cfg.r);
    let channel = |rho: DensityMatrix<T, 4>| match &cfg.channel {
        Some(spec) => apply_two_qubit_channel(rho.matrix(), spec),
        None => rho,
    };
    let thermal = |rho: DensityMatrix<T, 4>| match &cfg.thermal {
        Some(tp) => thermal_evolve_closed(rho.matrix(), tp),
        None => Ok(rho),
    };
    rho = match cfg.order {
        StageOrder::ChannelThenThermal => thermal(channel(rho))?,
        StageOrder::ThermalThenChannel => channel(thermal(rho)?),
    };
    Ok(rho)
}

/// Run the pipeline and evaluate the requested measures.
pub fn evaluate<T: Real>(cfg: &PipelineConfig<T>) -> Result<CorrelationReport<T>> {
    if cfg.measures.is_empty() {
        return Err(Error::invalid("at least one measure must be requested"));
    }
    let rho = prepare_state(cfg)?;
    correlation_report_for(rho.matrix(), &cfg.measures, cfg.grid_density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::ChannelKind;
    use approx::assert_abs_diff_eq;

    #[test]
    fn noiseless_bell() {
        let r = evaluate(&PipelineConfig::<f64>::preset(StatePreset::Bell)).unwrap();
        assert_abs_diff_eq!(r.gmqd.unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.min_nl.unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn bell_at_infinite_acceleration() {
        let cfg = PipelineConfig::<f64>::preset(StatePreset::Bell).with_r(Acceleration::infinite());
        let r = evaluate(&cfg).unwrap();
        assert_abs_diff_eq!(r.gmqd.unwrap(), 0.1875, epsilon = 1e-12);
        assert_abs_diff_eq!(r.min_nl.unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn full_depolarization_erases_everything() {
        let cfg = PipelineConfig::<f64>::preset(StatePreset::Werner)
            .with_r(Acceleration::new(0.5).unwrap())
            .with_channel(Some(
                ChannelSpec::new(ChannelKind::Depolarizing, 1.0).unwrap(),
            ))
            .with_measures(&Measure::ALL);
        let r = evaluate(&cfg).unwrap();
        assert_abs_diff_eq!(r.gmqd.unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.min_nl.unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.discord.unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn nonphysical_preset_requires_flag() {
        let cfg = PipelineConfig::<f64>::preset(StatePreset::General);
        assert!(matches!(evaluate(&cfg), Err(Error::Nonphysical { .. })));
        assert!(evaluate(&cfg.with_unchecked(true)).is_ok());
    }

    #[test]
    fn empty_measure_list_rejected() {
        let cfg = PipelineConfig::<f64>::preset(StatePreset::Bell).with_measures(&[]);
        assert!(evaluate(&cfg).is_err());
    }

    #[test]
    fn stage_order_tokens() {
        for o in [
            StageOrder::ChannelThenThermal,
            StageOrder::ThermalThenChannel,
        ] {
            assert_eq!(o.token().parse::<StageOrder>().unwrap(), o);
        }
        assert!("both".parse::<StageOrder>().is_err());
    }

    #[test]
    fn stage_order_matters_for_amplitude_damping() {
        let base = PipelineConfig::<f64>::preset(StatePreset::GeneralFig4)
            .with_channel(Some(
                ChannelSpec::new(ChannelKind::AmplitudeDamping, 0.4).unwrap(),
            ))
            .with_thermal(Some(ThermalParams::monitor(0.3, 0.5).unwrap()));
        let a = prepare_state(&base).unwrap();
        let mut swapped = base.clone();
        swapped.order = StageOrder::ThermalThenChannel;
        let b = prepare_state(&swapped).unwrap();
        assert!(a.max_abs_diff(&b) > 1e-6);
    }

    #[test]
    fn single_precision_pipeline() {
        let cfg = PipelineConfig::<f32>::preset(StatePreset::Bell).with_r(Acceleration::infinite());
        let r = evaluate(&cfg).unwrap();
        assert!((r.gmqd.unwrap() - 0.1875).abs() < 1e-5);
    }
}
