mod common;

use xstate_core::correlations::Measure;
use xstate_core::noise::{ChannelKind, ChannelSpec};
use xstate_core::pipeline::{evaluate, prepare_state, PipelineConfig, StageOrder, StateSpec};
use xstate_core::relativistic::Acceleration;
use xstate_core::states::{validate_density_matrix, StatePreset, XStateParams};
use xstate_core::thermal::ThermalParams;
use xstate_core::{Error, PipelineConfig64};

fn full_config<T: xstate_core::Real>(
    preset: StatePreset,
    kind: ChannelKind,
    order: StageOrder,
) -> PipelineConfig<T> {
    let mut cfg = PipelineConfig::preset(preset)
        .with_r(Acceleration::new(T::lit(0.6)).unwrap())
        .with_channel(Some(ChannelSpec::new(kind, T::lit(0.35)).unwrap()))
        .with_thermal(Some(
            ThermalParams::monitor(T::lit(0.2), T::lit(0.6)).unwrap(),
        ))
        .with_unchecked(true);
    cfg.order = order;
    cfg
}

#[test]
fn every_stage_combination_yields_a_valid_x_state() {
    for preset in StatePreset::PHYSICAL {
        for kind in ChannelKind::ALL {
            for order in [
                StageOrder::ChannelThenThermal,
                StageOrder::ThermalThenChannel,
            ] {
                let rho = prepare_state(&full_config::<f64>(preset, kind, order)).unwrap();
                let v = validate_density_matrix(rho.matrix());
                assert!(
                    v.is_valid() && v.is_x_form(),
                    "{preset} {kind:?} {order}: {v:?}"
                );
            }
        }
    }
}

#[test]
fn single_and_double_precision_agree() {
    for preset in StatePreset::ALL {
        for kind in ChannelKind::ALL {
            let a = evaluate(&full_config::<f64>(preset, kind, StageOrder::default())).unwrap();
            let b = evaluate(&full_config::<f32>(preset, kind, StageOrder::default())).unwrap();
            assert!((a.gmqd.unwrap() - b.gmqd.unwrap() as f64).abs() < 1e-5);
            assert!((a.min_nl.unwrap() - b.min_nl.unwrap() as f64).abs() < 1e-5);
        }
    }
}

#[test]
fn explicit_parameters_match_preset() {
    let preset = PipelineConfig64::preset(StatePreset::Werner).with_measures(&Measure::ALL);
    let mut explicit = preset.clone();
    explicit.state = StateSpec::Explicit(XStateParams::new(-0.8, -0.8, -0.8).unwrap());
    assert_eq!(evaluate(&preset).unwrap(), evaluate(&explicit).unwrap());
}

#[test]
fn nonphysical_reports_min_eigenvalue() {
    let cfg = PipelineConfig64::new(StateSpec::Explicit(
        XStateParams::new(1.0, 1.0, 1.0).unwrap(),
    ));
    match evaluate(&cfg) {
        Err(Error::Nonphysical { min_eigenvalue }) => assert!((min_eigenvalue + 0.5).abs() < 1e-15),
        other => panic!("expected nonphysical error, got {other:?}"),
    }
}

#[test]
fn coarse_discord_grid_rejected() {
    let mut cfg = PipelineConfig64::preset(StatePreset::Bell).with_measures(&[Measure::Discord]);
    cfg.grid_density = 20;
    assert!(matches!(evaluate(&cfg), Err(Error::InvalidInput(_))));
}

#[test]
fn evaluation_is_deterministic() {
    let cfg = full_config::<f64>(
        StatePreset::GeneralFig4,
        ChannelKind::Depolarizing,
        StageOrder::default(),
    )
    .with_measures(&Measure::ALL);
    let a = evaluate(&cfg).unwrap();
    for _ in 0..3 {
        assert_eq!(evaluate(&cfg).unwrap(), a);
    }
}
