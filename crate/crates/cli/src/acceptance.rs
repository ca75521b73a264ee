//! Acceptance criteria 1–9, each reduced to a single pass/fail verdict with
//! the worst observed deviation. Shared by `xstate verify` and the
//! acceptance test target.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};
use std::fmt;
use std::path::Path;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use xstate_core::correlations::{
    gmqd_bruteforce, gmqd_closed, min_bruteforce, min_closed, quantum_discord, Measure,
    MIN_GRID_DENSITY,
};
use xstate_core::linalg::Matrix4;
use xstate_core::noise::{kraus_set, ChannelKind, ChannelSpec};
use xstate_core::pipeline::{evaluate, prepare_state, PipelineConfig, StageOrder, StateSpec};
use xstate_core::relativistic::{rindler_embed_and_trace, unruh_transform_closed, Acceleration};
use xstate_core::states::{make_x_state, validate_density_matrix, StatePreset, XStateParams};
use xstate_core::thermal::{
    integrate_lindblad_converged, lindblad_rhs, thermal_evolve_closed, thermal_fixed_point,
    ThermalParams,
};
use xstate_core::PipelineConfig64;

use crate::figures::{self, FigureOptions, FIGURES};
use crate::kink::detect_kink;
use crate::sweep::{reservoir, sweep, SweepSpec, SweepVar};

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag}  criterion {}: {} — {}",
            self.id, self.title, self.detail
        )
    }
}

fn verdict(id: u8, title: &'static str, passed: bool, detail: String) -> Verdict {
    Verdict {
        id,
        title,
        passed,
        detail,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_physical_params(rng: &mut ChaCha8Rng) -> XStateParams<f64> {
    loop {
        let p = XStateParams::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        )
        .expect("coefficients drawn inside [-1, 1]");
        if p.is_physical() {
            return p;
        }
    }
}

fn random_pipeline(rng: &mut ChaCha8Rng) -> PipelineConfig64 {
    let kind = ChannelKind::ALL[rng.gen_range(0..3)];
    let mut cfg = PipelineConfig::new(StateSpec::Explicit(random_physical_params(rng)))
        .with_r(Acceleration::new(rng.gen_range(0.0..=FRAC_PI_4)).unwrap())
        .with_channel(Some(
            ChannelSpec::new(kind, rng.gen_range(0.0..=1.0)).unwrap(),
        ))
        .with_thermal(Some(
            ThermalParams::monitor(rng.gen_range(0.0..=2.0), rng.gen_range(0.0..=1.0)).unwrap(),
        ));
    if rng.gen_bool(0.5) {
        cfg.order = StageOrder::ThermalThenChannel;
    }
    cfg
}

/// Completeness of every Kraus set on 101 values of `p`.
pub fn kraus_completeness() -> Verdict {
    let mut worst = 0.0f64;
    for kind in ChannelKind::ALL {
        for i in 0..=100 {
            let spec = ChannelSpec::new(kind, i as f64 / 100.0).unwrap();
            worst = worst.max(kraus_set(&spec).completeness_defect());
        }
    }
    verdict(
        1,
        "Kraus completeness",
        worst <= 1e-12,
        format!("worst ‖ΣM†M − I‖ = {worst:.2e} (tol 1e-12)"),
    )
}

/// Randomized full pipelines stay valid X-form density matrices.
pub fn cptp_sanity() -> Verdict {
    let mut rng = rng(0xC0FFEE);
    let (mut tr, mut herm, mut eig, mut xres) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut errors = 0;
    for _ in 0..1000 {
        match prepare_state(&random_pipeline(&mut rng)) {
            Ok(rho) => {
                let v = validate_density_matrix(rho.matrix());
                tr = tr.max(v.trace_deviation);
                herm = herm.max(v.hermiticity_residue);
                eig = eig.min(v.min_eigenvalue);
                xres = xres.max(v.x_form_residue);
            }
            Err(_) => errors += 1,
        }
    }
    let ok = errors == 0 && tr <= 1e-10 && herm <= 1e-10 && eig >= -1e-9 && xres == 0.0;
    verdict(
        2,
        "CPTP sanity over 1000 random pipelines",
        ok,
        format!("trace dev {tr:.1e}, hermiticity {herm:.1e}, min eig {eig:.1e}, X-form residue {xres:.1e}, errors {errors}"),
    )
}

/// Closed-form Unruh map against explicit embedding and partial trace.
pub fn unruh_oracle() -> Verdict {
    let mut worst = 0.0f64;
    for preset in StatePreset::ALL {
        let p = preset.params::<f64>();
        let rho = make_x_state(&p, true).unwrap();
        for i in 0..=20 {
            let r = Acceleration::new(FRAC_PI_4 * i as f64 / 20.0).unwrap();
            let a = unruh_transform_closed(&p, r);
            let b = rindler_embed_and_trace(rho.matrix(), r);
            worst = worst.max(a.max_abs_diff(&b));
        }
    }
    verdict(
        3,
        "Unruh oracle",
        worst <= 1e-12,
        format!("max elementwise gap {worst:.2e} over 4 presets × 21 r (tol 1e-12)"),
    )
}

/// Closed-form thermal evolution against RK4, and stationarity of the fixed point.
pub fn thermal_oracle() -> Verdict {
    let mut worst = 0.0f64;
    let mut failures = 0;
    for preset in StatePreset::ALL {
        for r in [0.0, FRAC_PI_8, FRAC_PI_4] {
            let rho = unruh_transform_closed(&preset.params(), Acceleration::new(r).unwrap())
                .into_matrix();
            for nbar in [0.01, 0.1, 0.3, 1.0] {
                for t in [0.1, 0.5, 1.0, 3.0] {
                    let tp = ThermalParams::timed(nbar, 1.0, t).unwrap();
                    match (
                        thermal_evolve_closed(&rho, &tp),
                        integrate_lindblad_converged(&rho, &tp, 0.01),
                    ) {
                        (Ok(a), Ok(b)) => worst = worst.max(a.max_abs_diff(&b)),
                        _ => failures += 1,
                    }
                }
            }
        }
    }
    let mut fixed = 0.0f64;
    for nbar in [0.0, 0.01, 0.1, 0.3, 1.0] {
        let fp = thermal_fixed_point(nbar);
        // the X = 0 state of the closed form must coincide with the fixed point
        let end = thermal_evolve_closed(fp.matrix(), &ThermalParams::monitor(nbar, 0.0).unwrap())
            .unwrap();
        fixed = fixed.max(lindblad_rhs(end.matrix(), nbar, 1.0).max_abs_diff(&Matrix4::zeros()));
    }
    verdict(
        4,
        "Thermal oracle",
        failures == 0 && worst <= 1e-6 && fixed <= 1e-12,
        format!("closed vs RK4 {worst:.2e} (tol 1e-6) on 192 points, fixed-point residual {fixed:.1e} (tol 1e-12), failures {failures}"),
    )
}

/// `G G† / tr G G†` with `G` complex Gaussian: a generic full-rank state.
fn ginibre_state(rng: &mut ChaCha8Rng) -> Matrix4<f64> {
    let mut g = || -> f64 { StandardNormal.sample(&mut *rng) };
    let rows: [[Complex<f64>; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| Complex::new(g(), g())));
    let m = Matrix4::from_rows(rows);
    let m = m * m.adjoint();
    m.scale(1.0 / m.trace().re)
}

/// Closed-form GMQD and MIN against measurement brute force.
pub fn measure_oracles() -> Verdict {
    let mut rng = rng(0x5EED);
    let (mut g, mut m) = (0.0f64, 0.0f64);
    let mut with_x = 0;
    for i in 0..200 {
        let rho = match i % 4 {
            // generic states, no X structure
            0 | 1 => ginibre_state(&mut rng),
            // local Bloch vector from amplitude damping
            2 => {
                let mut cfg = random_pipeline(&mut rng);
                let p = rng.gen_range(0.05..=0.95);
                cfg.channel = Some(ChannelSpec::new(ChannelKind::AmplitudeDamping, p).unwrap());
                prepare_state(&cfg).unwrap().into_matrix()
            }
            // Bell-diagonal, x = 0: the MIN search runs over the whole sphere
            _ => make_x_state(&random_physical_params(&mut rng), false)
                .unwrap()
                .into_matrix(),
        };
        if xstate_core::linalg::fano_decompose(&rho)
            .unwrap()
            .x_norm_sq()
            .sqrt()
            > 1e-9
        {
            with_x += 1;
        }
        g = g.max(
            (gmqd_closed(&rho).unwrap() - gmqd_bruteforce(&rho, MIN_GRID_DENSITY).unwrap().value)
                .abs(),
        );
        m = m.max(
            (min_closed(&rho).unwrap() - min_bruteforce(&rho, MIN_GRID_DENSITY).unwrap().value)
                .abs(),
        );
    }
    verdict(
        5,
        "Measure oracles",
        g <= 1e-4 && m <= 1e-4,
        format!("max |GMQD gap| {g:.1e}, max |MIN gap| {m:.1e} (tol 1e-4) on 200 states, {with_x} with x ≠ 0"),
    )
}

/// Anchor values derived by hand.
pub fn anchors() -> Verdict {
    let mut bad = Vec::new();
    let mut check = |name: &str, got: f64, want: f64, tol: f64| {
        if (got - want).abs() > tol {
            bad.push(format!("{name}={got} (want {want})"));
        }
    };
    let state = |p: StatePreset, r: f64| {
        unruh_transform_closed(&p.params(), Acceleration::new(r).unwrap()).into_matrix()
    };
    for (label, p, r, g, m) in [
        ("bell", StatePreset::Bell, 0.0, 0.5, 0.5),
        ("werner", StatePreset::Werner, 0.0, 0.32, 0.32),
        ("bell@π/4", StatePreset::Bell, FRAC_PI_4, 0.1875, 0.25),
    ] {
        let rho = state(p, r);
        check(
            &format!("{label} gmqd"),
            gmqd_closed(&rho).unwrap(),
            g,
            1e-9,
        );
        check(&format!("{label} min"), min_closed(&rho).unwrap(), m, 1e-9);
        check(
            &format!("{label} gmqd brute"),
            gmqd_bruteforce(&rho, MIN_GRID_DENSITY).unwrap().value,
            g,
            1e-4,
        );
        check(
            &format!("{label} min brute"),
            min_bruteforce(&rho, MIN_GRID_DENSITY).unwrap().value,
            m,
            1e-4,
        );
    }
    check(
        "bell discord",
        quantum_discord(&state(StatePreset::Bell, 0.0), MIN_GRID_DENSITY)
            .unwrap()
            .value,
        1.0,
        1e-4,
    );
    for p in StatePreset::ALL {
        for r in [0.0, FRAC_PI_4] {
            let cfg = PipelineConfig64::preset(p)
                .with_unchecked(true)
                .with_r(Acceleration::new(r).unwrap())
                .with_channel(Some(
                    ChannelSpec::new(ChannelKind::Depolarizing, 1.0).unwrap(),
                ))
                .with_measures(&Measure::ALL);
            let rep = evaluate(&cfg).unwrap();
            for m in Measure::ALL {
                check(&format!("{p} dep p=1 {m}"), rep.get(m).unwrap(), 0.0, 1e-9);
            }
        }
    }
    let ok = bad.is_empty();
    let detail = if ok {
        "all 27 anchors within tolerance".into()
    } else {
        bad.join("; ")
    };
    verdict(6, "Derived anchor values", ok, detail)
}

/// `f(p) = f(1 − p)` under phase flip for the full pipeline.
pub fn phase_flip_palindrome() -> Verdict {
    let mut worst = 0.0f64;
    for preset in StatePreset::ALL {
        for r in [0.0, FRAC_PI_4] {
            for nbar in [0.01, 0.1] {
                for x in [0.3, 0.7] {
                    let at = |p: f64| {
                        let cfg = PipelineConfig64::preset(preset)
                            .with_unchecked(true)
                            .with_r(Acceleration::new(r).unwrap())
                            .with_channel(Some(
                                ChannelSpec::new(ChannelKind::PhaseFlip, p).unwrap(),
                            ))
                            .with_thermal(reservoir(Some(nbar), x).unwrap());
                        evaluate(&cfg).unwrap()
                    };
                    for i in 0..=50 {
                        let p = i as f64 / 100.0;
                        let (a, b) = (at(p), at(1.0 - p));
                        worst = worst.max((a.gmqd.unwrap() - b.gmqd.unwrap()).abs());
                        worst = worst.max((a.min_nl.unwrap() - b.min_nl.unwrap()).abs());
                    }
                }
            }
        }
    }
    verdict(
        7,
        "Phase-flip palindrome",
        worst <= 1e-12,
        format!("max |f(p) − f(1−p)| = {worst:.1e} (tol 1e-12)"),
    )
}

fn gmqd_vs_x(cfg: PipelineConfig64) -> Vec<f64> {
    let spec = SweepSpec::new(
        SweepVar::X,
        0.0,
        1.0,
        100,
        cfg.with_measures(&[Measure::Gmqd]),
    )
    .unwrap();
    sweep(&spec, 0).unwrap().column(Measure::Gmqd)
}

/// The four qualitative claims read off the figures.
pub fn figure_claims() -> Verdict {
    let mut parts = Vec::new();

    // (a) GMQD(r) non-increasing for noiseless presets
    let mut rises = 0.0f64;
    for p in [
        StatePreset::Bell,
        StatePreset::Werner,
        StatePreset::GeneralFig4,
    ] {
        let spec = SweepSpec::new(
            SweepVar::R,
            0.0,
            FRAC_PI_4,
            100,
            PipelineConfig64::preset(p),
        )
        .unwrap();
        let col = sweep(&spec, 0).unwrap().column(Measure::Gmqd);
        rises = rises.max(col.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max));
    }
    let a = rises <= 1e-15;
    parts.push((a, format!("(a) largest GMQD rise along r {rises:.1e}")));

    // (b) kink at n̄ = 0.01, none at n̄ = 0.5
    let kink_at = |nbar: f64| {
        let cfg = PipelineConfig64::preset(StatePreset::GeneralFig4)
            .with_thermal(reservoir(Some(nbar), 1.0).unwrap());
        detect_kink(&gmqd_vs_x(cfg)).unwrap()
    };
    let (lo, hi) = (kink_at(0.01), kink_at(0.5));
    let b = lo.fires() && !hi.fires();
    parts.push((
        b,
        format!(
            "(b) n̄=0.01 ratio {:.1} at X={} fires={}, n̄=0.5 ratio {:.1} at X={} fires={}",
            lo.ratio(),
            lo.index as f64 / 100.0,
            lo.fires(),
            hi.ratio(),
            hi.index as f64 / 100.0,
            hi.fires()
        ),
    ));

    // (c) no kink under depolarizing noise, at the surface-figure parameters
    let mut fired = Vec::new();
    for nbar in [0.01, 0.1] {
        for r in [0.0, FRAC_PI_4] {
            let cfg = PipelineConfig64::preset(StatePreset::GeneralFig4)
                .with_r(Acceleration::new(r).unwrap())
                .with_channel(Some(
                    ChannelSpec::new(ChannelKind::Depolarizing, 0.5).unwrap(),
                ))
                .with_thermal(reservoir(Some(nbar), 1.0).unwrap());
            let k = detect_kink(&gmqd_vs_x(cfg)).unwrap();
            if k.fires() {
                fired.push(format!(
                    "n̄={nbar} r={} (ratio {:.1} at X={})",
                    if r == 0.0 { "0" } else { "π/4" },
                    k.ratio(),
                    k.index as f64 / 100.0
                ));
            }
        }
    }
    let c = fired.is_empty();
    parts.push((
        c,
        if c {
            "(c) no depolarizing curve kinks".into()
        } else {
            format!("(c) kinks: {}", fired.join(", "))
        },
    ));

    // (d) werner at least as robust as general-fig4
    let at = |p: StatePreset| {
        let cfg = PipelineConfig64::preset(p)
            .with_r(Acceleration::new(FRAC_PI_4).unwrap())
            .with_channel(Some(
                ChannelSpec::new(ChannelKind::Depolarizing, 0.5).unwrap(),
            ))
            .with_thermal(reservoir(Some(0.1), 0.5).unwrap());
        evaluate(&cfg).unwrap().gmqd.unwrap()
    };
    let (w, g) = (at(StatePreset::Werner), at(StatePreset::GeneralFig4));
    let d = w >= g;
    parts.push((d, format!("(d) werner {w:.4e} vs general-fig4 {g:.4e}")));

    let passed = parts.iter().all(|p| p.0);
    let detail = parts
        .into_iter()
        .map(|(ok, s)| format!("{s} [{}]", if ok { "ok" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("; ");
    verdict(8, "Qualitative figure claims", passed, detail)
}

/// Figures written twice — serially and with every core — compare byte for byte.
pub fn determinism(scratch: &Path) -> Verdict {
    let serial = FigureOptions {
        workers: 1,
        ..FigureOptions::default()
    };
    let parallel = FigureOptions {
        workers: std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
            .max(8),
        ..FigureOptions::default()
    };
    let mut mismatched = Vec::new();
    let mut count = 0;
    for n in FIGURES {
        let a = scratch.join(format!("serial/{n}"));
        let b = scratch.join(format!("parallel/{n}"));
        let (pa, pb) = match (
            figures::write(n, &a, &serial),
            figures::write(n, &b, &parallel),
        ) {
            (Ok(pa), Ok(pb)) => (pa, pb),
            (Err(e), _) | (_, Err(e)) => {
                return verdict(9, "Determinism", false, format!("figure {n}: {e}"))
            }
        };
        for (x, y) in pa.iter().zip(&pb) {
            count += 1;
            if std::fs::read(x).ok() != std::fs::read(y).ok() {
                mismatched.push(x.file_name().unwrap().to_string_lossy().into_owned());
            }
        }
        if pa.len() != pb.len() {
            mismatched.push(format!("figure {n} file count"));
        }
    }
    verdict(
        9,
        "Determinism",
        mismatched.is_empty(),
        format!(
            "{count} files compared across 1 and {} workers, {} differ",
            parallel.workers,
            mismatched.len()
        ),
    )
}

/// Criteria 1–8 plus determinism in a fresh temporary directory.
pub fn run_all() -> Vec<Verdict> {
    let mut out = vec![
        kraus_completeness(),
        cptp_sanity(),
        unruh_oracle(),
        thermal_oracle(),
        measure_oracles(),
        anchors(),
        phase_flip_palindrome(),
        figure_claims(),
    ];
    out.push(match tempfile::tempdir() {
        Ok(dir) => determinism(dir.path()),
        Err(e) => verdict(
            9,
            "Determinism",
            false,
            format!("no scratch directory: {e}"),
        ),
    });
    out
}
