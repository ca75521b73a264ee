//! Data for figures 1–6: one CSV per curve or surface plus a
//! gnuplot script that draws them.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write;
use std::fs;
use std::path::{Path, PathBuf};

use xstate_core::correlations::Measure;
use xstate_core::noise::{ChannelKind, ChannelSpec};
use xstate_core::relativistic::Acceleration;
use xstate_core::states::StatePreset;
use xstate_core::{Error, PipelineConfig64, Result};

use crate::output::{curve_csv, grid_csv, num, Header};
use crate::sweep::{linspace, reservoir, surface, sweep, SweepSpec, SweepVar};

pub const FIGURES: std::ops::RangeInclusive<usize> = 1..=6;

/// Presets drawn in the first three figures. `general` is nonphysical and
/// runs unchecked; its files carry a warning line.
const CURVE_PRESETS: [StatePreset; 3] =
    [StatePreset::Bell, StatePreset::Werner, StatePreset::General];
const NBARS_FIG4: [f64; 3] = [0.01, 0.1, 0.3];
const NBARS: [f64; 2] = [0.01, 0.1];
const CHANNELS: [ChannelKind; 3] = [
    ChannelKind::AmplitudeDamping,
    ChannelKind::Depolarizing,
    ChannelKind::PhaseFlip,
];
/// Channel strength held fixed in figures 5 and 6.
const HALF: f64 = 0.5;
/// Monitor value for the c-sweep of figure 5.
const FIG5_X: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FigureOptions {
    /// Samples per curve.
    pub points: usize,
    /// Samples per surface axis.
    pub surface_points: usize,
    /// Worker threads; `0` = one per core.
    pub workers: usize,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            points: 101,
            surface_points: 51,
            workers: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureFile {
    pub name: String,
    pub contents: String,
}

struct Curve {
    stem: String,
    panel: String,
    label: String,
    cfg: PipelineConfig64,
    var: SweepVar,
    measures: Vec<Measure>,
}

struct Surface {
    stem: String,
    cfg: PipelineConfig64,
    x: SweepVar,
    y: SweepVar,
    measure: Measure,
}

enum Plot {
    /// (panel, label, file)
    Line(String, String, String),
    Map(String),
}

fn r_tag(r: f64) -> &'static str {
    if r == 0.0 {
        "r0"
    } else {
        "rpi4"
    }
}

fn base(preset: StatePreset) -> PipelineConfig64 {
    PipelineConfig64::preset(preset).with_unchecked(preset == StatePreset::General)
}

fn channel(kind: ChannelKind, p: f64) -> Option<ChannelSpec<f64>> {
    Some(ChannelSpec::new(kind, p).expect("p in [0, 1]"))
}

fn accel(r: f64) -> Acceleration<f64> {
    Acceleration::new(r).expect("r in [0, π/4]")
}

fn curves(n: usize) -> Result<(Vec<Curve>, Vec<Surface>)> {
    let both = vec![Measure::Gmqd, Measure::Min];
    let mut cs = Vec::new();
    let mut ss = Vec::new();
    match n {
        1 => {
            for p in CURVE_PRESETS {
                cs.push(Curve {
                    stem: format!("fig1_{}", p.name()),
                    panel: "fig1".into(),
                    label: p.name().into(),
                    cfg: base(p),
                    var: SweepVar::R,
                    measures: both.clone(),
                });
            }
        }
        2 | 3 => {
            let kinds: &[ChannelKind] = if n == 2 {
                // both channels are drawn for this figure
                &[ChannelKind::AmplitudeDamping, ChannelKind::Depolarizing]
            } else {
                &[ChannelKind::PhaseFlip]
            };
            for &kind in kinds {
                for r in [0.0, FRAC_PI_4] {
                    for p in CURVE_PRESETS {
                        let tag = if n == 2 {
                            format!("fig{n}_{}_{}", kind.token(), r_tag(r))
                        } else {
                            format!("fig{n}_{}", r_tag(r))
                        };
                        cs.push(Curve {
                            stem: format!("{tag}_{}", p.name()),
                            panel: tag,
                            label: p.name().into(),
                            cfg: base(p).with_r(accel(r)).with_channel(channel(kind, 0.0)),
                            var: SweepVar::P,
                            measures: both.clone(),
                        });
                    }
                }
            }
            if n == 3 {
                for m in [Measure::Gmqd, Measure::Min] {
                    ss.push(Surface {
                        stem: format!("fig3_werner_{}_p_r", m.token()),
                        cfg: base(StatePreset::Werner)
                            .with_channel(channel(ChannelKind::PhaseFlip, 0.0)),
                        x: SweepVar::P,
                        y: SweepVar::R,
                        measure: m,
                    });
                }
            }
        }
        4 => {
            for r in [0.0, FRAC_PI_4] {
                for nbar in NBARS_FIG4 {
                    cs.push(Curve {
                        stem: format!("fig4_{}_nbar{}", r_tag(r), num(nbar)),
                        panel: format!("fig4_{}", r_tag(r)),
                        label: format!("nbar={}", num(nbar)),
                        cfg: base(StatePreset::GeneralFig4)
                            .with_r(accel(r))
                            .with_thermal(reservoir(Some(nbar), 1.0)?),
                        var: SweepVar::X,
                        measures: both.clone(),
                    });
                }
            }
        }
        5 => {
            for nbar in NBARS {
                for kind in CHANNELS {
                    cs.push(Curve {
                        stem: format!("fig5_{}_nbar{}", kind.token(), num(nbar)),
                        panel: format!("fig5_nbar{}", num(nbar)),
                        label: kind.name().into(),
                        cfg: base(StatePreset::Werner)
                            .with_channel(channel(kind, HALF))
                            .with_thermal(reservoir(Some(nbar), FIG5_X)?),
                        var: SweepVar::C,
                        measures: vec![Measure::Gmqd],
                    });
                }
            }
        }
        6 => {
            for kind in CHANNELS {
                for nbar in NBARS {
                    let cfg =
                        base(StatePreset::GeneralFig4).with_thermal(reservoir(Some(nbar), 1.0)?);
                    ss.push(Surface {
                        stem: format!("fig6_{}_nbar{}_gmqd_r_X", kind.token(), num(nbar)),
                        cfg: cfg.clone().with_channel(channel(kind, HALF)),
                        x: SweepVar::R,
                        y: SweepVar::X,
                        measure: Measure::Gmqd,
                    });
                    ss.push(Surface {
                        stem: format!("fig6_{}_nbar{}_min_p_X", kind.token(), num(nbar)),
                        cfg: cfg
                            .with_r(accel(FRAC_PI_4))
                            .with_channel(channel(kind, 0.0)),
                        x: SweepVar::P,
                        y: SweepVar::X,
                        measure: Measure::Min,
                    });
                }
            }
        }
        _ => {
            return Err(Error::invalid(format!(
                "unknown figure {n} (expected 1 to 6)"
            )))
        }
    }
    Ok((cs, ss))
}

fn gnuplot(n: usize, plots: &[Plot]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# xstate {} — figure {n}", crate::output::VERSION);
    let _ = writeln!(
        s,
        "# usage: gnuplot fig{n}.gp   (run inside this directory)"
    );
    s.push_str("set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo size 900,600\n");
    let mut i = 0;
    while i < plots.len() {
        match &plots[i] {
            Plot::Map(file) => {
                let stem = file.trim_end_matches(".csv");
                let _ = writeln!(s, "\nset output '{stem}.png'\nset title '{stem}'");
                let _ = writeln!(
                    s,
                    "plot '{file}' matrix rowheaders columnheaders with image notitle"
                );
                i += 1;
            }
            Plot::Line(panel, ..) => {
                let group: Vec<&Plot> = plots[i..]
                    .iter()
                    .take_while(|p| matches!(p, Plot::Line(q, ..) if q == panel))
                    .collect();
                let _ = writeln!(s, "\nset output '{panel}.png'\nset title '{panel}'");
                let items: Vec<String> = group
                    .iter()
                    .map(|p| match p {
                        Plot::Line(_, label, file) => {
                            format!("'{file}' using 1:2 with lines title '{label}'")
                        }
                        Plot::Map(_) => unreachable!(),
                    })
                    .collect();
                let _ = writeln!(s, "plot {}", items.join(", \\\n     "));
                i += group.len();
            }
        }
    }
    s
}

/// All files of figure `n`, in a fixed order.
pub fn render(n: usize, opts: &FigureOptions) -> Result<Vec<FigureFile>> {
    if opts.points < 2 || opts.surface_points < 2 {
        return Err(Error::invalid("figures need at least two samples per axis"));
    }
    let (cs, ss) = curves(n)?;
    let mut files = Vec::new();
    let mut plots = Vec::new();
    for c in cs {
        let (lo, hi) = c.var.domain();
        let spec = SweepSpec::new(
            c.var,
            lo,
            hi,
            opts.points - 1,
            c.cfg.clone().with_measures(&c.measures),
        )?;
        let table = sweep(&spec, opts.workers)?;
        let xs: Vec<f64> = table.rows.iter().map(|r| r.0).collect();
        for &m in &c.measures {
            let mut h = Header::new(&format!("figure {n}: {} vs {}", m.token(), c.var));
            h.kv(
                "sweep",
                &format!(
                    "{} from {} to {} ({} points)",
                    c.var,
                    num(lo),
                    num(hi),
                    opts.points
                ),
            );
            h.config(&c.cfg);
            let name = format!("{}_{}.csv", c.stem, m.token());
            plots.push(Plot::Line(
                format!("{}_{}", c.panel, m.token()),
                c.label.clone(),
                name.clone(),
            ));
            files.push(FigureFile {
                contents: curve_csv(&h, c.var.token(), m.token(), &xs, &table.column(m)),
                name,
            });
        }
    }
    for s in ss {
        let (xlo, xhi) = s.x.domain();
        let (ylo, yhi) = s.y.domain();
        let xs = linspace(xlo, xhi, opts.surface_points - 1);
        let ys = linspace(ylo, yhi, opts.surface_points - 1);
        let z = surface(&s.cfg, (s.x, &xs), (s.y, &ys), s.measure, opts.workers)?;
        let mut h = Header::new(&format!(
            "figure {n}: {} over ({}, {})",
            s.measure.token(),
            s.x,
            s.y
        ));
        h.kv(
            "grid",
            &format!(
                "{} columns of {} in [{}, {}], {} rows of {} in [{}, {}]",
                xs.len(),
                s.x,
                num(xlo),
                num(xhi),
                ys.len(),
                s.y,
                num(ylo),
                num(yhi)
            ),
        );
        h.config(&s.cfg);
        let name = format!("{}.csv", s.stem);
        plots.push(Plot::Map(name.clone()));
        files.push(FigureFile {
            contents: grid_csv(&h, (s.x.token(), &xs), (s.y.token(), &ys), &z),
            name,
        });
    }
    files.push(FigureFile {
        name: format!("fig{n}.gp"),
        contents: gnuplot(n, &plots),
    });
    Ok(files)
}

/// Render figure `n` into `outdir`, creating it if needed.
pub fn write(n: usize, outdir: &Path, opts: &FigureOptions) -> Result<Vec<PathBuf>> {
    let files = render(n, opts)?;
    let io =
        |e: std::io::Error, p: &Path| Error::invalid(format!("cannot write {}: {e}", p.display()));
    fs::create_dir_all(outdir).map_err(|e| io(e, outdir))?;
    let mut paths = Vec::with_capacity(files.len());
    for f in files {
        let path = outdir.join(&f.name);
        fs::write(&path, f.contents).map_err(|e| io(e, &path))?;
        paths.push(path);
    }
    Ok(paths)
}
