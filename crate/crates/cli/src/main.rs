use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xstate_cli::acceptance;
use xstate_cli::figures::{self, FigureOptions};
use xstate_cli::output::{self, Header};
use xstate_cli::sweep::{sweep, SweepSpec, SweepVar};
use xstate_core::correlations::{Measure, MIN_GRID_DENSITY};
use xstate_core::noise::ChannelSpec;
use xstate_core::pipeline::{evaluate, PipelineConfig, StateSpec};
use xstate_core::relativistic::Acceleration;
use xstate_core::states::{StatePreset, XStateParams};
use xstate_core::thermal::ThermalParams;
use xstate_core::{Error, PipelineConfig64, Result};

#[derive(Parser)]
#[command(
    name = "xstate",
    version,
    about = "Quantum correlations of two-qubit X-states under acceleration, noise and a thermal bath"
)]
struct Cli {
    /// Worker threads for sweeps and figures (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the requested measures at a single point
    Compute {
        #[command(flatten)]
        fixed: Fixed,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sweep one parameter over an inclusive range
    Sweep {
        #[arg(long)]
        var: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        fixed: Fixed,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate the data files and plot script of figure 1–6
    Figure {
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Samples per curve
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Samples per surface axis
        #[arg(long, default_value_t = 51)]
        surface_points: usize,
    },
    /// Run the oracle and invariant checks and print a pass/fail table
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Fixed {
    /// Preset name (bell, werner, general, general-fig4) or c1,c2,c3
    #[arg(long)]
    state: String,
    /// Acceleration parameter r in [0, π/4]; accepts forms like pi/4
    #[arg(long)]
    r: Option<String>,
    /// Noise channel: ad, dep or pf
    #[arg(long, requires = "p")]
    channel: Option<String>,
    /// Channel strength in [0, 1]
    #[arg(long, requires = "channel")]
    p: Option<String>,
    /// Mean reservoir occupation
    #[arg(long)]
    nbar: Option<String>,
    /// Monitor parameter exp(−Γ(2n̄+1)t) in [0, 1]
    #[arg(long = "X", requires = "nbar", conflicts_with = "t")]
    x: Option<String>,
    /// Elapsed time
    #[arg(long, requires_all = ["nbar", "gamma"])]
    t: Option<String>,
    /// Spontaneous emission rate
    #[arg(long, requires = "t")]
    gamma: Option<String>,
    /// Stage order: cn-th (channel, then reservoir) or th-cn
    #[arg(long, default_value = "cn-th")]
    order: String,
    /// Comma-separated measures: gmqd, min, discord
    #[arg(long)]
    measure: Option<String>,
    /// Accept a nonphysical initial state
    #[arg(long)]
    unchecked: bool,
    /// θ resolution of the discord search
    #[arg(long, default_value_t = MIN_GRID_DENSITY)]
    grid: usize,
}

/// A float, or a multiple of π written `pi`, `pi/4`, `2*pi`, `0.5pi`.
fn parse_real(s: &str) -> Result<f64> {
    let bad = || Error::invalid(format!("cannot read '{s}' as a number"));
    let t = s.trim();
    let v = if let Some(i) = t.find("pi") {
        let (pre, post) = (t[..i].trim_end_matches('*').trim(), t[i + 2..].trim());
        let k = if pre.is_empty() {
            1.0
        } else {
            pre.parse::<f64>().map_err(|_| bad())?
        };
        let d = match post.strip_prefix('/') {
            Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
            None if post.is_empty() => 1.0,
            None => return Err(bad()),
        };
        k * PI / d
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn opt_real(s: &Option<String>) -> Result<Option<f64>> {
    s.as_deref().map(parse_real).transpose()
}

fn parse_measures(s: &str) -> Result<Vec<Measure>> {
    let mut out: Vec<Measure> = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let m: Measure = tok.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::invalid(
            "--measure needs at least one of gmqd, min, discord",
        ));
    }
    Ok(out)
}

fn parse_state(s: &str) -> Result<StateSpec<f64>> {
    if let Ok(p) = s.parse::<StatePreset>() {
        return Ok(StateSpec::Preset(p));
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::invalid(format!(
            "state '{s}' is neither a preset nor c1,c2,c3"
        )));
    }
    let c = parts
        .iter()
        .map(|p| parse_real(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(StateSpec::Explicit(XStateParams::new(c[0], c[1], c[2])?))
}

impl Fixed {
    /// `need_r` is false when the sweep itself supplies r.
    fn config(&self, need_r: bool, default_measures: Option<&str>) -> Result<PipelineConfig64> {
        let mut cfg = PipelineConfig::new(parse_state(&self.state)?);
        match opt_real(&self.r)? {
            Some(r) => cfg.r = Acceleration::new(r)?,
            None if need_r => return Err(Error::invalid("--r is required")),
            None => {}
        }
        if let (Some(kind), Some(p)) = (&self.channel, opt_real(&self.p)?) {
            cfg.channel = Some(ChannelSpec::new(kind.parse()?, p)?);
        }
        if let Some(nbar) = opt_real(&self.nbar)? {
            cfg.thermal = Some(
                match (
                    opt_real(&self.x)?,
                    opt_real(&self.t)?,
                    opt_real(&self.gamma)?,
                ) {
                    (Some(x), None, None) => ThermalParams::monitor(nbar, x)?,
                    (None, Some(t), Some(g)) => ThermalParams::timed(nbar, g, t)?,
                    // a sweep over X fills the clock in
                    _ => ThermalParams::monitor(nbar, 1.0)?,
                },
            );
        }
        cfg.order = self.order.parse()?;
        let measures = match (&self.measure, default_measures) {
            (Some(m), _) => m.clone(),
            (None, Some(d)) => d.to_string(),
            (None, None) => return Err(Error::invalid("--measure is required")),
        };
        cfg.measures = parse_measures(&measures)?;
        cfg.unchecked = self.unchecked;
        cfg.grid_density = self.grid;
        Ok(cfg)
    }

    fn has_clock(&self) -> bool {
        self.x.is_some() || self.t.is_some()
    }
}

fn warn(cfg: &PipelineConfig64) {
    if let Some(w) = output::nonphysical_warning(cfg) {
        eprintln!("{w}");
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Compute { fixed, format } => {
            if fixed.nbar.is_some() && !fixed.has_clock() {
                return Err(Error::invalid("--nbar needs --X or --t with --gamma"));
            }
            let cfg = fixed.config(true, None)?;
            let rep = evaluate(&cfg)?;
            warn(&cfg);
            match format {
                Format::Csv => {
                    let mut h = Header::new("single point");
                    h.config(&cfg);
                    print!("{}", h.render());
                    let names: Vec<&str> = cfg.measures.iter().map(|m| m.token()).collect();
                    println!("{}", names.join(","));
                    let vals: Vec<String> = cfg
                        .measures
                        .iter()
                        .map(|m| output::num(rep.get(*m).unwrap()))
                        .collect();
                    println!("{}", vals.join(","));
                }
                Format::Json => {
                    let v = serde_json::json!({"config": output::config_json(&cfg), "result": output::report_json(&cfg.measures, &rep)});
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&v).expect("JSON values serialize")
                    );
                }
            }
        }
        Cmd::Sweep {
            var,
            from,
            to,
            steps,
            fixed,
            format,
            out,
        } => {
            let var: SweepVar = var.parse()?;
            let clock_swept = matches!(var, SweepVar::X);
            if fixed.nbar.is_some() && !fixed.has_clock() && !clock_swept {
                return Err(Error::invalid("--nbar needs --X or --t with --gamma"));
            }
            if var == SweepVar::Nbar && !fixed.has_clock() {
                return Err(Error::invalid(
                    "sweeping nbar needs --X or --t with --gamma",
                ));
            }
            let mut cfg = fixed.config(var != SweepVar::R, Some("gmqd,min"))?;
            if var == SweepVar::Nbar && cfg.thermal.is_none() {
                let x = opt_real(&fixed.x)?;
                cfg.thermal = match (x, opt_real(&fixed.t)?, opt_real(&fixed.gamma)?) {
                    (Some(x), ..) => Some(ThermalParams::monitor(0.0, x)?),
                    (None, Some(t), Some(g)) => Some(ThermalParams::timed(0.0, g, t)?),
                    _ => None,
                };
            }
            let spec = SweepSpec::new(var, parse_real(&from)?, parse_real(&to)?, steps, cfg)?;
            let table = sweep(&spec, cli.workers)?;
            warn(&spec.fixed);
            let text = match format {
                Format::Csv => {
                    let mut h = Header::new(&format!("sweep over {var}"));
                    h.kv(
                        "sweep",
                        &format!(
                            "{var} from {} to {} ({} points)",
                            output::num(spec.from),
                            output::num(spec.to),
                            steps + 1
                        ),
                    );
                    h.config(&spec.fixed);
                    output::table_csv(&h, var.token(), &spec.fixed.measures, &table.rows)
                }
                Format::Json => {
                    let rows: Vec<_> = table
                        .rows
                        .iter()
                        .map(|(x, r)| {
                            let mut v = output::report_json(&spec.fixed.measures, r);
                            v[var.token()] = serde_json::json!(x);
                            v
                        })
                        .collect();
                    let v = serde_json::json!({"config": output::config_json(&spec.fixed), "variable": var.token(), "rows": rows});
                    serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n"
                }
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Cmd::Figure {
            n,
            out,
            points,
            surface_points,
        } => {
            let opts = FigureOptions {
                points,
                surface_points,
                workers: cli.workers,
            };
            for p in figures::write(n, &out, &opts)? {
                println!("{}", p.display());
            }
        }
        Cmd::Verify => {
            let verdicts = acceptance::run_all();
            for v in &verdicts {
                println!("{v}");
            }
            let failed = verdicts.iter().filter(|v| !v.passed).count();
            println!(
                "{} of {} criteria passed",
                verdicts.len() - failed,
                verdicts.len()
            );
            if failed > 0 {
                return Err(Error::Integration(format!(
                    "{failed} verification criteria failed"
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) => 1,
                Error::Nonphysical { .. } => 2,
                Error::Integration(_) => 3,
            })
        }
    }
}
