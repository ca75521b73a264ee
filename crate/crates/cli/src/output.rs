//! CSV and JSON rendering. Every CSV opens with `#` comment lines that
//! record the full configuration, so a file can be regenerated from itself.

use std::fmt::Write;

use serde_json::{json, Map, Value};
use xstate_core::correlations::{CorrelationReport, Measure};
use xstate_core::thermal::Clock;
use xstate_core::PipelineConfig64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Shortest round-trip text; scientific notation outside `[1e-4, 1e6)`.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e6).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `key: value` pairs describing a configuration.
pub fn describe(cfg: &PipelineConfig64) -> Vec<(String, String)> {
    let p = cfg.state.params();
    let mut out = vec![
        ("state".into(), cfg.state.label()),
        (
            "c1,c2,c3".into(),
            format!("{},{},{}", num(p.c1), num(p.c2), num(p.c3)),
        ),
        ("r".into(), num(cfg.r.r())),
    ];
    out.push((
        "channel".into(),
        match &cfg.channel {
            Some(ch) => format!("{} p={}", ch.kind().token(), num(ch.p())),
            None => "none".into(),
        },
    ));
    out.push((
        "thermal".into(),
        match &cfg.thermal {
            Some(tp) => match tp.clock() {
                Clock::Monitor(x) => format!("nbar={} X={}", num(tp.nbar()), num(x)),
                Clock::Time(t) => format!(
                    "nbar={} gamma={} t={}",
                    num(tp.nbar()),
                    num(tp.gamma()),
                    num(t)
                ),
            },
            None => "none".into(),
        },
    ));
    out.push(("order".into(), cfg.order.token().into()));
    out.push(("unchecked".into(), cfg.unchecked.to_string()));
    if cfg.measures.contains(&Measure::Discord) {
        out.push(("discord grid".into(), cfg.grid_density.to_string()));
    }
    out
}

/// Warning for configurations whose initial state is not a density matrix.
pub fn nonphysical_warning(cfg: &PipelineConfig64) -> Option<String> {
    let p = cfg.state.params();
    (!p.is_physical()).then(|| {
        format!(
            "WARNING: initial state {} is nonphysical (min eigenvalue {}); values are formal",
            cfg.state.label(),
            num(p.min_eigenvalue())
        )
    })
}

/// Comment block shared by all CSV outputs.
#[derive(Clone, Debug, Default)]
pub struct Header {
    lines: Vec<String>,
}

impl Header {
    pub fn new(title: &str) -> Self {
        let mut h = Self::default();
        h.line(format!("xstate {VERSION}"));
        h.line(title.to_string());
        h
    }

    pub fn line(&mut self, s: String) -> &mut Self {
        self.lines.push(s);
        self
    }

    pub fn kv(&mut self, k: &str, v: &str) -> &mut Self {
        self.line(format!("{k}: {v}"))
    }

    pub fn config(&mut self, cfg: &PipelineConfig64) -> &mut Self {
        for (k, v) in describe(cfg) {
            self.kv(&k, &v);
        }
        if let Some(w) = nonphysical_warning(cfg) {
            self.line(w);
        }
        self
    }

    pub fn render(&self) -> String {
        self.lines.iter().fold(String::new(), |mut s, l| {
            let _ = writeln!(s, "# {l}");
            s
        })
    }
}

/// Two-column curve: `var,measure`.
pub fn curve_csv(header: &Header, var: &str, measure: &str, xs: &[f64], ys: &[f64]) -> String {
    let mut s = header.render();
    let _ = writeln!(s, "{var},{measure}");
    for (x, y) in xs.iter().zip(ys) {
        let _ = writeln!(s, "{},{}", num(*x), num(*y));
    }
    s
}

/// Grid with a header row of `x` values and a leading column of `y` values.
pub fn grid_csv(
    header: &Header,
    (xname, xs): (&str, &[f64]),
    (yname, ys): (&str, &[f64]),
    z: &[Vec<f64>],
) -> String {
    let mut s = header.render();
    s.push_str(&format!("{yname}\\{xname}"));
    for x in xs {
        s.push(',');
        s.push_str(&num(*x));
    }
    s.push('\n');
    for (y, row) in ys.iter().zip(z) {
        s.push_str(&num(*y));
        for v in row {
            s.push(',');
            s.push_str(&num(*v));
        }
        s.push('\n');
    }
    s
}

/// Multi-column sweep table: `var,<measures…>`.
pub fn table_csv(
    header: &Header,
    var: &str,
    measures: &[Measure],
    rows: &[(f64, CorrelationReport<f64>)],
) -> String {
    let mut s = header.render();
    s.push_str(var);
    for m in measures {
        s.push(',');
        s.push_str(m.token());
    }
    s.push('\n');
    for (x, r) in rows {
        s.push_str(&num(*x));
        for m in measures {
            s.push(',');
            s.push_str(&r.get(*m).map(num).unwrap_or_default());
        }
        s.push('\n');
    }
    s
}

pub fn report_json(measures: &[Measure], r: &CorrelationReport<f64>) -> Value {
    let mut m = Map::new();
    for k in measures {
        m.insert(k.token().into(), json!(r.get(*k)));
    }
    let mut diag = Map::new();
    diag.insert("x_norm".into(), json!(r.diagnostics.x_norm));
    diag.insert(
        "min_branch".into(),
        json!(format!("{:?}", r.diagnostics.min_branch)),
    );
    if let Some(opt) = r.diagnostics.discord_optimum {
        diag.insert(
            "discord_axis".into(),
            json!({"theta": opt.direction.theta(), "phi": opt.direction.phi(), "grid_residual": opt.grid_residual()}),
        );
    }
    m.insert("diagnostics".into(), Value::Object(diag));
    Value::Object(m)
}

pub fn config_json(cfg: &PipelineConfig64) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(VERSION));
    for (k, v) in describe(cfg) {
        m.insert(k, json!(v));
    }
    if let Some(w) = nonphysical_warning(cfg) {
        m.insert("warning".into(), json!(w));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use xstate_core::states::StatePreset;

    #[test]
    fn number_format_round_trips() {
        for v in [
            0.0,
            0.5,
            1.0,
            0.1875,
            1e-33,
            2.5e-7,
            123456.789,
            std::f64::consts::FRAC_PI_4,
        ] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1e-33), "1e-33");
    }

    #[test]
    fn warning_only_for_nonphysical_state() {
        let good = PipelineConfig64::preset(StatePreset::Werner);
        let bad = PipelineConfig64::preset(StatePreset::General).with_unchecked(true);
        assert!(nonphysical_warning(&good).is_none());
        let mut h = Header::new("t");
        h.config(&bad);
        assert!(h.render().lines().any(|l| l.starts_with("# WARNING")));
        assert!(h.render().lines().all(|l| l.starts_with('#')));
    }

    #[test]
    fn grid_layout() {
        let s = grid_csv(
            &Header::default(),
            ("r", &[0.0, 1.0]),
            ("X", &[0.5]),
            &[vec![0.25, 0.125]],
        );
        assert_eq!(s, "X\\r,0,1\n0.5,0.25,0.125\n");
    }
}
