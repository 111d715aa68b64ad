//! CSV and JSON serialization of analysis results. Every number is a log-domain real.

use std::fmt::Write as _;

use serde::Serialize;

use crate::curve::{Analysis, ClassificationReport, FrameSample, Sample};

pub const CSV_COLUMNS: [&str; 12] = [
    "s", "x1", "x2", "x3", "speed_log", "kappa_log", "tau_log", "lambda_log", "nu_log", "mu_log", "rho_log", "perp_log",
];

pub const FRAME_COLUMNS: [&str; 13] = ["s", "x1", "x2", "x3", "t1", "t2", "t3", "n1", "n2", "n3", "b1", "b2", "b3"];

/// 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), num)
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub s: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub speed_log: f64,
    pub kappa_log: f64,
    pub tau_log: Option<f64>,
    pub lambda_log: Option<f64>,
    pub nu_log: Option<f64>,
    pub mu_log: Option<f64>,
    pub rho_log: f64,
    pub perp_log: Option<f64>,
    pub param_log: f64,
    pub t: Option<[f64; 3]>,
    pub n: Option<[f64; 3]>,
    pub b: Option<[f64; 3]>,
}

impl Row {
    pub fn from_sample(s: &Sample) -> Row {
        let x = s.position.logs();
        let f = s.frenet();
        let d = s.decomposition();
        Row {
            s: s.s.log(),
            x1: x[0],
            x2: x[1],
            x3: x[2],
            speed_log: s.speed.log(),
            kappa_log: s.kappa.log(),
            tau_log: f.map(|f| f.tau.log()),
            lambda_log: d.map(|d| d.lambda.log()),
            nu_log: d.map(|d| d.nu.log()),
            mu_log: d.map(|d| d.mu.log()),
            rho_log: x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            perp_log: d.map(|d| d.perp_norm.log()),
            param_log: s.param.log(),
            t: f.map(|f| f.t.logs()),
            n: f.map(|f| f.n.logs()),
            b: f.map(|f| f.b.logs()),
        }
    }

    fn csv(&self) -> String {
        [
            num(self.s),
            num(self.x1),
            num(self.x2),
            num(self.x3),
            num(self.speed_log),
            num(self.kappa_log),
            opt(self.tau_log),
            opt(self.lambda_log),
            opt(self.nu_log),
            opt(self.mu_log),
            num(self.rho_log),
            opt(self.perp_log),
        ]
        .join(",")
    }
}

#[derive(Serialize)]
struct AnalysisDoc<'a> {
    curve: &'a str,
    backend: &'static str,
    reparametrized: bool,
    components: Option<[String; 3]>,
    samples: Vec<Row>,
}

pub fn analysis_csv(a: &Analysis) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for s in &a.samples {
        out.push_str(&Row::from_sample(s).csv());
        out.push('\n');
    }
    out
}

pub fn analysis_json(a: &Analysis, components: Option<[String; 3]>) -> String {
    let doc = AnalysisDoc {
        curve: a.curve.label(),
        backend: a.options.backend.name(),
        reparametrized: a.curve.is_arc_length(),
        components,
        samples: a.samples.iter().map(Row::from_sample).collect(),
    };
    to_json(&doc)
}

pub fn report_json(r: &ClassificationReport) -> String {
    to_json(r)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct FrameRow {
    s: f64,
    x: [f64; 3],
    t: [f64; 3],
    n: [f64; 3],
    b: [f64; 3],
}

#[derive(Serialize)]
struct FrameDoc {
    step: f64,
    max_correction: f64,
    samples: Vec<FrameRow>,
}

fn frame_row(f: &FrameSample) -> FrameRow {
    FrameRow { s: f.s.log(), x: f.x.logs(), t: f.t.logs(), n: f.n.logs(), b: f.b.logs() }
}

pub fn frames_csv(samples: &[&FrameSample]) -> String {
    let mut out = FRAME_COLUMNS.join(",");
    out.push('\n');
    for f in samples {
        let r = frame_row(f);
        let mut line = num(r.s);
        for v in [r.x, r.t, r.n, r.b].iter().flatten() {
            let _ = write!(line, ",{}", num(*v));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn frames_json(samples: &[&FrameSample], step: f64, max_correction: f64) -> String {
    to_json(&FrameDoc { step, max_correction, samples: samples.iter().map(|f| frame_row(f)).collect() })
}
