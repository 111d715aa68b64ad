//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 numeric or domain failure.
//! Diagnostics are a single line `error[<kind>]: <message>` on the error stream.

pub mod emit;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::calculus::{expr_fn, mul_derivative, mul_derivative_fd, mul_integral, DEFAULT_LOG_STEP};
use crate::curve::{
    analyze, catalog, catalog_entries, classify, construct_rectifying, reconstruct_from_curvatures, AnalysisOptions,
    Backend, CurveProfile, Domain, ExprProfile, FrameSample, MulCurve, Reconstruction, ReconstructionSetup, MAX_STEP,
};
use crate::error::Error;
use crate::expr::Expr;
use crate::scalar::{FieldOp, MulScalar, PowerOp, TrigOp};
use crate::vector::MulVector3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

pub const MIN_SAMPLES: usize = 8;
pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "mulgeo", version, about = "Multiplicative differential geometry of space curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression or a multiplicative scalar operation.
    Eval(EvalArgs),
    /// Multiplicative derivative of an expression.
    Derive(DeriveArgs),
    /// Multiplicative integral of an expression.
    Integrate(IntegrateArgs),
    /// Per-sample Frenet apparatus and position decomposition.
    Analyze(CurveArgs),
    /// Line, planar, spherical and rectifying classification.
    Classify(CurveArgs),
    /// Rectifying curve (a ·* sec* s) ·* y(s) over a spherical curve y.
    Construct(ConstructArgs),
    /// Curve from prescribed curvature and torsion.
    Reconstruct(ReconstructArgs),
    /// Built-in curves.
    Catalog(CatalogArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Square,
    Sqrt,
    Abs,
    Cos,
    Sin,
    Tan,
    Sec,
    Arccos,
    Arctan,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, conflicts_with = "op", requires = "at")]
    expr: Option<String>,
    #[arg(long)]
    at: Option<f64>,
    #[arg(long, value_enum, requires = "a")]
    op: Option<ScalarOp>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
}

#[derive(Args, Debug)]
struct DeriveArgs {
    #[arg(long)]
    expr: String,
    /// Evaluation point; may be repeated.
    #[arg(long, required = true)]
    at: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    order: usize,
    #[arg(long, default_value = "jet")]
    backend: Backend,
    /// Log step of the finite-difference backend.
    #[arg(long, default_value_t = DEFAULT_LOG_STEP)]
    step: f64,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    #[arg(long)]
    expr: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Catalog curve name.
    #[arg(long, conflicts_with_all = ["x", "y", "z"])]
    curve: Option<String>,
    #[arg(long, requires_all = ["y", "z"])]
    x: Option<String>,
    #[arg(long, requires_all = ["x", "z"])]
    y: Option<String>,
    #[arg(long, requires_all = ["x", "y"])]
    z: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long, default_value_t = 512)]
    samples: usize,
    /// Zero-test tolerance in the log metric.
    #[arg(long, env = "MULGEO_TOL")]
    tol: Option<f64>,
    #[arg(long, default_value = "jet")]
    backend: Backend,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reparametrize by multiplicative arc length when the curve is not unit speed.
    #[arg(long)]
    reparametrize: bool,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Scale a > 1 of the construction.
    #[arg(long)]
    a: f64,
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    #[arg(long, requires = "tau", conflicts_with = "curve")]
    kappa: Option<String>,
    #[arg(long, requires = "kappa")]
    tau: Option<String>,
    /// Initial position as three comma-separated constant expressions.
    #[arg(long, requires_all = ["t0", "n0"])]
    x0: Option<String>,
    #[arg(long)]
    t0: Option<String>,
    #[arg(long)]
    n0: Option<String>,
    /// Parameter at which the initial data holds.
    #[arg(long)]
    start: Option<f64>,
    #[arg(long, default_value_t = MAX_STEP)]
    step: f64,
    #[arg(long)]
    curve: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(long, conflicts_with = "name")]
    list: bool,
    name: Option<String>,
}

/// Validated options shared by the curve subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub domain: Option<(f64, f64)>,
    pub samples: usize,
    pub tol: f64,
    pub backend: Backend,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub reparametrize: bool,
}

enum CliError {
    Usage(String),
    Numeric(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Lex { .. }
            | Error::Parse(_)
            | Error::UnknownFunction { .. }
            | Error::UnknownIdentifier { .. }
            | Error::UnknownCurve(_)
            | Error::InvalidArgument(_) => CliError::Usage(format!("[{}]: {e}", e.kind())),
            other => CliError::Numeric(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(format!("[usage]: {}", msg.into())))
}

impl RunConfig {
    fn from_args(c: &CommonArgs, default_format: Format) -> CliResult<Self> {
        if !(MIN_SAMPLES..=MAX_SAMPLES).contains(&c.samples) {
            return usage(format!("--samples must lie in [{MIN_SAMPLES}, {MAX_SAMPLES}], got {}", c.samples));
        }
        let domain = match (c.from, c.to) {
            (None, None) => None,
            (Some(a), Some(b)) if a > 0.0 && b > 0.0 && a < b => Some((a, b)),
            (Some(_), Some(_)) => return usage("--from and --to must be positive with --from < --to"),
            _ => return usage("--from and --to must be given together"),
        };
        let tol = c.tol.unwrap_or(c.backend.default_tol());
        if !(tol > 0.0 && tol.is_finite()) {
            return usage(format!("--tol must be a positive finite number, got {tol}"));
        }
        Ok(RunConfig {
            domain,
            samples: c.samples,
            tol,
            backend: c.backend,
            format: c.format.unwrap_or(default_format),
            out: c.out.clone(),
            reparametrize: c.reparametrize,
        })
    }

    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            backend: self.backend,
            tol: self.tol,
            samples: self.samples,
            trim: AnalysisOptions::default().trim,
            reparametrize: self.reparametrize,
        }
    }

    fn domain(&self) -> CliResult<Option<Domain>> {
        match self.domain {
            None => Ok(None),
            Some((a, b)) => Ok(Some(Domain::new(MulScalar::new(a)?, MulScalar::new(b)?)?)),
        }
    }
}

fn load_curve(src: &SourceArgs, cfg: &RunConfig) -> CliResult<MulCurve> {
    let domain = cfg.domain()?;
    let curve = match (&src.curve, &src.x, &src.y, &src.z) {
        (Some(name), ..) => catalog(name)?,
        (None, Some(x), Some(y), Some(z)) => {
            let Some(d) = domain else {
                return usage("expression curves need --from and --to");
            };
            MulCurve::parse("expr", [x.as_str(), y.as_str(), z.as_str()], d)?
        }
        _ => return usage("give --curve <name> or all of --x, --y, --z"),
    };
    Ok(match domain {
        Some(d) if src.curve.is_some() => curve.with_domain(d),
        _ => curve,
    })
}

fn constant_vector(text: &str, flag: &str) -> CliResult<MulVector3> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return usage(format!("--{flag} needs three comma-separated values"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(parts) {
        let e: Expr = p.trim().parse()?;
        if !e.is_constant() {
            return usage(format!("--{flag} components must be constants"));
        }
        *slot = e.eval(1.0)?;
    }
    Ok(MulVector3::from_values(v)?)
}

fn scalar(v: f64) -> CliResult<MulScalar> {
    Ok(MulScalar::new(v)?)
}

fn emit(out: &mut dyn Write, cfg_out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match cfg_out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult<()> {
    let value = match (&a.expr, a.op) {
        (Some(src), None) => {
            let e: Expr = src.parse()?;
            e.eval(a.at.expect("clap requires --at"))?
        }
        (None, Some(op)) => {
            let x = scalar(a.a.expect("clap requires --a"))?;
            let binary = |f: FieldOp| -> CliResult<MulScalar> {
                let Some(b) = a.b else {
                    return usage("this operation needs --b");
                };
                Ok(x.field_op(f, scalar(b)?)?)
            };
            let r = match op {
                ScalarOp::Add => binary(FieldOp::Add)?,
                ScalarOp::Sub => binary(FieldOp::Sub)?,
                ScalarOp::Mul => binary(FieldOp::Mul)?,
                ScalarOp::Div => binary(FieldOp::Div)?,
                ScalarOp::Square => x.power_op(PowerOp::Square)?,
                ScalarOp::Sqrt => x.power_op(PowerOp::Sqrt)?,
                ScalarOp::Abs => x.power_op(PowerOp::Abs)?,
                ScalarOp::Cos => x.trig(TrigOp::Cos)?,
                ScalarOp::Sin => x.trig(TrigOp::Sin)?,
                ScalarOp::Tan => x.trig(TrigOp::Tan)?,
                ScalarOp::Sec => x.trig(TrigOp::Sec)?,
                ScalarOp::Arccos => x.trig(TrigOp::Arccos)?,
                ScalarOp::Arctan => x.trig(TrigOp::Arctan)?,
            };
            r.value()
        }
        _ => return usage("give --expr with --at, or --op with --a"),
    };
    emit(out, None, &format!("{value}\n"))
}

fn cmd_derive(a: &DeriveArgs, out: &mut dyn Write) -> CliResult<()> {
    let e: Expr = a.expr.parse()?;
    let mut text = String::new();
    for &at in &a.at {
        let x = scalar(at)?;
        let d = match a.backend {
            Backend::Jet => mul_derivative(&e, x, a.order)?,
            Backend::FiniteDifference => {
                if a.order != 1 {
                    return usage("the fd backend provides first derivatives only");
                }
                mul_derivative_fd(expr_fn(&e), x, a.step)?
            }
        };
        text.push_str(&format!("{}\n", d.value()));
    }
    emit(out, None, &text)
}

fn cmd_integrate(a: &IntegrateArgs, out: &mut dyn Write) -> CliResult<()> {
    let e: Expr = a.expr.parse()?;
    let v = mul_integral(&e, scalar(a.from)?, scalar(a.to)?)?;
    emit(out, None, &format!("{}\n", v.value()))
}

fn cmd_analyze(a: &CurveArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = RunConfig::from_args(&a.common, Format::Csv)?;
    let curve = load_curve(&a.source, &cfg)?;
    let analysis = analyze(&curve, &cfg.options())?;
    let text = match cfg.format {
        Format::Csv => emit::analysis_csv(&analysis),
        Format::Json => emit::analysis_json(&analysis, None),
    };
    emit(out, cfg.out.as_ref(), &text)
}

fn cmd_classify(a: &CurveArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = RunConfig::from_args(&a.common, Format::Json)?;
    if cfg.format == Format::Csv {
        return usage("classify writes JSON only; drop --format csv");
    }
    let curve = load_curve(&a.source, &cfg)?;
    let report = classify(&curve, &cfg.options())?;
    emit(out, cfg.out.as_ref(), &emit::report_json(&report))
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = RunConfig::from_args(&a.common, Format::Csv)?;
    let y = load_curve(&a.source, &cfg)?;
    let x = construct_rectifying(scalar(a.a)?, &y, &cfg.options())?;
    let analysis = analyze(&x, &cfg.options())?;
    let text = match cfg.format {
        Format::Csv => emit::analysis_csv(&analysis),
        Format::Json => emit::analysis_json(&analysis, Some(x.components().clone().map(|c| c.to_string()))),
    };
    emit(out, cfg.out.as_ref(), &text)
}

fn decimate(rec: &Reconstruction, n: usize) -> Vec<&FrameSample> {
    let len = rec.samples.len();
    if len <= n {
        return rec.samples.iter().collect();
    }
    (0..n).map(|i| &rec.samples[i * (len - 1) / (n - 1)]).collect()
}

fn cmd_reconstruct(a: &ReconstructArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = RunConfig::from_args(&a.common, Format::Csv)?;
    let opts = cfg.options();
    let rec = match (&a.kappa, &a.tau, &a.curve) {
        (Some(k), Some(t), None) => {
            let (Some(x0), Some(t0), Some(n0)) = (&a.x0, &a.t0, &a.n0) else {
                return usage("--kappa/--tau need --x0, --t0 and --n0");
            };
            let Some(domain) = cfg.domain()? else {
                return usage("--kappa/--tau need --from and --to");
            };
            let profile = ExprProfile::new(k.parse()?, t.parse()?);
            let setup = ReconstructionSetup {
                x0: constant_vector(x0, "x0")?,
                t0: constant_vector(t0, "t0")?,
                n0: constant_vector(n0, "n0")?,
                start: scalar(a.start.unwrap_or(domain.min().value()))?,
                domain,
                max_step: a.step,
            };
            reconstruct_from_curvatures(&profile, &setup)?
        }
        (None, None, Some(name)) => {
            let curve = load_curve(&SourceArgs { curve: Some(name.clone()), x: None, y: None, z: None }, &cfg)?;
            let profile = CurveProfile::new(&curve, &opts)?;
            let full = profile.curve().domain();
            let grid = full.sample_logs(2, opts.trim);
            let domain = Domain::from_logs(grid[0], grid[1])?;
            let start = match a.start {
                Some(s) => scalar(s)?,
                None => MulScalar::from_log(0f64.clamp(grid[0], grid[1]))?,
            };
            let (x0, t0, n0) = profile.initial_frame(start)?;
            reconstruct_from_curvatures(&profile, &ReconstructionSetup { x0, t0, n0, start, domain, max_step: a.step })?
        }
        _ => return usage("give --kappa and --tau, or --curve"),
    };
    let rows = decimate(&rec, cfg.samples);
    let text = match cfg.format {
        Format::Csv => emit::frames_csv(&rows),
        Format::Json => emit::frames_json(&rows, rec.step, rec.max_correction),
    };
    emit(out, cfg.out.as_ref(), &text)
}

fn cmd_catalog(a: &CatalogArgs, out: &mut dyn Write) -> CliResult<()> {
    let mut text = String::new();
    match (&a.name, a.list) {
        (None, true) => {
            for e in catalog_entries() {
                text.push_str(&format!("{}\t{}\n", e.name, e.description));
            }
        }
        (Some(name), false) => {
            let c = catalog(name)?;
            let (lo, hi) = c.native_domain().log_bounds();
            for (axis, comp) in ["x", "y", "z"].iter().zip(c.components()) {
                text.push_str(&format!("{axis} = {comp}\n"));
            }
            text.push_str(&format!("log domain = [{lo}, {hi}]\n"));
        }
        _ => return usage("give --list or a curve name"),
    }
    emit(out, None, &text)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Derive(a) => cmd_derive(a, out),
        Command::Integrate(a) => cmd_integrate(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Construct(a) => cmd_construct(a, out),
        Command::Reconstruct(a) => cmd_reconstruct(a, out),
        Command::Catalog(a) => cmd_catalog(a, out),
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "error[usage]: {}", one_line(first.trim_start_matches("error: ")));
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error{}", one_line(&msg));
            EXIT_USAGE
        }
        Err(CliError::Numeric(e)) => {
            let _ = writeln!(err, "error[{}]: {}", e.kind(), one_line(&e.to_string()));
            EXIT_FAILURE
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error[io]: {}", one_line(&msg));
            EXIT_FAILURE
        }
    }
}
