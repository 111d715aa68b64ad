//! Curves in multiplicative Euclidean 3-space.
//!
//! A curve is stored by its three component expressions. Every computation
//! runs on the log curve `X(u) = ln x(e^u)`, where multiplicative derivatives
//! become classical ones.

mod arclength;
mod catalog;
mod classify;
mod construct;
mod frenet;
mod reconstruct;
mod stencil;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

pub use arclength::ArcLengthMap;
pub use catalog::{catalog, catalog_entries, CatalogEntry, CATALOG_NAMES};
pub use classify::{
    classify, classify_line, classify_planar, classify_rectifying, classify_spherical, ClassificationReport,
    CurvatureRatioLaw, DistanceLaw, IdentityCheck, PerpLaw, RectifyingDiagnostics, SphereFit, TangentialLaw,
};
pub use construct::{construct_rectifying, RECTIFYING_MARGIN};
pub use frenet::{analyze, decompose, frenet, Analysis, Decomposition, FrenetData, Sample, BIREGULAR_TOL};
pub use reconstruct::{
    reconstruct_from_curvatures, recompute_invariants, CurvatureProfile, CurveProfile, ExprProfile, FrameSample,
    InvariantSample, Reconstruction, ReconstructionSetup, DRIFT_LIMIT, MAX_STEP,
};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{derivative3, dot3, Jet};
use crate::quadrature::adaptive_simpson;
use crate::scalar::MulScalar;
use crate::vector::MulVector3;

/// Jet order used by every curve computation.
pub const CURVE_ORDER: usize = 4;

/// Log-speed below which a curve is treated as singular.
pub const REGULAR_TOL: f64 = 1e-12;

/// Open parameter interval `(s_min, s_max)` of positive reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    min: MulScalar,
    max: MulScalar,
}

impl Domain {
    pub fn new(min: MulScalar, max: MulScalar) -> Result<Self> {
        if !(min < max) {
            return Err(Error::InvalidArgument(format!("empty domain ({min}, {max})")));
        }
        Ok(Domain { min, max })
    }

    pub fn from_logs(min: f64, max: f64) -> Result<Self> {
        Domain::new(MulScalar::from_log(min)?, MulScalar::from_log(max)?)
    }

    pub fn min(&self) -> MulScalar {
        self.min
    }

    pub fn max(&self) -> MulScalar {
        self.max
    }

    pub fn log_bounds(&self) -> (f64, f64) {
        (self.min.log(), self.max.log())
    }

    pub fn contains_log(&self, u: f64) -> bool {
        let (a, b) = self.log_bounds();
        let slack = 1e-12 * (1.0 + a.abs().max(b.abs()));
        u >= a - slack && u <= b + slack
    }

    /// `n` log-uniform points with a fraction `trim` of the log width removed at each end.
    pub fn sample_logs(&self, n: usize, trim: f64) -> Vec<f64> {
        let (a, b) = self.log_bounds();
        let w = b - a;
        let (lo, hi) = (a + trim * w, b - trim * w);
        match n {
            0 => Vec::new(),
            1 => vec![0.5 * (lo + hi)],
            _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

/// How multiplicative derivatives of the components are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Backend {
    /// Taylor arithmetic over the expression tree.
    #[default]
    Jet,
    /// Central differences of `ln x_i(e^u)` on a 9-point stencil.
    FiniteDifference,
}

impl Backend {
    /// Zero-test tolerance in the log metric.
    pub fn default_tol(self) -> f64 {
        match self {
            Backend::Jet => 1e-8,
            Backend::FiniteDifference => 1e-4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Jet => "jet",
            Backend::FiniteDifference => "fd",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jet" => Ok(Backend::Jet),
            "fd" => Ok(Backend::FiniteDifference),
            _ => Err(Error::InvalidArgument(format!("unknown backend `{s}` (expected jet or fd)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub backend: Backend,
    pub tol: f64,
    pub samples: usize,
    pub trim: f64,
    /// Allow arc-length reparametrization of curves that are not unit speed.
    pub reparametrize: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions::for_backend(Backend::Jet)
    }
}

impl AnalysisOptions {
    pub fn for_backend(backend: Backend) -> Self {
        AnalysisOptions { backend, tol: backend.default_tol(), samples: 512, trim: 0.02, reparametrize: false }
    }
}

#[derive(Debug, Clone)]
enum Parametrization {
    Native,
    ArcLength(Arc<ArcLengthMap>),
}

/// A curve `x : (s_min, s_max) → E*³` with positive component functions.
#[derive(Debug, Clone)]
pub struct MulCurve {
    components: Arc<[Expr; 3]>,
    native: Domain,
    param: Parametrization,
    label: String,
    auto_reparametrize: bool,
}

impl MulCurve {
    pub fn new(label: impl Into<String>, components: [Expr; 3], domain: Domain) -> Self {
        MulCurve {
            components: Arc::new(components),
            native: domain,
            param: Parametrization::Native,
            label: label.into(),
            auto_reparametrize: false,
        }
    }

    pub fn parse(label: impl Into<String>, sources: [&str; 3], domain: Domain) -> Result<Self> {
        let [a, b, c] = sources;
        Ok(MulCurve::new(label, [a.parse()?, b.parse()?, c.parse()?], domain))
    }

    /// Marks the curve as one that is analyzed through its arc-length
    /// reparametrization without an explicit opt-in.
    pub fn with_auto_reparametrize(mut self, on: bool) -> Self {
        self.auto_reparametrize = on;
        self
    }

    /// Restricts the curve to a new native domain.
    pub fn with_domain(&self, domain: Domain) -> Self {
        let mut c = MulCurve::new(self.label.clone(), (*self.components).clone(), domain);
        c.auto_reparametrize = self.auto_reparametrize;
        c
    }

    pub fn auto_reparametrize(&self) -> bool {
        self.auto_reparametrize
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[Expr; 3] {
        &self.components
    }

    /// Domain of the original parameter.
    pub fn native_domain(&self) -> Domain {
        self.native
    }

    /// Domain of the current parameter.
    pub fn domain(&self) -> Domain {
        match &self.param {
            Parametrization::Native => self.native,
            Parametrization::ArcLength(map) => map.domain(),
        }
    }

    pub fn is_arc_length(&self) -> bool {
        matches!(self.param, Parametrization::ArcLength(_))
    }

    pub fn arc_length_map(&self) -> Option<&ArcLengthMap> {
        match &self.param {
            Parametrization::ArcLength(map) => Some(map),
            Parametrization::Native => None,
        }
    }

    fn check_domain(&self, u: f64) -> Result<()> {
        let d = self.domain();
        if !d.contains_log(u) {
            let (min, max) = d.log_bounds();
            return Err(Error::OutsideDomain { at: u, min, max });
        }
        Ok(())
    }

    /// Log of the original parameter at `s`.
    pub fn native_log(&self, s: MulScalar) -> Result<f64> {
        self.check_domain(s.log())?;
        match &self.param {
            Parametrization::Native => Ok(s.log()),
            Parametrization::ArcLength(map) => map.invert(s.log()),
        }
    }

    pub fn position(&self, s: MulScalar) -> Result<MulVector3> {
        let u = self.native_log(s)?;
        let t = u.exp();
        let [a, b, c] = &*self.components;
        MulVector3::from_values([a.eval(t)?, b.eval(t)?, c.eval(t)?])
    }

    /// Taylor jets of the log curve in the current parameter about `ln s`,
    /// together with the log of the original parameter.
    pub fn log_jets(&self, s: MulScalar, order: usize, backend: Backend) -> Result<(f64, [Jet; 3])> {
        let u = self.native_log(s)?;
        let x = native_jets(&self.components, u, order, backend)?;
        match &self.param {
            Parametrization::Native => Ok((u, x)),
            Parametrization::ArcLength(_) => {
                let g = speed_jet(&x, u)?;
                let h = g.integral().revert()?;
                Ok((u, [x[0].compose(&h), x[1].compose(&h), x[2].compose(&h)]))
            }
        }
    }
}

fn speed_jet(x: &[Jet; 3], at: f64) -> Result<Jet> {
    let dx = derivative3(x);
    let g2 = dot3(&dx, &dx);
    if g2.value().sqrt() < REGULAR_TOL {
        return Err(Error::NotRegular { at });
    }
    g2.sqrt()
}

/// Jets of `u ↦ ln x_i(e^u)` in the original parameter.
pub(crate) fn native_jets(components: &[Expr; 3], u: f64, order: usize, backend: Backend) -> Result<[Jet; 3]> {
    let one = |e: &Expr| -> Result<Jet> {
        match backend {
            Backend::Jet => Ok(*e.log_jet(u, order)?.series()),
            Backend::FiniteDifference => stencil::log_jet(e, u, order),
        }
    };
    Ok([one(&components[0])?, one(&components[1])?, one(&components[2])?])
}

/// `‖x*(s)‖*` in the current parameter.
pub fn speed(curve: &MulCurve, s: MulScalar, backend: Backend) -> Result<MulScalar> {
    let (u, x) = curve.log_jets(s, 1, backend)?;
    let dx = derivative3(&x);
    let g = dot3(&dx, &dx).value().sqrt();
    if g < REGULAR_TOL {
        return Err(Error::NotRegular { at: u });
    }
    MulScalar::from_log(g)
}

/// First sample whose log-speed differs from 1 by more than `tol`, as `(ln s, ln speed)`.
fn first_speed_violation(curve: &MulCurve, opts: &AnalysisOptions) -> Result<Option<(f64, f64)>> {
    let grid = curve.domain().sample_logs(opts.samples, opts.trim);
    let speeds: Vec<f64> = grid
        .par_iter()
        .map(|&u| speed(curve, MulScalar::from_log(u)?, opts.backend).map(|g| g.log()))
        .collect::<Result<_>>()?;
    Ok(grid.into_iter().zip(speeds).find(|(_, g)| (g - 1.0).abs() > opts.tol))
}

pub fn is_unit_speed(curve: &MulCurve, opts: &AnalysisOptions) -> Result<bool> {
    Ok(first_speed_violation(curve, opts)?.is_none())
}

/// `∫*_{s0}^{s1} ‖x*‖* d*s`.
pub fn arc_length(curve: &MulCurve, s0: MulScalar, s1: MulScalar, backend: Backend) -> Result<MulScalar> {
    if s0 > s1 {
        return Err(Error::InvalidArgument("arc length bounds must satisfy s0 ≤ s1".into()));
    }
    let (u0, u1) = (curve.native_log(s0)?, curve.native_log(s1)?);
    match &curve.param {
        Parametrization::ArcLength(_) => MulScalar::from_log(s1.log() - s0.log()),
        Parametrization::Native => {
            let g = |u: f64| speed(curve, MulScalar::from_log(u)?, backend).map(|g| g.log());
            MulScalar::from_log(adaptive_simpson(g, u0, u1, crate::calculus::INTEGRAL_TOL)?)
        }
    }
}

/// The same curve parametrized by multiplicative arc length.
pub fn reparametrize_unit_speed(curve: &MulCurve, backend: Backend) -> Result<MulCurve> {
    if curve.is_arc_length() {
        return Ok(curve.clone());
    }
    let map = ArcLengthMap::build(curve.components.clone(), curve.native, backend)?;
    let mut out = curve.clone();
    out.param = Parametrization::ArcLength(Arc::new(map));
    Ok(out)
}

/// The unit-speed curve the analysis runs on.
pub fn unit_speed_view(curve: &MulCurve, opts: &AnalysisOptions) -> Result<MulCurve> {
    if curve.is_arc_length() {
        return Ok(curve.clone());
    }
    if opts.reparametrize || curve.auto_reparametrize {
        return reparametrize_unit_speed(curve, opts.backend);
    }
    match first_speed_violation(curve, opts)? {
        None => Ok(curve.clone()),
        Some((at, speed_log)) => Err(Error::NotUnitSpeed { at, speed_log }),
    }
}
