use rayon::prelude::*;

use super::{unit_speed_view, AnalysisOptions, Backend, MulCurve, CURVE_ORDER};
use crate::error::{Error, Result};
use crate::jet::{cross3, derivative3, dot3, values3, Jet};
use crate::scalar::MulScalar;
use crate::vector::MulVector3;

/// `ln κ` at or below this value means the principal normal is undefined.
pub const BIREGULAR_TOL: f64 = 1e-10;

/// Multiplicative Frenet apparatus at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetData {
    /// Parameter of the analyzed (unit-speed) curve.
    pub s: MulScalar,
    /// Original parameter of the underlying curve.
    pub param: MulScalar,
    pub position: MulVector3,
    pub t: MulVector3,
    pub n: MulVector3,
    pub b: MulVector3,
    pub kappa: MulScalar,
    pub tau: MulScalar,
    pub speed: MulScalar,
    pub t_star: MulVector3,
    pub n_star: MulVector3,
    pub b_star: MulVector3,
    pub kappa_star: MulScalar,
}

/// Components of the position vector in the Frenet frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub s: MulScalar,
    pub lambda: MulScalar,
    pub nu: MulScalar,
    pub mu: MulScalar,
    pub rho: MulScalar,
    pub perp_norm: MulScalar,
}

impl Decomposition {
    fn from_frame(f: &FrenetData) -> Result<Self> {
        let x = f.position;
        let nu = x.inner(&f.n)?;
        let mu = x.inner(&f.b)?;
        Ok(Decomposition {
            s: f.s,
            lambda: x.inner(&f.t)?,
            nu,
            mu,
            rho: x.norm()?,
            perp_norm: MulScalar::from_log(nu.log().hypot(mu.log()))?,
        })
    }
}

/// Unit-speed local geometry in log coordinates.
struct Local {
    x: [f64; 3],
    t: [f64; 3],
    n: [f64; 3],
    b: [f64; 3],
    dt: [f64; 3],
    dn: [f64; 3],
    db: [f64; 3],
    k: f64,
    dk: f64,
    tau: f64,
    speed: f64,
}

fn vec(v: [f64; 3]) -> Result<MulVector3> {
    MulVector3::from_logs(v)
}

/// Curvature of the log curve without requiring biregularity.
fn curvature(x: &[Jet; 3]) -> f64 {
    let x2 = derivative3(&derivative3(x));
    dot3(&x2, &x2).value().sqrt()
}

fn local(x: &[Jet; 3], at: f64, tol: f64) -> Result<Local> {
    let t = derivative3(x);
    let speed = dot3(&t, &t).value().sqrt();
    if (speed - 1.0).abs() > tol {
        return Err(Error::NotUnitSpeed { at, speed_log: speed });
    }
    let x2 = derivative3(&t);
    let k2 = dot3(&x2, &x2);
    if k2.value().sqrt() <= BIREGULAR_TOL {
        return Err(Error::NotBiregular { at, kappa_log: k2.value().sqrt() });
    }
    let k = k2.sqrt()?;
    let kinv = k.recip()?;
    let n = [x2[0].mul(&kinv), x2[1].mul(&kinv), x2[2].mul(&kinv)];
    let b = cross3(&t, &n);
    let dn = derivative3(&n);
    Ok(Local {
        x: values3(x),
        t: values3(&t),
        n: values3(&n),
        b: values3(&b),
        dt: values3(&x2),
        dn: values3(&dn),
        db: values3(&derivative3(&b)),
        k: k.value(),
        dk: k.derivative().value(),
        tau: dot3(&dn, &b).value(),
        speed,
    })
}

fn frame_from_local(s: MulScalar, u: f64, l: &Local) -> Result<FrenetData> {
    Ok(FrenetData {
        s,
        param: MulScalar::from_log(u)?,
        position: vec(l.x)?,
        t: vec(l.t)?,
        n: vec(l.n)?,
        b: vec(l.b)?,
        kappa: MulScalar::from_log(l.k)?,
        tau: MulScalar::from_log(l.tau)?,
        speed: MulScalar::from_log(l.speed)?,
        t_star: vec(l.dt)?,
        n_star: vec(l.dn)?,
        b_star: vec(l.db)?,
        kappa_star: MulScalar::from_log(l.dk)?,
    })
}

/// Frenet apparatus at `s` of a curve parametrized by multiplicative arc length.
pub fn frenet(curve: &MulCurve, s: MulScalar, backend: Backend) -> Result<FrenetData> {
    frenet_with_tol(curve, s, backend, backend.default_tol())
}

fn frenet_with_tol(curve: &MulCurve, s: MulScalar, backend: Backend, tol: f64) -> Result<FrenetData> {
    let (u, x) = curve.log_jets(s, CURVE_ORDER, backend)?;
    let l = local(&x, s.log(), tol)?;
    frame_from_local(s, u, &l)
}

pub fn decompose(curve: &MulCurve, s: MulScalar, backend: Backend) -> Result<Decomposition> {
    Decomposition::from_frame(&frenet(curve, s, backend)?)
}

/// One analysis sample. The frame is absent where the curve is not biregular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub s: MulScalar,
    pub param: MulScalar,
    pub position: MulVector3,
    pub speed: MulScalar,
    pub kappa: MulScalar,
    pub frame: Option<(FrenetData, Decomposition)>,
}

impl Sample {
    pub fn frenet(&self) -> Option<&FrenetData> {
        self.frame.as_ref().map(|f| &f.0)
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.frame.as_ref().map(|f| &f.1)
    }
}

/// A sampled unit-speed view of a curve.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub curve: MulCurve,
    pub options: AnalysisOptions,
    pub samples: Vec<Sample>,
}

impl Analysis {
    pub fn is_biregular(&self) -> bool {
        self.samples.iter().all(|s| s.frame.is_some())
    }

    /// First non-biregular sample as an error.
    pub fn require_biregular(&self) -> Result<()> {
        match self.samples.iter().find(|s| s.frame.is_none()) {
            None => Ok(()),
            Some(s) => Err(Error::NotBiregular { at: s.s.log(), kappa_log: s.kappa.log() }),
        }
    }

    pub fn frames(&self) -> impl Iterator<Item = &(FrenetData, Decomposition)> {
        self.samples.iter().filter_map(|s| s.frame.as_ref())
    }
}

fn sample_at(curve: &MulCurve, sigma: f64, opts: &AnalysisOptions) -> Result<Sample> {
    let s = MulScalar::from_log(sigma)?;
    let (u, x) = curve.log_jets(s, CURVE_ORDER, opts.backend)?;
    let position = vec(values3(&x))?;
    let param = MulScalar::from_log(u)?;
    match local(&x, sigma, opts.tol) {
        Ok(l) => {
            let f = frame_from_local(s, u, &l)?;
            let d = Decomposition::from_frame(&f)?;
            Ok(Sample { s, param, position, speed: f.speed, kappa: f.kappa, frame: Some((f, d)) })
        }
        Err(Error::NotBiregular { .. }) => {
            let dx = derivative3(&x);
            Ok(Sample {
                s,
                param,
                position,
                speed: MulScalar::from_log(dot3(&dx, &dx).value().sqrt())?,
                kappa: MulScalar::from_log(curvature(&x))?,
                frame: None,
            })
        }
        Err(e) => Err(e),
    }
}

/// Samples the unit-speed view of `curve` on the trimmed log-uniform grid.
pub fn analyze(curve: &MulCurve, opts: &AnalysisOptions) -> Result<Analysis> {
    let view = unit_speed_view(curve, opts)?;
    let grid = view.domain().sample_logs(opts.samples, opts.trim);
    let samples = grid.par_iter().map(|&sigma| sample_at(&view, sigma, opts)).collect::<Result<Vec<_>>>()?;
    Ok(Analysis { curve: view, options: *opts, samples })
}
