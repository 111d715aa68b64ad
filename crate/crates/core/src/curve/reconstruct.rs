use rayon::prelude::*;

use super::frenet::frenet;
use super::{unit_speed_view, AnalysisOptions, Backend, Domain, MulCurve};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::scalar::MulScalar;
use crate::vector::MulVector3;

/// Largest integration step in `ln s`.
pub const MAX_STEP: f64 = 1e-3;

/// Largest per-step Gram–Schmidt correction tolerated.
pub const DRIFT_LIMIT: f64 = 1e-6;

const FRAME_TOL: f64 = 1e-8;

/// Prescribed curvatures as functions of the arc-length parameter.
pub trait CurvatureProfile: Sync {
    /// `(ln κ, ln τ)` at `σ = ln s`.
    fn curvatures(&self, sigma: f64) -> Result<(f64, f64)>;
}

/// Curvatures given by expressions in `t = s`; both must be positive reals.
#[derive(Debug, Clone)]
pub struct ExprProfile {
    pub kappa: Expr,
    pub tau: Expr,
}

impl ExprProfile {
    pub fn new(kappa: Expr, tau: Expr) -> Self {
        ExprProfile { kappa, tau }
    }
}

impl CurvatureProfile for ExprProfile {
    fn curvatures(&self, sigma: f64) -> Result<(f64, f64)> {
        let s = sigma.exp();
        let (k, t) = (self.kappa.eval(s)?, self.tau.eval(s)?);
        if !(k > 0.0 && t > 0.0) {
            return Err(Error::EvalDomain { op: "curvature", arg: if k > 0.0 { t } else { k } });
        }
        let k = k.ln();
        if !(k > 0.0) {
            return Err(Error::EvalDomain { op: "kappa must exceed 0*", arg: k.exp() });
        }
        Ok((k, t.ln()))
    }
}

/// Curvatures read off an existing curve by its Frenet apparatus.
#[derive(Debug, Clone)]
pub struct CurveProfile {
    curve: MulCurve,
    backend: Backend,
}

impl CurveProfile {
    pub fn new(curve: &MulCurve, opts: &AnalysisOptions) -> Result<Self> {
        Ok(CurveProfile { curve: unit_speed_view(curve, opts)?, backend: opts.backend })
    }

    /// The unit-speed curve the profile samples.
    pub fn curve(&self) -> &MulCurve {
        &self.curve
    }

    /// Initial data for reconstruction at `start`: position, tangent and normal.
    pub fn initial_frame(&self, start: MulScalar) -> Result<(MulVector3, MulVector3, MulVector3)> {
        let f = frenet(&self.curve, start, self.backend)?;
        Ok((f.position, f.t, f.n))
    }
}

impl CurvatureProfile for CurveProfile {
    fn curvatures(&self, sigma: f64) -> Result<(f64, f64)> {
        let f = frenet(&self.curve, MulScalar::from_log(sigma)?, self.backend)?;
        Ok((f.kappa.log(), f.tau.log()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionSetup {
    pub x0: MulVector3,
    pub t0: MulVector3,
    pub n0: MulVector3,
    /// Parameter at which the initial data holds.
    pub start: MulScalar,
    pub domain: Domain,
    pub max_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSample {
    pub s: MulScalar,
    pub x: MulVector3,
    pub t: MulVector3,
    pub n: MulVector3,
    pub b: MulVector3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    /// Samples on a uniform grid in `ln s` through the start point.
    pub samples: Vec<FrameSample>,
    pub step: f64,
    pub max_correction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSample {
    pub s: MulScalar,
    pub kappa: MulScalar,
    pub tau: MulScalar,
}

type V = [f64; 3];

#[derive(Clone, Copy)]
struct State {
    x: V,
    t: V,
    n: V,
    b: V,
}

fn dot(a: V, b: V) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V, b: V) -> V {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn axpy(k: f64, a: V, b: V) -> V {
    [b[0] + k * a[0], b[1] + k * a[1], b[2] + k * a[2]]
}

fn scale(k: f64, a: V) -> V {
    [k * a[0], k * a[1], k * a[2]]
}

fn unit(a: V) -> V {
    scale(1.0 / dot(a, a).sqrt(), a)
}

fn max_diff(a: V, b: V) -> f64 {
    (0..3).fold(0.0, |m, i| m.max((a[i] - b[i]).abs()))
}

impl State {
    fn rate(&self, k: f64, tau: f64) -> State {
        State {
            x: self.t,
            t: scale(k, self.n),
            n: axpy(tau, self.b, scale(-k, self.t)),
            b: scale(-tau, self.n),
        }
    }

    fn shifted(&self, h: f64, d: &State) -> State {
        State { x: axpy(h, d.x, self.x), t: axpy(h, d.t, self.t), n: axpy(h, d.n, self.n), b: axpy(h, d.b, self.b) }
    }

    fn rk4(&self, h: f64, k: [(f64, f64); 3]) -> State {
        let k1 = self.rate(k[0].0, k[0].1);
        let k2 = self.shifted(h / 2.0, &k1).rate(k[1].0, k[1].1);
        let k3 = self.shifted(h / 2.0, &k2).rate(k[1].0, k[1].1);
        let k4 = self.shifted(h, &k3).rate(k[2].0, k[2].1);
        let comb = |f: fn(&State) -> V| -> V {
            let (a, b, c, d) = (f(&k1), f(&k2), f(&k3), f(&k4));
            [0, 1, 2].map(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0)
        };
        State {
            x: axpy(h, comb(|s| s.x), self.x),
            t: axpy(h, comb(|s| s.t), self.t),
            n: axpy(h, comb(|s| s.n), self.n),
            b: axpy(h, comb(|s| s.b), self.b),
        }
    }

    /// Gram–Schmidt on `(t, n)`, `b = t × n`; returns the size of the correction.
    fn orthonormalize(&mut self) -> f64 {
        let t = unit(self.t);
        let n = unit(axpy(-dot(self.n, t), t, self.n));
        let b = cross(t, n);
        let drift = max_diff(t, self.t).max(max_diff(n, self.n)).max(max_diff(b, self.b));
        self.t = t;
        self.n = n;
        self.b = b;
        drift
    }

    fn sample(&self, sigma: f64) -> Result<FrameSample> {
        Ok(FrameSample {
            s: MulScalar::from_log(sigma)?,
            x: MulVector3::from_logs(self.x)?,
            t: MulVector3::from_logs(self.t)?,
            n: MulVector3::from_logs(self.n)?,
            b: MulVector3::from_logs(self.b)?,
        })
    }
}

/// Integrates the multiplicative Frenet system with fixed-step RK4 in `ln s`
/// outward from `setup.start` over `setup.domain`.
pub fn reconstruct_from_curvatures<P: CurvatureProfile>(profile: &P, setup: &ReconstructionSetup) -> Result<Reconstruction> {
    let (t0, n0) = (setup.t0.logs(), setup.n0.logs());
    if (dot(t0, t0) - 1.0).abs() > FRAME_TOL || (dot(n0, n0) - 1.0).abs() > FRAME_TOL || dot(t0, n0).abs() > FRAME_TOL {
        return Err(Error::InvalidArgument("initial tangent and normal must be multiplicative orthonormal".into()));
    }
    if !(setup.max_step > 0.0 && setup.max_step <= MAX_STEP) {
        return Err(Error::InvalidArgument(format!("step must lie in (0, {MAX_STEP}]")));
    }
    let sigma0 = setup.start.log();
    let (lo, hi) = setup.domain.log_bounds();
    if !setup.domain.contains_log(sigma0) {
        return Err(Error::OutsideDomain { at: sigma0, min: lo, max: hi });
    }
    let h = setup.max_step;
    let back = ((sigma0 - lo) / h + 1e-9).floor() as i64;
    let fwd = ((hi - sigma0) / h + 1e-9).floor() as i64;

    // curvatures at every node and midpoint, in grid order
    let half_nodes: Vec<f64> = (-2 * back..=2 * fwd).map(|j| sigma0 + j as f64 * h / 2.0).collect();
    let curv: Vec<(f64, f64)> = half_nodes
        .par_iter()
        .map(|&s| profile.curvatures(s).map_err(|e| Error::StepDomain { at: s, reason: e.to_string() }))
        .collect::<Result<_>>()?;
    let at = |j: i64| curv[(j + 2 * back) as usize];

    let mut start = State { x: setup.x0.logs(), t: t0, n: n0, b: cross(t0, n0) };
    start.orthonormalize();
    let mut max_correction = 0.0f64;
    let mut run = |dir: i64, steps: i64| -> Result<Vec<State>> {
        let mut out = Vec::with_capacity(steps as usize);
        let mut y = start;
        for k in 0..steps {
            let j = 2 * k * dir;
            y = y.rk4(dir as f64 * h, [at(j), at(j + dir), at(j + 2 * dir)]);
            let drift = y.orthonormalize();
            if drift > DRIFT_LIMIT {
                return Err(Error::FrameDrift { at: sigma0 + (k + 1) as f64 * dir as f64 * h, drift });
            }
            max_correction = max_correction.max(drift);
            out.push(y);
        }
        Ok(out)
    };
    let backward = run(-1, back)?;
    let forward = run(1, fwd)?;

    let mut samples = Vec::with_capacity((back + fwd + 1) as usize);
    for (k, y) in backward.iter().enumerate().rev() {
        samples.push(y.sample(sigma0 - (k + 1) as f64 * h)?);
    }
    samples.push(start.sample(sigma0)?);
    for (k, y) in forward.iter().enumerate() {
        samples.push(y.sample(sigma0 + (k + 1) as f64 * h)?);
    }
    Ok(Reconstruction { samples, step: h, max_correction })
}

/// `κ = ⟨t*, n⟩*` and `τ = ⟨n*, b⟩*` from five-point differences of the
/// reconstructed frames, at every sample with two neighbours on each side.
pub fn recompute_invariants(rec: &Reconstruction) -> Result<Vec<InvariantSample>> {
    let s = &rec.samples;
    let h = rec.step;
    let d = |i: usize, f: fn(&FrameSample) -> V| -> V {
        let (a, b, c, e) = (f(&s[i - 2]), f(&s[i - 1]), f(&s[i + 1]), f(&s[i + 2]));
        [0, 1, 2].map(|k| (a[k] - 8.0 * b[k] + 8.0 * c[k] - e[k]) / (12.0 * h))
    };
    (2..s.len().saturating_sub(2))
        .map(|i| {
            let dt = d(i, |f| f.t.logs());
            let dn = d(i, |f| f.n.logs());
            Ok(InvariantSample {
                s: s[i].s,
                kappa: MulScalar::from_log(dot(dt, s[i].n.logs()))?,
                tau: MulScalar::from_log(dot(dn, s[i].b.logs()))?,
            })
        })
        .collect()
}
