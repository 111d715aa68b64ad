//! Test oracles independent of the jet engine: symbolic differentiation of
//! expression trees and the classical Frenet formulas for general parameters.
#![allow(dead_code, clippy::needless_range_loop)]

use mulgeo::curve::{
    recompute_invariants, reconstruct_from_curvatures, AnalysisOptions, CurvatureProfile, CurveProfile, Domain, MulCurve,
    ReconstructionSetup, MAX_STEP,
};
use mulgeo::expr::{BinOp, Expr, Func};
use mulgeo::scalar::MulScalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn c(v: f64) -> Expr {
    Expr::Const(v)
}

fn mul(a: Expr, b: Expr) -> Expr {
    Expr::binary(BinOp::Mul, a, b)
}

fn add(a: Expr, b: Expr) -> Expr {
    Expr::binary(BinOp::Add, a, b)
}

fn sub(a: Expr, b: Expr) -> Expr {
    Expr::binary(BinOp::Sub, a, b)
}

fn div(a: Expr, b: Expr) -> Expr {
    Expr::binary(BinOp::Div, a, b)
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::call(f, a)
}

/// `d/dt` by the textbook rules, without simplification.
pub fn diff(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => c(0.0),
        Expr::Var => c(1.0),
        Expr::Neg(a) => Expr::Neg(Box::new(diff(a))),
        Expr::Binary(op, a, b) => {
            let (da, db) = (diff(a), diff(b));
            let (a, b) = ((**a).clone(), (**b).clone());
            match op {
                BinOp::Add => add(da, db),
                BinOp::Sub => sub(da, db),
                BinOp::Mul => add(mul(da, b), mul(a, db)),
                BinOp::Div => div(sub(mul(da, b.clone()), mul(a, db)), mul(b.clone(), b)),
                BinOp::Pow if b.is_constant() => {
                    let k = b.eval(1.0).unwrap();
                    mul(mul(c(k), Expr::binary(BinOp::Pow, a, c(k - 1.0))), da)
                }
                BinOp::Pow => {
                    let p = Expr::binary(BinOp::Pow, a.clone(), b.clone());
                    mul(p, add(mul(db, call(Func::Log, a.clone())), div(mul(b, da), a)))
                }
            }
        }
        Expr::Call(f, a) => {
            let da = diff(a);
            let a = (**a).clone();
            let outer = match f {
                Func::Exp => call(Func::Exp, a),
                Func::Log => div(c(1.0), a),
                Func::Sin => call(Func::Cos, a),
                Func::Cos => Expr::Neg(Box::new(call(Func::Sin, a))),
                Func::Tan => mul(call(Func::Sec, a.clone()), call(Func::Sec, a)),
                Func::Sec => mul(call(Func::Sec, a.clone()), call(Func::Tan, a)),
                Func::Sqrt => div(c(0.5), call(Func::Sqrt, a)),
            };
            mul(outer, da)
        }
    }
}

/// `t d/dt`, the derivative in `u = ln t`.
pub fn log_diff(e: &Expr) -> Expr {
    mul(Expr::Var, diff(e))
}

/// `[L, L', L'', L''']` for `L(u) = ln f(e^u)`.
pub fn log_derivative_exprs(f: &Expr, order: usize) -> Vec<Expr> {
    let mut out = vec![call(Func::Log, f.clone())];
    for k in 0..order {
        let next = log_diff(&out[k]);
        out.push(next);
    }
    out
}

/// Classical derivatives `[X, X', X'', X''']` of the log curve at `u`.
pub struct LogCurveOracle {
    derivs: [Vec<Expr>; 3],
}

impl LogCurveOracle {
    pub fn new(components: &[Expr; 3]) -> Self {
        LogCurveOracle { derivs: components.clone().map(|f| log_derivative_exprs(&f, 3)) }
    }

    pub fn at(&self, u: f64) -> [[f64; 3]; 4] {
        let t = u.exp();
        let mut out = [[0.0; 3]; 4];
        for k in 0..4 {
            for i in 0..3 {
                out[k][i] = self.derivs[i][k].eval(t).unwrap();
            }
        }
        out
    }

    /// Classical `(κ, τ, speed)` at `u`.
    pub fn kappa_tau(&self, u: f64) -> (f64, f64, f64) {
        let [_, d1, d2, d3] = self.at(u);
        kappa_tau(d1, d2, d3)
    }
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// `κ = |X'×X''|/|X'|³`, `τ = (X'×X'')·X'''/|X'×X''|²`.
pub fn kappa_tau(d1: [f64; 3], d2: [f64; 3], d3: [f64; 3]) -> (f64, f64, f64) {
    let w = cross(d1, d2);
    let speed = norm(d1);
    (norm(w) / speed.powi(3), dot(w, d3) / dot(w, w), speed)
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

/// A smooth bounded expression in `t` for `t` in roughly `[e^-2, e^2]`.
pub fn random_smooth(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    let lt = || call(Func::Log, Expr::Var);
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => c((rng.gen_range(-2.0..2.0f64) * 100.0).round() / 100.0),
            1 => lt(),
            2 => mul(c(rng.gen_range(0.3..1.5)), lt()),
            _ => div(Expr::Var, c(3.0)),
        };
    }
    let a = random_smooth(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => call(*pick(rng, &[Func::Sin, Func::Cos]), a),
        1 => add(a, random_smooth(rng, depth - 1)),
        2 => mul(a, random_smooth(rng, depth - 1)),
        3 => sub(a, random_smooth(rng, depth - 1)),
        4 => call(Func::Sqrt, add(c(1.0), mul(a.clone(), a))),
        5 => div(a, add(c(2.0), call(Func::Sin, random_smooth(rng, depth - 1)))),
        _ => mul(c(rng.gen_range(-1.0..1.0)), call(Func::Cos, add(a, c(rng.gen_range(0.0..3.0))))),
    }
}

/// A positive smooth function `exp(g)` with `g` from [`random_smooth`].
pub fn random_positive(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    call(Func::Exp, random_smooth(rng, depth))
}

/// `exp(Σ a_j trig(ω_j log t + φ_j))` with `|a_j| ≤ 1` and `ω_j ≤ 2`, so every
/// log-derivative up to order five stays below about 100.
pub fn random_trig(rng: &mut ChaCha8Rng) -> Expr {
    let lt = || call(Func::Log, Expr::Var);
    let mut g = mul(c(rng.gen_range(-0.5..0.5)), lt());
    for _ in 0..rng.gen_range(1..4) {
        let f = *pick(rng, &[Func::Sin, Func::Cos]);
        let arg = add(mul(c(rng.gen_range(0.2..2.0)), lt()), c(rng.gen_range(0.0..3.0)));
        g = add(g, mul(c(rng.gen_range(-1.0..1.0)), call(f, arg)));
    }
    call(Func::Exp, g)
}

/// `exp(a cos(log t) + ε trig(k log t + φ))`-style components around a
/// multiplicative helix, so the log curve is biregular and twisted.
pub fn random_helix_components(rng: &mut ChaCha8Rng) -> [Expr; 3] {
    let lt = || call(Func::Log, Expr::Var);
    let a = rng.gen_range(0.8..1.5);
    let pitch = rng.gen_range(0.3..1.0);
    let wobble = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(2..4) as f64;
        let eps = rng.gen_range(-0.1..0.1);
        let phase = rng.gen_range(0.0..3.0);
        let f = *pick(rng, &[Func::Sin, Func::Cos]);
        mul(c(eps), call(f, add(mul(c(k), lt()), c(phase))))
    };
    let w1 = wobble(rng);
    let w2 = wobble(rng);
    let w3 = wobble(rng);
    [
        call(Func::Exp, add(mul(c(a), call(Func::Cos, lt())), w1)),
        call(Func::Exp, add(mul(c(a), call(Func::Sin, lt())), w2)),
        call(Func::Exp, add(mul(c(pitch), lt()), w3)),
    ]
}

/// Worst log errors of a reconstruction against the curve it was built from.
#[derive(Debug, Clone, Copy)]
pub struct RoundTrip {
    pub kappa: f64,
    pub tau: f64,
    pub position: f64,
    pub checked: usize,
}

/// Reconstructs `curve` from its own curvatures over `[lo, hi]` (the trimmed
/// unit-speed domain when `None`), starting at the point nearest `σ = 0`,
/// and compares every `stride`-th interior sample.
pub fn reconstruction_round_trip(curve: &MulCurve, window: Option<(f64, f64)>, stride: usize) -> RoundTrip {
    let opts = AnalysisOptions::default();
    let profile = CurveProfile::new(curve, &opts).unwrap();
    let view = profile.curve();
    let (lo, hi) = window.unwrap_or_else(|| {
        let (a, b) = view.domain().log_bounds();
        let trim = opts.trim * (b - a);
        (a + trim, b - trim)
    });
    let start = MulScalar::from_log(0.0f64.clamp(lo, hi)).unwrap();
    let (x0, t0, n0) = profile.initial_frame(start).unwrap();
    let setup = ReconstructionSetup { x0, t0, n0, start, domain: Domain::from_logs(lo, hi).unwrap(), max_step: MAX_STEP };
    let rec = reconstruct_from_curvatures(&profile, &setup).unwrap();
    let inv = recompute_invariants(&rec).unwrap();
    let mut out = RoundTrip { kappa: 0.0, tau: 0.0, position: 0.0, checked: 0 };
    for (i, sample) in inv.iter().enumerate().step_by(stride) {
        let (k, t) = profile.curvatures(sample.s.log()).unwrap();
        out.kappa = out.kappa.max((sample.kappa.log() - k).abs());
        out.tau = out.tau.max((sample.tau.log() - t).abs());
        // invariants start two samples in
        let frame = &rec.samples[i + 2];
        out.position = out.position.max(frame.x.max_log_error(&view.position(frame.s).unwrap()));
        out.checked += 1;
    }
    out
}

/// Coefficient magnitudes, for forward error bounds on compositions.
pub fn abs_series(j: &mulgeo::jet::Jet) -> mulgeo::jet::Jet {
    let c: Vec<f64> = j.coeffs().iter().map(|c| c.abs()).collect();
    mulgeo::jet::Jet::from_coeffs(&c)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn symbolic_oracle_sanity() {
    let f: Expr = "exp(cos(log(t)))".parse().unwrap();
    let d = log_derivative_exprs(&f, 3);
    let u = 0.7f64;
    let t = u.exp();
    assert!((d[1].eval(t).unwrap() + u.sin()).abs() < 1e-14);
    assert!((d[2].eval(t).unwrap() + u.cos()).abs() < 1e-14);
    assert!((d[3].eval(t).unwrap() - u.sin()).abs() < 1e-14);
    let helix = kappa_tau([0.0, 1.0, 1.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]);
    assert!((helix.0 - 0.5).abs() < 1e-15 && (helix.1 - 0.5).abs() < 1e-15);
}
