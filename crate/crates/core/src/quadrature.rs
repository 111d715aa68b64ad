//! Numerical integration: adaptive Simpson with an explicit subdivision
//! budget, plus fixed Gauss–Legendre panels for short smooth intervals.

use crate::error::{Error, Result};

/// Maximum number of accepted subintervals, `2^20`.
pub const SUBDIVISION_BUDGET: usize = 1 << 20;

const MAX_DEPTH: u32 = 48;

/// Panels are always split this many times before the error test may accept
/// them, so coincidental agreement on a coarse panel cannot stop the search.
const MIN_DEPTH: u32 = 4;

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

/// `∫_a^b f` to absolute tolerance `tol`, with Richardson-corrected Simpson
/// panels. Subdivision order is fixed, so results are bit-reproducible.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return adaptive_simpson(f, b, a, tol).map(|v| -v);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = simpson(a, b, fa, fm, fb);
    let mut stack = vec![Panel { a, b, fa, fm, fb, whole, tol, depth: 0 }];
    let mut total = 0.0;
    let mut accepted = 0usize;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm)?;
        let frm = f(rm)?;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let diff = left + right - p.whole;
        if (p.depth >= MIN_DEPTH && diff.abs() <= 15.0 * p.tol) || p.depth >= MAX_DEPTH {
            if p.depth >= MAX_DEPTH && diff.abs() > 15.0 * p.tol {
                return Err(Error::QuadratureNonconvergence { a, b, budget: SUBDIVISION_BUDGET });
            }
            total += left + right + diff / 15.0;
            accepted += 1;
            continue;
        }
        if accepted + stack.len() + 2 > SUBDIVISION_BUDGET {
            return Err(Error::QuadratureNonconvergence { a, b, budget: SUBDIVISION_BUDGET });
        }
        let half = 0.5 * p.tol;
        // right pushed first so the left half is summed first
        stack.push(Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right, tol: half, depth: p.depth + 1 });
        stack.push(Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left, tol: half, depth: p.depth + 1 });
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fixed Gauss–Legendre panel on `[a, b]`.
pub fn gauss_panel<F>(f: &F, a: f64, b: f64, rule: &[(f64, f64)]) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for &(x, w) in rule {
        sum += w * f(mid + half * x)?;
    }
    Ok(sum * half)
}
