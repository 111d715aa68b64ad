//! Finite-difference jets on a 9-point central stencil.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::Jet;

/// Stencil spacing in `u = ln s`.
pub const STEP: f64 = 5e-3;

/// Highest derivative the stencil provides.
pub const MAX_FD_ORDER: usize = 4;

const HALF_WIDTH: i32 = 4;
const POINTS: usize = 2 * HALF_WIDTH as usize + 1;

/// Fornberg weights for unit spacing: `WEIGHTS[m][j]` multiplies `f(j - 4)` in the `m`-th derivative.
fn weights() -> &'static [[f64; POINTS]; MAX_FD_ORDER + 1] {
    static W: OnceLock<[[f64; POINTS]; MAX_FD_ORDER + 1]> = OnceLock::new();
    W.get_or_init(|| {
        let x: Vec<f64> = (-HALF_WIDTH..=HALF_WIDTH).map(f64::from).collect();
        fornberg(0.0, &x)
    })
}

fn fornberg(z: f64, x: &[f64]) -> [[f64; POINTS]; MAX_FD_ORDER + 1] {
    let m = MAX_FD_ORDER;
    let mut c = [[0.0; POINTS]; MAX_FD_ORDER + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..x.len() {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Taylor coefficients of `u ↦ ln f(e^u)` at `u0` from central differences.
pub fn log_jet(f: &Expr, u0: f64, order: usize) -> Result<Jet> {
    if !(1..=MAX_FD_ORDER).contains(&order) {
        return Err(Error::JetOrder { order, max: MAX_FD_ORDER });
    }
    let mut vals = [0.0; POINTS];
    for (j, v) in vals.iter_mut().enumerate() {
        let u = u0 + (j as i32 - HALF_WIDTH) as f64 * STEP;
        let y = f.eval(u.exp())?;
        if !(y > 0.0) {
            return Err(Error::EvalDomain { op: "log of curve component", arg: y });
        }
        *v = y.ln();
    }
    let w = weights();
    let mut coeffs = [0.0; MAX_FD_ORDER + 1];
    let mut scale = 1.0;
    for m in 0..=order {
        if m > 0 {
            scale *= STEP * m as f64;
        }
        let d: f64 = w[m].iter().zip(&vals).map(|(a, b)| a * b).sum();
        coeffs[m] = d / scale;
    }
    // the stencil centre is exact
    coeffs[0] = vals[HALF_WIDTH as usize];
    Ok(Jet::from_coeffs(&coeffs[..=order]))
}
