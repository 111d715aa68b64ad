use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use super::{native_jets, AnalysisOptions, Domain, MulCurve};
use crate::error::{Error, Result};
use crate::expr::{BinOp, Expr, Func};
use crate::jet::{derivative3, dot3, values3};
use crate::scalar::MulScalar;

/// Distance in log units kept from the poles of `sec*`.
pub const RECTIFYING_MARGIN: f64 = 0.05;

/// `ln y_i`, unwrapping an outer `exp`.
fn log_of(e: &Expr) -> Expr {
    match e {
        Expr::Call(Func::Exp, inner) => (**inner).clone(),
        other => Expr::call(Func::Log, other.clone()),
    }
}

/// `x(s̃) = (a ·* sec* s̃) ·* y(s̃)` for a unit-speed curve `y` on the unit
/// multiplicative sphere. The result is not unit speed; it is marked for
/// automatic arc-length reparametrization.
pub fn construct_rectifying(a: MulScalar, y: &MulCurve, opts: &AnalysisOptions) -> Result<MulCurve> {
    let scale = a.log();
    if !(scale > 0.0) {
        return Err(Error::InvalidArgument(format!("the scale a = {a} must exceed 0* = 1")));
    }
    if y.is_arc_length() {
        return Err(Error::InvalidArgument("construct_rectifying needs a curve given by expressions".into()));
    }
    let half = FRAC_PI_2 - RECTIFYING_MARGIN;
    let (lo, hi) = y.native_domain().log_bounds();
    let domain = Domain::from_logs(lo.max(-half), hi.min(half))?;
    let y = y.with_domain(domain);

    let grid = domain.sample_logs(opts.samples, opts.trim);
    let checks: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&u| {
            let x = native_jets(y.components(), u, 1, opts.backend)?;
            let dx = derivative3(&x);
            let p = values3(&x);
            let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            Ok((u, dot3(&dx, &dx).value().sqrt(), r))
        })
        .collect::<Result<_>>()?;
    let sphere_residual = checks.iter().fold(0.0f64, |m, c| m.max((c.2 - 1.0).abs()));
    if sphere_residual > opts.tol {
        return Err(Error::NotSpherical { residual: sphere_residual });
    }
    if let Some(&(at, g, _)) = checks.iter().find(|c| (c.1 - 1.0).abs() > opts.tol) {
        return Err(Error::NotUnitSpeed { at, speed_log: g });
    }

    let factor = Expr::binary(
        BinOp::Mul,
        Expr::Const(scale),
        Expr::call(Func::Sec, Expr::call(Func::Log, Expr::Var)),
    );
    let comps = y.components().clone().map(|c| Expr::call(Func::Exp, Expr::binary(BinOp::Mul, factor.clone(), log_of(&c))));
    let label = format!("rectifying(a=e^{scale}, {})", y.label());
    Ok(MulCurve::new(label, comps, domain).with_auto_reparametrize(true))
}
