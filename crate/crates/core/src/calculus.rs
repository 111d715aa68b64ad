//! Multiplicative differentiation and integration.
//!
//! Under `u = ln x` every multiplicative derivative of `f` is a classical
//! derivative of `L(u) = ln f(e^u)`: `f*(x) = e^{L'(ln x)}` and
//! `f^{*(n)}(x) = e^{L^{(n)}(ln x)}`. The integral becomes
//! `∫*_a^b f = e^{∫_{ln a}^{ln b} L(u) du}`.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::Jet;
use crate::quadrature::adaptive_simpson;
use crate::scalar::MulScalar;

/// Default jet order: curve frames need third derivatives, plus one guard order.
pub const DEFAULT_ORDER: usize = 4;

/// Default log step of the central multiplicative difference.
pub const DEFAULT_LOG_STEP: f64 = 1e-4;

/// Log-domain tolerance of [`mul_integral`].
pub const INTEGRAL_TOL: f64 = 1e-10;

/// Taylor coefficients of `u ↦ ln f(e^u)` about `u₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogJet {
    u0: f64,
    series: Jet,
}

impl LogJet {
    pub fn new(u0: f64, series: Jet) -> Self {
        LogJet { u0, series }
    }

    pub fn basepoint(&self) -> f64 {
        self.u0
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeffs(&self) -> &[f64] {
        self.series.coeffs()
    }

    pub fn series(&self) -> &Jet {
        &self.series
    }

    /// `f^{*(n)}(e^{u₀})`; `n = 0` gives `f` itself.
    pub fn mul_derivative(&self, n: usize) -> Result<MulScalar> {
        if n > self.order() {
            return Err(Error::JetOrder { order: n, max: self.order() });
        }
        MulScalar::from_log(self.series.derivative_value(n))
    }
}

/// `f^{*(n)}(x)` from the jet of `ln f ∘ exp`.
pub fn mul_derivative(f: &Expr, x: MulScalar, n: usize) -> Result<MulScalar> {
    if n == 0 {
        return Err(Error::InvalidArgument("derivative order must be at least 1".into()));
    }
    let jet = f.log_jet(x.log(), n.max(1))?;
    jet.mul_derivative(n)
}

/// Central multiplicative difference `(f(x e^δ) / f(x e^{−δ}))^{1/(2δ)}`.
pub fn mul_derivative_fd<F>(f: F, x: MulScalar, log_step: f64) -> Result<MulScalar>
where
    F: Fn(MulScalar) -> Result<MulScalar>,
{
    if !(log_step > 0.0 && log_step <= 0.1) {
        return Err(Error::InvalidArgument(format!("log step {log_step} outside (0, 0.1]")));
    }
    let u = x.log();
    let up = f(MulScalar::from_log(u + log_step)?)?;
    let down = f(MulScalar::from_log(u - log_step)?)?;
    MulScalar::from_log((up.log() - down.log()) / (2.0 * log_step))
}

/// Wraps an expression as a positive-valued function of a multiplicative scalar.
pub fn expr_fn(f: &Expr) -> impl Fn(MulScalar) -> Result<MulScalar> + '_ {
    move |x| {
        let v = f.eval(x.value())?;
        if !(v > 0.0) {
            return Err(Error::EvalDomain { op: "positive-valued function", arg: v });
        }
        MulScalar::new(v)
    }
}

/// `∫*_a^b f(x) ·* d*x`, integrated in `u = ln x` by adaptive Simpson.
pub fn mul_integral(f: &Expr, a: MulScalar, b: MulScalar) -> Result<MulScalar> {
    if a > b {
        return Err(Error::InvalidArgument("integration bounds must satisfy a ≤ b".into()));
    }
    let integrand = |u: f64| {
        let v = f.eval(u.exp())?;
        if !(v > 0.0) {
            return Err(Error::EvalDomain { op: "log of integrand", arg: v });
        }
        Ok(v.ln())
    };
    let value = adaptive_simpson(integrand, a.log(), b.log(), INTEGRAL_TOL)?;
    MulScalar::from_log(value)
}
