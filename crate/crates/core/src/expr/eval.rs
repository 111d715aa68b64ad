use super::{BinOp, Expr, Func};
use crate::calculus::LogJet;
use crate::error::{Error, Result};
use crate::jet::{Jet, POLE_TOL};

impl Expr {
    /// Classical real value at `t > 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::EvalDomain { op: "t", arg: t });
        }
        self.eval_real(t)
    }

    fn eval_real(&self, t: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Neg(a) => -a.eval_real(t)?,
            Expr::Binary(op, a, b) => {
                let (x, y) = (a.eval_real(t)?, b.eval_real(t)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(Error::EvalDomain { op: "division", arg: y });
                        }
                        x / y
                    }
                    BinOp::Pow => {
                        let r = x.powf(y);
                        if r.is_nan() {
                            return Err(Error::EvalDomain { op: "pow", arg: x });
                        }
                        r
                    }
                }
            }
            Expr::Call(f, a) => {
                let x = a.eval_real(t)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if !(x > 0.0) {
                            return Err(Error::EvalDomain { op: "log", arg: x });
                        }
                        x.ln()
                    }
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan | Func::Sec => {
                        let c = x.cos();
                        if c.abs() < POLE_TOL {
                            return Err(Error::EvalDomain { op: f.name(), arg: x });
                        }
                        if *f == Func::Tan {
                            x.sin() / c
                        } else {
                            c.recip()
                        }
                    }
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(Error::EvalDomain { op: "sqrt", arg: x });
                        }
                        x.sqrt()
                    }
                }
            }
        };
        if !v.is_finite() {
            return Err(Error::EvalOverflow { op: self.op_name() });
        }
        Ok(v)
    }

    fn op_name(&self) -> &'static str {
        match self {
            Expr::Const(_) => "constant",
            Expr::Var => "t",
            Expr::Neg(_) => "negation",
            Expr::Binary(BinOp::Add, ..) => "+",
            Expr::Binary(BinOp::Sub, ..) => "-",
            Expr::Binary(BinOp::Mul, ..) => "*",
            Expr::Binary(BinOp::Div, ..) => "/",
            Expr::Binary(BinOp::Pow, ..) => "^",
            Expr::Call(f, _) => f.name(),
        }
    }

    /// Taylor jet of `h ↦ self(t₀ + h)` given the jet of the variable.
    pub fn eval_series(&self, t: &Jet) -> Result<Jet> {
        let order = t.order();
        let j = match self {
            Expr::Const(c) => Jet::constant(*c, order),
            Expr::Var => *t,
            Expr::Neg(a) => a.eval_series(t)?.neg(),
            Expr::Binary(op, a, b) => {
                let x = a.eval_series(t)?;
                match op {
                    BinOp::Add => x.add(&b.eval_series(t)?),
                    BinOp::Sub => x.sub(&b.eval_series(t)?),
                    BinOp::Mul => x.mul(&b.eval_series(t)?),
                    BinOp::Div => x.div(&b.eval_series(t)?)?,
                    BinOp::Pow => match b.integer_constant() {
                        Some(n) => x.powi(n)?,
                        None => x.pow(&b.eval_series(t)?)?,
                    },
                }
            }
            Expr::Call(f, a) => {
                let x = a.eval_series(t)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Log => x.ln()?,
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan()?,
                    Func::Sec => x.sec()?,
                    Func::Sqrt => x.sqrt()?,
                }
            }
        };
        if !j.is_finite() {
            return Err(Error::EvalOverflow { op: self.op_name() });
        }
        Ok(j)
    }

    /// Exponent subtrees that are constant small integers take the exact
    /// repeated-product path so negative bases stay legal.
    fn integer_constant(&self) -> Option<i32> {
        if !self.is_constant() {
            return None;
        }
        let v = self.eval_real(1.0).ok()?;
        (v.fract() == 0.0 && v.abs() <= 64.0).then_some(v as i32)
    }

    /// Taylor coefficients of `u ↦ ln f(e^u)` at `u₀`, through `order`.
    pub fn log_jet(&self, u0: f64, order: usize) -> Result<LogJet> {
        if !(1..=crate::jet::MAX_ORDER).contains(&order) {
            return Err(Error::JetOrder { order, max: crate::jet::MAX_ORDER });
        }
        let t = Jet::variable(u0, order).exp();
        Ok(LogJet::new(u0, self.ln_series(&t)?))
    }

    /// `ln self` as a series. A top-level `exp` is unwrapped rather than
    /// exponentiated and logged again, which would cancel badly when the
    /// exponent is steep.
    fn ln_series(&self, t: &Jet) -> Result<Jet> {
        if let Expr::Call(Func::Exp, a) = self {
            return a.eval_series(t);
        }
        let f = self.eval_series(t)?;
        if !(f.value() > 0.0) {
            return Err(Error::EvalDomain { op: "log of curve component", arg: f.value() });
        }
        f.ln()
    }
}

/// Free-function form of [`Expr::log_jet`].
pub fn evaluate_jet(ast: &Expr, u0: f64, order: usize) -> Result<LogJet> {
    ast.log_jet(u0, order)
}
