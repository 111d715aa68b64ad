//! The multiplicative field ℝ* on the positive reals.
//!
//! Every operation is the classical one transported through the natural
//! logarithm: `a +* b = e^(ln a + ln b)`, `a ·* b = e^(ln a · ln b)` and so on.
//! The additive identity is `0* = 1`, the multiplicative identity `1* = e`.
//! Values are stored as the positive real itself; [`MulScalar::log`] and
//! [`MulScalar::from_log`] are the only bridges to the log domain.

use std::f64::consts::{E, FRAC_PI_2, PI};
use std::fmt;

use crate::error::{Error, Result, LOG_LIMIT};

/// Slack allowed outside `[e⁻¹, e]` before `arccos*` rejects its argument.
pub const ARCCOS_CLAMP: f64 = 1e-12;

/// An element of the multiplicative field: a positive real with `|ln value| ≤ 700`.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct MulScalar(f64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerOp {
    Square,
    Sqrt,
    Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigOp {
    Cos,
    Sin,
    Tan,
    Sec,
    Arccos,
    Arctan,
}

// field operations are fallible, so they cannot be the std operator traits
#[allow(clippy::should_implement_trait)]
impl MulScalar {
    /// `0* = 1`.
    pub const ZERO: MulScalar = MulScalar(1.0);
    /// `1* = e`.
    pub const ONE: MulScalar = MulScalar(E);

    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositive { value });
        }
        Self::checked(value)
    }

    fn checked(value: f64) -> Result<Self> {
        if !(value > 0.0) || !value.is_finite() {
            // exp underflowed to zero or overflowed to infinity
            let log = if value > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
            return Err(Error::RangeOverflow { log });
        }
        let log = value.ln();
        if log.abs() > LOG_LIMIT {
            return Err(Error::RangeOverflow { log });
        }
        Ok(MulScalar(value))
    }

    /// `e^u`, the inverse of [`MulScalar::log`].
    pub fn from_log(u: f64) -> Result<Self> {
        if !u.is_finite() || u.abs() > LOG_LIMIT {
            return Err(Error::RangeOverflow { log: u });
        }
        Ok(MulScalar(u.exp()))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The natural logarithm of the stored value.
    pub fn log(self) -> f64 {
        self.0.ln()
    }

    pub fn field_op(self, op: FieldOp, rhs: MulScalar) -> Result<Self> {
        match op {
            FieldOp::Add => self.add(rhs),
            FieldOp::Sub => self.sub(rhs),
            FieldOp::Mul => self.mul(rhs),
            FieldOp::Div => self.div(rhs),
        }
    }

    /// `a +* b = ab`.
    pub fn add(self, rhs: MulScalar) -> Result<Self> {
        Self::checked(self.0 * rhs.0)
    }

    /// `a −* b = a / b`.
    pub fn sub(self, rhs: MulScalar) -> Result<Self> {
        Self::checked(self.0 / rhs.0)
    }

    /// `a ·* b = a^(ln b)`.
    pub fn mul(self, rhs: MulScalar) -> Result<Self> {
        Self::checked(self.0.powf(rhs.0.ln()))
    }

    /// `a /* b = a^(1 / ln b)`, undefined for `b = 0*`.
    pub fn div(self, rhs: MulScalar) -> Result<Self> {
        if rhs.0 == 1.0 {
            return Err(Error::DivisionByMulZero);
        }
        Self::checked(self.0.powf(rhs.0.ln().recip()))
    }

    /// `−* a = 1 / a`.
    pub fn neg(self) -> Self {
        MulScalar(self.0.recip())
    }

    pub fn power_op(self, op: PowerOp) -> Result<Self> {
        match op {
            PowerOp::Square => self.square(),
            PowerOp::Sqrt => self.sqrt(),
            PowerOp::Abs => Ok(self.abs()),
        }
    }

    /// `a^(2*) = e^((ln a)²)`.
    pub fn square(self) -> Result<Self> {
        self.mul(self)
    }

    /// `a^(½*) = e^(√(ln a))`, defined for `a ≥ 0*`.
    pub fn sqrt(self) -> Result<Self> {
        let log = self.0.ln();
        if log < 0.0 {
            return Err(Error::NegativeMulSqrt { value: self.0 });
        }
        Self::checked(log.sqrt().exp())
    }

    /// `|a|* = a` for `a ≥ 1`, `1/a` otherwise.
    pub fn abs(self) -> Self {
        if self.0 >= 1.0 {
            self
        } else {
            MulScalar(self.0.recip())
        }
    }

    pub fn trig(self, op: TrigOp) -> Result<Self> {
        let x = self.0.ln();
        let y = match op {
            TrigOp::Cos => x.cos(),
            TrigOp::Sin => x.sin(),
            TrigOp::Tan => {
                check_pole(op_name(op), x)?;
                x.tan()
            }
            TrigOp::Sec => {
                check_pole(op_name(op), x)?;
                x.cos().recip()
            }
            TrigOp::Arccos => {
                let clamped = if x > 1.0 && x <= 1.0 + ARCCOS_CLAMP {
                    1.0
                } else if (-1.0 - ARCCOS_CLAMP..-1.0).contains(&x) {
                    -1.0
                } else {
                    x
                };
                if !(-1.0..=1.0).contains(&clamped) {
                    return Err(Error::Domain { op: "arccos*", arg: self.0 });
                }
                clamped.acos()
            }
            TrigOp::Arctan => x.atan(),
        };
        Self::checked(y.exp())
    }

    pub fn cos(self) -> Result<Self> {
        self.trig(TrigOp::Cos)
    }

    pub fn sin(self) -> Result<Self> {
        self.trig(TrigOp::Sin)
    }

    pub fn tan(self) -> Result<Self> {
        self.trig(TrigOp::Tan)
    }

    pub fn sec(self) -> Result<Self> {
        self.trig(TrigOp::Sec)
    }

    pub fn arccos(self) -> Result<Self> {
        self.trig(TrigOp::Arccos)
    }

    pub fn arctan(self) -> Result<Self> {
        self.trig(TrigOp::Arctan)
    }

    /// Ratio distance `|ln a − ln b|`, the metric used for every tolerance test.
    pub fn log_distance(self, other: MulScalar) -> f64 {
        (self.0.ln() - other.0.ln()).abs()
    }

    pub fn approx_eq(self, other: MulScalar, tol: f64) -> bool {
        self.log_distance(other) <= tol
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.0.ln().abs() <= tol
    }
}

fn op_name(op: TrigOp) -> &'static str {
    match op {
        TrigOp::Cos => "cos*",
        TrigOp::Sin => "sin*",
        TrigOp::Tan => "tan*",
        TrigOp::Sec => "sec*",
        TrigOp::Arccos => "arccos*",
        TrigOp::Arctan => "arctan*",
    }
}

// tan and sec blow up where cos(ln x) vanishes, i.e. ln x = π/2 + kπ.
fn check_pole(op: &'static str, x: f64) -> Result<()> {
    let offset = (x - FRAC_PI_2) / PI;
    if (offset - offset.round()).abs() * PI < 1e-12 {
        return Err(Error::Domain { op, arg: x.exp() });
    }
    Ok(())
}

impl fmt::Debug for MulScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MulScalar(e^{})", self.0.ln())
    }
}

impl fmt::Display for MulScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl TryFrom<f64> for MulScalar {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        MulScalar::new(value)
    }
}
