use thiserror::Error;

/// Largest magnitude of `ln(value)` a [`MulScalar`](crate::MulScalar) may carry.
pub const LOG_LIMIT: f64 = 700.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the multiplicative zero 0* = 1")]
    DivisionByMulZero,
    #[error("value out of representable range (log = {log})")]
    RangeOverflow { log: f64 },
    #[error("value {value} is not a positive real")]
    NonPositive { value: f64 },
    #[error("multiplicative square root of {value} < 0*")]
    NegativeMulSqrt { value: f64 },
    #[error("{op} is undefined at {arg}")]
    Domain { op: &'static str, arg: f64 },
    #[error("angle with the multiplicative zero vector is undefined")]
    ZeroVectorAngle,
    #[error("{what} must not be the multiplicative zero vector")]
    ZeroVector { what: &'static str },

    #[error("illegal character {found:?} at offset {position}")]
    Lex { position: usize, found: char },
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("unknown function `{name}` at offset {position}")]
    UnknownFunction { name: String, position: usize },
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("{op} out of domain at {arg}")]
    EvalDomain { op: &'static str, arg: f64 },
    #[error("evaluation overflow in {op}")]
    EvalOverflow { op: &'static str },
    #[error("singular series arithmetic in {op}")]
    JetSingularity { op: &'static str },
    #[error("jet order {order} outside 1..={max}")]
    JetOrder { order: usize, max: usize },

    #[error("quadrature did not converge on [{a}, {b}] within {budget} subintervals")]
    QuadratureNonconvergence { a: f64, b: f64, budget: usize },

    #[error("curve is not regular at log s = {at}")]
    NotRegular { at: f64 },
    #[error("curve is not parametrized by multiplicative arc length at log s = {at} (speed log = {speed_log})")]
    NotUnitSpeed { at: f64, speed_log: f64 },
    #[error("curve is not biregular at log s = {at} (kappa log = {kappa_log})")]
    NotBiregular { at: f64, kappa_log: f64 },
    #[error("curve does not lie on the unit multiplicative sphere (residual {residual})")]
    NotSpherical { residual: f64 },
    #[error("least-squares design is rank deficient for {what}")]
    DegenerateFit { what: &'static str },
    #[error("parameter log s = {at} outside the curve domain [{min}, {max}]")]
    OutsideDomain { at: f64, min: f64, max: f64 },
    #[error("unknown catalog curve `{0}`")]
    UnknownCurve(String),

    #[error("curvature profile cannot be evaluated at log s = {at}: {reason}")]
    StepDomain { at: f64, reason: String },
    #[error("frame drift {drift} exceeds the per-step limit at log s = {at}")]
    FrameDrift { at: f64, drift: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short stable identifier, used as the machine-readable prefix of CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByMulZero => "division_by_mul_zero",
            Error::RangeOverflow { .. } => "range_overflow",
            Error::NonPositive { .. } => "non_positive",
            Error::NegativeMulSqrt { .. } => "negative_mul_sqrt",
            Error::Domain { .. } => "domain",
            Error::ZeroVectorAngle => "zero_vector_angle",
            Error::ZeroVector { .. } => "zero_vector",
            Error::Lex { .. } => "lex",
            Error::Parse(_) => "parse",
            Error::UnknownFunction { .. } => "unknown_function",
            Error::UnknownIdentifier { .. } => "unknown_identifier",
            Error::EvalDomain { .. } => "eval_domain",
            Error::EvalOverflow { .. } => "eval_overflow",
            Error::JetSingularity { .. } => "jet_singularity",
            Error::JetOrder { .. } => "jet_order",
            Error::QuadratureNonconvergence { .. } => "quadrature_nonconvergence",
            Error::NotRegular { .. } => "not_regular",
            Error::NotUnitSpeed { .. } => "not_unit_speed",
            Error::NotBiregular { .. } => "not_biregular",
            Error::NotSpherical { .. } => "not_spherical",
            Error::DegenerateFit { .. } => "degenerate_fit",
            Error::OutsideDomain { .. } => "outside_domain",
            Error::UnknownCurve(_) => "unknown_curve",
            Error::StepDomain { .. } => "step_domain",
            Error::FrameDrift { .. } => "frame_drift",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }

    /// Byte offset into the source expression, for errors raised while lexing or parsing.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Lex { position, .. }
            | Error::UnknownFunction { position, .. }
            | Error::UnknownIdentifier { position, .. } => Some(*position),
            Error::Parse(p) => Some(p.position),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {position} (expected {expected})")]
pub struct ParseError {
    pub message: String,
    pub position: usize,
    pub expected: String,
}

pub type Result<T> = std::result::Result<T, Error>;
