//! Multiplicative Euclidean space E*ⁿ and its lines, planes and spheres.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::MulScalar;

/// Threshold on `ln ‖u ×* v‖*` below which two vectors count as collinear.
pub const COLLINEAR_TOL: f64 = 1e-10;

/// A point or vector of E*³.
#[derive(Clone, Copy, PartialEq)]
pub struct MulVector3(pub [MulScalar; 3]);

impl MulVector3 {
    /// The multiplicative zero vector `0* = (1, 1, 1)`.
    pub const ZERO: MulVector3 = MulVector3([MulScalar::ZERO; 3]);
    pub const E1: MulVector3 = MulVector3([MulScalar::ONE, MulScalar::ZERO, MulScalar::ZERO]);
    pub const E2: MulVector3 = MulVector3([MulScalar::ZERO, MulScalar::ONE, MulScalar::ZERO]);
    pub const E3: MulVector3 = MulVector3([MulScalar::ZERO, MulScalar::ZERO, MulScalar::ONE]);

    pub fn new(x1: MulScalar, x2: MulScalar, x3: MulScalar) -> Self {
        MulVector3([x1, x2, x3])
    }

    pub fn from_values(values: [f64; 3]) -> Result<Self> {
        Ok(MulVector3([
            MulScalar::new(values[0])?,
            MulScalar::new(values[1])?,
            MulScalar::new(values[2])?,
        ]))
    }

    pub fn from_logs(logs: [f64; 3]) -> Result<Self> {
        Ok(MulVector3([
            MulScalar::from_log(logs[0])?,
            MulScalar::from_log(logs[1])?,
            MulScalar::from_log(logs[2])?,
        ]))
    }

    pub fn logs(&self) -> [f64; 3] {
        self.0.map(MulScalar::log)
    }

    pub fn values(&self) -> [f64; 3] {
        self.0.map(MulScalar::value)
    }

    fn zip(&self, other: &Self, f: impl Fn(MulScalar, MulScalar) -> Result<MulScalar>) -> Result<Self> {
        Ok(MulVector3([
            f(self.0[0], other.0[0])?,
            f(self.0[1], other.0[1])?,
            f(self.0[2], other.0[2])?,
        ]))
    }

    /// Componentwise `+*`, i.e. the componentwise product.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, MulScalar::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, MulScalar::sub)
    }

    pub fn neg(&self) -> Self {
        MulVector3(self.0.map(MulScalar::neg))
    }

    /// `a ·* u = (e^(ln a ln u₁), …)`.
    pub fn scale(&self, a: MulScalar) -> Result<Self> {
        Ok(MulVector3([a.mul(self.0[0])?, a.mul(self.0[1])?, a.mul(self.0[2])?]))
    }

    /// `u /* a`, componentwise multiplicative division by a scalar.
    pub fn div_scalar(&self, a: MulScalar) -> Result<Self> {
        Ok(MulVector3([self.0[0].div(a)?, self.0[1].div(a)?, self.0[2].div(a)?]))
    }

    /// `⟨u, v⟩* = u₁ ·* v₁ +* u₂ ·* v₂ +* u₃ ·* v₃`.
    pub fn inner(&self, other: &Self) -> Result<MulScalar> {
        let mut acc = MulScalar::ZERO;
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc = acc.add(a.mul(*b)?)?;
        }
        Ok(acc)
    }

    /// `‖u‖* = ⟨u, u⟩*^(½*)`.
    pub fn norm(&self) -> Result<MulScalar> {
        let sum: f64 = self.0.iter().map(|c| c.log() * c.log()).sum();
        MulScalar::from_log(sum.sqrt())
    }

    pub fn cross(&self, other: &Self) -> Result<Self> {
        let [x1, x2, x3] = self.0;
        let [y1, y2, y3] = other.0;
        Ok(MulVector3([
            x2.mul(y3)?.sub(x3.mul(y2)?)?,
            x3.mul(y1)?.sub(x1.mul(y3)?)?,
            x1.mul(y2)?.sub(x2.mul(y1)?)?,
        ]))
    }

    /// Multiplicative radian measure of the angle between two nonzero vectors, in `[1, e^π]`.
    pub fn angle(&self, other: &Self) -> Result<MulScalar> {
        let nu = self.norm()?.log();
        let nv = other.norm()?.log();
        if nu == 0.0 || nv == 0.0 {
            return Err(Error::ZeroVectorAngle);
        }
        let ratio = self.inner(other)?.log() / (nu * nv);
        MulScalar::from_log(ratio)?.arccos()
    }

    pub fn is_collinear(&self, other: &Self) -> Result<bool> {
        Ok(self.cross(other)?.norm()?.log() <= COLLINEAR_TOL)
    }

    /// `|ln ‖u −* v‖*|`, the log-domain Euclidean distance between two points.
    pub fn log_distance(&self, other: &Self) -> f64 {
        let a = self.logs();
        let b = other.logs();
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    /// Largest componentwise log error against `other`.
    pub fn max_log_error(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.log_distance(*b))
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for MulVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.logs();
        write!(f, "MulVector3(e^{a}, e^{b}, e^{c})")
    }
}

/// A vector of E*ⁿ for arbitrary `n`; only the metric operations are provided.
#[derive(Debug, Clone, PartialEq)]
pub struct MulVector(pub Vec<MulScalar>);

impl MulVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.add(*b))
            .collect::<Result<Vec<_>>>()
            .map(MulVector)
    }

    pub fn inner(&self, other: &Self) -> Result<MulScalar> {
        self.check_dim(other)?;
        let mut acc = MulScalar::ZERO;
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc = acc.add(a.mul(*b)?)?;
        }
        Ok(acc)
    }

    pub fn norm(&self) -> Result<MulScalar> {
        let sum: f64 = self.0.iter().map(|c| c.log() * c.log()).sum();
        MulScalar::from_log(sum.sqrt())
    }
}

impl From<MulVector3> for MulVector {
    fn from(v: MulVector3) -> Self {
        MulVector(v.0.to_vec())
    }
}

/// `{P +* t ·* v}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MulLine {
    point: MulVector3,
    direction: MulVector3,
}

impl MulLine {
    pub fn new(point: MulVector3, direction: MulVector3) -> Result<Self> {
        if direction.norm()?.log() == 0.0 {
            return Err(Error::ZeroVector { what: "line direction" });
        }
        Ok(MulLine { point, direction })
    }

    pub fn point(&self) -> MulVector3 {
        self.point
    }

    pub fn direction(&self) -> MulVector3 {
        self.direction
    }

    pub fn at(&self, t: MulScalar) -> Result<MulVector3> {
        self.point.add(&self.direction.scale(t)?)
    }

    /// True when the log-domain distance from `p` to the line is at most `tol`.
    pub fn contains(&self, p: &MulVector3, tol: f64) -> Result<bool> {
        let offset = p.sub(&self.point)?;
        let dist = offset.cross(&self.direction)?.norm()?.log() / self.direction.norm()?.log();
        Ok(dist <= tol)
    }
}

/// `{Q : ⟨Q −* P, v⟩* = 0*}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MulPlane {
    point: MulVector3,
    normal: MulVector3,
}

impl MulPlane {
    pub fn new(point: MulVector3, normal: MulVector3) -> Result<Self> {
        if normal.norm()?.log() == 0.0 {
            return Err(Error::ZeroVector { what: "plane normal" });
        }
        Ok(MulPlane { point, normal })
    }

    pub fn point(&self) -> MulVector3 {
        self.point
    }

    pub fn normal(&self) -> MulVector3 {
        self.normal
    }

    /// Membership by the log-domain distance `|ln ⟨p −* P, v⟩*| / ln ‖v‖*`.
    pub fn contains(&self, p: &MulVector3, tol: f64) -> Result<bool> {
        let offset = p.sub(&self.point)?;
        let dist = offset.inner(&self.normal)?.log().abs() / self.normal.norm()?.log();
        Ok(dist <= tol)
    }
}

/// `{Q : ‖Q −* C‖* = r}` with `r > 0*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MulSphere {
    center: MulVector3,
    radius: MulScalar,
}

impl MulSphere {
    pub fn new(center: MulVector3, radius: MulScalar) -> Result<Self> {
        if radius.log() <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sphere radius must exceed 0* (got {})",
                radius.value()
            )));
        }
        Ok(MulSphere { center, radius })
    }

    /// The sphere of radius `1* = e` about `0*`.
    pub fn unit() -> Self {
        MulSphere { center: MulVector3::ZERO, radius: MulScalar::ONE }
    }

    pub fn center(&self) -> MulVector3 {
        self.center
    }

    pub fn radius(&self) -> MulScalar {
        self.radius
    }

    pub fn contains(&self, p: &MulVector3, tol: f64) -> Result<bool> {
        let d = p.sub(&self.center)?.norm()?;
        Ok(d.log_distance(self.radius) <= tol)
    }
}
