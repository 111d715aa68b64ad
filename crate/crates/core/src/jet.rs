//! Truncated Taylor series ("jets") with forward-mode arithmetic.
//!
//! A `Jet` of order `K` holds `c₀ … c_K`, the coefficients of
//! `f(x₀ + h) = Σ c_k h^k + O(h^{K+1})`. All arithmetic is done on fixed-size
//! arrays; two jets combined in one expression must share the same order.

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 6;

/// `|cos x|` below which `tan` and `sec` are treated as being at a pole.
pub const POLE_TOL: f64 = 1e-12;

const N: usize = MAX_ORDER + 1;

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; N],
    order: usize,
}

impl std::fmt::Debug for Jet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.coeffs()).finish()
    }
}

impl Jet {
    pub fn check_order(order: usize) -> Result<()> {
        if order > MAX_ORDER {
            return Err(Error::JetOrder { order, max: MAX_ORDER });
        }
        Ok(())
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut c = [0.0; N];
        c[0] = value;
        Jet { c, order }
    }

    /// The identity `x₀ + h`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Jet::constant(x0, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= N, "jet needs 1..={N} coefficients");
        let mut c = [0.0; N];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Jet { c, order: coeffs.len() - 1 }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coeff(&self, k: usize) -> f64 {
        if k <= self.order {
            self.c[k]
        } else {
            0.0
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..=self.order]
    }

    /// The `k`-th derivative at the base point, `k! c_k`.
    pub fn derivative_value(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeff(k) * fact
    }

    /// Jet of `f'`, one order lower.
    pub fn derivative(&self) -> Jet {
        let order = self.order.saturating_sub(1);
        let mut c = [0.0; N];
        for k in 0..self.order {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c, order }
    }

    /// Jet of the antiderivative vanishing at the base point, one order higher (capped).
    pub fn integral(&self) -> Jet {
        let order = (self.order + 1).min(MAX_ORDER);
        let mut c = [0.0; N];
        for k in 1..=order {
            c[k] = self.c[k - 1] / k as f64;
        }
        Jet { c, order }
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let order = order.min(self.order);
        let mut c = [0.0; N];
        c[..=order].copy_from_slice(&self.c[..=order]);
        Jet { c, order }
    }

    /// Evaluate the polynomial at offset `h`.
    pub fn eval_at(&self, h: f64) -> f64 {
        self.coeffs().iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    fn zip(&self, other: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        let order = self.order.min(other.order);
        let mut c = [0.0; N];
        for k in 0..=order {
            c[k] = f(self.c[k], other.c[k]);
        }
        Jet { c, order }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Jet) -> Jet {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> Jet {
        let mut out = *self;
        for c in out.c[..=self.order].iter_mut() {
            *c *= s;
        }
        out
    }

    pub fn add_const(&self, s: f64) -> Jet {
        let mut out = *self;
        out.c[0] += s;
        out
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        let mut c = [0.0; N];
        for k in 0..=order {
            c[k] = (0..=k).map(|j| self.c[j] * other.c[k - j]).sum();
        }
        Jet { c, order }
    }

    pub fn div(&self, other: &Jet) -> Result<Jet> {
        let b0 = other.c[0];
        if b0 == 0.0 {
            return Err(Error::JetSingularity { op: "division" });
        }
        let order = self.order.min(other.order);
        let mut q = [0.0; N];
        for k in 0..=order {
            let s: f64 = (1..=k).map(|j| other.c[j] * q[k - j]).sum();
            q[k] = (self.c[k] - s) / b0;
        }
        Ok(Jet { c: q, order })
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(1.0, self.order).div(self)
    }

    pub fn exp(&self) -> Jet {
        let mut e = [0.0; N];
        e[0] = self.c[0].exp();
        for k in 1..=self.order {
            let s: f64 = (1..=k).map(|j| j as f64 * self.c[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet { c: e, order: self.order }
    }

    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if !(a0 > 0.0) {
            return Err(Error::EvalDomain { op: "log", arg: a0 });
        }
        let mut l = [0.0; N];
        l[0] = a0.ln();
        for k in 1..=self.order {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * self.c[k - j]).sum();
            l[k] = (self.c[k] - s / k as f64) / a0;
        }
        Ok(Jet { c: l, order: self.order })
    }

    /// `(sin f, cos f)` computed together.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let mut s = [0.0; N];
        let mut c = [0.0; N];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..=self.order {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                let w = j as f64 * self.c[j];
                ss += w * c[k - j];
                cc += w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = -cc / k as f64;
        }
        (Jet { c: s, order: self.order }, Jet { c, order: self.order })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    pub fn tan(&self) -> Result<Jet> {
        let (s, c) = self.sin_cos();
        if c.value().abs() < POLE_TOL {
            return Err(Error::EvalDomain { op: "tan", arg: self.c[0] });
        }
        s.div(&c)
    }

    pub fn sec(&self) -> Result<Jet> {
        let c = self.cos();
        if c.value().abs() < POLE_TOL {
            return Err(Error::EvalDomain { op: "sec", arg: self.c[0] });
        }
        c.recip()
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.c[0];
        if a0 < 0.0 {
            return Err(Error::EvalDomain { op: "sqrt", arg: a0 });
        }
        let mut r = [0.0; N];
        r[0] = a0.sqrt();
        if self.order > 0 && r[0] == 0.0 {
            return Err(Error::JetSingularity { op: "sqrt" });
        }
        for k in 1..=self.order {
            let s: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (self.c[k] - s) / (2.0 * r[0]);
        }
        Ok(Jet { c: r, order: self.order })
    }

    pub fn powi(&self, n: i32) -> Result<Jet> {
        let mut base = if n < 0 { self.recip()? } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(1.0, self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `f^g = exp(g ln f)`, requiring `f > 0` at the base point.
    pub fn pow(&self, exponent: &Jet) -> Result<Jet> {
        if !(self.c[0] > 0.0) {
            return Err(Error::EvalDomain { op: "pow", arg: self.c[0] });
        }
        Ok(exponent.mul(&self.ln()?).exp())
    }

    /// `self ∘ inner`, where `self` is expanded about `inner.value()`.
    pub fn compose(&self, inner: &Jet) -> Jet {
        let order = self.order.min(inner.order);
        let mut shift = *inner;
        shift.c[0] = 0.0;
        let shift = shift.truncate(order);
        let mut acc = Jet::constant(self.c[order], order);
        for k in (0..order).rev() {
            acc = acc.mul(&shift).add_const(self.c[k]);
        }
        acc
    }

    /// Series reversion: given `self(h) = y₀ + a₁h + …` with `a₁ ≠ 0`, returns
    /// `h(δ)` with `self(h(δ)) = y₀ + δ` through the jet order.
    pub fn revert(&self) -> Result<Jet> {
        let a1 = self.coeff(1);
        if self.order == 0 || a1 == 0.0 {
            return Err(Error::JetSingularity { op: "series reversion" });
        }
        let mut centered = *self;
        centered.c[0] = 0.0;
        let delta = Jet::variable(0.0, self.order);
        let mut h = delta.scale(1.0 / a1);
        // each pass fixes one more coefficient
        for _ in 1..self.order {
            let residual = centered.compose(&h).sub(&h.scale(a1));
            h = delta.sub(&residual).scale(1.0 / a1);
        }
        Ok(h)
    }
}

/// Dot product of two jet-valued 3-vectors.
pub fn dot3(a: &[Jet; 3], b: &[Jet; 3]) -> Jet {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn cross3(a: &[Jet; 3], b: &[Jet; 3]) -> [Jet; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn derivative3(a: &[Jet; 3]) -> [Jet; 3] {
    [a[0].derivative(), a[1].derivative(), a[2].derivative()]
}

pub fn values3(a: &[Jet; 3]) -> [f64; 3] {
    [a[0].value(), a[1].value(), a[2].value()]
}
