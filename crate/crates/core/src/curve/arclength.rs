use std::sync::Arc;

use rayon::prelude::*;

use super::{native_jets, Backend, Domain, REGULAR_TOL};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::jet::{derivative3, dot3};
use crate::quadrature::{gauss_legendre, gauss_panel};

const PANELS: usize = 512;
const GAUSS_POINTS: usize = 8;
/// Newton stops once a step is this small; quadratic convergence leaves an
/// error of order `|g'/g| · step²`.
const NEWTON_TOL: f64 = 1e-8;

/// Tabulated multiplicative arc length `σ(u) = ∫_{u_ref}^u ‖X'‖` over the
/// native log domain, with `u_ref = 0` when the domain contains `s = 1`
/// and the lower end otherwise.
#[derive(Debug)]
pub struct ArcLengthMap {
    components: Arc<[Expr; 3]>,
    backend: Backend,
    nodes: Vec<f64>,
    node_speed: Vec<f64>,
    sigma: Vec<f64>,
    rule: Vec<(f64, f64)>,
}

impl ArcLengthMap {
    pub fn build(components: Arc<[Expr; 3]>, native: Domain, backend: Backend) -> Result<Self> {
        let (lo, hi) = native.log_bounds();
        let nodes: Vec<f64> = (0..=PANELS).map(|i| lo + (hi - lo) * i as f64 / PANELS as f64).collect();
        let mut map = ArcLengthMap {
            components,
            backend,
            nodes,
            node_speed: Vec::new(),
            sigma: Vec::new(),
            rule: gauss_legendre(GAUSS_POINTS),
        };
        let pieces: Vec<(f64, f64)> = (0..PANELS)
            .into_par_iter()
            .map(|i| Ok((map.speed(map.nodes[i])?, gauss_panel(&|u| map.speed(u), map.nodes[i], map.nodes[i + 1], &map.rule)?)))
            .collect::<Result<_>>()?;
        map.node_speed = pieces.iter().map(|p| p.0).collect();
        map.node_speed.push(map.speed(hi)?);
        let pieces = pieces.into_iter().map(|p| p.1);
        let mut sigma = Vec::with_capacity(PANELS + 1);
        let mut acc = 0.0;
        sigma.push(acc);
        for p in pieces {
            acc += p;
            sigma.push(acc);
        }
        map.sigma = sigma;
        let u_ref = if lo <= 0.0 && 0.0 <= hi { 0.0 } else { lo };
        let offset = map.sigma_of(u_ref)?;
        for s in &mut map.sigma {
            *s -= offset;
        }
        Ok(map)
    }

    /// Log-speed `‖X'(u)‖` of the original parametrization.
    pub fn speed(&self, u: f64) -> Result<f64> {
        let x = native_jets(&self.components, u, 1, self.backend)?;
        let dx = derivative3(&x);
        let g = dot3(&dx, &dx).value().sqrt();
        if g < REGULAR_TOL {
            return Err(Error::NotRegular { at: u });
        }
        Ok(g)
    }

    fn panel(&self, u: f64) -> usize {
        self.nodes.partition_point(|&n| n <= u).saturating_sub(1).min(PANELS - 1)
    }

    fn sigma_of(&self, u: f64) -> Result<f64> {
        let i = self.panel(u);
        Ok(self.sigma[i] + gauss_panel(&|v| self.speed(v), self.nodes[i], u, &self.rule)?)
    }

    /// `σ` at native log-parameter `u`.
    pub fn sigma(&self, u: f64) -> Result<f64> {
        let (lo, hi) = (self.nodes[0], self.nodes[PANELS]);
        if !(lo..=hi).contains(&u) {
            return Err(Error::OutsideDomain { at: u, min: lo, max: hi });
        }
        self.sigma_of(u)
    }

    /// Arc-length parameter domain.
    pub fn domain(&self) -> Domain {
        Domain::from_logs(self.sigma[0], self.sigma[PANELS]).expect("a regular curve has positive length")
    }

    /// Cubic Hermite interpolation of `u(σ)` on panel `i`, using `du/dσ = 1/‖X'‖`.
    fn hermite_guess(&self, i: usize, target: f64) -> f64 {
        let (sa, sb) = (self.sigma[i], self.sigma[i + 1]);
        let w = sb - sa;
        let x = (target - sa) / w;
        let (x2, x3) = (x * x, x * x * x);
        let h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
        let h10 = x3 - 2.0 * x2 + x;
        let h01 = -2.0 * x3 + 3.0 * x2;
        let h11 = x3 - x2;
        h00 * self.nodes[i] + h10 * w / self.node_speed[i] + h01 * self.nodes[i + 1] + h11 * w / self.node_speed[i + 1]
    }

    /// Native log-parameter `u` with `σ(u) = target`.
    pub fn invert(&self, target: f64) -> Result<f64> {
        let (s0, s1) = (self.sigma[0], self.sigma[PANELS]);
        let slack = 1e-12 * (1.0 + s0.abs().max(s1.abs()));
        if !(target >= s0 - slack && target <= s1 + slack) {
            return Err(Error::OutsideDomain { at: target, min: s0, max: s1 });
        }
        let target = target.clamp(s0, s1);
        let i = self.sigma.partition_point(|&s| s <= target).saturating_sub(1).min(PANELS - 1);
        let (mut lo, mut hi) = (self.nodes[i], self.nodes[i + 1]);
        let mut u = self.hermite_guess(i, target).clamp(lo, hi);
        for _ in 0..64 {
            let f = self.sigma_of(u)? - target;
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let mut next = u - f / self.speed(u)?;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let done = (next - u).abs() <= NEWTON_TOL;
            u = next;
            if done {
                break;
            }
        }
        Ok(u)
    }
}
