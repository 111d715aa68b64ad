use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::frenet::{analyze, Analysis};
use super::{AnalysisOptions, MulCurve};
use crate::error::{Error, Result};

/// Log-range above which a quantity counts as nonconstant.
pub const NONCONSTANT_TOL: f64 = 1e-6;

/// `|c|` at or below this marks a constant curvature ratio.
pub const DEGENERATE_RATIO_TOL: f64 = 1e-6;

const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    /// `"twisted"` when every sample has nonzero torsion, `"planar"` when none has, else `"mixed"`.
    pub kind: &'static str,
    pub position_residual: f64,
    pub radius_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereFit {
    pub spherical: bool,
    pub center_log: [f64; 3],
    pub radius_log: f64,
    pub residual: f64,
    pub identity: IdentityCheck,
}

/// `ln λ = ln s + ln a` and `μ ≡ b ≠ 0*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangentialLaw {
    pub a_log: f64,
    pub b_log: f64,
    pub lambda_residual: f64,
    pub mu_residual: f64,
    pub pass: bool,
}

/// `ln(τ /* κ) = c ln s + ln d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureRatioLaw {
    pub c: f64,
    pub d_log: f64,
    pub residual: f64,
    pub degenerate: bool,
    /// No verdict when the ratio is constant.
    pub pass: Option<bool>,
}

/// `(ln ρ)² = (ln s)² + c ln s + d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceLaw {
    pub c: f64,
    pub d: f64,
    /// Translation in `ln s` that removes the linear term.
    pub shift: f64,
    /// `d - c²/4`, the squared log-distance at the vertex.
    pub minimum: f64,
    pub residual: f64,
    pub pass: bool,
}

/// `ρ` nonconstant and `‖x^⊥‖*` constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerpLaw {
    pub rho_range: f64,
    pub perp_norm_log: f64,
    pub perp_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RectifyingDiagnostics {
    pub tangential: TangentialLaw,
    pub curvature_ratio: CurvatureRatioLaw,
    pub distance: DistanceLaw,
    pub perp: PerpLaw,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub curve: String,
    pub backend: &'static str,
    pub tol: f64,
    pub samples_used: usize,
    pub reparametrized: bool,
    pub biregular: bool,
    pub line: bool,
    pub line_residual: f64,
    pub planar: bool,
    pub planar_residual: Option<f64>,
    pub spherical: bool,
    pub sphere: Option<SphereFit>,
    pub rectifying: bool,
    pub rectifying_residual: Option<f64>,
    pub perp_norm_log: Option<f64>,
    pub diagnostics: Option<RectifyingDiagnostics>,
}

fn max_abs(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |m, v| m.max(v.abs()))
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn range(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// Least squares by SVD. Returns the minimum-norm solution and the null-space directions.
fn least_squares(design: DMatrix<f64>, rhs: DVector<f64>) -> (DVector<f64>, Vec<DVector<f64>>) {
    let cols = design.ncols();
    let svd = design.svd(true, true);
    let smax = svd.singular_values.max();
    let cutoff = RANK_TOL * smax.max(1.0);
    let sol = svd.solve(&rhs, cutoff).expect("u and v were computed");
    let v_t = svd.v_t.as_ref().expect("v was computed");
    let null = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= cutoff)
        .map(|i| v_t.row(i).transpose())
        .chain((svd.singular_values.len()..cols).map(|_| DVector::zeros(cols)))
        .collect();
    (sol, null)
}

/// Fits `y ≈ c x + d`.
fn affine_fit(x: &[f64], y: &[f64], what: &'static str) -> Result<(f64, f64)> {
    let design = DMatrix::from_fn(x.len(), 2, |i, j| if j == 0 { x[i] } else { 1.0 });
    let (sol, null) = least_squares(design, DVector::from_column_slice(y));
    if !null.is_empty() {
        return Err(Error::DegenerateFit { what });
    }
    Ok((sol[0], sol[1]))
}

fn fit_sphere(points: &[[f64; 3]]) -> Result<([f64; 3], f64)> {
    // |X - C|² = r²  ⇔  2 X·C + k = |X|²,  k = r² - |C|²
    let design = DMatrix::from_fn(points.len(), 4, |i, j| if j < 3 { 2.0 * points[i][j] } else { 1.0 });
    let rhs = DVector::from_iterator(points.len(), points.iter().map(|p| p.iter().map(|v| v * v).sum()));
    let (mut sol, null) = least_squares(design, rhs);
    if null.len() > 1 {
        return Err(Error::DegenerateFit { what: "sphere center" });
    }
    // a planar curve leaves the center free along the plane normal; take the center nearest 0*
    for v in &null {
        let vc2: f64 = (0..3).map(|j| v[j] * v[j]).sum();
        if vc2 > 0.0 {
            let t = -(0..3).map(|j| sol[j] * v[j]).sum::<f64>() / vc2;
            sol += v * t;
        }
    }
    let center = [sol[0], sol[1], sol[2]];
    let r2 = sol[3] + center.iter().map(|c| c * c).sum::<f64>();
    if !(r2 > 0.0) {
        return Err(Error::DegenerateFit { what: "sphere radius" });
    }
    Ok((center, r2.sqrt()))
}

fn sphere_fit(a: &Analysis) -> Result<SphereFit> {
    a.require_biregular()?;
    let tol = a.options.tol;
    let points: Vec<[f64; 3]> = a.samples.iter().map(|s| s.position.logs()).collect();
    let rho: Vec<f64> = points.iter().map(|p| norm(*p)).collect();
    let (center, radius) = if range(&rho) <= tol { ([0.0; 3], mean(&rho)) } else { fit_sphere(&points)? };
    let residual = max_abs(points.iter().map(|p| norm(sub(*p, center)) - radius));

    let (mut twisted, mut planar) = (0usize, 0usize);
    let (mut pos_res, mut rad_res) = (0.0f64, 0.0f64);
    for (f, _) in a.frames() {
        let k = f.kappa.log();
        let tau = f.tau.log();
        let n = f.n.logs();
        let b = f.b.logs();
        let rel = sub(f.position.logs(), center);
        let (predicted, r) = if tau.abs() <= tol {
            planar += 1;
            (scale(n, -1.0 / k), 1.0 / k)
        } else {
            twisted += 1;
            let w = f.kappa_star.log() / (k * k * tau);
            (add(scale(n, -1.0 / k), scale(b, w)), (1.0 / (k * k) + w * w).sqrt())
        };
        pos_res = pos_res.max(max_abs(sub(rel, predicted).into_iter()));
        rad_res = rad_res.max((r - radius).abs());
    }
    let kind = match (twisted, planar) {
        (_, 0) => "twisted",
        (0, _) => "planar",
        _ => "mixed",
    };
    let identity = IdentityCheck {
        kind,
        position_residual: pos_res,
        radius_residual: rad_res,
        pass: pos_res <= tol && rad_res <= tol,
    };
    Ok(SphereFit { spherical: residual <= tol, center_log: center, radius_log: radius, residual, identity })
}

fn rectifying_diagnostics(a: &Analysis) -> Result<RectifyingDiagnostics> {
    a.require_biregular()?;
    let tol = a.options.tol;
    let sigma: Vec<f64> = a.samples.iter().map(|s| s.s.log()).collect();
    let frames: Vec<_> = a.frames().collect();
    let lambda: Vec<f64> = frames.iter().map(|(_, d)| d.lambda.log()).collect();
    let mu: Vec<f64> = frames.iter().map(|(_, d)| d.mu.log()).collect();
    let rho: Vec<f64> = frames.iter().map(|(_, d)| d.rho.log()).collect();
    let perp: Vec<f64> = frames.iter().map(|(_, d)| d.perp_norm.log()).collect();

    let offsets: Vec<f64> = lambda.iter().zip(&sigma).map(|(l, s)| l - s).collect();
    let a_log = mean(&offsets);
    let b_log = mean(&mu);
    let lambda_residual = max_abs(offsets.iter().map(|o| o - a_log));
    let mu_residual = max_abs(mu.iter().map(|m| m - b_log));
    let tangential = TangentialLaw {
        a_log,
        b_log,
        lambda_residual,
        mu_residual,
        pass: lambda_residual <= tol && mu_residual <= tol && b_log.abs() > tol,
    };

    let ratio: Vec<f64> = frames.iter().map(|(f, _)| f.tau.log() / f.kappa.log()).collect();
    let (c, d_log) = affine_fit(&sigma, &ratio, "curvature ratio")?;
    let ratio_residual = max_abs(sigma.iter().zip(&ratio).map(|(s, r)| r - (c * s + d_log)));
    let degenerate = c.abs() <= DEGENERATE_RATIO_TOL;
    let curvature_ratio = CurvatureRatioLaw {
        c,
        d_log,
        residual: ratio_residual,
        degenerate,
        pass: (!degenerate).then_some(ratio_residual <= tol),
    };

    let excess: Vec<f64> = sigma.iter().zip(&rho).map(|(s, r)| r * r - s * s).collect();
    let (dc, dd) = affine_fit(&sigma, &excess, "distance law")?;
    let distance_residual =
        max_abs(sigma.iter().zip(&rho).map(|(s, r)| (s * s + dc * s + dd).max(0.0).sqrt() - r));
    let minimum = dd - dc * dc / 4.0;
    let distance = DistanceLaw {
        c: dc,
        d: dd,
        shift: -dc / 2.0,
        minimum,
        residual: distance_residual,
        pass: distance_residual <= tol && minimum > 0.0,
    };

    let perp_norm_log = mean(&perp);
    let perp_residual = max_abs(perp.iter().map(|p| p - perp_norm_log));
    let rho_range = range(&rho);
    let perp_law = PerpLaw { rho_range, perp_norm_log, perp_residual, pass: rho_range > NONCONSTANT_TOL && perp_residual <= tol };

    let all_pass = tangential.pass && curvature_ratio.pass == Some(true) && distance.pass && perp_law.pass;
    Ok(RectifyingDiagnostics { tangential, curvature_ratio, distance, perp: perp_law, all_pass })
}

fn report(a: &Analysis) -> Result<ClassificationReport> {
    let tol = a.options.tol;
    let line_residual = max_abs(a.samples.iter().map(|s| s.kappa.log()));
    let biregular = a.is_biregular();
    let planar_residual = biregular.then(|| max_abs(a.frames().map(|(f, _)| f.tau.log())));
    let rectifying_residual = biregular.then(|| max_abs(a.frames().map(|(_, d)| d.nu.log())));
    let sphere = if biregular { Some(sphere_fit(a)?) } else { None };
    let diagnostics = if biregular { Some(rectifying_diagnostics(a)?) } else { None };
    Ok(ClassificationReport {
        curve: a.curve.label().to_string(),
        backend: a.options.backend.name(),
        tol,
        samples_used: a.samples.len(),
        reparametrized: a.curve.is_arc_length(),
        biregular,
        line: line_residual <= tol,
        line_residual,
        planar: planar_residual.is_some_and(|r| r <= tol),
        planar_residual,
        spherical: sphere.as_ref().is_some_and(|s| s.spherical),
        sphere,
        rectifying: rectifying_residual.is_some_and(|r| r <= tol),
        rectifying_residual,
        perp_norm_log: diagnostics.as_ref().map(|d| d.perp.perp_norm_log),
        diagnostics,
    })
}

/// Every classification with its fitted constants and residuals.
pub fn classify(curve: &MulCurve, opts: &AnalysisOptions) -> Result<ClassificationReport> {
    report(&analyze(curve, opts)?)
}

/// `κ ≡ 0*` on the sample grid.
pub fn classify_line(curve: &MulCurve, opts: &AnalysisOptions) -> Result<bool> {
    let a = analyze(curve, opts)?;
    Ok(max_abs(a.samples.iter().map(|s| s.kappa.log())) <= opts.tol)
}

/// Biregular with `τ ≡ 0*` on the sample grid.
pub fn classify_planar(curve: &MulCurve, opts: &AnalysisOptions) -> Result<bool> {
    let a = analyze(curve, opts)?;
    Ok(a.is_biregular() && max_abs(a.frames().map(|(f, _)| f.tau.log())) <= opts.tol)
}

pub fn classify_spherical(curve: &MulCurve, opts: &AnalysisOptions) -> Result<SphereFit> {
    sphere_fit(&analyze(curve, opts)?)
}

/// Rectifying verdict plus the full report; requires a biregular curve.
pub fn classify_rectifying(curve: &MulCurve, opts: &AnalysisOptions) -> Result<ClassificationReport> {
    let a = analyze(curve, opts)?;
    a.require_biregular()?;
    report(&a)
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn scale(a: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}
