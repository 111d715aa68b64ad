mod support;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use mulgeo::curve::{
    analyze, arc_length, catalog, classify, classify_line, classify_planar, classify_rectifying, classify_spherical,
    construct_rectifying, decompose, frenet, is_unit_speed, recompute_invariants, reconstruct_from_curvatures, speed,
    unit_speed_view, AnalysisOptions, Backend, Domain, ExprProfile, FrenetData, MulCurve, ReconstructionSetup,
    CATALOG_NAMES, MAX_STEP,
};
use mulgeo::scalar::MulScalar;
use mulgeo::vector::MulVector3;
use mulgeo::Error;
use rand::Rng;
use support::LogCurveOracle;

fn at(u: f64) -> MulScalar {
    MulScalar::from_log(u).unwrap()
}

fn v(l: [f64; 3]) -> MulVector3 {
    MulVector3::from_logs(l).unwrap()
}

fn trimmed(curve: &MulCurve, opts: &AnalysisOptions) -> (f64, f64) {
    let (lo, hi) = curve.domain().log_bounds();
    let t = opts.trim * (hi - lo);
    (lo + t, hi - t)
}

fn max_abs(a: [f64; 3]) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn comb(terms: &[(f64, [f64; 3])]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, v) in terms {
        for i in 0..3 {
            out[i] += k * v[i];
        }
    }
    out
}

#[test]
fn catalog_examples() {
    let eq = catalog("equator").unwrap();
    assert!(eq.position(MulScalar::ZERO).unwrap().max_log_error(&v([1.0, 0.0, 0.0])) < 1e-15);
    let chen = catalog("chen_rectifying").unwrap();
    let p = chen.position(MulScalar::ZERO).unwrap();
    assert!(p.max_log_error(&v([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0])) < 1e-15);
    let y = catalog("spherical_y").unwrap();
    assert!(is_unit_speed(&y, &AnalysisOptions::default()).unwrap());
    let fit = classify_spherical(&y, &AnalysisOptions::default()).unwrap();
    assert!(fit.spherical && (fit.radius_log - 1.0).abs() < 1e-12 && max_abs(fit.center_log) < 1e-12);
    assert!(matches!(catalog("helix"), Err(Error::UnknownCurve(_))));
}

#[test]
fn speed_examples() {
    let d = Domain::from_logs(-1.0, 1.0).unwrap();
    let circle = catalog("mul_circle").unwrap();
    for u in [-2.0, 0.0, 1.3] {
        assert!((speed(&circle, at(u), Backend::Jet).unwrap().log() - 1.0).abs() < 1e-15);
    }
    // P +* s ·* v with ‖v‖* = e
    let line = MulCurve::parse("line", ["2*t^0.6", "t^0.8", "3"], d).unwrap();
    assert!((speed(&line, at(0.4), Backend::Jet).unwrap().log() - 1.0).abs() < 1e-14);
    let sq = MulCurve::parse("sq", ["t^2", "1", "1"], d).unwrap();
    assert!((speed(&sq, at(0.4), Backend::Jet).unwrap().log() - 2.0).abs() < 1e-14);
    assert!(!is_unit_speed(&sq, &AnalysisOptions::default()).unwrap());
    assert!(matches!(
        unit_speed_view(&sq, &AnalysisOptions::default()),
        Err(Error::NotUnitSpeed { .. })
    ));
}

#[test]
fn arc_length_examples() {
    let circle = catalog("mul_circle").unwrap();
    let l = arc_length(&circle, MulScalar::ZERO, at(FRAC_PI_2), Backend::Jet).unwrap();
    assert!((l.log() - FRAC_PI_2).abs() < 1e-12);
    let l = arc_length(&circle, at(-0.4), at(1.1), Backend::Jet).unwrap();
    assert!(l.log_distance(at(1.1).sub(at(-0.4)).unwrap()) < 1e-12);
    // the secant factor of the rectifying curve turns arc length into tan*
    let chen = catalog("chen_rectifying").unwrap();
    for u in [0.3, 1.0, 1.4] {
        let l = arc_length(&chen, MulScalar::ZERO, at(u), Backend::Jet).unwrap();
        assert!((l.log() - u.tan()).abs() < 1e-10, "{u}");
    }
}

fn conjugation_errors(name: &str, backend: Backend, seed: u64) -> (f64, f64) {
    let curve = catalog(name).unwrap();
    let opts = AnalysisOptions::for_backend(backend);
    let view = unit_speed_view(&curve, &opts).unwrap();
    let oracle = LogCurveOracle::new(curve.components());
    let (lo, hi) = trimmed(&view, &opts);
    let mut rng = support::rng(seed);
    let (mut ek, mut et) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let f = frenet(&view, at(rng.gen_range(lo..hi)), backend).unwrap();
        let (k, t, _) = oracle.kappa_tau(f.param.log());
        ek = ek.max((f.kappa.log() - k).abs());
        et = et.max((f.tau.log() - t).abs());
    }
    (ek, et)
}

#[test]
fn curvatures_conjugate_to_classical() {
    for (i, name) in CATALOG_NAMES.iter().enumerate() {
        let (k, t) = conjugation_errors(name, Backend::Jet, i as u64);
        assert!(k <= 1e-8 && t <= 1e-8, "{name} jet: κ {k:e} τ {t:e}");
        let (k, t) = conjugation_errors(name, Backend::FiniteDifference, i as u64);
        assert!(k <= 1e-4 && t <= 1e-4, "{name} fd: κ {k:e} τ {t:e}");
    }
}

fn frenet_residuals(f: &FrenetData) -> [f64; 3] {
    let (k, tau) = (f.kappa.log(), f.tau.log());
    let (t, n, b) = (f.t.logs(), f.n.logs(), f.b.logs());
    [
        max_abs(comb(&[(1.0, f.t_star.logs()), (-k, n)])),
        max_abs(comb(&[(1.0, f.n_star.logs()), (k, t), (-tau, b)])),
        max_abs(comb(&[(1.0, f.b_star.logs()), (tau, n)])),
    ]
}

#[test]
fn frenet_equations_hold() {
    let opts = AnalysisOptions { samples: 128, ..Default::default() };
    for name in CATALOG_NAMES {
        let a = analyze(&catalog(name).unwrap(), &opts).unwrap();
        for (f, d) in a.frames() {
            let r = frenet_residuals(f);
            assert!(max_abs(r) <= 1e-8, "{name} at {}: {r:?}", f.s.log());
            // n ×* b = t, b ×* t = n
            assert!(f.n.cross(&f.b).unwrap().max_log_error(&f.t) < 1e-12);
            assert!(f.b.cross(&f.t).unwrap().max_log_error(&f.n) < 1e-12);
            // ρ²* = λ²* +* ν²* +* μ²*
            let (l, n, m) = (d.lambda.log(), d.nu.log(), d.mu.log());
            assert!((d.rho.log().powi(2) - (l * l + n * n + m * m)).abs() < 1e-10);
        }
    }
}

#[test]
fn inner_product_rule() {
    type Field = fn(&FrenetData) -> [f64; 3];
    let pairs: [(Field, Field, Field, Field); 4] = [
        (|f| f.t.logs(), |f| f.t_star.logs(), |f| f.n.logs(), |f| f.n_star.logs()),
        (|f| f.n.logs(), |f| f.n_star.logs(), |f| f.b.logs(), |f| f.b_star.logs()),
        (|f| f.t.logs(), |f| f.t_star.logs(), |f| f.b.logs(), |f| f.b_star.logs()),
        (|f| f.position.logs(), |f| f.t.logs(), |f| f.t.logs(), |f| f.t_star.logs()),
    ];
    let h = 1e-3;
    for name in CATALOG_NAMES {
        let opts = AnalysisOptions::default();
        let view = unit_speed_view(&catalog(name).unwrap(), &opts).unwrap();
        let (lo, hi) = trimmed(&view, &opts);
        for j in 1..8 {
            let s = lo + (hi - lo) * j as f64 / 8.0;
            let fr: Vec<FrenetData> = [-2.0, -1.0, 0.0, 1.0, 2.0]
                .iter()
                .map(|k| frenet(&view, at(s + k * h), Backend::Jet).unwrap())
                .collect();
            for (u, du, w, dw) in &pairs {
                let g: Vec<f64> = fr.iter().map(|f| support::dot(u(f), w(f))).collect();
                let lhs = (g[0] - 8.0 * g[1] + 8.0 * g[3] - g[4]) / (12.0 * h);
                let f = &fr[2];
                let rhs = support::dot(du(f), w(f)) + support::dot(u(f), dw(f));
                assert!((lhs - rhs).abs() <= 1e-8, "{name} at {s}: {lhs} vs {rhs}");
            }
        }
    }
}

#[test]
fn decomposition_examples() {
    let eq = catalog("equator").unwrap();
    let d = decompose(&eq, at(0.8), Backend::Jet).unwrap();
    assert!(d.lambda.log().abs() < 1e-14 && (d.nu.log() + 1.0).abs() < 1e-14 && d.mu.log().abs() < 1e-14);
    let f = frenet(&eq, at(0.8), Backend::Jet).unwrap();
    assert!(f.n.max_log_error(&v([-(0.8f64.cos()), -(0.8f64.sin()), 0.0])) < 1e-14);
    let opts = AnalysisOptions::default();
    let chen = unit_speed_view(&catalog("chen_rectifying").unwrap(), &opts).unwrap();
    let a = analyze(&chen, &opts).unwrap();
    assert!(a.frames().all(|(_, d)| d.nu.log().abs() < 1e-8));
    let f = frenet(&chen, at(0.3), Backend::Jet).unwrap();
    assert!(f.kappa.log().is_finite() && f.tau.log().abs() > 1e-3);
}

#[test]
fn line_and_plane() {
    let opts = AnalysisOptions::default();
    let line = MulCurve::parse("line", ["e", "t", "1"], Domain::from_logs(-1.0, 1.0).unwrap()).unwrap();
    assert!(classify_line(&line, &opts).unwrap());
    assert!(matches!(frenet(&line, MulScalar::ONE, Backend::Jet), Err(Error::NotBiregular { .. })));
    assert!(classify_planar(&catalog("equator").unwrap(), &opts).unwrap());
    assert!(!classify_line(&catalog("equator").unwrap(), &opts).unwrap());
    assert!(!classify_planar(&catalog("chen_rectifying").unwrap(), &opts).unwrap());
}

#[test]
fn great_circle_identity() {
    let fit = classify_spherical(&catalog("equator").unwrap(), &AnalysisOptions::default()).unwrap();
    assert!(fit.spherical && (fit.radius_log - 1.0).abs() < 1e-12);
    assert_eq!(fit.identity.kind, "planar");
    assert!(fit.identity.pass && fit.identity.position_residual < 1e-12);
}

#[test]
fn small_circle_identity_recovers_circle_not_sphere() {
    // spherical_y has κ = √2 and τ = 0: the planar identity yields the small
    // circle's own center and radius e^{1/√2}, not the sphere's
    let fit = classify_spherical(&catalog("spherical_y").unwrap(), &AnalysisOptions::default()).unwrap();
    assert!(fit.spherical && (fit.radius_log - 1.0).abs() < 1e-12);
    assert_eq!(fit.identity.kind, "planar");
    assert!(!fit.identity.pass);
    assert!((fit.identity.radius_residual - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-10);
    assert!((fit.identity.position_residual - FRAC_1_SQRT_2).abs() < 1e-10);
}

#[test]
fn twisted_spherical_identity() {
    let curve = MulCurve::parse(
        "loxodrome",
        [
            "exp(cos(0.3*log(t)+0.5)*cos(log(t)))",
            "exp(cos(0.3*log(t)+0.5)*sin(log(t)))",
            "exp(sin(0.3*log(t)+0.5))",
        ],
        Domain::from_logs(0.2, 2.0).unwrap(),
    )
    .unwrap()
    .with_auto_reparametrize(true);
    let fit = classify_spherical(&curve, &AnalysisOptions::default()).unwrap();
    assert!(fit.spherical && (fit.radius_log - 1.0).abs() < 1e-10);
    assert_eq!(fit.identity.kind, "twisted");
    assert!(fit.identity.pass, "{:?}", fit.identity);
    assert!(fit.identity.position_residual <= 1e-8 && fit.identity.radius_residual <= 1e-8);
}

#[test]
fn rectifying_criteria_agree() {
    let opts = AnalysisOptions::default();
    let r = classify(&catalog("chen_rectifying").unwrap(), &opts).unwrap();
    assert!(r.rectifying && r.rectifying_residual.unwrap() <= 1e-8);
    assert!(!r.spherical && !r.planar);
    let d = r.diagnostics.unwrap();
    assert!(d.tangential.pass && d.curvature_ratio.pass == Some(true) && d.distance.pass && d.perp.pass && d.all_pass);
    assert!((d.perp.perp_norm_log - 1.0).abs() <= 1e-6);
    assert!((d.curvature_ratio.c - 1.0).abs() < 1e-6);

    for name in ["equator", "mul_circle"] {
        let r = classify_rectifying(&catalog(name).unwrap(), &opts).unwrap();
        assert!(!r.rectifying);
        let d = r.diagnostics.unwrap();
        assert!(!d.tangential.pass && !d.distance.pass && !d.perp.pass && !d.all_pass, "{name}");
        // τ ≡ 0: the ratio law has no slope to test
        assert!(d.curvature_ratio.degenerate && d.curvature_ratio.pass.is_none());
    }
}

#[test]
fn construction_closes_the_loop() {
    let opts = AnalysisOptions::default();
    let y = catalog("spherical_y").unwrap();
    for a in [0.5, 1.0, 2.0] {
        let x = construct_rectifying(at(a), &y, &opts).unwrap();
        let r = classify_rectifying(&x, &opts).unwrap();
        assert!(r.rectifying && r.rectifying_residual.unwrap() <= 1e-8, "a = e^{a}");
        assert!((r.perp_norm_log.unwrap() - a).abs() <= 1e-6, "a = e^{a}: {:?}", r.perp_norm_log);
    }
    let x = construct_rectifying(MulScalar::ONE, &y, &opts).unwrap();
    let chen = catalog("chen_rectifying").unwrap();
    let (lo, hi) = chen.domain().log_bounds();
    for j in 0..=50 {
        let s = at(lo + (hi - lo) * j as f64 / 50.0);
        assert!(x.position(s).unwrap().max_log_error(&chen.position(s).unwrap()) <= 1e-10);
    }
}

#[test]
fn construction_rejects_bad_input() {
    let opts = AnalysisOptions::default();
    let y = catalog("spherical_y").unwrap();
    assert!(matches!(construct_rectifying(MulScalar::ZERO, &y, &opts), Err(Error::InvalidArgument(_))));
    let off = MulCurve::parse("big", ["exp(2*cos(log(t)))", "exp(2*sin(log(t)))", "1"], Domain::from_logs(-1.0, 1.0).unwrap())
        .unwrap();
    assert!(construct_rectifying(MulScalar::ONE, &off, &opts).is_err());
}

#[test]
fn reconstruction_reproduces_invariants() {
    for name in ["mul_circle", "equator", "spherical_y"] {
        let r = support::reconstruction_round_trip(&catalog(name).unwrap(), None, 25);
        assert!(r.kappa <= 1e-6 && r.tau <= 1e-6 && r.position <= 1e-6, "{name}: {r:?}");
    }
    let r = support::reconstruction_round_trip(&catalog("chen_rectifying").unwrap(), Some((-2.0, 2.0)), 25);
    assert!(r.kappa <= 1e-6 && r.tau <= 1e-6, "{r:?}");
    assert!(r.position <= 1e-5, "{r:?}");
}

#[test]
fn constant_curvatures_give_a_helix() {
    let profile = ExprProfile::new("e".parse().unwrap(), "e".parse().unwrap());
    let setup = ReconstructionSetup {
        x0: v([0.0; 3]),
        t0: v([1.0, 0.0, 0.0]),
        n0: v([0.0, 1.0, 0.0]),
        start: MulScalar::ZERO,
        domain: Domain::from_logs(-PI, PI).unwrap(),
        max_step: MAX_STEP,
    };
    let rec = reconstruct_from_curvatures(&profile, &setup).unwrap();
    let inv = recompute_invariants(&rec).unwrap();
    assert!(inv.iter().all(|i| (i.kappa.log() - 1.0).abs() <= 1e-6 && (i.tau.log() - 1.0).abs() <= 1e-6));
    // κ = τ = 1: radius 1/2 about the axis through (0, 1/2, 0) along (t0 + b0)/√2
    let axis = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
    for f in rec.samples.iter().step_by(100) {
        let rel = comb(&[(1.0, f.x.logs()), (-0.5, [0.0, 1.0, 0.0])]);
        let along = support::dot(rel, axis);
        let radial = support::norm(comb(&[(1.0, rel), (-along, axis)]));
        assert!((radial - 0.5).abs() < 1e-9, "{radial}");
    }
}
