use mulgeo::scalar::{FieldOp, MulScalar};
use mulgeo::vector::MulVector3;
use proptest::prelude::*;

fn s(u: f64) -> MulScalar {
    MulScalar::from_log(u).unwrap()
}

fn v(l: [f64; 3]) -> MulVector3 {
    MulVector3::from_logs(l).unwrap()
}

fn close(a: MulScalar, b: MulScalar, tol: f64) -> Result<(), TestCaseError> {
    let d = a.log_distance(b);
    prop_assert!(d <= tol, "{} vs {} (log error {d:e})", a.log(), b.log());
    Ok(())
}

fn scalar() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

fn vec3() -> impl Strategy<Value = [f64; 3]> {
    [-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn add_is_abelian(a in scalar(), b in scalar(), c in scalar()) {
        let (a, b, c) = (s(a), s(b), s(c));
        close(a.add(b).unwrap(), b.add(a).unwrap(), 1e-12)?;
        close(a.add(b).unwrap().add(c).unwrap(), a.add(b.add(c).unwrap()).unwrap(), 1e-12)?;
        close(a.add(MulScalar::ZERO).unwrap(), a, 0.0)?;
        close(a.add(a.neg()).unwrap(), MulScalar::ZERO, 1e-12)?;
    }

    #[test]
    fn mul_is_abelian_and_distributes(a in scalar(), b in scalar(), c in scalar()) {
        let (a, b, c) = (s(a), s(b), s(c));
        close(a.mul(b).unwrap(), b.mul(a).unwrap(), 1e-12)?;
        close(a.mul(b).unwrap().mul(c).unwrap(), a.mul(b.mul(c).unwrap()).unwrap(), 1e-12)?;
        close(a.mul(MulScalar::ONE).unwrap(), a, 1e-12)?;
        let lhs = a.mul(b.add(c).unwrap()).unwrap();
        close(lhs, a.mul(b).unwrap().add(a.mul(c).unwrap()).unwrap(), 1e-12)?;
    }

    #[test]
    fn ops_conjugate_to_classical(a in scalar(), b in scalar()) {
        prop_assume!(b.abs() > 1e-3);
        let (x, y) = (s(a), s(b));
        // quotients past e^709 are not representable
        if (a / b).abs() > 700.0 {
            let over = matches!(x.field_op(FieldOp::Div, y), Err(mulgeo::Error::RangeOverflow { .. }));
            prop_assert!(over);
            return Ok(());
        }
        // conjugate against the logs of the stored values
        let (a, b) = (x.log(), y.log());
        for (op, want) in [(FieldOp::Add, a + b), (FieldOp::Sub, a - b), (FieldOp::Mul, a * b), (FieldOp::Div, a / b)] {
            let got = x.field_op(op, y).unwrap().log();
            prop_assert!((got - want).abs() <= 1e-12, "{op:?}: {got} vs {want}");
        }
    }

    #[test]
    fn abs_is_nonnegative_and_even(a in scalar()) {
        let x = s(a);
        prop_assert!(x.abs() >= MulScalar::ZERO);
        close(x.abs(), s(-a).abs(), 1e-12)?;
    }

    #[test]
    fn inner_and_cross_conjugate(a in vec3(), b in vec3()) {
        let (u, w) = (v(a), v(b));
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        prop_assert!((u.inner(&w).unwrap().log() - dot).abs() <= 1e-12);
        let n = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((u.norm().unwrap().log() - n).abs() <= 1e-12);
        let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        prop_assert!(u.cross(&w).unwrap().max_log_error(&v(c)) <= 1e-12);
    }

    #[test]
    fn cauchy_schwarz(a in vec3(), b in vec3()) {
        let (u, w) = (v(a), v(b));
        let lhs = u.inner(&w).unwrap().log().abs();
        let rhs = u.norm().unwrap().log() * w.norm().unwrap().log();
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn cross_is_orthogonal(a in vec3(), b in vec3()) {
        let (u, w) = (v(a), v(b));
        let c = u.cross(&w).unwrap();
        close(c.inner(&u).unwrap(), MulScalar::ZERO, 1e-12)?;
        close(c.inner(&w).unwrap(), MulScalar::ZERO, 1e-12)?;
    }

    #[test]
    fn angle_conjugates(a in vec3(), b in vec3()) {
        let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(na > 0.1 && nb > 0.1);
        let cos = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) / (na * nb);
        // arccos loses accuracy near ±1
        prop_assume!(cos.abs() < 0.999);
        let got = v(a).angle(&v(b)).unwrap().log();
        prop_assert!((got - cos.acos()).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pythagorean_sec_tan(u in -1.5..1.5f64) {
        let x = s(u);
        let lhs = x.sec().unwrap().square().unwrap();
        let rhs = MulScalar::ONE.add(x.tan().unwrap().square().unwrap()).unwrap();
        close(lhs, rhs, 1e-10)?;
    }
}

#[test]
fn field_examples() {
    assert!((MulScalar::new(2.0).unwrap().add(MulScalar::new(3.0).unwrap()).unwrap().value() - 6.0).abs() < 1e-14);
    assert_eq!(s(2.0).mul(s(3.0)).unwrap().log(), 6.0);
    assert!(s(6.0).div(MulScalar::ZERO).is_err());
    assert_eq!(s(3.0).square().unwrap().log(), 9.0);
    assert!((MulScalar::new(0.5).unwrap().abs().value() - 2.0).abs() < 1e-15);
    assert!(MulScalar::new(0.5).unwrap().sqrt().is_err());
    assert!((s(std::f64::consts::PI).cos().unwrap().log() + 1.0).abs() < 1e-15);
    assert_eq!(MulScalar::ZERO.sec().unwrap(), MulScalar::ONE);
}

#[test]
fn vector_examples() {
    let e1 = v([1.0, 0.0, 0.0]);
    let e2 = v([0.0, 1.0, 0.0]);
    assert_eq!(e1.cross(&e2).unwrap(), v([0.0, 0.0, 1.0]));
    assert_eq!(e1.inner(&e2).unwrap(), MulScalar::ZERO);
    assert_eq!(v([2.0, 0.0, 0.0]).inner(&v([3.0, 0.0, 0.0])).unwrap().log(), 6.0);
    assert!((e1.angle(&e2).unwrap().log() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert_eq!(e1.angle(&v([2.0, 0.0, 0.0])).unwrap(), MulScalar::ZERO);
    for th in [0.0f64, 1.0, 2.0] {
        assert!((v([th.cos(), th.sin(), 0.0]).norm().unwrap().log() - 1.0).abs() < 1e-15);
    }
}
