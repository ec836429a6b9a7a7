use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use zetalab::surd::{ratio, SurdValue};
use zetalab::Error;

fn rational() -> impl Strategy<Value = BigRational> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn surd() -> impl Strategy<Value = SurdValue> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| SurdValue::new(a, b, c, d))
}

fn nonzero_surd() -> impl Strategy<Value = SurdValue> {
    surd().prop_filter("nonzero", |v| !v.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn eval_is_a_ring_map(u in surd(), v in surd()) {
        let p = 160;
        let lhs = (&u * &v).eval(p);
        let rhs = u.eval(p) * v.eval(p);
        let scale = 1.0 + u.eval(64).to_f64().abs() * v.eval(64).to_f64().abs();
        let err = (lhs - rhs).to_f64().abs();
        prop_assert!(err <= scale * 2f64.powi(-(p as i32) + 6));
    }

    #[test]
    fn inverse_is_exact(u in nonzero_surd()) {
        let inv = u.inverse().unwrap();
        prop_assert_eq!(&u * &inv, SurdValue::one());
    }

    #[test]
    fn norm_is_multiplicative(u in surd(), v in surd()) {
        prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
    }

    #[test]
    fn text_round_trip(u in surd()) {
        let s = u.to_string();
        let back: SurdValue = s.parse().unwrap();
        prop_assert_eq!(back.to_string(), s);
        prop_assert_eq!(back, u);
    }

    #[test]
    fn field_axioms(u in surd(), v in surd(), w in surd()) {
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        prop_assert!((&u - &u).is_zero());
    }
}

#[test]
fn worked_examples() {
    let one = SurdValue::one();
    let r2 = SurdValue::r2();
    assert_eq!(&(&one + &r2) + &(&one - &r2), SurdValue::int(2));
    assert_eq!(&r2 + &SurdValue::r3(), SurdValue::new(ratio(0, 1), ratio(1, 1), ratio(1, 1), ratio(0, 1)));
    assert_eq!(&(&one + &r2) * &(&one - &r2), SurdValue::int(-1));
    let u = &SurdValue::int(5) + &SurdValue::r6().scale(&ratio(2, 1));
    assert_eq!(&u * &(&SurdValue::int(5) - &SurdValue::r6().scale(&ratio(2, 1))), one);
    assert!((&u + &(-&u)).is_zero());

    assert_eq!(r2.inverse().unwrap(), r2.scale(&ratio(1, 2)));
    assert_eq!((&one + &r2).inverse().unwrap(), &r2 - &one);
    assert_eq!(SurdValue::zero().inverse(), Err(Error::DivisionByZero));
}

#[test]
fn evaluation_and_logs() {
    assert_eq!(SurdValue::one().eval(64).to_f64(), 1.0);
    let s6 = SurdValue::r6().eval(128);
    assert!(s6.to_fixed(37, true).starts_with("2.449489742783178098197284074705891391"));
    assert!((&s6 * &s6 - zetalab::HPReal::from_i64(6, 128)).log10_abs() < -36.0);

    // (5+2√6)/(4√6)
    let num = &SurdValue::int(5) + &SurdValue::r6().scale(&ratio(2, 1));
    let q = num.div(&SurdValue::r6().scale(&ratio(4, 1))).unwrap();
    let v = q.eval(128).to_f64();
    assert!(v > 1.0 && (v - 1.0103).abs() < 1e-4, "{v}");

    assert!(SurdValue::one().ln(64).unwrap().is_zero());
    let l = SurdValue::frac(3, 2).ln(128).unwrap();
    assert!(l.to_fixed(12, true).starts_with("0.405465108108"));
    // (√2+√3)/(2√2)
    let a = (&SurdValue::r2() + &SurdValue::r3()).div(&SurdValue::r2().scale(&ratio(2, 1))).unwrap();
    let la = a.ln(128).unwrap().to_f64();
    assert!(la > 0.0 && la < 0.12 && (la - 0.106495063940670).abs() < 1e-14, "{la}");
    assert!(SurdValue::int(-2).ln(64).is_err());
    assert!(SurdValue::one().scale(&BigRational::one()).ln(64).is_ok());
}
