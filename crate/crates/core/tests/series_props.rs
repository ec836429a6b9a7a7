use proptest::prelude::*;
use zetalab::hpreal::working_precision;
use zetalab::series::{
    descriptor, eval_method, evaluate, li3_expansion, ladder_plan, series_arguments, Family, Li3Variant, MethodId,
    PIndex,
};
use zetalab::surd::{ExtSurd, SurdValue};
use zetalab::HPReal;

fn q(n: i64, d: i64) -> ExtSurd {
    ExtSurd::base(SurdValue::frac(n, d))
}

#[test]
fn errors_decay_and_track_the_estimate() {
    for id in MethodId::ALL {
        let mut prev: Option<HPReal> = None;
        for n in 1..=8 {
            let r = eval_method(id, n, 256).unwrap();
            if let Some(p) = &prev {
                assert!(r.abs_error < *p, "{id} not decreasing at order {n}");
            }
            assert!(r.abs_error <= r.error_estimate.mul_int(10), "{id} order {n}: {} vs {}", r.abs_error, r.error_estimate);
            prev = Some(r.abs_error);
        }
    }
}

#[test]
fn li3_expansions_match_direct_sums() {
    for (n, d) in [(1, 2), (2, 3), (3, 4), (8, 9)] {
        for v in [Li3Variant::Deg2, Li3Variant::Deg4] {
            let r = li3_expansion(&q(n, d), 30, 256, v).unwrap();
            assert!(r.abs_error.log10_abs() < -40.0, "{n}/{d} {v:?}: {}", r.abs_error);
        }
    }
}

#[test]
fn degree_four_is_degree_two_shifted() {
    for n in 1..6 {
        let a = li3_expansion(&q(2, 3), n, 256, Li3Variant::Deg4).unwrap();
        let b = li3_expansion(&q(2, 3), n + 1, 256, Li3Variant::Deg2).unwrap();
        assert!((&a.value - &b.value).log10_abs() < -70.0);
    }
}

/// Every Li₃ argument that any method expands.
fn expanded_arguments() -> Vec<ExtSurd> {
    let mut out = vec![q(1, 2)];
    let sqrt23 = ExtSurd::base(SurdValue::r6().scale(&zetalab::surd::ratio(1, 3)));
    let sqrt34 = ExtSurd::base(SurdValue::r3().scale(&zetalab::surd::ratio(1, 2)));
    for rw in [vec![], vec![q(2, 3)], vec![q(2, 3), q(3, 4), sqrt23, sqrt34]] {
        for (_, x) in ladder_plan(&rw).unwrap().li3 {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

#[test]
fn degree_four_tail_is_smaller() {
    let args = expanded_arguments();
    assert!(args.len() >= 15);
    for x in &args {
        for n in 1..=8 {
            let d2 = li3_expansion(x, n, 256, Li3Variant::Deg2).unwrap();
            let d4 = li3_expansion(x, n, 256, Li3Variant::Deg4).unwrap();
            assert!(d4.error_estimate < d2.error_estimate, "{x} order {n}");
        }
    }
}

#[test]
fn composite_arguments_are_small() {
    let bound = HPReal::from_frac(3, 2, 128).ln() / HPReal::from_i64(24, 128).sqrt();
    for id in [MethodId::Tri, MethodId::Six, MethodId::Final] {
        for a in series_arguments(id, 128).unwrap() {
            assert!(a <= bound.clone() + HPReal::pow2(-100, 128), "{id}: {a}");
        }
    }
}

#[test]
fn final_uses_fifteen_expansions_inside_unit_interval() {
    let d = descriptor(MethodId::Final).unwrap();
    assert_eq!(d.series.len(), 15);
    assert!(d.series.iter().all(|c| c.family == Family::Deg4));
    let sqrt23 = ExtSurd::base(SurdValue::r6().scale(&zetalab::surd::ratio(1, 3)));
    let sqrt34 = ExtSurd::base(SurdValue::r3().scale(&zetalab::surd::ratio(1, 2)));
    let plan = ladder_plan(&[q(2, 3), q(3, 4), sqrt23, sqrt34]).unwrap();
    for (_, x) in plan.li3 {
        let v = x.eval(128);
        assert!(v.is_positive() && v < HPReal::one(128), "{x}");
    }
}

#[test]
fn unshifted_reading_stalls() {
    let d = descriptor(MethodId::Tri).unwrap().with_family(Family::PRearranged(PIndex::Unshifted));
    let a = evaluate(&d, 10, 256).unwrap();
    let b = evaluate(&d, 14, 256).unwrap();
    assert!(a.abs_error.to_f64() > 1e-11 && b.abs_error.to_f64() > 1e-11);
    let shifted = eval_method(MethodId::Tri, 10, 256).unwrap();
    assert!(shifted.abs_error.log10_abs() < -40.0);
}

#[test]
fn order_zero_is_the_closed_part() {
    for id in MethodId::ALL {
        let r = eval_method(id, 0, 128).unwrap();
        assert!(r.terms.is_empty());
        assert!((&r.value - &r.analytic).is_zero());
    }
}

#[test]
fn traces_are_deterministic() {
    let a = eval_method(MethodId::Six, 3, 192).unwrap();
    let handles: Vec<_> = (0..4).map(|_| std::thread::spawn(|| eval_method(MethodId::Six, 3, 192).unwrap())).collect();
    let ja = serde_json::to_string(&a.report(true)).unwrap();
    for h in handles {
        let b = h.join().unwrap();
        assert_eq!(serde_json::to_string(&b.report(true)).unwrap(), ja);
    }
    let trace = a.report(true).terms.unwrap();
    assert_eq!(trace.len(), 6 * 3);
    assert_eq!(trace[0].index, 1);
    assert_eq!(trace[3].index, 1);
}

#[test]
fn report_round_trips() {
    let r = eval_method(MethodId::Log2, 2, 128).unwrap().report(true);
    let s = serde_json::to_string(&r).unwrap();
    let back: zetalab::series::SeriesReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, r);
    let plain = eval_method(MethodId::Log2, 2, 128).unwrap().report(false);
    assert!(!serde_json::to_string(&plain).unwrap().contains("terms"));
}

#[test]
fn precision_bounds() {
    assert!(eval_method(MethodId::Tri, 2, 8).is_err());
    assert_eq!(working_precision(256), 288);
    assert_eq!(working_precision(1024), 1152);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn li3_expansion_converges_on_rationals(n in 41i64..100) {
        let r = li3_expansion(&q(n, 100), 12, 160, Li3Variant::Deg4).unwrap();
        // near x = 1 the tail drops below the working precision
        let floor = HPReal::pow2(-150, 160);
        prop_assert!(r.abs_error <= r.error_estimate.mul_int(10) + floor);
    }
}
