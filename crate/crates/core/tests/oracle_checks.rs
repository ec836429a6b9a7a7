use std::sync::Arc;

use zetalab::identities::{check, form, lookup, verify_all, verify_identity, Verdict};
use zetalab::oracle::{li_direct, zeta3_reference, zeta_em};
use zetalab::series::{eval_method, MethodId};
use zetalab::HPReal;

#[test]
fn li_direct_is_monotone_in_x() {
    for s in [2, 3] {
        let mut prev = HPReal::zero(96);
        for k in 0..20 {
            let x = HPReal::from_frac(k, 20, 96);
            let v = li_direct(s, &x, 96).unwrap();
            assert!(k == 0 || v > prev, "Li_{s} not increasing at {k}/20");
            prev = v;
        }
    }
}

#[test]
fn zeta_decreases_towards_one() {
    let mut prev = zeta_em(2, 96).unwrap();
    for s in 3..=12 {
        let z = zeta_em(s, 96).unwrap();
        assert!(z < prev && z > HPReal::one(96));
        prev = z;
    }
    assert!(prev.to_f64() - 1.0 < 3e-4);
    assert!(zeta_em(1, 64).is_err());
}

#[test]
fn clausen_series_reaches_reference() {
    let r = eval_method(MethodId::ClausenX6, 40, 256).unwrap();
    assert!(r.abs_error.log10_abs() < -50.0, "{}", r.abs_error);
    let a = zeta3_reference(128).unwrap();
    let b = zeta_em(3, 128).unwrap();
    assert!((a - b).log10_abs() < -37.0);
}

#[test]
fn perturbed_identity_is_caught() {
    let good = lookup("LI3_HALF").unwrap();
    assert_eq!(check(&good, 256).unwrap().verdict, Verdict::Verified);
    let rhs = Arc::clone(&good.printed.rhs);
    let lhs = Arc::clone(&good.printed.lhs);
    let bumped = zetalab::identities::IdentityDescriptor::new(
        "LI3_HALF_BUMPED",
        "",
        form(move |wp| lhs(wp), move |wp| Ok(rhs(wp)? + HPReal::from_i64(10, wp).powi(20).recip())),
    );
    let r = check(&bumped, 256).unwrap();
    assert_eq!(r.verdict, Verdict::Failed);
    assert!(r.is_unexplained_failure());
}

#[test]
fn residuals_shrink_with_precision() {
    for id in ["LI3_HALF", "ID_91_12", "FUNC_EQ:x=1/3", "LADDER_2_3"] {
        let lo = verify_identity(id, 256).unwrap();
        let hi = verify_identity(id, 384).unwrap();
        assert!(matches!(lo.verdict, Verdict::Verified | Verdict::Corrected), "{id}");
        assert_eq!(lo.verdict, hi.verdict, "{id}");
    }
}

#[test]
fn registry_verdicts_at_two_precisions() {
    for prec in [256, 384] {
        let all = verify_all(prec).unwrap();
        let failed: Vec<_> = all.iter().filter(|r| r.verdict == Verdict::Failed).map(|r| r.id.as_str()).collect();
        assert_eq!(failed, vec!["BLOCK_SIX"], "at {prec} bits");
        assert!(all.iter().all(|r| !r.is_unexplained_failure()));
        for r in all.iter().filter(|r| r.verdict == Verdict::Corrected) {
            assert!(!r.note.is_empty(), "{} corrected without a note", r.id);
        }
    }
}

#[test]
fn clausen_convention() {
    let r = verify_identity("CL_PI3", 128).unwrap();
    assert_eq!(r.verdict, Verdict::Corrected);
    assert!(r.printed_residual.starts_with("6.8"));
}

#[test]
fn ledger_json_fields() {
    let r = verify_identity("BBP_LAST_TERM", 128).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["id", "source_quote", "verdict", "residual_decimal", "corrected", "note"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["verdict"], "corrected");
    assert_eq!(v["corrected"], true);
}

#[test]
fn unknown_identity() {
    assert!(matches!(verify_identity("NOT_AN_ID", 128), Err(zetalab::Error::Unknown { .. })));
}
