use zetalab::bbp::{bbp_sum, bbp_zeta3, corrected, scan_last_offset, term_table, PRINTED};

#[test]
fn error_contracts_by_about_4096() {
    let errs: Vec<f64> = (0..7).map(|k| bbp_zeta3(k, 384).unwrap().abs_error.log10_abs()).collect();
    for k in 0..6 {
        let rate = errs[k] - errs[k + 1];
        assert!((rate - 4096f64.log10()).abs() < 1.0, "k = {k}: 10^{rate:.2}");
    }
}

#[test]
fn converges_to_high_precision() {
    let r = bbp_zeta3(20, 384).unwrap();
    assert!(r.abs_error.log10_abs() < -70.0);
    assert!(r.abs_error <= r.error_estimate.mul_int(10));
    assert_eq!(r.terms.len(), 21);
}

#[test]
fn printed_terms_miss_zeta3() {
    let p = bbp_sum(&PRINTED, 20, 256).unwrap();
    let c = bbp_sum(&corrected(), 20, 256).unwrap();
    assert!(p.abs_error.to_f64() > 1e-8, "{}", p.abs_error);
    // more terms do not help
    let p40 = bbp_sum(&PRINTED, 40, 256).unwrap();
    assert!((p40.abs_error.log10_abs() - p.abs_error.log10_abs()).abs() < 1e-6);
    assert!(c.abs_error.log10_abs() < -70.0);
}

#[test]
fn only_one_offset_fits() {
    let candidates: Vec<u32> = (1..=30).collect();
    let rows = scan_last_offset(&candidates, 160).unwrap();
    let hits: Vec<u32> = rows.iter().filter(|r| r.pass).map(|r| r.offset).collect();
    assert_eq!(hits, vec![23]);
}

#[test]
fn term_table_json() {
    let t = term_table();
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v["normalizer"], 672);
    assert_eq!(v["base"], 4096);
    assert_eq!(v["printed"].as_array().unwrap().len(), 23);
    let diff: Vec<usize> = (0..23).filter(|&i| t.printed[i] != t.corrected[i]).collect();
    assert_eq!(diff, vec![22]);
    let offsets: std::collections::BTreeSet<u32> = t.corrected.iter().map(|x| x.offset).collect();
    assert_eq!(offsets.len(), 23);
}
