//! The base-4096 BBP-type formula for ζ(3):
//! `ζ(3) = (1/672) Σ_k 4096^(-k) Σ_j a_j/(24k+j)³`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hpreal::{working_precision, HPReal};
use crate::oracle::{check_prec, zeta3_reference};
use crate::series::{SeriesResult, TraceEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BBPTerm {
    pub offset: u32,
    pub numerator: i64,
}

const fn t(offset: u32, numerator: i64) -> BBPTerm {
    BBPTerm { offset, numerator }
}

/// The 23 terms as printed, including the repeated offset 18 at the end.
pub const PRINTED: [BBPTerm; 23] = [
    t(1, 2048),
    t(2, -11264),
    t(3, -1024),
    t(4, 11776),
    t(5, -512),
    t(6, 4096),
    t(7, 256),
    t(8, 3456),
    t(9, 128),
    t(10, -704),
    t(11, -64),
    t(12, -128),
    t(13, -32),
    t(14, -176),
    t(15, 16),
    t(16, 216),
    t(17, 8),
    t(18, 64),
    t(19, -4),
    t(20, 46),
    t(21, -2),
    t(22, -11),
    t(18, 1),
];

/// Offset the scan settled on for the final term.
pub const CORRECTED_LAST_OFFSET: u32 = 23;

/// Printed term set with the final offset replaced.
pub fn with_last_offset(j: u32) -> Vec<BBPTerm> {
    let mut v = PRINTED.to_vec();
    v[22].offset = j;
    v
}

pub fn corrected() -> Vec<BBPTerm> {
    with_last_offset(CORRECTED_LAST_OFFSET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermSet {
    Printed,
    Corrected,
}

impl TermSet {
    pub fn terms(self) -> Vec<BBPTerm> {
        match self {
            TermSet::Printed => PRINTED.to_vec(),
            TermSet::Corrected => corrected(),
        }
    }
}

/// Outer term `k` of the bracket, divided by 672.
fn outer_term(terms: &[BBPTerm], k: u64, wp: u32) -> HPReal {
    let mut acc = HPReal::zero(wp);
    for term in terms {
        let d = 24 * k as i64 + term.offset as i64;
        acc = acc + HPReal::from_i64(term.numerator, wp).div_int(d * d * d);
    }
    acc.mul_pow2(-12 * k as i64).div_int(672)
}

/// Partial sum `k = 0..=k_max` for an arbitrary term set.
pub fn bbp_sum(terms: &[BBPTerm], k_max: usize, prec: u32) -> Result<SeriesResult> {
    check_prec(prec)?;
    let wp = working_precision(prec);
    let mut value = HPReal::zero(wp);
    let mut trace = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let v = outer_term(terms, k as u64, wp);
        value = value + &v;
        trace.push(TraceEntry { component: 0, index: k, value: v.with_prec(prec) });
    }
    let next = outer_term(terms, k_max as u64 + 1, wp).abs();
    let abs_error = (&value - &zeta3_reference(wp)?).abs();
    Ok(SeriesResult {
        method: "BBP".into(),
        order: k_max + 1,
        prec_bits: prec,
        analytic: HPReal::zero(prec),
        value: value.with_prec(prec),
        error_estimate: next.with_prec(prec),
        abs_error: abs_error.with_prec(prec),
        components: vec!["4096^-k".into()],
        terms: trace,
    })
}

/// The adjudicated formula through `k = k_max`.
pub fn bbp_zeta3(k_max: usize, prec: u32) -> Result<SeriesResult> {
    bbp_sum(&corrected(), k_max, prec)
}

/// Same as [`bbp_zeta3`] but refuses any term set other than the corrected one.
pub fn bbp_with(set: TermSet, k_max: usize, prec: u32) -> Result<SeriesResult> {
    match set {
        TermSet::Corrected => bbp_zeta3(k_max, prec),
        TermSet::Printed => Err(Error::Integrity(
            "printed BBP term set repeats offset 18 and is not a valid formula for zeta(3)".into(),
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub offset: u32,
    pub residual: String,
    pub pass: bool,
}

/// Tries every candidate final offset against the reference value at a
/// converged `k_max`. Pass means the residual is below `2^-(prec-8)`.
pub fn scan_last_offset(candidates: &[u32], prec: u32) -> Result<Vec<ScanRow>> {
    let k_max = (prec as usize / 12) + 2;
    candidates
        .iter()
        .map(|&j| {
            let r = bbp_sum(&with_last_offset(j), k_max, prec)?;
            Ok(ScanRow {
                offset: j,
                residual: r.abs_error.to_sci(3),
                pass: r.abs_error.is_zero() || r.abs_error.top() < -(prec as i64) + 8,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermTable {
    pub normalizer: i64,
    pub base: i64,
    pub printed: Vec<BBPTerm>,
    pub corrected: Vec<BBPTerm>,
}

pub fn term_table() -> TermTable {
    TermTable { normalizer: 672, base: 4096, printed: PRINTED.to_vec(), corrected: corrected() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_term_error() {
        let r = bbp_zeta3(0, 256).unwrap();
        let e = r.abs_error.to_f64();
        assert!(e > 5e-8 && e < 1e-7, "{e}");
    }

    #[test]
    fn scan_finds_unique_offset() {
        let rows = scan_last_offset(&[18, 19, 20, 21, 22, 23, 24], 192).unwrap();
        let hits: Vec<u32> = rows.iter().filter(|r| r.pass).map(|r| r.offset).collect();
        assert_eq!(hits, vec![CORRECTED_LAST_OFFSET]);
    }

    #[test]
    fn printed_set_is_refused() {
        assert!(matches!(bbp_with(TermSet::Printed, 2, 128), Err(Error::Integrity(_))));
    }
}
