//! Reference values computed without any of the accelerated expansions:
//! direct polylogarithm sums, Euler–Maclaurin ζ(s), an accelerated
//! alternating series for ζ(s), and a brute-force Clausen sum.

use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::hpreal::{working_precision, HPReal};
use crate::pbern::bernoulli_even;

pub const MIN_PREC: u32 = 16;
pub const MAX_PREC: u32 = 1 << 16;

pub fn check_prec(prec: u32) -> Result<()> {
    if !(MIN_PREC..=MAX_PREC).contains(&prec) {
        return Err(Error::Precision(format!("precision {prec} bits outside [{MIN_PREC}, {MAX_PREC}]")));
    }
    Ok(())
}

fn div_pow(x: &HPReal, n: u64, s: u32) -> HPReal {
    match n.checked_pow(s) {
        Some(p) if p <= i64::MAX as u64 => x.div_int(p as i64),
        _ => (0..s).fold(x.clone(), |acc, _| acc.div_int(n as i64)),
    }
}

/// `Li_s(x) = Σ xⁿ/nˢ` for `0 <= x < 1`, summed until the geometric tail
/// bound drops below the working precision.
pub fn li_direct(s: u32, x: &HPReal, prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    if s < 1 {
        return Err(Error::Domain("polylog order must be at least 1".into()));
    }
    if x.is_negative() || x.to_f64() >= 1.0 || *x >= HPReal::one(x.prec()) {
        return Err(Error::Domain(format!("Li_{s} argument {} outside [0, 1)", x.to_sci(12))));
    }
    let wp = working_precision(prec);
    let x = x.with_prec(wp);
    if x.is_zero() {
        return Ok(HPReal::zero(prec));
    }
    // log2 of 1/(1-x), a bound on the tail-to-term ratio
    let gap = (HPReal::one(wp) - &x).log10_abs() / std::f64::consts::LOG10_2;
    let ratio_bits = (-gap).max(0.0).ceil() as i64 + 1;
    let mut pw = HPReal::one(wp);
    let mut sum = HPReal::zero(wp);
    let mut n: u64 = 1;
    loop {
        pw = &pw * &x;
        let t = div_pow(&pw, n, s);
        sum = sum + &t;
        if t.is_zero() || t.top() + ratio_bits < -(wp as i64) - 2 {
            break;
        }
        n += 1;
    }
    Ok(sum.with_prec(prec))
}

/// ζ(s) by Euler–Maclaurin summation with Bernoulli corrections.
pub fn zeta_em(s: u32, prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    if s < 2 {
        return Err(Error::Domain("zeta_em needs s >= 2".into()));
    }
    let wp = working_precision(prec);
    let n_cut = 2 * wp as i64 + 64;
    let mut sum = HPReal::zero(wp);
    for n in 1..n_cut {
        sum = sum + div_pow(&HPReal::one(wp), n as u64, s);
    }
    let big_n = HPReal::from_i64(n_cut, wp);
    let n_pow_s = big_n.powi(s);
    // N^(1-s)/(s-1) + N^(-s)/2
    sum = sum + (&big_n / &n_pow_s).div_int(s as i64 - 1);
    sum = sum + n_pow_s.recip().mul_pow2(-1);
    let inv_n2 = (&big_n * &big_n).recip();
    // N^(-s-2k+1) and the rising factorial s(s+1)...(s+2k-2), updated per k
    let mut n_pow = (&n_pow_s * &big_n).recip();
    let mut rising = HPReal::from_i64(s as i64, wp);
    let mut fact = HPReal::from_i64(2, wp);
    const MAX_K: usize = 60;
    for k in 1..=MAX_K {
        if k > 1 {
            let a = s as i64 + 2 * k as i64 - 3;
            rising = rising.mul_int(a * (a + 1));
            fact = fact.mul_int((2 * k as i64 - 1) * (2 * k as i64));
            n_pow = &n_pow * &inv_n2;
        }
        let b = HPReal::from_ratio(&bernoulli_even(2 * k)?, wp);
        let term = &(&b * &rising) * &n_pow / &fact;
        sum = sum + &term;
        if term.top() < -(wp as i64) - 4 {
            return Ok(sum.with_prec(prec));
        }
    }
    Err(Error::Precision(format!("Euler-Maclaurin did not converge at {prec} bits")))
}

/// ζ(s) from the alternating series `Σ (-1)^(n-1)/nˢ = (1 - 2^(1-s)) ζ(s)`,
/// accelerated with the Chebyshev weights of Cohen, Rodriguez Villegas and
/// Zagier. Shares no code with the Bernoulli machinery.
pub fn zeta_alternating(s: u32, prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    if s < 2 {
        return Err(Error::Domain("zeta_alternating needs s >= 2".into()));
    }
    let wp = working_precision(prec) + 16;
    let n = (wp as f64 / 2.54).ceil() as i64 + 4;
    let eight = HPReal::from_i64(8, wp);
    let base = HPReal::from_i64(3, wp) + eight.sqrt();
    let d0 = base.powi(n as u32);
    let d = (&d0 + &d0.recip()).mul_pow2(-1);
    let mut b = HPReal::from_i64(-1, wp);
    let mut c = -&d;
    let mut sum = HPReal::zero(wp);
    for k in 0..n {
        c = &b - &c;
        let a_k = div_pow(&HPReal::one(wp), (k + 1) as u64, s);
        sum = sum + &c * &a_k;
        b = b.mul_int(2 * (k + n) * (k - n)).div_int((2 * k + 1) * (k + 1));
    }
    let eta = sum / d;
    let scale = HPReal::one(wp) - HPReal::pow2(1 - s as i64, wp);
    Ok((eta / scale).with_prec(prec))
}

static ZETA3: Mutex<Option<HPReal>> = Mutex::new(None);

/// ζ(3), computed once at the largest precision requested so far.
pub fn zeta3_reference(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    let mut slot = ZETA3.lock().expect("zeta(3) cache poisoned");
    if let Some(v) = slot.as_ref() {
        if v.prec() >= prec + 32 {
            return Ok(v.with_prec(prec));
        }
    }
    let target = (prec + 32).max(288);
    let v = zeta_em(3, target)?;
    *slot = Some(v.clone());
    Ok(v.with_prec(prec))
}

/// Terms of the Clausen cosine sum taken before the tail correction.
pub const CLAUSEN_TERMS: u64 = 10_000;

/// `Cl₃(x) = Σ cos(2πnx)/n³` for `0 < x <= 1/2`, accurate to about 1e-15.
pub fn clausen3(x: &HPReal, prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    let half = HPReal::from_frac(1, 2, x.prec().max(64));
    if !x.is_positive() || *x > half {
        return Err(Error::Domain(format!("clausen3 argument {} outside (0, 1/2]", x.to_sci(12))));
    }
    let wp = prec.max(64) + 48;
    let theta = HPReal::pi(wp).mul_pow2(1) * x.with_prec(wp);
    let c1 = theta.cos();
    let two_c1 = c1.mul_pow2(1);
    let (mut prev, mut cur) = (HPReal::one(wp), c1.clone());
    let mut sum = HPReal::zero(wp);
    for n in 1..=CLAUSEN_TERMS {
        sum = sum + div_pow(&cur, n, 3);
        let next = &(&two_c1 * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    // summation by parts: Σ_{n>M} cos(nθ)/n³ ≈ -sin((M+½)θ) / (2 sin(θ/2) (M+1)³)
    let m_half = HPReal::from_frac(2 * CLAUSEN_TERMS as i64 + 1, 2, wp);
    let num = (&m_half * &theta).sin();
    let den = theta.mul_pow2(-1).sin().mul_pow2(1);
    let tail = div_pow(&(num / den), CLAUSEN_TERMS + 1, 3);
    Ok((sum - tail).with_prec(prec))
}

/// `Σ_{n>=1} f(n)`, stopping after the first term below `2^-bits`.
pub fn sum_until<F>(bits: u32, max_terms: usize, mut f: F) -> Result<HPReal>
where
    F: FnMut(usize) -> Result<HPReal>,
{
    let mut acc: Option<HPReal> = None;
    for n in 1..=max_terms {
        let t = f(n)?;
        let small = t.is_zero() || t.top() < -(bits as i64) - 2;
        acc = Some(match acc {
            Some(a) => a + t,
            None => t,
        });
        if small {
            return Ok(acc.unwrap());
        }
    }
    Err(Error::Precision(format!("series did not reach 2^-{bits} within {max_terms} terms")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z3: &str = "1.202056903159594285399738161511449990764986292340498881792271555341838205786313";

    #[test]
    fn li_direct_basics() {
        assert!(li_direct(3, &HPReal::zero(64), 64).unwrap().is_zero());
        assert!(li_direct(3, &HPReal::one(64), 64).is_err());
        assert!(li_direct(3, &HPReal::from_i64(-1, 64), 64).is_err());
        let half = HPReal::from_frac(1, 2, 128);
        let l2 = li_direct(2, &half, 128).unwrap();
        let pi = HPReal::pi(128);
        let ln2 = HPReal::ln2(128);
        let rhs = (&pi * &pi).div_int(12) - (&ln2 * &ln2).mul_pow2(-1);
        assert!((l2 - rhs).log10_abs() < -36.0);
    }

    #[test]
    fn zeta_values() {
        let z3 = zeta_em(3, 260).unwrap();
        assert_eq!(&z3.to_fixed(78, true), Z3);
        let pi = HPReal::pi(200);
        let z2 = zeta_em(2, 200).unwrap();
        assert!((z2 - (&pi * &pi).div_int(6)).log10_abs() < -58.0);
        let z4 = zeta_em(4, 200).unwrap();
        assert!((z4 - pi.powi(4).div_int(90)).log10_abs() < -58.0);
    }

    #[test]
    fn alternating_route() {
        let a = zeta_alternating(3, 260).unwrap();
        assert_eq!(&a.to_fixed(78, true), Z3);
    }

    #[test]
    fn reference_is_consistent() {
        let a = zeta3_reference(128).unwrap();
        let b = zeta3_reference(400).unwrap();
        assert!((a - b.with_prec(128)).log10_abs() < -37.0);
    }

    #[test]
    fn clausen_at_half() {
        let c = clausen3(&HPReal::from_frac(1, 2, 64), 64).unwrap();
        let z = zeta3_reference(64).unwrap();
        let expect = -(z.mul_int(3).mul_pow2(-2));
        assert!((c - expect).log10_abs() < -12.0);
        assert!(clausen3(&HPReal::from_frac(3, 4, 64), 64).is_err());
    }
}
