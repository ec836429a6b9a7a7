//! Binary floating-point reals of arbitrary precision.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^prec`. Every operation rounds to
//! nearest at the larger precision of its operands.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra bits carried beyond a requested precision.
pub fn guard_bits(requested: u32) -> u32 {
    (requested / 8).max(32)
}

/// Precision used internally for a request of `requested` bits.
pub fn working_precision(requested: u32) -> u32 {
    requested + guard_bits(requested)
}

#[derive(Clone, Debug)]
pub struct HPReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (shift - 1);
    if m.is_negative() {
        -((-m + half) >> shift)
    } else {
        (m + half) >> shift
    }
}

fn normalized(mant: BigInt, exp: i64, prec: u32) -> HPReal {
    if mant.is_zero() {
        return HPReal::zero(prec);
    }
    let bits = mant.bits();
    if bits > prec as u64 {
        let shift = bits - prec as u64;
        let m = round_shift(&mant, shift);
        HPReal { mant: m, exp: exp + shift as i64, prec }
    } else {
        HPReal { mant, exp, prec }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Pi,
    Ln2,
}

thread_local! {
    static CONSTANTS: RefCell<HashMap<(Constant, u32), HPReal>> = RefCell::new(HashMap::new());
}

fn cached(c: Constant, prec: u32, build: fn(u32) -> HPReal) -> HPReal {
    if let Some(v) = CONSTANTS.with(|m| m.borrow().get(&(c, prec)).cloned()) {
        return v;
    }
    let v = build(prec);
    CONSTANTS.with(|m| m.borrow_mut().insert((c, prec), v.clone()));
    v
}

impl HPReal {
    pub fn zero(prec: u32) -> Self {
        HPReal { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        normalized(v.clone(), 0, prec)
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        let (n, d) = (r.numer(), r.denom());
        if n.is_zero() {
            return Self::zero(prec);
        }
        let k = (prec as i64 + 2 + d.bits() as i64 - n.bits() as i64).max(0);
        let q = (n << k as usize) / d;
        normalized(q, -k, prec)
    }

    pub fn from_frac(n: i64, d: i64, prec: u32) -> Self {
        Self::from_ratio(&BigRational::new(n.into(), d.into()), prec)
    }

    /// `2^k`.
    pub fn pow2(k: i64, prec: u32) -> Self {
        HPReal { mant: BigInt::one(), exp: k, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        HPReal { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        HPReal { mant: self.mant.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        normalized(&self.mant * BigInt::from(n), self.exp, self.prec)
    }

    pub fn mul_ratio(&self, r: &BigRational) -> Self {
        let m = &self.mant * r.numer();
        let p = HPReal { mant: m, exp: self.exp, prec: self.prec + r.numer().bits() as u32 + 2 };
        p.div_bigint(r.denom()).with_prec(self.prec)
    }

    pub fn div_int(&self, n: i64) -> Self {
        self.div_bigint(&BigInt::from(n))
    }

    fn div_bigint(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return self.clone();
        }
        let k = (self.prec as i64 + 2 + d.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << k as usize) / d;
        normalized(q, self.exp - k, self.prec)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec) / self
    }

    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let prec = self.prec;
        let mut k = (2 * prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let m = (&self.mant << k as usize).sqrt();
        normalized(m, (self.exp - k) / 2, prec)
    }

    pub fn pi(prec: u32) -> Self {
        cached(Constant::Pi, prec, |prec| {
            let wp = prec + 16;
            let a = atan_inv(5, wp).mul_int(16);
            let b = atan_inv(239, wp).mul_int(4);
            (a - b).with_prec(prec)
        })
    }

    pub fn ln2(prec: u32) -> Self {
        cached(Constant::Ln2, prec, |prec| {
            let wp = prec + 16;
            let mut term = HPReal::from_frac(1, 3, wp);
            let mut sum = term.clone();
            let mut i = 1i64;
            loop {
                term = term.div_int(9);
                let t = term.div_int(2 * i + 1);
                if t.top() < sum.top() - wp as i64 - 2 {
                    break;
                }
                sum = sum + t;
                i += 1;
            }
            sum.mul_pow2(1).with_prec(prec)
        })
    }

    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "logarithm of a non-positive number");
        let prec = self.prec;
        let j = ((prec as f64).sqrt() / 2.0) as u32 + 2;
        let wp = prec + j + 16;
        let k = self.top() - 1;
        let mut y = HPReal { mant: self.mant.clone(), exp: self.exp - k, prec: wp };
        for _ in 0..j {
            y = y.sqrt();
        }
        let one = Self::one(wp);
        let z = (&y - &one) / (&y + &one);
        let z2 = &z * &z;
        let mut term = z.clone();
        let mut sum = z;
        let mut i = 1i64;
        while !term.is_zero() {
            term = &term * &z2;
            let t = term.div_int(2 * i + 1);
            if sum.is_zero() || t.top() < sum.top() - wp as i64 - 2 {
                break;
            }
            sum = sum + t;
            i += 1;
        }
        let ln_y = sum.mul_pow2(j as i64 + 1);
        (ln_y + Self::ln2(wp).mul_int(k)).with_prec(prec)
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            round_shift(&self.mant, (-self.exp) as u64)
        }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        const HALVINGS: i64 = 8;
        let mag = self.top().max(0) as u32;
        let wp = prec + mag + 2 * HALVINGS as u32 + 24;
        let x = self.with_prec(wp);
        let two_pi = Self::pi(wp).mul_pow2(1);
        let n = (&x / &two_pi).round();
        let r = &x - &(&two_pi * &Self::from_bigint(&n, wp));
        let y = r.mul_pow2(-HALVINGS);
        let y2 = &y * &y;
        let mut s = y.clone();
        let mut c = Self::one(wp);
        let mut ts = y;
        let mut tc = Self::one(wp);
        let mut k = 1i64;
        loop {
            tc = -(&tc * &y2).div_int((2 * k - 1) * (2 * k));
            ts = -(&ts * &y2).div_int((2 * k) * (2 * k + 1));
            if tc.is_zero() || tc.top() < -(wp as i64) - 4 {
                break;
            }
            c = c + &tc;
            s = s + &ts;
            k += 1;
        }
        for _ in 0..HALVINGS {
            let s2 = (&s * &c).mul_pow2(1);
            let c2 = &(&c * &c) - &(&s * &s);
            s = s2;
            c = c2;
        }
        (s.with_prec(prec), c.with_prec(prec))
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let shift = self.mant.bits().saturating_sub(60);
        let m = (&self.mant >> shift).to_f64().unwrap_or(0.0);
        let e = self.exp + shift as i64;
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// `log10 |x|`, finite for any nonzero value regardless of exponent range.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let shift = self.mant.bits().saturating_sub(60);
        let m = (&self.mant >> shift).abs().to_f64().unwrap_or(1.0);
        m.log10() + (self.exp + shift as i64) as f64 * std::f64::consts::LOG10_2
    }

    /// `|x| * 10^k` rounded (or truncated) to an integer, computed exactly.
    fn scaled_abs(&self, k: i64, truncate: bool) -> BigInt {
        let ten = BigInt::from(10);
        let mut num = self.mant.abs();
        let mut den = BigInt::one();
        if k >= 0 {
            num *= num_traits::pow(ten, k as usize);
        } else {
            den *= num_traits::pow(ten, (-k) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as usize;
        } else {
            den <<= (-self.exp) as usize;
        }
        if truncate {
            num / den
        } else {
            (num * 2 + &den) / (den * 2)
        }
    }

    /// Fixed-point decimal with `frac_digits` digits after the point.
    pub fn to_fixed(&self, frac_digits: usize, truncate: bool) -> String {
        let n = self.scaled_abs(frac_digits as i64, truncate);
        let mut s = n.to_string();
        if s.len() <= frac_digits {
            s = format!("{}{}", "0".repeat(frac_digits + 1 - s.len()), s);
        }
        let split = s.len() - frac_digits;
        let mut out = String::new();
        if self.is_negative() && !n.is_zero() {
            out.push('-');
        }
        out.push_str(&s[..split]);
        if frac_digits > 0 {
            out.push('.');
            out.push_str(&s[split..]);
        }
        out
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.23e-26`.
    pub fn to_sci(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return format!("{}e0", if sig > 1 { format!("0.{}", "0".repeat(sig - 1)) } else { "0".into() });
        }
        let mut e10 = self.log10_abs().floor() as i64;
        let bound = num_traits::pow(BigInt::from(10), sig);
        let low = num_traits::pow(BigInt::from(10), sig - 1);
        let mut digits = self.scaled_abs(sig as i64 - 1 - e10, false);
        if digits >= bound {
            e10 += 1;
            digits = self.scaled_abs(sig as i64 - 1 - e10, false);
        } else if digits < low {
            e10 -= 1;
            digits = self.scaled_abs(sig as i64 - 1 - e10, false);
        }
        let d = digits.to_string();
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&d[..1]);
        if d.len() > 1 {
            out.push('.');
            out.push_str(&d[1..]);
        }
        out.push_str(&format!("e{}", e10));
        out
    }
}

fn atan_inv(k: i64, prec: u32) -> HPReal {
    let mut p = HPReal::from_frac(1, k, prec);
    let mut sum = p.clone();
    let k2 = k * k;
    let mut i = 1i64;
    loop {
        p = p.div_int(k2);
        let t = p.div_int(2 * i + 1);
        if t.is_zero() || t.top() < sum.top() - prec as i64 - 2 {
            break;
        }
        if i % 2 == 1 {
            sum = sum - t;
        } else {
            sum = sum + t;
        }
        i += 1;
    }
    sum
}

fn add_impl(a: &HPReal, b: &HPReal, negate_b: bool) -> HPReal {
    let prec = a.prec.max(b.prec);
    let bm = if negate_b { -&b.mant } else { b.mant.clone() };
    if b.is_zero() {
        return a.with_prec(prec);
    }
    if a.is_zero() {
        return normalized(bm, b.exp, prec);
    }
    let (ta, tb) = (a.top(), b.top());
    if ta - tb > prec as i64 + 2 {
        return a.with_prec(prec);
    }
    if tb - ta > prec as i64 + 2 {
        return normalized(bm, b.exp, prec);
    }
    let e = a.exp.min(b.exp);
    let m = (&a.mant << (a.exp - e) as usize) + (bm << (b.exp - e) as usize);
    normalized(m, e, prec)
}

fn mul_impl(a: &HPReal, b: &HPReal) -> HPReal {
    let prec = a.prec.max(b.prec);
    normalized(&a.mant * &b.mant, a.exp + b.exp, prec)
}

fn div_impl(a: &HPReal, b: &HPReal) -> HPReal {
    assert!(!b.is_zero(), "division by zero");
    let prec = a.prec.max(b.prec);
    if a.is_zero() {
        return HPReal::zero(prec);
    }
    let k = (prec as i64 + 2 + b.mant.bits() as i64 - a.mant.bits() as i64).max(0);
    let q = (&a.mant << k as usize) / &b.mant;
    normalized(q, a.exp - k - b.exp, prec)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&HPReal> for &HPReal {
            type Output = HPReal;
            fn $m(self, rhs: &HPReal) -> HPReal {
                $body(self, rhs)
            }
        }
        impl $tr<HPReal> for HPReal {
            type Output = HPReal;
            fn $m(self, rhs: HPReal) -> HPReal {
                $body(&self, &rhs)
            }
        }
        impl $tr<&HPReal> for HPReal {
            type Output = HPReal;
            fn $m(self, rhs: &HPReal) -> HPReal {
                $body(&self, rhs)
            }
        }
        impl $tr<HPReal> for &HPReal {
            type Output = HPReal;
            fn $m(self, rhs: HPReal) -> HPReal {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, false));
binop!(Sub, sub, |a, b| add_impl(a, b, true));
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl Neg for HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal { mant: -self.mant, exp: self.exp, prec: self.prec }
    }
}

impl Neg for &HPReal {
    type Output = HPReal;
    fn neg(self) -> HPReal {
        HPReal { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }
}

impl PartialEq for HPReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for HPReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self - other;
        Some(if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec as f64 * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.to_sci(digits.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436025";

    #[test]
    fn constants() {
        assert_eq!(HPReal::pi(200).to_fixed(50, true), PI_50);
        assert_eq!(HPReal::ln2(200).to_fixed(50, true), LN2_50);
    }

    #[test]
    fn ln_and_sqrt() {
        let x = HPReal::from_i64(2, 256);
        assert_eq!(x.ln().to_fixed(50, true), LN2_50);
        let s = x.sqrt();
        assert!((&(&s * &s) - &x).log10_abs() < -75.0);
        let e = HPReal::from_frac(3, 7, 256).ln();
        assert!((e.to_f64() - (3f64 / 7.0).ln()).abs() < 1e-15);
        let tiny = HPReal::from_frac(1, 1 << 40, 256);
        assert!((tiny.ln().to_f64() + 40.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn trig() {
        let (s, c) = HPReal::from_frac(1, 3, 200).sin_cos();
        assert!((s.to_f64() - (1f64 / 3.0).sin()).abs() < 1e-15);
        assert!(((&s * &s + &c * &c) - HPReal::one(200)).log10_abs() < -55.0);
        let big = HPReal::pi(300).mul_int(1001).div_int(3);
        assert!((big.cos().to_f64() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn formatting() {
        let x = HPReal::from_frac(-1, 8, 64);
        assert_eq!(x.to_fixed(3, false), "-0.125");
        assert_eq!(HPReal::from_frac(1, 3, 64).to_sci(3), "3.33e-1");
        assert_eq!(HPReal::from_i64(999, 64).to_sci(2), "1.0e3");
        assert_eq!(HPReal::zero(64).to_sci(1), "0e0");
    }

    #[test]
    fn precision_policy() {
        assert_eq!(working_precision(64), 96);
        assert_eq!(working_precision(512), 576);
    }
}
