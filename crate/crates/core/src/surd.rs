//! Exact arithmetic in Q(√2, √3) and its quadratic extensions.
//!
//! Elements are stored on the basis {1, √2, √3, √6}. The canonical text form
//! is `a + b*r2 + c*r3 + d*r6` with each coefficient written `p` or `p/q`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hpreal::HPReal;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdValue {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl SurdValue {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        SurdValue { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        SurdValue { a, b: BigRational::zero(), c: BigRational::zero(), d: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(ratio(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(ratio(n, d))
    }

    pub fn r2() -> Self {
        SurdValue { b: BigRational::one(), ..Self::zero() }
    }

    pub fn r3() -> Self {
        SurdValue { c: BigRational::one(), ..Self::zero() }
    }

    pub fn r6() -> Self {
        SurdValue { d: BigRational::one(), ..Self::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        SurdValue { a: &self.a * k, b: &self.b * k, c: &self.c * k, d: &self.d * k }
    }

    /// √2 → -√2.
    pub fn conj2(&self) -> Self {
        SurdValue { a: self.a.clone(), b: -&self.b, c: self.c.clone(), d: -&self.d }
    }

    /// √3 → -√3.
    pub fn conj3(&self) -> Self {
        SurdValue { a: self.a.clone(), b: self.b.clone(), c: -&self.c, d: -&self.d }
    }

    /// Both signs flipped; √6 is fixed.
    pub fn conj23(&self) -> Self {
        SurdValue { a: self.a.clone(), b: -&self.b, c: -&self.c, d: self.d.clone() }
    }

    /// Product of the four Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let p = self * &self.conj2();
        let q = &p * &p.conj3();
        debug_assert!(q.is_rational());
        q.a
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let adj = &(&self.conj2() * &self.conj3()) * &self.conj23();
        Ok(adj.scale(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, prec: u32) -> HPReal {
        let wp = prec + 8;
        let two = HPReal::from_i64(2, wp);
        let three = HPReal::from_i64(3, wp);
        let six = HPReal::from_i64(6, wp);
        let mut acc = HPReal::from_ratio(&self.a, wp);
        if !self.b.is_zero() {
            acc = acc + two.sqrt().mul_ratio(&self.b);
        }
        if !self.c.is_zero() {
            acc = acc + three.sqrt().mul_ratio(&self.c);
        }
        if !self.d.is_zero() {
            acc = acc + six.sqrt().mul_ratio(&self.d);
        }
        acc.with_prec(prec)
    }

    pub fn ln(&self, prec: u32) -> Result<HPReal> {
        let v = self.eval(prec + 8);
        if !v.is_positive() {
            return Err(Error::Domain(format!("log of non-positive {self}")));
        }
        Ok(v.ln().with_prec(prec))
    }

    /// Sign decided numerically; nonzero elements of the field are never
    /// closer to zero than the precision used here for the sizes in play.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.eval(256).is_positive()
    }
}

impl Add<&SurdValue> for &SurdValue {
    type Output = SurdValue;
    fn add(self, o: &SurdValue) -> SurdValue {
        SurdValue { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, d: &self.d + &o.d }
    }
}

impl Sub<&SurdValue> for &SurdValue {
    type Output = SurdValue;
    fn sub(self, o: &SurdValue) -> SurdValue {
        SurdValue { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, d: &self.d - &o.d }
    }
}

impl Mul<&SurdValue> for &SurdValue {
    type Output = SurdValue;
    fn mul(self, o: &SurdValue) -> SurdValue {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let two = ratio(2, 1);
        let three = ratio(3, 1);
        let six = ratio(6, 1);
        SurdValue {
            a: a * e + &two * b * f + &three * c * g + &six * d * h,
            b: a * f + b * e + &three * c * h + &three * d * g,
            c: a * g + c * e + &two * b * h + &two * d * f,
            d: a * h + d * e + b * g + c * f,
        }
    }
}

impl Neg for &SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        SurdValue { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(SurdValue);

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*r2 + {}*r3 + {}*r6",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c),
            format_rational(&self.d)
        )
    }
}

impl FromStr for SurdValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(" + ").collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected four terms in `{s}`")));
        }
        let a = parse_rational(parts[0])?;
        let mut rest = Vec::with_capacity(3);
        for (part, unit) in parts[1..].iter().zip(["r2", "r3", "r6"]) {
            let coef = part
                .trim()
                .strip_suffix(unit)
                .and_then(|p| p.strip_suffix('*'))
                .ok_or_else(|| Error::Parse(format!("expected `<rational>*{unit}`, got `{part}`")))?;
            rest.push(parse_rational(coef)?);
        }
        let d = rest.pop().unwrap();
        let c = rest.pop().unwrap();
        let b = rest.pop().unwrap();
        Ok(SurdValue { a, b, c, d })
    }
}

/// `x + y√m` with `x, y, m` in Q(√2, √3) and `m > 0`.
///
/// Used for quantities such as ⁴√(2/3) that leave the base field. Two values
/// combine only when they share the radicand (or one of them has `y = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSurd {
    pub x: SurdValue,
    pub y: SurdValue,
    pub m: SurdValue,
}

impl ExtSurd {
    pub fn base(x: SurdValue) -> Self {
        ExtSurd { x, y: SurdValue::zero(), m: SurdValue::one() }
    }

    /// `√m`.
    pub fn sqrt_of(m: SurdValue) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::Domain(format!("radicand {m} is not positive")));
        }
        Ok(ExtSurd { x: SurdValue::zero(), y: SurdValue::one(), m })
    }

    pub fn int(n: i64) -> Self {
        Self::base(SurdValue::int(n))
    }

    fn normalized(self) -> Self {
        if self.y.is_zero() {
            Self::base(self.x)
        } else {
            self
        }
    }

    fn radicand_with(&self, o: &ExtSurd) -> Result<SurdValue> {
        match (self.y.is_zero(), o.y.is_zero()) {
            (true, _) => Ok(o.m.clone()),
            (_, true) => Ok(self.m.clone()),
            _ if self.m == o.m => Ok(self.m.clone()),
            _ => Err(Error::Domain(format!("mismatched radicands {} and {}", self.m, o.m))),
        }
    }

    pub fn add(&self, o: &ExtSurd) -> Result<Self> {
        let m = self.radicand_with(o)?;
        Ok(ExtSurd { x: &self.x + &o.x, y: &self.y + &o.y, m }.normalized())
    }

    pub fn sub(&self, o: &ExtSurd) -> Result<Self> {
        let m = self.radicand_with(o)?;
        Ok(ExtSurd { x: &self.x - &o.x, y: &self.y - &o.y, m }.normalized())
    }

    pub fn mul(&self, o: &ExtSurd) -> Result<Self> {
        let m = self.radicand_with(o)?;
        let x = &(&self.x * &o.x) + &(&(&self.y * &o.y) * &m);
        let y = &(&self.x * &o.y) + &(&self.y * &o.x);
        Ok(ExtSurd { x, y, m }.normalized())
    }

    pub fn inverse(&self) -> Result<Self> {
        let den = &(&self.x * &self.x) - &(&(&self.y * &self.y) * &self.m);
        let inv = den.inverse()?;
        Ok(ExtSurd { x: &self.x * &inv, y: -&(&self.y * &inv), m: self.m.clone() }.normalized())
    }

    pub fn div(&self, o: &ExtSurd) -> Result<Self> {
        self.mul(&o.inverse()?)
    }

    pub fn eval(&self, prec: u32) -> HPReal {
        let wp = prec + 8;
        let mut v = self.x.eval(wp);
        if !self.y.is_zero() {
            v = v + self.y.eval(wp) * self.m.eval(wp).sqrt();
        }
        v.with_prec(prec)
    }
}

impl fmt::Display for ExtSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.x, self.y, self.m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_products() {
        assert_eq!(&SurdValue::r2() * &SurdValue::r3(), SurdValue::r6());
        assert_eq!(&SurdValue::r2() * &SurdValue::r6(), SurdValue::r3().scale(&ratio(2, 1)));
        assert_eq!(&SurdValue::r3() * &SurdValue::r6(), SurdValue::r2().scale(&ratio(3, 1)));
        assert_eq!(&SurdValue::r6() * &SurdValue::r6(), SurdValue::int(6));
    }

    #[test]
    fn inverse_of_unit() {
        // 5 + 2√6 is a unit with inverse 5 - 2√6.
        let u = &SurdValue::int(5) + &SurdValue::r6().scale(&ratio(2, 1));
        assert_eq!(u.norm(), ratio(1, 1));
        assert_eq!(u.inverse().unwrap(), &SurdValue::int(5) - &SurdValue::r6().scale(&ratio(2, 1)));
        assert_eq!(SurdValue::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn text_form() {
        let v = SurdValue::new(ratio(1, 2), ratio(-3, 1), BigRational::zero(), ratio(7, 9));
        assert_eq!(v.to_string(), "1/2 + -3*r2 + 0*r3 + 7/9*r6");
        assert_eq!(v.to_string().parse::<SurdValue>().unwrap(), v);
        assert!("1 + 2*r3 + 0*r3 + 0*r6".parse::<SurdValue>().is_err());
        assert!("1/0 + 0*r2 + 0*r3 + 0*r6".parse::<SurdValue>().is_err());
    }

    #[test]
    fn extension_roundtrip() {
        let r = ExtSurd::sqrt_of(SurdValue::r6().scale(&ratio(1, 3))).unwrap();
        let r2 = r.mul(&r).unwrap();
        assert_eq!(r2, ExtSurd::base(SurdValue::r6().scale(&ratio(1, 3))));
        let one_plus = ExtSurd::int(1).add(&r).unwrap();
        let q = one_plus.inverse().unwrap().mul(&one_plus).unwrap();
        assert_eq!(q.x, SurdValue::one());
        assert!(q.y.is_zero());
        let v = r.eval(128).to_f64();
        assert!((v - (2f64 / 3.0).powf(0.25)).abs() < 1e-15);
    }
}
