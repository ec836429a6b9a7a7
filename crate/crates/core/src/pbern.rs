//! The P-polynomial table and the rational coefficients built on it:
//! even zeta values over powers of π, Bernoulli numbers, and the σ/τ
//! sequences that feed the Li₃ expansions.
//!
//! `P⁽ˡ⁾(n)` is defined for `1 <= l <= n` by
//!
//! ```text
//! P⁽ˡ⁾(n) = (-1)^(l+1) [yⁿ] u^(n-l+1) / (n-l+1),   u = 1 - sin z / z,  z² = 6y
//! ```
//!
//! so `P⁽¹⁾(n) = 1/n`, `P⁽ⁿ⁾(n) = 6ⁿ/(2n+1)!`, and for `l >= 2` each column is a
//! polynomial in `n` of degree `l - 2`.

use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn pow6(n: usize) -> BigInt {
    num_traits::pow(BigInt::from(6), n)
}

/// Rows `n = 1..=max_n` of `P⁽ˡ⁾(n)`. Grows by appending rows only.
#[derive(Clone, Debug, Default)]
pub struct PTable {
    rows: Vec<Vec<BigRational>>,
    // monomial coefficients in n of column l >= 2, once rows up to 2l-2 exist
    columns: Vec<Vec<BigRational>>,
}

impl PTable {
    pub fn new(max_n: usize) -> Self {
        let mut t = PTable { rows: Vec::new(), columns: Vec::new() };
        t.extend_to(max_n);
        t
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    pub fn extend_to(&mut self, max_n: usize) {
        for n in self.rows.len() + 1..=max_n {
            let row = self.build_row(n);
            self.rows.push(row);
        }
        while 2 * (self.columns.len() + 2) - 2 <= self.rows.len() {
            let l = self.columns.len() + 2;
            let col = self.interpolate_column(l);
            self.columns.push(col);
        }
    }

    fn interpolate_column(&self, l: usize) -> Vec<BigRational> {
        let nodes: Vec<i64> = (l as i64..=2 * l as i64 - 2).collect();
        let mut coeffs = vec![BigRational::zero(); nodes.len()];
        for (j, &xj) in nodes.iter().enumerate() {
            // basis polynomial prod_{k != j} (n - x_k) / (x_j - x_k)
            let mut basis = vec![BigRational::one()];
            let mut scale = self.rows[xj as usize - 1][l - 1].clone();
            for (k, &xk) in nodes.iter().enumerate() {
                if k == j {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * rat(BigInt::from(xk));
                }
                basis = next;
                scale /= rat(BigInt::from(xj - xk));
            }
            for (d, c) in basis.iter().enumerate() {
                coeffs[d] += c * &scale;
            }
        }
        coeffs
    }

    fn build_row(&self, n: usize) -> Vec<BigRational> {
        let mut row = vec![BigRational::zero(); n];
        row[n - 1] = BigRational::new(pow6(n), factorial(2 * n as u64 + 1));
        // power L = n - l + 1 >= 2
        for power in 2..=n {
            let l = n - power + 1;
            let mut sum = BigRational::zero();
            for i in power - 1..=n - 1 {
                let prev = &self.rows[i - 1][i + 1 - power];
                let den = pow6(i) * factorial((2 * (n - i) + 1) as u64);
                sum += prev / rat(den);
            }
            let scale = BigRational::new(pow6(n) * BigInt::from(power - 1), BigInt::from(power));
            row[l - 1] = sum * scale;
        }
        row
    }

    /// `P⁽ˡ⁾(n)` for `1 <= l <= n <= max_n`.
    pub fn get(&self, l: usize, n: usize) -> Result<&BigRational> {
        if l == 0 || l > n {
            return Err(Error::Domain(format!("P({l}, {n}) needs 1 <= l <= n")));
        }
        self.rows
            .get(n - 1)
            .map(|r| &r[l - 1])
            .ok_or_else(|| Error::Domain(format!("P table holds n <= {}, asked for {n}", self.max_n())))
    }

    /// `P⁽ˡ⁾(n)` continued to every integer `n`: table lookup inside the
    /// stored rows, otherwise the column polynomial (for `l >= 2`) or `1/n`.
    pub fn eval_poly(&self, l: usize, n: i64) -> Result<BigRational> {
        if l == 0 {
            return Err(Error::Domain("P index l must be positive".into()));
        }
        if n >= l as i64 && (n as usize) <= self.max_n() {
            return self.get(l, n as usize).cloned();
        }
        if l == 1 {
            if n == 0 {
                return Err(Error::Domain("P(1, 0) is undefined".into()));
            }
            return Ok(BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        let col = self.columns.get(l - 2).ok_or_else(|| {
            Error::Domain(format!("column {l} needs rows up to {}, table has {}", 2 * l - 2, self.max_n()))
        })?;
        let x = rat(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in col.iter().rev() {
            acc = acc * &x + c;
        }
        Ok(acc)
    }

    /// Rows needed so that every column up to `l` has its polynomial form.
    pub fn rows_for_column(l: usize) -> usize {
        (2 * l).saturating_sub(2).max(l)
    }

    /// JSON dump of the stored entries as `{l, n, value: "p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = Vec::new();
        for (n, row) in self.rows.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                out.push(serde_json::json!({
                    "l": l + 1,
                    "n": n + 1,
                    "value": crate::surd::format_rational(v),
                }));
            }
        }
        serde_json::Value::Array(out)
    }
}

fn shared_slot() -> &'static RwLock<Arc<PTable>> {
    static SLOT: OnceLock<RwLock<Arc<PTable>>> = OnceLock::new();
    SLOT.get_or_init(|| RwLock::new(Arc::new(PTable::new(0))))
}

/// Process-wide table holding at least `max_n` rows. Callers that evaluate in
/// parallel should request their largest size before spawning.
pub fn shared_table(max_n: usize) -> Arc<PTable> {
    {
        let t = shared_slot().read().expect("P table lock poisoned");
        if t.max_n() >= max_n {
            return Arc::clone(&t);
        }
    }
    let mut slot = shared_slot().write().expect("P table lock poisoned");
    if slot.max_n() < max_n {
        let mut grown = (**slot).clone();
        grown.extend_to(max_n);
        *slot = Arc::new(grown);
    }
    Arc::clone(&slot)
}

fn alt(l: usize) -> BigRational {
    if l % 2 == 1 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `σₙ = Σₗ (-1)^(l+1) C(n+2-l, 2) P⁽ˡ⁾(n)`.
pub fn sigma_coeff(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("sigma is indexed from 1".into()));
    }
    let t = shared_table(n);
    let mut s = BigRational::zero();
    for l in 1..=n {
        s += alt(l) * rat(binomial((n + 2 - l) as i64, 2)) * t.get(l, n)?;
    }
    Ok(s)
}

/// `τₙ = Σₗ (-1)^(l+1) C(n+4-l, 4) P⁽ˡ⁾(n)`.
pub fn tau_coeff(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("tau is indexed from 1".into()));
    }
    let t = shared_table(n);
    let mut s = BigRational::zero();
    for l in 1..=n {
        s += alt(l) * rat(binomial((n + 4 - l) as i64, 4)) * t.get(l, n)?;
    }
    Ok(s)
}

/// Bracketed coefficient of `q^(2n+2)` in the degree-4 Li₃ expansion:
/// `(-1)^(n+1) (τ_(n+1) - 2σₙ) / ((2n-1)2n(2n+1)(2n+2)(2n+3)(2n+4))`.
pub fn combined_coeff(n: usize) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::Domain("combined coefficient is indexed from 1".into()));
    }
    let m = 2 * n as i64;
    let e: i64 = (m - 1..=m + 4).product();
    Ok(alt(n) * (tau_coeff(n + 1)? - sigma_coeff(n)? * rat(BigInt::from(2))) / rat(BigInt::from(e)))
}

fn bernoulli_cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// Bernoulli numbers from `Σ_{k<=m} C(m+1, k) B_k = 0`.
fn recurrence_bernoulli(m: usize) -> BigRational {
    let mut b = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while b.len() <= m {
        let j = b.len();
        let mut s = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += rat(binomial(j as i64 + 1, k as i64)) * bk;
        }
        b.push(-s / rat(BigInt::from(j + 1)));
    }
    b[m].clone()
}

/// `ζ(2n)/π^(2n)` via Euler's Bernoulli formula.
fn euler_route(n: usize) -> BigRational {
    let b = recurrence_bernoulli(2 * n);
    let num = alt(n) * b * rat(num_traits::pow(BigInt::from(2), 2 * n));
    num / rat(BigInt::from(2) * factorial(2 * n as u64))
}

/// Compare a candidate `ζ(2n)/π^(2n)` against the Bernoulli route.
pub fn check_even_coeff(n: usize, candidate: &BigRational) -> Result<()> {
    let expected = euler_route(n);
    if &expected != candidate {
        return Err(Error::Integrity(format!(
            "zeta({}) coefficient {} disagrees with Bernoulli route {}",
            2 * n,
            candidate,
            expected
        )));
    }
    Ok(())
}

/// `ζ(2n)/π^(2n) = σₙ / ((2n-1) 6ⁿ)`, checked against the Bernoulli route.
pub fn zeta_even_coeff(n: usize) -> Result<BigRational> {
    let s = sigma_coeff(n)?;
    let v = s / rat(BigInt::from(2 * n as i64 - 1) * pow6(n));
    check_even_coeff(n, &v)?;
    Ok(v)
}

/// `B_m` for even `m`, recovered from `ζ(m)/π^m`.
pub fn bernoulli_even(m: usize) -> Result<BigRational> {
    if m % 2 == 1 {
        return Err(Error::Domain(format!("B_{m} requested but m must be even")));
    }
    if m == 0 {
        return Ok(BigRational::one());
    }
    let z = zeta_even_coeff(m / 2)?;
    let scale = rat(BigInt::from(2) * factorial(m as u64)) / rat(num_traits::pow(BigInt::from(2), m));
    Ok(alt(m / 2) * z * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::ratio;

    #[test]
    fn closed_forms() {
        let t = PTable::new(12);
        assert_eq!(t.get(1, 7).unwrap(), &ratio(1, 7));
        assert_eq!(t.get(4, 4).unwrap(), &ratio(1, 280));
        assert_eq!(t.get(2, 9).unwrap(), &ratio(3, 10));
        assert_eq!(t.get(3, 5).unwrap(), &ratio(93, 700));
        assert!(t.get(5, 4).is_err());
        assert!(t.get(1, 13).is_err());
    }

    #[test]
    fn polynomial_continuation() {
        let t = PTable::new(20);
        for l in 2..8 {
            for n in 2 * l..15 {
                assert_eq!(&t.eval_poly(l, n as i64).unwrap(), t.get(l, n).unwrap());
            }
        }
        assert_eq!(t.eval_poly(2, -3).unwrap(), ratio(3, 10));
        let small = PTable::new(6);
        assert_eq!(small.eval_poly(3, 5).unwrap(), ratio(93, 700));
        assert_eq!(small.eval_poly(3, 40).unwrap(), ratio(3 * (21 * 40 - 43), 1400));
        assert!(small.eval_poly(5, 9).is_err());
        assert_eq!(t.eval_poly(1, 1).unwrap(), ratio(1, 1));
    }

    #[test]
    fn low_sigmas() {
        assert_eq!(sigma_coeff(1).unwrap(), ratio(1, 1));
        assert_eq!(sigma_coeff(2).unwrap(), ratio(6, 5));
        assert_eq!(sigma_coeff(3).unwrap(), ratio(8, 7));
        assert_eq!(zeta_even_coeff(1).unwrap(), ratio(1, 6));
        assert_eq!(zeta_even_coeff(2).unwrap(), ratio(1, 90));
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_even(0).unwrap(), ratio(1, 1));
        assert_eq!(bernoulli_even(2).unwrap(), ratio(1, 6));
        assert_eq!(bernoulli_even(12).unwrap(), ratio(-691, 2730));
        assert!(bernoulli_even(3).is_err());
    }

    #[test]
    fn integrity_hook_rejects_wrong_value() {
        assert!(matches!(check_even_coeff(2, &ratio(1, 91)), Err(Error::Integrity(_))));
        assert!(check_even_coeff(2, &ratio(1, 90)).is_ok());
    }

    #[test]
    fn combined_low_orders() {
        assert_eq!(combined_coeff(1).unwrap(), ratio(1, 3600));
        assert_eq!(combined_coeff(2).unwrap(), ratio(-1, 17640));
    }

    #[test]
    fn tau_relation() {
        for n in 2..15 {
            let lhs = tau_coeff(n).unwrap();
            let k = ratio((2 * n as i64 - 3) * (2 * n as i64 - 2), 12);
            let rhs = sigma_coeff(n).unwrap() * k + sigma_coeff(n - 1).unwrap() * ratio(2, 1);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
