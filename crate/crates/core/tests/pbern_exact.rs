use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use zetalab::pbern::{bernoulli_even, factorial, zeta_even_coeff, PTable};
use zetalab::surd::ratio;

/// Bernoulli numbers B_0..B_m by the Akiyama–Tanigawa transform (B_1 = +1/2).
fn akiyama_tanigawa(m: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::new();
    let mut out = Vec::new();
    for k in 0..=m {
        a.push(ratio(1, k as i64 + 1));
        for j in (1..=k).rev() {
            a[j - 1] = (&a[j - 1] - &a[j]) * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    out
}

fn euler(n: usize, b: &BigRational) -> BigRational {
    let sign = if n % 2 == 1 { BigRational::one() } else { -BigRational::one() };
    sign * b * BigRational::from_integer(BigInt::from(2).pow(2 * n as u32 - 1)) / BigRational::from_integer(factorial(2 * n as u64))
}

#[test]
fn bernoulli_matches_independent_transform() {
    let b = akiyama_tanigawa(60);
    for m in (2..=60).step_by(2) {
        assert_eq!(bernoulli_even(m).unwrap(), b[m], "B_{m}");
    }
    assert_eq!(bernoulli_even(0).unwrap(), BigRational::one());
    assert!(bernoulli_even(7).is_err());
}

#[test]
fn even_zeta_equals_euler_route() {
    let b = akiyama_tanigawa(60);
    for n in 1..=30 {
        assert_eq!(zeta_even_coeff(n).unwrap(), euler(n, &b[2 * n]), "n = {n}");
    }
    assert_eq!(zeta_even_coeff(1).unwrap(), ratio(1, 6));
    assert_eq!(zeta_even_coeff(2).unwrap(), ratio(1, 90));
}

#[test]
fn closed_column_forms() {
    let t = PTable::new(30);
    for n in 1..=30i64 {
        assert_eq!(t.get(1, n as usize).unwrap(), &ratio(1, n));
        if n >= 2 {
            assert_eq!(t.get(2, n as usize).unwrap(), &ratio(3, 10));
        }
        if n >= 3 {
            assert_eq!(t.get(3, n as usize).unwrap(), &ratio(3 * (21 * n - 43), 1400));
        }
        if n >= 4 {
            assert_eq!(t.get(4, n as usize).unwrap(), &ratio(63 * n * n - 387 * n + 590, 14000));
        }
    }
}

#[test]
fn small_column_denominators() {
    let t = PTable::new(30);
    for n in 1..=30usize {
        for l in 2..=4.min(n) {
            let mut d = t.get(l, n).unwrap().denom().clone();
            for p in [2, 3, 5, 7] {
                let p = BigInt::from(p);
                while (&d % &p).is_zero() {
                    d /= &p;
                }
            }
            assert!(d.is_one(), "P({l},{n}) denominator has other primes");
        }
    }
}

#[test]
fn out_of_range_requests() {
    let t = PTable::new(5);
    assert!(t.get(0, 3).is_err());
    assert!(t.get(4, 3).is_err());
    assert!(t.get(2, 9).is_err());
    assert!(t.eval_poly(9, 20).is_err());
    assert!(t.eval_poly(1, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn column_polynomial_continues_the_table(l in 2usize..10, extra in 0usize..12) {
        let small = PTable::new(PTable::rows_for_column(l));
        let n = l + extra;
        let big = PTable::new(n);
        prop_assert_eq!(small.eval_poly(l, n as i64).unwrap(), big.get(l, n).unwrap().clone());
    }

    #[test]
    fn diagonal_is_six_power_over_factorial(n in 1usize..25) {
        let t = PTable::new(n);
        let expect = BigRational::new(BigInt::from(6).pow(n as u32), factorial(2 * n as u64 + 1));
        prop_assert_eq!(t.get(n, n).unwrap().clone(), expect);
        prop_assert!(t.get(n, n).unwrap().is_positive());
    }
}
