//! Arbitrary-precision scalars: reduced rationals, binomial coefficients,
//! primality and deterministic factorization.
//!
//! Rationals are [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator after each operation.

mod factor;
mod primes;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use factor::{factorize, factorize_rational, Factorization, RationalFactorization};
pub use primes::{is_prime, is_prime_u64, small_primes};

#[doc(hidden)]
pub use primes::{miller_rabin_u64, strong_lucas_probable_prime};

/// Exact reduced fraction; the scalar type for every special value.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BigMathError {
    #[error("cannot factor zero")]
    FactorZero,
    #[error("{0} is not an integer")]
    NotInteger(Rational),
}

/// Shorthand for `n/d` as a reduced [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// C(n, k); zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Integer value of `q`, or an error if `q` has a nontrivial denominator.
pub fn to_integer(q: &Rational) -> Result<BigInt, BigMathError> {
    if q.denom().is_one() {
        Ok(q.numer().clone())
    } else {
        Err(BigMathError::NotInteger(q.clone()))
    }
}

/// `b^e mod m` for `m > 0`, result in `[0, m)`.
pub fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

/// Reduce an integer into `[0, m)`.
pub fn mod_u64(x: &BigInt, m: u64) -> u64 {
    let r = x % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    u64::try_from(r).expect("residue fits in u64")
}

/// Image of `q` in `Z/mZ`, or `None` if the denominator is not invertible mod `m`.
pub fn rational_mod_u64(q: &Rational, m: u64) -> Option<u64> {
    let num = mod_u64(q.numer(), m);
    let den = mod_u64(q.denom(), m);
    let inv = inv_mod_u64(den, m)?;
    Some(((num as u128 * inv as u128) % m as u128) as u64)
}

/// `(-1)^k` as a small integer.
pub fn sign_pow(k: u64) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<BigUint>> {
        let mut rows = vec![vec![BigUint::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigUint::one(); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(12, 1), BigUint::from(12u32));
        assert_eq!(binomial(12, 5), BigUint::from(792u32));
        assert_eq!(binomial(3, 7), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal(60);
        for (n, row) in tri.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as u64), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let x = rat(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        let z = &x - &x;
        assert!(z.numer().is_zero());
        assert!(z.denom().is_one());
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(pow_mod_u64(2, 10, 1000), 24);
        assert_eq!(inv_mod_u64(5, 67), Some(27));
        assert_eq!(inv_mod_u64(6, 9), None);
        assert_eq!(rational_mod_u64(&rat(67, 5), 67), Some(0));
        assert_eq!(rational_mod_u64(&rat(1, 67), 67), None);
        assert_eq!(mod_u64(&BigInt::from(-44), 67), 23);
    }

    #[test]
    fn to_integer_rejects_fractions() {
        assert_eq!(to_integer(&rat(10, 5)), Ok(BigInt::from(2)));
        assert!(matches!(to_integer(&rat(1, 5)), Err(BigMathError::NotInteger(_))));
    }
}
