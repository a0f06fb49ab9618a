//! Bernoulli numbers with `B_1 = +1/2` (generating function `t e^t / (e^t - 1)`),
//! Bernoulli polynomials, and the rational ratios `zeta(2m) / pi^(2m)`.
//!
//! With `B_1 = +1/2`, the alternating-sign expansion
//! `B_n(x) = sum_j (-1)^j C(n, j) B_j x^(n-j)` produces the standard
//! Bernoulli polynomials, so `B_n(1) = B_n` and `B_n(0) = (-1)^n B_n`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigmath::{binomial, factorial, rat_int, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BernoulliError {
    #[error("expected a positive even index, got {0}")]
    NotPositiveEven(i64),
}

fn extend_table(table: &mut Vec<Rational>, upto: usize) {
    if table.is_empty() {
        table.push(Rational::one());
    }
    // sum_{j=0}^{m} C(m+1, j) B_j = m + 1
    for m in table.len()..=upto {
        let m1 = (m + 1) as u64;
        let partial = table
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, b)| {
                acc + b * rat_int(BigInt::from(binomial(m1, j as u64)))
            });
        let next = (rat_int(m1) - partial) / rat_int(m1);
        table.push(next);
    }
}

/// `B_0, ..., B_max` computed in one pass, without touching the shared memo.
pub fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut table = Vec::with_capacity(max + 1);
    extend_table(&mut table, max);
    table
}

/// `B_m`, memoized process-wide behind a mutex.
pub fn bernoulli_number(m: usize) -> Rational {
    static MEMO: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(Vec::new()));
    let mut table = memo.lock().unwrap_or_else(|e| e.into_inner());
    if table.len() <= m {
        extend_table(&mut table, m);
    }
    table[m].clone()
}

/// Dense polynomial with rational coefficients in ascending powers of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliPolynomial {
    coefficients: Vec<Rational>,
}

impl BernoulliPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

pub fn bernoulli_polynomial(n: usize) -> BernoulliPolynomial {
    let numbers = bernoulli_numbers(n);
    let mut coefficients = vec![Rational::zero(); n + 1];
    for (j, b) in numbers.iter().enumerate() {
        let mut term = b * rat_int(BigInt::from(binomial(n as u64, j as u64)));
        if j % 2 == 1 {
            term = -term;
        }
        coefficients[n - j] = term;
    }
    BernoulliPolynomial { coefficients }
}

/// `Z_2m = zeta(2m) / pi^(2m) = (-1)^(m-1) 2^(2m) B_2m / (2 (2m)!)`.
pub fn zeta_ratio(two_m: i64) -> Result<Rational, BernoulliError> {
    if two_m < 2 || two_m % 2 != 0 {
        return Err(BernoulliError::NotPositiveEven(two_m));
    }
    let n = two_m as usize;
    let m = n / 2;
    let b = bernoulli_number(n);
    let scale = Rational::new(
        BigInt::one() << n,
        BigInt::from(2u32) * BigInt::from(factorial(n as u64)),
    );
    let value = b * scale;
    Ok(if m % 2 == 1 { value } else { -value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::{factorize, rat, small_primes};
    use num_traits::Signed;

    /// Coefficients of `t e^t / (e^t - 1)` by power-series division,
    /// independent of the binomial recursion.
    fn series_oracle(max: usize) -> Vec<Rational> {
        // e^t - 1 = t * sum_{k>=0} t^k / (k+1)!, so t e^t / (e^t - 1) = e^t / D(t)
        let fact = |k: usize| rat_int(BigInt::from(factorial(k as u64)));
        let exp: Vec<Rational> = (0..=max).map(|k| Rational::one() / fact(k)).collect();
        let den: Vec<Rational> = (0..=max).map(|k| Rational::one() / fact(k + 1)).collect();
        let mut quot = vec![Rational::zero(); max + 1];
        for n in 0..=max {
            let mut acc = exp[n].clone();
            for k in 1..=n {
                acc -= &den[k] * &quot[n - k];
            }
            quot[n] = acc / &den[0];
        }
        quot.iter().enumerate().map(|(n, c)| c * fact(n)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(1, 2));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn matches_generating_function_oracle() {
        let oracle = series_oracle(40);
        assert_eq!(bernoulli_numbers(40), oracle);
        for (m, b) in oracle.iter().enumerate() {
            assert_eq!(&bernoulli_number(m), b);
        }
    }

    #[test]
    fn odd_indices_vanish() {
        for m in (3..60).step_by(2) {
            assert!(bernoulli_number(m).is_zero(), "B_{m}");
        }
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(bernoulli_polynomial(0).coefficients(), &[rat(1, 1)]);
        assert_eq!(bernoulli_polynomial(1).coefficients(), &[rat(-1, 2), rat(1, 1)]);
        assert_eq!(
            bernoulli_polynomial(2).coefficients(),
            &[rat(1, 6), rat(-1, 1), rat(1, 1)]
        );
    }

    #[test]
    fn polynomial_endpoints_and_monic() {
        for n in 0..30 {
            let poly = bernoulli_polynomial(n);
            assert_eq!(poly.degree(), n);
            assert_eq!(poly.coefficients()[n], rat(1, 1));
            let b = bernoulli_number(n);
            assert_eq!(poly.eval(&rat(1, 1)), b, "B_{n}(1)");
            let at_zero = if n % 2 == 0 { b.clone() } else { -b.clone() };
            assert_eq!(poly.eval(&rat(0, 1)), at_zero, "B_{n}(0)");
        }
    }

    #[test]
    fn zeta_ratio_examples() {
        assert_eq!(zeta_ratio(2).unwrap(), rat(1, 6));
        let d12 = 3i64.pow(6) * 5i64.pow(3) * 49 * 11 * 13;
        assert_eq!(zeta_ratio(12).unwrap(), rat(691, d12));
        let d16 = 2 * 3i64.pow(7) * 5i64.pow(4) * 49 * 11 * 13 * 17;
        assert_eq!(zeta_ratio(16).unwrap(), rat(3617, d16));
        assert_eq!(zeta_ratio(0), Err(BernoulliError::NotPositiveEven(0)));
        assert_eq!(zeta_ratio(7), Err(BernoulliError::NotPositiveEven(7)));
        assert_eq!(zeta_ratio(-4), Err(BernoulliError::NotPositiveEven(-4)));
    }

    #[test]
    fn zeta_ratios_positive() {
        for two_m in (2..=60).step_by(2) {
            assert!(zeta_ratio(two_m).unwrap().is_positive());
        }
    }

    #[test]
    fn clausen_von_staudt() {
        for n in (2..=30).step_by(2) {
            let mut v = bernoulli_number(n);
            for &p in small_primes().iter().take_while(|&&p| p as usize <= n + 1) {
                if n % (p as usize - 1) == 0 {
                    v += rat(1, p as i64);
                }
            }
            assert!(v.denom().is_one(), "n = {n}");
        }
    }

    #[test]
    fn prime_2m_plus_1_divides_denominator() {
        for two_m in [2i64, 4, 6, 10, 12, 16, 18] {
            let z = zeta_ratio(two_m).unwrap();
            let den = factorize(z.denom()).unwrap();
            assert!(den.exponent_of(&((two_m + 1) as u64).into()) > 0, "2m = {two_m}");
        }
    }

    #[test]
    fn concurrent_callers_agree() {
        let expected = bernoulli_numbers(50);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|t| s.spawn(move || (0..=50).rev().skip(t).map(bernoulli_number).collect::<Vec<_>>()))
                .collect();
            for (t, h) in handles.into_iter().enumerate() {
                let got = h.join().unwrap();
                let want: Vec<_> = expected.iter().rev().skip(t).cloned().collect();
                assert_eq!(got, want);
            }
        });
    }
}
