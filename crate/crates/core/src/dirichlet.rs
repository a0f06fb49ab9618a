//! The quadratic character modulo an odd prime, its twisted power sums, and
//! generalized Bernoulli numbers `B_{n,chi}`.
//!
//! `B_{n,chi}` is computed two ways: from Bernoulli polynomials,
//! `B_{n,chi} = p^(n-1) sum_{a=1}^{p-1} chi(a) B_n(a/p)`, and (for
//! `p = 1 mod 4`) bottom-up from the power sums `S_chi(n) = sum chi(a) a^n`.
//! [`gen_bernoulli`] runs both and refuses to answer if they disagree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use thiserror::Error;

use crate::bernoulli::bernoulli_polynomial;
use crate::bigmath::{binomial, factorial, is_prime_u64, pow_mod_u64, rat_int, to_integer, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirichletError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} is not 1 mod 4")]
    NotOneModFour(u64),
    #[error("expected a positive even index, got {0}")]
    NotPositiveEven(usize),
    #[error("methods disagree on B_({n},chi) mod {p}: polynomial {poly}, recursion {recursion}")]
    MethodMismatch {
        p: u64,
        n: usize,
        poly: Rational,
        recursion: Rational,
    },
    #[error("p * B_({two_m},chi) = {value} is not an integer (p = {p})")]
    NotIntegral { p: u64, two_m: usize, value: Rational },
}

/// The Legendre symbol `(. / p)` as a Dirichlet character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCharacter {
    modulus: u64,
    values: Vec<i8>,
}

impl QuadCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, a: i64) -> i8 {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.values[r]
    }

    pub fn value_u64(&self, a: u64) -> i8 {
        self.values[(a % self.modulus) as usize]
    }

    /// `chi(-1) = +1`, i.e. `p = 1 mod 4`.
    pub fn is_even(&self) -> bool {
        self.modulus % 4 == 1
    }

    fn require_even(&self) -> Result<(), DirichletError> {
        if self.is_even() {
            Ok(())
        } else {
            Err(DirichletError::NotOneModFour(self.modulus))
        }
    }
}

/// Character table by Euler's criterion `a^((p-1)/2) mod p`.
pub fn quad_character(p: u64) -> Result<QuadCharacter, DirichletError> {
    if p == 2 || !is_prime_u64(p) {
        return Err(DirichletError::NotOddPrime(p));
    }
    let half = (p - 1) / 2;
    let values = (0..p)
        .map(|a| match pow_mod_u64(a, half, p) {
            0 => 0,
            1 => 1,
            r if r == p - 1 => -1,
            r => unreachable!("Euler's criterion gave {r} mod {p}"),
        })
        .collect();
    Ok(QuadCharacter { modulus: p, values })
}

/// `S_chi(n) = sum_{a=1}^{p-1} chi(a) a^n`.
pub fn power_sum(chi: &QuadCharacter, n: u32) -> BigInt {
    (1..chi.modulus).fold(BigInt::zero(), |acc, a| match chi.value_u64(a) {
        1 => acc + BigInt::from(a).pow(n),
        -1 => acc - BigInt::from(a).pow(n),
        _ => acc,
    })
}

pub fn gen_bernoulli_via_polynomials(chi: &QuadCharacter, n: usize) -> Rational {
    let p = chi.modulus;
    let poly = bernoulli_polynomial(n);
    let sum = (1..p).fold(Rational::zero(), |acc, a| {
        let at = Rational::new(BigInt::from(a), BigInt::from(p));
        match chi.value_u64(a) {
            1 => acc + poly.eval(&at),
            -1 => acc - poly.eval(&at),
            _ => acc,
        }
    });
    let scale = if n == 0 {
        Rational::new(1.into(), BigInt::from(p))
    } else {
        rat_int(BigInt::from(p).pow((n - 1) as u32))
    };
    sum * scale
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Polynomial,
    Recursion,
    CrossChecked,
}

/// `B_{2,chi}, B_{4,chi}, ...` keyed by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenBernoulliTable {
    modulus: u64,
    entries: BTreeMap<usize, Rational>,
    method: Method,
}

impl GenBernoulliTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.entries.get(&n)
    }

    pub fn entries(&self) -> &BTreeMap<usize, Rational> {
        &self.entries
    }

    /// `p * B_{n,chi}` for every stored index.
    pub fn scaled_by_modulus(&self) -> impl Iterator<Item = (usize, Rational)> + '_ {
        let p = rat_int(self.modulus);
        self.entries.iter().map(move |(&n, b)| (n, b * &p))
    }
}

fn check_two_m(two_m: usize) -> Result<usize, DirichletError> {
    if two_m < 2 || two_m % 2 != 0 {
        Err(DirichletError::NotPositiveEven(two_m))
    } else {
        Ok(two_m / 2)
    }
}

/// `p B_{2,chi} = S_chi(2)` and, for `m >= 2`,
/// `B_{2m,chi} = (S_chi(2m) - sum_{j=0}^{m-2} C(2m, 2j+1) B_{2j+2,chi} / (2j+2) p^(2m-2j-1)) / p`.
pub fn gen_bernoulli_via_recursion(
    chi: &QuadCharacter,
    max_two_m: usize,
) -> Result<GenBernoulliTable, DirichletError> {
    chi.require_even()?;
    let max_m = check_two_m(max_two_m)?;
    let p = chi.modulus;
    let p_big = BigInt::from(p);
    let mut by_m: Vec<Rational> = Vec::with_capacity(max_m);
    for m in 1..=max_m {
        let two_m = 2 * m;
        let mut acc = rat_int(power_sum(chi, two_m as u32));
        for j in 0..m.saturating_sub(1) {
            let coeff = BigInt::from(binomial(two_m as u64, (2 * j + 1) as u64))
                * Pow::pow(&p_big, (two_m - 2 * j - 1) as u32);
            acc -= &by_m[j] * rat_int(coeff) / rat_int((2 * j + 2) as u64);
        }
        by_m.push(acc / rat_int(p));
    }
    let entries = by_m
        .into_iter()
        .enumerate()
        .map(|(i, b)| (2 * (i + 1), b))
        .collect();
    Ok(GenBernoulliTable {
        modulus: p,
        entries,
        method: Method::Recursion,
    })
}

/// Polynomial-method table over even indices `2..=max_two_m`.
pub fn gen_bernoulli_table_via_polynomials(
    chi: &QuadCharacter,
    max_two_m: usize,
) -> Result<GenBernoulliTable, DirichletError> {
    let max_m = check_two_m(max_two_m)?;
    let entries = (1..=max_m)
        .map(|m| (2 * m, gen_bernoulli_via_polynomials(chi, 2 * m)))
        .collect();
    Ok(GenBernoulliTable {
        modulus: chi.modulus,
        entries,
        method: Method::Polynomial,
    })
}

/// Both tables, required to agree entry by entry.
pub fn gen_bernoulli_table(
    chi: &QuadCharacter,
    max_two_m: usize,
) -> Result<GenBernoulliTable, DirichletError> {
    let recursion = gen_bernoulli_via_recursion(chi, max_two_m)?;
    let poly = gen_bernoulli_table_via_polynomials(chi, max_two_m)?;
    for (n, r) in recursion.entries() {
        let q = &poly.entries[n];
        if q != r {
            return Err(DirichletError::MethodMismatch {
                p: chi.modulus,
                n: *n,
                poly: q.clone(),
                recursion: r.clone(),
            });
        }
    }
    Ok(GenBernoulliTable {
        method: Method::CrossChecked,
        ..recursion
    })
}

/// Cross-checked `B_{n,chi}`; requires `p = 1 mod 4`. Index 0 and odd
/// indices come from the polynomial formula alone (the recursion only
/// produces even indices).
pub fn gen_bernoulli(chi: &QuadCharacter, n: usize) -> Result<Rational, DirichletError> {
    chi.require_even()?;
    let poly = gen_bernoulli_via_polynomials(chi, n);
    if n == 0 || n % 2 == 1 {
        return Ok(poly);
    }
    let table = gen_bernoulli_via_recursion(chi, n)?;
    let recursion = &table.entries[&n];
    if *recursion != poly {
        return Err(DirichletError::MethodMismatch {
            p: chi.modulus,
            n,
            poly,
            recursion: recursion.clone(),
        });
    }
    Ok(poly)
}

/// `p * B_{2m,chi}`, which is an integer for `p = 1 mod 4`.
pub fn carlitz_integer(chi: &QuadCharacter, two_m: usize) -> Result<BigInt, DirichletError> {
    check_two_m(two_m)?;
    let value = gen_bernoulli(chi, two_m)? * rat_int(chi.modulus);
    to_integer(&value).map_err(|_| DirichletError::NotIntegral {
        p: chi.modulus,
        two_m,
        value,
    })
}

/// `L(2m, chi) / (pi^(2m) sqrt(p)) = (-1)^(m-1) (1/2) (2/p)^(2m) B_{2m,chi} / (2m)!`.
pub fn leopoldt_ratio(chi: &QuadCharacter, two_m: usize) -> Result<Rational, DirichletError> {
    let m = check_two_m(two_m)?;
    let b = gen_bernoulli(chi, two_m)?;
    let scale = Rational::new(
        BigInt::from(2).pow((two_m - 1) as u32),
        BigInt::from(chi.modulus).pow(two_m as u32) * BigInt::from(factorial(two_m as u64)),
    );
    let value = b * scale;
    Ok(if m % 2 == 1 { value } else { -value })
}
