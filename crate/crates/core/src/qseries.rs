//! Truncated q-expansions over `Q` or a quadratic field, and builders for
//! `Delta`, the level-1 Eisenstein series and the Hecke-Eisenstein series
//! `E_{k,chi}` normalized to have `a_1 = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::bernoulli::bernoulli_number;
use crate::bigmath::{binomial, rat_int, Rational};
use crate::dirichlet::{gen_bernoulli, DirichletError, QuadCharacter};
use crate::numberfield::{QuadField, QuadFieldElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("a q-series needs at least one coefficient")]
    Empty,
    #[error("coefficients live in different fields")]
    DomainMismatch,
    #[error("weight {0} is not allowed here")]
    InvalidWeight(u32),
    #[error("need at least {min} terms, got {got}")]
    TooFewTerms { min: usize, got: usize },
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
}

/// Coefficient ring for [`QSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn same_domain(&self, other: &Self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn same_domain(&self, _: &Self) -> bool {
        true
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coefficient for QuadFieldElem {
    fn zero_like(&self) -> Self {
        self.field().from_rational(Rational::zero())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn same_domain(&self, other: &Self) -> bool {
        self.same_field(other)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// Weight, level and nebentypus modulus, when known.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SeriesMeta {
    pub weight: Option<u32>,
    pub level: Option<u64>,
    /// Modulus of the quadratic nebentypus; `None` for trivial character.
    pub character: Option<u64>,
}

impl SeriesMeta {
    pub fn new(weight: u32, level: u64, character: Option<u64>) -> Self {
        SeriesMeta {
            weight: Some(weight),
            level: Some(level),
            character,
        }
    }

    fn product(&self, other: &Self) -> Self {
        let character = match (self.character, other.character) {
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some(a), Some(b)) if a == b => None,
            (None, None) => None,
            // product of two distinct quadratic characters is not tracked
            (Some(_), Some(_)) => None,
        };
        SeriesMeta {
            weight: self.weight.zip(other.weight).map(|(a, b)| a + b),
            level: self.level.zip(other.level).map(|(a, b)| a.lcm(&b)),
            character,
        }
    }

    fn common(&self, other: &Self) -> Self {
        if self == other {
            *self
        } else {
            SeriesMeta::default()
        }
    }
}

/// `sum_{n < precision} a_n q^n + O(q^precision)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries<C> {
    coeffs: Vec<C>,
    meta: SeriesMeta,
}

impl<C: Coefficient> QSeries<C> {
    pub fn new(coeffs: Vec<C>, meta: SeriesMeta) -> Result<Self, QSeriesError> {
        if coeffs.is_empty() {
            return Err(QSeriesError::Empty);
        }
        if coeffs.iter().any(|c| !c.same_domain(&coeffs[0])) {
            return Err(QSeriesError::DomainMismatch);
        }
        Ok(QSeries { coeffs, meta })
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn meta(&self) -> &SeriesMeta {
        &self.meta
    }

    pub fn with_meta(mut self, meta: SeriesMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.clamp(1, self.precision());
        QSeries {
            coeffs: self.coeffs[..n].to_vec(),
            meta: self.meta,
        }
    }

    fn check_domain(&self, other: &Self) -> Result<(), QSeriesError> {
        if self.coeffs[0].same_domain(&other.coeffs[0]) {
            Ok(())
        } else {
            Err(QSeriesError::DomainMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.zip_with(other, C::plus)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.zip_with(other, C::minus)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&C, &C) -> C) -> Result<Self, QSeriesError> {
        self.check_domain(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(QSeries {
            coeffs,
            meta: self.meta.common(&other.meta),
        })
    }

    /// Cauchy product truncated to the smaller precision.
    pub fn mul(&self, other: &Self) -> Result<Self, QSeriesError> {
        self.check_domain(other)?;
        let n = self.precision().min(other.precision());
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Ok(QSeries {
            coeffs,
            meta: self.meta.product(&other.meta),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a.times(c)).collect(),
            meta: self.meta,
        }
    }
}

impl QSeries<Rational> {
    /// View a rational series inside `Q(alpha)`.
    pub fn embed(&self, field: QuadField) -> QSeries<QuadFieldElem> {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| field.from_rational(a.clone())).collect(),
            meta: self.meta,
        }
    }
}

pub fn series_sub<C: Coefficient>(f: &QSeries<C>, g: &QSeries<C>) -> Result<QSeries<C>, QSeriesError> {
    f.sub(g)
}

pub fn series_mul<C: Coefficient>(f: &QSeries<C>, g: &QSeries<C>) -> Result<QSeries<C>, QSeriesError> {
    f.mul(g)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sigma_e(n) = sum_{d | n} d^e`.
pub fn divisor_sigma(n: u64, e: u32) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(e)).sum()
}

/// `sum_{d | n} chi(d) d^e`.
pub fn twisted_divisor_sum(chi: &QuadCharacter, n: u64, e: u32) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(chi.value_u64(d)) * BigInt::from(d).pow(e))
        .sum()
}

/// `Delta = q prod_{n >= 1} (1 - q^n)^24`, coefficients `q^0 .. q^(terms-1)`.
pub fn delta_qexp(terms: usize) -> Result<QSeries<Rational>, QSeriesError> {
    if terms < 2 {
        return Err(QSeriesError::TooFewTerms { min: 2, got: terms });
    }
    // product truncated below q^(terms-1), then shifted by one
    let len = terms - 1;
    let mut prod = vec![BigInt::zero(); len];
    prod[0] = BigInt::one();
    let factor: Vec<BigInt> = (0..=24u64)
        .map(|j| {
            let c = BigInt::from(binomial(24, j));
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    for n in 1..len {
        let mut next = vec![BigInt::zero(); len];
        for (j, c) in factor.iter().enumerate() {
            let shift = n * j;
            if shift >= len {
                break;
            }
            for i in 0..len - shift {
                if !prod[i].is_zero() {
                    next[i + shift] += c * &prod[i];
                }
            }
        }
        prod = next;
    }
    let mut coeffs = Vec::with_capacity(terms);
    coeffs.push(Rational::zero());
    coeffs.extend(prod.into_iter().map(rat_int));
    QSeries::new(coeffs, SeriesMeta::new(12, 1, None))
}

/// `-B_k / 2k + sum sigma_{k-1}(n) q^n` for even `k >= 4`.
pub fn eisenstein_level1(k: u32, terms: usize) -> Result<QSeries<Rational>, QSeriesError> {
    if k < 4 || k % 2 != 0 {
        return Err(QSeriesError::InvalidWeight(k));
    }
    if terms == 0 {
        return Err(QSeriesError::TooFewTerms { min: 1, got: 0 });
    }
    let constant = -bernoulli_number(k as usize) / rat_int(2 * k);
    let coeffs = std::iter::once(constant)
        .chain((1..terms as u64).map(|n| rat_int(divisor_sigma(n, k - 1))))
        .collect();
    QSeries::new(coeffs, SeriesMeta::new(k, 1, None))
}

/// Level-1 Eisenstein series scaled to constant term 1, e.g. `E_4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_level1_unit(k: u32, terms: usize) -> Result<QSeries<Rational>, QSeriesError> {
    let e = eisenstein_level1(k, terms)?;
    let c = Rational::one() / e.coefficients()[0].clone();
    Ok(e.scale(&c))
}

/// `E_{k,chi} = -B_{k,chi} / 2k + sum_n (sum_{d | n} chi(d) d^(k-1)) q^n`.
pub fn eisenstein_chi(chi: &QuadCharacter, k: u32, terms: usize) -> Result<QSeries<Rational>, QSeriesError> {
    if k < 2 || k % 2 != 0 {
        return Err(QSeriesError::InvalidWeight(k));
    }
    if terms == 0 {
        return Err(QSeriesError::TooFewTerms { min: 1, got: 0 });
    }
    let constant = -gen_bernoulli(chi, k as usize)? / rat_int(2 * k);
    let coeffs = std::iter::once(constant)
        .chain((1..terms as u64).map(|n| rat_int(twisted_divisor_sum(chi, n, k - 1))))
        .collect();
    QSeries::new(coeffs, SeriesMeta::new(k, chi.modulus(), Some(chi.modulus())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::{is_prime_u64, rat};
    use crate::dirichlet::quad_character;

    fn ints(s: &QSeries<Rational>) -> Vec<i64> {
        s.coefficients()
            .iter()
            .map(|c| i64::try_from(c.numer()).unwrap())
            .collect()
    }

    /// `Delta = (E_4^3 - E_6^2) / 1728`, a route independent of the eta product.
    fn delta_oracle(terms: usize) -> Vec<Rational> {
        let e4 = eisenstein_level1_unit(4, terms).unwrap();
        let e6 = eisenstein_level1_unit(6, terms).unwrap();
        let e4_cubed = e4.mul(&e4).unwrap().mul(&e4).unwrap();
        let e6_sq = e6.mul(&e6).unwrap();
        e4_cubed
            .sub(&e6_sq)
            .unwrap()
            .coefficients()
            .iter()
            .map(|c| c / rat(1728, 1))
            .collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(ints(&delta_qexp(2).unwrap()), vec![0, 1]);
        let d = delta_qexp(13).unwrap();
        assert_eq!(d.coeff(2), Some(&rat(-24, 1)));
        let tau = |n: usize| d.coeff(n).unwrap().clone();
        assert_eq!(tau(6), tau(2) * tau(3));
        assert_eq!(tau(3), rat(252, 1));
        assert!(delta_qexp(1).is_err());
    }

    #[test]
    fn delta_matches_eisenstein_oracle() {
        let d = delta_qexp(60).unwrap();
        assert_eq!(d.coefficients(), delta_oracle(60).as_slice());
        assert!(d.coefficients().iter().all(|c| c.denom().is_one()));
    }

    #[test]
    fn tau_is_multiplicative() {
        let d = delta_qexp(101).unwrap();
        let tau = |n: usize| d.coeff(n).unwrap().clone();
        for (m, n) in [(2usize, 3usize), (2, 5), (3, 7), (4, 25), (5, 19)] {
            assert_eq!(tau(m * n), tau(m) * tau(n));
        }
    }

    #[test]
    fn level1_eisenstein_examples() {
        let e12 = eisenstein_level1(12, 3).unwrap();
        assert_eq!(e12.coeff(0), Some(&rat(691, 65520)));
        assert_eq!(e12.coeff(1), Some(&rat(1, 1)));
        assert_eq!(e12.coeff(2), Some(&rat(2049, 1)));
        let e4 = eisenstein_level1_unit(4, 4).unwrap();
        assert_eq!(ints(&e4), vec![1, 240, 2160, 6720]);
        assert!(eisenstein_level1(2, 5).is_err());
        assert!(eisenstein_level1(7, 5).is_err());
    }

    #[test]
    fn eisenstein_chi_matches_displayed_expansion() {
        let chi = quad_character(5).unwrap();
        let e = eisenstein_chi(&chi, 6, 11).unwrap();
        assert_eq!(e.coeff(0), Some(&rat(-67, 5)));
        let rest: Vec<Rational> = [1, -31, -242, 993, 1, 7502, -16806, -31775, 58807, -31]
            .iter()
            .map(|&x| rat(x, 1))
            .collect();
        assert_eq!(&e.coefficients()[1..], rest.as_slice());
        assert_eq!(e.meta(), &SeriesMeta::new(6, 5, Some(5)));
        assert!(eisenstein_chi(&chi, 5, 11).is_err());
        assert!(eisenstein_chi(&quad_character(7).unwrap(), 6, 11).is_err());
    }

    #[test]
    fn weight_16_form_satisfies_3617_congruence() {
        let g = delta_qexp(100)
            .unwrap()
            .mul(&eisenstein_level1_unit(4, 100).unwrap())
            .unwrap();
        assert_eq!(g.meta().weight, Some(16));
        assert_eq!(g.coeff(1), Some(&rat(1, 1)));
        let m = BigInt::from(3617);
        for p in (2..100u64).filter(|&p| is_prime_u64(p)) {
            let a = g.coeff(p as usize).unwrap().numer().clone();
            let rhs: BigInt = Pow::pow(BigInt::from(p), 15u32) + 1;
            assert_eq!((a - rhs).mod_floor(&m), BigInt::zero(), "p = {p}");
        }
    }

    #[test]
    fn sub_and_mul_basics() {
        let chi = quad_character(5).unwrap();
        let e = eisenstein_chi(&chi, 6, 11).unwrap();
        let z = series_sub(&e, &e).unwrap();
        assert!(z.coefficients().iter().all(|c| c.is_zero()));
        let d = delta_qexp(5).unwrap();
        let prod = series_mul(&d, &eisenstein_level1_unit(4, 8).unwrap()).unwrap();
        assert_eq!(prod.precision(), 5);
        assert_eq!(prod.coeff(1), Some(&rat(1, 1)));
    }

    #[test]
    fn domain_mismatch_detected() {
        let f1 = QuadField::new(-44).unwrap();
        let f2 = QuadField::new(-3).unwrap();
        let s = eisenstein_level1(4, 3).unwrap();
        let a = s.embed(f1);
        let b = s.embed(f2);
        assert_eq!(a.sub(&b), Err(QSeriesError::DomainMismatch));
        assert_eq!(a.mul(&b), Err(QSeriesError::DomainMismatch));
        let mixed = vec![f1.alpha(), f2.alpha()];
        assert_eq!(
            QSeries::new(mixed, SeriesMeta::default()),
            Err(QSeriesError::DomainMismatch)
        );
    }
}
