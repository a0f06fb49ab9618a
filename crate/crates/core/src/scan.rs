//! Numerator scans for candidate congruence primes.
//!
//! A candidate is a prime dividing the scanned numerator and strictly
//! exceeding the threshold: `2m + 1` for `Z_2m`, `max(p, 2m + 1)` for
//! `p * B_{2m,chi}`. Candidates are reported, not proven.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use thiserror::Error;

use crate::bernoulli::{zeta_ratio, BernoulliError};
use crate::bigmath::{factorize, BigMathError, Factorization};
use crate::dirichlet::{carlitz_integer, quad_character, DirichletError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error(transparent)]
    Bernoulli(#[from] BernoulliError),
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error(transparent)]
    BigMath(#[from] BigMathError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Zeta,
    Dirichlet { modulus: u64 },
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Zeta => f.write_str("zeta"),
            Source::Dirichlet { modulus } => write!(f, "dirichlet({modulus})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub source: Source,
    pub two_m: usize,
    /// The scanned integer: numerator of `Z_2m`, or `p * B_{2m,chi}`.
    pub value: BigInt,
    pub numerator: Factorization,
    pub threshold: u64,
    pub candidates: Vec<BigUint>,
}

fn build(source: Source, two_m: usize, value: BigInt, threshold: u64) -> Result<CandidateReport, ScanError> {
    let numerator = factorize(&value)?;
    let bound = BigUint::from(threshold);
    let candidates = numerator.primes().filter(|p| **p > bound).cloned().collect();
    Ok(CandidateReport {
        source,
        two_m,
        value,
        numerator,
        threshold,
        candidates,
    })
}

pub fn zeta_candidates(two_m: usize) -> Result<CandidateReport, ScanError> {
    let z = zeta_ratio(two_m as i64)?;
    build(Source::Zeta, two_m, z.numer().clone(), two_m as u64 + 1)
}

pub fn dirichlet_candidates(p: u64, two_m: usize) -> Result<CandidateReport, ScanError> {
    let chi = quad_character(p)?;
    let value = carlitz_integer(&chi, two_m)?;
    build(Source::Dirichlet { modulus: p }, two_m, value, p.max(two_m as u64 + 1))
}

fn even_indices(two_m_max: usize) -> Vec<usize> {
    (1..=two_m_max / 2).map(|m| 2 * m).collect()
}

/// One report per even index `2..=two_m_max`, in ascending order.
pub fn scan_range(p: u64, two_m_max: usize) -> Result<Vec<CandidateReport>, ScanError> {
    let chi = quad_character(p)?;
    if !chi.is_even() {
        return Err(DirichletError::NotOneModFour(p).into());
    }
    even_indices(two_m_max)
        .into_par_iter()
        .map(|two_m| dirichlet_candidates(p, two_m))
        .collect()
}

pub fn scan_zeta_range(two_m_max: usize) -> Result<Vec<CandidateReport>, ScanError> {
    even_indices(two_m_max)
        .into_par_iter()
        .map(zeta_candidates)
        .collect()
}
