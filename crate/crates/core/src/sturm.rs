//! Sturm-bound congruence checks between two q-expansions.
//!
//! Two modes:
//! * **norm**: `l` must divide `N(a_n(f) - a_n(g))` for every checked `n`.
//!   Cheap, but each row may be divisible by a different prime above `l`.
//! * **embed**: one root `r` of `x^2 - D` mod `l` is fixed for all rows and
//!   every difference must map to zero under `alpha -> r`. This pins a single
//!   prime ideal above `l`, which is what the Sturm criterion needs.
//!
//! Rows `0..=floor(k [SL2(Z) : Gamma0(N)] / 12)` are always checked; by
//! default every coefficient both series share is checked.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use thiserror::Error;

use crate::bigmath::{
    factorize_rational, is_prime_u64, mod_u64, rational_mod_u64, Rational, RationalFactorization,
};
use crate::numberfield::{reduce, sqrt_mod, valuation, NumberFieldError, QuadFieldElem, ResidueEmbedding};
use crate::qseries::{
    delta_qexp, eisenstein_level1, eisenstein_level1_unit, Coefficient, QSeries, QSeriesError, SeriesMeta,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SturmError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("series do not share weight, level and character: {0:?} vs {1:?}")]
    MetaMismatch(SeriesMeta, SeriesMeta),
    #[error("series lack weight/level metadata")]
    MissingMeta,
    #[error("need coefficients through q^{needed}, have only {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("coefficient difference at n = {n} is not {ell}-integral: {value}")]
    NotIntegral { n: usize, ell: u64, value: String },
    #[error(transparent)]
    NumberField(#[from] NumberFieldError),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
}

/// `[SL2(Z) : Gamma0(N)] = N prod_{q | N} (1 + 1/q)`.
pub fn gamma0_index(level: u64) -> u64 {
    let mut index = level;
    let mut rest = level;
    let mut q = 2;
    while q * q <= rest {
        if rest % q == 0 {
            index = index / q * (q + 1);
            while rest % q == 0 {
                rest /= q;
            }
        }
        q += 1;
    }
    if rest > 1 {
        index = index / rest * (rest + 1);
    }
    index
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmBound {
    pub weight: u32,
    pub level: u64,
    pub index: u64,
    /// `k * index / 12`.
    pub bound: Rational,
    /// `floor(bound)`; coefficients `0..=cutoff` are checked.
    pub cutoff: usize,
}

pub fn sturm_bound(weight: u32, level: u64) -> SturmBound {
    let index = gamma0_index(level);
    let bound = Rational::new(BigInt::from(weight) * BigInt::from(index), BigInt::from(12));
    let cutoff = usize::try_from(bound.floor().to_integer()).expect("bound fits in usize");
    SturmBound {
        weight,
        level,
        index,
        bound,
        cutoff,
    }
}

/// Coefficients that can be compared modulo a prime above `l`.
pub trait CongruenceCoefficient: Coefficient {
    /// Norm to `Q`; `x^2` for rational `x`.
    fn field_norm(&self) -> Rational;
    /// `(a, b)` with the element equal to `a + b alpha` (`b = 0` over `Q`).
    fn components(&self) -> (Rational, Rational);
    fn integral_at(&self, ell: u64) -> bool;
    /// Roots of the defining polynomial mod `l`; `[None]` when the field is `Q`.
    fn residue_roots(&self, ell: u64) -> Result<Vec<Option<u64>>, NumberFieldError>;
    fn residue(&self, ell: u64, root: Option<u64>) -> Result<u64, NumberFieldError>;
}

impl CongruenceCoefficient for Rational {
    fn field_norm(&self) -> Rational {
        self * self
    }
    fn components(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }
    fn integral_at(&self, ell: u64) -> bool {
        !(self.denom() % BigInt::from(ell)).is_zero()
    }
    fn residue_roots(&self, _ell: u64) -> Result<Vec<Option<u64>>, NumberFieldError> {
        Ok(vec![None])
    }
    fn residue(&self, ell: u64, _root: Option<u64>) -> Result<u64, NumberFieldError> {
        rational_mod_u64(self, ell).ok_or_else(|| NumberFieldError::NotIntegral {
            value: self.to_string(),
            ell,
        })
    }
}

impl CongruenceCoefficient for QuadFieldElem {
    fn field_norm(&self) -> Rational {
        self.norm()
    }
    fn components(&self) -> (Rational, Rational) {
        (self.a().clone(), self.b().clone())
    }
    fn integral_at(&self, ell: u64) -> bool {
        self.is_integral_at(ell)
    }
    fn residue_roots(&self, ell: u64) -> Result<Vec<Option<u64>>, NumberFieldError> {
        match sqrt_mod(self.d(), ell)? {
            Some(roots) => Ok(roots.iter().map(|&r| Some(r)).collect()),
            None => Err(NumberFieldError::Inert { d: self.d(), ell }),
        }
    }
    fn residue(&self, ell: u64, root: Option<u64>) -> Result<u64, NumberFieldError> {
        let root = root.expect("quadratic field needs a root");
        reduce(self, &ResidueEmbedding::new(self.d(), ell, root)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Norm,
    Embed,
}

/// Mode actually used in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportMode {
    Norm,
    /// `root` is `None` when the coefficients are rational.
    Embed { root: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Last index to check; defaults to every shared coefficient.
    pub check_through: Option<usize>,
    /// Factor the norms in norm mode (skip for very large norms).
    pub factor_norms: bool,
}

impl VerifyOptions {
    pub fn new(mode: Mode) -> Self {
        VerifyOptions {
            mode,
            check_through: None,
            factor_norms: true,
        }
    }
}

pub const CONSTANT_TERM_NOTE: &str =
    "n = 0: the difference is rational, so its norm is its square; the element itself is also reported";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceRow {
    pub n: usize,
    /// `(a, b)` of the difference `a_n(f) - a_n(g) = a + b alpha`.
    pub difference: (Rational, Rational),
    pub norm: Rational,
    pub norm_factorization: Option<RationalFactorization>,
    pub residue: Option<u64>,
    pub pass: bool,
    /// Rational nonzero constant-term difference: norm is the square of the value.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub ell: u64,
    pub mode: ReportMode,
    pub sturm: SturmBound,
    pub rows: Vec<CongruenceRow>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl CongruenceReport {
    pub fn checked_through(&self) -> usize {
        self.rows.last().map_or(0, |r| r.n)
    }

    pub fn first_failure(&self) -> Option<&CongruenceRow> {
        self.rows.iter().find(|r| !r.pass)
    }
}

fn shared_bound<C: CongruenceCoefficient>(f: &QSeries<C>, g: &QSeries<C>) -> Result<SturmBound, SturmError> {
    if f.meta() != g.meta() {
        return Err(SturmError::MetaMismatch(*f.meta(), *g.meta()));
    }
    match (f.meta().weight, f.meta().level) {
        (Some(k), Some(n)) => Ok(sturm_bound(k, n)),
        _ => Err(SturmError::MissingMeta),
    }
}

fn difference_row<C: CongruenceCoefficient>(n: usize, diff: &C, factor: bool) -> CongruenceRow {
    let (a, b) = diff.components();
    let norm = diff.field_norm();
    let flagged = n == 0 && b.is_zero() && !a.is_zero();
    CongruenceRow {
        n,
        norm_factorization: if factor { factorize_rational(&norm) } else { None },
        difference: (a, b),
        norm,
        residue: None,
        pass: false,
        flagged,
    }
}

pub fn verify_congruence<C: CongruenceCoefficient>(
    f: &QSeries<C>,
    g: &QSeries<C>,
    ell: u64,
    mode: Mode,
) -> Result<CongruenceReport, SturmError> {
    verify_congruence_with(f, g, ell, &VerifyOptions::new(mode))
}

pub fn verify_congruence_with<C: CongruenceCoefficient>(
    f: &QSeries<C>,
    g: &QSeries<C>,
    ell: u64,
    opts: &VerifyOptions,
) -> Result<CongruenceReport, SturmError> {
    if !is_prime_u64(ell) {
        return Err(SturmError::NotPrime(ell));
    }
    let sturm = shared_bound(f, g)?;
    let have = f.precision().min(g.precision());
    let last = opts.check_through.unwrap_or(have.saturating_sub(1)).max(sturm.cutoff);
    if last >= have {
        return Err(SturmError::InsufficientPrecision { needed: last, have });
    }
    let diff = f.truncate(last + 1).sub(&g.truncate(last + 1))?;
    for (n, d) in diff.coefficients().iter().enumerate() {
        if !d.integral_at(ell) {
            return Err(SturmError::NotIntegral {
                n,
                ell,
                value: d.to_string(),
            });
        }
    }

    let mut notes = Vec::new();
    let mut mode = opts.mode;
    let roots = match mode {
        Mode::Embed => match diff.coefficients()[0].residue_roots(ell) {
            Ok(roots) => roots,
            Err(e @ (NumberFieldError::Inert { .. } | NumberFieldError::Ramified { .. })) => {
                notes.push(format!(
                    "embed mode unavailable ({e}); fell back to norm mode, where per-row norm checks do not pin one prime ideal"
                ));
                mode = Mode::Norm;
                Vec::new()
            }
            Err(e) => return Err(e.into()),
        },
        Mode::Norm => Vec::new(),
    };

    let factor = opts.factor_norms;
    let mut rows: Vec<CongruenceRow> = diff
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, d)| difference_row(n, d, factor))
        .collect();

    let report_mode = match mode {
        Mode::Norm => {
            for (row, d) in rows.iter_mut().zip(diff.coefficients()) {
                row.pass = ell_divides_norm(d, ell);
            }
            ReportMode::Norm
        }
        Mode::Embed => {
            let mut per_root = Vec::with_capacity(roots.len());
            for root in &roots {
                let residues = diff
                    .coefficients()
                    .iter()
                    .map(|d| d.residue(ell, *root))
                    .collect::<Result<Vec<u64>, _>>()?;
                per_root.push((*root, residues));
            }
            let chosen = per_root
                .iter()
                .position(|(_, res)| res.iter().all(|&r| r == 0))
                .unwrap_or(0);
            let (root, residues) = &per_root[chosen];
            for (row, &r) in rows.iter_mut().zip(residues) {
                row.residue = Some(r);
                row.pass = r == 0;
            }
            ReportMode::Embed { root: *root }
        }
    };

    if rows.iter().any(|r| r.flagged) {
        notes.push(CONSTANT_TERM_NOTE.to_string());
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(CongruenceReport {
        ell,
        mode: report_mode,
        sturm,
        rows,
        pass,
        notes,
    })
}

fn ell_divides_norm<C: CongruenceCoefficient>(x: &C, ell: u64) -> bool {
    let n = x.field_norm();
    n.is_zero() || valuation(&n, ell) > 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormRow {
    pub n: usize,
    pub difference: (Rational, Rational),
    pub norm: Rational,
    /// `None` when the norm is zero.
    pub factorization: Option<RationalFactorization>,
    pub flagged: bool,
}

/// Factored norms of `a_n(f) - a_n(g)` for `n < terms`.
pub fn norm_difference_table<C: CongruenceCoefficient>(
    f: &QSeries<C>,
    g: &QSeries<C>,
    terms: usize,
) -> Result<Vec<NormRow>, SturmError> {
    let have = f.precision().min(g.precision());
    if terms > have {
        return Err(SturmError::InsufficientPrecision {
            needed: terms.saturating_sub(1),
            have,
        });
    }
    let diff = f.truncate(terms).sub(&g.truncate(terms))?;
    Ok(diff
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, d)| {
            let row = difference_row(n, d, true);
            NormRow {
                n,
                difference: row.difference,
                norm: row.norm,
                factorization: row.norm_factorization,
                flagged: row.flagged,
            }
        })
        .collect())
}

/// Which level-1 congruence to reproduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level1Case {
    /// `Delta = E_12 (mod 691)`.
    Delta691,
    /// `Delta * E_4 = E_16 (mod 3617)`.
    Weight16Mod3617,
}

impl Level1Case {
    pub fn ell(&self) -> u64 {
        match self {
            Level1Case::Delta691 => 691,
            Level1Case::Weight16Mod3617 => 3617,
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            Level1Case::Delta691 => 12,
            Level1Case::Weight16Mod3617 => 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeCheck {
    pub p: u64,
    pub a_p: BigInt,
    /// `a_p - (p^(k-1) + 1) mod l`.
    pub residue: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level1Report {
    pub case: Level1Case,
    pub congruence: CongruenceReport,
    pub primes: Vec<PrimeCheck>,
    pub pass: bool,
}

/// Cusp form vs. Eisenstein series at level 1, coefficientwise for
/// `n <= terms` and through `a_p = p^(k-1) + 1` for primes `p < terms`.
pub fn verify_level1(case: Level1Case, terms: usize) -> Result<Level1Report, SturmError> {
    let k = case.weight();
    let ell = case.ell();
    let precision = terms + 1;
    let cusp = match case {
        Level1Case::Delta691 => delta_qexp(precision.max(2))?,
        Level1Case::Weight16Mod3617 => {
            delta_qexp(precision.max(2))?.mul(&eisenstein_level1_unit(4, precision.max(2))?)?
        }
    };
    let eis = eisenstein_level1(k, cusp.precision())?;
    let opts = VerifyOptions {
        mode: Mode::Embed,
        check_through: Some(terms.max(sturm_bound(k, 1).cutoff)),
        factor_norms: false,
    };
    let congruence = verify_congruence_with(&cusp, &eis, ell, &opts)?;

    let primes: Vec<PrimeCheck> = (2..terms as u64)
        .filter(|&p| is_prime_u64(p))
        .map(|p| {
            let a_p = cusp.coeff(p as usize).expect("precision covers p").numer().clone();
            let target: BigInt = Pow::pow(BigInt::from(p), k - 1) + 1;
            let r = mod_u64(&(&a_p - target), ell);
            PrimeCheck {
                p,
                a_p,
                residue: r,
                pass: r == 0,
            }
        })
        .collect();
    let pass = congruence.pass && primes.iter().all(|c| c.pass);
    Ok(Level1Report {
        case,
        congruence,
        primes,
        pass,
    })
}
