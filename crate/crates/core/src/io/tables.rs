//! Table builders for every report the command line prints.

use num_traits::{Signed, Zero};

use super::render::{Cell, Column, Table};
use crate::bernoulli::{zeta_ratio, BernoulliError};
use crate::bigmath::{factorize_rational, Rational};
use crate::dirichlet::{
    gen_bernoulli_table_via_polynomials, gen_bernoulli_via_recursion, quad_character, DirichletError,
    GenBernoulliTable,
};
use crate::qseries::{QSeries, SeriesMeta};
use crate::scan::CandidateReport;
use crate::sturm::{CongruenceReport, Level1Case, Level1Report, NormRow, ReportMode, SturmBound};

/// `a + b*a`, where the trailing `a` names the field generator.
pub fn format_pair(a: &Rational, b: &Rational) -> String {
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.to_string(),
        (true, false) => format!("{b}*a"),
        (false, false) if b.is_negative() => format!("{a} - {}*a", -b),
        (false, false) => format!("{a} + {b}*a"),
    }
}

fn cols(spec: &[(&str, &str)]) -> Vec<Column> {
    spec.iter().map(|(k, l)| Column::new(k, l)).collect()
}

fn factor_cell(q: &Rational) -> Cell {
    Cell::rational_factors(factorize_rational(q).as_ref())
}

/// `Z_2m = N_2m / D_2m` with both parts factored.
pub fn zeta_table(max_two_m: usize) -> Result<Table, BernoulliError> {
    let mut t = Table::new(
        "zeta(2m)/pi^(2m) = N_2m/D_2m",
        cols(&[("two_m", "2m"), ("numerator", "N_2m"), ("denominator", "D_2m")]),
    );
    if max_two_m < 2 {
        return Err(BernoulliError::NotPositiveEven(max_two_m as i64));
    }
    for two_m in (2..=max_two_m).step_by(2) {
        let z = zeta_ratio(two_m as i64)?;
        t.push(vec![
            Cell::int(two_m as u64),
            factor_cell(&Rational::from_integer(z.numer().clone())),
            factor_cell(&Rational::from_integer(z.denom().clone())),
        ]);
    }
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenBernoulliMethod {
    Polynomial,
    Recursion,
    Both,
}

/// `p * B_{2m,chi}` table; with [`GenBernoulliMethod::Both`] a column records
/// whether the two methods agree. The flag is false on any disagreement.
pub fn genbern_table(p: u64, max_two_m: usize, method: GenBernoulliMethod) -> Result<(Table, bool), DirichletError> {
    let chi = quad_character(p)?;
    let mut columns = cols(&[("two_m", "2m"), ("value", "p*B_2m,chi"), ("factorization", "prime factorization")]);
    let (primary, other): (GenBernoulliTable, Option<GenBernoulliTable>) = match method {
        GenBernoulliMethod::Polynomial => (gen_bernoulli_table_via_polynomials(&chi, max_two_m)?, None),
        GenBernoulliMethod::Recursion => (gen_bernoulli_via_recursion(&chi, max_two_m)?, None),
        GenBernoulliMethod::Both => {
            columns.push(Column::new("methods_agree", "methods agree"));
            (
                gen_bernoulli_table_via_polynomials(&chi, max_two_m)?,
                Some(gen_bernoulli_via_recursion(&chi, max_two_m)?),
            )
        }
    };
    let label = match method {
        GenBernoulliMethod::Polynomial => "polynomial",
        GenBernoulliMethod::Recursion => "recursion",
        GenBernoulliMethod::Both => "both",
    };
    let mut t = Table::new("p * B_2m,chi", columns)
        .meta("p", Cell::int(p))
        .meta("method", Cell::text(label));
    let mut all_agree = true;
    for (two_m, value) in primary.scaled_by_modulus() {
        let mut row = vec![Cell::Rational(value.clone()), factor_cell(&value)];
        row.insert(0, Cell::int(two_m as u64));
        if let Some(other) = &other {
            let agree = other.get(two_m) == primary.get(two_m);
            all_agree &= agree;
            row.push(Cell::Bool(agree));
        }
        t.push(row);
    }
    Ok((t, all_agree))
}

pub fn scan_table(reports: &[CandidateReport]) -> Table {
    let mut t = Table::new(
        "congruence prime candidates",
        cols(&[
            ("source", "source"),
            ("two_m", "2m"),
            ("value", "value"),
            ("factorization", "factorization"),
            ("threshold", "threshold"),
            ("candidates", "candidates"),
        ]),
    );
    for r in reports {
        t.push(vec![
            Cell::text(r.source),
            Cell::int(r.two_m as u64),
            Cell::Int(r.value.clone()),
            Cell::factors(&r.numerator),
            Cell::int(r.threshold),
            Cell::List(r.candidates.iter().map(|p| Cell::int(p.clone())).collect()),
        ]);
    }
    t
}

fn with_series_meta(mut t: Table, meta: &SeriesMeta) -> Table {
    if let Some(k) = meta.weight {
        t = t.meta("weight", Cell::int(k));
    }
    if let Some(n) = meta.level {
        t = t.meta("level", Cell::int(n));
    }
    if let Some(p) = meta.character {
        t = t.meta("character", Cell::text(format!("quadratic mod {p}")));
    }
    t
}

pub fn series_table(title: &str, series: &QSeries<Rational>) -> Table {
    let mut t = with_series_meta(Table::new(title, cols(&[("n", "n"), ("a_n", "a_n")])), series.meta());
    for (n, c) in series.coefficients().iter().enumerate() {
        t.push(vec![Cell::int(n as u64), Cell::Rational(c.clone())]);
    }
    t
}

pub fn sturm_table(b: &SturmBound) -> Table {
    let mut t = Table::new(
        "Sturm bound",
        cols(&[
            ("weight", "k"),
            ("level", "N"),
            ("index", "index"),
            ("bound", "k*index/12"),
            ("cutoff", "cutoff"),
        ]),
    );
    t.push(vec![
        Cell::int(b.weight),
        Cell::int(b.level),
        Cell::int(b.index),
        Cell::Rational(b.bound.clone()),
        Cell::int(b.cutoff as u64),
    ]);
    t
}

const FLAG_NOTE: &str = "* n = 0: rational difference, the norm is its square";

pub fn norms_table(rows: &[NormRow], meta: &SeriesMeta) -> Table {
    let mut t = with_series_meta(
        Table::new(
            "norms of a_n(f) - a_n(g)",
            cols(&[
                ("n", "n"),
                ("difference", "difference"),
                ("norm", "norm"),
                ("factorization", "factorization"),
            ]),
        ),
        meta,
    );
    for r in rows {
        let n = if r.flagged { Cell::text(format!("{}*", r.n)) } else { Cell::int(r.n as u64) };
        t.push(vec![
            n,
            Cell::text(format_pair(&r.difference.0, &r.difference.1)),
            Cell::Rational(r.norm.clone()),
            Cell::rational_factors(r.factorization.as_ref()),
        ]);
    }
    if rows.iter().any(|r| r.flagged) {
        t.notes.push(FLAG_NOTE.to_string());
    }
    t
}

fn verdict(pass: bool) -> Cell {
    Cell::text(if pass { "pass" } else { "FAIL" })
}

pub fn congruence_table(report: &CongruenceReport) -> Table {
    let (mode, root) = match report.mode {
        ReportMode::Norm => ("norm", None),
        ReportMode::Embed { root } => ("embed", root),
    };
    let mut t = Table::new(
        "congruence check",
        cols(&[
            ("n", "n"),
            ("difference", "difference"),
            ("norm", "norm"),
            ("factorization", "factorization"),
            ("residue", "residue"),
            ("pass", "pass"),
        ]),
    )
    .meta("ell", Cell::int(report.ell))
    .meta("mode", Cell::text(mode));
    if let Some(r) = root {
        t = t.meta("root", Cell::int(r));
    }
    t = t
        .meta("sturm_cutoff", Cell::int(report.sturm.cutoff as u64))
        .meta("checked_through", Cell::int(report.checked_through() as u64))
        .meta("result", verdict(report.pass));
    if let Some(f) = report.first_failure() {
        t = t.meta("first_failure", Cell::int(f.n as u64));
    }
    for r in &report.rows {
        let n = if r.flagged { Cell::text(format!("{}*", r.n)) } else { Cell::int(r.n as u64) };
        t.push(vec![
            n,
            Cell::text(format_pair(&r.difference.0, &r.difference.1)),
            Cell::Rational(r.norm.clone()),
            if r.norm.is_zero() || r.norm_factorization.is_some() {
                Cell::rational_factors(r.norm_factorization.as_ref())
            } else {
                Cell::text("")
            },
            r.residue.map_or(Cell::text(""), Cell::int),
            Cell::Bool(r.pass),
        ]);
    }
    t.notes.extend(report.notes.iter().cloned());
    t
}

pub fn level1_table(report: &Level1Report) -> Table {
    let title = match report.case {
        Level1Case::Delta691 => "Delta = E_12 (mod 691)",
        Level1Case::Weight16Mod3617 => "Delta*E_4 = E_16 (mod 3617)",
    };
    let c = &report.congruence;
    let mut t = Table::new(
        title,
        cols(&[("p", "p"), ("a_p", "a_p"), ("residue", "a_p - p^(k-1) - 1 mod ell"), ("pass", "pass")]),
    )
    .meta("ell", Cell::int(report.case.ell()))
    .meta("weight", Cell::int(report.case.weight()))
    .meta("sturm_cutoff", Cell::int(c.sturm.cutoff as u64))
    .meta("coefficients_checked_through", Cell::int(c.checked_through() as u64))
    .meta("coefficients", verdict(c.pass));
    if let Some(f) = c.first_failure() {
        t = t.meta("first_failure", Cell::int(f.n as u64));
    }
    t = t.meta("result", verdict(report.pass));
    for pc in &report.primes {
        t.push(vec![
            Cell::int(pc.p),
            Cell::Int(pc.a_p.clone()),
            Cell::int(pc.residue),
            Cell::Bool(pc.pass),
        ]);
    }
    t.notes.extend(c.notes.iter().cloned());
    t
}
