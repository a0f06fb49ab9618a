//! Line-oriented q-expansion fixtures.
//!
//! ```text
//! # comment
//! label <free text>
//! level <int>
//! weight <int>
//! character quadratic <int>
//! minpoly <c0> <c1> <c2>        # c0 + c1 x + c2 x^2, so x^2 + 44 is `minpoly 44 0 1`
//! coeff <n> <a> <b>             # a_n = a + b*alpha; a, b are `int` or `int/int`
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigmath::Rational;
use crate::numberfield::{NumberFieldError, QuadField, QuadFieldElem};
use crate::qseries::{QSeries, QSeriesError, SeriesMeta};

/// The bundled `f_chi` fixture.
pub const BUNDLED_FCHI: &str = include_str!("../../fixtures/fchi.qexp");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("malformed fixture:\n{}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n"))]
    Malformed(Vec<LineError>),
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("minpoly must be monic of degree 2 with zero linear term, got {0}")]
    BadMinpoly(String),
    #[error("fixture has no coefficient rows")]
    NoRows,
    #[error("coefficient indices must be contiguous from 0 or 1; {0}")]
    NotContiguous(String),
    #[error(transparent)]
    Field(#[from] NumberFieldError),
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureRow {
    pub n: usize,
    pub a: Rational,
    pub b: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    /// Modulus of the quadratic nebentypus.
    pub character: u64,
    /// `[c0, c1, c2]`, constant term first.
    pub minpoly: [BigInt; 3],
    pub rows: Vec<FixtureRow>,
}

impl Fixture {
    /// `D = alpha^2 = -c0` for `minpoly = x^2 + c0`.
    pub fn discriminant(&self) -> Result<i64, FixtureError> {
        let [c0, c1, c2] = &self.minpoly;
        if !c2.is_one() || !c1.is_zero() {
            return Err(FixtureError::BadMinpoly(self.minpoly_string()));
        }
        i64::try_from(-c0).map_err(|_| FixtureError::BadMinpoly(self.minpoly_string()))
    }

    pub fn field(&self) -> Result<QuadField, FixtureError> {
        Ok(QuadField::new(self.discriminant()?)?)
    }

    fn minpoly_string(&self) -> String {
        self.minpoly.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn meta(&self) -> SeriesMeta {
        SeriesMeta::new(self.weight, self.level, Some(self.character))
    }

    /// `sum a_n q^n` over `Q(alpha)`; a missing `n = 0` row means `a_0 = 0`.
    pub fn to_series(&self) -> Result<QSeries<QuadFieldElem>, FixtureError> {
        let field = self.field()?;
        let mut coeffs = Vec::with_capacity(self.rows.len() + 1);
        if self.rows.first().is_some_and(|r| r.n == 1) {
            coeffs.push(field.from_rational(Rational::zero()));
        }
        coeffs.extend(self.rows.iter().map(|r| field.elem(r.a.clone(), r.b.clone())));
        Ok(QSeries::new(coeffs, self.meta())?)
    }

    pub fn from_series(
        label: &str,
        series: &QSeries<QuadFieldElem>,
        character: u64,
    ) -> Result<Self, FixtureError> {
        let meta = series.meta();
        let (Some(weight), Some(level)) = (meta.weight, meta.level) else {
            return Err(FixtureError::MissingHeader("weight"));
        };
        let d = series.coefficients()[0].d();
        let rows = series
            .coefficients()
            .iter()
            .enumerate()
            .map(|(n, c)| FixtureRow {
                n,
                a: c.a().clone(),
                b: c.b().clone(),
            })
            .collect();
        Ok(Fixture {
            label: label.to_string(),
            level,
            weight,
            character,
            minpoly: [BigInt::from(-d), BigInt::zero(), BigInt::one()],
            rows,
        })
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let parse_int = |t: &str| t.parse::<BigInt>().map_err(|_| format!("`{s}` is not an integer or fraction"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(format!("`{s}` has zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

fn parse_int<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T, String> {
    tok.parse::<T>().map_err(|_| format!("`{tok}` is not a valid {what}"))
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut errors = Vec::new();
    let mut label = None;
    let mut level = None;
    let mut weight = None;
    let mut character = None;
    let mut minpoly = None;
    let mut rows: BTreeMap<usize, FixtureRow> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let mut fail = |reason: String| errors.push(LineError { line: line_no, reason });
        let duplicate = |set: bool| if set { Some(format!("duplicate `{key}` header")) } else { None };

        match key {
            "label" => {
                if let Some(e) = duplicate(label.is_some()) {
                    fail(e);
                } else if rest.is_empty() {
                    fail("empty label".into());
                } else {
                    label = Some(rest.to_string());
                }
            }
            "level" | "weight" => {
                let is_level = key == "level";
                let set = if is_level { level.is_some() } else { weight.is_some() };
                if let Some(e) = duplicate(set) {
                    fail(e);
                } else if toks.len() != 1 {
                    fail(format!("`{key}` takes one integer"));
                } else if is_level {
                    match parse_int::<u64>(toks[0], "level") {
                        Ok(0) => fail("level must be positive".into()),
                        Ok(v) => level = Some(v),
                        Err(e) => fail(e),
                    }
                } else {
                    match parse_int::<u32>(toks[0], "weight") {
                        Ok(v) => weight = Some(v),
                        Err(e) => fail(e),
                    }
                }
            }
            "character" => {
                if let Some(e) = duplicate(character.is_some()) {
                    fail(e);
                } else if toks.len() != 2 || toks[0] != "quadratic" {
                    fail("expected `character quadratic <modulus>`".into());
                } else {
                    match parse_int::<u64>(toks[1], "modulus") {
                        Ok(v) => character = Some(v),
                        Err(e) => fail(e),
                    }
                }
            }
            "minpoly" => {
                if let Some(e) = duplicate(minpoly.is_some()) {
                    fail(e);
                } else if toks.len() != 3 {
                    fail("`minpoly` takes exactly three integer coefficients (degree 2)".into());
                } else {
                    let parsed: Result<Vec<BigInt>, String> =
                        toks.iter().map(|t| parse_int::<BigInt>(t, "integer")).collect();
                    match parsed {
                        Ok(c) if !c[2].is_one() => fail("minimal polynomial must be monic".into()),
                        Ok(c) => minpoly = Some([c[0].clone(), c[1].clone(), c[2].clone()]),
                        Err(e) => fail(e),
                    }
                }
            }
            "coeff" => {
                if toks.len() != 3 {
                    fail("expected `coeff <n> <a> <b>`".into());
                    continue;
                }
                let n = match parse_int::<usize>(toks[0], "index") {
                    Ok(n) => n,
                    Err(e) => {
                        fail(e);
                        continue;
                    }
                };
                match (parse_rational(toks[1]), parse_rational(toks[2])) {
                    (Ok(a), Ok(b)) => {
                        if rows.contains_key(&n) {
                            fail(format!("duplicate coefficient index {n}"));
                        } else {
                            rows.insert(n, FixtureRow { n, a, b });
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => fail(e),
                }
            }
            other => fail(format!("unknown directive `{other}`")),
        }
    }
    if !errors.is_empty() {
        return Err(FixtureError::Malformed(errors));
    }

    let fixture = Fixture {
        label: label.ok_or(FixtureError::MissingHeader("label"))?,
        level: level.ok_or(FixtureError::MissingHeader("level"))?,
        weight: weight.ok_or(FixtureError::MissingHeader("weight"))?,
        character: character.ok_or(FixtureError::MissingHeader("character"))?,
        minpoly: minpoly.ok_or(FixtureError::MissingHeader("minpoly"))?,
        rows: rows.into_values().collect(),
    };
    let first = fixture.rows.first().ok_or(FixtureError::NoRows)?.n;
    if first > 1 {
        return Err(FixtureError::NotContiguous(format!("first index is {first}")));
    }
    for (i, row) in fixture.rows.iter().enumerate() {
        if row.n != first + i {
            return Err(FixtureError::NotContiguous(format!("index {} is missing", first + i)));
        }
    }
    fixture.field()?;
    Ok(fixture)
}

/// Canonical text form; `parse_fixture(&emit_fixture(f)) == f`.
pub fn emit_fixture(fixture: &Fixture) -> String {
    let mut out = String::new();
    out.push_str(&format!("label {}\n", fixture.label));
    out.push_str(&format!("level {}\n", fixture.level));
    out.push_str(&format!("weight {}\n", fixture.weight));
    out.push_str(&format!("character quadratic {}\n", fixture.character));
    let [c0, c1, c2] = &fixture.minpoly;
    out.push_str(&format!("minpoly {c0} {c1} {c2}\n"));
    for row in &fixture.rows {
        out.push_str(&format!("coeff {} {} {}\n", row.n, row.a, row.b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigmath::rat;

    #[test]
    fn bundled_fixture() {
        let f = parse_fixture(BUNDLED_FCHI).unwrap();
        assert_eq!(f.level, 5);
        assert_eq!(f.weight, 6);
        assert_eq!(f.character, 5);
        assert_eq!(f.discriminant().unwrap(), -44);
        let s = f.to_series().unwrap();
        assert_eq!(s.precision(), 11);
        assert!(s.coeff(0).unwrap().is_zero());
        assert_eq!(s.coeff(1).unwrap().a(), &rat(1, 1));
        let a2 = s.coeff(2).unwrap();
        assert_eq!((a2.a(), a2.b()), (&rat(0, 1), &rat(1, 1)));
        let a5 = s.coeff(5).unwrap();
        assert_eq!((a5.a(), a5.b()), (&rat(-45, 1), &rat(5, 1)));
        let a10 = s.coeff(10).unwrap();
        assert_eq!((a10.a(), a10.b()), (&rat(-220, 1), &rat(-45, 1)));
    }

    #[test]
    fn rational_only_fixture() {
        let text = "label r\nlevel 1\nweight 12\ncharacter quadratic 5\nminpoly 1 0 1\ncoeff 1 1 0\ncoeff 2 -24 0\ncoeff 3 1/2 0\n";
        let f = parse_fixture(text).unwrap();
        let s = f.to_series().unwrap();
        assert!(s.coefficients().iter().all(|c| c.is_rational()));
        assert_eq!(s.coeff(3).unwrap().a(), &rat(1, 2));
    }

    #[test]
    fn reports_every_bad_line() {
        let text = "label x\nlevel five\nweight 6\ncharacter cubic 5\nminpoly 44 0 1\ncoeff 1 1\ncoeff 2 1/0 0\nfoo bar\n";
        match parse_fixture(text) {
            Err(FixtureError::Malformed(errs)) => {
                let lines: Vec<usize> = errs.iter().map(|e| e.line).collect();
                assert_eq!(lines, vec![2, 4, 6, 7, 8]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_duplicates_and_bad_polynomials() {
        let base = "label x\nlevel 5\nweight 6\ncharacter quadratic 5\n";
        let dup = format!("{base}minpoly 44 0 1\ncoeff 1 1 0\ncoeff 1 2 0\n");
        assert!(matches!(parse_fixture(&dup), Err(FixtureError::Malformed(e)) if e[0].reason.contains("duplicate")));
        let cubic = format!("{base}minpoly 44 0 0 1\ncoeff 1 1 0\n");
        assert!(matches!(parse_fixture(&cubic), Err(FixtureError::Malformed(_))));
        let non_monic = format!("{base}minpoly 44 0 2\ncoeff 1 1 0\n");
        assert!(matches!(parse_fixture(&non_monic), Err(FixtureError::Malformed(_))));
        let linear = format!("{base}minpoly 44 1 1\ncoeff 1 1 0\n");
        assert!(matches!(parse_fixture(&linear), Err(FixtureError::BadMinpoly(_))));
        let square = format!("{base}minpoly -49 0 1\ncoeff 1 1 0\n");
        assert!(matches!(parse_fixture(&square), Err(FixtureError::Field(_))));
        let gap = format!("{base}minpoly 44 0 1\ncoeff 1 1 0\ncoeff 3 1 0\n");
        assert!(matches!(parse_fixture(&gap), Err(FixtureError::NotContiguous(_))));
        let late = format!("{base}minpoly 44 0 1\ncoeff 2 1 0\n");
        assert!(matches!(parse_fixture(&late), Err(FixtureError::NotContiguous(_))));
        assert_eq!(parse_fixture("level 5\n"), Err(FixtureError::MissingHeader("label")));
    }

    #[test]
    fn round_trips_bundled() {
        let f = parse_fixture(BUNDLED_FCHI).unwrap();
        assert_eq!(parse_fixture(&emit_fixture(&f)).unwrap(), f);
        let again = Fixture::from_series(&f.label, &f.to_series().unwrap(), 5).unwrap();
        assert_eq!(again.rows.len(), 11);
        assert_eq!(parse_fixture(&emit_fixture(&again)).unwrap(), again);
    }
}
