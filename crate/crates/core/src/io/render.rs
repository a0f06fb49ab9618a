use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::bigmath::{Factorization, Rational, RationalFactorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Text,
    Csv,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "structured" => Ok(Format::Structured),
            other => Err(format!("unknown format `{other}` (expected text, csv or structured)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    /// Field name in csv headers and structured output.
    pub key: String,
    /// Header in text output.
    pub label: String,
}

impl Column {
    pub fn new(key: &str, label: &str) -> Self {
        Column {
            key: key.to_string(),
            label: label.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Text(String),
    Int(BigInt),
    Rational(Rational),
    Bool(bool),
    /// `sign * prod p^e`, exponents negative for denominator primes;
    /// `None` stands for zero.
    Factors(Option<(bool, Vec<(BigUint, i64)>)>),
    List(Vec<Cell>),
}

impl Cell {
    pub fn int<T: Into<BigInt>>(v: T) -> Self {
        Cell::Int(v.into())
    }

    pub fn text<T: ToString>(v: T) -> Self {
        Cell::Text(v.to_string())
    }

    pub fn factors(f: &Factorization) -> Self {
        let pairs = f.factors().iter().map(|(p, e)| (p.clone(), i64::from(*e))).collect();
        Cell::Factors(Some((f.sign() < 0, pairs)))
    }

    /// Merges numerator and denominator into one ascending list, as in `5^-1·67`.
    pub fn rational_factors(f: Option<&RationalFactorization>) -> Self {
        let Some(f) = f else { return Cell::Factors(None) };
        let mut pairs: Vec<(BigUint, i64)> = f
            .numerator
            .factors()
            .iter()
            .map(|(p, e)| (p.clone(), i64::from(*e)))
            .chain(f.denominator.factors().iter().map(|(p, e)| (p.clone(), -i64::from(*e))))
            .collect();
        pairs.sort();
        Cell::Factors(Some((f.numerator.sign() < 0, pairs)))
    }

    fn flat(&self, sep: &str) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Rational(q) => q.to_string(),
            Cell::Bool(b) => (if *b { "yes" } else { "no" }).to_string(),
            Cell::Factors(None) => "0".to_string(),
            Cell::Factors(Some((negative, pairs))) => {
                let mut parts = Vec::new();
                if *negative {
                    parts.push("-1".to_string());
                }
                for (p, e) in pairs {
                    if *e == 1 {
                        parts.push(p.to_string());
                    } else {
                        parts.push(format!("{p}^{e}"));
                    }
                }
                if parts.is_empty() {
                    parts.push("1".to_string());
                }
                parts.join(sep)
            }
            Cell::List(items) => items.iter().map(|c| c.flat(sep)).collect::<Vec<_>>().join(" "),
        }
    }

    fn structured(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::String(n.to_string()),
            Cell::Rational(q) => Value::String(q.to_string()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Factors(None) => Value::Null,
            Cell::Factors(Some((negative, pairs))) => {
                let mut arr = Vec::new();
                if *negative {
                    arr.push(json!(["-1", 1]));
                }
                arr.extend(pairs.iter().map(|(p, e)| json!([p.to_string(), e])));
                Value::Array(arr)
            }
            Cell::List(items) => Value::Array(items.iter().map(Cell::structured).collect()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub meta: Vec<(String, Cell)>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(title: &str, columns: Vec<Column>) -> Self {
        Table {
            title: title.to_string(),
            columns,
            ..Table::default()
        }
    }

    pub fn meta(mut self, key: &str, value: Cell) -> Self {
        self.meta.push((key.to_string(), value));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn emit(table: &Table, format: Format) -> String {
    match format {
        Format::Text => emit_text(table),
        Format::Csv => emit_csv(table),
        Format::Structured => emit_structured(table),
    }
}

fn emit_text(table: &Table) -> String {
    let mut out = format!("# {}\n", table.title);
    for (k, v) in &table.meta {
        out.push_str(&format!("# {k}: {}\n", v.flat("·")));
    }
    let header: Vec<&str> = table.columns.iter().map(|c| c.label.as_str()).collect();
    out.push_str(&header.join(" | "));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|c| c.flat("·")).collect();
        out.push_str(&cells.join(" | "));
        out.push('\n');
    }
    for note in &table.notes {
        out.push_str(&format!("# {note}\n"));
    }
    out
}

fn emit_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, rec: Vec<String>| {
        w.write_record(rec).expect("writing to memory cannot fail")
    };
    write(&mut w, table.columns.iter().map(|c| c.key.clone()).collect());
    for row in &table.rows {
        write(&mut w, row.iter().map(|c| c.flat("*")).collect());
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

fn emit_structured(table: &Table) -> String {
    let mut meta = Map::new();
    for (k, v) in &table.meta {
        meta.insert(k.clone(), v.structured());
    }
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (col, cell) in table.columns.iter().zip(row) {
                obj.insert(col.key.clone(), cell.structured());
            }
            Value::Object(obj)
        })
        .collect();
    let doc = json!({
        "title": table.title,
        "meta": meta,
        "columns": table.columns.iter().map(|c| c.key.clone()).collect::<Vec<_>>(),
        "rows": rows,
        "notes": table.notes,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
    s.push('\n');
    s
}
