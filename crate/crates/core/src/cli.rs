//! The `rcong` command line.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dirichlet::quad_character;
use crate::io::tables::{
    congruence_table, genbern_table, level1_table, norms_table, scan_table, series_table, sturm_table,
    zeta_table,
};
use crate::io::{emit, parse_fixture, Fixture, GenBernoulliMethod, Table};
use crate::numberfield::QuadFieldElem;
use crate::qseries::{delta_qexp, eisenstein_chi, eisenstein_level1, QSeries};
use crate::scan::{scan_range, scan_zeta_range};
use crate::sturm::{
    norm_difference_table, sturm_bound, verify_congruence_with, verify_level1, Level1Case, Mode, VerifyOptions,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rcong", version, about = "Congruence primes from special L-values, with Sturm-bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Text,
    Csv,
    Structured,
}

impl From<OutputFormat> for crate::io::Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => crate::io::Format::Text,
            OutputFormat::Csv => crate::io::Format::Csv,
            OutputFormat::Structured => crate::io::Format::Structured,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Poly,
    Recursion,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Norm,
    Embed,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum WhichArg {
    #[value(name = "691")]
    Delta691,
    #[value(name = "3617")]
    Weight16,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factored numerators and denominators of zeta(2m)/pi^(2m).
    ZetaTable {
        #[arg(long, default_value_t = 20)]
        max: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// p * B_{2m,chi} for the quadratic character mod p.
    Genbern {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 20)]
        max: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Large primes in numerators of zeta or L-values.
    #[command(group = clap::ArgGroup::new("source").required(true).args(["p", "zeta"]))]
    Scan {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        zeta: bool,
        #[arg(long)]
        max: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// q-expansion of E_{k,chi} for the quadratic character mod p.
    Eisenstein {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 11)]
        terms: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// q-expansion of the level-one Eisenstein series E_k.
    Eisenstein1 {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 11)]
        terms: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// q-expansion of the discriminant form.
    Delta {
        #[arg(long, default_value_t = 11)]
        terms: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Sturm bound for weight k and level N.
    Sturm {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        level: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Factored norms of a_n(f) - a_n(E_{k,chi}) for a fixture f.
    Norms {
        #[arg(long)]
        fixture: PathBuf,
        /// Defaults to the fixture's character modulus.
        #[arg(long)]
        p: Option<u64>,
        /// Defaults to the fixture's weight.
        #[arg(long)]
        k: Option<u32>,
        /// Defaults to every coefficient in the fixture.
        #[arg(long)]
        terms: Option<usize>,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Check f = E_{k,chi} (mod ell) through the Sturm bound.
    Verify {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        ell: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Embed)]
        mode: ModeArg,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Reproduce the level-one congruences mod 691 and mod 3617.
    VerifyLevel1 {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long, default_value_t = 100)]
        terms: usize,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

type CliResult = Result<(Table, bool, OutputFormat), Box<dyn std::error::Error>>;

fn load_fixture(path: &PathBuf) -> Result<Fixture, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(parse_fixture(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn fixture_pair(
    fixture: &Fixture,
    p: Option<u64>,
    k: Option<u32>,
) -> Result<(QSeries<QuadFieldElem>, QSeries<QuadFieldElem>), Box<dyn std::error::Error>> {
    let f = fixture.to_series()?;
    let chi = quad_character(p.unwrap_or(fixture.character))?;
    let g = eisenstein_chi(&chi, k.unwrap_or(fixture.weight), f.precision())?.embed(fixture.field()?);
    Ok((f, g))
}

fn dispatch(command: Command) -> CliResult {
    Ok(match command {
        Command::ZetaTable { max, fmt } => (zeta_table(max)?, true, fmt.format),
        Command::Genbern { p, max, method, fmt } => {
            let method = match method {
                MethodArg::Poly => GenBernoulliMethod::Polynomial,
                MethodArg::Recursion => GenBernoulliMethod::Recursion,
                MethodArg::Both => GenBernoulliMethod::Both,
            };
            let (t, agree) = genbern_table(p, max, method)?;
            (t, agree, fmt.format)
        }
        Command::Scan { p, zeta, max, fmt } => {
            let reports = if zeta { scan_zeta_range(max)? } else { scan_range(p.expect("clap group"), max)? };
            (scan_table(&reports), true, fmt.format)
        }
        Command::Eisenstein { p, k, terms, fmt } => {
            let s = eisenstein_chi(&quad_character(p)?, k, terms)?;
            (series_table(&format!("E_{k},chi mod {p}"), &s), true, fmt.format)
        }
        Command::Eisenstein1 { k, terms, fmt } => {
            (series_table(&format!("E_{k}"), &eisenstein_level1(k, terms)?), true, fmt.format)
        }
        Command::Delta { terms, fmt } => (series_table("Delta", &delta_qexp(terms)?), true, fmt.format),
        Command::Sturm { k, level, fmt } => {
            if level == 0 {
                return Err("level must be positive".into());
            }
            (sturm_table(&sturm_bound(k, level)), true, fmt.format)
        }
        Command::Norms { fixture, p, k, terms, fmt } => {
            let fx = load_fixture(&fixture)?;
            let (f, g) = fixture_pair(&fx, p, k)?;
            let rows = norm_difference_table(&f, &g, terms.unwrap_or(f.precision()))?;
            let mut t = norms_table(&rows, f.meta());
            t.meta.insert(0, ("label".into(), crate::io::Cell::text(&fx.label)));
            (t, true, fmt.format)
        }
        Command::Verify { fixture, p, k, ell, mode, fmt } => {
            let fx = load_fixture(&fixture)?;
            let (f, g) = fixture_pair(&fx, p, k)?;
            let mode = match mode {
                ModeArg::Norm => Mode::Norm,
                ModeArg::Embed => Mode::Embed,
            };
            let report = verify_congruence_with(&f, &g, ell, &VerifyOptions::new(mode))?;
            let mut t = congruence_table(&report);
            t.meta.insert(0, ("label".into(), crate::io::Cell::text(&fx.label)));
            (t, report.pass, fmt.format)
        }
        Command::VerifyLevel1 { which, terms, fmt } => {
            let case = match which {
                WhichArg::Delta691 => Level1Case::Delta691,
                WhichArg::Weight16 => Level1Case::Weight16Mod3617,
            };
            let report = verify_level1(case, terms)?;
            (level1_table(&report), report.pass, fmt.format)
        }
    })
}

/// Parse `args` (program name first), run the subcommand, write data to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((table, pass, format)) => {
            if out.write_all(emit(&table, format.into()).as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if pass {
                EXIT_PASS
            } else {
                let _ = writeln!(err, "verification FAILED");
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
