//! Command-line front end: eval, invert, zero, coeffs and figure.

use crate::coeffs::dump::{dump, Family};
use crate::error::Error;
use crate::expansions::{
    hybrid_q, outer_q_series, q_transition, q_transition_auto, q_uniform, q_uniform_auto, EvalReport, Regime,
};
use crate::figure::{figure_data, preset, DEFAULT_NMAX};
use crate::golden::check_tables;
use crate::inversion::{negative_zero, negative_zero_auto, quantile, quantile_auto};
use crate::oracle::{bf, oracle_gammastar, oracle_q, BigFloat};
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

const ORACLE_DIGITS: usize = 25;

#[derive(Parser, Debug)]
#[command(
    name = "incgamma",
    version,
    about = "Incomplete gamma function Q(a,x) near the transition point x = a"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Auto,
    Transition,
    Uniform,
    Outer,
    Reference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Tables,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate Q(a,x)
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, value_enum, default_value = "auto")]
        regime: RegimeArg,
        /// Number of terms; by default the series stops at its least term
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Solve Q(a,x) = q for x
    Invert {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long)]
        terms: Option<usize>,
        /// Report |Q(a,x) − q| from the extended-precision reference
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Negative zero x₋(a) of γ*(a,x) for a < 0
    Zero {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        terms: Option<usize>,
        /// Evaluate γ*(a,x₋) with the extended-precision reference
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Dump exact coefficients
    Coeffs {
        #[arg(long)]
        family: String,
        #[arg(long)]
        max: usize,
        /// Compare C_n and d_n with the published tables
        #[arg(long, value_enum)]
        check: Option<CheckArg>,
    },
    /// Term and remainder data at small a
    Figure {
        #[arg(long)]
        id: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        tau: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

/// One output cell. Floats print at 17 significant digits; oracle values are
/// carried as text at 25.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) if v.is_finite() => serde_json::json!(v),
            Cell::Num(v) => serde_json::json!(fmt_num(*v)),
            Cell::Int(v) => serde_json::json!(v),
            Cell::Text(s) => serde_json::json!(s),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub type Row = Vec<(&'static str, Cell)>;

pub fn write_rows(out: &mut dyn Write, rows: &[Row], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = rows.first() {
                w.write_record(first.iter().map(|(k, _)| *k))?;
            }
            for r in rows {
                w.write_record(r.iter().map(|(_, c)| c.csv()))?;
            }
            w.flush()
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| serde_json::Value::Object(r.iter().map(|(k, c)| (k.to_string(), c.json())).collect()))
                .collect();
            serde_json::to_writer(&mut *out, &arr)?;
            writeln!(out)
        }
    }
}

fn oracle_text(v: &BigFloat) -> Cell {
    Cell::Text(v.to_sci_string(ORACLE_DIGITS))
}

fn report_row(a: f64, x: f64, r: &EvalReport) -> Row {
    vec![
        ("a", Cell::Num(a)),
        ("x", Cell::Num(x)),
        ("q", Cell::Num(r.value)),
        ("regime", Cell::Text(r.regime.name().into())),
        ("terms_used", Cell::Int(r.terms_used as i64)),
        ("error_estimate", Cell::Num(r.error_estimate)),
    ]
}

enum Failure {
    Input(String),
    Verify(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn eval(a: f64, x: f64, regime: RegimeArg, terms: Option<usize>) -> Result<EvalReport, Failure> {
    if !(a > 0.0) || !a.is_finite() || !(x >= 0.0) || !x.is_finite() {
        return Err(Failure::Input(format!(
            "need finite a > 0 and x ≥ 0, got a = {a}, x = {x}"
        )));
    }
    let tau = (x - a) / a.sqrt();
    let mut r = match regime {
        RegimeArg::Auto => hybrid_q(a, x)?,
        _ if x == 0.0 => EvalReport {
            regime: Regime::Reference,
            ..hybrid_q(a, x)?
        },
        RegimeArg::Transition => match terms {
            Some(n) => q_transition(a, tau, n)?,
            None => q_transition_auto(a, tau, 100)?,
        },
        RegimeArg::Uniform => match terms {
            Some(n) => q_uniform(a, x / a, n)?,
            None => q_uniform_auto(a, x / a, 40)?,
        },
        RegimeArg::Outer => outer_q_series(a, x, terms)?,
        RegimeArg::Reference => {
            let q = oracle_q(&bf(a), &bf(x))?.to_f64();
            EvalReport {
                value: q,
                terms_used: 0,
                first_neglected: 0.0,
                regime: Regime::Reference,
                error_estimate: 0.0,
                out_of_range: false,
                log_scaled: None,
            }
        }
    };
    if regime != RegimeArg::Auto {
        r.value = r.value.clamp(0.0, 1.0);
    }
    Ok(r)
}

fn run_cmd(cmd: Cmd, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Cmd::Eval {
            a,
            x,
            regime,
            terms,
            format,
        } => {
            let r = eval(a, x, regime, terms)?;
            write_rows(out, &[report_row(a, x, &r)], format)?;
        }
        Cmd::Invert {
            a,
            q,
            terms,
            verify,
            format,
        } => {
            let r = match terms {
                Some(n) => quantile(a, q, n)?,
                None => quantile_auto(a, q)?,
            };
            let mut row: Row = vec![
                ("a", Cell::Num(a)),
                ("q", Cell::Num(q)),
                ("x", Cell::Num(r.x)),
                ("tau0", Cell::Num(r.tau0)),
                ("terms_used", Cell::Int(r.terms_used as i64)),
                ("error_estimate", Cell::Num(r.q_error_estimate)),
            ];
            if verify {
                let oq = oracle_q(&bf(a), &bf(r.x))?;
                let res = oq.sub(&bf(q)).abs().to_f64();
                row.push(("residual", Cell::Num(res)));
                write_rows(out, &[row], format)?;
                let tol = 1e-8f64.max(10.0 * r.q_error_estimate);
                if res > tol {
                    return Err(Failure::Verify(format!("residual {res:e} exceeds {tol:e}")));
                }
            } else {
                write_rows(out, &[row], format)?;
            }
        }
        Cmd::Zero {
            a,
            terms,
            verify,
            format,
        } => {
            let r = match terms {
                Some(n) => negative_zero(a, n)?,
                None => negative_zero_auto(a)?,
            };
            let mut row: Row = vec![
                ("a", Cell::Num(a)),
                ("x_minus", Cell::Num(r.x_minus)),
                ("tau1", Cell::Num(r.tau1)),
                ("terms_used", Cell::Int(r.terms_used as i64)),
                ("error_estimate", Cell::Num(r.first_neglected)),
            ];
            let mut failure = None;
            if verify {
                // |γ*(x₋)| against the slope times the x-error estimate
                let (ba, x) = (bf(a), bf(r.x_minus));
                let h = bf(1e-6 * r.x_minus.abs());
                let g = oracle_gammastar(&ba, &x)?;
                let gp = oracle_gammastar(&ba, &x.add(&h))?;
                let gm = oracle_gammastar(&ba, &x.sub(&h))?;
                let slope = gp.sub(&gm).div(&h.mul_i64(2)).abs();
                let tol = slope.mul(&bf(10.0 * r.first_neglected.max(f64::EPSILON * r.x_minus.abs())));
                row.push(("gammastar", oracle_text(&g)));
                row.push(("tolerance", oracle_text(&tol)));
                if g.abs().cmp_value(&tol).is_gt() {
                    failure = Some(format!("|γ*(a, x₋)| exceeds {}", tol.to_sci_string(6)));
                }
            }
            write_rows(out, &[row], format)?;
            if let Some(m) = failure {
                return Err(Failure::Verify(m));
            }
        }
        Cmd::Coeffs { family, max, check } => {
            let fam = Family::parse(&family)?;
            for line in dump(fam, max)? {
                writeln!(out, "{line}")?;
            }
            if check == Some(CheckArg::Tables) {
                let bad = check_tables()?;
                if !bad.is_empty() {
                    let m = bad
                        .iter()
                        .map(|m| {
                            format!(
                                "{} {}: generated '{}', published '{}'",
                                m.family, m.n, m.generated, m.published
                            )
                        })
                        .collect::<Vec<_>>()
                        .join("; ");
                    return Err(Failure::Verify(format!("table mismatch: {m}")));
                }
            }
        }
        Cmd::Figure {
            id,
            a,
            tau,
            nmax,
            format,
        } => {
            let (a, tau) = match (id, a, tau) {
                (Some(id), None, None) => preset(id)?,
                (None, Some(a), Some(t)) => (a, t),
                _ => return Err(Failure::Input("give either --id or both --a and --tau".into())),
            };
            let d = figure_data(a, tau, nmax)?;
            let rows: Vec<Row> = d
                .rows
                .iter()
                .map(|r| {
                    vec![
                        ("n", Cell::Int(r.n as i64)),
                        ("term_transition", Cell::Num(r.term_transition)),
                        ("term_uniform", r.term_uniform.map_or(Cell::Empty, Cell::Num)),
                        ("remainder_transition", Cell::Num(r.remainder_transition)),
                    ]
                })
                .collect();
            write_rows(out, &rows, format)?;
        }
    }
    Ok(())
}

/// Parse `args` (program name first) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match run_cmd(cli.cmd, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_INPUT
        }
        Err(Failure::Verify(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            EXIT_VERIFY
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
