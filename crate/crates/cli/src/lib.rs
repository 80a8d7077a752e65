//! The `nls` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use nls_core::algebra::{format_rational, parse_rational, Rational};
use nls_core::closure::{check, Method, Verdict, DEFAULT_MAX_ROUNDS};
use nls_core::fields::lie_bracket;
use nls_core::integrators::{
    matrix_riccati_integrate, riccati_integrate, uqh_integrate, CsvState, Matrix, Mode,
    RiccatiCoefficients, ScalarScheme, Trajectory,
};
use nls_core::io::{
    parse_system, read_scalar_csv, CsvValue, MatrixSystemDocument, ReportDocument, SystemDocument,
};
use nls_core::polytope::newton_polytope;
use nls_core::scalar::Scalar;
use nls_core::superposition::{cross_ratio, verify_rule, RationalFunction};
use nls_core::Error;

pub const EXIT_FINITE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFINITE: i32 = 10;
pub const EXIT_BUDGET: i32 = 11;
pub const EXIT_RULE_FAILS: i32 = 12;

pub const MAX_ROUNDS_ENV: &str = "NLS_MAX_ROUNDS";

#[derive(Parser, Debug)]
#[command(
    name = "nls",
    version,
    about = "Lie closure checks and Riccati schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the operators generate a finite-dimensional algebra.
    Check {
        file: PathBuf,
        /// Use the degree criterion even if the system has several variables.
        #[arg(long)]
        one_dim: bool,
        /// Emit the full JSON report.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_rounds: Option<usize>,
    },
    /// Print the Lie bracket of two operators (0-based indices).
    Bracket {
        file: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// Print the Newton polytope vertices of one operator.
    Polytope {
        file: PathBuf,
        #[arg(long)]
        op: usize,
    },
    /// Run a difference scheme.
    #[command(subcommand)]
    Integrate(Integrate),
    /// Cross-ratio of four `t,x` CSV trajectories, row by row.
    CrossRatio {
        files: Vec<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check that the prolonged operators annihilate a candidate rule.
    VerifyRule {
        file: PathBuf,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        copies: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Integrate {
    /// x' = a0(t) + a1(t) x + a2(t) x^2
    Riccati {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a0: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a1: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a2: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "semi-implicit")]
        scheme: String,
    },
    /// W' = A + BW + WC + WDW from a JSON system file.
    Matrix {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Geometric grid factor; 1 gives the uniform scheme.
        #[arg(long, default_value = "1")]
        q: String,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t0: String,
    #[arg(long, allow_hyphen_values = true)]
    h: String,
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value = "exact")]
    mode: String,
    #[arg(long)]
    csv: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `argv` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

fn load(path: &Path) -> Result<(String, SystemDocument), Failure> {
    let text = read(path)?;
    let doc = parse_system(&text)?;
    Ok((text, doc))
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text.trim())
        .map_err(|_| Failure::Usage(format!("--{name}: `{text}` is not a rational number")))
}

fn max_rounds(flag: Option<usize>) -> Result<usize, Failure> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(MAX_ROUNDS_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Failure::Usage(format!("{MAX_ROUNDS_ENV}: `{v}` is not a round count"))
            })?,
            Err(_) => DEFAULT_MAX_ROUNDS,
        },
    };
    if n == 0 {
        return Err(Failure::Usage("the round cap must be positive".into()));
    }
    Ok(n)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Check {
            file,
            one_dim,
            json,
            max_rounds: flag,
        } => {
            let rounds = max_rounds(flag)?;
            let (text, doc) = load(&file)?;
            let method = if one_dim || doc.dimension() == 1 {
                Method::OneDimensional
            } else {
                Method::General
            };
            let report = check(&doc.fields()?, rounds, method)?;
            if json {
                let rd = ReportDocument::from_report(&report, &doc.variables, text.as_bytes())?;
                emit(out, &rd.to_json())?;
            } else {
                emit(out, &report.to_string())?;
            }
            Ok(match report.verdict {
                Verdict::FiniteDimensional { .. } => EXIT_FINITE,
                Verdict::InfiniteDimensional { .. } => EXIT_INFINITE,
                Verdict::BudgetExceeded { .. } => EXIT_BUDGET,
            })
        }
        Command::Bracket { file, i, j } => {
            let (_, doc) = load(&file)?;
            let fields = doc.fields()?;
            let pick = |k: usize| {
                fields.get(k).ok_or_else(|| {
                    Failure::Usage(format!(
                        "operator index {k} out of range (0..{})",
                        fields.len()
                    ))
                })
            };
            let b = lie_bracket(pick(i)?, pick(j)?)?;
            emit(
                out,
                &format!(
                    "[{}, {}] = {}",
                    doc.label(i),
                    doc.label(j),
                    b.to_string_with(&doc.variables)
                ),
            )?;
            Ok(0)
        }
        Command::Polytope { file, op } => {
            let (_, doc) = load(&file)?;
            let fields = doc.fields()?;
            let x = fields.get(op).ok_or_else(|| {
                Failure::Usage(format!(
                    "operator index {op} out of range (0..{})",
                    fields.len()
                ))
            })?;
            for v in newton_polytope(x)?.vertices() {
                emit(out, &v.to_string())?;
            }
            Ok(0)
        }
        Command::Integrate(Integrate::Riccati {
            a0,
            a1,
            a2,
            x0,
            run,
            scheme,
        }) => {
            let c = RiccatiCoefficients::parse(&a0, &a1, &a2)?;
            let scheme: ScalarScheme = scheme
                .parse()
                .map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let (mode, t0, h) = run_params(&run)?;
            match mode {
                Mode::Exact => {
                    let x0 = rational_arg("x0", &x0)?;
                    let tr = riccati_integrate(&c, &t0, x0, &h, run.steps, scheme)?;
                    finish_scalar(&tr, run.csv.as_deref(), out)
                }
                Mode::Floating => {
                    let x0 = match parse_rational(x0.trim()) {
                        Ok(r) => r.to_f64(),
                        Err(_) => x0
                            .trim()
                            .parse::<f64>()
                            .map_err(|_| Failure::Usage(format!("--x0: `{x0}` is not a number")))?,
                    };
                    let tr = riccati_integrate(&c, &t0, x0, &h, run.steps, scheme)?;
                    finish_scalar(&tr, run.csv.as_deref(), out)
                }
            }
        }
        Command::Integrate(Integrate::Matrix { system, run, q }) => {
            let doc = MatrixSystemDocument::parse(&read(&system)?)?;
            let sys = doc.system()?;
            let w0 = doc.initial()?;
            let (mode, t0, h) = run_params(&run)?;
            let q = rational_arg("q", &q)?;
            match mode {
                Mode::Exact => {
                    let tr = integrate_matrix(&sys, &t0, w0, &q, &h, run.steps)?;
                    finish_matrix(&tr, run.csv.as_deref(), out)
                }
                Mode::Floating => {
                    let tr = integrate_matrix(
                        &sys,
                        &t0,
                        Matrix::<f64>::from_rational(&w0),
                        &q,
                        &h,
                        run.steps,
                    )?;
                    finish_matrix(&tr, run.csv.as_deref(), out)
                }
            }
        }
        Command::CrossRatio { files, csv } => {
            if files.len() != 4 {
                return Err(Failure::Usage(format!(
                    "cross-ratio takes four CSV files, got {}",
                    files.len()
                )));
            }
            let series = files
                .iter()
                .map(|f| read_scalar_csv(&read(f)?).map_err(Failure::from))
                .collect::<Result<Vec<_>, _>>()?;
            let text = cross_ratio_table(&series)?;
            match csv {
                Some(path) => write_file(&path, &text)?,
                None => write!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))?,
            }
            Ok(0)
        }
        Command::VerifyRule { file, rule, copies } => {
            let (_, doc) = load(&file)?;
            let fields = doc.fields()?;
            let names = copy_names(&doc.variables, copies);
            let candidate = RationalFunction::parse(&rule, &names)?;
            let res = verify_rule(&candidate, &fields, copies)?;
            if res.passed() {
                emit(out, "PASS")?;
                return Ok(0);
            }
            emit(out, "FAIL")?;
            for (k, r) in res.residuals.iter().enumerate() {
                if !r.numerator.is_zero() {
                    emit(
                        out,
                        &format!(
                            "  {}: residual numerator {}",
                            doc.label(k),
                            r.numerator.to_string_with(&names)
                        ),
                    )?;
                }
            }
            Ok(EXIT_RULE_FAILS)
        }
    }
}

/// Variable names for the prolonged space: each name, then each name with
/// the copy index appended.
fn copy_names(variables: &[String], copies: usize) -> Vec<String> {
    let mut names = variables.to_vec();
    for c in 1..=copies {
        names.extend(variables.iter().map(|v| format!("{v}{c}")));
    }
    names
}

fn run_params(run: &RunArgs) -> Result<(Mode, Rational, Rational), Failure> {
    let mode: Mode = run
        .mode
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok((
        mode,
        rational_arg("t0", &run.t0)?,
        rational_arg("h", &run.h)?,
    ))
}

fn integrate_matrix<S: Scalar>(
    sys: &nls_core::integrators::MatrixRiccatiSystem,
    t0: &Rational,
    w0: Matrix<S>,
    q: &Rational,
    h: &Rational,
    steps: usize,
) -> Result<Trajectory<Matrix<S>>, Failure> {
    let one = Rational::from_integer(1.into());
    Ok(if *q == one {
        matrix_riccati_integrate(sys, t0, w0, h, steps)?
    } else {
        uqh_integrate(sys, t0, w0, q, h, steps)?
    })
}

fn finish_scalar<S: Scalar + CsvState>(
    tr: &Trajectory<S>,
    csv: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    if let Some(path) = csv {
        write_file(path, &tr.to_csv())?;
    }
    let (t, x) = tr.last();
    emit(out, &format!("t={}, x={}", format_rational(t), x.to_csv()))?;
    Ok(0)
}

fn finish_matrix<S: Scalar>(
    tr: &Trajectory<Matrix<S>>,
    csv: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    if let Some(path) = csv {
        write_file(path, &tr.to_csv())?;
    }
    let (t, w) = tr.last();
    emit(out, &format!("t={}, W={w}", format_rational(t)))?;
    Ok(0)
}

fn cross_ratio_table(series: &[nls_core::io::ScalarSeries]) -> Result<String, Failure> {
    let rows = series[0].times.len();
    for (k, s) in series.iter().enumerate() {
        if s.times != series[0].times {
            return Err(Failure::Core(Error::InvalidArgument(format!(
                "trajectory {} has a different time grid from trajectory 1 ({} rows vs {rows})",
                k + 1,
                s.times.len()
            ))));
        }
    }
    let mut text = String::from("t,cross_ratio\n");
    for r in 0..rows {
        let vals: Vec<&CsvValue> = series.iter().map(|s| &s.values[r]).collect();
        let exact: Option<Vec<Rational>> = vals
            .iter()
            .map(|v| match v {
                CsvValue::Exact(q) => Some(q.clone()),
                CsvValue::Float(_) => None,
            })
            .collect();
        let cell = match exact {
            Some(x) => cross_ratio(&x[0], &x[1], &x[2], &x[3]).map(|c| c.to_csv()),
            None => {
                let x: Vec<f64> = vals.iter().map(|v| v.to_f64()).collect();
                cross_ratio(&x[0], &x[1], &x[2], &x[3]).map(|c| c.to_csv())
            }
        }
        .map_err(|e| Error::InvalidArgument(format!("row {}: {e}", r + 2)))?;
        let t = match &series[0].times[r] {
            CsvValue::Exact(q) => q.to_csv(),
            CsvValue::Float(x) => x.to_csv(),
        };
        text.push_str(&format!("{t},{cell}\n"));
    }
    Ok(text)
}
