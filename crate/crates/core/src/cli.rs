//! The `pqtrig` command-line interface.
//!
//! Exit codes: 0 success or verified, 1 usage error, 2 domain or numerical
//! error, 3 inequality violation found.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::pq::{self, EvalResult, PqParams};
use crate::render::{self, sig17};
use crate::verify::{self, Target, Verdict, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

pub const TOL_ENV: &str = "PQTRIG_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "pqtrig",
    version,
    about = "Generalized (p,q)-trigonometric functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Print pi_{p,q} or m*_{p,q}.
    Const(ConstArgs),
    /// Tabulate a function on a uniform grid.
    Table(TableArgs),
    /// Check a convexity statement or inequality on seeded samples.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FnName {
    Arcsin,
    Arccos,
    Arcsinh,
    Sin,
    Cos,
    Sinh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstName {
    Pi,
    Mstar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Text,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: FnName,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Relative tolerance of the evaluation.
    #[arg(long, env = TOL_ENV, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConstArgs {
    #[arg(long, value_enum)]
    pub name: ConstName,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, env = TOL_ENV, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long = "fn", value_enum)]
    pub function: FnName,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    /// Number of rows, including both ends.
    #[arg(long)]
    pub steps: usize,
    #[arg(long, env = TOL_ENV, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub target: Target,
    #[arg(long)]
    pub p: f64,
    /// Required except for `corollary-p`, which sets q = p.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples with margin below -tol are violations; a negative value
    /// demands a strictly positive margin.
    #[arg(long, default_value_t = verify::DEFAULT_MARGIN_TOL)]
    pub tol: f64,
    /// Fix the first argument instead of sampling it.
    #[arg(long)]
    pub r: Option<f64>,
    /// Fix the second argument instead of sampling it.
    #[arg(long)]
    pub s: Option<f64>,
    /// Fix the weight (gc targets only).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Sample gc-sin over (0, pi_{p,q}/2) rather than (0, 1).
    #[arg(long)]
    pub full_branch: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Outcome of a command: text for stdout, or an error with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

pub fn evaluate(
    function: FnName,
    params: &PqParams,
    x: f64,
    tol: f64,
) -> crate::Result<EvalResult> {
    match function {
        FnName::Arcsin => pq::arcsin_pq(params, x, tol),
        FnName::Arccos => pq::arccos_pq(params, x, tol),
        FnName::Arcsinh => pq::arcsinh_pq(params, x, tol),
        FnName::Sin => pq::sin_pq(params, x, tol),
        FnName::Cos => pq::cos_pq(params, x, tol),
        FnName::Sinh => pq::sinh_pq(params, x, tol),
    }
}

#[derive(Serialize)]
struct JsonEval {
    #[serde(rename = "fn")]
    function: FnName,
    #[serde(serialize_with = "sig17")]
    p: f64,
    #[serde(serialize_with = "sig17")]
    q: f64,
    #[serde(serialize_with = "sig17")]
    x: f64,
    #[serde(serialize_with = "sig17")]
    value: f64,
    #[serde(serialize_with = "sig17")]
    abs_err_est: f64,
}

#[derive(Serialize)]
struct JsonConst {
    name: ConstName,
    #[serde(serialize_with = "sig17")]
    p: f64,
    #[serde(serialize_with = "sig17")]
    q: f64,
    #[serde(serialize_with = "sig17")]
    value: f64,
    #[serde(serialize_with = "sig17")]
    abs_err_est: f64,
}

#[derive(Serialize)]
struct JsonRow {
    #[serde(serialize_with = "sig17")]
    x: f64,
    #[serde(serialize_with = "sig17")]
    value: f64,
    #[serde(serialize_with = "sig17")]
    abs_err_est: f64,
}

#[derive(Serialize)]
struct JsonTable {
    #[serde(rename = "fn")]
    function: FnName,
    #[serde(serialize_with = "sig17")]
    p: f64,
    #[serde(serialize_with = "sig17")]
    q: f64,
    rows: Vec<JsonRow>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

const CSV_HEADER: [&str; 3] = ["x", "value", "abs_err_est"];

fn cmd_eval(a: &EvalArgs) -> Result<String, Failure> {
    let params = PqParams::new(a.params.p, a.params.q)?;
    let r = evaluate(a.function, &params, a.x, a.tol)?;
    Ok(match a.format {
        Format::Text => format!(
            "{} (abs_err_est {})\n",
            render::text(r.value),
            render::text(r.abs_err_est)
        ),
        Format::Csv => render::csv(&CSV_HEADER, [vec![a.x, r.value, r.abs_err_est]]),
        Format::Json => to_json(&JsonEval {
            function: a.function,
            p: params.p(),
            q: params.q(),
            x: a.x,
            value: r.value,
            abs_err_est: r.abs_err_est,
        }),
    })
}

fn cmd_const(a: &ConstArgs) -> Result<String, Failure> {
    let params = PqParams::new(a.params.p, a.params.q)?;
    let c = pq::constants(&params, a.tol)?;
    let (value, err) = match a.name {
        ConstName::Pi => (c.pi_pq, c.pi_abs_err),
        ConstName::Mstar => (c.m_star, c.m_star_abs_err),
    };
    Ok(match a.format {
        Format::Text if value.is_infinite() => "inf\n".to_string(),
        Format::Text => format!(
            "{} (abs_err_est {})\n",
            render::text(value),
            render::text(err)
        ),
        Format::Csv => format!(
            "name,value,abs_err_est\n{},{},{}\n",
            match a.name {
                ConstName::Pi => "pi",
                ConstName::Mstar => "mstar",
            },
            render::exact(value),
            render::exact(err)
        ),
        Format::Json => to_json(&JsonConst {
            name: a.name,
            p: params.p(),
            q: params.q(),
            value,
            abs_err_est: err,
        }),
    })
}

/// `steps` uniform points from `from` to `to`, both included exactly.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    let n = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                to
            } else {
                from + (to - from) * (i as f64 / n)
            }
        })
        .collect()
}

fn cmd_table(a: &TableArgs) -> Result<String, Failure> {
    if a.steps < 2 {
        return Err(usage(format!(
            "--steps must be at least 2, got {}",
            a.steps
        )));
    }
    if !(a.from < a.to) {
        return Err(usage(format!(
            "--from must be less than --to, got {} and {}",
            a.from, a.to
        )));
    }
    if a.format == Format::Text {
        return Err(usage("table supports --format csv or json"));
    }
    let params = PqParams::new(a.params.p, a.params.q)?;
    let xs = grid(a.from, a.to, a.steps);
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--steps too large for the range: rows would repeat"));
    }
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let r = evaluate(a.function, &params, x, a.tol)?;
        rows.push(JsonRow {
            x,
            value: r.value,
            abs_err_est: r.abs_err_est,
        });
    }
    Ok(match a.format {
        Format::Json => to_json(&JsonTable {
            function: a.function,
            p: params.p(),
            q: params.q(),
            rows,
        }),
        _ => render::csv(
            &CSV_HEADER,
            rows.iter().map(|r| vec![r.x, r.value, r.abs_err_est]),
        ),
    })
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, i32), Failure> {
    if a.format == Format::Csv {
        return Err(usage("verify supports --format text or json"));
    }
    let q = match (a.target, a.q) {
        (Target::CorollaryP, Some(q)) if q != a.p => {
            return Err(usage(
                "corollary-p sets q = p; omit --q or pass the same value",
            ))
        }
        (Target::CorollaryP, _) => a.p,
        (_, Some(q)) => q,
        (_, None) => return Err(usage(format!("--q is required for target {}", a.target))),
    };
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    if a.full_branch && a.target != Target::GcSin {
        return Err(usage("--full-branch applies to gc-sin only"));
    }
    let config = VerifyConfig::new(a.target, a.p, q)
        .samples(a.samples)
        .seed(a.seed)
        .tol(a.tol)
        .fixed(a.r, a.s, a.lambda)
        .full_branch(a.full_branch);
    let report = verify::run(&config)?;
    let out = match a.format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        _ => report.to_text(),
    };
    let code = match report.verdict {
        Verdict::Verified => EXIT_OK,
        Verdict::Violated => EXIT_VIOLATION,
        Verdict::Inconclusive => EXIT_DOMAIN,
    };
    Ok((out, code))
}

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return if informational {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            };
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a).map(|s| (s, EXIT_OK)),
        Command::Const(a) => cmd_const(a).map(|s| (s, EXIT_OK)),
        Command::Table(a) => cmd_table(a).map(|s| (s, EXIT_OK)),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
