//! Command-line front end for tatemzv.
//!
//! All output is buffered and written once, to stdout or `--out`.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tatemzv::bg::{bg_congruence_check, bg_degree_formula, bg_formula_rhs, bg_polynomial};
use tatemzv::identities::{run_suite, CheckParams, CheckReport, Profile};
use tatemzv::mzv::{multi_power_sum, partial_zeta};
use tatemzv::powersum::{Method, DEFAULT_BUDGET};
use tatemzv::series::zeta_series;
use tatemzv::skew::frak_s;
use tatemzv::{Field, MatrixData, Mode, RatK};

#[derive(Parser)]
#[command(
    name = "tatemzv",
    version,
    about = "Twisted power sums, Tate-algebra multiple zeta values and Bernoulli-Goss polynomials over F_q[θ]"
)]
struct Cli {
    /// Field sizes, comma-separated (each a prime power q > 2).
    #[arg(long, global = true)]
    q: Option<String>,
    /// Defining polynomial of F_q over F_p, coefficients low to high, comma-separated.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Number of variables t1..ts (default: largest index in --data).
    #[arg(long, global = true)]
    vars: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest number of monics a single enumeration may walk.
    #[arg(long, global = true)]
    budget: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = ProfileArg::Default)]
    profile: ProfileArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    /// One JSON record per line.
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Default,
    Deep,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity verification suite; exits 0 iff every check passes.
    Verify {
        /// `all`, or comma-separated check-id globs.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        d_max: Option<u32>,
        /// Valuation threshold for series identities.
        #[arg(long)]
        prec: Option<i64>,
    },
    /// Multiple power sum S_d of the matrix data.
    Powsum(SumArgs),
    /// Partial zeta value F_d = Σ_{k<d} S_k of the matrix data.
    Partial(SumArgs),
    /// Bernoulli-Goss polynomial BG_n, or BG_{q^d-2} with its cross-checks.
    Bg {
        #[arg(long, conflicts_with = "d", required_unless_present = "d")]
        n: Option<u64>,
        #[arg(long)]
        d: Option<u32>,
    },
    /// Per-irreducible congruence table for BG_{q^d-2} and the zero-count bound.
    BgSurvey {
        #[arg(long)]
        d: u32,
    },
    /// Truncated Tate-series expansion of ζ(data).
    Zeta {
        #[arg(long)]
        data: String,
        #[arg(long, default_value_t = 25)]
        prec: i64,
        #[arg(long)]
        star: bool,
    },
    /// The skew polynomial 𝔖_d(q^n;1) in K{τ}.
    Skew {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

#[derive(Args)]
struct SumArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    data: String,
    /// Use non-strict degree inequalities.
    #[arg(long)]
    star: bool,
}

struct Env {
    vars: Option<usize>,
    format: Format,
    budget: u128,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',').map(|x| x.trim().parse::<T>().map_err(|_| anyhow::anyhow!("invalid {what} entry {x:?}"))).collect()
}

fn fields(cli: &Cli) -> Result<Vec<(u32, Option<Vec<u32>>)>> {
    let default = match cli.profile {
        ProfileArg::Default => "3,4",
        ProfileArg::Deep => "3,4,5",
    };
    let qs: Vec<u32> = parse_list(cli.q.as_deref().unwrap_or(default), "--q")?;
    let modulus = cli.modulus.as_deref().map(|m| parse_list::<u32>(m, "--modulus")).transpose()?;
    if modulus.is_some() && qs.len() != 1 {
        bail!("--modulus needs exactly one value of --q");
    }
    Ok(qs.into_iter().map(|q| (q, modulus.clone())).collect())
}

fn params(q: u32, modulus: Option<Vec<u32>>, cli: &Cli, d_max: Option<u32>, prec: Option<i64>) -> CheckParams {
    let profile = match cli.profile {
        ProfileArg::Default => Profile::Default,
        ProfileArg::Deep => Profile::Deep,
    };
    let mut p = CheckParams::profile(q, profile);
    p.modulus = modulus;
    if let Some(d) = d_max {
        p.d_max = d;
    }
    if let Some(t) = prec {
        p.threshold = t;
    }
    if let Some(b) = cli.budget {
        p.budget = b;
    }
    p
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

fn verify(cli: &Cli, suite: &str, d_max: Option<u32>, prec: Option<i64>) -> Result<(String, bool)> {
    let mut reports: Vec<CheckReport> = Vec::new();
    for (q, m) in fields(cli)? {
        let p = params(q, m, cli, d_max, prec);
        reports.extend(run_suite(suite, &p).with_context(|| format!("q = {q}"))?);
    }
    let passed = reports.iter().all(CheckReport::passed);
    let count = |s: &str| reports.iter().filter(|r| r.to_json()["status"] == s).count();
    let (pass, fail, skipped) = (count("pass"), count("fail"), count("skipped"));
    let out = match cli.format {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let status = r.to_json()["status"].as_str().unwrap_or_default().to_uppercase();
                writeln!(s, "{status:<7} q={:<2} {:<18} {}", r.params["q"], r.id, r.witness)?;
            }
            writeln!(s, "{pass} passed, {fail} failed, {skipped} skipped")?;
            s
        }
        Format::Json => {
            let doc = json!({
                "passed": passed,
                "summary": {"pass": pass, "fail": fail, "skipped": skipped},
                "reports": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        Format::Jsonl => reports.iter().map(|r| json_line(&r.to_json())).collect(),
        Format::Csv => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let j = r.to_json();
                    vec![
                        r.id.clone(),
                        r.params["q"].to_string(),
                        j["kind"].as_str().unwrap_or_default().to_string(),
                        j["status"].as_str().unwrap_or_default().to_string(),
                        r.achieved_valuation.map(|v| v.to_string()).unwrap_or_default(),
                        r.elapsed_ms.to_string(),
                        r.witness.clone(),
                    ]
                })
                .collect();
            csv_string(&["id", "q", "kind", "status", "achieved_valuation", "elapsed_ms", "witness"], &rows)?
        }
    };
    Ok((out, passed))
}

/// Emits `value` (already rendered) for field `q` in the chosen format.
fn emit_value(env: &Env, q: u32, label: &str, value: &str, out: &mut String) -> Result<()> {
    match env.format {
        Format::Text => writeln!(out, "{label} = {value}")?,
        Format::Json | Format::Jsonl => out.push_str(&json_line(&json!({"q": q, "label": label, "value": value}))),
        Format::Csv => {
            out.push_str(&csv_string(&["q", "label", "value"], &[vec![q.to_string(), label.into(), value.into()]])?)
        }
    }
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn bg(env: &Env, field: Field, n: Option<u64>, d: Option<u32>, out: &mut String) -> Result<bool> {
    let q = field.q() as u64;
    let d = match (n, d) {
        (_, Some(d)) => Some(d),
        (Some(n), None) => (1..40).find(|&d| q.checked_pow(d).is_some_and(|x| x >= 2 && x - 2 == n)),
        (None, None) => unreachable!("clap requires --n or --d"),
    };
    if d == Some(0) {
        bail!("--d must be at least 1");
    }
    let n = n.unwrap_or_else(|| q.pow(d.unwrap()) - 2);
    let value = bg_polynomial(field, n, env.budget)?.value;
    let deg = value.degree().map_or("-inf".to_string(), |x| x.to_string());
    let mut line = format!("BG_{n} = {value}, deg {deg}");
    let mut checks = serde_json::Map::new();
    let mut ok = true;
    if let Some(d) = d {
        let predicted = bg_degree_formula(field, d).main;
        let deg_ok = value.degree().map(|x| x as i128) == Some(predicted);
        let formula_ok = RatK::from(value.clone()) == bg_formula_rhs(field, d);
        ok = deg_ok && formula_ok;
        write!(line, " (formula: {predicted}) {}, formulaBG {}", mark(deg_ok), mark(formula_ok))?;
        checks.insert("degree_formula".into(), json!(predicted));
        checks.insert("degree_ok".into(), json!(deg_ok));
        checks.insert("formula_ok".into(), json!(formula_ok));
    }
    match env.format {
        Format::Text => writeln!(out, "{line}")?,
        Format::Json | Format::Jsonl => {
            let mut v = json!({"q": q, "n": n, "value": value.to_string(), "degree": value.degree()});
            v.as_object_mut().unwrap().extend(checks);
            out.push_str(&json_line(&v));
        }
        Format::Csv => out.push_str(&csv_string(
            &["q", "n", "value", "degree", "degree_ok", "formula_ok"],
            &[vec![
                q.to_string(),
                n.to_string(),
                value.to_string(),
                deg,
                checks.get("degree_ok").map(Value::to_string).unwrap_or_default(),
                checks.get("formula_ok").map(Value::to_string).unwrap_or_default(),
            ]],
        )?),
    }
    Ok(ok)
}

fn bg_survey(env: &Env, field: Field, d: u32, out: &mut String) -> Result<bool> {
    if d == 0 {
        bail!("--d must be at least 1");
    }
    let r = bg_congruence_check(field, d, env.budget)?;
    match env.format {
        Format::Text => {
            writeln!(out, "q = {}, d = {d}: BG_{} modulo the monic irreducibles of degree {d}", r.q, r.n)?;
            writeln!(out, "{:<24} {:<24} {:<24} {:<10} BG ≡ 0", "P", "BG mod P", "F_d(1) mod P", "congruent")?;
            for row in &r.rows {
                writeln!(
                    out,
                    "{:<24} {:<24} {:<24} {:<10} {}",
                    row.p,
                    row.bg_mod_p,
                    row.f_d_mod_p,
                    mark(row.congruent),
                    if row.bg_vanishes { "yes" } else { "no" }
                )?;
            }
            writeln!(
                out,
                "irreducibles: {} (necklace count {}), BG ≡ 0 for {} of them, bound {} {}",
                r.irreducible_count,
                r.necklace_count,
                r.zero_count,
                r.zero_bound,
                mark(r.passed())
            )?;
        }
        Format::Json | Format::Jsonl => {
            let mut v = serde_json::to_value(&r)?;
            v["passed"] = json!(r.passed());
            out.push_str(&json_line(&v));
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = r
                .rows
                .iter()
                .map(|row| {
                    vec![
                        r.q.to_string(),
                        d.to_string(),
                        row.p.clone(),
                        row.bg_mod_p.clone(),
                        row.formula_mod_p.clone(),
                        row.f_d_mod_p.clone(),
                        row.congruent.to_string(),
                        row.bg_vanishes.to_string(),
                    ]
                })
                .collect();
            let header = ["q", "d", "P", "bg_mod_p", "formula_mod_p", "f_d_mod_p", "congruent", "bg_vanishes"];
            out.push_str(&csv_string(&header, &rows)?);
        }
    }
    Ok(r.passed())
}

fn mode(star: bool) -> Mode {
    if star {
        Mode::Star
    } else {
        Mode::Strict
    }
}

fn compute(cli: &Cli, env: &Env, field: Field, out: &mut String) -> Result<bool> {
    let q = field.q();
    match &cli.command {
        Command::Verify { .. } => unreachable!("handled separately"),
        Command::Powsum(a) | Command::Partial(a) => {
            let m = MatrixData::parse(field, &a.data, env.vars)?;
            let (label, value) = if matches!(cli.command, Command::Powsum(_)) {
                let v = multi_power_sum(a.d, &m, mode(a.star), Method::Auto, env.budget)?;
                (format!("S_{}({m})", a.d), v)
            } else {
                let v = partial_zeta(a.d, &m, mode(a.star), Method::Auto, env.budget)?;
                (format!("F_{}({m})", a.d), v)
            };
            let label = if a.star { label.replacen('(', "*(", 1) } else { label };
            emit_value(env, q, &label, &value.to_string(), out)?;
        }
        Command::Bg { n, d } => return bg(env, field, *n, *d, out),
        Command::BgSurvey { d } => return bg_survey(env, field, *d, out),
        Command::Zeta { data, prec, star } => {
            let m = MatrixData::parse(field, data, env.vars)?;
            let value = zeta_series(&m, *prec, mode(*star), env.budget)?;
            let label = format!("ζ{}({m})", if *star { "*" } else { "" });
            emit_value(env, q, &label, &value.to_string(), out)?;
        }
        Command::Skew { d, n } => {
            let value = frak_s(field, *d, *n, env.budget)?;
            emit_value(env, q, &format!("𝔖_{d}(q^{n};1)"), &value.to_string(), out)?;
        }
    }
    Ok(true)
}

fn field_of(q: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
    let p = CheckParams { modulus, ..CheckParams::profile(q, Profile::Default) };
    Ok(p.field()?)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    if cli.budget == Some(0) {
        bail!("--budget must be positive");
    }
    if let Command::Verify { suite, d_max, prec } = &cli.command {
        return verify(cli, suite, *d_max, *prec);
    }
    let env = Env { vars: cli.vars, format: cli.format, budget: cli.budget.unwrap_or(DEFAULT_BUDGET) };
    let fs = fields(cli)?;
    let mut out = String::new();
    let mut ok = true;
    let sections = fs.len() > 1 && env.format == Format::Text;
    for (q, m) in fs {
        let field = field_of(q, m)?;
        if sections {
            writeln!(out, "# q = {q}")?;
        }
        ok &= compute(cli, &env, field, &mut out)?;
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
