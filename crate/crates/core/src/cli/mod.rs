//! Command-line front end.

mod parse;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use parse::{parse_ideal, parse_polynomial};
pub use verify::{verify_invariants, Check};

use crate::basep::{candidate_set, Rational, Window};
use crate::constancy::{constancy_report, singularity_profile};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::polyring::{Polynomial, Ring};
use crate::testideal::{default_bound, f_threshold, nu, Comparison, JnMethod, TestIdealEngine};

#[derive(Parser, Debug, Clone)]
#[command(name = "fjump", version, about = "F-jumping numbers and test ideals over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// F-pure threshold at the origin.
    Fpt(Options),
    /// Jumping numbers in [0, 1) with their test ideals.
    Jn(Options),
    /// Test ideal at --lambda.
    Tau(Options),
    /// ν(f, b, e) for b given by --ideal (default: the maximal ideal).
    Nu(Options),
    /// F-threshold of f with respect to --ideal.
    Ft(Options),
    /// Candidate jumping numbers for --bound inside --window.
    Candidates(Options),
    /// Jacobian length and perturbation exponents.
    Profile(Options),
    /// Compare f with seeded perturbations f + h, h in m^k.
    Constancy(Options),
    /// Run the invariant suite; exits 1 if any check fails.
    Verify(Options),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Options {
    /// Polynomial, e.g. "x^4 + y^3 + x^2*y^2".
    pub poly: Option<String>,
    /// Read the polynomial from a file instead.
    #[arg(long)]
    pub input_file: Option<PathBuf>,
    /// Characteristic p.
    #[arg(long = "char", value_name = "P")]
    pub prime: u64,
    #[arg(long, default_value = "x,y")]
    pub vars: String,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Bound B on the number of jumping numbers in [0, 1).
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long = "e", value_name = "E")]
    pub e: Option<u64>,
    /// Ideal generators separated by ';'.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Half-open window lo:hi.
    #[arg(long)]
    pub window: Option<String>,
    /// Comma-separated perturbation exponents.
    #[arg(long)]
    pub exponents: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub cap: Option<String>,
    #[arg(long)]
    pub json: bool,
    /// walk, bisect or auto.
    #[arg(long, default_value = "auto")]
    pub method: String,
    /// Report the elapsed time in JSON output (otherwise written as 0).
    #[arg(long)]
    pub timing: bool,
}

/// Exit code and the text for standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(cmd: &Command) -> Outcome {
    match run(cmd) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("fjump: {e}\n"),
        },
    }
}

struct Context {
    ring: Ring,
    opts: Options,
}

impl Context {
    fn new(opts: &Options) -> Result<Self> {
        let vars: Vec<&str> = opts.vars.split(',').map(str::trim).collect();
        Ok(Context {
            ring: Ring::new(opts.prime, vars)?,
            opts: opts.clone(),
        })
    }

    fn poly(&self) -> Result<Polynomial> {
        let text = match (&self.opts.poly, &self.opts.input_file) {
            (Some(t), None) => t.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?,
            (Some(_), Some(_)) => return Err(Error::domain("give either a polynomial or --input-file, not both")),
            (None, None) => return Err(Error::domain("missing polynomial argument")),
        };
        parse_polynomial(&text, &self.ring)
    }

    fn bound(&self, f: &Polynomial) -> Result<u64> {
        match self.opts.bound {
            Some(b) => Ok(b),
            None => Ok(default_bound(f)?.chosen),
        }
    }

    fn method(&self) -> Result<JnMethod> {
        self.opts.method.parse()
    }

    fn rational(text: &str) -> Result<Rational> {
        text.parse()
    }

    fn ideal_or_maximal(&self) -> Result<Ideal> {
        match &self.opts.ideal {
            Some(t) => parse_ideal(t, &self.ring),
            None => Ok(Ideal::maximal(&self.ring)),
        }
    }

    fn render(&self, value: serde_json::Value, human: String) -> String {
        if self.opts.json {
            let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
            s.push('\n');
            s
        } else {
            human
        }
    }
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(a, _)| a.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (a, b) in rows {
        let pad = width - a.chars().count();
        let _ = writeln!(out, "{a}{}  {b}", " ".repeat(pad));
    }
    out
}

fn run(cmd: &Command) -> Result<(i32, String)> {
    let opts = match cmd {
        Command::Fpt(o)
        | Command::Jn(o)
        | Command::Tau(o)
        | Command::Nu(o)
        | Command::Ft(o)
        | Command::Candidates(o)
        | Command::Profile(o)
        | Command::Constancy(o)
        | Command::Verify(o) => o,
    };
    let ctx = Context::new(opts)?;
    let out = match cmd {
        Command::Fpt(_) => {
            let f = ctx.poly()?;
            let bound = ctx.bound(&f)?;
            let rep = TestIdealEngine::new(&f, bound)?.jumping_numbers(ctx.method()?, Comparison::Global)?;
            ctx.render(
                json!({"prime": ctx.ring.prime(), "poly": f.to_string(), "bound": bound, "fpt": rep.fpt.to_string()}),
                format!("{}\n", rep.fpt),
            )
        }
        Command::Jn(_) => {
            let f = ctx.poly()?;
            let bound = ctx.bound(&f)?;
            let rep = TestIdealEngine::new(&f, bound)?.jumping_numbers(ctx.method()?, Comparison::Global)?;
            let mut rows = vec![("lambda".to_string(), "test ideal".to_string())];
            rows.extend(
                rep.jumping_numbers
                    .iter()
                    .zip(&rep.test_ideals)
                    .map(|(l, t)| (l.to_string(), t.to_string())),
            );
            let human = format!(
                "f = {f} over F_{}, B = {bound}, fpt = {}\n{}",
                ctx.ring.prime(),
                rep.fpt,
                table(&rows)
            );
            ctx.render(rep.to_json(ctx.opts.timing), human)
        }
        Command::Tau(_) => {
            let f = ctx.poly()?;
            let bound = ctx.bound(&f)?;
            let lambda = Context::rational(
                ctx.opts
                    .lambda
                    .as_deref()
                    .ok_or_else(|| Error::domain("tau requires --lambda"))?,
            )?;
            let res = TestIdealEngine::new(&f, bound)?.test_ideal(&lambda)?;
            let human = format!(
                "tau(f^{}) = {}  (s = {}, B = {})\n",
                res.lambda, res.ideal, res.stabilization_exponent, res.bound
            );
            ctx.render(res.to_json(), human)
        }
        Command::Nu(_) => {
            let f = ctx.poly()?;
            let b = ctx.ideal_or_maximal()?;
            let e = ctx.opts.e.unwrap_or(1);
            let n = nu(&f, &b, e)?;
            ctx.render(
                json!({"prime": ctx.ring.prime(), "poly": f.to_string(), "ideal": b.to_json_value(), "e": e, "nu": n.to_string()}),
                format!("{n}\n"),
            )
        }
        Command::Ft(_) => {
            let f = ctx.poly()?;
            let b = ctx.ideal_or_maximal()?;
            let bound = ctx.bound(&f)?;
            let cap = match &ctx.opts.cap {
                Some(c) => Context::rational(c)?,
                None => Rational::integer(ctx.ring.dim() as u64)?,
            };
            let t = f_threshold(&f, &b, bound, &cap)?;
            ctx.render(
                json!({"prime": ctx.ring.prime(), "poly": f.to_string(), "ideal": b.to_json_value(), "bound": bound, "cap": cap.to_string(), "threshold": t.to_string()}),
                format!("{t}\n"),
            )
        }
        Command::Candidates(_) => {
            let bound = ctx
                .opts
                .bound
                .ok_or_else(|| Error::domain("candidates requires --bound"))?;
            let window = match &ctx.opts.window {
                Some(w) => w.parse()?,
                None => Window::unit(),
            };
            let set = candidate_set(ctx.ring.prime(), bound, &window)?;
            let human = set.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ") + "\n";
            ctx.render(serde_json::to_value(&set.values).expect("rationals serialize"), human)
        }
        Command::Profile(_) => {
            let f = ctx.poly()?;
            let prof = singularity_profile(&f)?;
            let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            let rows = vec![
                ("f".to_string(), f.to_string()),
                ("Jac(f)".to_string(), prof.jacobian.to_string()),
                ("isolated".to_string(), prof.is_isolated.to_string()),
                ("ell".to_string(), show(prof.ell.map(|l| l.to_string()))),
                ("N".to_string(), show(prof.bound_n.as_ref().map(|n| n.to_string()))),
                ("M".to_string(), show(prof.bound_m.as_ref().map(|m| m.to_string()))),
            ];
            ctx.render(prof.to_json(), table(&rows))
        }
        Command::Constancy(_) => {
            let f = ctx.poly()?;
            let exps: Vec<u64> = ctx
                .opts
                .exponents
                .as_deref()
                .ok_or_else(|| Error::domain("constancy requires --exponents"))?
                .split(',')
                .map(|k| {
                    k.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::parse(0, format!("bad exponent {k:?}")))
                })
                .collect::<Result<_>>()?;
            let rep = constancy_report(&f, &exps, ctx.opts.samples, ctx.opts.seed)?;
            let code = i32::from(rep.has_violation());
            let human = format!("seed = {}\n{}", rep.seed, rep.to_csv());
            return Ok((code, ctx.render(rep.to_json(), human)));
        }
        Command::Verify(_) => {
            let f = ctx.poly()?;
            let bound = ctx.bound(&f)?;
            let (rep, checks) = verify_invariants(&f, bound, ctx.method()?)?;
            let failed = checks.iter().any(|c| !c.passed);
            let rows: Vec<(String, String)> = checks
                .iter()
                .map(|c| {
                    let status = if c.passed { "pass" } else { "FAIL" };
                    let detail = if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!("  {}", c.detail)
                    };
                    (c.name.to_string(), format!("{status}{detail}"))
                })
                .collect();
            let value = json!({
                "prime": ctx.ring.prime(),
                "poly": f.to_string(),
                "bound": bound,
                "fpt": rep.fpt.to_string(),
                "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
            });
            return Ok((i32::from(failed), ctx.render(value, table(&rows))));
        }
    };
    Ok((0, out))
}
