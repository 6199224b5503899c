//! Command-line front end.
//!
//! [`run`] parses arguments, executes one command and returns what the
//! process should print and its exit status, so the binary stays a thin
//! wrapper. Exit statuses: 0 success or pass, 1 axiom failure, 2 rule
//! undefined on the problem (reduced-domain rule given a null holder),
//! 3 bad input or an audit over budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::axioms::{audit, AuditReport, Axiom};
use crate::enumerate::{Domain, EnumerationConfig, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::io::{self, Format};
use crate::lab::{self, Synthesis};
use crate::problem::{Allocation, Label, Problem};
use crate::rational::Rational;
use crate::rules::{Base, Rule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_AXIOM_FAIL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "museum-pass", version, about = "Share museum pass revenue and audit sharing rules")]
struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Allocate a problem's revenue with one rule.
    Allocate {
        #[command(flatten)]
        input: InputArgs,
        /// Rule, e.g. uniform, shapley, ea, convex:1/3:sh, reps:1/4.
        #[arg(value_name = "RULE")]
        rule_pos: Option<String>,
        #[arg(long, conflicts_with = "rule_pos")]
        rule: Option<String>,
    },
    /// Allocate a problem with every parameterless rule side by side.
    Compare {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Check an axiom exhaustively over small problems.
    Audit {
        #[arg(value_name = "RULE")]
        rule_pos: Option<String>,
        #[arg(value_name = "AXIOM")]
        axiom_pos: Option<String>,
        #[arg(long, conflicts_with = "rule_pos")]
        rule: Option<String>,
        #[arg(long, conflicts_with = "axiom_pos")]
        axiom: Option<String>,
        /// Turns `opd` or `tau-opd` into order preservation with this tau.
        #[arg(long)]
        tau: Option<Rational>,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        /// Defaults to 2 for pairwise axioms and 3 otherwise.
        #[arg(long, alias = "n")]
        n_max: Option<usize>,
        #[arg(long, default_value = "reduced")]
        domain: Domain,
        /// Prices to sweep; repeat the flag for several.
        #[arg(long = "price")]
        prices: Vec<Rational>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Emit the certificate that tau-order preservation and independence of
    /// visits distribution are incompatible.
    Certify { tau: Rational },
    /// Largest convex coefficient compatible with tau-order preservation.
    Bound {
        tau: Rational,
        n: usize,
        /// Also search for a violation at this coefficient.
        #[arg(long)]
        beta: Option<Rational>,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Solve for the single-holder tables an axiom set allows.
    Synthesize {
        /// Comma-separated axioms, e.g. ete,dummy.
        axioms: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value = "1")]
        price: Rational,
        #[arg(long, default_value = "reduced")]
        domain: Domain,
    },
    /// Decompose a rule's single-holder table into convex coefficients.
    Decompose {
        #[arg(long)]
        rule: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value = "1")]
        price: Rational,
        #[arg(long, default_value = "reduced")]
        domain: Domain,
        #[arg(long, default_value = "sh")]
        base: Base,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Problem file, `-` for standard input.
    #[arg(long, short)]
    input: PathBuf,
    /// Defaults to the file extension.
    #[arg(long)]
    format: Option<Format>,
    /// Museum labels for CSV input, e.g. 1-3.
    #[arg(long)]
    museums: Option<String>,
    /// Holder labels for CSV input, e.g. 1-5.
    #[arg(long)]
    holders: Option<String>,
    #[arg(long)]
    price: Option<Rational>,
}

impl InputArgs {
    fn load(&self) -> Result<Problem> {
        let format = self.format.unwrap_or_else(|| Format::from_path(&self.input));
        let labels = |s: &Option<String>| s.as_deref().map(io::parse_labels).transpose();
        io::ingest(&self.input, format, labels(&self.museums)?, labels(&self.holders)?, self.price.clone())
    }
}

/// What the process prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Machine-readable report. Exact rationals are authoritative; decimal
/// fields are approximate, for display.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub results: Value,
    pub verdicts: Vec<AuditReport>,
    pub elapsed_ms: f64,
}

struct Rendered {
    code: i32,
    text: String,
    results: Value,
    verdicts: Vec<AuditReport>,
    input: Option<Problem>,
}

impl Rendered {
    fn ok(text: String, results: Value) -> Self {
        Rendered { code: EXIT_OK, text, results, verdicts: Vec::new(), input: None }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_domain() {
        EXIT_DOMAIN
    } else {
        EXIT_INPUT
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let command: String = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let started = Instant::now();
    match execute(&cli.command) {
        Ok(r) => {
            let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
            let inputs_digest = digest(&command, r.input.as_ref());
            let stdout = if cli.json {
                let report = Report { command, inputs_digest, results: r.results, verdicts: r.verdicts, elapsed_ms };
                serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"
            } else {
                format!("{}\n-- {command} | inputs sha256:{inputs_digest} | {elapsed_ms:.1} ms\n", r.text.trim_end())
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stderr = format!("error: {e}\n");
            let stdout = if cli.json {
                serde_json::to_string_pretty(&json!({ "command": command, "error": e.to_string(), "exit": code }))
                    .expect("errors serialize")
                    + "\n"
            } else {
                String::new()
            };
            Outcome { code, stdout, stderr }
        }
    }
}

fn digest(command: &str, input: Option<&Problem>) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    if let Some(p) = input {
        h.update(b"\n");
        h.update(io::to_json(p).as_bytes());
    }
    hex::encode(h.finalize())
}

fn decimals(values: &[Rational]) -> Vec<String> {
    values.iter().map(Rational::to_decimal).collect()
}

fn allocation_json(a: &Allocation) -> Value {
    json!({ "exact": a.shares(), "approx": decimals(a.shares()) })
}

fn pick<'a>(pos: &'a Option<String>, flag: &'a Option<String>, what: &str) -> Result<&'a str> {
    pos.as_deref()
        .or(flag.as_deref())
        .ok_or_else(|| Error::Parse(format!("missing {what}")))
}

fn pattern_text(pattern: &std::collections::BTreeSet<Label>) -> String {
    if pattern.is_empty() {
        "{}".into()
    } else {
        let labels: Vec<String> = pattern.iter().map(Label::to_string).collect();
        format!("{{{}}}", labels.join(","))
    }
}

fn execute(command: &Command) -> Result<Rendered> {
    match command {
        Command::Allocate { input, rule_pos, rule } => {
            let rule: Rule = pick(rule_pos, rule, "rule")?.parse()?;
            let p = input.load()?;
            let a = rule.allocate(&p)?;
            let text = format!(
                "rule: {rule}\nproblem: {p}\nallocation: {a}\napprox: {}\n",
                decimals(a.shares()).join(", ")
            );
            let results = json!({ "rule": rule.to_string(), "problem": &p, "allocation": allocation_json(&a) });
            Ok(Rendered { input: Some(p), ..Rendered::ok(text, results) })
        }
        Command::Compare { input } => {
            let p = input.load()?;
            let mut text = format!("problem: {p}\n");
            let mut rows = Vec::new();
            for rule in Rule::named() {
                let name = rule.to_string();
                match rule.allocate(&p) {
                    Ok(a) => {
                        writeln!(text, "{name:<13} {a}").unwrap();
                        rows.push(json!({ "rule": name, "allocation": allocation_json(&a) }));
                    }
                    Err(e) if e.is_domain() => {
                        writeln!(text, "{name:<13} undefined: reduced domain only").unwrap();
                        rows.push(json!({ "rule": name, "error": e.to_string() }));
                    }
                    Err(e) => return Err(e),
                }
            }
            let results = json!({ "problem": &p, "rules": rows });
            Ok(Rendered { input: Some(p), ..Rendered::ok(text, results) })
        }
        Command::Audit { rule_pos, axiom_pos, rule, axiom, tau, m_max, n_max, domain, prices, budget } => {
            let rule: Rule = pick(rule_pos, rule, "rule")?.parse()?;
            let axiom_text = pick(axiom_pos, axiom, "axiom")?;
            let axiom = match (axiom_text.trim().to_ascii_lowercase().as_str(), tau) {
                ("opd" | "tau-opd", Some(t)) => format!("tau-opd:{t}").parse::<Axiom>()?,
                ("tau-opd", None) => return Err(Error::Parse("tau-opd needs --tau or the form tau-opd:<tau>".into())),
                (_, Some(_)) => return Err(Error::Parse("--tau applies only to opd and tau-opd".into())),
                (_, None) => axiom_text.parse::<Axiom>()?,
            };
            let n_max = n_max.unwrap_or(if axiom.is_pairwise() { 2 } else { 3 });
            let mut cfg = EnumerationConfig::new(*m_max, n_max, *domain).with_budget(*budget);
            if !prices.is_empty() {
                cfg = cfg.with_prices(prices.clone());
            }
            let verdict = audit(&rule, &axiom, &cfg)?;
            let price_list: Vec<String> = cfg.prices.iter().map(Rational::to_string).collect();
            let mut text = format!(
                "audit {rule} against {axiom} (m <= {}, n <= {}, {} domain, prices {})\n",
                cfg.m_max,
                cfg.n_max,
                cfg.domain,
                price_list.join(", ")
            );
            let code = if verdict.passed() {
                writeln!(text, "PASS after {} instances", verdict.instances_checked).unwrap();
                EXIT_OK
            } else {
                writeln!(text, "FAIL at instance {}", verdict.instances_checked).unwrap();
                if let Some(w) = &verdict.witness {
                    writeln!(text, "{w}").unwrap();
                }
                EXIT_AXIOM_FAIL
            };
            let report = AuditReport::new(&rule, &axiom, &cfg, verdict);
            let results = serde_json::to_value(&report)?;
            Ok(Rendered { code, text, results, verdicts: vec![report], input: None })
        }
        Command::Certify { tau } => match lab::impossibility_certificate(tau)? {
            None => Ok(Rendered::ok(
                format!("no certificate: at tau = {tau} the uniform rule satisfies both axioms\n"),
                Value::Null,
            )),
            Some(c) => {
                let mut text = format!("certificate for tau = {}\n", c.tau);
                for (k, p) in c.problems.iter().enumerate() {
                    writeln!(text, "P{k}: {p}").unwrap();
                }
                for line in c.equalities.iter().chain(&c.inequalities) {
                    writeln!(text, "  {line}").unwrap();
                }
                writeln!(text, "gap = {} (approx {})", c.gap, c.gap.to_decimal()).unwrap();
                Ok(Rendered::ok(text, serde_json::to_value(&c)?))
            }
        },
        Command::Bound { tau, n, beta, m } => {
            let bound = lab::tau_beta_bound(tau, *n)?;
            let mut text = format!("{bound}\n");
            let mut results = json!({ "tau": tau, "n": n, "bound": &bound, "approx": bound.to_decimal() });
            if let Some(beta) = beta {
                match lab::bound_witness(tau, *n, *m, beta)? {
                    None => writeln!(text, "beta = {beta}: no violation found").unwrap(),
                    Some(w) => {
                        writeln!(
                            text,
                            "beta = {beta}: {} violates on {}\n  dummy {} gets {} > {} = tau * share of museum {} (gap {})",
                            w.rule, w.problem, w.dummy, w.lhs, w.rhs, w.museum, w.gap
                        )
                        .unwrap();
                        results["witness"] = serde_json::to_value(&w)?;
                    }
                }
            }
            Ok(Rendered::ok(text, results))
        }
        Command::Synthesize { axioms, m, price, domain } => {
            let axioms: Vec<Axiom> = axioms.split(',').map(str::parse).collect::<Result<_>>()?;
            let museums: Vec<Label> = (1..=*m as Label).collect();
            let synthesis = lab::synthesize(&axioms, &museums, price, *domain)?;
            let mut text = String::new();
            match &synthesis {
                Synthesis::Unique { table } => {
                    writeln!(text, "UNIQUE").unwrap();
                    for (pattern, a) in table.entries() {
                        writeln!(text, "  {:<9} {a}", pattern_text(pattern)).unwrap();
                    }
                }
                Synthesis::Family { constraints } => {
                    writeln!(text, "FAMILY (x = share of each unvisited museum)").unwrap();
                    for c in &constraints.patterns {
                        writeln!(text, "  {:<9} {} <= x <= {}  [class {}]", pattern_text(&c.pattern), c.lo, c.hi, c.class)
                            .unwrap();
                    }
                }
                Synthesis::Infeasible { witness } => writeln!(text, "INFEASIBLE: {witness}").unwrap(),
            }
            Ok(Rendered::ok(text, serde_json::to_value(&synthesis)?))
        }
        Command::Decompose { rule, m, price, domain, base } => {
            let rule: Rule = rule.parse()?;
            let museums: Vec<Label> = (1..=*m as Label).collect();
            let table = lab::AdditiveRuleTable::from_rule(&rule, &museums, price, *domain)?;
            let d = lab::decompose(&table, *base)?;
            let mut text = format!("{rule} against base {}\n", base.token());
            for b in &d.patterns {
                let note = match (b.determined, b.in_unit_interval) {
                    (false, _) => "  (any beta fits)",
                    (true, false) => "  (outside [0, 1])",
                    (true, true) => "",
                };
                writeln!(text, "  {:<9} beta = {}{note}", pattern_text(&b.pattern), b.beta).unwrap();
            }
            Ok(Rendered::ok(text, serde_json::to_value(&d)?))
        }
    }
}
