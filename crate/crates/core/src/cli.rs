//! Command-line front end. [`run`] parses arguments, executes one command and
//! writes a JSON, CSV or text report.
//!
//! Exit codes: 0 success, 1 a checked property turned out false (not a
//! design, conjecture mismatch), 2 usage or parameter error, 3 budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::closed_forms::{
    lifted_hamming_wd_formula, lifted_rm1_wd_formula, lifted_rm_m2_wd_formula, lifted_simplex_wd_formula,
};
use crate::code::{LinearCode, Strategy, WeightDistribution};
use crate::config::{Config, BUDGET_ENV};
use crate::design::{
    assmus_mattson, conjecture_rm1, max_strength, supports, supports_by_weight, verify_design, DesignCertificate,
    DesignStatus,
};
use crate::error::Error;
use crate::families::{hamming, prm, rm2, simplex, simplex_trace};
use crate::field::{FieldSpec, FieldTower};
use crate::lifting::{lift, rank_spectrum_wd, LiftedCode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "liftlab", version, about = "Weight distributions and support designs of lifted linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe GF(q), optionally with its extension of degree --lift.
    Field {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        lift: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Construct a code and report [n, k, d].
    Code {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Weight distribution.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Support design of the codewords of one weight.
    Design {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        weight: usize,
        /// Strength to verify; the largest strength is searched when omitted.
        #[arg(long)]
        t: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Assmus-Mattson condition for strength --t.
    Am {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Check the predicted 3-design λ for lifted RM(1, m).
    Conjecture {
        #[arg(value_enum)]
        which: Conjecture,
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Design certificates for every nonzero weight.
    Table {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 2)]
        t: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Field order; RM codes are binary.
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    lift: u32,
    /// Reed-Muller order r.
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Projective Reed-Muller degree.
    #[arg(long)]
    h: Option<u32>,
}

#[derive(Args, Debug)]
struct Common {
    /// Maximum codewords per enumeration (default 2^26, or $LIFTLAB_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    subset_budget: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Simplex,
    SimplexTrace,
    Hamming,
    Rm,
    Prm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Direct,
    ViaDual,
    Selector,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Conjecture {
    Rm1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::SimplexTrace => "simplex-trace",
            Family::Hamming => "hamming",
            Family::Rm => "rm",
            Family::Prm => "prm",
        }
    }
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Direct => "direct",
            Method::ViaDual => "via-dual",
            Method::Selector => "selector",
            Method::Formula => "formula",
        }
    }
}

/// A failed command: exit code plus message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE };
        let msg = if matches!(e, Error::BudgetExceeded { .. }) {
            format!("{e} (raise --budget or set {BUDGET_ENV})")
        } else {
            e.to_string()
        };
        Failure(code, msg)
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

/// Decimal big integer as a JSON number.
fn big(x: &BigUint) -> Value {
    Value::Number(serde_json::from_str(&x.to_string()).expect("decimal digits"))
}

fn config(common: &Common) -> CmdResult<Config> {
    let mut cfg = Config::from_env();
    if let Some(b) = common.budget {
        if b == 0 {
            return Err(usage("--budget must be positive"));
        }
        cfg.enumeration_budget = b;
    }
    if let Some(b) = common.subset_budget {
        if b == 0 {
            return Err(usage("--subset-budget must be positive"));
        }
        cfg.subset_budget = b;
    }
    if let Some(w) = common.workers {
        if w == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        cfg.workers = w;
    }
    Ok(cfg)
}

fn budget_json(cfg: &Config) -> Value {
    json!({ "enumeration": cfg.enumeration_budget, "subset": cfg.subset_budget })
}

struct Built {
    args: CodeArgs,
    lifted: LiftedCode,
}

impl Built {
    fn code(&self) -> &LinearCode {
        self.lifted.code()
    }

    fn json(&self, d: Option<usize>) -> Value {
        let a = &self.args;
        let tower = self.lifted.tower();
        let mut o = Map::new();
        o.insert("family".into(), json!(a.family.name()));
        o.insert("q".into(), json!(a.q));
        o.insert("m".into(), json!(a.m));
        o.insert("lift".into(), json!(a.lift));
        match a.family {
            Family::Rm => {
                o.insert("order".into(), json!(a.order));
            }
            Family::Prm => {
                o.insert("h".into(), json!(a.h));
            }
            _ => {}
        }
        o.insert("n".into(), json!(self.code().length()));
        o.insert("k".into(), json!(self.code().dimension()));
        o.insert("d".into(), json!(d));
        o.insert("modulus".into(), json!(tower.base().modulus()));
        o.insert("lift_modulus".into(), json!(tower.top().modulus()));
        Value::Object(o)
    }
}

fn build(args: CodeArgs, cfg: &Config) -> CmdResult<Built> {
    let field = || FieldSpec::from_order(args.q, cfg.max_field_order);
    let base = match args.family {
        Family::Simplex => simplex(&field()?, args.m)?,
        Family::SimplexTrace => simplex_trace(&field()?, args.m)?,
        Family::Hamming => hamming(&field()?, args.m)?,
        Family::Rm => {
            if args.q != 2 {
                return Err(usage("the rm family is binary; use --q 2"));
            }
            rm2(args.order, args.m)?
        }
        Family::Prm => {
            let h = args.h.ok_or_else(|| usage("the prm family needs --h"))?;
            prm(&field()?, args.m, h)?
        }
    };
    let lifted = lift(&base, args.lift, cfg)?;
    Ok(Built { args, lifted })
}

fn weights_json(w: &WeightDistribution) -> Value {
    Value::Array(w.nonzero().iter().map(|(i, c)| json!([i, big(c)])).collect())
}

fn certificate_json(c: &DesignCertificate) -> Value {
    let mut o = Map::new();
    o.insert("t".into(), json!(c.t));
    o.insert("v".into(), json!(c.v));
    o.insert("k".into(), json!(c.k));
    o.insert("lambda".into(), json!(c.lambda));
    o.insert("b".into(), json!(c.b));
    o.insert("status".into(), json!(c.status.as_str()));
    if let Some(w) = &c.witness {
        o.insert(
            "witness".into(),
            json!({
                "first": w.first, "first_count": w.first_count,
                "second": w.second, "second_count": w.second_count,
            }),
        );
    }
    Value::Object(o)
}

/// A finished report plus its exit code.
struct Report {
    json: Value,
    csv: Option<String>,
    exit: i32,
}

fn design_csv(rows: &[&DesignCertificate]) -> String {
    let mut s = String::from("t,v,k,lambda,b,status\n");
    for c in rows {
        let lambda = c.lambda.map(|l| l.to_string()).unwrap_or_default();
        s += &format!("{},{},{},{},{},{}\n", c.t, c.v, c.k, lambda, c.b, c.status.as_str());
    }
    s
}

fn weights_csv(w: &WeightDistribution) -> String {
    let mut s = String::from("weight,count\n");
    for (i, c) in w.nonzero() {
        s += &format!("{i},{c}\n");
    }
    s
}

fn cmd_field(q: u64, l: u32, cfg: &Config) -> CmdResult<Report> {
    let f = FieldSpec::from_order(q, cfg.max_field_order)?;
    let describe = |f: &FieldSpec| {
        json!({
            "p": f.characteristic(), "e": f.degree(), "order": f.order(),
            "modulus": f.modulus(), "primitive": f.coeffs(f.primitive()),
        })
    };
    let mut o = Map::new();
    o.insert("field".into(), describe(&f));
    if l > 1 {
        let tower = FieldTower::new(Arc::clone(&f), l, cfg.max_field_order)?;
        let top = tower.top();
        o.insert(
            "tower".into(),
            json!({
                "degree": l,
                "top": describe(top),
                "embedding": f.elements().map(|a| json!([f.coeffs(a), top.coeffs(tower.embed(a))])).collect::<Vec<_>>(),
                "basis": tower.basis().iter().map(|&b| top.coeffs(b)).collect::<Vec<_>>(),
            }),
        );
    }
    Ok(Report { json: Value::Object(o), csv: None, exit: EXIT_OK })
}

fn cmd_code(args: CodeArgs, cfg: &Config) -> CmdResult<Report> {
    let b = build(args, cfg)?;
    let d = b.code().min_distance(cfg)?;
    let json = json!({ "code": b.json(Some(d)), "budget": budget_json(cfg) });
    Ok(Report { json, csv: None, exit: EXIT_OK })
}

fn formula(b: &Built) -> CmdResult<WeightDistribution> {
    let a = &b.args;
    let none = || usage(format!("no closed form for family {} with these parameters", a.family.name()));
    let w = match a.family {
        Family::Simplex | Family::SimplexTrace => lifted_simplex_wd_formula(a.q, a.m, a.lift)?,
        Family::Hamming => lifted_hamming_wd_formula(a.q, a.m, a.lift)?,
        Family::Rm if a.order == 1 => lifted_rm1_wd_formula(a.m, a.lift)?,
        Family::Rm if a.m >= 3 && a.order == a.m - 2 => lifted_rm_m2_wd_formula(a.m, a.lift)?,
        _ => return Err(none()),
    };
    Ok(w)
}

fn cmd_weights(args: CodeArgs, method: Method, cfg: &Config) -> CmdResult<Report> {
    let b = build(args, cfg)?;
    let w = match method {
        Method::Auto => b.code().weight_distribution(Strategy::Auto, cfg)?,
        Method::Direct => b.code().weight_distribution(Strategy::Direct, cfg)?,
        Method::ViaDual => b.code().weight_distribution(Strategy::ViaDual, cfg)?,
        Method::Selector => rank_spectrum_wd(&b.lifted, cfg)?,
        Method::Formula => formula(&b)?,
    };
    let json = json!({
        "code": b.json(w.min_distance()),
        "method": method.name(),
        "weights": weights_json(&w),
        "total": big(&w.total()),
        "enumerator": w.to_string(),
        "budget": budget_json(cfg),
    });
    Ok(Report { json, csv: Some(weights_csv(&w)), exit: EXIT_OK })
}

fn cmd_design(args: CodeArgs, weight: usize, t: Option<usize>, cfg: &Config) -> CmdResult<Report> {
    let b = build(args, cfg)?;
    let d = b.code().min_distance(cfg)?;
    let (design, count) = supports(b.code(), weight, cfg)?;
    let mut o = Map::new();
    let cert = match t {
        Some(t) => verify_design(&design, t, cfg)?,
        None => {
            let s = max_strength(&design, cfg)?;
            o.insert("max_strength".into(), json!({ "t": s.t, "lambda": s.lambda, "capped": s.capped }));
            if s.t == 0 {
                verify_design(&design, 1, cfg)?
            } else if s.t == design.block_size() && s.lambda == 1 {
                DesignCertificate {
                    t: s.t,
                    v: design.points(),
                    k: design.block_size(),
                    lambda: Some(1),
                    b: design.len(),
                    status: DesignStatus::CompleteDesign,
                    witness: None,
                }
            } else {
                verify_design(&design, s.t, cfg)?
            }
        }
    };
    o.insert("code".into(), b.json(Some(d)));
    o.insert("codewords".into(), big(&count));
    o.insert("design".into(), certificate_json(&cert));
    o.insert("budget".into(), budget_json(cfg));
    let exit = if cert.status.is_design() { EXIT_OK } else { EXIT_FALSE };
    Ok(Report { json: Value::Object(o), csv: Some(design_csv(&[&cert])), exit })
}

fn cmd_am(args: CodeArgs, t: usize, cfg: &Config) -> CmdResult<Report> {
    let b = build(args, cfg)?;
    let r = assmus_mattson(b.code(), t, cfg)?;
    let json = json!({
        "code": b.json(Some(r.d)),
        "am": {
            "t": r.t, "d": r.d, "d_dual": r.d_dual, "w": r.w, "w_dual": r.w_dual, "s": r.s,
            "applicable": r.applicable,
            "guaranteed_primal": r.guaranteed_primal,
            "guaranteed_dual": r.guaranteed_dual,
            "weights": weights_json(&r.distribution),
            "dual_weights": weights_json(&r.dual_distribution),
        },
        "budget": budget_json(cfg),
    });
    Ok(Report { json, csv: None, exit: EXIT_OK })
}

fn cmd_conjecture(m: u32, cfg: &Config) -> CmdResult<Report> {
    let r = conjecture_rm1(m, cfg)?;
    let json = json!({
        "conjecture": {
            "family": "rm1", "m": m, "lift": 2,
            "lambda_observed": r.certificate.lambda,
            "lambda_conjectured": big(&r.lambda_conjectured),
            "agree": r.agree,
            "design": certificate_json(&r.certificate),
        },
        "budget": budget_json(cfg),
    });
    let exit = if r.agree { EXIT_OK } else { EXIT_FALSE };
    Ok(Report { json, csv: Some(design_csv(&[&r.certificate])), exit })
}

fn cmd_table(args: CodeArgs, t: usize, cfg: &Config) -> CmdResult<Report> {
    let b = build(args, cfg)?;
    let w = b.code().weight_distribution(Strategy::Auto, cfg)?;
    let weights: Vec<usize> = w.nonzero_weights().into_iter().filter(|&i| i >= t).collect();
    let designs = supports_by_weight(b.code(), &weights, cfg)?;
    let mut rows = Vec::new();
    let mut certs = Vec::new();
    for (weight, (design, count)) in &designs {
        let c = verify_design(design, t, cfg)?;
        let mut row = certificate_json(&c);
        row["weight"] = json!(weight);
        row["codewords"] = big(count);
        rows.push(row);
        certs.push(c);
    }
    let json = json!({
        "code": b.json(w.min_distance()),
        "t": t,
        "rows": rows,
        "budget": budget_json(cfg),
    });
    let mut csv = String::from("weight,codewords,");
    let body = design_csv(&certs.iter().collect::<Vec<_>>());
    let mut lines = body.lines();
    csv += lines.next().unwrap_or_default();
    csv.push('\n');
    for ((weight, (_, count)), line) in designs.iter().zip(lines) {
        csv += &format!("{weight},{count},{line}\n");
    }
    Ok(Report { json, csv: Some(csv), exit: EXIT_OK })
}

/// `key = value` lines for a JSON value, nested keys joined with dots.
fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => *out += &format!("{prefix} = {s}\n"),
        other => *out += &format!("{prefix} = {other}\n"),
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => match &report.csv {
            Some(c) => c.clone(),
            None => {
                let mut flat = String::new();
                flatten("", &report.json, &mut flat);
                let mut s = String::from("key,value\n");
                for line in flat.lines() {
                    let (k, v) = line.split_once(" = ").unwrap_or((line, ""));
                    s += &format!("{k},\"{}\"\n", v.replace('"', "\"\""));
                }
                s
            }
        },
        Format::Text => {
            let mut s = String::new();
            flatten("", &report.json, &mut s);
            s
        }
    }
}

fn execute(cmd: Command) -> (CmdResult<Report>, Common) {
    macro_rules! with_cfg {
        ($common:expr, |$cfg:ident| $body:expr) => {{
            let common = $common;
            let result = match config(&common) {
                Ok($cfg) => $body,
                Err(e) => Err(e),
            };
            (result, common)
        }};
    }
    match cmd {
        Command::Field { q, lift, common } => with_cfg!(common, |cfg| cmd_field(q, lift, &cfg)),
        Command::Code { code, common } => with_cfg!(common, |cfg| cmd_code(code, &cfg)),
        Command::Weights { code, method, common } => with_cfg!(common, |cfg| cmd_weights(code, method, &cfg)),
        Command::Design { code, weight, t, common } => with_cfg!(common, |cfg| cmd_design(code, weight, t, &cfg)),
        Command::Am { code, t, common } => with_cfg!(common, |cfg| cmd_am(code, t, &cfg)),
        Command::Conjecture { which: Conjecture::Rm1, m, common } => {
            with_cfg!(common, |cfg| cmd_conjecture(m, &cfg))
        }
        Command::Table { code, t, common } => with_cfg!(common, |cfg| cmd_table(code, t, &cfg)),
    }
}

/// Runs one command line (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
    };
    let (result, common) = execute(cli.command);
    let report = match result {
        Ok(r) => r,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return code;
        }
    };
    let text = render(&report, common.format);
    match &common.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            if stdout.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
        }
    }
    report.exit
}
