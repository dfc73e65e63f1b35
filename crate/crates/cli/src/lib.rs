//! The `au-kernel` command line, as a library so it can be driven in-process.
//!
//! Exit codes: 0 when the command succeeded or its claim was verified, 1
//! when a check found a violation (or could not be decided), 2 on usage,
//! parse or input errors. JSON output has sorted keys and prints every
//! natural number as a decimal string.

use std::ffi::OsString;
use std::path::Path;

use au_kernel::arith::{
    cantor_escape, decode, diagonal_fixed_point, diagonal_fixed_point_unchecked, encode, first_unary_codes,
    truth_undefinability_witness, truth_undefinability_witness_unchecked, verify_fixed_point, FixedPoint,
};
use au_kernel::exreg::{kernel_pair, parse_exmor, parse_exobj, quotient, relation_disagreement};
use au_kernel::laws;
use au_kernel::pred::{compose_mor, id_mor, image_factorize, mor_disagreement, parse_mor};
use au_kernel::sexpr::parse_term;
use au_kernel::skolem::{Evaluator, Nat, Term};
use au_kernel::tt::{self, Item, Judgment, Theory, TtError};
use au_kernel::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Seed variable for sampled law suites.
pub const SEED_VAR: &str = "AU_KERNEL_SEED";

#[derive(Parser, Debug)]
#[command(name = "au-kernel", version, about = "Primitive recursive kernel, predicates, quotients, Gödel coding and type theory")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a term on natural-number arguments.
    Eval {
        term: String,
        args: Vec<String>,
        /// Abort after this many evaluation steps.
        #[arg(long)]
        fuel: Option<u64>,
        /// Evaluate every library term by unfolding it.
        #[arg(long)]
        no_jets: bool,
    },
    /// Run the category, Boolean algebra, NNO, limit, coproduct, image and quotient law suites.
    Laws {
        #[arg(long)]
        window: u64,
        /// Run a single suite.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Split-epi/mono factorization of a predicate morphism `(mor dom cod carrier)`.
    Factorize {
        mor: String,
        #[arg(long)]
        window: u64,
    },
    /// Quotient of `(exobj (pred k t) (rel k chi))`, with its effectiveness check.
    Quotient {
        obj: String,
        #[arg(long)]
        window: u64,
    },
    /// Kernel pair of `(exmor dom cod (mor …))`.
    KernelPair {
        mor: String,
        #[arg(long)]
        window: u64,
    },
    /// Gödel code of a term.
    Encode { term: String },
    /// Term named by a code.
    Decode { code: String },
    /// Diagonal sentence for a transformer `ℕ → ℕ` and both sides of its fixed-point equation.
    Fixpoint {
        term: String,
        /// Check that the transformer is boolean on `0..=N` first.
        #[arg(long)]
        window: Option<u64>,
        /// Print the full codes.
        #[arg(long)]
        full: bool,
    },
    /// A sentence on which a candidate truth predicate is wrong.
    Tarski {
        term: String,
        #[arg(long)]
        window: Option<u64>,
        #[arg(long)]
        full: bool,
    },
    /// Diagonal escape from the first K unary codes.
    Cantor {
        #[arg(long)]
        first: usize,
    },
    /// Type theory.
    Tt {
        #[command(subcommand)]
        command: TtCommand,
    },
}

#[derive(Subcommand, Debug)]
enum TtCommand {
    /// Check every judgment of a file, admitting its declarations in order.
    Check {
        file: std::path::PathBuf,
        /// Print each derivation.
        #[arg(long)]
        derivations: bool,
    },
    /// Interpret every typing judgment of a file as a combinator term.
    Interp { file: std::path::PathBuf },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's result before formatting.
struct Report {
    code: i32,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { code: 0, text, json }
    }
}

/// A failed command: exit code and message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. }
            | Error::UnknownName(_)
            | Error::ArityMismatch { .. }
            | Error::IllFormed(_)
            | Error::DomainMismatch(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<TtError> for Failure {
    fn from(e: TtError) -> Failure {
        let code = if matches!(e, TtError::Syntax { .. }) { 2 } else { 1 };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn nat(text: &str) -> Result<Nat, Failure> {
    text.parse::<Nat>().map_err(|_| usage(format!("`{text}` is not a natural number")))
}

fn s(n: &Nat) -> Value {
    Value::String(n.to_string())
}

fn nats_json(v: &[Nat]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn nats_text(v: &[Nat]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
}

/// Run the command line on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let format = cli.format;
    // Deep terms are handled iteratively, but the type checker recurses.
    let result = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || execute(cli.command))
        .expect("spawn worker")
        .join()
        .unwrap_or_else(|_| Err(Failure { code: 1, message: "internal error".into() }));
    match (result, format) {
        (Ok(r), Format::Text) => Outcome { code: r.code, stdout: r.text, stderr: String::new() },
        (Ok(r), Format::Json) => Outcome { code: r.code, stdout: render_json(&r.json), stderr: String::new() },
        (Err(f), Format::Text) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
        (Err(f), Format::Json) => {
            Outcome { code: f.code, stdout: render_json(&json!({ "error": f.message })), stderr: String::new() }
        }
    }
}

fn render_json(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("values serialize");
    out.push('\n');
    out
}

fn execute(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Eval { term, args, fuel, no_jets } => eval(&term, &args, fuel, no_jets),
        Command::Laws { window, suite } => run_laws(window, suite.as_deref()),
        Command::Factorize { mor, window } => factorize(&mor, window),
        Command::Quotient { obj, window } => run_quotient(&obj, window),
        Command::KernelPair { mor, window } => run_kernel_pair(&mor, window),
        Command::Encode { term } => {
            let code = encode(&parse_term(&term)?);
            Ok(Report::ok(format!("{code}\n"), json!({ "code": s(&code) })))
        }
        Command::Decode { code } => {
            let t = decode(&nat(&code)?);
            Ok(Report::ok(
                format!("{t}\n"),
                json!({ "term": t.to_string(), "source": t.source(), "target": t.target() }),
            ))
        }
        Command::Fixpoint { term, window, full } => fixpoint(&term, window, full),
        Command::Tarski { term, window, full } => tarski(&term, window, full),
        Command::Cantor { first } => cantor(first),
        Command::Tt { command: TtCommand::Check { file, derivations } } => tt_check(&file, derivations),
        Command::Tt { command: TtCommand::Interp { file } } => tt_interp(&file),
    }
}

fn eval(term: &str, args: &[String], fuel: Option<u64>, no_jets: bool) -> Result<Report, Failure> {
    let t = parse_term(term)?;
    let args: Vec<Nat> = args.iter().map(|a| nat(a)).collect::<Result<_, _>>()?;
    if args.len() != t.source() {
        return Err(Error::ArityMismatch { expected: t.source(), found: args.len() }.into());
    }
    let mut ev = Evaluator::new();
    if no_jets {
        ev = ev.without_jets();
    }
    if let Some(f) = fuel {
        ev = ev.with_fuel(f);
    }
    let values = ev.eval(&t, &args)?;
    Ok(Report::ok(format!("{}\n", nats_text(&values)), json!({ "values": nats_json(&values) })))
}

fn seed() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_VAR}=`{v}` is not a 64-bit natural"))),
        Err(_) => Ok(0),
    }
}

fn run_laws(window: u64, suite: Option<&str>) -> Result<Report, Failure> {
    let seed = seed()?;
    let reports = match suite {
        Some(name) => {
            if !laws::SUITES.contains(&name) {
                return Err(usage(format!("unknown suite `{name}`; expected one of {}", laws::SUITES.join(", "))));
            }
            vec![laws::run_suite(name, window, seed)?]
        }
        None => laws::run_all(window, seed)?,
    };
    let passed = reports.iter().all(|r| r.passed());
    let mut text = format!("{:<10} {:>7} {:>10}  status\n", "suite", "checks", "violations");
    for r in &reports {
        text.push_str(&format!(
            "{:<10} {:>7} {:>10}  {}\n",
            r.suite,
            r.checks,
            r.violations.len(),
            if r.passed() { "pass" } else { "FAIL" }
        ));
        for v in &r.violations {
            text.push_str(&format!("    {v}\n"));
        }
    }
    text.push_str(&format!("window {window}, seed {seed}\n"));
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "suite": r.suite, "checks": r.checks, "violations": r.violations, "passed": r.passed() }))
        .collect();
    let json = json!({ "window": window, "seed": seed.to_string(), "suites": suites, "passed": passed });
    Ok(Report { code: if passed { 0 } else { 1 }, text, json })
}

fn factorize(mor: &str, window: u64) -> Result<Report, Failure> {
    let f = parse_mor(mor, window)?;
    let fact = image_factorize(&f, window)?;
    let me = mor_disagreement(&compose_mor(&fact.mono, &fact.epi, window)?, &f, window)?;
    let es = mor_disagreement(&compose_mor(&fact.epi, &fact.section, window)?, &id_mor(&fact.image, window)?, window)?;
    let law = |w: &Option<Vec<Nat>>| match w {
        None => "holds".to_string(),
        Some(v) => format!("fails at ({})", nats_text(v)),
    };
    let text = format!(
        "image   {}\nepi     {}\nmono    {}\nsection {}\nmono . epi = f: {}\nepi . section = id: {}\nwindow {window}\n",
        fact.image,
        fact.epi.carrier,
        fact.mono.carrier,
        fact.section.carrier,
        law(&me),
        law(&es)
    );
    let ok = me.is_none() && es.is_none();
    let json = json!({
        "image": fact.image.to_sexp_string(),
        "epi": fact.epi.to_sexp_string(),
        "mono": fact.mono.to_sexp_string(),
        "section": fact.section.to_sexp_string(),
        "mono_epi_is_f": me.is_none(),
        "epi_section_is_id": es.is_none(),
        "window": window,
    });
    Ok(Report { code: if ok { 0 } else { 1 }, text, json })
}

fn run_quotient(obj: &str, window: u64) -> Result<Report, Failure> {
    let parsed = parse_exobj(obj, window)?;
    let (obj, q) = quotient(&parsed.base, &parsed.rel.rel, window)?;
    let kp = kernel_pair(&q, window)?;
    let gap = relation_disagreement(&kp, &obj.rel, window)?;
    let effective = gap.is_none();
    let text = format!(
        "object   {}\nquotient {}\nkernel pair of the quotient map {}\nwindow {window}\n",
        obj,
        q.to_sexp_string(),
        match &gap {
            None => "agrees with the relation".to_string(),
            Some(w) => format!("differs from the relation at ({})", nats_text(w)),
        }
    );
    let json = json!({
        "object": obj.to_sexp_string(),
        "quotient_map": q.to_sexp_string(),
        "effective": effective,
        "window": window,
    });
    Ok(Report { code: if effective { 0 } else { 1 }, text, json })
}

fn run_kernel_pair(mor: &str, window: u64) -> Result<Report, Failure> {
    let f = parse_exmor(mor, window)?;
    let kp = kernel_pair(&f, window)?;
    let rel = format!("(rel {} {})", f.dom.base.arity(), kp.rel.raw());
    Ok(Report::ok(format!("{rel}\nwindow {window}\n"), json!({ "relation": rel, "window": window })))
}

fn fixpoint(term: &str, window: Option<u64>, full: bool) -> Result<Report, Failure> {
    let t = parse_term(term)?;
    let fp = match window {
        Some(w) => diagonal_fixed_point(&t, w)?,
        None => diagonal_fixed_point_unchecked(&t)?,
    };
    let check = verify_fixed_point(&t, &fp)?;
    let mut text = sentence_text(&fp, full);
    text.push_str(&format!("lhs={} rhs={}\n", check.lhs, check.rhs));
    let mut json = sentence_json(&fp, full);
    json["lhs"] = s(&check.lhs);
    json["rhs"] = s(&check.rhs);
    json["holds"] = Value::Bool(check.holds());
    Ok(Report { code: if check.holds() { 0 } else { 1 }, text, json })
}

fn sentence_text(fp: &FixedPoint, full: bool) -> String {
    let mut text = format!(
        "G = (comp (code d) numeral(d)), d = code of T . subst . diag\nd: {} bits\nG: {} bits\n",
        fp.formula_code.bits(),
        fp.sentence.bits()
    );
    if full {
        text.push_str(&format!("d = {}\nG = {}\n", fp.formula_code, fp.sentence));
    }
    text
}

fn sentence_json(fp: &FixedPoint, full: bool) -> Value {
    let mut json = json!({
        "formula_code_bits": fp.formula_code.bits(),
        "sentence_bits": fp.sentence.bits(),
    });
    if full {
        json["formula_code"] = s(&fp.formula_code);
        json["sentence"] = s(&fp.sentence);
    }
    json
}

fn tarski(term: &str, window: Option<u64>, full: bool) -> Result<Report, Failure> {
    let tr = parse_term(term)?;
    let w = match window {
        Some(b) => truth_undefinability_witness(&tr, b)?,
        None => truth_undefinability_witness_unchecked(&tr)?,
    };
    let wrong = w.claimed != w.actual;
    let mut text = sentence_text(&w.fixed_point, full);
    text.push_str(&format!(
        "Tr(G)={} value(G)={}\n{}\n",
        w.claimed,
        w.actual,
        if wrong { "the candidate misjudges G" } else { "the candidate agrees with G" }
    ));
    let mut json = sentence_json(&w.fixed_point, full);
    json["claimed"] = s(&w.claimed);
    json["actual"] = s(&w.actual);
    json["misjudged"] = Value::Bool(wrong);
    Ok(Report { code: if wrong { 0 } else { 1 }, text, json })
}

fn cantor(first: usize) -> Result<Report, Failure> {
    let codes = first_unary_codes(first);
    let rows = cantor_escape(&codes)?;
    let escapes = rows.iter().all(|r| r.row_value != r.diagonal);
    let mut text = format!("{:>5} {:>12} {:>8} {:>8}\n", "i", "code", "row_i(i)", "d_i");
    for r in &rows {
        text.push_str(&format!("{:>5} {:>12} {:>8} {:>8}\n", r.index, r.code, r.row_value, r.diagonal));
    }
    text.push_str(if escapes { "the diagonal differs from every row\n" } else { "the diagonal meets a row\n" });
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "index": r.index, "code": s(&r.code), "row_value": s(&r.row_value), "diagonal": s(&r.diagonal) }))
        .collect();
    Ok(Report { code: if escapes { 0 } else { 1 }, text, json: json!({ "rows": json_rows, "escapes": escapes }) })
}

fn read_document(path: &Path) -> Result<Vec<(usize, Item)>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(tt::parse_document(&text)?)
}

fn tt_check(path: &Path, derivations: bool) -> Result<Report, Failure> {
    let items = read_document(path)?;
    let mut theory = Theory::empty();
    let mut text = String::new();
    let mut results = Vec::new();
    let (mut accepted, mut rejected) = (0usize, 0usize);
    for (line, item) in items {
        let (kind, shown, outcome) = match item {
            Item::Decl(d) => {
                let shown = d.to_string();
                let r = theory.extend(d).map(|t| {
                    theory = t;
                    None
                });
                ("declaration", shown, r)
            }
            Item::Judgment(j) => {
                let shown = j.to_string();
                let r = tt::check(&j, &theory).and_then(|d| {
                    tt::validate(&d, &theory)?;
                    Ok(Some(d))
                });
                ("judgment", shown, r)
            }
        };
        let (verdict, message) = match &outcome {
            Ok(Some(d)) => ("accepted", format!("{} rule instances", d.size())),
            Ok(None) => ("accepted", String::new()),
            Err(TtError::RewriteBudgetExceeded(_)) => ("undecided", outcome.as_ref().err().map(|e| e.to_string()).unwrap_or_default()),
            Err(e) => ("rejected", e.to_string()),
        };
        if verdict == "accepted" {
            accepted += 1;
        } else {
            rejected += 1;
        }
        text.push_str(&format!("line {line}: {verdict}: {shown}"));
        if !message.is_empty() {
            text.push_str(&format!("\n    {message}"));
        }
        text.push('\n');
        if derivations {
            if let Ok(Some(d)) = &outcome {
                for l in d.render().lines() {
                    text.push_str(&format!("    {l}\n"));
                }
            }
        }
        results.push(json!({ "line": line, "kind": kind, "text": shown, "verdict": verdict, "message": message }));
    }
    text.push_str(&format!("{accepted} accepted, {rejected} not accepted\n"));
    let json = json!({ "results": results, "accepted": accepted, "rejected": rejected });
    Ok(Report { code: if rejected == 0 { 0 } else { 1 }, text, json })
}

fn tt_interp(path: &Path) -> Result<Report, Failure> {
    let items = read_document(path)?;
    let mut theory = Theory::empty();
    let mut text = String::new();
    let mut results = Vec::new();
    let mut failures = 0usize;
    for (line, item) in items {
        match item {
            Item::Decl(d) => match theory.extend(d) {
                Ok(t) => theory = t,
                Err(e) => {
                    failures += 1;
                    text.push_str(&format!("line {line}: {e}\n"));
                    results.push(json!({ "line": line, "error": e.to_string() }));
                }
            },
            Item::Judgment(j) if !matches!(j, Judgment::Term(..)) => {
                text.push_str(&format!("line {line}: skipped: {j}\n"));
                results.push(json!({ "line": line, "skipped": j.to_string() }));
            }
            Item::Judgment(j) => match tt::interpret(&j, &theory) {
                Ok(t) => {
                    let value = closed_value(&t)?;
                    text.push_str(&format!("line {line}: {t}"));
                    if let Some(v) = &value {
                        text.push_str(&format!("\n    = {}", nats_text(v)));
                    }
                    text.push('\n');
                    let mut entry = json!({ "line": line, "term": t.to_string(), "source": t.source(), "target": t.target() });
                    if let Some(v) = value {
                        entry["value"] = nats_json(&v);
                    }
                    results.push(entry);
                }
                Err(e) => {
                    failures += 1;
                    text.push_str(&format!("line {line}: {e}\n"));
                    results.push(json!({ "line": line, "error": e.to_string() }));
                }
            },
        }
    }
    Ok(Report { code: if failures == 0 { 0 } else { 1 }, text, json: json!({ "results": results }) })
}

fn closed_value(t: &Term) -> Result<Option<Vec<Nat>>, Failure> {
    if t.source() != 0 {
        return Ok(None);
    }
    Ok(Some(Evaluator::new().eval(t, &[])?))
}
