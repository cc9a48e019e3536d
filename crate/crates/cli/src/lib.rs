//! The `argsem` command line.
//!
//! [`run`] takes the full argument vector and two writers so it can be
//! driven from tests; the binary only forwards `std::env::args`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use argsem::af::{oracle, Enumerator, Extension, Semantics};
use argsem::frontend::{export_dot, parse_document, serialize_document, DotOptions, FrameworkSummary, Report};
use argsem::saf::{self, ClosureTrace, PrincipleSet};
use argsem::vaf::{self, ClassificationReport, Status, ValueOrder};
use argsem::{svaf, AttackStatus, Error, Framework};
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "argsem", version, about = "Argumentation framework toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a framework document.
    Check(Common),
    /// Enumerate extensions.
    Extensions(Common),
    /// Classify arguments as objectively, subjectively or not acceptable.
    Classify(Common),
    /// Show the chains of a two-valued framework.
    Chains(Common),
    /// Apply logical closure and attack principles.
    Close(Common),
    /// Decide argumentative consequence.
    Consequence(Common),
    /// Export the framework as DOT or JSON.
    Export(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Enumerate,
    Paths,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Preferred,
    Stable,
    Admissible,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::Preferred => Semantics::Preferred,
            SemanticsArg::Stable => Semantics::Stable,
            SemanticsArg::Admissible => Semantics::Admissible,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Framework document.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "preferred")]
    semantics: SemanticsArg,
    /// Value order, e.g. "D>C", with the fact first if there is one.
    #[arg(long)]
    order: Option<String>,
    #[arg(long, value_enum, default_value = "enumerate")]
    method: MethodArg,
    /// MAP, CAP or a comma-separated list such as "A.and,B.not".
    #[arg(long)]
    principles: Option<String>,
    /// Apply logical (per value) closure first.
    #[arg(long)]
    logical: bool,
    /// Comma-separated premise ids.
    #[arg(long, value_delimiter = ',')]
    premises: Vec<String>,
    #[arg(long)]
    goal: Option<String>,
    #[arg(long, conflicts_with = "subjective")]
    objective: bool,
    #[arg(long)]
    subjective: bool,
    /// Settle an edge, e.g. "x->y=absent"; principles run again afterwards.
    #[arg(long)]
    resolve: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cross-check against the brute-force reference semantics.
    #[arg(long)]
    oracle: bool,
    /// Write the resulting framework document to this path.
    #[arg(long)]
    save: Option<PathBuf>,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::UnsupportedShape(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a subcommand produced.
struct Outcome {
    text: String,
    results: Value,
    trace: Option<ClosureTrace>,
    /// Set when the command found a property failure.
    failed: bool,
}

impl Outcome {
    fn new(text: String, results: Value) -> Self {
        Outcome {
            text,
            results,
            trace: None,
            failed: false,
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(err, "{}\n{}", e.render(), accepted_flags(&args));
            return EXIT_USAGE;
        }
    };
    match execute(cli) {
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

/// Help text of the subcommand named in `args`, or of the whole tool.
fn accepted_flags(args: &[std::ffi::OsString]) -> String {
    let mut cmd = Cli::command();
    let named = args
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.find_subcommand(a).is_some())
        .map(str::to_string);
    match named {
        Some(name) => cmd.find_subcommand_mut(&name).unwrap().render_help().to_string(),
        None => cmd.render_help().to_string(),
    }
}

fn execute(cli: Cli) -> Result<(String, i32), Failure> {
    let (name, opts) = match &cli.command {
        Command::Check(c) => ("check", c),
        Command::Extensions(c) => ("extensions", c),
        Command::Classify(c) => ("classify", c),
        Command::Chains(c) => ("chains", c),
        Command::Close(c) => ("close", c),
        Command::Consequence(c) => ("consequence", c),
        Command::Export(c) => ("export", c),
    };
    if opts.format == Format::Dot && name != "export" && name != "close" {
        return Err(Failure::usage("--format dot is only available for `export` and `close`"));
    }
    let source = opts.file.display().to_string();
    let text = fs::read_to_string(&opts.file).map_err(|e| Failure::usage(format!("cannot read {source}: {e}")))?;
    let original = parse_document(&text).map_err(|e| Failure::usage(format!("{source}: {e}")))?;

    let default_principles = (name == "close").then(PrincipleSet::map);
    let (fw, trace) = prepare(&original, opts, default_principles)?;
    if let Some(path) = &opts.save {
        fs::write(path, serialize_document(&fw))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }

    let mut outcome = match name {
        "check" => check(&fw)?,
        "extensions" => extensions(&fw, opts)?,
        "classify" => classify(&fw, opts)?,
        "chains" => chains(&fw)?,
        "close" => close(&original, &fw, trace.as_ref())?,
        "consequence" => consequence(&fw, opts)?,
        _ => export(&fw)?,
    };
    outcome.trace = trace;
    let violations = outcome.trace.as_ref().map_or(0, |t| t.violations.len());
    let code = if outcome.failed || violations > 0 {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };

    let rendered = match opts.format {
        Format::Dot => {
            let constraints = outcome.trace.as_ref().map_or(&[][..], |t| &t.constraints[..]);
            export_dot(
                &fw,
                &DotOptions {
                    constraints,
                    ..DotOptions::default()
                },
            )
        }
        Format::Json => {
            let mut report = Report::new(name, FrameworkSummary::of(&fw, Some(&source)), outcome.results);
            if let Some(t) = outcome.trace {
                report = report.with_trace(t);
            }
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = outcome.text;
            if let Some(t) = &outcome.trace {
                if name != "close" && !t.violations.is_empty() {
                    writeln!(s, "{} violation(s) during closure", t.violations.len()).unwrap();
                }
            }
            s
        }
    };
    Ok((rendered, code))
}

fn parse_principles(text: &str) -> Result<PrincipleSet, Failure> {
    text.parse::<PrincipleSet>().map_err(Failure::from)
}

fn parse_resolution(text: &str) -> Result<(String, String, AttackStatus), Failure> {
    let bad = || Failure::usage(format!("--resolve expects `attacker->target=present|absent`, got `{text}`"));
    let (edge, status) = text.rsplit_once('=').ok_or_else(bad)?;
    let (a, b) = edge.split_once("->").ok_or_else(bad)?;
    let status = match status.trim().to_ascii_lowercase().as_str() {
        "present" => AttackStatus::Present,
        "absent" => AttackStatus::Absent,
        _ => return Err(bad()),
    };
    Ok((a.trim().to_string(), b.trim().to_string(), status))
}

/// Runs closure, principles and resolutions in that order.
fn principles_pass(fw: &Framework, ps: &PrincipleSet) -> Result<(Framework, ClosureTrace), Failure> {
    Ok(if fw.is_value_labelled() {
        svaf::apply_principles(fw, ps)?
    } else {
        saf::apply_principles(fw, ps, &saf::claims(fw))?
    })
}

fn prepare(
    fw: &Framework,
    opts: &Common,
    default_principles: Option<PrincipleSet>,
) -> Result<(Framework, Option<ClosureTrace>), Failure> {
    let mut fw = fw.clone();
    if opts.logical {
        fw = if fw.is_value_labelled() {
            svaf::close_logically(&fw)?
        } else {
            saf::close_logically(&fw, &saf::claims(&fw))?
        };
    }
    let ps = match &opts.principles {
        Some(p) => Some(parse_principles(p)?),
        None => default_principles,
    };
    let mut trace = None;
    if let Some(ps) = &ps {
        let (closed, t) = principles_pass(&fw, ps)?;
        fw = closed;
        trace = Some(t);
    }
    if !opts.resolve.is_empty() {
        for r in &opts.resolve {
            let (a, b, status) = parse_resolution(r)?;
            let (ia, ib) = (fw.index_of(&a)?, fw.index_of(&b)?);
            fw.set_status(ia, ib, status);
        }
        if let Some(ps) = &ps {
            let (closed, t) = principles_pass(&fw, ps)?;
            fw = closed;
            trace = Some(match trace {
                Some(first) => merge_traces(first, t),
                None => t,
            });
        }
    }
    Ok((fw, trace))
}

/// Derivations and violations of both runs; only the later run's
/// constraints are still open.
fn merge_traces(mut first: ClosureTrace, second: ClosureTrace) -> ClosureTrace {
    let offset = first.passes;
    first.passes += second.passes;
    first.derived.extend(second.derived.into_iter().map(|mut d| {
        d.pass += offset;
        d
    }));
    first.violations.extend(second.violations.into_iter().map(|mut v| {
        v.pass += offset;
        v
    }));
    first.constraints = second
        .constraints
        .into_iter()
        .map(|mut c| {
            c.pass += offset;
            c
        })
        .collect();
    first
}

fn ext_list(exts: &[Extension]) -> String {
    let parts: Vec<String> = exts.iter().map(Extension::to_string).collect();
    parts.join(" ")
}

fn id_set<T: std::fmt::Display>(ids: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = ids.into_iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn chosen_order(fw: &Framework, opts: &Common) -> Result<Option<ValueOrder>, Failure> {
    match &opts.order {
        Some(text) => Ok(Some(ValueOrder::parse(text, fw)?)),
        None if !fw.order_chains().is_empty() => {
            let rel = vaf::PreferenceRelation::from_chains(fw.order_chains());
            Ok(rel.as_total_order(fw))
        }
        None => Ok(None),
    }
}

fn check(fw: &Framework) -> Result<Outcome, Failure> {
    let mut problems: Vec<String> = Vec::new();
    if fw.is_value_labelled() && fw.is_claim_labelled() {
        problems.extend(svaf::validate(fw).into_iter().map(|e| e.to_string()));
    } else {
        problems.extend(svaf::validate_order_chains(fw.order_chains()).into_iter().map(|e| e.to_string()));
    }
    let mut missing = BTreeSet::new();
    if fw.is_claim_labelled() {
        if fw.is_value_labelled() {
            for (v, fs) in svaf::missing_by_value(fw) {
                missing.extend(fs.into_iter().map(|f| format!("({f},{v})")));
            }
        } else {
            let (_, fs) = saf::is_logically_closed(fw, &saf::claims(fw))?;
            missing.extend(fs.into_iter().map(|f| f.to_string()));
        }
    }
    let summary = FrameworkSummary::of(fw, None);
    let mut text = format!(
        "{:?} framework: {} arguments, {} attacks, {} non-attacks\n",
        summary.flavor, summary.arguments, summary.attacks, summary.non_attacks
    )
    .to_lowercase();
    if fw.is_claim_labelled() {
        if missing.is_empty() {
            text.push_str("logically closed\n");
        } else {
            writeln!(text, "not logically closed; missing {}", missing.iter().cloned().collect::<Vec<_>>().join(", ")).unwrap();
        }
    }
    for p in &problems {
        writeln!(text, "problem: {p}").unwrap();
    }
    if problems.is_empty() {
        text.push_str("ok\n");
    }
    let mut outcome = Outcome::new(
        text,
        json!({ "problems": problems, "missing_subformulae": missing, "ok": problems.is_empty() }),
    );
    outcome.failed = !problems.is_empty();
    Ok(outcome)
}

fn extensions(fw: &Framework, opts: &Common) -> Result<Outcome, Failure> {
    let semantics: Semantics = opts.semantics.into();
    let enumerator = Enumerator::default();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = false;
    let mut run_one = |graph: &Framework, label: Option<String>| -> Result<(), Failure> {
        let exts = enumerator.extensions(graph, semantics)?;
        let mut agrees = None;
        if opts.oracle {
            let reference = oracle::extensions(graph, semantics)?;
            agrees = Some(reference == exts);
            if reference != exts {
                failed = true;
            }
        }
        match &label {
            Some(l) => writeln!(text, "{l}: {}", ext_list(&exts)).unwrap(),
            None => writeln!(text, "{}", ext_list(&exts)).unwrap(),
        }
        if agrees == Some(false) {
            writeln!(text, "oracle disagrees").unwrap();
        }
        rows.push(json!({ "order": label, "extensions": exts, "oracle_agrees": agrees }));
        Ok(())
    };
    if fw.is_value_labelled() {
        let orders = match chosen_order(fw, opts)? {
            Some(o) => vec![o],
            None => vaf::enumerate_orders(fw),
        };
        for o in orders {
            run_one(&vaf::defeat_graph(fw, &o)?, Some(o.to_string()))?;
        }
    } else {
        run_one(fw, None)?;
    }
    let mut outcome = Outcome::new(text, json!({ "semantics": semantics, "runs": rows }));
    outcome.failed = failed;
    Ok(outcome)
}

/// Acceptance per argument computed by brute force on every defeat graph.
fn oracle_statuses(fw: &Framework, orders: &[ValueOrder]) -> Result<Vec<Status>, Failure> {
    let mut accepted: Vec<Vec<ValueOrder>> = vec![Vec::new(); fw.len()];
    for o in orders {
        let exts = oracle::preferred(&vaf::defeat_graph(fw, o)?)?;
        for (i, a) in fw.arguments().iter().enumerate() {
            if exts.iter().any(|e| e.contains(a.id.as_str())) {
                accepted[i].push(o.clone());
            }
        }
    }
    Ok(accepted
        .into_iter()
        .map(|w| {
            if w.is_empty() {
                Status::Indefensible
            } else if w.len() == orders.len() {
                Status::Objective
            } else {
                Status::Subjective(w)
            }
        })
        .collect())
}

fn classification_text(report: &ClassificationReport) -> String {
    let mut text = String::new();
    for a in &report.arguments {
        write!(text, "{} [{}] {}", a.id, a.value, a.status.label()).unwrap();
        if let Status::Subjective(w) = &a.status {
            write!(text, " under {}", w.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", ")).unwrap();
        }
        if let Some(p) = a.path {
            write!(text, " (path {p})").unwrap();
        }
        text.push('\n');
    }
    writeln!(text, "objective: {}", id_set(report.objective())).unwrap();
    for (w, ids) in report.subjective_groups() {
        let orders: Vec<String> = w.iter().map(|o| o.to_string()).collect();
        writeln!(text, "only under {}: {}", orders.join(", "), id_set(ids)).unwrap();
    }
    writeln!(text, "indefensible: {}", id_set(report.indefensible())).unwrap();
    text
}

fn classify(fw: &Framework, opts: &Common) -> Result<Outcome, Failure> {
    let report = match opts.method {
        MethodArg::Enumerate => vaf::classify_by_enumeration(fw)?,
        MethodArg::Paths => vaf::classify_by_paths(fw)?,
    };
    let mut text = classification_text(&report);
    let mut failed = false;
    let mut oracle_agrees = None;
    if opts.oracle {
        let reference = oracle_statuses(fw, &report.orders)?;
        let disagreements: Vec<String> = report
            .arguments
            .iter()
            .zip(&reference)
            .filter(|(a, r)| a.status != **r)
            .map(|(a, r)| format!("{}: {} vs oracle {}", a.id, a.status.label(), r.label()))
            .collect();
        if disagreements.is_empty() {
            text.push_str("oracle agrees\n");
        } else {
            failed = true;
            for d in &disagreements {
                writeln!(text, "oracle disagrees on {d}").unwrap();
            }
        }
        oracle_agrees = Some(disagreements.is_empty());
    }
    let mut results = serde_json::to_value(&report).expect("classification serializes");
    results["oracle_agrees"] = json!(oracle_agrees);
    let mut outcome = Outcome::new(text, results);
    outcome.failed = failed;
    Ok(outcome)
}

fn chains(fw: &Framework) -> Result<Outcome, Failure> {
    let analysis = vaf::extract_chains(fw)?;
    let mut text = String::new();
    for c in &analysis.chains {
        let members: Vec<&str> = c.members.iter().map(|m| m.as_str()).collect();
        writeln!(text, "{} [{}] length {}", members.join(" "), c.value, c.len()).unwrap();
    }
    let parity: serde_json::Map<String, Value> = fw
        .arguments()
        .iter()
        .zip(&analysis.parity)
        .map(|(a, p)| (a.id.0.clone(), json!(p)))
        .collect();
    let odd: Vec<&str> = fw
        .arguments()
        .iter()
        .zip(&analysis.parity)
        .filter(|(_, p)| **p == vaf::Parity::Odd)
        .map(|(a, _)| a.id.as_str())
        .collect();
    writeln!(text, "odd: {}", id_set(odd)).unwrap();
    Ok(Outcome::new(
        text,
        json!({ "chains": analysis.chains, "parity": parity }),
    ))
}

fn close(original: &Framework, fw: &Framework, trace: Option<&ClosureTrace>) -> Result<Outcome, Failure> {
    let mut text = String::new();
    let added: Vec<&argsem::Argument> = fw
        .arguments()
        .iter()
        .filter(|a| !original.contains(a.id.as_str()))
        .collect();
    for a in &added {
        write!(text, "added {}", a.id).unwrap();
        if let Some(c) = &a.claim {
            write!(text, " claim \"{c}\"").unwrap();
        }
        if let Some(v) = &a.value {
            write!(text, " value {v}").unwrap();
        }
        text.push('\n');
    }
    if let Some(t) = trace {
        for d in &t.derived {
            let arrow = if d.status == AttackStatus::Present { "->" } else { "-/->" };
            writeln!(text, "{} {} {arrow} {}", d.principle, d.attacker, d.target).unwrap();
        }
        for c in &t.constraints {
            let lits: Vec<String> = c.literals.iter().map(|l| l.to_string()).collect();
            writeln!(text, "{} open: {}", c.principle, lits.join(" OR ")).unwrap();
        }
        for v in &t.violations {
            writeln!(
                text,
                "violation: {} derives {} for {} -> {} but it is {}",
                v.principle, v.derived, v.attacker, v.target, v.established
            )
            .unwrap();
        }
        writeln!(
            text,
            "{} derived, {} open, {} violations after {} passes",
            t.derived.len(),
            t.constraints.len(),
            t.violations.len(),
            t.passes
        )
        .unwrap();
    }
    let added: Vec<Value> = added.iter().map(|a| json!(a)).collect();
    Ok(Outcome::new(
        text,
        json!({ "added": added, "document": serialize_document(fw) }),
    ))
}

fn consequence(fw: &Framework, opts: &Common) -> Result<Outcome, Failure> {
    let goal = opts
        .goal
        .as_deref()
        .ok_or_else(|| Failure::usage("`consequence` needs --goal"))?;
    let premises = &opts.premises;
    let mut text = String::new();
    let results;
    if fw.is_value_labelled() {
        let order = chosen_order(fw, opts)?;
        let orders = match &order {
            Some(o) => vec![o.clone()],
            None => vaf::enumerate_orders(fw),
        };
        let mut bases = serde_json::Map::new();
        for o in &orders {
            let base = svaf::consequence_base(fw, o, goal)?;
            writeln!(text, "base under {o}: {}", id_set(&base)).unwrap();
            bases.insert(o.to_string(), json!(base));
        }
        let union: BTreeSet<_> = bases
            .values()
            .flat_map(|v| v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()))
            .collect();
        if order.is_none() {
            writeln!(text, "objective base: {}", id_set(&union)).unwrap();
        }
        let mut verdict = Value::Null;
        if !premises.is_empty() {
            let (holds, witnesses, mode) = match (&order, opts.objective) {
                (Some(o), false) => (svaf::subjective_consequence(fw, o, premises, goal)?, vec![o.clone()], "order"),
                (_, true) => (svaf::objective_consequence(fw, premises, goal)?, Vec::new(), "objective"),
                (None, false) => {
                    let w = svaf::witness_orders(fw, premises, goal)?;
                    (!w.is_empty(), w, "subjective")
                }
            };
            let witnesses: Vec<String> = witnesses.iter().map(|o| o.to_string()).collect();
            let kind = match mode {
                "objective" => "an objective consequence".to_string(),
                "subjective" => "a subjective consequence".to_string(),
                _ => format!("a consequence under {}", witnesses[0]),
            };
            writeln!(
                text,
                "{goal} {} {kind} of {}",
                if holds { "is" } else { "is not" },
                id_set(premises)
            )
            .unwrap();
            if mode == "subjective" && holds {
                writeln!(text, "witness orders: {}", witnesses.join(", ")).unwrap();
            }
            verdict = json!({ "mode": mode, "holds": holds, "witnesses": witnesses });
        }
        results = json!({ "goal": goal, "premises": premises, "bases": bases, "objective_base": union, "verdict": verdict });
    } else {
        if premises.is_empty() {
            return Err(Failure::usage("`consequence` on a framework without values needs --premises"));
        }
        let holds = saf::argumentative_consequence(fw, premises, goal)?;
        writeln!(
            text,
            "{goal} {} a consequence of {}",
            if holds { "is" } else { "is not" },
            id_set(premises)
        )
        .unwrap();
        results = json!({ "goal": goal, "premises": premises, "verdict": { "holds": holds } });
    }
    Ok(Outcome::new(text, results))
}

fn export(fw: &Framework) -> Result<Outcome, Failure> {
    let edges: Vec<Value> = fw
        .statuses()
        .map(|((a, b), s)| json!({ "attacker": fw.id(a), "target": fw.id(b), "status": s }))
        .collect();
    Ok(Outcome::new(
        serialize_document(fw),
        json!({ "arguments": fw.arguments(), "edges": edges }),
    ))
}
