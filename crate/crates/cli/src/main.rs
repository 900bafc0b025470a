//! `amalgam`: normal forms, Nielsen reduction and subgroup classification
//! from the command line.
//!
//! Exit status is 0 on success, 1 on domain or input errors and 2 when a
//! step or relator budget runs out.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use amalgam::batch;
use amalgam::classify::{
    check_assumptions, classify_subgroup, example_identities, example_tuple, format_relator, ClassifyConfig,
    MalnormalCheck,
};
use amalgam::nielsen::{reduce_tuple_traced, TraceStep};
use amalgam::text::{parse_document, parse_presentation, parse_word_at, parse_word_lines};
use amalgam::{
    example_group, preorder_key, preorder_less, selftest, AmalgamPresentation, Classification, Error, GeneratingTuple,
    GroupWord, Order, Outcome, ReductionConfig, ReductionOutcome, Structure,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const SCHEMA: &str = "amalgam-cli/1";

#[derive(Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Computations in cyclically amalgamated free products of cyclic groups"
)]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Presentation file. Defaults to the built-in example group.
    #[arg(long, global = true)]
    presentation: Option<PathBuf>,
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit one JSON record per accepted Nielsen move.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    step_budget: u64,
    /// Letter budget for relator searches during classification.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    relator_budget: u64,
    /// Power bound of the malnormality check.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    malnormal_bound: u64,
    /// Worker threads for independent tuples.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced form `h_1 ... h_m u^k` of each word.
    Reduce(Words),
    /// Symmetric normal form of each word.
    Snf(Words),
    /// Length lambda of each word.
    Lambda(Words),
    /// Whether two words are equal in the group.
    Equal(Words),
    /// Preorder keys of two words and how they compare.
    Compare(Words),
    /// Nielsen-reduce each tuple and print the move log and certificate.
    NielsenReduce(Words),
    /// Classify the subgroup generated by each tuple.
    Classify(Words),
    /// Check the standing assumptions on the presentation.
    CheckAssumptions,
    /// Check the six identities showing that the example tuple generates
    /// the example group.
    #[command(alias = "verify-paper-example")]
    VerifyExample,
    /// Seeded end-to-end self test.
    Selftest,
}

#[derive(Args)]
struct Words {
    /// Words such as "a1 a4^-1"; a tuple for the tuple commands.
    words: Vec<String>,
    /// File with one word per line, or `gen:` blocks for tuple commands;
    /// `-` reads standard input.
    #[arg(long, short)]
    input: Option<PathBuf>,
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Report {
    text: String,
    json: Value,
    status: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, status: 0 }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn presentation(opts: &Options) -> Result<AmalgamPresentation, Failure> {
    match &opts.presentation {
        Some(p) => parse_presentation(&read(p)?).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(example_group()),
    }
}

/// Positional words (argument `k` reported as line `k`), else the input file.
fn words(g: &AmalgamPresentation, w: &Words) -> Result<Vec<GroupWord>, Failure> {
    if w.words.is_empty() {
        return match &w.input {
            Some(p) => Ok(parse_word_lines(&read(p)?, g)?),
            None => Ok(Vec::new()),
        };
    }
    w.words
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let raw = parse_word_at(s, k + 1, 1)?;
            Ok(g.word_from_raw(&raw)?)
        })
        .collect()
}

fn tuples(g: &AmalgamPresentation, w: &Words) -> Result<(AmalgamPresentation, Vec<GeneratingTuple>), Failure> {
    if w.words.is_empty() {
        if let Some(p) = &w.input {
            let doc = parse_document(&read(p)?, Some(g))?;
            return Ok((doc.presentation, doc.tuples));
        }
    }
    Ok((g.clone(), vec![GeneratingTuple::new(words(g, w)?)]))
}

fn exactly_two(ws: Vec<GroupWord>) -> Result<(GroupWord, GroupWord), Failure> {
    match <[GroupWord; 2]>::try_from(ws) {
        Ok([a, b]) => Ok((a, b)),
        Err(ws) => Err(Failure::Input(format!("expected two words, got {}", ws.len()))),
    }
}

fn per_word(
    g: &AmalgamPresentation,
    w: &Words,
    name: &str,
    f: impl Fn(&GroupWord) -> (String, Value),
) -> Result<Report, Failure> {
    let ws = words(g, w)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for x in &ws {
        let (t, v) = f(x);
        text.push_str(&format!("{x}\n  {name}: {t}\n"));
        rows.push(json!({ "word": x.to_string(), name: v }));
    }
    Ok(Report::ok(text, Value::Array(rows)))
}

fn order_name(o: &Order) -> String {
    match o {
        Order::Finite(e) => format!("Z/{e}"),
        Order::Infinite => "Z".into(),
    }
}

fn describe(s: &Structure) -> String {
    let basis = |b: &[GroupWord]| b.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ; ");
    let product = |o: &[Order]| o.iter().map(order_name).collect::<Vec<_>>().join(" * ");
    match s {
        Structure::FreeProductOfCyclics {
            orders,
            basis: b,
            containment,
        } => {
            let mut out = format!("free product {}\n  basis: {}", product(orders), basis(b));
            if let Some((side, c)) = containment {
                out.push_str(&format!("\n  inside c^-1 {side} c with c = {c}"));
            }
            out
        }
        Structure::OneRelatorQuotient {
            orders,
            basis: b,
            relator,
            ..
        } => format!(
            "quotient of {} by the relator {}\n  basis: {}",
            product(orders),
            format_relator(relator),
            basis(b)
        ),
        Structure::FactorConjugate { side, conjugator } => {
            format!("inside c^-1 {side} c with c = {conjugator}")
        }
        Structure::RankDrop { dropped, inner, .. } => {
            format!("x{} reduces to 1\n  {}", dropped + 1, describe(&inner.structure))
        }
        Structure::Incomplete { reason, .. } => format!("incomplete: {reason}"),
    }
}

fn describe_outcome(out: &ReductionOutcome) -> String {
    match &out.outcome {
        Outcome::TrivialElement { index } => format!("trivial element x{}", index + 1),
        Outcome::FreeStyle => "no shortening move applies and no factor pinch exists".into(),
        Outcome::FactorPinch(c) => {
            let idx = c
                .indices
                .iter()
                .map(|i| format!("x{}", i + 1))
                .collect::<Vec<_>>()
                .join(", ");
            format!(
                "factor pinch: {idx} lie in c^-1 {} c with c = {}; {} is conjugate to u^{}",
                c.side,
                c.conjugator,
                format_relator(&c.product),
                c.power
            )
        }
    }
}

fn trace_record(t: usize, s: &TraceStep) -> Value {
    json!({
        "tuple": t,
        "step": s.step,
        "move": s.mv.to_string(),
        "keys": s.keys.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
    })
}

fn nielsen(opts: &Options, g: &AmalgamPresentation, w: &Words) -> Result<Report, Failure> {
    let (g, ts) = tuples(g, w)?;
    let config = ReductionConfig {
        step_budget: opts.step_budget as usize,
        ..ReductionConfig::default()
    };
    let results = batch::map_with_jobs(&ts, opts.jobs as usize, |k, t| {
        let mut steps = Vec::new();
        let out = reduce_tuple_traced(&g, t, &config, |s| steps.push(trace_record(k, s)));
        (out, steps)
    });
    let mut text = String::new();
    let mut rows = Vec::new();
    for (k, (out, steps)) in results.into_iter().enumerate() {
        let out = out?;
        if ts.len() > 1 {
            text.push_str(&format!("tuple {}\n", k + 1));
        }
        if opts.trace && !opts.json {
            for s in &steps {
                text.push_str(&format!("trace {s}\n"));
            }
        }
        for m in &out.moves {
            text.push_str(&format!("{m}\n"));
        }
        for (i, x) in out.final_tuple.elements.iter().enumerate() {
            text.push_str(&format!("x{} = {x}\n", i + 1));
        }
        text.push_str(&format!("outcome: {}\n", describe_outcome(&out)));
        let mut row =
            json!({ "moves": out.moves.iter().map(|m| m.to_string()).collect::<Vec<_>>(), "certificate": out });
        if opts.trace {
            row["trace"] = Value::Array(steps);
        }
        rows.push(row);
    }
    Ok(Report::ok(text, Value::Array(rows)))
}

fn classify(opts: &Options, g: &AmalgamPresentation, w: &Words) -> Result<Report, Failure> {
    let (g, ts) = tuples(g, w)?;
    let config = ClassifyConfig {
        reduction: ReductionConfig {
            step_budget: opts.step_budget as usize,
            ..ReductionConfig::default()
        },
        relator_budget: opts.relator_budget as usize,
        malnormal_bound: opts.malnormal_bound as usize,
        seed: opts.seed,
        ..ClassifyConfig::default()
    };
    let results: Vec<Result<Classification, Error>> =
        batch::map_with_jobs(&ts, opts.jobs as usize, |_, t| classify_subgroup(&g, t, &config));
    let mut text = format!("seed {}\n", opts.seed);
    let mut rows = Vec::new();
    let mut status = 0;
    for (k, (t, c)) in ts.iter().zip(results).enumerate() {
        let c = c?;
        if c.budget_exhausted() {
            status = 2;
        }
        let gens = t.elements.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ; ");
        text.push_str(&format!("tuple {}: {gens}\n  {}\n", k + 1, describe(&c.structure)));
        if let Some(note) = &c.caveat {
            text.push_str(&format!("  note: {note}\n"));
        }
        rows.push(serde_json::to_value(&c).expect("serializable"));
    }
    Ok(Report {
        text,
        json: Value::Array(rows),
        status,
    })
}

fn assumptions(opts: &Options, g: &AmalgamPresentation) -> Report {
    let r = check_assumptions(g, opts.malnormal_bound as usize);
    let power = |p: Option<u64>| p.map_or("no".into(), |k| format!("yes, exponent {k}"));
    let malnormal = match &r.malnormal {
        MalnormalCheck::NoViolationUpTo(b) => {
            format!("no violation with conjugators of syllable length <= {b} and |k| <= {b}")
        }
        MalnormalCheck::ViolationFound { side, h, k, k_prime } => {
            format!("violated: h = {h} in {side} conjugates u^{k} to u^{k_prime}")
        }
    };
    let text = format!(
        "u v involves all generators: {}\nfactor ranks: {} {}\nu proper power: {}\nv proper power: {}\nmalnormality: {malnormal}\n{}\n",
        r.involves_all_generators,
        r.factor_ranks.0,
        r.factor_ranks.1,
        power(r.u_proper_power),
        power(r.v_proper_power),
        if r.is_clean() { "PASS" } else { "FAIL" }
    );
    Report {
        text,
        status: if r.is_clean() { 0 } else { 1 },
        json: serde_json::to_value(&r).expect("serializable"),
    }
}

fn verify_example() -> Report {
    let g = example_group();
    let checks = example_identities(&g, &example_tuple(&g));
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!(
            "{} {} {}\n",
            if c.holds { "PASS" } else { "FAIL" },
            c.label,
            c.statement
        ));
    }
    let all = checks.iter().all(|c| c.holds);
    text.push_str(if all { "H = G\n" } else { "H = G not established\n" });
    Report {
        text,
        status: if all { 0 } else { 1 },
        json: json!({ "identities": checks, "generates_g": all }),
    }
}

fn run_selftest(opts: &Options) -> Report {
    let r = selftest::run(opts.seed);
    let mut text = format!("selftest seed {}\n", r.seed);
    for s in &r.sections {
        text.push_str(&format!(
            "{} {}: {} cases, {} failures\n",
            if s.failures == 0 { "PASS" } else { "FAIL" },
            s.name,
            s.cases,
            s.failures
        ));
        for d in &s.details {
            text.push_str(&format!("  {d}\n"));
        }
    }
    Report {
        text,
        status: if r.passed() { 0 } else { 1 },
        json: serde_json::to_value(&r).expect("serializable"),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let opts = &cli.opts;
    let g = presentation(opts);
    match &cli.command {
        Command::Reduce(w) => {
            let g = g?;
            per_word(&g, w, "reduced", |x| {
                let rf = g.reduced_form(x);
                (rf.to_string(), serde_json::to_value(&rf).expect("serializable"))
            })
        }
        Command::Snf(w) => {
            let g = g?;
            per_word(&g, w, "snf", |x| {
                let snf = g.symmetric_form(x);
                (snf.to_string(), serde_json::to_value(&snf).expect("serializable"))
            })
        }
        Command::Lambda(w) => {
            let g = g?;
            per_word(&g, w, "lambda", |x| {
                let l = g.lambda(x);
                (l.to_string(), json!(l))
            })
        }
        Command::Equal(w) => {
            let g = g?;
            let (a, b) = exactly_two(words(&g, w)?)?;
            let eq = g.equal(&a, &b);
            Ok(Report::ok(format!("equal: {eq}\n"), json!({ "equal": eq })))
        }
        Command::Compare(w) => {
            let g = g?;
            let (a, b) = exactly_two(words(&g, w)?)?;
            let (ka, kb) = (preorder_key(&g, &a), preorder_key(&g, &b));
            let (ab, ba) = (preorder_less(&g, &a, &b), preorder_less(&g, &b, &a));
            Ok(Report::ok(
                format!("x: {ka}\ny: {kb}\nx <= y: {ab}\ny <= x: {ba}\n"),
                json!({ "x": ka.to_string(), "y": kb.to_string(), "x_le_y": ab, "y_le_x": ba }),
            ))
        }
        Command::NielsenReduce(w) => nielsen(opts, &g?, w),
        Command::Classify(w) => classify(opts, &g?, w),
        Command::CheckAssumptions => Ok(assumptions(opts, &g?)),
        Command::VerifyExample => Ok(verify_example()),
        Command::Selftest => Ok(run_selftest(opts)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.opts.json {
                let doc = json!({
                    "schema": SCHEMA,
                    "command": command_name(&cli.command),
                    "seed": cli.opts.seed,
                    "result": r.json,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(r.status)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::StepBudgetExceeded(_)) {
                2
            } else {
                1
            })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Reduce(_) => "reduce",
        Command::Snf(_) => "snf",
        Command::Lambda(_) => "lambda",
        Command::Equal(_) => "equal",
        Command::Compare(_) => "compare",
        Command::NielsenReduce(_) => "nielsen-reduce",
        Command::Classify(_) => "classify",
        Command::CheckAssumptions => "check-assumptions",
        Command::VerifyExample => "verify-example",
        Command::Selftest => "selftest",
    }
}
