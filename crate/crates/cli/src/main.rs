//! `convexmod`: evaluate and compare terms, run law suites, compute δ and
//! emit plot data for finitely generated convex sets.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use convexmod::distlaw::bool_elements;
use convexmod::json::{convex_from_json, set_weighting_from_json, vertices_csv, ToJson};
use convexmod::{
    check_appendix_a, check_naturality, check_pentagon, check_property, check_weak_law, delta_bruteforce,
    delta_hull, eval, parse, render_interval, render_polygon, ConvexSet, FinSupp, Interval, LawConfig, LawReport,
    Outcome, Semiring, Symbol, Term,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "convexmod", version, about = "Finitely generated convex sets over semirings")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Semiring of scalars: bool, qplus or nat.
    #[arg(long, global = true, default_value = "qplus")]
    semiring: Semiring,
    /// Comma-separated variable set; defaults to the variables in the input.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Vec<String>,
    /// Output format; `laws` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized suites; CONVEXMOD_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random instances per law.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Size of the base variable set in law suites.
    #[arg(long, global = true, default_value_t = 2)]
    xsize: usize,
    /// Largest weight enumerated over the naturals.
    #[arg(long = "value-bound", global = true, default_value_t = 2)]
    value_bound: u64,
    /// Input file: terms (one per line, `#` comments) for eval, a convex
    /// set for render, a weighting of sets for delta.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Dump every simplex tableau to stderr.
    #[arg(long = "trace-lp", global = true)]
    trace_lp: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Weakdist,
    Pentagon,
    Naturality,
    #[value(name = "appendixA")]
    AppendixA,
    /// The declared semiring properties.
    Properties,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate terms to convex sets and render them.
    Eval { terms: Vec<String> },
    /// Decide whether two terms denote the same set.
    Eq { left: String, right: String },
    /// Run a law suite and print one report per law.
    Laws {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Compute δ of a weighting of sets read from --file or stdin.
    Delta {
        /// Check the hull against the brute-force enumeration (bool only).
        #[arg(long)]
        compare_bruteforce: bool,
    },
    /// Emit the vertices of a term or of a convex set given in --file.
    Render { term: Option<String> },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<convexmod::Error> for Failure {
    fn from(e: convexmod::Error) -> Self {
        use convexmod::Error::*;
        let kind = match &e {
            Syntax { .. } => "syntax",
            UnboundVariable(_) => "unbound-variable",
            InvalidScalar { .. } => "invalid-scalar",
            Unsupported { .. } | NotSemifield(_) | NoDecisionProcedure { .. } => "unsupported",
            EnumerationTooLarge { .. } => "enumeration-too-large",
            WrongDimension { .. } | DimensionMismatch(_) | ShapeMismatch(_) => "shape",
            _ => "invalid-input",
        };
        Failure {
            code: 2,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            kind: "io",
            message: e.to_string(),
        }
    }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json_errors = cli.opts.format == Some(Format::Json);
    let mut out = String::new();
    let result = run(&cli, &mut out);
    std::io::stdout().write_all(out.as_bytes()).ok();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json_errors {
                eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Run {
    convexmod::exactlp::set_trace(cli.opts.trace_lp);
    let o = &cli.opts;
    match &cli.cmd {
        Cmd::Eval { terms } => cmd_eval(o, terms, out),
        Cmd::Eq { left, right } => cmd_eq(o, left, right, out),
        Cmd::Laws { suite } => cmd_laws(o, *suite, out),
        Cmd::Delta { compare_bruteforce } => cmd_delta(o, *compare_bruteforce, out),
        Cmd::Render { term } => cmd_render(o, term.as_deref(), out),
    }
}

fn seed(o: &Opts) -> Result<u64, Failure> {
    match std::env::var("CONVEXMOD_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("CONVEXMOD_SEED is not a 64-bit natural: {s}"))),
        Err(_) => Ok(o.seed),
    }
}

fn read_input(o: &Opts) -> Result<String, Failure> {
    match &o.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn term_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// The declared variables, or else those occurring in `terms`.
fn variables(o: &Opts, terms: &[&Term]) -> Vec<Symbol> {
    if !o.vars.is_empty() {
        let set: BTreeSet<Symbol> = o.vars.iter().map(|v| Symbol::new(v.trim())).collect();
        return set.into_iter().collect();
    }
    let set: BTreeSet<Symbol> = terms.iter().flat_map(|t| t.vars()).collect();
    set.into_iter().collect()
}

enum View {
    Interval(Interval),
    Polygon(Vec<FinSupp<Symbol>>),
    Generators(Vec<FinSupp<Symbol>>),
}

fn view(a: &ConvexSet<Symbol>, vars: &[Symbol]) -> Result<View, Failure> {
    Ok(match (a.semiring(), vars.len()) {
        (Semiring::QPlus, 1) => View::Interval(render_interval(a, vars)?),
        (Semiring::QPlus, 2) => View::Polygon(render_polygon(a, vars)?),
        _ => View::Generators(a.generators().to_vec()),
    })
}

fn view_json(v: &View, vars: &[Symbol]) -> Value {
    match v {
        View::Interval(i) => {
            let mut j = i.to_json();
            j["kind"] = json!("interval");
            j
        }
        View::Polygon(p) => json!({ "kind": "polygon", "vars": vars.to_json(), "vertices": p.to_json() }),
        View::Generators(g) => json!({ "kind": "generators", "vars": vars.to_json(), "generators": g.to_json() }),
    }
}

fn view_csv(v: &View, vars: &[Symbol]) -> String {
    match v {
        View::Interval(Interval::Empty) => vertices_csv(vars, &[]),
        View::Interval(Interval::Closed(lo, hi)) => {
            let mut rows = vec![lo.to_string()];
            if hi != lo {
                rows.push(hi.to_string());
            }
            format!("{}\n{}\n", vars[0], rows.join("\n"))
        }
        View::Polygon(p) | View::Generators(p) => vertices_csv(vars, p),
    }
}

fn coords(p: &FinSupp<Symbol>, vars: &[Symbol]) -> String {
    let c: Vec<String> = vars.iter().map(|v| p.get(v).to_string()).collect();
    format!("({})", c.join(", "))
}

fn view_text(v: &View, vars: &[Symbol]) -> String {
    match v {
        View::Interval(i) => format!("interval: {i}"),
        View::Polygon(p) => {
            let pts: Vec<String> = p.iter().map(|g| coords(g, vars)).collect();
            format!("polygon: {}", pts.join(" "))
        }
        View::Generators(g) => format!("generators: {}", generators_text(g)),
    }
}

fn generators_text(g: &[FinSupp<Symbol>]) -> String {
    if g.is_empty() {
        return "none (empty set)".into();
    }
    g.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(", ")
}

fn cmd_eval(o: &Opts, args: &[String], out: &mut String) -> Run {
    let mut texts: Vec<String> = args.to_vec();
    if o.file.is_some() {
        texts.extend(term_lines(&read_input(o)?));
    }
    if texts.is_empty() {
        return Err(Failure::usage("no terms given; pass them as arguments or with --file"));
    }
    let terms = texts
        .iter()
        .map(|t| parse(t, o.semiring))
        .collect::<Result<Vec<_>, _>>()?;
    let vars = variables(o, &terms.iter().collect::<Vec<_>>());
    for (i, t) in terms.iter().enumerate() {
        let a = eval(t, o.semiring, &vars)?;
        let v = view(&a, &vars)?;
        match o.format.unwrap_or(Format::Text) {
            Format::Json => {
                let mut j = view_json(&v, &vars);
                j["term"] = json!(t.to_string());
                j["set"] = a.to_json();
                out.push_str(&format!("{j}\n"));
            }
            Format::Csv => out.push_str(&view_csv(&v, &vars)),
            Format::Text => {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("term: {t}\n"));
                out.push_str(&format!("generators: {}\n", generators_text(a.generators())));
                if !matches!(v, View::Generators(_)) {
                    out.push_str(&format!("{}\n", view_text(&v, &vars)));
                }
            }
        }
    }
    Ok(0)
}

fn cmd_eq(o: &Opts, left: &str, right: &str, out: &mut String) -> Run {
    let l = parse(left, o.semiring)?;
    let r = parse(right, o.semiring)?;
    let vars = variables(o, &[&l, &r]);
    let a = eval(&l, o.semiring, &vars)?;
    let b = eval(&r, o.semiring, &vars)?;
    // a generator of one side outside the other separates them
    let mut witness = None;
    for (side, x, y) in [("left", &a, &b), ("right", &b, &a)] {
        for g in x.generators() {
            if witness.is_none() && !y.member(g)? {
                witness = Some((side, g.clone()));
            }
        }
    }
    let equal = witness.is_none();
    match o.format.unwrap_or(Format::Text) {
        Format::Json => {
            let mut j = json!({ "equal": equal, "left": a.to_json(), "right": b.to_json() });
            if let Some((side, g)) = &witness {
                j["witness"] = json!({ "in": side, "generator": g.to_json() });
            }
            out.push_str(&format!("{j}\n"));
        }
        Format::Csv => return Err(Failure::usage("eq has no csv output; use text or json")),
        Format::Text => match &witness {
            None => out.push_str("equal\n"),
            Some((side, g)) => {
                let other = if *side == "left" { "right" } else { "left" };
                out.push_str(&format!("unequal\nwitness: {g:?} is in the {side} set but not the {other}\n"));
            }
        },
    }
    Ok(if equal { 0 } else { 1 })
}

fn suite_reports(o: &Opts, suite: Suite) -> Result<Vec<LawReport>, Failure> {
    let cfg = LawConfig {
        semiring: o.semiring,
        xsize: o.xsize,
        trials: usize::try_from(o.trials).unwrap_or(usize::MAX),
        seed: seed(o)?,
        value_bound: o.value_bound,
    };
    Ok(match suite {
        Suite::Weakdist => check_weak_law(&cfg)?,
        Suite::Pentagon => check_pentagon(&cfg)?,
        Suite::Naturality => check_naturality(&cfg)?,
        Suite::AppendixA => check_appendix_a()?,
        Suite::Properties => o
            .semiring
            .declared_properties()
            .iter()
            .map(|&p| check_property(o.semiring, p, o.value_bound))
            .collect::<Result<_, _>>()?,
    })
}

fn cmd_laws(o: &Opts, suite: Suite, out: &mut String) -> Run {
    let reports = suite_reports(o, suite)?;
    match o.format.unwrap_or(Format::Json) {
        Format::Json => {
            for r in &reports {
                out.push_str(&r.to_json_line());
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("suite,law,semiring,instances,expected,verdict,met\n");
            for r in &reports {
                let verdict = if r.holds() { "holds" } else { "counterexample" };
                let expected = if matches!(r.expected, convexmod::Expectation::Holds) {
                    "holds"
                } else {
                    "counterexample"
                };
                out.push_str(&format!(
                    "{},{},{},{},{expected},{verdict},{}\n",
                    r.suite,
                    r.law,
                    r.semiring,
                    r.instances,
                    r.met()
                ));
            }
        }
        Format::Text => {
            for r in &reports {
                let status = if r.met() { "PASS" } else { "FAIL" };
                let what = match &r.outcome {
                    Outcome::Holds => format!("holds on {} instances", r.instances),
                    Outcome::Counterexample { input, .. } => {
                        format!("counterexample after {} instances at {input}", r.instances)
                    }
                };
                out.push_str(&format!("{status} {}/{} over {}: {what}\n", r.suite, r.law, r.semiring));
            }
        }
    }
    Ok(if reports.iter().all(LawReport::met) { 0 } else { 1 })
}

fn cmd_delta(o: &Opts, compare: bool, out: &mut String) -> Run {
    let text = read_input(o)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure {
        code: 2,
        kind: "invalid-input",
        message: format!("weighting is not valid JSON: {e}"),
    })?;
    let sr = o.semiring;
    let phi = set_weighting_from_json(sr, &v)?;
    let mut vars: BTreeSet<Symbol> = phi.support().flatten().cloned().collect();
    vars.extend(o.vars.iter().map(|v| Symbol::new(v.trim())));
    let vars: Vec<Symbol> = vars.into_iter().collect();
    let format = o.format.unwrap_or(Format::Text);

    if sr == Semiring::Nat {
        if compare {
            return Err(convexmod::Error::Unsupported {
                op: "delta --compare-bruteforce",
                semiring: sr,
                hint: "there is no hull form over nat; δ is the brute-force set itself",
            }
            .into());
        }
        let mut elems = delta_bruteforce(&phi, convexmod::distlaw::BRUTEFORCE_BOUND)?;
        elems.sort();
        elems.dedup();
        match format {
            Format::Json => out.push_str(&format!(
                "{}\n",
                json!({ "kind": "elements", "semiring": sr.to_string(), "elements": elems.to_json() })
            )),
            Format::Csv => out.push_str(&vertices_csv(&vars, &elems)),
            Format::Text => out.push_str(&format!("elements: {}\n", generators_text(&elems))),
        }
        return Ok(0);
    }

    let d = delta_hull(&phi)?;
    let mut agree = None;
    if compare {
        if sr != Semiring::Bool {
            return Err(convexmod::Error::Unsupported {
                op: "delta --compare-bruteforce",
                semiring: sr,
                hint: "brute force needs a finite witness space; use bool",
            }
            .into());
        }
        let by_hull = bool_elements(&d, &vars)?;
        let mut brute = delta_bruteforce(&phi, convexmod::distlaw::BRUTEFORCE_BOUND)?;
        brute.sort();
        brute.dedup();
        agree = Some((by_hull == brute, by_hull.len(), brute.len()));
    }
    match format {
        Format::Json => {
            let mut j = json!({ "kind": "generators", "set": d.to_json() });
            if let Some((ok, h, b)) = agree {
                j["bruteforce"] = json!({ "agree": ok, "hull_elements": h, "bruteforce_elements": b });
            }
            out.push_str(&format!("{j}\n"));
        }
        Format::Csv => out.push_str(&vertices_csv(&vars, d.generators())),
        Format::Text => {
            out.push_str(&format!("generators: {}\n", generators_text(d.generators())));
            if let Some((ok, h, b)) = agree {
                let verdict = if ok { "agree" } else { "disagree" };
                out.push_str(&format!("bruteforce: {verdict} ({h} elements from the hull, {b} by brute force)\n"));
            }
        }
    }
    Ok(match agree {
        Some((false, _, _)) => 1,
        _ => 0,
    })
}

fn cmd_render(o: &Opts, term: Option<&str>, out: &mut String) -> Run {
    let (a, vars) = match term {
        Some(text) => {
            let t = parse(text, o.semiring)?;
            let vars = variables(o, &[&t]);
            (eval(&t, o.semiring, &vars)?, vars)
        }
        None => {
            if o.file.is_none() {
                return Err(Failure::usage("give a term or a convex set with --file"));
            }
            let v: Value = serde_json::from_str(&read_input(o)?).map_err(|e| Failure {
                code: 2,
                kind: "invalid-input",
                message: format!("convex set is not valid JSON: {e}"),
            })?;
            let a = convex_from_json(&v)?;
            let vars: Vec<Symbol> = if o.vars.is_empty() {
                a.generators()
                    .iter()
                    .flat_map(|g| g.support().cloned())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            } else {
                variables(o, &[])
            };
            (a, vars)
        }
    };
    let v = view(&a, &vars)?;
    match o.format.unwrap_or(Format::Csv) {
        Format::Json => out.push_str(&format!("{}\n", view_json(&v, &vars))),
        Format::Csv => out.push_str(&view_csv(&v, &vars)),
        Format::Text => out.push_str(&format!("{}\n", view_text(&v, &vars))),
    }
    Ok(0)
}
