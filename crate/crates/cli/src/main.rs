use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use dla_core::catalog::{place_alternative, place_on_graph, AlgebraLabel, CatalogError, GeneratorSet};
use dla_core::classifier::{classify_with, ClassifyError, ClassifyOptions};
use dla_core::closure::{lie_closure, ClosureError, ClosureOptions, DEFAULT_LIMIT};
use dla_core::frustration::{FrustrationError, FrustrationGraph, DEFAULT_SEARCH_CAP};
use dla_core::graph::{GraphError, InteractionGraph};
use dla_core::involution::{make_theta, upper_bound_dim, InvolutionError};
use dla_core::pauli::{set_max_qubits, PauliError, PauliString};
use dla_core::verify::{self, Status, Suite, VerifyOptions};

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  a verification check failed
  2  invalid input (graph file, label, Pauli string, arguments)
  3  classification outside the closed-form scope (rerun with --oracle)
  4  closure or search limit exceeded
  5  other error";

#[derive(Parser, Debug)]
#[command(name = "dla", version, about = "Dynamical Lie algebras of Pauli interactions on graphs", after_help = EXIT_CODES)]
struct Cli {
    /// Emit JSON instead of the plain-text table.
    #[arg(long, global = true)]
    json: bool,
    /// Wrap the JSON result in a run report with the echoed inputs and timing.
    #[arg(long, global = true)]
    report: bool,
    /// Maximum number of qubits accepted anywhere.
    #[arg(long, global = true, env = "DLA_MAX_N")]
    max_qubits: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Predict the algebra structure on a graph.
    Classify(ClassifyArgs),
    /// Compute the Lie closure by brute force.
    Close(CloseArgs),
    /// Frustration graph of a generator set.
    #[command(subcommand)]
    Frustration(FrustrationCommand),
    /// Compare the involution fixed set on K_n with the K_{l,m} closure.
    Involution(InvolutionArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Serialize)]
struct GraphArgs {
    /// Graph file (edge list or JSON) or shortcut: K:5, Kb:2,3, L:4, C:6, Sigma, Omega.
    #[arg(long)]
    graph: String,
    /// Algebra label, a0..a22 or b0..b3.
    #[arg(long)]
    algebra: AlgebraLabel,
    /// Use the index-th alternative generator set of the label.
    #[arg(long)]
    alternative: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: GraphArgs,
    /// Fall back to the closure oracle outside the closed-form range.
    #[arg(long)]
    oracle: bool,
    /// Basis-size limit for the oracle.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Args, Debug, Serialize)]
struct CloseArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: GraphArgs,
    /// Include the basis strings in the output.
    #[arg(long)]
    dump_basis: bool,
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum FrustrationCommand {
    /// Emit the anticommutation graph of the placed generators.
    Build(GraphArgs),
    /// Decide membership of a Pauli string by colouring reachability.
    Member(MemberArgs),
}

#[derive(Args, Debug, Serialize)]
struct MemberArgs {
    #[command(flatten)]
    #[serde(flatten)]
    target: GraphArgs,
    /// Pauli string, e.g. XIIYI.
    #[arg(long)]
    pauli: String,
    /// Largest generator count searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    cap: usize,
}

#[derive(Args, Debug, Serialize)]
struct InvolutionArgs {
    #[arg(long)]
    l: usize,
    #[arg(long)]
    m: usize,
    /// a4 or a14.
    #[arg(long)]
    algebra: AlgebraLabel,
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    limit: usize,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    /// theorem1, appendixB, frustration, equivalence, involution or pauli.
    suite: Suite,
    /// Largest vertex count swept.
    #[arg(long)]
    max_n: Option<usize>,
    /// Random cases for the pauli suite.
    #[arg(long, default_value_t = 10_000)]
    cases: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

/// A classification that needs the oracle flag.
#[derive(Debug)]
struct OutOfScope(String);

impl std::fmt::Display for OutOfScope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} is outside the closed-form scope; rerun with --oracle", self.0)
    }
}

impl std::error::Error for OutOfScope {}

#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

struct Output {
    result: Value,
    text: String,
    ok: bool,
}

fn load_graph(spec: &str) -> anyhow::Result<InteractionGraph> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| InputError(format!("cannot read {spec}: {e}")))?;
        Ok(InteractionGraph::parse(&text).with_context(|| format!("parsing {spec}"))?)
    } else {
        InteractionGraph::from_shortcut(spec)
            .map_err(|_| InputError(format!("{spec:?} is neither a readable file nor a graph shortcut")).into())
    }
}

fn generators(args: &GraphArgs) -> anyhow::Result<GeneratorSet> {
    let g = load_graph(&args.graph)?;
    Ok(match args.alternative {
        Some(i) => place_alternative(args.algebra, i, &g)?,
        None => place_on_graph(args.algebra, &g)?,
    })
}

fn cmd_classify(args: &ClassifyArgs) -> anyhow::Result<Output> {
    let g = load_graph(&args.target.graph)?;
    let opts = ClassifyOptions { oracle: args.oracle, closure: ClosureOptions::default().with_limit(args.limit) };
    let c = classify_with(&g, args.target.algebra, &opts)?;
    if !c.is_in_scope() {
        return Err(OutOfScope(format!("{} on {}", args.target.algebra, args.target.graph)).into());
    }
    let bip = c.bipartite.map_or("no".to_string(), |(l, m)| format!("sides {l},{m}"));
    let text = format!(
        "algebra    {}\nvertices   {}\nedges      {}\nconnected  {}\nbipartite  {}\nscope      {}\nstructure  {}\ndimension  {}\n",
        c.algebra,
        c.n,
        c.edges,
        c.connected,
        bip,
        c.scope,
        c.structure(),
        c.total_dim
    );
    Ok(Output { result: c.to_json(), text, ok: true })
}

fn cmd_close(args: &CloseArgs) -> anyhow::Result<Output> {
    let gens = generators(&args.target)?;
    let r = lie_closure(&gens, &ClosureOptions::default().with_limit(args.limit))?;
    let mut result = json!({ "dim": r.dimension(), "n": r.n() });
    if args.dump_basis {
        result["basis"] = r.basis().iter().map(|p| p.to_string()).collect();
    }
    let text = serde_json::to_string_pretty(&result)? + "\n";
    Ok(Output { result, text, ok: true })
}

fn cmd_frustration(cmd: &FrustrationCommand) -> anyhow::Result<Output> {
    match cmd {
        FrustrationCommand::Build(args) => {
            let gens = generators(args)?;
            let fg = FrustrationGraph::build(&gens.members)?;
            let result = fg.to_json();
            let text = serde_json::to_string_pretty(&result)? + "\n";
            Ok(Output { result, text, ok: true })
        }
        FrustrationCommand::Member(args) => {
            let gens = generators(&args.target)?;
            let target: PauliString = args.pauli.parse()?;
            let fg = FrustrationGraph::build(&gens.members)?;
            let m = fg.membership(&target, args.cap)?;
            let trace: Vec<String> = m
                .trace
                .as_ref()
                .map(|t| t.render(&fg).lines().map(str::to_string).collect())
                .unwrap_or_default();
            let result = json!({
                "member": m.member,
                "target": target.letter_string(),
                "generators": fg.len(),
                "coloring": m.coloring.map(|c| c.indices()),
                "trace": trace,
            });
            let mut text = format!("{} member: {}\n", target.letter_string(), m.member);
            for line in &trace {
                text.push_str("  ");
                text.push_str(line);
                text.push('\n');
            }
            Ok(Output { result, text, ok: true })
        }
    }
}

fn cmd_involution(args: &InvolutionArgs) -> anyhow::Result<Output> {
    let (l, m, label) = (args.l, args.m, args.algebra);
    let formula = upper_bound_dim(label, l, m)?;
    let theta = make_theta(l, m)?;
    let opts = ClosureOptions::default().with_limit(args.limit);
    let full = lie_closure(&place_on_graph(label, &InteractionGraph::complete(l + m))?, &opts)?;
    let fixed = theta.fixed_subset(&full)?.dimension() as u64;
    let bipartite = lie_closure(&place_on_graph(label, &InteractionGraph::complete_bipartite(l, m))?, &opts)?.dimension()
        as u64;
    let ok = bipartite == fixed && fixed == formula;
    let result = json!({
        "algebra": label.to_string(),
        "l": l,
        "m": m,
        "bipartite_dim": bipartite,
        "fixed_count": fixed,
        "formula": formula,
        "pass": ok,
    });
    let text = format!(
        "{label} on K{l},{m}\nclosure dim on K{l},{m}  {bipartite}\nfixed subset count     {fixed}\nformula                {formula}\n{}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    Ok(Output { result, text, ok })
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<Output> {
    let opts = VerifyOptions { max_n: args.max_n, cases: args.cases, seed: args.seed, ..Default::default() };
    let report = verify::run(args.suite, &opts);
    let (pass, fail, note) = (report.count(Status::Pass), report.count(Status::Fail), report.count(Status::Note));
    let width = report.cases.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
    let mut text = format!("{:<width$}  STATUS  EXPECTED  ACTUAL\n", "CASE");
    for c in &report.cases {
        let status = serde_json::to_value(c.status)?;
        text.push_str(&format!(
            "{:<width$}  {:<6}  {}  {}\n",
            c.name,
            status.as_str().unwrap_or_default(),
            c.expected,
            c.actual
        ));
    }
    text.push_str(&format!("{}: {pass} passed, {fail} failed, {note} notes\n", report.suite));
    let result = json!({
        "suite": report.suite.name(),
        "passed": report.passed(),
        "counts": { "pass": pass, "fail": fail, "note": note },
        "cases": report.cases,
    });
    Ok(Output { result, text, ok: report.passed() })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify(_) => "classify",
        Command::Close(_) => "close",
        Command::Frustration(FrustrationCommand::Build(_)) => "frustration build",
        Command::Frustration(FrustrationCommand::Member(_)) => "frustration member",
        Command::Involution(_) => "involution",
        Command::Verify(_) => "verify",
    }
}

fn closure_code(e: &ClosureError) -> u8 {
    match e {
        ClosureError::LimitExceeded { .. } => 4,
        ClosureError::NoGenerators | ClosureError::Pauli(_) => 2,
        ClosureError::NotClosed { .. } => 5,
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<OutOfScope>() {
            return 3;
        }
        if cause.is::<InputError>() || cause.is::<GraphError>() || cause.is::<PauliError>() || cause.is::<CatalogError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<ClosureError>() {
            return closure_code(e);
        }
        if let Some(e) = cause.downcast_ref::<ClassifyError>() {
            return match e {
                ClassifyError::Closure(c) => closure_code(c),
                _ => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<FrustrationError>() {
            return match e {
                FrustrationError::SearchTooLarge { .. }
                | FrustrationError::KernelTooLarge { .. }
                | FrustrationError::TooManyGenerators { .. } => 4,
                FrustrationError::IllegalToggle { .. } => 5,
                _ => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<InvolutionError>() {
            return match e {
                InvolutionError::Closure(c) => closure_code(c),
                InvolutionError::RotationPrecondition { .. } => 5,
                _ => 2,
            };
        }
    }
    5
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(cap) = cli.max_qubits {
        set_max_qubits(cap);
    }
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Close(a) => cmd_close(a),
        Command::Frustration(a) => cmd_frustration(a),
        Command::Involution(a) => cmd_involution(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(out) => {
            if cli.report {
                let report = json!({
                    "command": command_name(&cli.command),
                    "inputs": serde_json::to_value(&cli.command).unwrap_or(Value::Null),
                    "result": out.result,
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                });
                emit(&(serde_json::to_string_pretty(&report).expect("serializable") + "\n"));
            } else if cli.json {
                emit(&(serde_json::to_string_pretty(&out.result).expect("serializable") + "\n"));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
