use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twodfa::dirdet::{build_dirdet_automaton, enumerate_pairs, render_pairs, DirDetParams};
use twodfa::general::{build_core, wrap};
use twodfa::oracle::{brute_force_shortest, shortest_accepted};
use twodfa::report::{render_table, table_rows, verify, Scope, VerifyLimits};
use twodfa::search::{
    append_log, best_lengths, exhaustive_search, local_search, Evaluator, SearchConfig, SearchMode,
    SearchRecord,
};
use twodfa::simulate::{render_trace, run_tokens, Outcome};
use twodfa::{parse_automaton, serialize_automaton, TwoDfa};

const CACHE_FILE: &str = "eval-cache.tsv";
const LOG_FILE: &str = "search-log.jsonl";

#[derive(Parser)]
#[command(
    name = "twodfa",
    version,
    about = "Two-way DFA constructions, shortest accepted strings and search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family automaton as a JSON document
    #[command(subcommand)]
    Gen(GenCommand),
    /// List the (P, R) pairs of the direction-determinate construction in order
    Pairs {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run an automaton on a whitespace-separated input
    Simulate {
        /// Automaton document; standard input when omitted or `-`
        #[arg(long)]
        automaton: Option<PathBuf>,
        /// Input tokens, e.g. "a1 a2"
        #[arg(long, default_value = "")]
        input: String,
        /// Print the configuration diagram
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Find the shortest accepted string
    Shortest {
        /// Automaton document; standard input when omitted or `-`
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Behavior)]
        method: Method,
        /// Longest string considered; required in practice for `brute`
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Search for automata with long shortest accepted strings
    Search(SearchArgs),
    /// Check both families against their closed-form lengths
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        /// Largest k + l for the direction-determinate family
        #[arg(long, default_value_t = 7)]
        max_sum: u32,
        /// Largest n for the general family
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        /// Check a single direction-determinate instance
        #[arg(long, requires = "l")]
        k: Option<u32>,
        #[arg(long, requires = "k")]
        l: Option<u32>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print the table of bounds, with search results when a cache is given
    Table {
        #[arg(long, default_value_t = 6)]
        n_max: u32,
        /// Search directory whose log supplies the computed column
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Direction-determinate automaton with k right-entered and l left-entered states
    Dirdet {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        out: GenOutput,
    },
    /// Member n of the general family, wrapped as an acceptor
    General {
        #[arg(long)]
        n: u32,
        /// Emit the unwrapped core for segment experiments
        #[arg(long)]
        core: bool,
        #[command(flatten)]
        out: GenOutput,
    },
}

#[derive(Args)]
struct GenOutput {
    /// Write the document here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the `{witness, expected_length}` record here; defaults to
    /// `<out>.witness.json` with `--out`, standard error otherwise
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    /// Alphabet size
    #[arg(long, default_value_t = 4)]
    alphabet: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Local)]
    mode: ModeArg,
    /// Maximum number of candidate evaluations
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Starting automaton for local search
    #[arg(long)]
    warm_start: Option<PathBuf>,
    /// Directory holding the evaluation cache and the results log
    #[arg(long, default_value = "twodfa-cache")]
    cache: PathBuf,
    #[command(flatten)]
    format: FormatArg,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Behavior,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Dirdet,
    General,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Local,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}

/// The error chain joined by `: `, skipping causes already quoted by the
/// message above them.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn run(command: Command) -> Result<Status> {
    match command {
        Command::Gen(g) => cmd_gen(g),
        Command::Pairs { k, l, format } => cmd_pairs(k, l, format.format),
        Command::Simulate {
            automaton,
            input,
            trace,
            format,
        } => cmd_simulate(automaton.as_deref(), &input, trace, format.format),
        Command::Shortest {
            automaton,
            method,
            max_len,
            format,
        } => cmd_shortest(automaton.as_deref(), method, max_len, format.format),
        Command::Search(args) => cmd_search(args),
        Command::Verify {
            scope,
            max_sum,
            max_n,
            k,
            l,
            format,
        } => {
            let limits = VerifyLimits {
                dirdet_max_sum: max_sum,
                general_max_n: max_n,
                only_pair: k.zip(l),
            };
            cmd_verify(scope, limits, format.format)
        }
        Command::Table {
            n_max,
            cache,
            format,
        } => cmd_table(n_max, cache.as_deref(), format.format),
    }
}

fn read_automaton(path: Option<&Path>) -> Result<TwoDfa> {
    let text = match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("cannot read standard input")?;
            s
        }
    };
    let a = parse_automaton(&text)?;
    for w in a.validate().warnings {
        eprintln!("warning: {w}");
    }
    Ok(a)
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_gen(g: GenCommand) -> Result<Status> {
    let (automaton, witness, expected, out) = match g {
        GenCommand::Dirdet { k, l, out } => {
            let fw = build_dirdet_automaton(DirDetParams::new(k, l)?);
            let witness = fw.witness_tokens();
            (fw.automaton, witness, fw.expected_length, out)
        }
        GenCommand::General { n, core, out } => {
            let c = build_core(n)?;
            let witness = c.witness_tokens();
            let len = c.witness.len();
            let a = if core { c.automaton } else { wrap(&c) };
            (a, witness, len, out)
        }
    };
    let doc = serialize_automaton(&automaton);
    let sidecar = serde_json::to_string_pretty(&json!({
        "witness": witness,
        "expected_length": expected,
    }))? + "\n";

    let sidecar_path = out.sidecar.clone().or_else(|| {
        out.out.as_ref().map(|p| {
            let mut name = p.clone().into_os_string();
            name.push(".witness.json");
            PathBuf::from(name)
        })
    });
    match &out.out {
        Some(p) => fs::write(p, &doc).with_context(|| format!("cannot write {}", p.display()))?,
        None => io::stdout().write_all(doc.as_bytes())?,
    }
    match sidecar_path {
        Some(p) => {
            fs::write(&p, &sidecar).with_context(|| format!("cannot write {}", p.display()))?
        }
        None => io::stderr().write_all(sidecar.as_bytes())?,
    }
    Ok(Status::Ok)
}

fn cmd_pairs(k: u32, l: u32, format: Format) -> Result<Status> {
    let pairs = enumerate_pairs(DirDetParams::new(k, l)?);
    match format {
        Format::Text => print!("{}", render_pairs(&pairs)),
        Format::Json => print_json(&Value::Array(
            pairs
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    json!({
                        "index": i + 1,
                        "p": p.p,
                        "r": p.r,
                        "sets": p.sets_label(),
                        "signature": p.signature_label(),
                    })
                })
                .collect(),
        ))?,
    }
    Ok(Status::Ok)
}

fn cmd_simulate(path: Option<&Path>, input: &str, trace: bool, format: Format) -> Result<Status> {
    let a = read_automaton(path)?;
    let run = run_tokens(&a, input, trace)?;
    match format {
        Format::Json => print_json(&json!({
            "accepted": run.accepted(),
            "outcome": run.outcome,
            "trace": run.trace,
        }))?,
        Format::Text => {
            match run.outcome {
                Outcome::Accept => println!("accept"),
                Outcome::Reject { at } => {
                    println!("reject in state {} at position {}", at.state, at.position)
                }
                Outcome::Loop => println!("loop"),
            }
            if let Some(t) = &run.trace {
                let tokens: Vec<&str> = input.split_whitespace().collect();
                print!("{}", render_trace(&tokens, t));
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_shortest(
    path: Option<&Path>,
    method: Method,
    max_len: Option<usize>,
    format: Format,
) -> Result<Status> {
    let a = read_automaton(path)?;
    let mut result = match method {
        Method::Behavior => shortest_accepted(&a),
        Method::Brute => {
            let Some(limit) = max_len else {
                bail!("--method brute needs --max-len");
            };
            brute_force_shortest(&a, limit)
        }
    };
    if let Some(limit) = max_len {
        if result.length().is_some_and(|len| len > limit) {
            result.word = None;
        }
    }
    let string = result.word.as_ref().map(|w| a.format_word(w));
    match format {
        Format::Json => print_json(&json!({
            "found": result.found(),
            "length": result.length(),
            "string": string,
            "behaviors_explored": result.behaviors_explored,
        }))?,
        Format::Text => {
            match (result.length(), &string) {
                (Some(len), Some(s)) => {
                    println!("length: {len}");
                    println!("string: {s}");
                }
                _ => println!("found: false"),
            }
            println!("behaviors_explored: {}", result.behaviors_explored);
        }
    }
    Ok(Status::Ok)
}

fn cmd_search(args: SearchArgs) -> Result<Status> {
    let mode = match args.mode {
        ModeArg::Exhaustive => SearchMode::Exhaustive,
        ModeArg::Local => SearchMode::Local,
    };
    let mut cfg = SearchConfig::new(args.n, args.alphabet, mode)
        .with_budget(args.budget)
        .with_seed(args.seed);
    if let Some(p) = &args.warm_start {
        cfg = cfg.with_warm_start(read_automaton(Some(p))?);
    }
    let cache_path = args.cache.join(CACHE_FILE);
    let result = match mode {
        SearchMode::Exhaustive => exhaustive_search(&cfg)?,
        SearchMode::Local => {
            let evaluator = Evaluator::load(&cache_path)?;
            let r = local_search(&cfg, &evaluator)?;
            evaluator.save(&cache_path)?;
            r
        }
    };
    let record = SearchRecord::new(&cfg, &result);
    let log = args.cache.join(LOG_FILE);
    append_log(&log, &record)?;

    match args.format.format {
        Format::Json => print_json(&json!({
            "record": record,
            "verified": result.verified,
        }))?,
        Format::Text => {
            let best = result
                .best_length
                .map_or_else(|| "none".to_string(), |l| l.to_string());
            println!("best_length: {best}");
            println!("evaluated: {}", result.evaluated);
            println!("exhausted: {}", result.exhausted);
            if let Some(v) = result.verified {
                println!("brute_force_check: {}", if v { "ok" } else { "mismatch" });
            }
            println!("log: {}", log.display());
            print!("{}", serialize_automaton(&result.best));
        }
    }
    Ok(Status::Ok)
}

fn cmd_verify(scope: ScopeArg, limits: VerifyLimits, format: Format) -> Result<Status> {
    let scope = match scope {
        ScopeArg::Dirdet => Scope::DirDet,
        ScopeArg::General => Scope::General,
        ScopeArg::All => Scope::All,
    };
    let report = verify(scope, limits)?;
    match format {
        Format::Json => print_json(&serde_json::to_value(&report)?)?,
        Format::Text => print!("{}", report.render_text()),
    }
    Ok(if report.overall {
        Status::Ok
    } else {
        Status::VerificationFailed
    })
}

fn cmd_table(n_max: u32, cache: Option<&Path>, format: Format) -> Result<Status> {
    if n_max < 2 {
        bail!("--n-max must be at least 2");
    }
    let computed = match cache {
        Some(dir) => best_lengths(&dir.join(LOG_FILE))?,
        None => Default::default(),
    };
    let rows = table_rows(n_max, &computed);
    match format {
        Format::Json => print_json(&serde_json::to_value(&rows)?)?,
        Format::Text => print!("{}", render_table(&rows)),
    }
    Ok(Status::Ok)
}
