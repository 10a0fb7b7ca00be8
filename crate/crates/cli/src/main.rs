//! `ltldom`: evaluate domination formulas on lasso words, run counting
//! automata, and sample for counterexamples.
//!
//! Every command ends its output with a `RESULT ...` line. Exit status is 0
//! when the property holds (or the word is accepted, or no counterexample was
//! found), 1 when it fails, and 2 on usage or input errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltldom::bridge::BridgeError;
use ltldom::counting::Boundedness;
use ltldom::{
    analyze_run, check_agreement, check_equivalent, check_unsatisfiable, complement, l_omega_automaton, label,
    loop_drift, parse, parse_lasso, parse_symbol_word, product, CheckReport, CountingAutomaton, Formula,
    LetterMapping, ProductMode, Proposition, SampleSpec,
};

const BUILTIN_LOMEGA: &str = "builtin:lomega";

#[derive(Parser)]
#[command(name = "ltldom", version, about = "Domination operator for LTL and k-counting automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a lasso word such as `{p};{}{p}`.
    Eval(EvalArgs),
    /// Run a counting automaton on a symbol word such as `b;ab`.
    Accept(AcceptArgs),
    /// Boolean constructions on automaton files.
    #[command(subcommand)]
    Boolean(BooleanCommand),
    /// Same as `boolean complement`.
    Complement(ComplementArgs),
    /// Same as `boolean product`.
    Product(ProductArgs),
    /// Search sampled lasso words for counterexamples.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Write built-in automata to disk.
    #[command(subcommand)]
    Builtin(BuiltinCommand),
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    formula: String,
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 0)]
    position: usize,
    /// Print the loop drift of every `<<` subformula and the label row at the position.
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct AcceptArgs {
    /// Automaton file, or `builtin:lomega`.
    #[arg(long)]
    automaton: String,
    #[arg(long)]
    word: String,
}

#[derive(Subcommand)]
enum BooleanCommand {
    Complement(ComplementArgs),
    Product(ProductArgs),
}

#[derive(Args)]
struct ComplementArgs {
    #[arg(long)]
    automaton: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    And,
    Or,
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 6)]
    max_stem: usize,
    #[arg(long, default_value_t = 6)]
    max_period: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated propositions; defaults to the atoms of the formulas.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Are two formulas equivalent at every position?
    Equiv {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Is the formula false everywhere?
    Unsat {
        #[arg(long)]
        f: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Does the formula at position 0 agree with acceptance by the automaton?
    Agree {
        #[arg(long)]
        f: String,
        #[arg(long)]
        automaton: String,
        /// Lines `LETTER -> SYMBOL`. Defaults to `{p} -> a`, `{} -> b` for
        /// builtin:lomega and to letter renderings like `{p,q}` otherwise.
        #[arg(long)]
        map: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Subcommand)]
enum BuiltinCommand {
    /// The one-counter automaton for words keeping `#a - #b` bounded.
    Lomega {
        #[arg(long)]
        out: PathBuf,
    },
}

/// Input or usage problem; always exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Eval(a) => eval(a),
        Command::Accept(a) => accept(a),
        Command::Boolean(BooleanCommand::Complement(a)) | Command::Complement(a) => cmd_complement(a),
        Command::Boolean(BooleanCommand::Product(a)) | Command::Product(a) => cmd_product(a),
        Command::Check(c) => check(c),
        Command::Builtin(BuiltinCommand::Lomega { out }) => {
            let aut = l_omega_automaton();
            write_automaton(&out, &aut)?;
            println!("RESULT ok");
            Ok(true)
        }
    }
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure(format!("formula `{text}`: {e}")))
}

fn eval(a: EvalArgs) -> Outcome {
    let f = formula(&a.formula)?;
    let w = parse_lasso(&a.word).map_err(|e| Failure(format!("word `{}`: {e}", a.word)))?;
    let table = label(&w, &f);
    let value = table.value(&f, w.canonical_index(a.position)).expect("labelled");
    if a.explain {
        println!("word {w} (stem {}, loop {})", w.stem_len(), w.period());
        for g in f.subformulas() {
            if let Formula::DominatedBy(x, y) = &g {
                println!("drift {g} = {}", loop_drift(&w, x, y));
            }
        }
        println!("labels at position {}:", a.position);
        for g in table.formulas() {
            println!("  {} {g}", table.value(g, w.canonical_index(a.position)).expect("labelled"));
        }
    }
    println!("{value}");
    println!("RESULT {value}");
    Ok(value)
}

fn load_automaton(source: &str) -> Result<CountingAutomaton, Failure> {
    if source == BUILTIN_LOMEGA {
        return Ok(l_omega_automaton());
    }
    let text = fs::read_to_string(source).map_err(|e| Failure(format!("{source}: {e}")))?;
    let aut = CountingAutomaton::from_json(&text).map_err(|e| Failure(format!("{source}: {e}")))?;
    aut.validate()
        .map_err(|v| Failure(format!("{source}: {}", ltldom::CountingError::Invalid(v))))?;
    Ok(aut)
}

fn write_automaton(path: &Path, aut: &CountingAutomaton) -> Result<(), Failure> {
    fs::write(path, aut.to_json()).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    println!("wrote {} ({} states, {} counters)", path.display(), aut.states.len(), aut.k());
    Ok(())
}

fn classify(b: &Boundedness) -> &'static str {
    match (b.pos_unbounded, b.neg_unbounded) {
        (false, false) => "bounded",
        (true, false) => "unbounded above",
        (false, true) => "unbounded below",
        (true, true) => "unbounded both ways",
    }
}

fn accept(a: AcceptArgs) -> Outcome {
    let aut = load_automaton(&a.automaton)?;
    let w = parse_symbol_word(&a.word).map_err(|e| Failure(format!("word `{}`: {e}", a.word)))?;
    let run = analyze_run(&aut, &w)?;
    println!("cycle starts at {} with length {}", run.cycle_start, run.cycle_length);
    for c in &aut.counters {
        println!("counter {c}: drift {} ({})", run.drift[c], classify(&run.classification[c]));
    }
    let ok = aut.phi.eval(&|c, d| run.holds(c, d));
    let verdict = if ok { "accepted" } else { "rejected" };
    println!("{verdict}");
    println!("RESULT {verdict}");
    Ok(ok)
}

fn cmd_complement(a: ComplementArgs) -> Outcome {
    let aut = complement(&load_automaton(&a.automaton)?);
    write_automaton(&a.out, &aut)?;
    println!("RESULT ok");
    Ok(true)
}

fn cmd_product(a: ProductArgs) -> Outcome {
    let mode = match a.mode {
        Mode::And => ProductMode::And,
        Mode::Or => ProductMode::Or,
    };
    let aut = product(&load_automaton(&a.left)?, &load_automaton(&a.right)?, mode)?;
    write_automaton(&a.out, &aut)?;
    println!("RESULT ok");
    Ok(true)
}

fn sample_spec(s: &Sampling, formulas: &[&Formula]) -> Result<SampleSpec, Failure> {
    let alphabet: BTreeSet<Proposition> = match &s.alphabet {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .map(|n| Proposition::new(n).map_err(|e| Failure(format!("alphabet: {e}"))))
            .collect::<Result<_, _>>()?,
        None => {
            let atoms: BTreeSet<Proposition> = formulas.iter().flat_map(|f| f.atoms()).collect();
            if atoms.is_empty() {
                SampleSpec::default().alphabet
            } else {
                atoms
            }
        }
    };
    let spec = SampleSpec {
        alphabet,
        max_stem: s.max_stem,
        max_period: s.max_period,
        samples: s.samples,
        seed: s.seed,
    };
    spec.validate()?;
    Ok(spec)
}

fn report(r: Result<CheckReport, BridgeError>) -> Outcome {
    let r = r?;
    println!("trials {}", r.trials);
    match &r.witness {
        None => {
            println!("no counterexample found");
            println!("RESULT ok");
        }
        Some(w) => {
            println!("counterexample {w}");
            println!("RESULT counterexample");
        }
    }
    Ok(r.passed())
}

fn check(c: CheckCommand) -> Outcome {
    match c {
        CheckCommand::Equiv { f, g, sampling } => {
            let (f, g) = (formula(&f)?, formula(&g)?);
            let spec = sample_spec(&sampling, &[&f, &g])?;
            report(check_equivalent(&f, &g, &spec))
        }
        CheckCommand::Unsat { f, sampling } => {
            let f = formula(&f)?;
            let spec = sample_spec(&sampling, &[&f])?;
            report(check_unsatisfiable(&f, &spec))
        }
        CheckCommand::Agree { f, automaton, map, sampling } => {
            let f = formula(&f)?;
            let aut = load_automaton(&automaton)?;
            let mapping = match map {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    Some(LetterMapping::parse(&text)?)
                }
                None if automaton == BUILTIN_LOMEGA => Some(LetterMapping::standard()),
                None => None,
            };
            let spec = sample_spec(&sampling, &[&f])?;
            report(check_agreement(&f, &aut, mapping.as_ref(), &spec))
        }
    }
}
