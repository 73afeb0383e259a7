//! Command-line surface for the additive-basis decision procedure.
//!
//! Machines are given as text files (`direction`/`base`/`states`/`initial`/
//! `finals` header plus `state digit -> state` lines), as built-in corpus
//! entries (`corpus:evil2`, or a bare corpus name where no such file
//! exists), and — where a base is already fixed by another machine — as the
//! shorthands `all`, `even`, and `div:N`.
//!
//! Exit codes: 0 = decided, 1 = usage or parse error, 2 = inconclusive
//! (order search exhausted), 3 = precondition violation or resource limit.

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use autobasis::basis::{
    check_syndetic, decide_basis, exceptions_relative, find_consecutive_run, BasisOptions,
    BasisReason, RelativeExceptions, RunSearch,
};
use autobasis::cantor::{cantor_params, overlap_threshold, sum_order_bound};
use autobasis::corpus::{corpus, corpus_names};
use autobasis::error::ParseError;
use autobasis::gcd::{divisibility_automaton, gcd_of_set};
use autobasis::growth::{classify, Growth};
use autobasis::numeral::canonical_language;
use autobasis::sumset::{count_representations, sum_automaton, SumSpec};
use autobasis::textfmt::{parse_automaton, render_automaton, Direction};
use autobasis::{limits, Dfa, Digit, Error, Result, SumMode};

#[derive(Parser)]
#[command(
    name = "autobasis",
    version,
    about = "Decides whether a k-automatic set is an additive basis of the naturals",
    after_help = "Exit codes: 0 decided, 1 usage/parse error, 2 inconclusive, 3 precondition violation."
)]
struct Cli {
    /// Prefix the report with a `format:` line for machine consumption.
    #[arg(long, global = true)]
    kv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify language growth: polynomial degree or exponential witness.
    Classify {
        /// Machine: file path, corpus:NAME, or bare corpus name.
        machine: String,
    },
    /// Gcd of the set's members, with witness members when it is 1.
    Gcd {
        machine: String,
    },
    /// Decide the basis question: minimal order, threshold, exceptions.
    Basis {
        machine: String,
        /// Allow finitely many exceptions (the default).
        #[arg(long, conflicts_with = "exact")]
        asymptotic: bool,
        /// Require every value except possibly 0 to be representable.
        #[arg(long)]
        exact: bool,
        /// Largest order tried before giving up as inconclusive.
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Order-j sums use exactly j summands or any 1..=j of them.
        #[arg(long, value_enum, default_value_t = ModeArg::Atmost)]
        mode: ModeArg,
    },
    /// Values of a target set that are not order-j sums of the machine's set.
    Exceptions {
        machine: String,
        /// Number of summands.
        #[arg(long)]
        order: usize,
        /// Target set: file, corpus:NAME, all, even, or div:N
        /// (defaults to all naturals).
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Atmost)]
        mode: ModeArg,
        /// Require pairwise distinct summands.
        #[arg(long)]
        distinct: bool,
    },
    /// Number of ordered representations of n as a sum from the set(s).
    Count {
        /// Machine for homogeneous sums; omit when --summands is given.
        machine: Option<String>,
        /// Number of summands for homogeneous sums.
        #[arg(long)]
        order: Option<usize>,
        /// The value whose representations are counted.
        #[arg(long)]
        n: BigUint,
        /// Require pairwise distinct summands.
        #[arg(long)]
        distinct: bool,
        /// Comma-separated summand machines (files or corpus names), one per
        /// summand; replaces MACHINE/--order.
        #[arg(long, value_delimiter = ',')]
        summands: Vec<String>,
    },
    /// Check that every member has another member within distance c.
    Syndetic {
        machine: String,
        /// Largest allowed gap.
        #[arg(long)]
        c: u64,
    },
    /// Find the least start of c+1 consecutive members.
    Run {
        machine: String,
        /// Run length minus one.
        #[arg(long)]
        c: u64,
    },
    /// Exact-rational parameters and thresholds of a Cantor-like family.
    Cantor {
        /// Base of the digit system.
        #[arg(long)]
        k: u32,
        /// Common fractional digit prefix (may be empty).
        #[arg(long, default_value = "")]
        u: String,
        /// First repeating digit block.
        #[arg(long)]
        y: String,
        /// Second repeating digit block (same length as --y).
        #[arg(long)]
        z: String,
        /// Also evaluate the sum order bound for t extra digit positions.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Built-in example machines.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List names and membership rules.
    List,
    /// Print a machine in the text format.
    Show { name: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Exactly j summands.
    #[value(name = "exact-sum")]
    ExactSum,
    /// Any 1..=j summands.
    #[value(name = "atmost")]
    Atmost,
}

impl From<ModeArg> for SumMode {
    fn from(m: ModeArg) -> SumMode {
        match m {
            ModeArg::ExactSum => SumMode::Exact,
            ModeArg::Atmost => SumMode::AtMost,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    if let Ok(raw) = std::env::var("AUTOBASIS_MAX_STATES") {
        match raw.parse::<usize>() {
            Ok(limit) if limit > 0 => limits::set_state_limit(limit),
            _ => {
                eprintln!("autobasis: AUTOBASIS_MAX_STATES must be a positive integer, found `{raw}`");
                return ExitCode::from(1);
            }
        }
    }
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("autobasis: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::UnknownCorpus(_) => 1,
                Error::Inconclusive { .. } => 2,
                _ => 3,
            })
        }
    }
}

/// Flat, deterministic key-value report.
struct Report(Vec<(&'static str, String)>);

impl Report {
    fn new() -> Report {
        Report(Vec::new())
    }

    fn push(&mut self, key: &'static str, value: impl Display) {
        self.0.push((key, value.to_string()));
    }

    fn print(&self, kv: bool) {
        let mut text = String::new();
        if kv {
            text.push_str("format: autobasis.v1\n");
        }
        for (key, value) in &self.0 {
            text.push_str(key);
            text.push_str(": ");
            text.push_str(value);
            text.push('\n');
        }
        emit(&text);
    }
}

/// Writes to stdout, exiting quietly when the reader has gone away
/// (`autobasis … | head` must not panic).
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("autobasis: cannot write to stdout: {e}");
        std::process::exit(3);
    }
}

fn join<T: Display>(values: &[T]) -> String {
    if values.is_empty() {
        return "-".to_string();
    }
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn usage(message: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(0, message))
}

/// Resolves a machine argument. `base_hint` (the base of the other machine
/// in the command) enables the base-dependent shorthands.
fn load_machine(spec: &str, base_hint: Option<u32>) -> Result<Dfa> {
    let need_base = |what: &str| {
        base_hint.ok_or_else(|| {
            usage(format!(
                "`{what}` needs a base to interpret digits in; it can only be used \
                 as a target alongside a concrete machine"
            ))
        })
    };
    if let Some(name) = spec.strip_prefix("corpus:") {
        return Ok(corpus(name)?.machine);
    }
    if spec == "all" {
        return Ok(canonical_language(need_base("all")?));
    }
    if spec == "even" {
        return divisibility_automaton(need_base("even")?, &BigUint::from(2u32));
    }
    if let Some(n) = spec.strip_prefix("div:") {
        let d: BigUint = n
            .parse()
            .map_err(|_| usage(format!("expected a number after `div:`, found `{n}`")))?;
        return divisibility_automaton(need_base("div:N")?, &d);
    }
    if std::path::Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| usage(format!("cannot read `{spec}`: {e}")))?;
        let parsed = parse_automaton(&text)?;
        for warning in &parsed.warnings {
            eprintln!("autobasis: {spec}: warning: {warning}");
        }
        return Ok(parsed.dfa);
    }
    match corpus(spec) {
        Ok(entry) => Ok(entry.machine),
        Err(Error::UnknownCorpus(_)) => Err(usage(format!(
            "`{spec}` is neither a readable file nor a corpus name"
        ))),
        Err(e) => Err(e),
    }
}

fn parse_digit_block(raw: &str, base: u32, flag: &str) -> Result<Vec<Digit>> {
    raw.chars()
        .map(|c| {
            c.to_digit(36)
                .filter(|&d| d < base)
                .ok_or_else(|| usage(format!("--{flag}: `{c}` is not a base-{base} digit")))
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<()> {
    let mut r = Report::new();
    match &cli.command {
        Command::Classify { machine } => {
            let m = load_machine(machine, None)?;
            let report = classify(&m);
            r.push("states", report.state_count);
            match &report.growth {
                Growth::Polynomial { degree } => {
                    r.push("growth", "polynomial");
                    r.push("degree", degree);
                }
                Growth::Exponential { witness } => {
                    r.push("growth", "exponential");
                    r.push("witness_prefix", &witness.prefix);
                    r.push("witness_t", &witness.t);
                    r.push("witness_u", &witness.u);
                    r.push("witness_suffix", &witness.suffix);
                }
            }
        }
        Command::Gcd { machine } => {
            let m = load_machine(machine, None)?;
            let report = gcd_of_set(&m)?;
            r.push("gcd", &report.g);
            r.push("smallest_member", &report.smallest_element);
            r.push("witnesses", join(&report.witnesses));
        }
        Command::Basis {
            machine,
            asymptotic: _,
            exact,
            max_order,
            mode,
        } => {
            let m = load_machine(machine, None)?;
            let opts = BasisOptions {
                max_order: *max_order,
                asymptotic: !*exact,
                sum_mode: (*mode).into(),
            };
            let report = decide_basis(&m, &opts)?;
            r.push("asymptotic_basis", report.asymptotic_basis);
            r.push("exact_basis", report.exact_basis);
            r.push(
                "reason",
                match &report.reason {
                    BasisReason::Ok => "ok".to_string(),
                    BasisReason::NonSparseFailed => "sparse".to_string(),
                    BasisReason::GcdFailed(g) => format!("gcd {g} exceeds 1"),
                    BasisReason::OneNotInS => "1 is not in the set".to_string(),
                },
            );
            match report.minimal_order {
                Some(j) => r.push("order", j),
                None => r.push("order", "-"),
            }
            r.push("threshold", &report.threshold);
            r.push("exception_count", report.exceptions.len());
            r.push("exceptions", join(&report.exceptions));
            r.push("zero_in_set", report.zero_in_set);
            r.push("states", report.state_count);
            r.push("theoretical_order_bound", &report.theoretical_n);
            r.push("theoretical_threshold_bound", &report.theoretical_m);
        }
        Command::Exceptions {
            machine,
            order,
            target,
            mode,
            distinct,
        } => {
            let m = load_machine(machine, None)?;
            let spec =
                SumSpec::homogeneous(&m, *order, (*mode).into())?.distinct(*distinct)?;
            let sum = sum_automaton(&spec)?;
            let target = match target {
                Some(t) => load_machine(t, Some(m.base()))?,
                None => canonical_language(m.base()),
            };
            r.push("order", order);
            match exceptions_relative(&sum, &target, true)? {
                RelativeExceptions::Finite(values) => {
                    r.push("outcome", "finite");
                    r.push("exception_count", values.len());
                    r.push("exceptions", join(&values));
                }
                RelativeExceptions::Infinite(w) => {
                    r.push("outcome", "infinite");
                    r.push("witness_prefix", &w.prefix);
                    r.push("witness_cycle", &w.cycle);
                    r.push("witness_suffix", &w.suffix);
                    let pumped: Vec<BigUint> =
                        (0..6).map(|i| w.pumped_value(i, m.base())).collect();
                    r.push("pumped", join(&pumped));
                    r.push("sample", join(&w.sample));
                }
            }
        }
        Command::Count {
            machine,
            order,
            n,
            distinct,
            summands,
        } => {
            let spec = if summands.is_empty() {
                let machine = machine.as_deref().ok_or_else(|| {
                    usage("count needs a machine (or --summands)")
                })?;
                let j = order.ok_or_else(|| {
                    usage("count needs --order when a single machine is given")
                })?;
                let m = load_machine(machine, None)?;
                SumSpec::homogeneous(&m, j, SumMode::Exact)?.distinct(*distinct)?
            } else {
                if machine.is_some() {
                    return Err(usage(
                        "give either a machine with --order or --summands, not both",
                    ));
                }
                if let Some(j) = order {
                    if *j != summands.len() {
                        return Err(usage(format!(
                            "--order {j} disagrees with {} summands",
                            summands.len()
                        )));
                    }
                }
                let machines: Vec<Dfa> = summands
                    .iter()
                    .map(|s| load_machine(s, None))
                    .collect::<Result<_>>()?;
                SumSpec::new(machines, *distinct, SumMode::Exact)?
            };
            let count = count_representations(n, &spec)?;
            r.push("n", n);
            r.push("order", spec.arity());
            r.push("count", &count);
        }
        Command::Syndetic { machine, c } => {
            let m = load_machine(machine, None)?;
            let report = check_syndetic(&m, *c)?;
            r.push("c", report.c);
            r.push("holds", report.holds);
            if !report.holds {
                r.push("violations", join(&report.violations));
            }
        }
        Command::Run { machine, c } => {
            let m = load_machine(machine, None)?;
            r.push("c", c);
            match find_consecutive_run(&m, *c)? {
                RunSearch::Found(n) => r.push("found", n),
                RunSearch::NoRun => r.push("found", "none"),
            }
        }
        Command::Cantor { k, u, y, z, t } => {
            let u = parse_digit_block(u, *k, "u")?;
            let y = parse_digit_block(y, *k, "y")?;
            let z = parse_digit_block(z, *k, "z")?;
            let p = cantor_params(*k, &u, &y, &z)?;
            r.push("base", p.base);
            r.push("l", p.l);
            r.push("s", p.s);
            r.push("alpha", &p.alpha);
            r.push("beta", &p.beta);
            r.push("ratio", p.ratio());
            let (lo, hi) = p.hull();
            r.push("hull_low", lo);
            r.push("hull_high", hi);
            r.push("overlap_threshold", overlap_threshold(&p));
            if let Some(t) = t {
                r.push("order_bound", sum_order_bound(&p, *t));
            }
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for name in corpus_names() {
                    let entry = corpus(name)?;
                    r.push(
                        name,
                        format!(
                            "base {}, {} states — {}",
                            entry.base,
                            entry.machine.state_count(),
                            entry.note
                        ),
                    );
                }
                r.push("hard(k,m)", "parametric worst-case family (k ≥ 2, m ≥ 2)");
            }
            CorpusAction::Show { name } => {
                let entry = corpus(name)?;
                emit(&format!(
                    "# {}: {}\n{}",
                    entry.name,
                    entry.note,
                    render_automaton(&entry.machine, Direction::Msd)?
                ));
                return Ok(());
            }
        },
    }
    r.print(cli.kv);
    Ok(())
}
