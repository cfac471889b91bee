//! `drx`: check, compile and run deterministic regexes with back-references.

use std::fmt::Write as _;
use std::io::{self, BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drx::constructions::{
    bounded_intersection_with, unary_dfa_to_drx, word_equation_to_drx, UnaryDfa,
};
use drx::dtmfa::{
    complement_with, is_l_deterministic_with, l_determinize_with, match_direct, match_fast,
    preprocess,
};
use drx::glushkov::{
    build_graph_with, check_regex, compile_deterministic_with, graph_to_dot, graph_to_tmfa, Verdict,
};
use drx::refsem::{dereference, enumerate_ref_words_with, to_ref_regex};
use drx::tmfa::{
    compile_naive, enumerate_accepted, from_json, member_oracle_with, to_dot, to_json,
};
use drx::{parse, Alphabet, Dtmfa, Error, Limits, Regex, Tmfa};

#[derive(Parser)]
#[command(
    name = "drx",
    version,
    about = "Deterministic regular expressions with back-references"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a regex is deterministic.
    Check { regex: String },
    /// Compile a regex into a memory automaton.
    Compile {
        regex: String,
        /// Use the naive construction, which accepts any regex.
        #[arg(long)]
        naive: bool,
        #[command(flatten)]
        opts: Common,
    },
    /// Match each line of standard input.
    Match {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
        #[command(flatten)]
        opts: Common,
    },
    /// Complement a deterministic regex or automaton.
    Complement {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Common,
    },
    /// List the words of the language up to a length.
    Enum {
        regex: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// List ref-words instead of terminal words.
        #[arg(long)]
        refwords: bool,
        #[command(flatten)]
        opts: Common,
    },
    /// Find the shortest word accepted by every input.
    Intersect {
        regexes: Vec<String>,
        /// Automaton files in JSON, in addition to the regexes.
        #[arg(long = "automaton", value_name = "FILE")]
        automata: Vec<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        opts: Common,
    },
    /// Turn a unary DFA in JSON into a deterministic regex.
    Unary {
        /// DFA file, or `-` for standard input.
        file: PathBuf,
    },
    /// Reduce a word equation such as `Xa = aX` to two regexes.
    Wordeq { equation: String },
    /// Graphviz export of the memory occurrence graph or of an automaton.
    Dot {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Common,
    },
    /// Decide ℓ-determinism, optionally printing the determinized automaton.
    Ldet {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(long)]
        determinize: bool,
        #[command(flatten)]
        opts: Common,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    regex: Option<String>,
    /// Automaton file in JSON instead of a regex.
    #[arg(long, value_name = "FILE")]
    automaton: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    /// Alphabet as a string of characters; inferred from the regex if absent.
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    cap_states: Option<usize>,
    #[arg(long)]
    cap_configs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Direct,
    Fast,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

/// Failures with their exit status.
enum Failure {
    /// Bad input or usage: status 2.
    Usage(String),
    /// A resource cap was hit: status 3.
    Limit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Limit { .. } => Failure::Limit(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

type Matcher = Box<dyn Fn(&str) -> Result<bool, Failure>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("drx: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("drx: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { regex } => check(&regex),
        Command::Compile { regex, naive, opts } => {
            let r = parse(&regex).map_err(Error::from)?;
            let alphabet = opts.alphabet_for(&r);
            let m = if naive {
                compile_naive(&r, &alphabet)
            } else {
                match compile_deterministic_with(&r, &alphabet, &opts.limits()) {
                    Ok(d) => d.into_inner(),
                    Err(e @ Error::NondeterministicRegex { .. }) => return rejected(e),
                    Err(e) => return Err(e.into()),
                }
            };
            print!("{}", opts.render(&m));
            Ok(true)
        }
        Command::Match {
            input,
            engine,
            opts,
        } => match_lines(&input, engine, &opts),
        Command::Complement { input, opts } => {
            let d = match deterministic(&input, &opts)? {
                Ok(d) => d,
                Err(e) => return rejected(e),
            };
            print!(
                "{}",
                opts.render(complement_with(&d, &opts.limits())?.as_tmfa())
            );
            Ok(true)
        }
        Command::Enum {
            regex,
            max_len,
            refwords,
            opts,
        } => {
            let r = parse(&regex).map_err(Error::from)?;
            let lines: Vec<String> = if refwords {
                enumerate_ref_words_with(&to_ref_regex(&r, false), max_len, &opts.limits())?
                    .iter()
                    .map(|w| format!("{w}\t{}", show_word(&dereference(w))))
                    .collect()
            } else {
                let m = compile_naive(&r, &opts.alphabet_for(&r));
                let mut words: Vec<String> = enumerate_accepted(&m, max_len, &opts.limits())?
                    .into_iter()
                    .collect();
                words.sort_by(|a, b| (a.chars().count(), a).cmp(&(b.chars().count(), b)));
                words.iter().map(|w| show_word(w)).collect()
            };
            for line in lines {
                println!("{line}");
            }
            Ok(true)
        }
        Command::Intersect {
            regexes,
            automata,
            max_len,
            opts,
        } => {
            let mut ms = Vec::new();
            for text in &regexes {
                let r = parse(text).map_err(Error::from)?;
                ms.push(compile_naive(&r, &opts.alphabet_for(&r)));
            }
            for path in &automata {
                ms.push(load_automaton(path)?);
            }
            match bounded_intersection_with(&ms, max_len, &opts.limits())? {
                Some(w) => {
                    println!("{}", show_word(&w));
                    Ok(true)
                }
                None => {
                    println!("EMPTY<={max_len}");
                    Ok(false)
                }
            }
        }
        Command::Unary { file } => {
            let d = UnaryDfa::from_json(&read_source(&file)?)?;
            println!("{}", unary_dfa_to_drx(&d)?);
            Ok(true)
        }
        Command::Wordeq { equation } => {
            let eq = equation.parse().map_err(Failure::from)?;
            let (l, r) = word_equation_to_drx(&eq);
            println!("{l}");
            println!("{r}");
            Ok(true)
        }
        Command::Dot { input, opts } => {
            let text = match (&input.regex, &input.automaton) {
                (Some(regex), _) => {
                    let r = parse(regex).map_err(Error::from)?;
                    graph_to_dot(&build_graph_with(&r, &opts.limits())?)
                }
                (None, Some(path)) => to_dot(&load_automaton(path)?),
                (None, None) => unreachable!("clap requires an input"),
            };
            print!("{text}");
            Ok(true)
        }
        Command::Ldet {
            input,
            ell,
            determinize,
            opts,
        } => {
            let m = any_automaton(&input, &opts)?;
            let limits = opts.limits();
            let verdict = is_l_deterministic_with(&m, ell, &limits)?;
            if determinize && verdict {
                print!(
                    "{}",
                    opts.render(l_determinize_with(&m, ell, &limits)?.as_tmfa())
                );
            } else if verdict {
                println!("L-DETERMINISTIC ell={ell}");
            } else {
                println!("NOT L-DETERMINISTIC ell={ell}");
            }
            Ok(verdict)
        }
    }
}

fn check(regex: &str) -> Outcome {
    let r = parse(regex).map_err(Error::from)?;
    match check_regex(&r)? {
        Verdict::Deterministic => {
            println!("DETERMINISTIC");
            Ok(true)
        }
        Verdict::Nondeterministic(w) => {
            println!("NONDETERMINISTIC {w}");
            Ok(false)
        }
    }
}

/// Reports a nondeterministic input on standard output and exits with 1.
fn rejected(e: Error) -> Outcome {
    match e {
        Error::NondeterministicRegex { condition, node } => {
            println!("NONDETERMINISTIC condition={condition} node={node}")
        }
        _ => println!("NONDETERMINISTIC"),
    }
    Ok(false)
}

fn match_lines(input: &Input, engine: Engine, opts: &Common) -> Outcome {
    let limits = opts.limits();
    let accept: Matcher = match engine {
        Engine::Oracle => {
            let m = any_automaton(input, opts)?;
            Box::new(move |w| Ok(member_oracle_with(&m, w, &limits)?))
        }
        Engine::Direct | Engine::Fast => {
            let d = match deterministic(input, opts)? {
                Ok(d) => d,
                Err(e) => return rejected(e),
            };
            if engine == Engine::Direct {
                Box::new(move |w| Ok(match_direct(&d, w)))
            } else {
                let table = preprocess(&d);
                Box::new(move |w| Ok(match_fast(&table, w)))
            }
        }
    };
    let mut all = true;
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for line in io::stdin().lock().lines() {
        let line = line?;
        let ok = accept(&line)?;
        all &= ok;
        writeln!(out, "{}", if ok { "ACCEPT" } else { "REJECT" })?;
    }
    out.flush()?;
    Ok(all)
}

/// The input as an automaton, deterministic or not. Regexes go through the
/// Glushkov construction.
fn any_automaton(input: &Input, opts: &Common) -> Result<Tmfa, Failure> {
    match (&input.regex, &input.automaton) {
        (Some(regex), _) => {
            let r = parse(regex).map_err(Error::from)?;
            let g = build_graph_with(&r, &opts.limits())?;
            Ok(graph_to_tmfa(&g, &opts.alphabet_for(&r)))
        }
        (None, Some(path)) => load_automaton(path),
        (None, None) => unreachable!("clap requires an input"),
    }
}

/// The input as a deterministic automaton, or the reason it is not one.
fn deterministic(input: &Input, opts: &Common) -> Result<Result<Dtmfa, Error>, Failure> {
    let result = match (&input.regex, &input.automaton) {
        (Some(regex), _) => {
            let r = parse(regex).map_err(Error::from)?;
            compile_deterministic_with(&r, &opts.alphabet_for(&r), &opts.limits())
        }
        (None, Some(path)) => Dtmfa::new(load_automaton(path)?),
        (None, None) => unreachable!("clap requires an input"),
    };
    match result {
        Err(e @ (Error::NondeterministicRegex { .. } | Error::NotDeterministic)) => Ok(Err(e)),
        Err(e) => Err(e.into()),
        Ok(d) => Ok(Ok(d)),
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn load_automaton(path: &Path) -> Result<Tmfa, Failure> {
    Ok(from_json(&read_source(path)?)?)
}

fn show_word(w: &str) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.to_string()
    }
}

impl Common {
    fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if let Some(n) = self.cap_states {
            limits.states = n;
        }
        if let Some(n) = self.cap_configs {
            limits.configs = n;
        }
        limits
    }

    fn alphabet_for(&self, r: &Regex) -> Alphabet {
        match &self.alphabet {
            Some(chars) => Alphabet::new(chars.chars()).union(&Alphabet::infer(r)),
            None => Alphabet::infer(r),
        }
    }

    fn render(&self, m: &Tmfa) -> String {
        match self.format {
            Format::Json => to_json(m) + "\n",
            Format::Dot => to_dot(m),
            Format::Text => text_listing(m),
        }
    }
}

/// One line per state and transition.
fn text_listing(m: &Tmfa) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "states={} memories={} alphabet={} initial={} trap={}{}",
        m.num_states(),
        m.memories(),
        m.alphabet(),
        m.initial(),
        m.trap(),
        if m.trap_accepting() {
            " (accepting)"
        } else {
            ""
        }
    );
    let finals: Vec<String> = m.finals().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "finals={}", finals.join(","));
    for (from, t) in m.all_transitions() {
        let _ = writeln!(out, "{from} --{} / {}--> {}", t.label, t.actions, t.to);
    }
    out
}
