//! The `prestar` command line.
//!
//! Boolean queries report through the exit status: 0 for the positive answer
//! (in the language, empty, finite, contained), 1 for the negative one, 2 for
//! usage or input errors and 3 when determinizing an automaton exceeds
//! `--max-dfa-states`.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analyses::{self, AnalysisReport, Query};
use crate::automaton::{parse_automaton, LoadedAutomaton, DEFAULT_MAX_DFA_STATES};
use crate::error::Error;
use crate::grammar::{build_index, normalize, parse_grammar, Grammar, Symbol, SymbolTable};
use crate::oracle;
use crate::prestar::{saturate_with, PopOrder};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "prestar",
    version,
    about = "Context-free grammar analyses by pre* saturation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GrammarArgs {
    /// Grammar file
    #[arg(short = 'g', long = "grammar")]
    grammar: PathBuf,
    /// Use this variable as the start symbol
    #[arg(long)]
    start: Option<String>,
    /// Print one JSON counters line per saturation to stderr
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct WordArgs {
    /// Whitespace-separated terminals; "" is the empty word
    #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
    word: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Saturate an automaton and print the result in automaton format
    Prestar {
        #[command(flatten)]
        grammar: GrammarArgs,
        #[arg(short = 'a', long = "automaton")]
        automaton: PathBuf,
        /// Write the saturated automaton as GraphViz
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Pop the worklist in a seeded random order
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exit 0 iff the word is in the language
    Member {
        #[command(flatten)]
        grammar: GrammarArgs,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Print a derivation of the word
    Parse {
        #[command(flatten)]
        grammar: GrammarArgs,
        #[command(flatten)]
        word: WordArgs,
    },
    /// Exit 0 iff the language is empty
    Empty {
        #[command(flatten)]
        grammar: GrammarArgs,
    },
    /// Exit 0 iff the language is finite
    Finite {
        #[command(flatten)]
        grammar: GrammarArgs,
    },
    /// Variables occurring in no derivation of a terminal word
    Useless {
        #[command(flatten)]
        grammar: GrammarArgs,
    },
    /// Variables deriving some terminal word
    Productive {
        #[command(flatten)]
        grammar: GrammarArgs,
    },
    /// Variables appearing in some sentential form uAv with u, v terminal
    Reachable {
        #[command(flatten)]
        grammar: GrammarArgs,
    },
    /// Variables deriving the empty word
    Nullable {
        #[command(flatten)]
        grammar: GrammarArgs,
    },
    /// Exit 0 iff the language is contained in the automaton's language
    Contain {
        #[command(flatten)]
        grammar: GrammarArgs,
        #[arg(short = 'a', long = "automaton")]
        automaton: PathBuf,
        /// The automaton already accepts the complement of the target language
        #[arg(long)]
        complement: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DFA_STATES)]
        max_dfa_states: usize,
    },
    /// Reference answers from the naive implementations
    #[command(hide = true)]
    Oracle {
        #[command(flatten)]
        grammar: GrammarArgs,
        #[arg(short = 'a', long = "automaton")]
        automaton: Option<PathBuf>,
        #[arg(short = 'w', long = "word", allow_hyphen_values = true)]
        word: Option<String>,
    },
}

/// A failure carrying its exit status and message.
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

    fn from_error(path: Option<&Path>, e: Error) -> Self {
        let code = match e {
            Error::StateLimit { .. } => EXIT_LIMIT,
            _ => EXIT_USAGE,
        };
        let message = match (path, &e) {
            (Some(p), Error::Syntax { line, message }) => {
                format!("{}:{line}: {message}", p.display())
            }
            (Some(p), _) => format!("{}: {e}", p.display()),
            (None, _) => e.to_string(),
        };
        Failure { code, message }
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn print(&mut self, text: &str) -> Result<(), Failure> {
        self.out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("writing output: {e}")))
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }

    fn stats(&mut self, report: &AnalysisReport, enabled: bool) {
        if enabled {
            for run in &report.runs {
                let _ = writeln!(self.err, "{}", run.counters.to_json());
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match execute(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_grammar(args: &GrammarArgs) -> Result<Grammar, Failure> {
    let text = read(&args.grammar)?;
    let g = parse_grammar(&text).map_err(|e| Failure::from_error(Some(&args.grammar), e))?;
    match &args.start {
        Some(s) => g.with_start(s).map_err(|e| Failure::from_error(None, e)),
        None => Ok(g),
    }
}

fn load_automaton(
    path: &Path,
    table: &mut SymbolTable,
    base: &[Symbol],
    io: &mut Io,
) -> Result<LoadedAutomaton, Failure> {
    let text = read(path)?;
    let loaded =
        parse_automaton(&text, table, base).map_err(|e| Failure::from_error(Some(path), e))?;
    if !loaded.foreign.is_empty() {
        let names: Vec<&str> = loaded.foreign.iter().map(|&s| table.name(s)).collect();
        io.warn(&format!(
            "{}: labels not in the grammar: {}",
            path.display(),
            names.join(" ")
        ));
    }
    Ok(loaded)
}

fn word(g: &Grammar, text: &str) -> Result<Vec<Symbol>, Failure> {
    g.word(text).map_err(|e| Failure::from_error(None, e))
}

fn bool_exit(yes: bool) -> i32 {
    if yes {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn print_set(io: &mut Io, g: &Grammar, set: &BTreeSet<Symbol>) -> Outcome {
    let mut names: Vec<&str> = set.iter().map(|&s| g.name(s)).collect();
    names.sort_unstable();
    let mut text = String::new();
    for n in names {
        writeln!(text, "{n}").unwrap();
    }
    io.print(&text)?;
    Ok(EXIT_YES)
}

/// The automaton in its own text format; added transitions follow a comment.
fn render_automaton(
    loaded: &LoadedAutomaton,
    transitions: &[crate::Transition],
    added_from: usize,
    table: &SymbolTable,
) -> String {
    let names = &loaded.state_names;
    let nfa = &loaded.nfa;
    let mut text = String::new();
    writeln!(text, "states: {}", names.join(" ")).unwrap();
    writeln!(text, "initial: {}", names[nfa.initial()]).unwrap();
    let finals: Vec<&str> = nfa.finals().iter().map(|&q| names[q].as_str()).collect();
    writeln!(text, "final: {}", finals.join(" ")).unwrap();
    for (i, t) in transitions.iter().enumerate() {
        if i == added_from {
            writeln!(text, "# added").unwrap();
        }
        writeln!(
            text,
            "{} {} {}",
            names[t.from],
            table.name(t.label),
            names[t.to]
        )
        .unwrap();
    }
    text
}

fn execute(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Prestar {
            grammar,
            automaton,
            dot,
            seed,
        } => {
            let g = load_grammar(&grammar)?;
            let ng = normalize(&g);
            let index = build_index(&ng);
            let mut table = ng.symbols().clone();
            let terminals: Vec<Symbol> = g.terminals().collect();
            let loaded = load_automaton(&automaton, &mut table, &terminals, io)?;
            let order = seed.map_or(PopOrder::Stack, PopOrder::Random);
            let sat = saturate_with(&index, &loaded.nfa, order);
            if !sat.inert_labels().is_empty() {
                let names: Vec<&str> = sat.inert_labels().iter().map(|&s| table.name(s)).collect();
                io.warn(&format!(
                    "no production reads these labels: {}",
                    names.join(" ")
                ));
            }
            let mut ordered: Vec<crate::Transition> =
                loaded.nfa.transitions().iter().copied().collect();
            ordered.extend(sat.added().copied());
            let text = render_automaton(&loaded, &ordered, loaded.nfa.transitions().len(), &table);
            io.print(&text)?;
            if let Some(path) = dot {
                std::fs::write(&path, sat.to_dot_named(&table, Some(&loaded.state_names)))
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            if grammar.stats {
                let _ = writeln!(io.err, "{}", sat.counters().to_json());
            }
            Ok(EXIT_YES)
        }
        Command::Member { grammar, word: w } => {
            let g = load_grammar(&grammar)?;
            let w = word(&g, &w.word)?;
            let report = analyze(&g, &Query::Membership(w))?;
            io.stats(&report, grammar.stats);
            let yes = report.as_bool() == Some(true);
            io.print(if yes { "yes\n" } else { "no\n" })?;
            Ok(bool_exit(yes))
        }
        Command::Parse { grammar, word: w } => {
            let g = load_grammar(&grammar)?;
            let w = word(&g, &w.word)?;
            let report = analyze(&g, &Query::Parse(w))?;
            io.stats(&report, grammar.stats);
            match &report.derivation {
                Some(parsed) => {
                    let tree = parsed.lift().map_err(|e| Failure::from_error(None, e))?;
                    io.print(&tree.render(&g))?;
                    Ok(EXIT_YES)
                }
                None => {
                    io.print("no derivation\n")?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Empty { grammar } => boolean(io, &grammar, Query::Empty, "empty", "nonempty"),
        Command::Finite { grammar } => boolean(io, &grammar, Query::Finite, "finite", "infinite"),
        Command::Useless { grammar } => set_query(io, &grammar, Query::Useless),
        Command::Productive { grammar } => set_query(io, &grammar, Query::Productive),
        Command::Reachable { grammar } => set_query(io, &grammar, Query::Reachable),
        Command::Nullable { grammar } => set_query(io, &grammar, Query::Nullable),
        Command::Contain {
            grammar,
            automaton,
            complement,
            max_dfa_states,
        } => {
            let g = load_grammar(&grammar)?;
            let mut table = g.symbols().clone();
            let terminals: Vec<Symbol> = g.terminals().collect();
            let loaded = load_automaton(&automaton, &mut table, &terminals, io)?;
            // Foreign labels are terminals the grammar never produces.
            let g = Grammar::new(table, g.productions().to_vec(), g.start())
                .map_err(|e| Failure::from_error(None, e))?;
            let lbar = if complement {
                loaded.nfa
            } else {
                analyses::complement_over_terminals(&g, &loaded.nfa, max_dfa_states)
                    .map_err(|e| Failure::from_error(Some(&automaton), e))?
            };
            let report = analyze(&g, &Query::Contained(lbar))?;
            io.stats(&report, grammar.stats);
            let yes = report.as_bool() == Some(true);
            io.print(if yes {
                "contained\n"
            } else {
                "not contained\n"
            })?;
            Ok(bool_exit(yes))
        }
        Command::Oracle {
            grammar,
            automaton,
            word: w,
        } => {
            let g = load_grammar(&grammar)?;
            match (automaton, w) {
                (Some(path), None) => {
                    let mut table = g.symbols().clone();
                    let terminals: Vec<Symbol> = g.terminals().collect();
                    let loaded = load_automaton(&path, &mut table, &terminals, io)?;
                    let g = Grammar::new(table.clone(), g.productions().to_vec(), g.start())
                        .map_err(|e| Failure::from_error(None, e))?;
                    let all = oracle::naive_saturate(&g, &loaded.nfa);
                    let mut ordered: Vec<crate::Transition> =
                        loaded.nfa.transitions().iter().copied().collect();
                    ordered.extend(all.iter().filter(|t| !loaded.nfa.has_transition(t)));
                    let original = loaded.nfa.transitions().len();
                    io.print(&render_automaton(&loaded, &ordered, original, &table))?;
                    Ok(EXIT_YES)
                }
                (None, Some(text)) => {
                    let w = word(&g, &text)?;
                    let yes = oracle::cyk_membership(&oracle::to_full_cnf(&g), &w);
                    io.print(if yes { "yes\n" } else { "no\n" })?;
                    Ok(bool_exit(yes))
                }
                _ => Err(Failure::usage(
                    "oracle needs exactly one of --automaton or --word",
                )),
            }
        }
    }
}

fn analyze(g: &Grammar, query: &Query) -> Result<AnalysisReport, Failure> {
    analyses::analyze(g, query).map_err(|e| Failure::from_error(None, e))
}

fn boolean(io: &mut Io, args: &GrammarArgs, query: Query, yes: &str, no: &str) -> Outcome {
    let g = load_grammar(args)?;
    let report = analyze(&g, &query)?;
    io.stats(&report, args.stats);
    let answer = report.as_bool() == Some(true);
    io.print(&format!("{}\n", if answer { yes } else { no }))?;
    Ok(bool_exit(answer))
}

fn set_query(io: &mut Io, args: &GrammarArgs, query: Query) -> Outcome {
    let g = load_grammar(args)?;
    let report = analyze(&g, &query)?;
    io.stats(&report, args.stats);
    print_set(io, &g, report.symbols().expect("set-valued query"))
}
