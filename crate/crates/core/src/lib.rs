//! Context-free grammar analyses driven by one engine: saturating a finite
//! automaton until it accepts `pre*(L)`, the sentential forms from which some
//! string of `L` can be derived.
//!
//! Membership, parsing, emptiness, containment, finiteness and the
//! productive / reachable / useless / nullable variable sets are each answered
//! by building a small automaton, saturating it with [`prestar::saturate`] and
//! inspecting the result.

pub mod analyses;
pub mod automaton;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod grammar;
pub mod oracle;
pub mod prestar;

pub use analyses::{
    analyze, contained_in, contained_in_language, is_empty, is_finite, membership,
    nullable_variables, parse, productive_variables, reachable_variables, useless_variables,
    AnalysisReport, Answer, Parsed, Query, QueryKind, RunStats,
};
pub use automaton::{Nfa, State, Transition};
pub use derivation::Derivation;
pub use error::{Error, Result};
pub use grammar::{
    build_index, normalize, parse_grammar, Grammar, NormalizedGrammar, ProductionIndex, Symbol,
};
pub use prestar::{saturate, saturate_with, Counters, PopOrder, SaturatedAutomaton};
