use thiserror::Error;

/// Errors produced by the grammar, automaton and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("grammar has no rules")]
    EmptyGrammar,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("`{0}` is not a terminal of the grammar")]
    NotATerminal(String),

    #[error("{0}")]
    Malformed(String),

    #[error("word is not in the language")]
    NotInLanguage,

    #[error("transition {0} is not in the saturated automaton")]
    MissingTransition(String),

    #[error("transition {0} is an original terminal transition; it has no derivation")]
    NoDerivation(String),

    #[error("corrupt provenance at transition #{0}")]
    CorruptProvenance(usize),

    #[error("determinization exceeded {limit} states")]
    StateLimit { limit: usize },
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
