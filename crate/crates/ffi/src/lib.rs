//! C interface to `prestar-core`.
//!
//! Every fallible call returns a [`PrestarStatus`]; on failure
//! [`prestar_last_error`] describes the problem for the calling thread.
//! Handles are opaque and must be released with their `_free` function.
//! Strings returned through out-parameters are owned by the caller and
//! released with [`prestar_string_free`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prestar_core::analyses;
use prestar_core::automaton::{parse_automaton, LoadedAutomaton};
use prestar_core::grammar::{build_index, normalize, parse_grammar, Grammar, Symbol, SymbolTable};
use prestar_core::prestar::{saturate, SaturatedAutomaton};
use prestar_core::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrestarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Grammar or automaton text is malformed.
    Syntax = 3,
    /// A name is unknown, or not of the expected kind.
    UnknownSymbol = 4,
    NotInLanguage = 5,
    /// Determinization exceeded its state limit.
    ResourceLimit = 6,
    Internal = 7,
}

/// Saturation counters.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrestarCounters {
    pub pops: u64,
    pub unit_fires: u64,
    pub binary_fires: u64,
    pub adds: u64,
}

/// A parsed grammar.
pub struct PrestarGrammar {
    grammar: Grammar,
}

/// An automaton text checked against a grammar; labels are resolved again
/// for each use since saturation and containment need different tables.
pub struct PrestarAutomaton {
    text: String,
}

/// A saturated automaton together with the symbol names it uses.
pub struct PrestarSaturated {
    saturated: SaturatedAutomaton,
    symbols: SymbolTable,
    state_names: Vec<String>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(PrestarStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } | Error::EmptyGrammar | Error::Malformed(_) => {
                PrestarStatus::Syntax
            }
            Error::UnknownVariable(_) | Error::UnknownSymbol(_) | Error::NotATerminal(_) => {
                PrestarStatus::UnknownSymbol
            }
            Error::NotInLanguage => PrestarStatus::NotInLanguage,
            Error::StateLimit { .. } => PrestarStatus::ResourceLimit,
            _ => PrestarStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(body: impl FnOnce() -> Outcome) -> PrestarStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PrestarStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            PrestarStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(PrestarStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PrestarStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

fn set_text(g: &Grammar, set: &BTreeSet<Symbol>) -> String {
    let mut names: Vec<&str> = set.iter().map(|&s| g.name(s)).collect();
    names.sort_unstable();
    names.iter().map(|n| format!("{n}\n")).collect()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn prestar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn prestar_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn prestar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses grammar text.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_grammar_parse(
    source: *const c_char,
    out: *mut *mut PrestarGrammar,
) -> PrestarStatus {
    guard(|| {
        let grammar = parse_grammar(text(source, "source")?)?;
        let boxed = Box::into_raw(Box::new(PrestarGrammar { grammar }));
        store(out, boxed, "out").inspect_err(|_| drop(Box::from_raw(boxed)))
    })
}

/// # Safety
/// `g` must come from [`prestar_grammar_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn prestar_grammar_free(g: *mut PrestarGrammar) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Replaces the start symbol.
///
/// # Safety
/// `g` must be a live grammar handle; `name` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn prestar_grammar_set_start(
    g: *mut PrestarGrammar,
    name: *const c_char,
) -> PrestarStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("g"))?;
        g.grammar = g.grammar.with_start(text(name, "name")?)?;
        Ok(())
    })
}

/// The grammar in its text format.
///
/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_grammar_render(
    g: *const PrestarGrammar,
    out: *mut *mut c_char,
) -> PrestarStatus {
    guard(|| {
        let g = handle(g, "g")?;
        store(out, owned_string(g.grammar.render()), "out")
    })
}

/// Whether the whitespace-separated `word` is in the language.
///
/// # Safety
/// `g` must be a live grammar handle, `word` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_member(
    g: *const PrestarGrammar,
    word: *const c_char,
    out: *mut bool,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        let w = g.word(text(word, "word")?)?;
        store(out, analyses::membership(g, &w)?, "out")
    })
}

/// An indented derivation of `word`, or `NotInLanguage`.
///
/// # Safety
/// As for [`prestar_member`].
#[no_mangle]
pub unsafe extern "C" fn prestar_parse(
    g: *const PrestarGrammar,
    word: *const c_char,
    out: *mut *mut c_char,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        let w = g.word(text(word, "word")?)?;
        let tree = analyses::parse(g, &w)?.lift()?;
        store(out, owned_string(tree.render(g)), "out")
    })
}

unsafe fn boolean(
    g: *const PrestarGrammar,
    out: *mut bool,
    f: fn(&Grammar) -> bool,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        store(out, f(g), "out")
    })
}

unsafe fn symbols(
    g: *const PrestarGrammar,
    out: *mut *mut c_char,
    f: fn(&Grammar) -> BTreeSet<Symbol>,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        store(out, owned_string(set_text(g, &f(g))), "out")
    })
}

/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_is_empty(
    g: *const PrestarGrammar,
    out: *mut bool,
) -> PrestarStatus {
    boolean(g, out, analyses::is_empty)
}

/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_is_finite(
    g: *const PrestarGrammar,
    out: *mut bool,
) -> PrestarStatus {
    boolean(g, out, analyses::is_finite)
}

/// Sorted variable names, one per line.
///
/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_productive(
    g: *const PrestarGrammar,
    out: *mut *mut c_char,
) -> PrestarStatus {
    symbols(g, out, analyses::productive_variables)
}

/// Sorted variable names, one per line.
///
/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_reachable(
    g: *const PrestarGrammar,
    out: *mut *mut c_char,
) -> PrestarStatus {
    symbols(g, out, analyses::reachable_variables)
}

/// Sorted variable names, one per line.
///
/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_useless(
    g: *const PrestarGrammar,
    out: *mut *mut c_char,
) -> PrestarStatus {
    symbols(g, out, analyses::useless_variables)
}

/// Sorted variable names, one per line.
///
/// # Safety
/// `g` must be a live grammar handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_nullable(
    g: *const PrestarGrammar,
    out: *mut *mut c_char,
) -> PrestarStatus {
    symbols(g, out, analyses::nullable_variables)
}

fn load(source: &str, table: &mut SymbolTable, g: &Grammar) -> Result<LoadedAutomaton, Failure> {
    let terminals: Vec<Symbol> = g.terminals().collect();
    Ok(parse_automaton(source, table, &terminals)?)
}

/// Parses automaton text, resolving labels against `g`. Labels the grammar
/// does not know are accepted as extra terminals.
///
/// # Safety
/// `g` must be a live grammar handle, `source` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_automaton_parse(
    g: *const PrestarGrammar,
    source: *const c_char,
    out: *mut *mut PrestarAutomaton,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        let source = text(source, "source")?;
        load(source, &mut g.symbols().clone(), g)?;
        let boxed = Box::into_raw(Box::new(PrestarAutomaton {
            text: source.to_owned(),
        }));
        store(out, boxed, "out").inspect_err(|_| drop(Box::from_raw(boxed)))
    })
}

/// # Safety
/// `a` must come from [`prestar_automaton_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn prestar_automaton_free(a: *mut PrestarAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Saturates `a` under `g`.
///
/// # Safety
/// `g` and `a` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_saturate(
    g: *const PrestarGrammar,
    a: *const PrestarAutomaton,
    out: *mut *mut PrestarSaturated,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        let a = handle(a, "a")?;
        let ng = normalize(g);
        let index = build_index(&ng);
        let mut table = ng.symbols().clone();
        let loaded = load(&a.text, &mut table, g)?;
        let saturated = saturate(&index, &loaded.nfa);
        let boxed = Box::into_raw(Box::new(PrestarSaturated {
            saturated,
            symbols: table,
            state_names: loaded.state_names,
        }));
        store(out, boxed, "out").inspect_err(|_| drop(Box::from_raw(boxed)))
    })
}

/// # Safety
/// `s` must come from [`prestar_saturate`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn prestar_saturated_free(s: *mut PrestarSaturated) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_saturated_counters(
    s: *const PrestarSaturated,
    out: *mut PrestarCounters,
) -> PrestarStatus {
    guard(|| {
        let c = handle(s, "s")?.saturated.counters();
        let counters = PrestarCounters {
            pops: c.pops,
            unit_fires: c.unit_fires,
            binary_fires: c.binary_fires,
            adds: c.adds,
        };
        store(out, counters, "out")
    })
}

/// Number of transitions after saturation, input transitions included.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_saturated_transition_count(
    s: *const PrestarSaturated,
    out: *mut usize,
) -> PrestarStatus {
    guard(|| {
        let n = handle(s, "s")?.saturated.transitions().len();
        store(out, n, "out")
    })
}

/// Whether the whitespace-separated sentential `form` is accepted.
///
/// # Safety
/// `s` must be a live handle, `form` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_saturated_accepts(
    s: *const PrestarSaturated,
    form: *const c_char,
    out: *mut bool,
) -> PrestarStatus {
    guard(|| {
        let s = handle(s, "s")?;
        let mut syms = Vec::new();
        for tok in text(form, "form")?.split_whitespace() {
            let sym = s
                .symbols
                .lookup(tok)
                .ok_or_else(|| Error::UnknownSymbol(tok.to_owned()))?;
            syms.push(sym);
        }
        let accepted = s
            .saturated
            .nfa()
            .alphabet()
            .is_superset(&syms.iter().copied().collect())
            && s.saturated.accepts(&syms)?;
        store(out, accepted, "out")
    })
}

/// GraphViz text; added transitions are dashed.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_saturated_dot(
    s: *const PrestarSaturated,
    out: *mut *mut c_char,
) -> PrestarStatus {
    guard(|| {
        let s = handle(s, "s")?;
        let dot = s.saturated.to_dot_named(&s.symbols, Some(&s.state_names));
        store(out, owned_string(dot), "out")
    })
}

/// Whether `L(g)` is contained in the language of `a`. With `complement`
/// set, `a` is taken to accept the complement of the target language and no
/// determinization happens; otherwise `a` is complemented within
/// `max_dfa_states` states.
///
/// # Safety
/// `g` and `a` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prestar_contained(
    g: *const PrestarGrammar,
    a: *const PrestarAutomaton,
    complement: bool,
    max_dfa_states: usize,
    out: *mut bool,
) -> PrestarStatus {
    guard(|| {
        let g = &handle(g, "g")?.grammar;
        let a = handle(a, "a")?;
        let mut table = g.symbols().clone();
        let loaded = load(&a.text, &mut table, g)?;
        let g = Grammar::new(table, g.productions().to_vec(), g.start())?;
        let lbar = if complement {
            loaded.nfa
        } else {
            analyses::complement_over_terminals(&g, &loaded.nfa, max_dfa_states)?
        };
        store(out, analyses::contained_in(&g, &lbar)?, "out")
    })
}
