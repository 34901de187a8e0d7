//! Context-free grammars: symbols, text format, extended Chomsky normal form
//! and the production index consumed by the saturation engine.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense handle for a grammar symbol. Ids are indexes into a [`SymbolTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(index: usize) -> Self {
        Symbol(u32::try_from(index).expect("symbol id overflow"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Variable,
    Terminal,
}

/// Names and kinds of every symbol known to a grammar.
///
/// Ids are dense and assigned in insertion order. A name is bound to exactly
/// one kind for the lifetime of the table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    kinds: Vec<SymbolKind>,
    lookup: HashMap<String, Symbol>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Returns the existing symbol for `name`, or creates one of `kind`.
    ///
    /// Fails if `name` is already bound to the other kind.
    pub fn intern(&mut self, name: &str, kind: SymbolKind) -> Result<Symbol> {
        if let Some(&sym) = self.lookup.get(name) {
            if self.kinds[sym.index()] != kind {
                return Err(Error::Malformed(format!(
                    "`{name}` used both as a variable and as a terminal"
                )));
            }
            return Ok(sym);
        }
        let sym = Symbol::new(self.names.len());
        self.names.push(name.to_owned());
        self.kinds.push(kind);
        self.lookup.insert(name.to_owned(), sym);
        Ok(sym)
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.lookup.get(name).copied()
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym.index() < self.names.len()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.index()]
    }

    pub fn kind(&self, sym: Symbol) -> SymbolKind {
        self.kinds[sym.index()]
    }

    pub fn is_variable(&self, sym: Symbol) -> bool {
        self.contains(sym) && self.kind(sym) == SymbolKind::Variable
    }

    pub fn is_terminal(&self, sym: Symbol) -> bool {
        self.contains(sym) && self.kind(sym) == SymbolKind::Terminal
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(Symbol::new)
    }

    pub fn variables(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols()
            .filter(|&s| self.kind(s) == SymbolKind::Variable)
    }

    pub fn terminals(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols()
            .filter(|&s| self.kind(s) == SymbolKind::Terminal)
    }

    /// Space-separated names, `eps` for the empty string.
    pub fn render(&self, syms: &[Symbol]) -> String {
        if syms.is_empty() {
            return EPSILON.to_owned();
        }
        syms.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// A name derived from `base` that is not yet taken.
    fn fresh_name(&self, base: String) -> String {
        let mut name = base;
        while self.lookup.contains_key(&name) {
            name.push('\'');
        }
        name
    }
}

const EPSILON: &str = "eps";
const ARROW: &str = "->";
const ALT: &str = "|";
const START: &str = "start:";

fn is_reserved(token: &str) -> bool {
    matches!(token, EPSILON | ARROW | ALT | START)
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('#')
        && !name.chars().any(char::is_whitespace)
        && !is_reserved(name)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: Symbol,
    pub body: Vec<Symbol>,
}

impl Production {
    pub fn new(lhs: Symbol, body: Vec<Symbol>) -> Self {
        Production { lhs, body }
    }
}

/// A context-free grammar `(V, T, P, S)`.
///
/// `V` and `T` are the variable and terminal symbols of the table. Grammars
/// are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    symbols: SymbolTable,
    productions: Vec<Production>,
    start: Symbol,
}

impl Grammar {
    /// Builds a grammar, checking that every production is well-formed.
    pub fn new(symbols: SymbolTable, productions: Vec<Production>, start: Symbol) -> Result<Self> {
        for sym in symbols.symbols() {
            let name = symbols.name(sym);
            if !valid_name(name) {
                return Err(Error::Malformed(format!("invalid symbol name `{name}`")));
            }
        }
        if !symbols.is_variable(start) {
            return Err(Error::Malformed("start symbol is not a variable".into()));
        }
        for p in &productions {
            if !symbols.is_variable(p.lhs) {
                return Err(Error::Malformed(
                    "production left-hand side is not a variable".into(),
                ));
            }
            if let Some(bad) = p.body.iter().find(|s| !symbols.contains(**s)) {
                return Err(Error::UnknownSymbol(format!("#{}", bad.index())));
            }
        }
        Ok(Grammar {
            symbols,
            productions,
            start,
        })
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> Symbol {
        self.start
    }

    pub fn variables(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.variables()
    }

    pub fn terminals(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.terminals()
    }

    pub fn name(&self, sym: Symbol) -> &str {
        self.symbols.name(sym)
    }

    /// Same grammar with a different start variable.
    pub fn with_start(&self, name: &str) -> Result<Grammar> {
        match self.symbols.lookup(name) {
            Some(sym) if self.symbols.is_variable(sym) => Ok(Grammar {
                start: sym,
                ..self.clone()
            }),
            _ => Err(Error::UnknownVariable(name.to_owned())),
        }
    }

    /// Same symbols and start, restricted to the productions `keep` accepts.
    pub fn retain_productions(&self, keep: impl Fn(&Production) -> bool) -> Grammar {
        Grammar {
            symbols: self.symbols.clone(),
            productions: self
                .productions
                .iter()
                .filter(|p| keep(p))
                .cloned()
                .collect(),
            start: self.start,
        }
    }

    /// Resolves a whitespace-separated list of terminal names.
    pub fn word(&self, text: &str) -> Result<Vec<Symbol>> {
        text.split_whitespace()
            .map(|tok| match self.symbols.lookup(tok) {
                Some(sym) if self.symbols.is_terminal(sym) => Ok(sym),
                Some(_) => Err(Error::NotATerminal(tok.to_owned())),
                None => Err(Error::UnknownSymbol(tok.to_owned())),
            })
            .collect()
    }

    /// Resolves a whitespace-separated sentential form (variables allowed).
    pub fn form(&self, text: &str) -> Result<Vec<Symbol>> {
        text.split_whitespace()
            .map(|tok| {
                self.symbols
                    .lookup(tok)
                    .ok_or_else(|| Error::UnknownSymbol(tok.to_owned()))
            })
            .collect()
    }

    /// Renders the grammar in the text format accepted by [`parse_grammar`].
    ///
    /// Productions are grouped by left-hand side in order of first appearance.
    pub fn render(&self) -> String {
        let mut out = format!("{START} {}\n", self.name(self.start));
        let mut order: Vec<Symbol> = Vec::new();
        for p in &self.productions {
            if !order.contains(&p.lhs) {
                order.push(p.lhs);
            }
        }
        for lhs in order {
            let alts: Vec<String> = self
                .productions
                .iter()
                .filter(|p| p.lhs == lhs)
                .map(|p| self.symbols.render(&p.body))
                .collect();
            out.push_str(&format!(
                "{} {ARROW} {}\n",
                self.name(lhs),
                alts.join(" | ")
            ));
        }
        out
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for Grammar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_grammar(s)
    }
}

struct RawRule {
    lhs: String,
    body: Vec<String>,
}

/// Parses the grammar text format.
///
/// ```text
/// # comment
/// start: S
/// S -> A B | a
///    | b
/// A -> eps
/// ```
///
/// Tokens are whitespace-separated. A token starting with `#` comments out
/// the rest of the line. Every left-hand-side token is a variable; all other
/// tokens are terminals. Without a `start:` line the first left-hand side is
/// the start symbol.
pub fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut rules: Vec<RawRule> = Vec::new();
    let mut start: Option<(usize, String)> = None;
    let mut current_lhs: Option<String> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens: Vec<&str> = raw_line
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        let Some(&first) = tokens.first() else {
            continue;
        };

        if first == START {
            if tokens.len() != 2 {
                return Err(Error::syntax(line_no, "expected `start: <variable>`"));
            }
            if start.is_some() {
                return Err(Error::syntax(line_no, "duplicate `start:` directive"));
            }
            start = Some((line_no, tokens[1].to_owned()));
            continue;
        }

        let (lhs, rest) = if first == ALT {
            let lhs = current_lhs
                .clone()
                .ok_or_else(|| Error::syntax(line_no, "`|` continuation without a rule"))?;
            (lhs, &tokens[..])
        } else {
            if tokens.get(1) != Some(&ARROW) {
                return Err(Error::syntax(line_no, "expected `<variable> -> ...`"));
            }
            if is_reserved(first) {
                return Err(Error::syntax(
                    line_no,
                    format!("`{first}` cannot be a variable"),
                ));
            }
            (first.to_owned(), &tokens[2..])
        };
        current_lhs = Some(lhs.clone());

        let mut alternatives: Vec<Vec<&str>> = vec![Vec::new()];
        for &tok in rest {
            if tok == ALT {
                alternatives.push(Vec::new());
            } else if tok == ARROW || tok == START {
                return Err(Error::syntax(line_no, format!("unexpected `{tok}`")));
            } else {
                alternatives.last_mut().unwrap().push(tok);
            }
        }
        if first == ALT {
            // `| a b` splits into ["", "a b"]; drop the leading empty piece
            alternatives.remove(0);
        }
        for alt in alternatives {
            let body = match alt.as_slice() {
                [] => return Err(Error::syntax(line_no, "empty alternative (write `eps`)")),
                [EPSILON] => Vec::new(),
                toks if toks.contains(&EPSILON) => {
                    return Err(Error::syntax(line_no, "`eps` must stand alone"));
                }
                toks => toks.iter().map(|t| (*t).to_owned()).collect(),
            };
            rules.push(RawRule {
                lhs: lhs.clone(),
                body,
            });
        }
    }

    if rules.is_empty() {
        return Err(Error::EmptyGrammar);
    }

    let mut symbols = SymbolTable::new();
    for rule in &rules {
        symbols.intern(&rule.lhs, SymbolKind::Variable)?;
    }
    // group by lhs, keeping the relative order of each group's alternatives
    let lhs_rank = |name: &str| {
        symbols
            .lookup(name)
            .map(Symbol::index)
            .unwrap_or(usize::MAX)
    };
    let mut order: Vec<usize> = (0..rules.len()).collect();
    order.sort_by_key(|&i| lhs_rank(&rules[i].lhs));

    let mut productions = Vec::with_capacity(rules.len());
    for i in order {
        let rule = &rules[i];
        let lhs = symbols.lookup(&rule.lhs).expect("interned above");
        let mut body = Vec::with_capacity(rule.body.len());
        for tok in &rule.body {
            let sym = match symbols.lookup(tok) {
                Some(sym) => sym,
                None => symbols.intern(tok, SymbolKind::Terminal)?,
            };
            body.push(sym);
        }
        productions.push(Production::new(lhs, body));
    }

    let start = match start {
        Some((_, name)) => match symbols.lookup(&name) {
            Some(sym) if symbols.is_variable(sym) => sym,
            _ => return Err(Error::UnknownVariable(name)),
        },
        None => productions[0].lhs,
    };
    Grammar::new(symbols, productions, start)
}

/// Programmatic grammar construction, mainly for tests and generators.
#[derive(Debug, Default)]
pub struct GrammarBuilder {
    symbols: SymbolTable,
    productions: Vec<Production>,
    start: Option<Symbol>,
    error: Option<Error>,
}

impl GrammarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&mut self, r: Result<Symbol>) -> Option<Symbol> {
        match r {
            Ok(s) => Some(s),
            Err(e) => {
                self.error.get_or_insert(e);
                None
            }
        }
    }

    pub fn variable(mut self, name: &str) -> Self {
        let r = self.symbols.intern(name, SymbolKind::Variable);
        self.record(r);
        self
    }

    pub fn terminal(mut self, name: &str) -> Self {
        let r = self.symbols.intern(name, SymbolKind::Terminal);
        self.record(r);
        self
    }

    /// Adds `lhs -> body`; all names must already be declared.
    pub fn rule(mut self, lhs: &str, body: &[&str]) -> Self {
        let resolve = |name: &str| {
            self.symbols
                .lookup(name)
                .ok_or_else(|| Error::UnknownSymbol(name.to_owned()))
        };
        let lhs = resolve(lhs);
        let body: Result<Vec<Symbol>> = body.iter().map(|n| resolve(n)).collect();
        match (lhs, body) {
            (Ok(lhs), Ok(body)) => self.productions.push(Production::new(lhs, body)),
            (Err(e), _) | (_, Err(e)) => {
                self.error.get_or_insert(e);
            }
        }
        self
    }

    pub fn start(mut self, name: &str) -> Self {
        let r = self
            .symbols
            .lookup(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_owned()));
        self.start = self.record(r);
        self
    }

    /// Start defaults to the first declared variable.
    pub fn build(self) -> Result<Grammar> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let start = match self.start {
            Some(s) => s,
            None => self.symbols.variables().next().ok_or(Error::EmptyGrammar)?,
        };
        Grammar::new(self.symbols, self.productions, start)
    }
}

// ---------------------------------------------------------------------------
// Extended Chomsky normal form
// ---------------------------------------------------------------------------

/// Where a normalized production came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductionOrigin {
    /// The original production with this index, or the head piece of its
    /// binarization (same left-hand side).
    Original(usize),
    /// A tail piece of the binarization of this original production.
    Continuation(usize),
    /// `_a -> a` for a terminal wrapper.
    Wrapper,
}

/// What a symbol introduced by normalization stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreshSymbol {
    /// Derives exactly the wrapped terminal.
    Wrapper(Symbol),
    /// Suffix of the body of an original production.
    Continuation(usize),
}

/// A grammar in extended CNF together with its origin map.
///
/// The symbol table extends the original one; original symbol ids are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedGrammar {
    grammar: Grammar,
    source: Grammar,
    origin: Vec<ProductionOrigin>,
    fresh: HashMap<Symbol, FreshSymbol>,
}

impl NormalizedGrammar {
    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    /// The grammar this one was normalized from.
    pub fn source(&self) -> &Grammar {
        &self.source
    }

    pub fn symbols(&self) -> &SymbolTable {
        self.grammar.symbols()
    }

    pub fn productions(&self) -> &[Production] {
        self.grammar.productions()
    }

    pub fn start(&self) -> Symbol {
        self.grammar.start()
    }

    pub fn origin(&self, production: usize) -> ProductionOrigin {
        self.origin[production]
    }

    pub fn fresh(&self, sym: Symbol) -> Option<FreshSymbol> {
        self.fresh.get(&sym).copied()
    }

    pub fn fresh_count(&self) -> usize {
        self.fresh.len()
    }
}

/// Brings `g` into extended CNF (`A -> B C`, `A -> a`, `A -> B`, `A -> eps`).
///
/// Terminals in bodies of length two or more are replaced by wrapper variables
/// `_a` with `_a -> a`; bodies of length `k >= 3` become `k - 1` binary
/// productions through fresh variables `<lhs>#<n>`. Shorter bodies are copied
/// verbatim, so the transformation is the identity on extended-CNF input.
pub fn normalize(g: &Grammar) -> NormalizedGrammar {
    let mut symbols = g.symbols.clone();
    let mut productions = Vec::new();
    let mut origin = Vec::new();
    let mut fresh = HashMap::new();
    let mut wrappers: Vec<(Symbol, Symbol)> = Vec::new();
    let mut counter = 0usize;

    for (i, p) in g.productions.iter().enumerate() {
        if p.body.len() <= 1 {
            productions.push(p.clone());
            origin.push(ProductionOrigin::Original(i));
            continue;
        }
        let body: Vec<Symbol> = p
            .body
            .iter()
            .map(|&s| {
                if !symbols.is_terminal(s) {
                    return s;
                }
                if let Some(&(_, w)) = wrappers.iter().find(|(t, _)| *t == s) {
                    return w;
                }
                let name = symbols.fresh_name(format!("_{}", symbols.name(s)));
                let w = symbols
                    .intern(&name, SymbolKind::Variable)
                    .expect("fresh name is unused");
                fresh.insert(w, FreshSymbol::Wrapper(s));
                wrappers.push((s, w));
                w
            })
            .collect();

        let mut lhs = p.lhs;
        let mut piece_origin = ProductionOrigin::Original(i);
        for &head in &body[..body.len() - 2] {
            counter += 1;
            let base = symbols.name(p.lhs).to_owned();
            let mut name = format!("{base}#{counter}");
            while symbols.lookup(&name).is_some() {
                counter += 1;
                name = format!("{base}#{counter}");
            }
            let next = symbols
                .intern(&name, SymbolKind::Variable)
                .expect("fresh name is unused");
            fresh.insert(next, FreshSymbol::Continuation(i));
            productions.push(Production::new(lhs, vec![head, next]));
            origin.push(piece_origin);
            lhs = next;
            piece_origin = ProductionOrigin::Continuation(i);
        }
        let n = body.len();
        productions.push(Production::new(lhs, vec![body[n - 2], body[n - 1]]));
        origin.push(piece_origin);
    }

    for (t, w) in wrappers {
        productions.push(Production::new(w, vec![t]));
        origin.push(ProductionOrigin::Wrapper);
    }

    let grammar = Grammar {
        symbols,
        productions,
        start: g.start,
    };
    NormalizedGrammar {
        grammar,
        source: g.clone(),
        origin,
        fresh,
    }
}

/// True if every production body has one of the four extended-CNF shapes.
pub fn is_extended_cnf(g: &Grammar) -> bool {
    let st = g.symbols();
    g.productions().iter().all(|p| match p.body.as_slice() {
        [] | [_] => true,
        [b, c] => st.is_variable(*b) && st.is_variable(*c),
        _ => false,
    })
}

/// Every symbol that occurs in some production, on either side.
pub fn occurring_symbols(g: &NormalizedGrammar) -> BTreeSet<Symbol> {
    g.productions()
        .iter()
        .flat_map(|p| std::iter::once(p.lhs).chain(p.body.iter().copied()))
        .collect()
}

// ---------------------------------------------------------------------------
// Production index
// ---------------------------------------------------------------------------

pub type ProductionId = usize;

/// Body of an extended-CNF production.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Body {
    Pair(Symbol, Symbol),
    Terminal(Symbol),
    Unit(Symbol),
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalProduction {
    pub lhs: Symbol,
    pub body: Body,
}

/// Extended-CNF productions bucketed by the body symbol that triggers them.
///
/// `A -> B` is in `chain[B]`; `A -> B C` is in `front[B]` and `back[C]`;
/// `A -> a` is in `term[a]`; `A -> eps` is in `eps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductionIndex {
    productions: Vec<NormalProduction>,
    chain: Vec<Vec<ProductionId>>,
    front: Vec<Vec<ProductionId>>,
    back: Vec<Vec<ProductionId>>,
    term: Vec<Vec<ProductionId>>,
    eps: Vec<ProductionId>,
    variables: Vec<bool>,
    symbol_count: usize,
}

impl ProductionIndex {
    /// Number of productions `p`.
    pub fn len(&self) -> usize {
        self.productions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.productions.is_empty()
    }

    pub fn symbol_count(&self) -> usize {
        self.symbol_count
    }

    pub fn is_variable(&self, sym: Symbol) -> bool {
        self.variables.get(sym.index()).copied().unwrap_or(false)
    }

    pub fn production(&self, id: ProductionId) -> NormalProduction {
        self.productions[id]
    }

    pub fn productions(&self) -> &[NormalProduction] {
        &self.productions
    }

    fn bucket(buckets: &[Vec<ProductionId>], sym: Symbol) -> &[ProductionId] {
        buckets.get(sym.index()).map_or(&[], Vec::as_slice)
    }

    pub fn chain(&self, sym: Symbol) -> &[ProductionId] {
        Self::bucket(&self.chain, sym)
    }

    pub fn front(&self, sym: Symbol) -> &[ProductionId] {
        Self::bucket(&self.front, sym)
    }

    pub fn back(&self, sym: Symbol) -> &[ProductionId] {
        Self::bucket(&self.back, sym)
    }

    pub fn term(&self, sym: Symbol) -> &[ProductionId] {
        Self::bucket(&self.term, sym)
    }

    pub fn eps(&self) -> &[ProductionId] {
        &self.eps
    }
}

/// Buckets the productions of `g`. Ids are positions in `g.productions()`.
pub fn build_index(g: &NormalizedGrammar) -> ProductionIndex {
    let st = g.symbols();
    let n = st.len();
    let mut index = ProductionIndex {
        productions: Vec::with_capacity(g.productions().len()),
        chain: vec![Vec::new(); n],
        front: vec![Vec::new(); n],
        back: vec![Vec::new(); n],
        term: vec![Vec::new(); n],
        eps: Vec::new(),
        variables: st.symbols().map(|s| st.is_variable(s)).collect(),
        symbol_count: n,
    };
    for (id, p) in g.productions().iter().enumerate() {
        let body = match *p.body.as_slice() {
            [] => {
                index.eps.push(id);
                Body::Empty
            }
            [a] if st.is_terminal(a) => {
                index.term[a.index()].push(id);
                Body::Terminal(a)
            }
            [b] => {
                index.chain[b.index()].push(id);
                Body::Unit(b)
            }
            [b, c] => {
                index.front[b.index()].push(id);
                index.back[c.index()].push(id);
                Body::Pair(b, c)
            }
            _ => unreachable!("normalized grammar has a body longer than two"),
        };
        index
            .productions
            .push(NormalProduction { lhs: p.lhs, body });
    }
    index
}
