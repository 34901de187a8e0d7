//! Grammar analyses phrased as "build an automaton, saturate, query".

use std::collections::BTreeSet;

use crate::automaton::{
    complement, pumping_pattern_automaton, sigma_star_automaton, tstar_var_tstar_automaton,
    word_automaton, Nfa, Transition,
};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::grammar::{build_index, normalize, Grammar, NormalizedGrammar, ProductionIndex, Symbol};
use crate::prestar::{saturate, Counters, SaturatedAutomaton};

/// Size of one saturation run, kept for complexity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStats {
    pub productions: usize,
    pub states: usize,
    pub counters: Counters,
}

impl RunStats {
    pub fn within_cubic_bound(&self) -> bool {
        let s = self.states as u64;
        self.counters.binary_fires <= self.productions as u64 * s * s * s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Membership,
    Parse,
    Empty,
    Finite,
    Contained,
    Productive,
    Reachable,
    Useless,
    Nullable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Bool(bool),
    Symbols(BTreeSet<Symbol>),
}

/// Outcome of [`analyze`].
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub kind: QueryKind,
    pub answer: Answer,
    pub runs: Vec<RunStats>,
    /// For parse queries: derivation over the normalized grammar.
    pub derivation: Option<Parsed>,
}

impl AnalysisReport {
    /// Counters summed over every saturation the query needed.
    pub fn counters(&self) -> Counters {
        let mut total = Counters::default();
        for r in &self.runs {
            total += r.counters;
        }
        total
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self.answer {
            Answer::Bool(b) => Some(b),
            Answer::Symbols(_) => None,
        }
    }

    pub fn symbols(&self) -> Option<&BTreeSet<Symbol>> {
        match &self.answer {
            Answer::Symbols(s) => Some(s),
            Answer::Bool(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Query {
    Membership(Vec<Symbol>),
    Parse(Vec<Symbol>),
    Empty,
    Finite,
    /// `lbar` accepts the complement of the target language.
    Contained(Nfa),
    Productive,
    Reachable,
    Useless,
    Nullable,
}

/// A parse: a derivation over the normalized grammar plus the grammar itself,
/// whose origin map lets [`Parsed::lift`] recover an original derivation.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub derivation: Derivation,
    pub grammar: NormalizedGrammar,
}

impl Parsed {
    pub fn lift(&self) -> Result<Derivation> {
        self.derivation.lift(&self.grammar)
    }
}

/// Normalized grammar with its index; runs saturations and records their stats.
struct Engine {
    grammar: NormalizedGrammar,
    index: ProductionIndex,
    runs: Vec<RunStats>,
}

impl Engine {
    fn new(g: &Grammar) -> Self {
        let grammar = normalize(g);
        let index = build_index(&grammar);
        Engine {
            grammar,
            index,
            runs: Vec::new(),
        }
    }

    fn run(&mut self, a: &Nfa) -> SaturatedAutomaton {
        let sat = saturate(&self.index, a);
        self.runs.push(RunStats {
            productions: sat.production_count(),
            states: sat.state_count(),
            counters: sat.counters(),
        });
        sat
    }
}

fn check_word(g: &Grammar, w: &[Symbol]) -> Result<()> {
    for &s in w {
        if !g.symbols().contains(s) {
            return Err(Error::UnknownSymbol(format!("#{}", s.index())));
        }
        if !g.symbols().is_terminal(s) {
            return Err(Error::NotATerminal(g.name(s).to_owned()));
        }
    }
    Ok(())
}

fn original_variables(g: &Grammar) -> impl Iterator<Item = Symbol> + '_ {
    g.variables()
}

fn membership_engine(g: &Grammar, w: &[Symbol]) -> Result<(Engine, SaturatedAutomaton)> {
    check_word(g, w)?;
    let mut engine = Engine::new(g);
    let a = word_automaton(w, g.terminals());
    let sat = engine.run(&a);
    Ok((engine, sat))
}

fn final_transition(g: &Grammar, w: &[Symbol]) -> Transition {
    Transition::new(0, g.start(), w.len())
}

/// `w ∈ L(G)`, decided by `(q0, S, qn) ∈ pre*({w})`.
pub fn membership(g: &Grammar, w: &[Symbol]) -> Result<bool> {
    let (_, sat) = membership_engine(g, w)?;
    Ok(sat.contains(&final_transition(g, w)))
}

/// A derivation `S =>* w`, or [`Error::NotInLanguage`].
pub fn parse(g: &Grammar, w: &[Symbol]) -> Result<Parsed> {
    parse_with_runs(g, w).map(|(p, _)| p)
}

fn parse_with_runs(g: &Grammar, w: &[Symbol]) -> Result<(Parsed, Vec<RunStats>)> {
    let (engine, sat) = membership_engine(g, w)?;
    let t = final_transition(g, w);
    if !sat.contains(&t) {
        return Err(Error::NotInLanguage);
    }
    let derivation = sat.extract_derivation(&t, &engine.index)?;
    Ok((
        Parsed {
            derivation,
            grammar: engine.grammar,
        },
        engine.runs,
    ))
}

fn productive_in(engine: &mut Engine, g: &Grammar) -> BTreeSet<Symbol> {
    let sat = engine.run(&sigma_star_automaton(g.terminals()));
    original_variables(g)
        .filter(|&v| sat.contains(&Transition::new(0, v, 0)))
        .collect()
}

fn reachable_in(engine: &mut Engine, g: &Grammar) -> BTreeSet<Symbol> {
    let terminals: Vec<Symbol> = g.terminals().collect();
    original_variables(g)
        .filter(|&v| {
            let sat = engine.run(&tstar_var_tstar_automaton(terminals.iter().copied(), v));
            sat.contains(&Transition::new(0, g.start(), 1))
        })
        .collect()
}

/// Grammar restricted to productions whose symbols are all terminals or in
/// `keep` (left-hand side included).
fn restrict(g: &Grammar, keep: &BTreeSet<Symbol>) -> Grammar {
    let st = g.symbols();
    g.retain_productions(|p| {
        keep.contains(&p.lhs)
            && p.body
                .iter()
                .all(|s| st.is_terminal(*s) || keep.contains(s))
    })
}

fn useful_with(g: &Grammar, runs: &mut Vec<RunStats>) -> BTreeSet<Symbol> {
    let mut engine = Engine::new(g);
    let productive = productive_in(&mut engine, g);
    runs.append(&mut engine.runs);
    let restricted = restrict(g, &productive);
    let mut engine = Engine::new(&restricted);
    let reachable = reachable_in(&mut engine, &restricted);
    runs.append(&mut engine.runs);
    productive.intersection(&reachable).copied().collect()
}

/// Variables deriving some terminal string: `A ∈ pre*(T*)`.
pub fn productive_variables(g: &Grammar) -> BTreeSet<Symbol> {
    productive_in(&mut Engine::new(g), g)
}

/// Variables `A` with `S =>* uAv` for terminal strings `u, v`:
/// `S ∈ pre*(T* A T*)`, one saturation per variable.
pub fn reachable_variables(g: &Grammar) -> BTreeSet<Symbol> {
    reachable_in(&mut Engine::new(g), g)
}

/// Variables that occur in no derivation of a terminal word.
///
/// Productive variables are computed first; reachability is then decided on
/// the grammar restricted to productive symbols.
pub fn useless_variables(g: &Grammar) -> BTreeSet<Symbol> {
    let useful = useful_with(g, &mut Vec::new());
    original_variables(g)
        .filter(|v| !useful.contains(v))
        .collect()
}

/// `L(G) = ∅`, i.e. the start symbol is unproductive.
pub fn is_empty(g: &Grammar) -> bool {
    !productive_variables(g).contains(&g.start())
}

fn check_labels(g: &Grammar, a: &Nfa, terminals_only: bool) -> Result<()> {
    for &s in a.alphabet() {
        if !g.symbols().contains(s) {
            return Err(Error::UnknownSymbol(format!("#{}", s.index())));
        }
        if terminals_only && !g.symbols().is_terminal(s) {
            return Err(Error::NotATerminal(g.name(s).to_owned()));
        }
    }
    Ok(())
}

/// `L(G) ⊆ L` given an automaton `lbar` for the complement of `L`:
/// true iff `S ∉ pre*(L(lbar))`.
pub fn contained_in(g: &Grammar, lbar: &Nfa) -> Result<bool> {
    contained_runs(g, lbar).map(|(b, _)| b)
}

fn contained_runs(g: &Grammar, lbar: &Nfa) -> Result<(bool, Vec<RunStats>)> {
    check_labels(g, lbar, false)?;
    let mut engine = Engine::new(g);
    let sat = engine.run(lbar);
    Ok((!sat.accepts_symbol(g.start()), engine.runs))
}

/// `L(G) ⊆ L(l)`; complements `l` over the grammar's terminals first.
pub fn contained_in_language(g: &Grammar, l: &Nfa, max_dfa_states: usize) -> Result<bool> {
    contained_in(g, &complement_over_terminals(g, l, max_dfa_states)?)
}

/// Complement of `L(l)` relative to `T*`.
pub fn complement_over_terminals(g: &Grammar, l: &Nfa, max_dfa_states: usize) -> Result<Nfa> {
    check_labels(g, l, true)?;
    let mut l = l.clone();
    l.extend_alphabet(g.terminals());
    complement(&l, max_dfa_states)
}

fn finite_with(g: &Grammar, runs: &mut Vec<RunStats>) -> bool {
    let useful = useful_with(g, runs);
    if !useful.contains(&g.start()) {
        return true;
    }
    let reduced = restrict(g, &useful);
    let terminals: Vec<Symbol> = reduced.terminals().collect();
    let mut engine = Engine::new(&reduced);
    let pumps = useful.iter().any(|&v| {
        let sat = engine.run(&pumping_pattern_automaton(terminals.iter().copied(), v));
        sat.accepts_symbol(v)
    });
    runs.append(&mut engine.runs);
    !pumps
}

/// `L(G)` is finite: after removing useless symbols, no variable satisfies
/// `A ∈ pre*(T+ A T* ∪ T* A T+)`.
pub fn is_finite(g: &Grammar) -> bool {
    finite_with(g, &mut Vec::new())
}

/// Variables with `A =>* ε`: `A ∈ pre*({ε})`, one saturation.
pub fn nullable_variables(g: &Grammar) -> BTreeSet<Symbol> {
    nullable_in(&mut Engine::new(g), g)
}

fn nullable_in(engine: &mut Engine, g: &Grammar) -> BTreeSet<Symbol> {
    let mut eps = Nfa::new(1, 0);
    eps.set_final(0);
    let sat = engine.run(&eps);
    original_variables(g)
        .filter(|&v| sat.contains(&Transition::new(0, v, 0)))
        .collect()
}

/// Runs `query` and reports the answer with per-saturation statistics.
pub fn analyze(g: &Grammar, query: &Query) -> Result<AnalysisReport> {
    let report = |kind, answer, runs| AnalysisReport {
        kind,
        answer,
        runs,
        derivation: None,
    };
    Ok(match query {
        Query::Membership(w) => {
            let (engine, sat) = membership_engine(g, w)?;
            let yes = sat.contains(&final_transition(g, w));
            report(QueryKind::Membership, Answer::Bool(yes), engine.runs)
        }
        Query::Parse(w) => match parse_with_runs(g, w) {
            Ok((parsed, runs)) => AnalysisReport {
                derivation: Some(parsed),
                ..report(QueryKind::Parse, Answer::Bool(true), runs)
            },
            Err(Error::NotInLanguage) => {
                let (engine, _) = membership_engine(g, w)?;
                report(QueryKind::Parse, Answer::Bool(false), engine.runs)
            }
            Err(e) => return Err(e),
        },
        Query::Empty => {
            let mut engine = Engine::new(g);
            let productive = productive_in(&mut engine, g);
            report(
                QueryKind::Empty,
                Answer::Bool(!productive.contains(&g.start())),
                engine.runs,
            )
        }
        Query::Finite => {
            let mut runs = Vec::new();
            let finite = finite_with(g, &mut runs);
            report(QueryKind::Finite, Answer::Bool(finite), runs)
        }
        Query::Contained(lbar) => {
            let (yes, runs) = contained_runs(g, lbar)?;
            report(QueryKind::Contained, Answer::Bool(yes), runs)
        }
        Query::Productive => {
            let mut engine = Engine::new(g);
            let set = productive_in(&mut engine, g);
            report(QueryKind::Productive, Answer::Symbols(set), engine.runs)
        }
        Query::Reachable => {
            let mut engine = Engine::new(g);
            let set = reachable_in(&mut engine, g);
            report(QueryKind::Reachable, Answer::Symbols(set), engine.runs)
        }
        Query::Useless => {
            let mut runs = Vec::new();
            let useful = useful_with(g, &mut runs);
            let useless = original_variables(g)
                .filter(|v| !useful.contains(v))
                .collect();
            report(QueryKind::Useless, Answer::Symbols(useless), runs)
        }
        Query::Nullable => {
            let mut engine = Engine::new(g);
            let set = nullable_in(&mut engine, g);
            report(QueryKind::Nullable, Answer::Symbols(set), engine.runs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_grammar, GrammarBuilder};

    const SAMPLE: &str = "A -> a | B B\nB -> A B | b";

    fn set(g: &Grammar, names: &[&str]) -> BTreeSet<Symbol> {
        names
            .iter()
            .map(|n| g.symbols().lookup(n).unwrap())
            .collect()
    }

    #[test]
    fn membership_sample() {
        let g = parse_grammar(SAMPLE).unwrap();
        assert!(membership(&g, &g.word("a").unwrap()).unwrap());
        assert!(!membership(&g, &g.word("a b").unwrap()).unwrap());
        let b = g.with_start("B").unwrap();
        assert!(membership(&b, &b.word("a b").unwrap()).unwrap());
        assert_eq!(
            membership(&g, &[g.symbols().lookup("A").unwrap()]).unwrap_err(),
            Error::NotATerminal("A".into())
        );
    }

    #[test]
    fn parse_examples() {
        let g = parse_grammar("S -> a").unwrap();
        let p = parse(&g, &g.word("a").unwrap()).unwrap();
        assert_eq!(p.derivation.render(p.grammar.grammar()), "S -> a\n");

        let b = parse_grammar(SAMPLE).unwrap().with_start("B").unwrap();
        let p = parse(&b, &b.word("b").unwrap()).unwrap();
        assert_eq!(p.derivation.render(p.grammar.grammar()), "B -> b\n");

        let g = parse_grammar(SAMPLE).unwrap();
        let p = parse(&g, &g.word("b b").unwrap()).unwrap();
        assert_eq!(
            p.derivation.render(p.grammar.grammar()),
            "A -> B B\n  B -> b\n  B -> b\n"
        );
        assert_eq!(
            parse(&g, &g.word("a b").unwrap()).unwrap_err(),
            Error::NotInLanguage
        );
    }

    #[test]
    fn parse_lifts_to_source_grammar() {
        let g = parse_grammar("S -> a S b | eps").unwrap();
        let w = g.word("a a b b").unwrap();
        let p = parse(&g, &w).unwrap();
        p.derivation.validate(p.grammar.grammar()).unwrap();
        let lifted = p.lift().unwrap();
        lifted.validate(&g).unwrap();
        assert_eq!(lifted.frontier(), w);
    }

    #[test]
    fn productive_examples() {
        let g = parse_grammar(SAMPLE).unwrap();
        assert_eq!(productive_variables(&g), set(&g, &["A", "B"]));
        let g = parse_grammar("S -> A S\nA -> S").unwrap();
        assert!(productive_variables(&g).is_empty());
    }

    #[test]
    fn reachable_examples() {
        let g = parse_grammar("S -> A B\nA -> a\nB -> b").unwrap();
        assert_eq!(reachable_variables(&g), set(&g, &["S", "A", "B"]));
        let g = parse_grammar("S -> a\nC -> c").unwrap();
        assert_eq!(reachable_variables(&g), set(&g, &["S"]));
    }

    #[test]
    fn useless_examples() {
        let g = GrammarBuilder::new()
            .variable("S")
            .variable("A")
            .variable("B")
            .terminal("a")
            .rule("S", &["A", "B"])
            .rule("A", &["a"])
            .build()
            .unwrap();
        assert_eq!(useless_variables(&g), set(&g, &["S", "A", "B"]));
        let g = parse_grammar("S -> a").unwrap();
        assert!(useless_variables(&g).is_empty());
        let g = parse_grammar("S -> a\nC -> c").unwrap();
        assert_eq!(useless_variables(&g), set(&g, &["C"]));
    }

    #[test]
    fn emptiness() {
        assert!(is_empty(&parse_grammar("S -> a S").unwrap()));
        assert!(!is_empty(&parse_grammar("S -> a").unwrap()));
    }

    #[test]
    fn containment() {
        // L = T*: complement is empty
        let g = parse_grammar("S -> a b").unwrap();
        let all = sigma_star_automaton(g.terminals());
        assert!(contained_in_language(&g, &all, 64).unwrap());

        // {b} ⊄ a*
        let g = parse_grammar("S -> b\nX -> a").unwrap();
        let a = g.symbols().lookup("a").unwrap();
        let a_star = sigma_star_automaton([a]);
        let lbar = complement_over_terminals(&g, &a_star, 64).unwrap();
        assert!(!contained_in(&g, &lbar).unwrap());
    }

    #[test]
    fn finiteness() {
        assert!(is_finite(&parse_grammar("S -> a").unwrap()));
        assert!(!is_finite(&parse_grammar("S -> a S | a").unwrap()));
        assert!(is_finite(&parse_grammar("S -> a S").unwrap()));
        // a unit cycle alone does not pump
        assert!(is_finite(&parse_grammar("S -> A | a\nA -> S").unwrap()));
        // ε-padding does not pump either
        assert!(is_finite(&parse_grammar("S -> S E | a\nE -> eps").unwrap()));
    }

    #[test]
    fn nullable() {
        let g = parse_grammar("S -> A B\nA -> eps\nB -> eps").unwrap();
        assert_eq!(nullable_variables(&g), set(&g, &["S", "A", "B"]));
        let g = parse_grammar(SAMPLE).unwrap();
        assert!(nullable_variables(&g).is_empty());
    }

    #[test]
    fn reports_track_runs() {
        let g = parse_grammar("S -> a S | a\nA -> b").unwrap();
        let r = analyze(&g, &Query::Reachable).unwrap();
        assert_eq!(r.runs.len(), 2);
        assert!(r.runs.iter().all(RunStats::within_cubic_bound));
        assert_eq!(r.symbols().unwrap(), &set(&g, &["S"]));
        let r = analyze(&g, &Query::Finite).unwrap();
        assert_eq!(r.as_bool(), Some(false));
        let r = analyze(&g, &Query::Parse(g.word("b").unwrap())).unwrap();
        assert_eq!(r.as_bool(), Some(false));
        assert!(r.derivation.is_none());
    }
}
