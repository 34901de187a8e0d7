//! Seeded generators for grammars, automata and words.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::Nfa;
use crate::grammar::{Grammar, Production, Symbol, SymbolKind, SymbolTable};

const VARIABLES: [&str; 6] = ["S", "A", "B", "C", "D", "E"];
const TERMINALS: [&str; 4] = ["a", "b", "c", "d"];

/// Size limits for [`random_grammar`] and [`random_normalized_grammar`].
#[derive(Debug, Clone, Copy)]
pub struct GrammarShape {
    pub max_variables: usize,
    pub max_terminals: usize,
    pub max_productions: usize,
    pub max_body: usize,
}

impl Default for GrammarShape {
    fn default() -> Self {
        GrammarShape {
            max_variables: 4,
            max_terminals: 3,
            max_productions: 8,
            max_body: 3,
        }
    }
}

fn table(rng: &mut StdRng, shape: &GrammarShape) -> (SymbolTable, Vec<Symbol>, Vec<Symbol>) {
    let nv = rng.gen_range(1..=shape.max_variables.min(VARIABLES.len()));
    let nt = rng.gen_range(1..=shape.max_terminals.min(TERMINALS.len()));
    let mut st = SymbolTable::new();
    let vars = VARIABLES[..nv]
        .iter()
        .map(|n| st.intern(n, SymbolKind::Variable).unwrap())
        .collect();
    let terms = TERMINALS[..nt]
        .iter()
        .map(|n| st.intern(n, SymbolKind::Terminal).unwrap())
        .collect();
    (st, vars, terms)
}

fn finish(st: SymbolTable, vars: &[Symbol], mut prods: Vec<Production>) -> Grammar {
    prods.sort_by_key(|p| p.lhs);
    prods.dedup();
    Grammar::new(st, prods, vars[0]).expect("generated grammar is well formed")
}

/// Bodies of length `0..=max_body` over all symbols; variables appear in
/// bodies twice as often as terminals.
pub fn random_grammar(rng: &mut StdRng, shape: &GrammarShape) -> Grammar {
    let (st, vars, terms) = table(rng, shape);
    let n = rng.gen_range(1..=shape.max_productions);
    let prods = (0..n)
        .map(|_| {
            let lhs = *vars.choose(rng).unwrap();
            let len = rng.gen_range(0..=shape.max_body);
            let body = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.6) {
                        *vars.choose(rng).unwrap()
                    } else {
                        *terms.choose(rng).unwrap()
                    }
                })
                .collect();
            Production::new(lhs, body)
        })
        .collect();
    finish(st, &vars, prods)
}

/// Only `A -> B C`, `A -> a`, `A -> B` and `A -> eps`.
pub fn random_normalized_grammar(rng: &mut StdRng, shape: &GrammarShape) -> Grammar {
    let (st, vars, terms) = table(rng, shape);
    let n = rng.gen_range(1..=shape.max_productions);
    let prods = (0..n)
        .map(|_| {
            let lhs = *vars.choose(rng).unwrap();
            let v = |rng: &mut StdRng| *vars.choose(rng).unwrap();
            let body = match rng.gen_range(0..10) {
                0..=3 => vec![v(rng), v(rng)],
                4..=6 => vec![*terms.choose(rng).unwrap()],
                7..=8 => vec![v(rng)],
                _ => vec![],
            };
            Production::new(lhs, body)
        })
        .collect();
    finish(st, &vars, prods)
}

/// An automaton with `1..=max_states` states, initial state 0, up to
/// `max_transitions` transitions labelled from `labels`, and `alphabet` as
/// its declared alphabet.
pub fn random_nfa(
    rng: &mut StdRng,
    labels: &[Symbol],
    alphabet: impl IntoIterator<Item = Symbol>,
    max_states: usize,
    max_transitions: usize,
) -> Nfa {
    let states = rng.gen_range(1..=max_states);
    let mut a = Nfa::new(states, 0);
    a.extend_alphabet(alphabet);
    for _ in 0..rng.gen_range(0..=max_transitions) {
        let from = rng.gen_range(0..states);
        let to = rng.gen_range(0..states);
        a.add_transition(from, *labels.choose(rng).unwrap(), to);
    }
    for q in 0..states {
        if rng.gen_bool(0.4) {
            a.set_final(q);
        }
    }
    a
}

/// A uniformly random word over `terminals` with length `0..=max_len`.
pub fn random_word(rng: &mut StdRng, terminals: &[Symbol], max_len: usize) -> Vec<Symbol> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *terminals.choose(rng).unwrap()).collect()
}

/// Expands the start symbol by random productions, giving up past `max_len`
/// symbols or `budget` steps. Whatever comes back is in the language.
pub fn sample_word(
    rng: &mut StdRng,
    g: &Grammar,
    max_len: usize,
    budget: usize,
) -> Option<Vec<Symbol>> {
    let st = g.symbols();
    let mut form = vec![g.start()];
    for _ in 0..budget {
        let Some(pos) = form.iter().position(|s| st.is_variable(*s)) else {
            return Some(form);
        };
        let options: Vec<&Production> = g
            .productions()
            .iter()
            .filter(|p| p.lhs == form[pos])
            .collect();
        let p = options.choose(rng)?;
        form.splice(pos..=pos, p.body.iter().copied());
        if form.iter().filter(|s| st.is_terminal(**s)).count() > max_len {
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::is_extended_cnf;
    use rand::SeedableRng;

    #[test]
    fn shapes_respect_limits() {
        let mut rng = StdRng::seed_from_u64(7);
        let shape = GrammarShape::default();
        for _ in 0..200 {
            let g = random_normalized_grammar(&mut rng, &shape);
            assert!(is_extended_cnf(&g));
            assert!(g.variables().count() <= 4 && g.terminals().count() <= 3);
            assert!(g.productions().len() <= 8);
            let g = random_grammar(&mut rng, &shape);
            assert!(g.productions().iter().all(|p| p.body.len() <= 3));
            let syms: Vec<Symbol> = g.symbols().symbols().collect();
            let a = random_nfa(&mut rng, &syms, g.terminals(), 4, 10);
            assert!(a.state_count() <= 4 && a.transitions().len() <= 10);
        }
    }

    #[test]
    fn sampled_words_are_terminal() {
        let mut rng = StdRng::seed_from_u64(1);
        let g = crate::grammar::parse_grammar("S -> a S b | eps").unwrap();
        for _ in 0..50 {
            if let Some(w) = sample_word(&mut rng, &g, 12, 100) {
                assert!(w.iter().all(|s| g.symbols().is_terminal(*s)));
                assert_eq!(w.len() % 2, 0);
            }
        }
    }
}
