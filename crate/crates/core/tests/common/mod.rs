#![allow(dead_code)]

use prestar_core::automaton::Nfa;
use prestar_core::grammar::{
    build_index, normalize, parse_grammar, Grammar, NormalizedGrammar, ProductionIndex, Symbol,
};
use prestar_core::oracle::random::{random_nfa, random_normalized_grammar, GrammarShape};
use prestar_core::prestar::{saturate_with, PopOrder, SaturatedAutomaton};
use rand::rngs::StdRng;

pub const SAMPLE: &str = "A -> a | B B\nB -> A B | b\n";

pub fn sample() -> (Grammar, Nfa) {
    let g = parse_grammar(SAMPLE).unwrap();
    let s = |n| g.symbols().lookup(n).unwrap();
    let mut a = Nfa::new(3, 0);
    a.add_transition(0, s("a"), 1);
    a.add_transition(1, s("b"), 2);
    a.add_transition(2, s("a"), 1);
    a.set_final(2);
    (g, a)
}

pub struct Prepared {
    pub normalized: NormalizedGrammar,
    pub index: ProductionIndex,
}

pub fn prepare(g: &Grammar) -> Prepared {
    let normalized = normalize(g);
    let index = build_index(&normalized);
    Prepared { normalized, index }
}

pub fn run(g: &Grammar, a: &Nfa, order: PopOrder) -> SaturatedAutomaton {
    saturate_with(&prepare(g).index, a, order)
}

/// A random extended-CNF grammar with an automaton labelled over all of its
/// symbols.
pub fn instance(rng: &mut StdRng) -> (Grammar, Nfa) {
    let g = random_normalized_grammar(rng, &GrammarShape::default());
    let symbols: Vec<Symbol> = g.symbols().symbols().collect();
    let a = random_nfa(rng, &symbols, symbols.iter().copied(), 4, 10);
    (g, a)
}

/// Every string over `alphabet` of length at most `max_len`.
pub fn all_strings(alphabet: &[Symbol], max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for &x in alphabet {
                let mut t: Vec<Symbol> = s.clone();
                t.push(x);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
