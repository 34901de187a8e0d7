mod common;

use prestar_core::grammar::{
    build_index, is_extended_cnf, normalize, parse_grammar, Body, Grammar, Symbol,
};
use prestar_core::oracle::random::{random_grammar, random_word, GrammarShape};
use prestar_core::oracle::{cyk_membership, to_full_cnf};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn grammar_from(seed: u64) -> (Grammar, StdRng) {
    let mut rng = StdRng::seed_from_u64(seed);
    let g = random_grammar(&mut rng, &GrammarShape::default());
    (g, rng)
}

#[test]
fn documented_grammar_file() {
    let text = "# comment\nstart: S\nS -> A B | a\nA -> eps\nB -> b B | b\n";
    let g = parse_grammar(text).unwrap();
    assert_eq!(g.name(g.start()), "S");
    assert_eq!(g.productions().len(), 5);
    assert_eq!(g.variables().count(), 3);
    assert_eq!(g.terminals().count(), 2);
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let err = parse_grammar("S -> a\n\nS -> ->\n").unwrap_err();
    assert!(err.to_string().starts_with("line 3"), "{err}");
    assert!(parse_grammar("").is_err());
    assert!(parse_grammar("-> a").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn render_is_stable(seed in any::<u64>()) {
        let (g, _) = grammar_from(seed);
        // a start symbol without rules has no textual form
        prop_assume!(g.productions().iter().any(|p| p.lhs == g.start()));
        let once = g.render();
        let again = parse_grammar(&once).unwrap();
        prop_assert_eq!(again.render(), once);
        prop_assert_eq!(again.productions().len(), g.productions().len());
    }

    #[test]
    fn normalize_yields_extended_cnf_and_keeps_the_language(seed in any::<u64>()) {
        let (g, mut rng) = grammar_from(seed);
        let ng = normalize(&g);
        prop_assert!(is_extended_cnf(ng.grammar()));
        prop_assert_eq!(ng.start(), g.start());
        let source = to_full_cnf(&g);
        let target = to_full_cnf(ng.grammar());
        let terminals: Vec<Symbol> = g.terminals().collect();
        for _ in 0..20 {
            let w = random_word(&mut rng, &terminals, 6);
            prop_assert_eq!(cyk_membership(&source, &w), cyk_membership(&target, &w));
        }
    }

    #[test]
    fn normalize_fixes_extended_cnf(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let g = prestar_core::oracle::random::random_normalized_grammar(&mut rng, &GrammarShape::default());
        let ng = normalize(&g);
        prop_assert_eq!(ng.fresh_count(), 0);
        prop_assert_eq!(ng.productions(), g.productions());
    }

    #[test]
    fn index_buckets_every_production_once(seed in any::<u64>()) {
        let (g, _) = grammar_from(seed);
        let ng = normalize(&g);
        let index = build_index(&ng);
        prop_assert_eq!(index.len(), ng.productions().len());
        let symbols: Vec<Symbol> = ng.symbols().symbols().collect();
        for (id, p) in index.productions().iter().enumerate() {
            let hits = match p.body {
                Body::Empty => index.eps().iter().filter(|&&x| x == id).count(),
                Body::Terminal(a) => index.term(a).iter().filter(|&&x| x == id).count(),
                Body::Unit(b) => index.chain(b).iter().filter(|&&x| x == id).count(),
                Body::Pair(b, c) => {
                    prop_assert!(index.back(c).contains(&id));
                    index.front(b).iter().filter(|&&x| x == id).count()
                }
            };
            prop_assert_eq!(hits, 1);
            let total: usize = symbols
                .iter()
                .map(|&s| {
                    [index.chain(s), index.front(s), index.term(s)]
                        .iter()
                        .map(|b| b.iter().filter(|&&x| x == id).count())
                        .sum::<usize>()
                })
                .sum::<usize>()
                + index.eps().iter().filter(|&&x| x == id).count();
            prop_assert_eq!(total, 1);
        }
    }
}
