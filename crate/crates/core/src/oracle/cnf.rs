//! Textbook conversion to strict CNF, the CYK table and the cycle test for
//! finiteness. Independent of the extended-CNF normalizer.

use std::collections::{BTreeMap, BTreeSet};

use super::{graph_reachable, nullable_marking, productive_marking};
use crate::grammar::{Grammar, Production, Symbol};

/// A grammar in strict CNF over local variable indices.
///
/// `A -> B C` and `A -> a` only; whether the start symbol derives ε is kept
/// on the side.
#[derive(Debug, Clone, Default)]
pub struct CnfGrammar {
    pub variable_count: usize,
    pub start: usize,
    pub start_nullable: bool,
    pub binary: Vec<(usize, usize, usize)>,
    pub terminal: Vec<(usize, Symbol)>,
}

fn drop_nullables(g: &Grammar, nullable: &BTreeSet<Symbol>) -> BTreeSet<(Symbol, Vec<Symbol>)> {
    let mut out = BTreeSet::new();
    for p in g.productions() {
        let mut variants: Vec<Vec<Symbol>> = vec![Vec::new()];
        for &s in &p.body {
            let mut next = Vec::with_capacity(variants.len() * 2);
            for v in &variants {
                let mut with = v.clone();
                with.push(s);
                next.push(with);
                if nullable.contains(&s) {
                    next.push(v.clone());
                }
            }
            variants = next;
        }
        for v in variants.into_iter().filter(|v| !v.is_empty()) {
            out.insert((p.lhs, v));
        }
    }
    out
}

fn drop_units(
    g: &Grammar,
    prods: &BTreeSet<(Symbol, Vec<Symbol>)>,
) -> BTreeSet<(Symbol, Vec<Symbol>)> {
    let st = g.symbols();
    let is_unit = |body: &[Symbol]| body.len() == 1 && st.is_variable(body[0]);
    let mut out = BTreeSet::new();
    for a in g.variables() {
        // unit closure of a
        let mut closure: BTreeSet<Symbol> = [a].into();
        let mut stack = vec![a];
        while let Some(b) = stack.pop() {
            for (lhs, body) in prods {
                if *lhs == b && is_unit(body) && closure.insert(body[0]) {
                    stack.push(body[0]);
                }
            }
        }
        for (lhs, body) in prods {
            if closure.contains(lhs) && !is_unit(body) {
                out.insert((a, body.clone()));
            }
        }
    }
    out
}

/// ε-elimination, unit elimination, useless-symbol removal, terminal wrapping
/// and binarization, in that order.
pub fn to_full_cnf(g: &Grammar) -> CnfGrammar {
    let st = g.symbols();
    let nullable = nullable_marking(g);
    let prods = drop_units(g, &drop_nullables(g, &nullable));

    let as_grammar = |prods: &BTreeSet<(Symbol, Vec<Symbol>)>| g.clone_with(prods);
    let stage = as_grammar(&prods);
    let productive = productive_marking(&stage);
    let kept: BTreeSet<_> = prods
        .into_iter()
        .filter(|(lhs, body)| {
            productive.contains(lhs)
                && body
                    .iter()
                    .all(|s| st.is_terminal(*s) || productive.contains(s))
        })
        .collect();
    let reachable = graph_reachable(&as_grammar(&kept));
    let kept: Vec<_> = kept
        .into_iter()
        .filter(|(lhs, _)| reachable.contains(lhs))
        .collect();

    let mut local: BTreeMap<Symbol, usize> = BTreeMap::new();
    let mut next_var = 0usize;
    let mut var = |s: Symbol, local: &mut BTreeMap<Symbol, usize>| {
        *local.entry(s).or_insert_with(|| {
            next_var += 1;
            next_var - 1
        })
    };
    let start = var(g.start(), &mut local);
    for (lhs, _) in &kept {
        var(*lhs, &mut local);
    }
    let mut cnf = CnfGrammar {
        start,
        start_nullable: nullable.contains(&g.start()),
        ..CnfGrammar::default()
    };
    let mut wrappers: BTreeMap<Symbol, usize> = BTreeMap::new();
    let mut fresh = local.len();
    for (lhs, body) in &kept {
        let a = local[lhs];
        if let [t] = body.as_slice() {
            cnf.terminal.push((a, *t));
            continue;
        }
        let mut ids: Vec<usize> = Vec::with_capacity(body.len());
        for &s in body {
            if st.is_terminal(s) {
                let w = *wrappers.entry(s).or_insert_with(|| {
                    fresh += 1;
                    fresh - 1
                });
                ids.push(w);
            } else {
                ids.push(local[&s]);
            }
        }
        let mut head = a;
        for &b in &ids[..ids.len() - 2] {
            let tail = fresh;
            fresh += 1;
            cnf.binary.push((head, b, tail));
            head = tail;
        }
        cnf.binary
            .push((head, ids[ids.len() - 2], ids[ids.len() - 1]));
    }
    for (&t, &w) in &wrappers {
        cnf.terminal.push((w, t));
    }
    cnf.variable_count = fresh;
    cnf
}

trait CloneWith {
    fn clone_with(&self, prods: &BTreeSet<(Symbol, Vec<Symbol>)>) -> Grammar;
}

impl CloneWith for Grammar {
    fn clone_with(&self, prods: &BTreeSet<(Symbol, Vec<Symbol>)>) -> Grammar {
        let productions = prods
            .iter()
            .map(|(lhs, body)| Production::new(*lhs, body.clone()))
            .collect();
        Grammar::new(self.symbols().clone(), productions, self.start()).expect("same symbols")
    }
}

/// The O(n³) CYK decision.
pub fn cyk_membership(g: &CnfGrammar, w: &[Symbol]) -> bool {
    let n = w.len();
    if n == 0 {
        return g.start_nullable;
    }
    let v = g.variable_count;
    // table[i][len - 1][A]: A derives w[i .. i + len]
    let mut table = vec![vec![vec![false; v]; n]; n];
    for (i, &sym) in w.iter().enumerate() {
        for &(a, t) in &g.terminal {
            if t == sym {
                table[i][0][a] = true;
            }
        }
    }
    for len in 2..=n {
        for i in 0..=n - len {
            for split in 1..len {
                for &(a, b, c) in &g.binary {
                    if table[i][split - 1][b] && table[i + split][len - split - 1][c] {
                        table[i][len - 1][a] = true;
                    }
                }
            }
        }
    }
    table[0][n - 1][g.start]
}

/// Finite iff the strict-CNF variable graph (`A` to `B` and `C` for every
/// `A -> B C`) is acyclic.
pub fn finite_by_cnf_cycles(g: &Grammar) -> bool {
    let cnf = to_full_cnf(g);
    let mut adj = vec![Vec::new(); cnf.variable_count];
    for &(a, b, c) in &cnf.binary {
        adj[a].push(b);
        adj[a].push(c);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut color = vec![0u8; cnf.variable_count];
    fn has_cycle(v: usize, adj: &[Vec<usize>], color: &mut [u8]) -> bool {
        color[v] = 1;
        for &w in &adj[v] {
            if color[w] == 1 || (color[w] == 0 && has_cycle(w, adj, color)) {
                return true;
            }
        }
        color[v] = 2;
        false
    }
    !(0..cnf.variable_count).any(|v| color[v] == 0 && has_cycle(v, &adj, &mut color))
}
