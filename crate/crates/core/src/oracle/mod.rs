//! Deliberately naive reference implementations.
//!
//! Nothing in here shares code with the saturation engine or with
//! [`crate::grammar::normalize`]; the test suites compare the engine against
//! these answers.

mod cnf;
pub mod random;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automaton::{Nfa, State, Transition};
use crate::grammar::{Grammar, Symbol};

pub use cnf::{cyk_membership, finite_by_cnf_cycles, to_full_cnf, CnfGrammar};

/// Bounds shared by the oracles and the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_word_length: usize,
    pub max_bfs_depth: usize,
    pub random_seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_word_length: 12,
            max_bfs_depth: 12,
            random_seed: 0x5eed,
        }
    }
}

fn path_targets(trans: &BTreeSet<Transition>, from: State, body: &[Symbol]) -> BTreeSet<State> {
    let mut current: BTreeSet<State> = [from].into();
    for &sym in body {
        current = trans
            .iter()
            .filter(|t| t.label == sym && current.contains(&t.from))
            .map(|t| t.to)
            .collect();
    }
    current
}

/// Applies "`A -> β` and a `β`-path from `q` to `q'` gives `(q, A, q')`" over
/// every production and state until a full pass adds nothing.
///
/// Works for bodies of any length.
pub fn naive_saturate(g: &Grammar, a: &Nfa) -> BTreeSet<Transition> {
    let mut trans: BTreeSet<Transition> = a.transitions().iter().copied().collect();
    loop {
        let mut changed = false;
        for p in g.productions() {
            for q in 0..a.state_count() {
                for q1 in path_targets(&trans, q, &p.body) {
                    changed |= trans.insert(Transition::new(q, p.lhs, q1));
                }
            }
        }
        if !changed {
            return trans;
        }
    }
}

/// All single-step rewrites of `form`.
fn successors<'a>(g: &'a Grammar, form: &'a [Symbol]) -> impl Iterator<Item = Vec<Symbol>> + 'a {
    form.iter().enumerate().flat_map(move |(i, &sym)| {
        g.productions()
            .iter()
            .filter(move |p| p.lhs == sym)
            .map(move |p| {
                let mut next = Vec::with_capacity(form.len() + p.body.len());
                next.extend_from_slice(&form[..i]);
                next.extend_from_slice(&p.body);
                next.extend_from_slice(&form[i + 1..]);
                next
            })
    })
}

fn accepted(a: &Nfa, form: &[Symbol]) -> bool {
    form.iter().all(|s| a.alphabet().contains(s)) && a.accepts(form).unwrap_or(false)
}

/// Breadth-first search over `=>` from `from`: true iff some form reachable in
/// at most `depth` steps, never longer than `max_len`, is accepted by `target`.
pub fn bounded_bfs_reaches(
    g: &Grammar,
    from: &[Symbol],
    target: &Nfa,
    depth: usize,
    max_len: usize,
) -> bool {
    let mut seen: HashSet<Vec<Symbol>> = HashSet::new();
    let mut queue: VecDeque<(Vec<Symbol>, usize)> = VecDeque::new();
    seen.insert(from.to_vec());
    queue.push_back((from.to_vec(), 0));
    while let Some((form, d)) = queue.pop_front() {
        if accepted(target, &form) {
            return true;
        }
        if d == depth {
            continue;
        }
        for next in successors(g, &form) {
            if next.len() <= max_len && seen.insert(next.clone()) {
                queue.push_back((next, d + 1));
            }
        }
    }
    false
}

/// Every sentential form of length at most `max_len` derivable from each
/// symbol, by least fixpoint over the productions.
///
/// The set is exact for its length bound: a form derived from `X -> Y1..Yk`
/// splits into forms derived from each `Yi`, none longer than the whole.
pub fn derivable_forms(g: &Grammar, max_len: usize) -> HashMap<Symbol, HashSet<Vec<Symbol>>> {
    derivable_forms_where(g, max_len, |_| true)
}

/// As [`derivable_forms`], keeping only forms (and partial bodies) accepted
/// by `keep`. Exact when `keep` is closed under substrings of the forms that
/// matter, e.g. "labels some path in the automaton".
fn derivable_forms_where(
    g: &Grammar,
    max_len: usize,
    keep: impl Fn(&[Symbol]) -> bool,
) -> HashMap<Symbol, HashSet<Vec<Symbol>>> {
    let mut forms: HashMap<Symbol, HashSet<Vec<Symbol>>> = g
        .symbols()
        .symbols()
        .map(|s| {
            let own = [vec![s]]
                .into_iter()
                .filter(|f| f.len() <= max_len && keep(f));
            (s, own.collect())
        })
        .collect();
    loop {
        let mut changed = false;
        for p in g.productions() {
            let mut partial: HashSet<Vec<Symbol>> = [Vec::new()].into();
            for sym in &p.body {
                let mut next = HashSet::new();
                for prefix in &partial {
                    for suffix in &forms[sym] {
                        if prefix.len() + suffix.len() <= max_len {
                            let mut f = prefix.clone();
                            f.extend_from_slice(suffix);
                            if keep(&f) {
                                next.insert(f);
                            }
                        }
                    }
                }
                partial = next;
            }
            let entry = forms.get_mut(&p.lhs).expect("lhs is a symbol");
            for f in partial {
                changed |= entry.insert(f);
            }
        }
        if !changed {
            return forms;
        }
    }
}

/// Decides `form ∈ pre*(L(a))` from bounded form enumeration: each symbol of
/// the form independently derives one of its enumerated forms, and the
/// concatenation must label an accepting path.
///
/// Forms that label no path at all in `a` are dropped during enumeration:
/// every form that contributes to an accepted string is a substring of it.
pub struct EnumerationOracle {
    initial: State,
    finals: BTreeSet<State>,
    states: usize,
    /// `moves[X][q]` = states reachable from `q` reading a form derived from `X`.
    moves: HashMap<Symbol, Vec<BTreeSet<State>>>,
}

impl EnumerationOracle {
    pub fn new(g: &Grammar, a: &Nfa, max_len: usize) -> Self {
        let mut succ: HashMap<(State, Symbol), Vec<State>> = HashMap::new();
        for t in a.transitions().iter() {
            succ.entry((t.from, t.label)).or_default().push(t.to);
        }
        let labels_a_path = |form: &[Symbol]| {
            let mut cur: BTreeSet<State> = (0..a.state_count()).collect();
            for s in form {
                cur = cur
                    .iter()
                    .filter_map(|&p| succ.get(&(p, *s)))
                    .flatten()
                    .copied()
                    .collect();
                if cur.is_empty() {
                    return false;
                }
            }
            true
        };
        let forms = derivable_forms_where(g, max_len, labels_a_path);
        let run = |q: State, form: &[Symbol]| -> BTreeSet<State> {
            let mut cur: BTreeSet<State> = [q].into();
            for s in form {
                cur = cur
                    .iter()
                    .filter_map(|&p| succ.get(&(p, *s)))
                    .flatten()
                    .copied()
                    .collect();
            }
            cur
        };
        let moves = forms
            .iter()
            .map(|(&sym, set)| {
                let per_state = (0..a.state_count())
                    .map(|q| set.iter().flat_map(|f| run(q, f)).collect())
                    .collect();
                (sym, per_state)
            })
            .collect();
        EnumerationOracle {
            initial: a.initial(),
            finals: a.finals().clone(),
            states: a.state_count(),
            moves,
        }
    }

    pub fn accepts(&self, form: &[Symbol]) -> bool {
        let mut cur: BTreeSet<State> = [self.initial].into();
        for s in form {
            let Some(m) = self.moves.get(s) else {
                return false;
            };
            cur = cur.iter().flat_map(|&q| m[q].iter().copied()).collect();
        }
        debug_assert!(cur.iter().all(|&q| q < self.states));
        cur.iter().any(|q| self.finals.contains(q))
    }
}

/// Iterative marking: `A` is productive once some body is all terminals or
/// productive variables.
pub fn productive_marking(g: &Grammar) -> BTreeSet<Symbol> {
    let st = g.symbols();
    let mut marked: BTreeSet<Symbol> = BTreeSet::new();
    loop {
        let before = marked.len();
        for p in g.productions() {
            if p.body
                .iter()
                .all(|s| st.is_terminal(*s) || marked.contains(s))
            {
                marked.insert(p.lhs);
            }
        }
        if marked.len() == before {
            return marked;
        }
    }
}

/// Iterative marking: `A` is nullable once some body is all nullable.
pub fn nullable_marking(g: &Grammar) -> BTreeSet<Symbol> {
    let mut marked: BTreeSet<Symbol> = BTreeSet::new();
    loop {
        let before = marked.len();
        for p in g.productions() {
            if p.body.iter().all(|s| marked.contains(s)) {
                marked.insert(p.lhs);
            }
        }
        if marked.len() == before {
            return marked;
        }
    }
}

fn graph_reach(g: &Grammar, edge_ok: impl Fn(&[Symbol], usize) -> bool) -> BTreeSet<Symbol> {
    let st = g.symbols();
    let mut reached: BTreeSet<Symbol> = [g.start()].into();
    let mut queue = vec![g.start()];
    while let Some(v) = queue.pop() {
        for p in g.productions().iter().filter(|p| p.lhs == v) {
            for (i, &s) in p.body.iter().enumerate() {
                if st.is_variable(s) && edge_ok(&p.body, i) && reached.insert(s) {
                    queue.push(s);
                }
            }
        }
    }
    reached
}

/// Variables `A` with `S =>* uAv`, `u, v` terminal strings.
///
/// Graph search from `S` that follows an occurrence only when its siblings
/// in the body are all productive (they must vanish into terminals).
pub fn reachable_oracle(g: &Grammar) -> BTreeSet<Symbol> {
    let st = g.symbols();
    let productive = productive_marking(g);
    graph_reach(g, |body, i| {
        body.iter()
            .enumerate()
            .all(|(j, s)| j == i || st.is_terminal(*s) || productive.contains(s))
    })
}

/// Plain graph reachability from `S` over production bodies.
pub fn graph_reachable(g: &Grammar) -> BTreeSet<Symbol> {
    graph_reach(g, |_, _| true)
}

/// Two-pass marking: productive variables, then graph reachability in the
/// grammar restricted to productive symbols.
pub fn useless_marking(g: &Grammar) -> BTreeSet<Symbol> {
    let st = g.symbols();
    let productive = productive_marking(g);
    let restricted = g.retain_productions(|p| {
        productive.contains(&p.lhs)
            && p.body
                .iter()
                .all(|s| st.is_terminal(*s) || productive.contains(s))
    });
    let reachable = graph_reachable(&restricted);
    g.variables()
        .filter(|v| !(productive.contains(v) && reachable.contains(v)))
        .collect()
}
