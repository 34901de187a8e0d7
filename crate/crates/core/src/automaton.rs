//! Finite automata over the mixed alphabet of variables and terminals.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::grammar::{Symbol, SymbolKind, SymbolTable};

pub type State = usize;

/// Default cap on the number of subsets explored by [`complement`].
pub const DEFAULT_MAX_DFA_STATES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: State,
    pub label: Symbol,
    pub to: State,
}

impl Transition {
    pub fn new(from: State, label: Symbol, to: State) -> Self {
        Transition { from, label, to }
    }

    pub fn render(&self, symbols: &SymbolTable) -> String {
        let label = if symbols.contains(self.label) {
            symbols.name(self.label).to_owned()
        } else {
            format!("#{}", self.label.index())
        };
        format!("(q{}, {}, q{})", self.from, label, self.to)
    }
}

/// Transition relation with O(1) membership over `states × Σ × states`.
///
/// Membership is a dense bit array; the transitions are also kept in
/// insertion order for iteration.
#[derive(Debug, Clone)]
pub struct TransitionSet {
    states: usize,
    sigma: usize,
    bits: FixedBitSet,
    list: Vec<Transition>,
}

impl TransitionSet {
    pub fn new(states: usize, sigma: usize) -> Self {
        TransitionSet {
            states,
            sigma,
            bits: FixedBitSet::with_capacity(states * sigma * states),
            list: Vec::new(),
        }
    }

    #[inline]
    fn slot(&self, t: &Transition) -> usize {
        (t.from * self.sigma + t.label.index()) * self.states + t.to
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn contains(&self, t: &Transition) -> bool {
        t.label.index() < self.sigma && self.bits.contains(self.slot(t))
    }

    /// Inserts `t`; returns false if it was already present.
    pub fn insert(&mut self, t: Transition) -> bool {
        debug_assert!(t.from < self.states && t.to < self.states);
        if t.label.index() >= self.sigma {
            self.grow(t.label.index() + 1);
        }
        let slot = self.slot(&t);
        if self.bits.put(slot) {
            return false;
        }
        self.list.push(t);
        true
    }

    fn grow(&mut self, sigma: usize) {
        let list = std::mem::take(&mut self.list);
        *self = TransitionSet::new(self.states, sigma);
        for t in list {
            self.insert(t);
        }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    /// Transitions in insertion order.
    pub fn iter(&self) -> std::slice::Iter<'_, Transition> {
        self.list.iter()
    }

    pub fn as_slice(&self) -> &[Transition] {
        &self.list
    }
}

impl PartialEq for TransitionSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(t))
    }
}

impl Eq for TransitionSet {}

/// Forward and inverse projections of a transition set.
///
/// `back(q, C)` holds every `q''` with `(q, C, q'')`; `front(C, q)` holds
/// every `q''` with `(q'', C, q)`.
#[derive(Debug, Clone)]
pub struct TransitionAdjacency {
    states: usize,
    sigma: usize,
    back: Vec<Vec<State>>,
    front: Vec<Vec<State>>,
}

impl TransitionAdjacency {
    pub fn new(states: usize, sigma: usize) -> Self {
        TransitionAdjacency {
            states,
            sigma,
            back: vec![Vec::new(); states * sigma],
            front: vec![Vec::new(); states * sigma],
        }
    }

    /// Records a transition. Callers must not record the same one twice.
    pub fn record(&mut self, t: &Transition) {
        let c = t.label.index();
        assert!(c < self.sigma, "label outside adjacency alphabet");
        self.back[t.from * self.sigma + c].push(t.to);
        self.front[c * self.states + t.to].push(t.from);
    }

    pub fn back(&self, q: State, label: Symbol) -> &[State] {
        let c = label.index();
        if c >= self.sigma {
            return &[];
        }
        &self.back[q * self.sigma + c]
    }

    pub fn front(&self, label: Symbol, q: State) -> &[State] {
        let c = label.index();
        if c >= self.sigma {
            return &[];
        }
        &self.front[c * self.states + q]
    }

    /// Combined size of all projections, counting each transition once.
    pub fn len(&self) -> usize {
        self.back.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A nondeterministic finite automaton without ε-moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    state_count: usize,
    alphabet: BTreeSet<Symbol>,
    transitions: TransitionSet,
    initial: State,
    finals: BTreeSet<State>,
}

impl Nfa {
    /// An automaton with `state_count` states and no transitions.
    pub fn new(state_count: usize, initial: State) -> Self {
        assert!(state_count > 0, "an automaton needs at least one state");
        assert!(initial < state_count);
        Nfa {
            state_count,
            alphabet: BTreeSet::new(),
            transitions: TransitionSet::new(state_count, 0),
            initial,
            finals: BTreeSet::new(),
        }
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals.contains(&q)
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn transitions(&self) -> &TransitionSet {
        &self.transitions
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.transitions.contains(t)
    }

    pub fn set_final(&mut self, q: State) {
        assert!(q < self.state_count);
        self.finals.insert(q);
    }

    pub fn add_symbol(&mut self, sym: Symbol) {
        self.alphabet.insert(sym);
    }

    pub fn extend_alphabet(&mut self, syms: impl IntoIterator<Item = Symbol>) {
        self.alphabet.extend(syms);
    }

    /// Adds a transition, extending the alphabet with its label.
    pub fn add_transition(&mut self, from: State, label: Symbol, to: State) -> bool {
        assert!(from < self.state_count && to < self.state_count);
        self.alphabet.insert(label);
        self.transitions.insert(Transition::new(from, label, to))
    }

    /// Same states, initial and final states; new transition set and alphabet.
    pub(crate) fn with_transitions(
        &self,
        transitions: TransitionSet,
        alphabet: BTreeSet<Symbol>,
    ) -> Nfa {
        Nfa {
            state_count: self.state_count,
            alphabet,
            transitions,
            initial: self.initial,
            finals: self.finals.clone(),
        }
    }

    fn successor_map(&self) -> HashMap<(State, Symbol), Vec<State>> {
        let mut map: HashMap<(State, Symbol), Vec<State>> = HashMap::new();
        for t in self.transitions.iter() {
            map.entry((t.from, t.label)).or_default().push(t.to);
        }
        map
    }

    /// Subset simulation: true iff some path labelled `word` leads from the
    /// initial state to a final state.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool> {
        if let Some(bad) = word.iter().find(|s| !self.alphabet.contains(s)) {
            return Err(Error::UnknownSymbol(format!("#{}", bad.index())));
        }
        let succ = self.successor_map();
        let mut current = vec![false; self.state_count];
        current[self.initial] = true;
        for &sym in word {
            let mut next = vec![false; self.state_count];
            for q in (0..self.state_count).filter(|&q| current[q]) {
                if let Some(targets) = succ.get(&(q, sym)) {
                    for &r in targets {
                        next[r] = true;
                    }
                }
            }
            current = next;
        }
        Ok(self.finals.iter().any(|&f| current[f]))
    }
}

/// `n + 1` states `q0 ..= qn` with `(q(i-1), w_i, q_i)`; accepts exactly `{w}`.
pub fn word_automaton(word: &[Symbol], alphabet: impl IntoIterator<Item = Symbol>) -> Nfa {
    let mut a = Nfa::new(word.len() + 1, 0);
    a.extend_alphabet(alphabet);
    for (i, &sym) in word.iter().enumerate() {
        a.add_transition(i, sym, i + 1);
    }
    a.set_final(word.len());
    a
}

/// One state with a self-loop per symbol; accepts `symbols*`.
pub fn sigma_star_automaton(symbols: impl IntoIterator<Item = Symbol>) -> Nfa {
    let mut a = Nfa::new(1, 0);
    for sym in symbols {
        a.add_transition(0, sym, 0);
    }
    a.set_final(0);
    a
}

/// Accepts `T* A T*` for terminals `T` and the variable `A`.
pub fn tstar_var_tstar_automaton(terminals: impl IntoIterator<Item = Symbol>, var: Symbol) -> Nfa {
    let mut a = Nfa::new(2, 0);
    for t in terminals {
        a.add_transition(0, t, 0);
        a.add_transition(1, t, 1);
    }
    a.add_transition(0, var, 1);
    a.set_final(1);
    a
}

/// Accepts `T+ A T* ∪ T* A T+`, i.e. `x A y` with `xy` nonempty.
///
/// State 0: before `A`, nothing read. 1: before `A`, some terminal read.
/// 2: after `A`, no terminal anywhere. 3: after `A`, some terminal somewhere.
pub fn pumping_pattern_automaton(terminals: impl IntoIterator<Item = Symbol>, var: Symbol) -> Nfa {
    let mut a = Nfa::new(4, 0);
    for t in terminals {
        a.add_transition(0, t, 1);
        a.add_transition(1, t, 1);
        a.add_transition(2, t, 3);
        a.add_transition(3, t, 3);
    }
    a.add_transition(0, var, 2);
    a.add_transition(1, var, 3);
    a.set_final(3);
    a
}

/// Automaton accepting `alphabet* \ L(a)`.
///
/// Determinizes by subset construction (the empty subset is the sink), then
/// swaps final and non-final states. The DFA can have up to `2^s` states;
/// exploring more than `max_states` subsets fails with [`Error::StateLimit`].
pub fn complement(a: &Nfa, max_states: usize) -> Result<Nfa> {
    let alphabet: Vec<Symbol> = a.alphabet.iter().copied().collect();
    let succ = a.successor_map();

    let mut ids: HashMap<Vec<State>, State> = HashMap::new();
    let mut subsets: Vec<Vec<State>> = Vec::new();
    let mut edges: Vec<(State, Symbol, State)> = Vec::new();

    let start = vec![a.initial];
    ids.insert(start.clone(), 0);
    subsets.push(start);
    let mut next = 0;
    while next < subsets.len() {
        let current = subsets[next].clone();
        for &sym in &alphabet {
            let mut target: Vec<State> = current
                .iter()
                .filter_map(|&q| succ.get(&(q, sym)))
                .flatten()
                .copied()
                .collect();
            target.sort_unstable();
            target.dedup();
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= max_states {
                        return Err(Error::StateLimit { limit: max_states });
                    }
                    let id = subsets.len();
                    ids.insert(target.clone(), id);
                    subsets.push(target);
                    id
                }
            };
            edges.push((next, sym, id));
        }
        next += 1;
    }

    let mut out = Nfa::new(subsets.len(), 0);
    out.extend_alphabet(alphabet.iter().copied());
    for (from, sym, to) in edges {
        out.add_transition(from, sym, to);
    }
    for (id, subset) in subsets.iter().enumerate() {
        if !subset.iter().any(|q| a.is_final(*q)) {
            out.set_final(id);
        }
    }
    Ok(out)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// GraphViz rendering; states in index order, edges in insertion order.
pub fn to_dot(a: &Nfa, symbols: &SymbolTable) -> String {
    render_dot(a, symbols, None, |_| false)
}

/// `names[q]` replaces the default `q<index>` state names when given.
pub(crate) fn render_dot(
    a: &Nfa,
    symbols: &SymbolTable,
    names: Option<&[String]>,
    highlight: impl Fn(&Transition) -> bool,
) -> String {
    let name = |q: State| match names.and_then(|n| n.get(q)) {
        Some(n) => dot_escape(n),
        None => format!("q{q}"),
    };
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..a.state_count() {
        let shape = if a.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let style = if q == a.initial() { ", style=bold" } else { "" };
        writeln!(out, "  \"{}\" [shape={shape}{style}];", name(q)).unwrap();
    }
    for t in a.transitions().iter() {
        let label = if symbols.contains(t.label) {
            dot_escape(symbols.name(t.label))
        } else {
            format!("#{}", t.label.index())
        };
        let extra = if highlight(t) {
            ", style=dashed, color=blue"
        } else {
            ""
        };
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{label}\"{extra}];",
            name(t.from),
            name(t.to)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// An automaton read from the text format, with its state names.
#[derive(Debug, Clone)]
pub struct LoadedAutomaton {
    pub nfa: Nfa,
    pub state_names: Vec<String>,
    /// Labels that were unknown to the symbol table and interned as terminals.
    pub foreign: Vec<Symbol>,
}

/// Parses the automaton text format.
///
/// ```text
/// states: q0 q1 q2
/// initial: q0
/// final: q2
/// q0 a q1
/// ```
///
/// Labels resolve against `symbols`; unknown labels are interned as terminals
/// and reported in [`LoadedAutomaton::foreign`]. The alphabet is
/// `base_alphabet` plus every label used. `eps` labels are rejected.
pub fn parse_automaton(
    text: &str,
    symbols: &mut SymbolTable,
    base_alphabet: &[Symbol],
) -> Result<LoadedAutomaton> {
    let mut state_names: Option<Vec<String>> = None;
    let mut initial: Option<State> = None;
    let mut finals: Vec<State> = Vec::new();
    let mut edges: Vec<(State, Symbol, State)> = Vec::new();
    let mut foreign = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw
            .split_whitespace()
            .take_while(|t| !t.starts_with('#'))
            .collect();
        let Some(&first) = tokens.first() else {
            continue;
        };
        let state_of = |name: &str, names: &Option<Vec<String>>| -> Result<State> {
            let names = names
                .as_ref()
                .ok_or_else(|| Error::syntax(line, "`states:` must come first"))?;
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::syntax(line, format!("unknown state `{name}`")))
        };
        match first {
            "states:" => {
                if state_names.is_some() {
                    return Err(Error::syntax(line, "duplicate `states:` line"));
                }
                let names: Vec<String> = tokens[1..].iter().map(|s| (*s).to_owned()).collect();
                if names.is_empty() {
                    return Err(Error::syntax(line, "an automaton needs at least one state"));
                }
                let distinct: BTreeSet<&String> = names.iter().collect();
                if distinct.len() != names.len() {
                    return Err(Error::syntax(line, "duplicate state name"));
                }
                state_names = Some(names);
            }
            "initial:" => {
                if tokens.len() != 2 {
                    return Err(Error::syntax(line, "expected `initial: <state>`"));
                }
                if initial.is_some() {
                    return Err(Error::syntax(line, "duplicate `initial:` line"));
                }
                initial = Some(state_of(tokens[1], &state_names)?);
            }
            "final:" | "finals:" => {
                for name in &tokens[1..] {
                    finals.push(state_of(name, &state_names)?);
                }
            }
            _ => {
                let [from, label, to] = tokens.as_slice() else {
                    return Err(Error::syntax(line, "expected `<state> <symbol> <state>`"));
                };
                if *label == "eps" {
                    return Err(Error::syntax(line, "epsilon transitions are not supported"));
                }
                let from = state_of(from, &state_names)?;
                let to = state_of(to, &state_names)?;
                let sym = match symbols.lookup(label) {
                    Some(s) => s,
                    None => {
                        let s = symbols.intern(label, SymbolKind::Terminal)?;
                        foreign.push(s);
                        s
                    }
                };
                edges.push((from, sym, to));
            }
        }
    }

    let state_names =
        state_names.ok_or_else(|| Error::Malformed("missing `states:` line".into()))?;
    let initial = initial.ok_or_else(|| Error::Malformed("missing `initial:` line".into()))?;
    let mut nfa = Nfa::new(state_names.len(), initial);
    nfa.extend_alphabet(base_alphabet.iter().copied());
    for (from, sym, to) in edges {
        nfa.add_transition(from, sym, to);
    }
    for f in finals {
        nfa.set_final(f);
    }
    Ok(LoadedAutomaton {
        nfa,
        state_names,
        foreign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syms(n: usize) -> Vec<Symbol> {
        (0..n).map(Symbol::new).collect()
    }

    /// Three-state automaton over symbols a=0, b=1.
    fn sample() -> Nfa {
        let s = syms(2);
        let mut a = Nfa::new(3, 0);
        a.add_transition(0, s[0], 1);
        a.add_transition(1, s[1], 2);
        a.add_transition(2, s[0], 1);
        a.set_final(2);
        a
    }

    #[test]
    fn sample_acceptance() {
        let a = sample();
        let s = syms(2);
        assert!(a.accepts(&[s[0], s[1]]).unwrap());
        assert!(!a.accepts(&[s[0]]).unwrap());
        assert!(!a.accepts(&[]).unwrap());
        assert!(a.accepts(&[s[0], s[1], s[0], s[1]]).unwrap());
        assert!(a.accepts(&[Symbol::new(7)]).is_err());
    }

    #[test]
    fn empty_word_accepted_iff_initial_final() {
        let mut a = Nfa::new(2, 0);
        assert!(!a.accepts(&[]).unwrap());
        a.set_final(0);
        assert!(a.accepts(&[]).unwrap());
    }

    #[test]
    fn word_automaton_shape() {
        let s = syms(2);
        let a = word_automaton(&[s[0], s[1]], s.clone());
        assert_eq!(a.state_count(), 3);
        assert_eq!(
            a.transitions().as_slice(),
            [Transition::new(0, s[0], 1), Transition::new(1, s[1], 2)]
        );
        assert_eq!(a.finals().iter().copied().collect::<Vec<_>>(), [2]);

        let e = word_automaton(&[], s.clone());
        assert_eq!(e.state_count(), 1);
        assert!(e.transitions().is_empty());
        assert!(e.accepts(&[]).unwrap());

        let long = vec![s[1]; 9];
        assert_eq!(word_automaton(&long, []).state_count(), 10);
    }

    #[test]
    fn sigma_star() {
        let s = syms(2);
        let a = sigma_star_automaton(s.clone());
        assert_eq!(a.state_count(), 1);
        assert_eq!(a.transitions().len(), 2);
        assert!(a.accepts(&[s[0], s[1], s[0]]).unwrap());

        let empty = sigma_star_automaton([]);
        assert!(empty.transitions().is_empty());
        assert!(empty.accepts(&[]).unwrap());

        let only_a = sigma_star_automaton([s[0]]);
        assert!(only_a.accepts(&[s[0], s[0]]).unwrap());
        assert!(only_a.accepts(&[]).unwrap());
    }

    #[test]
    fn tstar_var_tstar() {
        let (t, v) = (Symbol::new(0), Symbol::new(1));
        let a = tstar_var_tstar_automaton([t], v);
        assert_eq!(a.state_count(), 2);
        assert!(a.accepts(&[v]).unwrap());
        assert!(a.accepts(&[t, v]).unwrap());
        assert!(a.accepts(&[v, t, t]).unwrap());
        assert!(!a.accepts(&[]).unwrap());
        assert!(!a.accepts(&[v, v]).unwrap());
    }

    #[test]
    fn pumping_pattern_matches_definition() {
        let (a, b, v) = (Symbol::new(0), Symbol::new(1), Symbol::new(2));
        let nfa = pumping_pattern_automaton([a, b], v);
        assert!(nfa.accepts(&[a, v]).unwrap());
        assert!(nfa.accepts(&[v, b]).unwrap());
        assert!(nfa.accepts(&[a, v, b]).unwrap());
        assert!(!nfa.accepts(&[v]).unwrap());
        assert!(!nfa.accepts(&[a, b]).unwrap());

        // brute force over all strings of length <= 4
        let alphabet = [a, b, v];
        let mut words: Vec<Vec<Symbol>> = vec![vec![]];
        for len in 0..4 {
            let extended: Vec<Vec<Symbol>> = words
                .iter()
                .filter(|w| w.len() == len)
                .flat_map(|w| {
                    alphabet.iter().map(move |&s| {
                        let mut w = w.clone();
                        w.push(s);
                        w
                    })
                })
                .collect();
            words.extend(extended);
        }
        for w in words {
            let expected = w.iter().filter(|&&s| s == v).count() == 1 && w.len() >= 2;
            assert_eq!(nfa.accepts(&w).unwrap(), expected, "{w:?}");
        }
    }

    #[test]
    fn complement_basics() {
        let a = Symbol::new(0);
        let c = complement(&word_automaton(&[a], [a]), DEFAULT_MAX_DFA_STATES).unwrap();
        assert!(!c.accepts(&[a]).unwrap());
        assert!(c.accepts(&[]).unwrap());
        assert!(c.accepts(&[a, a]).unwrap());

        let b = Symbol::new(1);
        let none = complement(&sigma_star_automaton([a, b]), DEFAULT_MAX_DFA_STATES).unwrap();
        assert!(!none.accepts(&[]).unwrap());
        assert!(!none.accepts(&[a, b]).unwrap());
    }

    #[test]
    fn complement_state_cap() {
        // (a|b)* a (a|b)^3 needs 16 DFA states
        let (a, b) = (Symbol::new(0), Symbol::new(1));
        let mut n = Nfa::new(5, 0);
        n.add_transition(0, a, 0);
        n.add_transition(0, b, 0);
        n.add_transition(0, a, 1);
        for q in 1..4 {
            n.add_transition(q, a, q + 1);
            n.add_transition(q, b, q + 1);
        }
        n.set_final(4);
        assert_eq!(
            complement(&n, 8).unwrap_err(),
            Error::StateLimit { limit: 8 }
        );
        assert_eq!(complement(&n, 16).unwrap().state_count(), 16);
    }

    #[test]
    fn adjacency_projections() {
        let s = syms(2);
        let mut adj = TransitionAdjacency::new(3, 2);
        let ts = [
            Transition::new(0, s[0], 1),
            Transition::new(0, s[0], 2),
            Transition::new(2, s[1], 1),
        ];
        for t in &ts {
            adj.record(t);
        }
        assert_eq!(adj.back(0, s[0]), [1, 2]);
        assert_eq!(adj.front(s[0], 2), [0]);
        assert_eq!(adj.front(s[1], 1), [2]);
        assert!(adj.back(0, Symbol::new(9)).is_empty());
        assert_eq!(adj.len(), ts.len());
    }

    #[test]
    fn transition_set_grows_alphabet() {
        let mut set = TransitionSet::new(2, 1);
        assert!(set.insert(Transition::new(0, Symbol::new(0), 1)));
        assert!(set.insert(Transition::new(1, Symbol::new(5), 0)));
        assert!(!set.insert(Transition::new(0, Symbol::new(0), 1)));
        assert!(set.contains(&Transition::new(1, Symbol::new(5), 0)));
        assert!(!set.contains(&Transition::new(1, Symbol::new(9), 0)));
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn dot_output() {
        let mut st = SymbolTable::new();
        st.intern("a", SymbolKind::Terminal).unwrap();
        st.intern("b", SymbolKind::Terminal).unwrap();
        let one = Nfa::new(1, 0);
        let dot = to_dot(&one, &st);
        assert_eq!(dot.matches("[shape=").count(), 1);

        let dot = to_dot(&sample(), &st);
        assert_eq!(dot.matches("[shape=").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("\"q2\" [shape=doublecircle]"));
        assert!(dot.contains("\"q1\" -> \"q2\" [label=\"b\"]"));
    }

    #[test]
    fn load_text_format() {
        let mut st = SymbolTable::new();
        let a = st.intern("a", SymbolKind::Terminal).unwrap();
        let text =
            "# sample\nstates: q0 q1 q2\ninitial: q0\nfinal: q2\nq0 a q1\nq1 b q2\nq2 a q1\n";
        let loaded = parse_automaton(text, &mut st, &[a]).unwrap();
        assert_eq!(loaded.nfa.state_count(), 3);
        assert_eq!(loaded.nfa.transitions().len(), 3);
        assert_eq!(loaded.foreign.len(), 1);
        assert_eq!(st.name(loaded.foreign[0]), "b");
        assert_eq!(loaded.state_names, ["q0", "q1", "q2"]);

        let mut st = SymbolTable::new();
        for (bad, line) in [
            ("states: p\ninitial: p\np eps p", 3),
            ("states: p\ninitial: r", 2),
            ("initial: p", 1),
            ("states: p\np a", 2),
            ("states: p p", 1),
        ] {
            match parse_automaton(bad, &mut st, &[]) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{bad}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
        assert!(parse_automaton("states: p\n", &mut st, &[]).is_err());
    }
}
