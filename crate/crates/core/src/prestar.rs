//! The saturation engine: computes an automaton for `pre*(L(A))`.
//!
//! The worklist algorithm runs over a grammar in extended CNF. Transitions are
//! confirmed into `delta` at most once; a second bit array (`seen`) keeps any
//! transition from entering the worklist twice. Each confirmed transition
//! remembers why it was added, which is enough to rebuild a derivation.

use std::collections::{BTreeSet, HashMap};
use std::ops::AddAssign;

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::automaton::{render_dot, Nfa, State, Transition, TransitionAdjacency, TransitionSet};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::grammar::{Body, ProductionId, ProductionIndex, Symbol, SymbolTable};

/// Worklist discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PopOrder {
    #[default]
    Stack,
    /// Pop a uniformly random pending entry; seeded for reproducibility.
    Random(u64),
}

/// Instrumentation for the complexity bounds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    /// Worklist removals.
    pub pops: u64,
    /// Unit-production additions attempted.
    pub unit_fires: u64,
    /// Binary-production additions attempted, both directions combined.
    pub binary_fires: u64,
    /// Transitions added on top of the input automaton.
    pub adds: u64,
    /// Distinct transitions ever pushed onto the worklist.
    #[serde(skip)]
    pub pushes: u64,
}

impl Counters {
    /// One-line JSON with the four reported counters.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("counters serialize")
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, rhs: Self) {
        self.pops += rhs.pops;
        self.unit_fires += rhs.unit_fires;
        self.binary_fires += rhs.binary_fires;
        self.adds += rhs.adds;
        self.pushes += rhs.pushes;
    }
}

/// Why a transition was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    /// Present in the input automaton.
    Original,
    /// `A -> a` over an input transition labelled `a`.
    Terminal { production: ProductionId },
    /// `A -> eps`, a self-loop.
    Epsilon { production: ProductionId },
    /// `A -> B` over the transition with timestamp `child`.
    Unit {
        production: ProductionId,
        child: usize,
    },
    /// `A -> B C` over `(q, B, middle)` and `(middle, C, q')`.
    Binary {
        production: ProductionId,
        middle: State,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub reason: Reason,
    /// Position in the order of confirmation.
    pub timestamp: usize,
}

/// Result of [`saturate`]: the input automaton with transition set `δ'`.
#[derive(Debug, Clone)]
pub struct SaturatedAutomaton {
    nfa: Nfa,
    provenance: Vec<Provenance>,
    ids: HashMap<Transition, usize>,
    variables: Vec<bool>,
    counters: Counters,
    production_count: usize,
    inert_labels: Vec<Symbol>,
}

impl SaturatedAutomaton {
    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    /// Grammar size `p` used for the run.
    pub fn production_count(&self) -> usize {
        self.production_count
    }

    pub fn state_count(&self) -> usize {
        self.nfa.state_count()
    }

    /// `binary_fires <= p * s^3`.
    pub fn within_cubic_bound(&self) -> bool {
        let s = self.state_count() as u64;
        self.counters.binary_fires <= self.production_count as u64 * s * s * s
    }

    /// Input labels that no production mentions; they never take part.
    pub fn inert_labels(&self) -> &[Symbol] {
        &self.inert_labels
    }

    pub fn contains(&self, t: &Transition) -> bool {
        self.nfa.has_transition(t)
    }

    pub fn provenance(&self, t: &Transition) -> Option<Provenance> {
        self.ids.get(t).map(|&id| self.provenance[id])
    }

    /// Transitions in confirmation order; index = timestamp.
    pub fn transitions(&self) -> &[Transition] {
        self.nfa.transitions().as_slice()
    }

    /// Transitions not present in the input automaton.
    pub fn added(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions()
            .iter()
            .zip(&self.provenance)
            .filter(|(_, p)| p.reason != Reason::Original)
            .map(|(t, _)| t)
    }

    /// True iff `form ∈ pre*(L(A))`.
    pub fn accepts(&self, form: &[Symbol]) -> Result<bool> {
        self.nfa.accepts(form)
    }

    /// Some final `f` with `(initial, sym, f)` in `δ'`, i.e. `sym ∈ pre*(L)`.
    pub fn accepts_symbol(&self, sym: Symbol) -> bool {
        self.nfa
            .finals()
            .iter()
            .any(|&f| self.contains(&Transition::new(self.nfa.initial(), sym, f)))
    }

    /// Rebuilds the derivation that justified `t` by following provenance.
    ///
    /// The derivation's frontier labels a path from `t.from` to `t.to` in the
    /// input automaton. Production ids refer to the index used to saturate.
    pub fn extract_derivation(
        &self,
        t: &Transition,
        index: &ProductionIndex,
    ) -> Result<Derivation> {
        let id = *self
            .ids
            .get(t)
            .ok_or_else(|| Error::MissingTransition(format!("{t:?}")))?;
        if self.provenance[id].reason == Reason::Original && !self.is_variable(t.label) {
            return Err(Error::NoDerivation(format!("{t:?}")));
        }
        self.build(id, index)
    }

    fn is_variable(&self, sym: Symbol) -> bool {
        self.variables.get(sym.index()).copied().unwrap_or(false)
    }

    fn build(&self, id: usize, index: &ProductionIndex) -> Result<Derivation> {
        let t = self.transitions()[id];
        let prov = self.provenance[id];
        if prov.timestamp != id {
            return Err(Error::CorruptProvenance(id));
        }
        let child = |c: usize| {
            if c >= id {
                Err(Error::CorruptProvenance(id))
            } else {
                self.build(c, index)
            }
        };
        let node = |production: ProductionId, children| Derivation::Node {
            lhs: t.label,
            production,
            children,
        };
        Ok(match prov.reason {
            Reason::Original => Derivation::Leaf(t.label),
            Reason::Terminal { production } => match index.production(production).body {
                Body::Terminal(a) => node(production, vec![Derivation::Leaf(a)]),
                _ => return Err(Error::CorruptProvenance(id)),
            },
            Reason::Epsilon { production } => node(production, vec![]),
            Reason::Unit {
                production,
                child: c,
            } => node(production, vec![child(c)?]),
            Reason::Binary {
                production,
                left,
                right,
                ..
            } => node(production, vec![child(left)?, child(right)?]),
        })
    }

    /// GraphViz rendering; added transitions are dashed.
    pub fn to_dot(&self, symbols: &SymbolTable) -> String {
        self.to_dot_named(symbols, None)
    }

    /// As [`Self::to_dot`], naming states from `names`.
    pub fn to_dot_named(&self, symbols: &SymbolTable, names: Option<&[String]>) -> String {
        render_dot(&self.nfa, symbols, names, |t| {
            self.provenance(t)
                .is_some_and(|p| p.reason != Reason::Original)
        })
    }
}

/// Computes `δ_pre*` for `a` under the grammar behind `index`, LIFO worklist.
pub fn saturate(index: &ProductionIndex, a: &Nfa) -> SaturatedAutomaton {
    saturate_with(index, a, PopOrder::Stack)
}

struct Worklist {
    states: usize,
    sigma: usize,
    seen: FixedBitSet,
    pending: Vec<(Transition, Reason)>,
    pushes: u64,
}

impl Worklist {
    fn push(&mut self, t: Transition, reason: Reason) {
        let slot = (t.from * self.sigma + t.label.index()) * self.states + t.to;
        if !self.seen.put(slot) {
            self.pending.push((t, reason));
            self.pushes += 1;
        }
    }
}

pub fn saturate_with(index: &ProductionIndex, a: &Nfa, order: PopOrder) -> SaturatedAutomaton {
    let s = a.state_count();
    let sigma = a
        .transitions()
        .sigma()
        .max(index.symbol_count())
        .max(a.alphabet().iter().next_back().map_or(0, |x| x.index() + 1));

    let mut delta = TransitionSet::new(s, sigma);
    let mut adjacency = TransitionAdjacency::new(s, sigma);
    let mut provenance: Vec<Provenance> = Vec::new();
    let mut ids: HashMap<Transition, usize> = HashMap::new();
    let mut counters = Counters::default();
    let mut work = Worklist {
        states: s,
        sigma,
        seen: FixedBitSet::with_capacity(s * sigma * s),
        pending: Vec::new(),
        pushes: 0,
    };
    let mut rng = match order {
        PopOrder::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        PopOrder::Stack => None,
    };

    for &t in a.transitions().iter() {
        work.push(t, Reason::Original);
    }
    for t in a.transitions().iter() {
        for &pid in index.term(t.label) {
            let lhs = index.production(pid).lhs;
            work.push(
                Transition::new(t.from, lhs, t.to),
                Reason::Terminal { production: pid },
            );
        }
    }
    for &pid in index.eps() {
        let lhs = index.production(pid).lhs;
        for q in 0..s {
            work.push(
                Transition::new(q, lhs, q),
                Reason::Epsilon { production: pid },
            );
        }
    }

    loop {
        let next = match rng.as_mut() {
            None => work.pending.pop(),
            Some(rng) if !work.pending.is_empty() => {
                let i = rng.gen_range(0..work.pending.len());
                Some(work.pending.swap_remove(i))
            }
            Some(_) => None,
        };
        let Some((t, reason)) = next else { break };
        counters.pops += 1;
        if !delta.insert(t) {
            continue;
        }
        let ts = provenance.len();
        provenance.push(Provenance {
            reason,
            timestamp: ts,
        });
        ids.insert(t, ts);
        adjacency.record(&t);
        if reason != Reason::Original {
            counters.adds += 1;
        }

        let Transition {
            from: q,
            label: b,
            to: q1,
        } = t;
        for &pid in index.chain(b) {
            counters.unit_fires += 1;
            let lhs = index.production(pid).lhs;
            work.push(
                Transition::new(q, lhs, q1),
                Reason::Unit {
                    production: pid,
                    child: ts,
                },
            );
        }
        for &pid in index.front(b) {
            let p = index.production(pid);
            let Body::Pair(_, c) = p.body else {
                unreachable!()
            };
            for &q2 in adjacency.back(q1, c) {
                counters.binary_fires += 1;
                let right = ids[&Transition::new(q1, c, q2)];
                work.push(
                    Transition::new(q, p.lhs, q2),
                    Reason::Binary {
                        production: pid,
                        middle: q1,
                        left: ts,
                        right,
                    },
                );
            }
        }
        for &pid in index.back(b) {
            let p = index.production(pid);
            let Body::Pair(c, _) = p.body else {
                unreachable!()
            };
            for &q2 in adjacency.front(c, q) {
                // for A -> B B on a loop (q, B, q) the partner is t itself,
                // already combined by the front pass above
                if c == b && q2 == q && q == q1 {
                    continue;
                }
                counters.binary_fires += 1;
                let left = ids[&Transition::new(q2, c, q)];
                work.push(
                    Transition::new(q2, p.lhs, q1),
                    Reason::Binary {
                        production: pid,
                        middle: q,
                        left,
                        right: ts,
                    },
                );
            }
        }
    }
    counters.pushes = work.pushes;

    let inert_labels: Vec<Symbol> = a
        .transitions()
        .iter()
        .map(|t| t.label)
        .filter(|l| l.index() >= index.symbol_count())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut alphabet = a.alphabet().clone();
    alphabet.extend((0..index.symbol_count()).map(Symbol::new));

    SaturatedAutomaton {
        nfa: a.with_transitions(delta, alphabet),
        provenance,
        ids,
        variables: (0..index.symbol_count())
            .map(|i| index.is_variable(Symbol::new(i)))
            .collect(),
        counters,
        production_count: index.len(),
        inert_labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::sigma_star_automaton;
    use crate::grammar::{build_index, normalize, parse_grammar, Grammar};

    fn sample() -> (Grammar, Nfa) {
        let g = parse_grammar("A -> a | B B\nB -> A B | b").unwrap();
        let s = |n| g.symbols().lookup(n).unwrap();
        let mut a = Nfa::new(3, 0);
        a.add_transition(0, s("a"), 1);
        a.add_transition(1, s("b"), 2);
        a.add_transition(2, s("a"), 1);
        a.set_final(2);
        (g, a)
    }

    #[test]
    fn sample_additions() {
        let (g, a) = sample();
        let sat = saturate(&build_index(&normalize(&g)), &a);
        let mut added: Vec<String> = sat.added().map(|t| t.render(g.symbols())).collect();
        added.sort();
        let mut expected = vec![
            "(q0, A, q1)",
            "(q1, B, q2)",
            "(q2, A, q1)",
            "(q0, B, q2)",
            "(q2, B, q2)",
            "(q0, A, q2)",
            "(q1, A, q2)",
            "(q2, A, q2)",
        ];
        expected.sort();
        assert_eq!(added, expected);
        assert_eq!(sat.counters().adds, 8);
        assert_eq!(sat.transitions().len(), 11);
        assert!(sat.within_cubic_bound());
    }

    #[test]
    fn no_productions_adds_nothing() {
        let (g, a) = sample();
        let empty = g.retain_productions(|_| false);
        let sat = saturate(&build_index(&normalize(&empty)), &a);
        assert_eq!(sat.added().count(), 0);
        assert_eq!(sat.nfa().transitions(), a.transitions());
    }

    #[test]
    fn epsilon_grammar_adds_loops() {
        let g = parse_grammar("S -> eps").unwrap();
        let (_, a) = sample();
        let sat = saturate(&build_index(&normalize(&g)), &a);
        let added: BTreeSet<Transition> = sat.added().copied().collect();
        let expected: BTreeSet<Transition> =
            (0..3).map(|q| Transition::new(q, g.start(), q)).collect();
        assert_eq!(added, expected);
    }

    #[test]
    fn self_loop_binary_fires_once() {
        let g = parse_grammar("S -> S S | a").unwrap();
        let idx = build_index(&normalize(&g));
        let a = sigma_star_automaton(g.terminals());
        let sat = saturate(&idx, &a);
        assert_eq!(sat.counters().binary_fires, 1);
        assert!(sat.within_cubic_bound());
    }

    #[test]
    fn derivation_extraction() {
        let (g, a) = sample();
        let idx = build_index(&normalize(&g));
        let sat = saturate(&idx, &a);
        let s = |n| g.symbols().lookup(n).unwrap();

        let leaf = sat
            .extract_derivation(&Transition::new(1, s("B"), 2), &idx)
            .unwrap();
        assert_eq!(leaf.render(&g), "B -> b\n");

        let d = sat
            .extract_derivation(&Transition::new(0, s("B"), 2), &idx)
            .unwrap();
        d.validate(&g).unwrap();
        assert_eq!(d.frontier(), [s("a"), s("b")]);
        assert_eq!(d.render(&g), "B -> A B\n  A -> a\n  B -> b\n");

        assert!(matches!(
            sat.extract_derivation(&Transition::new(0, s("a"), 1), &idx),
            Err(Error::NoDerivation(_))
        ));
        assert!(matches!(
            sat.extract_derivation(&Transition::new(1, s("a"), 0), &idx),
            Err(Error::MissingTransition(_))
        ));
    }

    #[test]
    fn counters_json_shape() {
        let c = Counters {
            pops: 1,
            unit_fires: 2,
            binary_fires: 3,
            adds: 4,
            pushes: 5,
        };
        assert_eq!(
            c.to_json(),
            r#"{"pops":1,"unit_fires":2,"binary_fires":3,"adds":4}"#
        );
    }
}
