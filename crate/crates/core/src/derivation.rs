//! Derivation trees witnessing `A =>* w`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grammar::{FreshSymbol, Grammar, NormalizedGrammar, ProductionOrigin, Symbol};

/// A derivation tree. `production` indexes the productions of the grammar the
/// tree was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// A terminal, or a variable left unexpanded.
    Leaf(Symbol),
    Node {
        lhs: Symbol,
        production: usize,
        children: Vec<Derivation>,
    },
}

impl Derivation {
    pub fn root(&self) -> Symbol {
        match self {
            Derivation::Leaf(s) => *s,
            Derivation::Node { lhs, .. } => *lhs,
        }
    }

    /// Leaves read left to right; ε-nodes contribute nothing.
    pub fn frontier(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_frontier(&mut out);
        out
    }

    fn collect_frontier(&self, out: &mut Vec<Symbol>) {
        match self {
            Derivation::Leaf(s) => out.push(*s),
            Derivation::Node { children, .. } => {
                for c in children {
                    c.collect_frontier(out);
                }
            }
        }
    }

    /// Checks that every node applies a real production of `g` whose body
    /// matches the node's children.
    pub fn validate(&self, g: &Grammar) -> Result<()> {
        match self {
            Derivation::Leaf(_) => Ok(()),
            Derivation::Node {
                lhs,
                production,
                children,
            } => {
                let p = g
                    .productions()
                    .get(*production)
                    .ok_or_else(|| Error::Malformed(format!("no production #{production}")))?;
                let labels: Vec<Symbol> = children.iter().map(Derivation::root).collect();
                if p.lhs != *lhs || p.body != labels {
                    return Err(Error::Malformed(format!(
                        "node {} -> {} does not match production #{production}",
                        g.name(*lhs),
                        g.symbols().render(&labels)
                    )));
                }
                children.iter().try_for_each(|c| c.validate(g))
            }
        }
    }

    /// Leftmost derivation sequence from the root to the frontier.
    pub fn steps(&self) -> Vec<Vec<Symbol>> {
        let mut form: Vec<&Derivation> = vec![self];
        let mut steps = vec![vec![self.root()]];
        while let Some(pos) = form
            .iter()
            .position(|d| matches!(d, Derivation::Node { .. }))
        {
            let Derivation::Node { children, .. } = form[pos] else {
                unreachable!()
            };
            form.splice(pos..=pos, children.iter());
            steps.push(form.iter().map(|d| d.root()).collect());
        }
        steps
    }

    /// Indented rendering, one production application per line.
    pub fn render(&self, g: &Grammar) -> String {
        let mut out = String::new();
        self.render_into(g, 0, &mut out);
        out
    }

    fn render_into(&self, g: &Grammar, depth: usize, out: &mut String) {
        if let Derivation::Node { lhs, children, .. } = self {
            let body: Vec<Symbol> = children.iter().map(Derivation::root).collect();
            writeln!(
                out,
                "{:indent$}{} -> {}",
                "",
                g.name(*lhs),
                g.symbols().render(&body),
                indent = depth * 2
            )
            .unwrap();
            for c in children {
                c.render_into(g, depth + 1, out);
            }
        }
    }

    /// Rewrites a derivation over the normalized grammar into one over the
    /// source grammar: continuation variables are inlined and terminal
    /// wrappers collapse back to their terminal.
    pub fn lift(&self, ng: &NormalizedGrammar) -> Result<Derivation> {
        let fresh_root = || Error::Malformed("derivation is rooted at a fresh variable".into());
        match self {
            Derivation::Leaf(s) => match ng.fresh(*s) {
                Some(_) => Err(fresh_root()),
                None => Ok(Derivation::Leaf(*s)),
            },
            Derivation::Node {
                lhs,
                production,
                children,
            } => {
                if ng.fresh(*lhs).is_some() {
                    return Err(fresh_root());
                }
                let ProductionOrigin::Original(orig) = ng.origin(*production) else {
                    return Err(fresh_root());
                };
                let mut lifted = Vec::with_capacity(children.len());
                for c in children {
                    flatten_into(c, ng, &mut lifted)?;
                }
                let node = Derivation::Node {
                    lhs: *lhs,
                    production: orig,
                    children: lifted,
                };
                Ok(node)
            }
        }
    }
}

fn flatten_into(d: &Derivation, ng: &NormalizedGrammar, out: &mut Vec<Derivation>) -> Result<()> {
    match (ng.fresh(d.root()), d) {
        (None, _) => out.push(d.lift(ng)?),
        (Some(FreshSymbol::Wrapper(t)), Derivation::Node { .. }) => out.push(Derivation::Leaf(t)),
        (Some(FreshSymbol::Continuation(_)), Derivation::Node { children, .. }) => {
            for c in children {
                flatten_into(c, ng, out)?;
            }
        }
        (Some(_), Derivation::Leaf(_)) => {
            return Err(Error::Malformed(
                "unexpanded fresh variable in derivation".into(),
            ));
        }
    }
    Ok(())
}
