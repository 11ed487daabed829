//! Product of a Markov chain and a p-automaton as an obligation game.

use std::collections::{BTreeMap, VecDeque};

use crate::budget::Budget;
use crate::error::Result;
use crate::model::{GameBuilder, LabeledMarkovChain, Obligation, ObligationGame, Owner, Priority};
use crate::obligation::{find_best_dependency, ObligationValueReport};
use crate::rational::Rational;

use super::automaton::PAutomaton;
use super::formula::Formula;

/// The product game together with the (location, formula) behind every
/// configuration.
#[derive(Debug, Clone)]
pub struct ProductGame {
    pub game: ObligationGame,
    pub nodes: Vec<(usize, Formula)>,
    /// The configuration (s_in, φ_in); always index 0.
    pub initial: usize,
}

impl ProductGame {
    pub fn index_of(&self, s: usize, f: &Formula) -> Option<usize> {
        self.nodes.iter().position(|(t, g)| *t == s && g == f)
    }
}

/// A product successor with its probability; player moves carry none.
type Move = ((usize, Formula), Option<Rational>);

/// Moves of a product node.
fn moves(a: &PAutomaton, mc: &LabeledMarkovChain, s: usize, f: &Formula) -> Result<Vec<Move>> {
    Ok(match f {
        Formula::Tt | Formula::Ff => vec![((s, f.clone()), Some(Rational::one()))],
        Formula::And(x, y) | Formula::Or(x, y) => {
            let mut out = vec![((s, (**x).clone()), None)];
            if x != y {
                out.push(((s, (**y).clone()), None));
            }
            out
        }
        Formula::State(q) | Formula::Term { state: q, .. } => {
            let next = a.delta(q, mc.labels(s))?;
            mc.transitions(s)
                .iter()
                .map(|(t, p)| ((*t, next.clone()), Some(p.clone())))
                .collect()
        }
    })
}

fn describe(f: &Formula, a: &PAutomaton, top: Priority) -> (Owner, Priority, Option<Obligation>) {
    match f {
        Formula::Tt => (Owner::Random, 0, None),
        Formula::Ff => (Owner::Random, 1, None),
        Formula::Or(..) => (Owner::Player0, top, None),
        Formula::And(..) => (Owner::Player1, top, None),
        Formula::State(q) => (Owner::Random, a.priority(q), None),
        Formula::Term {
            state,
            comparator,
            threshold,
        } => (
            Owner::Random,
            a.priority(state),
            Some(Obligation::new(*comparator, threshold.clone())),
        ),
    }
}

/// Configurations reachable from (s_in, φ_in). Disjunctions belong to
/// Player 0, conjunctions to Player 1; states and terms move with the
/// chain, terms carry their bound as an obligation. `tt`/`ff` are
/// absorbing with priority 0/1; Boolean nodes get the top priority.
pub fn build_product_game(a: &PAutomaton, mc: &LabeledMarkovChain) -> Result<ProductGame> {
    a.validate()?;
    let top = a.max_priority();
    let mut index: BTreeMap<(usize, Formula), usize> = BTreeMap::new();
    let mut nodes: Vec<(usize, Formula)> = Vec::new();
    let mut edges: Vec<Vec<(usize, Option<Rational>)>> = Vec::new();
    let start = (mc.initial(), a.initial.clone());
    index.insert(start.clone(), 0);
    nodes.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (s, f) = nodes[i].clone();
        let mut out = Vec::new();
        for (key, p) in moves(a, mc, s, &f)? {
            let j = *index.entry(key.clone()).or_insert_with(|| {
                nodes.push(key);
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            out.push((j, p));
        }
        if edges.len() <= i {
            edges.resize(i + 1, Vec::new());
        }
        edges[i] = out;
    }
    let mut b = GameBuilder::new();
    for (s, f) in &nodes {
        let (owner, priority, obligation) = describe(f, a, top);
        let v = b.add(format!("{}:{f}", mc.id(*s)), owner, priority);
        b.set_obligation(v, obligation);
    }
    for (i, out) in edges.into_iter().enumerate() {
        for (j, p) in out {
            match p {
                Some(p) => b.random_edge(i, j, p),
                None => b.edge(i, j),
            };
        }
    }
    Ok(ProductGame {
        game: b.build()?,
        nodes,
        initial: 0,
    })
}

/// Verdict of the acceptance check with its evidence.
#[derive(Debug, Clone)]
pub struct Acceptance {
    pub accepted: bool,
    pub product: ProductGame,
    pub report: ObligationValueReport,
}

/// The chain is accepted iff (φ_in, s_in) has value 1 in the product game.
pub fn accepts(a: &PAutomaton, mc: &LabeledMarkovChain, budget: &Budget) -> Result<Acceptance> {
    let product = build_product_game(a, mc)?;
    let report = find_best_dependency(&product.game, budget)?;
    Ok(Acceptance {
        accepted: report.values[product.initial].is_one(),
        product,
        report,
    })
}
