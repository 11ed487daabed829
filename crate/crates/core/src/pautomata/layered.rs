//! Bottom-up acceptance for uniform automata.
//!
//! Product configurations are grouped by the automaton-graph SCC of their
//! formula and solved from the bottom of that DAG upwards. Configurations
//! below the current layer are replaced by gadgets reaching WIN with their
//! (already known) value. Layers whose SCC has no bounded edge contain no
//! recursion through terms: their terms are decided directly from the layer
//! below and the rest is a plain parity game. Layers with bounded edges go
//! through the obligation solver.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph;
use crate::model::{GameBuilder, LabeledMarkovChain, ObligationGame, Owner};
use crate::obligation::find_best_dependency;
use crate::parity::solve_parity;
use crate::rational::Rational;

use super::automaton::PAutomaton;
use super::graph::{build_graph_with, is_uniform};
use super::product::build_product_game;

/// Value of (φ_in, s_in) by the layered solve, and the resulting verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredAcceptance {
    pub accepted: bool,
    pub value: Rational,
    /// Number of non-empty layers solved.
    pub layers: usize,
}

pub fn accepts_layered(a: &PAutomaton, mc: &LabeledMarkovChain, budget: &Budget) -> Result<LayeredAcceptance> {
    let uniformity = is_uniform(a);
    if !uniformity.uniform {
        let w: Vec<String> = uniformity.witness.unwrap_or_default().iter().map(ToString::to_string).collect();
        return Err(Error::NotLayerable(format!("automaton is not uniform: {}", w.join(", "))));
    }
    let product = build_product_game(a, mc)?;
    let g = &product.game;
    let ag = build_graph_with(a, std::slice::from_ref(&a.initial));
    let comps = ag.components();
    let comp = graph::component_ids(ag.nodes.len(), &comps);
    let class: Vec<usize> = product
        .nodes
        .iter()
        .map(|(_, f)| comp[ag.index_of(f).expect("product formulas are graph nodes")])
        .collect();
    let has_bounded: Vec<bool> = (0..comps.len())
        .map(|c| ag.bounded.iter().any(|&(x, y)| comp[x] == c && comp[y] == c))
        .collect();

    let mut value: Vec<Option<Rational>> = vec![None; g.len()];
    let mut layers = 0;
    for c in 0..comps.len() {
        let members: Vec<usize> = (0..g.len()).filter(|&v| class[v] == c).collect();
        if members.is_empty() {
            continue;
        }
        layers += 1;
        let mut members = members;
        if !has_bounded[c] {
            // terms only look below
            for &v in &members {
                if let Some(ob) = g.obligation(v) {
                    let mut pre = Rational::zero();
                    for &u in g.successors(v) {
                        let x = value[u].as_ref().ok_or_else(|| {
                            Error::Internal(format!("term {} reaches its own layer", g.id(v)))
                        })?;
                        pre = &pre + &(&g.probability(v, u) * x);
                    }
                    value[v] = Some(if ob.is_met_by(&pre) { Rational::one() } else { Rational::zero() });
                }
            }
            members.retain(|&v| value[v].is_none());
            if members.is_empty() {
                continue;
            }
        }
        let (sub, local) = layer_game(g, &members, &value);
        let values = if has_bounded[c] {
            find_best_dependency(&sub, budget)?.values
        } else {
            solve_parity(&sub, budget)?.values
        };
        for (k, &v) in members.iter().enumerate() {
            debug_assert_eq!(local[&v], k);
            value[v] = Some(values[k].clone());
        }
    }
    let v = value[product.initial].clone().expect("every layer solved");
    Ok(LayeredAcceptance {
        accepted: v.is_one(),
        value: v,
        layers,
    })
}

/// Game on `members` where every edge to an already solved configuration
/// leads to a gadget that wins with that configuration's value.
fn layer_game(g: &ObligationGame, members: &[usize], value: &[Option<Rational>]) -> (ObligationGame, BTreeMap<usize, usize>) {
    let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut b = GameBuilder::new();
    for &v in members {
        let id = b.add(g.id(v), g.owner(v), g.priority(v));
        b.set_obligation(id, g.obligation(v).cloned());
    }
    let win = b.add("WIN", Owner::Random, 0);
    let lose = b.add("LOSE", Owner::Random, 1);
    b.random_edge(win, win, Rational::one());
    b.random_edge(lose, lose, Rational::one());
    let mut gadgets: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut target = |b: &mut GameBuilder, u: usize| -> usize {
        if let Some(&k) = local.get(&u) {
            return k;
        }
        let x = value[u].clone().expect("lower layers are solved");
        if x.is_one() {
            win
        } else if x.is_zero() {
            lose
        } else {
            *gadgets.entry(x.clone()).or_insert_with(|| {
                let n = b.add(format!("value {x}"), Owner::Random, 1);
                b.random_edge(n, win, x.clone());
                b.random_edge(n, lose, x.complement());
                n
            })
        }
    };
    for &v in members {
        let from = local[&v];
        let mut seen = Vec::new();
        for &u in g.successors(v) {
            let t = target(&mut b, u);
            if g.owner(v) == Owner::Random {
                b.random_edge(from, t, g.probability(v, u));
            } else if !seen.contains(&t) {
                seen.push(t);
                b.edge(from, t);
            }
        }
    }
    (b.build().expect("layer games are well formed"), local)
}
