//! The automaton graph with simple, bounded and unbounded edges, and the
//! uniformity check.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph;

use super::automaton::{letters, PAutomaton};
use super::formula::{closure_of, Formula};

/// Nodes are states (as `Formula::State`) and subformulas of transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonGraph {
    pub nodes: Vec<Formula>,
    pub simple: BTreeSet<(usize, usize)>,
    pub bounded: BTreeSet<(usize, usize)>,
    pub unbounded: BTreeSet<(usize, usize)>,
}

impl AutomatonGraph {
    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.nodes.binary_search(f).ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in self.simple.iter().chain(&self.bounded).chain(&self.unbounded) {
            adj[a].push(b);
        }
        adj
    }

    /// SCCs in reverse topological order (bottom first).
    pub fn components(&self) -> Vec<Vec<usize>> {
        graph::strongly_connected_components(&self.adjacency(), None)
    }
}

pub fn build_automaton_graph(a: &PAutomaton) -> AutomatonGraph {
    build_graph_with(a, &[])
}

/// Graph over Q ∪ cl(δ(Q,Σ)) ∪ cl(extra).
pub(crate) fn build_graph_with(a: &PAutomaton, extra: &[Formula]) -> AutomatonGraph {
    let transitions = a.transition_formulas();
    let mut nodes: BTreeSet<Formula> = closure_of(&transitions);
    nodes.extend(closure_of(extra));
    nodes.extend(a.states.iter().map(|s| Formula::state(&s.name)));
    let nodes: Vec<Formula> = nodes.into_iter().collect();
    let index: BTreeMap<&Formula, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut g = AutomatonGraph {
        simple: BTreeSet::new(),
        bounded: BTreeSet::new(),
        unbounded: BTreeSet::new(),
        nodes: Vec::new(),
    };
    for (i, f) in nodes.iter().enumerate() {
        match f {
            Formula::And(..) | Formula::Or(..) => {
                for c in f.children() {
                    let j = index[c];
                    if matches!(c, Formula::State(_)) {
                        g.unbounded.insert((i, j));
                    } else {
                        g.simple.insert((i, j));
                    }
                }
            }
            Formula::Term { state, .. } => {
                g.bounded.insert((i, index[&Formula::state(state)]));
            }
            Formula::State(q) => {
                let Some(def) = a.state(q) else { continue };
                for letter in letters(&a.propositions) {
                    let target = match def.transitions.get(&letter) {
                        Some(t) => t.clone(),
                        None => Formula::Ff,
                    };
                    if let Some(&j) = index.get(&target) {
                        g.simple.insert((i, j));
                    }
                }
            }
            Formula::Tt | Formula::Ff => {}
        }
    }
    g.nodes = nodes;
    g
}

/// Verdict of the uniformity check; on failure, the members of an SCC
/// holding both a bounded and an unbounded edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Uniformity {
    pub uniform: bool,
    pub witness: Option<Vec<Formula>>,
}

pub fn is_uniform(a: &PAutomaton) -> Uniformity {
    let g = build_automaton_graph(a);
    let comps = g.components();
    let comp = graph::component_ids(g.nodes.len(), &comps);
    let inside = |set: &BTreeSet<(usize, usize)>, c: usize| set.iter().any(|&(x, y)| comp[x] == c && comp[y] == c);
    for (c, members) in comps.iter().enumerate() {
        if inside(&g.bounded, c) && inside(&g.unbounded, c) {
            return Uniformity {
                uniform: false,
                witness: Some(members.iter().map(|&i| g.nodes[i].clone()).collect()),
            };
        }
    }
    Uniformity {
        uniform: true,
        witness: None,
    }
}
