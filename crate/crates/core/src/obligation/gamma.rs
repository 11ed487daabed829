//! The minimal-priority monitor product and the per-obligation γ game.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::model::{GameBuilder, ObligationGame, Owner, Priority};
use crate::rational::Rational;

/// A configuration paired with the least priority seen since leaving the
/// start (the start itself excluded, the current configuration included).
pub type Pair = (usize, Priority);

/// Reachable part of the monitor product from a start configuration.
///
/// Index 0 is the start; every other index is a pair. Pairs whose
/// configuration carries an obligation are frozen: they have no successors
/// and are left to the caller to classify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonitorProduct {
    pub start: usize,
    /// `states[i]` for `i >= 1`; `states[0]` repeats the start with its own priority.
    pub states: Vec<Pair>,
    pub frozen: Vec<bool>,
    pub successors: Vec<Vec<usize>>,
}

impl MonitorProduct {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Frozen pairs in ascending order.
    pub fn frozen_pairs(&self) -> BTreeSet<Pair> {
        (1..self.len()).filter(|&i| self.frozen[i]).map(|i| self.states[i]).collect()
    }

    pub fn index_of(&self, pair: Pair) -> Option<usize> {
        (1..self.len()).find(|&i| self.states[i] == pair)
    }
}

pub fn min_priority_monitor_product(game: &ObligationGame, start: usize) -> MonitorProduct {
    let mut states = vec![(start, game.priority(start))];
    let mut frozen = vec![false];
    let mut successors = vec![Vec::new()];
    let mut index: BTreeMap<Pair, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let mut intern = |pair: Pair,
                      states: &mut Vec<Pair>,
                      frozen: &mut Vec<bool>,
                      successors: &mut Vec<Vec<usize>>,
                      queue: &mut VecDeque<usize>| {
        *index.entry(pair).or_insert_with(|| {
            states.push(pair);
            let is_frozen = game.is_obligation(pair.0);
            frozen.push(is_frozen);
            successors.push(Vec::new());
            let id = states.len() - 1;
            if !is_frozen {
                queue.push_back(id);
            }
            id
        })
    };

    for &u in game.successors(start) {
        let id = intern(
            (u, game.priority(u)),
            &mut states,
            &mut frozen,
            &mut successors,
            &mut queue,
        );
        successors[0].push(id);
    }
    while let Some(i) = queue.pop_front() {
        let (u, m) = states[i];
        for &w in game.successors(u) {
            let id = intern(
                (w, m.min(game.priority(w))),
                &mut states,
                &mut frozen,
                &mut successors,
                &mut queue,
            );
            successors[i].push(id);
        }
    }
    MonitorProduct {
        start,
        states,
        frozen,
        successors,
    }
}

/// The γ game of one obligation configuration together with its product.
#[derive(Debug, Clone)]
pub struct GammaGame {
    pub game: ObligationGame,
    /// Index of the start configuration in `game`.
    pub start: usize,
    pub product: MonitorProduct,
}

pub const WIN_ID: &str = "WIN";
pub const LOSE_ID: &str = "LOSE";

/// Parity game (without obligations) in which reaching a frozen pair in
/// `choice` wins, reaching any other frozen pair loses, and plays that never
/// meet an obligation are judged by the original priorities.
pub fn build_gamma_game(game: &ObligationGame, v: usize, choice: &BTreeSet<Pair>) -> GammaGame {
    let product = min_priority_monitor_product(game, v);
    let (g, start) = assemble(game, &product, choice);
    GammaGame {
        game: g,
        start,
        product,
    }
}

/// γ game over an already computed product; returns the game and its start.
pub(crate) fn assemble(game: &ObligationGame, product: &MonitorProduct, choice: &BTreeSet<Pair>) -> (ObligationGame, usize) {
    let mut b = GameBuilder::new();
    // product index -> game index (frozen pairs map to a sink)
    let mut node = vec![usize::MAX; product.len()];
    for i in 0..product.len() {
        if product.frozen[i] {
            continue;
        }
        let (u, m) = product.states[i];
        let id = if i == 0 {
            game.id(u).to_string()
        } else {
            format!("{}@{}", game.id(u), m)
        };
        node[i] = b.add(id, game.owner(u), game.priority(u));
    }
    let win = b.add(WIN_ID, Owner::Random, 0);
    let lose = b.add(LOSE_ID, Owner::Random, 1);
    for i in 0..product.len() {
        if product.frozen[i] {
            node[i] = if choice.contains(&product.states[i]) { win } else { lose };
        }
    }
    for i in 0..product.len() {
        if product.frozen[i] {
            continue;
        }
        let u = product.states[i].0;
        let mut targets: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&w, &j) in game.successors(u).iter().zip(&product.successors[i]) {
            let entry = targets.entry(node[j]).or_insert_with(Rational::zero);
            if game.owner(u) == Owner::Random {
                *entry = &*entry + &game.probability(u, w);
            }
        }
        for (t, p) in targets {
            if game.owner(u) == Owner::Random {
                b.random_edge(node[i], t, p);
            } else {
                b.edge(node[i], t);
            }
        }
    }
    b.random_edge(win, win, Rational::one());
    b.random_edge(lose, lose, Rational::one());
    (b.build().expect("γ games are well formed"), node[0])
}

/// The γ′ game: fulfilled obligations become winning sinks, unfulfilled ones
/// losing sinks; everything else is unchanged. Obligations are erased.
///
/// For every configuration in `probes` a fresh copy with the original
/// moves is appended (at index `game.len() + k`); nothing points to it.
pub fn build_gamma_prime_game(game: &ObligationGame, fulfilled: &[bool], probes: &[usize]) -> ObligationGame {
    let mut b = GameBuilder::new();
    for v in 0..game.len() {
        if game.is_obligation(v) {
            let p = if fulfilled[v] { 0 } else { 1 };
            b.add(game.id(v), Owner::Random, p);
        } else {
            b.add(game.id(v), game.owner(v), game.priority(v));
        }
    }
    for &v in probes {
        b.add(format!("{}?", game.id(v)), game.owner(v), game.priority(v));
    }
    let copy_moves = |b: &mut GameBuilder, from: usize, v: usize| {
        for &u in game.successors(v) {
            if game.owner(v) == Owner::Random {
                b.random_edge(from, u, game.probability(v, u));
            } else {
                b.edge(from, u);
            }
        }
    };
    for v in 0..game.len() {
        if game.is_obligation(v) {
            b.random_edge(v, v, Rational::one());
        } else {
            copy_moves(&mut b, v, v);
        }
    }
    for (k, &v) in probes.iter().enumerate() {
        copy_moves(&mut b, game.len() + k, v);
    }
    b.build().expect("γ′ games are well formed")
}
