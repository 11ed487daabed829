//! Seeded random instances for property suites and the CLI self-test.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{GameBuilder, LabeledMarkovChain, Obligation, ObligationGame, Owner, Priority};
use crate::rational::{Comparator, Rational};

/// Shape of generated games.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameShape {
    pub max_configurations: usize,
    pub max_obligations: usize,
    pub max_priority: Priority,
    pub max_out_degree: usize,
    /// Whether player configurations may be generated.
    pub players: bool,
}

impl Default for GameShape {
    fn default() -> Self {
        GameShape {
            max_configurations: 6,
            max_obligations: 3,
            max_priority: 3,
            max_out_degree: 2,
            players: true,
        }
    }
}

/// Distributions built from {1/4, 1/3, 1/2, 2/3, 3/4} (and 1).
fn pattern(degree: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let r = |n, d| Rational::new(n, d);
    let options: Vec<Vec<Rational>> = match degree {
        1 => vec![vec![r(1, 1)]],
        2 => vec![
            vec![r(1, 2), r(1, 2)],
            vec![r(1, 4), r(3, 4)],
            vec![r(3, 4), r(1, 4)],
            vec![r(1, 3), r(2, 3)],
            vec![r(2, 3), r(1, 3)],
        ],
        _ => vec![
            vec![r(1, 3), r(1, 3), r(1, 3)],
            vec![r(1, 4), r(1, 4), r(1, 2)],
            vec![r(1, 2), r(1, 4), r(1, 4)],
            vec![r(1, 4), r(1, 2), r(1, 4)],
        ],
    };
    options[rng.random_range(0..options.len())].clone()
}

fn distinct_targets(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(degree.min(n));
    all
}

/// Random valid game with the given shape.
pub fn random_game(seed: u64, shape: &GameShape) -> ObligationGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=shape.max_configurations);
    let mut b = GameBuilder::new();
    let mut owners = Vec::with_capacity(n);
    for v in 0..n {
        let owner = if shape.players {
            match rng.random_range(0..3) {
                0 => Owner::Player0,
                1 => Owner::Player1,
                _ => Owner::Random,
            }
        } else {
            Owner::Random
        };
        let priority = rng.random_range(0..=shape.max_priority);
        b.add(format!("v{v}"), owner, priority);
        owners.push(owner);
    }
    for v in 0..n {
        let degree = rng.random_range(1..=shape.max_out_degree.clamp(1, 3)).min(n);
        let targets = distinct_targets(n, degree, &mut rng);
        if owners[v] == Owner::Random {
            for (t, p) in targets.iter().zip(pattern(targets.len(), &mut rng)) {
                b.random_edge(v, *t, p);
            }
        } else {
            for &t in &targets {
                b.edge(v, t);
            }
        }
    }
    let obligations = rng.random_range(0..=shape.max_obligations.min(n));
    for v in distinct_targets(n, obligations, &mut rng) {
        b.set_obligation(v, Some(random_obligation(&mut rng)));
    }
    b.build().expect("generated games are valid")
}

fn random_obligation(rng: &mut ChaCha8Rng) -> Obligation {
    let thresholds = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)];
    let (num, den) = thresholds[rng.random_range(0..thresholds.len())];
    let cmp = if rng.random_bool(0.5) {
        Comparator::AtLeast
    } else {
        Comparator::MoreThan
    };
    Obligation::new(cmp, Rational::new(num, den))
}

/// Random chain with up to `max_locations` locations and random priorities
/// in `0..=max_priority`.
pub fn random_chain(seed: u64, max_locations: usize, max_priority: Priority) -> (LabeledMarkovChain, Vec<Priority>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_locations);
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let degree = rng.random_range(1..=3).min(n);
        let targets = distinct_targets(n, degree, &mut rng);
        let probs = pattern(targets.len(), &mut rng);
        let mut row: Vec<(usize, Rational)> = targets.into_iter().zip(probs).collect();
        row.sort_by_key(|(t, _)| *t);
        rows.push(row);
    }
    let priorities = (0..n).map(|_| rng.random_range(0..=max_priority)).collect();
    let chain = LabeledMarkovChain::new(
        (0..n).map(|s| format!("s{s}")).collect(),
        rows,
        vec![BTreeSet::new(); n],
        0,
    )
    .expect("generated chains are valid");
    (chain, priorities)
}

/// Priorities and obligations of a game, keyed by location index, for
/// embedding a chain.
pub fn annotations(priorities: &[Priority]) -> BTreeMap<usize, Priority> {
    priorities.iter().copied().enumerate().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_are_valid_and_reproducible() {
        let shape = GameShape::default();
        for seed in 0..200 {
            let g = random_game(seed, &shape);
            assert!(g.validate().is_empty());
            assert!(g.len() <= 6 && g.max_priority() <= 3);
            assert!(g.obligation_configurations().len() <= 3);
            assert_eq!(g, random_game(seed, &shape));
        }
        for seed in 0..50 {
            let (c, p) = random_chain(seed, 8, 3);
            assert!(c.validate().is_empty());
            assert_eq!(p.len(), c.len());
        }
    }
}
