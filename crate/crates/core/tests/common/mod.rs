//! Fixture loading and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use obligation_games::chain::reach_probability;
use obligation_games::format::{parse_chain, parse_game};
use obligation_games::generate::random_chain;
use obligation_games::{LabeledMarkovChain, ObligationGame, Rational};

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// A game document, or a chain document embedded as a game.
pub fn game(name: &str) -> ObligationGame {
    if name.ends_with(".chain.json") {
        parse_chain(&fixture(name)).unwrap().to_game().unwrap()
    } else {
        parse_game(&fixture(name)).unwrap()
    }
}

pub fn chain(name: &str) -> LabeledMarkovChain {
    parse_chain(&fixture(name)).unwrap().chain
}

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn value(g: &ObligationGame, values: &[Rational], id: &str) -> Rational {
    values[g.index_of(id).unwrap()].clone()
}

/// Measure of "a now, then a until Φ" from the initial location, where Φ is
/// the greatest set of b-locations whose next step stays in Φ with
/// probability at least 1/2. This is what the example automaton accepts
/// (with threshold 1/2), computed without any game.
pub fn until_oracle(mc: &LabeledMarkovChain) -> Rational {
    let n = mc.len();
    let half = r("1/2");
    let has = |s: usize, p: &str| mc.labels(s).contains(p);
    let mut phi: BTreeSet<usize> = (0..n).filter(|&s| has(s, "b")).collect();
    loop {
        let keep: BTreeSet<usize> = phi
            .iter()
            .copied()
            .filter(|&s| {
                let mass: Rational = mc.transitions(s).iter().filter(|(t, _)| phi.contains(t)).map(|(_, p)| p.clone()).sum();
                mass >= half
            })
            .collect();
        if keep == phi {
            break;
        }
        phi = keep;
    }
    let avoid: BTreeSet<usize> = (0..n).filter(|&s| !phi.contains(&s) && !has(s, "a")).collect();
    let u = reach_probability(mc, &phi, &avoid);
    let s0 = mc.initial();
    if !has(s0, "a") {
        return Rational::zero();
    }
    mc.transitions(s0).iter().map(|(t, p)| p * &u[*t]).sum()
}

/// Random chain with pseudo-random labels over {a, b}.
pub fn labelled_chain(seed: u64) -> LabeledMarkovChain {
    let (mc, _) = random_chain(seed, 5, 0);
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let labels: Vec<BTreeSet<String>> = (0..mc.len())
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ["a", "b"].iter().enumerate().filter(|(i, _)| state >> (i + 3) & 1 == 1).map(|(_, p)| p.to_string()).collect()
        })
        .collect();
    let rows = (0..mc.len()).map(|s| mc.transitions(s).to_vec()).collect();
    LabeledMarkovChain::new(mc.ids().to_vec(), rows, labels, mc.initial()).unwrap()
}
