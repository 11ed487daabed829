//! Values and optimal pure memoryless strategies of stochastic parity games.
//!
//! [`solve_parity_oracle`] is the reference semantics: it enumerates every
//! pair of pure memoryless strategies. [`solve_parity`] uses strategy
//! improvement with exact MDP best responses and certifies its result by
//! checking that both players' guarantees add up to one.
//!
//! Obligations carried by the game are ignored here; only priorities count.

mod escape;
mod mdp;
pub mod zielonka;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::chain;
use crate::error::Error;
use crate::model::{LabeledMarkovChain, ObligationGame, Player, PureMemorylessStrategy};
use crate::rational::{Comparator, Rational};

pub use zielonka::{DeterministicGame, DeterministicSolution};

/// Player-0 values with optimal strategies for both players.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueVector {
    pub values: Vec<Rational>,
    pub sigma: PureMemorylessStrategy,
    pub pi: PureMemorylessStrategy,
}

/// The Markov chain obtained by fixing both players' strategies.
pub fn induce_chain(
    game: &ObligationGame,
    sigma: &PureMemorylessStrategy,
    pi: &PureMemorylessStrategy,
) -> Result<LabeledMarkovChain, Error> {
    check_pair(game, sigma, pi)?;
    let rows = induced_rows(game, sigma, pi);
    Ok(LabeledMarkovChain::new_unchecked(
        game.ids().to_vec(),
        rows,
        vec![Default::default(); game.len()],
        0,
    ))
}

fn check_pair(game: &ObligationGame, sigma: &PureMemorylessStrategy, pi: &PureMemorylessStrategy) -> Result<(), Error> {
    if sigma.player != Player::Zero || pi.player != Player::One {
        return Err(Error::StrategyMismatch(
            "expected a Player 0 and a Player 1 strategy".into(),
        ));
    }
    sigma.check(game)?;
    pi.check(game)
}

fn induced_rows(
    game: &ObligationGame,
    sigma: &PureMemorylessStrategy,
    pi: &PureMemorylessStrategy,
) -> Vec<Vec<(usize, Rational)>> {
    (0..game.len())
        .map(|v| game.row_with(v, sigma.get(v).or_else(|| pi.get(v))))
        .collect()
}

/// Player-0 values of the chain induced by `sigma` and `pi`.
pub fn evaluate_pair(
    game: &ObligationGame,
    sigma: &PureMemorylessStrategy,
    pi: &PureMemorylessStrategy,
) -> Result<Vec<Rational>, Error> {
    check_pair(game, sigma, pi)?;
    Ok(measure(game, sigma, pi))
}

fn measure(game: &ObligationGame, sigma: &PureMemorylessStrategy, pi: &PureMemorylessStrategy) -> Vec<Rational> {
    chain::parity_rows(&induced_rows(game, sigma, pi), game.priorities())
}

/// Exact optimal counter-strategy of the opponent of `strategy.player`.
pub fn best_response(game: &ObligationGame, strategy: &PureMemorylessStrategy) -> Result<PureMemorylessStrategy, Error> {
    strategy.check(game)?;
    Ok(mdp::best_response(game, strategy.player.opponent(), strategy))
}

/// Player-0 values guaranteed by a Player-0 strategy, or the Player-0
/// values conceded by a Player-1 strategy, against an optimal opponent.
pub fn guaranteed_values(game: &ObligationGame, strategy: &PureMemorylessStrategy) -> Result<Vec<Rational>, Error> {
    let reply = best_response(game, strategy)?;
    Ok(match strategy.player {
        Player::Zero => measure(game, strategy, &reply),
        Player::One => measure(game, &reply, strategy),
    })
}

/// Every pure memoryless strategy of `player` in lexicographic order: the
/// lowest-index configuration is the most significant position, successors
/// in ascending index order.
struct Strategies<'a> {
    game: &'a ObligationGame,
    player: Player,
    owned: Vec<usize>,
    digits: Option<Vec<usize>>,
}

impl<'a> Strategies<'a> {
    fn new(game: &'a ObligationGame, player: Player) -> Self {
        let owned = game.configurations_of(player.owner());
        let digits = Some(vec![0; owned.len()]);
        Strategies {
            game,
            player,
            owned,
            digits,
        }
    }

    fn count(game: &ObligationGame, player: Player) -> u64 {
        game.configurations_of(player.owner())
            .iter()
            .fold(1u64, |acc, &v| acc.saturating_mul(game.successors(v).len() as u64))
    }
}

impl Iterator for Strategies<'_> {
    type Item = PureMemorylessStrategy;

    fn next(&mut self) -> Option<Self::Item> {
        let digits = self.digits.as_mut()?;
        let choice: BTreeMap<usize, usize> = self
            .owned
            .iter()
            .zip(digits.iter())
            .map(|(&v, &d)| (v, self.game.successors(v)[d]))
            .collect();
        let current = PureMemorylessStrategy::new(self.player, choice);
        let mut k = digits.len();
        loop {
            if k == 0 {
                self.digits = None;
                break;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < self.game.successors(self.owned[k]).len() {
                break;
            }
            digits[k] = 0;
        }
        Some(current)
    }
}

fn pointwise(a: &mut [Rational], b: &[Rational], keep_max: bool) {
    for (x, y) in a.iter_mut().zip(b) {
        if (keep_max && y > x) || (!keep_max && y < x) {
            *x = y.clone();
        }
    }
}

/// Reference solver: max over Player-0 strategies of min over Player-1
/// strategies of the induced parity measure, by full enumeration.
///
/// `sigma` is the first Player-0 strategy (in enumeration order) that
/// guarantees the value everywhere, `pi` the first Player-1 strategy that
/// holds Player 0 to it everywhere.
pub fn solve_parity_oracle(game: &ObligationGame, budget: &Budget) -> Result<ValueVector, Error> {
    game.ensure_valid()?;
    let s_count = Strategies::count(game, Player::Zero);
    let p_count = Strategies::count(game, Player::One);
    Budget::check("oracle strategy pairs", s_count.saturating_mul(p_count), budget.max_strategy_pairs)?;

    let n = game.len();
    let pis: Vec<PureMemorylessStrategy> = Strategies::new(game, Player::One).collect();
    let sigmas: Vec<PureMemorylessStrategy> = Strategies::new(game, Player::Zero).collect();
    let mut upper: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; pis.len()];
    let mut guaranteed: Vec<Vec<Rational>> = Vec::with_capacity(sigmas.len());
    for sigma in &sigmas {
        let mut low = vec![Rational::one(); n];
        for (j, pi) in pis.iter().enumerate() {
            let m = measure(game, sigma, pi);
            pointwise(&mut low, &m, false);
            pointwise(&mut upper[j], &m, true);
        }
        guaranteed.push(low);
    }
    let mut values = vec![Rational::zero(); n];
    for g in &guaranteed {
        pointwise(&mut values, g, true);
    }
    let sigma_at = guaranteed
        .iter()
        .position(|g| *g == values)
        .ok_or_else(|| Error::Internal("no positional strategy attains the value".into()))?;
    let pi_at = upper
        .iter()
        .position(|u| *u == values)
        .ok_or_else(|| Error::Internal("no positional counter-strategy attains the value".into()))?;
    Ok(ValueVector {
        values,
        sigma: sigmas[sigma_at].clone(),
        pi: pis[pi_at].clone(),
    })
}

/// Upper bound on improvement rounds before falling back to enumeration.
const MAX_ROUNDS: usize = 10_000;

/// Strategy improvement for `player` against exact best responses.
/// Returns the final strategy and the Player-0 values it guarantees
/// (respectively concedes), or `None` if the round limit was hit.
fn improve(game: &ObligationGame, mut strategy: PureMemorylessStrategy) -> Option<(PureMemorylessStrategy, Vec<Rational>)> {
    let player = strategy.player;
    for _ in 0..MAX_ROUNDS {
        let reply = mdp::best_response(game, player.opponent(), &strategy);
        let v0 = match player {
            Player::Zero => measure(game, &strategy, &reply),
            Player::One => measure(game, &reply, &strategy),
        };
        // the improving player's own values
        let own: Vec<Rational> = match player {
            Player::Zero => v0.clone(),
            Player::One => v0.iter().map(Rational::complement).collect(),
        };
        let mut changed = false;
        for (&v, current) in strategy.choice.iter_mut() {
            let best = game
                .successors(v)
                .iter()
                .copied()
                .max_by(|&a, &b| own[a].cmp(&own[b]).then(b.cmp(&a)))
                .expect("valid games have successors");
            if own[best] > own[*current] {
                *current = best;
                changed = true;
            }
        }
        if !changed {
            return Some((strategy, v0));
        }
    }
    None
}

/// Exact values of a stochastic parity game.
///
/// The values always coincide with [`solve_parity_oracle`]; the witness
/// strategies are optimal but need not be the oracle's first ones.
pub fn solve_parity(game: &ObligationGame, budget: &Budget) -> Result<ValueVector, Error> {
    game.ensure_valid()?;
    let certified = |sigma: PureMemorylessStrategy, pi: PureMemorylessStrategy| {
        let (sigma, lower) = improve(game, sigma)?;
        let (pi, upper) = improve(game, pi)?;
        (lower == upper).then_some(ValueVector {
            values: lower,
            sigma,
            pi,
        })
    };
    if let Some(v) = certified(
        PureMemorylessStrategy::first_choice(game, Player::Zero),
        PureMemorylessStrategy::first_choice(game, Player::One),
    ) {
        return Ok(v);
    }
    // Seed from ever finer stopping approximations.
    let mut delta = Rational::new(1, 4 * (game.len() as i64 + 1));
    for _ in 0..SEED_ROUNDS {
        let (sigma, pi) = escape::seed_strategies(game, &delta);
        if let Some(v) = certified(sigma, pi) {
            return Ok(v);
        }
        delta = &delta * &delta;
    }
    enumerate_with_best_responses(game, budget)
}

/// Number of stopping approximations tried before enumerating.
const SEED_ROUNDS: usize = 5;

/// Fallback: enumerate each player's strategies against exact best responses.
fn enumerate_with_best_responses(game: &ObligationGame, budget: &Budget) -> Result<ValueVector, Error> {
    let mut meter = Meter::new("strategies enumerated against best responses", budget.max_strategy_pairs);
    meter.charge(Strategies::count(game, Player::Zero).saturating_add(Strategies::count(game, Player::One)))?;
    let n = game.len();
    let sigmas: Vec<(PureMemorylessStrategy, Vec<Rational>)> = Strategies::new(game, Player::Zero)
        .map(|s| guaranteed_values(game, &s).map(|g| (s, g)))
        .collect::<Result<_, _>>()?;
    let pis: Vec<(PureMemorylessStrategy, Vec<Rational>)> = Strategies::new(game, Player::One)
        .map(|s| guaranteed_values(game, &s).map(|g| (s, g)))
        .collect::<Result<_, _>>()?;
    let mut lower = vec![Rational::zero(); n];
    for (_, g) in &sigmas {
        pointwise(&mut lower, g, true);
    }
    let mut upper = vec![Rational::one(); n];
    for (_, g) in &pis {
        pointwise(&mut upper, g, false);
    }
    if lower != upper {
        return Err(Error::Internal("Player 0 and Player 1 guarantees do not add up to one".into()));
    }
    let first = |all: &[(PureMemorylessStrategy, Vec<Rational>)]| {
        all.iter()
            .find(|(_, g)| *g == lower)
            .map(|(s, _)| s.clone())
            .ok_or_else(|| Error::Internal("no positional strategy attains the value".into()))
    };
    Ok(ValueVector {
        sigma: first(&sigmas)?,
        pi: first(&pis)?,
        values: lower,
    })
}

/// Certificate for a threshold verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "player", content = "strategy")]
pub enum Certificate {
    /// A Player-0 strategy guaranteeing the threshold.
    Player0(BTreeMap<usize, usize>),
    /// A Player-1 strategy preventing it.
    Player1(BTreeMap<usize, usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdDecision {
    pub holds: bool,
    pub value: Rational,
    pub certificate: Certificate,
}

/// Decides `value(v) ⋈ r` and returns a strategy proving the verdict. The
/// certificate is re-checked against an exact best response before return.
pub fn decide_parity_threshold(
    game: &ObligationGame,
    v: usize,
    cmp: Comparator,
    r: &Rational,
    budget: &Budget,
) -> Result<ThresholdDecision, Error> {
    let solution = solve_parity(game, budget)?;
    let value = solution.values[v].clone();
    let holds = cmp.holds(&value, r);
    let certificate = if holds {
        Certificate::Player0(solution.sigma.choice.clone())
    } else {
        Certificate::Player1(solution.pi.choice.clone())
    };
    if verify_threshold_certificate(game, v, cmp, r, &certificate)? != holds {
        return Err(Error::Internal("threshold certificate failed re-verification".into()));
    }
    Ok(ThresholdDecision {
        holds,
        value,
        certificate,
    })
}

/// Checks a threshold certificate: returns the verdict it proves if it is
/// valid, and an error otherwise.
pub fn verify_threshold_certificate(
    game: &ObligationGame,
    v: usize,
    cmp: Comparator,
    r: &Rational,
    certificate: &Certificate,
) -> Result<bool, Error> {
    let (strategy, claim) = match certificate {
        Certificate::Player0(c) => (PureMemorylessStrategy::new(Player::Zero, c.clone()), true),
        Certificate::Player1(c) => (PureMemorylessStrategy::new(Player::One, c.clone()), false),
    };
    let reply = best_response(game, &strategy)?;
    let chain = match strategy.player {
        Player::Zero => induce_chain(game, &strategy, &reply)?,
        Player::One => induce_chain(game, &reply, &strategy)?,
    };
    let m = chain::parity_measure(&chain, game.priorities());
    if cmp.holds(&m[v], r) == claim {
        Ok(claim)
    } else {
        Err(Error::NotGood(format!(
            "certificate yields {} at {}, which does not prove the claimed verdict",
            m[v],
            game.id(v)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GameBuilder, Owner};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn pure_chain_values_are_parity_measure() {
        let mut b = GameBuilder::new();
        let a = b.add("a", Owner::Random, 1);
        let w = b.add("w", Owner::Random, 0);
        let l = b.add("l", Owner::Random, 1);
        b.random_edge(a, w, r("1/3")).random_edge(a, l, r("2/3"));
        b.random_edge(w, w, r("1")).random_edge(l, l, r("1"));
        let g = b.build().unwrap();
        let o = solve_parity_oracle(&g, &Budget::default()).unwrap();
        assert_eq!(o.values, vec![r("1/3"), r("1"), r("0")]);
        assert_eq!(solve_parity(&g, &Budget::default()).unwrap().values, o.values);
    }

    #[test]
    fn player0_picks_even_sink() {
        let mut b = GameBuilder::new();
        let c = b.add("c", Owner::Player0, 1);
        let odd = b.add("odd", Owner::Random, 1);
        let even = b.add("even", Owner::Random, 2);
        b.edge(c, odd).edge(c, even);
        b.random_edge(odd, odd, r("1")).random_edge(even, even, r("1"));
        let g = b.build().unwrap();
        let o = solve_parity_oracle(&g, &Budget::default()).unwrap();
        assert_eq!(o.values[c], r("1"));
        assert_eq!(o.sigma.get(c), Some(even));
        let d = decide_parity_threshold(&g, c, Comparator::MoreThan, &r("1/2"), &Budget::default()).unwrap();
        assert!(d.holds);
    }

    #[test]
    fn oracle_budget_is_enforced() {
        let mut b = GameBuilder::new();
        let c = b.add("c", Owner::Player0, 0);
        let d = b.add("d", Owner::Player1, 0);
        b.edge(c, d).edge(c, c).edge(d, c).edge(d, d);
        let g = b.build().unwrap();
        let tiny = Budget {
            max_strategy_pairs: 3,
            ..Budget::default()
        };
        assert!(matches!(solve_parity_oracle(&g, &tiny), Err(Error::Budget { needed: 4, .. })));
    }

    #[test]
    fn strict_and_non_strict_split() {
        let mut b = GameBuilder::new();
        let a = b.add("a", Owner::Random, 1);
        let w = b.add("w", Owner::Random, 0);
        let l = b.add("l", Owner::Random, 1);
        b.random_edge(a, w, r("1/2")).random_edge(a, l, r("1/2"));
        b.random_edge(w, w, r("1")).random_edge(l, l, r("1"));
        let g = b.build().unwrap();
        let budget = Budget::default();
        assert!(decide_parity_threshold(&g, a, Comparator::AtLeast, &r("1/2"), &budget).unwrap().holds);
        assert!(!decide_parity_threshold(&g, a, Comparator::MoreThan, &r("1/2"), &budget).unwrap().holds);
        assert!(decide_parity_threshold(&g, l, Comparator::AtLeast, &r("0"), &budget).unwrap().holds);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let mut b = GameBuilder::new();
        let x = b.add("x", Owner::Player0, 0);
        let y = b.add("y", Owner::Player0, 0);
        b.edge(x, x).edge(x, y).edge(y, x).edge(y, y);
        let g = b.build().unwrap();
        let all: Vec<Vec<usize>> = Strategies::new(&g, Player::Zero)
            .map(|s| s.choice.values().copied().collect())
            .collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}

#[cfg(test)]
mod random_tests {
    use super::*;
    use crate::generate::{random_game, GameShape};

    #[test]
    fn fast_solver_matches_oracle_and_determinacy() {
        let shape = GameShape {
            max_obligations: 0,
            ..GameShape::default()
        };
        let budget = Budget::default();
        for seed in 0..150 {
            let g = random_game(seed, &shape);
            let o = solve_parity_oracle(&g, &budget).unwrap();
            let f = solve_parity(&g, &budget).unwrap();
            assert_eq!(o.values, f.values, "seed {seed}");
            let d = solve_parity_oracle(&g.dual(), &budget).unwrap();
            for v in 0..g.len() {
                assert!((&o.values[v] + &d.values[v]).is_one(), "seed {seed}");
            }
            // witnesses attain the value against every opponent strategy
            assert_eq!(guaranteed_values(&g, &f.sigma).unwrap(), f.values);
            assert_eq!(guaranteed_values(&g, &f.pi).unwrap(), f.values);
        }
    }
}
