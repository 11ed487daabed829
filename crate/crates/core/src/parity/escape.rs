//! Stopping approximation of a parity game used to seed strategy
//! improvement.
//!
//! Before every visit of a configuration with priority `p` the play stops
//! with probability `δ^(p+1)`, won by the player that `p` favours. The
//! resulting reachability game is stopping, so Hoffman–Karp strategy
//! iteration is sound for it, and for small enough `δ` its optimal
//! strategies are optimal for the parity game. The caller never trusts that
//! claim: it re-certifies the strategies on the exact parity semantics.

use std::collections::BTreeMap;

use crate::chain;
use crate::model::{ObligationGame, Owner, Player, PureMemorylessStrategy};
use crate::rational::Rational;

struct EscapeGame<'a> {
    game: &'a ObligationGame,
    /// Rows of every node; player nodes get their row from the strategies.
    fixed: Vec<Vec<(usize, Rational)>>,
    win: usize,
}

// Layout: entry(v) = v, body(v) = n + v, WIN = 2n, LOSE = 2n + 1.
impl<'a> EscapeGame<'a> {
    fn new(game: &'a ObligationGame, delta: &Rational) -> Self {
        let n = game.len();
        let (win, lose) = (2 * n, 2 * n + 1);
        let mut fixed = vec![Vec::new(); 2 * n + 2];
        for v in 0..n {
            let p = game.priority(v);
            let mut stop = Rational::one();
            for _ in 0..=p {
                stop = &stop * delta;
            }
            let sink = if p.is_multiple_of(2) { win } else { lose };
            fixed[v] = vec![(sink, stop.clone()), (n + v, stop.complement())];
            if game.owner(v) == Owner::Random {
                fixed[n + v] = game
                    .distribution(v)
                    .expect("random configuration has a kernel")
                    .iter()
                    .map(|(&u, q)| (u, q.clone()))
                    .collect();
            }
        }
        fixed[win] = vec![(win, Rational::one())];
        fixed[lose] = vec![(lose, Rational::one())];
        EscapeGame { game, fixed, win }
    }

    fn evaluate(&self, choice: &BTreeMap<usize, usize>) -> Vec<Rational> {
        let n = self.game.len();
        let rows: Vec<Vec<(usize, Rational)>> = (0..self.fixed.len())
            .map(|x| {
                if x >= n && x < 2 * n {
                    if let Some(&u) = choice.get(&(x - n)) {
                        return vec![(u, Rational::one())];
                    }
                }
                self.fixed[x].clone()
            })
            .collect();
        let target: Vec<bool> = (0..rows.len()).map(|x| x == self.win).collect();
        chain::reach_rows(&rows, &target, &vec![false; rows.len()])
    }

    /// Switches `player`'s choices to strictly better successors; returns
    /// whether anything changed.
    fn improve(&self, player: Player, choice: &mut BTreeMap<usize, usize>, x: &[Rational]) -> bool {
        let mut changed = false;
        for v in self.game.configurations_of(player.owner()) {
            let better = |a: usize, b: usize| match player {
                Player::Zero => x[a] > x[b],
                Player::One => x[a] < x[b],
            };
            let current = choice[&v];
            // successors are sorted, so ties keep the lowest index
            let best = self
                .game
                .successors(v)
                .iter()
                .copied()
                .reduce(|b, u| if better(u, b) { u } else { b })
                .expect("valid games have successors");
            if better(best, current) {
                choice.insert(v, best);
                changed = true;
            }
        }
        changed
    }
}

fn lowest(game: &ObligationGame, player: Player) -> BTreeMap<usize, usize> {
    game.configurations_of(player.owner())
        .into_iter()
        .map(|v| (v, game.successors(v)[0]))
        .collect()
}

/// Hoffman–Karp on the stopping approximation with parameter `delta`;
/// returns optimal strategies of both players there.
pub(crate) fn seed_strategies(
    game: &ObligationGame,
    delta: &Rational,
) -> (PureMemorylessStrategy, PureMemorylessStrategy) {
    let eg = EscapeGame::new(game, delta);
    let mut sigma = lowest(game, Player::Zero);
    let mut pi = lowest(game, Player::One);
    loop {
        // best response of Player 1 by policy iteration (stopping MDP)
        loop {
            let mut both = sigma.clone();
            both.extend(pi.iter().map(|(&a, &b)| (a, b)));
            let x = eg.evaluate(&both);
            if !eg.improve(Player::One, &mut pi, &x) {
                break;
            }
        }
        let mut both = sigma.clone();
        both.extend(pi.iter().map(|(&a, &b)| (a, b)));
        let x = eg.evaluate(&both);
        if !eg.improve(Player::Zero, &mut sigma, &x) {
            break;
        }
    }
    (
        PureMemorylessStrategy::new(Player::Zero, sigma),
        PureMemorylessStrategy::new(Player::One, pi),
    )
}
