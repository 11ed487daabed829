//! Exact best responses: once one player's strategy is fixed, the game is a
//! Markov decision process for the other player, whose optimal parity
//! probability is the maximal probability of reaching the union of its
//! winning end components.

use std::collections::BTreeMap;

use crate::chain;
use crate::graph;
use crate::model::{ObligationGame, Player, PureMemorylessStrategy};
use crate::rational::Rational;

/// MDP view of a game: `controlled[v]` marks the deciding player's
/// configurations; every other configuration has a fixed distribution.
struct Mdp<'a> {
    game: &'a ObligationGame,
    controlled: Vec<bool>,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl<'a> Mdp<'a> {
    fn new(game: &'a ObligationGame, controller: Player, fixed: &PureMemorylessStrategy) -> Self {
        let n = game.len();
        let controlled: Vec<bool> = (0..n).map(|v| game.owner(v) == controller.owner()).collect();
        let rows = (0..n)
            .map(|v| {
                if controlled[v] {
                    Vec::new()
                } else {
                    game.row_with(v, fixed.get(v))
                }
            })
            .collect();
        Mdp {
            game,
            controlled,
            rows,
        }
    }

    fn len(&self) -> usize {
        self.controlled.len()
    }

    fn successors(&self, v: usize) -> Vec<usize> {
        if self.controlled[v] {
            self.game.successors(v).to_vec()
        } else {
            self.rows[v].iter().map(|(u, _)| *u).collect()
        }
    }

    /// Maximal end components inside `allowed`.
    fn maximal_end_components(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut inside = allowed.to_vec();
        loop {
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    if !inside[v] {
                        return Vec::new();
                    }
                    self.successors(v).into_iter().filter(|&u| inside[u]).collect()
                })
                .collect();
            let comps = graph::strongly_connected_components(&adj, Some(&inside));
            let id = graph::component_ids(n, &comps);
            let mut removed = false;
            for v in 0..n {
                if !inside[v] {
                    continue;
                }
                let succ = self.successors(v);
                let stays = if self.controlled[v] {
                    succ.iter().any(|&u| inside[u] && id[u] == id[v])
                } else {
                    succ.iter().all(|&u| inside[u] && id[u] == id[v])
                };
                if !stays {
                    inside[v] = false;
                    removed = true;
                }
            }
            if !removed {
                return comps.into_iter().filter(|c| inside[c[0]]).collect();
            }
        }
    }

    /// Backward layers towards `target`: a controlled configuration needs
    /// one successor in a lower layer, any other configuration one
    /// successor with positive probability. Only configurations in `within`
    /// are considered. Returns the layer and the chosen edge.
    fn layers(&self, target: &[bool], within: &[bool]) -> (Vec<usize>, Vec<Option<usize>>) {
        let n = self.len();
        let mut layer = vec![usize::MAX; n];
        let mut choice = vec![None; n];
        let mut frontier: Vec<usize> = (0..n).filter(|&v| target[v] && within[v]).collect();
        for &v in &frontier {
            layer[v] = 0;
        }
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for v in 0..n {
                if layer[v] != usize::MAX || !within[v] {
                    continue;
                }
                let hit = self
                    .successors(v)
                    .into_iter()
                    .filter(|&u| within[u] && layer[u] < depth)
                    .min_by_key(|&u| (layer[u], u));
                if let Some(u) = hit {
                    layer[v] = depth;
                    choice[v] = Some(u);
                    next.push(v);
                }
            }
            frontier = next;
        }
        (layer, choice)
    }
}

/// Optimal pure memoryless strategy of `controller` against the fixed
/// strategy of the other player, for `controller`'s parity class (even for
/// Player 0, odd for Player 1).
pub(crate) fn best_response(
    game: &ObligationGame,
    controller: Player,
    fixed: &PureMemorylessStrategy,
) -> PureMemorylessStrategy {
    let mdp = Mdp::new(game, controller, fixed);
    let n = mdp.len();
    let wanted = match controller {
        Player::Zero => 0,
        Player::One => 1,
    };

    // Winning end components and a strategy that keeps visiting their
    // least priority.
    let mut win = vec![false; n];
    let mut choice: Vec<Option<usize>> = vec![None; n];
    for p in (wanted..=game.max_priority()).step_by(2) {
        let allowed: Vec<bool> = (0..n).map(|v| game.priority(v) >= p).collect();
        for ec in mdp.maximal_end_components(&allowed) {
            if !ec.iter().any(|&v| game.priority(v) == p) {
                continue;
            }
            let mut member = vec![false; n];
            for &v in &ec {
                member[v] = true;
            }
            let goal: Vec<bool> = (0..n).map(|v| member[v] && game.priority(v) == p).collect();
            let (_, towards) = mdp.layers(&goal, &member);
            for &v in &ec {
                if win[v] {
                    continue;
                }
                win[v] = true;
                if mdp.controlled[v] {
                    let stay = if goal[v] {
                        game.successors(v).iter().copied().find(|&u| member[u])
                    } else {
                        towards[v]
                    };
                    choice[v] = Some(stay.expect("end component member keeps a successor inside"));
                }
            }
        }
    }

    // Maximal reachability of the winning region by policy iteration,
    // starting from the attractor strategy so that every configuration that
    // can reach the region does so with positive probability.
    let everywhere = vec![true; n];
    let (_, towards) = mdp.layers(&win, &everywhere);
    for v in 0..n {
        if mdp.controlled[v] && !win[v] {
            choice[v] = Some(towards[v].unwrap_or(game.successors(v)[0]));
        }
    }
    loop {
        let rows: Vec<Vec<(usize, Rational)>> = (0..n)
            .map(|v| {
                if mdp.controlled[v] {
                    vec![(choice[v].unwrap(), Rational::one())]
                } else {
                    mdp.rows[v].clone()
                }
            })
            .collect();
        let value = chain::reach_rows(&rows, &win, &vec![false; n]);
        let mut changed = false;
        for v in 0..n {
            if !mdp.controlled[v] || win[v] {
                continue;
            }
            let current = choice[v].unwrap();
            let best = game
                .successors(v)
                .iter()
                .copied()
                .max_by(|&a, &b| value[a].cmp(&value[b]).then(b.cmp(&a)))
                .unwrap();
            if value[best] > value[current] {
                choice[v] = Some(best);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let map: BTreeMap<usize, usize> = (0..n)
        .filter(|&v| mdp.controlled[v])
        .map(|v| (v, choice[v].unwrap()))
        .collect();
    PureMemorylessStrategy::new(controller, map)
}
