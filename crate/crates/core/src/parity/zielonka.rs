//! Zielonka's recursive algorithm for deterministic (non-stochastic)
//! min-parity games, with positional winning strategies.

use crate::model::{Player, Priority};

/// Two-player parity game without random configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicGame {
    pub owner: Vec<Player>,
    pub successors: Vec<Vec<usize>>,
    pub priority: Vec<Priority>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicSolution {
    pub winner: Vec<Player>,
    /// Winning move at every node owned by its winner.
    pub strategy: Vec<Option<usize>>,
}

impl DeterministicGame {
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// Adds a node and returns its index.
    pub fn add(&mut self, owner: Player, priority: Priority) -> usize {
        self.owner.push(owner);
        self.successors.push(Vec::new());
        self.priority.push(priority);
        self.owner.len() - 1
    }

    pub fn edge(&mut self, from: usize, to: usize) {
        if !self.successors[from].contains(&to) {
            self.successors[from].push(to);
        }
    }

    pub fn solve(&self) -> DeterministicSolution {
        assert!(
            self.successors.iter().all(|s| !s.is_empty()),
            "every node needs a successor"
        );
        let n = self.len();
        let mut preds = vec![Vec::new(); n];
        for (v, succ) in self.successors.iter().enumerate() {
            for &w in succ {
                preds[w].push(v);
            }
        }
        let solver = Solver { g: self, preds };
        let (win0, strategy) = solver.solve(&vec![true; n]);
        DeterministicSolution {
            winner: win0
                .iter()
                .map(|&w| if w { Player::Zero } else { Player::One })
                .collect(),
            strategy,
        }
    }
}

struct Solver<'a> {
    g: &'a DeterministicGame,
    preds: Vec<Vec<usize>>,
}

impl Solver<'_> {
    /// Attractor of `player` to `target` inside `sub`, with attracting moves.
    fn attractor(&self, sub: &[bool], target: &[bool], player: Player) -> (Vec<bool>, Vec<Option<usize>>) {
        let n = self.g.len();
        let mut attr: Vec<bool> = (0..n).map(|v| sub[v] && target[v]).collect();
        let mut moves = vec![None; n];
        let mut remaining: Vec<usize> = (0..n)
            .map(|v| self.g.successors[v].iter().filter(|&&w| sub[w]).count())
            .collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| attr[v]).collect();
        while let Some(w) = queue.pop() {
            for &v in &self.preds[w] {
                if !sub[v] || attr[v] {
                    continue;
                }
                if self.g.owner[v] == player {
                    attr[v] = true;
                    moves[v] = Some(w);
                    queue.push(v);
                } else {
                    remaining[v] -= 1;
                    if remaining[v] == 0 {
                        attr[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        (attr, moves)
    }

    /// Returns Player 0's winning region inside `sub` and winning moves.
    fn solve(&self, sub: &[bool]) -> (Vec<bool>, Vec<Option<usize>>) {
        let n = self.g.len();
        let mut strategy = vec![None; n];
        let Some(p) = (0..n).filter(|&v| sub[v]).map(|v| self.g.priority[v]).min() else {
            return (vec![false; n], strategy);
        };
        let i = Player::winner_of(p);
        let top: Vec<bool> = (0..n).map(|v| sub[v] && self.g.priority[v] == p).collect();
        let (a, a_moves) = self.attractor(sub, &top, i);
        let rest: Vec<bool> = (0..n).map(|v| sub[v] && !a[v]).collect();
        let (w0, s1) = self.solve(&rest);
        let wins = |w0: &[bool], v: usize, pl: Player| (pl == Player::Zero) == w0[v];

        let opponent_wins_somewhere = (0..n).any(|v| rest[v] && wins(&w0, v, i.opponent()));
        if !opponent_wins_somewhere {
            for v in 0..n {
                if !sub[v] || self.g.owner[v] != i {
                    continue;
                }
                strategy[v] = if rest[v] {
                    s1[v]
                } else if top[v] {
                    self.g.successors[v].iter().copied().find(|&w| sub[w])
                } else {
                    a_moves[v]
                };
            }
            let win0 = (0..n).map(|v| sub[v] && i == Player::Zero).collect();
            return (win0, strategy);
        }

        let opp = i.opponent();
        let opp_region: Vec<bool> = (0..n).map(|v| rest[v] && wins(&w0, v, opp)).collect();
        let (b, b_moves) = self.attractor(sub, &opp_region, opp);
        let remainder: Vec<bool> = (0..n).map(|v| sub[v] && !b[v]).collect();
        let (w0b, s2) = self.solve(&remainder);
        let mut win0 = vec![false; n];
        for v in 0..n {
            if !sub[v] {
                continue;
            }
            if b[v] {
                win0[v] = opp == Player::Zero;
                if self.g.owner[v] == opp {
                    strategy[v] = if opp_region[v] { s1[v] } else { b_moves[v] };
                }
            } else {
                win0[v] = w0b[v];
                strategy[v] = s2[v];
            }
        }
        (win0, strategy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(nodes: &[(Player, Priority, &[usize])]) -> DeterministicGame {
        DeterministicGame {
            owner: nodes.iter().map(|n| n.0).collect(),
            priority: nodes.iter().map(|n| n.1).collect(),
            successors: nodes.iter().map(|n| n.2.to_vec()).collect(),
        }
    }

    /// Brute force: a node is won by Player 0 iff some positional strategy
    /// of Player 0 makes every cycle reachable in the one-player residual
    /// graph have even minimum.
    fn brute(g: &DeterministicGame) -> Vec<Player> {
        let n = g.len();
        let p0: Vec<usize> = (0..n).filter(|&v| g.owner[v] == Player::Zero).collect();
        let mut best = vec![Player::One; n];
        let mut digits = vec![0usize; p0.len()];
        loop {
            let adj: Vec<Vec<usize>> = (0..n)
                .map(|v| match p0.iter().position(|&x| x == v) {
                    Some(k) => vec![g.successors[v][digits[k]]],
                    None => g.successors[v].clone(),
                })
                .collect();
            for start in 0..n {
                if residual_even(&adj, &g.priority, start) {
                    best[start] = Player::Zero;
                }
            }
            let mut k = digits.len();
            loop {
                if k == 0 {
                    return best;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < g.successors[p0[k]].len() {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    /// Player 1 chooses freely in `adj`; does every reachable cycle have even minimum?
    fn residual_even(adj: &[Vec<usize>], prio: &[Priority], start: usize) -> bool {
        let reach = crate::graph::forward_reachable(adj, &[start]);
        // an odd-min cycle exists iff for some odd p, the subgraph of reachable
        // nodes with priority >= p has an SCC with an internal edge and a p-node
        for p in (1..=prio.iter().copied().max().unwrap_or(0)).step_by(2) {
            let active: Vec<bool> = (0..adj.len()).map(|v| reach[v] && prio[v] >= p).collect();
            for comp in crate::graph::strongly_connected_components(adj, Some(&active)) {
                let cyclic = comp.len() > 1 || adj[comp[0]].contains(&comp[0]);
                if cyclic && comp.iter().any(|&v| prio[v] == p) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn simple_choice() {
        let g = game(&[
            (Player::Zero, 1, &[1, 2]),
            (Player::One, 0, &[1]),
            (Player::One, 1, &[2]),
        ]);
        let s = g.solve();
        assert_eq!(s.winner, vec![Player::Zero, Player::Zero, Player::One]);
        assert_eq!(s.strategy[0], Some(1));
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 99u64;
        let mut rnd = |m: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        for _ in 0..300 {
            let n = 1 + rnd(7) as usize;
            let g = DeterministicGame {
                owner: (0..n)
                    .map(|_| if rnd(2) == 0 { Player::Zero } else { Player::One })
                    .collect(),
                priority: (0..n).map(|_| rnd(4) as Priority).collect(),
                successors: (0..n)
                    .map(|_| {
                        let mut s: Vec<usize> = (0..1 + rnd(2)).map(|_| rnd(n as u64) as usize).collect();
                        s.sort_unstable();
                        s.dedup();
                        s
                    })
                    .collect(),
            };
            let sol = g.solve();
            assert_eq!(sol.winner, brute(&g), "{g:?}");
            // strategies stay inside the winner's region and actually win
            for v in 0..n {
                if g.owner[v] == sol.winner[v] {
                    let w = sol.strategy[v].expect("winner has a move");
                    assert!(g.successors[v].contains(&w));
                    assert_eq!(sol.winner[w], sol.winner[v]);
                }
            }
            for pl in [Player::Zero, Player::One] {
                let adj: Vec<Vec<usize>> = (0..n)
                    .map(|v| {
                        if g.owner[v] == pl && sol.winner[v] == pl {
                            vec![sol.strategy[v].unwrap()]
                        } else {
                            g.successors[v].clone()
                        }
                    })
                    .collect();
                // shifting priorities by one turns Player 1's objective into even-min
                let prio: Vec<Priority> = g.priority.iter().map(|p| if pl == Player::Zero { *p } else { p + 1 }).collect();
                for v in (0..n).filter(|&v| sol.winner[v] == pl) {
                    assert!(residual_even(&adj, &prio, v), "{pl:?} strategy loses at {v} in {g:?}");
                }
            }
        }
    }
}
