//! Values of stochastic parity games with obligations.
//!
//! A dependency assigns every obligation configuration either ⊥ or the
//! set of (configuration, least priority) pairs it relies on. A good
//! dependency (closed, no odd cycle, every obligation met by its γ game)
//! determines the values through the γ′ game, in which fulfilled
//! obligations are winning sinks and unfulfilled ones losing sinks.

mod dependency;
pub mod gamma;

use std::collections::{BTreeMap, BTreeSet};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph;
use crate::model::{
    embed_chain_as_game, LabeledMarkovChain, Obligation, ObligationGame, Player, Priority, PureMemorylessStrategy,
};
use crate::parity::{self, DeterministicGame};
use crate::rational::{Comparator, Rational};

pub use dependency::{Dependency, NamedDependency};
pub use gamma::{build_gamma_game, build_gamma_prime_game, min_priority_monitor_product, GammaGame, MonitorProduct, Pair};

/// Result of the third goodness condition at one defined obligation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCheck {
    pub configuration: usize,
    pub obligation: Obligation,
    pub value: Rational,
    pub met: bool,
}

/// Outcome of checking the three goodness conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    /// Type errors; a malformed dependency is never good.
    pub malformed: Vec<String>,
    /// Condition 1 failures: `(v, u)` with `v` relying on the unfulfilled `u`.
    pub dangling: Vec<(usize, usize)>,
    /// Condition 2 failure: a closed walk `(from, label)` whose least label is odd.
    pub odd_cycle: Option<Vec<(usize, Priority)>>,
    /// Condition 3, one entry per defined obligation.
    pub gamma: Vec<GammaCheck>,
}

impl GoodnessReport {
    pub fn condition1(&self) -> bool {
        self.dangling.is_empty()
    }

    pub fn condition2(&self) -> bool {
        self.odd_cycle.is_none()
    }

    pub fn condition3(&self) -> bool {
        self.gamma.iter().all(|c| c.met)
    }

    pub fn is_good(&self) -> bool {
        self.malformed.is_empty() && self.condition1() && self.condition2() && self.condition3()
    }

    /// Human-readable reason for the first failed condition.
    pub fn failure(&self, game: &ObligationGame) -> Option<String> {
        if let Some(e) = self.malformed.first() {
            return Some(e.clone());
        }
        if let Some(&(v, u)) = self.dangling.first() {
            return Some(format!("{} relies on the unfulfilled {}", game.id(v), game.id(u)));
        }
        if let Some(cycle) = &self.odd_cycle {
            let steps: Vec<String> = cycle.iter().map(|&(v, m)| format!("{} -{m}->", game.id(v))).collect();
            return Some(format!("odd cycle {} {}", steps.join(" "), game.id(cycle[0].0)));
        }
        self.gamma.iter().find(|c| !c.met).map(|c| {
            format!(
                "{} reaches its chosen pairs with {} which does not meet {}",
                game.id(c.configuration),
                c.value,
                c.obligation
            )
        })
    }
}

/// Values obtained from a good dependency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObligationValueReport {
    pub values: Vec<Rational>,
    /// Value before the obligation is taken into account, per obligation
    /// configuration: the γ value for fulfilled ones, the γ′ value of a
    /// fresh copy otherwise.
    pub pre_values: BTreeMap<usize, Rational>,
    pub dependency: Dependency,
    /// Optimal strategies in the γ′ game (obligation configurations are
    /// sinks there and carry no choice).
    pub sigma: PureMemorylessStrategy,
    pub pi: PureMemorylessStrategy,
}

impl ObligationValueReport {
    pub fn is_fulfilled(&self, v: usize) -> bool {
        self.dependency.is_defined(v)
    }
}

/// Condition 1: every pair relied upon points to a fulfilled obligation.
pub fn check_condition1(game: &ObligationGame, dep: &Dependency) -> Vec<(usize, usize)> {
    let _ = game;
    let mut out = Vec::new();
    for (v, set) in dep.iter() {
        for &(u, _) in set {
            if !dep.is_defined(u) && !out.contains(&(v, u)) {
                out.push((v, u));
            }
        }
    }
    out
}

/// Condition 2: every cycle of the labelled dependency graph has an even
/// least label. Returns a witness cycle otherwise.
pub fn check_condition2(game: &ObligationGame, dep: &Dependency) -> Option<Vec<(usize, Priority)>> {
    let n = game.len();
    let edges: Vec<(usize, usize, Priority)> = dep
        .iter()
        .flat_map(|(v, set)| set.iter().filter(|(u, _)| *u < n).map(move |&(u, m)| (v, u, m)))
        .collect();
    let mut odd: Vec<Priority> = edges.iter().map(|e| e.2).filter(|m| m % 2 == 1).collect();
    odd.sort_unstable();
    odd.dedup();
    for i in odd {
        let active: Vec<&(usize, usize, Priority)> = edges.iter().filter(|e| e.2 >= i).collect();
        let mut adj = vec![Vec::new(); n];
        for &&(v, u, _) in &active {
            adj[v].push(u);
        }
        let comp = graph::component_ids(n, &graph::strongly_connected_components(&adj, None));
        for &&(a, b, m) in &active {
            if m != i || comp[a] != comp[b] {
                continue;
            }
            // walk back from b to a inside the component
            let mut parent: BTreeMap<usize, (usize, Priority)> = BTreeMap::new();
            let mut queue = std::collections::VecDeque::from([b]);
            let mut seen = BTreeSet::from([b]);
            while let Some(x) = queue.pop_front() {
                if x == a {
                    break;
                }
                for &&(p, q, l) in &active {
                    if p == x && comp[q] == comp[a] && seen.insert(q) {
                        parent.insert(q, (x, l));
                        queue.push_back(q);
                    }
                }
            }
            let mut tail = Vec::new();
            let mut x = a;
            while x != b {
                let (p, l) = parent[&x];
                tail.push((p, l));
                x = p;
            }
            tail.reverse();
            let mut cycle = vec![(a, m)];
            cycle.extend(tail);
            return Some(cycle);
        }
    }
    None
}

type GammaCache = BTreeMap<(usize, BTreeSet<Pair>), Rational>;

struct GammaSolver<'a> {
    game: &'a ObligationGame,
    budget: &'a Budget,
    products: BTreeMap<usize, MonitorProduct>,
    cache: GammaCache,
    meter: Meter,
}

impl<'a> GammaSolver<'a> {
    fn new(game: &'a ObligationGame, budget: &'a Budget) -> Self {
        GammaSolver {
            game,
            budget,
            products: BTreeMap::new(),
            cache: BTreeMap::new(),
            meter: Meter::new("γ-game solves", budget.max_gamma_solves),
        }
    }

    fn product(&mut self, v: usize) -> &MonitorProduct {
        self.products
            .entry(v)
            .or_insert_with(|| min_priority_monitor_product(self.game, v))
    }

    /// γ value of `v` when exactly the reachable pairs of `choice` win.
    fn value(&mut self, v: usize, choice: &BTreeSet<Pair>) -> Result<Rational> {
        let frozen = self.product(v).frozen_pairs();
        let key: BTreeSet<Pair> = choice.intersection(&frozen).copied().collect();
        if let Some(x) = self.cache.get(&(v, key.clone())) {
            return Ok(x.clone());
        }
        self.meter.charge(1)?;
        let (g, start) = gamma::assemble(self.game, &self.products[&v], &key);
        let x = parity::solve_parity(&g, self.budget)?.values[start].clone();
        self.cache.insert((v, key), x.clone());
        Ok(x)
    }

    fn sufficient(&mut self, v: usize, choice: &BTreeSet<Pair>) -> Result<bool> {
        let ob = self.game.obligation(v).expect("obligation configuration").clone();
        Ok(ob.is_met_by(&self.value(v, choice)?))
    }
}

/// Checks all goodness conditions of `dep`.
pub fn verify_dependency(game: &ObligationGame, dep: &Dependency, budget: &Budget) -> Result<GoodnessReport> {
    game.ensure_valid()?;
    let mut solver = GammaSolver::new(game, budget);
    verify_with(&mut solver, dep)
}

fn verify_with(solver: &mut GammaSolver, dep: &Dependency) -> Result<GoodnessReport> {
    let game = solver.game;
    let malformed = dep.type_errors(game);
    if !malformed.is_empty() {
        return Ok(GoodnessReport {
            malformed,
            dangling: Vec::new(),
            odd_cycle: None,
            gamma: Vec::new(),
        });
    }
    let mut checks = Vec::new();
    for (v, set) in dep.iter() {
        let obligation = game.obligation(v).expect("typed").clone();
        let value = solver.value(v, set)?;
        checks.push(GammaCheck {
            configuration: v,
            met: obligation.is_met_by(&value),
            obligation,
            value,
        });
    }
    Ok(GoodnessReport {
        malformed,
        dangling: check_condition1(game, dep),
        odd_cycle: check_condition2(game, dep),
        gamma: checks,
    })
}

/// Values of `game` under a good dependency.
pub fn values_given_dependency(game: &ObligationGame, dep: &Dependency, budget: &Budget) -> Result<ObligationValueReport> {
    game.ensure_valid()?;
    let mut solver = GammaSolver::new(game, budget);
    let report = verify_with(&mut solver, dep)?;
    if let Some(reason) = report.failure(game) {
        return Err(Error::NotGood(reason));
    }
    values_with(&mut solver, dep)
}

fn values_with(solver: &mut GammaSolver, dep: &Dependency) -> Result<ObligationValueReport> {
    let game = solver.game;
    let n = game.len();
    let fulfilled: Vec<bool> = (0..n).map(|v| dep.is_defined(v)).collect();
    let probes: Vec<usize> = game
        .obligation_configurations()
        .into_iter()
        .filter(|&v| !fulfilled[v])
        .collect();
    let prime = build_gamma_prime_game(game, &fulfilled, &probes);
    let solved = parity::solve_parity(&prime, solver.budget)?;
    let mut values = solved.values[..n].to_vec();
    let mut pre_values = BTreeMap::new();
    for v in game.obligation_configurations() {
        values[v] = if fulfilled[v] { Rational::one() } else { Rational::zero() };
        if fulfilled[v] {
            let set = dep.get(v).expect("defined").clone();
            pre_values.insert(v, solver.value(v, &set)?);
        }
    }
    for (k, &v) in probes.iter().enumerate() {
        pre_values.insert(v, solved.values[n + k].clone());
    }
    let restrict = |s: &PureMemorylessStrategy| {
        PureMemorylessStrategy::new(s.player, s.choice.iter().filter(|(&v, _)| v < n).map(|(&a, &b)| (a, b)).collect())
    };
    Ok(ObligationValueReport {
        values,
        pre_values,
        dependency: dep.clone(),
        sigma: restrict(&solved.sigma),
        pi: restrict(&solved.pi),
    })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let size = idx.len();
    for k in (0..size).rev() {
        if idx[k] < n - size + k {
            idx[k] += 1;
            for j in k + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Subsets of `items` by increasing size that are not supersets of an
/// already accepted set; `accept` decides each visited subset.
fn minimal_subsets<T: Ord + Copy>(
    items: &[T],
    mut accept: impl FnMut(&BTreeSet<T>) -> Result<bool>,
) -> Result<Vec<BTreeSet<T>>> {
    let mut found: Vec<BTreeSet<T>> = Vec::new();
    for size in 0..=items.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set: BTreeSet<T> = idx.iter().map(|&i| items[i]).collect();
            if !found.iter().any(|f| f.is_subset(&set)) && accept(&set)? {
                found.push(set);
            }
            if !next_combination(&mut idx, items.len()) {
                break;
            }
        }
    }
    Ok(found)
}

/// Good dependency with the largest set of fulfilled obligations, and the
/// values it induces (the pointwise largest values over all good
/// dependencies).
///
/// Obligations that cannot be met even when all reachable fulfilled
/// obligations are relied upon are discarded first. The remaining choice
/// is a deterministic parity game: the prover picks, at each obligation, a
/// minimal set of pairs meeting it; the refuter picks a pair of that set and
/// continues at its configuration, seeing the pair's priority. The
/// prover's winning region is exactly the set of obligations fulfilled by
/// some good dependency, and a positional winning strategy is one.
pub fn find_best_dependency(game: &ObligationGame, budget: &Budget) -> Result<ObligationValueReport> {
    game.ensure_valid()?;
    let obligations = game.obligation_configurations();
    Budget::check("obligation configurations", obligations.len() as u64, budget.max_obligations)?;
    Budget::check("priority", game.max_priority() as u64, budget.max_priority)?;
    let mut solver = GammaSolver::new(game, budget);

    let mut alive: BTreeSet<usize> = obligations.iter().copied().collect();
    loop {
        let mut removed = false;
        for v in alive.clone() {
            let full: BTreeSet<Pair> = solver
                .product(v)
                .frozen_pairs()
                .into_iter()
                .filter(|(u, _)| alive.contains(u))
                .collect();
            if !solver.sufficient(v, &full)? {
                alive.remove(&v);
                removed = true;
            }
        }
        if !removed {
            break;
        }
    }

    let mut options: BTreeMap<usize, Vec<BTreeSet<Pair>>> = BTreeMap::new();
    for &v in &alive {
        let candidates: Vec<Pair> = solver
            .product(v)
            .frozen_pairs()
            .into_iter()
            .filter(|(u, _)| alive.contains(u))
            .collect();
        let sets = minimal_subsets(&candidates, |s| solver.sufficient(v, s))?;
        options.insert(v, sets);
    }

    let neutral = game.max_priority() + 2;
    let mut h = DeterministicGame {
        owner: Vec::new(),
        successors: Vec::new(),
        priority: Vec::new(),
    };
    let win = h.add(Player::Zero, 0);
    let lose = h.add(Player::Zero, 1);
    h.edge(win, win);
    h.edge(lose, lose);
    let prover: BTreeMap<usize, usize> = obligations.iter().map(|&v| (v, h.add(Player::Zero, neutral))).collect();
    let mut pair_node: BTreeMap<Pair, usize> = BTreeMap::new();
    let mut refuter: BTreeMap<usize, (usize, BTreeSet<Pair>)> = BTreeMap::new();
    for &v in &obligations {
        let sets = options.get(&v).map(Vec::as_slice).unwrap_or(&[]);
        if sets.is_empty() {
            h.edge(prover[&v], lose);
        }
        for s in sets {
            let r = h.add(Player::One, neutral);
            h.edge(prover[&v], r);
            if s.is_empty() {
                h.edge(r, win);
            }
            for &(u, m) in s {
                let e = *pair_node.entry((u, m)).or_insert_with(|| {
                    let e = h.add(Player::Zero, m);
                    h.edge(e, prover[&u]);
                    e
                });
                h.edge(r, e);
            }
            refuter.insert(r, (v, s.clone()));
        }
    }
    let solution = h.solve();
    let mut dep = Dependency::undefined();
    for &v in &obligations {
        if solution.winner[prover[&v]] == Player::Zero {
            let r = solution.strategy[prover[&v]].expect("winner has a move");
            dep.define(v, refuter[&r].1.clone());
        }
    }
    debug_assert!(verify_with(&mut solver, &dep)?.is_good());
    values_with(&mut solver, &dep)
}

/// Decision of `value(v) cmp r`, cross-checked against the dual game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueDecision {
    pub holds: bool,
    pub value: Rational,
    pub report: ObligationValueReport,
    pub dual_report: ObligationValueReport,
}

/// Solves the game and its dual; their values must add up to one at every
/// configuration, otherwise an internal error is reported.
pub fn decide_value(
    game: &ObligationGame,
    v: usize,
    cmp: Comparator,
    threshold: &Rational,
    budget: &Budget,
) -> Result<ValueDecision> {
    game.ensure_valid()?;
    if v >= game.len() {
        return Err(Error::Format(format!("no configuration #{v}")));
    }
    let report = find_best_dependency(game, budget)?;
    // dualizing shifts every priority up by one
    let dual_budget = Budget {
        max_priority: budget.max_priority.saturating_add(1),
        ..*budget
    };
    let dual_report = find_best_dependency(&game.dual(), &dual_budget)?;
    for u in 0..game.len() {
        if &report.values[u] + &dual_report.values[u] != Rational::one() {
            return Err(Error::Internal(format!(
                "values of {} in the game ({}) and its dual ({}) do not add up to one",
                game.id(u),
                report.values[u],
                dual_report.values[u]
            )));
        }
    }
    let value = report.values[v].clone();
    Ok(ValueDecision {
        holds: cmp.holds(&value, threshold),
        value,
        report,
        dual_report,
    })
}

/// Values of a chain annotated with priorities and obligations.
pub fn solve_chain_obligations(
    chain: &LabeledMarkovChain,
    priorities: &BTreeMap<usize, Priority>,
    obligations: &BTreeMap<usize, Obligation>,
    budget: &Budget,
) -> Result<ObligationValueReport> {
    let game = embed_chain_as_game(chain, priorities, obligations)?;
    find_best_dependency(&game, budget)
}
