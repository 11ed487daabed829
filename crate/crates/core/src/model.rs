//! Domain types shared by every solver: labeled Markov chains, turn-based
//! stochastic games with obligations, and pure memoryless strategies.
//!
//! Configurations are addressed by dense indices internally; each one also
//! carries the stable string identifier used in files and reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::{Comparator, Rational};

pub type Priority = u32;

/// Who moves at a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Player0,
    Player1,
    Random,
}

/// One of the two strategic players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "player0")]
    Zero,
    #[serde(rename = "player1")]
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn owner(self) -> Owner {
        match self {
            Player::Zero => Owner::Player0,
            Player::One => Owner::Player1,
        }
    }

    /// The player that wins a play whose least recurring priority is `p`.
    pub fn winner_of(p: Priority) -> Player {
        if p.is_multiple_of(2) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

impl Owner {
    pub fn player(self) -> Option<Player> {
        match self {
            Owner::Player0 => Some(Player::Zero),
            Owner::Player1 => Some(Player::One),
            Owner::Random => None,
        }
    }

    fn swapped(self) -> Owner {
        match self {
            Owner::Player0 => Owner::Player1,
            Owner::Player1 => Owner::Player0,
            Owner::Random => Owner::Random,
        }
    }
}

/// An obligation `⋈ r`; the absence of an obligation is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obligation {
    #[serde(rename = "cmp")]
    pub comparator: Comparator,
    pub threshold: Rational,
}

impl Obligation {
    pub fn new(comparator: Comparator, threshold: Rational) -> Self {
        Obligation {
            comparator,
            threshold,
        }
    }

    pub fn at_least(threshold: Rational) -> Self {
        Obligation::new(Comparator::AtLeast, threshold)
    }

    pub fn more_than(threshold: Rational) -> Self {
        Obligation::new(Comparator::MoreThan, threshold)
    }

    pub fn is_met_by(&self, value: &Rational) -> bool {
        self.comparator.holds(value, &self.threshold)
    }

    /// `>= r` becomes `> 1-r`, `> r` becomes `>= 1-r`.
    pub fn dual(&self) -> Obligation {
        Obligation::new(self.comparator.flipped(), self.threshold.complement())
    }
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.comparator, self.threshold)
    }
}

/// A single invariant violation found by [`ObligationGame::validate`] or
/// [`LabeledMarkovChain::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateId { id: String },
    NoSuccessor { at: String },
    DuplicateEdge { at: String, to: String },
    EdgeOutOfRange { at: String, index: usize },
    /// Probabilities of a random configuration do not sum to one.
    RowSum { at: String, sum: Rational },
    NonPositiveProbability { at: String, to: String },
    /// The kernel assigns positive mass to a target that is not an edge, or
    /// an edge of a random configuration has no mass.
    KernelEdgeMismatch { at: String, to: String },
    MissingKernel { at: String },
    KernelOnPlayerConfiguration { at: String },
    ThresholdOutOfRange { at: String, threshold: Rational },
    InitialOutOfRange { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(f, "duplicate identifier {id:?}"),
            Violation::NoSuccessor { at } => write!(f, "{at}: no outgoing edge"),
            Violation::DuplicateEdge { at, to } => write!(f, "{at}: duplicate edge to {to}"),
            Violation::EdgeOutOfRange { at, index } => {
                write!(f, "{at}: edge to unknown index {index}")
            }
            Violation::RowSum { at, sum } => {
                write!(f, "{at}: outgoing probabilities sum to {sum}, not 1")
            }
            Violation::NonPositiveProbability { at, to } => {
                write!(f, "{at}: non-positive probability towards {to}")
            }
            Violation::KernelEdgeMismatch { at, to } => {
                write!(f, "{at}: kernel and edge relation disagree on {to}")
            }
            Violation::MissingKernel { at } => {
                write!(f, "{at}: random configuration without distribution")
            }
            Violation::KernelOnPlayerConfiguration { at } => {
                write!(f, "{at}: player configuration carries a distribution")
            }
            Violation::ThresholdOutOfRange { at, threshold } => {
                write!(f, "{at}: obligation threshold {threshold} outside [0,1]")
            }
            Violation::InitialOutOfRange { index } => {
                write!(f, "initial location index {index} out of range")
            }
        }
    }
}

/// Finite labeled Markov chain `(S, P, L, s_in)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMarkovChain {
    ids: Vec<String>,
    transitions: Vec<Vec<(usize, Rational)>>,
    labels: Vec<BTreeSet<String>>,
    initial: usize,
}

impl LabeledMarkovChain {
    /// Builds a chain without checking it; call [`validate`](Self::validate)
    /// or use [`LabeledMarkovChain::new`].
    pub fn new_unchecked(
        ids: Vec<String>,
        transitions: Vec<Vec<(usize, Rational)>>,
        labels: Vec<BTreeSet<String>>,
        initial: usize,
    ) -> Self {
        LabeledMarkovChain {
            ids,
            transitions,
            labels,
            initial,
        }
    }

    pub fn new(
        ids: Vec<String>,
        transitions: Vec<Vec<(usize, Rational)>>,
        labels: Vec<BTreeSet<String>>,
        initial: usize,
    ) -> Result<Self, Error> {
        let chain = Self::new_unchecked(ids, transitions, labels, initial);
        let violations = chain.validate();
        if violations.is_empty() {
            Ok(chain)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, s: usize) -> &str {
        &self.ids[s]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn transitions(&self, s: usize) -> &[(usize, Rational)] {
        &self.transitions[s]
    }

    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.transitions[s].iter().map(|(t, _)| *t)
    }

    pub fn labels(&self, s: usize) -> &BTreeSet<String> {
        &self.labels[s]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Adjacency lists of the underlying graph.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|s| self.successors(s).collect()).collect()
    }

    /// Returns every invariant violation; empty iff the chain is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.len();
        check_ids(&self.ids, &mut out);
        if self.initial >= n {
            out.push(Violation::InitialOutOfRange {
                index: self.initial,
            });
        }
        for s in 0..n {
            let at = self.ids[s].clone();
            let row = &self.transitions[s];
            if row.is_empty() {
                out.push(Violation::NoSuccessor { at: at.clone() });
                continue;
            }
            let mut seen = BTreeSet::new();
            let mut sum = Rational::zero();
            for (t, p) in row {
                if *t >= n {
                    out.push(Violation::EdgeOutOfRange {
                        at: at.clone(),
                        index: *t,
                    });
                    continue;
                }
                if !seen.insert(*t) {
                    out.push(Violation::DuplicateEdge {
                        at: at.clone(),
                        to: self.ids[*t].clone(),
                    });
                }
                if p.is_zero() || p.is_negative() {
                    out.push(Violation::NonPositiveProbability {
                        at: at.clone(),
                        to: self.ids[*t].clone(),
                    });
                }
                sum += p;
            }
            if !sum.is_one() {
                out.push(Violation::RowSum { at, sum });
            }
        }
        out
    }
}

fn check_ids(ids: &[String], out: &mut Vec<Violation>) {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            out.push(Violation::DuplicateId { id: id.clone() });
        }
    }
}

/// Finite turn-based stochastic parity game with an obligation map.
///
/// The winning plays are those whose least priority seen infinitely often is
/// even. Random configurations carry a kernel whose support must coincide
/// with their edges.
#[derive(Debug, Clone, PartialEq)]
pub struct ObligationGame {
    ids: Vec<String>,
    owners: Vec<Owner>,
    edges: Vec<Vec<usize>>,
    kernel: Vec<Option<BTreeMap<usize, Rational>>>,
    priorities: Vec<Priority>,
    obligations: Vec<Option<Obligation>>,
}

impl ObligationGame {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn owner(&self, v: usize) -> Owner {
        self.owners[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn priority(&self, v: usize) -> Priority {
        self.priorities[v]
    }

    pub fn priorities(&self) -> &[Priority] {
        &self.priorities
    }

    pub fn obligation(&self, v: usize) -> Option<&Obligation> {
        self.obligations[v].as_ref()
    }

    pub fn is_obligation(&self, v: usize) -> bool {
        self.obligations[v].is_some()
    }

    /// Obligation configurations in index order.
    pub fn obligation_configurations(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_obligation(v)).collect()
    }

    pub fn has_obligations(&self) -> bool {
        self.obligations.iter().any(Option::is_some)
    }

    /// Largest priority in use (0 for the empty game).
    pub fn max_priority(&self) -> Priority {
        self.priorities.iter().copied().max().unwrap_or(0)
    }

    /// Kernel of a random configuration, keyed by successor.
    pub fn distribution(&self, v: usize) -> Option<&BTreeMap<usize, Rational>> {
        self.kernel[v].as_ref()
    }

    /// `κ(v)(u)`; zero when undefined.
    pub fn probability(&self, v: usize, u: usize) -> Rational {
        self.kernel[v]
            .as_ref()
            .and_then(|d| d.get(&u).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn configurations_of(&self, owner: Owner) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.owners[v] == owner).collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        self.edges.clone()
    }

    /// Returns every invariant violation with the offending configuration.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.len();
        check_ids(&self.ids, &mut out);
        for v in 0..n {
            let at = self.ids[v].clone();
            let succ = &self.edges[v];
            if succ.is_empty() {
                out.push(Violation::NoSuccessor { at: at.clone() });
            }
            let mut seen = BTreeSet::new();
            for &u in succ {
                if u >= n {
                    out.push(Violation::EdgeOutOfRange {
                        at: at.clone(),
                        index: u,
                    });
                } else if !seen.insert(u) {
                    out.push(Violation::DuplicateEdge {
                        at: at.clone(),
                        to: self.ids[u].clone(),
                    });
                }
            }
            match (self.owners[v], &self.kernel[v]) {
                (Owner::Random, None) => out.push(Violation::MissingKernel { at: at.clone() }),
                (Owner::Random, Some(dist)) => {
                    let mut sum = Rational::zero();
                    for (&u, p) in dist {
                        let to = self.ids.get(u).cloned().unwrap_or_else(|| u.to_string());
                        if p.is_negative() || p.is_zero() {
                            out.push(Violation::NonPositiveProbability {
                                at: at.clone(),
                                to: to.clone(),
                            });
                        }
                        if !seen.contains(&u) && !p.is_zero() {
                            out.push(Violation::KernelEdgeMismatch { at: at.clone(), to });
                        }
                        sum += p;
                    }
                    for &u in &seen {
                        if dist.get(&u).is_none_or(|p| p.is_zero()) {
                            out.push(Violation::KernelEdgeMismatch {
                                at: at.clone(),
                                to: self.ids[u].clone(),
                            });
                        }
                    }
                    if !sum.is_one() {
                        out.push(Violation::RowSum { at: at.clone(), sum });
                    }
                }
                (_, Some(_)) => out.push(Violation::KernelOnPlayerConfiguration { at: at.clone() }),
                (_, None) => {}
            }
            if let Some(ob) = &self.obligations[v] {
                if !ob.threshold.is_probability() {
                    out.push(Violation::ThresholdOutOfRange {
                        at,
                        threshold: ob.threshold.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<(), Error> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Swaps the players, complements the parity objective by shifting every
    /// priority up by one and flips every obligation.
    pub fn dual(&self) -> ObligationGame {
        ObligationGame {
            ids: self.ids.clone(),
            owners: self.owners.iter().map(|o| o.swapped()).collect(),
            edges: self.edges.clone(),
            kernel: self.kernel.clone(),
            priorities: self.priorities.iter().map(|p| p + 1).collect(),
            obligations: self
                .obligations
                .iter()
                .map(|o| o.as_ref().map(Obligation::dual))
                .collect(),
        }
    }

    /// Same game with every obligation removed.
    pub fn without_obligations(&self) -> ObligationGame {
        let mut g = self.clone();
        g.obligations = vec![None; self.len()];
        g
    }

    pub fn with_obligation(&self, v: usize, obligation: Option<Obligation>) -> ObligationGame {
        let mut g = self.clone();
        g.obligations[v] = obligation;
        g
    }

    pub fn with_priority(&self, v: usize, priority: Priority) -> ObligationGame {
        let mut g = self.clone();
        g.priorities[v] = priority;
        g
    }

    /// Row of the one-step transition relation with the given choices
    /// substituted at player configurations.
    pub(crate) fn row_with(&self, v: usize, choice: Option<usize>) -> Vec<(usize, Rational)> {
        match &self.kernel[v] {
            Some(dist) if self.owners[v] == Owner::Random => {
                dist.iter().map(|(&u, p)| (u, p.clone())).collect()
            }
            _ => vec![(choice.expect("player configuration needs a choice"), Rational::one())],
        }
    }
}

/// Embeds a chain as a game where every configuration is random.
pub fn embed_chain_as_game(
    mc: &LabeledMarkovChain,
    priorities: &BTreeMap<usize, Priority>,
    obligations: &BTreeMap<usize, Obligation>,
) -> Result<ObligationGame, Error> {
    let mut builder = GameBuilder::new();
    for s in 0..mc.len() {
        let p = *priorities
            .get(&s)
            .ok_or_else(|| Error::MissingPriority(mc.id(s).to_string()))?;
        builder.add(mc.id(s), Owner::Random, p);
    }
    for s in 0..mc.len() {
        for (t, p) in mc.transitions(s) {
            builder.random_edge(s, *t, p.clone());
        }
        if let Some(ob) = obligations.get(&s) {
            builder.set_obligation(s, Some(ob.clone()));
        }
    }
    builder.build()
}

/// Incremental construction of an [`ObligationGame`].
#[derive(Debug, Clone, Default)]
pub struct GameBuilder {
    ids: Vec<String>,
    owners: Vec<Owner>,
    edges: Vec<Vec<usize>>,
    kernel: Vec<Option<BTreeMap<usize, Rational>>>,
    priorities: Vec<Priority>,
    obligations: Vec<Option<Obligation>>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn add(&mut self, id: impl Into<String>, owner: Owner, priority: Priority) -> usize {
        self.ids.push(id.into());
        self.owners.push(owner);
        self.edges.push(Vec::new());
        self.kernel.push(if owner == Owner::Random {
            Some(BTreeMap::new())
        } else {
            None
        });
        self.priorities.push(priority);
        self.obligations.push(None);
        self.ids.len() - 1
    }

    pub fn set_obligation(&mut self, v: usize, obligation: Option<Obligation>) -> &mut Self {
        self.obligations[v] = obligation;
        self
    }

    /// Player edge (no probability).
    pub fn edge(&mut self, from: usize, to: usize) -> &mut Self {
        self.edges[from].push(to);
        self
    }

    /// Random edge carrying mass `p`; mass accumulates on repeated targets.
    pub fn random_edge(&mut self, from: usize, to: usize, p: Rational) -> &mut Self {
        if !self.edges[from].contains(&to) {
            self.edges[from].push(to);
        }
        let row = self.kernel[from].get_or_insert_with(BTreeMap::new);
        let entry = row.entry(to).or_insert_with(Rational::zero);
        *entry = &*entry + &p;
        self
    }

    /// Kernel entry without an edge; only useful to build invalid inputs.
    pub fn raw_kernel_entry(&mut self, from: usize, to: usize, p: Rational) -> &mut Self {
        self.kernel[from]
            .get_or_insert_with(BTreeMap::new)
            .insert(to, p);
        self
    }

    /// Edges are kept sorted by target index, which fixes the successor
    /// order used for tie-breaking and enumeration.
    pub fn build_unchecked(mut self) -> ObligationGame {
        for succ in &mut self.edges {
            succ.sort_unstable();
        }
        ObligationGame {
            ids: self.ids,
            owners: self.owners,
            edges: self.edges,
            kernel: self.kernel,
            priorities: self.priorities,
            obligations: self.obligations,
        }
    }

    pub fn build(self) -> Result<ObligationGame, Error> {
        let game = self.build_unchecked();
        game.ensure_valid()?;
        Ok(game)
    }
}

/// Pure memoryless strategy of one player: a successor per owned configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureMemorylessStrategy {
    pub player: Player,
    pub choice: BTreeMap<usize, usize>,
}

impl PureMemorylessStrategy {
    pub fn new(player: Player, choice: BTreeMap<usize, usize>) -> Self {
        PureMemorylessStrategy { player, choice }
    }

    /// Chooses the first listed successor everywhere.
    pub fn first_choice(game: &ObligationGame, player: Player) -> Self {
        let choice = game
            .configurations_of(player.owner())
            .into_iter()
            .map(|v| (v, game.successors(v)[0]))
            .collect();
        PureMemorylessStrategy { player, choice }
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.choice.get(&v).copied()
    }

    /// Domain must be exactly the player's configurations and every choice an edge.
    pub fn check(&self, game: &ObligationGame) -> Result<(), Error> {
        let owned = game.configurations_of(self.player.owner());
        let domain: Vec<usize> = self.choice.keys().copied().collect();
        if owned != domain {
            return Err(Error::StrategyMismatch(format!(
                "{:?} strategy covers {} configurations, the game has {}",
                self.player,
                domain.len(),
                owned.len()
            )));
        }
        for (&v, &u) in &self.choice {
            if !game.successors(v).contains(&u) {
                return Err(Error::StrategyMismatch(format!(
                    "{} -> {} is not an edge",
                    game.id(v),
                    game.id(u)
                )));
            }
        }
        Ok(())
    }

    /// Choices keyed by configuration identifier.
    pub fn named(&self, game: &ObligationGame) -> BTreeMap<String, String> {
        self.choice
            .iter()
            .map(|(&v, &u)| (game.id(v).to_string(), game.id(u).to_string()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn two_config() -> GameBuilder {
        let mut b = GameBuilder::new();
        let a = b.add("a", Owner::Random, 0);
        let c = b.add("c", Owner::Player0, 1);
        b.random_edge(a, a, r("1/2")).random_edge(a, c, r("1/2"));
        b.edge(c, a).edge(c, c);
        b
    }

    #[test]
    fn well_formed_game_has_no_violations() {
        assert_eq!(two_config().build_unchecked().validate(), vec![]);
    }

    #[test]
    fn short_row_is_reported() {
        let mut b = GameBuilder::new();
        let a = b.add("a", Owner::Random, 0);
        let c = b.add("c", Owner::Random, 0);
        b.random_edge(a, a, r("1/2")).random_edge(a, c, r("1/4"));
        b.random_edge(c, c, Rational::one());
        let v = b.build_unchecked().validate();
        assert_eq!(
            v,
            vec![Violation::RowSum {
                at: "a".into(),
                sum: r("3/4")
            }]
        );
    }

    #[test]
    fn kernel_without_edge_is_reported() {
        let mut b = GameBuilder::new();
        let a = b.add("a", Owner::Random, 0);
        let c = b.add("c", Owner::Random, 0);
        b.random_edge(a, a, r("1/2")).raw_kernel_entry(a, c, r("1/2"));
        b.random_edge(c, c, Rational::one());
        let v = b.build_unchecked().validate();
        assert_eq!(
            v,
            vec![Violation::KernelEdgeMismatch {
                at: "a".into(),
                to: "c".into()
            }]
        );
    }

    #[test]
    fn dead_configuration_is_rejected() {
        let mut b = GameBuilder::new();
        b.add("a", Owner::Player1, 0);
        assert!(matches!(
            b.build().unwrap_err(),
            Error::Invalid(v) if v == vec![Violation::NoSuccessor { at: "a".into() }]
        ));
    }

    #[test]
    fn threshold_outside_unit_interval() {
        let mut b = two_config();
        b.set_obligation(0, Some(Obligation::at_least(r("3/2"))));
        let v = b.build_unchecked().validate();
        assert!(matches!(v.as_slice(), [Violation::ThresholdOutOfRange { .. }]));
    }

    #[test]
    fn dual_flips_obligations() {
        let mut b = two_config();
        b.set_obligation(0, Some(Obligation::at_least(r("1/2"))));
        b.set_obligation(1, Some(Obligation::more_than(r("1/3"))));
        let g = b.build().unwrap();
        let d = g.dual();
        assert_eq!(d.obligation(0), Some(&Obligation::more_than(r("1/2"))));
        assert_eq!(d.obligation(1), Some(&Obligation::at_least(r("2/3"))));
        assert_eq!(d.owner(1), Owner::Player1);
        assert_eq!(d.owner(0), Owner::Random);
        assert_eq!(d.priorities(), &[1, 2]);
    }

    #[test]
    fn absent_obligation_stays_absent_under_dual() {
        let g = two_config().build().unwrap();
        let d = g.dual();
        assert!(d.obligation(0).is_none() && d.obligation(1).is_none());
    }

    #[test]
    fn double_dual_preserves_owners_obligations_and_parity_class() {
        let mut b = two_config();
        b.set_obligation(1, Some(Obligation::more_than(r("2/5"))));
        let g = b.build().unwrap();
        let dd = g.dual().dual();
        for v in 0..g.len() {
            assert_eq!(dd.owner(v), g.owner(v));
            assert_eq!(dd.obligation(v), g.obligation(v));
            assert_eq!(dd.priority(v) % 2, g.priority(v) % 2);
            assert_eq!(dd.priority(v), g.priority(v) + 2);
        }
    }

    #[test]
    fn chain_embedding() {
        let mc = LabeledMarkovChain::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![(1, r("1/2")), (2, r("1/2"))],
                vec![(1, Rational::one())],
                vec![(0, Rational::one())],
            ],
            vec![BTreeSet::new(); 3],
            0,
        )
        .unwrap();
        let pr: BTreeMap<usize, Priority> = [(0, 1), (1, 0), (2, 2)].into();
        let g = embed_chain_as_game(&mc, &pr, &BTreeMap::new()).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.configurations_of(Owner::Random).len(), 3);
        assert!(g.configurations_of(Owner::Player0).is_empty());
        assert!(g.configurations_of(Owner::Player1).is_empty());
        assert_eq!(g.probability(0, 2), r("1/2"));

        let missing: BTreeMap<usize, Priority> = [(0, 1)].into();
        assert!(matches!(
            embed_chain_as_game(&mc, &missing, &BTreeMap::new()),
            Err(Error::MissingPriority(id)) if id == "y"
        ));
    }

    #[test]
    fn strategy_domain_is_checked() {
        let g = two_config().build().unwrap();
        let s = PureMemorylessStrategy::first_choice(&g, Player::Zero);
        assert!(s.check(&g).is_ok());
        let bad = PureMemorylessStrategy::new(Player::Zero, [(1, 1), (0, 0)].into());
        assert!(bad.check(&g).is_err());
        let off_edge = PureMemorylessStrategy::new(Player::One, [(1, 0)].into());
        assert!(off_edge.check(&g).is_err());
    }
}
