//! Dependencies: for every obligation configuration either "unfulfilled"
//! or a set of (configuration, priority) pairs it relies on.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{ObligationGame, Priority};

use super::gamma::Pair;

/// Obligation configurations without an entry are unfulfilled (⊥); an
/// entry with an empty set is fulfilled without relying on anything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dependency {
    sets: BTreeMap<usize, BTreeSet<Pair>>,
}

/// Dependency keyed by configuration ids; `None` marks ⊥.
pub type NamedDependency = BTreeMap<String, Option<Vec<(String, Priority)>>>;

impl Dependency {
    /// Every obligation unfulfilled.
    pub fn undefined() -> Self {
        Dependency::default()
    }

    pub fn define(&mut self, v: usize, set: BTreeSet<Pair>) -> &mut Self {
        self.sets.insert(v, set);
        self
    }

    pub fn undefine(&mut self, v: usize) -> &mut Self {
        self.sets.remove(&v);
        self
    }

    /// `None` is ⊥.
    pub fn get(&self, v: usize) -> Option<&BTreeSet<Pair>> {
        self.sets.get(&v)
    }

    pub fn is_defined(&self, v: usize) -> bool {
        self.sets.contains_key(&v)
    }

    /// Defined configurations and their sets, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BTreeSet<Pair>)> {
        self.sets.iter().map(|(&v, s)| (v, s))
    }

    pub fn defined(&self) -> BTreeSet<usize> {
        self.sets.keys().copied().collect()
    }

    /// Type errors: keys or targets that are not obligation configurations,
    /// priorities above the game's maximum.
    pub fn type_errors(&self, game: &ObligationGame) -> Vec<String> {
        let mut errs = Vec::new();
        let k = game.max_priority();
        for (&v, set) in &self.sets {
            if v >= game.len() || !game.is_obligation(v) {
                errs.push(format!("configuration #{v} carries no obligation"));
                continue;
            }
            for &(u, m) in set {
                if u >= game.len() || !game.is_obligation(u) {
                    errs.push(format!("{} relies on #{u}, which carries no obligation", game.id(v)));
                } else if m > k {
                    errs.push(format!("{} relies on ({}, {m}) above the maximal priority {k}", game.id(v), game.id(u)));
                }
            }
        }
        errs
    }

    /// Entry for every obligation configuration of `game`.
    pub fn named(&self, game: &ObligationGame) -> NamedDependency {
        game.obligation_configurations()
            .into_iter()
            .map(|v| {
                let set = self
                    .get(v)
                    .map(|s| s.iter().map(|&(u, m)| (game.id(u).to_string(), m)).collect());
                (game.id(v).to_string(), set)
            })
            .collect()
    }

    /// Inverse of [`Dependency::named`]; missing obligation entries are ⊥.
    pub fn from_named(game: &ObligationGame, named: &NamedDependency) -> Result<Self> {
        let index = |id: &str| {
            game.index_of(id)
                .ok_or_else(|| Error::Format(format!("unknown configuration {id:?} in dependency")))
        };
        let mut dep = Dependency::undefined();
        for (id, set) in named {
            let v = index(id)?;
            if let Some(set) = set {
                let mut pairs = BTreeSet::new();
                for (u, m) in set {
                    pairs.insert((index(u)?, *m));
                }
                dep.define(v, pairs);
            }
        }
        let errs = dep.type_errors(game);
        if errs.is_empty() {
            Ok(dep)
        } else {
            Err(Error::Format(errs.join("; ")))
        }
    }
}
