//! JSON documents (`"format": "obg-v1"`): games, chains, dependencies.
//!
//! Rationals are strings; bare JSON numbers are rejected for
//! probabilities and thresholds. Writing is canonical, so
//! write → parse → write reproduces the same bytes.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::{GameBuilder, LabeledMarkovChain, Obligation, ObligationGame, Owner, Priority};
use crate::obligation::{Dependency, NamedDependency};
use crate::rational::Rational;

pub const FORMAT: &str = "obg-v1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Edge {
    to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<Rational>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Configuration {
    id: String,
    owner: Owner,
    priority: Priority,
    edges: Vec<Edge>,
    #[serde(default)]
    obligation: Option<Obligation>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc {
    format: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Value>,
    configurations: Vec<Configuration>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Transition {
    to: String,
    p: Rational,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Location {
    id: String,
    #[serde(default)]
    labels: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    priority: Option<Priority>,
    #[serde(default)]
    obligation: Option<Obligation>,
    transitions: Vec<Transition>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainDoc {
    format: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Value>,
    initial: String,
    locations: Vec<Location>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DependencyDoc {
    format: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Value>,
    dependency: NamedDependency,
}

/// A chain document: the chain plus optional priorities and obligations.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFile {
    pub chain: LabeledMarkovChain,
    /// Only locations with a priority appear.
    pub priorities: BTreeMap<usize, Priority>,
    pub obligations: BTreeMap<usize, Obligation>,
}

impl ChainFile {
    /// The chain as a game of random configurations; every location needs a priority.
    pub fn to_game(&self) -> Result<ObligationGame> {
        crate::model::embed_chain_as_game(&self.chain, &self.priorities, &self.obligations)
    }
}

pub(crate) fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })
}

pub(crate) fn check_header(format: &str, kind: &str, expected: &str) -> Result<()> {
    if format != FORMAT {
        return Err(Error::Format(format!("unsupported format {format:?}, expected {FORMAT:?}")));
    }
    if kind != expected {
        return Err(Error::Format(format!("document kind is {kind:?}, expected {expected:?}")));
    }
    Ok(())
}

pub(crate) fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Kind of a document without interpreting the rest.
pub fn document_kind(text: &str) -> Result<String> {
    #[derive(Deserialize)]
    struct Header {
        format: String,
        kind: String,
    }
    let h: Header = from_json(text)?;
    if h.format != FORMAT {
        return Err(Error::Format(format!("unsupported format {:?}, expected {FORMAT:?}", h.format)));
    }
    Ok(h.kind)
}

fn index_map<'a>(ids: impl Iterator<Item = &'a String>) -> BTreeMap<&'a str, usize> {
    let mut m = BTreeMap::new();
    for (i, id) in ids.enumerate() {
        m.entry(id.as_str()).or_insert(i);
    }
    m
}

fn lookup(index: &BTreeMap<&str, usize>, id: &str, from: &str) -> Result<usize> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| Error::Format(format!("{from:?} points to unknown id {id:?}")))
}

pub fn parse_game(text: &str) -> Result<ObligationGame> {
    let doc: GameDoc = from_json(text)?;
    check_header(&doc.format, &doc.kind, "game")?;
    let index = index_map(doc.configurations.iter().map(|c| &c.id));
    let mut b = GameBuilder::new();
    for c in &doc.configurations {
        let v = b.add(c.id.clone(), c.owner, c.priority);
        b.set_obligation(v, c.obligation.clone());
    }
    for (v, c) in doc.configurations.iter().enumerate() {
        for e in &c.edges {
            let u = lookup(&index, &e.to, &c.id)?;
            match (c.owner, &e.p) {
                (Owner::Random, Some(p)) => {
                    b.edge(v, u).raw_kernel_entry(v, u, p.clone());
                }
                (Owner::Random, None) => {
                    return Err(Error::Format(format!("random configuration {:?} needs a probability on every edge", c.id)))
                }
                (_, Some(_)) => {
                    return Err(Error::Format(format!("player configuration {:?} cannot carry probabilities", c.id)))
                }
                (_, None) => {
                    b.edge(v, u);
                }
            }
        }
    }
    b.build()
}

pub fn write_game(game: &ObligationGame) -> String {
    let configurations = (0..game.len())
        .map(|v| Configuration {
            id: game.id(v).to_string(),
            owner: game.owner(v),
            priority: game.priority(v),
            edges: game
                .successors(v)
                .iter()
                .map(|&u| Edge {
                    to: game.id(u).to_string(),
                    p: (game.owner(v) == Owner::Random).then(|| game.probability(v, u)),
                })
                .collect(),
            obligation: game.obligation(v).cloned(),
        })
        .collect();
    to_pretty(&GameDoc {
        format: FORMAT.into(),
        kind: "game".into(),
        provenance: None,
        configurations,
    })
}

pub fn parse_chain(text: &str) -> Result<ChainFile> {
    let doc: ChainDoc = from_json(text)?;
    check_header(&doc.format, &doc.kind, "chain")?;
    let index = index_map(doc.locations.iter().map(|l| &l.id));
    let mut rows = Vec::with_capacity(doc.locations.len());
    let mut priorities = BTreeMap::new();
    let mut obligations = BTreeMap::new();
    for (s, l) in doc.locations.iter().enumerate() {
        let mut row = Vec::with_capacity(l.transitions.len());
        for t in &l.transitions {
            row.push((lookup(&index, &t.to, &l.id)?, t.p.clone()));
        }
        row.sort_by_key(|(t, _)| *t);
        rows.push(row);
        if let Some(p) = l.priority {
            priorities.insert(s, p);
        }
        if let Some(o) = &l.obligation {
            obligations.insert(s, o.clone());
        }
    }
    let initial = lookup(&index, &doc.initial, "initial")?;
    let chain = LabeledMarkovChain::new(
        doc.locations.iter().map(|l| l.id.clone()).collect(),
        rows,
        doc.locations.iter().map(|l| l.labels.clone()).collect(),
        initial,
    )?;
    Ok(ChainFile {
        chain,
        priorities,
        obligations,
    })
}

pub fn write_chain(file: &ChainFile) -> String {
    let mc = &file.chain;
    let locations = (0..mc.len())
        .map(|s| Location {
            id: mc.id(s).to_string(),
            labels: mc.labels(s).clone(),
            priority: file.priorities.get(&s).copied(),
            obligation: file.obligations.get(&s).cloned(),
            transitions: mc
                .transitions(s)
                .iter()
                .map(|(t, p)| Transition {
                    to: mc.id(*t).to_string(),
                    p: p.clone(),
                })
                .collect(),
        })
        .collect();
    to_pretty(&ChainDoc {
        format: FORMAT.into(),
        kind: "chain".into(),
        provenance: None,
        initial: mc.id(mc.initial()).to_string(),
        locations,
    })
}

pub fn parse_dependency(game: &ObligationGame, text: &str) -> Result<Dependency> {
    let doc: DependencyDoc = from_json(text)?;
    check_header(&doc.format, &doc.kind, "dependency")?;
    Dependency::from_named(game, &doc.dependency)
}

pub fn write_dependency(game: &ObligationGame, dep: &Dependency) -> String {
    to_pretty(&DependencyDoc {
        format: FORMAT.into(),
        kind: "dependency".into(),
        provenance: None,
        dependency: dep.named(game),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAME: &str = r#"{
      "format": "obg-v1", "kind": "game",
      "configurations": [
        {"id": "a", "owner": "player0", "priority": 1, "edges": [{"to": "b"}, {"to": "a"}]},
        {"id": "b", "owner": "random", "priority": 0, "edges": [{"to": "a", "p": "1/2"}, {"to": "b", "p": "1/2"}],
         "obligation": {"cmp": ">=", "threshold": "1/2"}}
      ]
    }"#;

    #[test]
    fn game_round_trip() {
        let g = parse_game(GAME).unwrap();
        assert_eq!(g.successors(0), &[0, 1]);
        let once = write_game(&g);
        let twice = write_game(&parse_game(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn bare_numbers_are_rejected_with_position() {
        let bad = GAME.replace("\"1/2\"}, {\"to\": \"b\"", "0.5}, {\"to\": \"b\"");
        match parse_game(&bad) {
            Err(Error::Parse { line, column, .. }) => assert!(line == 5 && column > 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_target_and_wrong_kind() {
        assert!(matches!(parse_game(&GAME.replace("\"to\": \"a\", \"p\"", "\"to\": \"z\", \"p\"")), Err(Error::Format(_))));
        assert!(matches!(parse_game(&GAME.replace("\"game\"", "\"chain\"")), Err(Error::Format(_))));
        assert!(matches!(parse_game(&GAME.replace("1/2\"}, {\"to\": \"b\"", "1/4\"}, {\"to\": \"b\"")), Err(Error::Invalid(_))));
    }

    #[test]
    fn dependency_null_and_empty_differ() {
        let g = parse_game(GAME).unwrap();
        let text = r#"{"format": "obg-v1", "kind": "dependency", "dependency": {"b": []}}"#;
        let d = parse_dependency(&g, text).unwrap();
        assert_eq!(d.get(1), Some(&BTreeSet::new()));
        let text = r#"{"format": "obg-v1", "kind": "dependency", "dependency": {"b": null}}"#;
        assert_eq!(parse_dependency(&g, text).unwrap().get(1), None);
        let written = write_dependency(&g, &d);
        assert!(written.contains("\"b\": []"));
        assert_eq!(parse_dependency(&g, &written).unwrap(), d);
        let bad = r#"{"format": "obg-v1", "kind": "dependency", "dependency": {"a": []}}"#;
        assert!(parse_dependency(&g, bad).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let text = r#"{"format": "obg-v1", "kind": "chain", "initial": "s",
          "locations": [
            {"id": "s", "labels": ["a"], "priority": 1, "transitions": [{"to": "t", "p": "1/3"}, {"to": "s", "p": "2/3"}]},
            {"id": "t", "priority": 0, "obligation": {"cmp": ">", "threshold": "0"}, "transitions": [{"to": "t", "p": "1"}]}
          ]}"#;
        let f = parse_chain(text).unwrap();
        assert_eq!(f.priorities.len(), 2);
        assert_eq!(f.obligations.len(), 1);
        let once = write_chain(&f);
        assert_eq!(once, write_chain(&parse_chain(&once).unwrap()));
    }
}
