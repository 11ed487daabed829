//! p-automata over proposition sets, and their JSON document.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::format::{check_header, from_json, to_pretty, FORMAT};
use crate::model::Priority;

use super::formula::Formula;

/// One automaton state: its priority and its sparse transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDef {
    pub name: String,
    pub priority: Priority,
    /// Keyed by the exact set of propositions read.
    pub transitions: BTreeMap<BTreeSet<String>, Formula>,
    /// Letters without an entry go to `ff`; otherwise every letter must be listed.
    pub default_ff: bool,
}

/// Alternating automaton over Markov chains. Letters are subsets of
/// `propositions`; a location labelled `L` is read as `L ∩ propositions`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAutomaton {
    pub propositions: BTreeSet<String>,
    pub states: Vec<StateDef>,
    pub initial: Formula,
}

/// Every subset of `props`, in a fixed order.
pub fn letters(props: &BTreeSet<String>) -> Vec<BTreeSet<String>> {
    let props: Vec<&String> = props.iter().collect();
    (0u64..1 << props.len())
        .map(|mask| {
            props
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| (*p).clone())
                .collect()
        })
        .collect()
}

impl PAutomaton {
    pub fn state(&self, name: &str) -> Option<&StateDef> {
        self.states.iter().find(|s| s.name == name)
    }

    pub fn priority(&self, name: &str) -> Priority {
        self.state(name).map(|s| s.priority).unwrap_or(0)
    }

    pub fn max_priority(&self) -> Priority {
        self.states.iter().map(|s| s.priority).max().unwrap_or(0)
    }

    /// δ(q, L ∩ propositions).
    pub fn delta(&self, q: &str, labels: &BTreeSet<String>) -> Result<Formula> {
        let s = self
            .state(q)
            .ok_or_else(|| Error::Automaton(format!("unknown state {q:?}")))?;
        let letter: BTreeSet<String> = labels.intersection(&self.propositions).cloned().collect();
        match s.transitions.get(&letter) {
            Some(f) => Ok(f.clone()),
            None if s.default_ff => Ok(Formula::Ff),
            None => Err(Error::Automaton(format!("no transition of {q:?} on {letter:?}"))),
        }
    }

    /// Every formula δ(q, σ) for q ∈ Q and σ ∈ Σ.
    pub fn transition_formulas(&self) -> BTreeSet<Formula> {
        let all = letters(&self.propositions);
        let mut out = BTreeSet::new();
        for s in &self.states {
            out.extend(s.transitions.values().cloned());
            if s.default_ff && s.transitions.len() < all.len() {
                out.insert(Formula::Ff);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let names: BTreeSet<&str> = self.states.iter().map(|s| s.name.as_str()).collect();
        if names.len() != self.states.len() {
            errs.push("duplicate state names".to_string());
        }
        if self.propositions.len() > 16 {
            errs.push("more than 16 propositions".to_string());
        }
        let check = |f: &Formula, ctx: &str, errs: &mut Vec<String>| {
            for q in f.states() {
                if !names.contains(q) {
                    errs.push(format!("{ctx} mentions unknown state {q:?}"));
                }
            }
        };
        check(&self.initial, "initial condition", &mut errs);
        for s in &self.states {
            for (letter, f) in &s.transitions {
                check(f, &format!("transition of {:?}", s.name), &mut errs);
                if !letter.is_subset(&self.propositions) {
                    errs.push(format!("transition of {:?} reads unknown propositions {letter:?}", s.name));
                }
            }
        }
        if self.initial.has_bare_state() {
            errs.push("initial condition contains a bare state".to_string());
        }
        for s in &self.states {
            if !s.default_ff && s.transitions.len() < 1 << self.propositions.len() {
                errs.push(format!("transitions of {:?} are not total and no default is declared", s.name));
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Automaton(errs.join("; ")))
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionDoc {
    on: BTreeSet<String>,
    formula: Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    id: String,
    priority: Priority,
    /// `"ff"` enables the default; absent means δ is listed in full.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    default: Option<String>,
    transitions: Vec<TransitionDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AutomatonDoc {
    format: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Value>,
    propositions: BTreeSet<String>,
    initial: Value,
    states: Vec<StateDoc>,
}

pub fn parse_automaton(text: &str) -> Result<PAutomaton> {
    let doc: AutomatonDoc = from_json(text)?;
    check_header(&doc.format, &doc.kind, "automaton")?;
    let mut states = Vec::new();
    for s in doc.states {
        let default_ff = match s.default.as_deref() {
            None => false,
            Some("ff") => true,
            Some(other) => return Err(Error::Format(format!("unknown default {other:?} for {:?}", s.id))),
        };
        let mut transitions = BTreeMap::new();
        for t in s.transitions {
            if transitions.insert(t.on.clone(), Formula::from_json(&t.formula)?).is_some() {
                return Err(Error::Format(format!("{:?} lists the letter {:?} twice", s.id, t.on)));
            }
        }
        states.push(StateDef {
            name: s.id,
            priority: s.priority,
            transitions,
            default_ff,
        });
    }
    let a = PAutomaton {
        propositions: doc.propositions,
        states,
        initial: Formula::from_json(&doc.initial)?,
    };
    a.validate()?;
    Ok(a)
}

pub fn write_automaton(a: &PAutomaton) -> String {
    to_pretty(&AutomatonDoc {
        format: FORMAT.into(),
        kind: "automaton".into(),
        provenance: None,
        propositions: a.propositions.clone(),
        initial: a.initial.to_json(),
        states: a
            .states
            .iter()
            .map(|s| StateDoc {
                id: s.name.clone(),
                priority: s.priority,
                default: s.default_ff.then(|| "ff".to_string()),
                transitions: s
                    .transitions
                    .iter()
                    .map(|(on, f)| TransitionDoc {
                        on: on.clone(),
                        formula: f.to_json(),
                    })
                    .collect(),
            })
            .collect(),
    })
}
