//! Positive Boolean formulas over automaton states and bounded terms.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{Comparator, Rational};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Tt,
    Ff,
    /// Bare state: the run continues in that state (unbounded).
    State(String),
    /// `⟦q⟧⋈p`: the paths accepted from `q` have measure `⋈ p`.
    Term {
        state: String,
        comparator: Comparator,
        threshold: Rational,
    },
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn state(q: impl Into<String>) -> Self {
        Formula::State(q.into())
    }

    pub fn term(q: impl Into<String>, comparator: Comparator, threshold: Rational) -> Self {
        Formula::Term {
            state: q.into(),
            comparator,
            threshold,
        }
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Direct subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    /// All subformulas, the formula itself included.
    pub fn closure(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                stack.extend(f.children());
            }
        }
        out
    }

    /// States mentioned bare or inside terms.
    pub fn states(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::State(q) | Formula::Term { state: q, .. } => {
                    out.insert(q.as_str());
                }
                _ => stack.extend(f.children()),
            }
        }
        out
    }

    /// Whether some bare state occurs (forbidden in initial conditions).
    pub fn has_bare_state(&self) -> bool {
        self.closure().iter().any(|f| matches!(f, Formula::State(_)))
    }

    /// Nested-array form: `["or", X, Y]`, `["term", "q", ">=", "1/2"]`, ...
    pub fn to_json(&self) -> Value {
        match self {
            Formula::Tt => json!(["tt"]),
            Formula::Ff => json!(["ff"]),
            Formula::State(q) => json!(["state", q]),
            Formula::Term {
                state,
                comparator,
                threshold,
            } => json!(["term", state, comparator.symbol(), threshold.to_string()]),
            Formula::And(a, b) => json!(["and", a.to_json(), b.to_json()]),
            Formula::Or(a, b) => json!(["or", a.to_json(), b.to_json()]),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |why: &str| Error::Format(format!("bad formula {value}: {why}"));
        let items = value.as_array().ok_or_else(|| bad("expected an array"))?;
        let tag = items.first().and_then(Value::as_str).ok_or_else(|| bad("missing tag"))?;
        let text = |i: usize| -> Result<&str> {
            items
                .get(i)
                .and_then(Value::as_str)
                .ok_or_else(|| bad("expected a string argument"))
        };
        let arity = |n: usize| -> Result<()> {
            if items.len() == n + 1 {
                Ok(())
            } else {
                Err(bad(&format!("{tag} takes {n} arguments")))
            }
        };
        Ok(match tag {
            "tt" => {
                arity(0)?;
                Formula::Tt
            }
            "ff" => {
                arity(0)?;
                Formula::Ff
            }
            "state" => {
                arity(1)?;
                Formula::State(text(1)?.to_string())
            }
            "term" => {
                arity(3)?;
                let comparator = text(2)?.parse().map_err(|_| bad("unknown comparator"))?;
                let threshold: Rational = text(3)?.parse().map_err(|_| bad("bad threshold"))?;
                if !threshold.is_probability() {
                    return Err(bad("threshold outside [0,1]"));
                }
                Formula::term(text(1)?, comparator, threshold)
            }
            "and" | "or" => {
                arity(2)?;
                let a = Formula::from_json(&items[1])?;
                let b = Formula::from_json(&items[2])?;
                if tag == "and" {
                    Formula::and(a, b)
                } else {
                    Formula::or(a, b)
                }
            }
            _ => return Err(bad("unknown tag")),
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Tt => write!(f, "tt"),
            Formula::Ff => write!(f, "ff"),
            Formula::State(q) => write!(f, "{q}"),
            Formula::Term {
                state,
                comparator,
                threshold,
            } => write!(f, "[{state}]{}{threshold}", comparator.symbol()),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// Union of the closures of all formulas.
pub fn closure_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    formulas.into_iter().flat_map(Formula::closure).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn closure_of_example_transition() {
        let t = Formula::term("q2", Comparator::AtLeast, half());
        let f = Formula::or(Formula::state("q1"), t.clone());
        let cl = f.closure();
        assert_eq!(cl, [f.clone(), Formula::state("q1"), t].into_iter().collect());
        assert_eq!(closure_of(&cl), cl);
        assert_eq!(Formula::Tt.closure(), [Formula::Tt].into());
    }

    #[test]
    fn json_round_trip() {
        let f = Formula::and(
            Formula::or(Formula::Tt, Formula::state("q")),
            Formula::term("q", Comparator::MoreThan, half()),
        );
        assert_eq!(Formula::from_json(&f.to_json()).unwrap(), f);
        assert_eq!(f.to_string(), "((tt | q) & [q]>1/2)");
        for bad in [json!(["or", ["tt"]]), json!(["term", "q", "=", "1/2"]), json!(["term", "q", ">=", "3/2"]), json!("tt")] {
            assert!(Formula::from_json(&bad).is_err(), "{bad}");
        }
    }
}
