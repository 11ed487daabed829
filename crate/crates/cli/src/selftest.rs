//! Built-in reproduction suite: the bundled figure fixtures with their
//! known values, plus seeded randomized determinacy and oracle suites.

use obligation_games::format::{parse_chain, parse_dependency, parse_game};
use obligation_games::generate::{random_game, GameShape};
use obligation_games::obligation::{find_best_dependency, values_given_dependency, verify_dependency};
use obligation_games::parity::{solve_parity, solve_parity_oracle};
use obligation_games::pautomata::{accepts, accepts_layered, parse_automaton};
use obligation_games::{Budget, Error, ObligationGame, Rational};
use serde_json::json;

use crate::render::emit;
use crate::{Format, Outcome};

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/", $name))
    };
}

type Check = Result<Option<String>, Error>;

fn chain_game(text: &str) -> Result<ObligationGame, Error> {
    parse_chain(text)?.to_game()
}

/// `None` when every `(id, expected)` matches, else a description of the first mismatch.
fn expect_values(g: &ObligationGame, values: &[Rational], expected: &[(&str, &str)]) -> Option<String> {
    expected.iter().find_map(|&(id, want)| {
        let v = g.index_of(id).expect("fixture ids are known");
        let want: Rational = want.parse().expect("expected values parse");
        (values[v] != want).then(|| format!("{id} has value {}, expected {want}", values[v]))
    })
}

fn fig6(budget: &Budget) -> Check {
    let g = parse_game(fixture!("fig6.game.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    if let Some(m) = rep.values.iter().position(|x| !x.is_one()) {
        return Ok(Some(format!("{} has value {}", g.id(m), rep.values[m])));
    }
    let dep = parse_dependency(&g, fixture!("fig6.dependency.json"))?;
    let good = verify_dependency(&g, &dep, budget)?;
    Ok(good.failure(&g))
}

fn fig6_variants(budget: &Budget) -> Check {
    let g = parse_game(fixture!("fig6-s4-at-least.game.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    if !rep.is_fulfilled(g.index_of("s4").expect("s4")) {
        return Ok(Some("s4 unfulfilled with >= 1/2".into()));
    }
    let g = parse_game(fixture!("fig6-s4-more-than.game.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    let fulfilled: Vec<&str> = g
        .obligation_configurations()
        .into_iter()
        .filter(|&v| rep.is_fulfilled(v))
        .map(|v| g.id(v))
        .collect();
    Ok((!fulfilled.is_empty()).then(|| format!("{} fulfilled with > 1/2", fulfilled.join(" "))))
}

fn fig2(budget: &Budget) -> Check {
    let g = chain_game(fixture!("fig2.chain.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    if let Some(m) = expect_values(&g, &rep.values, &[("s1", "1/2"), ("s2", "0")]) {
        return Ok(Some(m));
    }
    let g = chain_game(fixture!("fig2-winning.chain.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    Ok(expect_values(&g, &rep.values, &[("s1", "1")]))
}

fn fig1(budget: &Budget) -> Check {
    let g = chain_game(fixture!("fig1.chain.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    Ok(expect_values(&g, &rep.values, &[("s1", "1/2"), ("s2", "0"), ("s3", "1")]))
}

fn fig4(budget: &Budget) -> Check {
    let g = chain_game(fixture!("fig4.chain.json"))?;
    let empty = parse_dependency(&g, fixture!("fig4-empty.dependency.json"))?;
    let bottom = parse_dependency(&g, fixture!("fig4-bottom.dependency.json"))?;
    let with_empty = values_given_dependency(&g, &empty, budget)?.values;
    let with_bottom = values_given_dependency(&g, &bottom, budget)?.values;
    Ok(expect_values(&g, &with_empty, &[("s1", "1")]).or_else(|| expect_values(&g, &with_bottom, &[("s1", "0")])))
}

fn fig5(budget: &Budget) -> Check {
    let g = parse_game(fixture!("fig5.game.json"))?;
    let rep = find_best_dependency(&g, budget)?;
    let ids = ["v1", "v2", "v3", "v4", "v5", "v6"];
    let expected: Vec<(&str, &str)> = ids.iter().map(|&id| (id, "1")).collect();
    if let Some(m) = expect_values(&g, &rep.values, &expected) {
        return Ok(Some(m));
    }
    let dep = parse_dependency(&g, fixture!("fig5.dependency.json"))?;
    Ok(verify_dependency(&g, &dep, budget)?.failure(&g))
}

fn automaton(budget: &Budget) -> Check {
    let a = parse_automaton(fixture!("paut-example.automaton.json"))?;
    let chains = [
        ("paut-accept", fixture!("paut-accept.chain.json"), true),
        ("paut-reject", fixture!("paut-reject.chain.json"), false),
        ("paut-recurrent", fixture!("paut-recurrent.chain.json"), true),
    ];
    for (name, text, expected) in chains {
        let mc = parse_chain(text)?.chain;
        let general = accepts(&a, &mc, budget)?.accepted;
        let layered = accepts_layered(&a, &mc, budget)?.accepted;
        if general != expected || layered != expected {
            return Ok(Some(format!("{name}: general {general}, layered {layered}, expected {expected}")));
        }
    }
    Ok(None)
}

fn determinacy(seed: u64, count: u64, budget: &Budget) -> Check {
    let dual_budget = Budget {
        max_priority: budget.max_priority.saturating_add(1),
        ..*budget
    };
    for s in seed..seed + count {
        let g = random_game(s, &GameShape::default());
        let rep = find_best_dependency(&g, budget)?;
        let dual = find_best_dependency(&g.dual(), &dual_budget)?;
        for v in 0..g.len() {
            if &rep.values[v] + &dual.values[v] != Rational::one() {
                return Ok(Some(format!("seed {s}: values at {} do not sum to 1", g.id(v))));
            }
        }
        for v in g.obligation_configurations() {
            if !(rep.values[v].is_zero() || rep.values[v].is_one()) {
                return Ok(Some(format!("seed {s}: obligation {} has value {}", g.id(v), rep.values[v])));
            }
        }
        if let Some(why) = verify_dependency(&g, &rep.dependency, budget)?.failure(&g) {
            return Ok(Some(format!("seed {s}: {why}")));
        }
    }
    Ok(None)
}

fn oracle_equivalence(seed: u64, count: u64, budget: &Budget) -> Check {
    let shape = GameShape {
        max_obligations: 0,
        ..GameShape::default()
    };
    for s in seed..seed + count {
        let g = random_game(s, &shape);
        let fast = solve_parity(&g, budget)?.values;
        if fast != solve_parity_oracle(&g, budget)?.values {
            return Ok(Some(format!("seed {s}: strategy improvement differs from enumeration")));
        }
        if fast != find_best_dependency(&g, budget)?.values {
            return Ok(Some(format!("seed {s}: obligation solver differs without obligations")));
        }
    }
    Ok(None)
}

pub fn run(seed: u64, count: u64, budget: &Budget, format: Format) -> Outcome {
    let checks: Vec<(String, Check)> = vec![
        ("figure 6 values and dependency".into(), fig6(budget)),
        ("figure 6 variants".into(), fig6_variants(budget)),
        ("figure 2 values".into(), fig2(budget)),
        ("figure 1 values".into(), fig1(budget)),
        ("figure 4 empty set versus bottom".into(), fig4(budget)),
        ("figure 5 values and dependency".into(), fig5(budget)),
        ("p-automaton acceptance".into(), automaton(budget)),
        (format!("determinacy on {count} random games"), determinacy(seed, count, budget)),
        (format!("oracle equivalence on {count} random games"), oracle_equivalence(seed, count, budget)),
    ];
    let mut pass = true;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, result) in &checks {
        let detail = match result {
            Ok(None) => None,
            Ok(Some(m)) => Some(m.clone()),
            Err(e) => Some(e.to_string()),
        };
        pass &= detail.is_none();
        match &detail {
            None => text.push_str(&format!("pass  {name}\n")),
            Some(d) => text.push_str(&format!("FAIL  {name}: {d}\n")),
        }
        rows.push(json!({ "check": name, "pass": detail.is_none(), "detail": detail }));
    }
    Outcome {
        text: emit(format, &json!({ "pass": pass, "seed": seed, "checks": rows }), text),
        code: if pass { 0 } else { 4 },
    }
}
