//! JSON and plain-text rendering of reports. JSON maps are key-sorted, so
//! output is byte-for-byte reproducible.

use obligation_games::obligation::{Dependency, GoodnessReport, ObligationValueReport};
use obligation_games::{ObligationGame, PureMemorylessStrategy};
use serde_json::{json, Map, Value};

use crate::Format;

pub fn emit(format: Format, json: &Value, table: String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => table,
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = width[i]))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn dependency_json(game: &ObligationGame, dep: &Dependency) -> Value {
    let named = dep.named(game);
    Value::Object(
        named
            .into_iter()
            .map(|(v, set)| {
                let set = set.map_or(Value::Null, |pairs| pairs.into_iter().map(|(u, m)| json!([u, m])).collect());
                (v, set)
            })
            .collect(),
    )
}

/// `⊥`, `{}` or `{(u,m), ...}` for one obligation configuration.
pub fn dependency_cell(game: &ObligationGame, dep: &Dependency, v: usize) -> String {
    match dep.get(v) {
        None => "⊥".into(),
        Some(set) => {
            let pairs: Vec<String> = set.iter().map(|&(u, m)| format!("({},{m})", game.id(u))).collect();
            format!("{{{}}}", pairs.join(","))
        }
    }
}

/// Strategy choices restricted to the configurations of `game`.
fn strategy_json(game: &ObligationGame, s: &PureMemorylessStrategy) -> Value {
    let mut m = Map::new();
    for (&v, &u) in &s.choice {
        if v < game.len() && u < game.len() {
            m.insert(game.id(v).to_string(), json!(game.id(u)));
        }
    }
    Value::Object(m)
}

pub fn value_report_json(game: &ObligationGame, r: &ObligationValueReport) -> Value {
    let values: Map<String, Value> = (0..game.len())
        .map(|v| (game.id(v).to_string(), json!(r.values[v].to_string())))
        .collect();
    let pre: Map<String, Value> = r
        .pre_values
        .iter()
        .map(|(&v, x)| (game.id(v).to_string(), json!(x.to_string())))
        .collect();
    json!({
        "values": values,
        "pre_values": pre,
        "dependency": dependency_json(game, &r.dependency),
        "strategies": {
            "player0": strategy_json(game, &r.sigma),
            "player1": strategy_json(game, &r.pi),
        },
    })
}

pub fn value_report_table(game: &ObligationGame, r: &ObligationValueReport) -> String {
    let rows: Vec<Vec<String>> = (0..game.len())
        .map(|v| {
            let ob = game.obligation(v);
            vec![
                game.id(v).to_string(),
                r.values[v].to_string(),
                ob.map_or(String::new(), ToString::to_string),
                r.pre_values.get(&v).map_or(String::new(), ToString::to_string),
                if ob.is_some() { dependency_cell(game, &r.dependency, v) } else { String::new() },
            ]
        })
        .collect();
    let mut out = table(&["configuration", "value", "obligation", "pre-value", "dependency"], &rows);
    for (name, s) in [("player 0", &r.sigma), ("player 1", &r.pi)] {
        let choices: Vec<String> = s
            .choice
            .iter()
            .filter(|(&v, &u)| v < game.len() && u < game.len())
            .map(|(&v, &u)| format!("{}->{}", game.id(v), game.id(u)))
            .collect();
        if !choices.is_empty() {
            out.push_str(&format!("{name} strategy: {}\n", choices.join(" ")));
        }
    }
    out
}

pub fn goodness_json(game: &ObligationGame, r: &GoodnessReport) -> Value {
    json!({
        "good": r.is_good(),
        "counterexample": r.failure(game),
        "malformed": r.malformed,
        "condition1": r.condition1(),
        "condition2": r.condition2(),
        "condition3": r.condition3(),
        "dangling": r.dangling.iter().map(|&(v, u)| json!([game.id(v), game.id(u)])).collect::<Vec<_>>(),
        "odd_cycle": r.odd_cycle.as_ref().map(|c| c.iter().map(|&(v, m)| json!([game.id(v), m])).collect::<Vec<_>>()),
        "gamma": r.gamma.iter().map(|c| json!({
            "configuration": game.id(c.configuration),
            "obligation": c.obligation.to_string(),
            "value": c.value.to_string(),
            "met": c.met,
        })).collect::<Vec<_>>(),
    })
}

pub fn goodness_table(game: &ObligationGame, r: &GoodnessReport) -> String {
    let mut out = format!("verdict: {}\n", if r.is_good() { "good" } else { "bad" });
    let mark = |b: bool| if b { "ok" } else { "violated" };
    out.push_str(&format!("condition 1 (relies only on fulfilled obligations): {}\n", mark(r.condition1())));
    out.push_str(&format!("condition 2 (no odd cycle): {}\n", mark(r.condition2())));
    out.push_str(&format!("condition 3 (obligations met in the reach game): {}\n", mark(r.condition3())));
    if !r.gamma.is_empty() {
        let rows: Vec<Vec<String>> = r
            .gamma
            .iter()
            .map(|c| {
                vec![
                    game.id(c.configuration).to_string(),
                    c.obligation.to_string(),
                    c.value.to_string(),
                    if c.met { "yes".into() } else { "no".into() },
                ]
            })
            .collect();
        out.push_str(&table(&["configuration", "obligation", "value", "met"], &rows));
    }
    if let Some(why) = r.failure(game) {
        out.push_str(&format!("counterexample: {why}\n"));
    }
    out
}
