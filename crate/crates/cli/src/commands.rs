//! One function per subcommand.

use std::path::Path;

use obligation_games::chain::{monte_carlo_estimate, parity_measure, Objective, Z_99};
use obligation_games::dot::{chain_to_dot, game_to_dot};
use obligation_games::format::{document_kind, parse_chain, parse_dependency, parse_game, ChainFile};
use obligation_games::obligation::{decide_value, find_best_dependency, verify_dependency};
use obligation_games::parity::{solve_parity, solve_parity_oracle};
use obligation_games::pautomata::{accepts, accepts_layered, build_product_game, is_uniform, parse_automaton, PAutomaton};
use obligation_games::{Budget, Comparator, Error, ObligationGame, Rational};
use serde_json::{json, Value};

use crate::render::{self, emit, table};
use crate::{Failure, Format, Outcome};

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses a file; input errors are reported with the file name.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, Error>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Budget { .. } | Error::Internal(_) => Failure::Solver(e),
        e => Failure::Input(format!("{}: {e}", path.display())),
    })
}

fn load_game(path: &Path) -> Result<ObligationGame, Failure> {
    load(path, parse_game)
}

fn load_chain_game(path: &Path) -> Result<(ChainFile, ObligationGame), Failure> {
    let file = load(path, parse_chain)?;
    let game = file
        .to_game()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((file, game))
}

/// A game document, or a chain document embedded as a game.
fn load_any_game(path: &Path) -> Result<ObligationGame, Failure> {
    match load(path, document_kind)?.as_str() {
        "chain" => Ok(load_chain_game(path)?.1),
        _ => load_game(path),
    }
}

fn load_automaton(path: &Path) -> Result<PAutomaton, Failure> {
    load(path, parse_automaton)
}

fn verdict(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

pub fn solve_game(path: &Path, budget: &Budget, format: Format) -> Result<Outcome, Failure> {
    let game = load_game(path)?;
    let r = find_best_dependency(&game, budget)?;
    Ok(Outcome {
        text: emit(format, &render::value_report_json(&game, &r), render::value_report_table(&game, &r)),
        code: 0,
    })
}

pub fn solve_chain(path: &Path, budget: &Budget, format: Format) -> Result<Outcome, Failure> {
    let (_, game) = load_chain_game(path)?;
    let r = find_best_dependency(&game, budget)?;
    Ok(Outcome {
        text: emit(format, &render::value_report_json(&game, &r), render::value_report_table(&game, &r)),
        code: 0,
    })
}

pub fn verify(game: &Path, dependency: &Path, budget: &Budget, format: Format) -> Result<Outcome, Failure> {
    let game = load_game(game)?;
    let dep = load(dependency, |t| parse_dependency(&game, t))?;
    let r = verify_dependency(&game, &dep, budget)?;
    Ok(Outcome {
        text: emit(format, &render::goodness_json(&game, &r), render::goodness_table(&game, &r)),
        code: verdict(r.is_good()),
    })
}

pub fn decide(path: &Path, config: &str, cmp: &str, threshold: &str, budget: &Budget, format: Format) -> Result<Outcome, Failure> {
    let game = load_any_game(path)?;
    let v = game
        .index_of(config)
        .ok_or_else(|| Failure::Input(format!("{}: no configuration {config:?}", path.display())))?;
    let cmp: Comparator = cmp.parse().map_err(Failure::Input)?;
    let r: Rational = threshold
        .parse()
        .map_err(|e| Failure::Input(format!("threshold {threshold:?}: {e}")))?;
    if !r.is_probability() {
        return Err(Failure::Input(format!("threshold {r} is not in [0,1]")));
    }
    let d = decide_value(&game, v, cmp, &r, budget)?;
    let dual = game.dual();
    let json = json!({
        "configuration": config,
        "query": format!("{cmp} {r}"),
        "holds": d.holds,
        "value": d.value.to_string(),
        "dual_value": d.dual_report.values[v].to_string(),
        "dependency": render::dependency_json(&game, &d.report.dependency),
        "dual_dependency": render::dependency_json(&dual, &d.dual_report.dependency),
    });
    let mut text = format!(
        "value({config}) = {} {cmp} {r}: {}\nvalue in the dual game: {}\n",
        d.value,
        d.holds,
        d.dual_report.values[v]
    );
    for (name, g, rep) in [("dependency", &game, &d.report), ("dual dependency", &dual, &d.dual_report)] {
        let cells: Vec<String> = g
            .obligation_configurations()
            .into_iter()
            .map(|u| format!("{}:{}", g.id(u), render::dependency_cell(g, &rep.dependency, u)))
            .collect();
        text.push_str(&format!("{name}: {}\n", cells.join(" ")));
    }
    Ok(Outcome {
        text: emit(format, &json, text),
        code: verdict(d.holds),
    })
}

pub fn paut_accepts(automaton: &Path, chain: &Path, layered: bool, budget: &Budget, format: Format) -> Result<Outcome, Failure> {
    let a = load_automaton(automaton)?;
    let mc = load(chain, parse_chain)?.chain;
    let (accepted, value, size) = if layered {
        let size = build_product_game(&a, &mc)?.game.len();
        let r = accepts_layered(&a, &mc, budget).map_err(|e| match e {
            Error::NotLayerable(m) => Failure::Input(format!("{}: {m}", automaton.display())),
            e => Failure::Solver(e),
        })?;
        (r.accepted, r.value, size)
    } else {
        let r = accepts(&a, &mc, budget)?;
        let value = r.report.values[r.product.initial].clone();
        (r.accepted, value, r.product.game.len())
    };
    let json = json!({
        "accepted": accepted,
        "value": value.to_string(),
        "method": if layered { "layered" } else { "general" },
        "product_configurations": size,
    });
    let text = format!("accepted: {accepted}\nvalue of the initial configuration: {value}\nproduct configurations: {size}\n");
    Ok(Outcome {
        text: emit(format, &json, text),
        code: verdict(accepted),
    })
}

pub fn paut_uniform(automaton: &Path, format: Format) -> Result<Outcome, Failure> {
    let a = load_automaton(automaton)?;
    let u = is_uniform(&a);
    let witness: Option<Vec<String>> = u.witness.map(|w| w.iter().map(ToString::to_string).collect());
    let json = json!({ "uniform": u.uniform, "witness": witness });
    let mut text = format!("uniform: {}\n", u.uniform);
    if let Some(w) = &witness {
        text.push_str(&format!("mixed component: {}\n", w.join(", ")));
    }
    Ok(Outcome {
        text: emit(format, &json, text),
        code: verdict(u.uniform),
    })
}

pub fn export_dot(input: &Path, automaton: Option<&Path>) -> Result<Outcome, Failure> {
    let kind = load(input, document_kind)?;
    let text = match (kind.as_str(), automaton) {
        ("game", None) => game_to_dot(&load_game(input)?),
        ("chain", None) => chain_to_dot(&load(input, parse_chain)?),
        ("chain", Some(a)) => {
            let a = load_automaton(a)?;
            let mc = load(input, parse_chain)?.chain;
            game_to_dot(&build_product_game(&a, &mc)?.game)
        }
        (k, _) => {
            return Err(Failure::Input(format!(
                "{}: cannot render a {k} document{}",
                input.display(),
                if automaton.is_some() { " as a product; expected a chain" } else { "" }
            )))
        }
    };
    Ok(Outcome { text, code: 0 })
}

/// Exact comparisons decide the exit code; Monte-Carlo intervals are only reported.
pub fn oracle(input: &Path, samples: u64, horizon: usize, seed: u64, budget: &Budget, format: Format) -> Result<Outcome, Failure> {
    let kind = load(input, document_kind)?;
    let mut checks: Vec<(String, bool, String)> = Vec::new();
    let mut estimates: Vec<Value> = Vec::new();
    let mut estimate_rows = Vec::new();
    let game = match kind.as_str() {
        "game" => load_game(input)?,
        "chain" => {
            let (file, game) = load_chain_game(input)?;
            let exact = parity_measure(&file.chain, game.priorities());
            let solved = solve_parity(&game.without_obligations(), budget)?.values;
            checks.push((
                "chain measure = game solver".into(),
                exact == solved,
                String::new(),
            ));
            let objective = Objective::Parity(game.priorities().to_vec());
            for s in 0..file.chain.len() {
                let e = monte_carlo_estimate(&file.chain, s, &objective, samples, horizon, seed.wrapping_add(s as u64));
                let inside = e.contains(exact[s].to_f64());
                estimates.push(json!({
                    "location": file.chain.id(s),
                    "exact": exact[s].to_string(),
                    "mean": e.mean,
                    "interval": [e.low, e.high],
                    "inside": inside,
                }));
                estimate_rows.push(vec![
                    file.chain.id(s).to_string(),
                    exact[s].to_string(),
                    format!("{:.5}", e.mean),
                    format!("[{:.5}, {:.5}]", e.low, e.high),
                    if inside { "yes".into() } else { "no".into() },
                ]);
            }
            game
        }
        k => return Err(Failure::Input(format!("{}: the oracle needs a game or a chain, got {k}", input.display()))),
    };
    let plain = game.without_obligations();
    let fast = solve_parity(&plain, budget)?;
    let slow = solve_parity_oracle(&plain, budget)?;
    checks.push(("strategy improvement = enumeration".into(), fast.values == slow.values, String::new()));
    if game.has_obligations() {
        let rep = find_best_dependency(&game, budget)?;
        let dual_budget = Budget {
            max_priority: budget.max_priority.saturating_add(1),
            ..*budget
        };
        let dual = find_best_dependency(&game.dual(), &dual_budget)?;
        let broken: Vec<String> = (0..game.len())
            .filter(|&v| &rep.values[v] + &dual.values[v] != Rational::one())
            .map(|v| game.id(v).to_string())
            .collect();
        checks.push(("values of game and dual sum to 1".into(), broken.is_empty(), broken.join(" ")));
        let two_valued = game
            .obligation_configurations()
            .into_iter()
            .all(|v| rep.values[v].is_zero() || rep.values[v].is_one());
        checks.push(("obligation values are 0 or 1".into(), two_valued, String::new()));
        let good = verify_dependency(&game, &rep.dependency, budget)?.is_good();
        checks.push(("computed dependency is good".into(), good, String::new()));
    }
    let all = checks.iter().all(|c| c.1);
    let json = json!({
        "agree": all,
        "checks": checks.iter().map(|(n, ok, d)| json!({"check": n, "agree": ok, "detail": d})).collect::<Vec<_>>(),
        "monte_carlo": { "samples": samples, "horizon": horizon, "seed": seed, "z": Z_99, "estimates": estimates },
    });
    let mut text: String = checks
        .iter()
        .map(|(n, ok, d)| format!("{} {n}{}\n", if *ok { "agree  " } else { "DIFFER " }, if d.is_empty() { String::new() } else { format!(": {d}") }))
        .collect();
    if !estimate_rows.is_empty() {
        text.push_str(&format!("Monte-Carlo, {samples} runs of length {horizon}, 99% Wilson intervals:\n"));
        text.push_str(&table(&["location", "exact", "estimate", "interval", "inside"], &estimate_rows));
    }
    Ok(Outcome {
        text: emit(format, &json, text),
        code: if all { 0 } else { 4 },
    })
}
