//! Graphviz export. Diamonds are Player 0, boxes Player 1, circles random
//! configurations; obligation configurations get a double border.

use std::fmt::Write;

use crate::format::ChainFile;
use crate::model::{Obligation, ObligationGame, Owner, Priority};
use crate::rational::Comparator;

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

fn obligation_label(o: &Obligation) -> String {
    let symbol = match o.comparator {
        Comparator::AtLeast => "≥",
        Comparator::MoreThan => ">",
    };
    format!("{symbol}{}", o.threshold)
}

fn node_line(out: &mut String, id: &str, head: &str, shape: &str, priority: Option<Priority>, obligation: Option<&Obligation>) {
    let mut label = head.to_string();
    if let Some(p) = priority {
        write!(label, " ({p})").unwrap();
    }
    let mut extra = "";
    if let Some(o) = obligation {
        write!(label, "\n{}", obligation_label(o)).unwrap();
        extra = ", peripheries=2";
    }
    writeln!(out, "  {} [shape={shape}, label={}{extra}];", quote(id), quote(&label)).unwrap();
}

/// DOT text for a game; nodes and edges in index order.
pub fn game_to_dot(game: &ObligationGame) -> String {
    let mut out = String::from("digraph game {\n");
    for v in 0..game.len() {
        let shape = match game.owner(v) {
            Owner::Player0 => "diamond",
            Owner::Player1 => "box",
            Owner::Random => "circle",
        };
        node_line(&mut out, game.id(v), game.id(v), shape, Some(game.priority(v)), game.obligation(v));
    }
    for v in 0..game.len() {
        for &u in game.successors(v) {
            let from = quote(game.id(v));
            let to = quote(game.id(u));
            if game.owner(v) == Owner::Random {
                writeln!(out, "  {from} -> {to} [label={}];", quote(&game.probability(v, u).to_string())).unwrap();
            } else {
                writeln!(out, "  {from} -> {to};").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT text for a chain document; labels are shown after the priority.
pub fn chain_to_dot(file: &ChainFile) -> String {
    let mc = &file.chain;
    let mut out = String::from("digraph chain {\n");
    for s in 0..mc.len() {
        let mut head = mc.id(s).to_string();
        if !mc.labels(s).is_empty() {
            let labels: Vec<&str> = mc.labels(s).iter().map(String::as_str).collect();
            write!(head, " {{{}}}", labels.join(",")).unwrap();
        }
        let priority = file.priorities.get(&s).copied();
        node_line(&mut out, mc.id(s), &head, "circle", priority, file.obligations.get(&s));
        if s == mc.initial() {
            writeln!(out, "  {} [style=bold];", quote(mc.id(s))).unwrap();
        }
    }
    for s in 0..mc.len() {
        for (t, p) in mc.transitions(s) {
            writeln!(out, "  {} -> {} [label={}];", quote(mc.id(s)), quote(mc.id(*t)), quote(&p.to_string())).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::GameBuilder;
    use crate::rational::Rational;

    #[test]
    fn shapes_and_labels() {
        let mut b = GameBuilder::new();
        let a = b.add("a", Owner::Player0, 0);
        let c = b.add("c\"x", Owner::Random, 1);
        b.edge(a, c).random_edge(c, a, Rational::one());
        b.set_obligation(c, Some(Obligation::at_least(Rational::new(3, 4))));
        let dot = game_to_dot(&b.build().unwrap());
        assert!(dot.contains("\"a\" [shape=diamond, label=\"a (0)\"];"));
        assert!(dot.contains("\"c\\\"x\" [shape=circle, label=\"c\\\"x (1)\\n≥3/4\", peripheries=2];"));
        assert!(dot.contains("\"c\\\"x\" -> \"a\" [label=\"1\"];"));
    }
}
