//! p-automata: alternating automata over Markov chains whose transitions
//! mix Boolean structure with probability-bounded terms. Acceptance is
//! decided on a product obligation game.

mod automaton;
mod formula;
mod graph;
mod layered;
mod product;

pub use automaton::{letters, parse_automaton, write_automaton, PAutomaton, StateDef};
pub use formula::{closure_of, Formula};
pub use graph::{build_automaton_graph, is_uniform, AutomatonGraph, Uniformity};
pub use layered::{accepts_layered, LayeredAcceptance};
pub use product::{accepts, build_product_game, Acceptance, ProductGame};
