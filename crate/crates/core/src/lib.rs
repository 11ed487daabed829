//! Exact solver for finite turn-based stochastic parity games with
//! obligation objectives, and p-automaton acceptance of Markov chains.

pub mod budget;
pub mod chain;
pub mod dot;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod linalg;
pub mod model;
pub mod obligation;
pub mod parity;
pub mod pautomata;
pub mod rational;

pub use budget::Budget;
pub use error::{Error, Result};
pub use model::{
    embed_chain_as_game, GameBuilder, LabeledMarkovChain, Obligation, ObligationGame, Owner, Player,
    Priority, PureMemorylessStrategy, Violation,
};
pub use rational::{Comparator, Rational};
