//! `obg`: solve, certify and export obligation games from JSON documents.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict or a bad
//! certificate, 2 input error, 3 budget exceeded, 4 internal invariant
//! violation.

mod commands;
mod render;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use obligation_games::{Budget, Error};

#[derive(Debug, Parser)]
#[command(name = "obg", version, about = "Exact solver for stochastic parity games with obligations")]
struct Cli {
    /// Output format for reports (DOT export ignores it).
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Enumeration budgets; every flag can also be set through the environment.
#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, global = true, env = "OBG_BUDGET_MAX_OBLIGATIONS", value_parser = clap::value_parser!(u64).range(1..))]
    max_obligations: Option<u64>,
    #[arg(long, global = true, env = "OBG_BUDGET_MAX_PRIORITY", value_parser = clap::value_parser!(u64).range(1..))]
    max_priority: Option<u64>,
    #[arg(long, global = true, env = "OBG_BUDGET_MAX_STRATEGY_PAIRS", value_parser = clap::value_parser!(u64).range(1..))]
    max_strategy_pairs: Option<u64>,
    #[arg(long, global = true, env = "OBG_BUDGET_MAX_GAMMA_SOLVES", value_parser = clap::value_parser!(u64).range(1..))]
    max_gamma_solves: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_obligations: self.max_obligations.unwrap_or(d.max_obligations),
            max_priority: self.max_priority.unwrap_or(d.max_priority),
            max_strategy_pairs: self.max_strategy_pairs.unwrap_or(d.max_strategy_pairs),
            max_gamma_solves: self.max_gamma_solves.unwrap_or(d.max_gamma_solves),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Values, pre-values, certifying dependency and strategies of a game.
    SolveGame { game: PathBuf },
    /// Values of a chain document annotated with priorities and obligations.
    SolveChain { chain: PathBuf },
    /// Checks whether a dependency is good for a game.
    Verify { game: PathBuf, dependency: PathBuf },
    /// Decides `value(config) cmp threshold` on a game or chain, certified on the game and its dual.
    Decide {
        game: PathBuf,
        #[arg(long)]
        config: String,
        #[arg(long, default_value = ">=")]
        cmp: String,
        #[arg(long)]
        threshold: String,
    },
    /// p-automaton queries.
    Paut {
        #[command(subcommand)]
        query: PautCommand,
    },
    /// Graphviz rendering of a game, a chain, or the product of a chain with an automaton.
    ExportDot {
        input: PathBuf,
        /// Render the product of the chain `input` with this automaton.
        #[arg(long)]
        automaton: Option<PathBuf>,
    },
    /// Cross-checks the solvers against the brute-force oracle (and, on
    /// chains, against Monte-Carlo estimates).
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 256)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in figure reproductions plus randomized determinacy and oracle suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances per suite.
        #[arg(long, default_value_t = 200)]
        count: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PautCommand {
    /// Whether the automaton accepts the chain.
    Accepts {
        automaton: PathBuf,
        chain: PathBuf,
        /// Use the bottom-up solve (uniform automata only).
        #[arg(long)]
        layered: bool,
    },
    /// Whether the automaton is uniform.
    Uniform { automaton: PathBuf },
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Solver(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Solver(Error::Budget { .. }) => 3,
            Failure::Solver(Error::Internal(_)) => 4,
            Failure::Solver(Error::NotGood(_)) => 1,
            Failure::Solver(_) => 2,
        }
    }
}

/// What a command produced: the rendered report and its verdict.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.budget();
    let result = match &cli.command {
        Command::SolveGame { game } => commands::solve_game(game, &budget, cli.format),
        Command::SolveChain { chain } => commands::solve_chain(chain, &budget, cli.format),
        Command::Verify { game, dependency } => commands::verify(game, dependency, &budget, cli.format),
        Command::Decide {
            game,
            config,
            cmp,
            threshold,
        } => commands::decide(game, config, cmp, threshold, &budget, cli.format),
        Command::Paut { query } => match query {
            PautCommand::Accepts {
                automaton,
                chain,
                layered,
            } => commands::paut_accepts(automaton, chain, *layered, &budget, cli.format),
            PautCommand::Uniform { automaton } => commands::paut_uniform(automaton, cli.format),
        },
        Command::ExportDot { input, automaton } => commands::export_dot(input, automaton.as_deref()),
        Command::Oracle {
            input,
            samples,
            horizon,
            seed,
        } => commands::oracle(input, *samples, *horizon, *seed, &budget, cli.format),
        Command::Selftest { seed, count } => Ok(selftest::run(*seed, *count, &budget, cli.format)),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Solver(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
