use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use origin_cli::{
    check_containment, check_equivalence, check_modulo, enumerate, normalize, random_suite, read_resynchronizer,
    read_transducer, resync_bounded, Bounds, CliError, Outcome,
};

/// Containment and equivalence of two-way transducers under the origin
/// semantics, and containment modulo MSO resynchronizers.
#[derive(Parser)]
#[command(name = "origin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct BoundArgs {
    /// Longest input tried by bounded checks.
    #[arg(long, global = true, default_value_t = 6)]
    max_input: usize,
    /// Longest output tried by bounded checks.
    #[arg(long, global = true, default_value_t = 8)]
    max_out: usize,
    /// Cap on explored search states (default: $ORIGIN_STATE_BUDGET or 1000000).
    #[arg(long, global = true)]
    state_budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Is every origin-tagged pair of A one of B?
    CheckContainment { a: String, b: String },
    /// Do A and B have the same origin semantics?
    CheckEquivalence { a: String, b: String },
    /// Is every pair of A related by the resynchronizer to a pair of B?
    CheckContainmentModulo {
        a: String,
        b: String,
        #[arg(long)]
        resync: String,
    },
    /// Decide whether a resynchronizer is bounded.
    ResyncBounded { resync: String },
    /// Check the normalized form of T against T within bounds.
    Normalize {
        /// Use the busy form, with a fresh letter for empty outputs.
        #[arg(long)]
        busy: bool,
        t: String,
        /// Also list the pairs of the form on this input.
        #[arg(long)]
        input: Option<String>,
    },
    /// List the origin-tagged outputs of T on an input.
    Enumerate {
        t: String,
        #[arg(long, default_value = "")]
        input: String,
        /// Write the origin graphs to this DOT file.
        #[arg(long)]
        dot: Option<String>,
    },
    /// Compare the decision procedure with the oracle on random pairs.
    RandomSuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut bounds = Bounds::from_env();
    bounds.max_input = cli.bounds.max_input;
    bounds.max_out = cli.bounds.max_out;
    if let Some(b) = cli.bounds.state_budget {
        bounds.state_budget = b;
    }
    if bounds.max_out == 0 || bounds.state_budget == 0 {
        return Err(CliError::Usage("bounds must be positive".into()));
    }
    match cli.command {
        Command::CheckContainment { a, b } => check_containment(&read_transducer(&a)?, &read_transducer(&b)?, &bounds),
        Command::CheckEquivalence { a, b } => check_equivalence(&read_transducer(&a)?, &read_transducer(&b)?, &bounds),
        Command::CheckContainmentModulo { a, b, resync } => {
            let r = read_resynchronizer(&resync)?;
            check_modulo(&read_transducer(&a)?, &read_transducer(&b)?, &r, &bounds)
        }
        Command::ResyncBounded { resync } => resync_bounded(&read_resynchronizer(&resync)?),
        Command::Normalize { busy, t, input } => normalize(&read_transducer(&t)?, busy, input.as_deref(), &bounds),
        Command::Enumerate { t, input, dot } => {
            let (outcome, graphs) = enumerate(&read_transducer(&t)?, &input, bounds.max_out)?;
            if let Some(path) = dot {
                std::fs::write(&path, graphs).map_err(|source| CliError::Io { path, source })?;
            }
            Ok(outcome)
        }
        Command::RandomSuite { seed, count, corrupt } => Ok(random_suite(seed, count, &bounds, corrupt)?.0),
    }
}

fn main() -> ExitCode {
    let outcome: Outcome = run(Cli::parse()).into();
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
