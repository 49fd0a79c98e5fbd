//! Command implementations behind the `origin` binary. Each command
//! returns an [`Outcome`] so it can be driven from tests as well.

mod commands;
pub mod dot;
mod suite;
mod verdict;

pub use commands::{
    busy_mismatches, check_containment, check_equivalence, check_modulo, enumerate, normalize, read_resynchronizer,
    read_transducer, resync_bounded, sorted_pairs,
};
pub use suite::{random_suite, SuiteCase, SuiteReport};
pub use verdict::{pair_doc, CounterexampleDoc, PairDoc, VerdictDoc};

use origin_containment::{ContainmentError, Options};
use origin_normalization::NormalizationError;
use origin_resync::ResyncError;
use origin_transducer::TransducerError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Transducer {
        path: String,
        #[source]
        source: TransducerError,
    },
    #[error(transparent)]
    Resync(#[from] ResyncError),
    #[error(transparent)]
    Containment(#[from] ContainmentError),
    #[error(transparent)]
    Normalization(#[from] NormalizationError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Debug)]
pub struct Bounds {
    pub max_input: usize,
    pub max_out: usize,
    pub state_budget: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_input: 6,
            max_out: 8,
            state_budget: origin_containment::DEFAULT_STATE_BUDGET,
        }
    }
}

impl Bounds {
    /// Defaults with the state budget read from the environment.
    pub fn from_env() -> Self {
        Bounds {
            state_budget: Options::from_env().state_budget.unwrap_or(origin_containment::DEFAULT_STATE_BUDGET),
            ..Bounds::default()
        }
    }

    pub fn options(&self) -> Options {
        Options {
            state_budget: Some(self.state_budget),
            evidence_max_out: self.max_out.max(Options::default().evidence_max_out),
        }
    }
}

/// Exit code and printed text of a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    pub fn failed(stdout: String) -> Self {
        Outcome { code: 1, stdout, stderr: String::new() }
    }

    pub fn error(e: &CliError) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

impl From<Result<Outcome, CliError>> for Outcome {
    fn from(r: Result<Outcome, CliError>) -> Self {
        r.unwrap_or_else(|e| Outcome::error(&e))
    }
}
