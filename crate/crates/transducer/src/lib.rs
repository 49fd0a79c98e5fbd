//! Two-way nondeterministic transducers whose transitions carry regular
//! output languages, their origin semantics, and a bounded brute-force
//! enumerator of synchronized pairs used as a reference oracle.

pub mod fixtures;
mod forms;
mod json;
mod machine;
mod model;
mod oracle;
pub mod random;

pub use forms::{lift_input, single_letter_form};
pub use json::{tokenize, TransducerDoc};
pub use machine::{Cell, FramedWord, Move, TwoWayMachine};
pub use model::{origin_of_step, Class, Dir, Read, StateInfo, Transition, TwoWayTransducer};
pub use oracle::{
    bounded_containment, enumerate_framed, enumerate_framed_with_filler, enumerate_sync_pairs, find_run, inputs_up_to, words_up_to, Configuration, Run,
    RunStep, SyncPair,
};

use origin_automata::AutomataError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransducerError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("symbol {0} is not in the input alphabet")]
    UnknownInput(String),
    #[error("output word uses a symbol outside the output alphabet: {0}")]
    UnknownOutput(String),
    #[error("malformed transducer document: {0}")]
    Malformed(String),
    #[error("invalid transducer: {}", .0.join("; "))]
    Invalid(Vec<String>),
}
