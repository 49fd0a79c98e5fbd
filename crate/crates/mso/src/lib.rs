//! Monadic second-order logic over finite words: syntax, direct
//! evaluation, and compilation to automata over flag-extended alphabets.

mod ast;
mod compile;
mod eval;
pub mod fixtures;
mod parse;

pub use ast::{Formula, FormulaDoc, Kind, MsoFormula};
pub use compile::{compile, flagged_alphabet, mark_and_project};
pub use eval::{all_assignments, encode, evaluate, Assignment};
pub use parse::parse_body;

use origin_automata::AutomataError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MsoError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{op} expects {expected} arguments, found {found}")]
    Arity { op: String, expected: usize, found: usize },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("variable {0} used with the wrong kind")]
    KindMismatch(String),
    #[error("variable {0} declared twice")]
    DuplicateVariable(String),
    #[error("no value for free variable {0}")]
    Unassigned(String),
    #[error("position {pos} of {var} is outside the word")]
    OutOfRange { var: String, pos: usize },
    #[error("no flag track {0}")]
    NoSuchTrack(usize),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}
