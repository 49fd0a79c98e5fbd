//! Removal of lazy U-turns (runs that return to their starting position
//! without producing output) from two-way transducers, so that origin
//! containment can be reduced to the case of busy transducers.
//!
//! Inputs are annotated cell by cell with U-pairs; [`AnnotationChecker`]
//! recognizes the correct annotations, and [`Saturated`] implements the
//! `Shortcut`, `Norm` and `Busy` transducers on annotated inputs.

mod annotated;
mod checker;
mod framed;
mod machines;
mod upairs;

pub use annotated::{annotate, end_marker, project, start_marker, AnnotatedSymbol, UBlock};
pub use checker::{AnnotationChecker, CheckerState};
pub use framed::{framed_intersection, AcceptAll, Framed, FramedAcceptor, FramedGenerator};
pub use machines::{busy, expand_annotated, fresh_hash, normalize, shortcut, Expanded, Saturated, Stage};
pub use upairs::{left_upairs, right_upairs, PairSet, UTurnRules};

use origin_automata::AutomataError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizationError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("the letter {0} standing for empty output is already an output letter")]
    HashCollision(String),
    #[error("malformed annotation: {0}")]
    Malformed(String),
}
