//! Finite automata over explicit alphabets: NFAs, DFAs, products, subset
//! construction, emptiness with shortest witnesses, ambiguity and transition
//! monoids. Large automata can be explored lazily through [`LazyNfa`].

mod json;
mod lazy;
mod monoid;
mod nfa;
mod symbol;

pub use json::{NfaDoc, StateName};
pub use lazy::{lazy_emptiness, materialize, Emptiness, LazyNfa};
pub use monoid::MonoidPresentation;
pub use nfa::{Dfa, Nfa};
pub use symbol::{convolve, word_from_chars, Symbol, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("words have different lengths: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("symbol listed twice in alphabet")]
    DuplicateSymbol,
    #[error("symbol not in alphabet")]
    UnknownSymbol,
    #[error("symbol index {0} out of range")]
    SymbolOutOfRange(usize),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("state budget of {limit} exceeded")]
    StateBudgetExceeded { limit: usize },
    #[error("transition monoid requires a complete deterministic automaton")]
    IncompleteDfa,
    #[error("malformed automaton document: {0}")]
    Malformed(String),
}
