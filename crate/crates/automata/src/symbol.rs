use std::fmt;

use serde::{Deserialize, Serialize};

use crate::AutomataError;

/// An alphabet letter. Plain letters are atoms; product alphabets use tuples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    Bool(bool),
    Atom(String),
    Tuple(Vec<Symbol>),
}

pub type Word = Vec<Symbol>;

impl Symbol {
    pub fn atom(s: impl Into<String>) -> Self {
        Symbol::Atom(s.into())
    }

    pub fn tuple(parts: impl IntoIterator<Item = Symbol>) -> Self {
        Symbol::Tuple(parts.into_iter().collect())
    }

    /// Number of components; atoms and booleans have arity 1.
    pub fn arity(&self) -> usize {
        match self {
            Symbol::Tuple(parts) => parts.len(),
            _ => 1,
        }
    }

    pub fn component(&self, i: usize) -> Option<&Symbol> {
        match self {
            Symbol::Tuple(parts) => parts.get(i),
            other if i == 0 => Some(other),
            _ => None,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Symbol::Atom(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Symbol::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Bool(b) => write!(f, "{}", u8::from(*b)),
            Symbol::Atom(s) => write!(f, "{s}"),
            Symbol::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::Atom(s.to_string())
    }
}

impl From<bool> for Symbol {
    fn from(b: bool) -> Self {
        Symbol::Bool(b)
    }
}

/// Splits a string into one atom per character.
pub fn word_from_chars(s: &str) -> Word {
    s.chars().map(|c| Symbol::Atom(c.to_string())).collect()
}

/// Position-wise tupling of equal-length words.
pub fn convolve(words: &[Word]) -> Result<Word, AutomataError> {
    let Some(first) = words.first() else {
        return Ok(Vec::new());
    };
    let len = first.len();
    if let Some(bad) = words.iter().find(|w| w.len() != len) {
        return Err(AutomataError::LengthMismatch {
            expected: len,
            found: bad.len(),
        });
    }
    Ok((0..len)
        .map(|i| Symbol::Tuple(words.iter().map(|w| w[i].clone()).collect()))
        .collect())
}
