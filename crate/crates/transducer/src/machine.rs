use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use origin_automata::{Nfa, Symbol};

use crate::model::{Class, Dir, Read, TwoWayTransducer};

/// One cell of a framed input. Marker cells may carry a payload (used by
/// annotated inputs, where the markers hold boundary annotations).
#[derive(Debug, PartialEq, Eq)]
pub enum Cell<'a, L = Symbol> {
    Start(Option<&'a L>),
    Letter(&'a L),
    End(Option<&'a L>),
}

impl<L> Clone for Cell<'_, L> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<L> Copy for Cell<'_, L> {}

impl<'a, L> Cell<'a, L> {
    /// The letter carried by the cell, or the marker payload.
    pub fn payload(&self) -> Option<&'a L> {
        match *self {
            Cell::Start(p) | Cell::End(p) => p,
            Cell::Letter(a) => Some(a),
        }
    }

    /// Same cell with the letter mapped through `f`; marker payloads are dropped.
    pub fn map_letter<'b, M>(&self, f: impl FnOnce(&'a L) -> &'b M) -> Cell<'b, M> {
        match *self {
            Cell::Start(_) => Cell::Start(None),
            Cell::Letter(a) => Cell::Letter(f(a)),
            Cell::End(_) => Cell::End(None),
        }
    }
}

impl Cell<'_, Symbol> {
    pub fn read(&self) -> Read {
        match self {
            Cell::Start(_) => Read::Start,
            Cell::Letter(a) => Read::Letter((*a).clone()),
            Cell::End(_) => Read::End,
        }
    }
}

/// An input word together with optional marker payloads.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FramedWord<L = Symbol> {
    pub start: Option<L>,
    pub letters: Vec<L>,
    pub end: Option<L>,
}

impl<L> FramedWord<L> {
    pub fn plain(letters: Vec<L>) -> Self {
        FramedWord {
            start: None,
            letters,
            end: None,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cell `c` for `c` in `0..=len()+1`.
    pub fn cell(&self, c: usize) -> Cell<'_, L> {
        if c == 0 {
            Cell::Start(self.start.as_ref())
        } else if c == self.letters.len() + 1 {
            Cell::End(self.end.as_ref())
        } else {
            Cell::Letter(&self.letters[c - 1])
        }
    }
}

#[derive(Clone, Debug)]
pub struct Move<S> {
    pub target: S,
    pub dir: Dir,
    pub output: Arc<Nfa<Symbol>>,
}

/// A two-way transducer presented by its successor function, so that
/// constructions with large state spaces can be explored on demand.
pub trait TwoWayMachine {
    type Letter: Clone + Eq + Hash + Ord + Debug;
    type State: Clone + Eq + Hash + Ord + Debug;

    fn output_alphabet(&self) -> &[Symbol];
    fn initial_states(&self, start: Option<&Self::Letter>) -> Vec<Self::State>;
    fn is_final(&self, state: &Self::State, end: Option<&Self::Letter>) -> bool;
    fn class(&self, state: &Self::State) -> Class;
    fn moves(&self, state: &Self::State, cell: Cell<'_, Self::Letter>) -> Vec<Move<Self::State>>;
}

impl TwoWayMachine for TwoWayTransducer {
    type Letter = Symbol;
    type State = usize;

    fn output_alphabet(&self) -> &[Symbol] {
        TwoWayTransducer::output_alphabet(self)
    }

    fn initial_states(&self, _start: Option<&Symbol>) -> Vec<usize> {
        self.initial().iter().copied().collect()
    }

    fn is_final(&self, state: &usize, _end: Option<&Symbol>) -> bool {
        TwoWayTransducer::is_final(self, *state)
    }

    fn class(&self, state: &usize) -> Class {
        TwoWayTransducer::class(self, *state)
    }

    fn moves(&self, state: &usize, cell: Cell<'_>) -> Vec<Move<usize>> {
        self.transitions_on(*state, &cell.read())
            .map(|t| Move {
                target: t.to,
                dir: t.dir,
                output: t.output.clone(),
            })
            .collect()
    }
}

impl<M: TwoWayMachine + ?Sized> TwoWayMachine for &M {
    type Letter = M::Letter;
    type State = M::State;

    fn output_alphabet(&self) -> &[Symbol] {
        (**self).output_alphabet()
    }

    fn initial_states(&self, start: Option<&Self::Letter>) -> Vec<Self::State> {
        (**self).initial_states(start)
    }

    fn is_final(&self, state: &Self::State, end: Option<&Self::Letter>) -> bool {
        (**self).is_final(state, end)
    }

    fn class(&self, state: &Self::State) -> Class {
        (**self).class(state)
    }

    fn moves(&self, state: &Self::State, cell: Cell<'_, Self::Letter>) -> Vec<Move<Self::State>> {
        (**self).moves(state, cell)
    }
}
