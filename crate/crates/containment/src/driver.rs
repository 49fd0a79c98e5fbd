use std::collections::BTreeSet;

use origin_automata::{AutomataError, Nfa, Symbol, Word};
use origin_normalization::{
    busy, fresh_hash, framed_intersection, project, AnnotatedSymbol, AnnotationChecker, FramedAcceptor, NormalizationError,
};
use origin_transducer::{enumerate_sync_pairs, SyncPair, TwoWayTransducer};
use thiserror::Error;

use crate::bauto::BAutomaton;

/// Default cap on the number of product states explored by the search.
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;
/// Environment variable overriding [`Options::state_budget`].
pub const STATE_BUDGET_VAR: &str = "ORIGIN_STATE_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContainmentError {
    #[error("input alphabets differ")]
    InputAlphabetMismatch,
    #[error(transparent)]
    Normalization(#[from] NormalizationError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub state_budget: Option<usize>,
    /// Largest output length tried when looking for evidence.
    pub evidence_max_out: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            state_budget: Some(DEFAULT_STATE_BUDGET),
            evidence_max_out: 12,
        }
    }
}

impl Options {
    /// Defaults, with the state budget taken from the environment if set.
    pub fn from_env() -> Self {
        let mut options = Options::default();
        if let Some(b) = std::env::var(STATE_BUDGET_VAR).ok().and_then(|v| v.trim().parse().ok()) {
            options.state_budget = Some(b);
        }
        options
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Word,
    /// A pair produced by the first transducer and not by the second one,
    /// if the bounded search found it.
    pub evidence: Option<SyncPair>,
}

impl Counterexample {
    pub fn confirmed(&self) -> bool {
        self.evidence.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Contained,
    NotContained(Counterexample),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// The first transducer is not contained in the second.
    LeftInRight,
    /// The second transducer is not contained in the first.
    RightInLeft,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    NotEquivalent {
        direction: Direction,
        counterexample: Counterexample,
    },
}

/// Decides whether every origin-tagged pair of `t1` is one of `t2`.
pub fn origin_containment(
    t1: &TwoWayTransducer,
    t2: &TwoWayTransducer,
    options: &Options,
) -> Result<Containment, ContainmentError> {
    origin_containment_within(t1, t2, None, options)
}

/// Restricts an acceptor over annotated words to inputs whose projection
/// is accepted by `domain`.
struct Within<'a, A> {
    inner: &'a A,
    domain: &'a Nfa<Symbol>,
}

impl<A: FramedAcceptor<AnnotatedSymbol>> FramedAcceptor<AnnotatedSymbol> for Within<'_, A> {
    type State = (A::State, BTreeSet<usize>);

    fn start(&self, payload: &AnnotatedSymbol) -> Vec<Self::State> {
        let init = self.domain.initial().clone();
        self.inner.start(payload).into_iter().map(|s| (s, init.clone())).collect()
    }

    fn step(&self, (state, set): &Self::State, letter: &AnnotatedSymbol) -> Vec<Self::State> {
        let Some(sym) = self.domain.symbol_index(&letter.base) else {
            return Vec::new();
        };
        let next = self.domain.step_set(set, sym);
        if next.is_empty() {
            return Vec::new();
        }
        self.inner.step(state, letter).into_iter().map(|s| (s, next.clone())).collect()
    }

    fn accepts(&self, (state, set): &Self::State, payload: &AnnotatedSymbol) -> bool {
        set.iter().any(|&q| self.domain.is_accepting(q)) && self.inner.accepts(state, payload)
    }
}

/// Containment restricted to the inputs accepted by `domain`, an automaton
/// over the shared input alphabet.
pub fn origin_containment_within(
    t1: &TwoWayTransducer,
    t2: &TwoWayTransducer,
    domain: Option<&Nfa<Symbol>>,
    options: &Options,
) -> Result<Containment, ContainmentError> {
    if t1.input_alphabet() != t2.input_alphabet() {
        return Err(ContainmentError::InputAlphabetMismatch);
    }
    let outputs: Vec<Symbol> = t1
        .output_alphabet()
        .iter()
        .chain(t2.output_alphabet())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let hash = fresh_hash(&outputs);
    let b1 = busy(t1, 0, hash.clone())?;
    let b2 = busy(t2, 1, hash)?;
    let checker = AnnotationChecker::new(&[t1, t2]);
    let automaton = BAutomaton::new(&b1, &b2);
    let found = match domain {
        Some(domain) => framed_intersection(
            &checker,
            &Within {
                inner: &automaton,
                domain,
            },
            options.state_budget,
        )?,
        None => framed_intersection(&checker, &automaton, options.state_budget)?,
    };
    let Some(word) = found else {
        return Ok(Containment::Contained);
    };
    let input = project(&word.letters);
    let evidence = find_evidence(t1, t2, &input, options.evidence_max_out);
    Ok(Containment::NotContained(Counterexample { input, evidence }))
}

/// A pair of `t1` on `input` missing from `t2`, trying output lengths
/// up to `max_out` in increasing order.
pub fn find_evidence(t1: &TwoWayTransducer, t2: &TwoWayTransducer, input: &[Symbol], max_out: usize) -> Option<SyncPair> {
    (0..=max_out).find_map(|m| {
        let left = enumerate_sync_pairs(t1, input, m);
        let right = enumerate_sync_pairs(t2, input, m);
        left.difference(&right).next().cloned()
    })
}

pub fn origin_equivalence(
    t1: &TwoWayTransducer,
    t2: &TwoWayTransducer,
    options: &Options,
) -> Result<Equivalence, ContainmentError> {
    for (direction, a, b) in [(Direction::LeftInRight, t1, t2), (Direction::RightInLeft, t2, t1)] {
        if let Containment::NotContained(counterexample) = origin_containment(a, b, options)? {
            return Ok(Equivalence::NotEquivalent {
                direction,
                counterexample,
            });
        }
    }
    Ok(Equivalence::Equivalent)
}
