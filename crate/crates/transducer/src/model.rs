use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use origin_automata::{Nfa, Symbol, Word};
use serde::{Deserialize, Serialize};

use crate::TransducerError;

/// Reading class of a state: left-reading states read the cell to the left
/// of the head, right-reading states the cell to the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Class {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    /// Class a transition with this direction must land in.
    pub fn target_class(self) -> Class {
        match self {
            Dir::Left => Class::L,
            Dir::Right => Class::R,
        }
    }
}

/// What a transition reads: an end marker or an input letter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Read {
    Start,
    Letter(Symbol),
    End,
}

impl fmt::Display for Read {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Read::Start => write!(f, "^"),
            Read::Letter(s) => write!(f, "{s}"),
            Read::End => write!(f, "$"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateInfo {
    pub name: String,
    pub class: Class,
}

#[derive(Clone, Debug)]
pub struct Transition {
    pub from: usize,
    pub read: Read,
    pub to: usize,
    pub dir: Dir,
    pub output: Arc<Nfa<Symbol>>,
}

/// A two-way transducer with regular outputs.
///
/// All output automata are over `output_alphabet`. At most one transition
/// exists per `(from, read, to, dir)`; adding a second one unions the
/// output languages.
#[derive(Clone, Debug)]
pub struct TwoWayTransducer {
    input_alphabet: Vec<Symbol>,
    output_alphabet: Vec<Symbol>,
    states: Vec<StateInfo>,
    initial: BTreeSet<usize>,
    final_states: BTreeSet<usize>,
    transitions: Vec<Transition>,
    by_key: HashMap<(usize, Read, usize, Dir), usize>,
    by_source: HashMap<(usize, Read), Vec<usize>>,
}

/// Origin of a step taken from configuration `(q, i)`: the index of the
/// cell that is read.
pub fn origin_of_step(class: Class, position: usize) -> usize {
    match class {
        Class::R => position,
        Class::L => position - 1,
    }
}

impl TwoWayTransducer {
    pub fn new(input_alphabet: Vec<Symbol>, output_alphabet: Vec<Symbol>) -> Self {
        TwoWayTransducer {
            input_alphabet,
            output_alphabet,
            states: Vec::new(),
            initial: BTreeSet::new(),
            final_states: BTreeSet::new(),
            transitions: Vec::new(),
            by_key: HashMap::new(),
            by_source: HashMap::new(),
        }
    }

    pub fn input_alphabet(&self) -> &[Symbol] {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &[Symbol] {
        &self.output_alphabet
    }

    pub fn states(&self) -> &[StateInfo] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn class(&self, q: usize) -> Class {
        self.states[q].class
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q].name
    }

    pub fn state_by_name(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn final_states(&self) -> &BTreeSet<usize> {
        &self.final_states
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.final_states.contains(&q)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Transitions leaving `q` on `read`.
    pub fn transitions_on(&self, q: usize, read: &Read) -> impl Iterator<Item = &Transition> + '_ {
        self.transition_ids_on(q, read).iter().map(|&i| &self.transitions[i])
    }

    pub fn transition_ids_on(&self, q: usize, read: &Read) -> &[usize] {
        self.by_source
            .get(&(q, read.clone()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn add_state(&mut self, name: impl Into<String>, class: Class) -> usize {
        self.states.push(StateInfo {
            name: name.into(),
            class,
        });
        self.states.len() - 1
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial.insert(q);
    }

    pub fn set_final(&mut self, q: usize) {
        self.final_states.insert(q);
    }

    /// Adds a transition, or unions `output` into the existing one with the
    /// same endpoints, letter and direction.
    pub fn add_transition(
        &mut self,
        from: usize,
        read: Read,
        to: usize,
        dir: Dir,
        output: Nfa<Symbol>,
    ) -> Result<(), TransducerError> {
        let key = (from, read.clone(), to, dir);
        if let Some(&i) = self.by_key.get(&key) {
            let merged = self.transitions[i].output.union(&output)?;
            self.transitions[i].output = Arc::new(merged);
            return Ok(());
        }
        self.by_key.insert(key, self.transitions.len());
        self.by_source
            .entry((from, read.clone()))
            .or_default()
            .push(self.transitions.len());
        self.transitions.push(Transition {
            from,
            read,
            to,
            dir,
            output: Arc::new(output),
        });
        Ok(())
    }

    /// Adds a transition whose output language is the finite set `words`.
    pub fn add_words(
        &mut self,
        from: usize,
        read: Read,
        to: usize,
        dir: Dir,
        words: &[Word],
    ) -> Result<(), TransducerError> {
        let nfa = self.finite_language(words)?;
        self.add_transition(from, read, to, dir, nfa)
    }

    pub fn finite_language(&self, words: &[Word]) -> Result<Nfa<Symbol>, TransducerError> {
        for w in words {
            if let Some(bad) = w.iter().find(|s| !self.output_alphabet.contains(s)) {
                return Err(TransducerError::UnknownOutput(bad.to_string()));
            }
        }
        Ok(Nfa::from_words(self.output_alphabet.clone(), words)?)
    }

    /// Copy of this transducer with the transition at `index` removed.
    pub fn without_transition(&self, index: usize) -> TwoWayTransducer {
        let mut out = TwoWayTransducer::new(self.input_alphabet.clone(), self.output_alphabet.clone());
        out.states = self.states.clone();
        out.initial = self.initial.clone();
        out.final_states = self.final_states.clone();
        for (i, t) in self.transitions.iter().enumerate() {
            if i != index {
                out.add_transition(t.from, t.read.clone(), t.to, t.dir, (*t.output).clone())
                    .expect("copied transition is well formed");
            }
        }
        out
    }

    /// Checks the structural invariants and returns every violation found.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = Vec::new();
        for &q in &self.initial {
            if self.states[q].class != Class::R {
                issues.push(format!("initial state {} is not right-reading", self.states[q].name));
            }
        }
        let mut names = BTreeSet::new();
        for s in &self.states {
            if !names.insert(&s.name) {
                issues.push(format!("state name {} used twice", s.name));
            }
        }
        for s in &self.input_alphabet {
            if matches!(s.as_atom(), Some("^") | Some("$")) {
                issues.push(format!("input alphabet contains the marker token {s}"));
            }
        }
        for t in &self.transitions {
            let label = format!(
                "transition {} -{}-> {} ({:?})",
                self.states[t.from].name, t.read, self.states[t.to].name, t.dir
            );
            if t.read == Read::Start && t.dir == Dir::Left {
                issues.push(format!("{label}: moves left on the start marker"));
            }
            if t.read == Read::End && t.dir == Dir::Right {
                issues.push(format!("{label}: moves right on the end marker"));
            }
            if self.states[t.to].class != t.dir.target_class() {
                issues.push(format!("{label}: target class does not match direction"));
            }
            if let Read::Letter(a) = &t.read {
                if !self.input_alphabet.contains(a) {
                    issues.push(format!("{label}: reads a symbol outside the input alphabet"));
                }
            }
            if t.output.alphabet() != self.output_alphabet.as_slice() {
                issues.push(format!("{label}: output automaton uses a different alphabet"));
            }
            if t.output.is_empty() {
                issues.push(format!("{label}: empty output language"));
            }
        }
        issues
    }

    pub fn validated(self) -> Result<Self, TransducerError> {
        let issues = self.validate();
        if issues.is_empty() {
            Ok(self)
        } else {
            Err(TransducerError::Invalid(issues))
        }
    }

    /// True iff no output language contains the empty word.
    pub fn is_busy(&self) -> bool {
        self.transitions.iter().all(|t| !t.output.accepts_indices(&[]))
    }

    /// Every read that can label a transition: the markers and all letters.
    pub fn reads(&self) -> Vec<Read> {
        let mut out = vec![Read::Start];
        out.extend(self.input_alphabet.iter().cloned().map(Read::Letter));
        out.push(Read::End);
        out
    }
}
