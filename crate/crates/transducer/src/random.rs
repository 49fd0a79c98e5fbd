//! Random small transducers with finite output languages, for
//! cross-checking decision procedures against the oracle.

use std::collections::BTreeSet;

use origin_automata::{Symbol, Word};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{Class, Dir, Read, TwoWayTransducer};

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub max_states: usize,
    pub input_size: usize,
    pub output_size: usize,
    pub max_word_len: usize,
    pub max_words: usize,
    /// Probability that a given (source, read, target) triple gets a transition.
    pub density: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            max_states: 3,
            input_size: 2,
            output_size: 2,
            max_word_len: 2,
            max_words: 2,
            density: 0.25,
        }
    }
}

/// Plain description of a finite-output transducer, convenient to mutate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub input_alphabet: Vec<Symbol>,
    pub output_alphabet: Vec<Symbol>,
    pub classes: Vec<Class>,
    pub initial: BTreeSet<usize>,
    pub final_states: BTreeSet<usize>,
    pub transitions: Vec<(usize, Read, usize, BTreeSet<Word>)>,
}

fn letters(prefix: &str, n: usize) -> Vec<Symbol> {
    (0..n)
        .map(|i| Symbol::atom(format!("{}", (prefix.as_bytes()[0] + i as u8) as char)))
        .collect()
}

impl RandomSpec {
    pub fn to_transducer(&self) -> TwoWayTransducer {
        let mut t = TwoWayTransducer::new(self.input_alphabet.clone(), self.output_alphabet.clone());
        for (i, &c) in self.classes.iter().enumerate() {
            t.add_state(format!("q{i}"), c);
        }
        for &q in &self.initial {
            t.set_initial(q);
        }
        for &q in &self.final_states {
            t.set_final(q);
        }
        for (from, read, to, words) in &self.transitions {
            let dir = match self.classes[*to] {
                Class::L => Dir::Left,
                Class::R => Dir::Right,
            };
            let words: Vec<Word> = words.iter().cloned().collect();
            t.add_words(*from, read.clone(), *to, dir, &words)
                .expect("random words are over the output alphabet");
        }
        t
    }

    fn random_words<R: Rng>(&self, rng: &mut R, params: &RandomParams) -> BTreeSet<Word> {
        let count = rng.gen_range(1..=params.max_words);
        (0..count)
            .map(|_| {
                let len = rng.gen_range(0..=params.max_word_len);
                (0..len)
                    .map(|_| self.output_alphabet.choose(rng).expect("non-empty output alphabet").clone())
                    .collect()
            })
            .collect()
    }

    fn legal_triples(&self) -> Vec<(usize, Read, usize)> {
        let mut reads = vec![Read::Start];
        reads.extend(self.input_alphabet.iter().cloned().map(Read::Letter));
        reads.push(Read::End);
        let mut out = Vec::new();
        for p in 0..self.classes.len() {
            for r in &reads {
                for q in 0..self.classes.len() {
                    let forbidden = match (r, self.classes[q]) {
                        (Read::Start, Class::L) => true,
                        (Read::End, Class::R) => true,
                        _ => false,
                    };
                    if !forbidden {
                        out.push((p, r.clone(), q));
                    }
                }
            }
        }
        out
    }

    /// One random edit: drop a transition, add one, or change a language.
    pub fn mutate<R: Rng>(&mut self, rng: &mut R, params: &RandomParams) {
        match rng.gen_range(0..4) {
            0 if !self.transitions.is_empty() => {
                let i = rng.gen_range(0..self.transitions.len());
                self.transitions.remove(i);
            }
            1 if !self.transitions.is_empty() => {
                let i = rng.gen_range(0..self.transitions.len());
                let extra = self.random_words(rng, params);
                self.transitions[i].3.extend(extra);
            }
            2 if !self.transitions.is_empty() => {
                let i = rng.gen_range(0..self.transitions.len());
                self.transitions[i].3 = self.random_words(rng, params);
            }
            _ => self.add_random_transition(rng, params),
        }
    }

    fn add_random_transition<R: Rng>(&mut self, rng: &mut R, params: &RandomParams) {
        let triples = self.legal_triples();
        let (p, r, q) = triples.choose(rng).expect("at least one legal triple").clone();
        let words = self.random_words(rng, params);
        match self.transitions.iter_mut().find(|(a, b, c, _)| (*a, b, *c) == (p, &r, q)) {
            Some(existing) => existing.3.extend(words),
            None => self.transitions.push((p, r, q, words)),
        }
    }
}

pub fn random_spec<R: Rng>(rng: &mut R, params: &RandomParams) -> RandomSpec {
    let n = rng.gen_range(1..=params.max_states);
    let mut classes: Vec<Class> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Class::L } else { Class::R })
        .collect();
    classes[0] = Class::R;
    let mut initial = BTreeSet::from([0]);
    for q in 1..n {
        if classes[q] == Class::R && rng.gen_bool(0.3) {
            initial.insert(q);
        }
    }
    let final_states = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut spec = RandomSpec {
        input_alphabet: letters("a", params.input_size),
        output_alphabet: letters("x", params.output_size),
        classes,
        initial,
        final_states,
        transitions: Vec::new(),
    };
    for (p, r, q) in spec.legal_triples() {
        if rng.gen_bool(params.density) {
            let words = spec.random_words(rng, params);
            spec.transitions.push((p, r, q, words));
        }
    }
    spec
}

pub fn random_transducer<R: Rng>(rng: &mut R, params: &RandomParams) -> TwoWayTransducer {
    random_spec(rng, params).to_transducer()
}

/// A pair over shared alphabets: independent, a mutated copy, or a copy
/// with extra behaviour, in roughly equal proportion.
pub fn random_pair<R: Rng>(rng: &mut R, params: &RandomParams) -> (RandomSpec, RandomSpec) {
    let first = random_spec(rng, params);
    let second = match rng.gen_range(0..3) {
        0 => random_spec(rng, params),
        1 => {
            let mut s = first.clone();
            for _ in 0..rng.gen_range(1..=2) {
                s.mutate(rng, params);
            }
            s
        }
        _ => {
            let mut s = first.clone();
            for _ in 0..rng.gen_range(1..=2) {
                s.add_random_transition(rng, params);
            }
            s
        }
    };
    (first, second)
}
