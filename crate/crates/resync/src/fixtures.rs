//! Resynchronizers and transducers used by tests and the CLI.

use origin_automata::{word_from_chars, Symbol};
use origin_transducer::{Class, Dir, Read, SyncPair, TwoWayTransducer};

use crate::resynchronizer::Resynchronizer;

fn build(r: Result<Resynchronizer, crate::ResyncError>) -> Resynchronizer {
    r.expect("fixture formulas are well formed")
}

/// Keeps every origin.
pub fn identity() -> Resynchronizer {
    build(Resynchronizer::universal(&[], &[]).with_gamma("(eq y z)"))
}

/// Relates any two pairs with the same input and output.
pub fn universal() -> Resynchronizer {
    Resynchronizer::universal(&[], &[])
}

/// Moves each origin one position to the left or to the right.
pub fn plus_minus_one() -> Resynchronizer {
    build(Resynchronizer::universal(&[], &[]).with_gamma("(or (succ z y) (succ y z))"))
}

/// Moves origins at the first position to the last one.
pub fn first_to_last() -> Resynchronizer {
    build(Resynchronizer::universal(&[], &[]).with_gamma("(and (first y) (last z))"))
}

/// Moves an origin right when an even number of `b`s precede its output
/// position, and left otherwise. The output parameter `O` holds the odd
/// positions.
pub fn b_parity() -> Resynchronizer {
    let r = Resynchronizer::universal(&[], &["O"]);
    let beta = origin_mso::fixtures::b_parity();
    build(
        Resynchronizer { beta, ..r }
            .with_gamma_for("*/0", "(succ y z)")
            .and_then(|r| r.with_gamma_for("*/1", "(succ z y)")),
    )
}

/// Only monotone origin sequences.
pub fn monotone() -> Resynchronizer {
    build(
        Resynchronizer::universal(&[], &[])
            .with_gamma("(eq y z)")
            .and_then(|r| r.with_delta("(not (lt z' z))")),
    )
}

fn pair(input: &str, output: &str, origins: &[usize]) -> SyncPair {
    SyncPair::new(
        word_from_chars(input),
        word_from_chars(output).into_iter().zip(origins.iter().copied()).collect(),
    )
}

/// The solid and dashed pairs of the `±1` picture on input `input`.
pub fn displaced_pairs() -> (SyncPair, SyncPair) {
    (
        pair("input", "output", &[1, 2, 2, 4, 5, 5]),
        pair("input", "output", &[2, 1, 3, 3, 4, 4]),
    )
}

/// The solid and dashed pairs of the parity picture.
pub fn parity_pairs() -> (SyncPair, SyncPair) {
    (
        pair("input", "abaaab", &[1, 2, 2, 4, 5, 5]),
        pair("input", "abaaab", &[2, 3, 1, 3, 4, 4]),
    )
}

/// Over `{a}`, on inputs of length at least `min_len`: outputs one `a` at
/// position `k`.
pub fn emitter_at(k: usize, min_len: usize) -> TwoWayTransducer {
    let sigma = vec![Symbol::atom("a")];
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let top = min_len.max(k);
    let states: Vec<usize> = (0..=top).map(|i| t.add_state(format!("c{i}"), Class::R)).collect();
    t.set_initial(states[0]);
    t.set_final(states[top]);
    let a = Read::Letter(Symbol::atom("a"));
    for i in 0..top {
        let words = if i + 1 == k { vec![word_from_chars("a")] } else { vec![vec![]] };
        t.add_words(states[i], a.clone(), states[i + 1], Dir::Right, &words)
            .expect("fixture");
    }
    t.add_words(states[top], a, states[top], Dir::Right, &[vec![]]).expect("fixture");
    t
}

/// One-way transducer accepting only `input`, emitting `segments[i]` at
/// position `i + 1`.
pub fn word_producer(input: &str, segments: &[&str]) -> TwoWayTransducer {
    let letters: Vec<Symbol> = word_from_chars(input);
    let mut sigma = letters.clone();
    sigma.sort();
    sigma.dedup();
    let mut gamma: Vec<Symbol> = segments.iter().flat_map(|s| word_from_chars(s)).collect();
    gamma.sort();
    gamma.dedup();
    let mut t = TwoWayTransducer::new(sigma, gamma);
    let states: Vec<usize> = (0..=letters.len()).map(|i| t.add_state(format!("c{i}"), Class::R)).collect();
    t.set_initial(states[0]);
    t.set_final(states[letters.len()]);
    for (i, a) in letters.iter().enumerate() {
        let seg = segments.get(i).copied().unwrap_or("");
        t.add_words(states[i], Read::Letter(a.clone()), states[i + 1], Dir::Right, &[word_from_chars(seg)])
            .expect("fixture");
    }
    t
}

/// Produces the solid pair of [`displaced_pairs`].
pub fn displaced_producer() -> TwoWayTransducer {
    word_producer("input", &["o", "ut", "", "p", "ut"])
}

/// Produces the solid pair of [`parity_pairs`].
pub fn parity_producer() -> TwoWayTransducer {
    word_producer("input", &["a", "ba", "", "a", "ab"])
}
