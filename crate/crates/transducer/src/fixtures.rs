//! Small hand-built transducers used by tests, examples and the CLI.

use origin_automata::{word_from_chars, Symbol, Word};

use crate::model::{Class, Dir, Read, TwoWayTransducer};

fn atoms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|s| Symbol::atom(*s)).collect()
}

fn letter(s: &str) -> Read {
    Read::Letter(Symbol::atom(s))
}

fn eps() -> Vec<Word> {
    vec![vec![]]
}

/// The input `a1 a2 a3` of [`figure_transducer`].
pub fn figure_input() -> Word {
    atoms(&["a1", "a2", "a3"])
}

/// A transducer with exactly one successful run on `a1 a2 a3`: right to the
/// third letter, back to the start marker, and right again to the end.
/// Letters are copied to the output, markers produce nothing.
pub fn figure_transducer() -> TwoWayTransducer {
    let sigma = atoms(&["a1", "a2", "a3"]);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let classes = [
        Class::R,
        Class::R,
        Class::R,
        Class::L,
        Class::L,
        Class::L,
        Class::R,
        Class::R,
        Class::R,
        Class::R,
    ];
    let q: Vec<usize> = classes
        .iter()
        .enumerate()
        .map(|(i, &c)| t.add_state(format!("q{i}"), c))
        .collect();
    t.set_initial(q[0]);
    t.set_final(q[9]);
    let copy = |s: &str| vec![vec![Symbol::atom(s)]];
    let steps = [
        (0, "a1", 1, Dir::Right),
        (1, "a2", 2, Dir::Right),
        (2, "a3", 3, Dir::Left),
        (3, "a2", 4, Dir::Left),
        (4, "a1", 5, Dir::Left),
        (6, "a1", 7, Dir::Right),
        (7, "a2", 8, Dir::Right),
        (8, "a3", 9, Dir::Right),
    ];
    for (from, a, to, dir) in steps {
        t.add_words(q[from], letter(a), q[to], dir, &copy(a)).expect("fixture");
    }
    t.add_words(q[5], Read::Start, q[6], Dir::Right, &eps()).expect("fixture");
    t
}

/// One-way identity transducer over `alphabet`.
pub fn copier(alphabet: &[&str]) -> TwoWayTransducer {
    let sigma = atoms(alphabet);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let p = t.add_state("p", Class::R);
    t.set_initial(p);
    t.set_final(p);
    for a in alphabet {
        t.add_words(p, letter(a), p, Dir::Right, &[vec![Symbol::atom(*a)]])
            .expect("fixture");
    }
    t
}

/// Identity over `{a}` with each letter produced one position to the right:
/// the first letter outputs nothing and the end marker outputs the last `a`.
/// Classically equal to the unary copier.
pub fn shifted_copier() -> TwoWayTransducer {
    let sigma = atoms(&["a"]);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let p = t.add_state("p", Class::R);
    let r = t.add_state("r", Class::R);
    let f = t.add_state("f", Class::L);
    t.set_initial(p);
    t.set_final(f);
    let a = vec![vec![Symbol::atom("a")]];
    t.add_words(p, letter("a"), r, Dir::Right, &eps()).expect("fixture");
    t.add_words(r, letter("a"), r, Dir::Right, &a).expect("fixture");
    t.add_words(r, Read::End, f, Dir::Left, &a).expect("fixture");
    t.add_words(p, Read::End, f, Dir::Left, &eps()).expect("fixture");
    t
}

/// Over `{a}`: any number of `a` produced at position 1, then a silent scan.
pub fn origin_one_copier() -> TwoWayTransducer {
    let sigma = atoms(&["a"]);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma.clone());
    let p = t.add_state("p", Class::R);
    let r = t.add_state("r", Class::R);
    t.set_initial(p);
    t.set_final(p);
    t.set_final(r);
    let mut star = origin_automata::Nfa::new(sigma).expect("fixture");
    let s = star.add_state(true);
    star.set_initial(s);
    star.add_transition(s, 0, s);
    t.add_transition(p, letter("a"), r, Dir::Right, star).expect("fixture");
    t.add_words(r, letter("a"), r, Dir::Right, &eps()).expect("fixture");
    t
}

/// Over `{a}`, on non-empty inputs: outputs `a` or `aa` at the first
/// position and nothing elsewhere.
pub fn first_emitter() -> TwoWayTransducer {
    let sigma = atoms(&["a"]);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let p = t.add_state("p", Class::R);
    let r = t.add_state("r", Class::R);
    t.set_initial(p);
    t.set_final(r);
    let words = vec![word_from_chars("a"), word_from_chars("aa")];
    t.add_words(p, letter("a"), r, Dir::Right, &words).expect("fixture");
    t.add_words(r, letter("a"), r, Dir::Right, &eps()).expect("fixture");
    t
}

/// Over `{a}`, on non-empty inputs: outputs `a` or `aa` at the last position.
pub fn last_emitter() -> TwoWayTransducer {
    let sigma = atoms(&["a"]);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let p = t.add_state("p", Class::R);
    let s = t.add_state("s", Class::R);
    t.set_initial(p);
    t.set_final(s);
    let words = vec![word_from_chars("a"), word_from_chars("aa")];
    t.add_words(p, letter("a"), p, Dir::Right, &eps()).expect("fixture");
    t.add_words(p, letter("a"), s, Dir::Right, &words).expect("fixture");
    t
}

/// Over `{a, b}`: copies the input and then copies it once more in reverse,
/// moving back to the start marker.
pub fn copy_then_reverse() -> TwoWayTransducer {
    let sigma = atoms(&["a", "b"]);
    let mut t = TwoWayTransducer::new(sigma.clone(), sigma);
    let fwd = t.add_state("fwd", Class::R);
    let back = t.add_state("back", Class::L);
    let done = t.add_state("done", Class::R);
    let out = t.add_state("out", Class::L);
    t.set_initial(fwd);
    t.set_final(out);
    for a in ["a", "b"] {
        let w = vec![vec![Symbol::atom(a)]];
        t.add_words(fwd, letter(a), fwd, Dir::Right, &w).expect("fixture");
        t.add_words(back, letter(a), back, Dir::Left, &w).expect("fixture");
        t.add_words(done, letter(a), done, Dir::Right, &eps()).expect("fixture");
    }
    t.add_words(fwd, Read::End, back, Dir::Left, &eps()).expect("fixture");
    t.add_words(back, Read::Start, done, Dir::Right, &eps()).expect("fixture");
    t.add_words(done, Read::End, out, Dir::Left, &eps()).expect("fixture");
    t
}
