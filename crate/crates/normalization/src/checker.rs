use std::collections::{BTreeMap, BTreeSet};

use origin_automata::Symbol;
use origin_transducer::{FramedWord, Read, TwoWayTransducer};

use crate::annotated::{end_marker, start_marker, AnnotatedSymbol, UBlock};
use crate::framed::FramedGenerator;
use crate::upairs::{PairSet, UTurnRules};

/// Per-transducer data of the checker.
struct Track<'a> {
    rules: UTurnRules<'a>,
    left_base: PairSet,
    right_base: PairSet,
    /// For each letter and right-pair set `r`, the sets `r'` with
    /// `right_step(letter, r') == r`, restricted to sets that can occur.
    preimages: BTreeMap<(Symbol, PairSet), Vec<PairSet>>,
    /// Right-pair sets that can occur at some position of some input.
    reachable: BTreeSet<PairSet>,
}

impl<'a> Track<'a> {
    fn new(t: &'a TwoWayTransducer) -> Self {
        let rules = UTurnRules::new(t);
        let left_base = rules.left_base();
        let right_base = rules.right_base();
        let mut reachable = BTreeSet::from([right_base.clone()]);
        let mut preimages: BTreeMap<(Symbol, PairSet), Vec<PairSet>> = BTreeMap::new();
        let mut todo = vec![right_base.clone()];
        while let Some(r) = todo.pop() {
            for a in t.input_alphabet() {
                let prev = rules.right_step(&Read::Letter(a.clone()), &r);
                preimages.entry((a.clone(), prev.clone())).or_default().push(r.clone());
                if reachable.insert(prev.clone()) {
                    todo.push(prev);
                }
            }
        }
        Track {
            rules,
            left_base,
            right_base,
            preimages,
            reachable,
        }
    }
}

/// State of the checker: for each transducer, the left pairs the next
/// letter must carry and the right pairs its annotation must produce.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckerState {
    pub expected: Vec<UBlock>,
}

/// Recognizes exactly the correctly annotated framed words for a list of
/// transducers over a shared input alphabet.
///
/// Left pairs are computed forward; right pairs are guessed and verified
/// backwards, each letter's right component being constrained by what the
/// previous letter required.
pub struct AnnotationChecker<'a> {
    alphabet: Vec<Symbol>,
    tracks: Vec<Track<'a>>,
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl<'a> AnnotationChecker<'a> {
    pub fn new(ts: &[&'a TwoWayTransducer]) -> Self {
        let alphabet = ts.first().map(|t| t.input_alphabet().to_vec()).unwrap_or_default();
        AnnotationChecker {
            alphabet,
            tracks: ts.iter().map(|t| Track::new(t)).collect(),
        }
    }

    pub fn num_tracks(&self) -> usize {
        self.tracks.len()
    }

    /// Direct membership test.
    pub fn accepts(&self, w: &FramedWord<AnnotatedSymbol>) -> bool {
        let (Some(start), Some(end)) = (&w.start, &w.end) else {
            return false;
        };
        let k = self.tracks.len();
        let arity_ok = |a: &AnnotatedSymbol| a.blocks.len() == k;
        if !arity_ok(start) || !arity_ok(end) || !w.letters.iter().all(arity_ok) {
            return false;
        }
        if start.base != start_marker() || end.base != end_marker() {
            return false;
        }
        let mut state: Vec<(PairSet, PairSet)> = self
            .tracks
            .iter()
            .zip(&start.blocks)
            .map(|(tr, b)| (tr.left_base.clone(), b.right.clone()))
            .collect();
        if start.blocks.iter().any(|b| !b.left.is_empty()) {
            return false;
        }
        for a in &w.letters {
            let read = Read::Letter(a.base.clone());
            for ((tr, b), (left, expected)) in self.tracks.iter().zip(&a.blocks).zip(state.iter_mut()) {
                if b.left != *left || tr.rules.right_step(&read, &b.right) != *expected {
                    return false;
                }
                *left = tr.rules.left_step(&read, left);
                *expected = b.right.clone();
            }
        }
        self.tracks
            .iter()
            .zip(&end.blocks)
            .zip(&state)
            .all(|((tr, b), (left, expected))| b.left == *left && b.right.is_empty() && *expected == tr.right_base)
    }
}

impl FramedGenerator for AnnotationChecker<'_> {
    type Letter = AnnotatedSymbol;
    type State = CheckerState;

    fn start(&self) -> Vec<(AnnotatedSymbol, CheckerState)> {
        let choices: Vec<Vec<PairSet>> = self.tracks.iter().map(|t| t.reachable.iter().cloned().collect()).collect();
        cartesian(&choices)
            .into_iter()
            .map(|rights| {
                let payload = AnnotatedSymbol {
                    base: start_marker(),
                    blocks: rights
                        .iter()
                        .map(|r| UBlock {
                            left: PairSet::new(),
                            right: r.clone(),
                        })
                        .collect(),
                };
                let state = CheckerState {
                    expected: self
                        .tracks
                        .iter()
                        .zip(rights)
                        .map(|(t, r)| UBlock {
                            left: t.left_base.clone(),
                            right: r,
                        })
                        .collect(),
                };
                (payload, state)
            })
            .collect()
    }

    fn next(&self, state: &CheckerState) -> Vec<(AnnotatedSymbol, CheckerState)> {
        let mut out = Vec::new();
        for a in &self.alphabet {
            let read = Read::Letter(a.clone());
            let mut choices = Vec::with_capacity(self.tracks.len());
            for (t, e) in self.tracks.iter().zip(&state.expected) {
                match t.preimages.get(&(a.clone(), e.right.clone())) {
                    Some(rs) => choices.push(rs.clone()),
                    None => break,
                }
            }
            if choices.len() < self.tracks.len() {
                continue;
            }
            for rights in cartesian(&choices) {
                let letter = AnnotatedSymbol {
                    base: a.clone(),
                    blocks: state
                        .expected
                        .iter()
                        .zip(&rights)
                        .map(|(e, r)| UBlock {
                            left: e.left.clone(),
                            right: r.clone(),
                        })
                        .collect(),
                };
                let next = CheckerState {
                    expected: self
                        .tracks
                        .iter()
                        .zip(&state.expected)
                        .zip(rights)
                        .map(|((t, e), r)| UBlock {
                            left: t.rules.left_step(&read, &e.left),
                            right: r,
                        })
                        .collect(),
                };
                out.push((letter, next));
            }
        }
        out
    }

    fn end(&self, state: &CheckerState) -> Vec<AnnotatedSymbol> {
        let done = self
            .tracks
            .iter()
            .zip(&state.expected)
            .all(|(t, e)| e.right == t.right_base);
        if !done {
            return Vec::new();
        }
        vec![AnnotatedSymbol {
            base: end_marker(),
            blocks: state
                .expected
                .iter()
                .map(|e| UBlock {
                    left: e.left.clone(),
                    right: PairSet::new(),
                })
                .collect(),
        }]
    }
}
