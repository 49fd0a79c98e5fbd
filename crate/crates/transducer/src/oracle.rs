use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use origin_automata::{Nfa, Symbol, Word};
use serde::{Deserialize, Serialize};

use crate::machine::{FramedWord, TwoWayMachine};
use crate::model::{origin_of_step, Class, Dir, TwoWayTransducer};

/// An input word with an origin-tagged output word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SyncPair<I = Symbol> {
    pub input: Vec<I>,
    pub output: Vec<(Symbol, usize)>,
}

impl<I> SyncPair<I> {
    pub fn new(input: Vec<I>, output: Vec<(Symbol, usize)>) -> Self {
        SyncPair { input, output }
    }

    /// Same output over a different input word.
    pub fn with_input<J>(&self, input: Vec<J>) -> SyncPair<J> {
        SyncPair {
            input,
            output: self.output.clone(),
        }
    }

    pub fn output_word(&self) -> Word {
        self.output.iter().map(|(s, _)| s.clone()).collect()
    }

    pub fn origins(&self) -> Vec<usize> {
        self.output.iter().map(|&(_, o)| o).collect()
    }
}

impl fmt::Display for SyncPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.input {
            write!(f, "{s}")?;
        }
        write!(f, " / ")?;
        for (s, o) in &self.output {
            write!(f, "({s},{o})")?;
        }
        Ok(())
    }
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn inputs_up_to(alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |s| {
                    let mut w2 = w.clone();
                    w2.push(s.clone());
                    w2
                })
            })
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Accepted words of `nfa` of length at most `max_len`.
pub fn words_up_to(nfa: &Nfa<Symbol>, max_len: usize) -> Vec<Word> {
    nfa.words_up_to(max_len)
        .into_iter()
        .map(|w| w.into_iter().map(|s| nfa.alphabet()[s].clone()).collect())
        .collect()
}

/// Caches bounded word lists per output automaton. The `Arc` is kept so the
/// pointer used as key stays unique for the cache's lifetime.
#[derive(Default)]
struct WordCache {
    entries: HashMap<*const Nfa<Symbol>, (Arc<Nfa<Symbol>>, Vec<Vec<usize>>)>,
}

impl WordCache {
    fn words(&mut self, nfa: &Arc<Nfa<Symbol>>, max_len: usize) -> &[Vec<usize>] {
        &self
            .entries
            .entry(Arc::as_ptr(nfa))
            .or_insert_with(|| (nfa.clone(), nfa.words_up_to(max_len)))
            .1
    }
}

/// All synchronized pairs of `machine` on `input` whose output has length at
/// most `max_out`.
///
/// Breadth-first search over (state, position, tagged output so far); nodes
/// are never expanded twice, so output-free loops terminate.
pub fn enumerate_framed<M: TwoWayMachine>(
    machine: &M,
    input: &FramedWord<M::Letter>,
    max_out: usize,
) -> BTreeSet<SyncPair<M::Letter>> {
    enumerate_framed_with_filler(machine, input, max_out, None)
}

/// Like [`enumerate_framed`], except that occurrences of `filler.0` do not
/// count towards `max_out`; at most `filler.1` of them are allowed.
pub fn enumerate_framed_with_filler<M: TwoWayMachine>(
    machine: &M,
    input: &FramedWord<M::Letter>,
    max_out: usize,
    filler: Option<(&Symbol, usize)>,
) -> BTreeSet<SyncPair<M::Letter>> {
    let n = input.len();
    let out_alpha = machine.output_alphabet();
    let filler_idx = filler.and_then(|(s, _)| out_alpha.iter().position(|x| x == s));
    let max_filler = filler.map_or(0, |(_, k)| k);
    let max_len = max_out + max_filler;
    let mut cache = WordCache::default();
    // nodes also carry the number of filler letters in the prefix
    let mut seen: HashSet<(M::State, usize, Vec<(usize, usize)>)> = HashSet::new();
    let mut queue = VecDeque::new();
    for q in machine.initial_states(input.start.as_ref()) {
        let node = (q, 1usize, Vec::<(usize, usize)>::new(), 0usize);
        if seen.insert((node.0.clone(), 1, Vec::new())) {
            queue.push_back(node);
        }
    }
    let mut found = BTreeSet::new();
    while let Some((q, pos, prefix, fill)) = queue.pop_front() {
        if pos == n + 1 && machine.is_final(&q, input.end.as_ref()) {
            found.insert(SyncPair {
                input: input.letters.clone(),
                output: prefix.iter().map(|&(s, o)| (out_alpha[s].clone(), o)).collect(),
            });
        }
        let cell = origin_of_step(machine.class(&q), pos);
        for mv in machine.moves(&q, input.cell(cell)) {
            let next_pos = match mv.dir {
                Dir::Right => cell + 1,
                Dir::Left => cell,
            };
            if next_pos < 1 || next_pos > n + 1 {
                continue;
            }
            for w in cache.words(&mv.output, max_len) {
                let extra_fill = w.iter().filter(|&&s| Some(s) == filler_idx).count();
                if prefix.len() - fill + w.len() - extra_fill > max_out || fill + extra_fill > max_filler {
                    continue;
                }
                let mut next_prefix = prefix.clone();
                next_prefix.extend(w.iter().map(|&s| (s, cell)));
                let key = (mv.target.clone(), next_pos, next_prefix);
                if !seen.contains(&key) {
                    seen.insert(key.clone());
                    queue.push_back((key.0, key.1, key.2, fill + extra_fill));
                }
            }
        }
    }
    found
}

pub fn enumerate_sync_pairs<M: TwoWayMachine>(
    machine: &M,
    input: &[M::Letter],
    max_out: usize,
) -> BTreeSet<SyncPair<M::Letter>> {
    enumerate_framed(machine, &FramedWord::plain(input.to_vec()), max_out)
}

/// First pair (in input order, then pair order) produced by `t1` and not by
/// `t2` on the given inputs.
pub fn bounded_containment<L, A, B>(t1: &A, t2: &B, inputs: &[Vec<L>], max_out: usize) -> Option<SyncPair<L>>
where
    L: Clone + Ord,
    A: TwoWayMachine<Letter = L>,
    B: TwoWayMachine<Letter = L>,
{
    for u in inputs {
        let left = enumerate_sync_pairs(t1, u, max_out);
        if left.is_empty() {
            continue;
        }
        let right = enumerate_sync_pairs(t2, u, max_out);
        if let Some(p) = left.difference(&right).next() {
            return Some(p.clone());
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunStep {
    pub from: Configuration,
    pub transition: usize,
    pub to: Configuration,
    pub output: Word,
    pub origin: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub steps: Vec<RunStep>,
}

impl Run {
    pub fn tagged_output(&self) -> Vec<(Symbol, usize)> {
        self.steps
            .iter()
            .flat_map(|st| st.output.iter().map(move |s| (s.clone(), st.origin)))
            .collect()
    }
}

/// A successful run of `t` realizing `pair`, if one exists.
pub fn find_run(t: &TwoWayTransducer, pair: &SyncPair) -> Option<Run> {
    let framed = FramedWord::plain(pair.input.clone());
    let n = framed.len();
    let total = pair.output.len();
    type Node = (usize, usize, usize);
    let mut parent: HashMap<Node, Option<(Node, RunStep)>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &q in t.initial() {
        let node = (q, 1, 0);
        parent.insert(node, None);
        queue.push_back(node);
    }
    while let Some(node @ (q, pos, done)) = queue.pop_front() {
        if pos == n + 1 && done == total && t.is_final(q) {
            let mut steps = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, step))) = parent.get(&cur) {
                steps.push(step.clone());
                cur = *prev;
            }
            steps.reverse();
            return Some(Run { steps });
        }
        let cell = origin_of_step(t.class(q), pos);
        let read = framed.cell(cell).read();
        // longest stretch of remaining output carrying this origin
        let stretch = pair.output[done..].iter().take_while(|(_, o)| *o == cell).count();
        for &ti in t.transition_ids_on(q, &read) {
            let tr = &t.transitions()[ti];
            let next_pos = match tr.dir {
                Dir::Right => cell + 1,
                Dir::Left => cell,
            };
            if next_pos < 1 || next_pos > n + 1 {
                continue;
            }
            for k in 0..=stretch {
                let word: Word = pair.output[done..done + k].iter().map(|(s, _)| s.clone()).collect();
                if !tr.output.accepts(&word) {
                    continue;
                }
                let next = (tr.to, next_pos, done + k);
                if parent.contains_key(&next) {
                    continue;
                }
                let step = RunStep {
                    from: Configuration { state: q, position: pos },
                    transition: ti,
                    to: Configuration {
                        state: tr.to,
                        position: next_pos,
                    },
                    output: word,
                    origin: cell,
                };
                parent.insert(next, Some((node, step)));
                queue.push_back(next);
            }
        }
    }
    None
}

impl Configuration {
    /// Index of the cell read from this configuration.
    pub fn cell(&self, class: Class) -> usize {
        origin_of_step(class, self.position)
    }
}
