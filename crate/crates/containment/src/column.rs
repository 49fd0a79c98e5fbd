//! Chains of transitions of the first transducer on one input cell,
//! interleaved with right-to-right runs summarized as pairs, together with
//! the induced behaviour of the second transducer.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use origin_automata::{Nfa, Symbol};
use origin_normalization::{AnnotatedSymbol, Saturated};
use origin_transducer::{Cell, Class, Move, TwoWayMachine};

use crate::shape::{minimal_sets, witness_profiles};

/// Pairs of states of the second transducer: (start, end) of a run piece.
pub type Relation = BTreeSet<(usize, usize)>;

/// For each pair `(q, q')` of the first transducer (left-reading,
/// right-reading) with a right-to-right run from `q` to `q'`, the minimal
/// relations realized by the second transducer alongside such runs.
pub type PairMap = BTreeMap<(usize, usize), BTreeSet<Relation>>;

/// A transition of the first transducer on the column, with the minimal
/// witness profiles, each given as edges `(from, to)` of the second one.
#[derive(Clone, Debug)]
pub struct ColumnMove {
    pub target: usize,
    pub profiles: Vec<Vec<(usize, usize)>>,
}

/// All transitions of the first transducer on one cell.
#[derive(Clone, Debug)]
pub struct Column {
    pub moves: Vec<Vec<ColumnMove>>,
    classes: Vec<Class>,
}

type ProfileKey = (*const Nfa<Symbol>, Vec<*const Nfa<Symbol>>);

/// Memoized witness profiles, keyed by the identity of the output automata.
/// The `Arc`s are kept so that keys stay unique.
#[derive(Default)]
pub struct ProfileCache {
    entries: HashMap<ProfileKey, (Vec<Arc<Nfa<Symbol>>>, Arc<BTreeSet<BTreeSet<usize>>>)>,
}

impl ProfileCache {
    fn profiles(&mut self, l1: &Arc<Nfa<Symbol>>, z: &[&Arc<Nfa<Symbol>>]) -> Arc<BTreeSet<BTreeSet<usize>>> {
        let key = (Arc::as_ptr(l1), z.iter().map(|a| Arc::as_ptr(a)).collect());
        if let Some((_, p)) = self.entries.get(&key) {
            return p.clone();
        }
        let nfas: Vec<&Nfa<Symbol>> = z.iter().map(|a| a.as_ref()).collect();
        let minimal = Arc::new(minimal_sets(witness_profiles(l1, &nfas)));
        let mut keep = vec![l1.clone()];
        keep.extend(z.iter().map(|a| (*a).clone()));
        self.entries.insert(key, (keep, minimal.clone()));
        minimal
    }
}

impl Column {
    pub fn build(
        m1: &Saturated<'_>,
        m2: &Saturated<'_>,
        cell: Cell<'_, AnnotatedSymbol>,
        cache: &mut ProfileCache,
    ) -> Column {
        let n1 = m1.transducer().num_states();
        let n2 = m2.transducer().num_states();
        let second: Vec<(usize, Move<usize>)> = (0..n2)
            .flat_map(|s| m2.moves(&s, cell).into_iter().map(move |mv| (s, mv)))
            .collect();
        let mut moves = Vec::with_capacity(n1);
        for x in 0..n1 {
            let mut out = Vec::new();
            for mv in m1.moves(&x, cell) {
                let z: Vec<&(usize, Move<usize>)> = second
                    .iter()
                    .filter(|(s, m)| m2.class(s) == m1.class(&x) && m2.class(&m.target) == m1.class(&mv.target))
                    .collect();
                let outputs: Vec<&Arc<Nfa<Symbol>>> = z.iter().map(|(_, m)| &m.output).collect();
                let profiles = cache
                    .profiles(&mv.output, &outputs)
                    .iter()
                    .map(|p| p.iter().map(|&j| (z[j].0, z[j].1.target)).collect())
                    .collect();
                out.push(ColumnMove {
                    target: mv.target,
                    profiles,
                });
            }
            moves.push(out);
        }
        Column {
            moves,
            classes: (0..n1).map(|q| m1.class(&q)).collect(),
        }
    }

    /// Builds a column from explicit data, for tests.
    pub fn from_parts(moves: Vec<Vec<ColumnMove>>, classes: Vec<Class>) -> Column {
        Column { moves, classes }
    }

    pub fn class(&self, q: usize) -> Class {
        self.classes[q]
    }
}

/// Configurations visited by [`chain_closure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration<T> {
    /// States reading the column (start states and ends of pair runs).
    pub nodes: BTreeSet<(usize, T)>,
    /// Left-reading states reached by a leftward transition.
    pub landings: BTreeSet<(usize, T)>,
    /// Right-reading states reached by a rightward transition; the chain ends.
    pub exits: BTreeSet<(usize, T)>,
}

/// Closure of the chain relation on `column` from `starts`. `on_move`
/// updates the tracked information through a witness profile and `on_pair`
/// through the relation chosen for a pair of `pairs`.
pub fn chain_closure<T, E, R>(
    column: &Column,
    pairs: &PairMap,
    starts: impl IntoIterator<Item = (usize, T)>,
    on_move: E,
    on_pair: R,
) -> Exploration<T>
where
    T: Clone + Ord,
    E: Fn(&T, &[(usize, usize)]) -> T,
    R: Fn(&T, &Relation) -> T,
{
    let mut result = Exploration {
        nodes: BTreeSet::new(),
        landings: BTreeSet::new(),
        exits: BTreeSet::new(),
    };
    let mut queue = VecDeque::new();
    for s in starts {
        if result.nodes.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some((x, info)) = queue.pop_front() {
        for mv in &column.moves[x] {
            for profile in &mv.profiles {
                let moved = on_move(&info, profile);
                if column.class(mv.target) == Class::R {
                    result.exits.insert((mv.target, moved));
                    continue;
                }
                if !result.landings.insert((mv.target, moved.clone())) {
                    continue;
                }
                for ((_, z), rels) in pairs.range((mv.target, 0)..=(mv.target, usize::MAX)) {
                    for rel in rels {
                        let node = (*z, on_pair(&moved, rel));
                        if result.nodes.insert(node.clone()) {
                            queue.push_back(node);
                        }
                    }
                }
            }
        }
    }
    result
}

pub fn image(set: &BTreeSet<usize>, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    edges
        .iter()
        .filter(|(s, _)| set.contains(s))
        .map(|&(_, t)| t)
        .collect()
}

pub fn relation_image(set: &BTreeSet<usize>, rel: &Relation) -> BTreeSet<usize> {
    rel.iter().filter(|(s, _)| set.contains(s)).map(|&(_, t)| t).collect()
}

/// Right-to-right summaries at the right boundary of `column`, given the
/// summaries `pairs` at its left boundary.
pub fn next_pairs(column: &Column, pairs: &PairMap, left_reading_second: &[usize]) -> PairMap {
    let identity: Relation = left_reading_second.iter().map(|&r| (r, r)).collect();
    let mut out: BTreeMap<(usize, usize), Vec<Relation>> = BTreeMap::new();
    for q in 0..column.moves.len() {
        if column.class(q) != Class::L {
            continue;
        }
        let explored = chain_closure(
            column,
            pairs,
            [(q, identity.clone())],
            |rel: &Relation, edges| {
                rel.iter()
                    .flat_map(|&(o, c)| edges.iter().filter(move |(s, _)| *s == c).map(move |&(_, t)| (o, t)))
                    .collect()
            },
            |rel: &Relation, summary| {
                rel.iter()
                    .flat_map(|&(o, c)| summary.iter().filter(move |(s, _)| *s == c).map(move |&(_, t)| (o, t)))
                    .collect()
            },
        );
        for (q2, rel) in explored.exits {
            out.entry((q, q2)).or_default().push(rel);
        }
    }
    out.into_iter().map(|(k, v)| (k, minimal_sets(v))).collect()
}
