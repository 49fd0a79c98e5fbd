use std::collections::{BTreeSet, HashSet, VecDeque};

use origin_automata::{Nfa, Symbol};
use origin_transducer::{Transition, TwoWayTransducer};

/// Two transitions have the same shape when they read the same symbol and
/// agree on the reading class of their sources and of their targets.
pub fn same_shape(t1: &TwoWayTransducer, tr1: &Transition, t2: &TwoWayTransducer, tr2: &Transition) -> bool {
    tr1.read == tr2.read && t1.class(tr1.from) == t2.class(tr2.from) && t1.class(tr1.to) == t2.class(tr2.to)
}

/// All sets `{j : v ∈ candidates[j]}` for `v` ranging over `l1`.
///
/// Computed by a subset construction run on `l1` and all candidates at
/// once; each reachable tuple where `l1` accepts contributes one profile.
pub fn witness_profiles(l1: &Nfa<Symbol>, candidates: &[&Nfa<Symbol>]) -> BTreeSet<BTreeSet<usize>> {
    // per letter of l1, its index in each candidate alphabet
    let translate: Vec<Vec<Option<usize>>> = l1
        .alphabet()
        .iter()
        .map(|s| candidates.iter().map(|c| c.symbol_index(s)).collect())
        .collect();
    type Node = (BTreeSet<usize>, Vec<BTreeSet<usize>>);
    let start: Node = (
        l1.initial().clone(),
        candidates.iter().map(|c| c.initial().clone()).collect(),
    );
    let mut seen: HashSet<Node> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut profiles = BTreeSet::new();
    while let Some((own, others)) = queue.pop_front() {
        if own.iter().any(|&q| l1.is_accepting(q)) {
            profiles.insert(
                others
                    .iter()
                    .enumerate()
                    .filter(|(j, set)| set.iter().any(|&q| candidates[*j].is_accepting(q)))
                    .map(|(j, _)| j)
                    .collect(),
            );
        }
        for (sym, tr) in translate.iter().enumerate() {
            let next_own = l1.step_set(&own, sym);
            if next_own.is_empty() {
                continue;
            }
            let next_others = others
                .iter()
                .zip(tr)
                .zip(candidates)
                .map(|((set, idx), c)| match idx {
                    Some(i) => c.step_set(set, *i),
                    None => BTreeSet::new(),
                })
                .collect();
            let node = (next_own, next_others);
            if seen.insert(node.clone()) {
                queue.push_back(node);
            }
        }
    }
    profiles
}

/// The inclusion-minimal members of `sets`.
pub fn minimal_sets<T: Ord + Clone>(sets: impl IntoIterator<Item = BTreeSet<T>>) -> BTreeSet<BTreeSet<T>> {
    let all: BTreeSet<BTreeSet<T>> = sets.into_iter().collect();
    all.iter()
        .filter(|s| !all.iter().any(|o| o != *s && o.is_subset(s)))
        .cloned()
        .collect()
}
