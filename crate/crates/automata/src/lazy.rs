use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use crate::{AutomataError, Nfa};

/// Outcome of an emptiness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness<L> {
    Empty,
    Witness(Vec<L>),
}

impl<L> Emptiness<L> {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }

    pub fn witness(self) -> Option<Vec<L>> {
        match self {
            Emptiness::Empty => None,
            Emptiness::Witness(w) => Some(w),
        }
    }
}

/// An automaton given by its initial states, a successor function and an
/// acceptance predicate. Successors must be listed in the intended symbol
/// order so that witnesses come out deterministic.
pub trait LazyNfa {
    type State: Clone + Eq + Hash;
    type Letter: Clone;

    fn initial_states(&self) -> Vec<Self::State>;
    fn successors(&self, state: &Self::State) -> Vec<(Self::Letter, Self::State)>;
    fn is_accepting(&self, state: &Self::State) -> bool;
}

impl<S: Clone + Ord> LazyNfa for Nfa<S> {
    type State = usize;
    type Letter = S;

    fn initial_states(&self) -> Vec<usize> {
        self.initial().iter().copied().collect()
    }

    fn successors(&self, state: &usize) -> Vec<(S, usize)> {
        self.transitions_from(*state)
            .map(|(s, q)| (self.alphabet()[s].clone(), q))
            .collect()
    }

    fn is_accepting(&self, state: &usize) -> bool {
        Nfa::is_accepting(self, *state)
    }
}

/// Breadth-first search for a shortest accepted word; among shortest words
/// the least one in letter order is returned. `budget` caps the number of
/// distinct states visited.
///
/// The frontier is kept as an ordered list of groups, one per distinct
/// prefix, so that a state is always attributed to its least prefix.
pub fn lazy_emptiness<A>(
    automaton: &A,
    budget: Option<usize>,
) -> Result<Emptiness<A::Letter>, AutomataError>
where
    A: LazyNfa,
    A::Letter: Ord,
{
    let mut seen: HashSet<A::State> = HashSet::new();
    // groups[g] = (parent group, letter) of the prefix that group g extends
    let mut groups: Vec<Option<(usize, A::Letter)>> = vec![None];
    let admit = |s: &A::State, seen: &mut HashSet<A::State>| -> Result<bool, AutomataError> {
        if seen.contains(s) {
            return Ok(false);
        }
        if let Some(limit) = budget {
            if seen.len() >= limit {
                return Err(AutomataError::StateBudgetExceeded { limit });
            }
        }
        seen.insert(s.clone());
        Ok(true)
    };
    let mut start = Vec::new();
    for s in automaton.initial_states() {
        if admit(&s, &mut seen)? {
            start.push(s);
        }
    }
    let mut layer: Vec<(usize, Vec<A::State>)> = vec![(0, start)];
    while !layer.is_empty() {
        for (g, states) in &layer {
            if states.iter().any(|s| automaton.is_accepting(s)) {
                let mut word = Vec::new();
                let mut cur = *g;
                while let Some((prev, letter)) = groups[cur].clone() {
                    word.push(letter);
                    cur = prev;
                }
                word.reverse();
                return Ok(Emptiness::Witness(word));
            }
        }
        let mut next = Vec::new();
        for (g, states) in &layer {
            let mut by_letter: BTreeMap<A::Letter, Vec<A::State>> = BTreeMap::new();
            for s in states {
                for (letter, t) in automaton.successors(s) {
                    by_letter.entry(letter).or_default().push(t);
                }
            }
            for (letter, targets) in by_letter {
                let mut fresh = Vec::new();
                for t in targets {
                    if admit(&t, &mut seen)? {
                        fresh.push(t);
                    }
                }
                if !fresh.is_empty() {
                    groups.push(Some((*g, letter)));
                    next.push((groups.len() - 1, fresh));
                }
            }
        }
        layer = next;
    }
    Ok(Emptiness::Empty)
}

/// Explores a lazy automaton completely and builds an explicit NFA over the
/// given alphabet.
pub fn materialize<A>(
    automaton: &A,
    alphabet: Vec<A::Letter>,
    budget: Option<usize>,
) -> Result<Nfa<A::Letter>, AutomataError>
where
    A: LazyNfa,
    A::Letter: Ord,
{
    let mut out = Nfa::new(alphabet)?;
    let mut ids: HashMap<A::State, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |s: A::State,
                      out: &mut Nfa<A::Letter>,
                      queue: &mut VecDeque<A::State>|
     -> Result<usize, AutomataError> {
        if let Some(&id) = ids.get(&s) {
            return Ok(id);
        }
        if let Some(limit) = budget {
            if ids.len() >= limit {
                return Err(AutomataError::StateBudgetExceeded { limit });
            }
        }
        let id = out.add_state(automaton.is_accepting(&s));
        ids.insert(s.clone(), id);
        queue.push_back(s);
        Ok(id)
    };
    for s in automaton.initial_states() {
        let id = intern(s, &mut out, &mut queue)?;
        out.set_initial(id);
    }
    let mut processed = 0usize;
    while let Some(s) = queue.pop_front() {
        let src = processed;
        processed += 1;
        for (letter, t) in automaton.successors(&s) {
            let dst = intern(t, &mut out, &mut queue)?;
            out.add_transition_symbol(src, &letter, dst)?;
        }
    }
    Ok(out)
}
