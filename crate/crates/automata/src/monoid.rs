use std::collections::{HashMap, VecDeque};

use crate::{AutomataError, Dfa};

/// Transition monoid of a complete DFA.
///
/// Each element is a state transformation `q -> e[q]`. The product `x·y`
/// applies `x` first and then `y`, so `h(uv) = h(u)·h(v)`.
#[derive(Clone, Debug)]
pub struct MonoidPresentation {
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    generators: Vec<usize>,
    // right_action[e][s] = e · h(s)
    right_action: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl MonoidPresentation {
    pub fn from_dfa<S: Clone + Ord>(dfa: &Dfa<S>) -> Result<Self, AutomataError> {
        if !dfa.is_complete() {
            return Err(AutomataError::IncompleteDfa);
        }
        let n = dfa.num_states();
        let n_sym = dfa.alphabet().len();
        let identity: Vec<usize> = (0..n).collect();
        let letter_maps: Vec<Vec<usize>> = (0..n_sym)
            .map(|s| (0..n).map(|q| dfa.next(q, s).expect("complete")).collect())
            .collect();
        let mut m = MonoidPresentation {
            elements: vec![identity.clone()],
            index: HashMap::from([(identity, 0)]),
            generators: Vec::with_capacity(n_sym),
            right_action: vec![Vec::new()],
            initial: dfa.initial(),
            accepting: (0..n).map(|q| dfa.is_accepting(q)).collect(),
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            let mut row = Vec::with_capacity(n_sym);
            for map in &letter_maps {
                let composed: Vec<usize> = m.elements[e].iter().map(|&q| map[q]).collect();
                let id = m.intern(composed, &mut queue);
                row.push(id);
            }
            m.right_action[e] = row;
        }
        m.generators = (0..n_sym).map(|s| m.right_action[0][s]).collect();
        Ok(m)
    }

    fn intern(&mut self, t: Vec<usize>, queue: &mut VecDeque<usize>) -> usize {
        if let Some(&id) = self.index.get(&t) {
            return id;
        }
        let id = self.elements.len();
        self.index.insert(t.clone(), id);
        self.elements.push(t);
        self.right_action.push(Vec::new());
        queue.push_back(id);
        id
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Image of a single symbol (by alphabet index).
    pub fn generator(&self, sym: usize) -> usize {
        self.generators[sym]
    }

    pub fn transformation(&self, e: usize) -> &[usize] {
        &self.elements[e]
    }

    pub fn apply(&self, e: usize, q: usize) -> usize {
        self.elements[e][q]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let composed: Vec<usize> = self.elements[x].iter().map(|&q| self.elements[y][q]).collect();
        self.index[&composed]
    }

    /// `e · h(sym)`, read from the Cayley graph.
    pub fn mul_generator(&self, e: usize, sym: usize) -> usize {
        self.right_action[e][sym]
    }

    pub fn eval(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |e, &s| self.right_action[e][s])
    }

    /// Whether words mapped to `e` are accepted by the underlying DFA.
    pub fn is_accepting(&self, e: usize) -> bool {
        self.accepting[self.elements[e][self.initial]]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.size())
            .map(|x| (0..self.size()).map(|y| self.mul(x, y)).collect())
            .collect()
    }
}

impl<S: Clone + Ord> Dfa<S> {
    pub fn transition_monoid(&self) -> Result<MonoidPresentation, AutomataError> {
        MonoidPresentation::from_dfa(self)
    }
}
