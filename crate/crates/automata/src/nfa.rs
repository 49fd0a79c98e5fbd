use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::{AutomataError, Emptiness};

/// Nondeterministic automaton over an explicitly ordered alphabet.
///
/// States are `0..num_states()`. Transitions are stored per source state as
/// sorted `(symbol index, target)` pairs, so iteration follows the declared
/// symbol order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa<S> {
    alphabet: Vec<S>,
    index: BTreeMap<S, usize>,
    initial: BTreeSet<usize>,
    accepting: Vec<bool>,
    delta: Vec<BTreeSet<(usize, usize)>>,
}

/// Complete-or-partial deterministic automaton with a single initial state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa<S> {
    alphabet: Vec<S>,
    index: BTreeMap<S, usize>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
}

fn build_index<S: Clone + Ord>(alphabet: &[S]) -> Result<BTreeMap<S, usize>, AutomataError> {
    let mut index = BTreeMap::new();
    for (i, s) in alphabet.iter().enumerate() {
        if index.insert(s.clone(), i).is_some() {
            return Err(AutomataError::DuplicateSymbol);
        }
    }
    Ok(index)
}

impl<S: Clone + Ord> Nfa<S> {
    pub fn new(alphabet: Vec<S>) -> Result<Self, AutomataError> {
        let index = build_index(&alphabet)?;
        Ok(Nfa {
            alphabet,
            index,
            initial: BTreeSet::new(),
            accepting: Vec::new(),
            delta: Vec::new(),
        })
    }

    /// Automaton accepting every word over `alphabet`.
    pub fn universal(alphabet: Vec<S>) -> Result<Self, AutomataError> {
        let mut a = Nfa::new(alphabet)?;
        let q = a.add_state(true);
        a.set_initial(q);
        for s in 0..a.alphabet.len() {
            a.add_transition(q, s, q);
        }
        Ok(a)
    }

    /// Automaton accepting exactly the listed words (given as symbol indices).
    pub fn from_index_words(alphabet: Vec<S>, words: &[Vec<usize>]) -> Result<Self, AutomataError> {
        let mut a = Nfa::new(alphabet)?;
        let root = a.add_state(false);
        a.set_initial(root);
        for w in words {
            let mut cur = root;
            for &s in w {
                if s >= a.alphabet.len() {
                    return Err(AutomataError::SymbolOutOfRange(s));
                }
                let next = a.add_state(false);
                a.add_transition(cur, s, next);
                cur = next;
            }
            a.set_accepting(cur, true);
        }
        Ok(a)
    }

    pub fn from_words(alphabet: Vec<S>, words: &[Vec<S>]) -> Result<Self, AutomataError> {
        let index = build_index(&alphabet)?;
        let encoded = words
            .iter()
            .map(|w| {
                w.iter()
                    .map(|s| index.get(s).copied().ok_or(AutomataError::UnknownSymbol))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Nfa::from_index_words(alphabet, &encoded)
    }

    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn symbol_index(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.delta.push(BTreeSet::new());
        self.accepting.len() - 1
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial.insert(q);
    }

    pub fn set_accepting(&mut self, q: usize, acc: bool) {
        self.accepting[q] = acc;
    }

    pub fn add_transition(&mut self, p: usize, sym: usize, q: usize) {
        self.delta[p].insert((sym, q));
    }

    pub fn add_transition_symbol(&mut self, p: usize, sym: &S, q: usize) -> Result<(), AutomataError> {
        let s = self.symbol_index(sym).ok_or(AutomataError::UnknownSymbol)?;
        self.add_transition(p, s, q);
        Ok(())
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.accepting[q])
    }

    pub fn transitions_from(&self, p: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.delta[p].iter().copied()
    }

    pub fn successors(&self, p: usize, sym: usize) -> impl Iterator<Item = usize> + '_ {
        self.delta[p].range((sym, 0)..(sym + 1, 0)).map(|&(_, q)| q)
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(BTreeSet::len).sum()
    }

    pub fn step_set(&self, set: &BTreeSet<usize>, sym: usize) -> BTreeSet<usize> {
        set.iter().flat_map(|&p| self.successors(p, sym)).collect()
    }

    pub fn encode(&self, word: &[S]) -> Option<Vec<usize>> {
        word.iter().map(|s| self.symbol_index(s)).collect()
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let mut cur = self.initial.clone();
        for &s in word {
            cur = self.step_set(&cur, s);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    /// Membership; words using symbols outside the alphabet are rejected.
    pub fn accepts(&self, word: &[S]) -> bool {
        self.encode(word).is_some_and(|w| self.accepts_indices(&w))
    }

    /// Number of distinct accepting runs on `word` (saturating).
    pub fn count_runs(&self, word: &[usize]) -> u64 {
        let mut counts = vec![0u64; self.num_states()];
        for &q in &self.initial {
            counts[q] = 1;
        }
        for &s in word {
            let mut next = vec![0u64; self.num_states()];
            for (p, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for q in self.successors(p, s) {
                    next[q] = next[q].saturating_add(c);
                }
            }
            counts = next;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(q, _)| self.accepting[*q])
            .fold(0u64, |acc, (_, &c)| acc.saturating_add(c))
    }

    fn check_same_alphabet(&self, other: &Nfa<S>) -> Result<Vec<usize>, AutomataError> {
        if self.alphabet.len() != other.alphabet.len() {
            return Err(AutomataError::AlphabetMismatch);
        }
        self.alphabet
            .iter()
            .map(|s| other.symbol_index(s).ok_or(AutomataError::AlphabetMismatch))
            .collect()
    }

    /// Synchronous product; only reachable pairs are built.
    pub fn product(&self, other: &Nfa<S>) -> Result<Nfa<S>, AutomataError> {
        let map = self.check_same_alphabet(other)?;
        let mut out = Nfa::new(self.alphabet.clone())?;
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for &p in &self.initial {
            for &q in &other.initial {
                let id = out.add_state(self.accepting[p] && other.accepting[q]);
                out.set_initial(id);
                ids.insert((p, q), id);
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let src = ids[&(p, q)];
            for (s, p2) in self.transitions_from(p) {
                for q2 in other.successors(q, map[s]) {
                    let id = match ids.get(&(p2, q2)) {
                        Some(&id) => id,
                        None => {
                            let id = out.add_state(self.accepting[p2] && other.accepting[q2]);
                            ids.insert((p2, q2), id);
                            queue.push_back((p2, q2));
                            id
                        }
                    };
                    out.add_transition(src, s, id);
                }
            }
        }
        Ok(out)
    }

    /// Disjoint union.
    pub fn union(&self, other: &Nfa<S>) -> Result<Nfa<S>, AutomataError> {
        let map = self.check_same_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.num_states();
        for q in 0..other.num_states() {
            out.add_state(other.accepting[q]);
        }
        for q in 0..other.num_states() {
            for (s, r) in other.transitions_from(q) {
                let s_here = map.iter().position(|&m| m == s).expect("alphabets checked");
                out.add_transition(q + offset, s_here, r + offset);
            }
        }
        for &q in &other.initial {
            out.set_initial(q + offset);
        }
        Ok(out)
    }

    pub fn determinize(&self) -> Dfa<S> {
        self.determinize_with_budget(None)
            .expect("unbounded determinization cannot exceed a budget")
    }

    /// Subset construction over reachable subsets. The empty subset, when
    /// reachable, becomes an explicit non-accepting sink, so the result is
    /// complete.
    pub fn determinize_with_budget(&self, budget: Option<usize>) -> Result<Dfa<S>, AutomataError> {
        let n_sym = self.alphabet.len();
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let start = self.initial.clone();
        ids.insert(start.clone(), 0);
        subsets.push(start);
        delta.push(vec![None; n_sym]);
        let mut next_unprocessed = 0;
        while next_unprocessed < subsets.len() {
            let cur = subsets[next_unprocessed].clone();
            for s in 0..n_sym {
                let succ = self.step_set(&cur, s);
                let id = match ids.get(&succ) {
                    Some(&id) => id,
                    None => {
                        if let Some(limit) = budget {
                            if subsets.len() >= limit {
                                return Err(AutomataError::StateBudgetExceeded { limit });
                            }
                        }
                        let id = subsets.len();
                        ids.insert(succ.clone(), id);
                        subsets.push(succ);
                        delta.push(vec![None; n_sym]);
                        id
                    }
                };
                delta[next_unprocessed][s] = Some(id);
            }
            next_unprocessed += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&q| self.accepting[q]))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            index: self.index.clone(),
            initial: 0,
            accepting,
            delta,
        })
    }

    pub fn complement(&self) -> Dfa<S> {
        self.determinize().complement()
    }

    fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = self.initial.iter().copied().collect();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for (_, q) in self.transitions_from(p) {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    fn backward_reachable(&self) -> Vec<bool> {
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.num_states()];
        for p in 0..self.num_states() {
            for (_, q) in self.transitions_from(p) {
                preds[q].push(p);
            }
        }
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = self.accepting_states().collect();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Keeps only useful states (reachable and co-reachable).
    pub fn trim(&self) -> Nfa<S> {
        let fwd = self.forward_reachable();
        let bwd = self.backward_reachable();
        let mut map = vec![None; self.num_states()];
        let mut out = Nfa {
            alphabet: self.alphabet.clone(),
            index: self.index.clone(),
            initial: BTreeSet::new(),
            accepting: Vec::new(),
            delta: Vec::new(),
        };
        for q in 0..self.num_states() {
            if fwd[q] && bwd[q] {
                map[q] = Some(out.add_state(self.accepting[q]));
            }
        }
        for p in 0..self.num_states() {
            let Some(np) = map[p] else { continue };
            for (s, q) in self.transitions_from(p) {
                if let Some(nq) = map[q] {
                    out.add_transition(np, s, nq);
                }
            }
        }
        for &q in &self.initial {
            if let Some(nq) = map[q] {
                out.set_initial(nq);
            }
        }
        out
    }

    pub fn reverse(&self) -> Nfa<S> {
        let mut out = Nfa {
            alphabet: self.alphabet.clone(),
            index: self.index.clone(),
            initial: BTreeSet::new(),
            accepting: vec![false; self.num_states()],
            delta: vec![BTreeSet::new(); self.num_states()],
        };
        for p in 0..self.num_states() {
            for (s, q) in self.transitions_from(p) {
                out.add_transition(q, s, p);
            }
            if self.accepting[p] {
                out.set_initial(p);
            }
        }
        for &q in &self.initial {
            out.accepting[q] = true;
        }
        out
    }

    /// Shortest accepted word, least in declared symbol order among those.
    pub fn emptiness(&self) -> Emptiness<S> {
        let index_word = crate::lazy_emptiness(&Indexed(self), None)
            .expect("no budget given");
        match index_word {
            Emptiness::Empty => Emptiness::Empty,
            Emptiness::Witness(w) => {
                Emptiness::Witness(w.into_iter().map(|s| self.alphabet[s].clone()).collect())
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.emptiness(), Emptiness::Empty)
    }

    /// Accepted words (as index sequences) of length at most `max_len`,
    /// in length-then-symbol order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        // dist[q] = length of the shortest path from q to an accepting state
        let n = self.num_states();
        let mut dist = vec![usize::MAX; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for p in 0..n {
            for (_, q) in self.transitions_from(p) {
                preds[q].push(p);
            }
        }
        let mut queue = VecDeque::new();
        for q in self.accepting_states() {
            dist[q] = 0;
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[q] + 1;
                    queue.push_back(p);
                }
            }
        }
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<usize>, BTreeSet<usize>)> =
            vec![(Vec::new(), self.initial.iter().copied().filter(|&q| dist[q] <= max_len).collect())];
        for len in 0..=max_len {
            let mut next_layer = Vec::new();
            for (word, set) in &layer {
                if set.iter().any(|&q| self.accepting[q]) {
                    out.push(word.clone());
                }
                if len == max_len {
                    continue;
                }
                let remaining = max_len - len - 1;
                for s in 0..self.alphabet.len() {
                    let succ: BTreeSet<usize> = self
                        .step_set(set, s)
                        .into_iter()
                        .filter(|&q| dist[q] <= remaining)
                        .collect();
                    if !succ.is_empty() {
                        let mut w = word.clone();
                        w.push(s);
                        next_layer.push((w, succ));
                    }
                }
            }
            layer = next_layer;
        }
        out
    }

    /// Relabels symbols through `f` into a new alphabet; symbols mapped to
    /// `None` are dropped together with their transitions.
    pub fn map_symbols<T: Clone + Ord>(
        &self,
        new_alphabet: Vec<T>,
        f: impl Fn(&S) -> Option<T>,
    ) -> Result<Nfa<T>, AutomataError> {
        let mut out = Nfa::new(new_alphabet)?;
        for q in 0..self.num_states() {
            out.add_state(self.accepting[q]);
        }
        let mut sym_map = Vec::with_capacity(self.alphabet.len());
        for s in &self.alphabet {
            let target = match f(s) {
                Some(t) => Some(out.symbol_index(&t).ok_or(AutomataError::UnknownSymbol)?),
                None => None,
            };
            sym_map.push(target);
        }
        for p in 0..self.num_states() {
            for (s, q) in self.transitions_from(p) {
                if let Some(t) = sym_map[s] {
                    out.add_transition(p, t, q);
                }
            }
        }
        for &q in &self.initial {
            out.set_initial(q);
        }
        Ok(out)
    }

    /// Self-product edges over useful states, used by the ambiguity tests.
    fn pair_graph(&self) -> (Vec<(usize, usize)>, HashMap<(usize, usize), usize>, Vec<Vec<usize>>) {
        let n = self.num_states();
        let mut nodes = Vec::new();
        let mut ids = HashMap::new();
        for p in 0..n {
            for q in 0..n {
                ids.insert((p, q), nodes.len());
                nodes.push((p, q));
            }
        }
        let mut edges = vec![Vec::new(); nodes.len()];
        for (id, &(p, q)) in nodes.iter().enumerate() {
            for (s, p2) in self.transitions_from(p) {
                for q2 in self.successors(q, s) {
                    edges[id].push(ids[&(p2, q2)]);
                }
            }
        }
        (nodes, ids, edges)
    }

    /// True iff the number of accepting runs per word is uniformly bounded.
    ///
    /// After trimming, the automaton is infinitely ambiguous iff some state
    /// carries two distinct cycles on one word (a strongly connected
    /// component of the self-product holding a diagonal and an off-diagonal
    /// pair), or there are distinct states `p`, `q` and a word `w` with
    /// `p -w-> p`, `p -w-> q` and `q -w-> q`.
    pub fn is_finitely_ambiguous(&self) -> bool {
        let t = self.trim();
        let (nodes, _ids, edges) = t.pair_graph();
        let comp = tarjan_scc(&edges);
        let mut has_diag = BTreeSet::new();
        let mut has_off = BTreeSet::new();
        for (id, &(p, q)) in nodes.iter().enumerate() {
            // only nodes lying on a cycle count
            let on_cycle = edges[id].iter().any(|&j| comp[j] == comp[id]);
            if !on_cycle {
                continue;
            }
            if p == q {
                has_diag.insert(comp[id]);
            } else {
                has_off.insert(comp[id]);
            }
        }
        if has_diag.intersection(&has_off).next().is_some() {
            return false;
        }
        !t.has_ida()
    }

    fn has_ida(&self) -> bool {
        let n = self.num_states();
        let key = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                // search (p,p,q) -w-> (p,q,q) with w non-empty
                let mut seen = vec![false; n * n * n];
                let mut stack = Vec::new();
                let push_succ = |(a, b, c): (usize, usize, usize),
                                 seen: &mut Vec<bool>,
                                 stack: &mut Vec<(usize, usize, usize)>| {
                    for (s, a2) in self.transitions_from(a) {
                        for b2 in self.successors(b, s) {
                            for c2 in self.successors(c, s) {
                                let k = key(a2, b2, c2);
                                if !seen[k] {
                                    seen[k] = true;
                                    stack.push((a2, b2, c2));
                                }
                            }
                        }
                    }
                };
                push_succ((p, p, q), &mut seen, &mut stack);
                while let Some(node) = stack.pop() {
                    if node == (p, q, q) {
                        return true;
                    }
                    push_succ(node, &mut seen, &mut stack);
                }
            }
        }
        false
    }

    /// Maximal number of accepting runs over all words, or `None` when it is
    /// unbounded.
    pub fn ambiguity_degree(&self) -> Option<u64> {
        if !self.is_finitely_ambiguous() {
            return None;
        }
        let t = self.trim();
        if t.initial.is_empty() {
            return Some(0);
        }
        let n = t.num_states();
        let mut start = vec![0u64; n];
        for &q in &t.initial {
            start[q] = 1;
        }
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut stack = vec![start.clone()];
        seen.insert(start);
        let mut best = 0u64;
        while let Some(v) = stack.pop() {
            let acc: u64 = (0..n).filter(|&q| t.accepting[q]).map(|q| v[q]).sum();
            best = best.max(acc);
            for s in 0..t.alphabet.len() {
                let mut next = vec![0u64; n];
                for (p, &c) in v.iter().enumerate() {
                    if c > 0 {
                        for q in t.successors(p, s) {
                            next[q] += c;
                        }
                    }
                }
                if next.iter().any(|&c| c > 0) && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        Some(best)
    }
}

/// Strongly connected components; returns the component id of every node.
pub(crate) fn tarjan_scc(edges: &[Vec<usize>]) -> Vec<usize> {
    let n = edges.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // iterative Tarjan: (node, next edge position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < edges[v].len() {
                let w = edges[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("scc stack underflow");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

impl<S: Clone + Ord> Dfa<S> {
    pub fn alphabet(&self) -> &[S] {
        &self.alphabet
    }

    pub fn symbol_index(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn next(&self, q: usize, sym: usize) -> Option<usize> {
        self.delta[q][sym]
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn run_indices(&self, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(self.initial, |q, &s| self.delta[q][s])
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        self.run_indices(word).is_some_and(|q| self.accepting[q])
    }

    pub fn accepts(&self, word: &[S]) -> bool {
        word.iter()
            .map(|s| self.symbol_index(s))
            .collect::<Option<Vec<_>>>()
            .is_some_and(|w| self.accepts_indices(&w))
    }

    /// Adds a rejecting sink for missing transitions.
    pub fn completed(&self) -> Dfa<S> {
        if self.is_complete() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.accepting.len();
        out.accepting.push(false);
        out.delta.push(vec![Some(sink); self.alphabet.len()]);
        for row in out.delta.iter_mut() {
            for cell in row.iter_mut() {
                if cell.is_none() {
                    *cell = Some(sink);
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Dfa<S> {
        let mut out = self.completed();
        for a in out.accepting.iter_mut() {
            *a = !*a;
        }
        out
    }

    /// Minimal complete automaton for the same language (Moore refinement
    /// over the reachable part).
    pub fn minimize(&self) -> Dfa<S> {
        let d = self.completed();
        let mut reach = vec![false; d.num_states()];
        let mut order = vec![d.initial];
        reach[d.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for t in d.delta[q].iter().flatten() {
                if !reach[*t] {
                    reach[*t] = true;
                    order.push(*t);
                }
            }
        }
        let mut block: Vec<usize> = vec![0; d.num_states()];
        for &q in &order {
            block[q] = usize::from(d.accepting[q]);
        }
        let mut count = 0;
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; d.num_states()];
            for &q in &order {
                let sig = (block[q], d.delta[q].iter().map(|t| block[t.expect("complete")]).collect());
                let n = ids.len();
                next[q] = *ids.entry(sig).or_insert(n);
            }
            let stable = ids.len() == count;
            count = ids.len();
            block = next;
            if stable {
                break;
            }
        }
        let mut delta = vec![Vec::new(); count];
        let mut accepting = vec![false; count];
        for &q in &order {
            let b = block[q];
            if delta[b].is_empty() {
                delta[b] = d.delta[q].iter().map(|t| t.map(|t| block[t])).collect();
                accepting[b] = d.accepting[q];
            }
        }
        Dfa {
            alphabet: d.alphabet.clone(),
            index: d.index.clone(),
            initial: block[d.initial],
            accepting,
            delta,
        }
    }

    pub fn to_nfa(&self) -> Nfa<S> {
        let mut out = Nfa {
            alphabet: self.alphabet.clone(),
            index: self.index.clone(),
            initial: BTreeSet::new(),
            accepting: self.accepting.clone(),
            delta: vec![BTreeSet::new(); self.num_states()],
        };
        out.set_initial(self.initial);
        for (p, row) in self.delta.iter().enumerate() {
            for (s, q) in row.iter().enumerate() {
                if let Some(q) = q {
                    out.add_transition(p, s, *q);
                }
            }
        }
        out
    }
}

/// View over symbol indices, so tie-breaking follows declaration order
/// rather than the symbols' own ordering.
struct Indexed<'a, S>(&'a Nfa<S>);

impl<S: Clone + Ord> crate::LazyNfa for Indexed<'_, S> {
    type State = usize;
    type Letter = usize;

    fn initial_states(&self) -> Vec<usize> {
        self.0.initial.iter().copied().collect()
    }

    fn successors(&self, state: &usize) -> Vec<(usize, usize)> {
        self.0.transitions_from(*state).collect()
    }

    fn is_accepting(&self, state: &usize) -> bool {
        self.0.accepting[*state]
    }
}
