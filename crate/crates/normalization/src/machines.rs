use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use origin_automata::{Nfa, Symbol};
use origin_transducer::{Cell, Class, Dir, Move, Read, TwoWayMachine, TwoWayTransducer};

use crate::annotated::{AnnotatedSymbol, UBlock};
use crate::upairs::{PairSet, UTurnRules};
use crate::NormalizationError;

fn dir_into(class: Class) -> Dir {
    match class {
        Class::L => Dir::Left,
        Class::R => Dir::Right,
    }
}

fn base_cell<'a>(cell: Cell<'a, AnnotatedSymbol>) -> Cell<'a, Symbol> {
    cell.map_letter(|a| &a.base)
}

/// `T` run on annotated inputs, ignoring the annotations.
pub struct Expanded<'a> {
    t: &'a TwoWayTransducer,
}

pub fn expand_annotated(t: &TwoWayTransducer) -> Expanded<'_> {
    Expanded { t }
}

impl TwoWayMachine for Expanded<'_> {
    type Letter = AnnotatedSymbol;
    type State = usize;

    fn output_alphabet(&self) -> &[Symbol] {
        self.t.output_alphabet()
    }

    fn initial_states(&self, _start: Option<&AnnotatedSymbol>) -> Vec<usize> {
        self.t.initial().iter().copied().collect()
    }

    fn is_final(&self, state: &usize, _end: Option<&AnnotatedSymbol>) -> bool {
        self.t.is_final(*state)
    }

    fn class(&self, state: &usize) -> Class {
        self.t.class(*state)
    }

    fn moves(&self, state: &usize, cell: Cell<'_, AnnotatedSymbol>) -> Vec<Move<usize>> {
        self.t.moves(state, base_cell(cell))
    }
}

/// The three successive refinements of an expanded transducer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    /// Transitions absorb the lazy U-turns announced by the annotation.
    Shortcut,
    /// Additionally, transitions that change reading class never output ε.
    Norm,
    /// Additionally, ε is replaced by a fresh letter on the remaining transitions.
    Busy,
}

type MemoKey = (Read, UBlock, usize);

/// `Shortcut`, `Norm` or `Busy` of `T`, reading the annotation block `block`.
/// Composite transitions are built per column and source state on first
/// use and cached.
pub struct Saturated<'a> {
    t: &'a TwoWayTransducer,
    rules: UTurnRules<'a>,
    block: usize,
    stage: Stage,
    output_alphabet: Vec<Symbol>,
    memo: Mutex<HashMap<MemoKey, Arc<Vec<Move<usize>>>>>,
}

pub fn shortcut(t: &TwoWayTransducer, block: usize) -> Saturated<'_> {
    Saturated::new(t, block, Stage::Shortcut, None)
}

pub fn normalize(t: &TwoWayTransducer, block: usize) -> Saturated<'_> {
    Saturated::new(t, block, Stage::Norm, None)
}

/// `Busy` with `hash` standing for the empty output; `hash` must not be an
/// output letter of `t`.
pub fn busy(t: &TwoWayTransducer, block: usize, hash: Symbol) -> Result<Saturated<'_>, NormalizationError> {
    if t.output_alphabet().contains(&hash) {
        return Err(NormalizationError::HashCollision(hash.to_string()));
    }
    Ok(Saturated::new(t, block, Stage::Busy, Some(hash)))
}

/// A letter outside `alphabet`: `#`, or `#1`, `#2`, ... if taken.
pub fn fresh_hash(alphabet: &[Symbol]) -> Symbol {
    let mut candidate = Symbol::atom("#");
    let mut k = 0;
    while alphabet.contains(&candidate) {
        k += 1;
        candidate = Symbol::atom(format!("#{k}"));
    }
    candidate
}

/// An NFA with ε-edges, used to splice transition languages together.
#[derive(Default)]
struct SpliceNfa {
    epsilon: Vec<Vec<usize>>,
    edges: Vec<Vec<(usize, usize)>>,
}

impl SpliceNfa {
    fn add_node(&mut self) -> usize {
        self.epsilon.push(Vec::new());
        self.edges.push(Vec::new());
        self.epsilon.len() - 1
    }

    fn closure(&self, p: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([p]);
        let mut stack = vec![p];
        while let Some(x) = stack.pop() {
            for &y in &self.epsilon[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

impl<'a> Saturated<'a> {
    fn new(t: &'a TwoWayTransducer, block: usize, stage: Stage, hash: Option<Symbol>) -> Self {
        let mut output_alphabet = t.output_alphabet().to_vec();
        output_alphabet.extend(hash);
        Saturated {
            t,
            rules: UTurnRules::new(t),
            block,
            stage,
            output_alphabet,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn transducer(&self) -> &'a TwoWayTransducer {
        self.t
    }

    /// The fresh letter replacing ε, for the busy stage.
    pub fn hash(&self) -> Option<&Symbol> {
        match self.stage {
            Stage::Busy => self.output_alphabet.last(),
            _ => None,
        }
    }

    fn block_of<'b>(&self, payload: Option<&'b AnnotatedSymbol>) -> Option<&'b UBlock> {
        payload.and_then(|a| a.blocks.get(self.block))
    }

    fn pairs<'b>(&self, block: &'b UBlock, y: usize) -> impl Iterator<Item = usize> + 'b {
        let set: &PairSet = match self.t.class(y) {
            Class::L => &block.left,
            Class::R => &block.right,
        };
        set.range((y, 0)..=(y, usize::MAX)).map(|&(_, z)| z)
    }

    /// States reachable from `from` at one position by alternating the two
    /// kinds of U-pairs available there.
    fn boundary_closure(&self, from: impl IntoIterator<Item = usize>, left: &PairSet, right: &PairSet) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = from.into_iter().collect();
        let mut queue: VecDeque<usize> = seen.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            let set = match self.t.class(x) {
                Class::L => left,
                Class::R => right,
            };
            for &(_, z) in set.range((x, 0)..=(x, usize::MAX)) {
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    /// Composite transitions leaving `source` on a column: a transition of
    /// `T`, then any number of (U-pair, transition) steps on the same cell.
    fn composite(&self, source: usize, read: &Read, block: &UBlock) -> Vec<Move<usize>> {
        let mut g = SpliceNfa::default();
        let mut chain: BTreeMap<usize, usize> = BTreeMap::new();
        let mut exit: BTreeMap<usize, usize> = BTreeMap::new();
        let start = g.add_node();
        chain.insert(source, start);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let at = chain[&x];
            for tr in self.t.transitions_on(x, read) {
                let offset = g.epsilon.len();
                for _ in 0..tr.output.num_states() {
                    g.add_node();
                }
                for &i in tr.output.initial() {
                    g.epsilon[at].push(offset + i);
                }
                for p in 0..tr.output.num_states() {
                    for (sym, q) in tr.output.transitions_from(p) {
                        g.edges[offset + p].push((sym, offset + q));
                    }
                }
                let out = match exit.get(&tr.to) {
                    Some(&node) => node,
                    None => {
                        let node = g.add_node();
                        exit.insert(tr.to, node);
                        for z in self.pairs(block, tr.to) {
                            let next = match chain.get(&z) {
                                Some(&n) => n,
                                None => {
                                    let n = g.add_node();
                                    chain.insert(z, n);
                                    queue.push_back(z);
                                    n
                                }
                            };
                            g.epsilon[node].push(next);
                        }
                        node
                    }
                };
                for p in tr.output.accepting_states() {
                    g.epsilon[offset + p].push(out);
                }
            }
        }
        let closures: Vec<BTreeSet<usize>> = (0..g.epsilon.len()).map(|p| g.closure(p)).collect();
        let hash_sym = self.hash().map(|_| self.output_alphabet.len() - 1);
        let mut moves = Vec::new();
        for (&target, &exit_node) in &exit {
            let flips = self.t.class(source) != self.t.class(target);
            let mut nfa = Nfa::new(self.output_alphabet.clone()).expect("output alphabet has no duplicates");
            for p in 0..g.epsilon.len() {
                nfa.add_state(closures[p].contains(&exit_node));
            }
            for p in 0..g.epsilon.len() {
                for &p2 in &closures[p] {
                    for &(sym, q) in &g.edges[p2] {
                        nfa.add_transition(p, sym, q);
                    }
                }
            }
            nfa.set_initial(start);
            let silent = nfa.is_accepting(start);
            // Letter edges never enter `start`, so clearing its acceptance removes exactly ε.
            match self.stage {
                Stage::Shortcut => {}
                Stage::Norm => {
                    if flips {
                        nfa.set_accepting(start, false);
                    }
                }
                Stage::Busy => {
                    if silent {
                        nfa.set_accepting(start, false);
                        if !flips {
                            let f = nfa.add_state(true);
                            nfa.add_transition(start, hash_sym.expect("busy stage has a hash letter"), f);
                        }
                    }
                }
            }
            let nfa = nfa.trim();
            if nfa.is_empty() {
                continue;
            }
            moves.push(Move {
                target,
                dir: dir_into(self.t.class(target)),
                output: Arc::new(nfa),
            });
        }
        moves
    }
}

impl TwoWayMachine for Saturated<'_> {
    type Letter = AnnotatedSymbol;
    type State = usize;

    fn output_alphabet(&self) -> &[Symbol] {
        &self.output_alphabet
    }

    /// For `Norm` and `Busy`, runs may begin with lazy U-turns at position 1
    /// that no transition precedes; their endpoints become initial.
    fn initial_states(&self, start: Option<&AnnotatedSymbol>) -> Vec<usize> {
        let initial = self.t.initial().iter().copied();
        if self.stage == Stage::Shortcut {
            return initial.collect();
        }
        let empty = PairSet::new();
        let right = self.block_of(start).map(|b| &b.right).unwrap_or(&empty);
        self.boundary_closure(initial, &self.rules.left_base(), right)
            .into_iter()
            .collect()
    }

    /// Dually, runs may end with lazy U-turns at the last position.
    fn is_final(&self, state: &usize, end: Option<&AnnotatedSymbol>) -> bool {
        if self.stage == Stage::Shortcut {
            return self.t.is_final(*state);
        }
        let empty = PairSet::new();
        let left = self.block_of(end).map(|b| &b.left).unwrap_or(&empty);
        self.boundary_closure([*state], left, &self.rules.right_base())
            .iter()
            .any(|&q| self.t.is_final(q))
    }

    fn class(&self, state: &usize) -> Class {
        self.t.class(*state)
    }

    fn moves(&self, state: &usize, cell: Cell<'_, AnnotatedSymbol>) -> Vec<Move<usize>> {
        let read = base_cell(cell).read();
        let block = self.block_of(cell.payload()).cloned().unwrap_or_default();
        let key = (read, block, *state);
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&key) {
            return hit.as_ref().clone();
        }
        let moves = Arc::new(self.composite(*state, &key.0, &key.1));
        self.memo.lock().expect("memo lock").insert(key, moves.clone());
        moves.as_ref().clone()
    }
}
