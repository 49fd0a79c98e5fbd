use std::collections::{HashMap, VecDeque};

use origin_automata::{Nfa, Symbol};
use origin_normalization::{normalize, AnnotatedSymbol, AnnotationChecker, CheckerState, FramedGenerator, Saturated, UBlock};
use origin_transducer::{Cell, Dir, Read, TwoWayMachine, TwoWayTransducer};

use crate::monoid::JointMonoid;
use crate::relativized::{annotated_alphabet, monoid_domain, relabel_input, Relativized};
use crate::resynchronizer::{OutputType, Resynchronizer};
use crate::ResyncError;

/// Where the last output was produced, relative to the head: to its left
/// with `m = h(u_{z,·}[z, p-1])`, or to its right with `s = h(u_{z,·}[p+1, z])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Anchor {
    Behind { l: usize, m: usize },
    Ahead { r: usize, s: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum DState {
    /// No output yet; runs the transducer itself.
    Head(usize),
    /// Between outputs; runs the normalized transducer.
    Track { q: usize, last: usize, anchor: Anchor },
    /// No more output.
    Tail(usize),
}

/// A letter of the final alphabet: a monoid-annotated letter with its
/// U-pair block.
struct Letter {
    c: Symbol,
    l: usize,
    r: usize,
    annotated: AnnotatedSymbol,
    symbol: Symbol,
}

struct Builder<'a> {
    t: &'a TwoWayTransducer,
    norm: Saturated<'a>,
    m: &'a JointMonoid,
    pair_formula: Vec<Vec<usize>>,
    letters: Vec<Letter>,
    out: TwoWayTransducer,
    ids: HashMap<DState, usize>,
    queue: VecDeque<DState>,
}

impl Builder<'_> {
    fn id(&mut self, s: DState) -> usize {
        if let Some(&id) = self.ids.get(&s) {
            return id;
        }
        let (q, name) = match &s {
            DState::Head(q) => (*q, format!("{}^", self.t.state_name(*q))),
            DState::Track { q, .. } => (*q, format!("{}~{}", self.t.state_name(*q), self.ids.len())),
            DState::Tail(q) => (*q, format!("{}$", self.t.state_name(*q))),
        };
        let id = self.out.add_state(name, self.t.class(q));
        match s {
            DState::Head(q) if self.t.initial().contains(&q) => self.out.set_initial(id),
            _ => {}
        }
        if matches!(s, DState::Head(q) | DState::Tail(q) if self.t.is_final(q)) {
            self.out.set_final(id);
        }
        self.ids.insert(s.clone(), id);
        self.queue.push_back(s);
        id
    }

    /// Outputs in `lang` ending with letter `last` whose first letter is
    /// allowed after the previous output and whose consecutive letters
    /// are allowed at the current cell.
    fn constrained(&self, lang: &Nfa<Symbol>, first_ok: &[bool], here: &Letter, last: usize) -> Result<Nfa<Symbol>, ResyncError> {
        let k = self.out.output_alphabet().len();
        let m = self.m;
        let both = m.mul3(here.l, m.generator(&here.c, true, true), here.r);
        let mut dfa = Nfa::new(self.out.output_alphabet().to_vec())?;
        let start = dfa.add_state(false);
        dfa.set_initial(start);
        for j in 0..k {
            dfa.add_state(j == last);
        }
        for b in 0..k {
            if first_ok[b] {
                dfa.add_transition(start, b, 1 + b);
            }
            for j in 0..k {
                if m.accepts(self.pair_formula[j][b], both) {
                    dfa.add_transition(1 + j, b, 1 + b);
                }
            }
        }
        Ok(lang.product(&dfa)?.trim())
    }

    fn expand(&mut self, state: DState) -> Result<(), ResyncError> {
        let src = self.ids[&state];
        let plain = match &state {
            DState::Head(q) => Some((*q, true)),
            DState::Tail(q) => Some((*q, false)),
            DState::Track { .. } => None,
        };
        if let Some((q, head)) = plain {
            let wrap = |to: usize| if head { DState::Head(to) } else { DState::Tail(to) };
            let mut reads = vec![(Read::Start, Read::Start), (Read::End, Read::End)];
            reads.extend(
                self.letters
                    .iter()
                    .map(|l| (Read::Letter(l.c.clone()), Read::Letter(l.symbol.clone()))),
            );
            for (read, read_here) in reads {
                let moves: Vec<(usize, Dir, bool)> = self
                    .t
                    .transitions_on(q, &read)
                    .map(|tr| (tr.to, tr.dir, tr.output.accepts(&[])))
                    .collect();
                for (to, dir, silent) in moves {
                    if silent {
                        let to = self.id(wrap(to));
                        let eps = Nfa::from_words(self.out.output_alphabet().to_vec(), &[vec![]])?;
                        self.out.add_transition(src, read_here.clone(), to, dir, eps)?;
                    }
                }
            }
            if !head {
                return Ok(());
            }
        }
        self.expand_normalized(src, &state)
    }

    fn expand_normalized(&mut self, src: usize, state: &DState) -> Result<(), ResyncError> {
        let m = self.m;
        let k = self.out.output_alphabet().len();
        let (q, prev) = match state {
            DState::Head(q) => (*q, None),
            DState::Track { q, last, anchor } => (*q, Some((*last, *anchor))),
            DState::Tail(_) => return Ok(()),
        };
        for li in 0..self.letters.len() {
            let here = &self.letters[li];
            let first_ok: Vec<bool> = (0..k)
                .map(|b| match prev {
                    None => true,
                    Some((last, Anchor::Behind { l, m: acc })) => m.accepts(
                        self.pair_formula[last][b],
                        m.mul3(l, m.mul(acc, m.generator(&here.c, false, true)), here.r),
                    ),
                    Some((last, Anchor::Ahead { r, s })) => m.accepts(
                        self.pair_formula[last][b],
                        m.mul3(here.l, m.mul(m.generator(&here.c, false, true), s), r),
                    ),
                })
                .collect();
            let moves = self.norm.moves(&q, Cell::Letter(&here.annotated));
            let symbol = here.symbol.clone();
            let g0 = m.generator(&here.c, false, false);
            let g_src = m.generator(&here.c, true, false);
            let (lh, rh) = (here.l, here.r);
            for mv in moves {
                for last in 0..k {
                    let lang = self.constrained(&mv.output, &first_ok, &self.letters[li], last)?;
                    if lang.is_empty() {
                        continue;
                    }
                    let anchor = match mv.dir {
                        Dir::Right => Anchor::Behind { l: lh, m: g_src },
                        Dir::Left => Anchor::Ahead { r: rh, s: g_src },
                    };
                    let track = self.id(DState::Track {
                        q: mv.target,
                        last,
                        anchor,
                    });
                    self.out.add_transition(src, Read::Letter(symbol.clone()), track, mv.dir, lang.clone())?;
                    let tail = self.id(DState::Tail(mv.target));
                    self.out.add_transition(src, Read::Letter(symbol.clone()), tail, mv.dir, lang)?;
                }
                let Some((last, anchor)) = prev else { continue };
                if !mv.output.accepts(&[]) {
                    continue;
                }
                let anchor = match (anchor, mv.dir) {
                    (Anchor::Behind { l, m: acc }, Dir::Right) => Anchor::Behind { l, m: m.mul(acc, g0) },
                    (Anchor::Ahead { r, s }, Dir::Left) => Anchor::Ahead { r, s: m.mul(g0, s) },
                    _ => continue,
                };
                let to = self.id(DState::Track {
                    q: mv.target,
                    last,
                    anchor,
                });
                let eps = Nfa::from_words(self.out.output_alphabet().to_vec(), &[vec![]])?;
                self.out.add_transition(src, Read::Letter(symbol.clone()), to, mv.dir, eps)?;
            }
        }
        Ok(())
    }
}

/// Letters and states of the U-pair checker reachable from its start.
fn checker_graph(checker: &AnnotationChecker<'_>) -> (Vec<CheckerState>, Vec<(usize, AnnotatedSymbol, usize)>, Vec<usize>) {
    let mut states: Vec<CheckerState> = Vec::new();
    let mut index: HashMap<CheckerState, usize> = HashMap::new();
    let mut intern = |s: CheckerState, states: &mut Vec<CheckerState>, stack: &mut Vec<usize>| -> usize {
        *index.entry(s.clone()).or_insert_with(|| {
            states.push(s);
            stack.push(states.len() - 1);
            states.len() - 1
        })
    };
    let mut stack = Vec::new();
    let mut initial = Vec::new();
    for (_, s) in checker.start() {
        initial.push(intern(s, &mut states, &mut stack));
    }
    let mut edges = Vec::new();
    while let Some(i) = stack.pop() {
        for (letter, s2) in checker.next(&states[i].clone()) {
            let j = intern(s2, &mut states, &mut stack);
            edges.push((i, letter, j));
        }
    }
    (states, edges, initial)
}

/// Enforces δ on consecutive output positions.
///
/// The transducer is first normalized, so that between two outputs the
/// head moves in one direction only; the monoid value of the segment
/// since the last output can then be kept in the state. Before the first
/// and after the last output the original transducer runs unchanged.
pub fn apply_delta(r: &Resynchronizer, rel: &Relativized) -> Result<Relativized, ResyncError> {
    let t = &rel.transducer;
    let outputs = t.output_alphabet().to_vec();
    let types: Vec<OutputType> = outputs
        .iter()
        .map(|s| OutputType::from_symbol(s).ok_or_else(|| ResyncError::Invalid(format!("output letter {s} has no type"))))
        .collect::<Result<_, _>>()?;
    let mut formulas = Vec::new();
    let mut pair_formula = vec![vec![0; types.len()]; types.len()];
    for (i, a) in types.iter().enumerate() {
        for (j, b) in types.iter().enumerate() {
            let f = r.delta_for(a, b);
            let idx = match formulas.iter().position(|g| *g == f) {
                Some(idx) => idx,
                None => {
                    formulas.push(f);
                    formulas.len() - 1
                }
            };
            pair_formula[i][j] = idx;
        }
    }
    let monoid = JointMonoid::new(&formulas, &rel.base, None)?;
    let inputs = t.input_alphabet().to_vec();
    let values = monoid.unflagged_submonoid(&inputs);
    let mono_letters = annotated_alphabet(&inputs, &values);
    let mono_alphabet: Vec<Symbol> = mono_letters.iter().map(|(_, _, _, s)| s.clone()).collect();
    let mono_domain = monoid_domain(&rel.domain, &monoid, &mono_letters)?;
    let lifted = relabel_input(t, mono_alphabet, |s| s.component(0).cloned().expect("annotated letter"))?;
    let info: HashMap<Symbol, (usize, usize)> = mono_letters.iter().map(|(_, l, r, s)| (s.clone(), (*l, *r))).collect();

    let checker = AnnotationChecker::new(&[&lifted]);
    let (cstates, edges, cinitial) = checker_graph(&checker);
    let mut blocks: Vec<UBlock> = Vec::new();
    let mut letters: Vec<Letter> = Vec::new();
    let mut letter_index: HashMap<AnnotatedSymbol, usize> = HashMap::new();
    for (_, a, _) in &edges {
        if letter_index.contains_key(a) {
            continue;
        }
        let block = a.blocks[0].clone();
        let b = match blocks.iter().position(|x| *x == block) {
            Some(b) => b,
            None => {
                blocks.push(block);
                blocks.len() - 1
            }
        };
        let (l, r) = info[&a.base];
        letter_index.insert(a.clone(), letters.len());
        letters.push(Letter {
            c: a.base.clone(),
            l,
            r,
            annotated: a.clone(),
            symbol: Symbol::tuple([a.base.clone(), Symbol::atom(format!("u{b}"))]),
        });
    }
    let alphabet: Vec<Symbol> = letters.iter().map(|l| l.symbol.clone()).collect();

    // domain: monoid-annotation domain × U-pair checker
    let mut domain = Nfa::new(alphabet.clone())?;
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut out_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cstates.len()];
    for (i, a, j) in &edges {
        out_edges[*i].push((letter_index[a], *j));
    }
    let accepting = |d: usize, c: usize| mono_domain.is_accepting(d) && !checker.end(&cstates[c]).is_empty();
    for &d in mono_domain.initial() {
        for &c in &cinitial {
            if let std::collections::hash_map::Entry::Vacant(e) = ids.entry((d, c)) {
                let id = domain.add_state(accepting(d, c));
                domain.set_initial(id);
                e.insert(id);
                queue.push_back((d, c));
            }
        }
    }
    while let Some((d, c)) = queue.pop_front() {
        let src = ids[&(d, c)];
        for &(li, c2) in &out_edges[c] {
            let Some(sym) = mono_domain.symbol_index(&letters[li].c) else { continue };
            for d2 in mono_domain.successors(d, sym) {
                let id = match ids.get(&(d2, c2)) {
                    Some(&id) => id,
                    None => {
                        let id = domain.add_state(accepting(d2, c2));
                        ids.insert((d2, c2), id);
                        queue.push_back((d2, c2));
                        id
                    }
                };
                domain.add_transition(src, li, id);
            }
        }
    }

    let mut b = Builder {
        t: &lifted,
        norm: normalize(&lifted, 0),
        m: &monoid,
        pair_formula,
        letters,
        out: TwoWayTransducer::new(alphabet, outputs),
        ids: HashMap::new(),
        queue: VecDeque::new(),
    };
    let initial: Vec<usize> = lifted.initial().iter().copied().collect();
    for q in initial {
        b.id(DState::Head(q));
    }
    while let Some(s) = b.queue.pop_front() {
        b.expand(s)?;
    }
    Ok(Relativized {
        transducer: b.out,
        domain: domain.trim(),
        base: rel.base.clone(),
    })
}
