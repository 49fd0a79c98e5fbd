use std::collections::{BTreeMap, HashMap, VecDeque};

use origin_automata::{Nfa, Symbol};
use origin_mso::MsoFormula;
use origin_transducer::{single_letter_form, Class, Dir, Read, TwoWayTransducer};

use crate::monoid::JointMonoid;
use crate::relativized::{annotated_alphabet, monoid_domain, Relativized};
use crate::resynchronizer::{OutputType, Resynchronizer};
use crate::ResyncError;

/// What to do once the simulation is back at the source: the transition
/// that emitted, minus its output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Ret {
    read: Symbol,
    to: usize,
    dir: Dir,
    letter: usize,
    formula: usize,
}

/// Candidate sources between the source and the current cell, as a
/// multiset of their accumulated values with counts capped at the bound.
type Cands = Vec<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum GState {
    Sim(usize),
    /// Looking for a target right of the source `y`; `m = h(u_{y,·}[y, p-1])`.
    Right { ret: Ret, l: usize, m: usize, cands: Cands },
    /// Looking for a target left of `y`; `s = h(u_{y,·}[p+1, y])`.
    Left { ret: Ret, r: usize, s: usize, cands: Cands },
    /// Back from a target right of `y`, skipping `skip` look-alike sources.
    BackLeft { ret: Ret, l: usize, target: usize, s: usize, skip: usize },
    BackRight { ret: Ret, r: usize, target: usize, s: usize, skip: usize },
}

fn add_cand(cands: &mut Cands, e: usize, cap: usize) {
    match cands.iter_mut().find(|(x, _)| *x == e) {
        Some((_, c)) => *c = (*c + 1).min(cap),
        None => {
            cands.push((e, 1));
            cands.sort_unstable();
        }
    }
}

fn map_cands(cands: &Cands, cap: usize, f: impl Fn(usize) -> usize) -> Cands {
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    for &(e, c) in cands {
        let slot = out.entry(f(e)).or_default();
        *slot = (*slot + c).min(cap);
    }
    out.into_iter().collect()
}

struct Builder<'a> {
    t: TwoWayTransducer,
    m: &'a JointMonoid,
    cap: usize,
    formula_of: Vec<usize>,
    singles: Vec<Nfa<Symbol>>,
    epsilon: Nfa<Symbol>,
    letters: Vec<(Symbol, usize, usize, Symbol)>,
    out: TwoWayTransducer,
    ids: HashMap<GState, usize>,
    queue: VecDeque<GState>,
}

impl Builder<'_> {
    fn class(&self, s: &GState) -> Class {
        match s {
            GState::Sim(q) => self.t.class(*q),
            GState::Right { .. } | GState::BackRight { .. } => Class::R,
            GState::Left { .. } | GState::BackLeft { .. } => Class::L,
        }
    }

    fn id(&mut self, s: GState) -> usize {
        if let Some(&id) = self.ids.get(&s) {
            return id;
        }
        let name = match &s {
            GState::Sim(q) => self.t.state_name(*q).to_string(),
            _ => format!("w{}", self.ids.len()),
        };
        let id = self.out.add_state(name, self.class(&s));
        if let GState::Sim(q) = s {
            if self.t.initial().contains(&q) {
                self.out.set_initial(id);
            }
            if self.t.is_final(q) {
                self.out.set_final(id);
            }
        }
        self.ids.insert(s.clone(), id);
        self.queue.push_back(s);
        id
    }

    fn add(&mut self, from: usize, read: &Symbol, to: GState, dir: Dir, out: Option<usize>) -> Result<(), ResyncError> {
        let to = self.id(to);
        let lang = match out {
            Some(b) => self.singles[b].clone(),
            None => self.epsilon.clone(),
        };
        self.out.add_transition(from, Read::Letter(read.clone()), to, dir, lang)?;
        Ok(())
    }

    fn g(&self, c: &Symbol, f1: bool, f2: bool) -> usize {
        self.m.generator(c, f1, f2)
    }

    fn expand(&mut self, state: GState) -> Result<(), ResyncError> {
        let src = self.ids[&state];
        if let GState::Sim(q) = state {
            for read in [Read::Start, Read::End] {
                let moves: Vec<(usize, Dir)> = self.t.transitions_on(q, &read).map(|tr| (tr.to, tr.dir)).collect();
                for (to, dir) in moves {
                    let to = self.id(GState::Sim(to));
                    self.out.add_transition(src, read.clone(), to, dir, self.epsilon.clone())?;
                }
            }
        }
        let letters = self.letters.clone();
        for (c, lp, rp, sym) in &letters {
            self.expand_on(src, &state, c, *lp, *rp, sym)?;
        }
        Ok(())
    }

    fn expand_on(&mut self, src: usize, state: &GState, c: &Symbol, lp: usize, rp: usize, sym: &Symbol) -> Result<(), ResyncError> {
        let m = self.m;
        let cap = self.cap;
        match state {
            GState::Sim(q) => {
                let trs: Vec<_> = self
                    .t
                    .transitions_on(*q, &Read::Letter(c.clone()))
                    .map(|tr| (tr.to, tr.dir, tr.output.clone()))
                    .collect();
                for (to, dir, lang) in trs {
                    let lang = lang.trim();
                    if lang.initial().iter().any(|&i| lang.is_accepting(i)) {
                        self.add(src, sym, GState::Sim(to), dir, None)?;
                    }
                    let mut emitted: Vec<usize> = Vec::new();
                    for &i in lang.initial() {
                        for (b, n2) in lang.transitions_from(i) {
                            if lang.is_accepting(n2) && !emitted.contains(&b) {
                                emitted.push(b);
                            }
                        }
                    }
                    for b in emitted {
                        let letter = self.out.output_alphabet().iter().position(|x| *x == lang.alphabet()[b]).expect("same output alphabet");
                        let formula = self.formula_of[letter];
                        if m.accepts(formula, m.mul3(lp, self.g(c, true, true), rp)) {
                            self.add(src, sym, GState::Sim(to), dir, Some(letter))?;
                        }
                        let ret = Ret {
                            read: c.clone(),
                            to,
                            dir,
                            letter,
                            formula,
                        };
                        let start = self.g(c, true, false);
                        let right = GState::Right {
                            ret: ret.clone(),
                            l: lp,
                            m: start,
                            cands: Vec::new(),
                        };
                        self.add(src, sym, right, Dir::Right, None)?;
                        let left = GState::Left {
                            ret,
                            r: rp,
                            s: start,
                            cands: Vec::new(),
                        };
                        self.add(src, sym, left, Dir::Left, None)?;
                    }
                }
            }
            GState::Right { ret, l, m: acc, cands } => {
                let mz = m.mul(*acc, self.g(c, false, true));
                if m.accepts(ret.formula, m.mul3(*l, mz, rp)) {
                    let tz = self.g(c, false, true);
                    let skip = cands.iter().filter(|&&(e, _)| m.mul(e, tz) == mz).map(|&(_, n)| n).sum();
                    let back = GState::BackLeft {
                        ret: ret.clone(),
                        l: *l,
                        target: mz,
                        s: tz,
                        skip,
                    };
                    self.add(src, sym, back, Dir::Left, Some(ret.letter))?;
                }
                let g0 = self.g(c, false, false);
                let mut next = map_cands(cands, cap, |e| m.mul(e, g0));
                if lp == *l {
                    add_cand(&mut next, self.g(c, true, false), cap);
                }
                let right = GState::Right {
                    ret: ret.clone(),
                    l: *l,
                    m: m.mul(*acc, g0),
                    cands: next,
                };
                self.add(src, sym, right, Dir::Right, None)?;
            }
            GState::Left { ret, r, s, cands } => {
                let tz = self.g(c, false, true);
                let mz = m.mul(tz, *s);
                if m.accepts(ret.formula, m.mul3(lp, mz, *r)) {
                    let skip = cands.iter().filter(|&&(e, _)| m.mul(tz, e) == mz).map(|&(_, n)| n).sum();
                    let back = GState::BackRight {
                        ret: ret.clone(),
                        r: *r,
                        target: mz,
                        s: tz,
                        skip,
                    };
                    self.add(src, sym, back, Dir::Right, Some(ret.letter))?;
                }
                let g0 = self.g(c, false, false);
                let mut next = map_cands(cands, cap, |e| m.mul(g0, e));
                if rp == *r {
                    add_cand(&mut next, self.g(c, true, false), cap);
                }
                let left = GState::Left {
                    ret: ret.clone(),
                    r: *r,
                    s: m.mul(g0, *s),
                    cands: next,
                };
                self.add(src, sym, left, Dir::Left, None)?;
            }
            GState::BackLeft { ret, l, target, s, skip } => {
                let matches = lp == *l && m.mul(self.g(c, true, false), *s) == *target;
                let g0 = self.g(c, false, false);
                if matches && *skip == 0 {
                    if *c == ret.read {
                        self.add(src, sym, GState::Sim(ret.to), ret.dir, None)?;
                    }
                } else {
                    let back = GState::BackLeft {
                        ret: ret.clone(),
                        l: *l,
                        target: *target,
                        s: m.mul(g0, *s),
                        skip: skip - usize::from(matches),
                    };
                    self.add(src, sym, back, Dir::Left, None)?;
                }
            }
            GState::BackRight { ret, r, target, s, skip } => {
                let matches = rp == *r && m.mul(*s, self.g(c, true, false)) == *target;
                let g0 = self.g(c, false, false);
                if matches && *skip == 0 {
                    if *c == ret.read {
                        self.add(src, sym, GState::Sim(ret.to), ret.dir, None)?;
                    }
                } else {
                    let back = GState::BackRight {
                        ret: ret.clone(),
                        r: *r,
                        target: *target,
                        s: m.mul(*s, g0),
                        skip: skip - usize::from(matches),
                    };
                    self.add(src, sym, back, Dir::Right, None)?;
                }
            }
        }
        Ok(())
    }
}

/// Distinct formulas selected by the output letters of `t`, and the
/// index of each letter's formula.
pub(crate) fn formulas_by_letter<'r>(
    output_alphabet: &[Symbol],
    select: impl Fn(&OutputType) -> &'r MsoFormula,
) -> Result<(Vec<&'r MsoFormula>, Vec<usize>), ResyncError> {
    let mut formulas: Vec<&MsoFormula> = Vec::new();
    let mut index = Vec::new();
    for s in output_alphabet {
        let t = OutputType::from_symbol(s).ok_or_else(|| ResyncError::Invalid(format!("output letter {s} has no type")))?;
        let f = select(&t);
        let i = match formulas.iter().position(|g| *g == f) {
            Some(i) => i,
            None => {
                formulas.push(f);
                formulas.len() - 1
            }
        };
        index.push(i);
    }
    Ok((formulas, index))
}

/// Moves every output letter from its source to a target allowed by γ.
///
/// Inputs are annotated with the monoid values `ℓ_i` of the prefix before
/// and `r_i` of the suffix after each position. After emitting at the
/// target, the transducer walks back and recognizes the source by its
/// prefix value and the value of the segment up to the target. Other
/// positions may look the same; their number, at most `cap - 1` by
/// boundedness, is counted on the way out and skipped on the way back.
pub fn apply_gamma(r: &Resynchronizer, rel: &Relativized, cap: usize) -> Result<Relativized, ResyncError> {
    let t = single_letter_form(&rel.transducer)?;
    let (formulas, formula_of) = formulas_by_letter(t.output_alphabet(), |ty| r.gamma_for(ty))?;
    let monoid = JointMonoid::new(&formulas, &rel.base, None)?;
    let inputs = t.input_alphabet().to_vec();
    let values = monoid.unflagged_submonoid(&inputs);
    let letters = annotated_alphabet(&inputs, &values);
    let alphabet: Vec<Symbol> = letters.iter().map(|(_, _, _, s)| s.clone()).collect();
    let outputs = t.output_alphabet().to_vec();
    let singles = outputs
        .iter()
        .map(|b| Nfa::from_words(outputs.clone(), &[vec![b.clone()]]))
        .collect::<Result<_, _>>()?;
    let epsilon = Nfa::from_words(outputs.clone(), &[vec![]])?;
    let mut b = Builder {
        out: TwoWayTransducer::new(alphabet, outputs),
        t,
        m: &monoid,
        cap: cap.max(1),
        formula_of,
        singles,
        epsilon,
        letters: letters.clone(),
        ids: HashMap::new(),
        queue: VecDeque::new(),
    };
    let initial: Vec<usize> = b.t.initial().iter().copied().collect();
    for q in initial {
        b.id(GState::Sim(q));
    }
    while let Some(s) = b.queue.pop_front() {
        b.expand(s)?;
    }
    Ok(Relativized {
        transducer: b.out,
        domain: monoid_domain(&rel.domain, &monoid, &letters)?,
        base: rel.base.clone(),
    })
}
