use std::collections::{BTreeSet, HashMap, VecDeque};

use origin_automata::{Nfa, Symbol, Word};
use origin_transducer::{enumerate_sync_pairs, words_up_to, Read, SyncPair, TwoWayTransducer};

use crate::monoid::JointMonoid;
use crate::ResyncError;

/// A transducer over an annotated input alphabet together with the
/// automaton of admissible annotated inputs. Its semantics is the set of
/// pairs on admissible inputs, with inputs projected back to `base`.
#[derive(Clone, Debug)]
pub struct Relativized {
    pub transducer: TwoWayTransducer,
    pub domain: Nfa<Symbol>,
    pub base: Vec<Symbol>,
}

impl Relativized {
    /// `t` on all of its inputs.
    pub fn unrestricted(t: &TwoWayTransducer) -> Result<Self, ResyncError> {
        Ok(Relativized {
            transducer: t.clone(),
            domain: Nfa::universal(t.input_alphabet().to_vec())?,
            base: t.input_alphabet().to_vec(),
        })
    }

    /// `t` restricted to the inputs of `domain`, an automaton over the
    /// input alphabet of `t`.
    pub fn restricted(t: &TwoWayTransducer, domain: &Nfa<Symbol>) -> Result<Self, ResyncError> {
        Ok(Relativized {
            transducer: t.clone(),
            domain: pullback(domain, t.input_alphabet(), |s| Some(s.clone()))?,
            base: t.input_alphabet().to_vec(),
        })
    }

    /// The base letter under an annotated one.
    pub fn project_letter(&self, s: &Symbol) -> Symbol {
        project_letter(&self.base, s)
    }

    pub fn project(&self, w: &[Symbol]) -> Word {
        w.iter().map(|s| self.project_letter(s)).collect()
    }

    /// Projected pairs on admissible inputs of length at most `max_len`
    /// with outputs of length at most `max_out`.
    pub fn pairs_up_to(&self, max_len: usize, max_out: usize) -> BTreeSet<SyncPair> {
        let mut out = BTreeSet::new();
        for w in words_up_to(&self.domain, max_len) {
            let u = self.project(&w);
            for p in enumerate_sync_pairs(&self.transducer, &w, max_out) {
                out.insert(p.with_input(u.clone()));
            }
        }
        out
    }

    /// Projected pairs on the admissible inputs projecting to `u`.
    pub fn pairs_on(&self, u: &[Symbol], max_out: usize) -> BTreeSet<SyncPair> {
        let mut words: Vec<(Word, BTreeSet<usize>)> = vec![(Vec::new(), self.domain.initial().clone())];
        for a in u {
            let mut next = Vec::new();
            for (w, set) in &words {
                for (i, s) in self.domain.alphabet().iter().enumerate() {
                    if self.project_letter(s) != *a {
                        continue;
                    }
                    let stepped = self.domain.step_set(set, i);
                    if !stepped.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(s.clone());
                        next.push((w2, stepped));
                    }
                }
            }
            words = next;
        }
        let mut out = BTreeSet::new();
        for (w, set) in words {
            if set.iter().any(|&q| self.domain.is_accepting(q)) {
                for p in enumerate_sync_pairs(&self.transducer, &w, max_out) {
                    out.insert(p.with_input(u.to_vec()));
                }
            }
        }
        out
    }
}

pub fn project_letter(base: &[Symbol], s: &Symbol) -> Symbol {
    let mut cur = s;
    loop {
        if base.contains(cur) {
            return cur.clone();
        }
        match cur {
            Symbol::Tuple(parts) if !parts.is_empty() => cur = &parts[0],
            _ => return cur.clone(),
        }
    }
}

/// The automaton over `alphabet` reading each letter as `f(letter)` in
/// `a`; letters mapped to `None` or outside `a` have no transitions.
pub fn pullback(a: &Nfa<Symbol>, alphabet: &[Symbol], f: impl Fn(&Symbol) -> Option<Symbol>) -> Result<Nfa<Symbol>, ResyncError> {
    let mut out = Nfa::new(alphabet.to_vec())?;
    for q in 0..a.num_states() {
        out.add_state(a.is_accepting(q));
    }
    for &q in a.initial() {
        out.set_initial(q);
    }
    let map: Vec<Option<usize>> = alphabet.iter().map(|s| f(s).and_then(|t| a.symbol_index(&t))).collect();
    for p in 0..a.num_states() {
        for (i, m) in map.iter().enumerate() {
            if let Some(m) = m {
                for q in a.successors(p, *m) {
                    out.add_transition(p, i, q);
                }
            }
        }
    }
    Ok(out)
}

/// Copy of `t` reading `alphabet`, where a letter behaves like
/// `f(letter)`; output languages are kept.
pub fn relabel_input(
    t: &TwoWayTransducer,
    alphabet: Vec<Symbol>,
    f: impl Fn(&Symbol) -> Symbol,
) -> Result<TwoWayTransducer, ResyncError> {
    let mut by_base: HashMap<Symbol, Vec<Symbol>> = HashMap::new();
    for s in &alphabet {
        by_base.entry(f(s)).or_default().push(s.clone());
    }
    let mut out = TwoWayTransducer::new(alphabet, t.output_alphabet().to_vec());
    copy_states(t, &mut out);
    for tr in t.transitions() {
        match &tr.read {
            Read::Letter(a) => {
                for s in by_base.get(a).into_iter().flatten() {
                    out.add_transition(tr.from, Read::Letter(s.clone()), tr.to, tr.dir, (*tr.output).clone())?;
                }
            }
            marker => out.add_transition(tr.from, marker.clone(), tr.to, tr.dir, (*tr.output).clone())?,
        }
    }
    Ok(out)
}

pub fn copy_states(from: &TwoWayTransducer, to: &mut TwoWayTransducer) {
    for s in from.states() {
        to.add_state(s.name.clone(), s.class);
    }
    for &q in from.initial() {
        to.set_initial(q);
    }
    for &q in from.final_states() {
        to.set_final(q);
    }
}

/// Annotation of a letter with prefix and suffix monoid values.
pub fn annotated(letter: &Symbol, l: usize, r: usize) -> Symbol {
    Symbol::tuple([letter.clone(), Symbol::atom(format!("m{l}.{r}"))])
}

/// Letters `(c, ℓ, r)` for every `c` and every pair of values a prefix
/// and a suffix can take.
pub fn annotated_alphabet(letters: &[Symbol], values: &BTreeSet<usize>) -> Vec<(Symbol, usize, usize, Symbol)> {
    let mut out = Vec::new();
    for c in letters {
        for &l in values {
            for &r in values {
                out.push((c.clone(), l, r, annotated(c, l, r)));
            }
        }
    }
    out
}

/// Accepts the words over `(c, ℓ, r)` letters whose annotations are the
/// true prefix and suffix values, intersected with `domain` read on `c`.
///
/// `ℓ` is checked deterministically; each `r` is checked against the `r`
/// of the previous letter, and the last one must be the identity.
pub fn monoid_domain(
    domain: &Nfa<Symbol>,
    monoid: &JointMonoid,
    letters: &[(Symbol, usize, usize, Symbol)],
) -> Result<Nfa<Symbol>, ResyncError> {
    let alphabet: Vec<Symbol> = letters.iter().map(|(_, _, _, s)| s.clone()).collect();
    let mut out = Nfa::new(alphabet)?;
    // (domain state, next ℓ, previous r)
    type Key = (usize, usize, Option<usize>);
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let accepting = |k: &Key| domain.is_accepting(k.0) && k.2.is_none_or(|r| r == monoid.identity());
    for &q in domain.initial() {
        let key = (q, monoid.identity(), None);
        let id = out.add_state(accepting(&key));
        out.set_initial(id);
        ids.insert(key, id);
        queue.push_back(key);
    }
    let gens: Vec<usize> = letters.iter().map(|(c, _, _, _)| monoid.generator(c, false, false)).collect();
    let base_index: Vec<Option<usize>> = letters.iter().map(|(c, _, _, _)| domain.symbol_index(c)).collect();
    while let Some(key @ (q, l_next, r_prev)) = queue.pop_front() {
        let src = ids[&key];
        for (i, (_, l, r, _)) in letters.iter().enumerate() {
            if *l != l_next {
                continue;
            }
            if let Some(rp) = r_prev {
                if monoid.mul(gens[i], *r) != rp {
                    continue;
                }
            }
            let Some(sym) = base_index[i] else { continue };
            for q2 in domain.successors(q, sym) {
                let next = (q2, monoid.mul(l_next, gens[i]), Some(*r));
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = out.add_state(accepting(&next));
                        ids.insert(next, id);
                        queue.push_back(next);
                        id
                    }
                };
                out.add_transition(src, i, id);
            }
        }
    }
    Ok(out.trim())
}
