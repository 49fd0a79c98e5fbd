use origin_automata::{Dfa, Nfa, Symbol};

use crate::ast::{Formula, Kind, MsoFormula};
use crate::MsoError;

/// Automata over letters `a * 2^k + mask`, where bit `i` of `mask` is the
/// flag of the `i`-th variable in scope.
struct Compiler<'a> {
    sigma: &'a [Symbol],
    budget: Option<usize>,
}

fn letters(sigma: usize, k: usize) -> Vec<usize> {
    (0..sigma << k).collect()
}

impl Compiler<'_> {
    fn normal(&self, nfa: &Nfa<usize>) -> Result<Nfa<usize>, MsoError> {
        Ok(nfa.determinize_with_budget(self.budget)?.minimize().to_nfa())
    }

    fn atom(&self, k: usize, states: usize, accepting: &[usize], step: impl Fn(usize, usize, usize) -> Option<usize>) -> Nfa<usize> {
        let mut nfa = Nfa::new(letters(self.sigma.len(), k)).expect("distinct letters");
        for q in 0..states {
            nfa.add_state(accepting.contains(&q));
        }
        nfa.set_initial(0);
        for q in 0..states {
            for a in 0..self.sigma.len() {
                for mask in 0..1usize << k {
                    if let Some(t) = step(q, a, mask) {
                        nfa.add_transition(q, a << k | mask, t);
                    }
                }
            }
        }
        nfa
    }

    /// Words in which track `i` carries exactly one flag.
    fn singleton(&self, k: usize, i: usize) -> Nfa<usize> {
        self.atom(k, 2, &[1], |q, _, mask| match (q, mask >> i & 1) {
            (0, 0) => Some(0),
            (0, 1) => Some(1),
            (1, 0) => Some(1),
            _ => None,
        })
    }

    fn compile(&self, f: &Formula, scope: &mut Vec<(String, Kind)>) -> Result<Nfa<usize>, MsoError> {
        let k = scope.len();
        let track = |v: &str| scope.iter().rposition(|(n, _)| n == v).expect("formula was checked");
        let bit = |mask: usize, v: usize| mask >> v & 1 == 1;
        Ok(match f {
            Formula::True => self.atom(k, 1, &[0], |_, _, _| Some(0)),
            Formula::False => self.atom(k, 1, &[], |_, _, _| Some(0)),
            Formula::And(a, b) => {
                let (a, b) = (self.compile(a, scope)?, self.compile(b, scope)?);
                self.normal(&a.product(&b)?)?
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.compile(a, scope)?, self.compile(b, scope)?);
                self.normal(&a.union(&b)?)?
            }
            Formula::Not(a) => self
                .compile(a, scope)?
                .determinize_with_budget(self.budget)?
                .complement()
                .minimize()
                .to_nfa(),
            Formula::Exists1(x, a) => self.exists(x, Kind::First, a, scope)?,
            Formula::Exists2(x, a) => self.exists(x, Kind::Second, a, scope)?,
            Formula::Forall1(x, a) => {
                let inner = Formula::not(Formula::Exists1(x.clone(), Box::new(Formula::not((**a).clone()))));
                self.compile(&inner, scope)?
            }
            Formula::Forall2(x, a) => {
                let inner = Formula::not(Formula::Exists2(x.clone(), Box::new(Formula::not((**a).clone()))));
                self.compile(&inner, scope)?
            }
            Formula::Label(l, x) => {
                let (x, want) = (track(x), self.sigma.iter().position(|s| s == l));
                self.atom(k, 1, &[0], |_, a, mask| (!bit(mask, x) || Some(a) == want).then_some(0))
            }
            Formula::In(x, s) => {
                let (x, s) = (track(x), track(s));
                self.atom(k, 1, &[0], |_, _, mask| (!bit(mask, x) || bit(mask, s)).then_some(0))
            }
            Formula::Eq(x, y) => {
                let (x, y) = (track(x), track(y));
                self.atom(k, 1, &[0], |_, _, mask| (bit(mask, x) == bit(mask, y)).then_some(0))
            }
            Formula::Lt(x, y) | Formula::Succ(x, y) => {
                let succ = matches!(f, Formula::Succ(..));
                let (x, y) = (track(x), track(y));
                self.atom(k, 3, &[2], |q, _, mask| match (q, bit(mask, x), bit(mask, y)) {
                    (0, false, false) => Some(0),
                    (0, true, false) => Some(1),
                    (1, false, false) if !succ => Some(1),
                    (1, false, true) => Some(2),
                    (2, false, false) => Some(2),
                    _ => None,
                })
            }
            Formula::First(x) => {
                let x = track(x);
                self.atom(k, 2, &[1], |q, _, mask| match q {
                    0 => bit(mask, x).then_some(1),
                    _ => Some(1),
                })
            }
            Formula::Last(x) => {
                let x = track(x);
                self.atom(k, 2, &[1], |q, _, mask| match q {
                    0 if bit(mask, x) => Some(1),
                    0 => Some(0),
                    _ => None,
                })
            }
        })
    }

    fn exists(&self, x: &str, kind: Kind, body: &Formula, scope: &mut Vec<(String, Kind)>) -> Result<Nfa<usize>, MsoError> {
        scope.push((x.to_string(), kind));
        let k = scope.len();
        let inner = self.compile(body, scope);
        scope.pop();
        let mut inner = inner?;
        if kind == Kind::First {
            inner = inner.product(&self.singleton(k, k - 1))?;
        }
        let low = (1usize << (k - 1)) - 1;
        let projected = inner.map_symbols(letters(self.sigma.len(), k - 1), |&l| {
            Some((l >> k) << (k - 1) | (l & low))
        })?;
        self.normal(&projected)
    }
}

/// Deterministic automaton over `Σ × 𝔹^k` (letters `(a, b_1, …, b_k)` in
/// layout order) accepting exactly the encodings of satisfying assignments.
/// First-order tracks carry exactly one flag. `budget` caps every subset
/// construction.
pub fn compile(f: &MsoFormula, sigma: &[Symbol], budget: Option<usize>) -> Result<Dfa<Symbol>, MsoError> {
    f.validate()?;
    let compiler = Compiler { sigma, budget };
    let mut scope = f.scope();
    let k = scope.len();
    let mut nfa = compiler.compile(&f.body, &mut scope)?;
    for i in 0..f.free1.len() {
        nfa = nfa.product(&compiler.singleton(k, i))?;
    }
    let dfa = nfa.determinize_with_budget(budget)?.minimize();
    let alphabet = flagged_alphabet(sigma, k);
    let named = dfa.to_nfa().map_symbols(alphabet.clone(), |&l| Some(alphabet[l].clone()))?;
    Ok(named.determinize().minimize())
}

/// `Σ × 𝔹^k` in the order used by [`compile`].
pub fn flagged_alphabet(sigma: &[Symbol], k: usize) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(sigma.len() << k);
    for a in sigma {
        for mask in 0..1usize << k {
            out.push(Symbol::tuple(
                std::iter::once(a.clone()).chain((0..k).map(|i| Symbol::Bool(mask >> i & 1 == 1))),
            ));
        }
    }
    out
}

/// Copies `q` (no mark seen) and `q̂` (mark seen) of every state; a letter
/// flagged on `track` may only move from the first copy to the second.
/// Each accepting run of the result picks one flagged position, so its
/// ambiguity counts the positions that can carry the flag.
pub fn mark_and_project(a: &Nfa<Symbol>, track: usize) -> Result<Nfa<Symbol>, MsoError> {
    let component = track + 1;
    let strip = |s: &Symbol| -> Option<(Symbol, bool)> {
        let Symbol::Tuple(parts) = s else { return None };
        let flag = parts.get(component)?.as_bool()?;
        let rest = parts
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != component)
            .map(|(_, p)| p.clone());
        Some((Symbol::tuple(rest), flag))
    };
    let mut alphabet = Vec::new();
    let mut lookup = Vec::with_capacity(a.alphabet().len());
    for s in a.alphabet() {
        let (rest, flag) = strip(s).ok_or(MsoError::NoSuchTrack(track))?;
        if !alphabet.contains(&rest) {
            alphabet.push(rest.clone());
        }
        lookup.push((rest, flag));
    }
    let mut out = Nfa::new(alphabet)?;
    let n = a.num_states();
    for _ in 0..n {
        out.add_state(false);
    }
    for q in 0..n {
        out.add_state(a.is_accepting(q));
    }
    for &q in a.initial() {
        out.set_initial(q);
    }
    for p in 0..n {
        for (s, q) in a.transitions_from(p) {
            let (rest, flag) = &lookup[s];
            let sym = out.symbol_index(rest).expect("listed above");
            if *flag {
                out.add_transition(p, sym, n + q);
            } else {
                out.add_transition(p, sym, q);
                out.add_transition(n + p, sym, n + q);
            }
        }
    }
    Ok(out)
}
