use std::collections::{BTreeMap, BTreeSet};

use origin_automata::{Symbol, Word};

use crate::ast::{Formula, MsoFormula};
use crate::MsoError;

/// Values of free variables; positions are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub first: BTreeMap<String, usize>,
    pub second: BTreeMap<String, BTreeSet<usize>>,
}

impl Assignment {
    pub fn with_first(mut self, v: &str, pos: usize) -> Self {
        self.first.insert(v.to_string(), pos);
        self
    }

    pub fn with_second(mut self, v: &str, set: impl IntoIterator<Item = usize>) -> Self {
        self.second.insert(v.to_string(), set.into_iter().collect());
        self
    }
}

#[derive(Clone)]
enum Value {
    Pos(usize),
    Set(BTreeSet<usize>),
}

struct Env<'a> {
    word: &'a [Symbol],
    vars: Vec<(String, Value)>,
}

impl Env<'_> {
    fn pos(&self, v: &str) -> usize {
        match self.vars.iter().rev().find(|(n, _)| n == v) {
            Some((_, Value::Pos(p))) => *p,
            _ => unreachable!("formula was checked"),
        }
    }

    fn set(&self, v: &str) -> &BTreeSet<usize> {
        match self.vars.iter().rev().find(|(n, _)| n == v) {
            Some((_, Value::Set(s))) => s,
            _ => unreachable!("formula was checked"),
        }
    }

    fn with<R>(&mut self, v: &str, value: Value, f: impl FnOnce(&mut Self) -> R) -> R {
        self.vars.push((v.to_string(), value));
        let r = f(self);
        self.vars.pop();
        r
    }

    fn eval(&mut self, f: &Formula) -> bool {
        let n = self.word.len();
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::And(a, b) => self.eval(a) && self.eval(b),
            Formula::Or(a, b) => self.eval(a) || self.eval(b),
            Formula::Not(a) => !self.eval(a),
            Formula::Exists1(x, a) => (1..=n).any(|p| self.with(x, Value::Pos(p), |e| e.eval(a))),
            Formula::Forall1(x, a) => (1..=n).all(|p| self.with(x, Value::Pos(p), |e| e.eval(a))),
            Formula::Exists2(x, a) => subsets(n).any(|s| self.with(x, Value::Set(s), |e| e.eval(a))),
            Formula::Forall2(x, a) => subsets(n).all(|s| self.with(x, Value::Set(s), |e| e.eval(a))),
            Formula::Label(a, x) => &self.word[self.pos(x) - 1] == a,
            Formula::In(x, s) => self.set(s).contains(&self.pos(x)),
            Formula::Lt(x, y) => self.pos(x) < self.pos(y),
            Formula::Succ(x, y) => self.pos(x) + 1 == self.pos(y),
            Formula::Eq(x, y) => self.pos(x) == self.pos(y),
            Formula::First(x) => self.pos(x) == 1,
            Formula::Last(x) => self.pos(x) == n,
        }
    }
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u64..1 << n).map(move |mask| (1..=n).filter(|p| mask >> (p - 1) & 1 == 1).collect())
}

fn bound_values(f: &MsoFormula, word: &[Symbol], assignment: &Assignment) -> Result<Vec<(String, Value)>, MsoError> {
    let n = word.len();
    let mut vars = Vec::new();
    for v in &f.free1 {
        let p = *assignment.first.get(v).ok_or_else(|| MsoError::Unassigned(v.clone()))?;
        if p == 0 || p > n {
            return Err(MsoError::OutOfRange { var: v.clone(), pos: p });
        }
        vars.push((v.clone(), Value::Pos(p)));
    }
    for v in &f.free2 {
        let s = assignment.second.get(v).cloned().unwrap_or_default();
        if let Some(&p) = s.iter().find(|&&p| p == 0 || p > n) {
            return Err(MsoError::OutOfRange { var: v.clone(), pos: p });
        }
        vars.push((v.clone(), Value::Set(s)));
    }
    Ok(vars)
}

/// Direct recursive semantics. Second-order variables missing from the
/// assignment are empty.
pub fn evaluate(f: &MsoFormula, word: &[Symbol], assignment: &Assignment) -> Result<bool, MsoError> {
    let vars = bound_values(f, word, assignment)?;
    Ok(Env { word, vars }.eval(&f.body))
}

/// The word over `Σ × 𝔹^k` encoding `word` with the assignment, one flag
/// track per free variable in layout order.
pub fn encode(f: &MsoFormula, word: &[Symbol], assignment: &Assignment) -> Word {
    (1..=word.len())
        .map(|p| {
            let flags = f
                .free1
                .iter()
                .map(|v| assignment.first.get(v) == Some(&p))
                .chain(f.free2.iter().map(|v| assignment.second.get(v).is_some_and(|s| s.contains(&p))));
            Symbol::tuple(std::iter::once(word[p - 1].clone()).chain(flags.map(Symbol::Bool)))
        })
        .collect()
}

/// All assignments of the free variables over a word of length `n`.
pub fn all_assignments(f: &MsoFormula, n: usize) -> Vec<Assignment> {
    let mut out = vec![Assignment::default()];
    for v in &f.free1 {
        out = out
            .into_iter()
            .flat_map(|a| (1..=n).map(move |p| a.clone().with_first(v, p)))
            .collect();
    }
    for v in &f.free2 {
        out = out
            .into_iter()
            .flat_map(|a| subsets(n).map(move |s| a.clone().with_second(v, s)))
            .collect();
    }
    out
}
