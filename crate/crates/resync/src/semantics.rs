use std::collections::{BTreeMap, BTreeSet};

use origin_automata::Symbol;
use origin_mso::{compile, evaluate, mark_and_project, Assignment, MsoFormula};
use origin_transducer::SyncPair;

use crate::resynchronizer::{OutputType, Resynchronizer};
use crate::ResyncError;

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0..1u64 << n).map(move |mask| (1..=n).filter(|&p| mask >> (p - 1) & 1 == 1).collect())
}

/// All tuples of `k` subsets of `{1..n}`.
fn interpretations(k: usize, n: usize) -> Vec<Vec<BTreeSet<usize>>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                subsets(n).map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

fn with_sets(names: &[String], sets: &[BTreeSet<usize>]) -> Assignment {
    names
        .iter()
        .zip(sets)
        .fold(Assignment::default(), |a, (v, s)| a.with_second(v, s.iter().copied()))
}

fn holds(f: &MsoFormula, word: &[Symbol], base: &Assignment, a: usize, b: usize) -> Result<bool, ResyncError> {
    let asg = base.clone().with_first(&f.free1[0], a).with_first(&f.free1[1], b);
    Ok(evaluate(f, word, &asg)?)
}

/// Brute-force membership of `(σ, σ')` in the resynchronization of `r`:
/// every interpretation of the parameters is tried.
pub fn resync_semantics(r: &Resynchronizer, sigma: &SyncPair, sigma2: &SyncPair) -> Result<bool, ResyncError> {
    if sigma.input != sigma2.input || sigma.output_word() != sigma2.output_word() {
        return Ok(false);
    }
    let u = &sigma.input;
    let v = sigma.output_word();
    let in_range = |p: &SyncPair| p.origins().iter().all(|&o| (1..=u.len()).contains(&o));
    if !in_range(sigma) || !in_range(sigma2) {
        return Ok(false);
    }
    let (src, tgt) = (sigma.origins(), sigma2.origins());
    let mut betas = Vec::new();
    for o in interpretations(r.n(), v.len()) {
        if evaluate(&r.beta, &v, &with_sets(&r.output_params, &o))? {
            betas.push(o);
        }
    }
    if betas.is_empty() {
        return Ok(false);
    }
    for i in interpretations(r.m(), u.len()) {
        let base = with_sets(&r.input_params, &i);
        if !evaluate(&r.alpha, u, &base)? {
            continue;
        }
        for o in &betas {
            let types: Vec<OutputType> = (0..v.len())
                .map(|x| OutputType::new(v[x].clone(), o.iter().map(|s| s.contains(&(x + 1))).collect()))
                .collect();
            if check_origins(r, u, &base, &types, &src, &tgt)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn check_origins(
    r: &Resynchronizer,
    u: &[Symbol],
    base: &Assignment,
    types: &[OutputType],
    src: &[usize],
    tgt: &[usize],
) -> Result<bool, ResyncError> {
    for x in 0..types.len() {
        if !holds(r.gamma_for(&types[x]), u, base, src[x], tgt[x])? {
            return Ok(false);
        }
        if x + 1 < types.len() && !holds(r.delta_for(&types[x], &types[x + 1]), u, base, tgt[x], tgt[x + 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{σ' : ∃σ ∈ pairs, (σ, σ') ∈ ⟦r⟧}`, by trying every origin assignment.
pub fn resync_image<'a>(
    r: &Resynchronizer,
    pairs: impl IntoIterator<Item = &'a SyncPair>,
) -> Result<BTreeSet<SyncPair>, ResyncError> {
    let mut out = BTreeSet::new();
    for sigma in pairs {
        let n = sigma.input.len();
        let len = sigma.output.len();
        if n == 0 {
            if len == 0 && resync_semantics(r, sigma, sigma)? {
                out.insert(sigma.clone());
            }
            continue;
        }
        let mut origins = vec![1usize; len];
        loop {
            let candidate = SyncPair::new(
                sigma.input.clone(),
                sigma.output.iter().zip(&origins).map(|((s, _), &o)| (s.clone(), o)).collect(),
            );
            if !out.contains(&candidate) && resync_semantics(r, sigma, &candidate)? {
                out.insert(candidate);
            }
            // next origin vector in lexicographic order
            let Some(i) = (0..len).rev().find(|&i| origins[i] < n) else { break };
            origins[i] += 1;
            for o in &mut origins[i + 1..] {
                *o = 1;
            }
        }
    }
    Ok(out)
}

/// Alphabet on which every formula of `r` behaves as on any larger one:
/// the letters it mentions plus one letter it does not.
pub fn witness_alphabet<'a>(formulas: impl IntoIterator<Item = &'a MsoFormula>) -> Vec<Symbol> {
    let mut letters: BTreeSet<Symbol> = formulas.into_iter().flat_map(|f| f.body.labels()).collect();
    let mut other = String::from("_");
    while letters.contains(&Symbol::atom(other.as_str())) {
        other.push('_');
    }
    letters.insert(Symbol::atom(other));
    letters.into_iter().collect()
}

/// Largest number of sources a single target can have under one γ
/// formula, over all words on `sigma` and parameter values; `None` if
/// unbounded.
pub fn gamma_degree(f: &MsoFormula, sigma: &[Symbol], budget: Option<usize>) -> Result<Option<u64>, ResyncError> {
    let dfa = compile(f, sigma, budget)?;
    let marked = mark_and_project(&dfa.to_nfa(), 0)?;
    Ok(marked.ambiguity_degree())
}

/// The least `k` such that `r` is `k`-bounded over `sigma`, or `None`.
pub fn bound_over(r: &Resynchronizer, sigma: &[Symbol], budget: Option<usize>) -> Result<Option<u64>, ResyncError> {
    let mut cache: BTreeMap<String, Option<u64>> = BTreeMap::new();
    let mut k = 0;
    for f in r.gamma_formulas() {
        let key = format!("{:?}", f);
        let d = match cache.get(&key) {
            Some(d) => *d,
            None => {
                let d = gamma_degree(f, sigma, budget)?;
                cache.insert(key, d);
                d
            }
        };
        match d {
            Some(d) => k = k.max(d),
            None => return Ok(None),
        }
    }
    Ok(Some(k))
}

/// The bound of `r` over all input alphabets.
pub fn bound(r: &Resynchronizer) -> Result<Option<u64>, ResyncError> {
    bound_over(r, &witness_alphabet(r.gamma_formulas()), None)
}

pub fn is_bounded(r: &Resynchronizer) -> Result<bool, ResyncError> {
    Ok(bound(r)?.is_some())
}
