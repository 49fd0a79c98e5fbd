use std::collections::{HashMap, VecDeque};

use origin_automata::{Dfa, Nfa, Symbol};
use origin_mso::{compile, flagged_alphabet};
use origin_transducer::{Read, TwoWayTransducer};

use crate::relativized::{copy_states, pullback, relabel_input, Relativized};
use crate::resynchronizer::Resynchronizer;
use crate::ResyncError;

/// Rejects transducers that output something while reading an end marker.
pub fn check_markers(t: &TwoWayTransducer) -> Result<(), ResyncError> {
    for tr in t.transitions() {
        if tr.read != Read::Start && tr.read != Read::End {
            continue;
        }
        if tr.output.trim().num_transitions() > 0 {
            return Err(ResyncError::MarkerOutput(format!("{} on {}", t.state_name(tr.from), tr.read)));
        }
    }
    Ok(())
}

fn split_flags(s: &Symbol) -> Symbol {
    s.component(0).cloned().unwrap_or_else(|| s.clone())
}

/// Copy of `t` with outputs over `alphabet`, where each letter stands for
/// `f(letter)`.
pub fn relabel_output(
    t: &TwoWayTransducer,
    alphabet: Vec<Symbol>,
    f: impl Fn(&Symbol) -> Option<Symbol> + Copy,
) -> Result<TwoWayTransducer, ResyncError> {
    let mut out = TwoWayTransducer::new(t.input_alphabet().to_vec(), alphabet.clone());
    copy_states(t, &mut out);
    for tr in t.transitions() {
        let nfa = pullback(&tr.output, &alphabet, f)?;
        out.add_transition(tr.from, tr.read.clone(), tr.to, tr.dir, nfa)?;
    }
    Ok(out)
}

/// Adds the input parameters to the input letters, as `(a, I_1..I_m)`,
/// and the output parameters to the output letters, as `(b, O_1..O_n)`,
/// the latter guessed freely.
pub fn lift_parameters(r: &Resynchronizer, rel: &Relativized) -> Result<Relativized, ResyncError> {
    let t = &rel.transducer;
    let inputs = flagged_alphabet(t.input_alphabet(), r.m());
    let outputs = flagged_alphabet(t.output_alphabet(), r.n());
    let lifted = relabel_input(t, inputs.clone(), split_flags)?;
    let lifted = relabel_output(&lifted, outputs, |s| Some(split_flags(s)))?;
    Ok(Relativized {
        transducer: lifted,
        domain: pullback(&rel.domain, &inputs, |s| Some(split_flags(s)))?,
        base: rel.base.clone(),
    })
}

/// Restricts the domain to inputs whose parameter annotation satisfies α.
pub fn apply_alpha(r: &Resynchronizer, rel: &Relativized) -> Result<Relativized, ResyncError> {
    let alpha = compile(&r.alpha, &rel.base, None)?.to_nfa();
    let alpha = pullback(&alpha, rel.domain.alphabet(), |s| Some(s.clone()))?;
    Ok(Relativized {
        transducer: rel.transducer.clone(),
        domain: rel.domain.product(&alpha)?.trim(),
        base: rel.base.clone(),
    })
}

/// `dfa` started in `from`, accepting in `to`, over `alphabet`.
fn segment(dfa: &Dfa<Symbol>, from: usize, to: usize, alphabet: &[Symbol]) -> Result<Nfa<Symbol>, ResyncError> {
    let mut nfa = Nfa::new(alphabet.to_vec())?;
    for q in 0..dfa.num_states() {
        nfa.add_state(q == to);
    }
    nfa.set_initial(from);
    for (i, s) in alphabet.iter().enumerate() {
        if let Some(sym) = dfa.symbol_index(s) {
            for q in 0..dfa.num_states() {
                if let Some(q2) = dfa.next(q, sym) {
                    nfa.add_transition(q, i, q2);
                }
            }
        }
    }
    Ok(nfa)
}

/// Runs the automaton of β on the output alongside the transducer, so
/// that only outputs with a β-satisfying parameter annotation remain.
pub fn apply_beta(r: &Resynchronizer, rel: &Relativized) -> Result<Relativized, ResyncError> {
    let t = &rel.transducer;
    let gamma: Vec<Symbol> = {
        let mut g: Vec<Symbol> = t.output_alphabet().iter().map(split_flags).collect();
        g.dedup();
        g
    };
    let b = compile(&r.beta, &gamma, None)?;
    let outputs = t.output_alphabet();
    let mut out = TwoWayTransducer::new(t.input_alphabet().to_vec(), outputs.to_vec());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut intern = |p: usize, q: usize, out: &mut TwoWayTransducer, queue: &mut VecDeque<(usize, usize)>| -> usize {
        *ids.entry((p, q)).or_insert_with(|| {
            let id = out.add_state(format!("{}|b{q}", t.state_name(p)), t.class(p));
            if t.is_final(p) && b.is_accepting(q) {
                out.set_final(id);
            }
            queue.push_back((p, q));
            id
        })
    };
    for &p in t.initial() {
        let id = intern(p, b.initial(), &mut out, &mut queue);
        out.set_initial(id);
    }
    let mut segments: HashMap<(usize, usize), Nfa<Symbol>> = HashMap::new();
    while let Some((p, q)) = queue.pop_front() {
        let src = intern(p, q, &mut out, &mut queue);
        for tr in t.transitions().iter().filter(|tr| tr.from == p) {
            for q2 in 0..b.num_states() {
                if let std::collections::hash_map::Entry::Vacant(e) = segments.entry((q, q2)) {
                    e.insert(segment(&b, q, q2, outputs)?);
                }
                let lang = tr.output.product(&segments[&(q, q2)])?.trim();
                if lang.is_empty() {
                    continue;
                }
                let dst = intern(tr.to, q2, &mut out, &mut queue);
                out.add_transition(src, tr.read.clone(), dst, tr.dir, lang)?;
            }
        }
    }
    Ok(Relativized {
        transducer: out,
        domain: rel.domain.clone(),
        base: rel.base.clone(),
    })
}

/// Forgets the output parameters.
pub fn erase_output_params(rel: &Relativized, gamma: &[Symbol]) -> Result<Relativized, ResyncError> {
    let t = &rel.transducer;
    let mut out = TwoWayTransducer::new(t.input_alphabet().to_vec(), gamma.to_vec());
    copy_states(t, &mut out);
    for tr in t.transitions() {
        let nfa = tr.output.map_symbols(gamma.to_vec(), |s| Some(split_flags(s)))?;
        out.add_transition(tr.from, tr.read.clone(), tr.to, tr.dir, nfa)?;
    }
    Ok(Relativized {
        transducer: out,
        domain: rel.domain.clone(),
        base: rel.base.clone(),
    })
}
