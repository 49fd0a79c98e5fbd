use std::collections::HashMap;

use origin_automata::Symbol;

use crate::model::{Class, Dir, Read, TwoWayTransducer};
use crate::TransducerError;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Aux {
    // ready to emit the next letter of transition `t` from NFA state `n`
    Home { t: usize, n: usize },
    // just emitted, about to step back onto the origin cell
    Away { t: usize, n: usize },
}

/// Origin-equivalent transducer whose output languages only contain words
/// of length at most one.
///
/// A transition with a longer output is simulated letter by letter: each
/// letter is emitted by a move off the origin cell, followed by an empty
/// move back onto it, and the last letter is emitted by the original move.
/// Emissions leave to the right, except on the end marker where they leave
/// to the left.
pub fn single_letter_form(t: &TwoWayTransducer) -> Result<TwoWayTransducer, TransducerError> {
    let mut out = TwoWayTransducer::new(t.input_alphabet().to_vec(), t.output_alphabet().to_vec());
    for s in t.states() {
        out.add_state(s.name.clone(), s.class);
    }
    for &q in t.initial() {
        out.set_initial(q);
    }
    for &q in t.final_states() {
        out.set_final(q);
    }
    let mut aux_ids: HashMap<Aux, usize> = HashMap::new();
    let reads = t.reads();
    for (ti, tr) in t.transitions().iter().enumerate() {
        let nfa = tr.output.trim();
        let emit_dir = if tr.read == Read::End { Dir::Left } else { Dir::Right };
        let away_class = emit_dir.target_class();
        let home_class = match away_class {
            Class::R => Class::L,
            Class::L => Class::R,
        };
        let return_dir = match emit_dir {
            Dir::Right => Dir::Left,
            Dir::Left => Dir::Right,
        };
        if nfa.initial().iter().any(|&n| nfa.is_accepting(n)) {
            out.add_words(tr.from, tr.read.clone(), tr.to, tr.dir, &[vec![]])?;
        }
        // sources: the original state with all initial NFA states, then every
        // home state created along the way
        let mut pending: Vec<(usize, Vec<usize>)> = vec![(tr.from, nfa.initial().iter().copied().collect())];
        while let Some((source, nfa_states)) = pending.pop() {
            for n in nfa_states {
                for (x, n2) in nfa.transitions_from(n) {
                    let letter = vec![vec![nfa.alphabet()[x].clone()]];
                    if nfa.is_accepting(n2) {
                        out.add_words(source, tr.read.clone(), tr.to, tr.dir, &letter)?;
                    }
                    if nfa.transitions_from(n2).next().is_none() {
                        continue;
                    }
                    let away_key = Aux::Away { t: ti, n: n2 };
                    let away = match aux_ids.get(&away_key) {
                        Some(&id) => id,
                        None => {
                            let away = out.add_state(format!("{}~t{ti}.{n2}a", t.state_name(tr.from)), away_class);
                            aux_ids.insert(away_key, away);
                            let home =
                                out.add_state(format!("{}~t{ti}.{n2}h", t.state_name(tr.from)), home_class);
                            aux_ids.insert(Aux::Home { t: ti, n: n2 }, home);
                            for r in &reads {
                                let allowed = match return_dir {
                                    Dir::Left => *r != Read::Start,
                                    Dir::Right => *r != Read::End,
                                };
                                if allowed {
                                    out.add_words(away, r.clone(), home, return_dir, &[vec![]])?;
                                }
                            }
                            pending.push((home, vec![n2]));
                            away
                        }
                    };
                    out.add_words(source, tr.read.clone(), away, emit_dir, &letter)?;
                }
            }
        }
    }
    Ok(out)
}

/// The same transducer reading `Σ × ext`, ignoring the second component.
pub fn lift_input(t: &TwoWayTransducer, ext: &[Symbol]) -> Result<TwoWayTransducer, TransducerError> {
    let alphabet: Vec<Symbol> = t
        .input_alphabet()
        .iter()
        .flat_map(|a| ext.iter().map(move |e| Symbol::tuple([a.clone(), e.clone()])))
        .collect();
    let mut out = TwoWayTransducer::new(alphabet, t.output_alphabet().to_vec());
    for s in t.states() {
        out.add_state(s.name.clone(), s.class);
    }
    for &q in t.initial() {
        out.set_initial(q);
    }
    for &q in t.final_states() {
        out.set_final(q);
    }
    for tr in t.transitions() {
        match &tr.read {
            Read::Letter(a) => {
                for e in ext {
                    let read = Read::Letter(Symbol::tuple([a.clone(), e.clone()]));
                    out.add_transition(tr.from, read, tr.to, tr.dir, (*tr.output).clone())?;
                }
            }
            marker => out.add_transition(tr.from, marker.clone(), tr.to, tr.dir, (*tr.output).clone())?,
        }
    }
    Ok(out)
}
