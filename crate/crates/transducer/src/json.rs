use origin_automata::{Nfa, NfaDoc, Symbol, Word};
use serde::{Deserialize, Serialize};

use crate::model::{Class, Dir, Read, TwoWayTransducer};
use crate::oracle::words_up_to;
use crate::TransducerError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateDoc {
    pub name: String,
    pub class: Class,
}

/// A word either as text (tokenized against the alphabet) or as an explicit
/// symbol list.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordDoc {
    Text(String),
    Symbols(Vec<Symbol>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutputDoc {
    Words { words: Vec<WordDoc> },
    Nfa { nfa: NfaDoc },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: String,
    pub read: Symbol,
    pub to: String,
    pub dir: Dir,
    pub output: OutputDoc,
}

/// Serialized form of a transducer; `"^"` and `"$"` denote the markers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransducerDoc {
    pub input_alphabet: Vec<Symbol>,
    pub output_alphabet: Vec<Symbol>,
    pub states: Vec<StateDoc>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub final_states: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
}

/// Splits `text` into atoms of `alphabet`, preferring the longest match.
pub fn tokenize(text: &str, alphabet: &[Symbol]) -> Option<Word> {
    let mut atoms: Vec<&str> = alphabet.iter().filter_map(Symbol::as_atom).filter(|a| !a.is_empty()).collect();
    atoms.sort_by_key(|a| std::cmp::Reverse(a.len()));
    let mut rest = text;
    let mut out = Vec::new();
    while !rest.is_empty() {
        let atom = atoms.iter().find(|a| rest.starts_with(**a))?;
        out.push(Symbol::atom(*atom));
        rest = &rest[atom.len()..];
    }
    Some(out)
}

fn word_doc(word: &Word, alphabet: &[Symbol]) -> WordDoc {
    if word.iter().all(|s| s.as_atom().is_some()) {
        let text: String = word.iter().filter_map(Symbol::as_atom).collect();
        if tokenize(&text, alphabet).as_ref() == Some(word) {
            return WordDoc::Text(text);
        }
    }
    WordDoc::Symbols(word.clone())
}

fn has_cycle(nfa: &Nfa<Symbol>) -> bool {
    // colors: 0 unvisited, 1 on stack, 2 done
    let n = nfa.num_states();
    let mut color = vec![0u8; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, nfa.transitions_from(root).map(|(_, q)| q).collect())];
        color[root] = 1;
        while let Some((v, pending)) = stack.last_mut() {
            if let Some(w) = pending.pop() {
                match color[w] {
                    1 => return true,
                    0 => {
                        color[w] = 1;
                        let succ = nfa.transitions_from(w).map(|(_, q)| q).collect();
                        stack.push((w, succ));
                    }
                    _ => {}
                }
            } else {
                color[*v] = 2;
                stack.pop();
            }
        }
    }
    false
}

fn output_doc(nfa: &Nfa<Symbol>, alphabet: &[Symbol]) -> OutputDoc {
    let trimmed = nfa.trim();
    if !has_cycle(&trimmed) {
        let words = words_up_to(&trimmed, trimmed.num_states());
        if words.len() <= 64 {
            return OutputDoc::Words {
                words: words.iter().map(|w| word_doc(w, alphabet)).collect(),
            };
        }
    }
    OutputDoc::Nfa {
        nfa: NfaDoc::from_nfa(nfa),
    }
}

impl TransducerDoc {
    pub fn from_transducer(t: &TwoWayTransducer) -> Self {
        let name = |q: usize| t.state_name(q).to_string();
        TransducerDoc {
            input_alphabet: t.input_alphabet().to_vec(),
            output_alphabet: t.output_alphabet().to_vec(),
            states: t
                .states()
                .iter()
                .map(|s| StateDoc {
                    name: s.name.clone(),
                    class: s.class,
                })
                .collect(),
            initial: t.initial().iter().map(|&q| name(q)).collect(),
            final_states: t.final_states().iter().map(|&q| name(q)).collect(),
            transitions: t
                .transitions()
                .iter()
                .map(|tr| TransitionDoc {
                    from: name(tr.from),
                    read: match &tr.read {
                        Read::Start => Symbol::atom("^"),
                        Read::End => Symbol::atom("$"),
                        Read::Letter(a) => a.clone(),
                    },
                    to: name(tr.to),
                    dir: tr.dir,
                    output: output_doc(&tr.output, t.output_alphabet()),
                })
                .collect(),
        }
    }

    /// Builds and validates the transducer.
    pub fn to_transducer(&self) -> Result<TwoWayTransducer, TransducerError> {
        let mut t = TwoWayTransducer::new(self.input_alphabet.clone(), self.output_alphabet.clone());
        for s in &self.states {
            t.add_state(s.name.clone(), s.class);
        }
        let lookup = |t: &TwoWayTransducer, n: &str| {
            t.state_by_name(n)
                .ok_or_else(|| TransducerError::UnknownState(n.to_string()))
        };
        for n in &self.initial {
            let q = lookup(&t, n)?;
            t.set_initial(q);
        }
        for n in &self.final_states {
            let q = lookup(&t, n)?;
            t.set_final(q);
        }
        for tr in &self.transitions {
            let from = lookup(&t, &tr.from)?;
            let to = lookup(&t, &tr.to)?;
            let read = match tr.read.as_atom() {
                Some("^") => Read::Start,
                Some("$") => Read::End,
                _ => {
                    if !self.input_alphabet.contains(&tr.read) {
                        return Err(TransducerError::UnknownInput(tr.read.to_string()));
                    }
                    Read::Letter(tr.read.clone())
                }
            };
            let output = match &tr.output {
                OutputDoc::Words { words } => {
                    let words = words
                        .iter()
                        .map(|w| match w {
                            WordDoc::Text(s) => tokenize(s, &self.output_alphabet)
                                .ok_or_else(|| TransducerError::UnknownOutput(s.clone())),
                            WordDoc::Symbols(v) => Ok(v.clone()),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    t.finite_language(&words)?
                }
                OutputDoc::Nfa { nfa } => {
                    let nfa = nfa.to_nfa()?;
                    if nfa.alphabet() != self.output_alphabet.as_slice() {
                        // re-encode over the declared output alphabet
                        nfa.map_symbols(self.output_alphabet.clone(), |s| Some(s.clone()))?
                    } else {
                        nfa
                    }
                }
            };
            t.add_transition(from, read, to, tr.dir, output)?;
        }
        t.validated()
    }
}

impl TwoWayTransducer {
    pub fn from_json(text: &str) -> Result<Self, TransducerError> {
        let doc: TransducerDoc =
            serde_json::from_str(text).map_err(|e| TransducerError::Malformed(e.to_string()))?;
        doc.to_transducer()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TransducerDoc::from_transducer(self)).expect("transducer documents serialize")
    }
}
