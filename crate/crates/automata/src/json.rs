use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{AutomataError, Dfa, Nfa, Symbol};

/// State names in documents may be strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateName {
    Text(String),
    Number(u64),
}

impl StateName {
    fn key(&self) -> String {
        match self {
            StateName::Text(s) => s.clone(),
            StateName::Number(n) => n.to_string(),
        }
    }
}

/// Serialized form of an automaton.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NfaDoc {
    pub alphabet: Vec<Symbol>,
    pub states: Vec<StateName>,
    pub initial: Vec<StateName>,
    #[serde(rename = "final")]
    pub final_states: Vec<StateName>,
    pub transitions: Vec<(StateName, Symbol, StateName)>,
}

impl NfaDoc {
    pub fn to_nfa(&self) -> Result<Nfa<Symbol>, AutomataError> {
        let mut nfa = Nfa::new(self.alphabet.clone())?;
        let mut ids: HashMap<String, usize> = HashMap::new();
        for s in &self.states {
            if ids.insert(s.key(), nfa.add_state(false)).is_some() {
                return Err(AutomataError::Malformed(format!("state {} listed twice", s.key())));
            }
        }
        let lookup = |s: &StateName| {
            ids.get(&s.key())
                .copied()
                .ok_or_else(|| AutomataError::UnknownState(s.key()))
        };
        for s in &self.initial {
            nfa.set_initial(lookup(s)?);
        }
        for s in &self.final_states {
            nfa.set_accepting(lookup(s)?, true);
        }
        for (p, a, q) in &self.transitions {
            nfa.add_transition_symbol(lookup(p)?, a, lookup(q)?)?;
        }
        Ok(nfa)
    }

    pub fn from_nfa(nfa: &Nfa<Symbol>) -> Self {
        let name = |q: usize| StateName::Text(q.to_string());
        let mut transitions = Vec::new();
        for p in 0..nfa.num_states() {
            for (s, q) in nfa.transitions_from(p) {
                transitions.push((name(p), nfa.alphabet()[s].clone(), name(q)));
            }
        }
        NfaDoc {
            alphabet: nfa.alphabet().to_vec(),
            states: (0..nfa.num_states()).map(name).collect(),
            initial: nfa.initial().iter().map(|&q| name(q)).collect(),
            final_states: nfa.accepting_states().map(name).collect(),
            transitions,
        }
    }

    pub fn from_dfa(dfa: &Dfa<Symbol>) -> Self {
        NfaDoc::from_nfa(&dfa.to_nfa())
    }
}

impl Nfa<Symbol> {
    pub fn from_json(text: &str) -> Result<Self, AutomataError> {
        let doc: NfaDoc =
            serde_json::from_str(text).map_err(|e| AutomataError::Malformed(e.to_string()))?;
        doc.to_nfa()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&NfaDoc::from_nfa(self)).expect("automaton documents serialize")
    }
}
