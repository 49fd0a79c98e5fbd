use origin_automata::Symbol;
use origin_transducer::SyncPair;
use serde::{Deserialize, Serialize};

/// `{"verdict": ..., "counterexample": {...}, "confirmed": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confirmed: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleDoc {
    pub input: String,
    /// Origin-tagged output; absent when no pair was found within bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Vec<(String, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub input: String,
    pub output: Vec<(String, usize)>,
}

pub(crate) fn word_text(w: &[Symbol]) -> String {
    w.iter().map(Symbol::to_string).collect()
}

pub(crate) fn tagged(p: &SyncPair) -> Vec<(String, usize)> {
    p.output.iter().map(|(s, o)| (s.to_string(), *o)).collect()
}

pub fn pair_doc(p: &SyncPair) -> PairDoc {
    PairDoc {
        input: word_text(&p.input),
        output: tagged(p),
    }
}

impl VerdictDoc {
    pub fn holds(verdict: &str) -> Self {
        VerdictDoc {
            verdict: verdict.into(),
            direction: None,
            counterexample: None,
            confirmed: None,
        }
    }

    pub fn fails(verdict: &str, input: &[Symbol], evidence: Option<&SyncPair>) -> Self {
        VerdictDoc {
            verdict: verdict.into(),
            direction: None,
            counterexample: Some(CounterexampleDoc {
                input: word_text(input),
                output: evidence.map(tagged),
            }),
            confirmed: Some(evidence.is_some()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize") + "\n"
    }
}
