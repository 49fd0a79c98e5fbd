use std::fmt;

use origin_automata::{Symbol, Word};
use origin_transducer::{FramedWord, TwoWayTransducer};
use serde_json::{json, Map, Value};

use crate::upairs::{left_upairs, right_upairs, PairSet};
use crate::NormalizationError;

/// U-pair annotation of one cell for one transducer.
///
/// For a letter cell `i` the block holds the left U-pairs at position `i`
/// and the right U-pairs at position `i + 1`, i.e. the U-turns that a
/// transition reading cell `i` can run into. The start marker only carries
/// the right pairs at position 1 and the end marker only the left pairs at
/// the last position.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UBlock {
    pub left: PairSet,
    pub right: PairSet,
}

/// An input symbol together with one [`UBlock`] per transducer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedSymbol {
    pub base: Symbol,
    pub blocks: Vec<UBlock>,
}

impl fmt::Display for AnnotatedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for b in &self.blocks {
            write!(f, "[{:?}|{:?}]", b.left, b.right)?;
        }
        Ok(())
    }
}

pub fn start_marker() -> Symbol {
    Symbol::atom("^")
}

pub fn end_marker() -> Symbol {
    Symbol::atom("$")
}

/// The correct annotation of `u` for the given transducers.
pub fn annotate(ts: &[&TwoWayTransducer], u: &Word) -> FramedWord<AnnotatedSymbol> {
    let n = u.len();
    let tables: Vec<(Vec<PairSet>, Vec<PairSet>)> = ts.iter().map(|t| (left_upairs(t, u), right_upairs(t, u))).collect();
    let start = AnnotatedSymbol {
        base: start_marker(),
        blocks: tables
            .iter()
            .map(|(_, r)| UBlock {
                left: PairSet::new(),
                right: r[1].clone(),
            })
            .collect(),
    };
    let end = AnnotatedSymbol {
        base: end_marker(),
        blocks: tables
            .iter()
            .map(|(l, _)| UBlock {
                left: l[n + 1].clone(),
                right: PairSet::new(),
            })
            .collect(),
    };
    let letters = (1..=n)
        .map(|i| AnnotatedSymbol {
            base: u[i - 1].clone(),
            blocks: tables
                .iter()
                .map(|(l, r)| UBlock {
                    left: l[i].clone(),
                    right: r[i + 1].clone(),
                })
                .collect(),
        })
        .collect();
    FramedWord {
        start: Some(start),
        letters,
        end: Some(end),
    }
}

/// Strips annotations.
pub fn project(w: &[AnnotatedSymbol]) -> Word {
    w.iter().map(|a| a.base.clone()).collect()
}

fn pairs_to_json(t: &TwoWayTransducer, pairs: &PairSet) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|&(p, q)| json!([t.state_name(p), t.state_name(q)]))
            .collect(),
    )
}

fn pairs_from_json(t: &TwoWayTransducer, v: Option<&Value>) -> Result<PairSet, NormalizationError> {
    let Some(v) = v else {
        return Ok(PairSet::new());
    };
    let bad = || NormalizationError::Malformed(format!("expected a list of state pairs, got {v}"));
    let state = |x: &Value| -> Result<usize, NormalizationError> {
        let name = x.as_str().ok_or_else(bad)?;
        t.state_by_name(name)
            .ok_or_else(|| NormalizationError::Malformed(format!("unknown state {name:?}")))
    };
    let mut out = PairSet::new();
    for pair in v.as_array().ok_or_else(bad)? {
        match pair.as_array().map(Vec::as_slice) {
            Some([p, q]) => {
                out.insert((state(p)?, state(q)?));
            }
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

impl AnnotatedSymbol {
    /// JSON form `{"base": .., "L1": [[p, q], ..], "R1": .., "L2": .., ..}`
    /// with states named after the transducer owning each block.
    pub fn to_json(&self, ts: &[&TwoWayTransducer]) -> Value {
        let mut obj = Map::new();
        obj.insert("base".into(), serde_json::to_value(&self.base).expect("symbols serialize"));
        for (k, (b, t)) in self.blocks.iter().zip(ts).enumerate() {
            obj.insert(format!("L{}", k + 1), pairs_to_json(t, &b.left));
            obj.insert(format!("R{}", k + 1), pairs_to_json(t, &b.right));
        }
        Value::Object(obj)
    }

    pub fn from_json(v: &Value, ts: &[&TwoWayTransducer]) -> Result<Self, NormalizationError> {
        let obj = v
            .as_object()
            .ok_or_else(|| NormalizationError::Malformed("annotated symbol must be an object".into()))?;
        let base = obj
            .get("base")
            .ok_or_else(|| NormalizationError::Malformed("missing \"base\"".into()))?;
        let base: Symbol =
            serde_json::from_value(base.clone()).map_err(|e| NormalizationError::Malformed(e.to_string()))?;
        let blocks = ts
            .iter()
            .enumerate()
            .map(|(k, t)| {
                Ok(UBlock {
                    left: pairs_from_json(t, obj.get(&format!("L{}", k + 1)))?,
                    right: pairs_from_json(t, obj.get(&format!("R{}", k + 1)))?,
                })
            })
            .collect::<Result<_, NormalizationError>>()?;
        Ok(AnnotatedSymbol { base, blocks })
    }
}
