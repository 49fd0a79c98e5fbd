use std::collections::BTreeSet;
use std::fmt;

use origin_automata::Symbol;
use serde::{Deserialize, Serialize};

use crate::parse::parse_body;
use crate::MsoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Ranges over positions.
    First,
    /// Ranges over sets of positions.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists1(String, Box<Formula>),
    Forall1(String, Box<Formula>),
    Exists2(String, Box<Formula>),
    Forall2(String, Box<Formula>),
    Label(Symbol, String),
    In(String, String),
    Lt(String, String),
    Succ(String, String),
    Eq(String, String),
    First(String),
    Last(String),
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// Checks that every variable is bound or listed in `free`, with the
    /// right kind.
    pub fn check(&self, scope: &mut Vec<(String, Kind)>) -> Result<(), MsoError> {
        let expect = |scope: &Vec<(String, Kind)>, v: &str, kind: Kind| -> Result<(), MsoError> {
            match scope.iter().rev().find(|(n, _)| n == v) {
                None => Err(MsoError::Unbound(v.to_string())),
                Some((_, k)) if *k != kind => Err(MsoError::KindMismatch(v.to_string())),
                Some(_) => Ok(()),
            }
        };
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.check(scope)?;
                b.check(scope)
            }
            Formula::Not(a) => a.check(scope),
            Formula::Exists1(x, a) | Formula::Forall1(x, a) => {
                scope.push((x.clone(), Kind::First));
                let r = a.check(scope);
                scope.pop();
                r
            }
            Formula::Exists2(x, a) | Formula::Forall2(x, a) => {
                scope.push((x.clone(), Kind::Second));
                let r = a.check(scope);
                scope.pop();
                r
            }
            Formula::Label(_, x) | Formula::First(x) | Formula::Last(x) => expect(scope, x, Kind::First),
            Formula::In(x, set) => {
                expect(scope, x, Kind::First)?;
                expect(scope, set, Kind::Second)
            }
            Formula::Lt(x, y) | Formula::Succ(x, y) | Formula::Eq(x, y) => {
                expect(scope, x, Kind::First)?;
                expect(scope, y, Kind::First)
            }
        }
    }

    /// Letters mentioned by `label` atoms.
    pub fn labels(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Formula::Label(a, _) => {
                out.insert(a.clone());
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            Formula::Not(a)
            | Formula::Exists1(_, a)
            | Formula::Forall1(_, a)
            | Formula::Exists2(_, a)
            | Formula::Forall2(_, a) => a.collect_labels(out),
            _ => {}
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Exists1(x, a) => write!(f, "(exists1 {x} {a})"),
            Formula::Forall1(x, a) => write!(f, "(forall1 {x} {a})"),
            Formula::Exists2(x, a) => write!(f, "(exists2 {x} {a})"),
            Formula::Forall2(x, a) => write!(f, "(forall2 {x} {a})"),
            Formula::Label(a, x) => write!(f, "(label {a} {x})"),
            Formula::In(x, s) => write!(f, "(in {x} {s})"),
            Formula::Lt(x, y) => write!(f, "(lt {x} {y})"),
            Formula::Succ(x, y) => write!(f, "(succ {x} {y})"),
            Formula::Eq(x, y) => write!(f, "(eq {x} {y})"),
            Formula::First(x) => write!(f, "(first {x})"),
            Formula::Last(x) => write!(f, "(last {x})"),
        }
    }
}

/// A formula with its free variables. The order of `free1` followed by
/// `free2` is the order of the flag tracks of compiled automata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MsoFormula {
    pub free1: Vec<String>,
    pub free2: Vec<String>,
    pub body: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaDoc {
    #[serde(default)]
    pub free1: Vec<String>,
    #[serde(default)]
    pub free2: Vec<String>,
    pub body: String,
}

impl MsoFormula {
    pub fn new(free1: &[&str], free2: &[&str], body: Formula) -> Result<Self, MsoError> {
        let f = MsoFormula {
            free1: free1.iter().map(|s| s.to_string()).collect(),
            free2: free2.iter().map(|s| s.to_string()).collect(),
            body,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn parse(free1: &[&str], free2: &[&str], body: &str) -> Result<Self, MsoError> {
        Self::new(free1, free2, parse_body(body)?)
    }

    /// A closed formula.
    pub fn closed(body: &str) -> Result<Self, MsoError> {
        Self::parse(&[], &[], body)
    }

    pub fn validate(&self) -> Result<(), MsoError> {
        let mut seen = BTreeSet::new();
        for v in self.free1.iter().chain(&self.free2) {
            if !seen.insert(v) {
                return Err(MsoError::DuplicateVariable(v.clone()));
            }
        }
        self.body.check(&mut self.scope())
    }

    pub fn scope(&self) -> Vec<(String, Kind)> {
        self.free1
            .iter()
            .map(|v| (v.clone(), Kind::First))
            .chain(self.free2.iter().map(|v| (v.clone(), Kind::Second)))
            .collect()
    }

    /// Free variables in track order.
    pub fn layout(&self) -> Vec<String> {
        self.free1.iter().chain(&self.free2).cloned().collect()
    }

    pub fn to_doc(&self) -> FormulaDoc {
        FormulaDoc {
            free1: self.free1.clone(),
            free2: self.free2.clone(),
            body: self.body.to_string(),
        }
    }

    pub fn from_doc(doc: &FormulaDoc) -> Result<Self, MsoError> {
        let free1: Vec<&str> = doc.free1.iter().map(String::as_str).collect();
        let free2: Vec<&str> = doc.free2.iter().map(String::as_str).collect();
        Self::parse(&free1, &free2, &doc.body)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("formula documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, MsoError> {
        let doc: FormulaDoc = serde_json::from_str(text).map_err(|e| MsoError::Syntax(e.to_string()))?;
        Self::from_doc(&doc)
    }
}
