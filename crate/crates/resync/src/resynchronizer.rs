use std::collections::BTreeMap;
use std::fmt;

use origin_automata::Symbol;
use origin_mso::{FormulaDoc, MsoFormula};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ResyncError;

/// An output letter together with the values of the output parameters at
/// its position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutputType {
    pub letter: Symbol,
    pub bits: Vec<bool>,
}

impl OutputType {
    pub fn new(letter: Symbol, bits: Vec<bool>) -> Self {
        OutputType { letter, bits }
    }

    /// The letter of `Γ × 𝔹^n` standing for this type.
    pub fn symbol(&self) -> Symbol {
        Symbol::tuple(std::iter::once(self.letter.clone()).chain(self.bits.iter().map(|&b| Symbol::Bool(b))))
    }

    pub fn from_symbol(s: &Symbol) -> Option<Self> {
        let Symbol::Tuple(parts) = s else { return None };
        let (letter, bits) = parts.split_first()?;
        let bits = bits.iter().map(Symbol::as_bool).collect::<Option<Vec<_>>>()?;
        Some(OutputType::new(letter.clone(), bits))
    }
}

impl fmt::Display for OutputType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter)?;
        if !self.bits.is_empty() {
            write!(f, "/")?;
            for &b in &self.bits {
                write!(f, "{}", u8::from(b))?;
            }
        }
        Ok(())
    }
}

/// Matches output types: `a`, `*`, `a/1*0`, `*/01`. Missing bits match
/// anything.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypePattern {
    pub letter: Option<Symbol>,
    pub bits: Vec<Option<bool>>,
}

impl TypePattern {
    pub fn any() -> Self {
        TypePattern {
            letter: None,
            bits: Vec::new(),
        }
    }

    pub fn letter(a: &str) -> Self {
        TypePattern {
            letter: Some(Symbol::atom(a)),
            bits: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ResyncError> {
        let bad = || ResyncError::Pattern(text.to_string());
        let (letter, bits) = match text.split_once('/') {
            Some((l, b)) => (l.trim(), Some(b.trim())),
            None => (text.trim(), None),
        };
        if letter.is_empty() {
            return Err(bad());
        }
        let letter = (letter != "*").then(|| Symbol::atom(letter));
        let bits = match bits {
            None => Vec::new(),
            Some(b) => b
                .chars()
                .map(|c| match c {
                    '0' => Ok(Some(false)),
                    '1' => Ok(Some(true)),
                    '*' => Ok(None),
                    _ => Err(bad()),
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(TypePattern { letter, bits })
    }

    pub fn matches(&self, t: &OutputType) -> bool {
        self.letter.as_ref().is_none_or(|l| *l == t.letter)
            && self
                .bits
                .iter()
                .zip(&t.bits)
                .all(|(p, b)| p.is_none_or(|p| p == *b))
    }
}

impl fmt::Display for TypePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.letter {
            Some(l) => write!(f, "{l}")?,
            None => write!(f, "*")?,
        }
        if !self.bits.is_empty() {
            write!(f, "/")?;
            for b in &self.bits {
                let c = match b {
                    Some(true) => '1',
                    Some(false) => '0',
                    None => '*',
                };
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// An MSO resynchronizer `(α, β, γ, δ)`.
///
/// `γ` and `δ` are given by ordered pattern lists with a default, so they
/// are total on every output alphabet; the first matching pattern wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resynchronizer {
    pub input_params: Vec<String>,
    pub output_params: Vec<String>,
    pub alpha: MsoFormula,
    pub beta: MsoFormula,
    pub gamma: Vec<(TypePattern, MsoFormula)>,
    pub gamma_default: MsoFormula,
    pub delta: Vec<((TypePattern, TypePattern), MsoFormula)>,
    pub delta_default: MsoFormula,
}

const GAMMA_VARS: [&str; 2] = ["y", "z"];
const DELTA_VARS: [&str; 2] = ["z", "z'"];

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

impl Resynchronizer {
    /// The universal resynchronizer with the given parameters.
    pub fn universal(input_params: &[&str], output_params: &[&str]) -> Self {
        let t = |free1: &[&str], free2: &[&str]| MsoFormula::parse(free1, free2, "true").expect("true is well formed");
        Resynchronizer {
            input_params: input_params.iter().map(|s| s.to_string()).collect(),
            output_params: output_params.iter().map(|s| s.to_string()).collect(),
            alpha: t(&[], input_params),
            beta: t(&[], output_params),
            gamma: Vec::new(),
            gamma_default: t(&GAMMA_VARS, input_params),
            delta: Vec::new(),
            delta_default: t(&DELTA_VARS, input_params),
        }
    }

    pub fn m(&self) -> usize {
        self.input_params.len()
    }

    pub fn n(&self) -> usize {
        self.output_params.len()
    }

    fn formula(&self, free1: &[&str], body: &str, params: &[String]) -> Result<MsoFormula, ResyncError> {
        Ok(MsoFormula::parse(free1, &strs(params), body)?)
    }

    pub fn with_alpha(mut self, body: &str) -> Result<Self, ResyncError> {
        self.alpha = self.formula(&[], body, &self.input_params)?;
        Ok(self)
    }

    pub fn with_beta(mut self, body: &str) -> Result<Self, ResyncError> {
        self.beta = self.formula(&[], body, &self.output_params)?;
        Ok(self)
    }

    /// Sets the default `γ(y, z)`.
    pub fn with_gamma(mut self, body: &str) -> Result<Self, ResyncError> {
        self.gamma_default = self.formula(&GAMMA_VARS, body, &self.input_params)?;
        Ok(self)
    }

    pub fn with_gamma_for(mut self, pattern: &str, body: &str) -> Result<Self, ResyncError> {
        let f = self.formula(&GAMMA_VARS, body, &self.input_params)?;
        self.gamma.push((TypePattern::parse(pattern)?, f));
        Ok(self)
    }

    /// Sets the default `δ(z, z')`.
    pub fn with_delta(mut self, body: &str) -> Result<Self, ResyncError> {
        self.delta_default = self.formula(&DELTA_VARS, body, &self.input_params)?;
        Ok(self)
    }

    pub fn with_delta_for(mut self, first: &str, second: &str, body: &str) -> Result<Self, ResyncError> {
        let f = self.formula(&DELTA_VARS, body, &self.input_params)?;
        self.delta
            .push(((TypePattern::parse(first)?, TypePattern::parse(second)?), f));
        Ok(self)
    }

    pub fn gamma_for(&self, t: &OutputType) -> &MsoFormula {
        self.gamma
            .iter()
            .find(|(p, _)| p.matches(t))
            .map_or(&self.gamma_default, |(_, f)| f)
    }

    pub fn delta_for(&self, t: &OutputType, t2: &OutputType) -> &MsoFormula {
        self.delta
            .iter()
            .find(|((p, p2), _)| p.matches(t) && p2.matches(t2))
            .map_or(&self.delta_default, |(_, f)| f)
    }

    /// Every γ formula that some type can select.
    pub fn gamma_formulas(&self) -> Vec<&MsoFormula> {
        let default = (!self.gamma_default_unused()).then_some(&self.gamma_default);
        self.gamma.iter().map(|(_, f)| f).chain(default).collect()
    }

    /// Whether letter-free patterns cover every bit vector, so no type of
    /// any output alphabet falls through to the default.
    fn gamma_default_unused(&self) -> bool {
        let n = self.n();
        n < 16
            && (0..1usize << n).all(|mask| {
                let bits: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                self.gamma.iter().any(|(p, _)| {
                    p.letter.is_none() && p.bits.iter().zip(&bits).all(|(b, v)| b.is_none_or(|b| b == *v))
                })
            })
    }

    pub fn delta_formulas(&self) -> Vec<&MsoFormula> {
        self.delta.iter().map(|(_, f)| f).chain([&self.delta_default]).collect()
    }

    /// All output types over `gamma`.
    pub fn output_types(&self, gamma: &[Symbol]) -> Vec<OutputType> {
        let n = self.n();
        gamma
            .iter()
            .flat_map(|b| (0..1usize << n).map(move |mask| OutputType::new(b.clone(), (0..n).map(|i| mask >> i & 1 == 1).collect())))
            .collect()
    }

    pub fn validate(&self) -> Result<(), ResyncError> {
        let invalid = |what: &str, f: &MsoFormula| ResyncError::Invalid(format!("{what} has free variables {:?}", f.layout()));
        let check = |what: &str, f: &MsoFormula, arity1: usize, params: &[String]| {
            if f.free1.len() != arity1 || f.free2 != params {
                Err(invalid(what, f))
            } else {
                Ok(())
            }
        };
        check("alpha", &self.alpha, 0, &self.input_params)?;
        check("beta", &self.beta, 0, &self.output_params)?;
        for f in self.gamma_formulas() {
            check("gamma", f, 2, &self.input_params)?;
        }
        for f in self.delta_formulas() {
            check("delta", f, 2, &self.input_params)?;
        }
        for (p, _) in &self.gamma {
            self.check_pattern(p)?;
        }
        for ((p, p2), _) in &self.delta {
            self.check_pattern(p)?;
            self.check_pattern(p2)?;
        }
        Ok(())
    }

    fn check_pattern(&self, p: &TypePattern) -> Result<(), ResyncError> {
        if !p.bits.is_empty() && p.bits.len() != self.n() {
            return Err(ResyncError::Pattern(p.to_string()));
        }
        Ok(())
    }

    /// True when every δ formula is literally `true`.
    pub fn delta_trivial(&self) -> bool {
        self.delta_formulas()
            .iter()
            .all(|f| f.body == origin_mso::Formula::True)
    }

    pub fn from_json(text: &str) -> Result<Self, ResyncError> {
        let doc: ResyncDoc = serde_json::from_str(text).map_err(|e| ResyncError::Json(e.to_string()))?;
        doc.to_resynchronizer()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ResyncDoc::from_resynchronizer(self)).expect("documents serialize")
    }
}

/// A formula in a document: either just its body, or a body with explicit
/// free variables. Omitted variables get the conventional names.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormulaEntry {
    Body(String),
    Full(FormulaDoc),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResyncDoc {
    #[serde(default)]
    pub input_params: Vec<String>,
    #[serde(default)]
    pub output_params: Vec<String>,
    pub alpha: Option<FormulaEntry>,
    pub beta: Option<FormulaEntry>,
    #[serde(default)]
    pub gamma: BTreeMap<String, FormulaEntry>,
    #[serde(default)]
    pub delta: BTreeMap<String, FormulaEntry>,
    /// Pattern order for γ and δ; the maps alone do not keep it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Value>,
}

fn entry_formula(entry: Option<&FormulaEntry>, free1: &[&str], params: &[String]) -> Result<MsoFormula, ResyncError> {
    let (mut doc, explicit) = match entry {
        None => (
            FormulaDoc {
                free1: Vec::new(),
                free2: Vec::new(),
                body: "true".into(),
            },
            false,
        ),
        Some(FormulaEntry::Body(b)) => (
            FormulaDoc {
                free1: Vec::new(),
                free2: Vec::new(),
                body: b.clone(),
            },
            false,
        ),
        Some(FormulaEntry::Full(d)) => (d.clone(), true),
    };
    if !explicit || doc.free1.is_empty() {
        doc.free1 = free1.iter().map(|s| s.to_string()).collect();
    }
    if !explicit || doc.free2.is_empty() {
        doc.free2 = params.to_vec();
    }
    Ok(MsoFormula::from_doc(&doc)?)
}

fn order_of(order: &Option<Value>, key: &str, map: &BTreeMap<String, FormulaEntry>) -> Vec<String> {
    let listed: Vec<String> = order
        .as_ref()
        .and_then(|o| o.get(key))
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(|v| v.as_str().map(str::to_string)).collect())
        .unwrap_or_default();
    let mut keys: Vec<String> = listed.into_iter().filter(|k| map.contains_key(k)).collect();
    for k in map.keys() {
        if !keys.contains(k) {
            keys.push(k.clone());
        }
    }
    keys.retain(|k| k != "default");
    keys
}

impl ResyncDoc {
    pub fn to_resynchronizer(&self) -> Result<Resynchronizer, ResyncError> {
        let ip = &self.input_params;
        let op = &self.output_params;
        let mut r = Resynchronizer {
            input_params: ip.clone(),
            output_params: op.clone(),
            alpha: entry_formula(self.alpha.as_ref(), &[], ip)?,
            beta: entry_formula(self.beta.as_ref(), &[], op)?,
            gamma: Vec::new(),
            gamma_default: entry_formula(self.gamma.get("default"), &GAMMA_VARS, ip)?,
            delta: Vec::new(),
            delta_default: entry_formula(self.delta.get("default"), &DELTA_VARS, ip)?,
        };
        for key in order_of(&self.order, "gamma", &self.gamma) {
            let f = entry_formula(self.gamma.get(&key), &GAMMA_VARS, ip)?;
            r.gamma.push((TypePattern::parse(&key)?, f));
        }
        for key in order_of(&self.order, "delta", &self.delta) {
            let (a, b) = key.split_once(',').ok_or_else(|| ResyncError::Pattern(key.clone()))?;
            let f = entry_formula(self.delta.get(&key), &DELTA_VARS, ip)?;
            r.delta.push(((TypePattern::parse(a)?, TypePattern::parse(b)?), f));
        }
        r.validate()?;
        Ok(r)
    }

    pub fn from_resynchronizer(r: &Resynchronizer) -> Self {
        let full = |f: &MsoFormula| FormulaEntry::Full(f.to_doc());
        let mut gamma: BTreeMap<String, FormulaEntry> = r.gamma.iter().map(|(p, f)| (p.to_string(), full(f))).collect();
        gamma.insert("default".into(), full(&r.gamma_default));
        let mut delta: BTreeMap<String, FormulaEntry> =
            r.delta.iter().map(|((p, p2), f)| (format!("{p},{p2}"), full(f))).collect();
        delta.insert("default".into(), full(&r.delta_default));
        let order = serde_json::json!({
            "gamma": r.gamma.iter().map(|(p, _)| p.to_string()).collect::<Vec<_>>(),
            "delta": r.delta.iter().map(|((p, p2), _)| format!("{p},{p2}")).collect::<Vec<_>>(),
        });
        ResyncDoc {
            input_params: r.input_params.clone(),
            output_params: r.output_params.clone(),
            alpha: Some(full(&r.alpha)),
            beta: Some(full(&r.beta)),
            gamma,
            delta,
            order: Some(order),
        }
    }
}
