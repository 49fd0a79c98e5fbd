use std::collections::{BTreeSet, HashMap, VecDeque};

use origin_automata::{Dfa, MonoidPresentation, Symbol};
use origin_mso::{compile, MsoFormula};

use crate::ResyncError;

/// Transition monoid of the product of the automata of several formulas
/// with two first-order variables and the input parameters, all compiled
/// over `Σ × 𝔹^{2+m}`.
///
/// Elements are tuples of elements of the component monoids, interned
/// by index; `h(uv) = h(u)·h(v)`.
pub struct JointMonoid {
    components: Vec<MonoidPresentation>,
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    generators: HashMap<Symbol, usize>,
    identity: usize,
    base: Vec<Symbol>,
}

/// `(a, I_1..I_m)` with the two flags inserted after `a`.
pub fn flagged(letter: &Symbol, f1: bool, f2: bool) -> Symbol {
    let mut parts = match letter {
        Symbol::Tuple(p) => p.clone(),
        other => vec![other.clone()],
    };
    parts.insert(1, Symbol::Bool(f2));
    parts.insert(1, Symbol::Bool(f1));
    Symbol::tuple(parts)
}

/// The `(a, I_1..I_m)` letter under annotation layers of the form
/// `(inner, annotation)`.
pub fn param_letter<'s>(base: &[Symbol], letter: &'s Symbol) -> &'s Symbol {
    let mut cur = letter;
    while let Symbol::Tuple(parts) = cur {
        match parts.first() {
            Some(first) if base.contains(first) => return cur,
            Some(first) => cur = first,
            None => break,
        }
    }
    cur
}

impl JointMonoid {
    pub fn new(formulas: &[&MsoFormula], sigma: &[Symbol], budget: Option<usize>) -> Result<Self, ResyncError> {
        let dfas: Vec<Dfa<Symbol>> = formulas
            .iter()
            .map(|f| compile(f, sigma, budget))
            .collect::<Result<_, _>>()?;
        let components: Vec<MonoidPresentation> = dfas
            .iter()
            .map(MonoidPresentation::from_dfa)
            .collect::<Result<_, _>>()?;
        let letters = dfas.first().map(|d| d.alphabet().to_vec()).unwrap_or_default();
        let letter_images: Vec<Vec<usize>> = letters
            .iter()
            .map(|s| {
                dfas.iter()
                    .zip(&components)
                    .map(|(d, m)| m.generator(d.symbol_index(s).expect("shared flagged alphabet")))
                    .collect()
            })
            .collect();
        let identity: Vec<usize> = components.iter().map(|m| m.identity()).collect();
        let mut joint = JointMonoid {
            components,
            elements: vec![identity.clone()],
            index: HashMap::from([(identity, 0)]),
            generators: HashMap::new(),
            identity: 0,
            base: sigma.to_vec(),
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for img in &letter_images {
                let composed = joint.compose(&joint.elements[e].clone(), img);
                if !joint.index.contains_key(&composed) {
                    let id = joint.elements.len();
                    joint.index.insert(composed.clone(), id);
                    joint.elements.push(composed);
                    queue.push_back(id);
                }
            }
        }
        for (s, img) in letters.iter().zip(&letter_images) {
            joint.generators.insert(s.clone(), joint.index[img]);
        }
        Ok(joint)
    }

    fn compose(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        self.components
            .iter()
            .zip(x.iter().zip(y))
            .map(|(m, (&a, &b))| m.mul(a, b))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&self.compose(&self.elements[x], &self.elements[y])]
    }

    pub fn mul3(&self, x: usize, y: usize, z: usize) -> usize {
        self.mul(self.mul(x, y), z)
    }

    /// Image of a letter with the two flags. The letter is `(a, I_1..I_m)`
    /// or an annotation of one.
    pub fn generator(&self, letter: &Symbol, f1: bool, f2: bool) -> usize {
        self.generators[&flagged(param_letter(&self.base, letter), f1, f2)]
    }

    /// Whether words mapped to `e` satisfy formula `i`.
    pub fn accepts(&self, i: usize, e: usize) -> bool {
        self.components[i].is_accepting(self.elements[e][i])
    }

    /// Elements reachable from the identity with unflagged letters.
    pub fn unflagged_submonoid(&self, letters: &[Symbol]) -> BTreeSet<usize> {
        let gens: Vec<usize> = letters.iter().map(|a| self.generator(a, false, false)).collect();
        let mut seen = BTreeSet::from([self.identity]);
        let mut stack = vec![self.identity];
        while let Some(e) = stack.pop() {
            for &g in &gens {
                let next = self.mul(e, g);
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        seen
    }
}
