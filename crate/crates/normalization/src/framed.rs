//! One-way devices over framed words, i.e. words whose two end markers
//! carry payloads, and emptiness of their products.

use std::fmt::Debug;
use std::hash::Hash;

use origin_automata::{lazy_emptiness, AutomataError, Emptiness, LazyNfa};
use origin_transducer::FramedWord;

/// A nondeterministic automaton that proposes the letters it reads, so that
/// huge alphabets never have to be enumerated.
pub trait FramedGenerator {
    type Letter: Clone + Ord + Debug;
    type State: Clone + Eq + Hash + Debug;

    /// Start-marker payloads with the state reached after reading them.
    fn start(&self) -> Vec<(Self::Letter, Self::State)>;
    fn next(&self, state: &Self::State) -> Vec<(Self::Letter, Self::State)>;
    /// End-marker payloads accepted from `state`.
    fn end(&self, state: &Self::State) -> Vec<Self::Letter>;
}

/// A nondeterministic automaton over framed words, driven letter by letter.
pub trait FramedAcceptor<L> {
    type State: Clone + Eq + Hash + Debug;

    fn start(&self, payload: &L) -> Vec<Self::State>;
    fn step(&self, state: &Self::State, letter: &L) -> Vec<Self::State>;
    fn accepts(&self, state: &Self::State, payload: &L) -> bool;
}

/// Letters of a framed word seen as a plain word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Framed<L> {
    Start(L),
    Letter(L),
    End(L),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Phase<G, A> {
    Before,
    Reading(G, A),
    After,
}

struct Product<'a, G, A> {
    generator: &'a G,
    acceptor: &'a A,
}

impl<G, A> LazyNfa for Product<'_, G, A>
where
    G: FramedGenerator,
    A: FramedAcceptor<G::Letter>,
{
    type State = Phase<G::State, A::State>;
    type Letter = Framed<G::Letter>;

    fn initial_states(&self) -> Vec<Self::State> {
        vec![Phase::Before]
    }

    fn successors(&self, state: &Self::State) -> Vec<(Self::Letter, Self::State)> {
        let mut out = Vec::new();
        match state {
            Phase::Before => {
                for (payload, g) in self.generator.start() {
                    for a in self.acceptor.start(&payload) {
                        out.push((Framed::Start(payload.clone()), Phase::Reading(g.clone(), a)));
                    }
                }
            }
            Phase::Reading(g, a) => {
                for (letter, g2) in self.generator.next(g) {
                    for a2 in self.acceptor.step(a, &letter) {
                        out.push((Framed::Letter(letter.clone()), Phase::Reading(g2.clone(), a2)));
                    }
                }
                for payload in self.generator.end(g) {
                    if self.acceptor.accepts(a, &payload) {
                        out.push((Framed::End(payload), Phase::After));
                    }
                }
            }
            Phase::After => {}
        }
        out
    }

    fn is_accepting(&self, state: &Self::State) -> bool {
        matches!(state, Phase::After)
    }
}

/// A shortest framed word accepted by both devices, if any. `budget` caps
/// the number of product states explored.
pub fn framed_intersection<G, A>(
    generator: &G,
    acceptor: &A,
    budget: Option<usize>,
) -> Result<Option<FramedWord<G::Letter>>, AutomataError>
where
    G: FramedGenerator,
    A: FramedAcceptor<G::Letter>,
{
    let product = Product { generator, acceptor };
    let word = match lazy_emptiness(&product, budget)? {
        Emptiness::Empty => return Ok(None),
        Emptiness::Witness(w) => w,
    };
    let mut framed = FramedWord::plain(Vec::new());
    for letter in word {
        match letter {
            Framed::Start(p) => framed.start = Some(p),
            Framed::Letter(a) => framed.letters.push(a),
            Framed::End(p) => framed.end = Some(p),
        }
    }
    Ok(Some(framed))
}

/// Accepts everything; intersecting with it yields the generator's language.
pub struct AcceptAll;

impl<L> FramedAcceptor<L> for AcceptAll {
    type State = ();

    fn start(&self, _payload: &L) -> Vec<()> {
        vec![()]
    }

    fn step(&self, _state: &(), _letter: &L) -> Vec<()> {
        vec![()]
    }

    fn accepts(&self, _state: &(), _payload: &L) -> bool {
        true
    }
}
