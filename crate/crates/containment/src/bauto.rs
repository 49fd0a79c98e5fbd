use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use origin_normalization::{AnnotatedSymbol, FramedAcceptor, Saturated};
use origin_transducer::{Cell, Class, TwoWayMachine};

use crate::column::{chain_closure, image, next_pairs, relation_image, Column, PairMap, ProfileCache};
use crate::shape::minimal_sets;

/// State of [`BAutomaton`] at some position of the input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BState {
    /// The run of the first transducer starts at a left-reading state and
    /// has not moved; only useful on the empty input.
    Idle { start: usize, shadow: BTreeSet<usize> },
    /// `hat` is the state in which the run of the first transducer first
    /// crosses the current position; `shadow` holds the states of the second
    /// transducer reachable by compatible runs; `pairs` summarizes the
    /// right-to-right runs on the prefix read so far.
    Run {
        hat: usize,
        shadow: BTreeSet<usize>,
        pairs: Arc<PairMap>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ColumnKey {
    Start(AnnotatedSymbol),
    Letter(AnnotatedSymbol),
    End(AnnotatedSymbol),
}

/// Guesses a successful run of the first transducer together with one output
/// per transition, tracks every run of the second transducer that can
/// match it transition by transition, and accepts when none of them is
/// successful. Both transducers must be busy.
pub struct BAutomaton<'a> {
    m1: &'a Saturated<'a>,
    m2: &'a Saturated<'a>,
    left_reading_second: Vec<usize>,
    columns: Mutex<HashMap<ColumnKey, Arc<Column>>>,
    profiles: Mutex<ProfileCache>,
    pair_steps: Mutex<HashMap<(AnnotatedSymbol, Arc<PairMap>), Arc<PairMap>>>,
}

fn shadow_step(set: &BTreeSet<usize>, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    image(set, edges)
}

impl<'a> BAutomaton<'a> {
    pub fn new(m1: &'a Saturated<'a>, m2: &'a Saturated<'a>) -> Self {
        let t2 = m2.transducer();
        BAutomaton {
            m1,
            m2,
            left_reading_second: (0..t2.num_states()).filter(|&s| t2.class(s) == Class::L).collect(),
            columns: Mutex::new(HashMap::new()),
            profiles: Mutex::new(ProfileCache::default()),
            pair_steps: Mutex::new(HashMap::new()),
        }
    }

    fn column(&self, key: ColumnKey) -> Arc<Column> {
        if let Some(c) = self.columns.lock().expect("column lock").get(&key) {
            return c.clone();
        }
        let cell = match &key {
            ColumnKey::Start(a) => Cell::Start(Some(a)),
            ColumnKey::Letter(a) => Cell::Letter(a),
            ColumnKey::End(a) => Cell::End(Some(a)),
        };
        let column = {
            let mut cache = self.profiles.lock().expect("profile lock");
            Arc::new(Column::build(self.m1, self.m2, cell, &mut cache))
        };
        self.columns.lock().expect("column lock").insert(key, column.clone());
        column
    }

    /// Runs ending in the chains' exits, keeping only the smallest shadows
    /// for each first-transducer state.
    fn runs(exits: BTreeSet<(usize, BTreeSet<usize>)>, pairs: &Arc<PairMap>) -> Vec<BState> {
        let mut by_hat: BTreeMap<usize, Vec<BTreeSet<usize>>> = BTreeMap::new();
        for (hat, shadow) in exits {
            by_hat.entry(hat).or_default().push(shadow);
        }
        by_hat
            .into_iter()
            .flat_map(|(hat, shadows)| {
                minimal_sets(shadows).into_iter().map(move |shadow| BState::Run {
                    hat,
                    shadow,
                    pairs: pairs.clone(),
                })
            })
            .collect()
    }
}

impl FramedAcceptor<AnnotatedSymbol> for BAutomaton<'_> {
    type State = BState;

    fn start(&self, payload: &AnnotatedSymbol) -> Vec<BState> {
        let column = self.column(ColumnKey::Start(payload.clone()));
        let pairs = Arc::new(next_pairs(&column, &PairMap::new(), &self.left_reading_second));
        let shadow: BTreeSet<usize> = self.m2.initial_states(Some(payload)).into_iter().collect();
        let mut out = Vec::new();
        let mut exits = BTreeSet::new();
        for z in self.m1.initial_states(Some(payload)) {
            match self.m1.class(&z) {
                Class::R => exits.insert((z, shadow.clone())),
                Class::L => {
                    out.push(BState::Idle {
                        start: z,
                        shadow: shadow.clone(),
                    });
                    let explored = chain_closure(
                        &column,
                        &PairMap::new(),
                        [(z, shadow.clone())],
                        shadow_step,
                        relation_image,
                    );
                    exits.extend(explored.exits);
                    continue;
                }
            };
        }
        out.extend(Self::runs(exits, &pairs));
        out
    }

    fn step(&self, state: &BState, letter: &AnnotatedSymbol) -> Vec<BState> {
        let BState::Run { hat, shadow, pairs } = state else {
            return Vec::new();
        };
        let column = self.column(ColumnKey::Letter(letter.clone()));
        let key = (letter.clone(), pairs.clone());
        let cached = self.pair_steps.lock().expect("pair lock").get(&key).cloned();
        let next = match cached {
            Some(p) => p,
            None => {
                let p = Arc::new(next_pairs(&column, pairs, &self.left_reading_second));
                self.pair_steps.lock().expect("pair lock").insert(key, p.clone());
                p
            }
        };
        let explored = chain_closure(&column, pairs, [(*hat, shadow.clone())], shadow_step, relation_image);
        Self::runs(explored.exits, &next)
    }

    /// The run may continue on the end marker, bouncing between leftward
    /// transitions and right-to-right runs, and stop in any final state.
    fn accepts(&self, state: &BState, payload: &AnnotatedSymbol) -> bool {
        let final2: BTreeSet<usize> = (0..self.m2.transducer().num_states())
            .filter(|s| self.m2.is_final(s, Some(payload)))
            .collect();
        let good = |x: usize, shadow: &BTreeSet<usize>| self.m1.is_final(&x, Some(payload)) && shadow.is_disjoint(&final2);
        match state {
            BState::Idle { start, shadow } => good(*start, shadow),
            BState::Run { hat, shadow, pairs } => {
                let column = self.column(ColumnKey::End(payload.clone()));
                let explored = chain_closure(&column, pairs, [(*hat, shadow.clone())], shadow_step, relation_image);
                explored
                    .nodes
                    .iter()
                    .chain(&explored.landings)
                    .any(|(x, shadow)| good(*x, shadow))
            }
        }
    }
}
