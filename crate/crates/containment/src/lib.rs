//! Origin containment and equivalence of two-way transducers.
//!
//! Both transducers are made busy on annotated inputs, then a one-way
//! automaton guessing a run of the first transducer and tracking all
//! compatible runs of the second one is intersected with the annotation
//! checker. The intersection is empty exactly when containment holds.

mod bauto;
mod column;
mod driver;
mod shape;

pub use bauto::{BAutomaton, BState};
pub use column::{chain_closure, image, next_pairs, relation_image, Column, ColumnMove, Exploration, PairMap, ProfileCache, Relation};
pub use driver::{
    find_evidence, origin_containment, origin_containment_within, origin_equivalence, Containment, ContainmentError, Counterexample, Direction,
    Equivalence, Options, DEFAULT_STATE_BUDGET, STATE_BUDGET_VAR,
};
pub use shape::{minimal_sets, same_shape, witness_profiles};
