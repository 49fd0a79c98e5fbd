//! MSO resynchronizers: their semantics, boundedness, and the
//! construction of a transducer realizing the image of a transducer under
//! a bounded resynchronizer.

mod apply;
mod delta;
pub mod fixtures;
mod gamma;
mod monoid;
mod relativized;
mod resynchronizer;
mod semantics;
mod stages;

pub use apply::{apply, apply_to, apply_within, containment_modulo, modulo_evidence, ModuloVerdict};
pub use delta::apply_delta;
pub use gamma::apply_gamma;
pub use monoid::{flagged, param_letter, JointMonoid};
pub use relativized::{project_letter, pullback, relabel_input, Relativized};
pub use resynchronizer::{FormulaEntry, OutputType, ResyncDoc, Resynchronizer, TypePattern};
pub use semantics::{bound, bound_over, gamma_degree, is_bounded, resync_image, resync_semantics, witness_alphabet};
pub use stages::{apply_alpha, apply_beta, check_markers, erase_output_params, lift_parameters};

use origin_automata::AutomataError;
use origin_containment::ContainmentError;
use origin_mso::MsoError;
use origin_transducer::TransducerError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResyncError {
    #[error("resynchronizer not bounded")]
    NotBounded,
    #[error("transition {0} outputs while reading an end marker")]
    MarkerOutput(String),
    #[error("invalid resynchronizer: {0}")]
    Invalid(String),
    #[error("bad output-type pattern {0:?}")]
    Pattern(String),
    #[error("malformed resynchronizer document: {0}")]
    Json(String),
    #[error(transparent)]
    Mso(#[from] MsoError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Transducer(#[from] TransducerError),
    #[error(transparent)]
    Containment(#[from] ContainmentError),
}
