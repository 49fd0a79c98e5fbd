use origin_automata::{Nfa, Symbol, Word};
use origin_containment::{origin_containment_within, Containment, Options};
use origin_transducer::{enumerate_sync_pairs, SyncPair, TwoWayTransducer};

use crate::delta::apply_delta;
use crate::gamma::apply_gamma;
use crate::relativized::{project_letter, relabel_input, Relativized};
use crate::resynchronizer::Resynchronizer;
use crate::semantics::{bound_over, resync_semantics};
use crate::stages::{apply_alpha, apply_beta, check_markers, erase_output_params, lift_parameters};
use crate::ResyncError;

/// A transducer with a domain whose semantics is the image of `rel`'s
/// semantics under `r`. `r` must be bounded.
pub fn apply(r: &Resynchronizer, rel: &Relativized) -> Result<Relativized, ResyncError> {
    r.validate()?;
    check_markers(&rel.transducer)?;
    let k = bound_over(r, &rel.base, None)?.ok_or(ResyncError::NotBounded)?;
    let gamma = rel.transducer.output_alphabet().to_vec();
    let lifted = lift_parameters(r, rel)?;
    let a = apply_alpha(r, &lifted)?;
    let b = apply_beta(r, &a)?;
    let g = apply_gamma(r, &b, k as usize)?;
    let d = if r.delta_trivial() { g } else { apply_delta(r, &g)? };
    erase_output_params(&d, &gamma)
}

/// [`apply`] on all inputs of `t`.
pub fn apply_to(r: &Resynchronizer, t: &TwoWayTransducer) -> Result<Relativized, ResyncError> {
    apply(r, &Relativized::unrestricted(t)?)
}

/// [`apply`] on the inputs of `t` accepted by `domain`.
pub fn apply_within(r: &Resynchronizer, t: &TwoWayTransducer, domain: &Nfa<Symbol>) -> Result<Relativized, ResyncError> {
    apply(r, &Relativized::restricted(t, domain)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuloVerdict {
    Holds,
    Fails {
        input: Word,
        /// A pair of the first transducer that no pair of the second one
        /// is related to, if the bounded search found one.
        evidence: Option<SyncPair>,
    },
}

/// Decides whether every pair of `t1` is the image under `r` of a pair of
/// `t2`. `r` must be bounded.
pub fn containment_modulo(
    t1: &TwoWayTransducer,
    t2: &TwoWayTransducer,
    r: &Resynchronizer,
    options: &Options,
) -> Result<ModuloVerdict, ResyncError> {
    if t1.input_alphabet() != t2.input_alphabet() {
        return Err(ResyncError::Invalid("input alphabets differ".into()));
    }
    check_markers(t1)?;
    let image = apply_to(r, t2)?;
    let base = image.base.clone();
    let lifted = relabel_input(t1, image.transducer.input_alphabet().to_vec(), |s| project_letter(&base, s))?;
    match origin_containment_within(&lifted, &image.transducer, Some(&image.domain), options)? {
        Containment::Contained => Ok(ModuloVerdict::Holds),
        Containment::NotContained(cex) => {
            let input = image.project(&cex.input);
            let evidence = modulo_evidence(t1, t2, r, &input, options.evidence_max_out)?;
            Ok(ModuloVerdict::Fails { input, evidence })
        }
    }
}

/// A pair of `t1` on `input` related to no pair of `t2`, trying output
/// lengths up to `max_out`.
pub fn modulo_evidence(
    t1: &TwoWayTransducer,
    t2: &TwoWayTransducer,
    r: &Resynchronizer,
    input: &[Symbol],
    max_out: usize,
) -> Result<Option<SyncPair>, ResyncError> {
    for m in 0..=max_out {
        let right = enumerate_sync_pairs(t2, input, m);
        for p in enumerate_sync_pairs(t1, input, m).into_iter().filter(|p| p.output.len() == m) {
            let mut covered = false;
            for q in right.iter().filter(|q| q.output_word() == p.output_word()) {
                if resync_semantics(r, q, &p)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}
