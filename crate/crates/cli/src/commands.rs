use std::collections::BTreeSet;
use std::fs;

use origin_automata::{Symbol, Word};
use origin_containment::{origin_containment, origin_equivalence, Containment, Direction, Equivalence};
use origin_normalization::{annotate, busy, fresh_hash, normalize as norm_stage, project, AnnotatedSymbol};
use origin_resync::{bound, containment_modulo, ModuloVerdict, Resynchronizer};
use origin_transducer::{
    enumerate_framed, enumerate_framed_with_filler, enumerate_sync_pairs, inputs_up_to, tokenize, SyncPair,
    TwoWayTransducer,
};
use serde_json::json;

use crate::dot::origin_graphs;
use crate::verdict::{pair_doc, word_text, VerdictDoc};
use crate::{Bounds, CliError, Outcome};

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn read_transducer(path: &str) -> Result<TwoWayTransducer, CliError> {
    TwoWayTransducer::from_json(&read(path)?).map_err(|source| CliError::Transducer { path: path.into(), source })
}

pub fn read_resynchronizer(path: &str) -> Result<Resynchronizer, CliError> {
    Ok(Resynchronizer::from_json(&read(path)?)?)
}

pub fn check_containment(t1: &TwoWayTransducer, t2: &TwoWayTransducer, bounds: &Bounds) -> Result<Outcome, CliError> {
    Ok(match origin_containment(t1, t2, &bounds.options())? {
        Containment::Contained => Outcome::ok(VerdictDoc::holds("contained").to_json()),
        Containment::NotContained(cex) => {
            Outcome::failed(VerdictDoc::fails("not-contained", &cex.input, cex.evidence.as_ref()).to_json())
        }
    })
}

pub fn check_equivalence(t1: &TwoWayTransducer, t2: &TwoWayTransducer, bounds: &Bounds) -> Result<Outcome, CliError> {
    Ok(match origin_equivalence(t1, t2, &bounds.options())? {
        Equivalence::Equivalent => Outcome::ok(VerdictDoc::holds("equivalent").to_json()),
        Equivalence::NotEquivalent { direction, counterexample } => {
            let mut doc = VerdictDoc::fails("not-equivalent", &counterexample.input, counterexample.evidence.as_ref());
            doc.direction = Some(
                match direction {
                    Direction::LeftInRight => "first-not-in-second",
                    Direction::RightInLeft => "second-not-in-first",
                }
                .into(),
            );
            Outcome::failed(doc.to_json())
        }
    })
}

pub fn check_modulo(
    t1: &TwoWayTransducer,
    t2: &TwoWayTransducer,
    r: &Resynchronizer,
    bounds: &Bounds,
) -> Result<Outcome, CliError> {
    Ok(match containment_modulo(t1, t2, r, &bounds.options())? {
        ModuloVerdict::Holds => Outcome::ok(VerdictDoc::holds("contained").to_json()),
        ModuloVerdict::Fails { input, evidence } => {
            Outcome::failed(VerdictDoc::fails("not-contained", &input, evidence.as_ref()).to_json())
        }
    })
}

pub fn resync_bounded(r: &Resynchronizer) -> Result<Outcome, CliError> {
    let k = bound(r)?;
    let text = json!({ "bounded": k.is_some(), "bound": k }).to_string() + "\n";
    Ok(if k.is_some() { Outcome::ok(text) } else { Outcome::failed(text) })
}

/// Pairs ordered by output word, then by origins.
pub fn sorted_pairs(pairs: BTreeSet<SyncPair>) -> Vec<SyncPair> {
    let mut v: Vec<SyncPair> = pairs.into_iter().collect();
    v.sort_by(|p, q| {
        (p.output_word(), p.output.iter().map(|(_, o)| *o).collect::<Vec<_>>())
            .cmp(&(q.output_word(), q.output.iter().map(|(_, o)| *o).collect()))
    });
    v
}

fn parse_input(t: &TwoWayTransducer, text: &str) -> Result<Word, CliError> {
    tokenize(text, t.input_alphabet()).ok_or_else(|| CliError::Usage(format!("input {text:?} is not a word over the input alphabet")))
}

/// The pairs of `t` on `input` as JSON, and their origin graphs in DOT.
pub fn enumerate(t: &TwoWayTransducer, input: &str, max_out: usize) -> Result<(Outcome, String), CliError> {
    let u = parse_input(t, input)?;
    let pairs = sorted_pairs(enumerate_sync_pairs(t, &u, max_out));
    let docs: Vec<_> = pairs.iter().map(pair_doc).collect();
    let text = serde_json::to_string(&docs).expect("pairs serialize") + "\n";
    Ok((Outcome::ok(text), origin_graphs(&pairs)))
}

fn annotated_pairs_projected(pairs: BTreeSet<SyncPair<AnnotatedSymbol>>, hash: Option<&Symbol>, max_out: usize) -> BTreeSet<SyncPair> {
    pairs
        .into_iter()
        .map(|p| SyncPair::new(project(&p.input), p.output.into_iter().filter(|(s, _)| Some(s) != hash).collect()))
        .filter(|p| p.output.len() <= max_out)
        .collect()
}

fn stage_pairs(t: &TwoWayTransducer, with_busy: bool, u: &Word, max_out: usize) -> Result<BTreeSet<SyncPair>, CliError> {
    let w = annotate(&[t], u);
    if with_busy {
        let hash = fresh_hash(t.output_alphabet());
        let b = busy(t, 0, hash.clone())?;
        let room = (max_out + 1) * (u.len() + 1);
        Ok(annotated_pairs_projected(
            enumerate_framed_with_filler(&b, &w, max_out, Some((&hash, room))),
            Some(&hash),
            max_out,
        ))
    } else {
        Ok(annotated_pairs_projected(enumerate_framed(&norm_stage(t, 0), &w, max_out), None, max_out))
    }
}

/// Inputs up to `max_len` on which `Busy(T_U)`, after erasing the letter
/// standing for empty output, differs from `t`, with the number of inputs
/// checked.
pub fn busy_mismatches(t: &TwoWayTransducer, max_len: usize, max_out: usize) -> Result<(usize, Vec<Word>), CliError> {
    mismatches(t, true, max_len, max_out)
}

fn mismatches(t: &TwoWayTransducer, with_busy: bool, max_len: usize, max_out: usize) -> Result<(usize, Vec<Word>), CliError> {
    let inputs = inputs_up_to(t.input_alphabet(), max_len);
    let mut bad = Vec::new();
    for u in &inputs {
        if stage_pairs(t, with_busy, u, max_out)? != enumerate_sync_pairs(t, u, max_out) {
            bad.push(u.clone());
        }
    }
    Ok((inputs.len(), bad))
}

/// Checks the normalized (or busy) form of `t` against `t` on all inputs
/// within bounds, and lists its pairs on `input` if given.
pub fn normalize(t: &TwoWayTransducer, with_busy: bool, input: Option<&str>, bounds: &Bounds) -> Result<Outcome, CliError> {
    let (checked, bad) = mismatches(t, with_busy, bounds.max_input, bounds.max_out)?;
    let mut report = json!({
        "stage": if with_busy { "busy" } else { "norm" },
        "inputs_checked": checked,
        "mismatches": bad.iter().map(|u| word_text(u)).collect::<Vec<_>>(),
    });
    if with_busy {
        report["empty_output_letter"] = json!(fresh_hash(t.output_alphabet()).to_string());
    }
    if let Some(text) = input {
        let u = parse_input(t, text)?;
        let pairs = sorted_pairs(stage_pairs(t, with_busy, &u, bounds.max_out)?);
        report["pairs"] = json!(pairs.iter().map(pair_doc).collect::<Vec<_>>());
    }
    let text = report.to_string() + "\n";
    Ok(if bad.is_empty() { Outcome::ok(text) } else { Outcome::failed(text) })
}
