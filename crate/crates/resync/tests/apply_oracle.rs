use std::collections::BTreeSet;
use std::time::Instant;

use origin_resync::{apply_to, fixtures, resync_image, Relativized, Resynchronizer};
use origin_transducer::{fixtures as tf, SyncPair, TwoWayTransducer};

const MAX_LEN: usize = 3;
const MAX_OUT: usize = 4;

fn compare(name: &str, r: &Resynchronizer, t: &TwoWayTransducer) {
    compare_up_to(name, r, t, MAX_LEN, MAX_OUT);
}

fn compare_up_to(name: &str, r: &Resynchronizer, t: &TwoWayTransducer, max_len: usize, max_out: usize) {
    let start = Instant::now();
    let source = Relativized::unrestricted(t).unwrap().pairs_up_to(max_len, max_out);
    let expected: BTreeSet<SyncPair> = resync_image(r, &source).unwrap();
    let built = apply_to(r, t).unwrap();
    let got = built.pairs_up_to(max_len, max_out);
    let missing: Vec<_> = expected.difference(&got).take(3).collect();
    let extra: Vec<_> = got.difference(&expected).take(3).collect();
    assert!(
        missing.is_empty() && extra.is_empty(),
        "{name}: missing {missing:?}, extra {extra:?}"
    );
    eprintln!("{name}: {} pairs, {:?}", got.len(), start.elapsed());
}

#[test]
fn identity_on_copy_then_reverse() {
    compare("identity", &fixtures::identity(), &tf::copy_then_reverse());
}

#[test]
fn plus_minus_one_on_unary_copier() {
    compare("plus-minus-one", &fixtures::plus_minus_one(), &tf::copier(&["a"]));
}

#[test]
fn first_to_last_on_first_emitter() {
    compare("first-to-last", &fixtures::first_to_last(), &tf::first_emitter());
}

#[test]
fn parity_on_binary_copier() {
    compare("parity", &fixtures::b_parity(), &tf::copier(&["a", "b"]));
}

#[test]
fn monotone_on_copy_then_reverse() {
    compare("monotone", &fixtures::monotone(), &tf::copy_then_reverse());
}

#[test]
fn universal_is_refused() {
    let err = apply_to(&fixtures::universal(), &tf::first_emitter()).unwrap_err();
    assert!(matches!(err, origin_resync::ResyncError::NotBounded));
}

#[test]
fn plus_minus_one_on_copy_then_reverse() {
    compare_up_to("plus-minus-one 2way", &fixtures::plus_minus_one(), &tf::copy_then_reverse(), 3, 6);
}

#[test]
fn parity_on_copy_then_reverse() {
    compare_up_to("parity 2way", &fixtures::b_parity(), &tf::copy_then_reverse(), 3, 6);
}

#[test]
fn first_to_last_on_origin_one_copier() {
    compare_up_to("first-to-last pumped", &fixtures::first_to_last(), &tf::origin_one_copier(), 4, 4);
}

#[test]
fn monotone_on_figure_transducer() {
    compare_up_to("monotone figure", &fixtures::monotone(), &tf::figure_transducer(), 3, 6);
}

#[test]
fn plus_minus_one_longer_inputs() {
    compare_up_to("plus-minus-one long", &fixtures::plus_minus_one(), &tf::copier(&["a", "b"]), 5, 5);
}
