use std::collections::BTreeSet;

use origin_resync::{apply_to, fixtures, resync_image, Relativized, Resynchronizer};
use origin_transducer::random::{random_spec, RandomParams};
use origin_transducer::{Read, TwoWayTransducer};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn silent_markers(rng: &mut ChaCha8Rng, params: &RandomParams) -> TwoWayTransducer {
    let mut spec = random_spec(rng, params);
    for (_, read, _, words) in &mut spec.transitions {
        if matches!(read, Read::Start | Read::End) {
            *words = BTreeSet::from([Vec::new()]);
        }
    }
    spec.to_transducer()
}

fn check_many(name: &str, r: &Resynchronizer, seed: u64, count: usize) {
    let params = RandomParams { input_size: 2, output_size: 2, density: 0.4, ..RandomParams::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0;
    for case in 0..count {
        let t = silent_markers(&mut rng, &params);
        let source = Relativized::unrestricted(&t).unwrap().pairs_up_to(3, 4);
        let expected = resync_image(r, &source).unwrap();
        let got = apply_to(r, &t).unwrap().pairs_up_to(3, 4);
        assert_eq!(got, expected, "{name}, case {case}: {t:?}");
        total += got.len();
    }
    eprintln!("{name}: {total} pairs");
    assert!(total > 0, "{name}: no case produced pairs");
}

#[test]
fn random_plus_minus_one() {
    check_many("plus-minus-one", &fixtures::plus_minus_one(), 11, 60);
}

#[test]
fn random_first_to_last() {
    check_many("first-to-last", &fixtures::first_to_last(), 12, 60);
}

#[test]
fn random_parity() {
    check_many("parity", &fixtures::b_parity(), 13, 30);
}

#[test]
fn random_monotone() {
    check_many("monotone", &fixtures::monotone(), 14, 30);
}
