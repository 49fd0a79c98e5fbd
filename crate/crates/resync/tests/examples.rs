use origin_automata::{word_from_chars, Symbol};
use origin_containment::Options;
use origin_resync::{
    apply_to, bound, containment_modulo, fixtures, is_bounded, resync_semantics, ModuloVerdict, Resynchronizer,
};
use origin_transducer::{fixtures as tf, SyncPair};

fn pair(input: &str, output: &str, origins: &[usize]) -> SyncPair {
    SyncPair::new(
        word_from_chars(input),
        word_from_chars(output).into_iter().zip(origins.iter().copied()).collect(),
    )
}

#[test]
fn boundedness_triple() {
    assert!(!is_bounded(&fixtures::universal()).unwrap());
    assert_eq!(bound(&fixtures::plus_minus_one()).unwrap(), Some(2));
    assert_eq!(bound(&fixtures::first_to_last()).unwrap(), Some(1));
    assert_eq!(bound(&fixtures::identity()).unwrap(), Some(1));
    assert!(is_bounded(&fixtures::b_parity()).unwrap());
}

#[test]
fn two_step_displacement_is_bounded_by_two() {
    let r = Resynchronizer::universal(&[], &[])
        .with_gamma("(exists1 w (or (and (succ y w) (succ w z)) (and (succ z w) (succ w y))))")
        .unwrap();
    assert_eq!(bound(&r).unwrap(), Some(2));
}

#[test]
fn universal_relates_equal_words() {
    let r = fixtures::universal();
    assert!(resync_semantics(&r, &pair("ab", "xy", &[1, 2]), &pair("ab", "xy", &[2, 2])).unwrap());
    assert!(!resync_semantics(&r, &pair("ab", "xy", &[1, 2]), &pair("ab", "xz", &[1, 2])).unwrap());
    assert!(!resync_semantics(&r, &pair("ab", "xy", &[1, 2]), &pair("ba", "xy", &[1, 2])).unwrap());
}

#[test]
fn displaced_figure_pair() {
    let (solid, dashed) = fixtures::displaced_pairs();
    assert!(resync_semantics(&fixtures::plus_minus_one(), &solid, &dashed).unwrap());
    assert!(!resync_semantics(&fixtures::plus_minus_one(), &solid, &solid).unwrap());
}

#[test]
fn displacement_by_two_is_not_related() {
    let r = fixtures::plus_minus_one();
    assert!(!resync_semantics(&r, &pair("aaa", "a", &[1]), &pair("aaa", "a", &[3])).unwrap());
    assert!(resync_semantics(&r, &pair("aaa", "a", &[1]), &pair("aaa", "a", &[2])).unwrap());
}

#[test]
fn parity_figure_pair() {
    let (solid, dashed) = fixtures::parity_pairs();
    let r = fixtures::b_parity();
    assert!(resync_semantics(&r, &solid, &dashed).unwrap());
    let (_, displaced) = fixtures::displaced_pairs();
    let wrong = SyncPair::new(dashed.input.clone(), dashed.output.iter().zip(&displaced.output).map(|((a, _), (_, o))| (a.clone(), *o)).collect());
    assert!(!resync_semantics(&r, &solid, &wrong).unwrap());
}

#[test]
fn origins_on_markers_are_rejected() {
    let r = fixtures::plus_minus_one();
    assert!(!resync_semantics(&r, &pair("aa", "a", &[1]), &pair("aa", "a", &[0])).unwrap());
    assert!(!resync_semantics(&r, &pair("aa", "a", &[2]), &pair("aa", "a", &[3])).unwrap());
}

#[test]
fn displaced_figure_through_apply() {
    let (solid, dashed) = fixtures::displaced_pairs();
    let image = apply_to(&fixtures::plus_minus_one(), &fixtures::displaced_producer()).unwrap();
    let pairs = image.pairs_on(&solid.input, 6);
    assert!(pairs.contains(&dashed));
    assert!(!pairs.contains(&solid));
    // o at 1 must move to 2; "ut" at 2 to 1 or 3 each; p to 3 or 5; "ut" at 5 to 4.
    assert_eq!(pairs.len(), 8);
}

#[test]
fn parity_figure_through_apply() {
    let (solid, dashed) = fixtures::parity_pairs();
    let image = apply_to(&fixtures::b_parity(), &fixtures::parity_producer()).unwrap();
    let pairs = image.pairs_on(&solid.input, 6);
    assert_eq!(pairs.into_iter().collect::<Vec<_>>(), vec![dashed]);
}

#[test]
fn unsatisfiable_alpha_gives_empty_image() {
    let r = fixtures::identity().with_alpha("false").unwrap();
    let image = apply_to(&r, &tf::copier(&["a", "b"])).unwrap();
    assert!(image.pairs_up_to(3, 4).is_empty());
}

#[test]
fn alpha_restricts_inputs() {
    let r = fixtures::identity().with_alpha("(exists1 x (label a x))").unwrap();
    let image = apply_to(&r, &tf::copier(&["a", "b"])).unwrap();
    let pairs = image.pairs_up_to(3, 4);
    assert!(!pairs.is_empty());
    assert!(pairs.iter().all(|p| p.input.contains(&Symbol::atom("a"))));
    assert_eq!(pairs.len(), (1..=3).map(|n| 2usize.pow(n) - 1).sum::<usize>());
}

#[test]
fn input_parameter_selects_origins() {
    // I marks exactly one position; every origin moves there.
    let r = Resynchronizer::universal(&["I"], &[])
        .with_alpha("(and (exists1 x (in x I)) (forall1 x (forall1 w (implies (and (in x I) (in w I)) (eq x w)))))")
        .unwrap()
        .with_gamma("(and (in z I) (first y))")
        .unwrap();
    assert!(is_bounded(&r).unwrap());
    let image = apply_to(&r, &tf::first_emitter()).unwrap();
    let got = image.pairs_up_to(3, 2);
    let expected = origin_resync::resync_image(&r, &origin_resync::Relativized::unrestricted(&tf::first_emitter()).unwrap().pairs_up_to(3, 2)).unwrap();
    assert_eq!(got, expected);
    assert!(got.contains(&pair("aaa", "aa", &[3, 3])));
    assert!(!got.contains(&pair("aaa", "aa", &[3, 2])));
}

#[test]
fn beta_even_output_length() {
    let r = Resynchronizer { beta: origin_mso::fixtures::even_as(), ..fixtures::identity() };
    let image = apply_to(&r, &tf::copier(&["a", "b"])).unwrap();
    let pairs = image.pairs_up_to(3, 4);
    assert!(!pairs.is_empty());
    for p in &pairs {
        assert_eq!(p.output.iter().filter(|(s, _)| *s == Symbol::atom("a")).count() % 2, 0);
    }
}

#[test]
fn beta_unsatisfiable_gives_empty_image() {
    let r = fixtures::identity().with_beta("false").unwrap();
    assert!(apply_to(&r, &tf::copier(&["a"])).unwrap().pairs_up_to(3, 4).is_empty());
}

#[test]
fn monotone_delta_gives_sorted_origins() {
    let image = apply_to(&fixtures::monotone(), &tf::copy_then_reverse()).unwrap();
    let pairs = image.pairs_up_to(3, 6);
    for p in &pairs {
        assert!(p.output.windows(2).all(|w| w[0].1 <= w[1].1), "{p:?}");
    }
    // copy-then-reverse is monotone only on inputs of length at most one
    assert!(pairs.iter().all(|p| p.input.len() <= 1));
    assert_eq!(pairs.len(), 3);
}

#[test]
fn unsatisfiable_delta_keeps_short_outputs() {
    let r = fixtures::identity().with_delta("false").unwrap();
    let image = apply_to(&r, &tf::origin_one_copier()).unwrap();
    let pairs = image.pairs_up_to(3, 4);
    assert!(pairs.iter().all(|p| p.output.len() <= 1));
    assert_eq!(pairs.iter().filter(|p| p.output.len() == 1).count(), 3);
    assert_eq!(pairs.len(), 7);
}

#[test]
fn non_trivial_true_delta_preserves_semantics() {
    // not literally `true`, so the δ stage runs
    let r = fixtures::plus_minus_one().with_delta("(or (lt z z') (not (lt z z')))").unwrap();
    assert!(!r.delta_trivial());
    let t = tf::copier(&["a"]);
    let got = apply_to(&r, &t).unwrap().pairs_up_to(3, 4);
    let plain = apply_to(&fixtures::plus_minus_one(), &t).unwrap().pairs_up_to(3, 4);
    assert_eq!(got, plain);
}

#[test]
fn modulo_identity_is_plain_containment() {
    let o = Options::default();
    let t = tf::copier(&["a"]);
    assert_eq!(containment_modulo(&t, &t, &fixtures::identity(), &o).unwrap(), ModuloVerdict::Holds);
    assert!(matches!(
        containment_modulo(&tf::shifted_copier(), &t, &fixtures::identity(), &o),
        Err(origin_resync::ResyncError::MarkerOutput(_))
    ));
    let first = tf::first_emitter();
    let last = tf::last_emitter();
    assert!(matches!(containment_modulo(&first, &last, &fixtures::identity(), &o).unwrap(), ModuloVerdict::Fails { .. }));
}

#[test]
fn modulo_first_to_last() {
    let o = Options::default();
    let r = fixtures::first_to_last();
    let last = tf::last_emitter();
    let first = tf::first_emitter();
    assert_eq!(containment_modulo(&last, &first, &r, &o).unwrap(), ModuloVerdict::Holds);
    match containment_modulo(&first, &last, &r, &o).unwrap() {
        ModuloVerdict::Holds => panic!("expected failure"),
        ModuloVerdict::Fails { input, evidence } => {
            assert!(input.len() >= 2);
            let p = evidence.expect("evidence");
            assert!(p.output.iter().all(|(_, o)| *o == 1));
        }
    }
}

#[test]
fn modulo_unbounded_is_refused() {
    let t = tf::copier(&["a"]);
    assert!(matches!(
        containment_modulo(&t, &t, &fixtures::universal(), &Options::default()),
        Err(origin_resync::ResyncError::NotBounded)
    ));
}

#[test]
fn modulo_is_not_transitive() {
    let o = Options::default();
    let r = fixtures::plus_minus_one();
    let t: Vec<_> = (1..=3).map(|k| fixtures::emitter_at(k, 3)).collect();
    assert_eq!(containment_modulo(&t[0], &t[1], &r, &o).unwrap(), ModuloVerdict::Holds);
    assert_eq!(containment_modulo(&t[1], &t[2], &r, &o).unwrap(), ModuloVerdict::Holds);
    assert!(matches!(containment_modulo(&t[0], &t[2], &r, &o).unwrap(), ModuloVerdict::Fails { evidence: Some(_), .. }));
}

#[test]
fn json_round_trip() {
    for r in [fixtures::identity(), fixtures::plus_minus_one(), fixtures::b_parity(), fixtures::monotone()] {
        let text = r.to_json();
        let back = Resynchronizer::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
    }
}

#[test]
fn json_body_shorthand() {
    let r = Resynchronizer::from_json(
        r#"{"input_params":[],"output_params":[],"gamma":{"default":"(or (succ z y) (succ y z))"}}"#,
    )
    .unwrap();
    assert_eq!(bound(&r).unwrap(), Some(2));
    assert!(Resynchronizer::from_json("{").is_err());
}
