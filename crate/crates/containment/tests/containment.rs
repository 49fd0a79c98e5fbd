use std::collections::BTreeSet;

use origin_automata::{Symbol, Word};
use origin_containment::{
    chain_closure, image, origin_containment, origin_equivalence, relation_image, same_shape, witness_profiles, Column,
    ColumnMove, Containment, Direction, Equivalence, Options, PairMap,
};
use origin_transducer::fixtures::{copier, copy_then_reverse, figure_transducer, first_emitter, last_emitter, origin_one_copier, shifted_copier};
use origin_transducer::random::{random_pair, RandomParams};
use origin_transducer::{bounded_containment, enumerate_sync_pairs, find_run, inputs_up_to, Class, Dir, Read, TwoWayTransducer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a(s: &str) -> Symbol {
    Symbol::atom(s)
}

fn word(s: &str) -> Word {
    s.chars().map(|c| a(&c.to_string())).collect()
}

fn contained(t1: &TwoWayTransducer, t2: &TwoWayTransducer) -> bool {
    match origin_containment(t1, t2, &Options::default()).unwrap() {
        Containment::Contained => true,
        Containment::NotContained(cex) => {
            assert_evidence(t1, t2, &cex.input, cex.evidence.as_ref());
            false
        }
    }
}

fn assert_evidence(t1: &TwoWayTransducer, t2: &TwoWayTransducer, input: &Word, evidence: Option<&origin_transducer::SyncPair>) {
    let pair = evidence.expect("evidence found");
    assert_eq!(&pair.input, input);
    assert!(find_run(t1, pair).is_some(), "evidence replays on the first transducer");
    let max_out = pair.output.len();
    assert!(!enumerate_sync_pairs(t2, input, max_out).contains(pair));
}

#[test]
fn same_shape_compares_letter_and_classes() {
    let t = copier(&["a", "b"]);
    let tr = &t.transitions()[0];
    assert!(same_shape(&t, tr, &t, tr));
    let other = t
        .transitions()
        .iter()
        .find(|x| x.read != tr.read)
        .expect("two letters");
    assert!(!same_shape(&t, tr, &t, other));

    let mut s = TwoWayTransducer::new(vec![a("a")], vec![a("a")]);
    let l = s.add_state("l", Class::L);
    let r = s.add_state("r", Class::R);
    s.add_words(l, Read::Letter(a("a")), r, Dir::Right, &[vec![]]).unwrap();
    s.add_words(r, Read::Letter(a("a")), r, Dir::Right, &[vec![]]).unwrap();
    assert!(!same_shape(&s, &s.transitions()[0], &s, &s.transitions()[1]));
}

#[test]
fn witness_profiles_follow_output_words() {
    let mut t = TwoWayTransducer::new(vec![a("a")], vec![a("x"), a("y")]);
    t.add_state("q", Class::R);
    let l1 = t.finite_language(&[word("x"), word("y")]).unwrap();
    let l2 = t.finite_language(&[word("x")]).unwrap();
    let l3 = t.finite_language(&[word("x"), word("y")]).unwrap();
    let profiles = witness_profiles(&l1, &[&l2, &l3]);
    assert_eq!(profiles, BTreeSet::from([BTreeSet::from([0, 1]), BTreeSet::from([1])]));
    assert_eq!(witness_profiles(&l1, &[]), BTreeSet::from([BTreeSet::new()]));
    let single = t.finite_language(&[word("xy")]).unwrap();
    assert_eq!(witness_profiles(&single, &[&l2, &l3]).len(), 1);
}

#[test]
fn chain_closure_two_step_example() {
    // state 0 (right-reading) goes left to 1 with two profiles; 1 is sent
    // back to 2 by a pair; 2 goes right to 3 with one profile
    let classes = vec![Class::R, Class::L, Class::R, Class::R];
    let moves = vec![
        vec![ColumnMove {
            target: 1,
            profiles: vec![vec![(0, 1)], vec![(0, 2)]],
        }],
        vec![],
        vec![ColumnMove {
            target: 3,
            profiles: vec![vec![(1, 5), (2, 6)]],
        }],
        vec![],
    ];
    let column = Column::from_parts(moves, classes);
    let mut pairs = PairMap::new();
    pairs.insert((1, 2), BTreeSet::from([BTreeSet::from([(1, 1), (2, 2)])]));
    let explored = chain_closure(&column, &pairs, [(0, BTreeSet::from([0]))], image_of, relation_image);
    assert_eq!(
        explored.exits,
        BTreeSet::from([(3, BTreeSet::from([5])), (3, BTreeSet::from([6]))])
    );

    let direct = Column::from_parts(
        vec![vec![ColumnMove {
            target: 1,
            profiles: vec![vec![(0, 0)]],
        }], vec![]],
        vec![Class::R, Class::R],
    );
    let explored = chain_closure(&direct, &PairMap::new(), [(0, BTreeSet::from([0]))], image_of, relation_image);
    assert_eq!(explored.exits, BTreeSet::from([(1, BTreeSet::from([0]))]));
    assert!(explored.landings.is_empty());
}

fn image_of(set: &BTreeSet<usize>, edges: &[(usize, usize)]) -> BTreeSet<usize> {
    image(set, edges)
}

type Config = (usize, BTreeSet<usize>);

/// Exits of all chains that never revisit a configuration.
fn explicit_chains(column: &Column, pairs: &PairMap, x: usize, set: BTreeSet<usize>, seen: &mut Vec<Config>, out: &mut BTreeSet<Config>) {
    for mv in &column.moves[x] {
        for profile in &mv.profiles {
            let moved = image(&set, profile);
            if column.class(mv.target) == Class::R {
                out.insert((mv.target, moved));
                continue;
            }
            for ((_, z), rels) in pairs.range((mv.target, 0)..=(mv.target, usize::MAX)) {
                for rel in rels {
                    let node = (*z, relation_image(&moved, rel));
                    if seen.contains(&node) {
                        continue;
                    }
                    seen.push(node.clone());
                    explicit_chains(column, pairs, node.0, node.1, seen, out);
                    seen.pop();
                }
            }
        }
    }
}

fn random_edges(rng: &mut ChaCha8Rng, n2: usize) -> Vec<(usize, usize)> {
    (0..rng.gen_range(0..=2)).map(|_| (rng.gen_range(0..n2), rng.gen_range(0..n2))).collect()
}

#[test]
fn chain_closure_matches_explicit_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n1 = rng.gen_range(2..=4);
        let n2 = 3;
        let classes: Vec<Class> = (0..n1).map(|i| if i == 0 || rng.gen_bool(0.5) { Class::R } else { Class::L }).collect();
        let moves = (0..n1)
            .map(|_| {
                (0..rng.gen_range(0..=2))
                    .map(|_| ColumnMove {
                        target: rng.gen_range(0..n1),
                        profiles: (0..rng.gen_range(1..=2)).map(|_| random_edges(&mut rng, n2)).collect(),
                    })
                    .collect()
            })
            .collect();
        let column = Column::from_parts(moves, classes.clone());
        let mut pairs = PairMap::new();
        for l in (0..n1).filter(|&q| classes[q] == Class::L) {
            for r in (0..n1).filter(|&q| classes[q] == Class::R) {
                if rng.gen_bool(0.5) {
                    let rels = (0..rng.gen_range(1..=2))
                        .map(|_| random_edges(&mut rng, n2).into_iter().collect())
                        .collect();
                    pairs.insert((l, r), rels);
                }
            }
        }
        let start: Config = (0, (0..n2).filter(|_| rng.gen_bool(0.6)).collect());
        let closure = chain_closure(&column, &pairs, [start.clone()], image_of, relation_image);
        let mut explicit = BTreeSet::new();
        explicit_chains(&column, &pairs, start.0, start.1.clone(), &mut vec![start], &mut explicit);
        assert_eq!(closure.exits, explicit);
    }
}

#[test]
fn copier_is_contained_in_itself() {
    assert!(contained(&copier(&["a", "b"]), &copier(&["a", "b"])));
    assert_eq!(
        origin_equivalence(&copier(&["a"]), &copier(&["a"]), &Options::default()).unwrap(),
        Equivalence::Equivalent
    );
}

#[test]
fn shifted_origins_are_not_contained() {
    let Containment::NotContained(cex) = origin_containment(&shifted_copier(), &copier(&["a"]), &Options::default()).unwrap() else {
        panic!("shifted copier is not contained in the copier");
    };
    assert!(cex.confirmed());
    assert_evidence(&shifted_copier(), &copier(&["a"]), &cex.input, cex.evidence.as_ref());
    assert!(!contained(&copier(&["a"]), &shifted_copier()));
}

#[test]
fn adding_transitions_keeps_containment() {
    let t = copier(&["a", "b"]);
    let mut bigger = t.clone();
    let q = bigger.initial().iter().next().copied().unwrap();
    bigger
        .add_words(q, Read::Letter(a("a")), q, Dir::Right, &[word("b"), word("ab")])
        .unwrap();
    assert!(contained(&t, &bigger));
    assert!(!contained(&bigger, &t));
}

#[test]
fn figure_transducer_differs_from_a_copier() {
    let figure = figure_transducer();
    let one_way = copier(&["a1", "a2", "a3"]);
    let verdict = origin_equivalence(&figure, &one_way, &Options::default()).unwrap();
    let Equivalence::NotEquivalent { direction, counterexample } = verdict else {
        panic!("expected a difference");
    };
    let (left, right) = match direction {
        Direction::LeftInRight => (&figure, &one_way),
        Direction::RightInLeft => (&one_way, &figure),
    };
    assert_evidence(left, right, &counterexample.input, counterexample.evidence.as_ref());
}

#[test]
fn fixture_verdicts_match_the_oracle() {
    let fixtures = [
        copier(&["a"]),
        shifted_copier(),
        origin_one_copier(),
        first_emitter(),
        last_emitter(),
    ];
    for t1 in &fixtures {
        for t2 in &fixtures {
            let oracle = bounded_containment(t1, t2, &inputs_up_to(t1.input_alphabet(), 4), 6);
            assert_eq!(contained(t1, t2), oracle.is_none(), "{t1:?} vs {t2:?}");
        }
    }
    assert!(contained(&copy_then_reverse(), &copy_then_reverse()));
}

#[test]
fn empty_first_transducer_is_contained() {
    let mut t = TwoWayTransducer::new(vec![a("a")], vec![a("a")]);
    t.add_state("q", Class::R);
    assert!(contained(&t, &copier(&["a"])));
}

#[test]
fn random_pairs_agree_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let params = RandomParams::default();
    let mut disagreements = Vec::new();
    let mut counts = (0, 0);
    for i in 0..200 {
        let (s1, s2) = random_pair(&mut rng, &params);
        let (t1, t2) = (s1.to_transducer(), s2.to_transducer());
        let oracle = bounded_containment(&t1, &t2, &inputs_up_to(t1.input_alphabet(), 4), 6);
        let verdict = origin_containment(&t1, &t2, &Options::default()).unwrap();
        match (&verdict, &oracle) {
            (Containment::Contained, Some(p)) => disagreements.push(format!("#{i}: contained but oracle found {p}")),
            (Containment::NotContained(cex), _) => {
                assert_evidence(&t1, &t2, &cex.input, cex.evidence.as_ref());
                counts.1 += 1;
            }
            (Containment::Contained, None) => counts.0 += 1,
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
    assert!(counts.0 > 20 && counts.1 > 20, "{counts:?}");
}
