use origin_automata::{Nfa, Symbol, Word};
use origin_mso::fixtures::{b_parity, even_as, fixture_formulas, plus_minus_one};
use origin_mso::{all_assignments, compile, encode, evaluate, flagged_alphabet, mark_and_project, Assignment, Formula, MsoError, MsoFormula};
use origin_transducer::inputs_up_to;
use proptest::prelude::*;

fn sigma() -> Vec<Symbol> {
    vec![Symbol::atom("a"), Symbol::atom("b")]
}

fn word(s: &str) -> Word {
    s.chars().map(|c| Symbol::atom(c.to_string())).collect()
}

fn agree(f: &MsoFormula, max_len: usize) {
    let dfa = compile(f, &sigma(), Some(100_000)).unwrap();
    for u in inputs_up_to(&sigma(), max_len) {
        for asg in all_assignments(f, u.len()) {
            let expected = evaluate(f, &u, &asg).unwrap();
            assert_eq!(dfa.accepts(&encode(f, &u, &asg)), expected, "{} on {u:?} with {asg:?}", f.body);
        }
    }
}

#[test]
fn fixture_formulas_compile_to_their_semantics() {
    let fixtures = fixture_formulas();
    assert_eq!(fixtures.len(), 20);
    for (_, f) in &fixtures {
        agree(f, 5);
    }
}

#[test]
fn even_as_is_two_states() {
    let dfa = compile(&even_as(), &sigma(), None).unwrap();
    assert_eq!(dfa.num_states(), 2);
}

#[test]
fn first_order_tracks_carry_exactly_one_flag() {
    let f = MsoFormula::parse(&["x"], &[], "true").unwrap();
    let dfa = compile(&f, &sigma(), None).unwrap();
    let alphabet = flagged_alphabet(&sigma(), 1);
    let (a0, a1) = (alphabet[0].clone(), alphabet[1].clone());
    assert!(dfa.accepts(&[a0.clone(), a1.clone(), a0.clone()]));
    assert!(!dfa.accepts(&[a0.clone(), a0.clone()]));
    assert!(!dfa.accepts(&[a1.clone(), a1]));
    assert!(!dfa.accepts(&[]));
}

#[test]
fn some_a_accepts_words_containing_a() {
    let f = MsoFormula::closed("(exists1 x (label a x))").unwrap();
    let dfa = compile(&f, &sigma(), None).unwrap();
    for u in inputs_up_to(&sigma(), 5) {
        let enc = encode(&f, &u, &Assignment::default());
        assert_eq!(dfa.accepts(&enc), u.contains(&Symbol::atom("a")));
    }
}

#[test]
fn plus_minus_one_evaluation() {
    let f = plus_minus_one();
    let u = word("abab");
    let at = |y, z| Assignment::default().with_first("y", y).with_first("z", z);
    assert!(evaluate(&f, &u, &at(2, 3)).unwrap());
    assert!(evaluate(&f, &u, &at(3, 2)).unwrap());
    assert!(!evaluate(&f, &u, &at(2, 2)).unwrap());
    assert!(!evaluate(&f, &u, &at(1, 3)).unwrap());
    assert!(matches!(evaluate(&f, &u, &at(1, 7)), Err(MsoError::OutOfRange { .. })));
}

#[test]
fn b_parity_accepts_the_figure_annotation() {
    let f = b_parity();
    let v = word("abaaab");
    let good = Assignment::default().with_second("O", [3, 4, 5, 6]);
    assert!(evaluate(&f, &v, &good).unwrap());
    let bad = Assignment::default().with_second("O", [1, 3, 4, 5, 6]);
    assert!(!evaluate(&f, &v, &bad).unwrap());
    let dfa = compile(&f, &sigma(), None).unwrap();
    assert!(dfa.accepts(&encode(&f, &v, &good)));
}

#[test]
fn ill_formed_formulas_are_rejected() {
    assert!(matches!(MsoFormula::closed("(label a x)"), Err(MsoError::Unbound(_))));
    assert!(matches!(MsoFormula::closed("(exists1 x (in x x))"), Err(MsoError::KindMismatch(_))));
    assert!(matches!(MsoFormula::closed("(lt x)"), Err(MsoError::Arity { .. })));
    assert!(matches!(MsoFormula::closed("(frob)"), Err(MsoError::Syntax(_))));
    assert!(matches!(MsoFormula::closed("(not true"), Err(MsoError::Syntax(_))));
    assert!(matches!(MsoFormula::parse(&["x"], &["x"], "true"), Err(MsoError::DuplicateVariable(_))));
}

#[test]
fn formula_documents_round_trip() {
    for (_, f) in fixture_formulas() {
        let back = MsoFormula::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }
    let doc = r#"{"free1":["y","z"],"free2":["I1"],"body":"(and (in y I1) (eq y z))"}"#;
    let f = MsoFormula::from_json(doc).unwrap();
    assert_eq!(f.layout(), vec!["y", "z", "I1"]);
}

#[test]
fn budget_overflow_is_reported() {
    let err = compile(&even_as(), &sigma(), Some(1)).unwrap_err();
    assert!(matches!(err, MsoError::Automata(_)));
}

fn finitely_ambiguous(body: &str, sigma: &[Symbol]) -> bool {
    let f = MsoFormula::parse(&["y"], &[], body).unwrap();
    let dfa = compile(&f, sigma, None).unwrap();
    mark_and_project(&dfa.to_nfa(), 0).unwrap().is_finitely_ambiguous()
}

#[test]
fn mark_and_project_counts_marked_positions() {
    assert!(!finitely_ambiguous("true", &sigma()));
    assert!(finitely_ambiguous("(first y)", &sigma()));
    assert!(!finitely_ambiguous("(label a y)", &[Symbol::atom("a")]));

    let f = MsoFormula::parse(&["y"], &[], "(first y)").unwrap();
    let marked: Nfa<Symbol> = mark_and_project(&compile(&f, &sigma(), None).unwrap().to_nfa(), 0).unwrap();
    for u in inputs_up_to(&sigma(), 4) {
        let enc: Word = u.iter().map(|a| Symbol::tuple([a.clone()])).collect();
        let runs = marked.encode(&enc).map_or(0, |w| marked.count_runs(&w));
        assert_eq!(runs, u64::from(!u.is_empty()));
    }
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::Label(Symbol::atom("a"), "x".into())),
        Just(Formula::Label(Symbol::atom("b"), "y".into())),
        Just(Formula::Lt("x".into(), "y".into())),
        Just(Formula::Succ("y".into(), "x".into())),
        Just(Formula::In("x".into(), "X".into())),
        Just(Formula::First("y".into())),
        Just(Formula::Last("x".into())),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            inner.clone().prop_map(Formula::not),
            inner.prop_map(|a| Formula::Exists1("y".into(), Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_formulas_compile_to_their_semantics(body in arb_formula()) {
        let f = MsoFormula::new(&["x", "y"], &["X"], body).unwrap();
        let dfa = compile(&f, &sigma(), None).unwrap();
        for u in inputs_up_to(&sigma(), 3) {
            for asg in all_assignments(&f, u.len()) {
                prop_assert_eq!(dfa.accepts(&encode(&f, &u, &asg)), evaluate(&f, &u, &asg).unwrap());
            }
        }
    }

    #[test]
    fn de_morgan_and_double_negation_keep_the_language(a in arb_formula(), b in arb_formula()) {
        let lhs = Formula::not(Formula::and(a.clone(), b.clone()));
        let rhs = Formula::or(Formula::not(a.clone()), Formula::not(b));
        let dn = Formula::not(Formula::not(a.clone()));
        let compiled = |body: Formula| compile(&MsoFormula::new(&["x", "y"], &["X"], body).unwrap(), &sigma(), None).unwrap();
        let (l, r, d, plain) = (compiled(lhs), compiled(rhs), compiled(dn), compiled(a));
        let f = MsoFormula::new(&["x", "y"], &["X"], Formula::True).unwrap();
        for u in inputs_up_to(&sigma(), 3) {
            for asg in all_assignments(&f, u.len()) {
                let enc = encode(&f, &u, &asg);
                prop_assert_eq!(l.accepts(&enc), r.accepts(&enc));
                prop_assert_eq!(d.accepts(&enc), plain.accepts(&enc));
            }
        }
    }
}
