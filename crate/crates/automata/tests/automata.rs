use origin_automata::{convolve, word_from_chars, Emptiness, LazyNfa, Nfa, NfaDoc, Symbol};
use proptest::prelude::*;

fn ab() -> Vec<Symbol> {
    vec![Symbol::atom("a"), Symbol::atom("b")]
}

fn all_words(n_sym: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..n_sym {
                let mut w2: Vec<usize> = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn even_length() -> Nfa<Symbol> {
    let mut a = Nfa::new(ab()).unwrap();
    let e = a.add_state(true);
    let o = a.add_state(false);
    a.set_initial(e);
    for s in 0..2 {
        a.add_transition(e, s, o);
        a.add_transition(o, s, e);
    }
    a
}

/// Σ*a with two states.
fn ends_in_a() -> Nfa<Symbol> {
    let mut a = Nfa::new(ab()).unwrap();
    let p = a.add_state(false);
    let q = a.add_state(true);
    a.set_initial(p);
    a.add_transition(p, 0, p);
    a.add_transition(p, 1, p);
    a.add_transition(p, 0, q);
    a
}

#[test]
fn minimize_merges_equivalent_states() {
    let mut a = Nfa::new(ab()).unwrap();
    for _ in 0..4 {
        a.add_state(false);
    }
    a.set_accepting(0, true);
    a.set_accepting(2, true);
    a.set_initial(0);
    for s in 0..2 {
        for q in 0..4 {
            a.add_transition(q, s, (q + 1) % 4);
        }
    }
    assert_eq!(a.determinize().minimize().num_states(), 2);
    assert_eq!(even_length().determinize().minimize().num_states(), 2);
}

#[test]
fn product_with_universal_is_identity() {
    let u = Nfa::universal(ab()).unwrap();
    let e = even_length();
    let p = u.product(&e).unwrap();
    for w in all_words(2, 6) {
        assert_eq!(p.accepts_indices(&w), w.len() % 2 == 0);
    }
}

#[test]
fn product_with_empty_is_empty() {
    let empty = Nfa::<Symbol>::new(ab()).unwrap();
    assert!(empty.product(&even_length()).unwrap().is_empty());
}

#[test]
fn product_of_finite_sets() {
    let a = Nfa::from_words(ab(), &[word_from_chars("ab")]).unwrap();
    let b = Nfa::from_words(ab(), &[word_from_chars("ab"), word_from_chars("ba")]).unwrap();
    let p = a.product(&b).unwrap();
    for w in all_words(2, 3) {
        assert_eq!(p.accepts_indices(&w), w == vec![0, 1]);
    }
}

#[test]
fn product_rejects_alphabet_mismatch() {
    let a = Nfa::<Symbol>::new(ab()).unwrap();
    let b = Nfa::<Symbol>::new(vec![Symbol::atom("a")]).unwrap();
    assert!(a.product(&b).is_err());
}

#[test]
fn determinize_examples() {
    let d = ends_in_a().determinize();
    assert_eq!(d.num_states(), 2);
    for w in all_words(2, 5) {
        assert_eq!(d.accepts_indices(&w), w.last() == Some(&0));
    }
    let empty = Nfa::<Symbol>::new(ab()).unwrap().determinize();
    assert_eq!(empty.num_states(), 1);
    assert!(!empty.is_accepting(0));
    let again = even_length().determinize();
    assert_eq!(again.num_states(), 2);
}

#[test]
fn determinize_respects_budget() {
    let mut a = Nfa::new(ab()).unwrap();
    // (a|b)* a (a|b)^3 needs 16 subsets
    let states: Vec<usize> = (0..5).map(|i| a.add_state(i == 4)).collect();
    a.set_initial(states[0]);
    a.add_transition(0, 0, 0);
    a.add_transition(0, 1, 0);
    a.add_transition(0, 0, 1);
    for i in 1..4 {
        a.add_transition(i, 0, i + 1);
        a.add_transition(i, 1, i + 1);
    }
    assert!(a.determinize_with_budget(Some(4)).is_err());
    assert_eq!(a.determinize_with_budget(None).unwrap().num_states(), 16);
}

#[test]
fn complement_examples() {
    assert!(Nfa::universal(ab()).unwrap().complement().to_nfa().is_empty());
    let xy = vec![Symbol::atom("x"), Symbol::atom("y")];
    let c = Nfa::from_words(xy, &[word_from_chars("x")]).unwrap().complement();
    assert!(c.accepts(&word_from_chars("y")));
    assert!(c.accepts(&word_from_chars("")));
    assert!(c.accepts(&word_from_chars("xx")));
    assert!(!c.accepts(&word_from_chars("x")));
    let twice = ends_in_a().complement().complement();
    for w in all_words(2, 5) {
        assert_eq!(twice.accepts_indices(&w), ends_in_a().accepts_indices(&w));
    }
}

#[test]
fn emptiness_examples() {
    let mut a = Nfa::new(ab()).unwrap();
    let p = a.add_state(false);
    let q = a.add_state(true);
    a.set_initial(p);
    a.add_transition(q, 0, p);
    assert_eq!(a.emptiness(), Emptiness::Empty);

    let mut plus = Nfa::new(ab()).unwrap();
    let p = plus.add_state(false);
    let q = plus.add_state(true);
    plus.set_initial(p);
    plus.add_transition(p, 0, q);
    plus.add_transition(q, 0, q);
    assert_eq!(plus.emptiness(), Emptiness::Witness(word_from_chars("a")));

    let ba = Nfa::from_words(ab(), &[word_from_chars("ba")]).unwrap();
    let w = ba.emptiness().witness().unwrap();
    assert_eq!(w, word_from_chars("ba"));
    assert!(ba.accepts(&w));
}

#[test]
fn emptiness_breaks_ties_by_symbol_order() {
    let a = Nfa::from_words(ab(), &[word_from_chars("bb"), word_from_chars("ba"), word_from_chars("a")])
        .unwrap();
    assert_eq!(a.emptiness().witness().unwrap(), word_from_chars("a"));
    let b = Nfa::from_words(ab(), &[word_from_chars("bb"), word_from_chars("ba")]).unwrap();
    assert_eq!(b.emptiness().witness().unwrap(), word_from_chars("ba"));
    let lazy = origin_automata::lazy_emptiness(&b, None).unwrap();
    assert_eq!(lazy.witness().unwrap(), word_from_chars("ba"));
}

#[test]
fn ambiguity_examples() {
    assert!(ends_in_a().determinize().to_nfa().is_finitely_ambiguous());
    let mut two_loops = Nfa::new(ab()).unwrap();
    let p = two_loops.add_state(true);
    two_loops.set_initial(p);
    let q = two_loops.add_state(false);
    two_loops.add_transition(p, 0, p);
    two_loops.add_transition(p, 0, q);
    two_loops.add_transition(q, 0, p);
    assert!(!two_loops.is_finitely_ambiguous());
    assert_eq!(two_loops.ambiguity_degree(), None);

    let u = even_length().union(&ends_in_a().determinize().to_nfa()).unwrap();
    assert!(u.is_finitely_ambiguous());
    assert_eq!(u.ambiguity_degree(), Some(2));
    for w in all_words(2, 6) {
        assert!(u.count_runs(&w) <= 2);
    }
}

#[test]
fn polynomial_ambiguity_is_detected() {
    // p loops, p -a-> q, q loops: n runs on a^n, no state has two cycles
    let mut a = Nfa::new(ab()).unwrap();
    let p = a.add_state(true);
    let q = a.add_state(true);
    a.set_initial(p);
    a.add_transition(p, 0, p);
    a.add_transition(p, 0, q);
    a.add_transition(q, 0, q);
    assert!(!a.is_finitely_ambiguous());
    assert_eq!(a.count_runs(&[0; 5]), 6);
}

#[test]
fn monoid_examples() {
    let mut one = Nfa::new(ab()).unwrap();
    let q = one.add_state(true);
    one.set_initial(q);
    one.add_transition(q, 0, q);
    one.add_transition(q, 1, q);
    assert_eq!(one.determinize().transition_monoid().unwrap().size(), 1);

    // parity of a
    let mut par = Nfa::new(ab()).unwrap();
    let e = par.add_state(true);
    let o = par.add_state(false);
    par.set_initial(e);
    par.add_transition(e, 0, o);
    par.add_transition(o, 0, e);
    par.add_transition(e, 1, e);
    par.add_transition(o, 1, o);
    let d = par.determinize();
    let m = d.transition_monoid().unwrap();
    assert_eq!(m.size(), 2);
    let g = m.generator(0);
    assert_eq!(m.mul(g, g), m.identity());

    for w in all_words(2, 5) {
        let e = m.eval(&w);
        assert_eq!(Some(m.apply(e, d.initial())), d.run_indices(&w));
        assert_eq!(m.is_accepting(e), d.accepts_indices(&w));
    }
}

#[test]
fn monoid_requires_complete_dfa() {
    let ba = Nfa::from_words(ab(), &[word_from_chars("ba")]).unwrap().trim();
    let mut d = ba.determinize();
    assert!(d.transition_monoid().is_ok());
    d = d.to_nfa().trim().determinize();
    assert!(d.transition_monoid().is_ok());
}

#[test]
fn json_round_trip() {
    let text = r#"{"alphabet":["a",["b",true]],"states":["p","q"],"initial":["p"],
        "final":["q"],"transitions":[["p","a","q"],["q",["b",true],"q"]]}"#;
    let nfa = Nfa::from_json(text).unwrap();
    let bt = Symbol::tuple([Symbol::atom("b"), Symbol::Bool(true)]);
    assert!(nfa.accepts(&[Symbol::atom("a"), bt.clone(), bt]));
    let back = Nfa::from_json(&nfa.to_json()).unwrap();
    assert_eq!(NfaDoc::from_nfa(&back), NfaDoc::from_nfa(&nfa));
    assert!(Nfa::from_json(r#"{"alphabet":["a"],"states":["p"],"initial":["r"],"final":[],"transitions":[]}"#).is_err());
}

#[test]
fn convolution_feeds_product_alphabets() {
    let w = convolve(&[word_from_chars("ab"), vec![Symbol::Bool(false), Symbol::Bool(true)]]).unwrap();
    assert_eq!(w[1].component(1), Some(&Symbol::Bool(true)));
}

#[test]
fn words_up_to_lists_language() {
    let e = even_length();
    let words = e.words_up_to(3);
    assert_eq!(words.len(), 1 + 4);
    assert!(words.iter().all(|w| w.len() % 2 == 0));
}

#[test]
fn lazy_view_matches_explicit() {
    let a = ends_in_a();
    assert_eq!(LazyNfa::initial_states(&a), vec![0]);
    let m = origin_automata::materialize(&a, ab(), None).unwrap();
    for w in all_words(2, 5) {
        assert_eq!(m.accepts_indices(&w), a.accepts_indices(&w));
    }
}

fn arb_nfa() -> impl Strategy<Value = Nfa<Symbol>> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec((0..n, 0usize..2, 0..n), 0..10),
        )
            .prop_map(move |(init, fin, trans)| {
                let mut a = Nfa::new(ab()).unwrap();
                for &f in &fin {
                    a.add_state(f);
                }
                for (q, &i) in init.iter().enumerate() {
                    if i {
                        a.set_initial(q);
                    }
                }
                for (p, s, q) in trans {
                    a.add_transition(p, s, q);
                }
                a
            })
    })
}

proptest! {
    #[test]
    fn product_is_intersection(a in arb_nfa(), b in arb_nfa()) {
        let p = a.product(&b).unwrap();
        for w in all_words(2, 5) {
            prop_assert_eq!(p.accepts_indices(&w), a.accepts_indices(&w) && b.accepts_indices(&w));
        }
    }

    #[test]
    fn determinize_and_complement_agree(a in arb_nfa()) {
        let d = a.determinize();
        let c = a.complement();
        for w in all_words(2, 5) {
            prop_assert_eq!(d.accepts_indices(&w), a.accepts_indices(&w));
            prop_assert_eq!(c.accepts_indices(&w), !a.accepts_indices(&w));
        }
    }

    #[test]
    fn minimize_keeps_the_language(a in arb_nfa()) {
        let d = a.determinize();
        let m = d.minimize();
        prop_assert!(m.num_states() <= d.completed().num_states());
        prop_assert_eq!(m.minimize().num_states(), m.num_states());
        for w in all_words(2, 5) {
            prop_assert_eq!(m.accepts_indices(&w), a.accepts_indices(&w));
        }
    }

    #[test]
    fn emptiness_is_sound(a in arb_nfa()) {
        match a.emptiness() {
            Emptiness::Witness(w) => prop_assert!(a.accepts(&w)),
            Emptiness::Empty => {
                for w in all_words(2, a.num_states()) {
                    prop_assert!(!a.accepts_indices(&w));
                }
            }
        }
    }

    #[test]
    fn trim_preserves_language(a in arb_nfa()) {
        let t = a.trim();
        for w in all_words(2, 5) {
            prop_assert_eq!(t.accepts_indices(&w), a.accepts_indices(&w));
        }
    }

    #[test]
    fn monoid_is_a_morphism(a in arb_nfa()) {
        let d = a.determinize();
        let m = d.transition_monoid().unwrap();
        let n = d.num_states();
        prop_assert!((m.size() as f64) <= (n as f64).powi(n as i32));
        let words = all_words(2, 3);
        for u in &words {
            for v in &words {
                let uv: Vec<usize> = u.iter().chain(v).copied().collect();
                prop_assert_eq!(m.eval(&uv), m.mul(m.eval(u), m.eval(v)));
            }
        }
        let id = m.identity();
        for x in 0..m.size() {
            prop_assert_eq!(m.mul(id, x), x);
            prop_assert_eq!(m.mul(x, id), x);
        }
    }

    #[test]
    fn ambiguity_degree_bounds_run_counts(a in arb_nfa()) {
        if let Some(k) = a.ambiguity_degree() {
            for w in all_words(2, 6) {
                prop_assert!(a.count_runs(&w) <= k);
            }
        }
    }

    #[test]
    fn infinite_ambiguity_shows_growth(a in arb_nfa()) {
        // with at most 4 states, unbounded ambiguity exceeds 4 runs on some word of length <= 12
        if !a.is_finitely_ambiguous() {
            let t = a.trim();
            let max = all_words(2, 12).iter().map(|w| t.count_runs(w)).max().unwrap_or(0);
            prop_assert!(max > 1, "max runs {}", max);
        }
    }
}
