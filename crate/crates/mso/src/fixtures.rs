//! Small formulas over `{a, b}` used by tests, resynchronizers and the CLI.

use crate::ast::MsoFormula;

fn f(free1: &[&str], free2: &[&str], body: &str) -> MsoFormula {
    MsoFormula::parse(free1, free2, body).expect("fixture formulas are well formed")
}

/// Even number of `a`s: some set contains exactly every other `a`,
/// starting with the first, and excludes the last `a`.
pub fn even_as() -> MsoFormula {
    f(
        &[],
        &[],
        "(exists2 X (and
            (forall1 x (implies (and (label a x) (not (exists1 w (and (lt w x) (label a w))))) (in x X)))
            (forall1 x (forall1 y (implies
                (and (label a x) (label a y) (lt x y) (not (exists1 w (and (lt x w) (lt w y) (label a w)))))
                (or (and (in x X) (not (in y X))) (and (not (in x X)) (in y X))))))
            (forall1 x (implies (and (label a x) (not (exists1 w (and (lt x w) (label a w))))) (not (in x X))))))",
    )
}

/// Origin displacement by one position in either direction.
pub fn plus_minus_one() -> MsoFormula {
    f(&["y", "z"], &[], "(or (succ z y) (succ y z))")
}

/// Parity of `b`s strictly before each position, as an output parameter.
pub fn b_parity() -> MsoFormula {
    f(
        &[],
        &["O"],
        "(forall1 x (and
            (implies (label b x) (forall1 x1 (implies (succ x x1) (or (and (in x O) (not (in x1 O))) (and (not (in x O)) (in x1 O))))))
            (implies (not (label b x)) (forall1 x1 (implies (succ x x1) (or (and (in x O) (in x1 O)) (and (not (in x O)) (not (in x1 O)))))))
            (implies (first x) (not (in x O)))))",
    )
}

/// Twenty formulas covering every construct, with descriptive names.
pub fn fixture_formulas() -> Vec<(&'static str, MsoFormula)> {
    vec![
        ("true", f(&[], &[], "true")),
        ("false", f(&[], &[], "false")),
        ("even-as", even_as()),
        ("some-a", f(&[], &[], "(exists1 x (label a x))")),
        ("all-b", f(&[], &[], "(forall1 x (label b x))")),
        ("x-first", f(&["x"], &[], "(first x)")),
        ("x-last", f(&["x"], &[], "(last x)")),
        ("a-at-x", f(&["x"], &[], "(label a x)")),
        ("x-before-y", f(&["x", "y"], &[], "(lt x y)")),
        ("plus-minus-one", plus_minus_one()),
        ("x-equals-y", f(&["x", "y"], &[], "(eq x y)")),
        ("first-to-last", f(&["y", "z"], &[], "(and (first y) (last z))")),
        ("x-in-X", f(&["x"], &["X"], "(in x X)")),
        ("X-holds-the-as", f(&[], &["X"], "(forall1 x (or (and (label a x) (in x X)) (and (label b x) (not (in x X)))))")),
        ("b-parity", b_parity()),
        ("ab-factor", f(&[], &[], "(exists1 x (exists1 y (and (succ x y) (label a x) (label b y))))")),
        ("b-between", f(&["x", "y"], &[], "(exists1 w (and (lt x w) (lt w y) (label b w)))")),
        ("X-closed-under-succ", f(&[], &["X"], "(forall1 x (forall1 y (implies (and (in x X) (succ x y)) (in y X))))")),
        ("nonempty-subset", f(&[], &[], "(exists2 X (and (exists1 x (in x X)) (forall1 x (implies (in x X) (label a x)))))")),
        ("x-in-every-superset", f(&["x"], &["Y"], "(forall2 X (implies (forall1 w (implies (in w Y) (in w X))) (in x X)))")),
    ]
}
