//! Builders for the fixed sentences the constructions use.

use super::{Formula, Term};
use crate::Nat;

fn v(name: &str) -> Term {
    Term::var(name)
}

fn lt(a: Term, b: Term) -> Formula {
    Formula::less(a, b)
}

/// `~(0 = 0)`, the canonical false sentence.
pub fn falsum() -> Formula {
    Formula::not(Formula::eq(Term::num(0u32), Term::num(0u32)))
}

/// `0 = 0`.
pub fn verum() -> Formula {
    Formula::eq(Term::num(0u32), Term::num(0u32))
}

/// `psi & ~psi`.
pub fn contradiction(psi: &Formula) -> Formula {
    Formula::and(psi.clone(), Formula::not(psi.clone()))
}

/// The canonical contradiction `0 = 0 & ~(0 = 0)` used by consistency checks.
pub fn canonical_contradiction() -> Formula {
    contradiction(&verum())
}

/// The order axioms A1..A6, in order.
pub fn order_axioms() -> [Formula; 6] {
    let (x, y, z) = (|| v("x"), || v("y"), || v("z"));
    [
        Formula::forall(
            "x",
            Formula::forall("y", Formula::imp(lt(x(), y()), Formula::not(lt(y(), x())))),
        ),
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::forall(
                    "z",
                    Formula::imp(Formula::and(lt(x(), y()), lt(y(), z())), lt(x(), z())),
                ),
            ),
        ),
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::or(Formula::or(lt(x(), y()), Formula::eq(x(), y())), lt(y(), x())),
            ),
        ),
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::iff(
                    lt(x(), y()),
                    Formula::or(
                        lt(Term::succ(x()), y()),
                        Formula::eq(Term::succ(x()), y()),
                    ),
                ),
            ),
        ),
        Formula::forall("x", Formula::not(lt(x(), Term::num(0u32)))),
        Formula::forall(
            "x",
            Formula::imp(
                lt(Term::num(0u32), x()),
                Formula::exists("v", Formula::eq(x(), Term::succ(v("v")))),
            ),
        ),
    ]
}

/// The A9 instance for `k`: `A x. (x < #k <-> (x = 0 | (x = #1 | ...)))`,
/// with the disjunction right-nested in increasing order and `~(0 = 0)` when
/// `k = 0`.
pub fn a9_instance(k: u64) -> Formula {
    let eq_i = |i: u64| Formula::eq(v("x"), Term::num(i));
    let disjunction = match k {
        0 => falsum(),
        _ => (0..k - 1)
            .rev()
            .fold(eq_i(k - 1), |acc, i| Formula::or(eq_i(i), acc)),
    };
    Formula::forall("x", Formula::iff(lt(v("x"), Term::num(k)), disjunction))
}

/// `tau(#e, #x, #t)`.
pub fn tau_atom(e: &Nat, x: &Nat, t: &Nat) -> Formula {
    Formula::tau(Term::Num(e.clone()), Term::Num(x.clone()), Term::Num(t.clone()))
}

/// `E x. (tau(#a, pi(#a,#b), x) & A y. (y < x -> ~tau(#b, pi(#a,#b), y)))`.
pub fn rosser_sentence(a: &Nat, b: &Nat) -> Formula {
    let na = || Term::Num(a.clone());
    let nb = || Term::Num(b.clone());
    let p = || Term::pi(na(), nb());
    Formula::exists(
        "x",
        Formula::and(
            Formula::tau(na(), p(), v("x")),
            Formula::forall(
                "y",
                Formula::imp(
                    lt(v("y"), v("x")),
                    Formula::not(Formula::tau(nb(), p(), v("y"))),
                ),
            ),
        ),
    )
}

/// `A x. (tau(#a, pi(#a,#b), x) -> E y. (y < x & tau(#b, pi(#a,#b), y)))`,
/// the rearranged negation of [`rosser_sentence`].
pub fn rosser_negation_form(a: &Nat, b: &Nat) -> Formula {
    let na = || Term::Num(a.clone());
    let nb = || Term::Num(b.clone());
    let p = || Term::pi(na(), nb());
    Formula::forall(
        "x",
        Formula::imp(
            Formula::tau(na(), p(), v("x")),
            Formula::exists(
                "y",
                Formula::and(lt(v("y"), v("x")), Formula::tau(nb(), p(), v("y"))),
            ),
        ),
    )
}

/// `E z. tau(#e, #x, z)`: the program coded `e` halts on input `x`.
pub fn halts_sentence(e: &Nat, x: &Nat) -> Formula {
    Formula::exists(
        "z",
        Formula::tau(Term::Num(e.clone()), Term::Num(x.clone()), v("z")),
    )
}

/// `~E z. tau(#m, #m, z)`.
pub fn kleene_sentence_for(m: &Nat) -> Formula {
    Formula::not(halts_sentence(m, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::nat;
    use crate::syntax::parse_sentence;

    #[test]
    fn rosser_text_for_one_two() {
        let f = rosser_sentence(&nat(1), &nat(2));
        assert_eq!(
            f.to_string(),
            "E x. (tau(#1, pi(#1,#2), x) & A y. (y < x -> ~tau(#2, pi(#1,#2), y)))"
        );
        assert!(f.is_sentence());
        assert_eq!(parse_sentence(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn rosser_zero_zero_uses_zero_numerals() {
        let f = rosser_sentence(&nat(0), &nat(0));
        assert_eq!(
            f.to_string(),
            "E x. (tau(0, pi(0,0), x) & A y. (y < x -> ~tau(0, pi(0,0), y)))"
        );
    }

    #[test]
    fn order_axiom_texts() {
        let texts: Vec<String> = order_axioms().iter().map(|f| f.to_string()).collect();
        assert_eq!(
            texts,
            [
                "A x. A y. (x < y -> ~(y < x))",
                "A x. A y. A z. ((x < y & y < z) -> x < z)",
                "A x. A y. ((x < y | x = y) | y < x)",
                "A x. A y. (x < y <-> (s(x) < y | s(x) = y))",
                "A x. ~(x < 0)",
                "A x. (0 < x -> E v. x = s(v))",
            ]
        );
    }

    #[test]
    fn a9_shapes() {
        assert_eq!(a9_instance(0).to_string(), "A x. (x < 0 <-> ~(0 = 0))");
        assert_eq!(a9_instance(1).to_string(), "A x. (x < #1 <-> x = 0)");
        assert_eq!(
            parse_sentence("A x. (x < #2 <-> (x = #0 | x = #1))").unwrap(),
            a9_instance(2)
        );
        assert_eq!(
            a9_instance(3).to_string(),
            "A x. (x < #3 <-> (x = 0 | (x = #1 | x = #2)))"
        );
    }
}
