//! A canonical enumeration of formulas of the order language `{0, s, <, =}`.
//!
//! Index `n` is read as `8q + kind`; subformula and term indices are taken
//! from `q` through the Cantor unpairing, so they are strictly below `n` and
//! every index decodes. Not injective, but every formula over the variables
//! `x, y, z` occurs.

use crate::syntax::{Formula, Term};

const VARS: [&str; 3] = ["x", "y", "z"];

fn cantor_unpair(z: u64) -> (u64, u64) {
    let w = ((((8 * z as u128 + 1) as f64).sqrt() as u64).saturating_sub(1)) / 2;
    // Correct any floating-point slack.
    let tri = |w: u64| w as u128 * (w as u128 + 1) / 2;
    let mut w = w;
    while tri(w + 1) <= z as u128 {
        w += 1;
    }
    while tri(w) > z as u128 {
        w -= 1;
    }
    let y = (z as u128 - tri(w)) as u64;
    (w - y, y)
}

fn term(n: u64) -> Term {
    match n % 3 {
        0 => Term::num(n / 3),
        1 => Term::var(VARS[(n / 3 % 3) as usize]),
        _ => Term::succ(term(n / 3)),
    }
}

/// The `n`-th formula; free variables are left open.
pub fn open_formula_from_index(n: u64) -> Formula {
    let q = n / 8;
    let (a, b) = cantor_unpair(q);
    match n % 8 {
        0 => Formula::less(term(a), term(b)),
        1 => Formula::eq(term(a), term(b)),
        2 => Formula::not(open_formula_from_index(q)),
        3 => Formula::and(open_formula_from_index(a), open_formula_from_index(b)),
        4 => Formula::or(open_formula_from_index(a), open_formula_from_index(b)),
        5 => Formula::imp(open_formula_from_index(a), open_formula_from_index(b)),
        6 => Formula::iff(open_formula_from_index(a), open_formula_from_index(b)),
        _ => {
            let v = VARS[(a % 3) as usize];
            let body = open_formula_from_index(b);
            if a / 3 % 2 == 0 {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
    }
}

/// The universal closure of [`open_formula_from_index`], outermost binder
/// first in alphabetical order.
pub fn formula_from_index(n: u64) -> Formula {
    let f = open_formula_from_index(n);
    let free: Vec<String> = f.free_vars().into_iter().collect();
    free.iter().rev().fold(f, |acc, v| Formula::forall(v, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_is_a_bijection_on_a_prefix() {
        let mut seen = std::collections::HashSet::new();
        for z in 0..10_000 {
            let (a, b) = cantor_unpair(z);
            let back = (a + b) * (a + b + 1) / 2 + b;
            assert_eq!(back, z);
            assert!(seen.insert((a, b)));
        }
    }

    #[test]
    fn stream_yields_sentences_in_the_order_language() {
        for n in 0..5_000 {
            let f = formula_from_index(n);
            assert!(f.is_sentence(), "{n}: {f}");
            assert!(!f.contains_pi() && !f.contains_tau());
            assert!(f.is_canonical());
        }
        assert_eq!(formula_from_index(0).to_string(), "0 < 0");
        assert_eq!(formula_from_index(1).to_string(), "0 = 0");
    }

    #[test]
    fn stream_reaches_quantified_formulas() {
        let quantified = (0..2_000)
            .filter(|n| open_formula_from_index(*n).is_quantifier())
            .count();
        assert!(quantified > 100);
    }
}
