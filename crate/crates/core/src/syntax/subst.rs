use std::collections::BTreeSet;

use super::{Formula, Term};

fn subst_term(t: &Term, v: &str, by: &Term) -> Term {
    match t {
        Term::Num(_) => t.clone(),
        Term::Var(w) if w == v => by.clone(),
        Term::Var(_) => t.clone(),
        Term::Succ(inner) => Term::succ(subst_term(inner, v, by)),
        Term::Pi(a, b) => Term::pi(subst_term(a, v, by), subst_term(b, v, by)),
    }
}

/// `base` followed by the smallest positive integer giving a name not in `avoid`.
pub(crate) fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    (1u64..)
        .map(|k| format!("{base}{k}"))
        .find(|name| !avoid.contains(name))
        .expect("unbounded supply of names")
}

/// Capture-avoiding substitution of `by` for the free occurrences of `v`.
///
/// A binder that would capture a variable of `by` is renamed to its name with
/// the smallest unused numeric suffix.
pub fn substitute(f: &Formula, v: &str, by: &Term) -> Formula {
    let by_vars = by.vars();
    go(f, v, by, &by_vars)
}

fn go(f: &Formula, v: &str, by: &Term, by_vars: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Less(a, b) => Formula::Less(subst_term(a, v, by), subst_term(b, v, by)),
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, v, by), subst_term(b, v, by)),
        Formula::Tau(a, b, c) => Formula::Tau(
            subst_term(a, v, by),
            subst_term(b, v, by),
            subst_term(c, v, by),
        ),
        Formula::Not(g) => Formula::not(go(g, v, by, by_vars)),
        Formula::And(a, b) => Formula::and(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Or(a, b) => Formula::or(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Imp(a, b) => Formula::imp(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Iff(a, b) => Formula::iff(go(a, v, by, by_vars), go(b, v, by, by_vars)),
        Formula::Forall(w, body) | Formula::Exists(w, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let rebuild = |w: &str, body: Formula| {
                if universal {
                    Formula::forall(w, body)
                } else {
                    Formula::exists(w, body)
                }
            };
            if w == v || !body.has_free(v) {
                return f.clone();
            }
            if by_vars.contains(w) {
                let mut avoid = body.free_vars();
                avoid.extend(by_vars.iter().cloned());
                avoid.insert(v.to_string());
                let renamed = fresh_name(w, &avoid);
                let body = go(body, w, &Term::Var(renamed.clone()), &BTreeSet::from([renamed.clone()]));
                rebuild(&renamed, go(&body, v, by, by_vars))
            } else {
                rebuild(w, go(body, v, by, by_vars))
            }
        }
    }
}

/// Substitution without renaming; only meaningful when `by` is free for `v`.
pub(crate) fn substitute_naive(f: &Formula, v: &str, by: &Term) -> Formula {
    match f {
        Formula::Less(a, b) => Formula::Less(subst_term(a, v, by), subst_term(b, v, by)),
        Formula::Eq(a, b) => Formula::Eq(subst_term(a, v, by), subst_term(b, v, by)),
        Formula::Tau(a, b, c) => Formula::Tau(
            subst_term(a, v, by),
            subst_term(b, v, by),
            subst_term(c, v, by),
        ),
        Formula::Not(g) => Formula::not(substitute_naive(g, v, by)),
        Formula::And(a, b) => Formula::and(substitute_naive(a, v, by), substitute_naive(b, v, by)),
        Formula::Or(a, b) => Formula::or(substitute_naive(a, v, by), substitute_naive(b, v, by)),
        Formula::Imp(a, b) => Formula::imp(substitute_naive(a, v, by), substitute_naive(b, v, by)),
        Formula::Iff(a, b) => Formula::iff(substitute_naive(a, v, by), substitute_naive(b, v, by)),
        Formula::Forall(w, _) | Formula::Exists(w, _) if w == v => f.clone(),
        Formula::Forall(w, body) => Formula::forall(w, substitute_naive(body, v, by)),
        Formula::Exists(w, body) => Formula::exists(w, substitute_naive(body, v, by)),
    }
}

/// Whether `by` can replace the free occurrences of `v` in `f` without any
/// variable of `by` being captured.
pub(crate) fn is_free_for(f: &Formula, v: &str, by: &Term) -> bool {
    fn walk(f: &Formula, v: &str, by_vars: &BTreeSet<String>, binders: &mut Vec<String>) -> bool {
        match f {
            Formula::Less(..) | Formula::Eq(..) | Formula::Tau(..) => {
                !f.has_free(v) || binders.iter().all(|b| !by_vars.contains(b))
            }
            Formula::Not(g) => walk(g, v, by_vars, binders),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                walk(a, v, by_vars, binders) && walk(b, v, by_vars, binders)
            }
            Formula::Forall(w, body) | Formula::Exists(w, body) => {
                if w == v {
                    return true;
                }
                binders.push(w.clone());
                let ok = walk(body, v, by_vars, binders);
                binders.pop();
                ok
            }
        }
    }
    walk(f, v, &by.vars(), &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn replaces_free_occurrence() {
        let f = parse_formula("x < #1").unwrap();
        assert_eq!(
            substitute(&f, "x", &Term::num(0u32)),
            parse_formula("0 < #1").unwrap()
        );
    }

    #[test]
    fn bound_occurrence_untouched() {
        let f = parse_formula("A x. x = x").unwrap();
        assert_eq!(substitute(&f, "x", &Term::num(5u32)), f);
    }

    #[test]
    fn renames_to_avoid_capture() {
        let f = parse_formula("E y. x < y").unwrap();
        let g = substitute(&f, "x", &Term::var("y"));
        assert_eq!(g, parse_formula("E y1. y < y1").unwrap());
        let f = parse_formula("E y. x < y & y1 = y1").unwrap();
        let g = substitute(&Formula::exists("y", Formula::and(
            parse_formula("x < y").unwrap(),
            parse_formula("y1 = y1").unwrap(),
        )), "x", &Term::var("y"));
        assert_eq!(g, parse_formula("E y2. (y < y2 & y1 = y1)").unwrap());
        assert!(f.has_free("x"));
    }

    #[test]
    fn successor_substitution_folds() {
        let f = parse_formula("s(x) = #3").unwrap();
        let g = substitute(&f, "x", &Term::num(2u32));
        assert_eq!(g, parse_formula("#3 = #3").unwrap());
        assert!(g.is_canonical());
    }

    #[test]
    fn free_for_detects_capture() {
        let f = parse_formula("E y. x < y").unwrap();
        assert!(!is_free_for(&f, "x", &Term::var("y")));
        assert!(is_free_for(&f, "x", &Term::var("z")));
        assert!(is_free_for(&f, "y", &Term::var("x")));
    }
}
