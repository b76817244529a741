//! Quantifier elimination for the theory of `<N, 0, s, <>`.
//!
//! Formulas are kept negation-free over atoms `l < r` and `l = r` whose sides
//! are `var + k` or a constant `k`. Negated atoms are rewritten with
//! `~(a < b) <-> b < s(a)` and `~(a = b) <-> (a < b | b < a)`.
//!
//! `E v. q` is eliminated by test points: as `v` ranges over `N`, the truth
//! of `q` only changes where some atom changes, so it suffices to try `0`
//! and every point at which an atom starts a new constant stretch. A point
//! `s + d` with negative `d` is substituted by shifting the other side of
//! each atom by `-d`, guarded by `~(s < #(-d))`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, Sign};
use thiserror::Error;

use crate::syntax::{Formula, Term};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QeError {
    #[error("`pi` terms are outside the order language")]
    ContainsPi,
    #[error("not a sentence: free variables {0:?}")]
    FreeVariables(BTreeSet<String>),
}

/// `var + off`, or the constant `off` when `var` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Lin {
    var: Option<String>,
    off: Nat,
}

impl Lin {
    fn constant(off: Nat) -> Lin {
        Lin { var: None, off }
    }

    fn var(v: &str, off: Nat) -> Lin {
        Lin {
            var: Some(v.to_string()),
            off,
        }
    }

    fn plus(&self, k: &Nat) -> Lin {
        Lin {
            var: self.var.clone(),
            off: &self.off + k,
        }
    }

    fn is(&self, v: &str) -> bool {
        self.var.as_deref() == Some(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Qf {
    True,
    False,
    Lt(Lin, Lin),
    Eq(Lin, Lin),
    And(Vec<Qf>),
    Or(Vec<Qf>),
}

fn truth(b: bool) -> Qf {
    if b {
        Qf::True
    } else {
        Qf::False
    }
}

fn lt(a: Lin, b: Lin) -> Qf {
    match (&a.var, &b.var) {
        (None, None) => truth(a.off < b.off),
        (Some(x), Some(y)) if x == y => truth(a.off < b.off),
        (Some(_), Some(_)) => {
            let m = a.off.clone().min(b.off.clone());
            Qf::Lt(
                Lin { var: a.var, off: a.off - &m },
                Lin { var: b.var, off: b.off - &m },
            )
        }
        (Some(u), None) => {
            if b.off <= a.off {
                Qf::False
            } else {
                Qf::Lt(Lin::var(u, Nat::default()), Lin::constant(b.off - a.off))
            }
        }
        (None, Some(u)) => {
            if a.off < b.off {
                Qf::True
            } else {
                Qf::Lt(Lin::constant(a.off - b.off), Lin::var(u, Nat::default()))
            }
        }
    }
}

fn eq(a: Lin, b: Lin) -> Qf {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (&a.var, &b.var) {
        (None, None) => truth(a.off == b.off),
        (Some(x), Some(y)) if x == y => truth(a.off == b.off),
        (Some(_), Some(_)) => {
            let m = a.off.clone().min(b.off.clone());
            Qf::Eq(
                Lin { var: a.var, off: a.off - &m },
                Lin { var: b.var, off: b.off - &m },
            )
        }
        // Constants sort first.
        (None, Some(u)) => {
            if a.off < b.off {
                Qf::False
            } else {
                Qf::Eq(Lin::constant(a.off - b.off), Lin::var(u, Nat::default()))
            }
        }
        (Some(_), None) => unreachable!("constants sort before variables"),
    }
}

fn and(items: Vec<Qf>) -> Qf {
    let mut out = BTreeSet::new();
    for q in items {
        match q {
            Qf::True => {}
            Qf::False => return Qf::False,
            Qf::And(inner) => out.extend(inner),
            other => {
                out.insert(other);
            }
        }
    }
    match out.len() {
        0 => Qf::True,
        1 => out.into_iter().next().expect("one item"),
        _ => Qf::And(out.into_iter().collect()),
    }
}

fn or(items: Vec<Qf>) -> Qf {
    let mut out = BTreeSet::new();
    for q in items {
        match q {
            Qf::False => {}
            Qf::True => return Qf::True,
            Qf::Or(inner) => out.extend(inner),
            other => {
                out.insert(other);
            }
        }
    }
    match out.len() {
        0 => Qf::False,
        1 => out.into_iter().next().expect("one item"),
        _ => Qf::Or(out.into_iter().collect()),
    }
}

fn one() -> Nat {
    Nat::from(1u32)
}

fn not(q: Qf) -> Qf {
    match q {
        Qf::True => Qf::False,
        Qf::False => Qf::True,
        Qf::Lt(a, b) => lt(b, a.plus(&one())),
        Qf::Eq(a, b) => or(vec![lt(a.clone(), b.clone()), lt(b, a)]),
        Qf::And(xs) => or(xs.into_iter().map(not).collect()),
        Qf::Or(xs) => and(xs.into_iter().map(not).collect()),
    }
}

fn mentions(q: &Qf, v: &str) -> bool {
    match q {
        Qf::True | Qf::False => false,
        Qf::Lt(a, b) | Qf::Eq(a, b) => a.is(v) || b.is(v),
        Qf::And(xs) | Qf::Or(xs) => xs.iter().any(|x| mentions(x, v)),
    }
}

/// A test point for the eliminated variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Point {
    Const(Nat),
    /// `var + d`, `d` possibly negative.
    Shift(String, BigInt),
}

fn offset_point(other: &Lin, a: &Nat, extra: u32) -> Option<Point> {
    let d = BigInt::from(other.off.clone()) - BigInt::from(a.clone()) + BigInt::from(extra);
    match &other.var {
        None => d.to_biguint().map(Point::Const),
        Some(s) => Some(Point::Shift(s.clone(), d)),
    }
}

fn collect_points(q: &Qf, v: &str, out: &mut BTreeSet<Point>) {
    match q {
        Qf::True | Qf::False => {}
        Qf::And(xs) | Qf::Or(xs) => xs.iter().for_each(|x| collect_points(x, v, out)),
        Qf::Lt(l, r) => {
            // `v + a < r` flips to false at `r - a`; `r < v + a` turns true at `r - a + 1`.
            let p = if l.is(v) {
                offset_point(r, &l.off, 0)
            } else if r.is(v) {
                offset_point(l, &r.off, 1)
            } else {
                None
            };
            out.extend(p);
        }
        Qf::Eq(l, r) => {
            let (vside, other) = if l.is(v) {
                (l, r)
            } else if r.is(v) {
                (r, l)
            } else {
                return;
            };
            out.extend(offset_point(other, &vside.off, 0));
            out.extend(offset_point(other, &vside.off, 1));
        }
    }
}

fn subst_atom(l: &Lin, r: &Lin, v: &str, p: &Point) -> (Lin, Lin) {
    let put = |side: &Lin| -> Lin {
        match p {
            Point::Const(n) => Lin::constant(n + &side.off),
            Point::Shift(s, d) => {
                let up = d.to_biguint().unwrap_or_default();
                Lin::var(s, &side.off + up)
            }
        }
    };
    // For a negative shift, `v := s - k` is realized by adding `k` to the
    // side not containing `v`.
    let lift = match p {
        Point::Shift(_, d) if d.sign() == Sign::Minus => Some((-d).to_biguint().expect("positive")),
        _ => None,
    };
    let other = |side: &Lin| match &lift {
        Some(k) => side.plus(k),
        None => side.clone(),
    };
    if l.is(v) {
        (put(l), other(r))
    } else if r.is(v) {
        (other(l), put(r))
    } else {
        (l.clone(), r.clone())
    }
}

fn subst(q: &Qf, v: &str, p: &Point) -> Qf {
    match q {
        Qf::True | Qf::False => q.clone(),
        Qf::Lt(l, r) => {
            let (a, b) = subst_atom(l, r, v, p);
            lt(a, b)
        }
        Qf::Eq(l, r) => {
            let (a, b) = subst_atom(l, r, v, p);
            eq(a, b)
        }
        Qf::And(xs) => and(xs.iter().map(|x| subst(x, v, p)).collect()),
        Qf::Or(xs) => or(xs.iter().map(|x| subst(x, v, p)).collect()),
    }
}

fn guard(p: &Point) -> Qf {
    match p {
        Point::Shift(s, d) if d.sign() == Sign::Minus => {
            let k = (-d).to_biguint().expect("positive");
            not(lt(Lin::var(s, Nat::default()), Lin::constant(k)))
        }
        _ => Qf::True,
    }
}

fn instantiate(q: &Qf, v: &str, p: &Point) -> Qf {
    and(vec![guard(p), subst(q, v, p)])
}

fn exists(v: &str, q: Qf) -> Qf {
    if !mentions(&q, v) {
        return q;
    }
    match q {
        Qf::Or(xs) => or(xs.into_iter().map(|x| exists(v, x)).collect()),
        Qf::And(xs) => {
            let (with, without): (Vec<Qf>, Vec<Qf>) = xs.into_iter().partition(|x| mentions(x, v));
            // An equation on `v` pins it to a single point.
            let pinned = with.iter().find_map(|x| match x {
                Qf::Eq(l, r) if l.is(v) => offset_point(r, &l.off, 0),
                Qf::Eq(l, r) if r.is(v) => offset_point(l, &r.off, 0),
                _ => None,
            });
            let body = and(with);
            let eliminated = match pinned {
                Some(p) => instantiate(&body, v, &p),
                None => eliminate(v, &body),
            };
            and(without.into_iter().chain([eliminated]).collect())
        }
        other => eliminate(v, &other),
    }
}

fn eliminate(v: &str, q: &Qf) -> Qf {
    let mut points = BTreeSet::from([Point::Const(Nat::default())]);
    collect_points(q, v, &mut points);
    or(points.iter().map(|p| instantiate(q, v, p)).collect())
}

fn lin(t: &Term) -> Result<Lin, QeError> {
    match t {
        Term::Num(n) => Ok(Lin::constant(n.clone())),
        Term::Var(v) => Ok(Lin::var(v, Nat::default())),
        Term::Succ(inner) => Ok(lin(inner)?.plus(&one())),
        Term::Pi(..) => Err(QeError::ContainsPi),
    }
}

fn to_qf(f: &Formula) -> Result<Qf, QeError> {
    Ok(match f {
        Formula::Less(a, b) => lt(lin(a)?, lin(b)?),
        Formula::Eq(a, b) => eq(lin(a)?, lin(b)?),
        Formula::Tau(a, b, c) => {
            // Totalized: every tau atom holds, but pi is still rejected.
            for t in [a, b, c] {
                lin(t)?;
            }
            Qf::True
        }
        Formula::Not(g) => not(to_qf(g)?),
        Formula::And(a, b) => and(vec![to_qf(a)?, to_qf(b)?]),
        Formula::Or(a, b) => or(vec![to_qf(a)?, to_qf(b)?]),
        Formula::Imp(a, b) => or(vec![not(to_qf(a)?), to_qf(b)?]),
        Formula::Iff(a, b) => {
            let (a, b) = (to_qf(a)?, to_qf(b)?);
            or(vec![
                and(vec![a.clone(), b.clone()]),
                and(vec![not(a), not(b)]),
            ])
        }
        Formula::Exists(v, g) => exists(v, to_qf(g)?),
        Formula::Forall(v, g) => not(exists(v, not(to_qf(g)?))),
    })
}

/// Truth in `<N, 0, s, <>` of a sentence whose `tau` atoms are read as true.
///
/// This is derivability from A1–A6 plus `A x. A y. A z. tau(x, y, z)`.
pub fn decide_order_theory(s: &Formula) -> Result<bool, QeError> {
    if s.contains_pi() {
        return Err(QeError::ContainsPi);
    }
    let free = s.free_vars();
    if !free.is_empty() {
        return Err(QeError::FreeVariables(free));
    }
    match to_qf(s)? {
        Qf::True => Ok(true),
        Qf::False => Ok(false),
        other => unreachable!("closed formula reduced to {other:?}"),
    }
}

/// [`decide_order_theory`] with a cache and Boolean splitting: the truth of
/// a Boolean combination of sentences is computed from its parts, so long
/// conjunctions of previously decided sentences stay cheap.
#[derive(Debug, Default)]
pub struct OrderDecider {
    cache: HashMap<Formula, bool>,
}

impl OrderDecider {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decide(&mut self, s: &Formula) -> Result<bool, QeError> {
        if let Some(b) = self.cache.get(s) {
            return Ok(*b);
        }
        let split = |f: &Formula| f.is_sentence();
        let b = match s {
            Formula::Not(g) if split(g) => !self.decide(g)?,
            Formula::And(a, b) if split(a) && split(b) => self.decide(a)? && self.decide(b)?,
            Formula::Or(a, b) if split(a) && split(b) => self.decide(a)? || self.decide(b)?,
            Formula::Imp(a, b) if split(a) && split(b) => !self.decide(a)? || self.decide(b)?,
            Formula::Iff(a, b) if split(a) && split(b) => self.decide(a)? == self.decide(b)?,
            _ => decide_order_theory(s)?,
        };
        self.cache.insert(s.clone(), b);
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{order_axioms, parse_sentence};

    fn d(s: &str) -> bool {
        decide_order_theory(&parse_sentence(s).unwrap()).unwrap()
    }

    #[test]
    fn order_axioms_hold() {
        for a in order_axioms() {
            assert!(decide_order_theory(&a).unwrap(), "{a}");
        }
    }

    #[test]
    fn small_examples() {
        assert!(d("A x. A y. ((x < y | x = y) | y < x)"));
        assert!(!d("A x. A y. x = y"));
        assert!(d("E x. 0 < x"));
        assert!(d("A x. E y. x < y"));
        assert!(!d("E x. A y. y < x"));
        assert!(d("A x. (0 < x -> E y. s(y) = x)"));
        assert!(!d("A x. E y. s(y) = x"));
        assert!(d("A x. A y. (x < y -> (s(x) < y | s(x) = y))"));
        assert!(!d("E x. E y. (x < y & y < s(x))"));
        assert!(d("E x. (#3 < x & x < #5)"));
        assert!(!d("E x. (#3 < x & x < #4)"));
        assert!(d("A x. (x < #3 <-> (x = 0 | (x = #1 | x = #2)))"));
        assert!(!d("A x. (x < #3 <-> (x = 0 | x = #1))"));
        assert!(d("E x. E y. E z. (x < y & (y < z & ~(s(x) = y)))"));
        assert!(d("tau(0, 0, 0)"));
        assert!(d("A x. tau(x, x, x)"));
    }

    #[test]
    fn rejects_pi_and_open_formulas() {
        let pi = parse_sentence("pi(0,0) = 0").unwrap();
        assert_eq!(decide_order_theory(&pi), Err(QeError::ContainsPi));
        let open = crate::syntax::parse_formula("x = 0").unwrap();
        assert!(matches!(decide_order_theory(&open), Err(QeError::FreeVariables(_))));
    }

    #[test]
    fn cached_decider_agrees() {
        let mut dec = OrderDecider::new();
        for s in ["A x. E y. x < y", "(A x. E y. x < y) & ~(E x. A y. y < x)", "0 = 0 -> #1 = 0"] {
            let f = parse_sentence(s).unwrap();
            assert_eq!(dec.decide(&f).unwrap(), decide_order_theory(&f).unwrap());
        }
    }
}
