use std::fmt;

use crate::syntax::subst::{is_free_for, substitute_naive};
use crate::syntax::{Formula, Term};

/// The logical axiom schemas of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    /// `a -> (b -> a)`
    P1,
    /// `(a -> (b -> c)) -> ((a -> b) -> (a -> c))`
    P2,
    /// `(~b -> ~a) -> (a -> b)`
    P3,
    /// `a & b -> a`
    And1,
    /// `a & b -> b`
    And2,
    /// `a -> (b -> a & b)`
    And3,
    /// `a -> a | b`
    Or1,
    /// `b -> a | b`
    Or2,
    /// `(a -> c) -> ((b -> c) -> (a | b -> c))`
    Or3,
    /// `(a <-> b) -> (a -> b)`
    Iff1,
    /// `(a <-> b) -> (b -> a)`
    Iff2,
    /// `(a -> b) -> ((b -> a) -> (a <-> b))`
    Iff3,
    /// `A x. a -> a[t/x]`, `t` free for `x`
    Q1,
    /// `A x. (a -> b) -> (a -> A x. b)`, `x` not free in `a`
    Q2,
    /// `a[t/x] -> E x. a`, `t` free for `x`
    Q3,
    /// `A x. (a -> b) -> (E x. a -> b)`, `x` not free in `b`
    Q4,
    /// `t = t`
    E1,
    /// `t = u -> u = t`
    E2,
    /// `t = u & u = v -> t = v`
    E3,
    /// `t = u -> s(t) = s(u)`
    E4S,
    /// `t1 = u1 -> (t2 = u2 -> pi(t1,t2) = pi(u1,u2))`
    E4Pi,
    /// `t1 = u1 -> (t2 = u2 -> (t1 < t2 -> u1 < u2))`
    E4Lt,
    /// `t1 = u1 -> (t2 = u2 -> (t3 = u3 -> (tau(t1, t2, t3) -> tau(u1, u2, u3))))`
    E4Tau,
}

const ALL: [Schema; 23] = [
    Schema::P1,
    Schema::P2,
    Schema::P3,
    Schema::And1,
    Schema::And2,
    Schema::And3,
    Schema::Or1,
    Schema::Or2,
    Schema::Or3,
    Schema::Iff1,
    Schema::Iff2,
    Schema::Iff3,
    Schema::Q1,
    Schema::Q2,
    Schema::Q3,
    Schema::Q4,
    Schema::E1,
    Schema::E2,
    Schema::E3,
    Schema::E4S,
    Schema::E4Pi,
    Schema::E4Lt,
    Schema::E4Tau,
];

const NAMES: [&str; 23] = [
    "P1", "P2", "P3", "AND1", "AND2", "AND3", "OR1", "OR2", "OR3", "IFF1", "IFF2", "IFF3", "Q1",
    "Q2", "Q3", "Q4", "E1", "E2", "E3", "E4S", "E4PI", "E4LT", "E4TAU",
];

impl Schema {
    pub fn all() -> &'static [Schema] {
        &ALL
    }

    /// Numeric id used by the structural proof code.
    pub fn id(self) -> usize {
        ALL.iter().position(|s| *s == self).expect("listed")
    }

    pub fn from_id(id: usize) -> Option<Schema> {
        ALL.get(id).copied()
    }

    pub fn name(self) -> &'static str {
        NAMES[self.id()]
    }

    pub fn from_name(name: &str) -> Option<Schema> {
        NAMES
            .iter()
            .position(|n| n.eq_ignore_ascii_case(name))
            .map(|i| ALL[i])
    }

    /// Checks that `f` is an instance of this schema, explaining why not.
    pub fn check(self, f: &Formula) -> Result<(), String> {
        if instance_of(self, f) {
            Ok(())
        } else {
            Err(format!("`{f}` is not an instance of {self}"))
        }
    }

    /// The first schema `f` instantiates, if any.
    pub fn classify(f: &Formula) -> Option<Schema> {
        ALL.iter().copied().find(|s| instance_of(*s, f))
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

fn eq(f: &Formula) -> Option<(&Term, &Term)> {
    match f {
        Formula::Eq(a, b) => Some((a, b)),
        _ => None,
    }
}

fn instance_of(schema: Schema, f: &Formula) -> bool {
    use Formula as F;
    (|| -> Option<bool> {
        Some(match schema {
            Schema::P1 => {
                let (a, r) = imp(f)?;
                let (_, a2) = imp(r)?;
                a == a2
            }
            Schema::P2 => {
                let (l, r) = imp(f)?;
                let (a, bc) = imp(l)?;
                let (b, c) = imp(bc)?;
                let (ab, ac) = imp(r)?;
                let (a2, b2) = imp(ab)?;
                let (a3, c2) = imp(ac)?;
                a == a2 && a == a3 && b == b2 && c == c2
            }
            Schema::P3 => {
                let (l, r) = imp(f)?;
                let (nb, na) = imp(l)?;
                let (a, b) = imp(r)?;
                *nb == F::not(b.clone()) && *na == F::not(a.clone())
            }
            Schema::And1 | Schema::And2 => {
                let (l, r) = imp(f)?;
                let F::And(a, b) = l else { return None };
                if schema == Schema::And1 {
                    **a == *r
                } else {
                    **b == *r
                }
            }
            Schema::And3 => {
                let (a, r) = imp(f)?;
                let (b, ab) = imp(r)?;
                *ab == F::and(a.clone(), b.clone())
            }
            Schema::Or1 | Schema::Or2 => {
                let (x, r) = imp(f)?;
                let F::Or(a, b) = r else { return None };
                if schema == Schema::Or1 {
                    **a == *x
                } else {
                    **b == *x
                }
            }
            Schema::Or3 => {
                let (ac, r) = imp(f)?;
                let (a, c) = imp(ac)?;
                let (bc, r2) = imp(r)?;
                let (b, c2) = imp(bc)?;
                let (ab, c3) = imp(r2)?;
                c == c2 && c == c3 && *ab == F::or(a.clone(), b.clone())
            }
            Schema::Iff1 | Schema::Iff2 => {
                let (l, r) = imp(f)?;
                let F::Iff(a, b) = l else { return None };
                let (x, y) = imp(r)?;
                if schema == Schema::Iff1 {
                    **a == *x && **b == *y
                } else {
                    **b == *x && **a == *y
                }
            }
            Schema::Iff3 => {
                let (ab, r) = imp(f)?;
                let (a, b) = imp(ab)?;
                let (ba, iff) = imp(r)?;
                *ba == F::imp(b.clone(), a.clone()) && *iff == F::iff(a.clone(), b.clone())
            }
            Schema::Q1 => {
                let (l, inst) = imp(f)?;
                let F::Forall(x, body) = l else { return None };
                substitution_instance(body, x, inst)
            }
            Schema::Q3 => {
                let (inst, r) = imp(f)?;
                let F::Exists(x, body) = r else { return None };
                substitution_instance(body, x, inst)
            }
            Schema::Q2 => {
                let (l, r) = imp(f)?;
                let F::Forall(x, ab) = l else { return None };
                let (a, b) = imp(ab)?;
                let (a2, all_b) = imp(r)?;
                !a.has_free(x) && a == a2 && *all_b == F::forall(x, b.clone())
            }
            Schema::Q4 => {
                let (l, r) = imp(f)?;
                let F::Forall(x, ab) = l else { return None };
                let (a, b) = imp(ab)?;
                let (ex_a, b2) = imp(r)?;
                !b.has_free(x) && b == b2 && *ex_a == F::exists(x, a.clone())
            }
            Schema::E1 => {
                let (t, u) = eq(f)?;
                t == u
            }
            Schema::E2 => {
                let (l, r) = imp(f)?;
                let (t, u) = eq(l)?;
                let (u2, t2) = eq(r)?;
                t == t2 && u == u2
            }
            Schema::E3 => {
                let (l, r) = imp(f)?;
                let F::And(p, q) = l else { return None };
                let (t, u) = eq(p)?;
                let (u2, v) = eq(q)?;
                let (t2, v2) = eq(r)?;
                u == u2 && t == t2 && v == v2
            }
            Schema::E4S => {
                let (l, r) = imp(f)?;
                let (t, u) = eq(l)?;
                let (st, su) = eq(r)?;
                *st == Term::succ(t.clone()) && *su == Term::succ(u.clone())
            }
            Schema::E4Pi => {
                let (h1, r) = imp(f)?;
                let (h2, c) = imp(r)?;
                let (t1, u1) = eq(h1)?;
                let (t2, u2) = eq(h2)?;
                let (p, q) = eq(c)?;
                *p == Term::pi(t1.clone(), t2.clone()) && *q == Term::pi(u1.clone(), u2.clone())
            }
            Schema::E4Lt => {
                let (h1, r) = imp(f)?;
                let (h2, r) = imp(r)?;
                let (t1, u1) = eq(h1)?;
                let (t2, u2) = eq(h2)?;
                let (p, q) = imp(r)?;
                *p == F::less(t1.clone(), t2.clone()) && *q == F::less(u1.clone(), u2.clone())
            }
            Schema::E4Tau => {
                let (h1, r) = imp(f)?;
                let (h2, r) = imp(r)?;
                let (h3, r) = imp(r)?;
                let (t1, u1) = eq(h1)?;
                let (t2, u2) = eq(h2)?;
                let (t3, u3) = eq(h3)?;
                let (p, q) = imp(r)?;
                *p == F::tau(t1.clone(), t2.clone(), t3.clone())
                    && *q == F::tau(u1.clone(), u2.clone(), u3.clone())
            }
        })
    })()
    .unwrap_or(false)
}

/// Whether `inst` is `body[t/x]` for some term `t` free for `x` in `body`.
fn substitution_instance(body: &Formula, x: &str, inst: &Formula) -> bool {
    let mut found: Option<Term> = None;
    if !match_formula(body, inst, x, &mut found) {
        return false;
    }
    match found {
        // `x` does not occur free: the instance must be the body itself.
        None => body == inst,
        Some(t) => is_free_for(body, x, &t) && substitute_naive(body, x, &t) == *inst,
    }
}

/// Walks `pattern` and `target` in parallel, proposing the term replacing the
/// free occurrences of `x`. The caller re-verifies the proposal.
fn match_formula(pattern: &Formula, target: &Formula, x: &str, found: &mut Option<Term>) -> bool {
    use Formula as F;
    match (pattern, target) {
        (F::Less(a, b), F::Less(c, d)) | (F::Eq(a, b), F::Eq(c, d)) => {
            match_term(a, c, x, found) && match_term(b, d, x, found)
        }
        (F::Tau(a, b, c), F::Tau(d, e, g)) => {
            match_term(a, d, x, found) && match_term(b, e, x, found) && match_term(c, g, x, found)
        }
        (F::Not(a), F::Not(b)) => match_formula(a, b, x, found),
        (F::And(a, b), F::And(c, d))
        | (F::Or(a, b), F::Or(c, d))
        | (F::Imp(a, b), F::Imp(c, d))
        | (F::Iff(a, b), F::Iff(c, d)) => {
            match_formula(a, c, x, found) && match_formula(b, d, x, found)
        }
        (F::Forall(v, a), F::Forall(w, b)) | (F::Exists(v, a), F::Exists(w, b)) => {
            v == w && (v == x || match_formula(a, b, x, found))
        }
        _ => false,
    }
}

fn match_term(pattern: &Term, target: &Term, x: &str, found: &mut Option<Term>) -> bool {
    match (pattern, target) {
        (Term::Var(v), _) if v == x => match found {
            Some(t) => t == target,
            None => {
                *found = Some(target.clone());
                true
            }
        },
        (Term::Succ(p), Term::Succ(q)) => match_term(p, q, x, found),
        (Term::Succ(p), Term::Num(n)) if n.bits() > 0 => {
            match_term(p, &Term::Num(n - 1u32), x, found)
        }
        (Term::Pi(a, b), Term::Pi(c, d)) => match_term(a, c, x, found) && match_term(b, d, x, found),
        _ => pattern == target,
    }
}
