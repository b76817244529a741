//! Terms and formulas over the fixed signature `{0, s, <, =, tau, pi}`.

mod build;
mod parse;
mod print;
pub(crate) mod subst;

use std::collections::BTreeSet;

use crate::Nat;

pub use build::*;
pub use parse::{parse_formula, parse_sentence, parse_term, SyntaxError};
pub use subst::substitute;

/// A term. `Num(n)` stands for the numeral `s^n(0)`; `Succ` never wraps a
/// `Num`, so every numeral has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Num(Nat),
    Var(String),
    Succ(Box<Term>),
    Pi(Box<Term>, Box<Term>),
}

impl Term {
    pub fn num(n: impl Into<Nat>) -> Term {
        Term::Num(n.into())
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// Successor, folding `s(#n)` into `#(n+1)`.
    pub fn succ(inner: Term) -> Term {
        match inner {
            Term::Num(n) => Term::Num(n + 1u32),
            other => Term::Succ(Box::new(other)),
        }
    }

    pub fn pi(l: Term, r: Term) -> Term {
        Term::Pi(Box::new(l), Box::new(r))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Num(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Pi(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn has_var(&self, v: &str) -> bool {
        match self {
            Term::Num(_) => false,
            Term::Var(w) => w == v,
            Term::Succ(t) => t.has_var(v),
            Term::Pi(a, b) => a.has_var(v) || b.has_var(v),
        }
    }

    pub fn contains_pi(&self) -> bool {
        match self {
            Term::Num(_) | Term::Var(_) => false,
            Term::Succ(t) => t.contains_pi(),
            Term::Pi(..) => true,
        }
    }

    /// True when no `Succ(Num _)` occurs anywhere.
    pub fn is_canonical(&self) -> bool {
        match self {
            Term::Num(_) | Term::Var(_) => true,
            Term::Succ(t) => !matches!(**t, Term::Num(_)) && t.is_canonical(),
            Term::Pi(a, b) => a.is_canonical() && b.is_canonical(),
        }
    }

    /// Largest numeral value occurring in the term, if any.
    pub fn max_numeral(&self) -> Option<&Nat> {
        match self {
            Term::Num(n) => Some(n),
            Term::Var(_) => None,
            Term::Succ(t) => t.max_numeral(),
            Term::Pi(a, b) => a.max_numeral().max(b.max_numeral()),
        }
    }
}

/// A first-order formula. All connectives are primitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Less(Term, Term),
    Eq(Term, Term),
    Tau(Term, Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }
    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }
    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }
    pub fn less(a: Term, b: Term) -> Formula {
        Formula::Less(a, b)
    }
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }
    pub fn tau(e: Term, x: Term, t: Term) -> Formula {
        Formula::Tau(e, x, t)
    }

    pub fn is_binary(&self) -> bool {
        matches!(
            self,
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) | Formula::Iff(..)
        )
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
    }

    /// Free variables of the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |t: &Term, bound: &Vec<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Less(a, b) | Formula::Eq(a, b) => {
                add(a, bound);
                add(b, bound);
            }
            Formula::Tau(a, b, c) => {
                add(a, bound);
                add(b, bound);
                add(c, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, v: &str) -> bool {
        match self {
            Formula::Less(a, b) | Formula::Eq(a, b) => a.has_var(v) || b.has_var(v),
            Formula::Tau(a, b, c) => a.has_var(v) || b.has_var(v) || c.has_var(v),
            Formula::Not(f) => f.has_free(v),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.has_free(v) || b.has_free(v)
            }
            Formula::Forall(w, f) | Formula::Exists(w, f) => w != v && f.has_free(v),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| t.collect_vars(&mut out));
        self.visit(&mut |f| {
            if let Formula::Forall(v, _) | Formula::Exists(v, _) = f {
                out.insert(v.clone());
            }
        });
        out
    }

    /// Pre-order traversal of subformulas.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Less(..) | Formula::Eq(..) | Formula::Tau(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Visits every top-level term of every atom.
    pub fn visit_terms(&self, f: &mut impl FnMut(&Term)) {
        self.visit(&mut |g| match g {
            Formula::Less(a, b) | Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::Tau(a, b, c) => {
                f(a);
                f(b);
                f(c);
            }
            _ => {}
        });
    }

    pub fn contains_pi(&self) -> bool {
        let mut found = false;
        self.visit_terms(&mut |t| found |= t.contains_pi());
        found
    }

    pub fn contains_tau(&self) -> bool {
        let mut found = false;
        self.visit(&mut |g| found |= matches!(g, Formula::Tau(..)));
        found
    }

    pub fn is_canonical(&self) -> bool {
        let mut ok = true;
        self.visit_terms(&mut |t| ok &= t.is_canonical());
        ok
    }

    /// Quantifier nesting depth.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Less(..) | Formula::Eq(..) | Formula::Tau(..) => 0,
            Formula::Not(g) => g.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Forall(_, g) | Formula::Exists(_, g) => 1 + g.quantifier_depth(),
        }
    }

    pub fn max_numeral(&self) -> Option<Nat> {
        let mut best: Option<Nat> = None;
        self.visit_terms(&mut |t| {
            if let Some(n) = t.max_numeral() {
                if best.as_ref().is_none_or(|b| n > b) {
                    best = Some(n.clone());
                }
            }
        });
        best
    }

    /// Code of the canonical printed text.
    pub fn code(&self) -> Nat {
        crate::codec::program_code(self.to_string().as_bytes())
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}
