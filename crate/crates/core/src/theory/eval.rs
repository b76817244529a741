//! Evaluation in the standard model `<N, 0, s, <, tau, pi>`.
//!
//! Atoms are evaluated directly (`tau` by the interpreter, `pi` by pairing).
//! Quantifiers are handled in three ways:
//!
//! * bounded patterns `E v. (v < t & ..)` / `A v. (v < t -> ..)` iterate below `t`;
//! * if no `tau`/`pi` in the scope depends on the quantified variables, the
//!   scope is a pure order formula once the outer values are plugged in, and
//!   is decided exactly by quantifier elimination;
//! * otherwise the variable is scanned over `0..=budget`: a witness settles
//!   `E` (a counterexample settles `A`), anything else is unknown.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use super::qe::decide_order_theory;
use super::Verdict;
use crate::codec::pair;
use crate::syntax::{falsum, verum, Formula, Term};
use crate::tpl::Runtime;
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tv {
    T,
    F,
    U,
}

impl Tv {
    fn of(b: bool) -> Tv {
        if b {
            Tv::T
        } else {
            Tv::F
        }
    }

    fn not(self) -> Tv {
        match self {
            Tv::T => Tv::F,
            Tv::F => Tv::T,
            Tv::U => Tv::U,
        }
    }

    fn and(self, o: Tv) -> Tv {
        match (self, o) {
            (Tv::F, _) | (_, Tv::F) => Tv::F,
            (Tv::T, Tv::T) => Tv::T,
            _ => Tv::U,
        }
    }

    fn or(self, o: Tv) -> Tv {
        self.not().and(o.not()).not()
    }
}

/// Three-valued evaluator with a step/scan budget and a shared interpreter
/// cache.
pub struct StdEvaluator {
    pub rt: Runtime,
    pub budget: u64,
}

/// `eval_std` on a fresh evaluator.
pub fn eval_std(s: &Formula, budget: u64) -> Verdict {
    StdEvaluator::new(budget).eval(s)
}

type Env = Vec<(String, Nat)>;

impl StdEvaluator {
    pub fn new(budget: u64) -> Self {
        StdEvaluator {
            rt: Runtime::new(),
            budget,
        }
    }

    /// `TrueInN`, `FalseInN` or `Unknown(budget)`; free variables are not
    /// allowed.
    pub fn eval(&mut self, s: &Formula) -> Verdict {
        assert!(s.is_sentence(), "eval_std needs a sentence, got `{s}`");
        match self.formula(s, &mut Vec::new()) {
            Tv::T => Verdict::TrueInN,
            Tv::F => Verdict::FalseInN,
            Tv::U => Verdict::Unknown(Nat::from(self.budget)),
        }
    }

    fn term(&self, t: &Term, env: &Env) -> Nat {
        match t {
            Term::Num(n) => n.clone(),
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, n)| n.clone())
                .unwrap_or_else(|| panic!("unbound variable `{v}`")),
            Term::Succ(inner) => self.term(inner, env) + 1u32,
            Term::Pi(a, b) => pair(&self.term(a, env), &self.term(b, env)),
        }
    }

    fn tau(&mut self, e: &Nat, x: &Nat, t: &Nat) -> Tv {
        let b = self.budget;
        match t.to_u64() {
            Some(t) if t <= b => Tv::of(self.rt.tau(e, x, &Nat::from(t))),
            // Beyond the budget only halting within the budget is decisive.
            _ => {
                if self.rt.tau(e, x, &Nat::from(b)) {
                    Tv::T
                } else {
                    Tv::U
                }
            }
        }
    }

    fn formula(&mut self, f: &Formula, env: &mut Env) -> Tv {
        match f {
            Formula::Less(a, b) => Tv::of(self.term(a, env) < self.term(b, env)),
            Formula::Eq(a, b) => Tv::of(self.term(a, env) == self.term(b, env)),
            Formula::Tau(e, x, t) => {
                let (e, x, t) = (self.term(e, env), self.term(x, env), self.term(t, env));
                self.tau(&e, &x, &t)
            }
            Formula::Not(g) => self.formula(g, env).not(),
            Formula::And(a, b) => match self.formula(a, env) {
                Tv::F => Tv::F,
                l => l.and(self.formula(b, env)),
            },
            Formula::Or(a, b) => match self.formula(a, env) {
                Tv::T => Tv::T,
                l => l.or(self.formula(b, env)),
            },
            Formula::Imp(a, b) => match self.formula(a, env) {
                Tv::F => Tv::T,
                l => l.not().or(self.formula(b, env)),
            },
            Formula::Iff(a, b) => {
                let (l, r) = (self.formula(a, env), self.formula(b, env));
                match (l, r) {
                    (Tv::U, _) | (_, Tv::U) => Tv::U,
                    _ => Tv::of(l == r),
                }
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let universal = matches!(f, Formula::Forall(..));
                self.quantifier(f, universal, v, g, env)
            }
        }
    }

    fn quantifier(&mut self, whole: &Formula, universal: bool, v: &str, g: &Formula, env: &mut Env) -> Tv {
        // Bounded patterns.
        let bounded = match (universal, g) {
            (true, Formula::Imp(guard, body)) | (false, Formula::And(guard, body)) => match &**guard {
                Formula::Less(Term::Var(w), bound) if w == v && !bound.has_var(v) => Some((bound, body)),
                _ => None,
            },
            _ => None,
        };
        if let Some((bound, body)) = bounded {
            let n = self.term(bound, env);
            let limit = n.to_u64().map_or(self.budget, |n| n.min(self.budget));
            let r = self.scan(universal, v, body, env, 0..limit);
            return if Nat::from(limit) == n { r } else { self.inconclusive(universal, r) };
        }
        if order_safe(v, g) {
            if let Some(closed) = self.ground(whole, env, &mut Vec::new()) {
                let b = decide_order_theory(&closed).expect("grounded scope is a pure order sentence");
                return Tv::of(b);
            }
        }
        let r = self.scan(universal, v, g, env, 0..self.budget.saturating_add(1));
        self.inconclusive(universal, r)
    }

    /// Iterates `v` over `range`: the Kleene conjunction (universal) or
    /// disjunction of the instances, stopping at the first decisive value.
    fn scan(&mut self, universal: bool, v: &str, body: &Formula, env: &mut Env, range: std::ops::Range<u64>) -> Tv {
        let decisive = if universal { Tv::F } else { Tv::T };
        let mut acc = decisive.not();
        for k in range {
            env.push((v.to_string(), Nat::from(k)));
            let r = self.formula(body, env);
            env.pop();
            if r == decisive {
                return decisive;
            }
            if r == Tv::U {
                acc = Tv::U;
            }
        }
        acc
    }

    /// A partial scan can only settle a quantifier by its decisive value.
    fn inconclusive(&self, universal: bool, r: Tv) -> Tv {
        let decisive = if universal { Tv::F } else { Tv::T };
        if r == decisive {
            r
        } else {
            Tv::U
        }
    }

    /// Plugs in the outer values and evaluates every `tau`/`pi` (all of which
    /// are closed by then), leaving a pure order sentence. `None` when some
    /// `tau` atom is undetermined within the budget.
    fn ground(&mut self, f: &Formula, env: &Env, bound: &mut Vec<String>) -> Option<Formula> {
        let term = |t: &Term, bound: &Vec<String>, ev: &Self| ground_term(t, env, bound, ev);
        Some(match f {
            Formula::Less(a, b) => Formula::Less(term(a, bound, self), term(b, bound, self)),
            Formula::Eq(a, b) => Formula::Eq(term(a, bound, self), term(b, bound, self)),
            Formula::Tau(a, b, c) => {
                let (a, b, c) = (self.term(a, env), self.term(b, env), self.term(c, env));
                match self.tau(&a, &b, &c) {
                    Tv::T => verum(),
                    Tv::F => falsum(),
                    Tv::U => return None,
                }
            }
            Formula::Not(g) => Formula::not(self.ground(g, env, bound)?),
            Formula::And(a, b) => Formula::and(self.ground(a, env, bound)?, self.ground(b, env, bound)?),
            Formula::Or(a, b) => Formula::or(self.ground(a, env, bound)?, self.ground(b, env, bound)?),
            Formula::Imp(a, b) => Formula::imp(self.ground(a, env, bound)?, self.ground(b, env, bound)?),
            Formula::Iff(a, b) => Formula::iff(self.ground(a, env, bound)?, self.ground(b, env, bound)?),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                bound.push(v.clone());
                let g = self.ground(g, env, bound);
                bound.pop();
                if matches!(f, Formula::Forall(..)) {
                    Formula::forall(v, g?)
                } else {
                    Formula::exists(v, g?)
                }
            }
        })
    }
}

fn ground_term(t: &Term, env: &Env, bound: &Vec<String>, ev: &StdEvaluator) -> Term {
    match t {
        Term::Num(_) => t.clone(),
        Term::Var(v) if bound.contains(v) => t.clone(),
        Term::Var(_) | Term::Pi(..) => Term::Num(ev.term(t, env)),
        Term::Succ(inner) => Term::succ(ground_term(inner, env, bound, ev)),
    }
}

/// No `tau` atom or `pi` term in `A v. g` mentions `v` or a variable bound
/// inside `g`.
fn order_safe(v: &str, g: &Formula) -> bool {
    let mut bound = BTreeSet::from([v.to_string()]);
    g.visit(&mut |f| {
        if let Formula::Forall(w, _) | Formula::Exists(w, _) = f {
            bound.insert(w.clone());
        }
    });
    let mut ok = true;
    g.visit(&mut |f| {
        if let Formula::Tau(a, b, c) = f {
            ok &= [a, b, c].iter().all(|t| t.vars().is_disjoint(&bound));
        }
    });
    g.visit_terms(&mut |t| {
        if let Term::Pi(..) = t {
            ok &= t.vars().is_disjoint(&bound);
        }
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{nat, program_code};
    use crate::syntax::{parse_sentence, tau_atom};

    fn code(src: &str) -> Nat {
        program_code(src.as_bytes())
    }

    #[test]
    fn tau_atoms() {
        let halt = code("halt;");
        assert_eq!(eval_std(&tau_atom(&halt, &nat(0), &nat(5)), 100), Verdict::TrueInN);
        let lp = code("while (1) { }");
        assert_eq!(eval_std(&tau_atom(&lp, &nat(0), &nat(5)), 100), Verdict::FalseInN);
        assert_eq!(eval_std(&tau_atom(&lp, &nat(0), &nat(500)), 100), Verdict::Unknown(nat(100)));
    }

    #[test]
    fn halting_witnesses() {
        let halt = code("halt;");
        let lp = code("while (1) { }");
        let s = crate::syntax::halts_sentence(&halt, &nat(0));
        assert_eq!(eval_std(&s, 10), Verdict::TrueInN);
        let s = crate::syntax::halts_sentence(&lp, &nat(0));
        assert_eq!(eval_std(&s, 50), Verdict::Unknown(nat(50)));
        assert_eq!(eval_std(&Formula::not(s), 50), Verdict::Unknown(nat(50)));
    }

    #[test]
    fn order_sentences_are_exact() {
        let s = parse_sentence("A x. E y. x < y").unwrap();
        assert_eq!(eval_std(&s, 3), Verdict::TrueInN);
        let s = parse_sentence("E x. A y. y < x").unwrap();
        assert_eq!(eval_std(&s, 3), Verdict::FalseInN);
        let s = parse_sentence("A x. (x < pi(#1,#2) <-> x < #10)").unwrap();
        assert_eq!(eval_std(&s, 3), Verdict::TrueInN);
    }

    #[test]
    fn bounded_quantifiers_iterate() {
        let s = parse_sentence("A y < #5. ~tau(#1, 0, y)").unwrap();
        assert_eq!(eval_std(&s, 100), Verdict::TrueInN);
        let halt = code("halt;");
        let s = parse_sentence(&format!("E y < #3. tau(#{halt}, 0, y)")).unwrap();
        assert_eq!(eval_std(&s, 100), Verdict::TrueInN);
    }
}
