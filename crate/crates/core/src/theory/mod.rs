//! The theories 𝒯 (A1–A7) and 𝒮 (A1–A9): axiom membership, canonical
//! enumerations (host-side and as TPL programs), the order-theory decider,
//! and a standard-model evaluator.

mod eval;
mod qe;

use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub use eval::{eval_std, StdEvaluator};
pub use qe::{decide_order_theory, OrderDecider, QeError};

use crate::codec::{program_code, unpair};
use crate::syntax::{a9_instance, order_axioms, tau_atom, verum, Formula, Term};
use crate::tpl::{templates, Runtime};
use crate::Nat;

/// The two concrete theories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    /// A1–A7: the order axioms plus every true closed `tau` atom.
    T,
    /// A1–A9: additionally every false `tau` atom, negated, and the A9
    /// instances `A x. (x < #k <-> (x = 0 | ... | x = #(k-1)))`.
    S,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::T => "T",
            Theory::S => "S",
        })
    }
}

impl std::str::FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T" | "t" => Ok(Theory::T),
            "S" | "s" => Ok(Theory::S),
            other => Err(format!("unknown theory `{other}` (expected T or S)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Provable,
    Refutable,
    IndependentAsFarAsTested(Nat),
    TrueInN,
    FalseInN,
    Unknown(Nat),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Provable => f.write_str("provable"),
            Verdict::Refutable => f.write_str("refutable"),
            Verdict::IndependentAsFarAsTested(b) => write!(f, "independent-as-far-as-tested({b})"),
            Verdict::TrueInN => f.write_str("true"),
            Verdict::FalseInN => f.write_str("false"),
            Verdict::Unknown(b) => write!(f, "unknown({b})"),
        }
    }
}

fn closed_tau(f: &Formula) -> Option<(&Nat, &Nat, &Nat)> {
    match f {
        Formula::Tau(Term::Num(e), Term::Num(x), Term::Num(t)) => Some((e, x, t)),
        _ => None,
    }
}

/// The `k` for which `f` is exactly the canonical A9 instance.
pub fn a9_index(f: &Formula) -> Option<Nat> {
    let Formula::Forall(x, body) = f else { return None };
    let Formula::Iff(lhs, rhs) = &**body else { return None };
    let Formula::Less(Term::Var(v), Term::Num(k)) = &**lhs else { return None };
    if v != x || x != "x" {
        return None;
    }
    let is_eq = |g: &Formula, i: &Nat| {
        matches!(g, Formula::Eq(Term::Var(w), Term::Num(n)) if w == x && n == i)
    };
    if k.is_zero() {
        return (**rhs == crate::syntax::falsum()).then(|| k.clone());
    }
    let last = k - 1u32;
    let mut i = Nat::zero();
    let mut cur: &Formula = rhs;
    while i < last {
        let Formula::Or(a, b) = cur else { return None };
        if !is_eq(a, &i) {
            return None;
        }
        cur = b;
        i += 1u32;
    }
    is_eq(cur, &last).then(|| k.clone())
}

/// Axiom membership in 𝒯 (the padding sentence `0 = 0` included).
pub fn member_t(f: &Formula) -> bool {
    member_t_with(&mut Runtime::new(), f)
}

/// Axiom membership in 𝒮 (the padding sentence `0 = 0` included).
pub fn member_s(f: &Formula) -> bool {
    member_s_with(&mut Runtime::new(), f)
}

pub fn member_t_with(rt: &mut Runtime, f: &Formula) -> bool {
    if *f == verum() || order_axioms().contains(f) {
        return true;
    }
    match closed_tau(f) {
        Some((e, x, t)) => rt.tau(e, x, t),
        None => false,
    }
}

pub fn member_s_with(rt: &mut Runtime, f: &Formula) -> bool {
    if member_t_with(rt, f) || a9_index(f).is_some() {
        return true;
    }
    match f {
        Formula::Not(g) => match closed_tau(g) {
            Some((e, x, t)) => !rt.tau(e, x, t),
            None => false,
        },
        _ => false,
    }
}

pub fn member(theory: Theory, rt: &mut Runtime, f: &Formula) -> bool {
    match theory {
        Theory::T => member_t_with(rt, f),
        Theory::S => member_s_with(rt, f),
    }
}

/// The canonical enumeration: indices 0–5 are A1–A6; for `i >= 6` let
/// `j = i - 6`. Even `j` decodes `j/2 = pair(e, pair(x, t))` and yields
/// `tau(#e, #x, #t)` when it holds (𝒮 yields `~tau(...)` otherwise); odd `j`
/// decodes `(j-1)/2 = pair(k, 0)` and yields the A9 instance for `k` (𝒮
/// only). Every other index yields the padding sentence `0 = 0`.
pub fn enumerate_axioms_with(theory: Theory, rt: &mut Runtime, i: &Nat) -> Formula {
    if let Some(k) = i.to_usize().filter(|k| *k < 6) {
        return order_axioms()[k].clone();
    }
    let j = i - 6u32;
    let (h, odd) = j.div_rem(&Nat::from(2u32));
    if odd.is_zero() {
        let Some((e, r)) = unpair(&h) else { return verum() };
        let Some((x, t)) = unpair(&r) else { return verum() };
        let atom = tau_atom(&e, &x, &t);
        if rt.tau(&e, &x, &t) {
            atom
        } else if theory == Theory::S {
            Formula::not(atom)
        } else {
            verum()
        }
    } else {
        match (theory, unpair(&h)) {
            (Theory::S, Some((k, z))) if z.is_zero() => {
                a9_instance(k.to_u64().expect("A9 index fits in u64"))
            }
            _ => verum(),
        }
    }
}

pub fn enumerate_axioms(theory: Theory, i: &Nat) -> Formula {
    enumerate_axioms_with(theory, &mut Runtime::new(), i)
}

/// Source of the shipped TPL enumerator.
pub fn enumerator_source(theory: Theory) -> &'static str {
    match theory {
        Theory::T => templates::T_AXIOMS,
        Theory::S => templates::S_AXIOMS,
    }
}

pub fn enumerator_code(theory: Theory) -> Nat {
    program_code(enumerator_source(theory).as_bytes())
}

/// Source of an enumerator for an explicit finite list: index `i < len` is
/// the `i`-th sentence, later indices are the padding sentence `0 = 0`.
pub fn finite_enumerator_source(sentences: &[Formula]) -> String {
    let mut src = String::from("// Enumerator of an explicit finite theory.\nout = \"0 = 0\";\n");
    for (i, f) in sentences.iter().enumerate() {
        src.push_str(&format!(
            "if (in == {i}) {{ out = {}; }}\n",
            templates::string_literal(&f.to_string())
        ));
    }
    src
}

type Membership = Box<dyn Fn(&mut Runtime, &Formula) -> bool + Send + Sync>;

/// An RE theory: a total indexed enumerator, optionally with a decider for
/// axiom membership whose extension is the enumerator's range.
pub struct TheoryHandle {
    pub name: String,
    pub membership: Option<Membership>,
    pub enumerator_code: Nat,
    pub language: &'static [&'static str],
}

impl fmt::Debug for TheoryHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoryHandle")
            .field("name", &self.name)
            .field("has_membership", &self.membership.is_some())
            .field("enumerator_bits", &self.enumerator_code.bits())
            .field("language", &self.language)
            .finish()
    }
}

impl TheoryHandle {
    pub fn standard(theory: Theory) -> Self {
        TheoryHandle {
            name: theory.to_string(),
            membership: Some(Box::new(move |rt, f| member(theory, rt, f))),
            enumerator_code: enumerator_code(theory),
            language: match theory {
                Theory::T => &["0", "s", "<", "=", "tau"],
                Theory::S => &["0", "s", "<", "=", "tau", "pi"],
            },
        }
    }

    /// A theory given only by an enumerator program.
    pub fn from_enumerator(name: &str, code: Nat) -> Self {
        TheoryHandle {
            name: name.to_string(),
            membership: None,
            enumerator_code: code,
            language: &["0", "s", "<", "=", "tau", "pi"],
        }
    }

    pub fn is_member(&self, rt: &mut Runtime, f: &Formula) -> Option<bool> {
        self.membership.as_ref().map(|m| m(rt, f))
    }
}
