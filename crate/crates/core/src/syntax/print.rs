use std::fmt::{self, Display, Formatter, Write};

use num_traits::Zero;

use super::{Formula, Term};

// Canonical text. Binary connectives appearing as operands of a binary
// connective, a quantifier, or a negation are parenthesized; `~` also
// parenthesizes infix atoms. No other parentheses are emitted.

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Num(n) if n.is_zero() => f.write_char('0'),
            Term::Num(n) => write!(f, "#{n}"),
            Term::Var(v) => f.write_str(v),
            Term::Succ(t) => write!(f, "s({t})"),
            Term::Pi(a, b) => write!(f, "pi({a},{b})"),
        }
    }
}

struct Operand<'a>(&'a Formula);

impl Display for Operand<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        if self.0.is_binary() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Less(a, b) => write!(f, "{a} < {b}"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Tau(e, x, t) => write!(f, "tau({e}, {x}, {t})"),
            Formula::Not(g) => match **g {
                Formula::Less(..) | Formula::Eq(..) => write!(f, "~({g})"),
                _ => write!(f, "~{}", Operand(g)),
            },
            Formula::And(a, b) => write!(f, "{} & {}", Operand(a), Operand(b)),
            Formula::Or(a, b) => write!(f, "{} | {}", Operand(a), Operand(b)),
            Formula::Imp(a, b) => write!(f, "{} -> {}", Operand(a), Operand(b)),
            Formula::Iff(a, b) => write!(f, "{} <-> {}", Operand(a), Operand(b)),
            Formula::Forall(v, g) => write!(f, "A {v}. {}", Operand(g)),
            Formula::Exists(v, g) => write!(f, "E {v}. {}", Operand(g)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_canonical_text() {
        let a5 = Formula::forall("x", Formula::not(Formula::less(Term::var("x"), Term::num(0u32))));
        assert_eq!(a5.to_string(), "A x. ~(x < 0)");
        let three = Formula::less(Term::num(3u32), Term::var("y"));
        assert_eq!(three.to_string(), "#3 < y");
        let nested = Formula::imp(
            Formula::and(three.clone(), three.clone()),
            Formula::not(Formula::tau(Term::num(1u32), Term::num(0u32), Term::var("t"))),
        );
        assert_eq!(nested.to_string(), "(#3 < y & #3 < y) -> ~tau(#1, 0, t)");
    }
}
