//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, tightest first: `~` and quantifiers, `&`, `|`, `->` (right
//! associative), `<->`. A quantifier scopes over a single unary formula, so
//! `A x. p -> q` reads as `(A x. p) -> q`. Bounded quantifiers and `<=`, `>`
//! are expanded while parsing.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {msg}")]
    At { pos: usize, msg: String },
    #[error("not a sentence: free variables {}", .0.iter().cloned().collect::<Vec<_>>().join(", "))]
    FreeVariables(BTreeSet<String>),
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SyntaxError> {
    Err(SyntaxError::At {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Zero,
    Numeral(BigUint),
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Dot,
    Lt,
    Le,
    Gt,
    Eq,
    Not,
    And,
    Or,
    Imp,
    Iff,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Zero => "`0`".into(),
        Tok::Numeral(n) => format!("`#{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Forall => "`A`".into(),
        Tok::Exists => "`E`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Lt => "`<`".into(),
        Tok::Le => "`<=`".into(),
        Tok::Gt => "`>`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Not => "`~`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Imp => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'=' => Tok::Eq,
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'>' => Tok::Gt,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 2;
                Tok::Iff
            }
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Le
            }
            b'<' => Tok::Lt,
            b'0' => {
                if bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    return err(i, "bare numerals other than 0 must be written `#n`");
                }
                Tok::Zero
            }
            b'#' => {
                let digits_start = i + 1;
                let mut j = digits_start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == digits_start {
                    return err(i, "expected decimal digits after `#`");
                }
                let n = BigUint::parse_bytes(&bytes[digits_start..j], 10)
                    .expect("ascii digits parse");
                i = j;
                out.push((Tok::Numeral(n), start));
                continue;
            }
            b'A' => Tok::Forall,
            b'E' => Tok::Exists,
            b'a'..=b'z' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && matches!(bytes[j], b'a'..=b'z' | b'0'..=b'9' | b'_')
                {
                    j += 1;
                }
                let name = text[i..j].to_string();
                i = j;
                out.push((Tok::Ident(name), start));
                continue;
            }
            other => return err(i, format!("unexpected character {:?}", other as char)),
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(
                self.offset(),
                format!("expected {}, found {}", describe(&want), describe(self.peek())),
            )
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let var = match self.bump() {
                    Tok::Ident(v) => v,
                    other => {
                        return err(
                            self.toks[self.pos - 1].1,
                            format!("expected a variable after quantifier, found {}", describe(&other)),
                        )
                    }
                };
                let bound = if *self.peek() == Tok::Lt {
                    self.bump();
                    Some(self.term()?)
                } else {
                    None
                };
                self.expect(Tok::Dot)?;
                let body = self.unary()?;
                Ok(match (universal, bound) {
                    (true, None) => Formula::forall(&var, body),
                    (false, None) => Formula::exists(&var, body),
                    (true, Some(b)) => {
                        Formula::forall(&var, Formula::imp(Formula::less(Term::Var(var.clone()), b), body))
                    }
                    (false, Some(b)) => {
                        Formula::exists(&var, Formula::and(Formula::less(Term::Var(var.clone()), b), body))
                    }
                })
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(ref name) if name == "tau" && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let e = self.term()?;
                self.expect(Tok::Comma)?;
                let x = self.term()?;
                self.expect(Tok::Comma)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Formula::tau(e, x, t))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.term()?;
        let at = self.offset();
        match self.bump() {
            Tok::Lt => Ok(Formula::less(lhs, self.term()?)),
            Tok::Eq => Ok(Formula::eq(lhs, self.term()?)),
            Tok::Gt => Ok(Formula::less(self.term()?, lhs)),
            Tok::Le => {
                let rhs = self.term()?;
                Ok(Formula::or(
                    Formula::less(lhs.clone(), rhs.clone()),
                    Formula::eq(lhs, rhs),
                ))
            }
            other => err(at, format!("expected a relation, found {}", describe(&other))),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let at = self.offset();
        match self.bump() {
            Tok::Zero => Ok(Term::num(0u32)),
            Tok::Numeral(n) => Ok(Term::Num(n)),
            Tok::Ident(name) if *self.peek() == Tok::LParen && (name == "s" || name == "pi") => {
                self.bump();
                let a = self.term()?;
                let t = if name == "s" {
                    Term::succ(a)
                } else {
                    self.expect(Tok::Comma)?;
                    let b = self.term()?;
                    Term::pi(a, b)
                };
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(name) if *self.peek() == Tok::LParen => {
                err(at, format!("unknown function symbol `{name}`"))
            }
            Tok::Ident(name) => Ok(Term::Var(name)),
            other => err(at, format!("expected a term, found {}", describe(&other))),
        }
    }
}

/// Parses a formula; free variables are allowed.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return err(p.offset(), format!("unexpected {}", describe(p.peek())));
    }
    Ok(f)
}

/// Parses a formula and rejects it if any variable occurs free.
pub fn parse_sentence(text: &str) -> Result<Formula, SyntaxError> {
    let f = parse_formula(text)?;
    let free = f.free_vars();
    if free.is_empty() {
        Ok(f)
    } else {
        Err(SyntaxError::FreeVariables(free))
    }
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return err(p.offset(), format!("unexpected {}", describe(p.peek())));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: &str) -> Term {
        Term::var(v)
    }

    #[test]
    fn parses_axiom_a5() {
        let f = parse_sentence("A x. ~(x < 0)").unwrap();
        assert_eq!(
            f,
            Formula::forall("x", Formula::not(Formula::less(var("x"), Term::num(0u32))))
        );
    }

    #[test]
    fn smallest_sentence() {
        assert_eq!(
            parse_sentence("0 = 0").unwrap(),
            Formula::eq(Term::num(0u32), Term::num(0u32))
        );
    }

    #[test]
    fn successor_of_numeral_folds() {
        assert_eq!(
            parse_sentence("s(#2) < #4").unwrap(),
            Formula::less(Term::num(3u32), Term::num(4u32))
        );
        assert_eq!(parse_term("s(s(0))").unwrap(), Term::num(2u32));
    }

    #[test]
    fn quantifier_scopes_over_unary() {
        let f = parse_formula("A x. x=x -> 0=0").unwrap();
        assert!(matches!(f, Formula::Imp(ref a, _) if a.is_quantifier()));
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_formula("a < b | a = b & b < a").unwrap();
        assert!(matches!(f, Formula::Or(_, ref r) if matches!(**r, Formula::And(..))));
        let f = parse_formula("0=0 -> 0=0 -> 0<0").unwrap();
        assert!(matches!(f, Formula::Imp(_, ref r) if matches!(**r, Formula::Imp(..))));
        let f = parse_formula("0=0 & 0=0 & 0<0").unwrap();
        assert!(matches!(f, Formula::And(ref l, _) if matches!(**l, Formula::And(..))));
    }

    #[test]
    fn bounded_sugar_expands() {
        let f = parse_formula("A y < x. ~tau(0, 0, y)").unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "y",
                Formula::imp(
                    Formula::less(var("y"), var("x")),
                    Formula::not(Formula::tau(Term::num(0u32), Term::num(0u32), var("y")))
                )
            )
        );
        let f = parse_formula("E y < #3. y = y").unwrap();
        assert!(matches!(f, Formula::Exists(_, ref b) if matches!(**b, Formula::And(..))));
        assert_eq!(
            parse_formula("x <= y").unwrap(),
            Formula::or(Formula::less(var("x"), var("y")), Formula::eq(var("x"), var("y")))
        );
        assert_eq!(
            parse_formula("x > y").unwrap(),
            Formula::less(var("y"), var("x"))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("0 = ") {
            Err(SyntaxError::At { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("x < 5"), Err(SyntaxError::At { pos: 4, .. })));
        assert!(matches!(parse_formula("f(x) = 0"), Err(SyntaxError::At { .. })));
        assert!(matches!(parse_formula("R(x)"), Err(SyntaxError::At { .. })));
        match parse_sentence("x < y") {
            Err(SyntaxError::FreeVariables(vs)) => {
                assert_eq!(vs.into_iter().collect::<Vec<_>>(), vec!["x", "y"])
            }
            other => panic!("{other:?}"),
        }
    }
}
