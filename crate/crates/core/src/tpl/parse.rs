use std::sync::Arc;

use num_bigint::BigUint;

use super::ast::{BinOp, Builtin, Expr, Slot, Stmt, Value};
use super::TplProgram;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("TPL syntax error at byte {pos}: {msg}")]
pub struct TplSyntaxError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, TplSyntaxError> {
    Err(TplSyntaxError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigUint),
    Str(Vec<u8>),
    Ident(String),
    If,
    Else,
    While,
    Halt,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Lt,
    Le,
    EqEq,
    End,
}

fn lex(src: &[u8]) -> Result<Vec<(Tok, usize)>, TplSyntaxError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let c = src[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'/' if src.get(i + 1) == Some(&b'/') => {
                while i < src.len() && src[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'%' => Tok::Percent,
            b'=' if src.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::EqEq
            }
            b'=' => Tok::Assign,
            b'<' if src.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Le
            }
            b'<' => Tok::Lt,
            b'0'..=b'9' => {
                let mut j = i;
                while j < src.len() && src[j].is_ascii_digit() {
                    j += 1;
                }
                let n = BigUint::parse_bytes(&src[i..j], 10).expect("ascii digits parse");
                out.push((Tok::Num(n), start));
                i = j;
                continue;
            }
            b'"' => {
                let mut j = i + 1;
                let mut s = Vec::new();
                loop {
                    match src.get(j) {
                        None => return err(start, "unterminated string literal"),
                        Some(b'"') => break,
                        Some(b'\\') => {
                            let esc = match src.get(j + 1) {
                                Some(b'n') => b'\n',
                                Some(b'"') => b'"',
                                Some(b'\\') => b'\\',
                                _ => return err(j, "unknown escape sequence"),
                            };
                            s.push(esc);
                            j += 2;
                        }
                        Some(&b) if b.is_ascii() && b != b'\n' => {
                            s.push(b);
                            j += 1;
                        }
                        Some(_) => return err(j, "string literals must be single-line ASCII"),
                    }
                }
                out.push((Tok::Str(s), start));
                i = j + 1;
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut j = i;
                while j < src.len() && (src[j].is_ascii_alphanumeric() || src[j] == b'_') {
                    j += 1;
                }
                let word = std::str::from_utf8(&src[i..j]).expect("ascii");
                let tok = match word {
                    "if" => Tok::If,
                    "else" => Tok::Else,
                    "while" => Tok::While,
                    "halt" => Tok::Halt,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((tok, start));
                i = j;
                continue;
            }
            other => return err(i, format!("unexpected byte {other:#04x}")),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    slots: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), TplSyntaxError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(self.at(), format!("expected {what}"))
        }
    }

    fn slot(&mut self, name: &str) -> Slot {
        match self.slots.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.slots.push(name.to_string());
                self.slots.len() - 1
            }
        }
    }

    fn block(&mut self) -> Result<Arc<[Stmt]>, TplSyntaxError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut body = Vec::new();
        while *self.peek() != Tok::RBrace {
            if *self.peek() == Tok::End {
                return err(self.at(), "unterminated block");
            }
            body.push(self.stmt()?);
        }
        self.bump();
        Ok(body.into())
    }

    fn stmt(&mut self) -> Result<Stmt, TplSyntaxError> {
        let at = self.at();
        match self.bump() {
            Tok::Halt => {
                self.expect(Tok::Semi, "`;` after `halt`")?;
                Ok(Stmt::Halt)
            }
            Tok::If => {
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                let then = self.block()?;
                let otherwise: Arc<[Stmt]> = if *self.peek() == Tok::Else {
                    self.bump();
                    if *self.peek() == Tok::If {
                        Arc::from(vec![self.stmt()?])
                    } else {
                        self.block()?
                    }
                } else {
                    Arc::from(Vec::new())
                };
                Ok(Stmt::If(cond, then, otherwise))
            }
            Tok::While => {
                self.expect(Tok::LParen, "`(`")?;
                let cond = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Stmt::While(cond, self.block()?))
            }
            Tok::Ident(name) => {
                if Builtin::lookup(&name).is_some() {
                    return err(at, format!("cannot assign to builtin `{name}`"));
                }
                let slot = self.slot(&name);
                self.expect(Tok::Assign, "`=`")?;
                let e = self.expr()?;
                self.expect(Tok::Semi, "`;`")?;
                Ok(Stmt::Assign(slot, e))
            }
            _ => err(at, "expected a statement"),
        }
    }

    fn expr(&mut self) -> Result<Expr, TplSyntaxError> {
        let lhs = self.sum()?;
        let op = match self.peek() {
            Tok::Lt => BinOp::Lt,
            Tok::Le => BinOp::Le,
            Tok::EqEq => BinOp::Eq,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.sum()?;
        Ok(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))
    }

    fn sum(&mut self) -> Result<Expr, TplSyntaxError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr, TplSyntaxError> {
        let mut lhs = self.atom()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                Tok::Percent => BinOp::Mod,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.atom()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn atom(&mut self) -> Result<Expr, TplSyntaxError> {
        let at = self.at();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::Lit(Value::nat(n))),
            Tok::Str(s) => Ok(Expr::Lit(Value::bytes(s))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if *self.peek() == Tok::LParen => {
                let Some(b) = Builtin::lookup(&name) else {
                    return err(at, format!("unknown builtin `{name}`"));
                };
                self.bump();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    args.push(self.expr()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                }
                self.expect(Tok::RParen, "`)`")?;
                if args.len() != b.arity() {
                    return err(
                        at,
                        format!("`{name}` takes {} arguments, got {}", b.arity(), args.len()),
                    );
                }
                Ok(Expr::Call(b, args))
            }
            Tok::Ident(name) => Ok(Expr::Var(self.slot(&name))),
            _ => err(at, "expected an expression"),
        }
    }
}

pub(super) fn parse(src: &[u8]) -> Result<TplProgram, TplSyntaxError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        // `in` and `out` always occupy the first two slots.
        slots: vec!["in".to_string(), "out".to_string()],
    };
    let mut body = Vec::new();
    while *p.peek() != Tok::End {
        body.push(p.stmt()?);
    }
    Ok(TplProgram {
        source: Arc::from(src),
        body: body.into(),
        slots: p.slots.into(),
    })
}
