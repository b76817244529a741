use std::sync::Arc;

use crate::Nat;

/// A runtime value: a natural number or a byte string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Nat(Arc<Nat>),
    Bytes(Arc<[u8]>),
}

impl Value {
    pub fn nat(n: Nat) -> Value {
        Value::Nat(Arc::new(n))
    }

    pub fn bytes(b: impl Into<Arc<[u8]>>) -> Value {
        Value::Bytes(b.into())
    }

    pub fn zero() -> Value {
        Value::nat(Nat::default())
    }

    pub fn truthy(&self) -> bool {
        match self {
            Value::Nat(n) => n.bits() != 0,
            Value::Bytes(b) => !b.is_empty(),
        }
    }

    /// Natural-number reading: byte strings are coded as program codes.
    pub fn to_code(&self) -> Nat {
        match self {
            Value::Nat(n) => (**n).clone(),
            Value::Bytes(b) => crate::codec::program_code(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Len,
    Concat,
    Substr,
    CharAt,
    ToNat,
    ToStr,
    Dec,
    PairN,
    UnpairL,
    UnpairR,
    InRange,
    TauB,
    RunOut,
    CheckProof,
}

impl Builtin {
    pub fn lookup(name: &str) -> Option<Builtin> {
        Some(match name {
            "len" => Builtin::Len,
            "concat" => Builtin::Concat,
            "substr" => Builtin::Substr,
            "charat" => Builtin::CharAt,
            "tonat" => Builtin::ToNat,
            "tostr" => Builtin::ToStr,
            "dec" => Builtin::Dec,
            "pairN" => Builtin::PairN,
            "unpairL" => Builtin::UnpairL,
            "unpairR" => Builtin::UnpairR,
            "inrange" => Builtin::InRange,
            "taub" => Builtin::TauB,
            "runout" => Builtin::RunOut,
            "checkproof" => Builtin::CheckProof,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Len
            | Builtin::ToNat
            | Builtin::ToStr
            | Builtin::Dec
            | Builtin::UnpairL
            | Builtin::UnpairR
            | Builtin::InRange => 1,
            Builtin::Concat | Builtin::CharAt | Builtin::PairN => 2,
            Builtin::Substr | Builtin::TauB | Builtin::RunOut | Builtin::CheckProof => 3,
        }
    }
}

/// Variables are resolved to slots when the program is parsed.
pub type Slot = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(Value),
    Var(Slot),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Builtin, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Assign(Slot, Expr),
    If(Expr, Arc<[Stmt]>, Arc<[Stmt]>),
    While(Expr, Arc<[Stmt]>),
    Halt,
}
