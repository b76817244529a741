//! TPL, the toy programming language whose step-bounded runs interpret the
//! `tau` predicate. See `docs/tpl.md` for the grammar and cost model.

mod ast;
mod machine;
mod parse;
pub mod templates;


use std::fmt;
use std::sync::Arc;

pub use ast::{BinOp, Builtin, Expr, Stmt, Value};
pub use machine::{budget_u64, EnumeratorAxioms, Machine, MachineState, RunResult, Runtime, Status, TauVerdict};
pub use parse::TplSyntaxError;

use crate::codec;
use crate::Nat;

/// A parsed TPL program together with its source text.
#[derive(Clone, PartialEq, Eq)]
pub struct TplProgram {
    source: Arc<[u8]>,
    body: Arc<[Stmt]>,
    slots: Arc<[String]>,
}

impl fmt::Debug for TplProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TplProgram")
            .field("bytes", &self.source.len())
            .field("vars", &self.slots)
            .finish()
    }
}

impl TplProgram {
    pub fn parse(src: &[u8]) -> Result<TplProgram, TplSyntaxError> {
        parse::parse(src)
    }

    pub fn source(&self) -> &[u8] {
        &self.source
    }

    pub fn source_text(&self) -> &str {
        std::str::from_utf8(&self.source).expect("TPL sources are ASCII")
    }

    pub fn body(&self) -> &[Stmt] {
        &self.body
    }

    /// The program's natural-number code.
    pub fn code(&self) -> Nat {
        codec::program_code(&self.source)
    }

    /// Runs on `input` for at most `budget` steps in a fresh runtime.
    pub fn run(&self, input: Nat, budget: u64) -> RunResult {
        self.run_with(&mut Runtime::new(), input, budget)
    }

    /// Runs on `input` sharing the caches of `rt`.
    pub fn run_with(&self, rt: &mut Runtime, input: Nat, budget: u64) -> RunResult {
        let mut m = Machine::new(self, input);
        m.run(rt, budget);
        m.result()
    }
}

/// `tau(e, x, t)`: the program coded by `e` halts on input `x` within `t`
/// steps. Total: codes that do not decode to a program never halt.
pub fn tau(e: &Nat, x: &Nat, t: &Nat) -> bool {
    Runtime::new().tau(e, x, t)
}

/// Final value of `out` (strings coded as program codes) when the program
/// halts within `t` steps.
pub fn run_output(e: &Nat, x: &Nat, t: &Nat) -> Option<Nat> {
    Runtime::new().run_output(e, x, t)
}
