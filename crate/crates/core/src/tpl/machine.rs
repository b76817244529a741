//! Step-counted small-step interpreter.
//!
//! Cost model: every executed statement costs one step (an `if` or `while`
//! pays for evaluating its condition, once per evaluation); running off the
//! end of the program halts for free. `taub`, `runout` and `checkproof`
//! additionally charge every step their inner simulations consume, bounded by
//! the caller's remaining budget.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::ast::{BinOp, Builtin, Expr, Stmt, Value};
use super::TplProgram;
use crate::codec;
use crate::proof::{self, AxiomSource, BudgetExhausted};
use crate::syntax::{parse_formula, Formula};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Running,
    Halted,
    OutOfBudget,
}

/// Complete machine configuration; the transition function is deterministic.
///
/// A runtime type error does not stop the machine early: a faulted program
/// is a diverging program, so it consumes the rest of its budget. The
/// message is kept for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineState {
    pub env: Vec<Value>,
    stack: Vec<(Arc<[Stmt]>, usize)>,
    pub steps: u64,
    pub status: Status,
    pub fault: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub status: Status,
    pub steps: u64,
    pub out: Value,
    pub fault: Option<String>,
}

impl RunResult {
    pub fn halted(&self) -> bool {
        self.status == Status::Halted
    }
}

/// Outcome of a budgeted run: did it halt, and after how many steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauVerdict {
    pub halted_within: bool,
    pub steps_used: u64,
}

enum Stop {
    Fault(String),
    OutOfBudget,
}

type Eval<T> = Result<T, Stop>;

fn fault<T>(msg: impl Into<String>) -> Eval<T> {
    Err(Stop::Fault(msg.into()))
}

/// Saturating conversion of a step budget.
pub fn budget_u64(t: &Nat) -> u64 {
    t.to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone)]
struct Memo {
    budget: u64,
    result: RunResult,
}

/// Shared caches for nested simulations: decoded programs, completed runs,
/// and the most recent `checkproof` target. Results are identical to
/// uncached execution, including step charges.
#[derive(Default)]
pub struct Runtime {
    programs: HashMap<Nat, Option<Arc<TplProgram>>>,
    runs: HashMap<(Nat, Nat), Memo>,
    target: Option<(Arc<Nat>, Option<Formula>)>,
}

impl Runtime {
    pub fn new() -> Self {
        Self::default()
    }

    /// Decodes and parses the program coded by `e`; `None` on either failure.
    pub fn program(&mut self, e: &Nat) -> Option<Arc<TplProgram>> {
        if let Some(p) = self.programs.get(e) {
            return p.clone();
        }
        let parsed = codec::decode_program_code(e)
            .and_then(|src| TplProgram::parse(&src).ok())
            .map(Arc::new);
        self.programs.insert(e.clone(), parsed.clone());
        parsed
    }

    /// Runs the program coded by `e` on `x` for at most `budget` steps.
    /// Undecodable or unparsable codes behave as programs that never halt.
    pub fn run_code(&mut self, e: &Nat, x: &Nat, budget: u64) -> RunResult {
        let key = (e.clone(), x.clone());
        if let Some(m) = self.runs.get(&key) {
            if let Some(r) = replay(m, budget) {
                return r;
            }
        }
        let result = match self.program(e) {
            None => RunResult {
                status: Status::OutOfBudget,
                steps: budget,
                out: Value::zero(),
                fault: Some("code does not decode to a program".into()),
            },
            Some(p) => {
                let mut m = Machine::new(&p, x.clone());
                m.run(self, budget);
                m.result()
            }
        };
        self.runs.insert(
            key,
            Memo {
                budget,
                result: result.clone(),
            },
        );
        result
    }

    pub fn tau_verdict(&mut self, e: &Nat, x: &Nat, t: &Nat) -> TauVerdict {
        let r = self.run_code(e, x, budget_u64(t));
        TauVerdict {
            halted_within: r.halted(),
            steps_used: r.steps,
        }
    }

    pub fn tau(&mut self, e: &Nat, x: &Nat, t: &Nat) -> bool {
        self.tau_verdict(e, x, t).halted_within
    }

    pub fn run_output(&mut self, e: &Nat, x: &Nat, t: &Nat) -> Option<Nat> {
        let r = self.run_code(e, x, budget_u64(t));
        r.halted().then(|| r.out.to_code())
    }

    fn target_formula(&mut self, code: &Arc<Nat>) -> Option<Formula> {
        if let Some((cached, f)) = &self.target {
            if Arc::ptr_eq(cached, code) || **cached == **code {
                return f.clone();
            }
        }
        let f = codec::decode_program_text(code).and_then(|t| parse_formula(&t).ok());
        self.target = Some((code.clone(), f.clone()));
        f
    }
}

/// Reuses a memoized run when its outcome is determined for `budget`.
fn replay(m: &Memo, budget: u64) -> Option<RunResult> {
    let r = &m.result;
    if r.fault.is_some() {
        return Some(RunResult {
            steps: budget,
            ..r.clone()
        });
    }
    match r.status {
        Status::Halted if r.steps <= budget => Some(r.clone()),
        _ if budget <= m.budget.min(r.steps) => Some(RunResult {
            status: Status::OutOfBudget,
            steps: budget,
            out: Value::zero(),
            fault: None,
        }),
        _ => None,
    }
}

pub struct Machine<'p> {
    program: &'p TplProgram,
    state: MachineState,
    budget: u64,
}

impl<'p> Machine<'p> {
    pub fn new(program: &'p TplProgram, input: Nat) -> Self {
        let mut env = vec![Value::zero(); program.slots.len()];
        env[0] = Value::nat(input);
        Machine {
            program,
            state: MachineState {
                env,
                stack: vec![(program.body.clone(), 0)],
                steps: 0,
                status: Status::Running,
                fault: None,
            },
            budget: 0,
        }
    }

    pub fn state(&self) -> &MachineState {
        &self.state
    }

    pub fn result(&self) -> RunResult {
        RunResult {
            status: self.state.status,
            steps: self.state.steps,
            out: self.state.env[1].clone(),
            fault: self.state.fault.clone(),
        }
    }

    /// Final variable bindings, by name.
    pub fn bindings(&self) -> Vec<(String, Value)> {
        self.program
            .slots
            .iter()
            .cloned()
            .zip(self.state.env.iter().cloned())
            .collect()
    }

    /// Runs until halt, fault, or `budget` total steps have been used.
    pub fn run(&mut self, rt: &mut Runtime, budget: u64) -> &Status {
        self.budget = budget;
        while self.state.status == Status::Running {
            self.step(rt);
        }
        &self.state.status
    }

    fn step(&mut self, rt: &mut Runtime) {
        let Some((block, pc)) = self.state.stack.last().cloned() else {
            self.state.status = Status::Halted;
            return;
        };
        if pc >= block.len() {
            self.state.stack.pop();
            return;
        }
        if self.state.steps >= self.budget {
            self.state.status = Status::OutOfBudget;
            return;
        }
        self.state.steps += 1;
        let outcome = match &block[pc] {
            Stmt::Halt => {
                self.state.status = Status::Halted;
                return;
            }
            Stmt::Assign(slot, e) => self.eval(e, rt).map(|v| {
                self.state.env[*slot] = v;
                self.advance();
            }),
            Stmt::If(cond, then, otherwise) => self.eval(cond, rt).map(|v| {
                self.advance();
                let branch = if v.truthy() { then } else { otherwise };
                self.state.stack.push((branch.clone(), 0));
            }),
            Stmt::While(cond, body) => self.eval(cond, rt).map(|v| {
                if v.truthy() {
                    self.state.stack.push((body.clone(), 0));
                } else {
                    self.advance();
                }
            }),
        };
        match outcome {
            Ok(()) => {}
            Err(Stop::OutOfBudget) => {
                self.state.steps = self.state.steps.min(self.budget);
                self.state.status = Status::OutOfBudget;
            }
            Err(Stop::Fault(msg)) => {
                self.state.fault = Some(msg);
                self.state.steps = self.budget;
                self.state.status = Status::OutOfBudget;
            }
        }
    }

    fn advance(&mut self) {
        if let Some(top) = self.state.stack.last_mut() {
            top.1 += 1;
        }
    }

    fn remaining(&self) -> u64 {
        self.budget - self.state.steps
    }

    /// Charges `used` inner steps; `capped` says the inner run was limited by
    /// our remaining budget rather than by its own bound.
    fn charge(&mut self, used: u64, capped_out: bool) -> Eval<()> {
        self.state.steps = self.state.steps.saturating_add(used);
        if capped_out {
            Err(Stop::OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn eval(&mut self, e: &Expr, rt: &mut Runtime) -> Eval<Value> {
        match e {
            Expr::Lit(v) => Ok(v.clone()),
            Expr::Var(slot) => Ok(self.state.env[*slot].clone()),
            Expr::Bin(op, a, b) => {
                let a = self.eval(a, rt)?;
                let b = self.eval(b, rt)?;
                binop(*op, &a, &b)
            }
            Expr::Call(f, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a, rt)?);
                }
                self.call(*f, &vals, rt)
            }
        }
    }

    fn call(&mut self, f: Builtin, args: &[Value], rt: &mut Runtime) -> Eval<Value> {
        let truth = |b: bool| Value::nat(BigUint::from(b as u8));
        match f {
            Builtin::Len => Ok(Value::nat(BigUint::from(as_bytes(&args[0])?.len()))),
            Builtin::Concat => {
                let (a, b) = (as_bytes(&args[0])?, as_bytes(&args[1])?);
                let mut joined = Vec::with_capacity(a.len() + b.len());
                joined.extend_from_slice(a);
                joined.extend_from_slice(b);
                Ok(Value::bytes(joined))
            }
            Builtin::Substr => {
                let s = as_bytes(&args[0])?;
                let start = as_index(&args[1])?.min(s.len());
                let n = as_index(&args[2])?;
                let end = start.saturating_add(n).min(s.len());
                Ok(Value::bytes(&s[start..end]))
            }
            Builtin::CharAt => {
                let s = as_bytes(&args[0])?;
                let i = as_index(&args[1])?;
                Ok(Value::nat(BigUint::from(s.get(i).copied().unwrap_or(0))))
            }
            Builtin::ToNat => Ok(Value::nat(codec::program_code(as_bytes(&args[0])?))),
            Builtin::ToStr => {
                let n = as_nat(&args[0])?;
                Ok(Value::bytes(codec::decode_program_code(n).unwrap_or_default()))
            }
            Builtin::Dec => Ok(Value::bytes(as_nat(&args[0])?.to_string().into_bytes())),
            Builtin::PairN => Ok(Value::nat(codec::pair(as_nat(&args[0])?, as_nat(&args[1])?))),
            Builtin::UnpairL | Builtin::UnpairR => {
                let parts = codec::unpair(as_nat(&args[0])?);
                Ok(Value::nat(match parts {
                    Some((l, r)) => {
                        if f == Builtin::UnpairL {
                            l
                        } else {
                            r
                        }
                    }
                    None => Nat::zero(),
                }))
            }
            Builtin::InRange => Ok(truth(codec::in_pair_range(as_nat(&args[0])?))),
            Builtin::TauB | Builtin::RunOut => {
                let (e, x) = (as_nat(&args[0])?, as_nat(&args[1])?);
                let t = budget_u64(as_nat(&args[2])?);
                let remaining = self.remaining();
                let inner_budget = t.min(remaining);
                let r = rt.run_code(e, x, inner_budget);
                let capped = r.status == Status::OutOfBudget && t > remaining;
                self.charge(r.steps, capped)?;
                Ok(match (f, r.halted()) {
                    (Builtin::TauB, h) => truth(h),
                    (_, false) => Value::zero(),
                    (_, true) => Value::nat(r.out.to_code() + 1u32),
                })
            }
            Builtin::CheckProof => {
                let enumerator = as_nat(&args[0])?.clone();
                let code = as_nat(&args[1])?;
                let Value::Nat(target) = &args[2] else {
                    return fault("checkproof expects a sentence code");
                };
                let Some(p) = proof::code_to_proof(code) else {
                    return Ok(truth(false));
                };
                let mut oracle = EnumeratorAxioms {
                    rt,
                    enumerator,
                    budget: self.remaining(),
                    used: 0,
                };
                let derived = proof::derive(&p, &mut oracle);
                let used = oracle.used;
                self.charge(used, matches!(derived, Err(proof::CheckError::BudgetExhausted(_))))?;
                Ok(truth(match derived {
                    Ok(d) => rt.target_formula(target).as_ref() == Some(d.conclusion()),
                    Err(_) => false,
                }))
            }
        }
    }
}

/// Axiom source backed by a TPL enumerator, charging a shared step budget.
pub struct EnumeratorAxioms<'r> {
    pub rt: &'r mut Runtime,
    pub enumerator: Nat,
    pub budget: u64,
    pub used: u64,
}

impl AxiomSource for EnumeratorAxioms<'_> {
    fn axiom(&mut self, index: &Nat) -> Result<Option<Formula>, BudgetExhausted> {
        let left = self.budget - self.used;
        let r = self.rt.run_code(&self.enumerator, index, left);
        self.used += r.steps;
        match r.status {
            Status::Halted => Ok(codec::decode_program_text(&r.out.to_code())
                .and_then(|t| crate::syntax::parse_sentence(&t).ok())),
            _ => Err(BudgetExhausted),
        }
    }
}

fn as_nat(v: &Value) -> Eval<&Nat> {
    match v {
        Value::Nat(n) => Ok(n),
        Value::Bytes(_) => fault("expected a number, found a string"),
    }
}

fn as_bytes(v: &Value) -> Eval<&[u8]> {
    match v {
        Value::Bytes(b) => Ok(b),
        Value::Nat(_) => fault("expected a string, found a number"),
    }
}

fn as_index(v: &Value) -> Eval<usize> {
    Ok(as_nat(v)?.to_usize().unwrap_or(usize::MAX))
}

fn binop(op: BinOp, a: &Value, b: &Value) -> Eval<Value> {
    let truth = |x: bool| Value::nat(BigUint::from(x as u8));
    match op {
        BinOp::Eq => Ok(truth(a == b)),
        BinOp::Lt | BinOp::Le => {
            let ord = match (a, b) {
                (Value::Nat(x), Value::Nat(y)) => x.cmp(y),
                (Value::Bytes(x), Value::Bytes(y)) => x.cmp(y),
                _ => return fault("cannot compare a number with a string"),
            };
            Ok(truth(if op == BinOp::Lt { ord.is_lt() } else { ord.is_le() }))
        }
        _ => {
            let (x, y) = (as_nat(a)?, as_nat(b)?);
            Ok(Value::nat(match op {
                BinOp::Add => x + y,
                BinOp::Sub => {
                    if x > y {
                        x - y
                    } else {
                        Nat::zero()
                    }
                }
                BinOp::Mul => x * y,
                BinOp::Div if y.is_zero() => Nat::zero(),
                BinOp::Div => x.div_floor(y),
                BinOp::Mod if y.is_zero() => Nat::zero(),
                BinOp::Mod => x.mod_floor(y),
                _ => unreachable!("comparisons handled above"),
            }))
        }
    }
}
