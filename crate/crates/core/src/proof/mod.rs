//! Hilbert-style calculus: proofs, the checker, proof codes and scripts,
//! and bounded proof search.
//!
//! A [`Proof`] is a list of justifications. The formula of each step is
//! determined by its justification: logical axioms carry their instance,
//! theory axioms cite an index that an [`AxiomSource`] resolves, and the
//! rules compute their conclusion from earlier steps.

mod code;
mod oracle;
mod schema;
mod script;
mod search;

use std::fmt;

use thiserror::Error;

use crate::syntax::Formula;
use crate::Nat;

pub use code::{code_to_proof, proof_to_code, step_code};
pub use oracle::{FiniteTheory, HostDecider, HostEnumerator};
pub use schema::Schema;
pub use script::{ProofScript, ScriptError};
pub use search::prove_search;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    LogicalAxiom(Schema, Formula),
    TheoryAxiom(Nat),
    /// `ModusPonens(i, j)`: step `j` is `step i -> current`.
    ModusPonens(usize, usize),
    /// `Gen(i, v)`: current is `A v. step i`.
    Gen(usize, String),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::LogicalAxiom(s, _) => write!(f, "LA {s}"),
            Justification::TheoryAxiom(i) => write!(f, "AX {i}"),
            Justification::ModusPonens(i, j) => write!(f, "MP {i} {j}"),
            Justification::Gen(i, v) => write!(f, "GEN {i} {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Proof {
    pub steps: Vec<Justification>,
}

impl Proof {
    pub fn new(steps: Vec<Justification>) -> Self {
        Proof { steps }
    }

    /// The one-line proof citing theory axiom `index`.
    pub fn axiom(index: impl Into<Nat>) -> Self {
        Proof::new(vec![Justification::TheoryAxiom(index.into())])
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn code(&self) -> Nat {
        proof_to_code(self)
    }
}

/// The axiom oracle ran out of its step budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("axiom oracle exhausted its step budget")]
pub struct BudgetExhausted;

/// Resolves theory-axiom indices to sentences.
pub trait AxiomSource {
    /// The sentence at `index`, `None` when the index names no axiom.
    fn axiom(&mut self, index: &Nat) -> Result<Option<Formula>, BudgetExhausted>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("empty proof")]
    Empty,
    #[error("step {step}: reference {reference} does not point to an earlier step")]
    Malformed { step: usize, reference: usize },
    #[error("step {step}: {reason}")]
    Unjustified { step: usize, reason: String },
    #[error("conclusion `{found}` differs from target `{target}`")]
    WrongConclusion { found: Formula, target: Formula },
    #[error(transparent)]
    BudgetExhausted(#[from] BudgetExhausted),
}

impl CheckError {
    pub fn is_malformed(&self) -> bool {
        matches!(self, CheckError::Malformed { .. } | CheckError::Empty)
    }
}

/// The formulas a valid proof derives, one per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub formulas: Vec<Formula>,
}

impl Derivation {
    pub fn conclusion(&self) -> &Formula {
        self.formulas.last().expect("derivations are non-empty")
    }
}

/// Computes the formula of every step, failing on the first step that is
/// malformed or unjustified.
pub fn derive(p: &Proof, axioms: &mut dyn AxiomSource) -> Result<Derivation, CheckError> {
    if p.steps.is_empty() {
        return Err(CheckError::Empty);
    }
    let mut formulas: Vec<Formula> = Vec::with_capacity(p.steps.len());
    for (k, just) in p.steps.iter().enumerate() {
        let back = |r: usize| -> Result<usize, CheckError> {
            if r < k {
                Ok(r)
            } else {
                Err(CheckError::Malformed { step: k, reference: r })
            }
        };
        let unjustified = |reason: String| CheckError::Unjustified { step: k, reason };
        let f = match just {
            Justification::LogicalAxiom(schema, inst) => {
                schema.check(inst).map_err(unjustified)?;
                inst.clone()
            }
            Justification::TheoryAxiom(i) => match axioms.axiom(i)? {
                Some(f) => f,
                None => return Err(unjustified(format!("index {i} names no theory axiom"))),
            },
            Justification::ModusPonens(i, j) => {
                let (i, j) = (back(*i)?, back(*j)?);
                match &formulas[j] {
                    Formula::Imp(a, b) if **a == formulas[i] => (**b).clone(),
                    other => {
                        return Err(unjustified(format!(
                            "step {j} (`{other}`) is not an implication from step {i}"
                        )))
                    }
                }
            }
            Justification::Gen(i, v) => {
                let i = back(*i)?;
                if !crate::syntax::is_identifier(v) {
                    return Err(unjustified(format!("`{v}` is not a variable")));
                }
                Formula::forall(v, formulas[i].clone())
            }
        };
        formulas.push(f);
    }
    Ok(Derivation { formulas })
}

/// Checks that `p` is a valid proof of `target`.
pub fn check_proof(
    p: &Proof,
    axioms: &mut dyn AxiomSource,
    target: &Formula,
) -> Result<Derivation, CheckError> {
    let d = derive(p, axioms)?;
    if d.conclusion() != target {
        return Err(CheckError::WrongConclusion {
            found: d.conclusion().clone(),
            target: target.clone(),
        });
    }
    Ok(d)
}
