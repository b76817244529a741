//! Text proof scripts: one step per line,
//!
//! ```text
//! 0. A x. ~(x < 0) ; AX 4
//! 1. (A x. ~(x < 0)) -> ~(#3 < 0) ; LA Q1
//! 2. ~(#3 < 0) ; MP 0 1
//! ```
//!
//! Steps are numbered from 0. `LA` lines use the line's formula as the
//! schema instance; an optional bracketed copy `LA Q1 [<formula>]` must agree
//! with it. Blank lines and lines starting with `#` are ignored.

use std::fmt;

use thiserror::Error;

use super::{derive, AxiomSource, CheckError, Derivation, Justification, Proof, Schema};
use crate::syntax::{is_identifier, parse_formula, Formula};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("step {step}: script claims `{claimed}` but the justification yields `{derived}`")]
    Mismatch {
        step: usize,
        claimed: Formula,
        derived: Formula,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub steps: Vec<(Formula, Justification)>,
}

impl ProofScript {
    pub fn parse(text: &str) -> Result<Self, ScriptError> {
        let mut steps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fail = |msg: String| ScriptError::Syntax {
                line: lineno + 1,
                msg,
            };
            let (num, rest) = line
                .split_once('.')
                .ok_or_else(|| fail("expected `k. <formula> ; <justification>`".into()))?;
            let k: usize = num
                .trim()
                .parse()
                .map_err(|_| fail(format!("bad step number `{}`", num.trim())))?;
            if k != steps.len() {
                return Err(fail(format!("expected step {}, found {k}", steps.len())));
            }
            let (ftext, jtext) = rest
                .rsplit_once(';')
                .ok_or_else(|| fail("missing `;` before the justification".into()))?;
            let formula = parse_formula(ftext.trim()).map_err(|e| fail(e.to_string()))?;
            let just = parse_justification(jtext.trim(), &formula).map_err(fail)?;
            steps.push((formula, just));
        }
        if steps.is_empty() {
            return Err(ScriptError::Syntax {
                line: 0,
                msg: "script has no steps".into(),
            });
        }
        Ok(ProofScript { steps })
    }

    pub fn to_proof(&self) -> Proof {
        Proof::new(self.steps.iter().map(|(_, j)| j.clone()).collect())
    }

    /// Derives the proof and checks every claimed formula against it.
    pub fn check(&self, axioms: &mut dyn AxiomSource) -> Result<Derivation, ScriptError> {
        let d = derive(&self.to_proof(), axioms)?;
        for (step, ((claimed, _), derived)) in self.steps.iter().zip(&d.formulas).enumerate() {
            if claimed != derived {
                return Err(ScriptError::Mismatch {
                    step,
                    claimed: claimed.clone(),
                    derived: derived.clone(),
                });
            }
        }
        Ok(d)
    }

    /// The script of a proof with its derived formulas.
    pub fn from_derivation(p: &Proof, d: &Derivation) -> Self {
        ProofScript {
            steps: d.formulas.iter().cloned().zip(p.steps.iter().cloned()).collect(),
        }
    }

    pub fn conclusion(&self) -> &Formula {
        &self.steps.last().expect("scripts are non-empty").0
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (formula, just)) in self.steps.iter().enumerate() {
            writeln!(f, "{k}. {formula} ; {just}")?;
        }
        Ok(())
    }
}

fn parse_justification(text: &str, formula: &Formula) -> Result<Justification, String> {
    let mut words = text.split_whitespace();
    let kind = words.next().ok_or("missing justification")?;
    let index = |w: Option<&str>| -> Result<usize, String> {
        let w = w.ok_or("missing step reference")?;
        w.parse().map_err(|_| format!("bad step reference `{w}`"))
    };
    let just = match kind.to_ascii_uppercase().as_str() {
        "LA" => {
            let name = words.next().ok_or("missing schema name")?;
            let schema = Schema::from_name(name).ok_or(format!("unknown schema `{name}`"))?;
            let rest: Vec<&str> = words.by_ref().collect();
            if !rest.is_empty() {
                let copy = rest.join(" ");
                let inner = copy
                    .strip_prefix('[')
                    .and_then(|c| c.strip_suffix(']'))
                    .ok_or("schema instance must be written as `[<formula>]`")?;
                let inst = parse_formula(inner.trim()).map_err(|e| e.to_string())?;
                if inst != *formula {
                    return Err("bracketed instance differs from the step formula".into());
                }
            }
            return Ok(Justification::LogicalAxiom(schema, formula.clone()));
        }
        "AX" => {
            let w = words.next().ok_or("missing axiom index")?;
            let n: Nat = w.parse().map_err(|_| format!("bad axiom index `{w}`"))?;
            Justification::TheoryAxiom(n)
        }
        "MP" => Justification::ModusPonens(index(words.next())?, index(words.next())?),
        "GEN" => {
            let i = index(words.next())?;
            let v = words.next().ok_or("missing variable")?;
            if !is_identifier(v) {
                return Err(format!("`{v}` is not a variable"));
            }
            Justification::Gen(i, v.to_string())
        }
        other => return Err(format!("unknown justification `{other}`")),
    };
    if let Some(extra) = words.next() {
        return Err(format!("unexpected `{extra}`"));
    }
    Ok(just)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::FiniteTheory;
    use crate::syntax::order_axioms;

    #[test]
    fn instantiate_a5() {
        let text = "\
# A5 at 3
0. A x. ~(x < 0) ; AX 4
1. (A x. ~(x < 0)) -> ~(#3 < 0) ; LA Q1
2. ~(#3 < 0) ; MP 0 1
";
        let s = ProofScript::parse(text).unwrap();
        let mut th = FiniteTheory::new(order_axioms().to_vec());
        let d = s.check(&mut th).unwrap();
        assert_eq!(d.conclusion().to_string(), "~(#3 < 0)");
        assert_eq!(ProofScript::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn claimed_formula_must_match() {
        let s = ProofScript::parse("0. A x. x < 0 ; AX 4").unwrap();
        let mut th = FiniteTheory::new(order_axioms().to_vec());
        assert!(matches!(s.check(&mut th), Err(ScriptError::Mismatch { .. })));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let err = ProofScript::parse("0. 0 = 0 ; AX 0\n2. 0 = 0 ; AX 0").unwrap_err();
        assert!(matches!(err, ScriptError::Syntax { line: 2, .. }));
        assert!(ProofScript::parse("0. 0 = 0 ; LA P9").is_err());
        assert!(ProofScript::parse("0. x = x ; LA E1 [x = x]").is_ok());
        assert!(ProofScript::parse("0. x = x ; LA E1 [y = y]").is_err());
    }
}
