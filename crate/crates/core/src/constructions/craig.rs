use num_traits::ToPrimitive;

use super::{ConstructionError, Report};
use crate::codec::{decode_program_text, nat, program_code};
use crate::proof::{AxiomSource, BudgetExhausted, Justification, Proof, Schema};
use crate::syntax::{parse_sentence, Formula};
use crate::tpl::templates::{instantiate_template, HUGE_BUDGET};
use crate::tpl::{budget_u64, Runtime, TplProgram};
use crate::Nat;

/// Craig's trick for an enumerator `E`: the set `T^` of conjunctions
/// `T_0 & ... & T_i` (left-nested, `T^_1 = T_0` bare) is decidable and
/// proves the same sentences as `{T_i}`.
pub struct Craig {
    pub enumerator_code: Nat,
    /// TPL program deciding membership in `T^` on sentence codes.
    pub decider: TplProgram,
    /// TPL enumerator: index `i` is `T^_{i+1}`.
    pub hat_enumerator: TplProgram,
    rt: Runtime,
    axioms: Vec<Option<Formula>>,
}

impl std::fmt::Debug for Craig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Craig")
            .field("enumerator_bits", &self.enumerator_code.bits())
            .finish_non_exhaustive()
    }
}

impl Craig {
    pub fn new(e: &Nat) -> Result<Self, ConstructionError> {
        let code = e.to_string();
        Ok(Craig {
            enumerator_code: e.clone(),
            decider: instantiate_template("craig_decider", &[("ENUM_CODE", &code)])?,
            hat_enumerator: instantiate_template("craig_enum", &[("ENUM_CODE", &code)])?,
            rt: Runtime::new(),
            axioms: Vec::new(),
        })
    }

    /// `T_i`, the `i`-th output of the enumerator, if it is a sentence.
    pub fn axiom(&mut self, i: usize) -> Option<Formula> {
        while self.axioms.len() <= i {
            let k = self.axioms.len() as u64;
            let budget = budget_u64(&HUGE_BUDGET.parse().expect("numeric constant"));
            let out = self.rt.run_output(&self.enumerator_code, &nat(k), &nat(budget));
            let f = out
                .and_then(|c| decode_program_text(&c))
                .and_then(|t| parse_sentence(&t).ok());
            self.axioms.push(f);
        }
        self.axioms[i].clone()
    }

    pub fn axiom_or_err(&mut self, i: usize) -> Result<Formula, ConstructionError> {
        self.axiom(i).ok_or(ConstructionError::BadEnumeratorOutput { index: i as u64 })
    }

    /// `T^_m` for `m >= 1`.
    pub fn hat(&mut self, m: usize) -> Option<Formula> {
        assert!(m >= 1, "T^ is indexed from 1");
        let mut acc = self.axiom(0)?;
        for i in 1..m {
            acc = Formula::and(acc, self.axiom(i)?);
        }
        Some(acc)
    }

    /// Host-side membership in `T^`.
    pub fn contains(&mut self, psi: &Formula) -> bool {
        let mut spine = 0;
        let mut cur = psi;
        while let Formula::And(l, _) = cur {
            spine += 1;
            cur = l;
        }
        let Some(mut acc) = self.axiom(0) else { return false };
        for m in 1..=spine + 1 {
            if m > 1 {
                match self.axiom(m - 1) {
                    Some(t) => acc = Formula::and(acc, t),
                    None => return false,
                }
            }
            if &acc == psi {
                return true;
            }
        }
        false
    }

    /// Membership in `T^` as computed by the generated TPL decider.
    pub fn tpl_contains(&mut self, psi: &Formula, budget: u64) -> Option<bool> {
        let code = program_code(psi.to_string().as_bytes());
        let r = self.decider.run_with(&mut self.rt, code, budget);
        r.halted().then(|| r.out.to_code().to_u32() == Some(1))
    }

    /// A proof of `T_i` from `T^`, citing axioms by the code of their text.
    pub fn witness_from_hat(&mut self, i: usize) -> Result<Proof, ConstructionError> {
        let cite = |f: &Formula| Justification::TheoryAxiom(program_code(f.to_string().as_bytes()));
        if i == 0 {
            let t0 = self.axiom_or_err(0)?;
            return Ok(Proof::new(vec![cite(&t0)]));
        }
        let conj = self.hat(i + 1).ok_or(ConstructionError::BadEnumeratorOutput { index: i as u64 })?;
        let Formula::And(_, ti) = &conj else { unreachable!("T^_(i+1) is a conjunction") };
        let elim = Formula::imp(conj.clone(), (**ti).clone());
        Ok(Proof::new(vec![
            cite(&conj),
            Justification::LogicalAxiom(Schema::And2, elim),
            Justification::ModusPonens(0, 1),
        ]))
    }

    /// A proof of `T^_m` from `{T_i}`, citing axioms by enumerator index.
    pub fn witness_from_t(&mut self, m: usize) -> Result<Proof, ConstructionError> {
        assert!(m >= 1, "T^ is indexed from 1");
        let mut steps = vec![Justification::TheoryAxiom(nat(0))];
        let mut hat = self.axiom_or_err(0)?;
        let mut hat_step = 0;
        for k in 1..m {
            let tk = self.axiom_or_err(k)?;
            let next = Formula::and(hat.clone(), tk.clone());
            let intro = Formula::imp(hat.clone(), Formula::imp(tk.clone(), next.clone()));
            let base = steps.len();
            steps.push(Justification::TheoryAxiom(nat(k as u64)));
            steps.push(Justification::LogicalAxiom(Schema::And3, intro));
            steps.push(Justification::ModusPonens(hat_step, base + 1));
            steps.push(Justification::ModusPonens(base, base + 2));
            hat = next;
            hat_step = base + 3;
        }
        Ok(Proof::new(steps))
    }

    pub fn report(&mut self) -> Report {
        let mut r = Report::new();
        r.push("construction", "craig")
            .push("enumerator_code_bits", self.enumerator_code.bits())
            .push("decider_code", self.decider.code())
            .push("hat_enumerator_code", self.hat_enumerator.code());
        for m in 1..=3 {
            if let Some(h) = self.hat(m) {
                r.push(&format!("hat_{m}"), h);
            }
        }
        r
    }
}

/// `T^` as an indexed axiom source: index `i` is `T^_{i+1}`.
pub struct HatAxioms<'a>(pub &'a mut Craig);

impl AxiomSource for HatAxioms<'_> {
    fn axiom(&mut self, index: &Nat) -> Result<Option<Formula>, BudgetExhausted> {
        Ok(index.to_usize().and_then(|i| self.0.hat(i + 1)))
    }
}
