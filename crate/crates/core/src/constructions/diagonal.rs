use super::{ConstructionError, Report};
use crate::codec::{nat, program_code};
use crate::proof::{prove_search, HostEnumerator};
use crate::syntax::halts_sentence;
use crate::theory::{enumerate_axioms_with, Theory};
use crate::tpl::templates::{splice, DIAGONAL};
use crate::tpl::{Runtime, TplProgram};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalOutcome {
    /// The decider said "not provable" and the diagonal program halted.
    Refuted,
    /// The decider said "provable"; no halt and no proof within budget.
    UnrefutedWithinBudget,
    /// The decider did not answer within its budget.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContradictionReport {
    pub decider_code: Nat,
    pub diagonal_code: Nat,
    pub diagonal_source: String,
    /// The decider's verdict on `E z. tau(#e, #e, z)`: `true` = provable.
    pub claimed: Option<bool>,
    /// Steps after which the diagonal program halted on its own code.
    pub observed_halt: Option<u64>,
    pub simulation_budget: u64,
    /// A `t` with `tau(e, e, t)` true, refuting "not provable".
    pub witness_step: Option<u64>,
    /// `(code budget, proof found)` of the bounded search for the sentence.
    pub search: Option<(Nat, bool)>,
    pub outcome: DiagonalOutcome,
}

impl ContradictionReport {
    pub fn refuted(&self) -> bool {
        self.outcome == DiagonalOutcome::Refuted && self.witness_step.is_some()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        let opt = |o: Option<String>| o.unwrap_or_else(|| "none".into());
        r.push("construction", "diagonal")
            .push("decider_code", &self.decider_code)
            .push("diagonal_code", &self.diagonal_code)
            .push(
                "claimed",
                opt(self.claimed.map(|b| if b { "provable" } else { "unprovable" }.into())),
            )
            .push("simulation_budget", self.simulation_budget)
            .push("observed_halt", opt(self.observed_halt.map(|t| t.to_string())))
            .push("refuted", self.refuted())
            .push("witness_step", opt(self.witness_step.map(|t| t.to_string())));
        if let Some((budget, found)) = &self.search {
            r.push("search_code_budget", budget).push("search_found", found);
        }
        r.push(
            "outcome",
            match self.outcome {
                DiagonalOutcome::Refuted => "refuted",
                DiagonalOutcome::UnrefutedWithinBudget => "unrefuted-within-budget",
                DiagonalOutcome::Inconclusive => "inconclusive",
            },
        );
        r
    }
}

/// Builds the program `P_e` that halts on `x` iff decider `d` answers 0 on
/// `E z. tau(#x, #x, z)`, and confronts `d` with `x = e`.
pub fn diagonal(
    d: &Nat,
    decider_budget: u64,
    simulation_budget: u64,
    code_budget: &Nat,
) -> Result<ContradictionReport, ConstructionError> {
    let source = splice(
        DIAGONAL,
        &[
            ("DECIDER_CODE", &d.to_string()),
            ("DECIDER_BUDGET", &decider_budget.to_string()),
        ],
    )?;
    TplProgram::parse(source.as_bytes()).map_err(crate::tpl::templates::TemplateError::from)?;
    let e = program_code(source.as_bytes());
    let sentence = halts_sentence(&e, &e);
    let mut rt = Runtime::new();

    let verdict = rt.run_code(d, &program_code(sentence.to_string().as_bytes()), decider_budget);
    let claimed = verdict.halted().then(|| verdict.out.to_code() != Nat::default());

    let mut report = ContradictionReport {
        decider_code: d.clone(),
        diagonal_code: e.clone(),
        diagonal_source: source,
        claimed,
        observed_halt: None,
        simulation_budget,
        witness_step: None,
        search: None,
        outcome: DiagonalOutcome::Inconclusive,
    };
    let Some(claimed) = claimed else {
        return Ok(report);
    };

    let run = rt.run_code(&e, &e, simulation_budget);
    report.observed_halt = run.halted().then_some(run.steps);
    if !claimed {
        if let Some(t) = report.observed_halt {
            debug_assert!(rt.tau(&e, &e, &nat(t)));
            report.witness_step = Some(t);
            report.outcome = DiagonalOutcome::Refuted;
        }
        return Ok(report);
    }

    let mut axioms = HostEnumerator::new(|i: &Nat| enumerate_axioms_with(Theory::T, &mut rt, i));
    let found = prove_search(&mut axioms, &sentence, code_budget)
        .expect("host enumeration of T has no budget")
        .is_some();
    report.search = Some((code_budget.clone(), found));
    if !found {
        report.outcome = DiagonalOutcome::UnrefutedWithinBudget;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(src: &str) -> Nat {
        program_code(src.as_bytes())
    }

    #[test]
    fn constant_zero_is_refuted() {
        let r = diagonal(&code("out = 0;"), 1000, 1_000_000, &nat(10_000)).unwrap();
        assert!(r.refuted());
        assert_eq!(r.claimed, Some(false));
        let t = r.witness_step.unwrap();
        assert!(crate::tpl::tau(&r.diagonal_code, &r.diagonal_code, &nat(t)));
        assert!(!crate::tpl::tau(&r.diagonal_code, &r.diagonal_code, &nat(t - 1)));
    }

    #[test]
    fn constant_one_is_unrefuted_with_failed_search() {
        let r = diagonal(&code("out = 1;"), 1000, 100_000, &nat(10_000)).unwrap();
        assert!(!r.refuted());
        assert_eq!(r.outcome, DiagonalOutcome::UnrefutedWithinBudget);
        assert_eq!(r.search, Some((nat(10_000), false)));
        assert_eq!(r.observed_halt, None);
    }

    #[test]
    fn silent_decider_is_inconclusive() {
        let r = diagonal(&code("while (1) { }"), 1000, 1000, &nat(100)).unwrap();
        assert_eq!(r.outcome, DiagonalOutcome::Inconclusive);
        assert!(r.report().to_string().contains("outcome: inconclusive"));
    }
}
