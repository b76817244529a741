use super::craig::{Craig, HatAxioms};
use super::{ConstructionError, Report};
use crate::codec::{decode_program_text, nat, program_code};
use crate::proof::{code_to_proof, derive, Proof};
use crate::syntax::{contradiction, parse_sentence, Formula};
use crate::tpl::templates::{instantiate_template, string_literal};
use crate::tpl::{Runtime, TplProgram};
use crate::Nat;

/// The enumerator `T'` of the Rice reduction: `T'_k` is `psi & ~psi` when `k`
/// codes a proof of it from the Craig axiomatization `T^` of the input
/// theory, and the `k`-th output of the second enumerator otherwise.
#[derive(Debug)]
pub struct RiceArtifact {
    pub program: TplProgram,
    pub psi: Formula,
    pub contradiction: Formula,
    pub t_code: Nat,
    pub s_code: Nat,
    craig: Craig,
}

/// The proof-code index at which a theory with `psi & ~psi` as its first
/// axiom makes the detector fire: the one-line proof citing `T^_1`.
pub fn detector_index() -> Nat {
    Proof::axiom(0u32).code()
}

impl RiceArtifact {
    pub fn code(&self) -> Nat {
        self.program.code()
    }

    /// `T'_k` as computed by the generated program.
    pub fn tpl_axiom(&self, rt: &mut Runtime, k: &Nat, budget: u64) -> Option<String> {
        let r = self.program.run_with(rt, k.clone(), budget);
        if !r.halted() {
            return None;
        }
        decode_program_text(&r.out.to_code())
    }

    /// `T'_k` computed on the host.
    pub fn host_axiom(&mut self, rt: &mut Runtime, k: &Nat) -> Option<Formula> {
        if let Some(p) = code_to_proof(k) {
            if let Ok(d) = derive(&p, &mut HatAxioms(&mut self.craig)) {
                if *d.conclusion() == self.contradiction {
                    return Some(self.contradiction.clone());
                }
            }
        }
        rt.run_output(&self.s_code, k, &nat(1_000_000_000_000_000))
            .and_then(|c| decode_program_text(&c))
            .and_then(|t| parse_sentence(&t).ok())
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("construction", "rice")
            .push("psi", &self.psi)
            .push("contradiction", &self.contradiction)
            .push("detector_index", detector_index())
            .push("t_prime_code", self.code());
        r
    }
}

pub fn rice_reduce(e_t: &Nat, e_s: &Nat, psi: &Formula) -> Result<RiceArtifact, ConstructionError> {
    let craig = Craig::new(e_t)?;
    let contra = contradiction(psi);
    let hat_code = craig.hat_enumerator.code().to_string();
    let program = instantiate_template(
        "rice",
        &[
            ("CONTRA", &string_literal(&contra.to_string())),
            ("T_HAT_CODE", &hat_code),
            ("S_CODE", &e_s.to_string()),
        ],
    )?;
    debug_assert_eq!(program.code(), program_code(program.source()));
    Ok(RiceArtifact {
        program,
        psi: psi.clone(),
        contradiction: contra,
        t_code: e_t.clone(),
        s_code: e_s.clone(),
        craig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::planted_sentence_enumerator;
    use crate::theory::{enumerator_code, Theory};

    #[test]
    fn consistent_input_leaves_s_unchanged() {
        let psi = parse_sentence("0 < #1").unwrap();
        let mut a = rice_reduce(&enumerator_code(Theory::T), &enumerator_code(Theory::S), &psi).unwrap();
        let mut rt = Runtime::new();
        for k in 0..30u64 {
            let k = nat(k);
            let want = rt
                .run_output(&a.s_code.clone(), &k, &nat(10_000_000))
                .and_then(|c| decode_program_text(&c));
            assert_eq!(a.tpl_axiom(&mut rt, &k, 100_000_000), want);
            assert_eq!(a.host_axiom(&mut rt, &k).map(|f| f.to_string()), want);
        }
    }

    #[test]
    fn planted_contradiction_fires_at_the_detector_index() {
        let psi = parse_sentence("0 < #1").unwrap();
        let contra = contradiction(&psi);
        let (_, e_t) = planted_sentence_enumerator(&enumerator_code(Theory::T), &contra).unwrap();
        let mut a = rice_reduce(&e_t, &enumerator_code(Theory::S), &psi).unwrap();
        let k = detector_index();
        assert_eq!(k, nat(10));
        let mut rt = Runtime::new();
        assert_eq!(a.tpl_axiom(&mut rt, &k, 100_000_000), Some(contra.to_string()));
        assert_eq!(a.host_axiom(&mut rt, &k), Some(contra));
    }
}
