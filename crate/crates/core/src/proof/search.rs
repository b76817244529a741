use super::{code_to_proof, derive, AxiomSource, BudgetExhausted, CheckError, Proof};
use crate::syntax::Formula;
use crate::Nat;

/// The least code `c <= code_budget` that decodes to a valid proof of
/// `target`, if any.
///
/// Codes are visited in increasing order. Only codes in the range of the
/// pairing function can decode, and every such code is `σ² + len` with
/// `len + body = σ`; lengths that [`code_to_proof`] rejects for their body
/// size are skipped without being decoded. The result is exactly that of
/// testing `c = 0, 1, 2, …` one by one.
pub fn prove_search(
    axioms: &mut dyn AxiomSource,
    target: &Formula,
    code_budget: &Nat,
) -> Result<Option<(Nat, Proof)>, BudgetExhausted> {
    let max_sigma = num_integer::Roots::sqrt(code_budget);
    let mut sigma = Nat::from(0u32);
    while sigma <= max_sigma {
        let square = &sigma * &sigma;
        let cap = sigma.bits() + 1;
        let mut len = Nat::from(1u32);
        while len <= sigma && len <= Nat::from(cap) {
            let c = &square + &len;
            if &c > code_budget {
                break;
            }
            if let Some(p) = code_to_proof(&c) {
                match derive(&p, axioms) {
                    Ok(d) if d.conclusion() == target => return Ok(Some((c, p))),
                    Err(CheckError::BudgetExhausted(b)) => return Err(b),
                    _ => {}
                }
            }
            len += 1u32;
        }
        sigma += 1u32;
    }
    Ok(None)
}
