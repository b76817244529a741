use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::{AxiomSource, BudgetExhausted};
use crate::codec::decode_program_text;
use crate::syntax::{parse_sentence, Formula};
use crate::Nat;

/// An explicit finite list of axioms; index `i` is the `i`-th sentence.
#[derive(Debug, Clone, Default)]
pub struct FiniteTheory {
    pub axioms: Vec<Formula>,
}

impl FiniteTheory {
    pub fn new(axioms: Vec<Formula>) -> Self {
        FiniteTheory { axioms }
    }
}

impl AxiomSource for FiniteTheory {
    fn axiom(&mut self, index: &Nat) -> Result<Option<Formula>, BudgetExhausted> {
        Ok(index.to_usize().and_then(|i| self.axioms.get(i).cloned()))
    }
}

/// A decidable axiom set: the index of an axiom is the program code of its
/// canonical text, and the index is accepted iff the predicate holds.
pub struct HostDecider<F> {
    member: F,
}

impl<F: FnMut(&Formula) -> bool> HostDecider<F> {
    pub fn new(member: F) -> Self {
        HostDecider { member }
    }
}

impl<F: FnMut(&Formula) -> bool> AxiomSource for HostDecider<F> {
    fn axiom(&mut self, index: &Nat) -> Result<Option<Formula>, BudgetExhausted> {
        let Some(text) = decode_program_text(index) else {
            return Ok(None);
        };
        let Ok(f) = parse_sentence(&text) else {
            return Ok(None);
        };
        Ok((f.to_string() == text && (self.member)(&f)).then_some(f))
    }
}

/// A total host-side enumeration `index -> sentence`, memoized.
pub struct HostEnumerator<F> {
    enumerate: F,
    cache: HashMap<Nat, Formula>,
}

impl<F: FnMut(&Nat) -> Formula> HostEnumerator<F> {
    pub fn new(enumerate: F) -> Self {
        HostEnumerator {
            enumerate,
            cache: HashMap::new(),
        }
    }
}

impl<F: FnMut(&Nat) -> Formula> AxiomSource for HostEnumerator<F> {
    fn axiom(&mut self, index: &Nat) -> Result<Option<Formula>, BudgetExhausted> {
        if let Some(f) = self.cache.get(index) {
            return Ok(Some(f.clone()));
        }
        let f = (self.enumerate)(index);
        self.cache.insert(index.clone(), f.clone());
        Ok(Some(f))
    }
}
