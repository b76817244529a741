//! The effective constructions: Henkin completion, Craig's trick, the Kleene
//! and Rosser sentences (with their proof searchers), the halting diagonal,
//! the Rice reduction, and a ¬-completeness probe.
//!
//! Everything here is a pure function of its inputs; budgets are explicit.

mod craig;
mod diagonal;
mod henkin;
mod rice;
mod searchers;
mod stream;

use std::fmt;

use thiserror::Error;

pub use craig::{Craig, HatAxioms};
pub use diagonal::{diagonal, ContradictionReport, DiagonalOutcome};
pub use henkin::{
    henkin_complete, henkinize, is_constant, replay_decide, BaseDecider, CompletionState, Polarity,
};
pub use rice::{detector_index, rice_reduce, RiceArtifact};
pub use searchers::{
    kleene_sentence, planted_kleene_enumerator, planted_rosser_enumerator, planted_sentence_enumerator,
    rosser_pair, searcher_source, KleeneArtifact, Plant, RosserArtifact,
};
pub use stream::{formula_from_index, open_formula_from_index};

use crate::syntax::Formula;
use crate::theory::QeError;
use crate::tpl::templates::TemplateError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the base theory derives the canonical contradiction")]
    InconsistentBase,
    #[error("base decider failed: {0}")]
    Decider(#[from] QeError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error("enumerator output {index} is not a sentence")]
    BadEnumeratorOutput { index: u64 },
}

/// A line-oriented `key: value` report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report(Vec<(String, String)>);

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.0.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.0 {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// Result of probing a decider for ¬-completeness on a list of sentences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProbeReport {
    pub checked: usize,
    /// Sentences where both `phi` and `~phi` were accepted.
    pub inconsistent: Vec<Formula>,
    /// Sentences where neither was accepted.
    pub undecided: Vec<Formula>,
    /// Inputs that failed to parse as sentences of the language.
    pub rejected: Vec<(String, String)>,
}

impl ProbeReport {
    pub fn violations(&self) -> usize {
        self.inconsistent.len() + self.undecided.len()
    }
}

/// For each sentence, checks that exactly one of `decide(phi)` and
/// `decide(~phi)` holds.
pub fn completeness_probe<D>(mut decide: D, sentences: &[&str]) -> ProbeReport
where
    D: FnMut(&Formula) -> bool,
{
    let mut report = ProbeReport::default();
    for text in sentences {
        let phi = match crate::syntax::parse_sentence(text) {
            Ok(phi) => phi,
            Err(e) => {
                report.rejected.push((text.to_string(), e.to_string()));
                continue;
            }
        };
        report.checked += 1;
        let pos = decide(&phi);
        let neg = decide(&Formula::not(phi.clone()));
        match (pos, neg) {
            (true, true) => report.inconsistent.push(phi),
            (false, false) => report.undecided.push(phi),
            _ => {}
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::decide_order_theory;

    #[test]
    fn order_theory_is_complete_on_the_stream() {
        let texts: Vec<String> = (0..300).map(|i| formula_from_index(i).to_string()).collect();
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let r = completeness_probe(|f| decide_order_theory(f).unwrap(), &refs);
        assert_eq!(r.checked, 300);
        assert_eq!(r.violations(), 0);
    }

    #[test]
    fn probe_flags_both_kinds_and_rejects_foreign_syntax() {
        let r = completeness_probe(|_| true, &["0 = 0"]);
        assert_eq!(r.inconsistent.len(), 1);
        let r = completeness_probe(|_| false, &["0 = 0"]);
        assert_eq!(r.undecided.len(), 1);
        let r = completeness_probe(|_| true, &["E x. E y. A z. (z = x | z = y) & f(x) = x"]);
        assert_eq!(r.checked, 0);
        assert_eq!(r.rejected.len(), 1);
    }

    #[test]
    fn report_lines() {
        let mut r = Report::new();
        r.push("n", 3).push("ok", true);
        assert_eq!(r.to_string(), "n: 3\nok: true\n");
        assert_eq!(r.get("ok"), Some("true"));
    }
}
