//! Proof-searcher programs for the Kleene and Rosser sentences, and
//! enumerators with a sentence planted at index 0.
//!
//! A planted enumerator for a Rosser or Kleene sentence has to mention the
//! codes of searchers that are themselves built over the planted
//! enumerator. The program is therefore self-reproducing: its first line is
//! `d = <code of the rest>;` and the rest rebuilds the full text from `d`.

use super::{ConstructionError, Report};
use crate::codec::program_code;
use crate::syntax::{kleene_sentence_for, rosser_sentence, Formula};
use crate::tpl::templates::{self, splice, string_literal};
use crate::tpl::TplProgram;
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plant {
    Pos,
    Neg,
}

impl Plant {
    fn word(self) -> &'static str {
        match self {
            Plant::Pos => "pos",
            Plant::Neg => "neg",
        }
    }
}

impl std::str::FromStr for Plant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pos" => Ok(Plant::Pos),
            "neg" => Ok(Plant::Neg),
            other => Err(format!("unknown polarity `{other}` (expected pos or neg)")),
        }
    }
}

/// Source of the Rosser searcher over enumerator `e`.
pub fn searcher_source(e: &Nat, polarity: Plant) -> Result<String, ConstructionError> {
    let code = e.to_string();
    let text = splice(
        templates::SEARCHER,
        &[("ENUM_CODE", &code), ("POLARITY", polarity.word())],
    )?;
    TplProgram::parse(text.as_bytes()).map_err(templates::TemplateError::from)?;
    Ok(text)
}

fn kleene_searcher_source(e: &Nat) -> Result<String, ConstructionError> {
    let text = splice(templates::KLEENE_SEARCHER, &[("ENUM_CODE", &e.to_string())])?;
    TplProgram::parse(text.as_bytes()).map_err(templates::TemplateError::from)?;
    Ok(text)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RosserArtifact {
    /// Code of the searcher for refutations.
    pub n: Nat,
    /// Code of the searcher for proofs.
    pub m: Nat,
    pub sentence: Formula,
    pub enumerator_code: Nat,
    pub pos_source: String,
    pub neg_source: String,
}

impl RosserArtifact {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("construction", "rosser")
            .push("enumerator_code_bits", self.enumerator_code.bits())
            .push("n", &self.n)
            .push("m", &self.m)
            .push("n_bits", self.n.bits())
            .push("m_bits", self.m.bits())
            .push("sentence", &self.sentence);
        r
    }
}

/// The two dueling searchers over `e` and the sentence `phi_{n,m}`, where
/// `m` searches proofs and `n` searches refutations.
pub fn rosser_pair(e: &Nat) -> Result<RosserArtifact, ConstructionError> {
    let pos_source = searcher_source(e, Plant::Pos)?;
    let neg_source = searcher_source(e, Plant::Neg)?;
    let m = program_code(pos_source.as_bytes());
    let n = program_code(neg_source.as_bytes());
    Ok(RosserArtifact {
        sentence: rosser_sentence(&n, &m),
        n,
        m,
        enumerator_code: e.clone(),
        pos_source,
        neg_source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleeneArtifact {
    pub m: Nat,
    pub sentence: Formula,
    pub source: String,
}

impl KleeneArtifact {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push("construction", "kleene")
            .push("m", &self.m)
            .push("m_bits", self.m.bits())
            .push("sentence", &self.sentence);
        r
    }
}

/// The searcher `m` for proofs of `~E z. tau(#p, #p, z)` over `e`, and the
/// sentence for `p = m`.
pub fn kleene_sentence(e: &Nat) -> Result<KleeneArtifact, ConstructionError> {
    let source = kleene_searcher_source(e)?;
    let m = program_code(source.as_bytes());
    Ok(KleeneArtifact {
        sentence: kleene_sentence_for(&m),
        m,
        source,
    })
}

/// The template text split around its single `{{ENUM_CODE}}`.
fn split_at_enum(text: &str) -> (String, String) {
    let (pre, post) = text
        .split_once("{{ENUM_CODE}}")
        .expect("searcher templates mention the enumerator once");
    (pre.to_string(), post.to_string())
}

fn close_quine(rest: String) -> (String, Nat) {
    let full = format!("d = {};\n{}", program_code(rest.as_bytes()), rest);
    let code = program_code(full.as_bytes());
    (full, code)
}

/// Enumerator whose index 0 is `phi_{n,m}` (or its negation) for the Rosser
/// pair built over this very enumerator, followed by `base` shifted by one.
pub fn planted_rosser_enumerator(base: &Nat, plant: Plant) -> Result<(String, Nat), ConstructionError> {
    let pos = splice(templates::SEARCHER, &[("POLARITY", "pos"), ("ENUM_CODE", "{{ENUM_CODE}}")])?;
    let neg = splice(templates::SEARCHER, &[("POLARITY", "neg"), ("ENUM_CODE", "{{ENUM_CODE}}")])?;
    let (pos_pre, pos_post) = split_at_enum(&pos);
    let (neg_pre, neg_post) = split_at_enum(&neg);
    let base = base.to_string();
    let rest = splice(
        templates::PLANT_ROSSER,
        &[
            ("BASE_CODE", &base),
            ("POS_PRE", &string_literal(&pos_pre)),
            ("POS_POST", &string_literal(&pos_post)),
            ("NEG_PRE", &string_literal(&neg_pre)),
            ("NEG_POST", &string_literal(&neg_post)),
            ("PLANT", plant.word()),
        ],
    )?;
    let (full, code) = close_quine(rest);
    TplProgram::parse(full.as_bytes()).map_err(templates::TemplateError::from)?;
    Ok((full, code))
}

/// Enumerator whose index 0 is `~E z. tau(#m, #m, z)` for the Kleene
/// searcher `m` built over this very enumerator, followed by `base`.
pub fn planted_kleene_enumerator(base: &Nat) -> Result<(String, Nat), ConstructionError> {
    let (pre, post) = split_at_enum(templates::KLEENE_SEARCHER);
    let rest = splice(
        templates::PLANT_KLEENE,
        &[
            ("BASE_CODE", &base.to_string()),
            ("PRE", &string_literal(&pre)),
            ("POST", &string_literal(&post)),
        ],
    )?;
    let (full, code) = close_quine(rest);
    TplProgram::parse(full.as_bytes()).map_err(templates::TemplateError::from)?;
    Ok((full, code))
}

/// Enumerator whose index 0 is `sentence`, followed by `base`.
pub fn planted_sentence_enumerator(base: &Nat, sentence: &Formula) -> Result<(String, Nat), ConstructionError> {
    let text = splice(
        templates::PLANT_SENTENCE,
        &[
            ("BASE_CODE", &base.to_string()),
            ("SENTENCE", &string_literal(&sentence.to_string())),
        ],
    )?;
    TplProgram::parse(text.as_bytes()).map_err(templates::TemplateError::from)?;
    let code = program_code(text.as_bytes());
    Ok((text, code))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{decode_program_text, nat};
    use crate::theory::{enumerator_code, Theory};
    use crate::tpl::Runtime;

    fn output(rt: &mut Runtime, e: &Nat, i: u64) -> String {
        let r = rt.run_code(e, &nat(i), 10_000_000);
        assert!(r.halted(), "{:?}", r.status);
        decode_program_text(&r.out.to_code()).unwrap()
    }

    #[test]
    fn rosser_pair_shape() {
        let e = enumerator_code(Theory::S);
        let a = rosser_pair(&e).unwrap();
        assert_ne!(a.n, a.m);
        assert_eq!(a.sentence, rosser_sentence(&a.n, &a.m));
        assert!(a.sentence.is_sentence());
        assert!(a.pos_source.contains(&e.to_string()));
    }

    #[test]
    fn planted_rosser_index_zero_is_its_own_sentence() {
        let base = enumerator_code(Theory::S);
        let mut rt = Runtime::new();
        for plant in [Plant::Pos, Plant::Neg] {
            let (_, e) = planted_rosser_enumerator(&base, plant).unwrap();
            let a = rosser_pair(&e).unwrap();
            let want = match plant {
                Plant::Pos => a.sentence.clone(),
                Plant::Neg => Formula::not(a.sentence.clone()),
            };
            assert_eq!(output(&mut rt, &e, 0), want.to_string());
            assert_eq!(output(&mut rt, &e, 7), output(&mut rt, &base, 6));
        }
    }

    #[test]
    fn planted_kleene_index_zero_is_its_own_sentence() {
        let base = enumerator_code(Theory::S);
        let (_, e) = planted_kleene_enumerator(&base).unwrap();
        let k = kleene_sentence(&e).unwrap();
        let mut rt = Runtime::new();
        assert_eq!(output(&mut rt, &e, 0), k.sentence.to_string());
        assert!(k.sentence.to_string().starts_with("~E z. tau(#"));
    }

    #[test]
    fn planted_sentence() {
        let base = enumerator_code(Theory::T);
        let s = crate::syntax::parse_sentence("0 = 0 & ~(0 = 0)").unwrap();
        let (_, e) = planted_sentence_enumerator(&base, &s).unwrap();
        let mut rt = Runtime::new();
        assert_eq!(output(&mut rt, &e, 0), s.to_string());
        assert_eq!(output(&mut rt, &e, 1), output(&mut rt, &base, 0));
    }
}
