//! Vendored TPL sources and `{{NAME}}` placeholder splicing.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{TplProgram, TplSyntaxError};

pub const S_AXIOMS: &str = include_str!("../../templates/s_axioms.tpl");
pub const T_AXIOMS: &str = include_str!("../../templates/t_axioms.tpl");
pub const SEARCHER: &str = include_str!("../../templates/searcher.tpl");
pub const KLEENE_SEARCHER: &str = include_str!("../../templates/kleene_searcher.tpl");
pub const PLANT_ROSSER: &str = include_str!("../../templates/plant_rosser.tpl");
pub const PLANT_KLEENE: &str = include_str!("../../templates/plant_kleene.tpl");
pub const CRAIG_ENUM: &str = include_str!("../../templates/craig_enum.tpl");
pub const CRAIG_DECIDER: &str = include_str!("../../templates/craig_decider.tpl");
pub const RICE: &str = include_str!("../../templates/rice.tpl");
pub const DIAGONAL: &str = include_str!("../../templates/diagonal.tpl");
pub const PLANT_SENTENCE: &str = include_str!("../../templates/plant_sentence.tpl");

/// Every vendored template, by name.
pub const ALL: [(&str, &str); 11] = [
    ("s_axioms", S_AXIOMS),
    ("t_axioms", T_AXIOMS),
    ("searcher", SEARCHER),
    ("kleene_searcher", KLEENE_SEARCHER),
    ("plant_rosser", PLANT_ROSSER),
    ("plant_kleene", PLANT_KLEENE),
    ("craig_enum", CRAIG_ENUM),
    ("craig_decider", CRAIG_DECIDER),
    ("rice", RICE),
    ("diagonal", DIAGONAL),
    ("plant_sentence", PLANT_SENTENCE),
];

/// Step bound used by generated programs for inner runs of total programs.
pub const HUGE_BUDGET: &str = "1000000000000000";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("unknown template `{0}`")]
    Unknown(String),
    #[error("placeholder {{{{{0}}}}} has no binding")]
    Unbound(String),
    #[error("unterminated placeholder at byte {0}")]
    Unterminated(usize),
    #[error("instantiated template does not parse: {0}")]
    Syntax(#[from] TplSyntaxError),
}

pub fn template(name: &str) -> Result<&'static str, TemplateError> {
    ALL.iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| *src)
        .ok_or_else(|| TemplateError::Unknown(name.to_string()))
}

/// Placeholder names occurring in `text`, in order of first occurrence.
pub fn placeholders(text: &str) -> Result<Vec<String>, TemplateError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    while let Some(start) = rest.find("{{") {
        let after = &rest[start + 2..];
        let end = after.find("}}").ok_or(TemplateError::Unterminated(offset + start))?;
        let name = &after[..end];
        if seen.insert(name.to_string()) {
            out.push(name.to_string());
        }
        let consumed = start + 2 + end + 2;
        rest = &rest[consumed..];
        offset += consumed;
    }
    Ok(out)
}

/// Replaces each `{{NAME}}` in `text` by its binding, in a single pass (the
/// spliced text is not rescanned).
pub fn splice(text: &str, bindings: &[(&str, &str)]) -> Result<String, TemplateError> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    let mut offset = 0;
    while let Some(start) = rest.find("{{") {
        out.push_str(&rest[..start]);
        let after = &rest[start + 2..];
        let end = after.find("}}").ok_or(TemplateError::Unterminated(offset + start))?;
        let name = &after[..end];
        let value = bindings
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| TemplateError::Unbound(name.to_string()))?;
        out.push_str(value);
        let consumed = start + 2 + end + 2;
        rest = &rest[consumed..];
        offset += consumed;
    }
    out.push_str(rest);
    Ok(out)
}

/// Splices `bindings` into the named template and parses the result.
pub fn instantiate_template(name: &str, bindings: &[(&str, &str)]) -> Result<TplProgram, TemplateError> {
    let text = splice(template(name)?, bindings)?;
    Ok(TplProgram::parse(text.as_bytes())?)
}

/// A TPL string literal denoting `s`.
pub fn string_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '\n' => out.push_str("\\n"),
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
