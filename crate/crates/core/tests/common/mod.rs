#![allow(dead_code)]

use std::path::PathBuf;

use incomplab::constructions::{Craig, HatAxioms};
use incomplab::proof::{Derivation, HostEnumerator, ProofScript, ScriptError};
use incomplab::theory::{enumerate_axioms_with, enumerator_code, Theory};
use incomplab::tpl::Runtime;
use incomplab::Nat;

pub struct Script {
    pub name: String,
    pub text: String,
    /// From the `# theory:` header: `S`, `T`, or `hat S` for the Craig
    /// axiomatization of S.
    pub theory: String,
}

pub fn corpus() -> Vec<Script> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scripts");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .expect("script corpus")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "proof"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let theory = text
                .lines()
                .find_map(|l| l.strip_prefix("# theory:"))
                .map(|t| t.trim().to_string())
                .unwrap_or_else(|| "S".into());
            Script {
                name: p.file_name().unwrap().to_string_lossy().into_owned(),
                text,
                theory,
            }
        })
        .collect()
}

pub fn check_script(script: &ProofScript, theory: &str) -> Result<Derivation, ScriptError> {
    match theory {
        "S" | "T" => {
            let th: Theory = theory.parse().unwrap();
            let mut rt = Runtime::new();
            let mut ax = HostEnumerator::new(|i: &Nat| enumerate_axioms_with(th, &mut rt, i));
            script.check(&mut ax)
        }
        "hat S" => {
            let mut craig = Craig::new(&enumerator_code(Theory::S)).unwrap();
            script.check(&mut HatAxioms(&mut craig))
        }
        other => panic!("unknown corpus theory `{other}`"),
    }
}
