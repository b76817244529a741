//! Structural proof codes (layout documented in `docs/proof-code.md`).
//!
//! ```text
//! proof       = pair(len, body(steps))          len >= 1
//! body([s])   = code(s)
//! body(s:ss)  = pair(code(s), body(ss))
//! code(step)  = pair(tag, payload)
//!   LA  tag 0  payload pair(schema id, program_code(printed instance))
//!   AX  tag 1  payload index
//!   MP  tag 2  payload pair(i, j)
//!   GEN tag 3  payload pair(i, program_code(variable))
//! ```

use num_traits::ToPrimitive;

use super::{Justification, Proof, Schema};
use crate::codec::{decode_program_text, pair, program_code, unpair};
use crate::syntax::{is_identifier, parse_formula};
use crate::Nat;

pub fn step_code(j: &Justification) -> Nat {
    let n = |k: usize| Nat::from(k);
    let (tag, payload) = match j {
        Justification::LogicalAxiom(s, inst) => (
            0u32,
            pair(&n(s.id()), &program_code(inst.to_string().as_bytes())),
        ),
        Justification::TheoryAxiom(i) => (1, i.clone()),
        Justification::ModusPonens(i, k) => (2, pair(&n(*i), &n(*k))),
        Justification::Gen(i, v) => (3, pair(&n(*i), &program_code(v.as_bytes()))),
    };
    pair(&Nat::from(tag), &payload)
}

pub fn proof_to_code(p: &Proof) -> Nat {
    assert!(!p.steps.is_empty(), "proofs have at least one step");
    let mut codes = p.steps.iter().rev().map(step_code);
    let last = codes.next().expect("non-empty");
    let body = codes.fold(last, |rest, c| pair(&c, &rest));
    pair(&Nat::from(p.steps.len()), &body)
}

fn decode_step(c: &Nat) -> Option<Justification> {
    let (tag, payload) = unpair(c)?;
    Some(match tag.to_u8()? {
        0 => {
            let (schema, inst) = unpair(&payload)?;
            let schema = Schema::from_id(schema.to_usize()?)?;
            let text = decode_program_text(&inst)?;
            let f = parse_formula(&text).ok()?;
            // Only the canonical printing is a valid code.
            if f.to_string() != text {
                return None;
            }
            Justification::LogicalAxiom(schema, f)
        }
        1 => Justification::TheoryAxiom(payload),
        2 => {
            let (i, j) = unpair(&payload)?;
            Justification::ModusPonens(i.to_usize()?, j.to_usize()?)
        }
        3 => {
            let (i, v) = unpair(&payload)?;
            let v = decode_program_text(&v)?;
            if !is_identifier(&v) {
                return None;
            }
            Justification::Gen(i.to_usize()?, v)
        }
        _ => return None,
    })
}

/// Inverse of [`proof_to_code`]; `None` when `n` is not a well-formed code.
/// Decoding is lazy and stops at the first malformed component.
pub fn code_to_proof(n: &Nat) -> Option<Proof> {
    let (len, mut body) = unpair(n)?;
    let len = len.to_usize()?;
    if len == 0 {
        return None;
    }
    // Each pairing layer roughly squares the code, so a valid length is tiny
    // compared to the bit size of the body.
    if len > body.bits() as usize + 1 {
        return None;
    }
    let mut steps = Vec::with_capacity(len);
    for _ in 1..len {
        let (head, rest) = unpair(&body)?;
        steps.push(decode_step(&head)?);
        body = rest;
    }
    steps.push(decode_step(&body)?);
    Some(Proof { steps })
}
