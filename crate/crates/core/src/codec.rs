//! Bijective coding of 0/1-strings by naturals, byte packing of ASCII text,
//! program codes, and the pairing function `(n+m)^2 + n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;


use crate::Nat;

/// A finite sequence of bits. The empty string is valid and codes `0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    pub fn empty() -> Self {
        BitString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("λ")
        } else {
            write!(f, "{self}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid bit character {0:?}")]
pub struct BadBit(pub char);

impl FromStr for BitString {
    type Err = BadBit;

    /// Parses a string over `{0,1}`; `""` and `"λ"` both give the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "λ" {
            return Ok(BitString::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

/// Bit packing failed because the length is not a whole number of bytes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bit string of length {0} is not a multiple of 8")]
pub struct NotByteAligned(pub usize);

/// Prepends a `1`, reads the result in binary and subtracts one.
pub fn bits_to_nat(b: &BitString) -> Nat {
    let mut bytes = Vec::with_capacity(b.len() / 8 + 1);
    let total = b.len() + 1;
    let mut acc = 0u8;
    for (i, bit) in std::iter::once(true).chain(b.0.iter().copied()).enumerate() {
        acc = (acc << 1) | bit as u8;
        if (total - i - 1) % 8 == 0 {
            bytes.push(acc);
            acc = 0;
        }
    }
    BigUint::from_bytes_be(&bytes) - 1u32
}

/// Inverse of [`bits_to_nat`]: binary of `n + 1` with its leading `1` removed.
pub fn nat_to_bits(n: &Nat) -> BitString {
    let succ = n + 1u32;
    let width = succ.bits() as usize;
    let bits = (0..width - 1)
        .rev()
        .map(|i| succ.bit(i as u64))
        .collect();
    BitString(bits)
}

/// Each byte becomes its 8-bit big-endian code, in text order.
pub fn ascii_to_bits(text: &[u8]) -> BitString {
    let mut bits = Vec::with_capacity(text.len() * 8);
    for &byte in text {
        for i in (0..8).rev() {
            bits.push(byte >> i & 1 == 1);
        }
    }
    BitString(bits)
}

pub fn bits_to_ascii(b: &BitString) -> Result<Vec<u8>, NotByteAligned> {
    if b.len() % 8 != 0 {
        return Err(NotByteAligned(b.len()));
    }
    Ok(b.0
        .chunks(8)
        .map(|chunk| chunk.iter().fold(0u8, |acc, &bit| acc << 1 | bit as u8))
        .collect())
}

/// `bits_to_nat(ascii_to_bits(text))`, computed directly on bytes.
pub fn program_code(text: &[u8]) -> Nat {
    let mut bytes = Vec::with_capacity(text.len() + 1);
    bytes.push(1u8);
    bytes.extend_from_slice(text);
    BigUint::from_bytes_be(&bytes) - 1u32
}

/// Decodes a program code back to its bytes; `None` when the coded bit string
/// is not a whole number of bytes.
pub fn decode_program_code(n: &Nat) -> Option<Vec<u8>> {
    let succ = n + 1u32;
    let width = succ.bits() - 1;
    if width % 8 != 0 {
        return None;
    }
    let mut bytes = succ.to_bytes_be();
    // The marker bit sits alone in the leading byte.
    debug_assert_eq!(bytes[0], 1);
    bytes.remove(0);
    Some(bytes)
}

/// Text-level convenience over [`decode_program_code`].
pub fn decode_program_text(n: &Nat) -> Option<String> {
    decode_program_code(n).and_then(|b| String::from_utf8(b).ok())
}

/// `pair(n, m) = (n + m)^2 + n`.
pub fn pair(n: &Nat, m: &Nat) -> Nat {
    let s = n + m;
    &s * &s + n
}

/// Inverts [`pair`]; `None` when `p` is not in its range.
pub fn unpair(p: &Nat) -> Option<(Nat, Nat)> {
    let s = p.sqrt();
    let n = p - &s * &s;
    if n > s {
        return None;
    }
    let m = &s - &n;
    Some((n, m))
}

/// Whether `p` lies in the range of [`pair`].
pub fn in_pair_range(p: &Nat) -> bool {
    let s = p.sqrt();
    p - &s * &s <= s
}

pub fn nat(n: u64) -> Nat {
    BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(bits_to_nat(&bs("0110")), nat(21));
        assert_eq!(nat_to_bits(&nat(29)), bs("1110"));
    }

    #[test]
    fn coding_table() {
        let table = ["", "0", "1", "00", "01", "10", "11", "000", "001", "010", "011", "100"];
        for (i, s) in table.iter().enumerate() {
            assert_eq!(bits_to_nat(&bs(s)), nat(i as u64), "{s}");
            assert_eq!(nat_to_bits(&nat(i as u64)), bs(s));
        }
    }

    #[test]
    fn ascii_packing() {
        assert_eq!(ascii_to_bits(b"A"), bs("01000001"));
        assert!(ascii_to_bits(b"").is_empty());
        assert_eq!(bits_to_ascii(&bs("0100000101000010")).unwrap(), b"AB");
        assert_eq!(bits_to_ascii(&bs("010")), Err(NotByteAligned(3)));
    }

    #[test]
    fn program_code_matches_bit_route() {
        for text in [&b""[..], b"halt;", b"out = 7; halt;"] {
            assert_eq!(program_code(text), bits_to_nat(&ascii_to_bits(text)));
            assert_eq!(decode_program_code(&program_code(text)).unwrap(), text);
        }
        assert_eq!(decode_program_code(&nat(0)).unwrap(), b"");
        assert_eq!(decode_program_code(&nat(1)), None);
        assert_eq!(decode_program_code(&nat(29)), None);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pair(&nat(0), &nat(0)), nat(0));
        assert_eq!(pair(&nat(1), &nat(2)), nat(10));
        assert_eq!(pair(&nat(2), &nat(1)), nat(11));
        assert_eq!(unpair(&nat(10)), Some((nat(1), nat(2))));
        assert_eq!(unpair(&nat(0)), Some((nat(0), nat(0))));
        assert_eq!(unpair(&nat(7)), None);
        assert!(!in_pair_range(&nat(7)));
    }
}
