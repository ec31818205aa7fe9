//! The two-letter integer alphabet `{p, q}` and its letters.
//!
//! Letters are stored as a single bit: `p` is bit 0 and `q` is bit 1. That
//! bit doubles as the left/right direction in the binary tree that the
//! automaton states live in, so every other module can work bit-packed while
//! callers keep speaking integers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pair of distinct positive integers with odd sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct Alphabet {
    p: u32,
    q: u32,
}

/// One letter of an [`Alphabet`], stored as its bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Digit {
    /// The letter `p`, bit 0.
    P,
    /// The letter `q`, bit 1.
    Q,
}

impl Digit {
    #[inline]
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Digit::Q
        } else {
            Digit::P
        }
    }

    #[inline]
    pub fn bit(self) -> bool {
        matches!(self, Digit::Q)
    }

    /// The other letter.
    #[inline]
    pub fn opp(self) -> Self {
        match self {
            Digit::P => Digit::Q,
            Digit::Q => Digit::P,
        }
    }
}

impl Alphabet {
    /// Validates `{p, q}`: distinct, positive, and `p + q` odd.
    ///
    /// Pairs of equal parity give degenerate automata (every digit flips on
    /// every input, or only the top digit ever moves) and are rejected.
    pub fn new(p: u32, q: u32) -> Result<Self> {
        Alphabet::any_parity(p, q)?;
        if (p + q).is_multiple_of(2) {
            return Err(Error::InvalidAlphabet {
                p,
                q,
                reason: "p + q must be odd; equal-parity alphabets have trivial automata",
            });
        }
        Ok(Alphabet { p, q })
    }

    /// Accepts any pair of distinct positive integers, including pairs of
    /// equal parity. Decoding is defined for these; the automaton-group
    /// results are not.
    pub fn any_parity(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidAlphabet { p, q, reason: "letters must be positive" });
        }
        if p == q {
            return Err(Error::InvalidAlphabet { p, q, reason: "letters must be distinct" });
        }
        Ok(Alphabet { p, q })
    }

    #[cfg(test)]
    pub(crate) fn relaxed(p: u32, q: u32) -> Self {
        Alphabet::any_parity(p, q).unwrap()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Integer value of a letter.
    #[inline]
    pub fn value(&self, d: Digit) -> u32 {
        match d {
            Digit::P => self.p,
            Digit::Q => self.q,
        }
    }

    /// Parses an integer as a letter of this alphabet.
    pub fn digit(&self, value: u64) -> Result<Digit> {
        if value == u64::from(self.p) {
            Ok(Digit::P)
        } else if value == u64::from(self.q) {
            Ok(Digit::Q)
        } else {
            Err(Error::NotALetter { value, p: self.p, q: self.q })
        }
    }

    pub fn digits(&self, values: &[u64]) -> Result<Vec<Digit>> {
        values.iter().map(|&v| self.digit(v)).collect()
    }

    pub fn values(&self, digits: &[Digit]) -> Vec<u32> {
        digits.iter().map(|&d| self.value(d)).collect()
    }

    /// `Opp`: the other letter.
    pub fn opp(&self, d: Digit) -> Digit {
        d.opp()
    }

    /// `OppEnd`: the opposite of the last letter.
    pub fn opp_end(&self, s: &[Digit]) -> Result<Digit> {
        s.last().map(|d| d.opp()).ok_or(Error::EmptySequence)
    }

    /// Sum of the integer values of a word.
    pub fn sum(&self, word: &[Digit]) -> u64 {
        word.iter().map(|&d| u64::from(self.value(d))).sum()
    }

    /// `(p + q)` as a signed integer.
    pub(crate) fn sum_pq(&self) -> i64 {
        i64::from(self.p) + i64::from(self.q)
    }

    /// `(p - q)` as a signed integer.
    pub(crate) fn diff_pq(&self) -> i64 {
        i64::from(self.p) - i64::from(self.q)
    }

    /// Renders a digit string such as `212`, with commas when a letter has
    /// more than one decimal digit.
    pub fn format_word(&self, digits: &[Digit]) -> String {
        let wide = self.p >= 10 || self.q >= 10;
        let parts: Vec<String> = digits.iter().map(|&d| self.value(d).to_string()).collect();
        if wide {
            parts.join(",")
        } else {
            parts.concat()
        }
    }

    /// Inverse of [`format_word`](Self::format_word). Accepts letters
    /// separated by commas or whitespace, or run together when both letters
    /// are single decimal digits.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Digit>> {
        let text = text.trim();
        let separated = text.contains(|c: char| c == ',' || c.is_whitespace());
        let tokens: Vec<&str> = if separated || self.p >= 10 || self.q >= 10 {
            text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect()
        } else {
            text.char_indices().map(|(i, c)| &text[i..i + c.len_utf8()]).collect()
        };
        tokens
            .into_iter()
            .map(|t| {
                let value = t.parse::<u64>().map_err(|_| Error::MalformedWord(t.to_string()))?;
                self.digit(value)
            })
            .collect()
    }
}

impl TryFrom<(u32, u32)> for Alphabet {
    type Error = Error;

    fn try_from((p, q): (u32, u32)) -> Result<Self> {
        Alphabet::new(p, q)
    }
}

impl From<Alphabet> for (u32, u32) {
    fn from(a: Alphabet) -> Self {
        (a.p, a.q)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.p, self.q)
    }
}
