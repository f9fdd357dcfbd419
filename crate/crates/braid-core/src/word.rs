//! Words over the Artin generators.
//!
//! A [`Word`] is a plain, context-free sequence of signed generator letters.
//! The empty word is the identity. Nothing here enforces relations; passing
//! to a canonical representative is the job of the normal-form machinery.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{BraidError, Result};

/// Orientation of a letter: the generator itself or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// +1 or -1.
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// One signed Artin generator, sigma_index^{+-1}. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u16,
    pub sign: Sign,
}

impl Letter {
    /// Decode a nonzero signed entry: k > 0 is sigma_k, k < 0 is sigma_|k|^{-1}.
    pub fn from_signed(entry: i32) -> Result<Letter> {
        if entry == 0 {
            return Err(BraidError::ZeroEntry);
        }
        Ok(Letter {
            index: entry.unsigned_abs().min(u16::MAX as u32) as u16,
            sign: if entry > 0 { Sign::Pos } else { Sign::Neg },
        })
    }

    pub fn as_signed(self) -> i32 {
        i32::from(self.index) * self.sign.as_i32()
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A word in the Artin generators; the universal element representation.
///
/// Equality on `Word` is letter-sequence equality, not equality in the
/// group. Use the context's `equals` for the latter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The identity element.
    pub fn identity() -> Word {
        Word::default()
    }

    pub(crate) fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Signed-integer view, the external representation of words.
    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.as_signed()).collect()
    }

    /// Cancel adjacent inverse pairs until none remain. Idempotent.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().is_some_and(|t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Concatenation of `self` and `rhs`, freely reduced.
    pub(crate) fn cat_reduce(&self, rhs: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len() + rhs.len());
        for &l in self.letters.iter().chain(rhs.letters.iter()) {
            if out.last().is_some_and(|t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Reversed sequence with flipped signs, i.e. the group inverse.
    pub(crate) fn inverse_word(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Parse the whitespace-separated signed-integer text format
    /// ("1 2 -1" means sigma_1 sigma_2 sigma_1^{-1}). Whitespace-only
    /// input is the identity.
    pub fn parse(text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let entry: i32 = tok
                .parse()
                .map_err(|_| BraidError::BadWordText(tok.to_string()))?;
            letters.push(Letter::from_signed(entry)?);
        }
        Ok(Word { letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", l.as_signed())?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let entries = Vec::<i32>::deserialize(deserializer)?;
        let mut letters = Vec::with_capacity(entries.len());
        for e in entries {
            letters.push(Letter::from_signed(e).map_err(D::Error::custom)?);
        }
        Ok(Word { letters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i32]) -> Word {
        Word::from_letters(entries.iter().map(|&e| Letter::from_signed(e).unwrap()).collect())
    }

    #[test]
    fn free_reduce_inverse_pair() {
        assert_eq!(w(&[1, -1]).free_reduce(), Word::identity());
    }

    #[test]
    fn free_reduce_cascade() {
        assert_eq!(w(&[1, 2, -2, 1]).free_reduce(), w(&[1, 1]));
    }

    #[test]
    fn free_reduce_leaves_reduced_words_alone() {
        assert_eq!(w(&[1, 2, 1]).free_reduce(), w(&[1, 2, 1]));
    }

    #[test]
    fn free_reduce_is_idempotent() {
        let v = w(&[1, 2, -2, -1, 3, -3, 1]);
        let once = v.free_reduce();
        assert_eq!(once.free_reduce(), once);
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w(&[1, 2]).inverse_word(), w(&[-2, -1]));
    }

    #[test]
    fn parse_round_trips_display() {
        let v = w(&[1, 2, -1]);
        assert_eq!(Word::parse(&v.to_string()).unwrap(), v);
        assert_eq!(Word::parse("   ").unwrap(), Word::identity());
    }

    #[test]
    fn parse_rejects_zero() {
        assert_eq!(Word::parse("1 0 2"), Err(BraidError::ZeroEntry));
    }

    #[test]
    fn serde_is_signed_int_list() {
        let v = w(&[1, 2, -1]);
        assert_eq!(serde_json::to_string(&v).unwrap(), "[1,2,-1]");
        let back: Word = serde_json::from_str("[1,2,-1]").unwrap();
        assert_eq!(back, v);
    }
}
