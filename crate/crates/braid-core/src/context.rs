//! The ambient group B_n.
//!
//! Words carry no context of their own; a [`BraidContext`] is supplied per
//! operation and validates that every letter index lies in `1..=n-1`.

use crate::error::{BraidError, Result};
use crate::word::{Letter, Word};

/// Largest supported strand count. Factor image tables serialize as one
/// byte per strand, which caps n at 255.
pub const MAX_STRANDS: usize = 255;

/// The braid group B_n on `n` strands with Artin generators
/// sigma_1 .. sigma_{n-1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidContext {
    n: u16,
}

impl BraidContext {
    pub fn new(n: usize) -> Result<BraidContext> {
        if !(2..=MAX_STRANDS).contains(&n) {
            return Err(BraidError::StrandCount(n));
        }
        Ok(BraidContext { n: n as u16 })
    }

    /// Strand count.
    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn strands(&self) -> usize {
        usize::from(self.n)
    }

    /// Number of Artin generators, n - 1.
    pub fn generator_count(&self) -> u16 {
        self.n - 1
    }

    pub fn same_as(&self, other: &BraidContext) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(BraidError::ContextMismatch(self.n, other.n))
        }
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if l.index == 0 {
            return Err(BraidError::ZeroEntry);
        }
        if l.index >= self.n {
            return Err(BraidError::IndexOutOfRange {
                index: i64::from(l.as_signed()),
                n: self.n,
            });
        }
        Ok(())
    }

    /// Validate that every letter of `w` names a generator of this group.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|&l| self.check_letter(l))
    }

    /// Build a word from signed entries: k > 0 means sigma_k, k < 0 means
    /// sigma_|k|^{-1}. The result is unreduced.
    pub fn make_word(&self, entries: &[i32]) -> Result<Word> {
        let mut letters = Vec::with_capacity(entries.len());
        for &e in entries {
            let l = Letter::from_signed(e)?;
            self.check_letter(l)?;
            letters.push(l);
        }
        Ok(Word::from_letters(letters))
    }

    /// Parse the signed-integer text format and validate letter ranges.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text)?;
        self.check_word(&w)?;
        Ok(w)
    }

    /// The generator sigma_i as a one-letter word.
    pub fn generator(&self, i: u16) -> Result<Word> {
        self.make_word(&[i32::from(i)])
    }

    /// u * v, freely reduced.
    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(u.cat_reduce(v))
    }

    /// u^{-1}: reversed sequence with flipped signs.
    pub fn invert(&self, u: &Word) -> Result<Word> {
        self.check_word(u)?;
        Ok(u.inverse_word())
    }

    /// g^x = x^{-1} g x, freely reduced.
    pub fn conjugate(&self, g: &Word, x: &Word) -> Result<Word> {
        self.check_word(g)?;
        self.check_word(x)?;
        Ok(x.inverse_word().cat_reduce(g).cat_reduce(x))
    }

    /// [x, y] = x^{-1} y^{-1} x y, freely reduced.
    pub fn commutator(&self, x: &Word, y: &Word) -> Result<Word> {
        self.check_word(x)?;
        self.check_word(y)?;
        Ok(x.inverse_word()
            .cat_reduce(&y.inverse_word())
            .cat_reduce(x)
            .cat_reduce(y))
    }
}
