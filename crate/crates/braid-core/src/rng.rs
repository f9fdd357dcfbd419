//! Seeded randomness with a pinned algorithm.
//!
//! All sampling flows through a splitmix-style 64-bit mixer so that a
//! scenario seed reproduces the exact same instances in any
//! implementation of this format. The update is the standard one:
//! state += 0x9E3779B97F4A7C15, then two xor-shift-multiply rounds with
//! 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB and a final >> 31 xor.

use crate::context::BraidContext;
use crate::error::{BraidError, Result};
use crate::word::Word;

/// The fixed 64-bit mixing generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw from 0..bound by reduction; bound must be
    /// nonzero. Determinism matters here, statistical polish does not.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Derive a stream-specific sub-seed from a master seed and a tag:
/// one mixer step over seed XOR (tag * 0xA24BAED4963EE407).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    SplitMix64::new(seed ^ tag.wrapping_mul(0xA24B_AED4_963E_E407)).next_u64()
}

impl BraidContext {
    /// Product of `length` factors, each drawn as alphabet[k/2] for an even
    /// draw k and its inverse for an odd k, k = next_u64() % (2 * alphabet
    /// size). The concatenation is freely reduced.
    pub fn random_word(&self, alphabet: &[Word], length: usize, seed: u64) -> Result<Word> {
        if alphabet.is_empty() {
            return Err(BraidError::EmptyAlphabet);
        }
        for w in alphabet {
            self.check_word(w)?;
        }
        let mut rng = SplitMix64::new(seed);
        let mut out = Word::identity();
        for _ in 0..length {
            let k = rng.next_below(2 * alphabet.len() as u64);
            let base = &alphabet[(k / 2) as usize];
            if k % 2 == 0 {
                out = out.cat_reduce(base);
            } else {
                out = out.cat_reduce(&base.inverse_word());
            }
        }
        Ok(out)
    }

    /// All Artin generators of this group as one-letter words.
    pub fn generator_alphabet(&self) -> Vec<Word> {
        (1..self.n())
            .map(|i| self.generator(i).expect("index in range"))
            .collect()
    }
}
