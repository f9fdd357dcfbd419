//! Permutation braids: positive braids in which each pair of strands
//! crosses at most once. They are in bijection with permutations of the
//! strand set and form the factors of the left normal form.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * `table[j]` (0-based) holds the starting position of the strand that
//!   ends at position `j`. Under this convention the permutation attached
//!   to a positive word is obtained by composing the letters' transpositions
//!   with the *last* letter applied first, so `perm(A * B) = perm(A) o perm(B)`
//!   with ordinary function composition.
//! * sigma_i swaps strands i and i+1 (1-based).
//! * The starting set (generators dividing on the left) of a factor with
//!   permutation p is `{ i : p^{-1}(i) > p^{-1}(i+1) }`; the finishing set
//!   (generators dividing on the right) is `{ i : p(i) > p(i+1) }`.

use crate::error::{BraidError, Result};
use crate::word::{Letter, Sign, Word};

/// A permutation braid on n strands, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationBraid {
    table: Vec<u8>,
}

impl PermutationBraid {
    pub fn identity(n: usize) -> PermutationBraid {
        PermutationBraid {
            table: (0..n as u8).collect(),
        }
    }

    /// The half-twist Delta, i.e. the reversal permutation i -> n+1-i.
    pub fn half_twist(n: usize) -> PermutationBraid {
        PermutationBraid {
            table: (0..n as u8).rev().collect(),
        }
    }

    /// The single crossing sigma_i (1-based index).
    pub fn generator(n: usize, i: u16) -> PermutationBraid {
        let mut p = PermutationBraid::identity(n);
        p.append_gen(i);
        p
    }

    /// Delta * sigma_i^{-1}: the permutation braid completing sigma_i to the
    /// half-twist on the right.
    pub fn half_twist_minus_gen(n: usize, i: u16) -> PermutationBraid {
        let mut p = PermutationBraid::half_twist(n);
        // perm(Delta o t_i); appending the transposition on the right.
        p.table.swap(usize::from(i) - 1, usize::from(i));
        p
    }

    /// Rebuild from a 1-indexed image table, validating bijectivity.
    pub fn from_image_one_based(images: &[u8]) -> Result<PermutationBraid> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut table = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || usize::from(v) > n || seen[usize::from(v) - 1] {
                return Err(BraidError::BadBytes(format!(
                    "image table {images:?} is not a bijection on 1..={n}"
                )));
            }
            seen[usize::from(v) - 1] = true;
            table.push(v - 1);
        }
        Ok(PermutationBraid { table })
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }

    /// 1-indexed image table, the external representation.
    pub fn image_table_one_based(&self) -> Vec<u8> {
        self.table.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(j, &v)| usize::from(v) == j)
    }

    pub fn is_half_twist(&self) -> bool {
        let n = self.n();
        self.table
            .iter()
            .enumerate()
            .all(|(j, &v)| usize::from(v) == n - 1 - j)
    }

    fn inverse_table(&self) -> Vec<u8> {
        let mut inv = vec![0u8; self.n()];
        for (j, &v) in self.table.iter().enumerate() {
            inv[usize::from(v)] = j as u8;
        }
        inv
    }

    /// perm(self) o perm(rhs): the permutation of the product braid
    /// self * rhs.
    pub fn compose(&self, rhs: &PermutationBraid) -> PermutationBraid {
        debug_assert_eq!(self.n(), rhs.n());
        PermutationBraid {
            table: rhs.table.iter().map(|&v| self.table[usize::from(v)]).collect(),
        }
    }

    pub fn inverse(&self) -> PermutationBraid {
        PermutationBraid {
            table: self.inverse_table(),
        }
    }

    /// Crossing count: the number of inversions of the permutation, which is
    /// the letter length of any reduced word for the braid.
    pub fn inversions(&self) -> usize {
        let t = &self.table;
        let mut count = 0;
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                if t[i] > t[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Multiply by sigma_i on the right (valid as a permutation braid only
    /// when i is not in the finishing set).
    pub fn append_gen(&mut self, i: u16) {
        let i = usize::from(i);
        self.table.swap(i - 1, i);
    }

    /// Strip one sigma_i from the left (valid only when i is in the
    /// starting set): self = sigma_i * rest, and self becomes rest.
    pub fn strip_gen(&mut self, i: u16) {
        let i = (u8::try_from(i).expect("index fits u8")) - 1;
        for v in self.table.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
    }

    /// Bit vector over generator indices (slot i-1 for sigma_i) of the
    /// starting set.
    pub fn starting_bits(&self) -> Vec<bool> {
        let inv = self.inverse_table();
        inv.windows(2).map(|w| w[0] > w[1]).collect()
    }

    /// Bit vector of the finishing set.
    pub fn finishing_bits(&self) -> Vec<bool> {
        self.table.windows(2).map(|w| w[0] > w[1]).collect()
    }

    /// 1-based generator indices of the starting set.
    pub fn starting_set(&self) -> Vec<u16> {
        bits_to_indices(&self.starting_bits())
    }

    /// 1-based generator indices of the finishing set.
    pub fn finishing_set(&self) -> Vec<u16> {
        bits_to_indices(&self.finishing_bits())
    }

    /// True iff self left-divides rhs in the positive braid monoid.
    pub fn left_divides(&self, rhs: &PermutationBraid) -> bool {
        self.inversions() + self.left_quotient(rhs).inversions() == rhs.inversions()
    }

    /// self^{-1} * rhs as a permutation; only a braid-level quotient when
    /// self left-divides rhs.
    pub fn left_quotient(&self, rhs: &PermutationBraid) -> PermutationBraid {
        self.inverse().compose(rhs)
    }

    /// Greatest common left divisor of two permutation braids, built up
    /// greedily one generator at a time.
    pub fn meet(&self, rhs: &PermutationBraid) -> PermutationBraid {
        debug_assert_eq!(self.n(), rhs.n());
        let mut c = PermutationBraid::identity(self.n());
        loop {
            let sa = c.left_quotient(self).starting_bits();
            let sb = c.left_quotient(rhs).starting_bits();
            match (0..sa.len()).find(|&k| sa[k] && sb[k]) {
                Some(k) => c.append_gen(k as u16 + 1),
                None => return c,
            }
        }
    }

    /// The flip automorphism sigma_i -> sigma_{n-i}, i.e. conjugation by the
    /// half-twist.
    pub fn flip(&self) -> PermutationBraid {
        let n = self.n();
        let last = (n - 1) as u8;
        PermutationBraid {
            table: (0..n)
                .map(|j| last - self.table[n - 1 - j])
                .collect(),
        }
    }

    /// The right complement: the permutation braid c with self * c = Delta.
    pub fn right_complement(&self) -> PermutationBraid {
        self.inverse().compose(&PermutationBraid::half_twist(self.n()))
    }

    /// The lexicographically least reduced word for this braid, emitted by
    /// repeatedly peeling the smallest starting generator. For the
    /// half-twist this yields the fixed expansion
    /// sigma_1 (sigma_2 sigma_1) ... (sigma_{n-1} ... sigma_1).
    pub fn canonical_word(&self) -> Vec<u16> {
        let mut p = self.clone();
        let mut out = Vec::with_capacity(p.inversions());
        loop {
            let bits = p.starting_bits();
            match bits.iter().position(|&b| b) {
                Some(k) => {
                    let i = k as u16 + 1;
                    out.push(i);
                    p.strip_gen(i);
                }
                None => return out,
            }
        }
    }

    /// Positive word (letters all positive) for this factor.
    pub fn to_word(&self) -> Word {
        Word::from_letters(
            self.canonical_word()
                .into_iter()
                .map(|i| Letter {
                    index: i,
                    sign: Sign::Pos,
                })
                .collect(),
        )
    }

    /// True iff the permutation fixes every strand outside the 1-based
    /// strand interval [lo_strand, hi_strand].
    pub fn fixes_outside(&self, lo_strand: u16, hi_strand: u16) -> bool {
        self.table.iter().enumerate().all(|(j, &v)| {
            let pos = j as u16 + 1;
            (lo_strand..=hi_strand).contains(&pos) || u16::from(v) + 1 == pos
        })
    }
}

fn bits_to_indices(bits: &[bool]) -> Vec<u16> {
    bits.iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u16 + 1))
        .collect()
}

/// Smallest generator that may move from the head of `b` to the tail of
/// `a` without breaking either factor: an element of S(b) \ F(a).
pub(crate) fn movable_generator(a: &PermutationBraid, b: &PermutationBraid) -> Option<u16> {
    let fin = a.finishing_bits();
    let start = b.starting_bits();
    (0..start.len())
        .find(|&k| start[k] && !fin[k])
        .map(|k| k as u16 + 1)
}

/// Left-weightedness of an adjacent factor pair: the finishing set of `a`
/// contains the starting set of `b`.
pub(crate) fn pair_left_weighted(a: &PermutationBraid, b: &PermutationBraid) -> bool {
    movable_generator(a, b).is_none()
}
