//! Garside left normal form: the canonical representation
//! Delta^p x_1 ... x_m with left-weighted permutation-braid factors.
//!
//! Negative letters enter through sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1}),
//! the accumulated Delta powers are pushed to the front with the flip
//! automorphism, and adjacent factors are then left-weighted by elementary
//! moves: whenever some sigma_i starts factor j+1 but does not finish
//! factor j, the crossing migrates left. Two words are equal in B_n iff
//! their normal forms are componentwise identical.

use crate::context::BraidContext;
use crate::error::{BraidError, Result};
use crate::perm::{movable_generator, pair_left_weighted, PermutationBraid};
use crate::word::{Sign, Word};

/// Magic prefix of the canonical byte serialization.
const MAGIC: &[u8; 4] = b"BNF1";

/// Left normal form of a braid group element.
///
/// Invariants: no factor is the identity or the half-twist, and every
/// adjacent factor pair is left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    n: u16,
    delta_power: i32,
    factors: Vec<PermutationBraid>,
}

impl NormalForm {
    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn delta_power(&self) -> i32 {
        self.delta_power
    }

    pub fn factors(&self) -> &[PermutationBraid] {
        &self.factors
    }

    /// Canonical length: the number of permutation-braid factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Check the structural invariants; test and deserialization guard.
    pub fn validate(&self) -> Result<()> {
        let n = usize::from(self.n);
        if !(2..=crate::context::MAX_STRANDS).contains(&n) {
            return Err(BraidError::StrandCount(n));
        }
        for f in &self.factors {
            if f.n() != n {
                return Err(BraidError::BadBytes(format!(
                    "factor on {} strands inside a B_{} normal form",
                    f.n(),
                    n
                )));
            }
            if f.is_identity() {
                return Err(BraidError::BadBytes("identity factor".into()));
            }
            if f.is_half_twist() {
                return Err(BraidError::BadBytes("half-twist factor".into()));
            }
        }
        for pair in self.factors.windows(2) {
            if !pair_left_weighted(&pair[0], &pair[1]) {
                return Err(BraidError::BadBytes(format!(
                    "factors {:?} | {:?} are not left-weighted",
                    pair[0].image_table_one_based(),
                    pair[1].image_table_one_based()
                )));
            }
        }
        Ok(())
    }

    /// A word equal to the represented element: the Delta power expanded by
    /// the fixed convention, followed by the factors' canonical words.
    pub fn to_word(&self) -> Word {
        let n = usize::from(self.n);
        let delta = PermutationBraid::half_twist(n).to_word();
        let mut w = Word::identity();
        if self.delta_power >= 0 {
            for _ in 0..self.delta_power {
                w = w.cat_reduce(&delta);
            }
        } else {
            let delta_inv = delta.inverse_word();
            for _ in 0..i64::from(self.delta_power).unsigned_abs() {
                w = w.cat_reduce(&delta_inv);
            }
        }
        for f in &self.factors {
            w = w.cat_reduce(&f.to_word());
        }
        w
    }

    /// Injective, deterministic serialization: "BNF1", n (u16 BE),
    /// delta power (i32 BE), factor count (u16 BE), then each factor as n
    /// bytes of 1-indexed image table.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let n = usize::from(self.n);
        let mut out = Vec::with_capacity(12 + self.factors.len() * n);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.n.to_be_bytes());
        out.extend_from_slice(&self.delta_power.to_be_bytes());
        let count =
            u16::try_from(self.factors.len()).expect("factor count exceeds the wire format");
        out.extend_from_slice(&count.to_be_bytes());
        for f in &self.factors {
            out.extend_from_slice(&f.image_table_one_based());
        }
        out
    }

    /// Parse and validate the canonical byte format.
    pub fn from_canonical_bytes(bytes: &[u8]) -> Result<NormalForm> {
        if bytes.len() < 12 {
            return Err(BraidError::BadBytes("shorter than the fixed header".into()));
        }
        if &bytes[0..4] != MAGIC {
            return Err(BraidError::BadBytes("bad magic".into()));
        }
        let n = u16::from_be_bytes([bytes[4], bytes[5]]);
        let delta_power = i32::from_be_bytes([bytes[6], bytes[7], bytes[8], bytes[9]]);
        let count = usize::from(u16::from_be_bytes([bytes[10], bytes[11]]));
        let n_usize = usize::from(n);
        if !(2..=crate::context::MAX_STRANDS).contains(&n_usize) {
            return Err(BraidError::BadBytes(format!("strand count {n}")));
        }
        if bytes.len() != 12 + count * n_usize {
            return Err(BraidError::BadBytes(format!(
                "expected {} bytes for {count} factors, got {}",
                12 + count * n_usize,
                bytes.len()
            )));
        }
        let factors = bytes[12..]
            .chunks_exact(n_usize)
            .map(PermutationBraid::from_image_one_based)
            .collect::<Result<Vec<_>>>()?;
        let nf = NormalForm {
            n,
            delta_power,
            factors,
        };
        nf.validate()?;
        Ok(nf)
    }
}

/// Left-weight a factor list in place by elementary moves, dropping
/// factors that empty out.
pub(crate) fn left_weight(factors: &mut Vec<PermutationBraid>) {
    factors.retain(|f| !f.is_identity());
    loop {
        let mut changed = false;
        let mut j = 0;
        while j + 1 < factors.len() {
            let (left, right) = factors.split_at_mut(j + 1);
            let a = &mut left[j];
            let b = &mut right[0];
            while let Some(i) = movable_generator(a, b) {
                a.append_gen(i);
                b.strip_gen(i);
                changed = true;
            }
            j += 1;
        }
        factors.retain(|f| !f.is_identity());
        if !changed {
            return;
        }
    }
}

/// Concatenate the canonical words of a positive factor list.
pub(crate) fn factors_to_word(factors: &[PermutationBraid]) -> Word {
    factors
        .iter()
        .fold(Word::identity(), |w, f| w.cat_reduce(&f.to_word()))
}

impl BraidContext {
    /// Compute the unique left normal form of `w`.
    pub fn normal_form(&self, w: &Word) -> Result<NormalForm> {
        self.check_word(w)?;
        let n = self.strands();
        let mut delta_power: i64 = 0;
        let mut factors: Vec<PermutationBraid> = Vec::with_capacity(w.len());
        for &l in w.letters() {
            match l.sign {
                Sign::Pos => factors.push(PermutationBraid::generator(n, l.index)),
                Sign::Neg => {
                    // sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1}); moving
                    // Delta^{-1} to the front flips everything gathered so far.
                    delta_power -= 1;
                    for f in factors.iter_mut() {
                        *f = f.flip();
                    }
                    factors.push(PermutationBraid::half_twist_minus_gen(n, l.index));
                }
            }
        }
        left_weight(&mut factors);
        while factors.first().is_some_and(|f| f.is_half_twist()) {
            factors.remove(0);
            delta_power += 1;
        }
        let nf = NormalForm {
            n: self.n(),
            delta_power: i32::try_from(delta_power).expect("delta power fits i32"),
            factors,
        };
        debug_assert!(nf.validate().is_ok());
        Ok(nf)
    }

    /// Word-problem decision: true iff u and v represent the same element,
    /// by comparing left normal forms.
    pub fn equals(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// True iff `w` represents the identity.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.normal_form(w)?.is_trivial())
    }

    /// The unique factorization w = p^{-1} q with p and q positive sharing
    /// no common left divisor, returned as left-weighted factor lists
    /// (possibly with leading half-twist factors).
    pub fn negative_positive_parts(
        &self,
        w: &Word,
    ) -> Result<(Vec<PermutationBraid>, Vec<PermutationBraid>)> {
        let nf = self.normal_form(w)?;
        let n = self.strands();
        if nf.delta_power >= 0 {
            let mut q: Vec<PermutationBraid> = Vec::new();
            q.extend((0..nf.delta_power).map(|_| PermutationBraid::half_twist(n)));
            q.extend(nf.factors.iter().cloned());
            return Ok((Vec::new(), q));
        }
        let mut p: Vec<PermutationBraid> = (0..i64::from(nf.delta_power).unsigned_abs())
            .map(|_| PermutationBraid::half_twist(n))
            .collect();
        let mut q = nf.factors.clone();
        loop {
            let (Some(hp), Some(hq)) = (p.first(), q.first()) else {
                break;
            };
            let s = hp.meet(hq);
            if s.is_identity() {
                break;
            }
            strip_head(&mut p, &s);
            strip_head(&mut q, &s);
        }
        Ok((p, q))
    }
}

/// Divide a left-weighted positive factor list by a simple prefix divisor
/// of its head, restoring left-weightedness.
fn strip_head(factors: &mut Vec<PermutationBraid>, s: &PermutationBraid) {
    debug_assert!(s.left_divides(&factors[0]));
    factors[0] = s.left_quotient(&factors[0]);
    left_weight(factors);
}
