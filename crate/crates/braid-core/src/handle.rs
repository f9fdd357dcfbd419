//! Handle reduction: the second, independent word-problem algorithm.
//!
//! A sigma_i-handle is a subword sigma_i^e u sigma_i^{-e} whose interior u
//! contains no letter of index i or i-1. Reducing it deletes the bounding
//! pair, conjugates each interior sigma_{i+1}^d into
//! sigma_{i+1}^{-e} sigma_i^d sigma_{i+1}^{e}, and passes every other
//! interior letter through unchanged (indices at distance >= 2 commute
//! with sigma_i). A freely reduced word with no handle at its lowest
//! occurring index uses that generator with one sign only, so it can
//! represent the identity only if it is empty.
//!
//! The procedure always reduces the handle whose closing letter is
//! leftmost, i.e. the innermost pending handle. Picking the lowest
//! generator index first instead looks natural but is exponentially bad:
//! reducing an outer handle triples the interior letters, each round
//! planting fresh low-index pairs. One step per reduction is charged
//! against the budget; free cancellation is not charged.

use crate::context::BraidContext;
use crate::error::{BraidError, Result};
use crate::word::{Letter, Sign, Word};

/// Default step budget; reduction at desk scale uses a tiny fraction of it.
pub const DEFAULT_HANDLE_BUDGET: u64 = 1_000_000;

impl BraidContext {
    /// Reduce `w` to a handle-free word equal to it in B_n, under the
    /// default step budget. The result is empty iff `w` represents the
    /// identity.
    pub fn handle_reduce(&self, w: &Word) -> Result<Word> {
        self.handle_reduce_budgeted(w, DEFAULT_HANDLE_BUDGET)
    }

    /// As [`handle_reduce`](Self::handle_reduce) with an explicit budget.
    pub fn handle_reduce_budgeted(&self, w: &Word, budget: u64) -> Result<Word> {
        self.check_word(w)?;
        let mut letters: Vec<Letter> = w.free_reduce().letters().to_vec();
        let mut steps: u64 = 0;
        while let Some((start, end)) = first_closing_handle(&letters, self.n()) {
            if steps >= budget {
                return Err(BraidError::HandleBudgetExhausted { budget });
            }
            steps += 1;
            reduce_handle(&mut letters, start, end);
            letters = Word::from_letters(letters).free_reduce().letters().to_vec();
        }
        Ok(Word::from_letters(letters))
    }
}

/// The handle whose closing letter comes first in the word, as positions
/// of its bounding letters.
fn first_closing_handle(letters: &[Letter], n: u16) -> Option<(usize, usize)> {
    let gens = usize::from(n) - 1;
    let mut last: Vec<Option<(usize, Sign)>> = vec![None; gens];
    for (p, &l) in letters.iter().enumerate() {
        let slot = usize::from(l.index) - 1;
        if let Some((q, q_sign)) = last[slot] {
            if q_sign != l.sign {
                let blocked =
                    slot >= 1 && last[slot - 1].is_some_and(|(pos, _)| pos > q);
                if !blocked {
                    return Some((q, p));
                }
            }
        }
        last[slot] = Some((p, l.sign));
    }
    None
}

fn reduce_handle(letters: &mut Vec<Letter>, start: usize, end: usize) {
    let i = letters[start].index;
    let e = letters[start].sign;
    debug_assert_eq!(letters[end].index, i);
    debug_assert_eq!(letters[end].sign, e.flip());
    let mut replacement: Vec<Letter> = Vec::with_capacity((end - start) * 3);
    for &l in &letters[start + 1..end] {
        debug_assert!(l.index != i && (i == 1 || l.index != i - 1));
        if l.index == i + 1 {
            replacement.push(Letter {
                index: i + 1,
                sign: e.flip(),
            });
            replacement.push(Letter {
                index: i,
                sign: l.sign,
            });
            replacement.push(Letter {
                index: i + 1,
                sign: e,
            });
        } else {
            replacement.push(l);
        }
    }
    letters.splice(start..=end, replacement);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> BraidContext {
        BraidContext::new(n).unwrap()
    }

    #[test]
    fn inverse_pair_reduces_to_empty() {
        let b3 = ctx(3);
        let w = b3.make_word(&[1, -1]).unwrap();
        assert!(b3.handle_reduce(&w).unwrap().is_empty());
    }

    #[test]
    fn braid_relator_reduces_to_empty() {
        let b3 = ctx(3);
        let w = b3.make_word(&[1, 2, 1, -2, -1, -2]).unwrap();
        assert!(b3.handle_reduce(&w).unwrap().is_empty());
    }

    #[test]
    fn far_commutation_relator_reduces_to_empty() {
        let b4 = ctx(4);
        let w = b4.make_word(&[1, 3, -1, -3]).unwrap();
        assert!(b4.handle_reduce(&w).unwrap().is_empty());
    }

    #[test]
    fn positive_word_stays_nonempty() {
        let b3 = ctx(3);
        let w = b3.make_word(&[1, 2]).unwrap();
        let reduced = b3.handle_reduce(&w).unwrap();
        assert!(!reduced.is_empty());
    }

    #[test]
    fn nontrivial_commutator_stays_nonempty() {
        let b3 = ctx(3);
        let s1 = b3.make_word(&[1]).unwrap();
        let s2 = b3.make_word(&[2]).unwrap();
        let k = b3.commutator(&s1, &s2).unwrap();
        assert!(!b3.handle_reduce(&k).unwrap().is_empty());
    }

    #[test]
    fn zero_budget_errors_on_a_real_handle() {
        let b3 = ctx(3);
        let w = b3.make_word(&[1, 2, 1, -2, -1, -2]).unwrap();
        assert_eq!(
            b3.handle_reduce_budgeted(&w, 0),
            Err(BraidError::HandleBudgetExhausted { budget: 0 })
        );
    }

    #[test]
    fn free_cancellation_costs_no_budget() {
        let b3 = ctx(3);
        let w = b3.make_word(&[1, 2, -2, -1]).unwrap();
        assert!(b3.handle_reduce_budgeted(&w, 0).unwrap().is_empty());
    }

    #[test]
    fn nested_handles_reduce_inner_first() {
        // sigma_1 [sigma_2 sigma_3 sigma_2^{-1}] sigma_1^{-1}: the inner
        // sigma_2-handle closes before the outer sigma_1-handle
        let b4 = ctx(4);
        let w = b4.make_word(&[1, 2, 3, -2, -1]).unwrap();
        let reduced = b4.handle_reduce(&w).unwrap();
        assert!(!reduced.is_empty());
        assert!(b4.equals(&reduced, &w).unwrap());
    }

    #[test]
    fn mixed_relator_nest_reduces_to_empty() {
        let b4 = ctx(4);
        let w = b4.make_word(&[1, 3, 2, -2, -3, -1]).unwrap();
        assert!(b4.handle_reduce(&w).unwrap().is_empty());
    }

    #[test]
    fn half_twist_conjugates_reduce_quickly() {
        // Delta^{-1} x Delta y^{-1} with y = flip(x) is trivial; a
        // 24-letter instance must reduce well inside the default budget
        let b4 = ctx(4);
        let delta = b4.make_word(&[1, 2, 1, 3, 2, 1]).unwrap();
        let x = b4.make_word(&[1, 2, -3]).unwrap();
        let y = b4.make_word(&[3, 2, -1]).unwrap();
        let w = b4
            .multiply(
                &b4.multiply(&b4.multiply(&b4.invert(&delta).unwrap(), &x).unwrap(), &delta)
                    .unwrap(),
                &b4.invert(&y).unwrap(),
            )
            .unwrap();
        assert!(b4.handle_reduce_budgeted(&w, 5_000).unwrap().is_empty());
    }
}
