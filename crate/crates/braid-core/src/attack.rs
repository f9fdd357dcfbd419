//! Adversary toolkit.
//!
//! Two observations drive this module. Against the conjugation exchange,
//! recovering the key never needs a conjugator: any pair x', y' from the
//! commuting subgroup with x' w y' equal to the observed message already
//! yields the shared key, so a bounded decomposition solver suffices.
//! Against the commutator agreement, a conjugacy solution is not enough:
//! a forged candidate c_b x passes every transcript check whenever c_b
//! centralizes the public tuple, yet the forged commutator equals the
//! honest key exactly when c_a and c_b commute. Both directions are
//! packaged as runnable scenarios.
//!
//! All solvers walk candidate balls in shortlex order with canonical-form
//! pruning and report exact budget accounting; a miss is always "not
//! found within budget", never a non-existence claim.

use std::cell::Cell;
use std::ops::ControlFlow;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::protocol::{
    run_aag, AagPublic, AagTranscript, KoLeeTranscript, SharedKey, Side,
};
use crate::subgroup::{
    bounded_membership_search, parabolic_express, subgroup_word_eval, walk_ball, SubgroupSpec,
    SubgroupWord,
};
use crate::word::Word;

/// Resource bounds for the brute-force solvers. All fields must be
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_depth: usize,
    pub max_states: u64,
    pub time_limit_ms: u64,
}

impl SearchBudget {
    pub fn new(max_depth: usize, max_states: u64, time_limit_ms: u64) -> Result<SearchBudget> {
        let budget = SearchBudget {
            max_depth,
            max_states,
            time_limit_ms,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_depth == 0 || self.max_states == 0 || self.time_limit_ms == 0 {
            return Err(BraidError::BadBudget);
        }
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            max_depth: 4,
            max_states: 1_000_000,
            time_limit_ms: 30_000,
        }
    }
}

/// Which budget dimension stopped an unsuccessful search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exhaustion {
    Depth,
    States,
    Time,
}

impl Exhaustion {
    pub fn label(&self) -> &'static str {
        match self {
            Exhaustion::Depth => "depth",
            Exhaustion::States => "states",
            Exhaustion::Time => "time",
        }
    }
}

/// Exact accounting for one solver run.
#[derive(Debug, Clone, Copy)]
pub struct SearchStats {
    pub states_explored: u64,
    pub elapsed_ms: u64,
    pub exhausted: Option<Exhaustion>,
}

/// A solver result: the shortlex-least solution if one was found within
/// budget, plus the accounting either way.
#[derive(Debug, Clone)]
pub struct SearchOutcome<T> {
    pub found: Option<T>,
    pub stats: SearchStats,
}

/// A decomposition of the observed message over the commuting subgroup:
/// x' w y' equals the message, with both parts expressed over the
/// subgroup's generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSolution {
    pub x_prime: SubgroupWord,
    pub y_prime: SubgroupWord,
}

/// Enumerate x' over the subgroup in shortlex order; for each candidate
/// the matching y' = w^{-1} x'^{-1} h is solved by algebra and certified
/// to lie in the subgroup, exactly for standard parabolic ranges and by
/// bounded search otherwise.
pub fn solve_decomposition_bruteforce(
    w: &Word,
    h: &Word,
    subgroup: &SubgroupSpec,
    budget: &SearchBudget,
) -> Result<SearchOutcome<DecompositionSolution>> {
    budget.validate()?;
    let ctx = *subgroup.ctx();
    ctx.check_word(w)?;
    ctx.check_word(h)?;
    let parabolic = subgroup.as_parabolic_range();
    let w_inv = w.inverse_word();

    let start = Instant::now();
    let states = Cell::new(0u64);
    let stopped = Cell::new(None::<Exhaustion>);
    let mut found: Option<DecompositionSolution> = None;

    walk_ball(subgroup, budget.max_depth, |_, x_plain, x_sw, _| {
        if states.get() >= budget.max_states {
            stopped.set(Some(Exhaustion::States));
            return Ok(ControlFlow::Break(()));
        }
        if start.elapsed().as_millis() as u64 >= budget.time_limit_ms {
            stopped.set(Some(Exhaustion::Time));
            return Ok(ControlFlow::Break(()));
        }
        states.set(states.get() + 1);
        let y_plain = w_inv.cat_reduce(&x_plain.inverse_word()).cat_reduce(h);
        let y_sw = match parabolic {
            Some(range) => parabolic_express(&ctx, &y_plain, range)?
                .map(|expr| SubgroupWord::from_parabolic_word(range, &expr)),
            None => bounded_membership_search(&y_plain, subgroup, budget.max_depth)?,
        };
        if let Some(y_prime) = y_sw {
            found = Some(DecompositionSolution {
                x_prime: x_sw.clone(),
                y_prime,
            });
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;

    if let Some(sol) = &found {
        let x = subgroup_word_eval(subgroup, &sol.x_prime)?;
        let y = subgroup_word_eval(subgroup, &sol.y_prime)?;
        let rebuilt = x.cat_reduce(w).cat_reduce(&y);
        debug_assert!(ctx.equals(&rebuilt, h)?);
    }
    let exhausted = match (&found, stopped.get()) {
        (Some(_), _) => None,
        (None, Some(reason)) => Some(reason),
        (None, None) => Some(Exhaustion::Depth),
    };
    Ok(SearchOutcome {
        found,
        stats: SearchStats {
            states_explored: states.get(),
            elapsed_ms: start.elapsed().as_millis() as u64,
            exhausted,
        },
    })
}

/// The eavesdropper's key recovery: with x' w y' equal to Alice's message
/// and both parts inside the commuting subgroup, x' (msg_bob) y' equals
/// the honest shared key.
pub fn kolee_recover_key(
    transcript: &KoLeeTranscript,
    solution: &DecompositionSolution,
) -> Result<SharedKey> {
    let public = &transcript.public;
    let ctx = public.ctx();
    let x = subgroup_word_eval(public.a_side(), &solution.x_prime)?;
    let y = subgroup_word_eval(public.a_side(), &solution.y_prime)?;
    let rebuilt = x.cat_reduce(public.base()).cat_reduce(&y);
    if !ctx.equals(&rebuilt, &transcript.msg_alice)? {
        return Err(BraidError::DecompositionInvariant);
    }
    let key_word = x.cat_reduce(&transcript.msg_bob).cat_reduce(&y);
    SharedKey::from_word(ctx, &key_word)
}

/// Brute-force conjugacy search: the shortlex-least x over the alphabet
/// with g^x = h. With a subgroup alphabet this is the harder restricted
/// variant; solutions then lie in the subgroup by construction.
pub fn solve_csp_bruteforce(
    g: &Word,
    h: &Word,
    alphabet: &SubgroupSpec,
    budget: &SearchBudget,
) -> Result<SearchOutcome<SubgroupWord>> {
    budget.validate()?;
    let ctx = *alphabet.ctx();
    ctx.check_word(g)?;
    ctx.check_word(h)?;
    let target = ctx.normal_form(h)?.canonical_bytes();

    let start = Instant::now();
    let states = Cell::new(0u64);
    let stopped = Cell::new(None::<Exhaustion>);
    let mut found: Option<SubgroupWord> = None;

    walk_ball(alphabet, budget.max_depth, |_, x_plain, x_sw, _| {
        if states.get() >= budget.max_states {
            stopped.set(Some(Exhaustion::States));
            return Ok(ControlFlow::Break(()));
        }
        if start.elapsed().as_millis() as u64 >= budget.time_limit_ms {
            stopped.set(Some(Exhaustion::Time));
            return Ok(ControlFlow::Break(()));
        }
        states.set(states.get() + 1);
        let conj = ctx.conjugate(g, x_plain)?;
        if ctx.normal_form(&conj)?.canonical_bytes() == target {
            found = Some(x_sw.clone());
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;

    if let Some(sw) = &found {
        let x = subgroup_word_eval(alphabet, sw)?;
        debug_assert!(ctx.equals(&ctx.conjugate(g, &x)?, h)?);
    }
    let exhausted = match (&found, stopped.get()) {
        (Some(_), _) => None,
        (None, Some(reason)) => Some(reason),
        (None, None) => Some(Exhaustion::Depth),
    };
    Ok(SearchOutcome {
        found,
        stats: SearchStats {
            states_explored: states.get(),
            elapsed_ms: start.elapsed().as_millis() as u64,
            exhausted,
        },
    })
}

/// Check a candidate against the transcript: conjugating every public
/// generator of the relevant tuple must reproduce the conjugated tuple.
pub fn verify_aag_conjugacy(
    transcript: &AagTranscript,
    candidate: &Word,
    side: Side,
) -> Result<bool> {
    let public = &transcript.public;
    let ctx = public.ctx();
    ctx.check_word(candidate)?;
    let (tuple, observed) = match side {
        Side::Alice => (public.b_tuple(), &transcript.b_conj),
        Side::Bob => (public.a_tuple(), &transcript.a_conj),
    };
    for (g, seen) in tuple.generators().iter().zip(observed.iter()) {
        if !ctx.equals(&ctx.conjugate(g, candidate)?, seen)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The adversary's key attempt from two conjugacy solutions: their
/// commutator. Both candidates must pass transcript verification; the
/// result is not guaranteed to equal the honest key.
pub fn aag_adversary_key(
    transcript: &AagTranscript,
    x_prime: &Word,
    y_prime: &Word,
) -> Result<SharedKey> {
    if !verify_aag_conjugacy(transcript, x_prime, Side::Alice)?
        || !verify_aag_conjugacy(transcript, y_prime, Side::Bob)?
    {
        return Err(BraidError::VerificationFailed);
    }
    let ctx = transcript.public.ctx();
    let key_word = ctx.commutator(x_prime, y_prime)?;
    SharedKey::from_word(ctx, &key_word)
}

/// A bundled experiment: an honest run, forged candidates x' = c_b x and
/// y' = c_a y built from centralizing elements, and the predicted outcome
/// of the adversary's key attempt.
#[derive(Debug, Clone)]
pub struct CentralizerScenario {
    public: AagPublic,
    x: SubgroupWord,
    y: SubgroupWord,
    c_a: Word,
    c_b: Word,
    x_prime: Word,
    y_prime: Word,
    predicted_success: bool,
}

/// The measured outcome of a centralizer scenario.
#[derive(Debug, Clone)]
pub struct CentralizerOutcome {
    pub transcript: AagTranscript,
    pub honest_key: SharedKey,
    pub adversary_key: SharedKey,
    pub key_match: bool,
}

/// Validate the centralizing preconditions and bundle the scenario.
/// `predicted_success` is the commutation of c_a and c_b.
pub fn build_centralizer_scenario(
    public: &AagPublic,
    x: &SubgroupWord,
    y: &SubgroupWord,
    c_a: &Word,
    c_b: &Word,
) -> Result<CentralizerScenario> {
    let ctx = public.ctx();
    ctx.check_word(c_a)?;
    ctx.check_word(c_b)?;
    x.validate_against(public.a_tuple())?;
    y.validate_against(public.b_tuple())?;
    for b_j in public.b_tuple().generators() {
        let lhs = ctx.multiply(c_b, b_j)?;
        let rhs = ctx.multiply(b_j, c_b)?;
        if !ctx.equals(&lhs, &rhs)? {
            return Err(BraidError::NotCentralizing { side: 'b' });
        }
    }
    for a_i in public.a_tuple().generators() {
        let lhs = ctx.multiply(c_a, a_i)?;
        let rhs = ctx.multiply(a_i, c_a)?;
        if !ctx.equals(&lhs, &rhs)? {
            return Err(BraidError::NotCentralizing { side: 'a' });
        }
    }
    let x_plain = subgroup_word_eval(public.a_tuple(), x)?;
    let y_plain = subgroup_word_eval(public.b_tuple(), y)?;
    let x_prime = c_b.cat_reduce(&x_plain);
    let y_prime = c_a.cat_reduce(&y_plain);
    let predicted_success = ctx.equals(&ctx.multiply(c_a, c_b)?, &ctx.multiply(c_b, c_a)?)?;
    Ok(CentralizerScenario {
        public: public.clone(),
        x: x.clone(),
        y: y.clone(),
        c_a: c_a.clone(),
        c_b: c_b.clone(),
        x_prime,
        y_prime,
        predicted_success,
    })
}

impl CentralizerScenario {
    pub fn public(&self) -> &AagPublic {
        &self.public
    }

    pub fn x_prime(&self) -> &Word {
        &self.x_prime
    }

    pub fn y_prime(&self) -> &Word {
        &self.y_prime
    }

    pub fn c_a(&self) -> &Word {
        &self.c_a
    }

    pub fn c_b(&self) -> &Word {
        &self.c_b
    }

    pub fn predicted_success(&self) -> bool {
        self.predicted_success
    }

    /// Run the honest protocol, mount the forged-key attempt, and compare.
    pub fn execute(&self) -> Result<CentralizerOutcome> {
        let (transcript, honest_key, bob_key) = run_aag(&self.public, &self.x, &self.y)?;
        debug_assert_eq!(honest_key.bytes(), bob_key.bytes());
        let adversary_key = aag_adversary_key(&transcript, &self.x_prime, &self.y_prime)?;
        let key_match = adversary_key.bytes() == honest_key.bytes();
        Ok(CentralizerOutcome {
            transcript,
            honest_key,
            adversary_key,
            key_match,
        })
    }
}

/// One attack run in the external report shape.
#[derive(Debug, Clone, Serialize)]
pub struct AttackReport {
    pub attack: String,
    pub instance: AttackInstance,
    pub solution: AttackSolutionField,
    pub recovered_key: Option<String>,
    pub honest_key: Option<String>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub predicted_success: Option<bool>,
    pub states_explored: u64,
    pub elapsed_ms: u64,
    pub exhausted: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AttackInstance {
    KoLee(KoLeeTranscript),
    Aag(AagTranscript),
    Csp {
        n: u16,
        g: Word,
        h: Word,
        alphabet: SubgroupSpec,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AttackSolutionField {
    Decomposition(Option<DecompositionSolution>),
    Conjugator(Option<SubgroupWord>),
    Forged { x_prime: Word, y_prime: Word },
}

/// Mount the decomposition attack on a transcript and compare against the
/// honest key.
pub fn decomposition_attack_report(
    transcript: &KoLeeTranscript,
    honest_key: &SharedKey,
    budget: &SearchBudget,
) -> Result<AttackReport> {
    let outcome = solve_decomposition_bruteforce(
        transcript.public.base(),
        &transcript.msg_alice,
        transcript.public.a_side(),
        budget,
    )?;
    let recovered = outcome
        .found
        .as_ref()
        .map(|sol| kolee_recover_key(transcript, sol))
        .transpose()?;
    let matched = recovered
        .as_ref()
        .is_some_and(|k| k.bytes() == honest_key.bytes());
    Ok(AttackReport {
        attack: "decomposition".into(),
        instance: AttackInstance::KoLee(transcript.clone()),
        solution: AttackSolutionField::Decomposition(outcome.found),
        recovered_key: recovered.map(|k| k.hex()),
        honest_key: Some(honest_key.hex()),
        matched,
        predicted_success: None,
        states_explored: outcome.stats.states_explored,
        elapsed_ms: outcome.stats.elapsed_ms,
        exhausted: outcome.stats.exhausted.map(|e| e.label().to_string()),
    })
}

/// Mount a (possibly subgroup-restricted) conjugacy search and report it.
/// `matched` records whether a conjugator was found at all.
pub fn csp_attack_report(
    g: &Word,
    h: &Word,
    alphabet: &SubgroupSpec,
    budget: &SearchBudget,
) -> Result<AttackReport> {
    let outcome = solve_csp_bruteforce(g, h, alphabet, budget)?;
    let matched = outcome.found.is_some();
    Ok(AttackReport {
        attack: "csp-aag".into(),
        instance: AttackInstance::Csp {
            n: alphabet.ctx().n(),
            g: g.clone(),
            h: h.clone(),
            alphabet: alphabet.clone(),
        },
        solution: AttackSolutionField::Conjugator(outcome.found),
        recovered_key: None,
        honest_key: None,
        matched,
        predicted_success: None,
        states_explored: outcome.stats.states_explored,
        elapsed_ms: outcome.stats.elapsed_ms,
        exhausted: outcome.stats.exhausted.map(|e| e.label().to_string()),
    })
}

/// Execute a centralizer scenario and report the forged-key comparison.
pub fn centralizer_attack_report(scenario: &CentralizerScenario) -> Result<AttackReport> {
    let start = Instant::now();
    let outcome = scenario.execute()?;
    Ok(AttackReport {
        attack: "csp-aag".into(),
        instance: AttackInstance::Aag(outcome.transcript.clone()),
        solution: AttackSolutionField::Forged {
            x_prime: scenario.x_prime.clone(),
            y_prime: scenario.y_prime.clone(),
        },
        recovered_key: Some(outcome.adversary_key.hex()),
        honest_key: Some(outcome.honest_key.hex()),
        matched: outcome.key_match,
        predicted_success: Some(scenario.predicted_success),
        states_explored: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
        exhausted: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::BraidContext;
    use crate::protocol::{run_kolee, KoLeePublic};
    use crate::subgroup::standard_split;
    use crate::word::Sign;

    fn ctx(n: usize) -> BraidContext {
        BraidContext::new(n).unwrap()
    }

    fn kolee_b4(w_entries: &[i32]) -> (BraidContext, KoLeePublic) {
        let b4 = ctx(4);
        let (a, b) = standard_split(&b4, 2).unwrap();
        let w = b4.make_word(w_entries).unwrap();
        (b4, KoLeePublic::new(b4, w, a, b).unwrap())
    }

    fn aag_b4() -> (BraidContext, AagPublic) {
        let b4 = ctx(4);
        let a = SubgroupSpec::with_default_labels(
            b4,
            vec![b4.make_word(&[1]).unwrap(), b4.make_word(&[3]).unwrap()],
        )
        .unwrap();
        let b = SubgroupSpec::with_default_labels(b4, vec![b4.make_word(&[2]).unwrap()]).unwrap();
        (b4, AagPublic::new(b4, a, b).unwrap())
    }

    fn budget(depth: usize) -> SearchBudget {
        SearchBudget::new(depth, 1_000_000, 30_000).unwrap()
    }

    #[test]
    fn trivial_message_decomposes_trivially() {
        let (_, public) = kolee_b4(&[2]);
        let outcome =
            solve_decomposition_bruteforce(public.base(), public.base(), public.a_side(), &budget(4))
                .unwrap();
        let sol = outcome.found.unwrap();
        assert!(sol.x_prime.is_empty());
        assert!(sol.y_prime.is_empty());
    }

    #[test]
    fn b4_message_decomposes_at_depth_one() {
        let (b4, public) = kolee_b4(&[2]);
        let msg = b4.make_word(&[-1, 2, 1]).unwrap();
        let outcome =
            solve_decomposition_bruteforce(public.base(), &msg, public.a_side(), &budget(4))
                .unwrap();
        let sol = outcome.found.unwrap();
        assert_eq!(sol.x_prime.entries(), &[(1, Sign::Neg)]);
        assert_eq!(sol.y_prime.entries(), &[(1, Sign::Pos)]);
    }

    #[test]
    fn undecomposable_message_reports_exhaustion() {
        // sigma_3^{-1} sigma_2 sigma_3 admits no decomposition over <sigma_1>:
        // the permutation obstruction rules out every exponent pair
        let (b4, public) = kolee_b4(&[2]);
        let h = b4.make_word(&[-3, 2, 3]).unwrap();
        let outcome =
            solve_decomposition_bruteforce(public.base(), &h, public.a_side(), &budget(4))
                .unwrap();
        assert!(outcome.found.is_none());
        assert_eq!(outcome.stats.exhausted, Some(Exhaustion::Depth));
        assert!(outcome.stats.states_explored > 0);
    }

    #[test]
    fn recovered_key_matches_honest_key() {
        let (_, public) = kolee_b4(&[2]);
        let a = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let b = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let (t, key_a, key_b) = run_kolee(&public, &a, &b).unwrap();
        assert_eq!(key_a.bytes(), key_b.bytes());

        let outcome =
            solve_decomposition_bruteforce(public.base(), &t.msg_alice, public.a_side(), &budget(4))
                .unwrap();
        let sol = outcome.found.unwrap();
        let recovered = kolee_recover_key(&t, &sol).unwrap();
        assert_eq!(recovered.bytes(), key_a.bytes());
    }

    #[test]
    fn identity_privates_recover_the_base() {
        let (b4, public) = kolee_b4(&[2]);
        let id = SubgroupWord::identity();
        let (t, key_a, _) = run_kolee(&public, &id, &id).unwrap();
        let sol = DecompositionSolution {
            x_prime: SubgroupWord::identity(),
            y_prime: SubgroupWord::identity(),
        };
        let recovered = kolee_recover_key(&t, &sol).unwrap();
        assert_eq!(recovered.bytes(), key_a.bytes());
        assert_eq!(recovered, SharedKey::from_word(&b4, public.base()).unwrap());
    }

    #[test]
    fn recover_key_rejects_bogus_solutions() {
        let (_, public) = kolee_b4(&[2]);
        let a = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let (t, _, _) = run_kolee(&public, &a, &a).unwrap();
        let bogus = DecompositionSolution {
            x_prime: SubgroupWord::from_entries(vec![(1, Sign::Pos)]),
            y_prime: SubgroupWord::from_entries(vec![(1, Sign::Pos)]),
        };
        assert_eq!(
            kolee_recover_key(&t, &bogus).unwrap_err(),
            BraidError::DecompositionInvariant
        );
    }

    #[test]
    fn decomposition_differing_from_the_private_still_recovers() {
        // base commutes with the whole a-side, so the shortlex-least
        // decomposition is the identity pair, not (a^{-1}, a)
        let (b4, public) = kolee_b4(&[3]);
        let a = SubgroupWord::from_entries(vec![(1, Sign::Pos), (1, Sign::Pos)]);
        let b = SubgroupWord::from_entries(vec![(1, Sign::Neg)]);
        let (t, key_a, _) = run_kolee(&public, &a, &b).unwrap();
        let outcome =
            solve_decomposition_bruteforce(public.base(), &t.msg_alice, public.a_side(), &budget(4))
                .unwrap();
        let sol = outcome.found.unwrap();
        let x = subgroup_word_eval(public.a_side(), &sol.x_prime).unwrap();
        let a_plain = subgroup_word_eval(public.a_side(), &a).unwrap();
        assert!(!b4.equals(&x, &b4.invert(&a_plain).unwrap()).unwrap());
        let recovered = kolee_recover_key(&t, &sol).unwrap();
        assert_eq!(recovered.bytes(), key_a.bytes());
    }

    #[test]
    fn csp_identity_when_targets_coincide() {
        let b3 = ctx(3);
        let g = b3.make_word(&[2]).unwrap();
        let alphabet =
            SubgroupSpec::with_default_labels(b3, b3.generator_alphabet()).unwrap();
        let outcome = solve_csp_bruteforce(&g, &g, &alphabet, &budget(3)).unwrap();
        assert!(outcome.found.unwrap().is_empty());
    }

    #[test]
    fn csp_finds_the_conjugator_at_depth_one() {
        let b3 = ctx(3);
        let g = b3.make_word(&[2]).unwrap();
        let h = b3.make_word(&[-1, 2, 1]).unwrap();
        let alphabet =
            SubgroupSpec::with_default_labels(b3, b3.generator_alphabet()).unwrap();
        let outcome = solve_csp_bruteforce(&g, &h, &alphabet, &budget(3)).unwrap();
        assert_eq!(outcome.found.unwrap().entries(), &[(1, Sign::Pos)]);
    }

    #[test]
    fn restricted_csp_exhausts_without_a_solution() {
        let b3 = ctx(3);
        let g = b3.make_word(&[2]).unwrap();
        let h = b3.make_word(&[-1, 2, 1]).unwrap();
        let restricted =
            SubgroupSpec::with_default_labels(b3, vec![b3.make_word(&[2]).unwrap()]).unwrap();
        let outcome = solve_csp_bruteforce(&g, &h, &restricted, &budget(8)).unwrap();
        assert!(outcome.found.is_none());
        assert_eq!(outcome.stats.exhausted, Some(Exhaustion::Depth));
    }

    #[test]
    fn state_budget_trips() {
        let b3 = ctx(3);
        let g = b3.make_word(&[2]).unwrap();
        let h = b3.make_word(&[-1, 2, 1]).unwrap();
        let restricted =
            SubgroupSpec::with_default_labels(b3, vec![b3.make_word(&[2]).unwrap()]).unwrap();
        let tight = SearchBudget::new(8, 3, 30_000).unwrap();
        let outcome = solve_csp_bruteforce(&g, &h, &restricted, &tight).unwrap();
        assert!(outcome.found.is_none());
        assert_eq!(outcome.stats.exhausted, Some(Exhaustion::States));
        assert_eq!(outcome.stats.states_explored, 3);
    }

    #[test]
    fn honest_candidates_verify() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let (t, _, _) = run_aag(&public, &x, &y).unwrap();
        let x_plain = b4.make_word(&[1, 3]).unwrap();
        let y_plain = b4.make_word(&[2]).unwrap();
        assert!(verify_aag_conjugacy(&t, &x_plain, Side::Alice).unwrap());
        assert!(verify_aag_conjugacy(&t, &y_plain, Side::Bob).unwrap());
        // a non-centralizing forgery fails on at least one coordinate
        assert!(!verify_aag_conjugacy(&t, &b4.make_word(&[1]).unwrap(), Side::Alice).unwrap());
    }

    #[test]
    fn centralizer_forgery_verifies_but_misses_the_key() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let c_b = b4.make_word(&[2]).unwrap();
        let c_a = b4.make_word(&[1]).unwrap();
        let scenario = build_centralizer_scenario(&public, &x, &y, &c_a, &c_b).unwrap();
        assert!(!scenario.predicted_success());

        let outcome = scenario.execute().unwrap();
        assert!(verify_aag_conjugacy(&outcome.transcript, scenario.x_prime(), Side::Alice).unwrap());
        assert!(verify_aag_conjugacy(&outcome.transcript, scenario.y_prime(), Side::Bob).unwrap());
        assert!(!outcome.key_match);
    }

    #[test]
    fn central_forgery_recovers_the_key() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let delta_sq = b4.make_word(&[1, 2, 1, 3, 2, 1, 1, 2, 1, 3, 2, 1]).unwrap();
        let c_a = b4.make_word(&[1]).unwrap();
        let scenario = build_centralizer_scenario(&public, &x, &y, &c_a, &delta_sq).unwrap();
        assert!(scenario.predicted_success());
        let outcome = scenario.execute().unwrap();
        assert!(outcome.key_match);
    }

    #[test]
    fn central_c_a_variant_also_recovers() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let delta_sq = b4.make_word(&[1, 2, 1, 3, 2, 1, 1, 2, 1, 3, 2, 1]).unwrap();
        let c_b = b4.make_word(&[2]).unwrap();
        let scenario = build_centralizer_scenario(&public, &x, &y, &delta_sq, &c_b).unwrap();
        assert!(scenario.predicted_success());
        assert!(scenario.execute().unwrap().key_match);
    }

    #[test]
    fn identity_forgeries_predict_success() {
        let (_, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let scenario =
            build_centralizer_scenario(&public, &x, &y, &Word::identity(), &Word::identity())
                .unwrap();
        assert!(scenario.predicted_success());
        assert!(scenario.execute().unwrap().key_match);
    }

    #[test]
    fn non_centralizing_candidates_are_rejected() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        // sigma_1 does not commute with the b generator sigma_2
        let err = build_centralizer_scenario(
            &public,
            &x,
            &y,
            &Word::identity(),
            &b4.make_word(&[1]).unwrap(),
        )
        .unwrap_err();
        assert_eq!(err, BraidError::NotCentralizing { side: 'b' });
    }

    #[test]
    fn honest_pair_as_adversary_matches() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let (t, key, _) = run_aag(&public, &x, &y).unwrap();
        let adv = aag_adversary_key(
            &t,
            &b4.make_word(&[1, 3]).unwrap(),
            &b4.make_word(&[2]).unwrap(),
        )
        .unwrap();
        assert_eq!(adv.bytes(), key.bytes());
    }

    #[test]
    fn adversary_key_requires_verification() {
        let (b4, public) = aag_b4();
        let x = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Pos)]);
        let y = SubgroupWord::from_entries(vec![(1, Sign::Pos)]);
        let (t, _, _) = run_aag(&public, &x, &y).unwrap();
        assert_eq!(
            aag_adversary_key(&t, &b4.make_word(&[2]).unwrap(), &b4.make_word(&[2]).unwrap())
                .unwrap_err(),
            BraidError::VerificationFailed
        );
    }

    #[test]
    fn budget_must_be_positive() {
        assert!(SearchBudget::new(0, 1, 1).is_err());
        assert!(SearchBudget::new(1, 0, 1).is_err());
        assert!(SearchBudget::new(1, 1, 0).is_err());
    }
}
