//! Exact arithmetic in braid groups B_n, plus the protocol and adversary
//! machinery built on top of it.
//!
//! The element pipeline: [`Word`]s are plain letter sequences; the
//! [`BraidContext`] turns them into canonical [`NormalForm`]s (Garside
//! left normal form) whose componentwise equality decides the word
//! problem, with handle reduction as an independent second decision
//! procedure. Subgroups are generator tuples; private keys are abstract
//! words over those tuples. The `protocol` module runs the conjugation
//! exchange and the commutator agreement; the `attack` module runs the
//! bounded solvers against them.

pub mod attack;
pub mod context;
pub mod error;
pub mod handle;
pub mod normal;
pub mod perm;
pub mod protocol;
pub mod rng;
pub mod subgroup;
pub mod word;

pub use context::{BraidContext, MAX_STRANDS};
pub use error::{BraidError, Result};
pub use handle::DEFAULT_HANDLE_BUDGET;
pub use normal::NormalForm;
pub use perm::PermutationBraid;
pub use protocol::{
    aag_commit, aag_key_alice, aag_key_bob, kolee_key, kolee_message, run_aag, run_kolee,
    AagPublic, AagTranscript, KoLeePublic, KoLeeTranscript, SharedKey, Side,
};
pub use rng::{derive_seed, SplitMix64};
pub use subgroup::{
    bounded_membership_search, commute_elementwise, eval_at_tuple, parabolic_express,
    parabolic_membership, standard_split, subgroup_word_eval, GeneratorRange, SubgroupSpec,
    SubgroupWord,
};
pub use word::{Letter, Sign, Word};

pub use attack::{
    aag_adversary_key, build_centralizer_scenario, centralizer_attack_report,
    csp_attack_report, decomposition_attack_report, kolee_recover_key,
    solve_csp_bruteforce, solve_decomposition_bruteforce, verify_aag_conjugacy, AttackReport,
    CentralizerOutcome, CentralizerScenario, DecompositionSolution, Exhaustion, SearchBudget,
    SearchOutcome, SearchStats,
};
