//! The single scenario schema covering both protocols and all attack
//! types, plus seeded instance generation and the simulate/attack drivers.
//!
//! All randomness flows from the scenario-level 64-bit seed; per-party
//! sub-seeds are derived by fixed mixing so a scenario file reproduces the
//! same run everywhere. Identity privates are valid algebra but useless
//! keys, so seeded generation redraws on them.

use serde::{Deserialize, Serialize};

use braid_core::{
    centralizer_attack_report, csp_attack_report, decomposition_attack_report, derive_seed,
    run_aag, run_kolee, standard_split, subgroup_word_eval, AagPublic, AagTranscript, AttackReport,
    BraidContext, KoLeePublic, KoLeeTranscript, SearchBudget, SharedKey, Sign, SplitMix64,
    SubgroupSpec, SubgroupWord, Word,
};

use crate::exit::{CliError, CliResult};

const TAG_ALICE: u64 = 1;
const TAG_BOB: u64 = 2;
const TAG_BASE: u64 = 3;
const DEFAULT_PRIV_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolTag {
    KoLee,
    Aag,
    Csp,
}

impl ProtocolTag {
    pub fn name(&self) -> &'static str {
        match self {
            ProtocolTag::KoLee => "kolee",
            ProtocolTag::Aag => "aag",
            ProtocolTag::Csp => "csp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackType {
    Decomposition,
    Csp,
    Centralizer,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackSection {
    #[serde(rename = "type")]
    pub attack_type: AttackType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<SearchBudget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_a: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_b: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<SubgroupSpec>,
}

/// One self-contained experiment: protocol parameters, privates (explicit
/// or seeded) and an optional attack section.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub protocol: ProtocolTag,
    pub n: u16,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<u16>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_subgroup: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_subgroup: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_tuple: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_tuple: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub private_alice: Option<SubgroupWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub private_bob: Option<SubgroupWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priv_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attack: Option<AttackSection>,
}

impl Scenario {
    pub fn from_json(text: &str) -> CliResult<Scenario> {
        let scenario: Scenario = serde_json::from_str(text)?;
        if scenario.schema != 1 {
            return Err(CliError::input(format!(
                "unsupported schema version {}",
                scenario.schema
            )));
        }
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn ctx(&self) -> CliResult<BraidContext> {
        Ok(BraidContext::new(usize::from(self.n))?)
    }
}

/// A fully resolved key-exchange run: public data plus both privates.
pub enum Instance {
    KoLee {
        public: KoLeePublic,
        alice: SubgroupWord,
        bob: SubgroupWord,
    },
    Aag {
        public: AagPublic,
        alice: SubgroupWord,
        bob: SubgroupWord,
    },
}

/// Entry-by-entry seeded draw over a spec's generators: k = next % 2m
/// picks generator k/2+1, inverted for odd k.
pub fn random_subgroup_word(spec: &SubgroupSpec, len: usize, seed: u64) -> SubgroupWord {
    let mut rng = SplitMix64::new(seed);
    let m = spec.len() as u64;
    SubgroupWord::from_entries(
        (0..len)
            .map(|_| {
                let k = rng.next_below(2 * m);
                (
                    (k / 2 + 1) as u16,
                    if k % 2 == 0 { Sign::Pos } else { Sign::Neg },
                )
            })
            .collect(),
    )
}

/// Seeded private that evaluates to a non-identity element; the retry
/// counter is folded into the sub-seed tag.
pub fn seeded_private(
    spec: &SubgroupSpec,
    len: usize,
    master: u64,
    tag: u64,
) -> CliResult<SubgroupWord> {
    for attempt in 0..64u64 {
        let seed = derive_seed(master, tag + 1000 * attempt);
        let sw = random_subgroup_word(spec, len, seed);
        let val = subgroup_word_eval(spec, &sw)?;
        if !spec.ctx().is_trivial(&val)? {
            return Ok(sw);
        }
    }
    Err(CliError::input(
        "could not draw a non-identity private in 64 attempts",
    ))
}

/// Seeded non-identity word over the full generator alphabet.
pub fn seeded_base_word(ctx: &BraidContext, len: usize, master: u64) -> CliResult<Word> {
    let alphabet = ctx.generator_alphabet();
    for attempt in 0..64u64 {
        let seed = derive_seed(master, TAG_BASE + 1000 * attempt);
        let w = ctx.random_word(&alphabet, len, seed)?;
        if !ctx.is_trivial(&w)? {
            return Ok(w);
        }
    }
    Err(CliError::input(
        "could not draw a non-identity base word in 64 attempts",
    ))
}

fn resolve_privates(
    scenario: &Scenario,
    alice_spec: &SubgroupSpec,
    bob_spec: &SubgroupSpec,
) -> CliResult<(SubgroupWord, SubgroupWord)> {
    match (&scenario.private_alice, &scenario.private_bob) {
        (Some(a), Some(b)) => {
            a.validate_against(alice_spec)?;
            b.validate_against(bob_spec)?;
            Ok((a.clone(), b.clone()))
        }
        (None, None) => {
            let seed = scenario
                .seed
                .ok_or_else(|| CliError::input("scenario needs explicit privates or a seed"))?;
            let len = scenario.priv_len.unwrap_or(DEFAULT_PRIV_LEN);
            Ok((
                seeded_private(alice_spec, len, seed, TAG_ALICE)?,
                seeded_private(bob_spec, len, seed, TAG_BOB)?,
            ))
        }
        _ => Err(CliError::input(
            "provide both private_alice and private_bob, or neither",
        )),
    }
}

/// Resolve the scenario into a runnable instance (protocols only).
pub fn build_instance(scenario: &Scenario) -> CliResult<Instance> {
    let ctx = scenario.ctx()?;
    match scenario.protocol {
        ProtocolTag::KoLee => {
            let (a_spec, b_spec) = match (&scenario.split, &scenario.a_subgroup, &scenario.b_subgroup)
            {
                (Some(l), None, None) => standard_split(&ctx, *l)?,
                (None, Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => {
                    return Err(CliError::input(
                        "kolee scenario needs either split or both explicit subgroups",
                    ))
                }
            };
            let w = scenario
                .w
                .clone()
                .ok_or_else(|| CliError::input("kolee scenario needs the public base word w"))?;
            let public = KoLeePublic::new(ctx, w, a_spec, b_spec)?;
            let (alice, bob) = resolve_privates(scenario, public.a_side(), public.b_side())?;
            Ok(Instance::KoLee { public, alice, bob })
        }
        ProtocolTag::Aag => {
            let (a_tuple, b_tuple) = match (&scenario.a_tuple, &scenario.b_tuple) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => return Err(CliError::input("aag scenario needs a_tuple and b_tuple")),
            };
            let public = AagPublic::new(ctx, a_tuple, b_tuple)?;
            let (alice, bob) = resolve_privates(scenario, public.a_tuple(), public.b_tuple())?;
            Ok(Instance::Aag { public, alice, bob })
        }
        ProtocolTag::Csp => Err(CliError::input(
            "csp scenarios carry no key exchange; run the attack command",
        )),
    }
}

/// What `simulate` prints: the transcript, both key hexes and whether
/// they agree.
#[derive(Debug, Serialize)]
pub struct SimulateOutput {
    pub transcript: TranscriptOutput,
    pub key_alice: String,
    pub key_bob: String,
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum TranscriptOutput {
    KoLee(KoLeeTranscript),
    Aag(AagTranscript),
}

pub fn run_simulate(scenario: &Scenario) -> CliResult<SimulateOutput> {
    match build_instance(scenario)? {
        Instance::KoLee { public, alice, bob } => {
            let (transcript, key_a, key_b) = run_kolee(&public, &alice, &bob)?;
            Ok(SimulateOutput {
                matched: key_a.bytes() == key_b.bytes(),
                key_alice: key_a.hex(),
                key_bob: key_b.hex(),
                transcript: TranscriptOutput::KoLee(transcript),
            })
        }
        Instance::Aag { public, alice, bob } => {
            let (transcript, key_a, key_b) = run_aag(&public, &alice, &bob)?;
            Ok(SimulateOutput {
                matched: key_a.bytes() == key_b.bytes(),
                key_alice: key_a.hex(),
                key_bob: key_b.hex(),
                transcript: TranscriptOutput::Aag(transcript),
            })
        }
    }
}

pub fn run_attack(scenario: &Scenario) -> CliResult<AttackReport> {
    let attack = scenario
        .attack
        .as_ref()
        .ok_or_else(|| CliError::input("scenario has no attack section"))?;
    let budget = attack.budget.unwrap_or_default();
    budget.validate()?;
    match attack.attack_type {
        AttackType::Decomposition => {
            let Instance::KoLee { public, alice, bob } = build_instance(scenario)? else {
                return Err(CliError::input(
                    "decomposition attack needs a kolee scenario",
                ));
            };
            let (transcript, honest, _) = run_kolee(&public, &alice, &bob)?;
            Ok(decomposition_attack_report(&transcript, &honest, &budget)?)
        }
        AttackType::Csp => {
            let ctx = scenario.ctx()?;
            let g = attack
                .g
                .clone()
                .ok_or_else(|| CliError::input("csp attack needs g"))?;
            let h = attack
                .h
                .clone()
                .ok_or_else(|| CliError::input("csp attack needs h"))?;
            let alphabet = match &attack.alphabet {
                Some(spec) => {
                    ctx.same_as(spec.ctx())?;
                    spec.clone()
                }
                None => {
                    let labels = (1..ctx.n()).map(|i| format!("s{i}")).collect();
                    SubgroupSpec::new(ctx, ctx.generator_alphabet(), labels)?
                }
            };
            Ok(csp_attack_report(&g, &h, &alphabet, &budget)?)
        }
        AttackType::Centralizer => {
            let Instance::Aag { public, alice, bob } = build_instance(scenario)? else {
                return Err(CliError::input("centralizer attack needs an aag scenario"));
            };
            let c_a = attack
                .c_a
                .clone()
                .ok_or_else(|| CliError::input("centralizer attack needs c_a"))?;
            let c_b = attack
                .c_b
                .clone()
                .ok_or_else(|| CliError::input("centralizer attack needs c_b"))?;
            let built =
                braid_core::build_centralizer_scenario(&public, &alice, &bob, &c_a, &c_b)?;
            Ok(centralizer_attack_report(&built)?)
        }
    }
}

/// The honest key of a scenario's run, used by the session runner.
pub fn honest_keys(scenario: &Scenario) -> CliResult<(SharedKey, SharedKey)> {
    match build_instance(scenario)? {
        Instance::KoLee { public, alice, bob } => {
            let (_, a, b) = run_kolee(&public, &alice, &bob)?;
            Ok((a, b))
        }
        Instance::Aag { public, alice, bob } => {
            let (_, a, b) = run_aag(&public, &alice, &bob)?;
            Ok((a, b))
        }
    }
}

/// Deterministically generate a scenario file body from CLI parameters.
pub fn generate(
    protocol: ProtocolTag,
    n: u16,
    split: Option<u16>,
    priv_len: usize,
    seed: u64,
) -> CliResult<Scenario> {
    let ctx = BraidContext::new(usize::from(n))?;
    match protocol {
        ProtocolTag::KoLee => {
            let l = split.unwrap_or(n / 2);
            standard_split(&ctx, l)?; // bounds check up front
            let w = seeded_base_word(&ctx, priv_len.max(2), seed)?;
            Ok(Scenario {
                schema: 1,
                protocol: ProtocolTag::KoLee,
                n,
                split: Some(l),
                w: Some(w),
                a_subgroup: None,
                b_subgroup: None,
                a_tuple: None,
                b_tuple: None,
                private_alice: None,
                private_bob: None,
                seed: Some(seed),
                priv_len: Some(priv_len),
                attack: Some(AttackSection {
                    attack_type: AttackType::Decomposition,
                    budget: Some(SearchBudget::default()),
                    c_a: None,
                    c_b: None,
                    g: None,
                    h: None,
                    alphabet: None,
                }),
            })
        }
        ProtocolTag::Aag => {
            let (a_tuple, b_tuple) = interleaved_tuples(&ctx)?;
            Ok(Scenario {
                schema: 1,
                protocol: ProtocolTag::Aag,
                n,
                split: None,
                w: None,
                a_subgroup: None,
                b_subgroup: None,
                a_tuple: Some(a_tuple),
                b_tuple: Some(b_tuple),
                private_alice: None,
                private_bob: None,
                seed: Some(seed),
                priv_len: Some(priv_len),
                attack: None,
            })
        }
        ProtocolTag::Csp => Err(CliError::input(
            "csp scenarios are written by hand; gen supports kolee and aag",
        )),
    }
}

/// The interleaved single-generator tuples a = (sigma_1, sigma_3, ...),
/// b = (sigma_2, sigma_4, ...): adjacent indices keep the commutator keys
/// nontrivial.
pub fn interleaved_tuples(ctx: &BraidContext) -> CliResult<(SubgroupSpec, SubgroupSpec)> {
    let odds: Vec<u16> = (1..ctx.n()).step_by(2).collect();
    let evens: Vec<u16> = (2..ctx.n()).step_by(2).collect();
    if evens.is_empty() {
        return Err(CliError::input(
            "aag generation needs n >= 4 for two nonempty tuples",
        ));
    }
    let side = |indices: &[u16], prefix: &str| -> CliResult<SubgroupSpec> {
        let gens = indices
            .iter()
            .map(|&i| ctx.generator(i))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = (1..=indices.len()).map(|k| format!("{prefix}{k}")).collect();
        Ok(SubgroupSpec::new(*ctx, gens, labels)?)
    };
    Ok((side(&odds, "a")?, side(&evens, "b")?))
}
