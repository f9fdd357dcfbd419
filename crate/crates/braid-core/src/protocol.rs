//! Executable key exchange over the braid workbench.
//!
//! Two protocols are provided: the conjugation exchange over a public base
//! element and a commuting subgroup pair, and the commutator agreement
//! over two public tuples, where each party's private element is held as
//! an abstract word over its tuple. Both produce a transcript capturing
//! exactly what an eavesdropper sees, plus each party's [`SharedKey`].

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::context::BraidContext;
use crate::error::{BraidError, Result};
use crate::normal::NormalForm;
use crate::subgroup::{
    commute_elementwise, eval_at_tuple, subgroup_word_eval, SubgroupSpec, SubgroupWord,
};
use crate::word::Word;

/// Which party an operation acts for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Alice,
    Bob,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Alice => "alice",
            Side::Bob => "bob",
        }
    }
}

/// A derived key: the group element in normal form plus its canonical
/// byte serialization, which is the key material.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedKey {
    element: NormalForm,
    bytes: Vec<u8>,
}

impl SharedKey {
    pub fn from_word(ctx: &BraidContext, w: &Word) -> Result<SharedKey> {
        let element = ctx.normal_form(w)?;
        let bytes = element.canonical_bytes();
        Ok(SharedKey { element, bytes })
    }

    pub fn element(&self) -> &NormalForm {
        &self.element
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Lowercase hex of the canonical bytes, the external key format.
    pub fn hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Public data of the conjugation exchange: the base element and the two
/// commuting subgroups.
#[derive(Debug, Clone, PartialEq)]
pub struct KoLeePublic {
    ctx: BraidContext,
    base: Word,
    a_side: SubgroupSpec,
    b_side: SubgroupSpec,
}

impl KoLeePublic {
    pub fn new(
        ctx: BraidContext,
        base: Word,
        a_side: SubgroupSpec,
        b_side: SubgroupSpec,
    ) -> Result<KoLeePublic> {
        ctx.check_word(&base)?;
        ctx.same_as(a_side.ctx())?;
        ctx.same_as(b_side.ctx())?;
        if !commute_elementwise(&a_side, &b_side)? {
            return Err(BraidError::NonCommutingSubgroups);
        }
        Ok(KoLeePublic {
            ctx,
            base,
            a_side,
            b_side,
        })
    }

    pub fn ctx(&self) -> &BraidContext {
        &self.ctx
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn a_side(&self) -> &SubgroupSpec {
        &self.a_side
    }

    pub fn b_side(&self) -> &SubgroupSpec {
        &self.b_side
    }

    pub fn side_spec(&self, side: Side) -> &SubgroupSpec {
        match side {
            Side::Alice => &self.a_side,
            Side::Bob => &self.b_side,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct KoLeePublicRepr {
    n: u16,
    w: Word,
    a_subgroup: SubgroupSpec,
    b_subgroup: SubgroupSpec,
}

impl Serialize for KoLeePublic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        KoLeePublicRepr {
            n: self.ctx.n(),
            w: self.base.clone(),
            a_subgroup: self.a_side.clone(),
            b_subgroup: self.b_side.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KoLeePublic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<KoLeePublic, D::Error> {
        use serde::de::Error;
        let repr = KoLeePublicRepr::deserialize(deserializer)?;
        let ctx = BraidContext::new(usize::from(repr.n)).map_err(D::Error::custom)?;
        KoLeePublic::new(ctx, repr.w, repr.a_subgroup, repr.b_subgroup).map_err(D::Error::custom)
    }
}

/// Everything an eavesdropper sees in a conjugation-exchange run.
#[derive(Debug, Clone, PartialEq)]
pub struct KoLeeTranscript {
    pub public: KoLeePublic,
    pub msg_alice: Word,
    pub msg_bob: Word,
}

#[derive(Serialize, Deserialize)]
struct KoLeeMessagesRepr {
    alice: Word,
    bob: Word,
}

#[derive(Serialize, Deserialize)]
struct KoLeeTranscriptRepr {
    protocol: String,
    public: KoLeePublic,
    messages: KoLeeMessagesRepr,
}

impl Serialize for KoLeeTranscript {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        KoLeeTranscriptRepr {
            protocol: "kolee".into(),
            public: self.public.clone(),
            messages: KoLeeMessagesRepr {
                alice: self.msg_alice.clone(),
                bob: self.msg_bob.clone(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KoLeeTranscript {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<KoLeeTranscript, D::Error> {
        use serde::de::Error;
        let repr = KoLeeTranscriptRepr::deserialize(deserializer)?;
        if repr.protocol != "kolee" {
            return Err(D::Error::custom(format!(
                "expected protocol \"kolee\", got {:?}",
                repr.protocol
            )));
        }
        Ok(KoLeeTranscript {
            public: repr.public,
            msg_alice: repr.messages.alice,
            msg_bob: repr.messages.bob,
        })
    }
}

/// One party's outgoing message: its private element conjugating the base.
pub fn kolee_message(public: &KoLeePublic, private: &SubgroupWord, side: Side) -> Result<Word> {
    let spec = public.side_spec(side);
    private.validate_against(spec)?;
    let g = subgroup_word_eval(spec, private)?;
    public.ctx.conjugate(&public.base, &g)
}

/// One party's key: the peer's message conjugated by the own private
/// element.
pub fn kolee_key(
    public: &KoLeePublic,
    private: &SubgroupWord,
    side: Side,
    peer_msg: &Word,
) -> Result<SharedKey> {
    let spec = public.side_spec(side);
    private.validate_against(spec)?;
    public.ctx.check_word(peer_msg)?;
    let g = subgroup_word_eval(spec, private)?;
    let key_word = public.ctx.conjugate(peer_msg, &g)?;
    SharedKey::from_word(&public.ctx, &key_word)
}

/// Full honest run; returns the transcript and both parties' keys.
pub fn run_kolee(
    public: &KoLeePublic,
    a: &SubgroupWord,
    b: &SubgroupWord,
) -> Result<(KoLeeTranscript, SharedKey, SharedKey)> {
    let msg_alice = kolee_message(public, a, Side::Alice)?;
    let msg_bob = kolee_message(public, b, Side::Bob)?;
    let key_alice = kolee_key(public, a, Side::Alice, &msg_bob)?;
    let key_bob = kolee_key(public, b, Side::Bob, &msg_alice)?;
    let transcript = KoLeeTranscript {
        public: public.clone(),
        msg_alice,
        msg_bob,
    };
    Ok((transcript, key_alice, key_bob))
}

/// Public data of the commutator agreement: the two generator tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct AagPublic {
    ctx: BraidContext,
    a_tuple: SubgroupSpec,
    b_tuple: SubgroupSpec,
}

impl AagPublic {
    pub fn new(ctx: BraidContext, a_tuple: SubgroupSpec, b_tuple: SubgroupSpec) -> Result<AagPublic> {
        ctx.same_as(a_tuple.ctx())?;
        ctx.same_as(b_tuple.ctx())?;
        Ok(AagPublic {
            ctx,
            a_tuple,
            b_tuple,
        })
    }

    pub fn ctx(&self) -> &BraidContext {
        &self.ctx
    }

    pub fn a_tuple(&self) -> &SubgroupSpec {
        &self.a_tuple
    }

    pub fn b_tuple(&self) -> &SubgroupSpec {
        &self.b_tuple
    }

    /// The tuple a side draws its private element from.
    pub fn own_tuple(&self, side: Side) -> &SubgroupSpec {
        match side {
            Side::Alice => &self.a_tuple,
            Side::Bob => &self.b_tuple,
        }
    }

    /// The tuple a side conjugates and sends.
    pub fn peer_tuple(&self, side: Side) -> &SubgroupSpec {
        match side {
            Side::Alice => &self.b_tuple,
            Side::Bob => &self.a_tuple,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AagPublicRepr {
    n: u16,
    a_tuple: SubgroupSpec,
    b_tuple: SubgroupSpec,
}

impl Serialize for AagPublic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AagPublicRepr {
            n: self.ctx.n(),
            a_tuple: self.a_tuple.clone(),
            b_tuple: self.b_tuple.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AagPublic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<AagPublic, D::Error> {
        use serde::de::Error;
        let repr = AagPublicRepr::deserialize(deserializer)?;
        let ctx = BraidContext::new(usize::from(repr.n)).map_err(D::Error::custom)?;
        AagPublic::new(ctx, repr.a_tuple, repr.b_tuple).map_err(D::Error::custom)
    }
}

/// Everything an eavesdropper sees in a commutator-agreement run.
#[derive(Debug, Clone, PartialEq)]
pub struct AagTranscript {
    pub public: AagPublic,
    pub b_conj: Vec<Word>,
    pub a_conj: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct AagMessagesRepr {
    b_conj: Vec<Word>,
    a_conj: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct AagTranscriptRepr {
    protocol: String,
    public: AagPublic,
    messages: AagMessagesRepr,
}

impl Serialize for AagTranscript {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AagTranscriptRepr {
            protocol: "aag".into(),
            public: self.public.clone(),
            messages: AagMessagesRepr {
                b_conj: self.b_conj.clone(),
                a_conj: self.a_conj.clone(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AagTranscript {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<AagTranscript, D::Error> {
        use serde::de::Error;
        let repr = AagTranscriptRepr::deserialize(deserializer)?;
        if repr.protocol != "aag" {
            return Err(D::Error::custom(format!(
                "expected protocol \"aag\", got {:?}",
                repr.protocol
            )));
        }
        let t = AagTranscript {
            public: repr.public,
            b_conj: repr.messages.b_conj,
            a_conj: repr.messages.a_conj,
        };
        if t.b_conj.len() != t.public.b_tuple.len() {
            return Err(D::Error::custom("b_conj length does not match the b tuple"));
        }
        if t.a_conj.len() != t.public.a_tuple.len() {
            return Err(D::Error::custom("a_conj length does not match the a tuple"));
        }
        Ok(t)
    }
}

/// One party's outgoing tuple: the peer's public generators conjugated by
/// the own private element.
pub fn aag_commit(public: &AagPublic, private: &SubgroupWord, side: Side) -> Result<Vec<Word>> {
    let own = public.own_tuple(side);
    private.validate_against(own)?;
    let plain = subgroup_word_eval(own, private)?;
    public
        .peer_tuple(side)
        .generators()
        .iter()
        .map(|g| public.ctx.conjugate(g, &plain))
        .collect()
}

/// Alice's key: evaluate her abstract private word at the received
/// conjugated tuple (giving x^y) and multiply by x^{-1} on the left.
pub fn aag_key_alice(public: &AagPublic, x: &SubgroupWord, a_conj: &[Word]) -> Result<SharedKey> {
    if a_conj.len() != public.a_tuple.len() {
        return Err(BraidError::TupleLengthMismatch {
            expected: public.a_tuple.len(),
            got: a_conj.len(),
        });
    }
    x.validate_against(&public.a_tuple)?;
    let x_plain = subgroup_word_eval(&public.a_tuple, x)?;
    let x_conj = eval_at_tuple(&public.ctx, a_conj, x)?;
    let key_word = x_plain.inverse_word().cat_reduce(&x_conj);
    SharedKey::from_word(&public.ctx, &key_word)
}

/// Bob's key: evaluate y at the received tuple (giving y^x), multiply by
/// y^{-1} on the left, and invert the result.
pub fn aag_key_bob(public: &AagPublic, y: &SubgroupWord, b_conj: &[Word]) -> Result<SharedKey> {
    if b_conj.len() != public.b_tuple.len() {
        return Err(BraidError::TupleLengthMismatch {
            expected: public.b_tuple.len(),
            got: b_conj.len(),
        });
    }
    y.validate_against(&public.b_tuple)?;
    let y_plain = subgroup_word_eval(&public.b_tuple, y)?;
    let y_conj = eval_at_tuple(&public.ctx, b_conj, y)?;
    let key_word = y_plain.inverse_word().cat_reduce(&y_conj).inverse_word();
    SharedKey::from_word(&public.ctx, &key_word)
}

/// Full honest run; returns the transcript and both parties' keys.
pub fn run_aag(
    public: &AagPublic,
    x: &SubgroupWord,
    y: &SubgroupWord,
) -> Result<(AagTranscript, SharedKey, SharedKey)> {
    let b_conj = aag_commit(public, x, Side::Alice)?;
    let a_conj = aag_commit(public, y, Side::Bob)?;
    let key_alice = aag_key_alice(public, x, &a_conj)?;
    let key_bob = aag_key_bob(public, y, &b_conj)?;
    let transcript = AagTranscript {
        public: public.clone(),
        b_conj,
        a_conj,
    };
    Ok((transcript, key_alice, key_bob))
}
