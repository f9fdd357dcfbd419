//! Subgroup specifications, the commuting split, and membership machinery.
//!
//! A [`SubgroupSpec`] is a tuple of generator words; a [`SubgroupWord`] is
//! an element recorded abstractly over such a tuple, which is the shape
//! private keys take. Membership comes in two strengths: exact inspection
//! for standard parabolic subgroups (via the negative-positive
//! factorization) and bounded shortlex search for arbitrary tuples, which
//! can certify presence but never absence.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::context::BraidContext;
use crate::error::{BraidError, Result};
use crate::normal::factors_to_word;
use crate::word::{Sign, Word};

/// A tuple of subgroup generators with display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    ctx: BraidContext,
    generators: Vec<Word>,
    labels: Vec<String>,
}

impl SubgroupSpec {
    pub fn new(ctx: BraidContext, generators: Vec<Word>, labels: Vec<String>) -> Result<SubgroupSpec> {
        if generators.is_empty() {
            return Err(BraidError::EmptySubgroup);
        }
        if generators.len() != labels.len() {
            return Err(BraidError::LabelMismatch {
                generators: generators.len(),
                labels: labels.len(),
            });
        }
        for g in &generators {
            ctx.check_word(g)?;
        }
        Ok(SubgroupSpec {
            ctx,
            generators,
            labels,
        })
    }

    /// Generators labelled g1, g2, ...
    pub fn with_default_labels(ctx: BraidContext, generators: Vec<Word>) -> Result<SubgroupSpec> {
        let labels = (1..=generators.len()).map(|i| format!("g{i}")).collect();
        SubgroupSpec::new(ctx, generators, labels)
    }

    pub fn ctx(&self) -> &BraidContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty tuples
    }

    pub fn generator_word(&self, index: u16) -> Result<&Word> {
        self.generators
            .get(usize::from(index).wrapping_sub(1))
            .ok_or(BraidError::SubgroupIndexOutOfRange {
                index,
                count: self.generators.len(),
            })
    }

    /// The spec with every generator conjugated by `y` (labels kept).
    pub fn conjugated(&self, y: &Word) -> Result<SubgroupSpec> {
        let generators = self
            .generators
            .iter()
            .map(|g| self.ctx.conjugate(g, y))
            .collect::<Result<Vec<_>>>()?;
        SubgroupSpec::new(self.ctx, generators, self.labels.clone())
    }

    /// Some(range) iff the generators are exactly the single positive
    /// letters of a consecutive index range, in order.
    pub fn as_parabolic_range(&self) -> Option<GeneratorRange> {
        let mut indices = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            match g.letters() {
                [l] if l.sign == Sign::Pos => indices.push(l.index),
                _ => return None,
            }
        }
        let lo = indices[0];
        let consecutive = indices
            .iter()
            .enumerate()
            .all(|(k, &i)| i == lo + k as u16);
        if !consecutive {
            return None;
        }
        let hi = lo + (indices.len() - 1) as u16;
        GeneratorRange::new(&self.ctx, lo, hi).ok()
    }
}

#[derive(Serialize, Deserialize)]
struct SubgroupSpecRepr {
    n: u16,
    generators: Vec<Word>,
    labels: Vec<String>,
}

impl Serialize for SubgroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubgroupSpecRepr {
            n: self.ctx.n(),
            generators: self.generators.clone(),
            labels: self.labels.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SubgroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<SubgroupSpec, D::Error> {
        use serde::de::Error;
        let repr = SubgroupSpecRepr::deserialize(deserializer)?;
        let ctx = BraidContext::new(usize::from(repr.n)).map_err(D::Error::custom)?;
        SubgroupSpec::new(ctx, repr.generators, repr.labels).map_err(D::Error::custom)
    }
}

/// An element written abstractly over a spec's generators:
/// (1-based generator index, sign) entries.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct SubgroupWord {
    entries: Vec<(u16, Sign)>,
}

impl SubgroupWord {
    pub fn identity() -> SubgroupWord {
        SubgroupWord::default()
    }

    pub fn from_entries(entries: Vec<(u16, Sign)>) -> SubgroupWord {
        SubgroupWord { entries }
    }

    pub fn entries(&self) -> &[(u16, Sign)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, index: u16, sign: Sign) {
        self.entries.push((index, sign));
    }

    pub fn validate_against(&self, spec: &SubgroupSpec) -> Result<()> {
        for &(index, _) in &self.entries {
            if index == 0 || usize::from(index) > spec.len() {
                return Err(BraidError::SubgroupIndexOutOfRange {
                    index,
                    count: spec.len(),
                });
            }
        }
        Ok(())
    }

    /// Word over a parabolic range's letters, rewritten as entries of the
    /// spec whose generators are sigma_lo .. sigma_hi in order.
    pub(crate) fn from_parabolic_word(range: GeneratorRange, w: &Word) -> SubgroupWord {
        SubgroupWord {
            entries: w
                .letters()
                .iter()
                .map(|l| {
                    debug_assert!((range.lo()..=range.hi()).contains(&l.index));
                    (l.index - range.lo() + 1, l.sign)
                })
                .collect(),
        }
    }
}

impl Serialize for SubgroupWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[i32; 2]> = self
            .entries
            .iter()
            .map(|&(i, s)| [i32::from(i), s.as_i32()])
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SubgroupWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<SubgroupWord, D::Error> {
        use serde::de::Error;
        let pairs = Vec::<[i32; 2]>::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(pairs.len());
        for [i, s] in pairs {
            if i < 1 || i > i32::from(u16::MAX) {
                return Err(D::Error::custom(format!("generator index {i} out of range")));
            }
            let sign = match s {
                1 => Sign::Pos,
                -1 => Sign::Neg,
                other => return Err(D::Error::custom(format!("sign must be +-1, got {other}"))),
            };
            entries.push((i as u16, sign));
        }
        Ok(SubgroupWord { entries })
    }
}

/// Inclusive Artin-generator index bounds of a standard parabolic subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorRange {
    lo: u16,
    hi: u16,
}

impl GeneratorRange {
    pub fn new(ctx: &BraidContext, lo: u16, hi: u16) -> Result<GeneratorRange> {
        if lo < 1 || lo > hi || hi > ctx.generator_count() {
            return Err(BraidError::RangeBounds {
                lo,
                hi,
                n: ctx.n(),
            });
        }
        Ok(GeneratorRange { lo, hi })
    }

    pub fn lo(&self) -> u16 {
        self.lo
    }

    pub fn hi(&self) -> u16 {
        self.hi
    }
}

/// The commuting split A = <sigma_1..sigma_{l-1}>, B = <sigma_{l+1}..sigma_{n-1}>.
pub fn standard_split(ctx: &BraidContext, l: u16) -> Result<(SubgroupSpec, SubgroupSpec)> {
    let n = ctx.n();
    if n < 4 || l < 2 || l > n - 2 {
        return Err(BraidError::SplitBounds { n, l });
    }
    let side = |range: std::ops::RangeInclusive<u16>| -> Result<SubgroupSpec> {
        let generators = range
            .clone()
            .map(|i| ctx.generator(i))
            .collect::<Result<Vec<_>>>()?;
        let labels = range.map(|i| format!("s{i}")).collect();
        SubgroupSpec::new(*ctx, generators, labels)
    };
    Ok((side(1..=l - 1)?, side(l + 1..=n - 1)?))
}

/// True iff every generator of `a` commutes with every generator of `b`,
/// which forces the generated subgroups to commute elementwise.
pub fn commute_elementwise(a: &SubgroupSpec, b: &SubgroupSpec) -> Result<bool> {
    a.ctx.same_as(&b.ctx)?;
    for ga in a.generators() {
        for gb in b.generators() {
            let ab = a.ctx.multiply(ga, gb)?;
            let ba = a.ctx.multiply(gb, ga)?;
            if !a.ctx.equals(&ab, &ba)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Substitute the spec's generators (or their inverses) for each entry.
pub fn subgroup_word_eval(spec: &SubgroupSpec, sw: &SubgroupWord) -> Result<Word> {
    eval_at_tuple(&spec.ctx, spec.generators(), sw)
}

/// Evaluate an abstract subgroup word at an arbitrary tuple of the same
/// arity; with the conjugated tuple this is the received-message side of
/// the commutator key agreement.
pub fn eval_at_tuple(ctx: &BraidContext, tuple: &[Word], sw: &SubgroupWord) -> Result<Word> {
    let mut out = Word::identity();
    for &(index, sign) in sw.entries() {
        let g = tuple
            .get(usize::from(index).wrapping_sub(1))
            .ok_or(BraidError::SubgroupIndexOutOfRange {
                index,
                count: tuple.len(),
            })?;
        ctx.check_word(g)?;
        out = match sign {
            Sign::Pos => out.cat_reduce(g),
            Sign::Neg => out.cat_reduce(&g.inverse_word()),
        };
    }
    Ok(out)
}

/// Exact membership in the standard parabolic subgroup on
/// sigma_lo..sigma_hi, decided by inspecting the negative-positive
/// factorization: both positive parts must only cross strands inside
/// [lo, hi+1].
pub fn parabolic_membership(ctx: &BraidContext, g: &Word, range: GeneratorRange) -> Result<bool> {
    let (p, q) = ctx.negative_positive_parts(g)?;
    Ok(p.iter()
        .chain(q.iter())
        .all(|f| f.fixes_outside(range.lo, range.hi + 1)))
}

/// As [`parabolic_membership`], but on success also return `g` rewritten
/// as a word over the range's letters.
pub fn parabolic_express(ctx: &BraidContext, g: &Word, range: GeneratorRange) -> Result<Option<Word>> {
    let (p, q) = ctx.negative_positive_parts(g)?;
    if !p
        .iter()
        .chain(q.iter())
        .all(|f| f.fixes_outside(range.lo, range.hi + 1))
    {
        return Ok(None);
    }
    let expressed = factors_to_word(&p)
        .inverse_word()
        .cat_reduce(&factors_to_word(&q));
    debug_assert!(expressed
        .letters()
        .iter()
        .all(|l| (range.lo..=range.hi).contains(&l.index)));
    Ok(Some(expressed))
}

/// Walk the subgroup's Cayley ball in shortlex order (positive entry
/// before negative, lower generator index first), skipping candidates
/// whose group element was already seen. The visitor receives the
/// canonical bytes, the plain word, the abstract word and the depth of
/// each fresh element; returning `Break` stops the walk. Returns true iff
/// the visitor broke.
pub(crate) fn walk_ball<F>(spec: &SubgroupSpec, max_depth: usize, mut visit: F) -> Result<bool>
where
    F: FnMut(&[u8], &Word, &SubgroupWord, usize) -> Result<ControlFlow<()>>,
{
    let ctx = spec.ctx;
    let identity = Word::identity();
    let identity_sw = SubgroupWord::identity();
    let bytes = ctx.normal_form(&identity)?.canonical_bytes();
    if visit(&bytes, &identity, &identity_sw, 0)?.is_break() {
        return Ok(true);
    }
    let mut visited: HashSet<Vec<u8>> = HashSet::new();
    visited.insert(bytes);
    let mut frontier: Vec<(Word, SubgroupWord)> = vec![(identity, identity_sw)];
    for depth in 1..=max_depth {
        let mut next: Vec<(Word, SubgroupWord)> = Vec::new();
        for (w, sw) in &frontier {
            for index in 1..=spec.len() as u16 {
                for sign in [Sign::Pos, Sign::Neg] {
                    let gen = spec.generator_word(index).expect("index in range");
                    let w2 = match sign {
                        Sign::Pos => w.cat_reduce(gen),
                        Sign::Neg => w.cat_reduce(&gen.inverse_word()),
                    };
                    let bytes = ctx.normal_form(&w2)?.canonical_bytes();
                    if visited.contains(&bytes) {
                        continue;
                    }
                    let mut sw2 = sw.clone();
                    sw2.push(index, sign);
                    if visit(&bytes, &w2, &sw2, depth)?.is_break() {
                        return Ok(true);
                    }
                    visited.insert(bytes);
                    next.push((w2, sw2));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(false)
}

/// Search for an expression of `g` over the spec's generators using at
/// most `depth` entries. Returns the shortlex-least expression if one
/// exists in the ball; `None` certifies nothing beyond the ball.
pub fn bounded_membership_search(
    g: &Word,
    spec: &SubgroupSpec,
    depth: usize,
) -> Result<Option<SubgroupWord>> {
    let target = spec.ctx.normal_form(g)?.canonical_bytes();
    let mut found: Option<SubgroupWord> = None;
    walk_ball(spec, depth, |bytes, _, sw, _| {
        if bytes == target.as_slice() {
            found = Some(sw.clone());
            Ok(ControlFlow::Break(()))
        } else {
            Ok(ControlFlow::Continue(()))
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> BraidContext {
        BraidContext::new(n).unwrap()
    }

    #[test]
    fn standard_split_small_cases() {
        let b4 = ctx(4);
        let (a, b) = standard_split(&b4, 2).unwrap();
        assert_eq!(a.generators(), &[b4.make_word(&[1]).unwrap()]);
        assert_eq!(b.generators(), &[b4.make_word(&[3]).unwrap()]);

        let b6 = ctx(6);
        let (a, b) = standard_split(&b6, 3).unwrap();
        assert_eq!(
            a.generators(),
            &[b6.make_word(&[1]).unwrap(), b6.make_word(&[2]).unwrap()]
        );
        assert_eq!(
            b.generators(),
            &[b6.make_word(&[4]).unwrap(), b6.make_word(&[5]).unwrap()]
        );
    }

    #[test]
    fn standard_split_bounds() {
        let b4 = ctx(4);
        assert!(matches!(
            standard_split(&b4, 3),
            Err(BraidError::SplitBounds { .. })
        ));
        assert!(standard_split(&ctx(5), 1).is_err());
    }

    #[test]
    fn split_sides_commute() {
        let b5 = ctx(5);
        let (a, b) = standard_split(&b5, 2).unwrap();
        assert!(commute_elementwise(&a, &b).unwrap());
    }

    #[test]
    fn adjacent_generators_do_not_commute() {
        let b3 = ctx(3);
        let a = SubgroupSpec::with_default_labels(b3, vec![b3.make_word(&[1]).unwrap()]).unwrap();
        let b = SubgroupSpec::with_default_labels(b3, vec![b3.make_word(&[2]).unwrap()]).unwrap();
        assert!(!commute_elementwise(&a, &b).unwrap());
        assert!(commute_elementwise(&a, &a).unwrap());
    }

    #[test]
    fn eval_substitutes_and_reduces() {
        let b3 = ctx(3);
        let spec = SubgroupSpec::with_default_labels(
            b3,
            vec![b3.make_word(&[1]).unwrap(), b3.make_word(&[2]).unwrap()],
        )
        .unwrap();
        assert!(subgroup_word_eval(&spec, &SubgroupWord::identity())
            .unwrap()
            .is_empty());
        let sw = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Neg)]);
        assert_eq!(
            subgroup_word_eval(&spec, &sw).unwrap().to_signed(),
            vec![1, -2]
        );
    }

    #[test]
    fn eval_at_conjugated_tuple_is_conjugated_eval() {
        let b4 = ctx(4);
        let spec = SubgroupSpec::with_default_labels(
            b4,
            vec![b4.make_word(&[1]).unwrap(), b4.make_word(&[3]).unwrap()],
        )
        .unwrap();
        let sw = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Neg), (1, Sign::Neg)]);
        let y = b4.make_word(&[2, -1]).unwrap();
        let conj_spec = spec.conjugated(&y).unwrap();
        let lhs = subgroup_word_eval(&conj_spec, &sw).unwrap();
        let rhs = b4
            .conjugate(&subgroup_word_eval(&spec, &sw).unwrap(), &y)
            .unwrap();
        assert!(b4.equals(&lhs, &rhs).unwrap());
    }

    #[test]
    fn parabolic_membership_by_inspection() {
        let b4 = ctx(4);
        let r11 = GeneratorRange::new(&b4, 1, 1).unwrap();
        let g = b4.make_word(&[1, 1]).unwrap();
        assert!(parabolic_membership(&b4, &g, r11).unwrap());

        let s3 = b4.make_word(&[3]).unwrap();
        assert!(!parabolic_membership(&b4, &s3, r11).unwrap());

        let b5 = ctx(5);
        let r33 = GeneratorRange::new(&b5, 3, 3).unwrap();
        let trivial = b5.make_word(&[2, -2]).unwrap();
        assert!(parabolic_membership(&b5, &trivial, r33).unwrap());
    }

    #[test]
    fn parabolic_membership_negative_words() {
        let b4 = ctx(4);
        let r12 = GeneratorRange::new(&b4, 1, 2).unwrap();
        let g = b4.make_word(&[-1, 2, -1, -2]).unwrap();
        assert!(parabolic_membership(&b4, &g, r12).unwrap());
        let h = b4.make_word(&[-3, 1]).unwrap();
        assert!(!parabolic_membership(&b4, &h, r12).unwrap());
    }

    #[test]
    fn parabolic_express_round_trips() {
        let b5 = ctx(5);
        let r23 = GeneratorRange::new(&b5, 2, 3).unwrap();
        let g = b5.make_word(&[-2, 3, 3, -2, 2]).unwrap();
        let expr = parabolic_express(&b5, &g, r23).unwrap().unwrap();
        assert!(expr.letters().iter().all(|l| (2..=3).contains(&l.index)));
        assert!(b5.equals(&expr, &g).unwrap());

        let outside = b5.make_word(&[4]).unwrap();
        assert!(parabolic_express(&b5, &outside, r23).unwrap().is_none());
    }

    #[test]
    fn generator_range_bounds() {
        let b4 = ctx(4);
        assert!(GeneratorRange::new(&b4, 1, 3).is_ok());
        assert!(GeneratorRange::new(&b4, 0, 2).is_err());
        assert!(GeneratorRange::new(&b4, 2, 1).is_err());
        assert!(GeneratorRange::new(&b4, 1, 4).is_err());
    }

    #[test]
    fn membership_search_identity_at_depth_zero() {
        let b4 = ctx(4);
        let spec = SubgroupSpec::with_default_labels(b4, vec![b4.make_word(&[1]).unwrap()]).unwrap();
        let found = bounded_membership_search(&Word::identity(), &spec, 0)
            .unwrap()
            .unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn membership_search_finds_shortlex_least() {
        let b4 = ctx(4);
        let spec = SubgroupSpec::with_default_labels(
            b4,
            vec![b4.make_word(&[1]).unwrap(), b4.make_word(&[3]).unwrap()],
        )
        .unwrap();
        let g = b4.make_word(&[1, 3]).unwrap();
        let found = bounded_membership_search(&g, &spec, 2).unwrap().unwrap();
        assert_eq!(found.entries(), &[(1, Sign::Pos), (2, Sign::Pos)]);

        // brute-force oracle over every expression with <= 2 entries, in
        // shortlex order; the first one equal to g must be the answer
        let entry_order: Vec<(u16, Sign)> = vec![
            (1, Sign::Pos),
            (1, Sign::Neg),
            (2, Sign::Pos),
            (2, Sign::Neg),
        ];
        let mut oracle: Option<SubgroupWord> = None;
        'outer: for len in 0..=2usize {
            let mut stack = vec![Vec::new()];
            let mut seqs: Vec<Vec<(u16, Sign)>> = Vec::new();
            while let Some(seq) = stack.pop() {
                if seq.len() == len {
                    seqs.push(seq);
                    continue;
                }
                for &e in entry_order.iter().rev() {
                    let mut s = seq.clone();
                    s.push(e);
                    stack.push(s);
                }
            }
            for seq in seqs {
                let sw = SubgroupWord::from_entries(seq);
                let val = subgroup_word_eval(&spec, &sw).unwrap();
                if b4.equals(&val, &g).unwrap() {
                    oracle = Some(sw);
                    break 'outer;
                }
            }
        }
        assert_eq!(found, oracle.unwrap());
    }

    #[test]
    fn membership_search_misses_outside_elements() {
        let b4 = ctx(4);
        let spec = SubgroupSpec::with_default_labels(
            b4,
            vec![b4.make_word(&[1]).unwrap(), b4.make_word(&[3]).unwrap()],
        )
        .unwrap();
        let g = b4.make_word(&[2]).unwrap();
        assert!(bounded_membership_search(&g, &spec, 6).unwrap().is_none());
    }

    #[test]
    fn search_result_always_evaluates_back() {
        let b4 = ctx(4);
        let spec = SubgroupSpec::with_default_labels(
            b4,
            vec![b4.make_word(&[1, 2]).unwrap(), b4.make_word(&[3]).unwrap()],
        )
        .unwrap();
        let planted = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Neg), (1, Sign::Pos)]);
        let g = subgroup_word_eval(&spec, &planted).unwrap();
        let sw = bounded_membership_search(&g, &spec, 3)
            .unwrap()
            .expect("planted expression lies in the depth-3 ball");
        let val = subgroup_word_eval(&spec, &sw).unwrap();
        assert!(b4.equals(&val, &g).unwrap());
        assert!(sw.len() <= planted.len());
    }

    #[test]
    fn parabolic_spec_detection() {
        let b5 = ctx(5);
        let (a, b) = standard_split(&b5, 3).unwrap();
        let ra = a.as_parabolic_range().unwrap();
        assert_eq!((ra.lo(), ra.hi()), (1, 2));
        let rb = b.as_parabolic_range().unwrap();
        assert_eq!((rb.lo(), rb.hi()), (4, 4));

        let mixed = SubgroupSpec::with_default_labels(
            b5,
            vec![b5.make_word(&[1]).unwrap(), b5.make_word(&[3]).unwrap()],
        )
        .unwrap();
        assert!(mixed.as_parabolic_range().is_none());
    }

    #[test]
    fn spec_serde_shape() {
        let b4 = ctx(4);
        let (a, _) = standard_split(&b4, 2).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"n":4,"generators":[[1]],"labels":["s1"]}"#);
        let back: SubgroupSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn subgroup_word_serde_shape() {
        let sw = SubgroupWord::from_entries(vec![(1, Sign::Pos), (2, Sign::Neg)]);
        let json = serde_json::to_string(&sw).unwrap();
        assert_eq!(json, "[[1,1],[2,-1]]");
        let back: SubgroupWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sw);
        assert!(serde_json::from_str::<SubgroupWord>("[[1,0]]").is_err());
    }
}
