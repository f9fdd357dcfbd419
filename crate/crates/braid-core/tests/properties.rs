//! Property tests over the algebraic invariants.

use braid_core::{
    bounded_membership_search, commute_elementwise, parabolic_membership, standard_split,
    subgroup_word_eval, BraidContext, GeneratorRange, NormalForm, Sign, SubgroupSpec,
    SubgroupWord, Word,
};
use proptest::prelude::*;

fn word_strategy(n: u16, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(
        (1..i32::from(n), prop::bool::ANY).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
}

fn ctx(n: u16) -> BraidContext {
    BraidContext::new(usize::from(n)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn free_reduce_is_idempotent(n in 3u16..=6, entries in word_strategy(6, 24)) {
        let c = ctx(n);
        let entries: Vec<i32> = entries.into_iter().filter(|e| e.unsigned_abs() < u32::from(n)).collect();
        let w = c.make_word(&entries).unwrap();
        let once = w.free_reduce();
        prop_assert_eq!(once.free_reduce(), once);
    }

    #[test]
    fn cross_oracle_agreement(n in 3u16..=6, a in word_strategy(6, 16), b in word_strategy(6, 16)) {
        let c = ctx(n);
        let a: Vec<i32> = a.into_iter().filter(|e| e.unsigned_abs() < u32::from(n)).collect();
        let b: Vec<i32> = b.into_iter().filter(|e| e.unsigned_abs() < u32::from(n)).collect();
        let u = c.make_word(&a).unwrap();
        let v = c.make_word(&b).unwrap();
        let garside = c.equals(&u, &v).unwrap();
        let quotient = c.multiply(&u, &c.invert(&v).unwrap()).unwrap();
        let handle = c.handle_reduce(&quotient).unwrap().is_empty();
        prop_assert_eq!(garside, handle);
    }

    #[test]
    fn normal_form_round_trips(n in 2u16..=6, entries in word_strategy(6, 20)) {
        let c = ctx(n);
        let entries: Vec<i32> = entries.into_iter().filter(|e| e.unsigned_abs() < u32::from(n)).collect();
        let w = c.make_word(&entries).unwrap();
        let nf = c.normal_form(&w).unwrap();
        nf.validate().unwrap();
        prop_assert_eq!(c.normal_form(&nf.to_word()).unwrap(), nf);
    }

    #[test]
    fn canonical_bytes_round_trip_and_canonicity(n in 2u16..=6, entries in word_strategy(6, 20)) {
        let c = ctx(n);
        let entries: Vec<i32> = entries.into_iter().filter(|e| e.unsigned_abs() < u32::from(n)).collect();
        let w = c.make_word(&entries).unwrap();
        let nf = c.normal_form(&w).unwrap();
        let bytes = nf.canonical_bytes();
        let back = NormalForm::from_canonical_bytes(&bytes).unwrap();
        prop_assert_eq!(&back, &nf);
        prop_assert_eq!(back.canonical_bytes(), bytes.clone());

        // a differently spelled equal word serializes identically
        let mut padded = entries.clone();
        padded.push(1);
        padded.push(-1);
        let w2 = c.make_word(&padded).unwrap();
        prop_assert_eq!(c.normal_form(&w2).unwrap().canonical_bytes(), bytes);
    }

    #[test]
    fn conjugation_composes(
        g in word_strategy(5, 10),
        x in word_strategy(5, 8),
        y in word_strategy(5, 8),
    ) {
        let c = ctx(5);
        let g = c.make_word(&g).unwrap();
        let x = c.make_word(&x).unwrap();
        let y = c.make_word(&y).unwrap();
        let lhs = c.conjugate(&c.conjugate(&g, &x).unwrap(), &y).unwrap();
        let rhs = c.conjugate(&g, &c.multiply(&x, &y).unwrap()).unwrap();
        prop_assert!(c.equals(&lhs, &rhs).unwrap());
    }

    #[test]
    fn multiplication_is_associative_up_to_equals(
        a in word_strategy(5, 10),
        b in word_strategy(5, 10),
        d in word_strategy(5, 10),
    ) {
        let c = ctx(5);
        let a = c.make_word(&a).unwrap();
        let b = c.make_word(&b).unwrap();
        let d = c.make_word(&d).unwrap();
        let lhs = c.multiply(&c.multiply(&a, &b).unwrap(), &d).unwrap();
        let rhs = c.multiply(&a, &c.multiply(&b, &d).unwrap()).unwrap();
        prop_assert!(c.equals(&lhs, &rhs).unwrap());
    }

    #[test]
    fn words_over_a_range_are_members(entries in prop::collection::vec((2i32..=3, prop::bool::ANY), 0..10)) {
        let c = ctx(5);
        let signed: Vec<i32> = entries.iter().map(|&(i, neg)| if neg { -i } else { i }).collect();
        let g = c.make_word(&signed).unwrap();
        let range = GeneratorRange::new(&c, 2, 3).unwrap();
        prop_assert!(parabolic_membership(&c, &g, range).unwrap());
    }

    #[test]
    fn eval_commutes_with_tuple_conjugation(
        entries in prop::collection::vec((1u16..=2, prop::bool::ANY), 0..6),
        y in word_strategy(4, 6),
    ) {
        let c = ctx(4);
        let spec = SubgroupSpec::with_default_labels(
            c,
            vec![c.make_word(&[1]).unwrap(), c.make_word(&[3]).unwrap()],
        ).unwrap();
        let sw = SubgroupWord::from_entries(
            entries.into_iter().map(|(i, neg)| (i, if neg { Sign::Neg } else { Sign::Pos })).collect(),
        );
        let y = c.make_word(&y).unwrap();
        let lhs = subgroup_word_eval(&spec.conjugated(&y).unwrap(), &sw).unwrap();
        let rhs = c.conjugate(&subgroup_word_eval(&spec, &sw).unwrap(), &y).unwrap();
        prop_assert!(c.equals(&lhs, &rhs).unwrap());
    }
}

#[test]
fn standard_splits_always_commute() {
    for n in 4u16..=8 {
        let c = ctx(n);
        for l in 2..=n - 2 {
            let (a, b) = standard_split(&c, l).unwrap();
            assert!(commute_elementwise(&a, &b).unwrap(), "split n={n} l={l}");
        }
    }
}

#[test]
fn membership_search_agrees_with_parabolic_inspection() {
    // planted members of <sigma_2, sigma_3> in B_5 are found by the search
    // and accepted by inspection; outsiders are rejected by both
    let c = ctx(5);
    let (gens, labels): (Vec<Word>, Vec<String>) = (
        vec![c.make_word(&[2]).unwrap(), c.make_word(&[3]).unwrap()],
        vec!["s2".into(), "s3".into()],
    );
    let spec = SubgroupSpec::new(c, gens, labels).unwrap();
    let range = GeneratorRange::new(&c, 2, 3).unwrap();

    let planted = [
        vec![],
        vec![2],
        vec![2, 3],
        vec![-3, 2, 3],
        vec![3, 3, -2],
    ];
    for entries in planted {
        let g = c.make_word(&entries).unwrap();
        assert!(parabolic_membership(&c, &g, range).unwrap());
        let found = bounded_membership_search(&g, &spec, 3).unwrap();
        if let Some(sw) = found {
            let val = subgroup_word_eval(&spec, &sw).unwrap();
            assert!(c.equals(&val, &g).unwrap());
        }
    }

    for outsider in [vec![1], vec![4], vec![1, 2]] {
        let g = c.make_word(&outsider).unwrap();
        assert!(!parabolic_membership(&c, &g, range).unwrap());
        assert!(bounded_membership_search(&g, &spec, 4).unwrap().is_none());
    }
}
