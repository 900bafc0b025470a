//! Nielsen moves, reduction outcomes and their certificates.

use amalgam::classify::{example_group, example_tuple};
use amalgam::nielsen::{
    apply_move, is_shorter, length_lemma_predicate, reduce_tuple, refinement_predicate, replay, replay_symbolic,
    verify_case2, PredicateReport,
};
use amalgam::random::{random_group_word, random_tuple, rng};
use amalgam::selftest::check_outcome;
use amalgam::{AmalgamPresentation, GeneratingTuple, GroupWord, NielsenMove, Outcome, ReductionConfig, Side};
use proptest::prelude::*;

fn word(g: &AmalgamPresentation, raw: &[(usize, i64)]) -> GroupWord {
    let raw: Vec<_> = raw.iter().map(|&(i, k)| (i - 1, k)).collect();
    g.word_from_raw(&raw).unwrap()
}

fn tuple(g: &AmalgamPresentation, raws: &[&[(usize, i64)]]) -> GeneratingTuple {
    GeneratingTuple::new(raws.iter().map(|r| word(g, r)).collect())
}

fn u(g: &AmalgamPresentation) -> GroupWord {
    GroupWord::letter(Side::H1, g.u().clone())
}

#[test]
fn move_examples() {
    let g = example_group();
    let t = tuple(&g, &[&[(1, 1), (4, 1)], &[(2, 1), (5, 1), (6, 1)]]);
    let twice = apply_move(
        &g,
        &apply_move(&g, &t, NielsenMove::Invert(0)).unwrap(),
        NielsenMove::Invert(0),
    )
    .unwrap();
    assert_eq!(twice.normalized(&g), t.normalized(&g));

    let x = word(&g, &[(1, 1), (4, 1)]);
    let pair = GeneratingTuple::new(vec![x.clone(), g.invert(&x)]);
    let out = apply_move(&g, &pair, NielsenMove::MultiplyRight(0, 1, 1)).unwrap();
    assert!(g.is_identity(&out.elements[0]));

    let y = word(&g, &[(2, 1), (6, 1)]);
    let pair = GeneratingTuple::new(vec![x.clone(), g.multiply(&x, &y)]);
    let out = apply_move(&g, &pair, NielsenMove::MultiplyLeft(1, 0, -1)).unwrap();
    assert!(g.equal(&out.elements[1], &y));

    assert!(apply_move(&g, &pair, NielsenMove::MultiplyLeft(1, 1, 1)).is_err());
    assert!(apply_move(&g, &pair, NielsenMove::Invert(2)).is_err());
}

#[test]
fn shorter_examples() {
    let g = example_group();
    let t = tuple(&g, &[&[(1, 1), (4, 1)]]);
    assert!(!is_shorter(&g, &t, &t).unwrap());
    let tu = GeneratingTuple::new(vec![u(&g)]);
    assert!(is_shorter(&g, &tu, &t).unwrap());
    // Same halves, different kernels: neither is shorter.
    let a = tuple(&g, &[&[(4, 1), (1, 1), (4, 1)]]);
    let b = tuple(&g, &[&[(4, 1), (2, 1), (4, 1)]]);
    assert!(!is_shorter(&g, &a, &b).unwrap() && !is_shorter(&g, &b, &a).unwrap());
    assert!(is_shorter(&g, &a, &GeneratingTuple::new(vec![])).is_err());
}

#[test]
fn pinch_relator_is_a_trivial_element() {
    let g = example_group();
    let v = GroupWord::letter(Side::H2, g.v().clone());
    let t = GeneratingTuple::new(vec![u(&g).concat(&g.invert(&v))]);
    let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
    assert_eq!(out.outcome, Outcome::TrivialElement { index: 0 });
    let t = GeneratingTuple::new(vec![word(&g, &[(1, 1)]), GroupWord::identity()]);
    assert_eq!(
        reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap().outcome,
        Outcome::TrivialElement { index: 1 }
    );
}

#[test]
fn example_four_tuple_is_not_free_style() {
    let g = example_group();
    let t = example_tuple(&g);
    let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
    assert_ne!(out.outcome, Outcome::FreeStyle);
    assert!(check_outcome(&g, &t, &out, &mut rng(0, 0)).is_none());
}

#[test]
fn pair_in_one_factor_contains_a_power_of_u() {
    // <a1 a2, a1 a3> is the even-length subgroup of H1 and contains u^2.
    let g = example_group();
    let t = tuple(&g, &[&[(1, 1), (2, 1)], &[(1, 1), (3, 1)]]);
    let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
    let Outcome::FactorPinch(cert) = &out.outcome else {
        panic!("expected a pinch, got {:?}", out.outcome);
    };
    assert_eq!(cert.side, Side::H1);
    assert!(check_outcome(&g, &t, &out, &mut rng(0, 0)).is_none());
    let y = out.final_tuple.evaluate(&g, &cert.product);
    assert!(g.equal(&g.conjugate(&cert.product_conjugator, &y), &g.amalgam_power(cert.power)));
    // u^2 = x1 x2^-1 x1^-1 x2.
    let direct = t.evaluate(&g, &[(0, 1), (1, -1), (0, -1), (1, 1)]);
    assert!(g.equal(&direct, &g.pow(&u(&g), 2)));
}

/// Short words of `H1` used as conjugators by the oracle below.
fn h1_conjugators(g: &AmalgamPresentation) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity()];
    let gens = [1usize, 2, 3];
    for &a in &gens {
        out.push(word(g, &[(a, 1)]));
        for &b in gens.iter().filter(|&&b| b != a) {
            out.push(word(g, &[(a, 1), (b, 1)]));
            for &c in gens.iter().filter(|&&c| c != b) {
                out.push(word(g, &[(a, 1), (b, 1), (c, 1)]));
            }
        }
    }
    out
}

#[test]
fn dihedral_pair_has_no_pinch() {
    let g = example_group();
    let t = tuple(&g, &[&[(1, 1)], &[(2, 1), (3, 1), (2, 1)]]);
    // Oracle: no signed product of the two, nor any alternating word of
    // length <= 6 in them, is conjugate to u^k with 0 < |k| <= 4.
    let conj = h1_conjugators(&g);
    let powers: Vec<GroupWord> = (1..=4)
        .flat_map(|k| [g.amalgam_power(k), g.amalgam_power(-k)])
        .collect();
    let mut words: Vec<Vec<(usize, i64)>> = vec![vec![(0, 1)], vec![(1, 1)]];
    for len in 2..=6 {
        words.push((0..len).map(|i| ((i % 2) as usize, 1)).collect());
        words.push((0..len).map(|i| (((i + 1) % 2) as usize, 1)).collect());
    }
    for w in &words {
        let y = t.evaluate(&g, w);
        for c in &conj {
            assert!(!powers.iter().any(|p| g.equal(&g.conjugate(c, &y), p)));
        }
    }
    let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
    assert_eq!(out.outcome, Outcome::FreeStyle);
}

#[test]
fn free_style_outputs_pass_case2_sampling() {
    let g = example_group();
    let mut seen = 0;
    for i in 0..100 {
        let mut r = rng(17, i);
        let t = random_tuple(&g, 4, 6, &mut r);
        let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
        if out.outcome == Outcome::FreeStyle {
            seen += 1;
            let rep = verify_case2(&g, &out.final_tuple, 200, &mut r);
            assert!(rep.passed(), "case {i}: {:?}", rep.violations.first());
        }
    }
    assert!(seen > 10);
}

#[test]
fn case2_sampler_examples() {
    let g = example_group();
    let t = GeneratingTuple::new(vec![g.amalgam_power(2)]);
    assert!(verify_case2(&g, &t, 50, &mut rng(1, 0)).passed());
    // (x, x^-1 h): the product x (x^-1 h) = h is much shorter.
    let x = word(&g, &[(1, 1), (4, 1)]);
    let h = word(&g, &[(2, 1)]);
    let t = GeneratingTuple::new(vec![x.clone(), g.normal_word(&g.multiply(&g.invert(&x), &h))]);
    let rep = verify_case2(&g, &t, 200, &mut rng(1, 1));
    assert!(!rep.passed());
    let v = &rep.violations[0];
    assert!(v.product_lambda < v.letter_lambda);
}

#[test]
fn length_lemma_examples() {
    let g = example_group();
    // y in A: claim (b) holds whenever the strict premise applies.
    let mut found = false;
    for i in 0..3000 {
        let mut r = rng(23, i);
        let a = random_group_word(&g, 3, &mut r);
        let x = g.multiply(&random_group_word(&g, 2, &mut r), &a);
        let z = g.invert(&a);
        let y = g.amalgam_power(1 + (i % 2) as i64);
        let rep = length_lemma_predicate(&g, &x, &y, &z);
        assert!(!rep.is_fail(), "{rep:?}");
        if let PredicateReport::Pass { claims } = rep {
            if claims.contains(&"(b)".to_string()) {
                found = true;
                break;
            }
        }
    }
    assert!(found);
    // x = y = z with x^3 = 1.
    let x = word(&g, &[(4, 1), (6, 1), (4, 1)]);
    assert_eq!(
        length_lemma_predicate(&g, &x, &x, &x),
        PredicateReport::Pass {
            claims: vec!["(c) x = y = z".into()]
        }
    );
    assert!(matches!(
        length_lemma_predicate(&g, &GroupWord::identity(), &x, &x),
        PredicateReport::NotApplicable { .. }
    ));
}

#[test]
fn refinement_examples() {
    let g = example_group();
    let x = word(&g, &[(4, 1), (1, 1), (4, 1)]);
    assert!(refinement_predicate(&g, &x, &x, 1).is_pass());
    let y = word(&g, &[(1, 1), (4, 1)]);
    assert!(matches!(
        refinement_predicate(&g, &y, &x, 1),
        PredicateReport::NotApplicable { .. }
    ));
}

#[test]
fn move_text_round_trip() {
    for m in [
        NielsenMove::Invert(2),
        NielsenMove::MultiplyRight(0, 3, -1),
        NielsenMove::MultiplyLeft(1, 0, 1),
    ] {
        assert_eq!(m.to_string().parse::<NielsenMove>().unwrap(), m);
    }
    assert!("mulR 1 1 1".parse::<NielsenMove>().is_err());
    assert!("spin 1".parse::<NielsenMove>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_certificates_verify(seed in any::<u64>()) {
        let g = example_group();
        let mut r = rng(seed, 0);
        let t = random_tuple(&g, 4, 6, &mut r);
        let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
        prop_assert_eq!(check_outcome(&g, &t, &out, &mut r), None);
    }

    #[test]
    fn moves_preserve_the_subgroup(seed in any::<u64>()) {
        let g = example_group();
        let mut r = rng(seed, 0);
        let t = random_tuple(&g, 4, 5, &mut r);
        let out = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
        prop_assert_eq!(replay(&g, &t, &out.moves).unwrap(), out.final_tuple.clone());
        // Each final element is the stated word in the inputs.
        for (i, w) in replay_symbolic(t.len(), &out.moves).iter().enumerate() {
            prop_assert!(g.equal(&t.evaluate(&g, w), &out.final_tuple.elements[i]));
        }
        // Moves never lengthen the tuple.
        prop_assert!(!is_shorter(&g, &t.normalized(&g), &out.final_tuple).unwrap());
    }

    #[test]
    fn reduction_is_deterministic(seed in any::<u64>()) {
        let g = example_group();
        let t = random_tuple(&g, 3, 5, &mut rng(seed, 0));
        let a = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
        let b = reduce_tuple(&g, &t, &ReductionConfig::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}
