use girth_curve::{
    apply_shortcut, find_shortcut, girth_word, is_shortcut, min_disc_wedge, oracle_girth, shortcut_automorphism,
    CurveError,
};
use girth_interface::{enumerate_d_discs, enumerate_d_half_discs, wedge};
use girth_word::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn w(rank: u8, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

#[test]
fn known_values() {
    for m in 0..=5 {
        let s = format!("a{}", "b".repeat(m));
        assert_eq!(girth_word(&w(2, &s)).unwrap().girth, 0, "{s}");
    }
    assert_eq!(girth_word(&w(2, "abAB")).unwrap().girth, 2);
    assert_eq!(girth_word(&w(2, "abABabABabAB")).unwrap().girth, 6);
    assert_eq!(oracle_girth(&w(2, "abbb"), 1000).unwrap(), 0);
    assert_eq!(oracle_girth(&w(2, "abAB"), 1000).unwrap(), 2);
}

#[test]
fn rank_one_girth_is_length() {
    assert_eq!(girth_word(&w(1, "aaa")).unwrap().girth, 3);
}

#[test]
fn trivial_word_rejected() {
    assert!(matches!(girth_word(&w(2, "abBA")), Err(CurveError::TrivialWord)));
    assert!(matches!(oracle_girth(&w(2, ""), 10), Err(CurveError::TrivialWord)));
    assert!(matches!(find_shortcut(&w(2, "").cyclic()), Err(CurveError::TrivialWord)));
}

#[test]
fn budget_is_enforced() {
    let e = oracle_girth(&w(3, "abcABCacb"), 2).unwrap_err();
    assert_eq!(e, CurveError::BudgetExhausted { budget: 2 });
}

#[test]
fn locally_minimal_examples_have_no_shortcut() {
    for s in ["abAB", "ab"] {
        let c = w(2, s).cyclic();
        assert!(find_shortcut(&c).unwrap().is_none());
        // Oracle: evaluate the three counts for every half-disc directly.
        for h in enumerate_d_half_discs(2) {
            assert!(!is_shortcut(&c, &h).unwrap(), "{s} {h}");
        }
    }
}

#[test]
fn all_white_generators_give_identity() {
    // Gray b with b⁻¹ black; a and A both white.
    let h = girth_interface::DHalfDisc::new(girth_interface::DInterface::parse("B:B W:aA G:b").unwrap()).unwrap();
    assert!(shortcut_automorphism(&h).is_identity());
}

#[test]
fn min_disc_wedge_matches_direct_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let rank = rng.gen_range(1..=3u8);
        let word = random_word(&mut rng, rank, 20);
        let c = word.cyclic();
        if c.is_empty() {
            continue;
        }
        let direct = enumerate_d_discs(rank).map(|d| wedge(&c, d.interface()).unwrap()).min();
        let (k, d) = min_disc_wedge(&c).unwrap();
        assert_eq!(Some(k), direct);
        assert_eq!(wedge(&c, d.interface()).unwrap(), k);
    }
}

#[test]
fn certificate_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let rank = rng.gen_range(2..=4u8);
        let word = random_word(&mut rng, rank, 30);
        if word.cyclic().is_empty() {
            continue;
        }
        let cert = girth_word(&word).unwrap();
        assert_ne!(cert.girth, 1);
        let d = &cert.descent;
        assert_eq!(d.automorphism.apply(&word).unwrap().cyclic(), d.word);
        assert_eq!(wedge(&d.word, cert.witness.interface()).unwrap(), cert.girth);
        assert!(cert.girth <= d.word.len());
        let mut len = word.cyclic().len();
        for step in &d.trace {
            assert_eq!(step.before, len);
            assert!(step.after < step.before);
            len = step.after;
        }
        assert_eq!(len, d.word.len());
        assert!(d.trace.len() <= word.cyclic().len());
    }
}

#[test]
fn inflated_words_descend_with_girth_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 200 {
        let rank = rng.gen_range(2..=3u8);
        let word = random_word(&mut rng, rank, 12);
        if word.cyclic().is_empty() {
            continue;
        }
        let base = girth_word(&word).unwrap();
        let halves: Vec<_> = enumerate_d_half_discs(rank).collect();
        let mut inflated = base.descent.word.to_word();
        for _ in 0..rng.gen_range(1..=3) {
            let h = &halves[rng.gen_range(0..halves.len())];
            let inv = shortcut_automorphism(h).inverse().unwrap();
            inflated = inv.apply(&inflated).unwrap();
        }
        let again = girth_word(&inflated).unwrap();
        assert_eq!(again.girth, base.girth, "{word} inflated to {inflated}");
        assert!(again.descent.trace.iter().all(|t| t.after < t.before));
        assert!(again.descent.word.len() <= inflated.cyclic().len());
        checked += 1;
    }
}

#[test]
fn apply_shortcut_rejects_non_shortcut() {
    let c = w(2, "abAB").cyclic();
    let h = enumerate_d_half_discs(2).next().unwrap();
    assert!(matches!(apply_shortcut(&c, &h), Err(CurveError::PostconditionViolation(_))));
}

fn random_word(rng: &mut impl Rng, rank: u8, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len).map(|_| girth_word::Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))).collect();
    Word::new(rank, letters).unwrap()
}
