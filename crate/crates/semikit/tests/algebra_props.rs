//! Randomized algebra checks: axiom sweeps over every instance, literal and
//! term syntax round trips, generator encodings and homomorphism laws.

mod common;

use std::collections::BTreeMap;

use num::BigUint;
use proptest::prelude::*;
use semikit::algebra::hom::Homomorphism;
use semikit::algebra::term::{self, encode_tau, nat_to_term};
use semikit::algebra::{literal, radix_index, Value};
use semikit::words::words_up_to;
use semikit::{Element, SemiringHandle};

use common::{axiom_instances, check_semiring_axioms, random_element, random_term, rng};

#[test]
fn axioms_hold_on_random_triples() {
    let mut rng = rng(0x5eed_a110);
    for sr in axiom_instances() {
        for _ in 0..200 {
            let a = random_element(&mut rng, &sr);
            let b = random_element(&mut rng, &sr);
            let c = random_element(&mut rng, &sr);
            check_semiring_axioms(&sr, &a, &b, &c);
        }
    }
}

#[test]
fn literals_round_trip() {
    let mut rng = rng(0x11b3a1);
    for sr in axiom_instances() {
        for _ in 0..100 {
            let x = random_element(&mut rng, &sr);
            let text = literal::print(&x);
            let back = literal::parse(&sr, &text).unwrap_or_else(|e| panic!("{sr}: {text}: {e}"));
            assert_eq!(back, x, "{sr}: literal {text} did not round-trip");
        }
        let zero = literal::print(&sr.zero());
        assert_eq!(literal::parse(&sr, &zero).unwrap(), sr.zero());
        let one = literal::print(&sr.one());
        assert_eq!(literal::parse(&sr, &one).unwrap(), sr.one());
    }
}

#[test]
fn radix_index_is_the_position_in_radix_order() {
    let alphabet = vec!["0".to_string(), "1".to_string()];
    let mut words = words_up_to(&alphabet, 4);
    words.sort_by(|a, b| a.radix_cmp(b, &alphabet));
    for (pos, word) in words.iter().enumerate() {
        assert_eq!(radix_index(word).unwrap(), BigUint::from(pos));
    }
}

#[test]
fn nat_terms_round_trip_with_bounded_size() {
    let nat = SemiringHandle::nat();
    for n in 0u64..=1000 {
        let big = BigUint::from(n);
        let t = nat_to_term(&big);
        assert_eq!(*t.eval(&nat).unwrap().value(), Value::Nat(big.clone()));
        let bits = big.bits() + 1;
        assert!(
            (t.size() as u64) <= 8 * bits * bits,
            "term for {n} has {} nodes, over the 8(len+1)^2 budget",
            t.size()
        );
    }
}

#[test]
fn generator_encodings_round_trip() {
    let mut rng = rng(0x7a0_7a0);
    for sr in axiom_instances() {
        if !sr.is_finitely_generated() {
            let x = random_element(&mut rng, &sr);
            assert!(
                matches!(encode_tau(&sr, &x), Err(semikit::Error::NotFinitelyGenerated(_))),
                "{sr} should refuse generator encoding"
            );
            continue;
        }
        for _ in 0..100 {
            let x = random_element(&mut rng, &sr);
            let t = encode_tau(&sr, &x).unwrap_or_else(|e| panic!("{sr}: {e}"));
            assert_eq!(t.eval(&sr).unwrap(), x, "{sr}: generator term did not evaluate back");
        }
    }
}

#[test]
fn term_text_round_trips() {
    let mut rng = rng(0x7e47);
    for _ in 0..300 {
        let t = random_term(&mut rng, 3, 4);
        let text = t.to_string();
        assert_eq!(term::parse(&text).unwrap(), t, "term text {text} did not round-trip");
    }
}

#[test]
fn nondeterministic_evaluation_agrees_with_plain_evaluation() {
    let mut rng = rng(0xd157);
    // Includes noncommutative instances, so this exercises that sum-of-
    // products expansion keeps left-to-right factor order.
    for sr in axiom_instances() {
        let gens = sr.generator_count();
        for _ in 0..60 {
            let t = random_term(&mut rng, gens, 4);
            assert_eq!(t.nondet_eval(&sr).unwrap(), t.eval(&sr).unwrap(), "{sr}: {t}");
        }
    }
}

fn builtin_homs() -> Vec<Homomorphism> {
    let finlang = SemiringHandle::fin_lang(vec!["a".into(), "b".into()]).unwrap();
    let freenat = SemiringHandle::free_nat(vec!["x".into(), "y".into()]).unwrap();
    let nat = SemiringHandle::nat();
    let letter_map: BTreeMap<String, Element> = [
        ("x".to_string(), nat.element(Value::Nat(BigUint::from(2u32))).unwrap()),
        ("y".to_string(), nat.element(Value::Nat(BigUint::from(3u32))).unwrap()),
    ]
    .into_iter()
    .collect();
    vec![
        Homomorphism::nat_to_bool(),
        Homomorphism::nat_to_mod(2).unwrap(),
        Homomorphism::nat_to_mod(3).unwrap(),
        Homomorphism::nat_to_mod(5).unwrap(),
        Homomorphism::nat_to_int(),
        Homomorphism::int_to_mod(3).unwrap(),
        Homomorphism::fin_lang_to_bool(&finlang).unwrap(),
        Homomorphism::free_nat_eval(&freenat, &nat, letter_map).unwrap(),
    ]
}

#[test]
fn homomorphisms_preserve_structure() {
    let mut rng = rng(0xa1fa);
    for hom in builtin_homs() {
        let (src, dst) = (hom.source().clone(), hom.target().clone());
        assert_eq!(hom.apply(&src.zero()).unwrap(), dst.zero(), "{src}->{dst}: zero");
        assert_eq!(hom.apply(&src.one()).unwrap(), dst.one(), "{src}->{dst}: one");
        for _ in 0..200 {
            let a = random_element(&mut rng, &src);
            let b = random_element(&mut rng, &src);
            let sum = hom.apply(&src.add(&a, &b).unwrap()).unwrap();
            assert_eq!(sum, dst.add(&hom.apply(&a).unwrap(), &hom.apply(&b).unwrap()).unwrap());
            let prod = hom.apply(&src.mul(&a, &b).unwrap()).unwrap();
            assert_eq!(prod, dst.mul(&hom.apply(&a).unwrap(), &hom.apply(&b).unwrap()).unwrap());
        }
    }
}

#[test]
fn hom_images_of_terms_evaluate_to_images_of_evaluations() {
    let mut rng = rng(0x0f0f);
    for hom in builtin_homs() {
        let (src, dst) = (hom.source().clone(), hom.target().clone());
        if !src.is_finitely_generated() {
            continue;
        }
        for _ in 0..60 {
            let t = random_term(&mut rng, src.generator_count(), 4);
            let mapped = hom.apply_term(&t).unwrap();
            assert_eq!(
                mapped.eval(&dst).unwrap(),
                hom.apply(&t.eval(&src).unwrap()).unwrap(),
                "{src}->{dst}: {t}"
            );
        }
    }
}

proptest! {
    // Structural micro-axioms on u64-backed instances under proptest's own
    // case generation, complementing the seeded sweeps above.
    #[test]
    fn mod_semiring_matches_u64_arithmetic(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
        let sr = SemiringHandle::modulo(7).unwrap();
        let ea = sr.element(Value::Mod(a)).unwrap();
        let eb = sr.element(Value::Mod(b)).unwrap();
        let ec = sr.element(Value::Mod(c)).unwrap();
        check_semiring_axioms(&sr, &ea, &eb, &ec);
        prop_assert_eq!(sr.add(&ea, &eb).unwrap().value().clone(), Value::Mod((a + b) % 7));
        prop_assert_eq!(sr.mul(&ea, &eb).unwrap().value().clone(), Value::Mod((a * b) % 7));
    }

    #[test]
    fn tropical_addition_is_min_or_max(a in proptest::option::of(0u64..100),
                                       b in proptest::option::of(0u64..100)) {
        let maxplus = SemiringHandle::maxplus_nat();
        let ea = maxplus.element(Value::MaxPlus(a)).unwrap();
        let eb = maxplus.element(Value::MaxPlus(b)).unwrap();
        let expect = match (a, b) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, None) => x,
            (None, y) => y,
        };
        prop_assert_eq!(maxplus.add(&ea, &eb).unwrap().value().clone(), Value::MaxPlus(expect));

        let minplus = SemiringHandle::minplus_nat();
        let ea = minplus.element(Value::MinPlus(a)).unwrap();
        let eb = minplus.element(Value::MinPlus(b)).unwrap();
        let expect = match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        prop_assert_eq!(minplus.add(&ea, &eb).unwrap().value().clone(), Value::MinPlus(expect));
    }
}
