//! Shared helpers for the integration suites: corpus loading and seeded
//! random generation of elements, terms, words and machines.  Everything
//! here is deterministic given the seed, so failures reproduce exactly.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use num::{BigInt, BigRational, BigUint};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use semikit::algebra::term::Term;
use semikit::algebra::{standard_instances, Value};
use semikit::machine::format::load_machine;
use semikit::machine::{Machine, PolyBound, TapeMode, Transition};
use semikit::reduce::NormalFormMachine;
use semikit::series::Polynomial;
use semikit::words::words_up_to;
use semikit::{Element, SemiringHandle, SemiringId, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every machine file in `corpus/`, sorted by file name.
pub fn corpus_machines() -> Vec<(String, Machine)> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let machine = load_machine(&p).unwrap_or_else(|e| panic!("loading {name}: {e}"));
            (name, machine)
        })
        .collect()
}

pub fn normal_form_corpus() -> Vec<(String, NormalFormMachine)> {
    corpus_machines()
        .into_iter()
        .map(|(name, m)| {
            let nf = NormalFormMachine::new(m).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, nf)
        })
        .collect()
}

/// All input words of length at most `max_len` for a machine.
pub fn input_words(machine: &Machine, max_len: usize) -> Vec<Word> {
    words_up_to(&machine.input_alphabet, max_len)
}

/// The instances the axiom sweeps run over: the standard list plus two
/// extra moduli.
pub fn axiom_instances() -> Vec<SemiringHandle> {
    let mut out = standard_instances();
    out.push(SemiringHandle::modulo(2).unwrap());
    out.push(SemiringHandle::modulo(5).unwrap());
    out
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &[String], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone()).collect())
}

/// A random element of any instance, with small carriers so sweeps stay fast.
pub fn random_element(rng: &mut ChaCha8Rng, sr: &SemiringHandle) -> Element {
    let value = match sr.id() {
        SemiringId::Bool => Value::Bool(rng.gen_bool(0.5)),
        SemiringId::Nat => Value::Nat(BigUint::from(rng.gen_range(0u64..50))),
        SemiringId::Int => Value::Int(BigInt::from(rng.gen_range(-50i64..50))),
        SemiringId::Mod(k) => Value::Mod(rng.gen_range(0..*k)),
        SemiringId::Fuzzy(_) => {
            let q = rng.gen_range(1u64..12);
            let p = rng.gen_range(0..=q);
            Value::Fuzzy(BigRational::new(BigInt::from(p), BigInt::from(q)))
        }
        SemiringId::MaxPlusNat => {
            Value::MaxPlus(if rng.gen_bool(0.15) { None } else { Some(rng.gen_range(0..30)) })
        }
        SemiringId::MinPlusNat => {
            Value::MinPlus(if rng.gen_bool(0.15) { None } else { Some(rng.gen_range(0..30)) })
        }
        SemiringId::FinLang(alpha) => {
            let alpha = alpha.clone();
            let mut words = BTreeSet::new();
            for _ in 0..rng.gen_range(0..=3) {
                words.insert(random_word(rng, &alpha, 3));
            }
            Value::FinLang(words)
        }
        SemiringId::SMax => {
            if rng.gen_bool(0.15) {
                Value::SMax(None)
            } else {
                let digits = vec!["0".to_string(), "1".to_string()];
                Value::SMax(Some(random_word(rng, &digits, 4)))
            }
        }
        SemiringId::FreeNat(alpha) => {
            let alpha = alpha.clone();
            let nat = SemiringHandle::nat();
            let mut poly = Polynomial::new(&nat, alpha.clone()).unwrap();
            for _ in 0..rng.gen_range(0..=3) {
                let word = random_word(rng, &alpha, 2);
                let coeff = nat.element(Value::Nat(BigUint::from(rng.gen_range(1u64..4)))).unwrap();
                poly.set_coeff(word, coeff).unwrap();
            }
            Value::FreeNat(poly)
        }
    };
    sr.element(value).expect("random value is well formed")
}

/// Asserts the eight semiring axiom families on one triple, with exact
/// equality: additive associativity, commutativity and identity,
/// multiplicative associativity and identity, both distributivity laws, and
/// annihilation by zero.
pub fn check_semiring_axioms(sr: &SemiringHandle, a: &Element, b: &Element, c: &Element) {
    let add = |x: &Element, y: &Element| sr.add(x, y).unwrap();
    let mul = |x: &Element, y: &Element| sr.mul(x, y).unwrap();
    let zero = sr.zero();
    let one = sr.one();
    assert_eq!(add(&add(a, b), c), add(a, &add(b, c)), "{sr}: + associativity");
    assert_eq!(add(a, b), add(b, a), "{sr}: + commutativity");
    assert_eq!(add(a, &zero), *a, "{sr}: + identity");
    assert_eq!(mul(&mul(a, b), c), mul(a, &mul(b, c)), "{sr}: * associativity");
    assert_eq!(mul(a, &one), *a, "{sr}: * right identity");
    assert_eq!(mul(&one, a), *a, "{sr}: * left identity");
    assert_eq!(mul(a, &add(b, c)), add(&mul(a, b), &mul(a, c)), "{sr}: left distributivity");
    assert_eq!(mul(&add(a, b), c), add(&mul(a, c), &mul(b, c)), "{sr}: right distributivity");
    assert_eq!(mul(a, &zero), zero, "{sr}: right annihilation");
    assert_eq!(mul(&zero, a), zero, "{sr}: left annihilation");
}

/// A random term over `gen_count` generators, depth-limited.
pub fn random_term(rng: &mut ChaCha8Rng, gen_count: usize, depth: usize) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        match rng.gen_range(0..3) {
            0 => Term::Zero,
            1 => Term::One,
            _ if gen_count > 0 => Term::Gen(rng.gen_range(0..gen_count)),
            _ => Term::One,
        }
    } else {
        let a = random_term(rng, gen_count, depth - 1);
        let b = random_term(rng, gen_count, depth - 1);
        if rng.gen_bool(0.5) {
            Term::sum(a, b)
        } else {
            Term::prod(a, b)
        }
    }
}

const LETTERS: [&str; 2] = ["a", "b"];

fn scaffold(semiring: &SemiringHandle, states: Vec<String>, accepting: Vec<String>) -> Machine {
    Machine {
        semiring: semiring.clone(),
        states,
        input_alphabet: LETTERS.iter().map(|s| s.to_string()).collect(),
        work_alphabet: vec!["a".into(), "b".into(), "_".into(), ">".into()],
        blank: "_".into(),
        tape: TapeMode::SemiInfinite,
        end_marker: Some(">".into()),
        initial: "q0".into(),
        accepting: accepting.into_iter().collect(),
        rejecting: BTreeSet::new(),
        transitions: Vec::new(),
        bound: Some(PolyBound { c: 1, k: 1, d: 2 }),
    }
}

/// A random machine whose transitions only read input letters and always
/// move right, so every computation halts strictly inside the `n + 2` step
/// bound.  Weights are `1` when `unit` is set, else small naturals.
pub fn random_right_mover(rng: &mut ChaCha8Rng, sr: &SemiringHandle, unit: bool) -> Machine {
    let plain = rng.gen_range(2..=4);
    let mut states: Vec<String> = (0..plain).map(|i| format!("q{i}")).collect();
    states.push("qacc".into());
    let mut machine = scaffold(sr, states.clone(), vec!["qacc".into()]);
    let mut shapes = BTreeSet::new();
    for q in &states[..plain] {
        for read in LETTERS {
            let fanout = if rng.gen_bool(0.35) { 2 } else { 1 };
            for _ in 0..fanout {
                let to = states[rng.gen_range(0..states.len())].clone();
                let write = LETTERS[rng.gen_range(0..2)].to_string();
                if !shapes.insert((q.clone(), read.to_string(), to.clone(), write.clone())) {
                    continue;
                }
                let weight = if unit {
                    sr.one()
                } else {
                    sr.element(Value::Nat(BigUint::from(rng.gen_range(1u64..4)))).unwrap()
                };
                machine.transitions.push(Transition {
                    from: q.clone(),
                    read: read.to_string(),
                    to,
                    write,
                    movement: 1,
                    weight,
                });
            }
        }
    }
    machine.validate().expect("generated machine is valid");
    machine
}

/// A random boolean machine in which every maximal computation halts in an
/// accepting or rejecting state: letter reads are total and move right, and
/// a blank read always hands over to a verdict state.
pub fn random_verdict_total(rng: &mut ChaCha8Rng) -> Machine {
    let sr = SemiringHandle::bool_();
    let plain = rng.gen_range(2..=3);
    let mut states: Vec<String> = (0..plain).map(|i| format!("q{i}")).collect();
    states.push("qacc".into());
    states.push("qrej".into());
    let mut machine = scaffold(&sr, states.clone(), vec!["qacc".into()]);
    machine.rejecting = [String::from("qrej")].into_iter().collect();
    let mut shapes = BTreeSet::new();
    for q in &states[..plain] {
        for read in LETTERS {
            let fanout = 1 + usize::from(rng.gen_bool(0.4));
            for pick in 0..fanout {
                // The first transition per (state, letter) keeps reads total.
                let to = if pick == 0 {
                    states[rng.gen_range(0..states.len())].clone()
                } else {
                    states[rng.gen_range(0..plain)].clone()
                };
                let write = LETTERS[rng.gen_range(0..2)].to_string();
                if !shapes.insert((q.clone(), read.to_string(), to.clone(), write.clone())) {
                    continue;
                }
                machine.transitions.push(Transition {
                    from: q.clone(),
                    read: read.to_string(),
                    to,
                    write,
                    movement: 1,
                    weight: sr.one(),
                });
            }
        }
        let verdict = if rng.gen_bool(0.5) { "qacc" } else { "qrej" };
        machine.transitions.push(Transition {
            from: q.clone(),
            read: "_".into(),
            to: verdict.into(),
            write: "a".into(),
            movement: 1,
            weight: sr.one(),
        });
    }
    machine.validate().expect("generated machine is valid");
    machine
}
