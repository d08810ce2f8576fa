//! Polynomial (finitely supported series) checks: ring laws of pointwise
//! sum and Cauchy product, a brute-force convolution cross-check, and the
//! textual rendering order.

mod common;

use rand_chacha::ChaCha8Rng;
use semikit::series::Polynomial;
use semikit::words::{words_up_to, Word};
use semikit::{Element, SemiringHandle};

use common::{random_element, rng};

const ALPHABET: [&str; 2] = ["a", "b"];

fn alphabet() -> Vec<String> {
    ALPHABET.iter().map(|s| s.to_string()).collect()
}

fn random_poly(rng: &mut ChaCha8Rng, sr: &SemiringHandle, terms: usize) -> Polynomial {
    use rand::Rng;
    let mut poly = Polynomial::new(sr, alphabet()).unwrap();
    let pool = words_up_to(&alphabet(), 2);
    for _ in 0..terms {
        let word = pool[rng.gen_range(0..pool.len())].clone();
        poly.set_coeff(word, random_element(rng, sr)).unwrap();
    }
    poly
}

fn sweep_instances() -> Vec<SemiringHandle> {
    vec![
        SemiringHandle::nat(),
        SemiringHandle::int(),
        SemiringHandle::modulo(3).unwrap(),
        SemiringHandle::maxplus_nat(),
        SemiringHandle::fin_lang(vec!["x".into(), "y".into()]).unwrap(),
        SemiringHandle::smax(),
    ]
}

/// The convolution coefficient computed naively: sum over all splits
/// `w = u · v` of `p(u) * q(v)`, in split order.
fn convolve_at(p: &Polynomial, q: &Polynomial, w: &Word) -> Element {
    let sr = p.coefficient_semiring().clone();
    let mut acc = sr.zero();
    for cut in 0..=w.len() {
        let u = Word(w.0[..cut].to_vec());
        let v = Word(w.0[cut..].to_vec());
        let prod = sr.mul(&p.coeff(&u).unwrap(), &q.coeff(&v).unwrap()).unwrap();
        acc = sr.add(&acc, &prod).unwrap();
    }
    acc
}

#[test]
fn cauchy_product_is_the_convolution() {
    let mut rng = rng(0xca0c);
    for sr in sweep_instances() {
        for _ in 0..30 {
            let p = random_poly(&mut rng, &sr, 3);
            let q = random_poly(&mut rng, &sr, 3);
            let prod = p.cauchy_product(&q).unwrap();
            for w in words_up_to(&alphabet(), 4) {
                assert_eq!(
                    prod.coeff(&w).unwrap(),
                    convolve_at(&p, &q, &w),
                    "{sr}: coefficient of {w:?}"
                );
            }
        }
    }
}

#[test]
fn polynomials_form_a_semiring() {
    let mut rng = rng(0x901);
    for sr in sweep_instances() {
        let unit = {
            let one = sr.one();
            Polynomial::monomial(&sr, alphabet(), Word::empty(), one).unwrap()
        };
        let zero = Polynomial::new(&sr, alphabet()).unwrap();
        for _ in 0..20 {
            let p = random_poly(&mut rng, &sr, 3);
            let q = random_poly(&mut rng, &sr, 3);
            let r = random_poly(&mut rng, &sr, 3);
            assert_eq!(p.add_poly(&q).unwrap(), q.add_poly(&p).unwrap(), "{sr}: + comm");
            assert_eq!(
                p.add_poly(&q).unwrap().add_poly(&r).unwrap(),
                p.add_poly(&q.add_poly(&r).unwrap()).unwrap(),
                "{sr}: + assoc"
            );
            assert_eq!(p.add_poly(&zero).unwrap(), p, "{sr}: + identity");
            assert_eq!(
                p.cauchy_product(&q).unwrap().cauchy_product(&r).unwrap(),
                p.cauchy_product(&q.cauchy_product(&r).unwrap()).unwrap(),
                "{sr}: * assoc"
            );
            assert_eq!(p.cauchy_product(&unit).unwrap(), p, "{sr}: * right identity");
            assert_eq!(unit.cauchy_product(&p).unwrap(), p, "{sr}: * left identity");
            assert_eq!(
                p.cauchy_product(&q.add_poly(&r).unwrap()).unwrap(),
                p.cauchy_product(&q).unwrap().add_poly(&p.cauchy_product(&r).unwrap()).unwrap(),
                "{sr}: left distributivity"
            );
            assert_eq!(p.cauchy_product(&zero).unwrap(), zero, "{sr}: annihilation");
        }
    }
}

#[test]
fn product_keeps_factor_order() {
    // Over a noncommutative coefficient semiring the two one-letter
    // monomials must multiply in writing order: x then y.
    let sr = SemiringHandle::fin_lang(vec!["x".into(), "y".into()]).unwrap();
    let x = semikit::algebra::literal::parse(&sr, "{ \"x\" }").unwrap();
    let y = semikit::algebra::literal::parse(&sr, "{ \"y\" }").unwrap();
    let p = Polynomial::monomial(&sr, alphabet(), Word::single("a"), x).unwrap();
    let q = Polynomial::monomial(&sr, alphabet(), Word::single("b"), y).unwrap();
    let prod = p.cauchy_product(&q).unwrap();
    let ab = Word(vec!["a".into(), "b".into()]);
    assert_eq!(semikit::algebra::literal::print(&prod.coeff(&ab).unwrap()), "{ \"xy\" }");
    assert_eq!(prod.term_count(), 1);
}

#[test]
fn text_rendering_is_radix_sorted_and_stable() {
    let nat = SemiringHandle::nat();
    let mut poly = Polynomial::new(&nat, alphabet()).unwrap();
    for (word, coeff) in [("b", 2u32), ("aa", 1), ("", 7), ("ab", 3)] {
        let w = Word::parse(word, &alphabet()).unwrap();
        let c = semikit::algebra::literal::parse(&nat, &coeff.to_string()).unwrap();
        poly.set_coeff(w, c).unwrap();
    }
    assert_eq!(poly.to_text(), "7 \"ε\"\n2 \"b\"\n1 \"aa\"\n3 \"ab\"");
    assert_eq!(Polynomial::new(&nat, alphabet()).unwrap().to_text(), "0");
}
