//! Builtin semiring homomorphisms.
//!
//! Each homomorphism preserves 0, 1, + and ·.  The available kinds:
//!
//! * `nat -> bool`: zero to 0, everything positive to 1;
//! * `nat -> mod(k)`, `int -> mod(k)`: reduction mod k;
//! * `nat -> int`: inclusion;
//! * `free-nat(Σ) -> T`: evaluation determined by a letter map Σ → T
//!   (the universal property of the free instance: any letter map extends
//!   uniquely, with a coefficient `c` going to the c-fold sum of 1 in `T`);
//! * `finlang(Σ) -> bool`: emptiness test.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigUint;
use num::Integer;
use num::Zero;

use crate::algebra::term::{encode_tau, nat_to_term, Term};
use crate::algebra::{Element, SemiringHandle, SemiringId, Value};
use crate::error::{Error, Result};
use crate::words::Symbol;

#[derive(Debug, Clone)]
enum HomKind {
    NatToBool,
    NatToMod,
    IntToMod,
    NatToInt,
    FreeNatEval(BTreeMap<Symbol, Element>),
    FinLangToBool,
}

#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: SemiringHandle,
    target: SemiringHandle,
    kind: HomKind,
}

impl Homomorphism {
    pub fn nat_to_bool() -> Homomorphism {
        Homomorphism {
            source: SemiringHandle::nat(),
            target: SemiringHandle::bool_(),
            kind: HomKind::NatToBool,
        }
    }

    pub fn nat_to_mod(k: u64) -> Result<Homomorphism> {
        Ok(Homomorphism {
            source: SemiringHandle::nat(),
            target: SemiringHandle::modulo(k)?,
            kind: HomKind::NatToMod,
        })
    }

    pub fn int_to_mod(k: u64) -> Result<Homomorphism> {
        Ok(Homomorphism {
            source: SemiringHandle::int(),
            target: SemiringHandle::modulo(k)?,
            kind: HomKind::IntToMod,
        })
    }

    pub fn nat_to_int() -> Homomorphism {
        Homomorphism {
            source: SemiringHandle::nat(),
            target: SemiringHandle::int(),
            kind: HomKind::NatToInt,
        }
    }

    /// The evaluation homomorphism `free-nat(Σ) -> target` extending
    /// `letter_map`, which must assign a target element to every symbol of
    /// the source alphabet.
    pub fn free_nat_eval(
        source: &SemiringHandle,
        target: &SemiringHandle,
        letter_map: BTreeMap<Symbol, Element>,
    ) -> Result<Homomorphism> {
        let alphabet = match source.id() {
            SemiringId::FreeNat(alpha) => alpha.clone(),
            other => {
                return Err(Error::DomainMismatch(format!(
                    "free-nat evaluation needs a free-nat source, got {other}"
                )));
            }
        };
        for sym in &alphabet {
            match letter_map.get(sym) {
                None => {
                    return Err(Error::validate(format!("letter map misses symbol {sym:?}")));
                }
                Some(el) if el.semiring() != target => {
                    return Err(Error::MixedSemiring(
                        target.to_string(),
                        el.semiring().to_string(),
                    ));
                }
                Some(_) => {}
            }
        }
        if letter_map.len() != alphabet.len() {
            return Err(Error::validate("letter map mentions symbols outside the alphabet"));
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            kind: HomKind::FreeNatEval(letter_map),
        })
    }

    pub fn fin_lang_to_bool(source: &SemiringHandle) -> Result<Homomorphism> {
        if !matches!(source.id(), SemiringId::FinLang(_)) {
            return Err(Error::DomainMismatch(format!(
                "emptiness test needs a finlang source, got {source}"
            )));
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: SemiringHandle::bool_(),
            kind: HomKind::FinLangToBool,
        })
    }

    pub fn source(&self) -> &SemiringHandle {
        &self.source
    }

    pub fn target(&self) -> &SemiringHandle {
        &self.target
    }

    /// Image of the natural number `n` in the target: the n-fold sum of 1.
    fn nat_image(&self, n: &BigUint) -> Result<Element> {
        nat_to_term(n).eval(&self.target)
    }

    /// Applies the homomorphism to one element.
    pub fn apply(&self, el: &Element) -> Result<Element> {
        if el.semiring() != &self.source {
            return Err(Error::MixedSemiring(self.source.to_string(), el.semiring().to_string()));
        }
        match (&self.kind, el.value()) {
            (HomKind::NatToBool, Value::Nat(n)) => self.target.element(Value::Bool(!n.is_zero())),
            (HomKind::NatToMod, Value::Nat(n)) => {
                let k = match self.target.id() {
                    SemiringId::Mod(k) => *k,
                    _ => unreachable!("nat_to_mod targets mod(k)"),
                };
                let r = n.mod_floor(&BigUint::from(k));
                self.target.element(Value::Mod(r.try_into().expect("residue fits in u64")))
            }
            (HomKind::IntToMod, Value::Int(n)) => {
                let k = match self.target.id() {
                    SemiringId::Mod(k) => *k,
                    _ => unreachable!("int_to_mod targets mod(k)"),
                };
                let r = n.mod_floor(&num::BigInt::from(k));
                let r: u64 = r.try_into().expect("floor residue is non-negative and below k");
                self.target.element(Value::Mod(r))
            }
            (HomKind::NatToInt, Value::Nat(n)) => {
                self.target.element(Value::Int(num::BigInt::from(n.clone())))
            }
            (HomKind::FreeNatEval(letter_map), Value::FreeNat(poly)) => {
                let mut acc = self.target.zero();
                for (word, coeff) in poly.terms() {
                    let c = match coeff.value() {
                        Value::Nat(n) => n.clone(),
                        _ => unreachable!("free-nat coefficients are nat"),
                    };
                    let mut prod = self.target.one();
                    for sym in &word.0 {
                        let img = letter_map.get(sym).expect("letter map covers the alphabet");
                        prod = self.target.mul(&prod, img)?;
                    }
                    let scaled = self.target.mul(&self.nat_image(&c)?, &prod)?;
                    acc = self.target.add(&acc, &scaled)?;
                }
                Ok(acc)
            }
            (HomKind::FinLangToBool, Value::FinLang(words)) => {
                self.target.element(Value::Bool(!words.is_empty()))
            }
            (_, _) => Err(Error::DomainMismatch(format!(
                "payload does not match the source of {self}"
            ))),
        }
    }

    /// Applies the homomorphism to a term over the source's generators,
    /// re-encoding each generator image over the target's generators.  The
    /// tree structure is preserved except at generator leaves, and evaluation
    /// commutes: `apply_term(t).eval(target) == apply(t.eval(source))`.
    pub fn apply_term(&self, term: &Term) -> Result<Term> {
        match term {
            Term::Zero => Ok(Term::Zero),
            Term::One => Ok(Term::One),
            Term::Gen(i) => {
                let image = self.apply(&self.source.generator(*i)?)?;
                encode_tau(&self.target, &image)
            }
            Term::Sum(a, b) => Ok(Term::sum(self.apply_term(a)?, self.apply_term(b)?)),
            Term::Prod(a, b) => Ok(Term::prod(self.apply_term(a)?, self.apply_term(b)?)),
        }
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}
