//! Polynomials: finitely supported maps from words to semiring elements.
//!
//! Addition is pointwise; multiplication is the Cauchy product, where the
//! coefficient of `w` collects `(p, u)·(q, v)` over all splittings `w = uv`,
//! with the factors multiplied in that order (the coefficient semiring may be
//! noncommutative).  The coefficient map never stores zeros.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Element, SemiringHandle};
use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    semiring: SemiringHandle,
    alphabet: Vec<Symbol>,
    coeffs: BTreeMap<Word, Element>,
}

impl Polynomial {
    /// The zero polynomial over `alphabet`.
    pub fn new(semiring: &SemiringHandle, alphabet: Vec<Symbol>) -> Result<Polynomial> {
        if alphabet.is_empty() {
            return Err(Error::validate("polynomial alphabet must be non-empty"));
        }
        Ok(Polynomial { semiring: semiring.clone(), alphabet, coeffs: BTreeMap::new() })
    }

    /// A single-term polynomial `coeff · word`.
    pub fn monomial(
        semiring: &SemiringHandle,
        alphabet: Vec<Symbol>,
        word: Word,
        coeff: Element,
    ) -> Result<Polynomial> {
        let mut poly = Polynomial::new(semiring, alphabet)?;
        poly.set_coeff(word, coeff)?;
        Ok(poly)
    }

    pub fn coefficient_semiring(&self) -> &SemiringHandle {
        &self.semiring
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    /// Overwrites the coefficient of `word`; zero coefficients are removed.
    pub fn set_coeff(&mut self, word: Word, coeff: Element) -> Result<()> {
        word.validate(&self.alphabet)?;
        if *coeff.semiring() != self.semiring {
            return Err(Error::MixedSemiring(
                self.semiring.to_string(),
                coeff.semiring().to_string(),
            ));
        }
        if coeff.is_zero() {
            self.coeffs.remove(&word);
        } else {
            self.coeffs.insert(word, coeff);
        }
        Ok(())
    }

    /// The coefficient of `word` (zero when the word is unsupported).
    pub fn coeff(&self, word: &Word) -> Result<Element> {
        word.validate(&self.alphabet)?;
        Ok(self.coeffs.get(word).cloned().unwrap_or_else(|| self.semiring.zero()))
    }

    /// Words with nonzero coefficients, in radix order.
    pub fn support(&self) -> Vec<Word> {
        let mut words: Vec<Word> = self.coeffs.keys().cloned().collect();
        words.sort_by(|a, b| a.radix_cmp(b, &self.alphabet));
        words
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Iterates terms in radix word order.
    pub fn terms(&self) -> Vec<(Word, Element)> {
        self.support().into_iter().map(|w| {
            let c = self.coeffs.get(&w).cloned().expect("support word present");
            (w, c)
        }).collect()
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::MixedSemiring(
                self.semiring.to_string(),
                other.semiring.to_string(),
            ));
        }
        if self.alphabet != other.alphabet {
            return Err(Error::DomainMismatch(format!(
                "polynomial alphabets differ: {:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add_poly(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            let merged = match out.coeffs.get(w) {
                Some(existing) => self.semiring.add(existing, c)?,
                None => c.clone(),
            };
            out.set_coeff(w.clone(), merged)?;
        }
        Ok(out)
    }

    /// Cauchy product: coefficient of `w` is the sum over splittings
    /// `w = uv` of `(self, u)·(other, v)`, factors in that order.
    pub fn cauchy_product(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Polynomial::new(&self.semiring, self.alphabet.clone())?;
        for (u, cu) in &self.coeffs {
            for (v, cv) in &other.coeffs {
                let w = u.concat(v);
                let prod = self.semiring.mul(cu, cv)?;
                let merged = match out.coeffs.get(&w) {
                    Some(existing) => self.semiring.add(existing, &prod)?,
                    None => prod,
                };
                out.set_coeff(w, merged)?;
            }
        }
        Ok(out)
    }

    /// Text form: one `coeff "word"` line per term, radix word order, `ε`
    /// standing for the empty word.  The zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .into_iter()
            .map(|(w, c)| format!("{} \"{}\"", c, quoted_word_body(&w)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Body used between quotes when a word is rendered inside a literal: the
/// compact form, with `ε` for the empty word.
pub(crate) fn quoted_word_body(word: &Word) -> String {
    if word.is_empty() {
        "ε".to_string()
    } else {
        word.display_compact()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
