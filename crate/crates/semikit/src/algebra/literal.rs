//! Element literals: the textual form of a carrier value, one syntax per
//! instance.
//!
//! | instance      | examples                              |
//! |---------------|---------------------------------------|
//! | `bool`        | `0`, `1`                              |
//! | `nat`         | `42`                                  |
//! | `int`         | `-7`                                  |
//! | `mod(k)`      | `2`                                   |
//! | `fuzzy(t)`    | `1/2` (printed in lowest terms)       |
//! | `maxplus-nat` | `3`, `-inf`                           |
//! | `minplus-nat` | `3`, `inf`                            |
//! | `finlang(Σ)`  | `{ "ab", "b" }`, `{ "" }`, `{ }`      |
//! | `smax`        | `0110`, `ε`, `-inf`                   |
//! | `free-nat(Σ)` | `2 "xy" + 1 "y"`, `0`                 |
//!
//! Printing is canonical (one byte sequence per value); parsing accepts the
//! printed form back, modulo surrounding whitespace.

use std::collections::BTreeSet;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;

use crate::algebra::{binary_alphabet, Element, SemiringHandle, SemiringId, Value};
use crate::error::{Error, Result};
use crate::series::{quoted_word_body, Polynomial};
use crate::words::{Symbol, Word};

/// Canonical text form of an element.
pub fn print(el: &Element) -> String {
    match el.value() {
        Value::Bool(b) => if *b { "1" } else { "0" }.to_string(),
        Value::Nat(n) => n.to_string(),
        Value::Int(n) => n.to_string(),
        Value::Mod(v) => v.to_string(),
        Value::Fuzzy(r) => format!("{}/{}", r.numer(), r.denom()),
        Value::MaxPlus(v) => match v {
            Some(n) => n.to_string(),
            None => "-inf".to_string(),
        },
        Value::MinPlus(v) => match v {
            Some(n) => n.to_string(),
            None => "inf".to_string(),
        },
        Value::FinLang(words) => print_language(words),
        Value::SMax(w) => match w {
            Some(w) => quoted_word_body(w),
            None => "-inf".to_string(),
        },
        Value::FreeNat(poly) => print_free_nat(poly),
    }
}

fn print_language(words: &BTreeSet<Word>) -> String {
    if words.is_empty() {
        return "{ }".to_string();
    }
    let body = words
        .iter()
        .map(|w| format!("\"{}\"", quoted_word_body(w)))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{ {body} }}")
}

fn print_free_nat(poly: &Polynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    poly.terms()
        .into_iter()
        .map(|(w, c)| format!("{} \"{}\"", c, quoted_word_body(&w)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses the literal `text` as an element of `sr`.
pub fn parse(sr: &SemiringHandle, text: &str) -> Result<Element> {
    let text = text.trim();
    let value = match sr.id() {
        SemiringId::Bool => match text {
            "0" => Value::Bool(false),
            "1" => Value::Bool(true),
            _ => return Err(Error::parse(format!("bool literal must be 0 or 1, got {text:?}"))),
        },
        SemiringId::Nat => Value::Nat(parse_biguint(text)?),
        SemiringId::Int => {
            let n = text
                .parse::<BigInt>()
                .map_err(|_| Error::parse(format!("bad int literal {text:?}")))?;
            Value::Int(n)
        }
        SemiringId::Mod(_) => {
            let v = text
                .parse::<u64>()
                .map_err(|_| Error::parse(format!("bad residue literal {text:?}")))?;
            Value::Mod(v)
        }
        SemiringId::Fuzzy(_) => Value::Fuzzy(parse_rational(text)?),
        SemiringId::MaxPlusNat => {
            if text == "-inf" {
                Value::MaxPlus(None)
            } else {
                Value::MaxPlus(Some(parse_u64(text)?))
            }
        }
        SemiringId::MinPlusNat => {
            if text == "inf" {
                Value::MinPlus(None)
            } else {
                Value::MinPlus(Some(parse_u64(text)?))
            }
        }
        SemiringId::FinLang(alpha) => Value::FinLang(parse_language(text, alpha)?),
        SemiringId::SMax => {
            if text == "-inf" {
                Value::SMax(None)
            } else if text == "ε" || text == "\"\"" {
                Value::SMax(Some(Word::empty()))
            } else {
                Value::SMax(Some(Word::parse(text, &binary_alphabet())?))
            }
        }
        SemiringId::FreeNat(alpha) => Value::FreeNat(parse_free_nat(text, alpha)?),
    };
    sr.element(value)
}

fn parse_u64(text: &str) -> Result<u64> {
    text.parse::<u64>().map_err(|_| Error::parse(format!("bad natural literal {text:?}")))
}

fn parse_biguint(text: &str) -> Result<BigUint> {
    text.parse::<BigUint>().map_err(|_| Error::parse(format!("bad natural literal {text:?}")))
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let numer = numer
        .parse::<BigInt>()
        .map_err(|_| Error::parse(format!("bad rational literal {text:?}")))?;
    let denom = denom
        .parse::<BigInt>()
        .map_err(|_| Error::parse(format!("bad rational literal {text:?}")))?;
    if denom == BigInt::from(0) {
        return Err(Error::parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Splits `{ "w1", "w2" }` into its quoted word bodies.
fn quoted_bodies(inner: &str) -> Result<Vec<String>> {
    let mut bodies = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        if !rest.starts_with('"') {
            return Err(Error::parse(format!("expected a quoted word at {rest:?}")));
        }
        let close = rest[1..]
            .find('"')
            .ok_or_else(|| Error::parse(format!("unterminated quote in {inner:?}")))?;
        bodies.push(rest[1..1 + close].to_string());
        rest = rest[close + 2..].trim_start();
        if let Some(stripped) = rest.strip_prefix(',') {
            rest = stripped.trim_start();
        } else if !rest.is_empty() {
            return Err(Error::parse(format!("expected a comma between words in {inner:?}")));
        }
    }
    Ok(bodies)
}

fn parse_quoted_word(body: &str, alphabet: &[Symbol]) -> Result<Word> {
    if body.is_empty() || body == "ε" {
        Ok(Word::empty())
    } else {
        Word::parse(body, alphabet)
    }
}

fn parse_language(text: &str, alphabet: &[Symbol]) -> Result<BTreeSet<Word>> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::parse(format!("language literal must be braced, got {text:?}")))?;
    let mut words = BTreeSet::new();
    for body in quoted_bodies(inner)? {
        words.insert(parse_quoted_word(&body, alphabet)?);
    }
    Ok(words)
}

fn parse_free_nat(text: &str, alphabet: &[Symbol]) -> Result<Polynomial> {
    let nat = SemiringHandle::nat();
    let mut poly = Polynomial::new(&nat, alphabet.to_vec())?;
    if text == "0" {
        return Ok(poly);
    }
    for part in text.split('+') {
        let part = part.trim();
        let (coeff_text, word_text) = part
            .split_once('"')
            .ok_or_else(|| Error::parse(format!("free-nat term {part:?} lacks a quoted word")))?;
        let body = word_text
            .strip_suffix('"')
            .ok_or_else(|| Error::parse(format!("unterminated quote in {part:?}")))?;
        let coeff = nat.element(Value::Nat(parse_biguint(coeff_text.trim())?))?;
        let word = parse_quoted_word(body, alphabet)?;
        let merged = nat.add(&poly.coeff(&word)?, &coeff)?;
        poly.set_coeff(word, merged)?;
    }
    Ok(poly)
}
