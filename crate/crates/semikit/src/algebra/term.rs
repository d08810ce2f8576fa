//! Terms over a semiring's generators.
//!
//! A term is a syntax tree built from the constants 0 and 1, generator
//! leaves `g<i>`, binary sums and binary products.  Evaluation substitutes
//! the handle's generator elements for the leaves; the nondeterministic
//! evaluator instead resolves every sum to one operand, multiplies the leaf
//! values of each resolution in left-to-right order, and adds the results of
//! all resolutions — the two agree on every term.
//!
//! Text form: `0`, `1`, `g<i>`, `(t + t)`, `(t * t)`, whitespace-insensitive.

use std::fmt;

use num::bigint::BigUint;
use num::{One, Signed, Zero};

use crate::algebra::{Element, SemiringHandle, SemiringId, Value};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Zero,
    One,
    Gen(usize),
    Sum(Box<Term>, Box<Term>),
    Prod(Box<Term>, Box<Term>),
}

impl Term {
    pub fn sum(a: Term, b: Term) -> Term {
        Term::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Term, b: Term) -> Term {
        Term::Prod(Box::new(a), Box::new(b))
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Gen(_) => 1,
            Term::Sum(a, b) | Term::Prod(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Homomorphic evaluation in `sr`.
    pub fn eval(&self, sr: &SemiringHandle) -> Result<Element> {
        match self {
            Term::Zero => Ok(sr.zero()),
            Term::One => Ok(sr.one()),
            Term::Gen(i) => sr.generator(*i),
            Term::Sum(a, b) => sr.add(&a.eval(sr)?, &b.eval(sr)?),
            Term::Prod(a, b) => sr.mul(&a.eval(sr)?, &b.eval(sr)?),
        }
    }

    /// Nondeterministic evaluation: the sum, over all ways of resolving each
    /// sum node to one operand, of the ordered product of the leaf values of
    /// that resolution.  Agrees with [`Term::eval`] by distributivity.
    pub fn nondet_eval(&self, sr: &SemiringHandle) -> Result<Element> {
        let products = self.resolution_products(sr)?;
        let mut acc = sr.zero();
        for p in products {
            acc = sr.add(&acc, &p)?;
        }
        Ok(acc)
    }

    /// The ordered leaf products of all resolutions, in resolution order
    /// (left operand of a sum explored before the right one).
    fn resolution_products(&self, sr: &SemiringHandle) -> Result<Vec<Element>> {
        match self {
            Term::Zero => Ok(vec![sr.zero()]),
            Term::One => Ok(vec![sr.one()]),
            Term::Gen(i) => Ok(vec![sr.generator(*i)?]),
            Term::Sum(a, b) => {
                let mut out = a.resolution_products(sr)?;
                out.extend(b.resolution_products(sr)?);
                Ok(out)
            }
            Term::Prod(a, b) => {
                let left = a.resolution_products(sr)?;
                let right = b.resolution_products(sr)?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for u in &left {
                    for v in &right {
                        out.push(sr.mul(u, v)?);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Right-folds non-empty `items` into a sum; empty input gives `Zero`.
fn fold_sum(items: Vec<Term>) -> Term {
    let mut iter = items.into_iter().rev();
    match iter.next() {
        None => Term::Zero,
        Some(last) => iter.fold(last, |acc, item| Term::sum(item, acc)),
    }
}

/// Right-folds non-empty `items` into a product; empty input gives `One`.
fn fold_prod(items: Vec<Term>) -> Term {
    let mut iter = items.into_iter().rev();
    match iter.next() {
        None => Term::One,
        Some(last) => iter.fold(last, |acc, item| Term::prod(item, acc)),
    }
}

/// Encodes a natural number as a generator-free term via its binary
/// expansion: `n = Σ_{k ∈ K} 2^k` becomes `Σ_{k ∈ K} Π_{i=1}^{k} (1 + 1)`.
///
/// The result has at most `8·(bitlen(n) + 1)²` nodes and evaluates to the
/// image of `n` (the n-fold sum of 1) in any semiring.
pub fn nat_to_term(n: &BigUint) -> Term {
    if n.is_zero() {
        return Term::Zero;
    }
    let mut summands = Vec::new();
    for k in 0..n.bits() {
        if n.bit(k) {
            let two = || Term::sum(Term::One, Term::One);
            let factors: Vec<Term> = (0..k).map(|_| two()).collect();
            summands.push(fold_prod(factors));
        }
    }
    fold_sum(summands)
}

/// Encodes an element of a finitely generated instance as a sum-of-products
/// term over the instance's canonical generators, such that
/// `encode_tau(sr, x).eval(sr) == x`.
///
/// `fuzzy`, `maxplus-nat` and `minplus-nat` are rejected as not finitely
/// generated.
pub fn encode_tau(sr: &SemiringHandle, el: &Element) -> Result<Term> {
    if el.semiring() != sr {
        return Err(Error::MixedSemiring(sr.to_string(), el.semiring().to_string()));
    }
    if !sr.is_finitely_generated() {
        return Err(Error::NotFinitelyGenerated(sr.to_string()));
    }
    let gen_index = |alphabet: &[String], sym: &str| -> usize {
        alphabet.iter().position(|a| a == sym).expect("validated word symbol")
    };
    let term = match (sr.id(), el.value()) {
        (SemiringId::Bool, Value::Bool(b)) => {
            if *b {
                Term::One
            } else {
                Term::Zero
            }
        }
        (SemiringId::Nat, Value::Nat(n)) => nat_to_term(n),
        (SemiringId::Int, Value::Int(n)) => {
            if n.is_negative() {
                let magnitude = nat_to_term(n.magnitude());
                Term::prod(Term::Gen(0), magnitude)
            } else {
                nat_to_term(n.magnitude())
            }
        }
        (SemiringId::Mod(_), Value::Mod(v)) => nat_to_term(&BigUint::from(*v)),
        (SemiringId::FinLang(alpha), Value::FinLang(words)) => {
            let mut sorted: Vec<_> = words.iter().collect();
            sorted.sort_by(|a, b| a.radix_cmp(b, alpha));
            let summands = sorted
                .into_iter()
                .map(|w| fold_prod(w.0.iter().map(|s| Term::Gen(gen_index(alpha, s))).collect()))
                .collect();
            fold_sum(summands)
        }
        (SemiringId::SMax, Value::SMax(w)) => match w {
            None => Term::Zero,
            Some(w) => {
                fold_prod(w.0.iter().map(|bit| Term::Gen(if bit == "1" { 1 } else { 0 })).collect())
            }
        },
        (SemiringId::FreeNat(alpha), Value::FreeNat(poly)) => {
            let summands = poly
                .terms()
                .into_iter()
                .map(|(w, c)| {
                    let coeff = match c.value() {
                        Value::Nat(n) => n.clone(),
                        _ => unreachable!("free-nat coefficients are nat"),
                    };
                    let mono =
                        fold_prod(w.0.iter().map(|s| Term::Gen(gen_index(alpha, s))).collect());
                    if w.is_empty() {
                        nat_to_term(&coeff)
                    } else if coeff.is_one() {
                        mono
                    } else {
                        Term::prod(nat_to_term(&coeff), mono)
                    }
                })
                .collect();
            fold_sum(summands)
        }
        (_, _) => {
            return Err(Error::DomainMismatch(format!(
                "payload kind does not match instance {sr}"
            )));
        }
    };
    Ok(term)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Gen(i) => write!(f, "g{i}"),
            Term::Sum(a, b) => write!(f, "({a} + {b})"),
            Term::Prod(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Plus,
    Star,
    Zero,
    One,
    Gen(usize),
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '(' => tokens.push(Token::Open),
            ')' => tokens.push(Token::Close),
            '+' => tokens.push(Token::Plus),
            '*' => tokens.push(Token::Star),
            '0' => tokens.push(Token::Zero),
            '1' => tokens.push(Token::One),
            'g' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                if digits.is_empty() {
                    return Err(Error::parse("generator leaf needs an index, e.g. g0"));
                }
                let index = digits
                    .parse::<usize>()
                    .map_err(|_| Error::parse(format!("generator index {digits} too large")))?;
                tokens.push(Token::Gen(index));
            }
            other => return Err(Error::parse(format!("unexpected character {other:?} in term"))),
        }
    }
    Ok(tokens)
}

fn parse_tokens(tokens: &[Token], pos: &mut usize) -> Result<Term> {
    let token = tokens.get(*pos).ok_or_else(|| Error::parse("term ended unexpectedly"))?;
    *pos += 1;
    match token {
        Token::Zero => Ok(Term::Zero),
        Token::One => Ok(Term::One),
        Token::Gen(i) => Ok(Term::Gen(*i)),
        Token::Open => {
            let left = parse_tokens(tokens, pos)?;
            let op = tokens.get(*pos).ok_or_else(|| Error::parse("term ended unexpectedly"))?;
            *pos += 1;
            let combine = match op {
                Token::Plus => Term::sum,
                Token::Star => Term::prod,
                _ => return Err(Error::parse("expected + or * inside parentheses")),
            };
            let right = parse_tokens(tokens, pos)?;
            match tokens.get(*pos) {
                Some(Token::Close) => {
                    *pos += 1;
                    Ok(combine(left, right))
                }
                _ => Err(Error::parse("expected closing parenthesis")),
            }
        }
        Token::Close | Token::Plus | Token::Star => {
            Err(Error::parse("term starts with an operator or closing parenthesis"))
        }
    }
}

/// Parses the text form of a term.
pub fn parse(text: &str) -> Result<Term> {
    let tokens = lex(text)?;
    let mut pos = 0;
    let term = parse_tokens(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::parse("trailing input after term"));
    }
    Ok(term)
}
