//! Semiring instances, elements and exact arithmetic.
//!
//! A [`SemiringHandle`] names one concrete semiring instance; an [`Element`]
//! pairs a handle with a carrier value.  All arithmetic is exact; the numeric
//! carriers use arbitrary precision integers and rationals.
//!
//! Instances and carriers:
//!
//! | spec string          | carrier                          | + / ·            |
//! |----------------------|----------------------------------|------------------|
//! | `bool`               | {0, 1}                           | or / and         |
//! | `nat`                | naturals                         | + / ·            |
//! | `int`                | integers                         | + / ·            |
//! | `mod(k)`             | residues mod k (k ≥ 2)           | + / · mod k      |
//! | `fuzzy(t)`           | rationals in [0, 1]              | max / t-norm     |
//! | `maxplus-nat`        | naturals and −∞                  | max / +          |
//! | `minplus-nat`        | naturals and ∞                   | min / +          |
//! | `finlang(Σ)`         | finite languages over Σ          | ∪ / concat       |
//! | `smax`               | binary words and −∞              | radix-max / concat |
//! | `free-nat(Σ)`        | polynomials over nat with words from Σ | + / Cauchy |

pub mod hom;
pub mod literal;
pub mod term;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::series::Polynomial;
use crate::words::{Symbol, Word};

/// Triangular norm used as multiplication by the `fuzzy` instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TNorm {
    Min,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub fn name(self) -> &'static str {
        match self {
            TNorm::Min => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }
}

/// Identity of a semiring instance.  Two handles denote the same instance
/// exactly when their ids are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemiringId {
    Bool,
    Nat,
    Int,
    Mod(u64),
    Fuzzy(TNorm),
    MaxPlusNat,
    MinPlusNat,
    FinLang(Vec<Symbol>),
    SMax,
    FreeNat(Vec<Symbol>),
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringId::Bool => write!(f, "bool"),
            SemiringId::Nat => write!(f, "nat"),
            SemiringId::Int => write!(f, "int"),
            SemiringId::Mod(k) => write!(f, "mod({k})"),
            SemiringId::Fuzzy(t) => write!(f, "fuzzy({})", t.name()),
            SemiringId::MaxPlusNat => write!(f, "maxplus-nat"),
            SemiringId::MinPlusNat => write!(f, "minplus-nat"),
            SemiringId::FinLang(alpha) => write!(f, "finlang({})", alpha.join(",")),
            SemiringId::SMax => write!(f, "smax"),
            SemiringId::FreeNat(alpha) => write!(f, "free-nat({})", alpha.join(",")),
        }
    }
}

/// Carrier value of one element.  The variant must match the instance id of
/// the handle the value is paired with.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bool(bool),
    Nat(BigUint),
    Int(BigInt),
    /// Residue in `[0, k)`; the modulus lives in the handle.
    Mod(u64),
    /// Exact rational in `[0, 1]`.
    Fuzzy(BigRational),
    /// `None` is −∞, the additive identity.
    MaxPlus(Option<u64>),
    /// `None` is ∞, the additive identity.
    MinPlus(Option<u64>),
    /// Finite language; words over the handle's alphabet.
    FinLang(BTreeSet<Word>),
    /// `None` is −∞; words are over the binary alphabet `{"0", "1"}`.
    SMax(Option<Word>),
    /// Polynomial with `nat` coefficients over the handle's alphabet.
    FreeNat(Polynomial),
}

#[derive(Debug)]
struct HandleInner {
    id: SemiringId,
    generators: Vec<Value>,
}

/// Shared, cheaply clonable reference to one semiring instance.
///
/// The handle carries the instance id plus an ordered generator list.  For
/// the finitely generated instances the list is canonical and fixed:
///
/// * `bool`, `nat`, `mod(k)`: empty (the carrier is generated by 0 and 1);
/// * `int`: the single generator −1;
/// * `finlang(Σ)`: one singleton language per alphabet symbol, in order;
/// * `free-nat(Σ)`: one monomial per alphabet symbol, in order;
/// * `smax`: the words `0` and `1`.
///
/// `fuzzy`, `maxplus-nat` and `minplus-nat` are treated as not finitely
/// generated; their handles start with no generators, and ad-hoc generators
/// for the elements appearing in a particular artifact can be attached with
/// [`SemiringHandle::with_generators`].
#[derive(Debug, Clone)]
pub struct SemiringHandle {
    inner: Arc<HandleInner>,
}

impl PartialEq for SemiringHandle {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}

impl Eq for SemiringHandle {}

impl fmt::Display for SemiringHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.id.fmt(f)
    }
}

fn validate_alphabet(alphabet: &[Symbol]) -> Result<()> {
    if alphabet.is_empty() {
        return Err(Error::validate("alphabet must be non-empty"));
    }
    for (i, sym) in alphabet.iter().enumerate() {
        if sym.is_empty() {
            return Err(Error::validate("alphabet symbols must be non-empty"));
        }
        if sym.chars().any(char::is_whitespace) || sym.contains('"') || sym.contains(',') {
            return Err(Error::validate(format!(
                "alphabet symbol {sym:?} contains whitespace, a quote or a comma"
            )));
        }
        if alphabet[..i].contains(sym) {
            return Err(Error::validate(format!("alphabet symbol {sym:?} repeated")));
        }
    }
    Ok(())
}

impl SemiringHandle {
    fn build(id: SemiringId, generators: Vec<Value>) -> SemiringHandle {
        SemiringHandle { inner: Arc::new(HandleInner { id, generators }) }
    }

    pub fn bool_() -> SemiringHandle {
        SemiringHandle::build(SemiringId::Bool, Vec::new())
    }

    pub fn nat() -> SemiringHandle {
        SemiringHandle::build(SemiringId::Nat, Vec::new())
    }

    pub fn int() -> SemiringHandle {
        SemiringHandle::build(SemiringId::Int, vec![Value::Int(BigInt::from(-1))])
    }

    pub fn modulo(k: u64) -> Result<SemiringHandle> {
        if k < 2 {
            return Err(Error::validate(format!("modulus must be at least 2, got {k}")));
        }
        Ok(SemiringHandle::build(SemiringId::Mod(k), Vec::new()))
    }

    pub fn fuzzy(tnorm: TNorm) -> SemiringHandle {
        SemiringHandle::build(SemiringId::Fuzzy(tnorm), Vec::new())
    }

    pub fn maxplus_nat() -> SemiringHandle {
        SemiringHandle::build(SemiringId::MaxPlusNat, Vec::new())
    }

    pub fn minplus_nat() -> SemiringHandle {
        SemiringHandle::build(SemiringId::MinPlusNat, Vec::new())
    }

    pub fn fin_lang(alphabet: Vec<Symbol>) -> Result<SemiringHandle> {
        validate_alphabet(&alphabet)?;
        let generators = alphabet
            .iter()
            .map(|sym| {
                let mut set = BTreeSet::new();
                set.insert(Word::single(sym.clone()));
                Value::FinLang(set)
            })
            .collect();
        Ok(SemiringHandle::build(SemiringId::FinLang(alphabet), generators))
    }

    pub fn smax() -> SemiringHandle {
        let generators =
            vec![Value::SMax(Some(Word::single("0"))), Value::SMax(Some(Word::single("1")))];
        SemiringHandle::build(SemiringId::SMax, generators)
    }

    pub fn free_nat(alphabet: Vec<Symbol>) -> Result<SemiringHandle> {
        validate_alphabet(&alphabet)?;
        let nat = SemiringHandle::nat();
        let generators: Vec<Value> = alphabet
            .iter()
            .map(|sym| {
                let mono = Polynomial::monomial(
                    &nat,
                    alphabet.clone(),
                    Word::single(sym.clone()),
                    nat.one(),
                )
                .expect("monomial over validated alphabet");
                Value::FreeNat(mono)
            })
            .collect();
        Ok(SemiringHandle::build(SemiringId::FreeNat(alphabet), generators))
    }

    pub fn id(&self) -> &SemiringId {
        &self.inner.id
    }

    /// The instances whose canonical generator list generates the whole
    /// carrier under + and ·.
    pub fn is_finitely_generated(&self) -> bool {
        !matches!(
            self.inner.id,
            SemiringId::Fuzzy(_) | SemiringId::MaxPlusNat | SemiringId::MinPlusNat
        )
    }

    /// Attaches ad-hoc generators to a handle of a not finitely generated
    /// instance, so that terms can mention the elements of a particular
    /// artifact.  Finitely generated instances keep their canonical list.
    pub fn with_generators(&self, extra: Vec<Element>) -> Result<SemiringHandle> {
        if self.is_finitely_generated() {
            return Err(Error::validate(format!(
                "{self} already carries its canonical generator list"
            )));
        }
        let mut generators = self.inner.generators.clone();
        for el in extra {
            if el.semiring != *self {
                return Err(Error::MixedSemiring(self.to_string(), el.semiring.to_string()));
            }
            generators.push(el.value);
        }
        Ok(SemiringHandle::build(self.inner.id.clone(), generators))
    }

    pub fn generator_count(&self) -> usize {
        self.inner.generators.len()
    }

    pub fn generator(&self, index: usize) -> Result<Element> {
        let value = self.inner.generators.get(index).cloned().ok_or(Error::GeneratorIndex {
            index,
            count: self.inner.generators.len(),
        })?;
        Ok(Element { semiring: self.clone(), value })
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.generator_count()).map(|i| self.generator(i).unwrap()).collect()
    }

    /// Wraps a raw carrier value, validating that it belongs to the instance.
    pub fn element(&self, value: Value) -> Result<Element> {
        self.check_value(&value)?;
        Ok(Element { semiring: self.clone(), value })
    }

    fn check_value(&self, value: &Value) -> Result<()> {
        let bad = |expected: &str| {
            Err(Error::DomainMismatch(format!("{self} element cannot hold a {expected} payload")))
        };
        match (&self.inner.id, value) {
            (SemiringId::Bool, Value::Bool(_)) => Ok(()),
            (SemiringId::Nat, Value::Nat(_)) => Ok(()),
            (SemiringId::Int, Value::Int(_)) => Ok(()),
            (SemiringId::Mod(k), Value::Mod(v)) => {
                if v < k {
                    Ok(())
                } else {
                    Err(Error::validate(format!("residue {v} out of range for modulus {k}")))
                }
            }
            (SemiringId::Fuzzy(_), Value::Fuzzy(r)) => {
                if r.is_negative() || r > &BigRational::one() {
                    Err(Error::validate(format!("fuzzy value {r} outside [0, 1]")))
                } else {
                    Ok(())
                }
            }
            (SemiringId::MaxPlusNat, Value::MaxPlus(_)) => Ok(()),
            (SemiringId::MinPlusNat, Value::MinPlus(_)) => Ok(()),
            (SemiringId::FinLang(alpha), Value::FinLang(words)) => {
                for w in words {
                    w.validate(alpha)?;
                }
                Ok(())
            }
            (SemiringId::SMax, Value::SMax(w)) => {
                if let Some(w) = w {
                    w.validate(&binary_alphabet())?;
                }
                Ok(())
            }
            (SemiringId::FreeNat(alpha), Value::FreeNat(poly)) => {
                if poly.alphabet() != alpha.as_slice() {
                    return Err(Error::DomainMismatch(format!(
                        "polynomial alphabet {:?} differs from instance alphabet {:?}",
                        poly.alphabet(),
                        alpha
                    )));
                }
                if poly.coefficient_semiring().id() != &SemiringId::Nat {
                    return Err(Error::DomainMismatch(
                        "free-nat payload must have nat coefficients".to_string(),
                    ));
                }
                Ok(())
            }
            (_, _) => bad(value_kind(value)),
        }
    }

    pub fn zero(&self) -> Element {
        let value = match &self.inner.id {
            SemiringId::Bool => Value::Bool(false),
            SemiringId::Nat => Value::Nat(BigUint::zero()),
            SemiringId::Int => Value::Int(BigInt::zero()),
            SemiringId::Mod(_) => Value::Mod(0),
            SemiringId::Fuzzy(_) => Value::Fuzzy(BigRational::zero()),
            SemiringId::MaxPlusNat => Value::MaxPlus(None),
            SemiringId::MinPlusNat => Value::MinPlus(None),
            SemiringId::FinLang(_) => Value::FinLang(BTreeSet::new()),
            SemiringId::SMax => Value::SMax(None),
            SemiringId::FreeNat(alpha) => Value::FreeNat(
                Polynomial::new(&SemiringHandle::nat(), alpha.clone())
                    .expect("alphabet already validated"),
            ),
        };
        Element { semiring: self.clone(), value }
    }

    pub fn one(&self) -> Element {
        let value = match &self.inner.id {
            SemiringId::Bool => Value::Bool(true),
            SemiringId::Nat => Value::Nat(BigUint::one()),
            SemiringId::Int => Value::Int(BigInt::one()),
            SemiringId::Mod(_) => Value::Mod(1),
            SemiringId::Fuzzy(_) => Value::Fuzzy(BigRational::one()),
            SemiringId::MaxPlusNat => Value::MaxPlus(Some(0)),
            SemiringId::MinPlusNat => Value::MinPlus(Some(0)),
            SemiringId::FinLang(_) => {
                let mut set = BTreeSet::new();
                set.insert(Word::empty());
                Value::FinLang(set)
            }
            SemiringId::SMax => Value::SMax(Some(Word::empty())),
            SemiringId::FreeNat(alpha) => {
                let nat = SemiringHandle::nat();
                Value::FreeNat(
                    Polynomial::monomial(&nat, alpha.clone(), Word::empty(), nat.one())
                        .expect("alphabet already validated"),
                )
            }
        };
        Element { semiring: self.clone(), value }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.binop(a, b, true)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.binop(a, b, false)
    }

    fn binop(&self, a: &Element, b: &Element, additive: bool) -> Result<Element> {
        if a.semiring != *self {
            return Err(Error::MixedSemiring(self.to_string(), a.semiring.to_string()));
        }
        if b.semiring != *self {
            return Err(Error::MixedSemiring(self.to_string(), b.semiring.to_string()));
        }
        let value = match (&self.inner.id, &a.value, &b.value) {
            (SemiringId::Bool, Value::Bool(x), Value::Bool(y)) => {
                Value::Bool(if additive { *x || *y } else { *x && *y })
            }
            (SemiringId::Nat, Value::Nat(x), Value::Nat(y)) => {
                Value::Nat(if additive { x + y } else { x * y })
            }
            (SemiringId::Int, Value::Int(x), Value::Int(y)) => {
                Value::Int(if additive { x + y } else { x * y })
            }
            (SemiringId::Mod(k), Value::Mod(x), Value::Mod(y)) => {
                let (x, y, k) = (*x as u128, *y as u128, *k as u128);
                let r = if additive { (x + y) % k } else { (x * y) % k };
                Value::Mod(r as u64)
            }
            (SemiringId::Fuzzy(tnorm), Value::Fuzzy(x), Value::Fuzzy(y)) => {
                let r = if additive {
                    x.clone().max(y.clone())
                } else {
                    match tnorm {
                        TNorm::Min => x.clone().min(y.clone()),
                        TNorm::Product => x * y,
                        TNorm::Lukasiewicz => (x + y - BigRational::one()).max(BigRational::zero()),
                    }
                };
                Value::Fuzzy(r)
            }
            (SemiringId::MaxPlusNat, Value::MaxPlus(x), Value::MaxPlus(y)) => {
                Value::MaxPlus(if additive { *x.max(y) } else { tropical_sum(x, y)? })
            }
            (SemiringId::MinPlusNat, Value::MinPlus(x), Value::MinPlus(y)) => {
                let r = if additive {
                    // None is +infinity here, so it loses every min.
                    match (x, y) {
                        (None, other) | (other, None) => *other,
                        (Some(x), Some(y)) => Some(*x.min(y)),
                    }
                } else {
                    tropical_sum(x, y)?
                };
                Value::MinPlus(r)
            }
            (SemiringId::FinLang(_), Value::FinLang(x), Value::FinLang(y)) => {
                let r = if additive {
                    x.union(y).cloned().collect()
                } else {
                    let mut out = BTreeSet::new();
                    for u in x {
                        for v in y {
                            out.insert(u.concat(v));
                        }
                    }
                    out
                };
                Value::FinLang(r)
            }
            (SemiringId::SMax, Value::SMax(x), Value::SMax(y)) => {
                let r = if additive {
                    match (x, y) {
                        (None, other) | (other, None) => other.clone(),
                        (Some(u), Some(v)) => {
                            if radix_binary_cmp(u, v) == Ordering::Less {
                                Some(v.clone())
                            } else {
                                Some(u.clone())
                            }
                        }
                    }
                } else {
                    match (x, y) {
                        (Some(u), Some(v)) => Some(u.concat(v)),
                        _ => None,
                    }
                };
                Value::SMax(r)
            }
            (SemiringId::FreeNat(_), Value::FreeNat(x), Value::FreeNat(y)) => {
                let r = if additive { x.add_poly(y)? } else { x.cauchy_product(y)? };
                Value::FreeNat(r)
            }
            (_, _, _) => {
                return Err(Error::DomainMismatch(format!(
                    "payload kind does not match instance {self}"
                )));
            }
        };
        Ok(Element { semiring: self.clone(), value })
    }
}

fn value_kind(value: &Value) -> &'static str {
    match value {
        Value::Bool(_) => "bool",
        Value::Nat(_) => "nat",
        Value::Int(_) => "int",
        Value::Mod(_) => "mod",
        Value::Fuzzy(_) => "fuzzy",
        Value::MaxPlus(_) => "maxplus-nat",
        Value::MinPlus(_) => "minplus-nat",
        Value::FinLang(_) => "finlang",
        Value::SMax(_) => "smax",
        Value::FreeNat(_) => "free-nat",
    }
}

fn tropical_sum(x: &Option<u64>, y: &Option<u64>) -> Result<Option<u64>> {
    match (x, y) {
        (Some(x), Some(y)) => {
            let r = x
                .checked_add(*y)
                .ok_or_else(|| Error::validate("tropical product overflows u64"))?;
            Ok(Some(r))
        }
        _ => Ok(None),
    }
}

pub(crate) fn binary_alphabet() -> Vec<Symbol> {
    vec!["0".to_string(), "1".to_string()]
}

/// Radix comparison of binary words: shorter first, then lexicographic.
fn radix_binary_cmp(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

/// One element of one semiring instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    semiring: SemiringHandle,
    value: Value,
}

impl Element {
    pub fn semiring(&self) -> &SemiringHandle {
        &self.semiring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        *self == self.semiring.zero()
    }

    pub fn is_one(&self) -> bool {
        *self == self.semiring.one()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&literal::print(self))
    }
}

/// Position of a binary word in the radix enumeration ε, 0, 1, 00, 01, …
///
/// Equivalently: read `1x` as a binary numeral and subtract one.
pub fn radix_index(word: &Word) -> Result<BigUint> {
    word.validate(&binary_alphabet())?;
    let mut n = BigUint::one();
    for sym in &word.0 {
        n = &n * 2u32 + if sym == "1" { 1u32 } else { 0u32 };
    }
    Ok(n - BigUint::one())
}

/// Parses a semiring spec string such as `nat`, `mod(3)`, `fuzzy(min)`,
/// `finlang(a,b)` or `free-nat(x,y)`.
pub fn parse_spec(spec: &str) -> Result<SemiringHandle> {
    let spec = spec.trim();
    let (head, args) = match spec.find('(') {
        Some(open) => {
            if !spec.ends_with(')') {
                return Err(Error::parse(format!("unbalanced parentheses in spec {spec:?}")));
            }
            (spec[..open].trim(), Some(spec[open + 1..spec.len() - 1].trim()))
        }
        None => (spec, None),
    };
    let alphabet = |args: Option<&str>| -> Result<Vec<Symbol>> {
        let args = args
            .filter(|a| !a.is_empty())
            .ok_or_else(|| Error::parse(format!("spec {spec:?} needs an alphabet argument")))?;
        Ok(args.split(',').map(|s| s.trim().to_string()).collect())
    };
    match head {
        "bool" if args.is_none() => Ok(SemiringHandle::bool_()),
        "nat" if args.is_none() => Ok(SemiringHandle::nat()),
        "int" if args.is_none() => Ok(SemiringHandle::int()),
        "maxplus-nat" if args.is_none() => Ok(SemiringHandle::maxplus_nat()),
        "minplus-nat" if args.is_none() => Ok(SemiringHandle::minplus_nat()),
        "smax" if args.is_none() => Ok(SemiringHandle::smax()),
        "mod" => {
            let k = args
                .filter(|a| !a.is_empty())
                .ok_or_else(|| Error::parse("mod needs a modulus, e.g. mod(3)"))?
                .parse::<u64>()
                .map_err(|_| Error::parse(format!("bad modulus in spec {spec:?}")))?;
            SemiringHandle::modulo(k)
        }
        "fuzzy" => {
            let tnorm = match args {
                Some("min") => TNorm::Min,
                Some("product") => TNorm::Product,
                Some("lukasiewicz") => TNorm::Lukasiewicz,
                _ => {
                    return Err(Error::parse(format!(
                        "fuzzy needs a t-norm min|product|lukasiewicz, got {spec:?}"
                    )));
                }
            };
            Ok(SemiringHandle::fuzzy(tnorm))
        }
        "finlang" => SemiringHandle::fin_lang(alphabet(args)?),
        "free-nat" => SemiringHandle::free_nat(alphabet(args)?),
        _ => Err(Error::parse(format!("unknown semiring spec {spec:?}"))),
    }
}

/// All instance families with desk-scale default parameters, used by tests
/// and by the `semirings` listing.
pub fn standard_instances() -> Vec<SemiringHandle> {
    vec![
        SemiringHandle::bool_(),
        SemiringHandle::nat(),
        SemiringHandle::int(),
        SemiringHandle::modulo(3).unwrap(),
        SemiringHandle::fuzzy(TNorm::Min),
        SemiringHandle::fuzzy(TNorm::Product),
        SemiringHandle::fuzzy(TNorm::Lukasiewicz),
        SemiringHandle::maxplus_nat(),
        SemiringHandle::minplus_nat(),
        SemiringHandle::fin_lang(vec!["a".to_string(), "b".to_string()]).unwrap(),
        SemiringHandle::smax(),
        SemiringHandle::free_nat(vec!["x".to_string(), "y".to_string()]).unwrap(),
    ]
}
