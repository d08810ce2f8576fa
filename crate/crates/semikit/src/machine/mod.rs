//! Weighted nondeterministic Turing machines.
//!
//! A machine carries a weight from a semiring instance on every transition.
//! The value of a computation is the product of its transition weights, in
//! firing order; the behavior coefficient of an input word is the sum of the
//! values of all accepting computations on it.  Machines are not required to
//! halt, so every enumeration takes a step bound and reports
//! [`Error::BoundExceeded`] when a computation is still running at the bound.
//!
//! Tape discipline follows the usual weighted-machine conventions: accepting
//! states have no outgoing transitions, the blank is never written, and on a
//! semi-infinite tape cell 0 permanently holds an end marker that forces the
//! head to stay right of it.

pub mod format;
pub mod transform;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{Element, SemiringHandle, Value};
use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TapeMode {
    TwoWay,
    SemiInfinite,
}

impl TapeMode {
    pub fn name(self) -> &'static str {
        match self {
            TapeMode::TwoWay => "two-way",
            TapeMode::SemiInfinite => "semi-infinite",
        }
    }
}

/// Polynomial step bound `f(n) = c·n^k + d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyBound {
    pub c: u64,
    pub k: u32,
    pub d: u64,
}

impl PolyBound {
    pub fn eval(&self, n: usize) -> Result<u64> {
        let n = n as u64;
        n.checked_pow(self.k)
            .and_then(|p| p.checked_mul(self.c))
            .and_then(|m| m.checked_add(self.d))
            .ok_or_else(|| Error::validate(format!("bound {self} overflows at n = {n}")))
    }
}

impl fmt::Display for PolyBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·n^{} + {}", self.c, self.k, self.d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub from: Symbol,
    pub read: Symbol,
    pub to: Symbol,
    pub write: Symbol,
    /// −1, 0 or 1.
    pub movement: i8,
    pub weight: Element,
}

impl Transition {
    /// The five-tuple identifying the transition independent of its weight.
    fn shape(&self) -> (&Symbol, &Symbol, &Symbol, &Symbol, i8) {
        (&self.from, &self.read, &self.to, &self.write, self.movement)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Machine {
    pub semiring: SemiringHandle,
    pub states: Vec<Symbol>,
    pub input_alphabet: Vec<Symbol>,
    pub work_alphabet: Vec<Symbol>,
    pub blank: Symbol,
    pub tape: TapeMode,
    pub end_marker: Option<Symbol>,
    pub initial: Symbol,
    pub accepting: BTreeSet<Symbol>,
    pub rejecting: BTreeSet<Symbol>,
    pub transitions: Vec<Transition>,
    pub bound: Option<PolyBound>,
}

fn check_name(kind: &str, name: &Symbol) -> Result<()> {
    if name.is_empty() {
        return Err(Error::validate(format!("{kind} name must be non-empty")));
    }
    if name.chars().any(char::is_whitespace) || name.contains(['(', ')', '"', ',']) {
        return Err(Error::validate(format!(
            "{kind} name {name:?} contains whitespace, parentheses, a quote or a comma"
        )));
    }
    Ok(())
}

impl Machine {
    /// Checks every structural invariant; all constructors and loaders call
    /// this before handing a machine out.
    pub fn validate(&self) -> Result<()> {
        if self.states.is_empty() {
            return Err(Error::validate("machine needs at least one state"));
        }
        for (i, q) in self.states.iter().enumerate() {
            check_name("state", q)?;
            if self.states[..i].contains(q) {
                return Err(Error::validate(format!("state {q:?} repeated")));
            }
        }
        if self.input_alphabet.is_empty() {
            return Err(Error::validate("input alphabet must be non-empty"));
        }
        for (i, s) in self.work_alphabet.iter().enumerate() {
            check_name("symbol", s)?;
            if self.work_alphabet[..i].contains(s) {
                return Err(Error::validate(format!("work symbol {s:?} repeated")));
            }
        }
        for s in &self.input_alphabet {
            if !self.work_alphabet.contains(s) {
                return Err(Error::validate(format!(
                    "input symbol {s:?} missing from the work alphabet"
                )));
            }
        }
        for q in &self.states {
            if self.work_alphabet.contains(q) {
                return Err(Error::validate(format!(
                    "{q:?} is both a state and a work symbol"
                )));
            }
        }
        if !self.work_alphabet.contains(&self.blank) {
            return Err(Error::validate("blank symbol missing from the work alphabet"));
        }
        if self.input_alphabet.contains(&self.blank) {
            return Err(Error::validate("blank symbol must not be an input symbol"));
        }
        match (self.tape, &self.end_marker) {
            (TapeMode::SemiInfinite, Some(marker)) => {
                if !self.work_alphabet.contains(marker) {
                    return Err(Error::validate("end marker missing from the work alphabet"));
                }
                if self.input_alphabet.contains(marker) || marker == &self.blank {
                    return Err(Error::validate(
                        "end marker must be a non-input, non-blank work symbol",
                    ));
                }
            }
            (TapeMode::SemiInfinite, None) => {
                return Err(Error::validate("semi-infinite tape needs an end marker"));
            }
            (TapeMode::TwoWay, Some(_)) => {
                return Err(Error::validate("two-way tape must not declare an end marker"));
            }
            (TapeMode::TwoWay, None) => {}
        }
        if !self.states.contains(&self.initial) {
            return Err(Error::validate("initial state missing from the state list"));
        }
        for q in self.accepting.iter().chain(self.rejecting.iter()) {
            if !self.states.contains(q) {
                return Err(Error::validate(format!("verdict state {q:?} not declared")));
            }
        }
        if let Some(q) = self.accepting.intersection(&self.rejecting).next() {
            return Err(Error::validate(format!("state {q:?} both accepts and rejects")));
        }
        for (i, t) in self.transitions.iter().enumerate() {
            let ctx = |msg: String| Error::validate(format!("transition {i}: {msg}"));
            if !self.states.contains(&t.from) {
                return Err(ctx(format!("unknown source state {:?}", t.from)));
            }
            if self.accepting.contains(&t.from) {
                return Err(ctx(format!("accepting state {:?} has an outgoing transition", t.from)));
            }
            if !self.states.contains(&t.to) {
                return Err(ctx(format!("unknown target state {:?}", t.to)));
            }
            if !self.work_alphabet.contains(&t.read) {
                return Err(ctx(format!("unknown read symbol {:?}", t.read)));
            }
            if !self.work_alphabet.contains(&t.write) {
                return Err(ctx(format!("unknown write symbol {:?}", t.write)));
            }
            if t.write == self.blank {
                return Err(ctx("the blank is never written".to_string()));
            }
            if !(-1..=1).contains(&t.movement) {
                return Err(ctx(format!("movement must be -1, 0 or 1, got {}", t.movement)));
            }
            if let Some(marker) = &self.end_marker {
                if t.read == *marker && (t.write != *marker || t.movement < 0) {
                    return Err(ctx(
                        "a transition reading the end marker must rewrite it and not move left"
                            .to_string(),
                    ));
                }
                if t.write == *marker && t.read != *marker {
                    return Err(ctx(
                        "the end marker cannot be written over another symbol".to_string(),
                    ));
                }
            }
            if t.weight.semiring() != &self.semiring {
                return Err(ctx(format!(
                    "weight belongs to {}, machine is over {}",
                    t.weight.semiring(),
                    self.semiring
                )));
            }
            if t.weight.is_zero() {
                return Err(ctx("zero weights are not allowed".to_string()));
            }
            if self.transitions[..i].iter().any(|u| u.shape() == t.shape()) {
                return Err(ctx("duplicate transition shape".to_string()));
            }
        }
        Ok(())
    }

    /// Resolves an explicit step bound, falling back to the declared
    /// polynomial bound at input length `n`.
    pub fn resolve_bound(&self, explicit: Option<u64>, n: usize) -> Result<u64> {
        match (explicit, &self.bound) {
            (Some(b), _) => Ok(b),
            (None, Some(pb)) => pb.eval(n),
            (None, None) => Err(Error::MissingBound),
        }
    }
}

/// A machine configuration: control state, finitely many written cells, and
/// the head position.  Cells absent from the map hold the blank; on a
/// semi-infinite tape cell 0 always holds the end marker and the head index
/// never becomes negative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Configuration {
    pub state: Symbol,
    pub tape: BTreeMap<i64, Symbol>,
    pub head: i64,
}

impl Configuration {
    pub fn read_symbol(&self, machine: &Machine) -> Symbol {
        self.tape.get(&self.head).cloned().unwrap_or_else(|| machine.blank.clone())
    }
}

/// The start configuration on `word`: the input written on the tape and the
/// head on the leftmost input cell (which is the leftmost blank cell when the
/// input is empty).
pub fn initial_configuration(machine: &Machine, word: &Word) -> Result<Configuration> {
    word.validate(&machine.input_alphabet)?;
    let mut tape = BTreeMap::new();
    let head = match machine.tape {
        TapeMode::TwoWay => {
            for (i, sym) in word.0.iter().enumerate() {
                tape.insert(i as i64, sym.clone());
            }
            0
        }
        TapeMode::SemiInfinite => {
            let marker = machine.end_marker.clone().expect("validated semi-infinite machine");
            tape.insert(0, marker);
            for (i, sym) in word.0.iter().enumerate() {
                tape.insert(i as i64 + 1, sym.clone());
            }
            1
        }
    };
    Ok(Configuration { state: machine.initial.clone(), tape, head })
}

/// All one-step successors of `config`, in transition list order, each tagged
/// with the index of the transition that produced it.
pub fn successors(machine: &Machine, config: &Configuration) -> Vec<(usize, Configuration)> {
    let current = config.read_symbol(machine);
    machine
        .transitions
        .iter()
        .enumerate()
        .filter(|(_, t)| t.from == config.state && t.read == current)
        .map(|(i, t)| {
            let mut tape = config.tape.clone();
            tape.insert(config.head, t.write.clone());
            let head = config.head + t.movement as i64;
            debug_assert!(machine.tape == TapeMode::TwoWay || head >= 0);
            (i, Configuration { state: t.to.clone(), tape, head })
        })
        .collect()
}

/// A finite computation: the start configuration and the fired transitions
/// with the configurations they lead to.
#[derive(Debug, Clone, PartialEq)]
pub struct Computation {
    pub start: Configuration,
    pub steps: Vec<(usize, Configuration)>,
}

impl Computation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &Configuration {
        self.steps.last().map(|(_, c)| c).unwrap_or(&self.start)
    }

    pub fn is_accepting(&self, machine: &Machine) -> bool {
        machine.accepting.contains(&self.last().state)
    }

    /// The configurations visited, in order (length + 1 entries).
    pub fn configurations(&self) -> Vec<&Configuration> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|(_, c)| c)).collect()
    }

    /// Product of the fired transition weights, in firing order.
    pub fn value(&self, machine: &Machine) -> Result<Element> {
        let mut acc = machine.semiring.one();
        for (index, _) in &self.steps {
            acc = machine.semiring.mul(&acc, &machine.transitions[*index].weight)?;
        }
        Ok(acc)
    }
}

enum Cutoff {
    /// Report `BoundExceeded` when a computation is still running at the
    /// bound.
    Error,
    /// Silently drop computations still running at the bound.
    Truncate,
}

fn enumerate_with(
    machine: &Machine,
    word: &Word,
    bound: u64,
    cutoff: Cutoff,
) -> Result<Vec<Computation>> {
    machine.validate()?;
    let start = initial_configuration(machine, word)?;
    let mut out = Vec::new();
    let mut steps: Vec<(usize, Configuration)> = Vec::new();

    fn dfs(
        machine: &Machine,
        start: &Configuration,
        steps: &mut Vec<(usize, Configuration)>,
        bound: u64,
        cutoff: &Cutoff,
        out: &mut Vec<Computation>,
    ) -> Result<()> {
        let current = steps.last().map(|(_, c)| c).unwrap_or(start);
        let next = successors(machine, current);
        if next.is_empty() {
            out.push(Computation { start: start.clone(), steps: steps.clone() });
            return Ok(());
        }
        if steps.len() as u64 >= bound {
            return match cutoff {
                Cutoff::Error => Err(Error::BoundExceeded(bound)),
                Cutoff::Truncate => Ok(()),
            };
        }
        for step in next {
            steps.push(step);
            dfs(machine, start, steps, bound, cutoff, out)?;
            steps.pop();
        }
        Ok(())
    }

    dfs(machine, &start, &mut steps, bound, &cutoff, &mut out)?;
    Ok(out)
}

/// All maximal computations on `word` (those ending in a configuration with
/// no successor), in depth-first transition order.
pub fn enumerate_computations(
    machine: &Machine,
    word: &Word,
    bound: u64,
) -> Result<Vec<Computation>> {
    enumerate_with(machine, word, bound, Cutoff::Error)
}

/// The behavior coefficient of `word`: the sum of the values of all
/// accepting computations.  `bound` falls back to the machine's declared
/// polynomial bound.
pub fn behavior_coeff(machine: &Machine, word: &Word, bound: Option<u64>) -> Result<Element> {
    let bound = machine.resolve_bound(bound, word.len())?;
    let mut acc = machine.semiring.zero();
    for comp in enumerate_computations(machine, word, bound)? {
        if comp.is_accepting(machine) {
            acc = machine.semiring.add(&acc, &comp.value(machine)?)?;
        }
    }
    Ok(acc)
}

/// The length of the longest computation on `word` — accepting or not.
pub fn time_of(machine: &Machine, word: &Word, bound: Option<u64>) -> Result<u64> {
    let bound = machine.resolve_bound(bound, word.len())?;
    let comps = enumerate_computations(machine, word, bound)?;
    Ok(comps.iter().map(|c| c.len() as u64).max().unwrap_or(0))
}

/// Sum of the values of all accepting computations of length at most
/// `steps`; computations still running at the cutoff contribute nothing.
pub fn sum_accepting_within(machine: &Machine, word: &Word, steps: u64) -> Result<Element> {
    let mut acc = machine.semiring.zero();
    for comp in enumerate_with(machine, word, steps, Cutoff::Truncate)? {
        if comp.is_accepting(machine) {
            acc = machine.semiring.add(&acc, &comp.value(machine)?)?;
        }
    }
    Ok(acc)
}

/// Counts maximal computations by verdict: `(accepting, rejecting)`.  Any
/// maximal computation ending in an unmarked state is an error.
pub fn verdict_counts(machine: &Machine, word: &Word, bound: u64) -> Result<(u64, u64)> {
    let mut accepted = 0;
    let mut rejected = 0;
    for comp in enumerate_computations(machine, word, bound)? {
        let state = &comp.last().state;
        if machine.accepting.contains(state) {
            accepted += 1;
        } else if machine.rejecting.contains(state) {
            rejected += 1;
        } else {
            return Err(Error::MaximalComputationWithoutVerdict(state.clone()));
        }
    }
    Ok((accepted, rejected))
}

/// The configuration rendered as a word over `Γ ∪ Q`: the written tape
/// prefix with the state symbol inserted directly before the head cell (or
/// at the end when the head sits past every written cell, in which case the
/// machine is about to read the first blank).  Semi-infinite machines only.
pub fn config_word(machine: &Machine, config: &Configuration) -> Result<Word> {
    if machine.tape != TapeMode::SemiInfinite {
        return Err(Error::DomainMismatch(
            "configuration words are only defined on semi-infinite tapes".to_string(),
        ));
    }
    let last_written = config.tape.keys().next_back().copied().unwrap_or(-1);
    let cells = (last_written + 1).max(config.head).max(0) as usize;
    let mut word = Vec::with_capacity(cells + 1);
    for i in 0..cells {
        if i as i64 == config.head {
            word.push(config.state.clone());
        }
        word.push(
            config.tape.get(&(i as i64)).cloned().unwrap_or_else(|| machine.blank.clone()),
        );
    }
    if config.head >= cells as i64 {
        word.push(config.state.clone());
    }
    Ok(Word(word))
}

/// `config_word` padded with blanks to exactly `width` symbols.
pub fn padded_config_word(machine: &Machine, config: &Configuration, width: u64) -> Result<Word> {
    let mut word = config_word(machine, config)?;
    if word.len() as u64 > width {
        return Err(Error::BoundViolation(format!(
            "configuration word {} has {} symbols, over the width {width}",
            word.display_compact(),
            word.len()
        )));
    }
    while (word.0.len() as u64) < width {
        word.0.push(machine.blank.clone());
    }
    Ok(word)
}

/// The n-th coefficient of the two-sided palindrome series over
/// `finlang(a,b,#)`: the language `{ w#w̃ : w ∈ {a,b}^n }` with `w̃` the
/// reversal of `w`.  `cap` limits `n` (the language has `2^n` words).
pub fn pal_coefficient(n: u32, cap: u32) -> Result<Element> {
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "palindrome half-length {n} over the cap {cap}"
        )));
    }
    let sr = SemiringHandle::fin_lang(vec!["a".to_string(), "b".to_string(), "#".to_string()])?;
    let mut words = BTreeSet::new();
    for mask in 0u64..(1u64 << n) {
        let half: Vec<Symbol> =
            (0..n).map(|i| if mask >> i & 1 == 1 { "b" } else { "a" }.to_string()).collect();
        let mut full = half.clone();
        full.push("#".to_string());
        full.extend(half.into_iter().rev());
        words.insert(Word(full));
    }
    sr.element(Value::FinLang(words))
}
