//! Words over finite alphabets.
//!
//! A symbol is an arbitrary non-empty string; a word is a finite sequence of
//! symbols.  Words are ordered by the radix (length-then-lexicographic)
//! order, which is the order used whenever words of bounded length are
//! enumerated.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub type Symbol = String;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(sym: impl Into<Symbol>) -> Word {
        Word(vec![sym.into()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syms = self.0.clone();
        syms.extend(other.0.iter().cloned());
        Word(syms)
    }

    /// Radix order: shorter words first, ties broken lexicographically by
    /// symbol position within `alphabet`.
    pub fn radix_cmp(&self, other: &Word, alphabet: &[Symbol]) -> Ordering {
        let pos = |s: &Symbol| alphabet.iter().position(|a| a == s);
        self.len().cmp(&other.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                match pos(a).cmp(&pos(b)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    pub fn validate(&self, alphabet: &[Symbol]) -> Result<()> {
        for sym in &self.0 {
            if !alphabet.contains(sym) {
                return Err(Error::ForeignSymbol {
                    symbol: sym.clone(),
                    alphabet: alphabet.to_vec(),
                });
            }
        }
        Ok(())
    }

    /// Parses a word from its compact display form.
    ///
    /// The empty word is written `""` or `ε`.  When every alphabet symbol is
    /// a single character the word is split character by character; otherwise
    /// symbols must be separated by whitespace.
    pub fn parse(text: &str, alphabet: &[Symbol]) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let single_char = alphabet.iter().all(|s| s.chars().count() == 1);
        let word = if single_char && !text.contains(char::is_whitespace) {
            Word(text.chars().map(|c| c.to_string()).collect())
        } else {
            Word(text.split_whitespace().map(str::to_string).collect())
        };
        word.validate(alphabet)?;
        Ok(word)
    }

    /// Compact display form: symbols concatenated when all are single
    /// characters, whitespace-separated otherwise, `ε` for the empty word.
    pub fn display_compact(&self) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        if self.0.iter().all(|s| s.chars().count() == 1) {
            self.0.concat()
        } else {
            self.0.join(" ")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_compact())
    }
}

impl From<Vec<&str>> for Word {
    fn from(syms: Vec<&str>) -> Word {
        Word(syms.into_iter().map(str::to_string).collect())
    }
}

/// All words over `alphabet` of length at most `max_len`, in radix order.
pub fn words_up_to(alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for sym in alphabet {
                let mut syms = w.0.clone();
                syms.push(sym.clone());
                next.push(Word(syms));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
