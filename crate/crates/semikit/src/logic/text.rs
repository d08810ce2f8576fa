//! Plain-text formulas, prefix style:
//!
//! ```text
//! x_0_1_a
//! (not x_0_1_a)
//! (const 2/3)
//! (or F G)
//! (and F G)
//! ```
//!
//! Constants use the semiring's canonical literal syntax verbatim; since
//! symbol and state names never contain parentheses, a constant is simply
//! everything up to the next closing parenthesis.

use crate::algebra::{literal, SemiringHandle};
use crate::error::{Error, Result};

use super::Formula;

pub fn print(formula: &Formula) -> String {
    let mut out = String::new();
    write_into(formula, &mut out);
    out
}

fn write_into(formula: &Formula, out: &mut String) {
    match formula {
        Formula::Var(x) => out.push_str(x),
        Formula::NegVar(x) => {
            out.push_str("(not ");
            out.push_str(x);
            out.push(')');
        }
        Formula::Const(c) => {
            out.push_str("(const ");
            out.push_str(&literal::print(c));
            out.push(')');
        }
        Formula::Or(a, b) | Formula::And(a, b) => {
            out.push_str(if matches!(formula, Formula::Or(..)) { "(or " } else { "(and " });
            write_into(a, out);
            out.push(' ');
            write_into(b, out);
            out.push(')');
        }
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(format!(
                "expected {:?} at byte {} of the formula",
                byte as char, self.pos
            )))
        }
    }

    /// A bare token: anything up to whitespace or a parenthesis.
    fn token(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_whitespace() || b == b'(' || b == b')' {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(format!("expected a name at byte {}", self.pos)));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .map_err(|_| Error::parse("formula text must be valid UTF-8"))
    }

    /// Raw text up to (excluding) the next closing parenthesis.
    fn until_close(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b == b')' {
                let raw = std::str::from_utf8(&self.text[start..self.pos])
                    .map_err(|_| Error::parse("formula text must be valid UTF-8"))?;
                return Ok(raw.trim());
            }
            self.pos += 1;
        }
        Err(Error::parse("unterminated constant in formula"))
    }
}

pub fn parse(semiring: &SemiringHandle, text: &str) -> Result<Formula> {
    let mut cursor = Cursor { text: text.as_bytes(), pos: 0 };
    let formula = parse_at(semiring, &mut cursor)?;
    cursor.skip_ws();
    if cursor.pos != cursor.text.len() {
        return Err(Error::parse(format!(
            "trailing input at byte {} of the formula",
            cursor.pos
        )));
    }
    Ok(formula)
}

fn parse_at(semiring: &SemiringHandle, cursor: &mut Cursor<'_>) -> Result<Formula> {
    cursor.skip_ws();
    if cursor.peek() != Some(b'(') {
        return Ok(Formula::Var(cursor.token()?.to_string()));
    }
    cursor.pos += 1;
    cursor.skip_ws();
    let head = cursor.token()?;
    let formula = match head {
        "not" => {
            cursor.skip_ws();
            Formula::NegVar(cursor.token()?.to_string())
        }
        "const" => {
            cursor.skip_ws();
            Formula::Const(literal::parse(semiring, cursor.until_close()?)?)
        }
        "or" | "and" => {
            let a = parse_at(semiring, cursor)?;
            let b = parse_at(semiring, cursor)?;
            if head == "or" {
                Formula::or(a, b)
            } else {
                Formula::and(a, b)
            }
        }
        other => {
            return Err(Error::parse(format!(
                "unknown connective {other:?}; expected not, const, or, and"
            )))
        }
    };
    cursor.skip_ws();
    cursor.expect(b')')?;
    Ok(formula)
}
