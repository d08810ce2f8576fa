//! Semiring-generic toolkit for weighted computation at desk scale.
//!
//! The crate provides:
//!
//! * ten exact semiring instances behind a single dynamically typed
//!   [`Element`] value ([`algebra`]),
//! * syntactic terms over a semiring's generators with deterministic and
//!   nondeterministic evaluation ([`algebra::term`]),
//! * polynomials (finite formal power series) over any instance ([`series`]),
//! * weighted nondeterministic Turing machines with exact behavior
//!   coefficients ([`machine`]),
//! * weighted propositional formulas and their satisfaction values
//!   ([`logic`]),
//! * a tableau reduction from bounded machines to formulas that preserves
//!   behavior coefficients exactly, together with three independent formula
//!   evaluators used to cross-check it ([`reduce`]).
//!
//! Everything is exact: no floating point is used anywhere, so all equalities
//! tested by the crate hold at zero tolerance.

pub mod algebra;
pub mod caps;
pub mod error;
pub mod logic;
pub mod machine;
pub mod reduce;
pub mod series;
pub mod words;

pub use algebra::{Element, SemiringHandle, SemiringId, TNorm};
pub use caps::Caps;
pub use error::{Error, Result};
pub use words::{Symbol, Word};
