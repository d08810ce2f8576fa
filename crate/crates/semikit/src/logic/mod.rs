//! Weighted propositional logic.
//!
//! Formulas are built from variables, negated variables, semiring constants,
//! and binary disjunction/conjunction.  An assignment maps variables to
//! truth values; under an assignment a formula evaluates to a semiring
//! element: a variable contributes 1 when true and 0 when false, a negated
//! variable the other way round, disjunction adds and conjunction
//! multiplies — always left operand first, since multiplication need not
//! commute.  Negation exists only on variables, so no ring structure is
//! assumed.
//!
//! The satisfaction value of a formula is the sum of its evaluations over
//! all assignments of its free variables.  [`sat_value_brute`] computes it
//! directly; [`sat_value_onehot`] instead sums over the one-hot assignments
//! of a symbol grid, which agrees with the full sum whenever the formula
//! contains a validity block that zeroes out every assignment that is not
//! one-hot.

pub mod text;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::hom::Homomorphism;
use crate::algebra::{parse_spec, Element, SemiringHandle};
use crate::error::{Error, Result};
use crate::words::Symbol;

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Var(String),
    NegVar(String),
    Const(Element),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
}

/// Truth values for the variables a formula mentions.
pub type Assignment = BTreeMap<String, bool>;

impl Formula {
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    /// Total node count.
    pub fn size(&self) -> u64 {
        match self {
            Formula::Var(_) | Formula::NegVar(_) | Formula::Const(_) => 1,
            Formula::Or(a, b) | Formula::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Var(x) | Formula::NegVar(x) => {
                    vars.insert(x.clone());
                }
                Formula::Const(_) => {}
                Formula::Or(a, b) | Formula::And(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
            }
        }
        vars
    }
}

/// Right-fold of disjuncts; the empty disjunction is the constant 0.
pub fn fold_or(semiring: &SemiringHandle, items: Vec<Formula>) -> Formula {
    items
        .into_iter()
        .rev()
        .reduce(|acc, f| Formula::or(f, acc))
        .unwrap_or(Formula::Const(semiring.zero()))
}

/// Right-fold of conjuncts; the empty conjunction is the constant 1.
pub fn fold_and(semiring: &SemiringHandle, items: Vec<Formula>) -> Formula {
    items
        .into_iter()
        .rev()
        .reduce(|acc, f| Formula::and(f, acc))
        .unwrap_or(Formula::Const(semiring.one()))
}

pub(crate) fn eval_in(
    semiring: &SemiringHandle,
    formula: &Formula,
    v: &Assignment,
) -> Result<Element> {
    match formula {
        Formula::Var(x) => Ok(if v[x] { semiring.one() } else { semiring.zero() }),
        Formula::NegVar(x) => Ok(if v[x] { semiring.zero() } else { semiring.one() }),
        Formula::Const(c) => {
            if c.semiring() != semiring {
                return Err(Error::MixedSemiring(
                    semiring.id().to_string(),
                    c.semiring().id().to_string(),
                ));
            }
            Ok(c.clone())
        }
        Formula::Or(a, b) => {
            let left = eval_in(semiring, a, v)?;
            let right = eval_in(semiring, b, v)?;
            semiring.add(&left, &right)
        }
        Formula::And(a, b) => {
            let left = eval_in(semiring, a, v)?;
            // A zero factor annihilates whatever follows, so the right
            // branch — often the bulk of the formula — can be skipped.
            if left.is_zero() {
                return Ok(left);
            }
            let right = eval_in(semiring, b, v)?;
            semiring.mul(&left, &right)
        }
    }
}

/// Evaluates `formula` under `assignment`, which must cover every free
/// variable.
pub fn eval_formula(
    semiring: &SemiringHandle,
    formula: &Formula,
    assignment: &Assignment,
) -> Result<Element> {
    if let Some(missing) =
        formula.free_vars().into_iter().find(|x| !assignment.contains_key(x))
    {
        return Err(Error::UnassignedVariable(missing));
    }
    eval_in(semiring, formula, assignment)
}

/// The satisfaction value by direct enumeration: the sum of the formula's
/// evaluations over all `2^n` assignments of its free variables, in
/// lexicographic order with false before true.  Errors out above `var_cap`
/// free variables.
pub fn sat_value_brute(
    semiring: &SemiringHandle,
    formula: &Formula,
    var_cap: usize,
) -> Result<Element> {
    let vars: Vec<String> = formula.free_vars().into_iter().collect();
    if vars.len() > var_cap {
        return Err(Error::VarCapExceeded { vars: vars.len(), cap: var_cap });
    }
    let mut acc = semiring.zero();
    for mask in 0u64..(1u64 << vars.len()) {
        let assignment: Assignment = vars
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), mask >> (vars.len() - 1 - i) & 1 == 1))
            .collect();
        acc = semiring.add(&acc, &eval_in(semiring, formula, &assignment)?)?;
    }
    Ok(acc)
}

/// A rows × cols grid of cells, each holding exactly one of the listed
/// symbols under a one-hot assignment.  Rows are indexed from 0 and columns
/// from 1; the variable for symbol `s` at cell (i, j) is named `x_i_j_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub rows: u64,
    pub cols: u64,
    pub symbols: Vec<Symbol>,
}

impl Grid {
    pub fn var(&self, row: u64, col: u64, symbol: &str) -> String {
        debug_assert!(row < self.rows && col >= 1 && col <= self.cols);
        format!("x_{row}_{col}_{symbol}")
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.rows).flat_map(move |i| (1..=self.cols).map(move |j| (i, j)))
    }

    pub fn var_count(&self) -> u64 {
        self.rows * self.cols * self.symbols.len() as u64
    }

    /// Every variable of the grid, row-major, symbols in declared order.
    pub fn all_vars(&self) -> Vec<String> {
        self.cells()
            .flat_map(|(i, j)| self.symbols.iter().map(move |s| self.var(i, j, s)))
            .collect()
    }
}

/// Is the formula's value certainly zero under the partial assignment?
/// Sound but incomplete: an unassigned variable is treated as unknown.
pub(crate) fn definitely_zero(formula: &Formula, partial: &Assignment) -> bool {
    match formula {
        Formula::Var(x) => partial.get(x) == Some(&false),
        Formula::NegVar(x) => partial.get(x) == Some(&true),
        Formula::Const(c) => c.is_zero(),
        Formula::Or(a, b) => definitely_zero(a, partial) && definitely_zero(b, partial),
        Formula::And(a, b) => definitely_zero(a, partial) || definitely_zero(b, partial),
    }
}

/// The sum of the formula's evaluations over the one-hot assignments of
/// `grid` (exactly one true symbol variable per cell).  When the formula
/// forces one-hotness itself — every other assignment evaluates to zero —
/// this equals the full satisfaction value while visiting `|symbols|^cells`
/// assignments at worst; branches whose value is already certainly zero are
/// pruned, which leaves the sum unchanged.
pub fn sat_value_onehot(
    semiring: &SemiringHandle,
    formula: &Formula,
    grid: &Grid,
) -> Result<Element> {
    let grid_vars: BTreeSet<String> = grid.all_vars().into_iter().collect();
    if let Some(foreign) = formula.free_vars().into_iter().find(|x| !grid_vars.contains(x)) {
        return Err(Error::UnassignedVariable(foreign));
    }
    let cells: Vec<(u64, u64)> = grid.cells().collect();
    let mut assignment = Assignment::new();
    let mut acc = semiring.zero();

    fn dfs(
        semiring: &SemiringHandle,
        formula: &Formula,
        grid: &Grid,
        cells: &[(u64, u64)],
        assignment: &mut Assignment,
        acc: &mut Element,
    ) -> Result<()> {
        let Some(&(row, col)) = cells.first() else {
            let value = eval_in(semiring, formula, assignment)?;
            *acc = semiring.add(acc, &value)?;
            return Ok(());
        };
        for pick in &grid.symbols {
            for s in &grid.symbols {
                assignment.insert(grid.var(row, col, s), s == pick);
            }
            if !definitely_zero(formula, assignment) {
                dfs(semiring, formula, grid, &cells[1..], assignment, acc)?;
            }
        }
        for s in &grid.symbols {
            assignment.remove(&grid.var(row, col, s));
        }
        Ok(())
    }

    dfs(semiring, formula, grid, &cells, &mut assignment, &mut acc)?;
    Ok(acc)
}

/// Maps every constant through `hom`, leaving the shape and the variables
/// untouched.
pub fn apply_hom_formula(hom: &Homomorphism, formula: &Formula) -> Result<Formula> {
    Ok(match formula {
        Formula::Var(x) => Formula::Var(x.clone()),
        Formula::NegVar(x) => Formula::NegVar(x.clone()),
        Formula::Const(c) => Formula::Const(hom.apply(c)?),
        Formula::Or(a, b) => {
            Formula::or(apply_hom_formula(hom, a)?, apply_hom_formula(hom, b)?)
        }
        Formula::And(a, b) => {
            Formula::and(apply_hom_formula(hom, a)?, apply_hom_formula(hom, b)?)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridMeta {
    pub rows: u64,
    pub cols: u64,
    pub symbols: Vec<String>,
}

/// Companion metadata for a formula produced from a machine: the ambient
/// semiring, the step budget the tableau covers, and the symbol grid the
/// variables range over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtifactMeta {
    pub semiring: String,
    pub steps: u64,
    pub grid: GridMeta,
}

impl ArtifactMeta {
    pub fn grid(&self) -> Grid {
        Grid { rows: self.grid.rows, cols: self.grid.cols, symbols: self.grid.symbols.clone() }
    }

    pub fn semiring(&self) -> Result<SemiringHandle> {
        parse_spec(&self.semiring)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<ArtifactMeta> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("bad metadata file: {e}")))
    }
}
