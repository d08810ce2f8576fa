//! Row-by-row evaluation of tableau formulas.
//!
//! A tableau formula's outermost conjunction has a fixed spine — validity,
//! initial row, one step block per row pair, final row — and its variables
//! split by grid row.  That makes the satisfaction value a path sum: sweep
//! the rows in order, keeping for each reachable row content the sum of the
//! weight products that lead to it.  The sweep visits per row only the
//! contents that survive pruning instead of all `|symbols|^cols` of them,
//! while returning exactly the brute-force sum.
//!
//! Reordering the factors is sound because the validity, initial and final
//! blocks only ever evaluate to 0 or 1 (enforced here, erroring out
//! otherwise) and the step blocks stay in row order.

use std::collections::BTreeMap;

use crate::algebra::{Element, SemiringHandle};
use crate::error::{Error, Result};
use crate::logic::{definitely_zero, eval_in, ArtifactMeta, Assignment, Formula, Grid};

use super::row_vars;

/// Splits a right-folded conjunction into exactly `pieces` parts.
fn peel_and<'f>(formula: &'f Formula, pieces: usize, what: &str) -> Result<Vec<&'f Formula>> {
    let mut out = Vec::with_capacity(pieces);
    let mut cur = formula;
    for _ in 1..pieces {
        match cur {
            Formula::And(a, b) => {
                out.push(a.as_ref());
                cur = b;
            }
            _ => {
                return Err(Error::NotLayered(format!(
                    "{what} does not split into {pieces} conjuncts"
                )))
            }
        }
    }
    out.push(cur);
    Ok(out)
}

fn check_rows(formula: &Formula, grid: &Grid, rows: &[u64], what: &str) -> Result<()> {
    let allowed: std::collections::BTreeSet<String> =
        rows.iter().flat_map(|&r| row_vars(grid, r)).collect();
    if let Some(stray) = formula.free_vars().into_iter().find(|x| !allowed.contains(x)) {
        return Err(Error::NotLayered(format!(
            "{what} mentions {stray}, outside its grid rows {rows:?}"
        )));
    }
    Ok(())
}

fn expect_unit(value: &Element, what: &str) -> Result<()> {
    if value.is_one() {
        Ok(())
    } else {
        Err(Error::NotLayered(format!(
            "{what} evaluated to neither 0 nor 1; row-order evaluation would be unsound"
        )))
    }
}

/// Symbol indices, one per column.
type RowContent = Vec<usize>;

/// Enumerates the one-hot contents of `row`, pruning any prefix under which
/// some watched formula is already certainly zero, and feeds each surviving
/// full row to `sink`.  Pruned contents would contribute zero, so the sum
/// over sink calls is the sum over all contents.
fn enumerate_row(
    grid: &Grid,
    row: u64,
    col: u64,
    watch: &[&Formula],
    assignment: &mut Assignment,
    picks: &mut RowContent,
    sink: &mut dyn FnMut(&Assignment, &RowContent) -> Result<()>,
) -> Result<()> {
    if col > grid.cols {
        return sink(assignment, picks);
    }
    for (index, pick) in grid.symbols.iter().enumerate() {
        for s in &grid.symbols {
            assignment.insert(grid.var(row, col, s), s == pick);
        }
        if !watch.iter().any(|w| definitely_zero(w, assignment)) {
            picks.push(index);
            enumerate_row(grid, row, col + 1, watch, assignment, picks, sink)?;
            picks.pop();
        }
    }
    for s in &grid.symbols {
        assignment.remove(&grid.var(row, col, s));
    }
    Ok(())
}

fn row_assignment(grid: &Grid, row: u64, picks: &RowContent) -> Assignment {
    let mut assignment = Assignment::new();
    for (offset, &index) in picks.iter().enumerate() {
        let col = offset as u64 + 1;
        for (s_index, s) in grid.symbols.iter().enumerate() {
            assignment.insert(grid.var(row, col, s), s_index == index);
        }
    }
    assignment
}

/// The satisfaction value of a tableau formula, computed row by row.  The
/// companion metadata supplies the step budget and the grid; a formula that
/// does not have the tableau spine over that grid is reported as
/// [`Error::NotLayered`].
pub fn sat_value_layered(
    semiring: &SemiringHandle,
    formula: &Formula,
    meta: &ArtifactMeta,
) -> Result<Element> {
    let f = meta.steps;
    let grid = meta.grid();
    if grid.rows != f + 1 || grid.cols != f || grid.symbols.is_empty() || f < 2 {
        return Err(Error::NotLayered(format!(
            "metadata is inconsistent: {} steps against a {}x{} grid",
            f, grid.rows, grid.cols
        )));
    }

    let spine = peel_and(formula, f as usize + 3, "the formula")?;
    let (phi_valid, phi_init, phi_fin) = (spine[0], spine[1], spine[spine.len() - 1]);
    let phi_steps = &spine[2..spine.len() - 1];
    let validity = peel_and(phi_valid, f as usize + 1, "the validity block")?;

    for (i, block) in validity.iter().enumerate() {
        check_rows(block, &grid, &[i as u64], "a validity row block")?;
    }
    check_rows(phi_init, &grid, &[0], "the initial block")?;
    for (i, step) in phi_steps.iter().enumerate() {
        let row = i as u64 + 1;
        check_rows(step, &grid, &[row - 1, row], "a step block")?;
    }
    check_rows(phi_fin, &grid, &[f], "the final block")?;

    // Row 0: contents compatible with the validity and initial blocks.
    let mut reachable: BTreeMap<RowContent, Element> = BTreeMap::new();
    {
        let mut assignment = Assignment::new();
        let watch = [validity[0], phi_init];
        enumerate_row(
            &grid,
            0,
            1,
            &watch,
            &mut assignment,
            &mut Vec::new(),
            &mut |asg, picks| {
                let valid = eval_in(semiring, validity[0], asg)?;
                if valid.is_zero() {
                    return Ok(());
                }
                expect_unit(&valid, "a validity row block")?;
                let init = eval_in(semiring, phi_init, asg)?;
                if init.is_zero() {
                    return Ok(());
                }
                expect_unit(&init, "the initial block")?;
                reachable.insert(picks.clone(), semiring.one());
                Ok(())
            },
        )?;
    }

    // Rows 1..=f: extend every reachable content by one step.
    for i in 1..=f {
        let step_block = phi_steps[i as usize - 1];
        let valid_block = validity[i as usize];
        let mut next: BTreeMap<RowContent, Element> = BTreeMap::new();
        for (prev, weight) in &reachable {
            let mut assignment = row_assignment(&grid, i - 1, prev);
            let watch = [valid_block, step_block];
            enumerate_row(
                &grid,
                i,
                1,
                &watch,
                &mut assignment,
                &mut Vec::new(),
                &mut |asg, picks| {
                    let valid = eval_in(semiring, valid_block, asg)?;
                    if valid.is_zero() {
                        return Ok(());
                    }
                    expect_unit(&valid, "a validity row block")?;
                    let step = eval_in(semiring, step_block, asg)?;
                    if step.is_zero() {
                        return Ok(());
                    }
                    let contribution = semiring.mul(weight, &step)?;
                    let slot = next.entry(picks.clone()).or_insert_with(|| semiring.zero());
                    *slot = semiring.add(slot, &contribution)?;
                    Ok(())
                },
            )?;
        }
        next.retain(|_, v| !v.is_zero());
        reachable = next;
        if reachable.is_empty() {
            return Ok(semiring.zero());
        }
    }

    // Final row: keep the contents the final block accepts.
    let mut total = semiring.zero();
    for (row, weight) in &reachable {
        let assignment = row_assignment(&grid, f, row);
        let fin = eval_in(semiring, phi_fin, &assignment)?;
        if fin.is_zero() {
            continue;
        }
        expect_unit(&fin, "the final block")?;
        total = semiring.add(&total, weight)?;
    }
    Ok(total)
}
