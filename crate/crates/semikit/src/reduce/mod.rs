//! The tableau reduction from weighted machines to weighted formulas.
//!
//! Given a machine in normal form and an input word of length `n`, the
//! reduction builds a formula over one-hot grid variables whose satisfaction
//! value equals the machine's behavior coefficient on that word — exactly,
//! over any semiring.  The grid has `f+1` rows (the configurations reached
//! after 0..f steps, where `f` is the machine's step budget at length `n`)
//! and `f` columns (one per symbol of a width-`f` configuration word).
//!
//! The formula is the conjunction, in this order, of
//!
//! * a validity block forcing exactly one symbol per cell,
//! * an initial block pinning row 0 to the start configuration,
//! * one step block per row pair, summing over all transitions — real and
//!   stall-padding pseudo-transitions — with the transition weight as the
//!   leftmost factor, and
//! * a final block requiring the accepting state somewhere in the last row.
//!
//! Each accepting computation contributes its weight product through exactly
//! one satisfying one-hot assignment; every other assignment evaluates to
//! zero, so the satisfaction value reproduces the behavior coefficient
//! summand for summand.

pub mod layered;
pub mod wtmsat;

use std::collections::BTreeSet;

use crate::algebra::Element;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::logic::{fold_and, fold_or, ArtifactMeta, Assignment, Formula, Grid, GridMeta};
use crate::machine::{
    enumerate_computations, initial_configuration, padded_config_word, Computation, Machine,
    PolyBound, TapeMode,
};
use crate::words::{Symbol, Word};

/// A machine the tableau construction accepts: semi-infinite tape, a single
/// accepting state, and a declared polynomial step bound.
#[derive(Debug, Clone)]
pub struct NormalFormMachine {
    machine: Machine,
    accepting: Symbol,
}

impl NormalFormMachine {
    pub fn new(machine: Machine) -> Result<Self> {
        machine.validate()?;
        if machine.tape != TapeMode::SemiInfinite {
            return Err(Error::validate(
                "the tableau construction needs a semi-infinite tape",
            ));
        }
        if machine.accepting.len() != 1 {
            return Err(Error::validate(format!(
                "the tableau construction needs exactly one accepting state, got {}",
                machine.accepting.len()
            )));
        }
        if machine.bound.is_none() {
            return Err(Error::MissingBound);
        }
        let accepting = machine.accepting.iter().next().expect("checked above").clone();
        Ok(NormalFormMachine { machine, accepting })
    }

    pub fn machine(&self) -> &Machine {
        &self.machine
    }

    pub fn accepting_state(&self) -> &Symbol {
        &self.accepting
    }

    pub fn bound(&self) -> PolyBound {
        self.machine.bound.expect("checked at construction")
    }

    /// The cell alphabet of the tableau: work symbols first, then states.
    pub fn tableau_symbols(&self) -> Vec<Symbol> {
        let mut symbols = self.machine.work_alphabet.clone();
        symbols.extend(self.machine.states.iter().cloned());
        symbols
    }
}

/// A stalled state–symbol pair, repeated in place by the tableau so shorter
/// computations fill all rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoTransition {
    pub state: Symbol,
    pub symbol: Symbol,
}

/// All pairs (q, c) with no transition out of q on c, ordered by the state
/// list and then the work alphabet.
pub fn pseudo_transitions(machine: &Machine) -> Vec<PseudoTransition> {
    machine
        .states
        .iter()
        .flat_map(|q| {
            machine.work_alphabet.iter().filter_map(move |c| {
                let stalled =
                    !machine.transitions.iter().any(|t| t.from == *q && t.read == *c);
                stalled.then(|| PseudoTransition { state: q.clone(), symbol: c.clone() })
            })
        })
        .collect()
}

/// A real or pseudo-transition, as the step blocks see them.
struct Step {
    from: Symbol,
    read: Symbol,
    to: Symbol,
    write: Symbol,
    movement: i8,
    weight: Element,
}

fn all_steps(nf: &NormalFormMachine) -> Vec<Step> {
    let machine = nf.machine();
    let mut steps: Vec<Step> = machine
        .transitions
        .iter()
        .map(|t| Step {
            from: t.from.clone(),
            read: t.read.clone(),
            to: t.to.clone(),
            write: t.write.clone(),
            movement: t.movement,
            weight: t.weight.clone(),
        })
        .collect();
    steps.extend(pseudo_transitions(machine).into_iter().map(|p| Step {
        from: p.state.clone(),
        read: p.symbol.clone(),
        to: p.state,
        write: p.symbol,
        movement: 0,
        weight: machine.semiring.one(),
    }));
    steps
}

/// One symbol per cell: for every cell, some symbol is on and all others
/// are off.  Nested right-folds, rows outside, columns inside.
pub fn build_phi_valid(nf: &NormalFormMachine, grid: &Grid) -> Formula {
    let sr = &nf.machine().semiring;
    let rows = (0..grid.rows)
        .map(|i| {
            let cells = (1..=grid.cols)
                .map(|j| {
                    let choices = grid
                        .symbols
                        .iter()
                        .map(|s| {
                            let mut parts = vec![Formula::Var(grid.var(i, j, s))];
                            parts.extend(
                                grid.symbols
                                    .iter()
                                    .filter(|d| *d != s)
                                    .map(|d| Formula::NegVar(grid.var(i, j, d))),
                            );
                            fold_and(sr, parts)
                        })
                        .collect();
                    fold_or(sr, choices)
                })
                .collect();
            fold_and(sr, cells)
        })
        .collect();
    fold_and(sr, rows)
}

/// Pins row 0 to the padded start configuration.
pub fn build_phi_init(nf: &NormalFormMachine, grid: &Grid, word: &Word) -> Result<Formula> {
    let machine = nf.machine();
    let start = initial_configuration(machine, word)?;
    let row = padded_config_word(machine, &start, grid.cols)?;
    Ok(fold_and(
        &machine.semiring,
        (1..=grid.cols).map(|j| Formula::Var(grid.var(0, j, &row.0[j as usize - 1]))).collect(),
    ))
}

/// A cell far from the head keeps its symbol: no state at columns j−1, j,
/// j+1 of the previous row, and some work symbol appears at j in both rows.
fn psi_copy(nf: &NormalFormMachine, grid: &Grid, i: u64, j: u64) -> Formula {
    let machine = nf.machine();
    let sr = &machine.semiring;
    let mut parts = Vec::new();
    if j > 1 {
        parts.extend(
            machine.states.iter().map(|q| Formula::NegVar(grid.var(i - 1, j - 1, q))),
        );
    }
    parts.extend(machine.states.iter().map(|q| Formula::NegVar(grid.var(i - 1, j, q))));
    if j < grid.cols {
        parts.extend(
            machine.states.iter().map(|q| Formula::NegVar(grid.var(i - 1, j + 1, q))),
        );
    }
    parts.push(fold_or(
        sr,
        machine
            .work_alphabet
            .iter()
            .map(|c| {
                Formula::and(
                    Formula::Var(grid.var(i - 1, j, c)),
                    Formula::Var(grid.var(i, j, c)),
                )
            })
            .collect(),
    ));
    fold_and(sr, parts)
}

/// A cell next to the head defers to the head's window: no state at column
/// j of the previous row, but a state right beside it.
fn psi_skip(nf: &NormalFormMachine, grid: &Grid, i: u64, j: u64) -> Formula {
    let machine = nf.machine();
    let sr = &machine.semiring;
    let mut parts: Vec<Formula> =
        machine.states.iter().map(|q| Formula::NegVar(grid.var(i - 1, j, q))).collect();
    parts.push(fold_or(
        sr,
        machine
            .states
            .iter()
            .map(|q| {
                let left =
                    (j > 1).then(|| Formula::Var(grid.var(i - 1, j - 1, q)));
                let right =
                    (j < grid.cols).then(|| Formula::Var(grid.var(i - 1, j + 1, q)));
                match (left, right) {
                    (Some(l), Some(r)) => Formula::or(l, r),
                    (Some(l), None) => l,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("grid has at least two columns"),
                }
            })
            .collect(),
    ));
    fold_and(sr, parts)
}

/// The head sits at column j of the previous row and fires `e`: the
/// three-column window around it rewrites according to the movement.  At
/// the last column there is no room for the scanned symbol, so the window
/// is unsatisfiable; at the first column the left neighbor terms drop out.
fn psi_rewrite(nf: &NormalFormMachine, grid: &Grid, i: u64, j: u64, e: &Step) -> Formula {
    let machine = nf.machine();
    let sr = &machine.semiring;
    if j == grid.cols {
        return Formula::Const(sr.zero());
    }
    if j == 1 {
        if e.movement == -1 {
            return Formula::Const(sr.zero());
        }
        let (beta, gamma) =
            if e.movement == 0 { (&e.to, &e.write) } else { (&e.write, &e.to) };
        return fold_and(
            sr,
            vec![
                Formula::Var(grid.var(i - 1, 1, &e.from)),
                Formula::Var(grid.var(i - 1, 2, &e.read)),
                Formula::Var(grid.var(i, 1, beta)),
                Formula::Var(grid.var(i, 2, gamma)),
            ],
        );
    }
    fold_or(
        sr,
        machine
            .work_alphabet
            .iter()
            .map(|left| {
                let (alpha, beta, gamma) = match e.movement {
                    -1 => (&e.to, left, &e.write),
                    0 => (left, &e.to, &e.write),
                    1 => (left, &e.write, &e.to),
                    _ => unreachable!("validated movement"),
                };
                fold_and(
                    sr,
                    vec![
                        Formula::Var(grid.var(i - 1, j - 1, left)),
                        Formula::Var(grid.var(i - 1, j, &e.from)),
                        Formula::Var(grid.var(i - 1, j + 1, &e.read)),
                        Formula::Var(grid.var(i, j - 1, alpha)),
                        Formula::Var(grid.var(i, j, beta)),
                        Formula::Var(grid.var(i, j + 1, gamma)),
                    ],
                )
            })
            .collect(),
    )
}

/// Row i follows from row i−1 by one step: the sum over all real and
/// pseudo-transitions of the step's weight times the per-column window
/// constraints.  The weight is the leftmost factor of its summand.
pub fn build_phi_step(nf: &NormalFormMachine, grid: &Grid, i: u64) -> Formula {
    let sr = &nf.machine().semiring;
    let steps = all_steps(nf);
    fold_or(
        sr,
        steps
            .iter()
            .map(|e| {
                let columns = (1..=grid.cols)
                    .map(|j| {
                        fold_or(
                            sr,
                            vec![
                                psi_copy(nf, grid, i, j),
                                psi_skip(nf, grid, i, j),
                                psi_rewrite(nf, grid, i, j, e),
                            ],
                        )
                    })
                    .collect();
                Formula::and(Formula::Const(e.weight.clone()), fold_and(sr, columns))
            })
            .collect(),
    )
}

/// The accepting state appears somewhere in the last row.
pub fn build_phi_fin(nf: &NormalFormMachine, grid: &Grid) -> Formula {
    let sr = &nf.machine().semiring;
    fold_or(
        sr,
        (1..=grid.cols)
            .map(|j| Formula::Var(grid.var(grid.rows - 1, j, nf.accepting_state())))
            .collect(),
    )
}

/// A formula whose satisfaction value is a behavior coefficient.
#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub semiring: crate::algebra::SemiringHandle,
    pub formula: Formula,
    pub grid: Grid,
    /// The step budget f: the grid has f+1 rows and f columns.
    pub steps: u64,
}

impl ReductionArtifact {
    pub fn meta(&self) -> ArtifactMeta {
        ArtifactMeta {
            semiring: self.semiring.id().to_string(),
            steps: self.steps,
            grid: GridMeta {
                rows: self.grid.rows,
                cols: self.grid.cols,
                symbols: self.grid.symbols.clone(),
            },
        }
    }
}

/// Builds the tableau formula for `machine` on `word`.
///
/// The step budget `f` comes from the machine's declared bound; the
/// construction refuses budgets under `n + 2` (the start configuration
/// would not fit a width-`f` row) and over `caps.grid`.  It also replays
/// every computation within the budget first, erroring out if one is still
/// running at `f` steps, if an accepting computation outgrows the row
/// width, or if an accepting computation parks the head so far right that
/// the scanned cell falls off the grid — in those cases no formula of this
/// shape can reproduce the coefficient, and the declared bound is at fault.
pub fn cook_levin_reduce(
    nf: &NormalFormMachine,
    word: &Word,
    caps: &Caps,
) -> Result<ReductionArtifact> {
    let machine = nf.machine();
    let n = word.len();
    let f = nf.bound().eval(n)?;
    if f < n as u64 + 2 {
        return Err(Error::BoundTooSmall { n, f, need: n as u64 + 2 });
    }
    if f > caps.grid {
        return Err(Error::GridCapExceeded { n, f, cap: caps.grid });
    }

    for comp in enumerate_computations(machine, word, f)? {
        if !comp.is_accepting(machine) {
            continue;
        }
        let len = comp.len() as u64;
        for (t, config) in comp.configurations().into_iter().enumerate() {
            padded_config_word(machine, config, f)?;
            let has_successor_row = (t as u64) < len || len < f;
            if has_successor_row && config.head as u64 + 2 > f {
                return Err(Error::BoundViolation(format!(
                    "an accepting run on {} parks the head at cell {} of a width-{f} grid, \
                     leaving no column for the scanned symbol; raise the bound",
                    word.display_compact(),
                    config.head
                )));
            }
        }
    }

    let grid = Grid { rows: f + 1, cols: f, symbols: nf.tableau_symbols() };
    let mut parts = vec![build_phi_valid(nf, &grid), build_phi_init(nf, &grid, word)?];
    parts.extend((1..=f).map(|i| build_phi_step(nf, &grid, i)));
    parts.push(build_phi_fin(nf, &grid));
    let formula = fold_and(&machine.semiring, parts);

    let s = grid.symbols.len() as u64;
    let budget = 64 * f * f * (machine.transitions.len() as u64 + s) * s * s;
    assert!(
        formula.size() <= budget,
        "tableau formula has {} nodes, over its {budget}-node size budget",
        formula.size()
    );

    Ok(ReductionArtifact { semiring: machine.semiring.clone(), formula, grid, steps: f })
}

/// The one-hot assignment a computation induces on the f+1 × f grid: row i
/// holds the padded configuration word after i steps, with the final
/// configuration repeated once the computation has stalled.
pub fn assignment_of_computation(
    nf: &NormalFormMachine,
    comp: &Computation,
    f: u64,
) -> Result<Assignment> {
    let machine = nf.machine();
    let grid = Grid { rows: f + 1, cols: f, symbols: nf.tableau_symbols() };
    let configs = comp.configurations();
    let mut assignment = Assignment::new();
    for i in 0..=f {
        let config = configs[(i as usize).min(configs.len() - 1)];
        let row = padded_config_word(machine, config, f)?;
        for j in 1..=f {
            let actual = &row.0[j as usize - 1];
            for s in &grid.symbols {
                assignment.insert(grid.var(i, j, s), s == actual);
            }
        }
    }
    Ok(assignment)
}

/// The outcome of replaying a many-one reduction over a batch of inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyOneOutcome {
    pub checked: usize,
    pub failure: Option<ManyOneFailure>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManyOneFailure {
    pub index: usize,
    pub input: String,
    pub source_value: Element,
    pub target_value: Element,
}

impl ManyOneOutcome {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that translating each input and evaluating it in the target
/// problem reproduces its source value, stopping at the first mismatch.
pub fn check_many_one<X, Y>(
    inputs: &[X],
    describe: impl Fn(&X) -> String,
    source_value: impl Fn(&X) -> Result<Element>,
    translate: impl Fn(&X) -> Result<Y>,
    target_value: impl Fn(&Y) -> Result<Element>,
) -> Result<ManyOneOutcome> {
    for (index, input) in inputs.iter().enumerate() {
        let source = source_value(input)?;
        let target = target_value(&translate(input)?)?;
        if source != target {
            return Ok(ManyOneOutcome {
                checked: index + 1,
                failure: Some(ManyOneFailure {
                    index,
                    input: describe(input),
                    source_value: source,
                    target_value: target,
                }),
            });
        }
    }
    Ok(ManyOneOutcome { checked: inputs.len(), failure: None })
}

/// The variables of one grid row, for coverage checks.
pub(crate) fn row_vars(grid: &Grid, row: u64) -> BTreeSet<String> {
    (1..=grid.cols)
        .flat_map(|j| grid.symbols.iter().map(move |s| grid.var(row, j, s)))
        .collect()
}
