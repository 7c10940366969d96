//! Exact optimisation over binary item variables and bounded integer
//! auxiliaries: model construction, branch and bound, enumeration of all
//! optima and LP-format export.

mod encode;
mod lp;
mod model;
pub(crate) mod search;

use std::time::Instant;

pub use encode::{encode_cc, encode_egal, encode_sum};
pub use lp::export_lp;
pub use model::{IlpModel, Row, VarKind, Variable};

use crate::error::Result;
use crate::num::{self, Weight};
use search::{Compiled, Goal};

/// Default number of co-optimal outcomes collected before stopping.
pub const DEFAULT_OPTIMA_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Abort with [`crate::CdoError::Timeout`] once this instant has passed.
    pub deadline: Option<Instant>,
}

impl SolveOptions {
    pub fn with_deadline(deadline: Instant) -> Self {
        SolveOptions {
            deadline: Some(deadline),
        }
    }
}

/// An optimal point of a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<W> {
    /// Objective value including the model offset.
    pub optimum: W,
    /// Values of all variables, items first.
    pub values: Vec<W>,
}

impl<W: Weight> Solution<W> {
    /// The item part of the assignment as bits.
    pub fn items(&self, num_items: usize) -> Vec<bool> {
        self.values[..num_items]
            .iter()
            .map(|v| !v.is_zero())
            .collect()
    }
}

/// All optima of a model projected to the items, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optima<W> {
    pub optimum: W,
    pub witnesses: Vec<Vec<bool>>,
    /// Set when collection stopped at the cap with optima possibly left.
    pub truncated: bool,
}

fn lift<W: Weight>(compiled: &Compiled, value: i64, values: Vec<i64>) -> Result<Solution<W>> {
    let optimum = num::from_i64(
        value
            .checked_add(compiled.offset)
            .ok_or(crate::CdoError::Overflow)?,
    )?;
    let values = values
        .into_iter()
        .map(num::from_i64)
        .collect::<Result<Vec<W>>>()?;
    Ok(Solution { optimum, values })
}

/// Maximises the model objective, honouring the item fixings in `fixed`
/// (which may be shorter than the agenda). Returns `None` when no feasible
/// point exists.
pub fn branch_and_bound<W: Weight>(
    model: &IlpModel<W>,
    fixed: &[Option<bool>],
    opts: &SolveOptions,
) -> Result<Option<Solution<W>>> {
    let compiled = Compiled::new(model)?;
    match compiled.run(fixed, Goal::Maximize, opts.deadline)? {
        Some((value, values)) => Ok(Some(lift(&compiled, value, values)?)),
        None => Ok(None),
    }
}

/// Finds every optimum: one search for the optimal value, then a second
/// walk collecting each item vector that reaches it. Stops after `cap`
/// witnesses. Returns `None` for an infeasible model.
pub fn enumerate_optima<W: Weight>(
    model: &IlpModel<W>,
    cap: usize,
    opts: &SolveOptions,
) -> Result<Option<Optima<W>>> {
    let compiled = Compiled::new(model)?;
    let Some((best, values)) = compiled.run(&[], Goal::Maximize, opts.deadline)? else {
        return Ok(None);
    };
    let optimum = lift::<W>(&compiled, best, values)?.optimum;
    let (mut witnesses, truncated) = compiled.collect(best, cap.max(1), opts.deadline)?;
    witnesses.sort();
    Ok(Some(Optima {
        optimum,
        witnesses,
        truncated,
    }))
}
