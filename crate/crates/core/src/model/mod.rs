//! Instance data model: agendas of weighted items, approval ballots, linear
//! constraint sets, and membership queries against the sets they induce.

mod agenda;
mod constraint;
mod feasible;
mod instance;

pub use agenda::{Agenda, Ballot, Outcome, Profile};
pub use constraint::{ConstraintSet, LinearConstraint, Sense};
pub use feasible::{
    check_assignment, enumerate_feasible, is_extendable, partial_from_ids, FeasibleSet,
    PartialAssignment,
    DEFAULT_ENUMERATION_CAP,
};
pub use instance::CdoInstance;

pub(crate) use constraint::lex_bits;

use crate::error::{CdoError, Result};

/// Reads a slice of 0/1 integers into booleans.
pub fn bits_from_01(values: &[u8]) -> Result<Vec<bool>> {
    values
        .iter()
        .map(|&v| match v {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(CdoError::invalid(format!("expected 0 or 1, found {other}"))),
        })
        .collect()
}

pub fn bits_to_01(bits: &[bool]) -> Vec<u8> {
    bits.iter().map(|&b| u8::from(b)).collect()
}

/// Renders a bit vector as `(1,0,0,1)`.
pub fn format_bits(bits: &[bool]) -> String {
    let inner: Vec<&str> = bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("({})", inner.join(","))
}
