//! Constraint encodings for three families of collective decisions:
//! budgets, spanning trees of a network, and job schedules.

mod budget;
mod schedule;
mod tree;

pub use budget::{encode_budget, BudgetSpec};
pub use schedule::{
    ballot_from_partial_order, decode_schedule, encode_schedule, first_item, pair_item,
    ScheduleSpec,
};
pub use tree::{decode_tree, encode_spanning_tree, verify_spanning_tree, Graph};
