//! Collective decision optimisation: approval ballots over a weighted agenda
//! of binary items, linear constraints on ballots and outcomes, and rules
//! that pick the feasible outcomes best matching a profile.
//!
//! All data types are generic over the integer weight type ([`num::Weight`]).
//! The aliases at the crate root fix it to `i64`, which is what the CLI and
//! file formats use.

pub mod domains;
pub mod error;
pub mod harness;
pub mod io;
pub mod model;
pub mod num;
pub mod rules;
pub mod scoring;
pub mod solver;
pub mod translate;

pub use error::{CdoError, Result};
pub use rules::{Backend, Decision, Mode, Operator, RuleOptions, RuleSpec};
pub use scoring::SetScoring;

pub type Weight = i64;
pub type Agenda = model::Agenda<i64>;
pub type Outcome = model::Outcome<i64>;
pub type LinearConstraint = model::LinearConstraint<i64>;
pub type ConstraintSet = model::ConstraintSet<i64>;
pub type CdoInstance = model::CdoInstance<i64>;
pub type IlpModel = solver::IlpModel<i64>;
pub type RuleResult = rules::RuleResult<i64>;
pub use model::{Ballot, Profile, Sense};
pub type Graph = domains::Graph<i64>;
pub type ScheduleSpec = domains::ScheduleSpec<i64>;
pub type BudgetSpec = domains::BudgetSpec<i64>;
pub type JaInstance = translate::JaInstance<i64>;
