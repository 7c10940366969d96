//! JSON file formats, versioned by a top-level `"format": "cdo/1"` field.
//!
//! Instance file:
//!
//! ```json
//! {
//!   "format": "cdo/1",
//!   "agenda": [{"id": "a1", "weight": 3}, {"id": "a2", "weight": 1}],
//!   "rationality": [],
//!   "feasibility": {
//!     "constraints": [{"terms": {"a1": 3, "a2": 1}, "sense": "<=", "rhs": 3}],
//!     "aux": {}
//!   },
//!   "profile": [[1, 0], [1, 1]]
//! }
//! ```
//!
//! Constraint sets may be written as a bare list when they use no auxiliary
//! variables. Outcome files hold `outcomes` as `{"bits": [...], "score": n}`
//! entries plus the rule, its optimum and, for ranked rules, the decision
//! trace.

use serde::{Deserialize, Serialize};

use crate::domains::{ballot_from_partial_order, encode_schedule, ScheduleSpec};
use crate::error::{CdoError, Result};
use crate::model::{
    bits_from_01, bits_to_01, Agenda, Ballot, CdoInstance, ConstraintSet, LinearConstraint,
    Outcome, Profile,
};
use crate::num::Weight;
use crate::rules::{Decision, RuleResult, RuleSpec};

pub const FORMAT: &str = "cdo/1";

fn check_format(found: &str) -> Result<()> {
    if found == FORMAT {
        Ok(())
    } else {
        Err(CdoError::Format(format!(
            "unsupported format `{found}`, expected `{FORMAT}`"
        )))
    }
}

fn unit<W: Weight>() -> W {
    W::one()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
struct AgendaEntry<W> {
    id: String,
    #[serde(default = "unit")]
    weight: W,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, bound = "W: Weight")]
enum Constraints<W> {
    List(Vec<LinearConstraint<W>>),
    Set(ConstraintSet<W>),
}

impl<W: Weight> Default for Constraints<W> {
    fn default() -> Self {
        Constraints::List(Vec::new())
    }
}

impl<W: Weight> Constraints<W> {
    fn into_set(self) -> ConstraintSet<W> {
        match self {
            Constraints::List(list) => ConstraintSet::from_constraints(list),
            Constraints::Set(set) => set,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
struct InstanceFile<W> {
    format: String,
    agenda: Vec<AgendaEntry<W>>,
    #[serde(default)]
    rationality: Constraints<W>,
    #[serde(default)]
    feasibility: Constraints<W>,
    profile: Vec<Vec<u8>>,
}

pub fn instance_from_json<W: Weight>(text: &str) -> Result<CdoInstance<W>> {
    let file: InstanceFile<W> = serde_json::from_str(text)?;
    check_format(&file.format)?;
    let agenda = Agenda::new(file.agenda.into_iter().map(|e| (e.id, e.weight)))?;
    let profile = Profile::from_01(&file.profile)?;
    CdoInstance::new(
        agenda,
        file.rationality.into_set(),
        file.feasibility.into_set(),
        profile,
    )
}

pub fn instance_to_json<W: Weight>(instance: &CdoInstance<W>) -> Result<String> {
    let agenda = instance.agenda();
    let file = InstanceFile {
        format: FORMAT.to_string(),
        agenda: agenda
            .ids()
            .iter()
            .zip(agenda.weights())
            .map(|(id, &weight)| AgendaEntry {
                id: id.clone(),
                weight,
            })
            .collect(),
        rationality: Constraints::Set(instance.rationality().clone()),
        feasibility: Constraints::Set(instance.feasibility().clone()),
        profile: instance
            .profile()
            .ballots()
            .iter()
            .map(|b| bits_to_01(b.bits()))
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
struct OutcomeEntry<W> {
    bits: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    score: Option<W>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
struct OutcomeFile<W> {
    format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    optimum: Option<W>,
    outcomes: Vec<OutcomeEntry<W>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    trace: Vec<Decision>,
    #[serde(default)]
    truncated: bool,
}

pub fn result_to_json<W: Weight>(rule: RuleSpec, result: &RuleResult<W>) -> Result<String> {
    let file = OutcomeFile {
        format: FORMAT.to_string(),
        rule: Some(rule.to_string()),
        optimum: Some(result.optimum),
        outcomes: result
            .outcomes
            .iter()
            .map(|o| OutcomeEntry {
                bits: bits_to_01(&o.bits),
                score: o.score,
            })
            .collect(),
        trace: result.trace.clone(),
        truncated: result.truncated,
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn outcomes_from_json<W: Weight>(text: &str) -> Result<Vec<Outcome<W>>> {
    let file: OutcomeFile<W> = serde_json::from_str(text)?;
    check_format(&file.format)?;
    file.outcomes
        .into_iter()
        .map(|e| {
            Ok(Outcome {
                bits: bits_from_01(&e.bits)?,
                score: e.score,
            })
        })
        .collect()
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct PartialOrder {
    #[serde(default)]
    first: Vec<String>,
    #[serde(default)]
    before: Vec<(String, String)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
struct ScheduleFile<W> {
    jobs: Vec<String>,
    durations: Vec<W>,
    #[serde(default)]
    voters: Vec<PartialOrder>,
}

/// Reads a scheduling problem:
/// `{"jobs": [...], "durations": [...], "voters": [{"first": [job], "before": [[x, y], ...]}]}`
/// and builds the ordering instance with one ballot per voter.
pub fn schedule_from_json<W: Weight>(text: &str) -> Result<(ScheduleSpec<W>, CdoInstance<W>)> {
    let file: ScheduleFile<W> = serde_json::from_str(text)?;
    let spec = ScheduleSpec::new(file.jobs, file.durations)?;
    let job = |name: &str| {
        spec.job_index(name)
            .ok_or_else(|| CdoError::UnknownVariable(name.to_string()))
    };
    let ballots = file
        .voters
        .iter()
        .map(|v| {
            let first = v.first.iter().map(|f| job(f)).collect::<Result<Vec<_>>>()?;
            let pairs = v
                .before
                .iter()
                .map(|(x, y)| Ok((job(x)?, job(y)?)))
                .collect::<Result<Vec<_>>>()?;
            ballot_from_partial_order(&spec, &pairs, &first)
        })
        .collect::<Result<Vec<Ballot>>>()?;
    let (agenda, feasibility) = encode_schedule(&spec)?;
    let instance = CdoInstance::unconstrained_ballots(agenda, feasibility, Profile::new(ballots)?)?;
    Ok((spec, instance))
}
