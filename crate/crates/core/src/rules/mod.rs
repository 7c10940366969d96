//! Collective decision rules: an operator (sum, egalitarian, ranked) paired
//! with a set scoring.

mod rank;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{CdoError, Result};
use crate::model::{enumerate_feasible, CdoInstance, Outcome, DEFAULT_ENUMERATION_CAP};
use crate::num::Weight;
use crate::scoring::{profile_min, profile_sum, SetScoring};
use crate::solver::{
    branch_and_bound, encode_cc, encode_egal, encode_sum, enumerate_optima, IlpModel,
    SolveOptions, DEFAULT_OPTIMA_CAP,
};

pub use rank::rule_rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Sum,
    Egal,
    Rank,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::Sum, Operator::Egal, Operator::Rank];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Sum => "sum",
            Operator::Egal => "egal",
            Operator::Rank => "rank",
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = CdoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Operator::Sum),
            "egal" => Ok(Operator::Egal),
            "rank" => Ok(Operator::Rank),
            other => Err(CdoError::Parse(format!("unknown operator `{other}`"))),
        }
    }
}

/// A rule, written `operator:scoring` (for example `sum:cc`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSpec {
    pub operator: Operator,
    pub scoring: SetScoring,
}

impl RuleSpec {
    pub fn new(operator: Operator, scoring: SetScoring) -> Self {
        RuleSpec { operator, scoring }
    }

    /// All fifteen operator and scoring pairs.
    pub fn all() -> impl Iterator<Item = RuleSpec> {
        Operator::ALL
            .into_iter()
            .flat_map(|op| SetScoring::ALL.into_iter().map(move |s| RuleSpec::new(op, s)))
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.operator, self.scoring)
    }
}

impl FromStr for RuleSpec {
    type Err = CdoError;

    fn from_str(s: &str) -> Result<Self> {
        let (op, scoring) = s
            .split_once(':')
            .ok_or_else(|| CdoError::Parse(format!("expected operator:scoring, found `{s}`")))?;
        Ok(RuleSpec::new(op.parse()?, scoring.parse()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Every co-optimal outcome (up to the cap).
    #[default]
    EnumerateAll,
    /// A single optimal outcome.
    OneWitness,
}

/// How sum and egalitarian rules find their optima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Branch and bound, then a bounded walk collecting the other optima.
    #[default]
    BranchAndBound,
    /// Score every feasible outcome. Limited to small agendas.
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleOptions {
    pub mode: Mode,
    pub backend: Backend,
    /// Maximum number of co-winners reported.
    pub optima_cap: usize,
    /// Largest agenda the enumeration backend accepts.
    pub enumeration_cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for RuleOptions {
    fn default() -> Self {
        RuleOptions {
            mode: Mode::EnumerateAll,
            backend: Backend::BranchAndBound,
            optima_cap: DEFAULT_OPTIMA_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            deadline: None,
        }
    }
}

impl RuleOptions {
    pub fn one_witness() -> Self {
        RuleOptions {
            mode: Mode::OneWitness,
            ..Self::default()
        }
    }

    pub fn enumerate() -> Self {
        RuleOptions {
            backend: Backend::Enumerate,
            ..Self::default()
        }
    }

    fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            deadline: self.deadline,
        }
    }
}

/// One step of the ranked rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub item: usize,
    pub id: String,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleResult<W> {
    /// Winning outcomes in lexicographic order, each scored with `optimum`.
    pub outcomes: Vec<Outcome<W>>,
    /// The maximised quantity; for ranked rules the profile sum of the result.
    pub optimum: W,
    /// Ranked rules only: items in the order they were decided.
    pub trace: Vec<Decision>,
    /// The co-winner list stopped at the cap.
    pub truncated: bool,
}

impl<W: Weight> RuleResult<W> {
    pub fn bits(&self) -> Vec<&[bool]> {
        self.outcomes.iter().map(|o| o.bits.as_slice()).collect()
    }
}

#[derive(Clone, Copy)]
enum Aggregate {
    Sum,
    Min,
}

fn value<W: Weight>(
    agg: Aggregate,
    scoring: SetScoring,
    instance: &CdoInstance<W>,
    bits: &[bool],
) -> Result<W> {
    let weights = instance.agenda().weights();
    match agg {
        Aggregate::Sum => profile_sum(scoring, instance.profile(), bits, weights),
        Aggregate::Min => profile_min(scoring, instance.profile(), bits, weights),
    }
}

fn finish<W: Weight>(optimum: W, witnesses: Vec<Vec<bool>>, truncated: bool) -> RuleResult<W> {
    RuleResult {
        outcomes: witnesses
            .into_iter()
            .map(|b| Outcome::scored(b, optimum))
            .collect(),
        optimum,
        trace: Vec::new(),
        truncated,
    }
}

fn by_enumeration<W: Weight>(
    agg: Aggregate,
    scoring: SetScoring,
    instance: &CdoInstance<W>,
    opts: &RuleOptions,
) -> Result<RuleResult<W>> {
    let feasible = enumerate_feasible(
        instance.agenda(),
        instance.feasibility(),
        opts.enumeration_cap,
    )?;
    let mut best: Option<W> = None;
    let mut winners = Vec::new();
    for outcome in feasible {
        let v = value(agg, scoring, instance, &outcome.bits)?;
        match best {
            Some(b) if v < b => {}
            Some(b) if v == b => winners.push(outcome.bits),
            _ => {
                best = Some(v);
                winners = vec![outcome.bits];
            }
        }
    }
    let optimum = best.ok_or(CdoError::Infeasible)?;
    let truncated = match opts.mode {
        Mode::OneWitness => {
            winners.truncate(1);
            false
        }
        Mode::EnumerateAll if winners.len() > opts.optima_cap => {
            winners.truncate(opts.optima_cap);
            true
        }
        Mode::EnumerateAll => false,
    };
    Ok(finish(optimum, winners, truncated))
}

fn by_search<W: Weight>(
    agg: Aggregate,
    scoring: SetScoring,
    instance: &CdoInstance<W>,
    model: &IlpModel<W>,
    opts: &RuleOptions,
) -> Result<RuleResult<W>> {
    let solve = opts.solve_options();
    let (optimum, witnesses, truncated) = match opts.mode {
        Mode::OneWitness => {
            let s = branch_and_bound(model, &[], &solve)?.ok_or(CdoError::Infeasible)?;
            (s.optimum, vec![s.items(model.num_items())], false)
        }
        Mode::EnumerateAll => {
            let o = enumerate_optima(model, opts.optima_cap.max(1), &solve)?
                .ok_or(CdoError::Infeasible)?;
            (o.optimum, o.witnesses, o.truncated)
        }
    };
    debug_assert!(witnesses
        .iter()
        .all(|b| value(agg, scoring, instance, b).ok() == Some(optimum)));
    Ok(finish(optimum, witnesses, truncated))
}

/// Outcomes maximising the total score over all voters.
pub fn rule_sum<W: Weight>(
    scoring: SetScoring,
    instance: &CdoInstance<W>,
    opts: &RuleOptions,
) -> Result<RuleResult<W>> {
    match opts.backend {
        Backend::Enumerate => by_enumeration(Aggregate::Sum, scoring, instance, opts),
        Backend::BranchAndBound => {
            let model = match scoring {
                SetScoring::Cc => encode_cc(Operator::Sum, instance)?,
                _ => encode_sum(scoring, instance)?,
            };
            by_search(Aggregate::Sum, scoring, instance, &model, opts)
        }
    }
}

/// Outcomes maximising the score of the least satisfied voter.
pub fn rule_egal<W: Weight>(
    scoring: SetScoring,
    instance: &CdoInstance<W>,
    opts: &RuleOptions,
) -> Result<RuleResult<W>> {
    match opts.backend {
        Backend::Enumerate => by_enumeration(Aggregate::Min, scoring, instance, opts),
        Backend::BranchAndBound => {
            let model = match scoring {
                SetScoring::Cc => encode_cc(Operator::Egal, instance)?,
                _ => encode_egal(scoring, instance)?,
            };
            by_search(Aggregate::Min, scoring, instance, &model, opts)
        }
    }
}

/// Runs any of the fifteen rules.
pub fn solve<W: Weight>(
    rule: RuleSpec,
    instance: &CdoInstance<W>,
    opts: &RuleOptions,
) -> Result<RuleResult<W>> {
    match rule.operator {
        Operator::Sum => rule_sum(rule.scoring, instance, opts),
        Operator::Egal => rule_egal(rule.scoring, instance, opts),
        Operator::Rank => rule_rank(rule.scoring, instance),
    }
}
