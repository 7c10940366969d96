//! Translations between judgment aggregation over weighted binary issues
//! and collective decision instances, with brute-force judgment aggregation
//! rules used as reference implementations.

mod equiv;

use std::collections::HashSet;

use crate::error::{CdoError, Result};
use crate::model::{
    enumerate_feasible, Agenda, Ballot, CdoInstance, ConstraintSet, LinearConstraint, Profile,
};
use crate::num::{self, Weight};

pub use equiv::{
    check_equivalence, random_cdo_instance, random_ja_instance, EquivReport, Agreement,
};

/// Largest issue count accepted where the output space has to be
/// complemented or enumerated.
pub const MAX_ISSUES: usize = 16;

/// Judgment aggregation instance. Judgments are `true` for acceptance (+1)
/// and `false` for rejection (-1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JaInstance<W> {
    issues: Vec<String>,
    weights: Vec<W>,
    views: Vec<Vec<bool>>,
    output_space: Vec<Vec<bool>>,
}

impl<W: Weight> JaInstance<W> {
    pub fn new(
        issues: Vec<String>,
        weights: Vec<W>,
        views: Vec<Vec<bool>>,
        output_space: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let k = issues.len();
        if weights.len() != k {
            return Err(CdoError::LengthMismatch {
                expected: k,
                found: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|&&w| w <= W::zero()) {
            return Err(CdoError::invalid(format!("issue weight {w} is not positive")));
        }
        if let Some(v) = views.iter().chain(&output_space).find(|v| v.len() != k) {
            return Err(CdoError::LengthMismatch {
                expected: k,
                found: v.len(),
            });
        }
        if output_space.is_empty() {
            return Err(CdoError::invalid("output space is empty"));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = issues.iter().find(|i| !seen.insert(i.as_str())) {
            return Err(CdoError::DuplicateId(dup.clone()));
        }
        let mut output_space = output_space;
        output_space.sort();
        output_space.dedup();
        Ok(JaInstance {
            issues,
            weights,
            views,
            output_space,
        })
    }

    pub fn issues(&self) -> &[String] {
        &self.issues
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn views(&self) -> &[Vec<bool>] {
        &self.views
    }

    /// Admissible collective judgments, sorted.
    pub fn output_space(&self) -> &[Vec<bool>] {
        &self.output_space
    }

    /// Weighted number of issues on which `x` agrees with each view, summed.
    pub fn agreement(&self, x: &[bool]) -> Result<W> {
        let mut total = W::zero();
        for view in &self.views {
            for k in 0..self.issues.len() {
                if view[k] == x[k] {
                    total = num::add(total, self.weights[k])?;
                }
            }
        }
        Ok(total)
    }
}

/// Issue weighting used when turning an instance into judgment aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IssueWeights {
    /// Every issue weighs 1.
    Unit,
    /// Issues take the weight of their agenda item.
    Agenda,
}

/// Agenda item for accepting issue `k`: `{id}`; for rejecting it: `not:{id}`.
/// The two alternate, so item `2k` accepts and item `2k + 1` rejects.
pub fn ja_to_cdo<W: Weight>(ja: &JaInstance<W>) -> Result<CdoInstance<W>> {
    let k = ja.issues.len();
    if k > MAX_ISSUES {
        return Err(CdoError::EnumerationCap {
            items: k,
            cap: MAX_ISSUES,
        });
    }
    if ja.views.is_empty() {
        return Err(CdoError::invalid("a profile needs at least one voter"));
    }
    let agenda = Agenda::new(ja.issues.iter().zip(&ja.weights).flat_map(|(id, &w)| {
        [(id.clone(), w), (format!("not:{id}"), w)]
    }))?;
    let mut exactly_one = ConstraintSet::new();
    for j in 0..k {
        exactly_one.push(LinearConstraint::eq(
            [(agenda.id(2 * j).to_string(), W::one()), (agenda.id(2 * j + 1).to_string(), W::one())],
            W::one(),
        ));
    }
    let allowed: HashSet<&[bool]> = ja.output_space.iter().map(Vec::as_slice).collect();
    let mut feasibility = exactly_one.clone();
    let limit: W = num::from_count(k.saturating_sub(1))?;
    for code in 0u64..(1u64 << k) {
        let y: Vec<bool> = (0..k).map(|j| (code >> (k - 1 - j)) & 1 == 1).collect();
        if allowed.contains(y.as_slice()) {
            continue;
        }
        let literals = (0..k).map(|j| {
            let item = if y[j] { 2 * j } else { 2 * j + 1 };
            (agenda.id(item).to_string(), W::one())
        });
        feasibility.push(LinearConstraint::le(literals, limit));
    }
    let profile = Profile::new(
        ja.views
            .iter()
            .map(|v| Ballot::new(v.iter().flat_map(|&b| [b, !b]).collect()))
            .collect(),
    )?;
    CdoInstance::new(agenda, exactly_one, feasibility, profile)
}

/// Judgment of an outcome of [`ja_to_cdo`]'s instance.
pub fn project_ja(bits: &[bool]) -> Vec<bool> {
    bits.iter().step_by(2).copied().collect()
}

fn issue_weights<W: Weight>(instance: &CdoInstance<W>, weighting: IssueWeights) -> Result<Vec<W>> {
    match weighting {
        IssueWeights::Unit => Ok(vec![W::one(); instance.items()]),
        IssueWeights::Agenda => {
            let w = instance.agenda().weights().to_vec();
            if w.iter().any(|&x| x <= W::zero()) {
                return Err(CdoError::invalid(
                    "issue weights must be positive; the agenda has a non-positive weight",
                ));
            }
            Ok(w)
        }
    }
}

fn feasible_bits<W: Weight>(instance: &CdoInstance<W>) -> Result<Vec<Vec<bool>>> {
    let outcomes = enumerate_feasible(instance.agenda(), instance.feasibility(), MAX_ISSUES)?;
    if outcomes.is_empty() {
        return Err(CdoError::Infeasible);
    }
    Ok(outcomes.into_iter().map(|o| o.bits).collect())
}

/// Two issues per item `a`: `a` mirrors the ballots and `a*` is accepted by
/// every voter; admissible judgments are the feasible outcomes with `a*`
/// copying `a`. Issues alternate, so issue `2k` is item `k` itself.
pub fn cdo_to_ja<W: Weight>(
    instance: &CdoInstance<W>,
    weighting: IssueWeights,
) -> Result<JaInstance<W>> {
    let weights = issue_weights(instance, weighting)?;
    let ids = instance.agenda().ids();
    let issues = ids.iter().flat_map(|id| [id.clone(), format!("{id}*")]).collect();
    let weights = weights.iter().flat_map(|&w| [w, w]).collect();
    let views = instance
        .profile()
        .ballots()
        .iter()
        .map(|b| b.bits().iter().flat_map(|&x| [x, true]).collect())
        .collect();
    let outputs = feasible_bits(instance)?
        .into_iter()
        .map(|x| x.iter().flat_map(|&b| [b, b]).collect())
        .collect();
    JaInstance::new(issues, weights, views, outputs)
}

/// Item part of a judgment of [`cdo_to_ja`]'s instance.
pub fn project_items(judgment: &[bool]) -> Vec<bool> {
    judgment.iter().step_by(2).copied().collect()
}

/// One issue per item, the ballots as views, and `n + 1` extra views
/// accepting every issue; admissible judgments are the feasible outcomes.
///
/// The extra views put every acceptance ahead of every rejection in the
/// ranked agenda, ordered by approval count, which is exactly the order in
/// which the ranked simple rule considers items.
pub fn cdo_to_ja_ranked<W: Weight>(instance: &CdoInstance<W>) -> Result<JaInstance<W>> {
    let n = instance.voters();
    let m = instance.items();
    let mut views: Vec<Vec<bool>> = instance
        .profile()
        .ballots()
        .iter()
        .map(|b| b.bits().to_vec())
        .collect();
    views.extend(std::iter::repeat_n(vec![true; m], n + 1));
    JaInstance::new(
        instance.agenda().ids().to_vec(),
        vec![W::one(); m],
        views,
        feasible_bits(instance)?,
    )
}

/// Admissible judgments with the largest weighted agreement, with that
/// agreement.
pub fn median_rule_ja<W: Weight>(ja: &JaInstance<W>) -> Result<(W, Vec<Vec<bool>>)> {
    let mut best: Option<W> = None;
    let mut winners = Vec::new();
    for x in &ja.output_space {
        let score = ja.agreement(x)?;
        match best {
            Some(b) if score < b => {}
            Some(b) if score == b => winners.push(x.clone()),
            _ => {
                best = Some(score);
                winners = vec![x.clone()];
            }
        }
    }
    Ok((best.expect("output space is non-empty"), winners))
}

/// Ranked agenda: literals in order of decreasing support (ties: lower issue
/// first, acceptance before rejection); each is adopted when it is
/// compatible with the literals adopted so far and some admissible judgment.
pub fn ranked_agenda_ja<W: Weight>(ja: &JaInstance<W>) -> Vec<bool> {
    let k = ja.issues.len();
    let mut literals: Vec<(usize, usize, bool)> = (0..k)
        .flat_map(|j| {
            [true, false].into_iter().map(move |value| (j, value))
        })
        .map(|(j, value)| {
            let support = ja.views.iter().filter(|v| v[j] == value).count();
            (support, j, value)
        })
        .collect();
    literals.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(b.2.cmp(&a.2)));
    let mut fixed: Vec<Option<bool>> = vec![None; k];
    for (_, j, value) in literals {
        if fixed[j].is_some() {
            continue;
        }
        fixed[j] = Some(value);
        let consistent = ja
            .output_space
            .iter()
            .any(|x| fixed.iter().zip(x).all(|(f, &b)| f.is_none_or(|f| f == b)));
        if !consistent {
            fixed[j] = None;
        }
    }
    fixed.into_iter().map(|f| f.unwrap_or(false)).collect()
}
