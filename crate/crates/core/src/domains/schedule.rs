use std::collections::HashSet;

use crate::error::{CdoError, Result};
use crate::model::{Agenda, Ballot, ConstraintSet, LinearConstraint};
use crate::num::Weight;

/// Jobs to order and their durations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleSpec<W> {
    jobs: Vec<String>,
    durations: Vec<W>,
}

impl<W: Weight> ScheduleSpec<W> {
    pub fn new(jobs: Vec<String>, durations: Vec<W>) -> Result<Self> {
        if jobs.is_empty() {
            return Err(CdoError::invalid("a schedule needs at least one job"));
        }
        if jobs.len() != durations.len() {
            return Err(CdoError::LengthMismatch {
                expected: jobs.len(),
                found: durations.len(),
            });
        }
        if let Some(k) = durations.iter().position(|&d| d <= W::zero()) {
            return Err(CdoError::invalid(format!(
                "job `{}` has non-positive duration",
                jobs[k]
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = jobs.iter().find(|j| !seen.insert(j.as_str())) {
            return Err(CdoError::DuplicateId(dup.clone()));
        }
        Ok(ScheduleSpec { jobs, durations })
    }

    pub fn jobs(&self) -> &[String] {
        &self.jobs
    }

    pub fn durations(&self) -> &[W] {
        &self.durations
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }

    pub fn job_index(&self, name: &str) -> Option<usize> {
        self.jobs.iter().position(|j| j == name)
    }

    /// Number of agenda items: `m` first-job markers and `m(m-1)` ordered pairs.
    pub fn items(&self) -> usize {
        let m = self.len();
        m * m
    }
}

/// Agenda position of the marker "job `x` runs first".
pub fn first_item(x: usize) -> usize {
    x
}

/// Agenda position of "job `x` runs before job `y`" among `m` jobs.
pub fn pair_item(m: usize, x: usize, y: usize) -> usize {
    debug_assert!(x != y && x < m && y < m);
    m + x * (m - 1) + if y < x { y } else { y - 1 }
}

/// Agenda and feasibility constraints whose feasible outcomes are exactly
/// the strict total orders of the jobs.
///
/// Items are `first:{x}` for every job, then `{x}<{y}` for every ordered pair
/// in lexicographic order of job positions. A marker weighs the duration of
/// its job; a pair weighs the duration of the later job. Constraints: one of
/// each pair of opposite precedences, transitivity, exactly one first job,
/// and the first job precedes every other job.
pub fn encode_schedule<W: Weight>(spec: &ScheduleSpec<W>) -> Result<(Agenda<W>, ConstraintSet<W>)> {
    let m = spec.len();
    let jobs = spec.jobs();
    let mut items: Vec<(String, W)> = (0..m)
        .map(|x| (format!("first:{}", jobs[x]), spec.durations()[x]))
        .collect();
    for x in 0..m {
        for y in (0..m).filter(|&y| y != x) {
            items.push((format!("{}<{}", jobs[x], jobs[y]), spec.durations()[y]));
        }
    }
    let agenda = Agenda::new(items)?;
    let id = |k: usize| agenda.id(k).to_string();
    let (one, minus) = (W::one(), W::zero() - W::one());
    let mut cs = ConstraintSet::new();
    for x in 0..m {
        for y in x + 1..m {
            cs.push(LinearConstraint::eq(
                [(id(pair_item(m, x, y)), one), (id(pair_item(m, y, x)), one)],
                one,
            ));
        }
    }
    for x in 0..m {
        for y in (0..m).filter(|&y| y != x) {
            for z in (0..m).filter(|&z| z != x && z != y) {
                cs.push(LinearConstraint::le(
                    [
                        (id(pair_item(m, x, y)), one),
                        (id(pair_item(m, y, z)), one),
                        (id(pair_item(m, x, z)), minus),
                    ],
                    one,
                ));
            }
        }
    }
    cs.push(LinearConstraint::eq((0..m).map(|x| (id(first_item(x)), one)), one));
    for x in 0..m {
        for y in (0..m).filter(|&y| y != x) {
            cs.push(LinearConstraint::le(
                [(id(first_item(x)), one), (id(pair_item(m, x, y)), minus)],
                W::zero(),
            ));
        }
    }
    Ok((agenda, cs))
}

/// Job positions in execution order. Fails unless `outcome` encodes a strict
/// total order with the matching first-job marker.
pub fn decode_schedule<W: Weight>(outcome: &[bool], spec: &ScheduleSpec<W>) -> Result<Vec<usize>> {
    let m = spec.len();
    if outcome.len() != spec.items() {
        return Err(CdoError::LengthMismatch {
            expected: spec.items(),
            found: outcome.len(),
        });
    }
    let wins = |x: usize| {
        (0..m)
            .filter(|&y| y != x && outcome[pair_item(m, x, y)])
            .count()
    };
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(wins(x)), x));
    for (i, &x) in order.iter().enumerate() {
        for &y in &order[i + 1..] {
            if !outcome[pair_item(m, x, y)] || outcome[pair_item(m, y, x)] {
                return Err(CdoError::invalid("outcome is not a strict total order"));
            }
        }
    }
    let firsts: Vec<usize> = (0..m).filter(|&x| outcome[first_item(x)]).collect();
    if firsts != [order[0]] {
        return Err(CdoError::invalid("first-job marker does not match the order"));
    }
    Ok(order)
}

/// Ballot approving the given precedences `(x, y)` ("x before y") and
/// first-job claims. Opposite precedences are rejected.
pub fn ballot_from_partial_order<W: Weight>(
    spec: &ScheduleSpec<W>,
    pairs: &[(usize, usize)],
    first: &[usize],
) -> Result<Ballot> {
    let m = spec.len();
    let mut bits = vec![false; spec.items()];
    let out_of_range = |x: usize| CdoError::invalid(format!("job index {x} out of range"));
    for &x in first {
        if x >= m {
            return Err(out_of_range(x));
        }
        bits[first_item(x)] = true;
    }
    let set: HashSet<(usize, usize)> = pairs.iter().copied().collect();
    for &(x, y) in pairs {
        if x >= m || y >= m {
            return Err(out_of_range(x.max(y)));
        }
        if x == y {
            return Err(CdoError::invalid(format!("job `{}` cannot precede itself", spec.jobs()[x])));
        }
        if set.contains(&(y, x)) {
            return Err(CdoError::invalid(format!(
                "contradictory precedences between `{}` and `{}`",
                spec.jobs()[x],
                spec.jobs()[y]
            )));
        }
        bits[pair_item(m, x, y)] = true;
    }
    Ok(Ballot::new(bits))
}
