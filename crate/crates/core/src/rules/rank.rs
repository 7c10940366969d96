use super::{Decision, RuleResult};
use crate::error::{CdoError, Result};
use crate::model::{CdoInstance, Outcome};
use crate::num::Weight;
use crate::scoring::{profile_sum, SetScoring};

/// Greedy ranked rule. Starting from the empty outcome, repeatedly takes the
/// undecided item whose addition gives the highest total score (smallest
/// index on ties) and accepts it if the decisions so far, with this item
/// accepted, extend to a feasible outcome; otherwise rejects it.
pub fn rule_rank<W: Weight>(
    scoring: SetScoring,
    instance: &CdoInstance<W>,
) -> Result<RuleResult<W>> {
    let feasible = instance.feasible_set()?;
    let m = instance.items();
    let mut decided: Vec<Option<bool>> = vec![None; m];
    if !feasible.is_extendable(&decided)? {
        return Err(CdoError::Infeasible);
    }
    let weights = instance.agenda().weights();
    let profile = instance.profile();
    let mut current = vec![false; m];
    let mut trace = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best: Option<(W, usize)> = None;
        for x in (0..m).filter(|&x| decided[x].is_none()) {
            current[x] = true;
            let s = profile_sum(scoring, profile, &current, weights)?;
            current[x] = false;
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, x));
            }
        }
        let (_, x) = best.expect("an undecided item remains");
        decided[x] = Some(true);
        let accepted = feasible.is_extendable(&decided)?;
        decided[x] = Some(accepted);
        current[x] = accepted;
        trace.push(Decision {
            item: x,
            id: instance.agenda().id(x).to_string(),
            accepted,
        });
    }
    let optimum = profile_sum(scoring, profile, &current, weights)?;
    Ok(RuleResult {
        outcomes: vec![Outcome::scored(current, optimum)],
        optimum,
        trace,
        truncated: false,
    })
}
