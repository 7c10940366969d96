use super::model::{IlpModel, VarKind};
use crate::error::{CdoError, Result};
use crate::model::{CdoInstance, Sense};
use crate::num::{self, Weight};
use crate::rules::Operator;
use crate::scoring::SetScoring;

/// Per-item unit of satisfaction: 1 for the cardinality scorings, the item
/// weight for the weighted ones.
fn units<W: Weight>(scoring: SetScoring, instance: &CdoInstance<W>) -> Result<Vec<W>> {
    match scoring {
        SetScoring::Simple | SetScoring::Swap => Ok(vec![W::one(); instance.items()]),
        SetScoring::Weight | SetScoring::WSwap => Ok(instance.agenda().weights().to_vec()),
        SetScoring::Cc => Err(CdoError::invalid("cc is not linear in the outcome; use encode_cc")),
    }
}

fn base_model<W: Weight>(instance: &CdoInstance<W>) -> Result<IlpModel<W>> {
    let mut model = IlpModel::from_constraints(instance.agenda(), instance.feasibility())?;
    let support = instance.profile().support();
    model.set_branch_hint(support.into_iter().map(|s| s as i64).collect())?;
    Ok(model)
}

/// Utilitarian model: item coefficients are summed per-voter units; for the
/// swap scorings the per-voter constants go into the offset.
pub fn encode_sum<W: Weight>(
    scoring: SetScoring,
    instance: &CdoInstance<W>,
) -> Result<IlpModel<W>> {
    let unit = units(scoring, instance)?;
    let mut coeffs = vec![W::zero(); instance.items()];
    let mut offset = W::zero();
    for ballot in instance.profile().ballots() {
        for a in ballot.approvals() {
            coeffs[a] = num::add(coeffs[a], unit[a])?;
            if scoring.is_swap() {
                offset = num::sub(offset, unit[a])?;
            }
        }
    }
    let mut model = base_model(instance)?;
    let terms = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    model.set_objective(terms, offset)?;
    Ok(model)
}

/// Egalitarian model: maximise `t` subject to every voter scoring at least `t`.
pub fn encode_egal<W: Weight>(
    scoring: SetScoring,
    instance: &CdoInstance<W>,
) -> Result<IlpModel<W>> {
    let unit = units(scoring, instance)?;
    let reach = num::sum(
        unit.iter()
            .map(|&u| {
                let magnitude = if u < W::zero() { num::sub(W::zero(), u)? } else { u };
                Ok(magnitude.max(W::one()))
            })
            .collect::<Result<Vec<W>>>()?,
    )?;
    let mut model = base_model(instance)?;
    let t = model.add_var(
        model.fresh_name("t"),
        VarKind::Integer {
            lo: W::zero() - reach,
            hi: reach,
        },
    )?;
    for ballot in instance.profile().ballots() {
        let mut terms: Vec<(usize, W)> = ballot.approvals().map(|a| (a, unit[a])).collect();
        let constant = if scoring.is_swap() {
            num::sum(terms.iter().map(|&(_, u)| u))?
        } else {
            W::zero()
        };
        terms.push((t, W::zero() - W::one()));
        model.add_row(terms, Sense::Ge, constant)?;
    }
    model.set_objective(vec![(t, W::one())], W::zero())?;
    Ok(model)
}

/// Chamberlin-Courant model: `z_i` marks voters with an accepted approved
/// item; maximise their count (sum) or their minimum (egal).
pub fn encode_cc<W: Weight>(operator: Operator, instance: &CdoInstance<W>) -> Result<IlpModel<W>> {
    if operator == Operator::Rank {
        return Err(CdoError::invalid("the ranked operator has no optimisation model"));
    }
    let mut model = base_model(instance)?;
    let mut z = Vec::with_capacity(instance.voters());
    for (i, ballot) in instance.profile().ballots().iter().enumerate() {
        let zi = model.add_var(model.fresh_name(&format!("z{i}")), VarKind::Binary)?;
        let mut terms = vec![(zi, W::one())];
        terms.extend(ballot.approvals().map(|a| (a, W::zero() - W::one())));
        model.add_row(terms, Sense::Le, W::zero())?;
        z.push(zi);
    }
    match operator {
        Operator::Sum => {
            model.set_objective(z.into_iter().map(|zi| (zi, W::one())).collect(), W::zero())?;
        }
        _ => {
            let t = model.add_var(
                model.fresh_name("t"),
                VarKind::Integer {
                    lo: W::zero(),
                    hi: W::one(),
                },
            )?;
            for zi in z {
                model.add_row(vec![(zi, W::one()), (t, W::zero() - W::one())], Sense::Ge, W::zero())?;
            }
            model.set_objective(vec![(t, W::one())], W::zero())?;
        }
    }
    Ok(model)
}
