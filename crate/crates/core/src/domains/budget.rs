use crate::error::{CdoError, Result};
use crate::model::{Agenda, ConstraintSet, LinearConstraint};
use crate::num::Weight;

/// Spending limit for a participatory budget; item weights are costs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetSpec<W> {
    pub limit: W,
}

impl<W: Weight> BudgetSpec<W> {
    pub fn new(limit: W) -> Result<Self> {
        if limit < W::zero() {
            return Err(CdoError::invalid(format!("budget limit {limit} is negative")));
        }
        Ok(BudgetSpec { limit })
    }
}

/// The knapsack row `Σ w_a x_a <= limit`, followed by `extras` unchanged.
pub fn encode_budget<W: Weight>(
    agenda: &Agenda<W>,
    spec: BudgetSpec<W>,
    extras: Vec<LinearConstraint<W>>,
) -> Result<ConstraintSet<W>> {
    let knapsack = LinearConstraint::le(
        agenda
            .ids()
            .iter()
            .zip(agenda.weights())
            .map(|(id, &w)| (id.clone(), w)),
        spec.limit,
    );
    let mut cs = ConstraintSet::new().with(knapsack);
    for c in extras {
        cs.push(c);
    }
    cs.validate(agenda)?;
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_feasible;

    fn feasible(weights: &[i64], limit: i64) -> Vec<Vec<bool>> {
        let agenda = Agenda::new(weights.iter().enumerate().map(|(k, &w)| (format!("p{k}"), w)))
            .unwrap();
        let cs = encode_budget(&agenda, BudgetSpec::new(limit).unwrap(), Vec::new()).unwrap();
        enumerate_feasible(&agenda, &cs, 24)
            .unwrap()
            .into_iter()
            .map(|o| o.bits)
            .collect()
    }

    #[test]
    fn limit_bounds_the_cube() {
        assert_eq!(feasible(&[1, 2, 3], 6).len(), 8);
        assert_eq!(feasible(&[1, 2, 3], 0), vec![vec![false; 3]]);
        assert!(BudgetSpec::new(-1i64).is_err());
    }

    #[test]
    fn extras_must_name_items() {
        let agenda = Agenda::new([("p", 1i64)]).unwrap();
        let extra = LinearConstraint::le([("q", 1i64)], 0);
        assert!(encode_budget(&agenda, BudgetSpec::new(1).unwrap(), vec![extra]).is_err());
    }
}
