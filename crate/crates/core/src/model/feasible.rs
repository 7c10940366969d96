use std::collections::BTreeMap;

use super::constraint::lex_bits;
use super::{Agenda, ConstraintSet, Outcome, Sense};
use crate::error::{CdoError, Result};
use crate::num::{self, Weight};
use crate::solver::search::Compiled;
use crate::solver::IlpModel;

/// Largest agenda the brute-force enumeration accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Per-item fixings: `Some(v)` pins item `k` to `v`, `None` leaves it free.
pub type PartialAssignment = Vec<Option<bool>>;

struct ItemRow {
    terms: Vec<(usize, i64)>,
    sense: Sense,
    rhs: i64,
}

impl ItemRow {
    fn holds(&self, bits: &[bool]) -> bool {
        let lhs: i128 = self
            .terms
            .iter()
            .filter(|(k, _)| bits[*k])
            .map(|&(_, c)| i128::from(c))
            .sum();
        self.sense.holds(lhs, i128::from(self.rhs))
    }
}

/// Membership oracle for the set of item vectors a constraint set admits.
///
/// Item-only constraints are evaluated directly. When auxiliary variables are
/// present, a candidate that passes the direct rows is handed to the solver
/// with every item fixed, which decides whether some auxiliary assignment
/// completes it.
pub struct FeasibleSet<'a, W> {
    agenda: &'a Agenda<W>,
    direct: Vec<ItemRow>,
    has_aux: bool,
    compiled: Compiled,
}

impl<'a, W: Weight> FeasibleSet<'a, W> {
    pub fn new(agenda: &'a Agenda<W>, cs: &ConstraintSet<W>) -> Result<Self> {
        cs.validate(agenda)?;
        let mut direct = Vec::new();
        for c in cs.constraints().iter().filter(|c| cs.is_item_only(c)) {
            let terms = c
                .terms
                .iter()
                .map(|(var, &coeff)| {
                    let k = agenda
                        .position(var)
                        .ok_or_else(|| CdoError::UnknownVariable(var.clone()))?;
                    Ok((k, num::to_i64(coeff)?))
                })
                .collect::<Result<Vec<_>>>()?;
            direct.push(ItemRow {
                terms,
                sense: c.sense,
                rhs: num::to_i64(c.rhs)?,
            });
        }
        let model = IlpModel::from_constraints(agenda, cs)?;
        Ok(FeasibleSet {
            agenda,
            direct,
            has_aux: cs.has_aux(),
            compiled: Compiled::new(&model)?,
        })
    }

    pub fn agenda(&self) -> &Agenda<W> {
        self.agenda
    }

    /// Whether the full item vector `bits` belongs to the induced set.
    pub fn contains(&self, bits: &[bool]) -> Result<bool> {
        self.agenda.check_len(bits.len())?;
        if !self.direct.iter().all(|row| row.holds(bits)) {
            return Ok(false);
        }
        if !self.has_aux {
            return Ok(true);
        }
        let fixed: PartialAssignment = bits.iter().map(|&b| Some(b)).collect();
        self.compiled.is_feasible(&fixed)
    }

    /// Whether some member of the set agrees with every fixed entry.
    pub fn is_extendable(&self, partial: &[Option<bool>]) -> Result<bool> {
        self.agenda.check_len(partial.len())?;
        if partial.iter().all(Option::is_some) {
            let bits: Vec<bool> = partial.iter().map(|b| b.unwrap_or(false)).collect();
            return self.contains(&bits);
        }
        self.compiled.is_feasible(partial)
    }

    /// All members, lexicographically sorted, by exhaustive enumeration.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Vec<bool>>> {
        let m = self.agenda.len();
        if m > cap || m >= 64 {
            return Err(CdoError::EnumerationCap { items: m, cap });
        }
        let mut members = Vec::new();
        for code in 0u64..(1u64 << m) {
            let bits = lex_bits(code, m);
            if self.contains(&bits)? {
                members.push(bits);
            }
        }
        Ok(members)
    }
}

/// Builds a [`PartialAssignment`] from item ids.
pub fn partial_from_ids<W: Weight>(
    agenda: &Agenda<W>,
    fixed: &BTreeMap<String, bool>,
) -> Result<PartialAssignment> {
    let mut partial = vec![None; agenda.len()];
    for (id, &v) in fixed {
        let k = agenda
            .position(id)
            .ok_or_else(|| CdoError::UnknownVariable(id.clone()))?;
        partial[k] = Some(v);
    }
    Ok(partial)
}

pub fn check_assignment<W: Weight>(
    agenda: &Agenda<W>,
    cs: &ConstraintSet<W>,
    bits: &[bool],
) -> Result<bool> {
    FeasibleSet::new(agenda, cs)?.contains(bits)
}

pub fn is_extendable<W: Weight>(
    agenda: &Agenda<W>,
    cs: &ConstraintSet<W>,
    partial: &[Option<bool>],
) -> Result<bool> {
    FeasibleSet::new(agenda, cs)?.is_extendable(partial)
}

/// Every member of the induced set as an [`Outcome`], deduplicated and in
/// lexicographic order. Refuses agendas larger than `cap`.
pub fn enumerate_feasible<W: Weight>(
    agenda: &Agenda<W>,
    cs: &ConstraintSet<W>,
    cap: usize,
) -> Result<Vec<Outcome<W>>> {
    let m = agenda.len();
    if m > cap {
        return Err(CdoError::EnumerationCap { items: m, cap });
    }
    Ok(FeasibleSet::new(agenda, cs)?
        .enumerate(cap)?
        .into_iter()
        .map(Outcome::new)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::LinearConstraint;

    /// Example feasible set {(1,0,0,1), (1,1,0,0), (0,1,1,0)} written as an
    /// exactly-two constraint plus cuts against the other three pairs.
    fn four_item_example() -> (Agenda<i64>, ConstraintSet<i64>) {
        let agenda = Agenda::unit(["a1", "a2", "a3", "a4"]).unwrap();
        let mut cs = ConstraintSet::new().with(LinearConstraint::eq(
            [("a1", 1), ("a2", 1), ("a3", 1), ("a4", 1)],
            2,
        ));
        for (x, y) in [("a1", "a3"), ("a2", "a4"), ("a3", "a4")] {
            cs.push(LinearConstraint::le([(x, 1), (y, 1)], 1));
        }
        (agenda, cs)
    }

    fn bits(v: &[u8]) -> Vec<bool> {
        v.iter().map(|&b| b == 1).collect()
    }

    #[test]
    fn example_membership() {
        let (agenda, cs) = four_item_example();
        assert!(check_assignment(&agenda, &cs, &bits(&[1, 0, 0, 1])).unwrap());
        assert!(!check_assignment(&agenda, &cs, &bits(&[1, 0, 1, 0])).unwrap());
    }

    #[test]
    fn empty_constraint_set_admits_everything() {
        let agenda = Agenda::<i64>::unit(["a", "b"]).unwrap();
        let cs = ConstraintSet::new();
        assert!(check_assignment(&agenda, &cs, &bits(&[1, 1])).unwrap());
        assert_eq!(enumerate_feasible(&agenda, &cs, 24).unwrap().len(), 4);
    }

    #[test]
    fn weighted_capacity_is_evaluated_directly() {
        let agenda = Agenda::new([("a", 1i64), ("b", 2), ("c", 3)]).unwrap();
        let cs = ConstraintSet::new().with(LinearConstraint::le([("a", 1), ("b", 2), ("c", 3)], 3));
        assert!(!check_assignment(&agenda, &cs, &bits(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn extendability_on_example() {
        let (agenda, cs) = four_item_example();
        let fix = |pairs: &[(&str, bool)]| {
            let map: BTreeMap<String, bool> =
                pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect();
            partial_from_ids(&agenda, &map).unwrap()
        };
        assert!(!is_extendable(&agenda, &cs, &fix(&[("a4", true), ("a3", true)])).unwrap());
        assert!(is_extendable(&agenda, &cs, &fix(&[("a4", true), ("a1", true)])).unwrap());
        assert!(is_extendable(&agenda, &cs, &fix(&[])).unwrap());
    }

    #[test]
    fn enumeration_is_sorted_and_matches_example() {
        let (agenda, cs) = four_item_example();
        let all: Vec<Vec<bool>> = enumerate_feasible(&agenda, &cs, 24)
            .unwrap()
            .into_iter()
            .map(|o| o.bits)
            .collect();
        assert_eq!(
            all,
            vec![bits(&[0, 1, 1, 0]), bits(&[1, 0, 0, 1]), bits(&[1, 1, 0, 0])]
        );
    }

    #[test]
    fn enumeration_refuses_above_cap() {
        let agenda = Agenda::<i64>::unit((0..5).map(|k| format!("a{k}"))).unwrap();
        let err = enumerate_feasible(&agenda, &ConstraintSet::new(), 4).unwrap_err();
        assert_eq!(err, CdoError::EnumerationCap { items: 5, cap: 4 });
    }

    #[test]
    fn aux_variables_are_quantified_existentially() {
        // a + b = 2y with y in [0, 1]: admits 00 and 11 only.
        let agenda = Agenda::<i64>::unit(["a", "b"]).unwrap();
        let mut cs = ConstraintSet::new();
        cs.add_aux("y", 0, 1).unwrap();
        cs.push(LinearConstraint::eq([("a", 1), ("b", 1), ("y", -2)], 0));
        let all: Vec<Vec<bool>> = enumerate_feasible(&agenda, &cs, 24)
            .unwrap()
            .into_iter()
            .map(|o| o.bits)
            .collect();
        assert_eq!(all, vec![bits(&[0, 0]), bits(&[1, 1])]);
        assert!(!is_extendable(&agenda, &cs, &[Some(true), Some(false)]).unwrap());
        assert!(is_extendable(&agenda, &cs, &[Some(true), None]).unwrap());
    }

    #[test]
    fn unknown_variable_is_structural_error() {
        let agenda = Agenda::<i64>::unit(["a"]).unwrap();
        let cs = ConstraintSet::new().with(LinearConstraint::le([("zz", 1i64)], 1));
        assert_eq!(
            check_assignment(&agenda, &cs, &[true]),
            Err(CdoError::UnknownVariable("zz".into()))
        );
    }
}
