use std::collections::HashMap;

use crate::error::{CdoError, Result};
use crate::model::{Agenda, ConstraintSet, LinearConstraint, Sense};
use crate::num::{self, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind<W> {
    Binary,
    Integer { lo: W, hi: W },
}

impl<W: Weight> VarKind<W> {
    pub fn bounds(&self) -> (W, W) {
        match *self {
            VarKind::Binary => (W::zero(), W::one()),
            VarKind::Integer { lo, hi } => (lo, hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable<W> {
    pub name: String,
    pub kind: VarKind<W>,
}

/// A constraint over variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row<W> {
    pub terms: Vec<(usize, W)>,
    pub sense: Sense,
    pub rhs: W,
}

/// Maximisation model over binary item variables (indices `0..num_items`, in
/// agenda order) followed by any number of bounded integer variables.
///
/// `offset` is a constant added to the objective when reporting values; it
/// carries the per-voter constants of the swap scorings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpModel<W> {
    vars: Vec<Variable<W>>,
    index: HashMap<String, usize>,
    num_items: usize,
    objective: Vec<(usize, W)>,
    offset: W,
    rows: Vec<Row<W>>,
    branch_hint: Vec<i64>,
}

impl<W: Weight> IlpModel<W> {
    /// Model with one binary per agenda item, no constraints and a zero objective.
    pub fn new(agenda: &Agenda<W>) -> Self {
        let vars: Vec<Variable<W>> = agenda
            .ids()
            .iter()
            .map(|id| Variable {
                name: id.clone(),
                kind: VarKind::Binary,
            })
            .collect();
        let index = vars
            .iter()
            .enumerate()
            .map(|(k, v)| (v.name.clone(), k))
            .collect();
        IlpModel {
            num_items: vars.len(),
            branch_hint: vec![0; vars.len()],
            vars,
            index,
            objective: Vec::new(),
            offset: W::zero(),
            rows: Vec::new(),
        }
    }

    /// Item binaries plus the auxiliaries and constraints of `cs`.
    pub fn from_constraints(agenda: &Agenda<W>, cs: &ConstraintSet<W>) -> Result<Self> {
        cs.validate(agenda)?;
        let mut model = Self::new(agenda);
        for (name, &(lo, hi)) in cs.aux() {
            model.add_var(name.clone(), VarKind::Integer { lo, hi })?;
        }
        for c in cs.constraints() {
            model.add_constraint(c)?;
        }
        Ok(model)
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind<W>) -> Result<usize> {
        let name = name.into();
        let (lo, hi) = kind.bounds();
        if lo > hi {
            return Err(CdoError::InvalidBounds {
                name,
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        if self.index.contains_key(&name) {
            return Err(CdoError::DuplicateId(name));
        }
        let k = self.vars.len();
        self.index.insert(name.clone(), k);
        self.vars.push(Variable { name, kind });
        Ok(k)
    }

    /// `base`, or `base` with trailing underscores until it is unused.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('_');
        }
        name
    }

    pub fn add_row(&mut self, terms: Vec<(usize, W)>, sense: Sense, rhs: W) -> Result<()> {
        if let Some(&(v, _)) = terms.iter().find(|(v, _)| *v >= self.vars.len()) {
            return Err(CdoError::UnknownVariable(format!("#{v}")));
        }
        self.rows.push(Row { terms, sense, rhs });
        Ok(())
    }

    pub fn add_constraint(&mut self, c: &LinearConstraint<W>) -> Result<()> {
        let terms = c
            .terms
            .iter()
            .map(|(name, &coeff)| {
                self.var_index(name)
                    .map(|k| (k, coeff))
                    .ok_or_else(|| CdoError::UnknownVariable(name.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.add_row(terms, c.sense, c.rhs)
    }

    pub fn set_objective(&mut self, terms: Vec<(usize, W)>, offset: W) -> Result<()> {
        if let Some(&(v, _)) = terms.iter().find(|(v, _)| *v >= self.vars.len()) {
            return Err(CdoError::UnknownVariable(format!("#{v}")));
        }
        self.objective = terms;
        self.offset = offset;
        Ok(())
    }

    /// Per-item priority used to order branching among items whose objective
    /// coefficients tie in magnitude (larger first).
    pub fn set_branch_hint(&mut self, hint: Vec<i64>) -> Result<()> {
        if hint.len() != self.num_items {
            return Err(CdoError::LengthMismatch {
                expected: self.num_items,
                found: hint.len(),
            });
        }
        self.branch_hint = hint;
        Ok(())
    }

    pub fn vars(&self) -> &[Variable<W>] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn num_items(&self) -> usize {
        self.num_items
    }

    pub fn objective(&self) -> &[(usize, W)] {
        &self.objective
    }

    pub fn offset(&self) -> W {
        self.offset
    }

    pub fn rows(&self) -> &[Row<W>] {
        &self.rows
    }

    pub fn branch_hint(&self) -> &[i64] {
        &self.branch_hint
    }

    /// Objective value (including the offset) of a full assignment.
    pub fn objective_value(&self, values: &[W]) -> Result<W> {
        if values.len() != self.vars.len() {
            return Err(CdoError::LengthMismatch {
                expected: self.vars.len(),
                found: values.len(),
            });
        }
        let linear = num::sum(
            self.objective
                .iter()
                .map(|&(v, c)| num::mul(c, values[v]))
                .collect::<Result<Vec<_>>>()?,
        )?;
        num::add(linear, self.offset)
    }

    /// Whether a full assignment respects every bound and row.
    pub fn satisfies(&self, values: &[W]) -> Result<bool> {
        if values.len() != self.vars.len() {
            return Err(CdoError::LengthMismatch {
                expected: self.vars.len(),
                found: values.len(),
            });
        }
        for (var, &x) in self.vars.iter().zip(values) {
            let (lo, hi) = var.kind.bounds();
            if x < lo || x > hi {
                return Ok(false);
            }
        }
        for row in &self.rows {
            let mut lhs = W::zero();
            for &(v, c) in &row.terms {
                lhs = num::add(lhs, num::mul(c, values[v])?)?;
            }
            if !row.sense.holds(lhs, row.rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
