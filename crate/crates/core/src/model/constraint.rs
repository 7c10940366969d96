use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::Agenda;
use crate::error::{CdoError, Result};
use crate::num::{self, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Sense {
    pub fn holds<W: Ord>(self, lhs: W, rhs: W) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        })
    }
}

/// `Σ coeff · var  (<= | >= | =)  rhs` over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
pub struct LinearConstraint<W> {
    pub terms: IndexMap<String, W>,
    pub sense: Sense,
    pub rhs: W,
}

impl<W: Weight> LinearConstraint<W> {
    /// Builds a constraint; repeated variables have their coefficients summed.
    pub fn new<S: Into<String>>(
        terms: impl IntoIterator<Item = (S, W)>,
        sense: Sense,
        rhs: W,
    ) -> Self {
        let mut map: IndexMap<String, W> = IndexMap::new();
        for (var, coeff) in terms {
            let slot = map.entry(var.into()).or_insert_with(W::zero);
            *slot = *slot + coeff;
        }
        LinearConstraint {
            terms: map,
            sense,
            rhs,
        }
    }

    pub fn le<S: Into<String>>(terms: impl IntoIterator<Item = (S, W)>, rhs: W) -> Self {
        Self::new(terms, Sense::Le, rhs)
    }

    pub fn ge<S: Into<String>>(terms: impl IntoIterator<Item = (S, W)>, rhs: W) -> Self {
        Self::new(terms, Sense::Ge, rhs)
    }

    pub fn eq<S: Into<String>>(terms: impl IntoIterator<Item = (S, W)>, rhs: W) -> Self {
        Self::new(terms, Sense::Eq, rhs)
    }

    /// Cut excluding exactly the 0/1 point `bits` over the agenda items:
    /// `Σ_{bits=1} (1 - x) + Σ_{bits=0} x >= 1`.
    pub fn no_good(agenda: &Agenda<W>, bits: &[bool]) -> Result<Self> {
        agenda.check_len(bits.len())?;
        let ones = bits.iter().filter(|&&b| b).count();
        let rhs = num::sub(W::one(), num::from_count(ones)?)?;
        let terms = agenda
            .ids()
            .iter()
            .zip(bits)
            .map(|(id, &b)| (id.clone(), if b { -W::one() } else { W::one() }));
        Ok(Self::ge(terms, rhs))
    }

    /// Evaluates the left-hand side against a variable lookup.
    pub fn lhs(&self, mut value: impl FnMut(&str) -> Result<W>) -> Result<W> {
        self.terms.iter().try_fold(W::zero(), |acc, (var, &coeff)| {
            num::add(acc, num::mul(coeff, value(var)?)?)
        })
    }
}

/// Linear constraints over agenda items plus optional bounded integer
/// auxiliaries. The set it induces over items is the projection of all
/// integer points satisfying every constraint.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(bound = "W: Weight")]
pub struct ConstraintSet<W> {
    #[serde(default)]
    constraints: Vec<LinearConstraint<W>>,
    #[serde(default)]
    aux: IndexMap<String, (W, W)>,
}

impl<W: Weight> ConstraintSet<W> {
    pub fn new() -> Self {
        ConstraintSet {
            constraints: Vec::new(),
            aux: IndexMap::new(),
        }
    }

    pub fn from_constraints(constraints: Vec<LinearConstraint<W>>) -> Self {
        ConstraintSet {
            constraints,
            aux: IndexMap::new(),
        }
    }

    pub fn push(&mut self, c: LinearConstraint<W>) {
        self.constraints.push(c);
    }

    pub fn with(mut self, c: LinearConstraint<W>) -> Self {
        self.push(c);
        self
    }

    pub fn extend(&mut self, other: ConstraintSet<W>) -> Result<()> {
        for (name, (lo, hi)) in other.aux {
            self.add_aux(name, lo, hi)?;
        }
        self.constraints.extend(other.constraints);
        Ok(())
    }

    /// Registers an auxiliary integer variable with bounds `[lo, hi]`.
    pub fn add_aux(&mut self, name: impl Into<String>, lo: W, hi: W) -> Result<()> {
        let name = name.into();
        if lo > hi {
            return Err(CdoError::InvalidBounds {
                name,
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        if self.aux.contains_key(&name) {
            return Err(CdoError::DuplicateId(name));
        }
        self.aux.insert(name, (lo, hi));
        Ok(())
    }

    pub fn constraints(&self) -> &[LinearConstraint<W>] {
        &self.constraints
    }

    pub fn aux(&self) -> &IndexMap<String, (W, W)> {
        &self.aux
    }

    pub fn has_aux(&self) -> bool {
        !self.aux.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty() && self.aux.is_empty()
    }

    /// True when the constraint mentions no auxiliary variable.
    pub fn is_item_only(&self, c: &LinearConstraint<W>) -> bool {
        c.terms.keys().all(|v| !self.aux.contains_key(v))
    }

    /// Checks that every variable is an agenda item or a registered auxiliary,
    /// that auxiliary names do not shadow items, and that bounds are ordered.
    pub fn validate(&self, agenda: &Agenda<W>) -> Result<()> {
        for (name, (lo, hi)) in &self.aux {
            if agenda.position(name).is_some() {
                return Err(CdoError::DuplicateId(name.clone()));
            }
            if lo > hi {
                return Err(CdoError::InvalidBounds {
                    name: name.clone(),
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                });
            }
        }
        for c in &self.constraints {
            for var in c.terms.keys() {
                if agenda.position(var).is_none() && !self.aux.contains_key(var) {
                    return Err(CdoError::UnknownVariable(var.clone()));
                }
            }
        }
        Ok(())
    }

    /// Constraint set whose induced feasible set is exactly `allowed`: one
    /// no-good cut per excluded 0/1 vector. Desk-scale agendas only.
    pub fn explicit(agenda: &Agenda<W>, allowed: &[Vec<bool>]) -> Result<Self> {
        let m = agenda.len();
        if m > 20 {
            return Err(CdoError::EnumerationCap { items: m, cap: 20 });
        }
        for bits in allowed {
            agenda.check_len(bits.len())?;
        }
        let allowed: std::collections::HashSet<&[bool]> =
            allowed.iter().map(|b| b.as_slice()).collect();
        let mut set = ConstraintSet::new();
        for code in 0u64..(1u64 << m) {
            let bits = lex_bits(code, m);
            if !allowed.contains(bits.as_slice()) {
                set.push(LinearConstraint::no_good(agenda, &bits)?);
            }
        }
        Ok(set)
    }
}

/// The `code`-th vector of `{0,1}^m` in lexicographic order (item 0 is the
/// most significant position).
pub(crate) fn lex_bits(code: u64, m: usize) -> Vec<bool> {
    (0..m).map(|k| (code >> (m - 1 - k)) & 1 == 1).collect()
}
