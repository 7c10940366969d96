use super::{Agenda, ConstraintSet, FeasibleSet, Profile};
use crate::error::{CdoError, Result};
use crate::num::Weight;

/// A complete collective decision problem: the agenda, the constraints on
/// individual ballots (rationality) and on collective outcomes (feasibility),
/// and the submitted profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdoInstance<W> {
    agenda: Agenda<W>,
    rationality: ConstraintSet<W>,
    feasibility: ConstraintSet<W>,
    profile: Profile,
}

impl<W: Weight> CdoInstance<W> {
    /// Validates all parts; a ballot violating rationality is a load error.
    pub fn new(
        agenda: Agenda<W>,
        rationality: ConstraintSet<W>,
        feasibility: ConstraintSet<W>,
        profile: Profile,
    ) -> Result<Self> {
        agenda.check_len(profile.items())?;
        rationality.validate(&agenda)?;
        feasibility.validate(&agenda)?;
        if !rationality.is_empty() {
            let rational = FeasibleSet::new(&agenda, &rationality)?;
            for (voter, ballot) in profile.ballots().iter().enumerate() {
                if !rational.contains(ballot.bits())? {
                    return Err(CdoError::Irrational { voter });
                }
            }
        }
        Ok(CdoInstance {
            agenda,
            rationality,
            feasibility,
            profile,
        })
    }

    /// Instance without rationality constraints.
    pub fn unconstrained_ballots(
        agenda: Agenda<W>,
        feasibility: ConstraintSet<W>,
        profile: Profile,
    ) -> Result<Self> {
        Self::new(agenda, ConstraintSet::new(), feasibility, profile)
    }

    pub fn agenda(&self) -> &Agenda<W> {
        &self.agenda
    }

    pub fn rationality(&self) -> &ConstraintSet<W> {
        &self.rationality
    }

    pub fn feasibility(&self) -> &ConstraintSet<W> {
        &self.feasibility
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn items(&self) -> usize {
        self.agenda.len()
    }

    pub fn voters(&self) -> usize {
        self.profile.voters()
    }

    pub fn feasible_set(&self) -> Result<FeasibleSet<'_, W>> {
        FeasibleSet::new(&self.agenda, &self.feasibility)
    }

    /// Same instance with a different profile (re-validated).
    pub fn with_profile(&self, profile: Profile) -> Result<Self> {
        Self::new(
            self.agenda.clone(),
            self.rationality.clone(),
            self.feasibility.clone(),
            profile,
        )
    }

    /// Same instance with the agenda weights replaced.
    pub fn with_agenda(&self, agenda: Agenda<W>) -> Result<Self> {
        if agenda.ids() != self.agenda.ids() {
            return Err(CdoError::invalid("replacement agenda must keep the item ids"));
        }
        Self::new(
            agenda,
            self.rationality.clone(),
            self.feasibility.clone(),
            self.profile.clone(),
        )
    }
}
