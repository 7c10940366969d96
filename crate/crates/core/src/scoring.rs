//! Set scorings: how satisfied one voter is with an outcome, and the sum and
//! minimum of that satisfaction over a profile.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CdoError, Result};
use crate::model::{Ballot, Profile};
use crate::num::{self, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetScoring {
    /// Number of approved items in the outcome.
    Simple,
    /// Total weight of approved items in the outcome.
    Weight,
    /// Minus the number of approved items left out.
    Swap,
    /// Minus the total weight of approved items left out.
    WSwap,
    /// 1 if the outcome contains an approved item, else 0.
    Cc,
}

impl SetScoring {
    pub const ALL: [SetScoring; 5] = [
        SetScoring::Simple,
        SetScoring::Weight,
        SetScoring::Swap,
        SetScoring::WSwap,
        SetScoring::Cc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetScoring::Simple => "simple",
            SetScoring::Weight => "weight",
            SetScoring::Swap => "swap",
            SetScoring::WSwap => "w-swap",
            SetScoring::Cc => "cc",
        }
    }

    pub fn is_swap(self) -> bool {
        matches!(self, SetScoring::Swap | SetScoring::WSwap)
    }

    pub fn uses_weights(self) -> bool {
        matches!(self, SetScoring::Weight | SetScoring::WSwap)
    }
}

impl fmt::Display for SetScoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetScoring {
    type Err = CdoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(SetScoring::Simple),
            "weight" => Ok(SetScoring::Weight),
            "swap" => Ok(SetScoring::Swap),
            "w-swap" | "w_swap" | "wswap" => Ok(SetScoring::WSwap),
            "cc" => Ok(SetScoring::Cc),
            other => Err(CdoError::Parse(format!("unknown scoring `{other}`"))),
        }
    }
}

fn check<W>(ballot: &Ballot, outcome: &[bool], weights: &[W]) -> Result<()> {
    let m = ballot.len();
    for found in [outcome.len(), weights.len()] {
        if found != m {
            return Err(CdoError::LengthMismatch { expected: m, found });
        }
    }
    Ok(())
}

/// Satisfaction of one voter with `outcome`.
pub fn score<W: Weight>(
    kind: SetScoring,
    ballot: &Ballot,
    outcome: &[bool],
    weights: &[W],
) -> Result<W> {
    check(ballot, outcome, weights)?;
    let approved = ballot.approvals();
    match kind {
        SetScoring::Simple => num::from_count(approved.filter(|&a| outcome[a]).count()),
        SetScoring::Swap => {
            let missed = num::from_count::<W>(approved.filter(|&a| !outcome[a]).count())?;
            num::sub(W::zero(), missed)
        }
        SetScoring::Weight => num::sum(approved.filter(|&a| outcome[a]).map(|a| weights[a])),
        SetScoring::WSwap => {
            let missed = num::sum(approved.filter(|&a| !outcome[a]).map(|a| weights[a]))?;
            num::sub(W::zero(), missed)
        }
        SetScoring::Cc => Ok(if ballot.approvals().any(|a| outcome[a]) {
            W::one()
        } else {
            W::zero()
        }),
    }
}

/// Sum of the voters' scores.
pub fn profile_sum<W: Weight>(
    kind: SetScoring,
    profile: &Profile,
    outcome: &[bool],
    weights: &[W],
) -> Result<W> {
    profile.ballots().iter().try_fold(W::zero(), |acc, b| {
        num::add(acc, score(kind, b, outcome, weights)?)
    })
}

/// Score of the least satisfied voter.
pub fn profile_min<W: Weight>(
    kind: SetScoring,
    profile: &Profile,
    outcome: &[bool],
    weights: &[W],
) -> Result<W> {
    let mut min: Option<W> = None;
    for b in profile.ballots() {
        let s = score(kind, b, outcome, weights)?;
        min = Some(min.map_or(s, |m: W| m.min(s)));
    }
    min.ok_or_else(|| CdoError::invalid("profile has no voters"))
}
