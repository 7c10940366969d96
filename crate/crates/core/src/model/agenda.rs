use std::collections::HashMap;

use crate::error::{CdoError, Result};
use crate::num::Weight;

/// Ordered list of uniquely named items, each carrying an integer weight.
///
/// Item `k` corresponds to position `k` of every ballot and outcome vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agenda<W> {
    ids: Vec<String>,
    weights: Vec<W>,
    index: HashMap<String, usize>,
}

impl<W: Weight> Agenda<W> {
    pub fn new<S: Into<String>>(items: impl IntoIterator<Item = (S, W)>) -> Result<Self> {
        let mut ids = Vec::new();
        let mut weights = Vec::new();
        let mut index = HashMap::new();
        for (id, w) in items {
            let id = id.into();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(CdoError::DuplicateId(id));
            }
            ids.push(id);
            weights.push(w);
        }
        Ok(Agenda { ids, weights, index })
    }

    /// Agenda with every weight equal to one.
    pub fn unit<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(ids.into_iter().map(|id| (id, W::one())))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, k: usize) -> &str {
        &self.ids[k]
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> W {
        self.weights[k]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Same items with every weight replaced by `f(weight)`.
    pub fn map_weights(&self, f: impl Fn(W) -> W) -> Self {
        Agenda {
            ids: self.ids.clone(),
            weights: self.weights.iter().map(|&w| f(w)).collect(),
            index: self.index.clone(),
        }
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(CdoError::LengthMismatch {
                expected: self.len(),
                found: len,
            });
        }
        Ok(())
    }
}

/// One agent's approval vector. `true` is approval; `false` is non-approval or
/// abstention.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot(Vec<bool>);

impl Ballot {
    pub fn new(bits: Vec<bool>) -> Self {
        Ballot(bits)
    }

    pub fn from_01(values: &[u8]) -> Result<Self> {
        super::bits_from_01(values).map(Ballot)
    }

    pub fn empty(m: usize) -> Self {
        Ballot(vec![false; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn approves(&self, k: usize) -> bool {
        self.0[k]
    }

    /// Indices of approved items.
    pub fn approvals(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k)
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

/// Non-empty list of ballots of equal length. Duplicates are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    ballots: Vec<Ballot>,
    m: usize,
}

impl Profile {
    pub fn new(ballots: Vec<Ballot>) -> Result<Self> {
        let first = ballots
            .first()
            .ok_or_else(|| CdoError::invalid("a profile needs at least one ballot"))?;
        let m = first.len();
        for b in &ballots {
            if b.len() != m {
                return Err(CdoError::LengthMismatch {
                    expected: m,
                    found: b.len(),
                });
            }
        }
        Ok(Profile { ballots, m })
    }

    pub fn from_01(rows: &[Vec<u8>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| Ballot::from_01(r))
                .collect::<Result<_>>()?,
        )
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn voters(&self) -> usize {
        self.ballots.len()
    }

    pub fn items(&self) -> usize {
        self.m
    }

    /// Number of ballots approving each item.
    pub fn support(&self) -> Vec<usize> {
        let mut support = vec![0; self.m];
        for b in &self.ballots {
            for k in b.approvals() {
                support[k] += 1;
            }
        }
        support
    }
}

/// A collective decision over the agenda, optionally annotated with a score.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outcome<W> {
    pub bits: Vec<bool>,
    pub score: Option<W>,
}

impl<W> Outcome<W> {
    pub fn new(bits: Vec<bool>) -> Self {
        Outcome { bits, score: None }
    }

    pub fn scored(bits: Vec<bool>, score: W) -> Self {
        Outcome {
            bits,
            score: Some(score),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn accepted(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agenda_rejects_duplicate_ids() {
        let err = Agenda::new([("a", 1i64), ("b", 2), ("a", 3)]).unwrap_err();
        assert_eq!(err, CdoError::DuplicateId("a".into()));
    }

    #[test]
    fn agenda_positions_follow_declaration_order() {
        let agenda = Agenda::new([("x", 5i32), ("y", -2)]).unwrap();
        assert_eq!(agenda.position("y"), Some(1));
        assert_eq!(agenda.weight(1), -2);
        assert_eq!(agenda.position("z"), None);
    }

    #[test]
    fn ballot_rejects_non_binary_entries() {
        assert!(Ballot::from_01(&[0, 1, 2]).is_err());
        let b = Ballot::from_01(&[1, 0, 1]).unwrap();
        assert_eq!(b.approvals().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(b.count(), 2);
    }

    #[test]
    fn profile_requires_voters_and_equal_lengths() {
        assert!(Profile::new(vec![]).is_err());
        let err = Profile::from_01(&[vec![1, 0], vec![1, 0, 0]]).unwrap_err();
        assert_eq!(err, CdoError::LengthMismatch { expected: 2, found: 3 });
        let p = Profile::from_01(&[vec![1, 0], vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(p.support(), vec![3, 2]);
    }
}
