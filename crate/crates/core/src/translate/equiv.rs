//! Randomised agreement checks between rules and their judgment aggregation
//! counterparts.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    cdo_to_ja, cdo_to_ja_ranked, ja_to_cdo, median_rule_ja, project_items, project_ja,
    ranked_agenda_ja, IssueWeights, JaInstance,
};
use crate::error::{CdoError, Result};
use crate::harness::child_seed;
use crate::model::{lex_bits, Agenda, Ballot, CdoInstance, ConstraintSet, Profile};
use crate::rules::{rule_rank, rule_sum, RuleOptions};
use crate::scoring::SetScoring;

/// Which agreement to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    /// Median rule, sum of simple scores and sum of swap scores agree.
    SimpleSwap,
    /// The weighted median rule, sum of weight and sum of w-swap agree.
    WeightWSwap,
    /// Ranked agenda and ranked simple rule agree.
    RankedAgenda,
}

impl Agreement {
    pub fn name(self) -> &'static str {
        match self {
            Agreement::SimpleSwap => "simple-swap",
            Agreement::WeightWSwap => "weight-wswap",
            Agreement::RankedAgenda => "ranked-agenda",
        }
    }
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Agreement {
    type Err = CdoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple-swap" | "lemma1i" => Ok(Agreement::SimpleSwap),
            "weight-wswap" | "lemma1ii" => Ok(Agreement::WeightWSwap),
            "ranked-agenda" | "lemma1iii" => Ok(Agreement::RankedAgenda),
            other => Err(CdoError::Parse(format!("unknown check `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivReport {
    pub check: Agreement,
    pub trials: usize,
    /// One dump per disagreeing trial.
    pub failures: Vec<String>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random instance with up to `max_items` items (weights 1..=9), up to
/// `max_voters` voters and an explicit feasible set of up to `max_feasible`
/// distinct outcomes.
pub fn random_cdo_instance(
    rng: &mut impl Rng,
    max_items: usize,
    max_voters: usize,
    max_feasible: usize,
) -> Result<CdoInstance<i64>> {
    let m = rng.gen_range(1..=max_items.max(1));
    let n = rng.gen_range(1..=max_voters.max(1));
    let agenda = Agenda::new((0..m).map(|k| (format!("a{}", k + 1), rng.gen_range(1..=9i64))))?;
    let cube = 1usize << m;
    let size = rng.gen_range(1..=max_feasible.clamp(1, cube));
    let allowed: Vec<Vec<bool>> = index::sample(rng, cube, size)
        .into_iter()
        .map(|code| lex_bits(code as u64, m))
        .collect();
    let density: f64 = rng.gen_range(0.2..0.8);
    let ballots = (0..n)
        .map(|_| Ballot::new((0..m).map(|_| rng.gen_bool(density)).collect()))
        .collect();
    CdoInstance::unconstrained_ballots(
        agenda.clone(),
        ConstraintSet::explicit(&agenda, &allowed)?,
        Profile::new(ballots)?,
    )
}

/// Random judgment aggregation instance with up to `max_issues` issues
/// (weights 1..=`max_weight`), up to `max_voters` voters and a random
/// non-empty output space.
pub fn random_ja_instance(
    rng: &mut impl Rng,
    max_issues: usize,
    max_voters: usize,
    max_weight: i64,
) -> Result<JaInstance<i64>> {
    let k = rng.gen_range(1..=max_issues.max(1));
    let n = rng.gen_range(1..=max_voters.max(1));
    let cube = 1usize << k;
    let size = rng.gen_range(1..=cube);
    let outputs = index::sample(rng, cube, size)
        .into_iter()
        .map(|code| lex_bits(code as u64, k))
        .collect();
    let views = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    JaInstance::new(
        (0..k).map(|j| format!("q{}", j + 1)).collect(),
        (0..k).map(|_| rng.gen_range(1..=max_weight.max(1))).collect(),
        views,
        outputs,
    )
}

fn sum_bits(scoring: SetScoring, instance: &CdoInstance<i64>) -> Result<Vec<Vec<bool>>> {
    Ok(rule_sum(scoring, instance, &RuleOptions::default())?
        .outcomes
        .into_iter()
        .map(|o| o.bits)
        .collect())
}

fn sorted(mut v: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    v.sort();
    v
}

fn dump_cdo(instance: &CdoInstance<i64>) -> String {
    crate::io::instance_to_json(instance).unwrap_or_else(|e| format!("<unprintable: {e}>"))
}

fn compare(
    failures: &mut Vec<String>,
    trial: usize,
    what: &str,
    left: &[Vec<bool>],
    right: &[Vec<bool>],
    dump: impl FnOnce() -> String,
) {
    if left != right {
        failures.push(format!(
            "trial {trial}: {what}\n  left:  {left:?}\n  right: {right:?}\n  instance: {}",
            dump()
        ));
    }
}

fn check_sum_pair(
    failures: &mut Vec<String>,
    trial: usize,
    rng: &mut ChaCha8Rng,
    weighted: bool,
) -> Result<()> {
    let (plain, swap, weighting) = if weighted {
        (SetScoring::Weight, SetScoring::WSwap, IssueWeights::Agenda)
    } else {
        (SetScoring::Simple, SetScoring::Swap, IssueWeights::Unit)
    };
    let cdo = random_cdo_instance(rng, 8, 10, 20)?;
    let base = sum_bits(plain, &cdo)?;
    let shifted = sum_bits(swap, &cdo)?;
    compare(failures, trial, &format!("sum:{plain} vs sum:{swap}"), &base, &shifted, || {
        dump_cdo(&cdo)
    });
    let (_, median) = median_rule_ja(&cdo_to_ja(&cdo, weighting)?)?;
    let projected = sorted(median.iter().map(|j| project_items(j)).collect());
    compare(failures, trial, &format!("median of translation vs sum:{plain}"), &projected, &base, || {
        dump_cdo(&cdo)
    });

    let ja = random_ja_instance(rng, 5, 7, if weighted { 5 } else { 1 })?;
    let (_, median) = median_rule_ja(&ja)?;
    let translated = ja_to_cdo(&ja)?;
    let back = sorted(sum_bits(plain, &translated)?.iter().map(|b| project_ja(b)).collect());
    compare(failures, trial, &format!("sum:{plain} of translation vs median"), &back, &median, || {
        format!("{ja:?}")
    });
    Ok(())
}

/// Runs `trials` seeded random trials of one agreement.
pub fn check_equivalence(check: Agreement, trials: usize, seed: u64) -> Result<EquivReport> {
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, &[trial as u64]));
        match check {
            Agreement::SimpleSwap => check_sum_pair(&mut failures, trial, &mut rng, false)?,
            Agreement::WeightWSwap => check_sum_pair(&mut failures, trial, &mut rng, true)?,
            Agreement::RankedAgenda => {
                let cdo = random_cdo_instance(&mut rng, 6, 10, 20)?;
                let rank = rule_rank(SetScoring::Simple, &cdo)?.outcomes.remove(0).bits;
                let agenda = ranked_agenda_ja(&cdo_to_ja_ranked(&cdo)?);
                compare(&mut failures, trial, "rank:simple vs ranked agenda", &[rank], &[agenda], || {
                    dump_cdo(&cdo)
                });
            }
        }
    }
    Ok(EquivReport {
        check,
        trials,
        failures,
    })
}
