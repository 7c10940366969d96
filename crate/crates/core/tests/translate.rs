use std::time::{Duration, Instant};

use cdo_core::rules::{rule_rank, rule_sum, RuleOptions};
use cdo_core::translate::{
    cdo_to_ja, cdo_to_ja_ranked, check_equivalence, ja_to_cdo, median_rule_ja, project_items,
    project_ja, random_cdo_instance, random_ja_instance, ranked_agenda_ja, IssueWeights, Agreement,
};
use cdo_core::{CdoInstance, JaInstance, SetScoring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sum_simple(inst: &CdoInstance) -> Vec<Vec<bool>> {
    rule_sum(SetScoring::Simple, inst, &RuleOptions::default())
        .unwrap()
        .outcomes
        .into_iter()
        .map(|o| o.bits)
        .collect()
}

/// Weighted agreement maximisers, computed from the views directly.
fn median(ja: &JaInstance) -> Vec<Vec<bool>> {
    let agreement = |x: &[bool]| -> i64 {
        ja.views()
            .iter()
            .map(|v| (0..x.len()).filter(|&j| v[j] == x[j]).map(|j| ja.weights()[j]).sum::<i64>())
            .sum()
    };
    let best = ja.output_space().iter().map(|x| agreement(x)).max().unwrap();
    let mut out: Vec<Vec<bool>> =
        ja.output_space().iter().filter(|x| agreement(x) == best).cloned().collect();
    out.sort();
    out
}

fn sorted(mut v: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    v.sort();
    v
}

#[test]
fn median_of_translated_instance_is_sum_simple() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for t in 0..200 {
        let inst = random_cdo_instance(&mut rng, 5, 7, 20).unwrap();
        let ja = cdo_to_ja(&inst, IssueWeights::Unit).unwrap();
        let (_, winners) = median_rule_ja(&ja).unwrap();
        assert_eq!(sorted(winners.clone()), median(&ja), "trial {t}");
        let projected = sorted(winners.iter().map(|j| project_items(j)).collect());
        assert_eq!(projected, sum_simple(&inst), "trial {t}");
    }
}

#[test]
fn sum_simple_of_translated_judgments_is_median() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for t in 0..200 {
        let ja = random_ja_instance(&mut rng, 5, 7, 1).unwrap();
        let inst = ja_to_cdo(&ja).unwrap();
        assert_eq!(inst.items(), 2 * ja.issues().len());
        let projected = sorted(sum_simple(&inst).iter().map(|b| project_ja(b)).collect());
        assert_eq!(projected, median(&ja), "trial {t}");
    }
}

#[test]
fn judgment_items_alternate() {
    let ja = JaInstance::new(
        vec!["p".into(), "q".into()],
        vec![1, 1],
        vec![vec![true, false]],
        vec![vec![true, false], vec![false, false]],
    )
    .unwrap();
    let inst = ja_to_cdo(&ja).unwrap();
    assert_eq!(inst.agenda().ids(), ["p", "not:p", "q", "not:q"]);
    assert_eq!(inst.profile().ballots()[0].bits(), [true, false, false, true]);
    assert_eq!(sum_simple(&inst), [vec![true, false, false, true]]);
}

#[test]
fn ranked_agenda_matches_ranked_simple_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for t in 0..200 {
        let inst = random_cdo_instance(&mut rng, 5, 7, 20).unwrap();
        let rank = rule_rank(SetScoring::Simple, &inst).unwrap();
        let agenda = ranked_agenda_ja(&cdo_to_ja_ranked(&inst).unwrap());
        assert_eq!(rank.outcomes[0].bits, agenda, "trial {t}");
    }
}

#[test]
fn equivalence_suites_pass_quickly() {
    for check in [Agreement::SimpleSwap, Agreement::WeightWSwap, Agreement::RankedAgenda] {
        let start = Instant::now();
        let report = check_equivalence(check, 200, 7).unwrap();
        assert_eq!(report.trials, 200);
        assert!(report.passed(), "{check}: {:#?}", report.failures);
        assert!(start.elapsed() < Duration::from_secs(60));
    }
}

#[test]
fn equivalence_reports_are_reproducible() {
    let a = check_equivalence(Agreement::WeightWSwap, 30, 99).unwrap();
    let b = check_equivalence(Agreement::WeightWSwap, 30, 99).unwrap();
    assert_eq!(a, b);
}
