//! Reads exported LP files back with a small independent parser and solves
//! them by exhaustive search.

mod common;

use std::collections::HashMap;

use cdo_core::rules::{solve, RuleOptions};
use cdo_core::solver::{encode_cc, encode_egal, encode_sum, export_lp};
use cdo_core::{CdoInstance, IlpModel, Operator, RuleSpec, SetScoring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Terms = Vec<(i64, String)>;

#[derive(Debug, Default)]
struct Lp {
    offset: i64,
    objective: Terms,
    rows: Vec<(Terms, String, i64)>,
    bounds: HashMap<String, (i64, i64)>,
    binary: Vec<String>,
    general: Vec<String>,
}

fn terms(tokens: &[&str]) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut sign = 1;
    let mut coeff: Option<i64> = None;
    for &t in tokens {
        match t {
            "+" => sign = 1,
            "-" => sign = -1,
            "0" if coeff.is_none() && tokens.len() == 1 => {}
            _ => match t.parse::<i64>() {
                Ok(c) => coeff = Some(c),
                Err(_) => {
                    out.push((sign * coeff.take().unwrap_or(1), t.to_string()));
                    sign = 1;
                }
            },
        }
    }
    out
}

fn parse(text: &str) -> Lp {
    let mut lp = Lp::default();
    let mut section = "";
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("\\ objective offset:") {
            lp.offset = rest.trim().parse().unwrap();
            continue;
        }
        if line.starts_with('\\') || line.trim().is_empty() {
            continue;
        }
        if !line.starts_with(' ') {
            section = match line.trim() {
                "Maximize" => "obj",
                "Subject To" => "rows",
                "Bounds" => "bounds",
                "Binary" => "binary",
                "General" => "general",
                "End" => "end",
                other => panic!("unexpected section {other}"),
            };
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match section {
            "obj" => lp.objective = terms(&tokens[1..]),
            "rows" => {
                let n = tokens.len();
                lp.rows.push((terms(&tokens[1..n - 2]), tokens[n - 2].to_string(), tokens[n - 1].parse().unwrap()));
            }
            "bounds" => {
                lp.bounds.insert(tokens[2].to_string(), (tokens[0].parse().unwrap(), tokens[4].parse().unwrap()));
            }
            "binary" => lp.binary.push(tokens[0].to_string()),
            "general" => lp.general.push(tokens[0].to_string()),
            _ => panic!("content after End"),
        }
    }
    assert_eq!(section, "end");
    lp
}

/// Exhaustive maximum over binaries and small integer ranges.
fn brute_max(lp: &Lp) -> Option<i64> {
    let mut names: Vec<String> = lp.binary.clone();
    let mut ranges: Vec<(i64, i64)> = vec![(0, 1); names.len()];
    for g in &lp.general {
        names.push(g.clone());
        ranges.push(lp.bounds[g]);
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
    let eval = |ts: &[(i64, String)], vals: &[i64]| -> i64 {
        ts.iter().map(|(c, n)| c * vals[index[n.as_str()]]).sum()
    };
    let mut vals: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    let mut best: Option<i64> = None;
    loop {
        let ok = lp.rows.iter().all(|(ts, sense, rhs)| {
            let lhs = eval(ts, &vals);
            match sense.as_str() {
                "<=" => lhs <= *rhs,
                ">=" => lhs >= *rhs,
                "=" => lhs == *rhs,
                s => panic!("sense {s}"),
            }
        });
        if ok {
            let v = eval(&lp.objective, &vals);
            best = Some(best.map_or(v, |b: i64| b.max(v)));
        }
        let mut k = 0;
        loop {
            if k == vals.len() {
                return best;
            }
            if vals[k] < ranges[k].1 {
                vals[k] += 1;
                break;
            }
            vals[k] = ranges[k].0;
            k += 1;
        }
    }
}

fn model(op: Operator, kind: SetScoring, inst: &CdoInstance) -> IlpModel {
    match (op, kind) {
        (op, SetScoring::Cc) => encode_cc(op, inst).unwrap(),
        (Operator::Sum, k) => encode_sum(k, inst).unwrap(),
        _ => encode_egal(kind, inst).unwrap(),
    }
}

#[test]
fn exported_models_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for t in 0..40 {
        let inst = common::random_instance(&mut rng, 7, 4, t % 2 == 0);
        for op in [Operator::Sum, Operator::Egal] {
            for kind in SetScoring::ALL {
                let m = model(op, kind, &inst);
                let text = export_lp(&m);
                let lp = parse(&text);
                assert_eq!(lp.rows.len(), m.rows().len());
                assert_eq!(lp.binary.len() + lp.general.len(), m.vars().len());
                let expected = solve(RuleSpec::new(op, kind), &inst, &RuleOptions::one_witness()).unwrap();
                let got = brute_max(&lp).expect("feasible") + lp.offset;
                assert_eq!(got, expected.optimum, "trial {t} {op}:{kind}\n{text}");
            }
        }
    }
}

#[test]
fn header_and_sections() {
    let agenda = cdo_core::Agenda::unit(["x<y", "2z"]).unwrap();
    let profile = cdo_core::Profile::from_01(&[vec![1, 0]]).unwrap();
    let inst = CdoInstance::unconstrained_ballots(agenda, Default::default(), profile).unwrap();
    let text = export_lp(&encode_sum(SetScoring::Swap, &inst).unwrap());
    assert!(text.starts_with("\\ "));
    assert!(text.contains("\\ objective offset: -1\n"));
    assert!(text.contains("Maximize\n obj: 1 x_y\n"));
    assert!(text.contains("Binary\n x_y\n v_2z\n"));
    assert!(text.ends_with("End\n"));
}
