use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{gen_base_profile, gen_connected_graph, threshold_profile, BaseProfile};
use super::seed::{child_seed, TAG_GRAPH, TAG_PROFILE};
use crate::domains::{decode_tree, encode_spanning_tree, verify_spanning_tree, Graph};
use crate::error::{CdoError, Result};
use crate::model::{CdoInstance, ConstraintSet};
use crate::rules::{solve, Mode, Operator, RuleOptions, RuleSpec};
use crate::scoring::SetScoring;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub voters: usize,
    pub profiles_per_graph: usize,
    /// Acceptance levels in tenths: 3 stands for p = 0.3.
    pub p_tenths: Vec<u32>,
    pub rules: Vec<RuleSpec>,
    pub timeout: Duration,
    pub seed: u64,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
    pub mode: Mode,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            min_nodes: 6,
            max_nodes: 8,
            voters: 100,
            profiles_per_graph: 10,
            p_tenths: (1..=9).collect(),
            rules: Self::default_rules(),
            timeout: Duration::from_secs(1200),
            seed: 0,
            workers: 0,
            mode: Mode::OneWitness,
        }
    }
}

impl BenchConfig {
    pub fn default_rules() -> Vec<RuleSpec> {
        vec![
            RuleSpec::new(Operator::Sum, SetScoring::Simple),
            RuleSpec::new(Operator::Sum, SetScoring::Cc),
            RuleSpec::new(Operator::Egal, SetScoring::Simple),
        ]
    }

    pub fn rank_rules() -> Vec<RuleSpec> {
        vec![
            RuleSpec::new(Operator::Rank, SetScoring::Simple),
            RuleSpec::new(Operator::Rank, SetScoring::Cc),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_nodes < 2 || self.min_nodes > self.max_nodes {
            return Err(CdoError::invalid("node range must satisfy 2 <= min <= max"));
        }
        if self.voters == 0 || self.profiles_per_graph == 0 {
            return Err(CdoError::invalid("voters and profiles per graph must be positive"));
        }
        if self.p_tenths.is_empty() || self.p_tenths.iter().any(|&t| t == 0 || t >= 10) {
            return Err(CdoError::invalid("acceptance levels must lie strictly between 0 and 1"));
        }
        if self.rules.is_empty() {
            return Err(CdoError::invalid("no rules selected"));
        }
        if self.timeout.is_zero() {
            return Err(CdoError::invalid("timeout must be positive"));
        }
        Ok(())
    }

    /// `(|V|, |E|)` pairs of the grid: every edge count from a tree up to
    /// the complete graph.
    pub fn graph_sizes(&self) -> Vec<(usize, usize)> {
        (self.min_nodes..=self.max_nodes)
            .flat_map(|v| (v - 1..=v * (v - 1) / 2).map(move |e| (v, e)))
            .collect()
    }

    /// Number of records a run produces.
    pub fn grid_size(&self) -> usize {
        self.graph_sizes().len() * self.profiles_per_graph * self.p_tenths.len() * self.rules.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub p: f64,
    pub rule: String,
    /// Seed of the base profile.
    pub seed: u64,
    pub wall_time_ms: f64,
    pub optimum: Option<i64>,
    pub outcome_count: usize,
    pub timed_out: bool,
}

struct Cell {
    graph: Graph<i64>,
    base: BaseProfile,
    seed: u64,
}

fn run_one(
    cell: &Cell,
    (agenda, feasibility): &(crate::model::Agenda<i64>, ConstraintSet<i64>),
    tenths: u32,
    rule: RuleSpec,
    config: &BenchConfig,
) -> Result<BenchRecord> {
    let p = f64::from(tenths) / 10.0;
    let profile = threshold_profile(&cell.base, p)?;
    let instance = CdoInstance::unconstrained_ballots(agenda.clone(), feasibility.clone(), profile)?;
    let start = Instant::now();
    let opts = RuleOptions {
        mode: config.mode,
        deadline: Some(start + config.timeout),
        ..RuleOptions::default()
    };
    let outcome = solve(rule, &instance, &opts);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let mut record = BenchRecord {
        num_nodes: cell.graph.num_nodes(),
        num_edges: cell.graph.num_edges(),
        p,
        rule: rule.to_string(),
        seed: cell.seed,
        wall_time_ms: elapsed,
        optimum: None,
        outcome_count: 0,
        timed_out: false,
    };
    match outcome {
        Ok(result) => {
            for o in &result.outcomes {
                let edges = decode_tree(&o.bits, &cell.graph)?;
                if !verify_spanning_tree(&edges, &cell.graph) {
                    return Err(CdoError::invalid(format!(
                        "{rule} returned a non-tree on a {}-node graph",
                        cell.graph.num_nodes()
                    )));
                }
            }
            record.optimum = Some(result.optimum);
            record.outcome_count = result.outcomes.len();
        }
        Err(CdoError::Timeout) => record.timed_out = true,
        Err(e) => return Err(e),
    }
    Ok(record)
}

/// Runs every (graph, base profile, p, rule) combination of the grid.
/// Records come back sorted by `(|V|, |E|, profile, p, rule)` whatever the
/// number of workers.
pub fn run_benchmark(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    config.validate()?;
    let mut cells = Vec::new();
    for (v, e) in config.graph_sizes() {
        let gseed = child_seed(config.seed, &[TAG_GRAPH, v as u64, e as u64]);
        let graph = gen_connected_graph::<i64>(v, e, gseed)?;
        for k in 0..config.profiles_per_graph {
            let seed = child_seed(config.seed, &[TAG_PROFILE, v as u64, e as u64, k as u64]);
            cells.push(Cell {
                graph: graph.clone(),
                base: gen_base_profile(config.voters, e, seed),
                seed,
            });
        }
    }
    let jobs: Vec<(usize, usize, usize)> = (0..cells.len())
        .flat_map(|c| {
            (0..config.p_tenths.len())
                .flat_map(move |p| (0..config.rules.len()).map(move |r| (c, p, r)))
        })
        .collect();
    let encodings: Vec<_> = cells
        .iter()
        .map(|cell| encode_spanning_tree(&cell.graph))
        .collect::<Result<_>>()?;
    let work = || {
        jobs.par_iter()
            .map(|&(c, p, r)| {
                let record = run_one(
                    &cells[c],
                    &encodings[c],
                    config.p_tenths[p],
                    config.rules[r],
                    config,
                )?;
                Ok(((c, p, r), record))
            })
            .collect::<Result<Vec<_>>>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CdoError::invalid(e.to_string()))?;
    let mut keyed = pool.install(work)?;
    keyed.sort_by_key(|&(key, _)| key);
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}
