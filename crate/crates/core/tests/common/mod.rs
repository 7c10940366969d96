//! Brute-force reference implementations shared by the integration tests.
//! They work on plain vectors and never call into the solver.

#![allow(dead_code)]

use cdo_core::model::{Agenda, Ballot, ConstraintSet, LinearConstraint, Profile};
use cdo_core::{CdoInstance, Graph, Operator, SetScoring};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn cube(m: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << m).map(move |code| (0..m).map(|k| code >> (m - 1 - k) & 1 == 1).collect())
}

fn holds(c: &LinearConstraint<i64>, agenda: &Agenda<i64>, bits: &[bool]) -> bool {
    let lhs: i64 = c
        .terms
        .iter()
        .map(|(v, &w)| if bits[agenda.position(v).unwrap()] { w } else { 0 })
        .sum();
    c.sense.holds(lhs, c.rhs)
}

/// Outcomes satisfying every item-only constraint, in lexicographic order.
pub fn feasible(agenda: &Agenda<i64>, cs: &ConstraintSet<i64>) -> Vec<Vec<bool>> {
    assert!(!cs.has_aux());
    cube(agenda.len())
        .filter(|bits| cs.constraints().iter().all(|c| holds(c, agenda, bits)))
        .collect()
}

pub fn score(kind: SetScoring, ballot: &[bool], outcome: &[bool], weights: &[i64]) -> i64 {
    let approved: Vec<usize> = (0..ballot.len()).filter(|&a| ballot[a]).collect();
    let hit: Vec<usize> = approved.iter().copied().filter(|&a| outcome[a]).collect();
    let miss: Vec<usize> = approved.iter().copied().filter(|&a| !outcome[a]).collect();
    match kind {
        SetScoring::Simple => hit.len() as i64,
        SetScoring::Weight => hit.iter().map(|&a| weights[a]).sum(),
        SetScoring::Swap => -(miss.len() as i64),
        SetScoring::WSwap => -miss.iter().map(|&a| weights[a]).sum::<i64>(),
        SetScoring::Cc => (!hit.is_empty()) as i64,
    }
}

pub fn aggregate(op: Operator, kind: SetScoring, inst: &CdoInstance, outcome: &[bool]) -> i64 {
    let scores = inst
        .profile()
        .ballots()
        .iter()
        .map(|b| score(kind, b.bits(), outcome, inst.agenda().weights()));
    match op {
        Operator::Sum => scores.sum(),
        Operator::Egal => scores.min().unwrap(),
        Operator::Rank => unreachable!(),
    }
}

/// Best aggregate value over `space` and every outcome attaining it.
pub fn argmax(
    op: Operator,
    kind: SetScoring,
    inst: &CdoInstance,
    space: &[Vec<bool>],
) -> Option<(i64, Vec<Vec<bool>>)> {
    let values: Vec<i64> = space.iter().map(|o| aggregate(op, kind, inst, o)).collect();
    let best = *values.iter().max()?;
    let winners = space
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v == best)
        .map(|(o, _)| o.clone())
        .collect();
    Some((best, winners))
}

pub fn random_profile(rng: &mut impl Rng, n: usize, m: usize) -> Profile {
    let density = rng.gen_range(0.1..0.9);
    Profile::new(
        (0..n)
            .map(|_| Ballot::new((0..m).map(|_| rng.gen_bool(density)).collect()))
            .collect(),
    )
    .unwrap()
}

fn random_row(rng: &mut impl Rng, agenda: &Agenda<i64>) -> LinearConstraint<i64> {
    let m = agenda.len();
    let mut ids: Vec<usize> = (0..m).collect();
    ids.shuffle(rng);
    let size = rng.gen_range(1..=m);
    let chosen = &ids[..size];
    let id = |k: usize| agenda.id(k).to_string();
    match rng.gen_range(0..6) {
        // knapsack
        0 => {
            let terms: Vec<(String, i64)> =
                chosen.iter().map(|&k| (id(k), rng.gen_range(1..=9))).collect();
            let total: i64 = terms.iter().map(|t| t.1).sum();
            LinearConstraint::le(terms, rng.gen_range(0..=total))
        }
        // cardinality, any sense
        1 | 2 => {
            let terms = chosen.iter().map(|&k| (id(k), 1));
            let r = rng.gen_range(0..=size as i64);
            match rng.gen_range(0..3) {
                0 => LinearConstraint::le(terms, r),
                1 => LinearConstraint::ge(terms, r),
                _ => LinearConstraint::eq(terms, r),
            }
        }
        // implication a -> b
        3 if m >= 2 => LinearConstraint::le([(id(ids[0]), 1), (id(ids[1]), -1)], 0),
        // mixed signs
        _ => {
            let terms: Vec<(String, i64)> =
                chosen.iter().map(|&k| (id(k), rng.gen_range(-4..=4))).collect();
            let rhs = rng.gen_range(-3..=3);
            if rng.gen_bool(0.5) {
                LinearConstraint::le(terms, rhs)
            } else {
                LinearConstraint::ge(terms, rhs)
            }
        }
    }
}

/// Random instance with a non-empty feasible set described by up to three
/// random linear rows. Weights are positive unless `signed`.
pub fn random_instance(
    rng: &mut impl Rng,
    max_items: usize,
    max_voters: usize,
    signed: bool,
) -> CdoInstance {
    loop {
        let m = rng.gen_range(1..=max_items);
        let n = rng.gen_range(1..=max_voters);
        let agenda = Agenda::new((0..m).map(|k| {
            let w = if signed { rng.gen_range(-5..=9) } else { rng.gen_range(1..=9) };
            (format!("a{k}"), w)
        }))
        .unwrap();
        let rows = rng.gen_range(0..=3);
        let cs = ConstraintSet::from_constraints((0..rows).map(|_| random_row(rng, &agenda)).collect());
        if feasible(&agenda, &cs).is_empty() {
            continue;
        }
        let profile = random_profile(rng, n, m);
        return CdoInstance::unconstrained_ballots(agenda, cs, profile).unwrap();
    }
}

/// Random participatory budget: costs 1..=9, limit between the cheapest item
/// and the total cost.
pub fn random_budget(rng: &mut impl Rng, max_items: usize, max_voters: usize) -> (Vec<i64>, i64, Profile) {
    let m = rng.gen_range(1..=max_items);
    let n = rng.gen_range(1..=max_voters);
    let costs: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = costs.iter().sum();
    let limit = rng.gen_range(*costs.iter().min().unwrap()..=total);
    (costs, limit, random_profile(rng, n, m))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// Whether the chosen edges form a spanning tree: |V|-1 edges, no cycle.
pub fn is_spanning_tree(n: usize, edges: &[(usize, usize)], chosen: &[bool]) -> bool {
    if chosen.iter().filter(|&&b| b).count() + 1 != n {
        return false;
    }
    let mut dsu = Dsu((0..n).collect());
    edges
        .iter()
        .zip(chosen)
        .filter(|(_, &b)| b)
        .all(|(&(i, j), _)| dsu.union(i, j))
}

pub fn spanning_trees(graph: &Graph) -> Vec<Vec<bool>> {
    cube(graph.num_edges())
        .filter(|bits| is_spanning_tree(graph.num_nodes(), graph.edges(), bits))
        .collect()
}

/// Connected simple graph on `n` nodes: a random tree plus random extra edges.
pub fn random_graph(rng: &mut impl Rng, n: usize, max_edges: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !edges.contains(&(i, j)))
        .collect();
    rest.shuffle(rng);
    let room = max_edges.saturating_sub(edges.len()).min(rest.len());
    let extra = rng.gen_range(0..=room);
    edges.extend(rest.into_iter().take(extra));
    Graph::numbered(n, edges.into_iter().map(|(i, j)| (i, j, 1))).unwrap()
}

/// Maximum-weight spanning tree value by Kruskal.
pub fn kruskal_max(n: usize, edges: &[(usize, usize)], weight: &[i64]) -> i64 {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(weight[k]));
    let mut dsu = Dsu((0..n).collect());
    order
        .into_iter()
        .filter(|&k| dsu.union(edges[k].0, edges[k].1))
        .map(|k| weight[k])
        .sum()
}
