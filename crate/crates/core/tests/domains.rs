mod common;

use cdo_core::domains::{
    ballot_from_partial_order, decode_schedule, decode_tree, encode_budget, encode_schedule,
    encode_spanning_tree, verify_spanning_tree,
};
use cdo_core::harness::gen_connected_graph;
use cdo_core::model::{bits_to_01, enumerate_feasible, Agenda};
use cdo_core::{BudgetSpec, Graph, LinearConstraint, ScheduleSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tree_projection(graph: &Graph) -> Vec<Vec<bool>> {
    let (agenda, cs) = encode_spanning_tree(graph).unwrap();
    enumerate_feasible(&agenda, &cs, 24)
        .unwrap()
        .into_iter()
        .map(|o| o.bits)
        .collect()
}

fn lettered() -> Graph {
    Graph::new(
        ["H", "I", "J", "K"],
        [(0, 1, 1), (0, 3, 2), (1, 2, 4), (1, 3, 3), (2, 3, 2)],
    )
    .unwrap()
}

#[test]
fn lettered_graph_has_eight_trees() {
    let g = lettered();
    let (agenda, _) = encode_spanning_tree(&g).unwrap();
    assert_eq!(agenda.ids(), ["a_H_I", "a_H_K", "a_I_J", "a_I_K", "a_J_K"]);
    assert_eq!(agenda.weights(), [1, 2, 4, 3, 2]);
    let trees = tree_projection(&g);
    assert_eq!(trees.len(), 8);
    assert_eq!(trees, common::spanning_trees(&g));
    for t in &trees {
        assert!(verify_spanning_tree(&decode_tree(t, &g).unwrap(), &g));
    }
}

#[test]
fn tree_verification_by_hand() {
    let g = lettered();
    assert!(verify_spanning_tree(&[(0, 1), (0, 3), (1, 2)], &g));
    assert!(!verify_spanning_tree(&[(0, 1), (0, 3), (1, 3)], &g));
    assert!(!verify_spanning_tree(&[(0, 1), (1, 2)], &g));
}

#[test]
fn small_graph_shapes() {
    let path = Graph::numbered(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
    assert_eq!(tree_projection(&path), [vec![true; 3]]);
    let triangle = Graph::numbered(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]).unwrap();
    assert_eq!(tree_projection(&triangle).len(), 3);
    let split = Graph::numbered(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
    assert!(tree_projection(&split).is_empty());
}

#[test]
fn flow_encoding_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..50u64 {
        let n = rng.gen_range(2..=6);
        let graph = if k % 2 == 0 {
            common::random_graph(&mut rng, n, 12)
        } else {
            let max = (n * (n - 1) / 2).min(12);
            gen_connected_graph(n, rng.gen_range(n - 1..=max), k).unwrap()
        };
        let expected = common::spanning_trees(&graph);
        assert!(!expected.is_empty());
        assert_eq!(tree_projection(&graph), expected, "graph {k}: {}", graph.to_text());
    }
}

#[test]
fn complete_graphs_have_cayley_counts() {
    for n in 2..=5usize {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, 1i64)));
        let g = Graph::numbered(n, edges).unwrap();
        assert_eq!(tree_projection(&g).len(), n.pow(n as u32 - 2));
    }
}

fn jobs(m: usize) -> ScheduleSpec {
    ScheduleSpec::new((1..=m).map(|k| format!("p{k}")).collect(), vec![1; m]).unwrap()
}

fn is_permutation(order: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    order.len() == m && order.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
}

#[test]
fn schedules_are_permutations() {
    for m in 2..=4 {
        let spec = jobs(m);
        let (agenda, cs) = encode_schedule(&spec).unwrap();
        assert_eq!(agenda.len(), m * m);
        let all = enumerate_feasible(&agenda, &cs, 24).unwrap();
        assert_eq!(all.len(), (1..=m).product::<usize>());
        let mut orders: Vec<Vec<usize>> = all
            .iter()
            .map(|o| decode_schedule(&o.bits, &spec).unwrap())
            .collect();
        assert!(orders.iter().all(|o| is_permutation(o, m)));
        orders.sort();
        orders.dedup();
        assert_eq!(orders.len(), all.len());
    }
}

#[test]
fn single_job_schedule() {
    let spec = jobs(1);
    let (agenda, cs) = encode_schedule(&spec).unwrap();
    let all = enumerate_feasible(&agenda, &cs, 24).unwrap();
    assert_eq!(all.len(), 1);
    assert_eq!(decode_schedule(&all[0].bits, &spec).unwrap(), [0]);
}

#[test]
fn professor_ballot_bits() {
    let spec = ScheduleSpec::new(
        ["p1", "p2", "p3", "p4"].map(String::from).to_vec(),
        vec![3, 1, 4, 2],
    )
    .unwrap();
    let (agenda, _) = encode_schedule(&spec).unwrap();
    assert_eq!(agenda.id(4), "p1<p2");
    assert_eq!(agenda.weight(4), 1);
    assert_eq!(agenda.weight(0), 3);
    let b = ballot_from_partial_order(&spec, &[(1, 0), (1, 2), (1, 3), (0, 3), (2, 3)], &[1]).unwrap();
    assert_eq!(bits_to_01(b.bits()), [0, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 1, 0, 0, 0]);
}

fn budget_set(weights: &[i64], limit: i64) -> Vec<Vec<bool>> {
    let agenda = Agenda::new(weights.iter().enumerate().map(|(k, &w)| (format!("p{k}"), w))).unwrap();
    let cs = encode_budget(&agenda, BudgetSpec::new(limit).unwrap(), Vec::new()).unwrap();
    enumerate_feasible(&agenda, &cs, 24).unwrap().into_iter().map(|o| o.bits).collect()
}

#[test]
fn budget_sets() {
    let mut got = budget_set(&[1, 2, 3], 3);
    got.sort();
    let b = |v: [u8; 3]| v.iter().map(|&x| x == 1).collect::<Vec<bool>>();
    assert_eq!(got, [b([0, 0, 0]), b([0, 0, 1]), b([0, 1, 0]), b([1, 0, 0]), b([1, 1, 0])]);
    assert_eq!(budget_set(&[1, 2, 3], 6).len(), 8);
    assert_eq!(budget_set(&[1, 2, 3], 0), [vec![false; 3]]);
    assert!(BudgetSpec::new(-1).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let (costs, limit, _) = common::random_budget(&mut rng, 8, 1);
        let expected: Vec<Vec<bool>> = common::cube(costs.len())
            .filter(|x| x.iter().zip(&costs).filter(|(&b, _)| b).map(|(_, &c)| c).sum::<i64>() <= limit)
            .collect();
        assert_eq!(budget_set(&costs, limit), expected);
    }
}

#[test]
fn budget_extras_are_kept() {
    let agenda = Agenda::new([("a", 2i64), ("b", 2), ("c", 2)]).unwrap();
    let quota = LinearConstraint::ge([("a", 1i64), ("b", 1)], 1);
    let cs = encode_budget(&agenda, BudgetSpec::new(4).unwrap(), vec![quota]).unwrap();
    assert_eq!(cs.constraints().len(), 2);
    let all = enumerate_feasible(&agenda, &cs, 24).unwrap();
    assert!(all.iter().all(|o| o.bits[0] || o.bits[1]));
    assert_eq!(all.len(), 5);
}
