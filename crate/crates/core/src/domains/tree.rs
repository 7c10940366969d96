use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{CdoError, Result};
use crate::model::{Agenda, ConstraintSet, LinearConstraint};
use crate::num::{self, Weight};

/// Undirected simple graph with a cost per edge. Edges are stored with the
/// lower endpoint first and sorted, which fixes the agenda order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph<W> {
    nodes: Vec<String>,
    edges: Vec<(usize, usize)>,
    costs: Vec<W>,
}

impl<W: Weight> Graph<W> {
    pub fn new<S: Into<String>>(
        nodes: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize, W)>,
    ) -> Result<Self> {
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut seen_nodes = HashSet::new();
        for n in &nodes {
            if !seen_nodes.insert(n.as_str()) {
                return Err(CdoError::DuplicateId(n.clone()));
            }
        }
        let mut list: Vec<((usize, usize), W)> = Vec::new();
        for (i, j, cost) in edges {
            if i >= nodes.len() || j >= nodes.len() {
                return Err(CdoError::invalid(format!("edge ({i}, {j}) leaves the node range")));
            }
            if i == j {
                return Err(CdoError::invalid(format!("self-loop on node {i}")));
            }
            list.push(((i.min(j), i.max(j)), cost));
        }
        list.sort_by_key(|&(e, _)| e);
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            let (i, j) = w[0].0;
            return Err(CdoError::invalid(format!("duplicate edge ({i}, {j})")));
        }
        Ok(Graph {
            nodes,
            edges: list.iter().map(|&(e, _)| e).collect(),
            costs: list.iter().map(|&(_, c)| c).collect(),
        })
    }

    /// Nodes named `0..n`.
    pub fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self> {
        Self::new((0..n).map(|k| k.to_string()), edges)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn costs(&self) -> &[W] {
        &self.costs
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Position of an edge in canonical order.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i.min(j), i.max(j))).ok()
    }

    /// Agenda item id of edge `k`: `a_{u}_{v}`.
    pub fn edge_id(&self, k: usize) -> String {
        let (i, j) = self.edges[k];
        format!("a_{}_{}", self.nodes[i], self.nodes[j])
    }

    fn flow_id(&self, from: usize, to: usize) -> String {
        format!("y_{}_{}", self.nodes[from], self.nodes[to])
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.num_edges()).collect();
        components(self.num_nodes(), all.iter().map(|&k| self.edges[k])) <= 1
    }

    /// Edge-list text: a node count line, then `i j cost` per edge with
    /// 0-based node indices. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| CdoError::Parse("graph file is empty".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| CdoError::Parse(format!("bad node count `{header}`")))?;
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || CdoError::Parse(format!("line {}: expected `i j cost`", lineno + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let i: usize = fields[0].parse().map_err(|_| bad())?;
            let j: usize = fields[1].parse().map_err(|_| bad())?;
            let cost: i64 = fields[2].parse().map_err(|_| bad())?;
            edges.push((i, j, num::from_i64(cost)?));
        }
        Self::numbered(n, edges)
    }

    /// Inverse of [`Graph::parse_text`]; node names are dropped.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.num_nodes());
        for (&(i, j), c) in self.edges.iter().zip(&self.costs) {
            let _ = writeln!(out, "{i} {j} {c}");
        }
        out
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut count = n;
    for (i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Single-commodity flow model of the spanning trees of `graph`.
///
/// One binary item per edge (canonical order) and two flow variables
/// `y_{u}_{v}`, `y_{v}_{u}` in `[0, |V|-1]` per edge. The root (first node)
/// sends one unit to every other node: net inflow is `1 - |V|` at the root
/// and 1 elsewhere. Flow only runs over chosen edges, exactly `|V|-1` edges
/// are chosen, and nothing flows into the root.
pub fn encode_spanning_tree<W: Weight>(graph: &Graph<W>) -> Result<(Agenda<W>, ConstraintSet<W>)> {
    if !graph.is_connected() {
        log::warn!("graph is disconnected; it has no spanning tree");
    }
    let agenda = Agenda::new(
        (0..graph.num_edges()).map(|k| (graph.edge_id(k), graph.costs()[k])),
    )?;
    let n = graph.num_nodes();
    let span: W = num::from_count(n.saturating_sub(1))?;
    let one = W::one();
    let minus = W::zero() - one;
    let mut cs = ConstraintSet::new();
    for &(i, j) in graph.edges() {
        cs.add_aux(graph.flow_id(i, j), W::zero(), span)?;
        cs.add_aux(graph.flow_id(j, i), W::zero(), span)?;
    }
    for node in 0..n {
        let mut terms: Vec<(String, W)> = Vec::new();
        for &(i, j) in graph.edges() {
            let other = if node == i {
                j
            } else if node == j {
                i
            } else {
                continue;
            };
            terms.push((graph.flow_id(other, node), one));
            terms.push((graph.flow_id(node, other), minus));
        }
        let rhs = if node == 0 { W::zero() - span } else { one };
        cs.push(LinearConstraint::eq(terms, rhs));
    }
    for (k, &(i, j)) in graph.edges().iter().enumerate() {
        let x = graph.edge_id(k);
        for y in [graph.flow_id(i, j), graph.flow_id(j, i)] {
            cs.push(LinearConstraint::le([(y, one), (x.clone(), W::zero() - span)], W::zero()));
        }
    }
    cs.push(LinearConstraint::eq(
        (0..graph.num_edges()).map(|k| (graph.edge_id(k), one)),
        span,
    ));
    for &(i, j) in graph.edges() {
        if i == 0 || j == 0 {
            let other = if i == 0 { j } else { i };
            cs.push(LinearConstraint::eq([(graph.flow_id(other, 0), one)], W::zero()));
        }
    }
    Ok((agenda, cs))
}

/// Canonical edges selected by `outcome`.
pub fn decode_tree<W: Weight>(outcome: &[bool], graph: &Graph<W>) -> Result<Vec<(usize, usize)>> {
    if outcome.len() != graph.num_edges() {
        return Err(CdoError::LengthMismatch {
            expected: graph.num_edges(),
            found: outcome.len(),
        });
    }
    Ok(graph
        .edges()
        .iter()
        .zip(outcome)
        .filter(|(_, &b)| b)
        .map(|(&e, _)| e)
        .collect())
}

/// Whether `edges` are `|V|-1` distinct graph edges forming a connected,
/// acyclic subgraph.
pub fn verify_spanning_tree<W: Weight>(edges: &[(usize, usize)], graph: &Graph<W>) -> bool {
    let n = graph.num_nodes();
    if edges.len() + 1 != n.max(1) {
        return false;
    }
    let mut seen = HashSet::new();
    for &(i, j) in edges {
        if graph.edge_index(i, j).is_none() || !seen.insert((i.min(j), i.max(j))) {
            return false;
        }
    }
    // With |V|-1 edges, a single component means no cycle either.
    components(n, edges.iter().copied()) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_feasible;

    fn example() -> Graph<i64> {
        // H=0, I=1, J=2, K=3
        Graph::new(
            ["H", "I", "J", "K"],
            [(0, 1, 1), (0, 3, 2), (1, 2, 4), (1, 3, 3), (2, 3, 2)],
        )
        .unwrap()
    }

    #[test]
    fn agenda_follows_edge_order() {
        let (agenda, _) = encode_spanning_tree(&example()).unwrap();
        assert_eq!(agenda.ids(), ["a_H_I", "a_H_K", "a_I_J", "a_I_K", "a_J_K"]);
        assert_eq!(agenda.weights(), [1, 2, 4, 3, 2]);
    }

    #[test]
    fn example_has_eight_trees() {
        let g = example();
        let (agenda, cs) = encode_spanning_tree(&g).unwrap();
        let trees = enumerate_feasible(&agenda, &cs, 24).unwrap();
        assert_eq!(trees.len(), 8);
        for t in trees {
            assert!(verify_spanning_tree(&decode_tree(&t.bits, &g).unwrap(), &g));
        }
    }

    #[test]
    fn verification_is_direct() {
        let g = example();
        assert!(verify_spanning_tree(&[(0, 1), (0, 3), (1, 2)], &g));
        assert!(!verify_spanning_tree(&[(0, 1), (0, 3), (1, 3)], &g));
        assert!(!verify_spanning_tree(&[(0, 1), (0, 3)], &g));
        assert!(!verify_spanning_tree(&[(0, 1), (0, 2), (0, 3)], &g));
    }

    #[test]
    fn trees_and_triangles() {
        let path = Graph::<i64>::numbered(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let (a, cs) = encode_spanning_tree(&path).unwrap();
        let all = enumerate_feasible(&a, &cs, 24).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].bits, [true, true]);
        let tri = Graph::<i64>::numbered(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let (a, cs) = encode_spanning_tree(&tri).unwrap();
        assert_eq!(enumerate_feasible(&a, &cs, 24).unwrap().len(), 3);
    }

    #[test]
    fn disconnected_graph_has_no_tree() {
        let g = Graph::<i64>::numbered(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        assert!(!g.is_connected());
        let (a, cs) = encode_spanning_tree(&g).unwrap();
        assert!(enumerate_feasible(&a, &cs, 24).unwrap().is_empty());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let g = Graph::<i64>::parse_text("# demo\n3\n2 0 5\n0 1 1\n").unwrap();
        assert_eq!(g.edges(), [(0, 1), (0, 2)]);
        assert_eq!(g.costs(), [1, 5]);
        assert_eq!(Graph::<i64>::parse_text(&g.to_text()).unwrap(), g);
        assert!(Graph::<i64>::parse_text("2\n0 0 1\n").is_err());
        assert!(Graph::<i64>::parse_text("2\n0 1 1\n1 0 1\n").is_err());
        assert!(Graph::<i64>::parse_text("2\n0 5 1\n").is_err());
        assert!(Graph::<i64>::parse_text("").is_err());
    }
}
