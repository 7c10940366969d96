use rand::seq::index;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domains::Graph;
use crate::error::{CdoError, Result};
use crate::model::{Ballot, Profile};
use crate::num::Weight;

/// Random connected simple graph with unit edge costs.
///
/// A random node starts as the connected part. While some node is outside
/// it, a uniformly chosen (inside, outside) pair becomes an edge. The
/// remaining edges are drawn uniformly without replacement from the absent
/// pairs.
pub fn gen_connected_graph<W: Weight>(
    num_nodes: usize,
    num_edges: usize,
    seed: u64,
) -> Result<Graph<W>> {
    let max = num_nodes * num_nodes.saturating_sub(1) / 2;
    if num_nodes == 0 || num_edges + 1 < num_nodes || num_edges > max {
        return Err(CdoError::invalid(format!(
            "{num_edges} edges do not fit a connected simple graph on {num_nodes} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inside = vec![false; num_nodes];
    inside[rng.gen_range(0..num_nodes)] = true;
    let mut present = vec![vec![false; num_nodes]; num_nodes];
    let mut edges = Vec::with_capacity(num_edges);
    for _ in 1..num_nodes {
        let ins: Vec<usize> = (0..num_nodes).filter(|&v| inside[v]).collect();
        let outs: Vec<usize> = (0..num_nodes).filter(|&v| !inside[v]).collect();
        let pick = rng.gen_range(0..ins.len() * outs.len());
        let (u, v) = (ins[pick / outs.len()], outs[pick % outs.len()]);
        inside[v] = true;
        present[u][v] = true;
        present[v][u] = true;
        edges.push((u, v, W::one()));
    }
    let absent: Vec<(usize, usize)> = (0..num_nodes)
        .flat_map(|i| (i + 1..num_nodes).map(move |j| (i, j)))
        .filter(|&(i, j)| !present[i][j])
        .collect();
    let extra = num_edges + 1 - num_nodes;
    for k in index::sample(&mut rng, absent.len(), extra) {
        let (i, j) = absent[k];
        edges.push((i, j, W::one()));
    }
    Graph::numbered(num_nodes, edges)
}

/// Voters by items matrix of reals in `(0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseProfile {
    entries: Vec<Vec<f64>>,
}

impl BaseProfile {
    pub fn new(entries: Vec<Vec<f64>>) -> Result<Self> {
        let width = entries.first().map_or(0, Vec::len);
        for row in &entries {
            if row.len() != width {
                return Err(CdoError::LengthMismatch {
                    expected: width,
                    found: row.len(),
                });
            }
            if let Some(v) = row.iter().find(|&&v| !(v > 0.0 && v <= 1.0)) {
                return Err(CdoError::invalid(format!("entry {v} outside (0, 1]")));
            }
        }
        Ok(BaseProfile { entries })
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn voters(&self) -> usize {
        self.entries.len()
    }

    pub fn items(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }
}

/// Uniform entries `(k + 1) / 2^53` for a uniform 53-bit `k`.
pub fn gen_base_profile(voters: usize, items: usize, seed: u64) -> BaseProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (1u64 << 53) as f64;
    let entries = (0..voters)
        .map(|_| {
            (0..items)
                .map(|_| ((rng.next_u64() >> 11) + 1) as f64 / scale)
                .collect()
        })
        .collect();
    BaseProfile { entries }
}

/// Each voter approves exactly the items whose entry is at most `p`.
pub fn threshold_profile(bp: &BaseProfile, p: f64) -> Result<Profile> {
    Profile::new(
        bp.entries
            .iter()
            .map(|row| Ballot::new(row.iter().map(|&v| v <= p).collect()))
            .collect(),
    )
}
