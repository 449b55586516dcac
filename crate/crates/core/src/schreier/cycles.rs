//! `a_i`-cycles and their reversal.

use crate::graph::{EdgeId, VertexId};
use crate::word::Generator;

use super::{SchreierError, SchreierGraph};

/// One orbit of the `a_i` out-edge permutation: `vertices[k] -> vertices[k+1]` along
/// `edges[k]`, cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ACycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl ACycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ACyclePartition {
    pub label: u32,
    pub cycles: Vec<ACycle>,
}

impl ACyclePartition {
    /// Index of the cycle through `v`.
    pub fn cycle_of(&self, v: VertexId) -> Option<usize> {
        self.cycles.iter().position(|c| c.vertices.contains(&v))
    }
}

impl SchreierGraph {
    /// Cycle decomposition of the `a_i` out-edge permutation, each cycle starting at its
    /// smallest vertex.
    pub fn a_cycles(&self, i: u32) -> Result<ACyclePartition, SchreierError> {
        if i == 0 || i as usize > self.rank() {
            return Err(SchreierError::WordOutOfRange { index: i, rank: self.rank() });
        }
        let n = self.vertex_count();
        let mut out_count = vec![0usize; n];
        let mut in_count = vec![0usize; n];
        for (t, h, l) in self.labeled_edges() {
            if l == i {
                out_count[t] += 1;
                in_count[h] += 1;
            }
        }
        if out_count.iter().chain(&in_count).any(|&c| c != 1) {
            return Err(SchreierError::NotAPermutation { label: i });
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = ACycle { vertices: Vec::new(), edges: Vec::new() };
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                let e = self.edge_along(v, Generator::new(i)).expect("permutation checked");
                cycle.vertices.push(v);
                cycle.edges.push(e);
                v = self.graph().endpoints(e).1;
            }
            cycles.push(cycle);
        }
        Ok(ACyclePartition { label: i, cycles })
    }

    /// Flips the orientation of every edge of `cycle`, i.e. applies `a_i -> a_i^-1` along it.
    pub fn reverse_cycle(&self, cycle: &ACycle) -> SchreierGraph {
        let mut edges = self.graph().edges().to_vec();
        for &e in &cycle.edges {
            edges[e] = (edges[e].1, edges[e].0);
        }
        self.with_edges(edges)
    }

    /// Reverses every cycle whose bit is set in `pattern` (bit `k` for cycle `k`).
    pub fn reverse_pattern(&self, partition: &ACyclePartition, pattern: u64) -> SchreierGraph {
        let mut edges = self.graph().edges().to_vec();
        for (k, cycle) in partition.cycles.iter().enumerate() {
            if pattern >> k & 1 == 1 {
                for &e in &cycle.edges {
                    edges[e] = (edges[e].1, edges[e].0);
                }
            }
        }
        self.with_edges(edges)
    }
}
