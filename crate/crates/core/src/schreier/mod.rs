//! Schreier graphs: rooted multigraphs whose edges are oriented and labeled by the free
//! generators `a_1, ..., a_n`, with one incoming and one outgoing `a_i`-edge per vertex.

mod cycles;
mod stallings;

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeId, GraphError, Multigraph, RootedMultigraph, VertexId};
use crate::neighborhood::{self, Labeling, Neighborhood};
use crate::word::{Generator, Word};

pub use cycles::{ACycle, ACyclePartition};
pub use stallings::{from_subgroup, SubgroupError};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rank must be positive")]
    ZeroRank,
    #[error("label vector has {found} entries for {expected} edges")]
    LabelCount { expected: usize, found: usize },
    #[error("edge {edge} carries label {label}, outside 1..={rank}")]
    LabelOutOfRange { edge: EdgeId, label: u32, rank: usize },
    #[error("word uses generator a{index} but the rank is {rank}")]
    WordOutOfRange { index: u32, rank: usize },
    #[error("the path spelling the word leaves the graph")]
    PathLeavesGraph,
    #[error("a{label}-edges do not form a permutation of the vertices")]
    NotAPermutation { label: u32 },
    #[error("permutation {index} has length {found}, expected {expected}")]
    PermutationLength { index: usize, expected: usize, found: usize },
}

/// One `(vertex, label)` pair where the in/out rule fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub vertex: VertexId,
    pub label: u32,
    pub outgoing: usize,
    pub incoming: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Answer of a membership query. Truncated graphs answer `Unknown` when the path leaves the
/// part of the graph that was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl Membership {
    pub fn is_yes(self) -> bool {
        self == Membership::Yes
    }
}

/// A rooted multigraph with a Schreier labeling. Edge `e` is oriented from the first to the
/// second stored endpoint and labeled `a_{labels[e]}`.
///
/// Construction checks ranges and connectivity only; use [`SchreierGraph::validate`] for
/// the in/out rule. `truncated` marks a finite piece of an infinite Schreier graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    base: RootedMultigraph,
    rank: usize,
    labels: Vec<u32>,
    truncated: bool,
    slot_edge: Vec<EdgeId>,
}

impl SchreierGraph {
    pub fn new(
        graph: Multigraph,
        root: VertexId,
        rank: usize,
        labels: Vec<u32>,
        truncated: bool,
    ) -> Result<Self, SchreierError> {
        if rank == 0 {
            return Err(SchreierError::ZeroRank);
        }
        if labels.len() != graph.edge_count() {
            return Err(SchreierError::LabelCount { expected: graph.edge_count(), found: labels.len() });
        }
        for (edge, &label) in labels.iter().enumerate() {
            if label == 0 || label as usize > rank {
                return Err(SchreierError::LabelOutOfRange { edge, label, rank });
            }
        }
        let bound = graph.max_degree().max(2 * rank);
        let base = RootedMultigraph::new(graph, root, bound)?;
        let n = base.vertex_count();
        let mut slot_edge = vec![NONE; n * 2 * rank];
        for (e, &(t, h)) in base.edges().iter().enumerate() {
            let i = labels[e] as usize - 1;
            for s in [t * 2 * rank + 2 * i, h * 2 * rank + 2 * i + 1] {
                if slot_edge[s] == NONE {
                    slot_edge[s] = e;
                }
            }
        }
        Ok(SchreierGraph { base, rank, labels, truncated, slot_edge })
    }

    /// Builds from oriented labeled edges `(tail, head, label)`.
    pub fn from_labeled_edges(
        vertex_count: usize,
        rank: usize,
        edges: &[(VertexId, VertexId, u32)],
        root: VertexId,
    ) -> Result<Self, SchreierError> {
        let graph = Multigraph::new(vertex_count, edges.iter().map(|&(t, h, _)| (t, h)).collect())?;
        SchreierGraph::new(graph, root, rank, edges.iter().map(|e| e.2).collect(), false)
    }

    /// A fully labeled neighbourhood as a Schreier graph rooted at its root. Mark balls cut
    /// out of larger graphs as `truncated`.
    pub fn from_neighborhood(nb: &Neighborhood, truncated: bool) -> Result<Self, SchreierError> {
        let labeling = nb.labeling().ok_or(SchreierError::LabelCount { expected: nb.edge_count(), found: 0 })?;
        SchreierGraph::new(nb.graph().clone(), nb.root(), labeling.rank, labeling.labels.clone(), truncated)
    }

    /// Builds the Schreier graph of permutations `perms[i-1]` acting as `a_i`: one edge
    /// `v -> perms[i-1][v]` per vertex and generator.
    pub fn from_permutations(perms: &[Vec<VertexId>], root: VertexId) -> Result<Self, SchreierError> {
        let n = perms.first().map_or(0, Vec::len);
        let mut edges = Vec::with_capacity(n * perms.len());
        for (k, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(SchreierError::PermutationLength { index: k, expected: n, found: p.len() });
            }
            edges.extend(p.iter().enumerate().map(|(v, &w)| (v, w, k as u32 + 1)));
        }
        SchreierGraph::from_labeled_edges(n, perms.len(), &edges, root)
    }

    pub fn base(&self) -> &RootedMultigraph {
        &self.base
    }

    pub fn graph(&self) -> &Multigraph {
        self.base.graph()
    }

    pub fn root(&self) -> VertexId {
        self.base.root()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count()
    }

    /// Oriented labeled edges `(tail, head, label)` in edge-id order.
    pub fn labeled_edges(&self) -> Vec<(VertexId, VertexId, u32)> {
        self.graph().edges().iter().zip(&self.labels).map(|(&(t, h), &l)| (t, h, l)).collect()
    }

    pub fn labeling(&self) -> Labeling {
        Labeling::new(self.rank, self.labels.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        self.check_counts(|o, k| o == 1 && k == 1)
    }

    /// The rule for a finite piece of a Schreier graph: at most one outgoing and one
    /// incoming `a_i`-edge at every vertex.
    pub fn validate_partial(&self) -> ValidationReport {
        self.check_counts(|o, k| o <= 1 && k <= 1)
    }

    fn check_counts(&self, ok: impl Fn(usize, usize) -> bool) -> ValidationReport {
        let n = self.vertex_count();
        let mut out = vec![0usize; n * self.rank];
        let mut inc = vec![0usize; n * self.rank];
        for (e, &(t, h)) in self.graph().edges().iter().enumerate() {
            let i = self.labels[e] as usize - 1;
            out[t * self.rank + i] += 1;
            inc[h * self.rank + i] += 1;
        }
        let mut violations = Vec::new();
        for v in 0..n {
            for i in 0..self.rank {
                let (o, k) = (out[v * self.rank + i], inc[v * self.rank + i]);
                if !ok(o, k) {
                    violations.push(Violation { vertex: v, label: i as u32 + 1, outgoing: o, incoming: k });
                }
            }
        }
        ValidationReport { valid: violations.is_empty(), violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    fn check_word(&self, w: &Word) -> Result<(), SchreierError> {
        match w.max_index() {
            i if i as usize > self.rank => Err(SchreierError::WordOutOfRange { index: i, rank: self.rank }),
            _ => Ok(()),
        }
    }

    /// Edge leaving `v` along `g` (for `a_i^-1`, the incoming `a_i`-edge).
    pub fn edge_along(&self, v: VertexId, g: Generator) -> Option<EdgeId> {
        if g.index == 0 || g.index as usize > self.rank {
            return None;
        }
        let e = self.slot_edge[v * 2 * self.rank + 2 * (g.index as usize - 1) + g.inverse as usize];
        (e != NONE).then_some(e)
    }

    pub fn follow(&self, v: VertexId, g: Generator) -> Option<VertexId> {
        let (t, h) = self.graph().endpoints(self.edge_along(v, g)?);
        Some(if g.inverse { t } else { h })
    }

    /// Endpoint of the path spelling `w` from `start`.
    pub fn read_word(&self, start: VertexId, w: &Word) -> Result<VertexId, SchreierError> {
        self.check_word(w)?;
        w.letters().iter().try_fold(start, |v, &g| self.follow(v, g)).ok_or(SchreierError::PathLeavesGraph)
    }

    /// The same labeled graph rooted at the endpoint of `g` read from the root.
    pub fn shift_root(&self, g: &Word) -> Result<SchreierGraph, SchreierError> {
        let root = self.read_word(self.root(), g)?;
        Ok(SchreierGraph { base: self.base.with_root(root)?, ..self.clone() })
    }

    pub fn with_root(&self, root: VertexId) -> Result<SchreierGraph, SchreierError> {
        Ok(SchreierGraph { base: self.base.with_root(root)?, ..self.clone() })
    }

    /// Whether `h` lies in the subgroup `H` of this graph, i.e. `h` read from the root
    /// returns to the root.
    pub fn contains(&self, h: &Word) -> Result<Membership, SchreierError> {
        self.check_word(h)?;
        let h = h.reduce();
        Ok(match self.read_word(self.root(), &h) {
            Ok(end) if end == self.root() => Membership::Yes,
            Ok(_) => Membership::No,
            Err(_) if self.truncated => Membership::Unknown,
            Err(_) => Membership::No,
        })
    }

    /// Free generators of `H` from a breadth-first spanning tree: one reduced word
    /// `w(u) a_i w(v)^-1` per non-tree edge `u -> v` labeled `a_i`.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let n = self.vertex_count();
        let mut path: Vec<Option<Word>> = vec![None; n];
        let mut tree_edge = vec![false; self.edge_count()];
        path[self.root()] = Some(Word::empty());
        let mut queue = VecDeque::from([self.root()]);
        while let Some(v) = queue.pop_front() {
            for g in Generator::all(self.rank) {
                let Some(e) = self.edge_along(v, g) else { continue };
                let w = self.follow(v, g).unwrap();
                if path[w].is_none() {
                    let mut word = path[v].clone().unwrap();
                    word.push(g);
                    path[w] = Some(word);
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
        self.labeled_edges()
            .into_iter()
            .enumerate()
            .filter(|&(e, _)| !tree_edge[e])
            .map(|(_, (t, h, l))| {
                let (wt, wh) = (path[t].as_ref().unwrap(), path[h].as_ref().unwrap());
                let mut word = wt.clone();
                word.push(Generator::new(l));
                word.concat(&wh.inverse()).reduce()
            })
            .collect()
    }

    /// Underlying rooted multigraph with labels and orientations dropped.
    pub fn forget(&self) -> RootedMultigraph {
        self.base.clone()
    }

    /// Labeled ball of radius `r` around `center`.
    pub fn ball(&self, center: VertexId, r: usize) -> Neighborhood {
        let labeling = self.labeling();
        neighborhood::ball(self.graph(), Some(&labeling), None, center, r).expect("center is a vertex").0
    }

    /// The whole graph as a labeled neighbourhood of the root.
    pub fn to_neighborhood(&self) -> Neighborhood {
        let radius = self.graph().distances(self.root()).into_iter().flatten().max().unwrap_or(0);
        self.ball(self.root(), radius)
    }

    /// Copy with the same labels and new edge orientations.
    fn with_edges(&self, edges: Vec<(VertexId, VertexId)>) -> SchreierGraph {
        let graph = Multigraph::new(self.vertex_count(), edges).expect("same vertex set");
        SchreierGraph::new(graph, self.root(), self.rank, self.labels.clone(), self.truncated)
            .expect("relabeling keeps ranges and connectivity")
    }
}
