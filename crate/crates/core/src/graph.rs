//! Finite undirected multigraphs with loops, and their rooted, degree-bounded form.
//!
//! Edges have stable ids (their index in the edge list). A loop `(v, v)` shows up twice in
//! the incidence list of `v`, so it contributes 2 to the degree.

use std::collections::VecDeque;

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} has endpoint {vertex} but the graph has {vertex_count} vertices")]
    EndpointOutOfRange { edge: EdgeId, vertex: VertexId, vertex_count: usize },
    #[error("root {root} is not a vertex (graph has {vertex_count} vertices)")]
    RootOutOfRange { root: VertexId, vertex_count: usize },
    #[error("vertex {vertex} has degree {degree}, above the bound {bound}")]
    DegreeBound { vertex: VertexId, degree: usize, bound: usize },
    #[error("graph is not connected ({reached} of {vertex_count} vertices reachable from the root)")]
    Disconnected { reached: usize, vertex_count: usize },
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular { vertex: VertexId, degree: usize, expected: usize },
    #[error("graph has no vertices")]
    Empty,
}

/// One entry of an incidence list: the edge and the endpoint on the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub edge: EdgeId,
    pub other: VertexId,
}

/// Undirected multigraph on vertices `0..vertex_count`. Endpoint order of an edge is kept
/// as given, which lets labeled structures reuse it as an orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    edges: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<Incidence>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange { edge: id, vertex: w, vertex_count });
                }
            }
            incidence[u].push(Incidence { edge: id, other: v });
            incidence[v].push(Incidence { edge: id, other: u });
        }
        Ok(Multigraph { edges, incidence })
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn incidences(&self, v: VertexId) -> &[Incidence] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.incidence.iter().all(|inc| inc.len() == k)
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    /// Number of edges that share their endpoint pair with an earlier edge.
    pub fn parallel_count(&self) -> usize {
        let mut pairs: Vec<(VertexId, VertexId)> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs.windows(2).filter(|w| w[0] == w[1]).count()
    }

    /// Edge multiset as sorted unordered pairs; equal for graphs that differ only in edge
    /// order or endpoint order.
    pub fn edge_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut pairs: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        pairs
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for inc in &self.incidence[v] {
                if dist[inc.other].is_none() {
                    dist[inc.other] = Some(d + 1);
                    queue.push_back(inc.other);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances(0).iter().all(Option::is_some)
    }
}

/// Connected multigraph with a distinguished root and a degree bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedMultigraph {
    graph: Multigraph,
    root: VertexId,
    degree_bound: usize,
}

impl RootedMultigraph {
    pub fn new(graph: Multigraph, root: VertexId, degree_bound: usize) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if root >= n {
            return Err(GraphError::RootOutOfRange { root, vertex_count: n });
        }
        for v in 0..n {
            let degree = graph.degree(v);
            if degree > degree_bound {
                return Err(GraphError::DegreeBound { vertex: v, degree, bound: degree_bound });
            }
        }
        let reached = graph.distances(root).iter().filter(|d| d.is_some()).count();
        if reached != n {
            return Err(GraphError::Disconnected { reached, vertex_count: n });
        }
        Ok(RootedMultigraph { graph, root, degree_bound })
    }

    /// Builds from an edge list with the degree bound set to the maximum degree.
    pub fn from_edges(
        vertex_count: usize,
        edges: Vec<(VertexId, VertexId)>,
        root: VertexId,
    ) -> Result<Self, GraphError> {
        let graph = Multigraph::new(vertex_count, edges)?;
        let bound = graph.max_degree().max(1);
        RootedMultigraph::new(graph, root, bound)
    }

    /// Checks that every vertex has degree exactly `k`.
    pub fn require_regular(&self, k: usize) -> Result<(), GraphError> {
        for v in 0..self.vertex_count() {
            let degree = self.graph.degree(v);
            if degree != k {
                return Err(GraphError::NotRegular { vertex: v, degree, expected: k });
            }
        }
        Ok(())
    }

    /// The common degree `2n` if the graph is regular of even degree.
    pub fn even_regular_degree(&self) -> Option<usize> {
        let k = self.graph.degree(0);
        (k.is_multiple_of(2) && self.graph.is_regular(k)).then_some(k)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn with_root(&self, root: VertexId) -> Result<Self, GraphError> {
        if root >= self.vertex_count() {
            return Err(GraphError::RootOutOfRange { root, vertex_count: self.vertex_count() });
        }
        Ok(RootedMultigraph { root, ..self.clone() })
    }
}

impl std::ops::Deref for RootedMultigraph {
    type Target = Multigraph;

    fn deref(&self) -> &Multigraph {
        &self.graph
    }
}
