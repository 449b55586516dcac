//! Finite balls `U_r(x)`, edge neighbourhoods, and optional generator labels on their edges.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{GraphError, Multigraph, RootedMultigraph, VertexId};
use crate::word::{Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeighborhoodError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {vertex} is not in the graph ({vertex_count} vertices)")]
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    #[error("vertex {vertex} lies at distance {distance:?} from the root, beyond radius {radius}")]
    BeyondRadius { vertex: VertexId, distance: Option<usize>, radius: usize },
    #[error("label vector has {found} entries for {expected} edges")]
    LabelCount { expected: usize, found: usize },
    #[error("edge {edge} carries label {label}, outside 0..={rank}")]
    LabelOutOfRange { edge: usize, label: u32, rank: usize },
}

/// Generator labels on edges. Edge `e` runs from the first to the second endpoint stored in
/// the graph and carries `a_{labels[e]}`; label 0 marks an edge that is not labeled yet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    pub rank: usize,
    pub labels: Vec<u32>,
}

impl Labeling {
    pub fn new(rank: usize, labels: Vec<u32>) -> Self {
        Labeling { rank, labels }
    }

    fn check(&self, graph: &Multigraph) -> Result<(), NeighborhoodError> {
        if self.labels.len() != graph.edge_count() {
            return Err(NeighborhoodError::LabelCount { expected: graph.edge_count(), found: self.labels.len() });
        }
        for (edge, &label) in self.labels.iter().enumerate() {
            if label as usize > self.rank {
                return Err(NeighborhoodError::LabelOutOfRange { edge, label, rank: self.rank });
            }
        }
        Ok(())
    }
}

/// A finite rooted graph seen as a neighbourhood of radius `radius`.
///
/// Single-rooted: every vertex is within `radius` of the root. Doubly rooted (an edge
/// neighbourhood): every vertex is within `radius` of one of the two roots.
/// `deficit[v]` counts edges of the ambient graph at `v` that the neighbourhood cut off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    graph: Multigraph,
    root: VertexId,
    second_root: Option<VertexId>,
    radius: usize,
    dist: Vec<usize>,
    deficit: Vec<usize>,
    labeling: Option<Labeling>,
}

impl Neighborhood {
    pub fn new(
        graph: Multigraph,
        root: VertexId,
        radius: usize,
        labeling: Option<Labeling>,
    ) -> Result<Self, NeighborhoodError> {
        Self::build(graph, root, None, radius, labeling)
    }

    pub fn new_doubly_rooted(
        graph: Multigraph,
        root: VertexId,
        second_root: VertexId,
        radius: usize,
        labeling: Option<Labeling>,
    ) -> Result<Self, NeighborhoodError> {
        Self::build(graph, root, Some(second_root), radius, labeling)
    }

    fn build(
        graph: Multigraph,
        root: VertexId,
        second_root: Option<VertexId>,
        radius: usize,
        labeling: Option<Labeling>,
    ) -> Result<Self, NeighborhoodError> {
        let n = graph.vertex_count();
        if n == 0 {
            return Err(GraphError::Empty.into());
        }
        for v in std::iter::once(root).chain(second_root) {
            if v >= n {
                return Err(NeighborhoodError::VertexOutOfRange { vertex: v, vertex_count: n });
            }
        }
        if let Some(l) = &labeling {
            l.check(&graph)?;
        }
        let from_root = graph.distances(root);
        let from_second = second_root.map(|y| graph.distances(y));
        for v in 0..n {
            let near = |d: &[Option<usize>]| d[v].is_some_and(|d| d <= radius);
            if !near(&from_root) && !from_second.as_deref().is_some_and(near) {
                return Err(NeighborhoodError::BeyondRadius { vertex: v, distance: from_root[v], radius });
            }
        }
        let dist = from_root.into_iter().map(|d| d.unwrap_or(usize::MAX)).collect();
        Ok(Neighborhood { graph, root, second_root, radius, dist, deficit: vec![0; n], labeling })
    }

    /// Replaces the per-vertex boundary deficits.
    pub fn with_deficits(mut self, deficit: Vec<usize>) -> Self {
        assert_eq!(deficit.len(), self.vertex_count());
        self.deficit = deficit;
        self
    }

    pub fn with_labeling(&self, labeling: Option<Labeling>) -> Result<Self, NeighborhoodError> {
        if let Some(l) = &labeling {
            l.check(&self.graph)?;
        }
        Ok(Neighborhood { labeling, ..self.clone() })
    }

    /// The same neighbourhood with labels and orientations dropped.
    pub fn forget(&self) -> Self {
        Neighborhood { labeling: None, ..self.clone() }
    }

    /// The same graph with a second root; the radius condition is not re-checked.
    pub fn with_second_root(&self, y: VertexId) -> Self {
        assert!(y < self.vertex_count());
        Neighborhood { second_root: Some(y), ..self.clone() }
    }

    /// Exchanges the two roots of a doubly rooted neighbourhood.
    pub fn swap_roots(&self) -> Option<Self> {
        let y = self.second_root?;
        let dist = self.graph.distances(y).into_iter().map(|d| d.unwrap_or(usize::MAX)).collect();
        Some(Neighborhood { root: y, second_root: Some(self.root), dist, ..self.clone() })
    }

    pub fn without_second_root(&self) -> Self {
        Neighborhood { second_root: None, ..self.clone() }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn second_root(&self) -> Option<VertexId> {
        self.second_root
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Distance from the root inside the neighbourhood.
    pub fn dist(&self, v: VertexId) -> usize {
        self.dist[v]
    }

    pub fn deficit(&self, v: VertexId) -> usize {
        self.deficit[v]
    }

    pub fn deficits(&self) -> &[usize] {
        &self.deficit
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    pub fn rank(&self) -> Option<usize> {
        self.labeling.as_ref().map(|l| l.rank)
    }

    pub fn is_labeled(&self) -> bool {
        self.labeling.is_some()
    }

    /// Label of edge `e` (0 if unlabeled or the neighbourhood carries no labels).
    pub fn label(&self, e: usize) -> u32 {
        self.labeling.as_ref().map_or(0, |l| l.labels[e])
    }

    pub fn to_rooted(&self) -> RootedMultigraph {
        let bound = self.graph.max_degree().max(1);
        RootedMultigraph::new(self.graph.clone(), self.root, bound).expect("neighbourhoods are connected")
    }

    /// True if every edge is labeled and no vertex has two outgoing or two incoming edges
    /// with the same label.
    pub fn is_partial_schreier(&self) -> bool {
        let Some(l) = &self.labeling else { return false };
        let mut used = vec![false; self.vertex_count() * 2 * (l.rank + 1)];
        let slot = |v: usize, label: u32, incoming: bool| (v * (l.rank + 1) + label as usize) * 2 + incoming as usize;
        for (e, &(t, h)) in self.graph.edges().iter().enumerate() {
            let label = l.labels[e];
            if label == 0 {
                return false;
            }
            for s in [slot(t, label, false), slot(h, label, true)] {
                if used[s] {
                    return false;
                }
                used[s] = true;
            }
        }
        true
    }

    /// Vertex reached from `v` along `g`, if the corresponding labeled edge is present.
    pub fn follow(&self, v: VertexId, g: Generator) -> Option<VertexId> {
        let l = self.labeling.as_ref()?;
        self.graph.incidences(v).iter().find_map(|inc| {
            let (t, h) = self.graph.endpoints(inc.edge);
            if l.labels[inc.edge] != g.index {
                return None;
            }
            match g.inverse {
                false if t == v => Some(h),
                true if h == v => Some(t),
                _ => None,
            }
        })
    }

    /// Endpoint of the path spelling `w` from `start`; `None` if the path leaves the
    /// neighbourhood.
    pub fn read_word(&self, start: VertexId, w: &Word) -> Option<VertexId> {
        w.letters().iter().try_fold(start, |v, &g| self.follow(v, g))
    }

    /// Ball of radius `r` around `center` inside this neighbourhood.
    pub fn sub_ball(&self, center: VertexId, r: usize) -> (Neighborhood, Vec<VertexId>) {
        ball(&self.graph, self.labeling.as_ref(), Some(&self.deficit), center, r)
            .expect("center lies in the neighbourhood")
    }

    /// Edge neighbourhood of radius `r`: the subgraph induced on `B_r(x) ∪ B_r(y)`, rooted at
    /// `(x, y)`. Numbering is breadth-first from `x`.
    pub fn edge_neighborhood(&self, x: VertexId, y: VertexId, r: usize) -> (Neighborhood, Vec<VertexId>) {
        let dx = self.graph.distances(x);
        let dy = self.graph.distances(y);
        let keep: Vec<bool> =
            (0..self.vertex_count()).map(|v| dx[v].is_some_and(|d| d <= r) || dy[v].is_some_and(|d| d <= r)).collect();
        let (graph, labeling, origin, deficit) =
            induced(&self.graph, self.labeling.as_ref(), Some(&self.deficit), &keep, x);
        let local = |v: VertexId| origin.iter().position(|&o| o == v).expect("root kept");
        let nb = Neighborhood::new_doubly_rooted(graph, 0, local(y), r, labeling)
            .expect("edge neighbourhood is within radius of its roots")
            .with_deficits(deficit);
        (nb, origin)
    }

    /// Restriction to radius `r` about the root (or about both roots when doubly rooted).
    pub fn restrict(&self, r: usize) -> Neighborhood {
        match self.second_root {
            None => self.sub_ball(self.root, r).0,
            Some(y) => self.edge_neighborhood(self.root, y, r).0,
        }
    }
}

/// Subgraph induced on `keep`, renumbered breadth-first from `start`. Returns the graph,
/// the restricted labeling, the map new id -> old id, and the new deficits.
fn induced(
    graph: &Multigraph,
    labeling: Option<&Labeling>,
    deficit: Option<&[usize]>,
    keep: &[bool],
    start: VertexId,
) -> (Multigraph, Option<Labeling>, Vec<VertexId>, Vec<usize>) {
    let mut local = vec![usize::MAX; graph.vertex_count()];
    let mut origin = Vec::new();
    let mut queue = VecDeque::from([start]);
    local[start] = 0;
    origin.push(start);
    while let Some(v) = queue.pop_front() {
        for inc in graph.incidences(v) {
            let w = inc.other;
            if keep[w] && local[w] == usize::MAX {
                local[w] = origin.len();
                origin.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        if local[a] != usize::MAX && local[b] != usize::MAX {
            edges.push((local[a], local[b]));
            labels.push(labeling.map_or(0, |l| l.labels[e]));
        }
    }
    let sub = Multigraph::new(origin.len(), edges).expect("endpoints are renumbered in range");
    let deficits = origin
        .iter()
        .enumerate()
        .map(|(i, &v)| graph.degree(v) - sub.degree(i) + deficit.map_or(0, |d| d[v]))
        .collect();
    let labeling = labeling.map(|l| Labeling::new(l.rank, labels));
    (sub, labeling, origin, deficits)
}

/// The ball `U_r(center)` of a finite graph, numbered breadth-first from the center in
/// incidence order. Also returns the map from ball ids to graph ids.
pub fn ball(
    graph: &Multigraph,
    labeling: Option<&Labeling>,
    deficit: Option<&[usize]>,
    center: VertexId,
    r: usize,
) -> Result<(Neighborhood, Vec<VertexId>), NeighborhoodError> {
    let n = graph.vertex_count();
    if center >= n {
        return Err(NeighborhoodError::VertexOutOfRange { vertex: center, vertex_count: n });
    }
    let dist = graph.distances(center);
    let keep: Vec<bool> = dist.iter().map(|d| d.is_some_and(|d| d <= r)).collect();
    let (sub, labeling, origin, deficits) = induced(graph, labeling, deficit, &keep, center);
    Ok((Neighborhood::new(sub, 0, r, labeling)?.with_deficits(deficits), origin))
}

/// Unlabeled ball of a rooted multigraph around its root.
pub fn rooted_ball(g: &RootedMultigraph, r: usize) -> Neighborhood {
    ball(g.graph(), None, None, g.root(), r).expect("root is a vertex").0
}
