//! From a 2n-regular multigraph to a Schreier structure: Euler tour, balanced orientation,
//! perfect matchings of the bipartite double, 2-factorization, labels. Also the closing up
//! of boundary balls and the radius-by-radius extension search on infinite graphs.

mod extend;
mod matching;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EdgeId, GraphError, Multigraph, RootedMultigraph, VertexId};
use crate::neighborhood::Neighborhood;
use crate::schreier::{SchreierError, SchreierGraph};

pub use extend::{
    ball_violations, default_budget, extend_structure, extend_structure_with, ExtendError, ExtendOptions, Extension,
};
pub use matching::{perfect_matchings, BipartiteMultigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizeError {
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: VertexId, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cut set has odd size {0}")]
    OddCut(usize),
    #[error("vertex {vertex} has {found} edge ends counting boundary slots, expected {expected}")]
    NotRegularSource { vertex: VertexId, found: usize, expected: usize },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Schreier(#[from] SchreierError),
}

/// Closed walk using every edge once: edge `edges[k]` is traversed from `vertices[k]` to
/// `vertices[k+1]` (indices mod the length).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTour {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

impl EulerTour {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Each edge as an ordered pair `(tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedOrientation {
    pub arcs: Vec<(VertexId, VertexId)>,
}

/// Factor index `1..=n` per edge, together with the orientation that makes each factor a
/// union of directed cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactorization {
    pub factor: Vec<u32>,
    pub orientation: BalancedOrientation,
}

/// Hierholzer's algorithm from `start`.
pub fn euler_tour(g: &Multigraph, start: VertexId) -> Result<EulerTour, FactorizeError> {
    for v in 0..g.vertex_count() {
        if g.degree(v) % 2 == 1 {
            return Err(FactorizeError::OddDegree { vertex: v, degree: g.degree(v) });
        }
    }
    if g.edge_count() == 0 {
        return Err(FactorizeError::NoEdges);
    }
    let mut used = vec![false; g.edge_count()];
    let mut next = vec![0usize; g.vertex_count()];
    // Stack of (vertex, edge used to arrive).
    let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
    let mut circuit: Vec<(VertexId, Option<EdgeId>)> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let inc = g.incidences(v);
        while next[v] < inc.len() && used[inc[next[v]].edge] {
            next[v] += 1;
        }
        if next[v] == inc.len() {
            circuit.push(stack.pop().unwrap());
        } else {
            let i = inc[next[v]];
            used[i.edge] = true;
            stack.push((i.other, Some(i.edge)));
        }
    }
    if used.iter().any(|u| !u) {
        return Err(FactorizeError::Disconnected);
    }
    circuit.reverse();
    let vertices: Vec<VertexId> = circuit[..circuit.len() - 1].iter().map(|c| c.0).collect();
    let edges = circuit[1..].iter().map(|c| c.1.unwrap()).collect();
    Ok(EulerTour { edges, vertices })
}

/// Orients every edge along the tour; in- and out-degree are then `deg/2` everywhere.
pub fn orient_by_tour(g: &Multigraph, tour: &EulerTour) -> BalancedOrientation {
    let mut arcs = g.edges().to_vec();
    let k = tour.len();
    for (idx, &e) in tour.edges.iter().enumerate() {
        arcs[e] = (tour.vertices[idx], tour.vertices[(idx + 1) % k]);
    }
    let mut balance = vec![0i64; g.vertex_count()];
    for &(t, h) in &arcs {
        balance[t] += 1;
        balance[h] -= 1;
    }
    assert!(balance.iter().all(|&b| b == 0), "tour orientation must be balanced");
    BalancedOrientation { arcs }
}

/// Bipartite double of an oriented graph: out-copy `v` on the left, in-copy `v` on the
/// right, one edge per arc. A loop becomes the edge from `v`'s out-copy to its in-copy.
pub fn bipartite_double(n: usize, orientation: &BalancedOrientation) -> BipartiteMultigraph {
    BipartiteMultigraph::new(n, orientation.arcs.clone())
}

/// Splits a connected 2n-regular multigraph into n spanning 2-regular factors.
pub fn two_factorize(g: &Multigraph, seed: u64) -> Result<TwoFactorization, FactorizeError> {
    let n_vertices = g.vertex_count();
    let degree = g.degree(0);
    if degree == 0 || degree % 2 == 1 {
        return Err(FactorizeError::OddDegree { vertex: 0, degree });
    }
    for v in 0..n_vertices {
        if g.degree(v) != degree {
            return Err(GraphError::NotRegular { vertex: v, degree: g.degree(v), expected: degree }.into());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = rng.gen_range(0..n_vertices);
    let tour = euler_tour(g, start)?;
    let orientation = orient_by_tour(g, &tour);
    let n = degree / 2;
    let matchings = perfect_matchings(&bipartite_double(n_vertices, &orientation), n)
        .ok_or_else(|| FactorizeError::Internal("regular bipartite graph without a perfect matching".into()))?;
    let mut order: Vec<u32> = (1..=n as u32).collect();
    order.shuffle(&mut rng);
    let mut factor = vec![0u32; g.edge_count()];
    for (k, m) in matchings.iter().enumerate() {
        for &e in m {
            factor[e] = order[k];
        }
    }
    let result = TwoFactorization { factor, orientation };
    check_factorization(g, &result)?;
    Ok(result)
}

fn check_factorization(g: &Multigraph, f: &TwoFactorization) -> Result<(), FactorizeError> {
    let n = g.degree(0) / 2;
    let mut out = vec![0usize; g.vertex_count() * n];
    let mut inc = vec![0usize; g.vertex_count() * n];
    for (e, &(t, h)) in f.orientation.arcs.iter().enumerate() {
        let k = f.factor[e] as usize;
        if k == 0 || k > n {
            return Err(FactorizeError::Internal(format!("edge {e} has no factor")));
        }
        out[t * n + k - 1] += 1;
        inc[h * n + k - 1] += 1;
    }
    if out.iter().chain(&inc).any(|&c| c != 1) {
        return Err(FactorizeError::Internal("factor is not spanning 2-regular".into()));
    }
    Ok(())
}

/// A Schreier structure on a finite connected rooted 2n-regular multigraph. Edge ids are
/// kept; factor `k` with its matching orientation becomes `a_k`.
pub fn schreier_structure(g: &RootedMultigraph, seed: u64) -> Result<SchreierGraph, FactorizeError> {
    let f = two_factorize(g.graph(), seed)?;
    let graph = Multigraph::new(g.vertex_count(), f.orientation.arcs.clone())?;
    let sg = SchreierGraph::new(graph, g.root(), g.degree(0) / 2, f.factor, false)?;
    debug_assert!(sg.is_valid());
    Ok(sg)
}

/// Closes up a ball of a 2n-regular graph: the boundary slots (deficits) are listed in
/// (vertex, slot) order, shuffled by `pairing_seed`, and paired by new edges. The ball's
/// edges keep their ids; the new edges come after them.
pub fn close_up(u: &Neighborhood, degree: usize, pairing_seed: u64) -> Result<RootedMultigraph, FactorizeError> {
    let g = u.graph();
    let mut slots = Vec::new();
    for v in 0..g.vertex_count() {
        let found = g.degree(v) + u.deficit(v);
        if found != degree {
            return Err(FactorizeError::NotRegularSource { vertex: v, found, expected: degree });
        }
        slots.extend(std::iter::repeat_n(v, u.deficit(v)));
    }
    if slots.len() % 2 == 1 {
        return Err(FactorizeError::OddCut(slots.len()));
    }
    slots.shuffle(&mut ChaCha8Rng::seed_from_u64(pairing_seed));
    let mut edges = g.edges().to_vec();
    edges.extend(slots.chunks(2).map(|p| (p[0], p[1])));
    let closed = Multigraph::new(g.vertex_count(), edges)?;
    Ok(RootedMultigraph::new(closed, u.root(), degree)?)
}
