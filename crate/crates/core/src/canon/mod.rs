//! Canonical keys of neighbourhoods, isomorphism tests, root-fixing automorphisms and orbit
//! weights.
//!
//! A key is the edge list of a canonical relabeling, so it can be decoded back into a
//! representative neighbourhood. Fully labeled neighbourhoods with at most one in- and one
//! out-edge per label at each vertex are numbered by breadth-first search in generator
//! order; everything else goes through individualization-refinement.

mod ir;

use std::collections::VecDeque;
use std::fmt;

use base64::Engine;
use thiserror::Error;

use crate::graph::{Multigraph, VertexId};
use crate::neighborhood::{Labeling, Neighborhood, NeighborhoodError};
use ir::{ColoredGraph, EdgeCode};

/// Default refusal threshold for automorphism computations.
pub const DEFAULT_VERTEX_CAP: usize = 10_000;
/// Default bound on the number of automorphisms listed explicitly.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("neighbourhood has {vertices} vertices, above the cap {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("automorphism group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("malformed canonical key: {0}")]
    Malformed(&'static str),
    #[error("canonical key does not describe a neighbourhood: {0}")]
    Invalid(#[from] NeighborhoodError),
}

const KIND_UNLABELED: u8 = b'U';
const KIND_LABELED: u8 = b'L';
const NO_ROOT: u32 = u32::MAX;

/// Byte string identifying the isomorphism class of a (doubly) rooted, possibly labeled
/// neighbourhood. Equal keys mean isomorphic neighbourhoods and conversely.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self, CanonError> {
        let key = CanonicalKey(bytes);
        key.parse()?;
        Ok(key)
    }

    pub fn to_base64(&self) -> String {
        base64::engine::general_purpose::STANDARD.encode(&self.0)
    }

    pub fn from_base64(s: &str) -> Result<Self, CanonError> {
        let bytes =
            base64::engine::general_purpose::STANDARD.decode(s).map_err(|_| CanonError::Malformed("not base64"))?;
        CanonicalKey::from_bytes(bytes)
    }

    pub fn is_labeled(&self) -> bool {
        self.0.first() == Some(&KIND_LABELED)
    }

    pub fn is_doubly_rooted(&self) -> bool {
        self.parse().map(|p| p.second != NO_ROOT).unwrap_or(false)
    }

    pub fn vertex_count(&self) -> usize {
        self.parse().map(|p| p.n as usize).unwrap_or(0)
    }

    fn build(kind: u8, rank: usize, n: usize, root: u32, second: u32, edges: &[EdgeCode]) -> Self {
        let mut bytes = Vec::with_capacity(21 + 12 * edges.len());
        bytes.push(kind);
        for x in [rank as u32, n as u32, root, second, edges.len() as u32] {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
        for &(a, b, l) in edges {
            for x in [a, b, l] {
                bytes.extend_from_slice(&x.to_le_bytes());
            }
        }
        CanonicalKey(bytes)
    }

    fn parse(&self) -> Result<ParsedKey, CanonError> {
        let b = &self.0;
        let kind = *b.first().ok_or(CanonError::Malformed("empty"))?;
        if kind != KIND_UNLABELED && kind != KIND_LABELED {
            return Err(CanonError::Malformed("unknown kind byte"));
        }
        let word = |i: usize| -> Result<u32, CanonError> {
            b.get(1 + 4 * i..5 + 4 * i)
                .map(|s| u32::from_le_bytes(s.try_into().unwrap()))
                .ok_or(CanonError::Malformed("truncated"))
        };
        let (rank, n, root, second, m) = (word(0)?, word(1)?, word(2)?, word(3)?, word(4)? as usize);
        if b.len() != 21 + 12 * m {
            return Err(CanonError::Malformed("length does not match edge count"));
        }
        let edges = (0..m)
            .map(|k| Ok((word(5 + 3 * k)?, word(6 + 3 * k)?, word(7 + 3 * k)?)))
            .collect::<Result<Vec<_>, CanonError>>()?;
        Ok(ParsedKey { labeled: kind == KIND_LABELED, rank, n, root, second, edges })
    }

    /// A neighbourhood in the class of this key, with the given radius.
    pub fn decode(&self, radius: usize) -> Result<Neighborhood, CanonError> {
        let p = self.parse()?;
        let edges = p.edges.iter().map(|&(a, b, _)| (a as usize, b as usize)).collect();
        let graph = Multigraph::new(p.n as usize, edges).map_err(NeighborhoodError::from)?;
        let labeling = p.labeled.then(|| Labeling::new(p.rank as usize, p.edges.iter().map(|e| e.2).collect()));
        let nb = if p.second == NO_ROOT {
            Neighborhood::new(graph, p.root as usize, radius, labeling)?
        } else {
            Neighborhood::new_doubly_rooted(graph, p.root as usize, p.second as usize, radius, labeling)?
        };
        Ok(nb)
    }
}

struct ParsedKey {
    labeled: bool,
    rank: u32,
    n: u32,
    root: u32,
    second: u32,
    edges: Vec<EdgeCode>,
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_base64())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_base64())
    }
}

fn colored_graph(nb: &Neighborhood) -> ColoredGraph {
    let g = nb.graph();
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut types = Vec::new();
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        let l = nb.label(e);
        let (t32, h32) = (t as u32, h as u32);
        if l == 0 {
            adj[t].push((h32, 0));
            adj[h].push((t32, 0));
            edges.push((t32.min(h32), t32.max(h32), 0));
            types.push(0);
        } else {
            adj[t].push((h32, 2 * l - 1));
            adj[h].push((t32, 2 * l));
            edges.push((t32, h32, l));
            types.extend([2 * l - 1, 2 * l]);
        }
    }
    types.sort_unstable();
    types.dedup();
    let mut colors = vec![0; n];
    colors[nb.root()] = 1;
    if let Some(y) = nb.second_root() {
        colors[y] = if y == nb.root() { 3 } else { 2 };
    }
    ColoredGraph { adj, arc_types: types, colors, edges }
}

fn kind_and_rank(nb: &Neighborhood) -> (u8, usize) {
    match nb.rank() {
        Some(rank) => (KIND_LABELED, rank),
        None => (KIND_UNLABELED, 0),
    }
}

fn key_from_positions(nb: &Neighborhood, position: &[u32], edges: &[EdgeCode]) -> CanonicalKey {
    let (kind, rank) = kind_and_rank(nb);
    let second = nb.second_root().map_or(NO_ROOT, |y| position[y]);
    CanonicalKey::build(kind, rank, nb.vertex_count(), position[nb.root()], second, edges)
}

/// Breadth-first numbering from the root, scanning `a_1, a_1^-1, ..., a_n, a_n^-1` at each
/// vertex. Only meaningful for partial Schreier neighbourhoods.
fn label_bfs_positions(nb: &Neighborhood) -> Option<Vec<u32>> {
    let l = nb.labeling()?;
    let g = nb.graph();
    let n = g.vertex_count();
    let slots = 2 * l.rank + 2;
    let mut step = vec![usize::MAX; n * slots];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        let label = l.labels[e] as usize;
        step[t * slots + 2 * label] = h;
        step[h * slots + 2 * label + 1] = t;
    }
    let mut position = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut queue = VecDeque::from([nb.root()]);
    position[nb.root()] = next;
    next += 1;
    while let Some(v) = queue.pop_front() {
        for s in 2..slots {
            let w = step[v * slots + s];
            if w != usize::MAX && position[w] == u32::MAX {
                position[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    (next as usize == n).then_some(position)
}

pub fn canonical_key(nb: &Neighborhood) -> CanonicalKey {
    if nb.is_partial_schreier() {
        if let Some(position) = label_bfs_positions(nb) {
            let cg = colored_graph(nb);
            return key_from_positions(nb, &position, &cg.encode(&position));
        }
    }
    let cg = colored_graph(nb);
    let result = ir::search(&cg);
    key_from_positions(nb, &result.position, &result.encoding)
}

/// True iff a root-, second-root- and label-preserving isomorphism exists.
pub fn isomorphic(a: &Neighborhood, b: &Neighborhood) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.second_root().is_some() == b.second_root().is_some()
        && a.rank() == b.rank()
        && canonical_key(a) == canonical_key(b)
}

fn guard(nb: &Neighborhood, cap: usize) -> Result<(), CanonError> {
    if nb.vertex_count() > cap {
        return Err(CanonError::TooLarge { vertices: nb.vertex_count(), cap });
    }
    Ok(())
}

/// The full group of automorphisms fixing the root (and the second root, if any), as
/// vertex permutations sorted with the identity first.
pub fn automorphisms_fixing_root(nb: &Neighborhood) -> Result<Vec<Vec<VertexId>>, CanonError> {
    automorphisms_fixing_root_capped(nb, DEFAULT_VERTEX_CAP, DEFAULT_GROUP_CAP)
}

pub fn automorphisms_fixing_root_capped(
    nb: &Neighborhood,
    vertex_cap: usize,
    group_cap: usize,
) -> Result<Vec<Vec<VertexId>>, CanonError> {
    guard(nb, vertex_cap)?;
    let cg = colored_graph(nb);
    let perms = ir::all_automorphisms(&cg, group_cap).map_err(|cap| CanonError::GroupTooLarge { cap })?;
    let mut perms: Vec<Vec<VertexId>> =
        perms.into_iter().map(|p| p.into_iter().map(|v| v as usize).collect()).collect();
    let edge_ok = |p: &Vec<VertexId>| preserves_edges(nb, p);
    debug_assert!(perms.iter().all(edge_ok));
    perms.sort();
    Ok(perms)
}

fn preserves_edges(nb: &Neighborhood, p: &[VertexId]) -> bool {
    let g = nb.graph();
    let norm = |a: usize, b: usize, l: u32| if l == 0 { (a.min(b), a.max(b), 0) } else { (a, b, l) };
    let mut before: Vec<_> = g.edges().iter().enumerate().map(|(e, &(a, b))| norm(a, b, nb.label(e))).collect();
    let mut after: Vec<_> = g.edges().iter().enumerate().map(|(e, &(a, b))| norm(p[a], p[b], nb.label(e))).collect();
    before.sort_unstable();
    after.sort_unstable();
    before == after
}

/// All automorphisms of a plain multigraph (no roots, no labels) as vertex permutations,
/// sorted. Automorphisms that only permute parallel edges or flip loops are not listed.
pub fn graph_automorphisms(g: &Multigraph, group_cap: usize) -> Result<Vec<Vec<VertexId>>, CanonError> {
    let n = g.vertex_count();
    if n > DEFAULT_VERTEX_CAP {
        return Err(CanonError::TooLarge { vertices: n, cap: DEFAULT_VERTEX_CAP });
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(g.edge_count());
    for &(a, b) in g.edges() {
        let (a, b) = (a as u32, b as u32);
        adj[a as usize].push((b, 0));
        adj[b as usize].push((a, 0));
        edges.push((a.min(b), a.max(b), 0));
    }
    let cg = ColoredGraph { adj, arc_types: vec![0], colors: vec![0; n], edges };
    let perms = ir::all_automorphisms(&cg, group_cap).map_err(|cap| CanonError::GroupTooLarge { cap })?;
    let mut perms: Vec<Vec<VertexId>> =
        perms.into_iter().map(|p| p.into_iter().map(|v| v as usize).collect()).collect();
    perms.sort();
    Ok(perms)
}

/// Orbits of the root-fixing automorphism group: `orbit[v]` is the smallest vertex in the
/// orbit of `v`.
pub fn root_stabilizer_orbits(nb: &Neighborhood) -> Result<Vec<VertexId>, CanonError> {
    guard(nb, DEFAULT_VERTEX_CAP)?;
    let result = ir::search(&colored_graph(nb));
    Ok(result.orbits.into_iter().map(|v| v as usize).collect())
}

/// `w_U(y)`: the size of the orbit of `y` under automorphisms of `U` fixing the root (and
/// the second root, if one is set).
pub fn orbit_weight(nb: &Neighborhood, y: VertexId) -> Result<usize, CanonError> {
    let orbits = root_stabilizer_orbits(nb)?;
    Ok(orbits.iter().filter(|&&o| o == orbits[y]).count())
}
