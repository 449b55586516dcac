//! Infinite bounded-degree graphs generated on demand, and finite balls cut out of them.
//!
//! Vertices are integer coordinate vectors. Every edge has a tail, a head and a slot; the
//! pair `(tail, slot)` identifies the edge. On labeled graphs the slot is the generator
//! index and the orientation is the Cayley orientation.

mod examples;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::Multigraph;
use crate::neighborhood::{Labeling, Neighborhood};
use crate::word::{Generator, Word};

pub use examples::{grandfather, line, tree, z2, z2_with_diagonal, Grandfather, Line, Tree, Z2};

pub type LazyVertex = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LazyEdge {
    pub tail: LazyVertex,
    pub head: LazyVertex,
    pub slot: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LazyError {
    #[error("vertex {0:?} is not part of this graph")]
    BadVertex(LazyVertex),
    #[error("vertex {vertex:?} reported degree {found}, expected {expected}")]
    Degree { vertex: LazyVertex, found: usize, expected: usize },
    #[error("the graph carries no labels")]
    Unlabeled,
    #[error("a{label}-cycle through {vertex:?} cannot be identified")]
    UndecidableCycle { vertex: LazyVertex, label: u32 },
    #[error("word uses generator a{index} but the rank is {rank}")]
    WordOutOfRange { index: u32, rank: usize },
    #[error("selector `{0}` does not name a known graph")]
    UnknownSelector(String),
}

/// On-demand graph. Queries are pure: repeated calls agree.
pub trait LazyGraph: Send + Sync {
    fn name(&self) -> String;

    fn root(&self) -> LazyVertex;

    /// The constant vertex degree.
    fn degree(&self) -> usize;

    /// Every edge incident to `v`, each listed once (a loop would be listed once too).
    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError>;

    /// Number of generators if the slots are Cayley labels.
    fn rank(&self) -> Option<usize> {
        None
    }

    /// Identifier of the `a_label`-cycle through `v`, for labeled graphs whose cycles can be
    /// named locally.
    fn cycle_id(&self, _v: &LazyVertex, _label: u32) -> Option<i64> {
        None
    }
}

impl<G: LazyGraph + ?Sized> LazyGraph for Box<G> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn root(&self) -> LazyVertex {
        (**self).root()
    }
    fn degree(&self) -> usize {
        (**self).degree()
    }
    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        (**self).edges(v)
    }
    fn rank(&self) -> Option<usize> {
        (**self).rank()
    }
    fn cycle_id(&self, v: &LazyVertex, label: u32) -> Option<i64> {
        (**self).cycle_id(v, label)
    }
}

impl<G: LazyGraph + ?Sized> LazyGraph for &G {
    fn name(&self) -> String {
        (**self).name()
    }
    fn root(&self) -> LazyVertex {
        (**self).root()
    }
    fn degree(&self) -> usize {
        (**self).degree()
    }
    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        (**self).edges(v)
    }
    fn rank(&self) -> Option<usize> {
        (**self).rank()
    }
    fn cycle_id(&self, v: &LazyVertex, label: u32) -> Option<i64> {
        (**self).cycle_id(v, label)
    }
}

/// Unlabeled view of a labeled graph.
pub struct Forgotten<G>(pub G);

impl<G: LazyGraph> LazyGraph for Forgotten<G> {
    fn name(&self) -> String {
        format!("forget({})", self.0.name())
    }
    fn root(&self) -> LazyVertex {
        self.0.root()
    }
    fn degree(&self) -> usize {
        self.0.degree()
    }
    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        self.0.edges(v)
    }
}

/// A labeled graph with the `a_label`-cycles named in `cycles` reversed.
pub struct Reversed<G> {
    pub inner: G,
    pub label: u32,
    pub cycles: BTreeSet<i64>,
}

impl<G: LazyGraph> LazyGraph for Reversed<G> {
    fn name(&self) -> String {
        format!("{} with a{}-cycles {:?} reversed", self.inner.name(), self.label, self.cycles)
    }
    fn root(&self) -> LazyVertex {
        self.inner.root()
    }
    fn degree(&self) -> usize {
        self.inner.degree()
    }
    fn rank(&self) -> Option<usize> {
        self.inner.rank()
    }
    fn cycle_id(&self, v: &LazyVertex, label: u32) -> Option<i64> {
        self.inner.cycle_id(v, label)
    }
    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        let mut edges = self.inner.edges(v)?;
        for e in edges.iter_mut() {
            if e.slot != self.label {
                continue;
            }
            let id = self
                .inner
                .cycle_id(&e.tail, e.slot)
                .ok_or_else(|| LazyError::UndecidableCycle { vertex: e.tail.clone(), label: e.slot })?;
            if self.cycles.contains(&id) {
                std::mem::swap(&mut e.tail, &mut e.head);
            }
        }
        Ok(edges)
    }
}

/// A finite ball of a lazy graph. `vertices[k]` is the lazy vertex behind ball vertex `k`;
/// ball vertices are numbered layer by layer, sorted within each layer.
#[derive(Debug, Clone)]
pub struct LazyBall {
    pub neighborhood: Neighborhood,
    pub vertices: Vec<LazyVertex>,
    /// `(tail, slot)` of each ball edge in the lazy graph.
    pub edge_ids: Vec<(LazyVertex, u32)>,
}

impl LazyBall {
    pub fn index_of(&self, v: &LazyVertex) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }
}

/// `U_r(center)` of a lazy graph, labeled when the graph is.
pub fn lazy_ball<G: LazyGraph + ?Sized>(g: &G, center: &LazyVertex, r: usize) -> Result<LazyBall, LazyError> {
    let degree = g.degree();
    let mut index: BTreeMap<LazyVertex, usize> = BTreeMap::new();
    let mut vertices = vec![center.clone()];
    let mut incident: Vec<Vec<LazyEdge>> = Vec::new();
    index.insert(center.clone(), 0);
    let mut layer = vec![center.clone()];
    for depth in 0..=r {
        let mut next: BTreeSet<LazyVertex> = BTreeSet::new();
        for v in &layer {
            let edges = g.edges(v)?;
            let found: usize = edges.iter().map(|e| if e.tail == e.head { 2 } else { 1 }).sum();
            if found != degree {
                return Err(LazyError::Degree { vertex: v.clone(), found, expected: degree });
            }
            if depth < r {
                for e in &edges {
                    for w in [&e.tail, &e.head] {
                        if !index.contains_key(w) {
                            next.insert(w.clone());
                        }
                    }
                }
            }
            incident.push(edges);
        }
        for w in &next {
            index.insert(w.clone(), vertices.len());
            vertices.push(w.clone());
        }
        layer = next.into_iter().collect();
    }
    let mut edges: BTreeMap<(usize, u32), (usize, usize)> = BTreeMap::new();
    for list in &incident {
        for e in list {
            if let (Some(&t), Some(&h)) = (index.get(&e.tail), index.get(&e.head)) {
                edges.insert((t, e.slot), (t, h));
            }
        }
    }
    let graph = Multigraph::new(vertices.len(), edges.values().copied().collect()).expect("ball ids are in range");
    let deficits = (0..vertices.len()).map(|v| degree - graph.degree(v)).collect();
    let labeling = g.rank().map(|rank| Labeling::new(rank, edges.keys().map(|k| k.1).collect()));
    let edge_ids = edges.keys().map(|&(t, s)| (vertices[t].clone(), s)).collect();
    let neighborhood =
        Neighborhood::new(graph, 0, r, labeling).expect("ball vertices are within the radius").with_deficits(deficits);
    Ok(LazyBall { neighborhood, vertices, edge_ids })
}

/// Vertex reached from `v` along `g` in a labeled lazy graph.
pub fn follow<G: LazyGraph + ?Sized>(graph: &G, v: &LazyVertex, g: Generator) -> Result<LazyVertex, LazyError> {
    let rank = graph.rank().ok_or(LazyError::Unlabeled)?;
    if g.index as usize > rank {
        return Err(LazyError::WordOutOfRange { index: g.index, rank });
    }
    graph
        .edges(v)?
        .into_iter()
        .find(|e| e.slot == g.index && if g.inverse { &e.head == v } else { &e.tail == v })
        .map(|e| if g.inverse { e.tail } else { e.head })
        .ok_or_else(|| LazyError::BadVertex(v.clone()))
}

pub fn read_word<G: LazyGraph + ?Sized>(graph: &G, start: &LazyVertex, w: &Word) -> Result<LazyVertex, LazyError> {
    w.letters().iter().try_fold(start.clone(), |v, &g| follow(graph, &v, g))
}

/// Whether `h` read from the root returns to the root.
pub fn contains<G: LazyGraph + ?Sized>(graph: &G, h: &Word) -> Result<bool, LazyError> {
    Ok(read_word(graph, &graph.root(), &h.reduce())? == graph.root())
}

/// The `a_label`-cycle through `v`, followed at most `window` steps each way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LazyCycle {
    /// A finite cycle, listed from `v` along `a_label`.
    Finite(Vec<LazyVertex>),
    /// No return within the window: `backward` (nearest first), `v`, then `forward`.
    Line { backward: Vec<LazyVertex>, forward: Vec<LazyVertex> },
}

pub fn lazy_a_cycle<G: LazyGraph + ?Sized>(
    graph: &G,
    v: &LazyVertex,
    label: u32,
    window: usize,
) -> Result<LazyCycle, LazyError> {
    let mut forward = Vec::new();
    let mut at = v.clone();
    for _ in 0..window {
        at = follow(graph, &at, Generator::new(label))?;
        if &at == v {
            let mut cycle = vec![v.clone()];
            cycle.extend(forward);
            return Ok(LazyCycle::Finite(cycle));
        }
        forward.push(at.clone());
    }
    let mut backward = Vec::new();
    let mut at = v.clone();
    for _ in 0..window {
        at = follow(graph, &at, Generator::inv(label))?;
        backward.push(at.clone());
    }
    Ok(LazyCycle::Line { backward, forward })
}

/// Parses `grandfather:<d>`, `tree:<d>`, `line`, `z2`, `z2diag`.
pub fn from_selector(selector: &str) -> Result<Box<dyn LazyGraph>, LazyError> {
    let bad = || LazyError::UnknownSelector(selector.to_string());
    let (name, arg) = match selector.split_once(':') {
        Some((n, a)) => (n, Some(a.parse::<usize>().map_err(|_| bad())?)),
        None => (selector, None),
    };
    Ok(match (name, arg) {
        ("grandfather", Some(d)) if d >= 3 => Box::new(grandfather(d)),
        ("tree", Some(d)) if d >= 2 => Box::new(tree(d)),
        ("line", None) => Box::new(line()),
        ("z2", None) => Box::new(z2()),
        ("z2diag", None) => Box::new(z2_with_diagonal()),
        _ => return Err(bad()),
    })
}

impl fmt::Debug for dyn LazyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazyGraph({})", self.name())
    }
}
