//! Schreier structures on balls of infinite regular graphs, built radius by radius.
//!
//! The edges of `U_{R+L}` are assigned a label and an orientation in order of their radius
//! (the larger distance of their endpoints), depth first, subject to "at most one outgoing
//! and one incoming `a_i`-edge per vertex". Value order is hinted by a Schreier structure
//! on the closed-up ball, so a consistent chain is usually found without backtracking. A
//! state that failed once is remembered by the canonical key of the partially labeled
//! ball, and the search is cut off after `budget` assignments.

use std::collections::HashSet;

use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::graph::{Multigraph, VertexId};
use crate::lazy::{lazy_ball, LazyError, LazyGraph, LazyVertex};
use crate::neighborhood::{Labeling, Neighborhood};
use crate::schreier::Violation;

use super::{close_up, schreier_structure, FactorizeError};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Node budget from `SCHREIER_BUDGET`, or one million.
pub fn default_budget() -> u64 {
    std::env::var("SCHREIER_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error(transparent)]
    Lazy(#[from] LazyError),
    #[error(transparent)]
    Factorize(#[from] FactorizeError),
    #[error("degree {0} is not even")]
    OddDegree(usize),
    #[error("search budget of {nodes} nodes exhausted; deepest consistent radius {deepest:?}")]
    BudgetExhausted { deepest: Option<usize>, nodes: u64 },
    #[error("no consistent structure exists on the ball (deepest consistent radius {deepest:?})")]
    Infeasible { deepest: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtendOptions {
    pub budget: u64,
    pub lookahead: usize,
    pub seed: u64,
}

impl ExtendOptions {
    pub fn new(seed: u64) -> Self {
        ExtendOptions { budget: default_budget(), lookahead: 1, seed }
    }
}

/// A labeled ball of radius `radius` with the chain of its restrictions to radii
/// `0..=radius` and the labeled lookahead ball it extends to.
#[derive(Debug, Clone)]
pub struct Extension {
    pub radius: usize,
    pub ball: Neighborhood,
    pub vertices: Vec<LazyVertex>,
    pub chain: Vec<Neighborhood>,
    pub lookahead_ball: Neighborhood,
    pub nodes: u64,
}

/// Every `(vertex, label)` where a labeled ball breaks the Schreier rule: more than one
/// outgoing or incoming `a_i`-edge anywhere, or not exactly one at a vertex with no
/// missing edges. Unlabeled edges count as a violation at their tail with label 0.
pub fn ball_violations(nb: &Neighborhood) -> Vec<Violation> {
    let Some(l) = nb.labeling() else {
        return vec![Violation { vertex: nb.root(), label: 0, outgoing: 0, incoming: 0 }];
    };
    let n = nb.vertex_count();
    let mut out = vec![0usize; n * (l.rank + 1)];
    let mut inc = vec![0usize; n * (l.rank + 1)];
    for (e, &(t, h)) in nb.graph().edges().iter().enumerate() {
        let i = l.labels[e] as usize;
        out[t * (l.rank + 1) + i] += 1;
        inc[h * (l.rank + 1) + i] += 1;
    }
    let mut violations = Vec::new();
    for v in 0..n {
        for i in 0..=l.rank {
            let (o, k) = (out[v * (l.rank + 1) + i], inc[v * (l.rank + 1) + i]);
            let bad = if i == 0 {
                o > 0
            } else if nb.deficit(v) == 0 {
                o != 1 || k != 1
            } else {
                o > 1 || k > 1
            };
            if bad {
                violations.push(Violation { vertex: v, label: i as u32, outgoing: o, incoming: k });
            }
        }
    }
    violations
}

pub fn extend_structure<G: LazyGraph + ?Sized>(g: &G, radius: usize, seed: u64) -> Result<Extension, ExtendError> {
    extend_structure_with(g, radius, ExtendOptions::new(seed))
}

struct Search<'a> {
    graph: &'a Multigraph,
    rank: usize,
    order: Vec<usize>,
    /// `level_end[r]`: number of edges (in `order`) of radius at most `r`.
    level_end: Vec<usize>,
    candidates: Vec<Vec<(u32, bool)>>,
    tail: Vec<VertexId>,
    label: Vec<u32>,
    out_used: Vec<bool>,
    in_used: Vec<bool>,
}

impl Search<'_> {
    fn orient(&self, e: usize, flip: bool) -> (VertexId, VertexId) {
        let (a, b) = self.graph.endpoints(e);
        if flip {
            (b, a)
        } else {
            (a, b)
        }
    }

    fn try_assign(&mut self, e: usize, (l, flip): (u32, bool)) -> bool {
        let (t, h) = self.orient(e, flip);
        let (so, si) = (t * (self.rank + 1) + l as usize, h * (self.rank + 1) + l as usize);
        if self.out_used[so] || self.in_used[si] {
            return false;
        }
        self.out_used[so] = true;
        self.in_used[si] = true;
        self.tail[e] = t;
        self.label[e] = l;
        true
    }

    fn unassign(&mut self, e: usize) {
        let l = self.label[e] as usize;
        let t = self.tail[e];
        let (a, b) = self.graph.endpoints(e);
        let h = if t == a { b } else { a };
        self.out_used[t * (self.rank + 1) + l] = false;
        self.in_used[h * (self.rank + 1) + l] = false;
        self.label[e] = 0;
    }

    /// Labeled copy of the ball with edges of radius at most `r` labeled, the rest left
    /// unlabeled.
    fn partial(&self, base: &Neighborhood, r: usize, all_edges: bool) -> Neighborhood {
        let mut labels = vec![0u32; self.graph.edge_count()];
        let mut edges = self.graph.edges().to_vec();
        for &e in &self.order[..self.level_end[r]] {
            labels[e] = self.label[e];
            let (a, b) = edges[e];
            edges[e] = if self.tail[e] == a { (a, b) } else { (b, a) };
        }
        let keep: Vec<usize> = if all_edges {
            (0..edges.len()).collect()
        } else {
            let mut k = self.order[..self.level_end[r]].to_vec();
            k.sort_unstable();
            k
        };
        let vertex_count = if all_edges {
            base.vertex_count()
        } else {
            (0..base.vertex_count()).filter(|&v| base.dist(v) <= r).count()
        };
        let sub = Multigraph::new(vertex_count, keep.iter().map(|&e| edges[e]).collect())
            .expect("ball prefixes are closed under edges of smaller radius");
        let degree = self.graph.degree(0) + base.deficit(0);
        let deficits = (0..vertex_count).map(|v| degree - sub.degree(v)).collect();
        let labeling = Labeling::new(self.rank, keep.iter().map(|&e| labels[e]).collect());
        let radius = if all_edges { base.radius() } else { r };
        Neighborhood::new(sub, 0, radius, Some(labeling)).expect("prefix of a ball").with_deficits(deficits)
    }
}

pub fn extend_structure_with<G: LazyGraph + ?Sized>(
    g: &G,
    radius: usize,
    options: ExtendOptions,
) -> Result<Extension, ExtendError> {
    let degree = g.degree();
    if degree % 2 == 1 {
        return Err(ExtendError::OddDegree(degree));
    }
    let rank = degree / 2;
    let outer = radius + options.lookahead;
    let big = lazy_ball(g, &g.root(), outer)?;
    let base = big.neighborhood.forget();
    let graph = base.graph();

    let closed = close_up(&base, degree, options.seed)?;
    let hint = schreier_structure(&closed, options.seed)?;
    let hint_edges = hint.labeled_edges();

    let level: Vec<usize> = graph.edges().iter().map(|&(a, b)| base.dist(a).max(base.dist(b))).collect();
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by_key(|&e| (level[e], e));
    let level_end: Vec<usize> = (0..=outer).map(|r| order.iter().filter(|&&e| level[e] <= r).count()).collect();
    let candidates = (0..graph.edge_count())
        .map(|e| {
            let (a, b) = graph.endpoints(e);
            let (ht, _, hl) = hint_edges[e];
            let hinted = (hl, ht != a);
            let flips: &[bool] = if a == b { &[false] } else { &[false, true] };
            let mut c = vec![hinted];
            for l in 1..=rank as u32 {
                for &f in flips {
                    if (l, f) != hinted {
                        c.push((l, f));
                    }
                }
            }
            c
        })
        .collect();

    let mut s = Search {
        graph,
        rank,
        order,
        level_end,
        candidates,
        tail: vec![0; graph.edge_count()],
        label: vec![0; graph.edge_count()],
        out_used: vec![false; graph.vertex_count() * (rank + 1)],
        in_used: vec![false; graph.vertex_count() * (rank + 1)],
    };

    let total = s.order.len();
    let mut failed: HashSet<CanonicalKey> = HashSet::new();
    let mut next_choice = vec![0usize; total + 1];
    let mut nodes = 0u64;
    let mut deepest: Option<usize> = None;
    let mut p = 0usize;
    // Radius whose edges end exactly at position `p`, if any.
    let boundary = |s: &Search, p: usize| (0..=outer).rev().find(|&r| s.level_end[r] == p);

    'search: loop {
        if p == total {
            break 'search;
        }
        let e = s.order[p];
        let mut advanced = false;
        while next_choice[p] < s.candidates[e].len() {
            let c = s.candidates[e][next_choice[p]];
            next_choice[p] += 1;
            nodes += 1;
            if nodes > options.budget {
                return Err(ExtendError::BudgetExhausted { deepest, nodes: options.budget });
            }
            if !s.try_assign(e, c) {
                continue;
            }
            let q = p + 1;
            if let Some(r) = boundary(&s, q) {
                if !failed.is_empty() && failed.contains(&canonical_key(&s.partial(&base, r, true))) {
                    s.unassign(e);
                    continue;
                }
                deepest = Some(deepest.map_or(r, |d| d.max(r)));
            }
            advanced = true;
            break;
        }
        if advanced {
            p += 1;
            next_choice[p] = 0;
            continue;
        }
        // Every value for position `p` failed: backtrack.
        if p == 0 {
            return Err(ExtendError::Infeasible { deepest });
        }
        if let Some(r) = boundary(&s, p) {
            failed.insert(canonical_key(&s.partial(&base, r, true)));
        }
        p -= 1;
        s.unassign(s.order[p]);
    }

    let chain: Vec<Neighborhood> = (0..=radius).map(|r| s.partial(&base, r, false)).collect();
    let lookahead_ball = s.partial(&base, outer, false);
    let ball = chain[radius].clone();
    let vertices = big.vertices[..ball.vertex_count()].to_vec();
    Ok(Extension { radius, ball, vertices, chain, lookahead_ball, nodes })
}
