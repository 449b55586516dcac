//! Perfect matchings in regular bipartite multigraphs by Hopcroft-Karp, peeled one at a time.

use std::collections::VecDeque;

use crate::graph::EdgeId;

const NONE: usize = usize::MAX;

/// Bipartite multigraph with `n` vertices on each side; edge `e` joins left `edges[e].0` to
/// right `edges[e].1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        BipartiteMultigraph { n, edges }
    }
}

/// Maximum matching among the edges with `alive[e]`. Returns the matched edge of each left
/// vertex (`NONE` if unmatched).
fn hopcroft_karp(b: &BipartiteMultigraph, alive: &[bool]) -> Vec<EdgeId> {
    let n = b.n;
    let mut adj = vec![Vec::new(); n];
    for (e, &(l, _)) in b.edges.iter().enumerate() {
        if alive[e] {
            adj[l].push(e);
        }
    }
    let mut match_left = vec![NONE; n];
    let mut match_right = vec![NONE; n];
    let mut layer = vec![0usize; n];
    loop {
        // Layer the left side by alternating BFS from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n {
            if match_left[l] == NONE {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = NONE;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &e in &adj[l] {
                let r = b.edges[e].1;
                match match_right[r] {
                    NONE => found = true,
                    m => {
                        let l2 = b.edges[m].0;
                        if layer[l2] == NONE {
                            layer[l2] = layer[l] + 1;
                            queue.push_back(l2);
                        }
                    }
                }
            }
        }
        if !found {
            return match_left;
        }
        let mut next = vec![0usize; n];
        for l in 0..n {
            if match_left[l] == NONE {
                augment(b, &adj, l, &mut layer, &mut next, &mut match_left, &mut match_right);
            }
        }
    }
}

/// Iterative layered DFS for one augmenting path from the free left vertex `start`.
fn augment(
    b: &BipartiteMultigraph,
    adj: &[Vec<EdgeId>],
    start: usize,
    layer: &mut [usize],
    next: &mut [usize],
    match_left: &mut [EdgeId],
    match_right: &mut [EdgeId],
) -> bool {
    let mut path: Vec<(usize, EdgeId)> = Vec::new();
    let mut l = start;
    loop {
        if next[l] == adj[l].len() {
            layer[l] = NONE;
            match path.pop() {
                Some((prev, _)) => {
                    l = prev;
                    continue;
                }
                None => return false,
            }
        }
        let e = adj[l][next[l]];
        next[l] += 1;
        let r = b.edges[e].1;
        match match_right[r] {
            NONE => {
                path.push((l, e));
                for &(pl, pe) in &path {
                    match_left[pl] = pe;
                    match_right[b.edges[pe].1] = pe;
                }
                return true;
            }
            m => {
                let l2 = b.edges[m].0;
                if layer[l2] != NONE && layer[l2] == layer[l] + 1 {
                    path.push((l, e));
                    l = l2;
                }
            }
        }
    }
}

/// `k` pairwise disjoint perfect matchings covering a `k`-regular bipartite multigraph, as
/// lists of edge ids. `None` means no perfect matching was found, which cannot happen for
/// regular input.
pub fn perfect_matchings(b: &BipartiteMultigraph, k: usize) -> Option<Vec<Vec<EdgeId>>> {
    let mut alive = vec![true; b.edges.len()];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let m = hopcroft_karp(b, &alive);
        if m.contains(&NONE) {
            return None;
        }
        for &e in &m {
            alive[e] = false;
        }
        out.push(m);
    }
    Some(out)
}
