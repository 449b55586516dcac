//! Subgroup to Schreier graph: Stallings folding of a wedge of petals, then completion of
//! missing generator slots by hanging tree branches.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::graph::{Multigraph, VertexId};
use crate::word::{Generator, Word};

use super::{SchreierError, SchreierGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubgroupError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("generator {position} uses a{index} but the rank is {rank}")]
    WordOutOfRange { position: usize, index: u32, rank: usize },
    #[error("empty generating set with depth 0 describes no finite piece of the tree")]
    Degenerate,
    #[error(transparent)]
    Schreier(#[from] SchreierError),
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }
}

/// Folds the oriented labeled edges until no vertex has two out- or two in-edges with the
/// same label. Returns the merged vertex representative map and the surviving edges.
fn fold(vertex_count: usize, mut edges: Vec<(usize, usize, u32)>) -> (UnionFind, Vec<(usize, usize, u32)>) {
    let mut uf = UnionFind((0..vertex_count).collect());
    loop {
        let mut changed = false;
        let mut slot: BTreeMap<(usize, u32, bool), usize> = BTreeMap::new();
        for &(t, h, l) in &edges {
            let (t, h) = (uf.find(t), uf.find(h));
            for (key, target) in [((t, l, false), h), ((h, l, true), t)] {
                let target = uf.find(target);
                match slot.get(&key) {
                    Some(&other) if uf.find(other) != target => {
                        let (a, b) = (uf.find(other), target);
                        uf.0[a.max(b)] = a.min(b);
                        changed = true;
                    }
                    Some(_) => {}
                    None => {
                        slot.insert(key, target);
                    }
                }
            }
        }
        for e in edges.iter_mut() {
            *e = (uf.find(e.0), uf.find(e.1), e.2);
        }
        edges.sort_unstable();
        edges.dedup();
        if !changed {
            return (uf, edges);
        }
    }
}

/// Schreier graph of the subgroup generated by `gens` in the free group of rank `rank`.
///
/// Finite index gives the complete graph. Otherwise every vertex of the folded core with a
/// missing slot gets a branch of the labeled tree, `depth` levels deep, and the result is
/// marked truncated.
pub fn from_subgroup(gens: &[Word], rank: usize, depth: usize) -> Result<SchreierGraph, SubgroupError> {
    if rank == 0 {
        return Err(SubgroupError::ZeroRank);
    }
    for (position, w) in gens.iter().enumerate() {
        let index = w.max_index();
        if index as usize > rank {
            return Err(SubgroupError::WordOutOfRange { position, index, rank });
        }
    }
    let petals: Vec<Word> = gens.iter().map(Word::reduce).filter(|w| !w.is_empty()).collect();
    if petals.is_empty() && depth == 0 {
        return Err(SubgroupError::Degenerate);
    }

    let mut vertex_count = 1;
    let mut edges = Vec::new();
    for w in &petals {
        let mut at = 0;
        for (k, g) in w.letters().iter().enumerate() {
            let next = if k + 1 == w.len() {
                0
            } else {
                vertex_count += 1;
                vertex_count - 1
            };
            edges.push(if g.inverse { (next, at, g.index) } else { (at, next, g.index) });
            at = next;
        }
    }
    let (mut uf, folded) = fold(vertex_count, edges);

    // Renumber core vertices breadth-first from the root.
    let root = uf.find(0);
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(t, h, _) in &folded {
        adjacency.entry(t).or_default().push(h);
        adjacency.entry(h).or_default().push(t);
    }
    let mut local: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if !local.contains_key(&w) {
                local.insert(w, local.len());
                queue.push_back(w);
            }
        }
    }
    let mut n = local.len();
    let mut labeled: Vec<(VertexId, VertexId, u32)> =
        folded.iter().map(|&(t, h, l)| (local[&t], local[&h], l)).collect();
    labeled.sort_unstable();

    let mut filled = vec![vec![false; 2 * rank]; n];
    for &(t, h, l) in &labeled {
        filled[t][2 * (l as usize - 1)] = true;
        filled[h][2 * (l as usize - 1) + 1] = true;
    }
    let complete = filled.iter().all(|f| f.iter().all(|&x| x));
    if !complete {
        // (vertex, letter used to arrive, levels left)
        let mut frontier: VecDeque<(VertexId, Option<Generator>, usize)> = VecDeque::new();
        for v in 0..n {
            frontier.push_back((v, None, depth));
        }
        while let Some((v, arrived, left)) = frontier.pop_front() {
            if left == 0 {
                continue;
            }
            for g in Generator::all(rank) {
                let slot = 2 * (g.index as usize - 1) + g.inverse as usize;
                let back = arrived.map(Generator::inverse);
                if Some(g) == back || (arrived.is_none() && filled[v][slot]) {
                    continue;
                }
                let w = n;
                n += 1;
                filled.push(vec![false; 2 * rank]);
                labeled.push(if g.inverse { (w, v, g.index) } else { (v, w, g.index) });
                frontier.push_back((w, Some(g), left - 1));
            }
        }
    }
    let graph = Multigraph::new(n, labeled.iter().map(|&(t, h, _)| (t, h)).collect()).map_err(SchreierError::from)?;
    let labels = labeled.iter().map(|e| e.2).collect();
    Ok(SchreierGraph::new(graph, 0, rank, labels, !complete)?)
}
