//! Words separating the subgroups of two labelings of one graph.

use std::collections::{BTreeMap, VecDeque};

use crate::schreier::{Membership, SchreierGraph};
use crate::word::{Generator, Word};

use super::MeasureError;

fn separates(a: &SchreierGraph, b: &SchreierGraph, h: &Word) -> Result<bool, MeasureError> {
    let (ma, mb) = (a.contains(h)?, b.contains(h)?);
    Ok(ma != Membership::Unknown && mb != Membership::Unknown && ma != mb)
}

fn arc_counts(sg: &SchreierGraph) -> BTreeMap<(usize, usize, u32), usize> {
    let mut out = BTreeMap::new();
    for arc in sg.labeled_edges() {
        *out.entry(arc).or_default() += 1;
    }
    out
}

/// Geodesic words from the root using only arcs present in both labelings, scanning
/// `a_1, a_1^-1, a_2, ...` at each vertex.
fn common_geodesics(a: &SchreierGraph, b: &SchreierGraph) -> Vec<Option<Word>> {
    let n = a.vertex_count();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[a.root()] = Some(Word::empty());
    let mut queue = VecDeque::from([a.root()]);
    while let Some(v) = queue.pop_front() {
        for g in Generator::all(a.rank()) {
            let (Some(wa), Some(wb)) = (a.follow(v, g), b.follow(v, g)) else { continue };
            if wa != wb || words[wa].is_some() {
                continue;
            }
            let mut w = words[v].clone().expect("visited");
            w.push(g);
            words[wa] = Some(w);
            queue.push_back(wa);
        }
    }
    words
}

/// Candidates `w(γ) a_i w(γ')^-1` for every arc `u -> v` present in only one of the two
/// labelings, `γ`, `γ'` common geodesics to `u`, `v`. Shortest first, then arcs of `a`
/// before arcs of `b`, then nearest `u`.
fn template_candidates(a: &SchreierGraph, b: &SchreierGraph) -> Vec<Word> {
    let words = common_geodesics(a, b);
    let (ca, cb) = (arc_counts(a), arc_counts(b));
    let mut out: Vec<(usize, usize, usize, Word)> = Vec::new();
    for (side, (mine, theirs)) in [(&ca, &cb), (&cb, &ca)].into_iter().enumerate() {
        for (&(u, v, l), &k) in mine {
            if theirs.get(&(u, v, l)).copied().unwrap_or(0) >= k {
                continue;
            }
            let (Some(wu), Some(wv)) = (&words[u], &words[v]) else { continue };
            let mut h = wu.clone();
            h.push(Generator::new(l));
            let h = h.concat(&wv.inverse()).reduce();
            out.push((h.len(), side, wu.len(), h));
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|t| t.3).collect()
}

/// A word `h` with `contains(a, h) != contains(b, h)`, both answers decided, of length at
/// most `max_len`. Template words come first, then every reduced word in length-lex order.
pub fn distinctness_witness(
    a: &SchreierGraph,
    b: &SchreierGraph,
    max_len: usize,
) -> Result<Option<Word>, MeasureError> {
    if a.vertex_count() != b.vertex_count()
        || a.rank() != b.rank()
        || a.root() != b.root()
        || a.graph().edge_multiset() != b.graph().edge_multiset()
    {
        return Err(MeasureError::DifferentBase);
    }
    for h in template_candidates(a, b) {
        if h.len() <= max_len && separates(a, b, &h)? {
            return Ok(Some(h));
        }
    }
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 2 * a.rank());
        for w in &layer {
            for g in Generator::all(a.rank()) {
                if w.letters().last() == Some(&g.inverse()) {
                    continue;
                }
                let mut h = w.clone();
                h.push(g);
                if separates(a, b, &h)? {
                    return Ok(Some(h));
                }
                next.push(h);
            }
        }
        layer = next;
    }
    Ok(None)
}
