//! Individualization-refinement search over vertex-colored graphs with typed arcs.
//!
//! The canonical leaf is the one with the largest certificate `(invariant trail, encoding)`.
//! Automorphisms found on the way prune the first path (orbit pruning) and let the search
//! jump back to the deepest common ancestor of two equivalent leaves.

use std::cmp::Ordering;
use std::collections::VecDeque;

/// Edge triple `(a, b, label)`; label 0 means undirected and is stored with `a <= b`.
pub(crate) type EdgeCode = (u32, u32, u32);

/// Input to the search. `adj[v]` lists `(neighbor, arc type)`; a loop shows up twice.
pub(crate) struct ColoredGraph {
    pub adj: Vec<Vec<(u32, u32)>>,
    pub arc_types: Vec<u32>,
    pub colors: Vec<u32>,
    pub edges: Vec<EdgeCode>,
}

impl ColoredGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Sorted edge codes after renaming vertex `v` to `position[v]`.
    pub fn encode(&self, position: &[u32]) -> Vec<EdgeCode> {
        let mut out: Vec<EdgeCode> = self
            .edges
            .iter()
            .map(|&(a, b, l)| {
                let (pa, pb) = (position[a as usize], position[b as usize]);
                if l == 0 {
                    (pa.min(pb), pa.max(pb), 0)
                } else {
                    (pa, pb, l)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(7) ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (h >> 29)
}

/// Ordered partition stored nauty-style: `lab` lists vertices cell by cell, a cell is
/// identified by its start index.
#[derive(Clone)]
pub(crate) struct Partition {
    pub lab: Vec<u32>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    cell_end: Vec<u32>,
    cells: usize,
}

pub(crate) struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    marked: Vec<bool>,
}

impl Scratch {
    pub fn new(n: usize) -> Self {
        Scratch { count: vec![0; n], touched: Vec::new(), in_queue: vec![false; n], marked: vec![false; n] }
    }
}

impl Partition {
    pub fn from_colors(colors: &[u32]) -> Self {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut p = Partition { pos: vec![0; n], cell_of: vec![0; n], cell_end: vec![0; n], cells: 0, lab };
        let mut start = 0;
        while start < n {
            let c = colors[p.lab[start] as usize];
            let mut end = start;
            while end < n && colors[p.lab[end] as usize] == c {
                end += 1;
            }
            for i in start..end {
                let v = p.lab[i] as usize;
                p.pos[v] = i as u32;
                p.cell_of[v] = start as u32;
            }
            p.cell_end[start] = end as u32;
            p.cells += 1;
            start = end;
        }
        p
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub fn cell_starts(&self) -> Vec<u32> {
        let mut starts = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            starts.push(s as u32);
            s = self.cell_end[s] as usize;
        }
        starts
    }

    pub fn cell_members(&self, start: u32) -> &[u32] {
        &self.lab[start as usize..self.cell_end[start as usize] as usize]
    }

    /// First smallest non-singleton cell.
    pub fn target_cell(&self) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for s in self.cell_starts() {
            let size = self.cell_end[s as usize] - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
        }
        best.map(|(s, _)| s)
    }

    pub fn refine_all(&mut self, g: &ColoredGraph, scratch: &mut Scratch) -> u64 {
        let starts = self.cell_starts();
        self.refine(g, starts, scratch)
    }

    /// Splits `v` off the front of its cell and refines.
    pub fn individualize(&mut self, g: &ColoredGraph, v: u32, scratch: &mut Scratch) -> u64 {
        let cs = self.cell_of[v as usize] as usize;
        let ce = self.cell_end[cs] as usize;
        debug_assert!(ce - cs > 1);
        let other = self.lab[cs];
        let pv = self.pos[v as usize] as usize;
        self.lab.swap(cs, pv);
        self.pos[other as usize] = pv as u32;
        self.pos[v as usize] = cs as u32;
        self.cell_end[cs] = cs as u32 + 1;
        self.cell_end[cs + 1] = ce as u32;
        for i in cs + 1..ce {
            self.cell_of[self.lab[i] as usize] = cs as u32 + 1;
        }
        self.cells += 1;
        mix(self.refine(g, vec![cs as u32], scratch), cs as u64)
    }

    /// Equitable refinement driven by a queue of splitter cells. Returns a hash of the
    /// splitting history, which depends only on the ordered partition.
    fn refine(&mut self, g: &ColoredGraph, splitters: Vec<u32>, scratch: &mut Scratch) -> u64 {
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        let mut queue: VecDeque<u32> = VecDeque::new();
        for s in splitters {
            if !scratch.in_queue[s as usize] {
                scratch.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        let mut affected: Vec<u32> = Vec::new();
        let mut members: Vec<(u32, u32)> = Vec::new();
        while let Some(s) = queue.pop_front() {
            scratch.in_queue[s as usize] = false;
            if self.is_discrete() {
                continue;
            }
            let (s, e) = (s as usize, self.cell_end[s as usize] as usize);
            for &t in &g.arc_types {
                scratch.touched.clear();
                for i in s..e {
                    let v = self.lab[i] as usize;
                    for &(w, ty) in &g.adj[v] {
                        if ty == t {
                            if scratch.count[w as usize] == 0 {
                                scratch.touched.push(w);
                            }
                            scratch.count[w as usize] += 1;
                        }
                    }
                }
                if scratch.touched.is_empty() {
                    continue;
                }
                affected.clear();
                for &w in &scratch.touched {
                    let c = self.cell_of[w as usize];
                    if !scratch.marked[c as usize] {
                        scratch.marked[c as usize] = true;
                        affected.push(c);
                    }
                }
                affected.sort_unstable();
                for &cs in &affected {
                    scratch.marked[cs as usize] = false;
                    let cs = cs as usize;
                    let ce = self.cell_end[cs] as usize;
                    if ce - cs == 1 {
                        continue;
                    }
                    members.clear();
                    members.extend(self.lab[cs..ce].iter().map(|&v| (scratch.count[v as usize], v)));
                    let first = members[0].0;
                    if members.iter().all(|m| m.0 == first) {
                        continue;
                    }
                    members.sort_by_key(|m| m.0);
                    let was_queued = scratch.in_queue[cs];
                    hash = mix(hash, (cs as u64) << 32 | t as u64);
                    let mut fragments: Vec<(usize, usize)> = Vec::new();
                    let mut a = 0;
                    while a < members.len() {
                        let mut b = a;
                        while b < members.len() && members[b].0 == members[a].0 {
                            b += 1;
                        }
                        fragments.push((cs + a, cs + b));
                        hash = mix(hash, (members[a].0 as u64) << 32 | (b - a) as u64);
                        a = b;
                    }
                    for (k, &(_, v)) in members.iter().enumerate() {
                        self.lab[cs + k] = v;
                        self.pos[v as usize] = (cs + k) as u32;
                    }
                    for &(fa, fb) in &fragments {
                        self.cell_end[fa] = fb as u32;
                        for i in fa..fb {
                            self.cell_of[self.lab[i] as usize] = fa as u32;
                        }
                    }
                    self.cells += fragments.len() - 1;
                    let skip = if was_queued {
                        None
                    } else {
                        let size = |k: usize| fragments[k].1 - fragments[k].0;
                        Some((0..fragments.len()).fold(0, |big, k| if size(k) > size(big) { k } else { big }))
                    };
                    for (k, &(fa, _)) in fragments.iter().enumerate() {
                        if Some(k) != skip && !scratch.in_queue[fa] {
                            scratch.in_queue[fa] = true;
                            queue.push_back(fa as u32);
                        }
                    }
                }
                for &w in &scratch.touched {
                    scratch.count[w as usize] = 0;
                }
            }
        }
        mix(hash, self.cells as u64)
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut v: u32) -> u32 {
        while self.0[v as usize] != v {
            let p = self.0[v as usize];
            self.0[v as usize] = self.0[p as usize];
            v = p;
        }
        v
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi as usize] = lo;
        }
    }
}

#[derive(Clone)]
struct Leaf {
    lab: Vec<u32>,
    enc: Vec<EdgeCode>,
    trail: Vec<u64>,
    path: Vec<u32>,
}

impl Leaf {
    fn certificate_cmp(&self, trail: &[u64], enc: &[EdgeCode]) -> Ordering {
        trail.cmp(&self.trail[..]).then_with(|| enc.cmp(&self.enc[..]))
    }
}

struct Node {
    part: Partition,
    children: Vec<u32>,
    next: usize,
    explored: Vec<u32>,
    on_first_path: bool,
}

impl Node {
    fn new(part: Partition) -> Self {
        let children = match part.target_cell() {
            Some(s) => {
                let mut c = part.cell_members(s).to_vec();
                c.sort_unstable();
                c
            }
            None => Vec::new(),
        };
        Node { part, children, next: 0, explored: Vec::new(), on_first_path: false }
    }
}

pub(crate) struct SearchResult {
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<u32>,
    pub encoding: Vec<EdgeCode>,
    /// Orbit representative (smallest member) of each vertex under the automorphism group
    /// of the colored graph.
    pub orbits: Vec<u32>,
}

fn positions(lab: &[u32]) -> Vec<u32> {
    let mut position = vec![0; lab.len()];
    for (i, &v) in lab.iter().enumerate() {
        position[v as usize] = i as u32;
    }
    position
}

/// Permutation sending leaf `from` to leaf `to`, as a vertex map.
fn leaf_map(from: &[u32], to: &[u32]) -> Vec<u32> {
    let mut gamma = vec![0; from.len()];
    for (i, &v) in from.iter().enumerate() {
        gamma[v as usize] = to[i];
    }
    gamma
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn prefix_cmp(a: &[u64], b: &[u64]) -> Ordering {
    let k = a.len().min(b.len());
    a[..k].cmp(&b[..k])
}

pub(crate) fn search(g: &ColoredGraph) -> SearchResult {
    let n = g.vertex_count();
    let mut scratch = Scratch::new(n);
    let mut root = Partition::from_colors(&g.colors);
    let h0 = root.refine_all(g, &mut scratch);
    if root.is_discrete() {
        let position = positions(&root.lab);
        let encoding = g.encode(&position);
        return SearchResult { position, encoding, orbits: (0..n as u32).collect() };
    }

    let mut stack = vec![Node::new(root)];
    let mut trail = vec![h0];
    let mut path: Vec<u32> = Vec::new();
    let mut first: Option<Leaf> = None;
    let mut best: Option<Leaf> = None;
    let mut orbits: Vec<UnionFind> = Vec::new();

    while let Some(node) = stack.last_mut() {
        let depth = path.len();
        let mut chosen = None;
        while node.next < node.children.len() {
            let u = node.children[node.next];
            node.next += 1;
            if node.on_first_path {
                let uf = &mut orbits[depth];
                let ru = uf.find(u);
                if node.explored.iter().any(|&x| uf.find(x) == ru) {
                    continue;
                }
            }
            chosen = Some(u);
            break;
        }
        let Some(u) = chosen else {
            stack.pop();
            path.pop();
            trail.pop();
            continue;
        };
        node.explored.push(u);
        let mut part = node.part.clone();
        let h = part.individualize(g, u, &mut scratch);
        path.push(u);
        trail.push(h);

        if let (Some(f), Some(b)) = (&first, &best) {
            let matches_first = prefix_cmp(&trail, &f.trail) == Ordering::Equal;
            if !matches_first && prefix_cmp(&trail, &b.trail) == Ordering::Less {
                path.pop();
                trail.pop();
                continue;
            }
        }

        if !part.is_discrete() {
            stack.push(Node::new(part));
            continue;
        }

        let position = positions(&part.lab);
        let enc = g.encode(&position);
        let mut jump = None;
        match (&first, &mut best) {
            (None, _) => {
                let leaf = Leaf { lab: part.lab.clone(), enc, trail: trail.clone(), path: path.clone() };
                orbits = (0..=path.len()).map(|_| UnionFind::new(n)).collect();
                for node in stack.iter_mut() {
                    node.on_first_path = true;
                }
                first = Some(leaf.clone());
                best = Some(leaf);
            }
            (Some(f), Some(b)) => {
                let reference = if enc == f.enc {
                    Some(f)
                } else if enc == b.enc {
                    Some(&*b)
                } else {
                    None
                };
                if let Some(r) = reference {
                    let gamma = leaf_map(&r.lab, &part.lab);
                    jump = Some(common_prefix(&path, &r.path));
                    for (j, uf) in orbits.iter_mut().enumerate() {
                        if j > 0 && gamma[f.path[j - 1] as usize] != f.path[j - 1] {
                            break;
                        }
                        for v in 0..n as u32 {
                            uf.union(v, gamma[v as usize]);
                        }
                    }
                } else if b.certificate_cmp(&trail, &enc) == Ordering::Greater {
                    *b = Leaf { lab: part.lab.clone(), enc, trail: trail.clone(), path: path.clone() };
                }
            }
            _ => unreachable!(),
        }
        match jump {
            Some(k) => {
                stack.truncate(k + 1);
                path.truncate(k);
                trail.truncate(k + 1);
            }
            None => {
                path.pop();
                trail.pop();
            }
        }
    }

    let best = best.expect("search reaches at least one leaf");
    let position = positions(&best.lab);
    let uf = &mut orbits[0];
    let orbits = (0..n as u32).map(|v| uf.find(v)).collect();
    SearchResult { position, encoding: best.enc, orbits }
}

/// Every automorphism of the colored graph, or `Err(cap)` once more than `cap` are found.
pub(crate) fn all_automorphisms(g: &ColoredGraph, cap: usize) -> Result<Vec<Vec<u32>>, usize> {
    let n = g.vertex_count();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut scratch = Scratch::new(n);
    let mut root = Partition::from_colors(&g.colors);
    let h0 = root.refine_all(g, &mut scratch);
    if root.is_discrete() {
        return Ok(vec![identity]);
    }
    let mut reference: Option<Leaf> = None;
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut stack = vec![Node::new(root)];
    let mut trail = vec![h0];
    while let Some(node) = stack.last_mut() {
        if node.next >= node.children.len() {
            stack.pop();
            trail.pop();
            continue;
        }
        let u = node.children[node.next];
        node.next += 1;
        let mut part = node.part.clone();
        let h = part.individualize(g, u, &mut scratch);
        trail.push(h);
        if let Some(r) = &reference {
            if prefix_cmp(&trail, &r.trail) != Ordering::Equal {
                trail.pop();
                continue;
            }
        }
        if !part.is_discrete() {
            stack.push(Node::new(part));
            continue;
        }
        let enc = g.encode(&positions(&part.lab));
        match &reference {
            None => {
                reference = Some(Leaf { lab: part.lab.clone(), enc, trail: trail.clone(), path: Vec::new() });
                found.push(identity.clone());
            }
            Some(r) if r.enc == enc => {
                found.push(leaf_map(&r.lab, &part.lab));
                if found.len() > cap {
                    return Err(cap);
                }
            }
            Some(_) => {}
        }
        trail.pop();
    }
    found.sort();
    Ok(found)
}
