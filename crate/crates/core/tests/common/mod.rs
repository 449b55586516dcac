//! Brute-force oracles and fixtures shared by the integration tests and the acceptance
//! suite. Nothing in here goes through the crate's canonical forms, factorization or
//! measure code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schreier_core::lazy::{Grandfather, LazyVertex};
use schreier_core::{Multigraph, Neighborhood, RootedMultigraph, SchreierGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut next = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Configuration-model `2n`-regular multigraph on `v` vertices. Components are merged by
/// switching `ab, cd` into `ac, bd`, which keeps every degree. Loops and parallel edges
/// are kept as drawn.
pub fn random_even_regular(n: usize, v: usize, rng: &mut impl Rng) -> Multigraph {
    let mut stubs: Vec<usize> = (0..v).flat_map(|x| std::iter::repeat_n(x, 2 * n)).collect();
    stubs.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
    loop {
        let comp = components(v, &edges);
        if comp.iter().all(|&c| c == 0) {
            break;
        }
        let inside: Vec<usize> = (0..edges.len()).filter(|&e| comp[edges[e].0] == 0).collect();
        let outside: Vec<usize> = (0..edges.len()).filter(|&e| comp[edges[e].0] != 0).collect();
        let e = *inside.choose(rng).unwrap();
        let f = *outside.choose(rng).unwrap();
        let ((a, b), (c, d)) = (edges[e], edges[f]);
        edges[e] = (a, c);
        edges[f] = (b, d);
    }
    Multigraph::new(v, edges).unwrap()
}

/// `(n, graph)` pairs for the labeling sweep: `n` cycles through 1..=4, sizes up to 200.
pub fn labeling_corpus(count: usize, seed: u64) -> Vec<(usize, Multigraph)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|k| {
            let n = k % 4 + 1;
            let v = rng.gen_range(1..=200);
            (n, random_even_regular(n, v, &mut rng))
        })
        .collect()
}

/// Random connected Schreier graph of rank 1..=3 on at most `max_v` vertices, built from
/// random permutations.
pub fn random_schreier(rng: &mut impl Rng, max_v: usize) -> SchreierGraph {
    let rank = rng.gen_range(1..=3);
    loop {
        let v = rng.gen_range(1..=max_v);
        let perms: Vec<Vec<usize>> = (0..rank)
            .map(|_| {
                let mut order: Vec<usize> = (0..v).collect();
                order.shuffle(rng);
                let mut p = vec![0; v];
                if rank == 1 {
                    // one long cycle, so rank 1 stays connected
                    for k in 0..v {
                        p[order[k]] = order[(k + 1) % v];
                    }
                } else {
                    for (k, &o) in order.iter().enumerate() {
                        p[k] = o;
                    }
                }
                p
            })
            .collect();
        let root = rng.gen_range(0..v);
        if let Ok(sg) = SchreierGraph::from_permutations(&perms, root) {
            return sg;
        }
    }
}

/// Every edge subset in which each vertex has degree exactly 2 (a loop counts twice).
pub fn two_factors(g: &Multigraph) -> Vec<Vec<bool>> {
    fn go(g: &Multigraph, e: usize, left: &mut [usize], chosen: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if e == g.edge_count() {
            if left.iter().all(|&l| l == 0) {
                out.push(chosen.clone());
            }
            return;
        }
        go(g, e + 1, left, chosen, out);
        let (a, b) = g.endpoints(e);
        let fits = if a == b { left[a] >= 2 } else { left[a] >= 1 && left[b] >= 1 };
        if fits {
            left[a] -= 1;
            left[b] -= 1;
            chosen[e] = true;
            go(g, e + 1, left, chosen, out);
            chosen[e] = false;
            left[a] += 1;
            left[b] += 1;
        }
    }
    let mut out = Vec::new();
    let mut left = vec![2; g.vertex_count()];
    go(g, 0, &mut left, &mut vec![false; g.edge_count()], &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Connected 4-regular multigraphs (loops allowed) on `v` vertices, one per isomorphism
/// class. Classes are told apart by the least multiplicity matrix over all relabelings.
pub fn four_regular_classes(v: usize) -> Vec<Multigraph> {
    fn fill(
        v: usize,
        i: usize,
        j: usize,
        m: &mut Vec<Vec<usize>>,
        res: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == v {
            out.push(m.clone());
            return;
        }
        if j == v {
            if res[i] == 0 {
                fill(v, i + 1, i + 1, m, res, out);
            }
            return;
        }
        let cost = |k: usize| if i == j { 2 * k } else { k };
        let max = if i == j { res[i] / 2 } else { res[i].min(res[j]) };
        for k in 0..=max {
            let c = cost(k);
            res[i] -= c;
            if i != j {
                res[j] -= k;
            }
            m[i][j] = k;
            m[j][i] = k;
            fill(v, i, j + 1, m, res, out);
            m[i][j] = 0;
            m[j][i] = 0;
            res[i] += c;
            if i != j {
                res[j] += k;
            }
        }
    }
    let mut raw = Vec::new();
    fill(v, 0, 0, &mut vec![vec![0; v]; v], &mut vec![4; v], &mut raw);
    let perms = permutations(v);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in raw {
        let edges = matrix_edges(&m);
        if components(v, &edges).iter().any(|&c| c != 0) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut flat = Vec::with_capacity(v * v);
                for a in 0..v {
                    for b in a..v {
                        flat.push(m[p[a]][p[b]]);
                    }
                }
                flat
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(Multigraph::new(v, edges).unwrap());
        }
    }
    out
}

fn matrix_edges(m: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (a, row) in m.iter().enumerate() {
        for (b, &k) in row.iter().enumerate().skip(a) {
            edges.extend(std::iter::repeat_n((a, b), k));
        }
    }
    edges
}

/// A graph with labeled arcs (label 0 means undirected) and an ordered list of marked
/// vertices that isomorphisms must respect position by position.
#[derive(Debug, Clone)]
pub struct Shape {
    n: usize,
    arcs: HashMap<(usize, usize, u32), usize>,
    nbrs: Vec<Vec<usize>>,
    labels: BTreeSet<u32>,
    edge_count: usize,
    pub marked: Vec<usize>,
}

impl Shape {
    pub fn new(n: usize, edges: &[(usize, usize, u32)], marked: Vec<usize>) -> Self {
        let mut arcs = HashMap::new();
        let mut nbrs = vec![BTreeSet::new(); n];
        let mut labels = BTreeSet::new();
        for &(a, b, l) in edges {
            *arcs.entry((a, b, l)).or_default() += 1;
            if l == 0 && a != b {
                *arcs.entry((b, a, l)).or_default() += 1;
            }
            nbrs[a].insert(b);
            nbrs[b].insert(a);
            labels.insert(l);
        }
        let nbrs = nbrs.into_iter().map(|s| s.into_iter().collect()).collect();
        Shape { n, arcs, nbrs, labels, edge_count: edges.len(), marked }
    }

    pub fn unlabeled(g: &Multigraph, marked: Vec<usize>) -> Self {
        let edges: Vec<_> = g.edges().iter().map(|&(a, b)| (a, b, 0)).collect();
        Shape::new(g.vertex_count(), &edges, marked)
    }

    pub fn labeled(sg: &SchreierGraph) -> Self {
        Shape::new(sg.vertex_count(), &sg.labeled_edges(), vec![sg.root()])
    }

    pub fn of_neighborhood(nb: &Neighborhood) -> Self {
        let edges: Vec<_> = nb.graph().edges().iter().enumerate().map(|(e, &(a, b))| (a, b, nb.label(e))).collect();
        let mut marked = vec![nb.root()];
        marked.extend(nb.second_root());
        Shape::new(nb.vertex_count(), &edges, marked)
    }

    pub fn with_marks(&self, marked: Vec<usize>) -> Self {
        Shape { marked, ..self.clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    fn count(&self, a: usize, b: usize, l: u32) -> usize {
        self.arcs.get(&(a, b, l)).copied().unwrap_or(0)
    }
}

/// A colour with the sorted `(label, outgoing, neighbour colour, multiplicity)` arcs.
type Signature = (u32, Vec<(u32, bool, u32, usize)>);

/// Colour refinement on the disjoint union of `a` and `b`; vertex `v` of `b` is `a.n + v`.
fn refine(a: &Shape, b: &Shape, forced: &[(usize, usize)]) -> Vec<u32> {
    let total = a.n + b.n;
    let mut color = vec![0u32; total];
    for (k, (&x, &y)) in a.marked.iter().zip(&b.marked).enumerate() {
        color[x] = color[x].max(k as u32 + 1);
        color[a.n + y] = color[a.n + y].max(k as u32 + 1);
    }
    for (k, &(x, y)) in forced.iter().enumerate() {
        color[x] = 1000 + k as u32;
        color[a.n + y] = 1000 + k as u32;
    }
    let shape = |v: usize| if v < a.n { (a, v, 0) } else { (b, v - a.n, a.n) };
    let mut classes = usize::MAX;
    loop {
        let mut table: BTreeMap<Signature, u32> = BTreeMap::new();
        let sigs: Vec<_> = (0..total)
            .map(|v| {
                let (s, local, offset) = shape(v);
                let mut sig = Vec::new();
                for &u in &s.nbrs[local] {
                    for &l in &s.labels {
                        let out = s.count(local, u, l);
                        let inn = s.count(u, local, l);
                        if out > 0 {
                            sig.push((l, true, color[u + offset], out));
                        }
                        if inn > 0 && l != 0 {
                            sig.push((l, false, color[u + offset], inn));
                        }
                    }
                }
                sig.sort_unstable();
                (color[v], sig)
            })
            .collect();
        for s in &sigs {
            let next = table.len() as u32;
            table.entry(s.clone()).or_insert(next);
        }
        color = sigs.iter().map(|s| table[s]).collect();
        if table.len() == classes {
            return color;
        }
        classes = table.len();
    }
}

/// Isomorphisms `a -> b` that map marked vertices in order and each forced `(x, y)` as
/// given, up to `limit` of them.
pub fn isomorphisms(a: &Shape, b: &Shape, forced: &[(usize, usize)], limit: usize) -> Vec<Vec<usize>> {
    if a.n != b.n || a.edge_count != b.edge_count || a.marked.len() != b.marked.len() || a.labels != b.labels {
        return Vec::new();
    }
    let color = refine(a, b, forced);
    let mut ca: Vec<u32> = color[..a.n].to_vec();
    let mut cb: Vec<u32> = color[a.n..].to_vec();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return Vec::new();
    }
    // breadth-first order from the marked and forced vertices
    let mut order = Vec::with_capacity(a.n);
    let mut placed = vec![false; a.n];
    let starts: Vec<usize> = a.marked.iter().copied().chain(forced.iter().map(|f| f.0)).chain(0..a.n).collect();
    for s in starts {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &a.nbrs[v] {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; a.n];
    let mut inv = vec![usize::MAX; b.n];
    let mut out = Vec::new();
    search(a, b, &color, &order, 0, &mut map, &mut inv, &mut out, limit);
    out
}

fn consistent(a: &Shape, b: &Shape, v: usize, w: usize, map: &[usize], inv: &[usize]) -> bool {
    let same = |x: usize, y: usize| {
        a.labels.iter().all(|&l| a.count(v, x, l) == b.count(w, y, l) && a.count(x, v, l) == b.count(y, w, l))
    };
    if !same(v, w) {
        return false;
    }
    a.nbrs[v].iter().all(|&u| map[u] == usize::MAX || u == v || same(u, map[u]))
        && b.nbrs[w].iter().all(|&x| inv[x] == usize::MAX || x == w || same(inv[x], x))
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &Shape,
    b: &Shape,
    color: &[u32],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    inv: &mut [usize],
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if k == order.len() {
        out.push(map.to_vec());
        return;
    }
    let v = order[k];
    for w in 0..b.n {
        if inv[w] != usize::MAX || color[a.n + w] != color[v] || !consistent(a, b, v, w, map, inv) {
            continue;
        }
        map[v] = w;
        inv[w] = v;
        search(a, b, color, order, k + 1, map, inv, out, limit);
        map[v] = usize::MAX;
        inv[w] = usize::MAX;
        if out.len() >= limit {
            return;
        }
    }
}

pub fn find_isomorphism(a: &Shape, b: &Shape) -> Option<Vec<usize>> {
    isomorphisms(a, b, &[], 1).pop()
}

pub fn automorphism_count(a: &Shape, limit: usize) -> usize {
    isomorphisms(a, a, &[], limit).len()
}

/// Orbit of `y` under the automorphisms of `a` that fix its marked vertices.
pub fn orbit(a: &Shape, y: usize) -> Vec<usize> {
    (0..a.n).filter(|&z| !isomorphisms(a, a, &[(y, z)], 1).is_empty()).collect()
}

/// Vertices within distance `r` of any of `sources` in `s`.
fn within(s: &Shape, sources: &[usize], r: usize) -> Vec<bool> {
    let mut dist = vec![usize::MAX; s.n];
    let mut queue = VecDeque::new();
    for &x in sources {
        dist[x] = 0;
        queue.push_back(x);
    }
    while let Some(v) = queue.pop_front() {
        for &w in &s.nbrs[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.iter().map(|&d| d <= r).collect()
}

/// Subgraph of `s` induced on `keep`, marked at `marks`.
fn induced(s: &Shape, keep: &[bool], marks: &[usize]) -> Shape {
    let mut local = vec![usize::MAX; s.n];
    let mut next = 0;
    for v in 0..s.n {
        if keep[v] {
            local[v] = next;
            next += 1;
        }
    }
    let mut edges = Vec::new();
    for (&(a, b, l), &c) in &s.arcs {
        if keep[a] && keep[b] && (l != 0 || a <= b) {
            edges.extend(std::iter::repeat_n((local[a], local[b], l), c));
        }
    }
    edges.sort_unstable();
    Shape::new(next, &edges, marks.iter().map(|&m| local[m]).collect())
}

/// The edge neighbourhood of radius `r` about `(x, y)`.
pub fn edge_neighborhood(s: &Shape, x: usize, y: usize, r: usize) -> Shape {
    induced(s, &within(s, &[x, y], r), &[x, y])
}

/// Oracle for the lifted masses of a uniformly rooted finite graph: for each class of
/// doubly-rooted edge neighbourhoods `(x, y)` with `y != x` a neighbour of `x`, its
/// representative, the number of ordered pairs in it, and the index of the class of
/// the swapped neighbourhood.
pub struct TransportTable {
    pub classes: Vec<(Shape, usize)>,
    pub swapped: Vec<usize>,
    pub vertices: usize,
}

impl TransportTable {
    pub fn mass(&self, class: usize) -> BigRational {
        BigRational::new(self.classes[class].1.into(), self.vertices.into())
    }

    pub fn class_of(&self, shape: &Shape) -> Option<usize> {
        self.classes.iter().position(|(rep, _)| find_isomorphism(rep, shape).is_some())
    }
}

pub fn transport_table(s: &Shape, r: usize) -> TransportTable {
    let mut classes: Vec<(Shape, usize)> = Vec::new();
    let add = |shape: Shape, classes: &mut Vec<(Shape, usize)>, count: usize| -> usize {
        match classes.iter().position(|(rep, _)| find_isomorphism(rep, &shape).is_some()) {
            Some(k) => {
                classes[k].1 += count;
                k
            }
            None => {
                classes.push((shape, count));
                classes.len() - 1
            }
        }
    };
    for x in 0..s.n {
        for &y in &s.nbrs[x] {
            if y != x {
                add(edge_neighborhood(s, x, y, r), &mut classes, 1);
            }
        }
    }
    let mut swapped = Vec::new();
    for k in 0..classes.len() {
        let rep = &classes[k].0;
        let flip = rep.with_marks(vec![rep.marked[1], rep.marked[0]]);
        swapped.push(add(flip, &mut classes, 0));
    }
    TransportTable { classes, swapped, vertices: s.n }
}

/// The grandfather graph explored through its tree structure only.
pub struct GrandfatherOracle {
    pub g: Grandfather,
}

impl GrandfatherOracle {
    fn neighbors(&self, v: &LazyVertex) -> Vec<LazyVertex> {
        let parent = self.g.parent(v);
        let mut out = vec![self.g.parent(&parent), parent];
        for c in self.g.children(v) {
            out.extend(self.g.children(&c));
            out.push(c);
        }
        out
    }

    /// The ball of radius `radius` about the origin `[0]`, marked at the origin, with the
    /// origin's neighbours named: `(father, grandfather, children, grandchildren)`.
    pub fn ball(&self, radius: usize) -> (Shape, usize, usize, Vec<usize>, Vec<usize>) {
        let origin: LazyVertex = vec![0];
        let mut index: BTreeMap<LazyVertex, usize> = BTreeMap::from([(origin.clone(), 0)]);
        let mut frontier = vec![origin.clone()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for v in &frontier {
                for w in self.neighbors(v) {
                    if !index.contains_key(&w) {
                        index.insert(w.clone(), index.len());
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let mut edges = Vec::new();
        for (v, &k) in &index {
            let p = self.g.parent(v);
            if let Some(&j) = index.get(&p) {
                edges.push((k, j, 0));
            }
            if let Some(&j) = index.get(&self.g.parent(&p)) {
                edges.push((k, j, 0));
            }
        }
        let father = index[&self.g.parent(&origin)];
        let grandfather = index[&self.g.parent(&self.g.parent(&origin))];
        let children: Vec<usize> = self.g.children(&origin).iter().map(|c| index[c]).collect();
        let grandchildren: Vec<usize> =
            self.g.children(&origin).iter().flat_map(|c| self.g.children(c)).map(|c| index[&c]).collect();
        (Shape::new(index.len(), &edges, vec![0]), father, grandfather, children, grandchildren)
    }
}

/// For the Dirac measure at a vertex-transitive graph seen through the ball `s` of radius
/// `r + 1`: the unordered pairs `(forward, backward)` of neighbour counts over edge classes
/// whose two directions disagree.
pub fn dirac_transport_mismatches(s: &Shape, r: usize) -> BTreeSet<(usize, usize)> {
    let x = s.marked[0];
    let mut reps: Vec<(Shape, usize)> = Vec::new();
    for &y in &s.nbrs[x] {
        if y == x {
            continue;
        }
        let d = edge_neighborhood(s, x, y, r);
        match reps.iter().position(|(rep, _)| find_isomorphism(rep, &d).is_some()) {
            Some(k) => reps[k].1 += 1,
            None => reps.push((d, 1)),
        }
    }
    let mut out = BTreeSet::new();
    for (rep, forward) in &reps {
        let flip = rep.with_marks(vec![rep.marked[1], rep.marked[0]]);
        let backward = reps.iter().find(|(r2, _)| find_isomorphism(r2, &flip).is_some()).map_or(0, |(_, c)| *c);
        if *forward != backward {
            out.insert((*forward.min(&backward), *forward.max(&backward)));
        }
    }
    out
}

pub fn cycle_graph(k: usize) -> Multigraph {
    Multigraph::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect()).unwrap()
}

pub fn complete_graph(k: usize) -> Multigraph {
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            edges.push((a, b));
        }
    }
    Multigraph::new(k, edges).unwrap()
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::new(10, edges).unwrap()
}

pub fn cube() -> Multigraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    Multigraph::new(8, edges).unwrap()
}

pub fn e6() -> SchreierGraph {
    SchreierGraph::from_permutations(&[vec![1, 2, 0, 4, 5, 3], vec![3, 4, 5, 1, 2, 0]], 0).unwrap()
}

pub fn schreier_cycle(k: usize) -> SchreierGraph {
    SchreierGraph::from_permutations(&[(0..k).map(|v| (v + 1) % k).collect()], 0).unwrap()
}

pub fn rooted(g: &Multigraph) -> RootedMultigraph {
    RootedMultigraph::from_edges(g.vertex_count(), g.edges().to_vec(), 0).unwrap()
}

/// Finite unlabeled test graphs: regular and not, simple and not.
pub fn unlabeled_corpus() -> Vec<(String, RootedMultigraph)> {
    let mut rng = rng(11);
    vec![
        ("P3".into(), RootedMultigraph::from_edges(3, vec![(0, 1), (1, 2)], 1).unwrap()),
        ("star K1,3".into(), RootedMultigraph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)], 0).unwrap()),
        ("C5".into(), rooted(&cycle_graph(5))),
        ("K4".into(), rooted(&complete_graph(4))),
        ("K5".into(), rooted(&complete_graph(5))),
        ("Petersen".into(), rooted(&petersen())),
        ("cube".into(), rooted(&cube())),
        ("octahedron".into(), e6().forget()),
        ("theta".into(), RootedMultigraph::from_edges(2, vec![(0, 1), (0, 1), (0, 1)], 0).unwrap()),
        ("random 4-regular".into(), rooted(&random_even_regular(2, 7, &mut rng))),
        ("random 6-regular".into(), rooted(&random_even_regular(3, 9, &mut rng))),
    ]
}

/// Finite Schreier graphs, including ones produced by the labeling pipeline.
pub fn labeled_corpus() -> Vec<(String, SchreierGraph)> {
    let mut rng = rng(12);
    let mut out = vec![
        ("E6".into(), e6()),
        ("C6".into(), schreier_cycle(6)),
        ("bouquet".into(), SchreierGraph::from_permutations(&[vec![0], vec![0]], 0).unwrap()),
    ];
    for k in 0..4 {
        out.push((format!("random Schreier {k}"), random_schreier(&mut rng, 12)));
    }
    out
}
