use super::{LazyEdge, LazyError, LazyGraph, LazyVertex};

/// The `d`-regular tree with a fixed end `ω`, plus an edge from each vertex to its
/// grandfather. Degree `d^2 - d + 2`.
///
/// Vertex `[m, s_1, ..., s_k]` is reached from the ray vertex `r_m` (the `m`-th ancestor of
/// the origin `[0]` toward `ω`) by descending to children `s_1, ..., s_k`, with symbols in
/// `0..d-1`. Below a ray vertex `r_m` with `m >= 1`, child 0 is `r_{m-1}`, so the first
/// symbol is never 0 there. Tree edges point toward `ω` (slot 1), grandfather edges too
/// (slot 2).
#[derive(Debug, Clone, Copy)]
pub struct Grandfather {
    d: usize,
}

pub fn grandfather(d: usize) -> Grandfather {
    assert!(d >= 3, "grandfather graphs need d >= 3");
    Grandfather { d }
}

impl Grandfather {
    pub fn tree_degree(&self) -> usize {
        self.d
    }

    fn check(&self, v: &LazyVertex) -> Result<(), LazyError> {
        let bad = || LazyError::BadVertex(v.clone());
        let (&m, path) = v.split_first().ok_or_else(bad)?;
        if m < 0 || path.iter().any(|&s| s < 0 || s as usize >= self.d - 1) {
            return Err(bad());
        }
        if m >= 1 && path.first() == Some(&0) {
            return Err(bad());
        }
        Ok(())
    }

    pub fn parent(&self, v: &LazyVertex) -> LazyVertex {
        if v.len() > 1 {
            v[..v.len() - 1].to_vec()
        } else {
            vec![v[0] + 1]
        }
    }

    pub fn children(&self, v: &LazyVertex) -> Vec<LazyVertex> {
        (0..self.d as i64 - 1)
            .map(|c| {
                if v.len() == 1 && v[0] >= 1 && c == 0 {
                    vec![v[0] - 1]
                } else {
                    let mut w = v.clone();
                    w.push(c);
                    w
                }
            })
            .collect()
    }
}

impl LazyGraph for Grandfather {
    fn name(&self) -> String {
        format!("grandfather:{}", self.d)
    }

    fn root(&self) -> LazyVertex {
        vec![0]
    }

    fn degree(&self) -> usize {
        self.d * self.d - self.d + 2
    }

    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        self.check(v)?;
        let parent = self.parent(v);
        let mut edges = vec![
            LazyEdge { tail: v.clone(), head: self.parent(&parent), slot: 2 },
            LazyEdge { tail: v.clone(), head: parent, slot: 1 },
        ];
        for c in self.children(v) {
            for g in self.children(&c) {
                edges.push(LazyEdge { tail: g, head: v.clone(), slot: 2 });
            }
            edges.push(LazyEdge { tail: c, head: v.clone(), slot: 1 });
        }
        Ok(edges)
    }
}

/// The `d`-regular tree. A vertex is its path of child indices from the root; the root has
/// children `0..d`, every other vertex `0..d-1`. Edges point to the parent.
#[derive(Debug, Clone, Copy)]
pub struct Tree {
    d: usize,
}

pub fn tree(d: usize) -> Tree {
    assert!(d >= 2, "trees need d >= 2");
    Tree { d }
}

impl LazyGraph for Tree {
    fn name(&self) -> String {
        format!("tree:{}", self.d)
    }

    fn root(&self) -> LazyVertex {
        Vec::new()
    }

    fn degree(&self) -> usize {
        self.d
    }

    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        let limit = |k: usize| if k == 0 { self.d } else { self.d - 1 };
        if v.iter().enumerate().any(|(k, &s)| s < 0 || s as usize >= limit(k)) {
            return Err(LazyError::BadVertex(v.clone()));
        }
        let mut edges = Vec::with_capacity(self.d);
        if !v.is_empty() {
            edges.push(LazyEdge { tail: v.clone(), head: v[..v.len() - 1].to_vec(), slot: 1 });
        }
        for c in 0..limit(v.len()) as i64 {
            let mut w = v.clone();
            w.push(c);
            edges.push(LazyEdge { tail: w, head: v.clone(), slot: 1 });
        }
        Ok(edges)
    }
}

/// The Cayley graph of `Z` with generator `a_1 = +1`.
#[derive(Debug, Clone, Copy)]
pub struct Line;

pub fn line() -> Line {
    Line
}

impl LazyGraph for Line {
    fn name(&self) -> String {
        "line".into()
    }

    fn root(&self) -> LazyVertex {
        vec![0]
    }

    fn degree(&self) -> usize {
        2
    }

    fn rank(&self) -> Option<usize> {
        Some(1)
    }

    fn cycle_id(&self, _v: &LazyVertex, label: u32) -> Option<i64> {
        (label == 1).then_some(0)
    }

    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        let &[k] = v.as_slice() else { return Err(LazyError::BadVertex(v.clone())) };
        Ok(vec![
            LazyEdge { tail: vec![k], head: vec![k + 1], slot: 1 },
            LazyEdge { tail: vec![k - 1], head: vec![k], slot: 1 },
        ])
    }
}

/// The Cayley graph of `Z^2` with `a_1 = (1,0)`, `a_2 = (0,1)` and, with the diagonal,
/// `a_3 = (1,1)`.
#[derive(Debug, Clone, Copy)]
pub struct Z2 {
    diagonal: bool,
}

pub fn z2() -> Z2 {
    Z2 { diagonal: false }
}

pub fn z2_with_diagonal() -> Z2 {
    Z2 { diagonal: true }
}

impl Z2 {
    fn steps(&self) -> &'static [(i64, i64)] {
        if self.diagonal {
            &[(1, 0), (0, 1), (1, 1)]
        } else {
            &[(1, 0), (0, 1)]
        }
    }
}

impl LazyGraph for Z2 {
    fn name(&self) -> String {
        if self.diagonal { "z2diag" } else { "z2" }.into()
    }

    fn root(&self) -> LazyVertex {
        vec![0, 0]
    }

    fn degree(&self) -> usize {
        2 * self.steps().len()
    }

    fn rank(&self) -> Option<usize> {
        Some(self.steps().len())
    }

    /// `a_1`-cycles are rows (id `y`), `a_2`-cycles columns (id `x`), `a_3`-cycles the
    /// diagonals `y = x + c` (id `c`).
    fn cycle_id(&self, v: &LazyVertex, label: u32) -> Option<i64> {
        let &[x, y] = v.as_slice() else { return None };
        match label {
            1 => Some(y),
            2 => Some(x),
            3 if self.diagonal => Some(y - x),
            _ => None,
        }
    }

    fn edges(&self, v: &LazyVertex) -> Result<Vec<LazyEdge>, LazyError> {
        let &[x, y] = v.as_slice() else { return Err(LazyError::BadVertex(v.clone())) };
        let mut edges = Vec::with_capacity(self.degree());
        for (k, &(dx, dy)) in self.steps().iter().enumerate() {
            let slot = k as u32 + 1;
            edges.push(LazyEdge { tail: vec![x, y], head: vec![x + dx, y + dy], slot });
            edges.push(LazyEdge { tail: vec![x - dx, y - dy], head: vec![x, y], slot });
        }
        Ok(edges)
    }
}
