//! Classical combinatorial ground truth: union-find components, BFS levels,
//! eccentricity and diameter.

use std::collections::VecDeque;

use crate::graph::{ComponentPartition, Graph};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

pub fn uf_components(g: &Graph) -> ComponentPartition {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for &(a, b) in g.edges() {
        uf.union(a, b);
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    ComponentPartition::from_labels(&labels)
}

/// Vertex sets by shortest-path distance from `start`; level 0 is `{start}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLevels {
    pub start: usize,
    pub levels: Vec<Vec<usize>>,
}

impl BfsLevels {
    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn reached(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.levels.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

/// Breadth-first levels from `start`; each level is sorted ascending.
///
/// Panics if `start` is not a vertex of `g`.
pub fn bfs_levels(g: &Graph, start: usize) -> BfsLevels {
    let dist = distances(g, start);
    let ecc = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); ecc + 1];
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = d {
            levels[*d].push(v);
        }
    }
    BfsLevels { start, levels }
}

fn distances(g: &Graph, start: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &u in g.neighbors(v) {
            if dist[u].is_none() {
                dist[u] = Some(dv + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Largest finite distance from `start`.
pub fn eccentricity(g: &Graph, start: usize) -> usize {
    distances(g, start).into_iter().flatten().max().unwrap_or(0)
}

/// Largest finite distance over all vertex pairs; pairs in different
/// components are ignored, so an edgeless graph has diameter 0.
pub fn diameter(g: &Graph) -> usize {
    (0..g.vertex_count())
        .map(|v| eccentricity(g, v))
        .max()
        .unwrap_or(0)
}
