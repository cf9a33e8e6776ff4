//! Undirected simple graphs, the edge-array portrait and component partitions.
//!
//! Vertices are `0..n` inside the library. Text formats, JSON output and the
//! Python bindings use 1-based ids; the conversion happens at those borders.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected simple graph.
///
/// Edges are stored once as `(lo, hi)` with `lo < hi`, sorted. A compressed
/// adjacency (both orientations of every edge, neighbours ascending) is built
/// at construction; the graph is immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Graph {
    /// Builds a graph from 0-based pairs. Self-loops are dropped and duplicate
    /// pairs (in either orientation) collapsed.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v + 1, n });
                }
            }
            if a != b {
                normalized.push((a.min(b), a.max(b)));
            }
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self::from_normalized(n, normalized))
    }

    /// Builds a graph from 1-based pairs, as written in edge-list files.
    pub fn from_one_based<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut shifted = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            shifted.push((a - 1, b - 1));
        }
        Self::new(n, shifted)
    }

    /// The graph with no edges on `n` vertices.
    pub fn edgeless(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * edges.len()];
        // Edges are sorted by (lo, hi), so each neighbour list comes out ascending.
        for &(a, b) in &edges {
            targets[fill[a]] = b;
            fill[a] += 1;
        }
        for &(a, b) in &edges {
            targets[fill[b]] = a;
            fill[b] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            n,
            edges,
            offsets,
            targets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(lo, hi)` pairs, 0-based, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Per-vertex degrees and the maximum degree (0 for an edgeless graph).
    pub fn degrees(&self) -> (Vec<usize>, usize) {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let max = degrees.iter().copied().max().unwrap_or(0);
        (degrees, max)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v + 1,
                n: self.n,
            })
        }
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        Self::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.n];
        for (k, &v) in vertices.iter().enumerate() {
            index[v] = k;
        }
        let mut edges = Vec::new();
        for (k, &v) in vertices.iter().enumerate() {
            for &u in self.neighbors(v) {
                let ku = index[u];
                if ku != usize::MAX && k < ku {
                    edges.push((k, ku));
                }
            }
        }
        Self::new(vertices.len(), edges).expect("induced indices are in range")
    }

    pub fn portrait(&self) -> Portrait {
        build_portrait(self)
    }
}

/// One record of the portrait: an undirected edge, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PortraitEntry {
    pub v1: usize,
    pub v2: usize,
}

/// The matrix portrait: a flat, unordered array holding every edge once.
///
/// One sweep of a stationary iterative method is one pass over this array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portrait {
    n: usize,
    entries: Vec<PortraitEntry>,
}

impl Portrait {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[PortraitEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rebuilds the graph the portrait was taken from.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.n, self.entries.iter().map(|e| (e.v1, e.v2)))
            .expect("portrait entries are in range")
    }
}

pub fn build_portrait(g: &Graph) -> Portrait {
    Portrait {
        n: g.n,
        entries: g
            .edges
            .iter()
            .map(|&(v1, v2)| PortraitEntry { v1, v2 })
            .collect(),
    }
}

/// Disjoint vertex sets covering `0..n`.
///
/// Always canonical: each component sorted ascending, components ordered by
/// their smallest vertex. Two partitions of the same graph compare equal iff
/// they are the same partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    components: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn from_components(mut components: Vec<Vec<usize>>) -> Self {
        for c in &mut components {
            c.sort_unstable();
        }
        components.retain(|c| !c.is_empty());
        components.sort_unstable_by_key(|c| c[0]);
        ComponentPartition { components }
    }

    /// Groups vertices by label; labels are arbitrary.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        Self::from_components(groups.into_values().collect())
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// Component sizes, sorted ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.components.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    /// Component index of every vertex.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut labels = vec![usize::MAX; n];
        for (k, c) in self.components.iter().enumerate() {
            for &v in c {
                labels[v] = k;
            }
        }
        labels
    }

    /// The components with 1-based vertex ids.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.components
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect()
    }

    /// Checks the partition against `g`: disjoint cover of all vertices, no
    /// edge between different sets.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let labels = self.labels(g.vertex_count());
        let covered = self.components.iter().map(Vec::len).sum::<usize>() == g.vertex_count();
        covered
            && labels.iter().all(|&l| l != usize::MAX)
            && g.edges().iter().all(|&(a, b)| labels[a] == labels[b])
    }
}

/// Result of parsing an edge list, with counts of what normalization removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Parses the line-oriented edge-list format.
///
/// ```text
/// # optional comment
/// n 8
/// 1 2
/// 2 3
/// ```
///
/// Ids are 1-based. Without an `n` header the vertex count is the largest id
/// seen. Blank lines and `#` comments are skipped; CRLF is accepted.
pub fn load_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    let mut max_id = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared.is_some() || !pairs.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "the `n <count>` header must come before any edge".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected `n <count>`".into(),
                });
            }
            let n = tokens[1].parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("malformed vertex count {:?}", tokens[1]),
            })?;
            declared = Some(n);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two vertex ids, found {} tokens", tokens.len()),
            });
        }
        let a = parse_vertex(tokens[0], line_no)?;
        let b = parse_vertex(tokens[1], line_no)?;
        if let Some(n) = declared {
            for id in [a, b] {
                if id > n {
                    return Err(Error::VertexBeyondHeader { line: line_no, id, n });
                }
            }
        }
        max_id = max_id.max(a).max(b);
        pairs.push((line_no, a, b));
    }

    let n = declared.unwrap_or(max_id);
    let self_loops = pairs.iter().filter(|&&(_, a, b)| a == b).count();
    let proper = pairs.len() - self_loops;
    let graph = Graph::from_one_based(n, pairs.into_iter().map(|(_, a, b)| (a, b)))?;
    Ok(LoadedGraph {
        duplicate_edges: proper - graph.edge_count(),
        self_loops,
        graph,
    })
}

fn parse_vertex(token: &str, line: usize) -> Result<usize> {
    if let Ok(v) = token.parse::<i128>() {
        if v <= 0 {
            return Err(Error::InvalidVertexId {
                line,
                id: token.to_string(),
            });
        }
        return usize::try_from(v).map_err(|_| Error::InvalidVertexId {
            line,
            id: token.to_string(),
        });
    }
    Err(Error::Parse {
        line,
        message: format!("malformed vertex id {token:?}"),
    })
}

/// Writes `g` in the edge-list format, with an `n` header so isolated
/// trailing vertices survive a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    out.push_str(&format!("n {}\n", g.vertex_count()));
    for &(a, b) in g.edges() {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}
