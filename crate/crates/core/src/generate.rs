//! Seeded graph generators for tests and benchmarks.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// How vertex labels are assigned by [`gen_chain_union`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    /// Chain `c` occupies labels `c·len .. (c+1)·len` in path order.
    Identity,
    /// Labels are a uniformly random permutation drawn from this seed.
    Shuffled(u64),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng(seed));
    perm
}

/// Disjoint union of `count` simple chains with `len` vertices each.
pub fn gen_chain_union(count: usize, len: usize, labeling: Labeling) -> Result<Graph> {
    if count == 0 || len == 0 {
        return Err(Error::InvalidArgument(
            "chain count and chain length must be at least 1".into(),
        ));
    }
    let n = count
        .checked_mul(len)
        .filter(|&n| n <= u32::MAX as usize)
        .ok_or_else(|| Error::Overflow(format!("{count} chains of {len} vertices")))?;
    let label: Vec<usize> = match labeling {
        Labeling::Identity => (0..n).collect(),
        Labeling::Shuffled(seed) => random_permutation(n, seed),
    };
    let edges = (0..count).flat_map(|c| {
        let base = c * len;
        let label = &label;
        (0..len - 1).map(move |p| (label[base + p], label[base + p + 1]))
    });
    Graph::new(n, edges)
}

/// A simple graph on `n` vertices with exactly `m` edges, drawn uniformly
/// from all such graphs.
pub fn gen_random_graph(n: usize, m: u64, seed: u64) -> Result<Graph> {
    let n64 = n as u64;
    let max = n64
        .checked_mul(n64.saturating_sub(1))
        .map(|p| p / 2)
        .ok_or_else(|| Error::Overflow(format!("pair count of {n} vertices")))?;
    if m > max {
        return Err(Error::EdgeCountOutOfRange { n, m, max });
    }
    let total = usize::try_from(max).map_err(|_| Error::Overflow("pair count".into()))?;
    let picks = index::sample(&mut rng(seed), total, m as usize);
    let edges: Vec<(usize, usize)> = picks.into_iter().map(|k| unrank_pair(n, k)).collect();
    Graph::new(n, edges)
}

/// Maps `k` in `0..n(n-1)/2` to the `k`-th pair `(i, j)`, `i < j`, in
/// lexicographic order.
fn unrank_pair(n: usize, k: usize) -> (usize, usize) {
    // Row i starts at offset(i) = i·n − i(i+1)/2.
    let offset = |i: usize| i * n - i * (i + 1) / 2;
    let (mut lo, mut hi) = (0usize, n - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if offset(mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let i = lo;
    (i, i + 1 + (k - offset(i)))
}

/// Random graph with `n` vertices whose union-find component count lies
/// between the number of planted groups and `n`: vertices are split into
/// `groups` blocks and edges are only drawn inside blocks.
pub fn gen_planted_components(n: usize, groups: usize, density: f64, seed: u64) -> Result<Graph> {
    if groups == 0 || groups > n.max(1) {
        return Err(Error::InvalidArgument(format!(
            "cannot plant {groups} groups in {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    let order = {
        let mut o: Vec<usize> = (0..n).collect();
        o.shuffle(&mut rng);
        o
    };
    let mut edges = Vec::new();
    let base = n / groups;
    let mut start = 0;
    for g in 0..groups {
        let size = base + usize::from(g < n % groups);
        let block = &order[start..start + size];
        start += size;
        for a in 0..block.len() {
            for b in a + 1..block.len() {
                if rand::Rng::random_bool(&mut rng, density.clamp(0.0, 1.0)) {
                    edges.push((block[a], block[b]));
                }
            }
        }
    }
    Graph::new(n, edges)
}
