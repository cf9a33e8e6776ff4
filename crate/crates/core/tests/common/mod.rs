//! Test-side fixtures and oracles shared by the integration tests. Nothing
//! here calls into the solver code under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use perturbcc::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_one_based(n, edges.iter().copied()).unwrap()
}

/// The eight-vertex graph of the SIS/GSS worked example.
pub fn example_graph() -> Graph {
    one_based(8, &[(1, 2), (2, 3), (2, 6), (3, 4), (3, 7), (5, 6), (6, 7), (7, 8)])
}

/// Graph with exactly `k` components: vertices are shuffled into `k`
/// blocks, each block gets a random spanning tree and then every remaining
/// in-block pair with probability `p`. Single-vertex blocks stay isolated, so
/// `n == k` is the edgeless graph and `k == 1, p == 1` the complete one.
pub fn planted(n: usize, k: usize, p: f64, seed: u64) -> (Graph, Vec<Vec<usize>>) {
    assert!(1 <= k && k <= n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    // k - 1 distinct cut points in 1..n
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(k - 1).collect();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(n);
    let mut edges = Vec::new();
    let mut blocks = Vec::new();
    for w in cuts.windows(2) {
        let block = &order[w[0]..w[1]];
        for t in 1..block.len() {
            let parent = block[rng.random_range(0..t)];
            edges.push((parent, block[t]));
        }
        for a in 0..block.len() {
            for b in a + 1..block.len() {
                if rng.random_bool(p) {
                    edges.push((block[a], block[b]));
                }
            }
        }
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        blocks.push(sorted);
    }
    blocks.sort();
    (Graph::new(n, edges).unwrap(), blocks)
}

/// The corpus of acceptance criterion 1: `count` graphs with n in [1, 256],
/// 1 to 10 components, edge probabilities from 0 to 1.
pub fn oracle_corpus(count: usize, seed: u64) -> Vec<(Graph, Vec<Vec<usize>>)> {
    const DENSITIES: [f64; 7] = [0.0, 0.005, 0.02, 0.1, 0.3, 0.7, 1.0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|t| {
            let (n, k) = match t % 10 {
                // edgeless: every vertex its own component
                0 => {
                    let n = rng.random_range(1..=10);
                    (n, n)
                }
                // one complete block
                1 => (rng.random_range(1..=64), 1),
                _ => {
                    let n = rng.random_range(1..=256);
                    (n, rng.random_range(1..=n.min(10)))
                }
            };
            let p = match t % 10 {
                0 => 0.0,
                1 => 1.0,
                _ => DENSITIES[rng.random_range(0..DENSITIES.len())],
            };
            planted(n, k, p, seed ^ (t as u64).wrapping_mul(0x9E37_79B9))
        })
        .collect()
}

/// Uniform random simple graph: each pair independently with probability p.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Plain depth-first component labelling over an adjacency matrix.
pub fn dfs_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 0..n {
                if adj[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

pub fn component_of(components: &[Vec<usize>], v: usize) -> usize {
    components.iter().position(|c| c.contains(&v)).unwrap()
}

pub fn dense_matrix(g: &Graph, d: &BigRational) -> Vec<Vec<BigRational>> {
    let n = g.vertex_count();
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = d.clone();
    }
    for &(i, j) in g.edges() {
        a[i][j] = BigRational::one();
        a[j][i] = BigRational::one();
    }
    a
}

/// Gauss–Jordan elimination over the rationals with partial pivoting on the
/// first nonzero entry. Returns `None` for a singular system.
pub fn gauss_jordan(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for c in 0..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &f * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some(b)
}

/// Determinant by cofactor-free Gaussian elimination in rationals.
pub fn det_oracle(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    det
}

pub fn delete(a: &[Vec<BigRational>], row: usize, col: usize) -> Vec<Vec<BigRational>> {
    a.iter()
        .enumerate()
        .filter(|&(r, _)| r != row)
        .map(|(_, cells)| {
            cells
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != col)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

pub fn unit(n: usize, i: usize) -> Vec<BigRational> {
    (0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }).collect()
}

/// Default `(mu, d)` for a graph, recomputed from the degree sequence.
pub fn default_mu_d(g: &Graph) -> (i64, i64) {
    let dmax = (0..g.vertex_count()).map(|v| g.degree(v)).max().unwrap_or(0) as i64;
    if dmax == 0 {
        (2, 2)
    } else {
        let mu = dmax.max(2);
        (mu, mu * dmax)
    }
}

pub fn abs(x: &BigRational) -> BigRational {
    x.abs()
}

pub fn pow(base: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * base)
}

/// Decimal digit count of a positive integer.
pub fn digits(v: &BigInt) -> u64 {
    v.to_string().trim_start_matches('-').len() as u64
}

/// Every permutation of `0..n` (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Sign by counting inversions.
pub fn inversion_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
