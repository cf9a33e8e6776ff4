//! Brute-force determinant laboratory for small graphs.
//!
//! `det(A0 + d·I)` expands over the permutations *implemented* on the graph:
//! those mapping every vertex to itself (a loop of weight `d`) or to a
//! neighbour. Grouping them by the number of non-fixed points `l` gives the
//! integer coefficients of `det A(d) = Σ c_l·d^(n−l)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::graph::Graph;
use crate::params::MatrixParams;

/// Largest `n` for permutation enumeration (9! = 362 880).
pub const ENUMERATION_CAP: usize = 9;

fn check_enumeration_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            what: "permutation enumeration",
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// A permutation of `0..n` given by its images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] == s {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.0[v];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Total length of the non-trivial cycles (number of moved points).
    pub fn moved(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &p)| i != p).count()
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All permutations `π` with every `a[k][π(k)]` nonzero, in lexicographic
/// order of their image vectors.
fn nonzero_permutations(support: &dyn Fn(usize, usize) -> bool, n: usize) -> Vec<Permutation> {
    fn extend(
        k: usize,
        n: usize,
        support: &dyn Fn(usize, usize) -> bool,
        used: &mut [bool],
        current: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        if k == n {
            out.push(Permutation(current.clone()));
            return;
        }
        for target in 0..n {
            if !used[target] && support(k, target) {
                used[target] = true;
                current.push(target);
                extend(k + 1, n, support, used, current, out);
                current.pop();
                used[target] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(0, n, support, &mut vec![false; n], &mut Vec::with_capacity(n), &mut out);
    out
}

/// Permutations implemented on `g` (loops available at every vertex).
pub fn implemented_permutations(g: &Graph) -> Result<Vec<Permutation>> {
    let n = g.vertex_count();
    check_enumeration_cap(n)?;
    Ok(nonzero_permutations(&|a, b| a == b || g.has_edge(a, b), n))
}

/// Determinant by the permutation expansion, skipping zero products.
pub fn permutation_expansion(a: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = a.len();
    check_enumeration_cap(n)?;
    let perms = nonzero_permutations(&|r, c| !a[r][c].is_zero(), n);
    Ok(perms.iter().fold(BigRational::zero(), |acc, p| {
        let product = p
            .0
            .iter()
            .enumerate()
            .fold(BigRational::one(), |prod, (r, &c)| prod * &a[r][c]);
        if p.sign() > 0 {
            acc + product
        } else {
            acc - product
        }
    }))
}

/// Integer coefficients `c_0..c_n` of `det A(d) = Σ c_l·d^(n−l)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetPolynomial {
    pub coeffs: Vec<i64>,
}

impl DetPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, d: &BigRational) -> BigRational {
        // Horner in descending powers of d: c_0 is the leading coefficient.
        self.coeffs.iter().fold(BigRational::zero(), |acc, &c| {
            acc * d + BigRational::from_integer(BigInt::from(c))
        })
    }
}

impl fmt::Display for DetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut wrote = false;
        for (l, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let power = n - l;
            let magnitude = c.unsigned_abs();
            if wrote {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            if magnitude != 1 || power == 0 {
                write!(f, "{magnitude}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("d")?,
                p => write!(f, "d^{p}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det A(d)` as a polynomial in `d`, by enumerating implemented permutations.
pub fn det_polynomial(g: &Graph) -> Result<DetPolynomial> {
    let n = g.vertex_count();
    let mut coeffs = vec![0i64; n + 1];
    for p in implemented_permutations(g)? {
        coeffs[p.moved()] += p.sign();
    }
    Ok(DetPolynomial { coeffs })
}

/// The directed graph `G_ij`: both orientations of every edge, minus the
/// arcs leaving `i` and the arcs entering `j`, plus the arc `(i, j)`.
/// Every vertex other than `i` and `j` keeps its loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedMinorGraph {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub arcs: BTreeSet<(usize, usize)>,
}

impl DirectedMinorGraph {
    /// `A(G_ij)`: loops of weight `d` at every vertex except `i` and `j`,
    /// unit weight on arcs.
    pub fn matrix(&self, d: &BigRational) -> linalg::Matrix {
        let mut a = vec![vec![BigRational::zero(); self.n]; self.n];
        for (v, row) in a.iter_mut().enumerate() {
            if v != self.i && v != self.j {
                row[v] = d.clone();
            }
        }
        for &(u, v) in &self.arcs {
            a[u][v] = BigRational::one();
        }
        a
    }

    /// `det A(G_ij)` by permutation expansion. Equals the `(i, j)` cofactor
    /// of `A`, i.e. `(−1)^(i+j)·det A_ij`.
    pub fn determinant(&self, d: &BigRational) -> Result<BigRational> {
        permutation_expansion(&self.matrix(d))
    }
}

pub fn minor_graph(g: &Graph, i: usize, j: usize) -> Result<DirectedMinorGraph> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Err(Error::InvalidArgument(
            "minor graph needs i != j; use the principal minor det A_ii instead".into(),
        ));
    }
    let mut arcs = BTreeSet::new();
    for &(a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            if u != i && v != j {
                arcs.insert((u, v));
            }
        }
    }
    arcs.insert((i, j));
    Ok(DirectedMinorGraph {
        n: g.vertex_count(),
        i,
        j,
        arcs,
    })
}

/// `det A_ij`: the determinant of `A0 + d·I` with row `i` and column `j`
/// removed, by exact elimination.
pub fn minor_det(g: &Graph, params: &MatrixParams, i: usize, j: usize) -> Result<BigRational> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    let a = linalg::graph_matrix(g, &params.d);
    Ok(linalg::determinant(&linalg::minor(&a, i, j)))
}

/// `det(A0 + d·I)` by exact elimination.
pub fn graph_det(g: &Graph, d: &BigRational) -> BigRational {
    linalg::determinant(&linalg::graph_matrix(g, d))
}
