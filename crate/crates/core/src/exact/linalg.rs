//! Exact dense linear algebra over the rationals.
//!
//! Rows are scaled to integers and reduced with Bareiss' fraction-free
//! elimination, so every intermediate value stays an integer and the only
//! rational arithmetic is in back substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Matrix = Vec<Vec<BigRational>>;

/// `A0 + d·I` as a dense rational matrix.
pub fn graph_matrix(g: &Graph, d: &BigRational) -> Matrix {
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

/// Deletes row `row` and column `col`.
pub fn minor(a: &[Vec<BigRational>], row: usize, col: usize) -> Matrix {
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

/// Multiplies each row by the lcm of its denominators. Returns the integer
/// rows and the per-row scale factors.
fn integer_rows(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        out.push(
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect(),
        );
        scales.push(lcm);
    }
    (out, scales)
}

/// Fraction-free forward elimination on the leading `n` columns of `m`
/// (extra columns are carried along). Returns the sign of the row
/// permutation, or `None` when the leading block is singular.
fn bareiss(m: &mut [Vec<BigInt>], n: usize) -> Option<i32> {
    let cols = m.first().map_or(0, Vec::len);
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                for cell in &mut row[k + 1..cols] {
                    *cell = if prev.is_one() {
                        &*cell * &pivot_row[k]
                    } else {
                        &*cell * &pivot_row[k] / &prev
                    };
                }
                continue;
            }
            for j in k + 1..cols {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Some(sign)
}

/// Exact determinant of a square rational matrix.
pub fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::one();
    }
    let (mut m, scales) = integer_rows(a);
    match bareiss(&mut m, n) {
        None => BigRational::zero(),
        Some(sign) => {
            let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
            BigRational::new(&m[n - 1][n - 1] * BigInt::from(sign), scale)
        }
    }
}

/// Solves `a·x = b` exactly.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let augmented: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (mut m, _) = integer_rows(&augmented);
    bareiss(&mut m, n).ok_or(Error::Singular)?;
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc -= &x[j] * &m[i][j];
            }
        }
        x[i] = acc / BigRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

pub fn mat_vec(a: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(c, _)| !c.is_zero())
                .fold(BigRational::zero(), |acc, (c, v)| acc + c * v)
        })
        .collect()
}
