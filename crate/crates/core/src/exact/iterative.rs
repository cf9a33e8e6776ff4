//! Jacobi and Gauss–Seidel iterations for `(A0 + d·I)·x = e_i`, generic over
//! the scalar so the same sweep runs in `f64` and in exact rationals.

use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};
use serde::Serialize;

use super::{solve_exact_with_cap, DEFAULT_EXACT_CAP};
use crate::error::Result;
use crate::graph::Graph;
use crate::params::MatrixParams;

/// Stationary method used for a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Jacobi,
    GaussSeidel,
}

pub trait Scalar: Clone + Num + Signed + PartialOrd {}
impl Scalar for f64 {}
impl Scalar for BigRational {}

/// Final iterate and error history of an iterative solve.
///
/// `errors_l1[k]` and `errors_linf[k]` are `‖x − x⁽ᵏ⁾‖` for `k = 0..=k_max`
/// in the 1- and ∞-norms. They are empty when no exact reference solution was
/// available (graph above the exact-mode cap).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveLog<T> {
    pub method: Method,
    pub x: Vec<T>,
    pub errors_l1: Vec<T>,
    pub errors_linf: Vec<T>,
}

impl<T: Scalar> SolveLog<T> {
    /// `errors[k] / errors[k-1]` for every step whose previous error is nonzero.
    pub fn ratios(errors: &[T]) -> Vec<T> {
        errors
            .windows(2)
            .filter(|w| !w[0].is_zero())
            .map(|w| w[1].clone() / w[0].clone())
            .collect()
    }
}

/// One sweep in place. `diag[j]` is `a_jj`; off-diagonal entries are the
/// unit adjacency.
pub(crate) fn sweep<T: Scalar>(g: &Graph, diag: &[T], rhs: usize, method: Method, x: &mut [T], prev: &mut [T]) {
    let n = g.vertex_count();
    if method == Method::Jacobi {
        prev.clone_from_slice(x);
    }
    for j in 0..n {
        let acc = {
            let source: &[T] = if method == Method::GaussSeidel { &*x } else { &*prev };
            let b = if j == rhs { T::one() } else { T::zero() };
            g.neighbors(j)
                .iter()
                .fold(b, |acc, &l| acc - source[l].clone())
        };
        x[j] = acc / diag[j].clone();
    }
}

fn errors<T: Scalar>(exact: &[T], x: &[T]) -> (T, T) {
    let mut l1 = T::zero();
    let mut linf = T::zero();
    for (e, v) in exact.iter().zip(x) {
        let diff = (e.clone() - v.clone()).abs();
        if diff > linf {
            linf = diff.clone();
        }
        l1 = l1 + diff;
    }
    (l1, linf)
}

pub(crate) fn run<T: Scalar>(
    g: &Graph,
    diag: &[T],
    rhs: usize,
    method: Method,
    k_max: usize,
    reference: Option<&[T]>,
) -> SolveLog<T> {
    let n = g.vertex_count();
    let mut x = vec![T::zero(); n];
    x[rhs] = T::one();
    let mut prev = x.clone();
    let mut errors_l1 = Vec::new();
    let mut errors_linf = Vec::new();
    let mut record = |x: &[T]| {
        if let Some(exact) = reference {
            let (l1, linf) = errors(exact, x);
            errors_l1.push(l1);
            errors_linf.push(linf);
        }
    };
    record(&x);
    for _ in 0..k_max {
        sweep(g, diag, rhs, method, &mut x, &mut prev);
        record(&x);
    }
    SolveLog {
        method,
        x,
        errors_l1,
        errors_linf,
    }
}

fn float_solve(g: &Graph, params: &MatrixParams, rhs: usize, k_max: usize, method: Method) -> Result<SolveLog<f64>> {
    g.check_vertex(rhs)?;
    params.validate_for(g)?;
    let reference: Option<Vec<f64>> = if g.vertex_count() <= DEFAULT_EXACT_CAP {
        let exact = solve_exact_with_cap(g, params, rhs, DEFAULT_EXACT_CAP)?;
        Some(exact.0.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
    } else {
        None
    };
    let diag = vec![params.d_f64(); g.vertex_count()];
    Ok(run(g, &diag, rhs, method, k_max, reference.as_deref()))
}

fn exact_solve(g: &Graph, params: &MatrixParams, rhs: usize, k_max: usize, method: Method) -> Result<SolveLog<BigRational>> {
    g.check_vertex(rhs)?;
    params.validate_for(g)?;
    let exact = solve_exact_with_cap(g, params, rhs, DEFAULT_EXACT_CAP)?;
    let diag = vec![params.d.clone(); g.vertex_count()];
    Ok(run(g, &diag, rhs, method, k_max, Some(&exact.0)))
}

/// `k_max` Gauss–Seidel sweeps in `f64` from `x⁽⁰⁾ = e_rhs`.
pub fn gauss_seidel_solve(g: &Graph, params: &MatrixParams, rhs: usize, k_max: usize) -> Result<SolveLog<f64>> {
    float_solve(g, params, rhs, k_max, Method::GaussSeidel)
}

/// `k_max` Jacobi sweeps in `f64` from `x⁽⁰⁾ = e_rhs`.
pub fn jacobi_solve(g: &Graph, params: &MatrixParams, rhs: usize, k_max: usize) -> Result<SolveLog<f64>> {
    float_solve(g, params, rhs, k_max, Method::Jacobi)
}

/// Gauss–Seidel in exact rational arithmetic; errors are exact.
pub fn gauss_seidel_exact(g: &Graph, params: &MatrixParams, rhs: usize, k_max: usize) -> Result<SolveLog<BigRational>> {
    exact_solve(g, params, rhs, k_max, Method::GaussSeidel)
}

/// Jacobi in exact rational arithmetic; errors are exact.
pub fn jacobi_exact(g: &Graph, params: &MatrixParams, rhs: usize, k_max: usize) -> Result<SolveLog<BigRational>> {
    exact_solve(g, params, rhs, k_max, Method::Jacobi)
}
