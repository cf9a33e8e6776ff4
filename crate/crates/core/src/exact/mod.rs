//! The perturbation test for component membership, in exact arithmetic.
//!
//! For a perturbed vertex `i`, solve `A·x = e_i` and `A'·x' = e_i` with
//! `A = A0 + d·I` and `A' = A + ε·E_i`. A vertex `j` lies in the component of
//! `i` exactly when `x'_j ≠ x_j`. Both solves are exact, so the comparison is
//! a rational inequality with no tolerance.

pub mod bounds;
pub mod iterative;
pub mod linalg;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::MatrixParams;

pub use bounds::{
    bound_report, delta_bound, required_iterations, required_iterations_dmax_mode,
    required_mantissa, BoundReport,
};
pub use iterative::{gauss_seidel_exact, gauss_seidel_solve, jacobi_exact, jacobi_solve, Method, SolveLog};

/// Largest vertex count accepted by exact solves unless a caller raises it.
pub const DEFAULT_EXACT_CAP: usize = 64;

/// An exact solution vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactVector(pub Vec<BigRational>);

impl ExactVector {
    pub fn l1_norm(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, v| acc + v.abs())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.vertex_count() > cap {
        return Err(Error::TooLarge {
            what: "exact mode",
            n: g.vertex_count(),
            cap,
        });
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::zero(); n];
    b[i] = BigRational::from_integer(1.into());
    b
}

/// Exact solution of `(A0 + d·I)·x = e_rhs`.
pub fn solve_exact(g: &Graph, params: &MatrixParams, rhs: usize) -> Result<ExactVector> {
    solve_exact_with_cap(g, params, rhs, DEFAULT_EXACT_CAP)
}

pub fn solve_exact_with_cap(g: &Graph, params: &MatrixParams, rhs: usize, cap: usize) -> Result<ExactVector> {
    check_cap(g, cap)?;
    g.check_vertex(rhs)?;
    params.validate_for(g)?;
    let a = linalg::graph_matrix(g, &params.d);
    linalg::solve(&a, &unit(g.vertex_count(), rhs)).map(ExactVector)
}

/// Both solutions of the perturbation test and the component they imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbOutcome {
    pub perturbed: usize,
    /// Vertices `j` with `x'_j ≠ x_j`, plus the perturbed vertex; ascending.
    pub component: Vec<usize>,
    pub x: ExactVector,
    pub x_perturbed: ExactVector,
}

impl PerturbOutcome {
    /// `|x'_j − x_j|` for every vertex.
    pub fn gaps(&self) -> Vec<BigRational> {
        self.x
            .0
            .iter()
            .zip(&self.x_perturbed.0)
            .map(|(a, b)| (b - a).abs())
            .collect()
    }
}

/// Component of vertex `i` by the exact perturbation test.
pub fn perturb_component(g: &Graph, params: &MatrixParams, i: usize) -> Result<PerturbOutcome> {
    perturb_component_with_cap(g, params, i, DEFAULT_EXACT_CAP)
}

pub fn perturb_component_with_cap(g: &Graph, params: &MatrixParams, i: usize, cap: usize) -> Result<PerturbOutcome> {
    check_cap(g, cap)?;
    g.check_vertex(i)?;
    params.validate_for(g)?;
    let n = g.vertex_count();
    let b = unit(n, i);
    let mut a = linalg::graph_matrix(g, &params.d);
    let x = linalg::solve(&a, &b)?;
    a[i][i] += &params.epsilon;
    let x_perturbed = linalg::solve(&a, &b)?;
    let component = (0..n).filter(|&j| j == i || x[j] != x_perturbed[j]).collect();
    Ok(PerturbOutcome {
        perturbed: i,
        component,
        x: ExactVector(x),
        x_perturbed: ExactVector(x_perturbed),
    })
}

/// Result of the floating-point form of the perturbation test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatMembership {
    pub component: Vec<usize>,
    /// Gauss–Seidel sweeps run on each system.
    pub sweeps: u64,
    /// Decision threshold `Δ/2`.
    pub threshold: f64,
}

/// The perturbation test with `f64` Gauss–Seidel solves: run the bound's
/// sweep count on both systems and accept `j` when `|x'_j − x_j| > Δ/2`.
///
/// Only trustworthy while `Δ` is well above `f64` resolution, i.e. for small
/// graphs; larger inputs are rejected.
pub fn perturb_component_float(g: &Graph, params: &MatrixParams, i: usize) -> Result<FloatMembership> {
    const FLOAT_CAP: usize = 6;
    check_cap(g, FLOAT_CAP)?;
    g.check_vertex(i)?;
    params.validate_for(g)?;
    let n = g.vertex_count();
    let delta = delta_bound(n, &params.d)?;
    let sweeps = required_iterations(n, &params.mu, &params.d)?;
    let threshold = delta.to_f64().unwrap_or(0.0) / 2.0;
    let d = params.d_f64();
    let mut diag = vec![d; n];
    let plain = iterative::run(g, &diag, i, Method::GaussSeidel, sweeps as usize, None);
    diag[i] += params.epsilon.to_f64().unwrap_or(f64::NAN);
    let perturbed = iterative::run(g, &diag, i, Method::GaussSeidel, sweeps as usize, None);
    let component = (0..n)
        .filter(|&j| j == i || (perturbed.x[j] - plain.x[j]).abs() > threshold)
        .collect();
    Ok(FloatMembership {
        component,
        sweeps,
        threshold,
    })
}
