//! Accuracy bounds for the numerical form of the perturbation test.
//!
//! * `Δ = 1 / (2·d^{2n})` lower-bounds `|x'_j − x_j|` for vertices in the
//!   perturbed vertex's component when `ε = 1`.
//! * `N = ⌈2n·log_μ d + 1⌉` Gauss–Seidel sweeps bring the error below `Δ/4`.
//! * `L = ⌈2n·lg d + 1⌉` decimal mantissa digits resolve a gap of size `Δ`.
//!
//! The two ceilings are computed exactly by comparing integer powers, so
//! boundary cases such as `μ = d_max` (where `log_μ d = 2`) do not depend on
//! floating-point logarithms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::{int, ratio_string, MatrixParams};

/// `1 / (2·d^{2n})`.
pub fn delta_bound(n: usize, d: &BigRational) -> Result<BigRational> {
    if n == 0 || *d <= BigRational::one() {
        return Err(Error::InvalidParams(format!(
            "delta bound needs n >= 1 and d > 1 (n = {n}, d = {d})"
        )));
    }
    Ok((int(2) * num_traits::pow(d.clone(), 2 * n)).recip())
}

/// Smallest integer `k >= 0` with `base^k >= target`, for `base > 1`.
fn least_power_at_least(base: &BigRational, target: &BigRational, estimate: f64) -> usize {
    let mut k = if estimate.is_finite() && estimate > 0.0 {
        estimate.ceil() as usize
    } else {
        0
    };
    let mut p = num_traits::pow(base.clone(), k);
    while p < *target {
        p *= base;
        k += 1;
    }
    while k > 0 {
        let below = &p / base;
        if below < *target {
            break;
        }
        p = below;
        k -= 1;
    }
    k
}

/// Sweeps needed so that `δ0 / μ^N < Δ / 4`: `N = ⌈2n·log_μ d + 1⌉`.
pub fn required_iterations(n: usize, mu: &BigRational, d: &BigRational) -> Result<u64> {
    if *mu <= BigRational::one() || *d <= BigRational::one() {
        return Err(Error::InvalidParams(format!(
            "required iterations need mu > 1 and d > 1 (mu = {mu}, d = {d})"
        )));
    }
    // N − 1 >= 2n·log_μ d  <=>  μ^(N−1) >= d^(2n)
    let target = num_traits::pow(d.clone(), 2 * n);
    let estimate = 2.0 * n as f64 * ratio_ln(d) / ratio_ln(mu);
    Ok(least_power_at_least(mu, &target, estimate - 1.0) as u64 + 1)
}

/// `4n + 1`: the sweep count when `μ = d_max`, i.e. `d = μ²`.
pub fn required_iterations_dmax_mode(n: usize) -> u64 {
    4 * n as u64 + 1
}

/// Decimal mantissa digits needed to resolve `Δ`: `L = ⌈2n·lg d + 1⌉`.
pub fn required_mantissa(n: usize, d: &BigRational) -> Result<u64> {
    if *d <= BigRational::one() {
        return Err(Error::InvalidParams(format!("mantissa bound needs d > 1, got {d}")));
    }
    // L − 1 >= 2n·lg d  <=>  10^(L−1) >= d^(2n)
    let target = num_traits::pow(d.clone(), 2 * n);
    let ten = int(10);
    let estimate = 2.0 * n as f64 * ratio_ln(d) / 10f64.ln();
    Ok(least_power_at_least(&ten, &target, estimate - 1.0) as u64 + 1)
}

fn ratio_ln(r: &BigRational) -> f64 {
    // ln(p/q) without converting possibly huge p, q to f64 directly.
    big_ln(r.numer()) - big_ln(r.denom())
}

fn big_ln(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// The three bounds for a graph and its matrix parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    #[serde(serialize_with = "ratio_string")]
    pub delta: BigRational,
    pub iterations: u64,
    pub mantissa_digits: u64,
}

pub fn bound_report(g: &Graph, params: &MatrixParams) -> Result<BoundReport> {
    let n = g.vertex_count();
    Ok(BoundReport {
        n,
        delta: delta_bound(n, &params.d)?,
        iterations: required_iterations(n, &params.mu, &params.d)?,
        mantissa_digits: required_mantissa(n, &params.d)?,
    })
}
