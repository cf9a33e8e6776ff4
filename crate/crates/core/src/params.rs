use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters of the modified matrix `A = A0 + d·I` and its perturbation
/// `A' = A + ε·E_i`.
///
/// `d` must strictly exceed the maximum degree so that `A` is strictly
/// diagonally dominant. All three values are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixParams {
    #[serde(serialize_with = "ratio_string")]
    pub mu: BigRational,
    #[serde(serialize_with = "ratio_string")]
    pub d: BigRational,
    #[serde(serialize_with = "ratio_string")]
    pub epsilon: BigRational,
}

pub(crate) fn ratio_string<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl MatrixParams {
    /// Default parameters for `g`: `μ = d_max` (at least 2), `d = μ·d_max`,
    /// `ε = 1`. An edgeless graph gets `d = μ = 2`.
    pub fn for_graph(g: &Graph) -> Self {
        let d_max = g.max_degree() as i64;
        if d_max == 0 {
            return MatrixParams {
                mu: int(2),
                d: int(2),
                epsilon: BigRational::one(),
            };
        }
        let mu = d_max.max(2);
        MatrixParams {
            mu: int(mu),
            d: int(mu * d_max),
            epsilon: BigRational::one(),
        }
    }

    /// `d = μ·d_max` for a caller-chosen `μ > 1`.
    pub fn with_mu(g: &Graph, mu: BigRational) -> Result<Self> {
        if mu <= BigRational::one() {
            return Err(Error::InvalidParams(format!("mu must exceed 1, got {mu}")));
        }
        let d_max = g.max_degree() as i64;
        let d = if d_max == 0 { mu.clone() } else { &mu * int(d_max) };
        Ok(MatrixParams {
            mu,
            d,
            epsilon: BigRational::one(),
        })
    }

    /// An explicit diagonal weight `d > d_max`; `μ` becomes `d / d_max`
    /// (or `d` itself for an edgeless graph).
    pub fn with_d(g: &Graph, d: BigRational) -> Result<Self> {
        let d_max = g.max_degree() as i64;
        if d <= int(d_max) || d <= BigRational::one() {
            return Err(Error::InvalidParams(format!(
                "d = {d} must exceed both 1 and the maximum degree {d_max}"
            )));
        }
        let mu = if d_max == 0 { d.clone() } else { &d / int(d_max) };
        Ok(MatrixParams {
            mu,
            d,
            epsilon: BigRational::one(),
        })
    }

    pub fn with_epsilon(mut self, epsilon: BigRational) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::InvalidParams(format!("epsilon must be positive, got {epsilon}")));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    /// Checks `d > d_max` for `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        if self.d <= int(g.max_degree() as i64) || self.d.is_zero() {
            return Err(Error::InvalidParams(format!(
                "d = {} is not above the maximum degree {}",
                self.d,
                g.max_degree()
            )));
        }
        if !self.epsilon.is_positive() {
            return Err(Error::InvalidParams("epsilon must be positive".into()));
        }
        Ok(())
    }

    pub fn d_f64(&self) -> f64 {
        self.d.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_mu_follows_max_degree() {
        let path = Graph::from_one_based(3, [(1, 2), (2, 3)]).unwrap();
        let p = MatrixParams::for_graph(&path);
        assert_eq!((p.mu.clone(), p.d.clone()), (int(2), int(4)));

        let edge = Graph::from_one_based(2, [(1, 2)]).unwrap();
        let p = MatrixParams::for_graph(&edge);
        assert_eq!((p.mu.clone(), p.d.clone()), (int(2), int(2)));

        let star = Graph::from_one_based(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(MatrixParams::for_graph(&star).d, int(9));
    }

    #[test]
    fn edgeless_graph_uses_two() {
        let p = MatrixParams::for_graph(&Graph::edgeless(3));
        assert_eq!(p.d, int(2));
        assert!(p.validate_for(&Graph::edgeless(3)).is_ok());
    }

    #[test]
    fn rejects_non_dominant_d() {
        let path = Graph::from_one_based(3, [(1, 2), (2, 3)]).unwrap();
        assert!(MatrixParams::with_d(&path, int(2)).is_err());
        assert!(MatrixParams::with_mu(&path, int(1)).is_err());
        let p = MatrixParams::with_d(&path, int(3)).unwrap();
        assert_eq!(p.mu, BigRational::new(3.into(), 2.into()));
        assert!(p.with_epsilon(int(0)).is_err());
    }
}
