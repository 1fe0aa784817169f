//! Brute-force verifications that are independent of the closed-form layer:
//! a finite-difference Sturm–Liouville eigensolver, singular values of the
//! discretized radial Hardy operator, the Rayleigh quotient, and direct 2D
//! quadrature of the Cauchy transform.
//!
//! Each oracle discretizes the analytic object from scratch; agreement with
//! the Bessel closed forms is what the acceptance suite checks.

mod hardy;
mod quadrature;
mod rayleigh;
mod sturm;

pub use hardy::{hardy_norm_discrete, DiscreteOperator};
pub use quadrature::{cauchy_apply_quadrature, PolarGrid};
pub use rayleigh::rayleigh_quotient;
pub use sturm::{sl_first_eigenpair_fd, sl_first_eigenvalue_fd, sl_first_eigenvalue_fd_dd};

use crate::spectral::{AnnulusGeometry, SpectralError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("invalid discretization: {0}")]
    InvalidGrid(String),
    #[error("eigen-iteration did not converge after {iterations} iterations (last relative change {last_delta:e})")]
    EigenIterationStalled { iterations: u32, last_delta: f64 },
    #[error("power iteration stagnated after {iterations} iterations (last relative change {last_delta:e})")]
    PowerIterationStalled { iterations: u32, last_delta: f64 },
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("evaluation point rho = {rho} lies outside the annulus ({inner}, {outer})")]
    OutsideDomain { rho: f64, inner: f64, outer: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Uniform midpoint (cell-centered) partition of `[r, R]` carrying the
/// radial weight: nodes `rho_i = r + (i + 1/2) h`, faces `r + i h`,
/// `h = (R - r)/n`. `weight_exponent` is 1 for the measure `rho d rho`
/// and `2m - 1` for the Sturm–Liouville weight.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    geometry: AnnulusGeometry,
    n: usize,
    h: f64,
    weight_exponent: i32,
}

impl RadialGrid {
    pub fn new(
        geometry: AnnulusGeometry,
        n: usize,
        weight_exponent: i32,
    ) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(OracleError::InvalidGrid("n must be positive".into()));
        }
        if geometry.is_disk() {
            return Err(OracleError::InvalidGrid(
                "radial oracles need r > 0 (weights degenerate at the origin)".into(),
            ));
        }
        Ok(Self {
            geometry,
            n,
            h: geometry.width() / n as f64,
            weight_exponent,
        })
    }

    pub fn geometry(&self) -> &AnnulusGeometry {
        &self.geometry
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn weight_exponent(&self) -> i32 {
        self.weight_exponent
    }

    /// Cell midpoint `rho_i`.
    pub fn node(&self, i: usize) -> f64 {
        self.geometry.inner() + (i as f64 + 0.5) * self.h
    }

    /// Cell face `r + i h`, for `i` in `0..=n`.
    pub fn face(&self, i: usize) -> f64 {
        self.geometry.inner() + i as f64 * self.h
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Weight `rho^p` at a point.
    pub fn weight_at(&self, rho: f64) -> f64 {
        rho.powi(self.weight_exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_grid_basics() {
        let g = AnnulusGeometry::new(0.5, 1.0).unwrap();
        let grid = RadialGrid::new(g, 8, 1).unwrap();
        assert_eq!(grid.len(), 8);
        assert!((grid.spacing() * 8.0 - g.width()).abs() < 1e-15);
        let nodes = grid.nodes();
        for w in nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(nodes[0] > g.inner() && *nodes.last().unwrap() < g.outer());
        assert!(RadialGrid::new(AnnulusGeometry::new(0.0, 1.0).unwrap(), 8, 1).is_err());
    }
}
