//! Sharp `L^2` operator norm of the Cauchy transform on a circular annulus.
//!
//! For `A(r, R) = { z : r < |z| < R }` the Cauchy transform
//! `(C_A f)(z) = (1/pi) \int_A f(w) / (z - w) dA(w)` has operator norm
//! `2 / kappa_1`, where `kappa_1` is the smallest positive root of the
//! Bessel cross product `J_1(kr) Y_0(kR) - Y_1(kr) J_0(kR)`. This crate
//! computes that constant (and the companion Dirichlet-Cauchy norm
//! `2 / k_1`) from scratch, with its own Bessel functions, root finder and
//! eigensolvers, and ships the discretization oracles that verify every
//! analytic step: the per-mode action of the transform, the weighted Hardy
//! reduction, the Sturm–Liouville eigenvalue, and the explicit extremizer.
//!
//! ```
//! use cauchy_annulus::spectral::{cauchy_norm, AnnulusGeometry};
//!
//! let geom = AnnulusGeometry::new(0.5, 1.0)?;
//! let result = cauchy_norm(&geom)?;
//! assert!((result.norm * result.kappa - 2.0).abs() < 1e-12);
//! # Ok::<(), cauchy_annulus::spectral::SpectralError>(())
//! ```
//!
//! The narrative guide lives in `book/` (rendered with mdbook); its code
//! snippets are compiled and run as doc-tests through the [`guide`] module,
//! so the book cannot drift from the API.

pub mod bessel;
pub mod guide;
pub mod oracles;
pub mod roots;
pub mod spectral;
pub mod sweep;
pub mod verify;

pub use spectral::{AnnulusGeometry, DirichletResult, SpectralResult};
