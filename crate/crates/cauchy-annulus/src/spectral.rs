//! Closed-form layer: Bessel cross-product determinants, their smallest
//! positive roots, the sharp operator norms they induce, and the explicit
//! extremizer profile.
//!
//! For the annulus `A(r, R)` the sharp `L^2 -> L^2` norm of the Cauchy
//! transform is `2 / kappa_1`, where `kappa_1` is the smallest positive root
//! of `J_1(kr) Y_0(kR) - Y_1(kr) J_0(kR)`. Equivalently `kappa_1^2` is the
//! first eigenvalue of the Laplacian with a Neumann condition on the inner
//! circle and a Dirichlet condition on the outer one. The Dirichlet-Cauchy
//! operator (gradient of the zero-Dirichlet Poisson solve) has sharp norm
//! `2 / k_1` with `k_1^2` the first Dirichlet eigenvalue, the smallest root
//! of `J_0(kr) Y_0(kR) - J_0(kR) Y_0(kr)`.

use crate::bessel::{self, BesselError};
use crate::roots::{self, RootConfig, RootError};
use thiserror::Error;

/// Largest angular mode accepted by [`mode_norm`].
pub const MODE_CAP: i32 = 64;

/// Below `r / R = NEAR_DISK_RATIO` the cross-product evaluation is
/// ill-conditioned; results are still computed but callers may want to
/// warn or switch to the exact disk limit at `r = 0`.
pub const NEAR_DISK_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid annulus geometry: {0}")]
    InvalidGeometry(String),
    #[error("mode m = {m} outside the supported range |m| <= {MODE_CAP}")]
    ModeOutOfRange { m: i32 },
    #[error("operation requires m >= 1, got m = {m}")]
    ModeNotPositive { m: u32 },
    #[error("r = 0 is a disk: the cross product is undefined ({0})")]
    DiskPathRequired(&'static str),
    #[error("extremizer profile needs at least 2 samples, got {n}")]
    TooFewSamples { n: usize },
    #[error("root accepted by refinement fails the sign cross-check at root +- 10 tol")]
    RootSignCheckFailed,
    #[error(transparent)]
    Bessel(#[from] BesselError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// The ring `A(r, R) = { z : r < |z| < R }` with `0 <= r < R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusGeometry {
    inner: f64,
    outer: f64,
}

impl AnnulusGeometry {
    pub fn new(r: f64, big_r: f64) -> Result<Self, SpectralError> {
        if !r.is_finite() || !big_r.is_finite() {
            return Err(SpectralError::InvalidGeometry(format!(
                "radii must be finite, got r = {r}, R = {big_r}"
            )));
        }
        if r < 0.0 {
            return Err(SpectralError::InvalidGeometry(format!(
                "inner radius must be nonnegative, got r = {r}"
            )));
        }
        if r >= big_r {
            return Err(SpectralError::InvalidGeometry(format!(
                "radii must satisfy r < R, got r = {r}, R = {big_r}"
            )));
        }
        Ok(Self {
            inner: r,
            outer: big_r,
        })
    }

    /// Inner radius `r` (zero for the disk).
    pub fn inner(&self) -> f64 {
        self.inner
    }

    /// Outer radius `R`.
    pub fn outer(&self) -> f64 {
        self.outer
    }

    /// Radial width `R - r`.
    pub fn width(&self) -> f64 {
        self.outer - self.inner
    }

    /// Radius ratio `r / R` in `[0, 1)`.
    pub fn ratio(&self) -> f64 {
        self.inner / self.outer
    }

    pub fn is_disk(&self) -> bool {
        self.inner == 0.0
    }

    /// True when `0 < r < 1e-6 R`, where the cross product loses precision.
    pub fn is_near_disk(&self) -> bool {
        self.inner > 0.0 && self.inner < NEAR_DISK_RATIO * self.outer
    }
}

/// How a spectral quantity was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    /// Smallest positive root of the Bessel cross product.
    CrossProduct,
    /// Exact disk limit `r = 0`: a zero of a single Bessel function over `R`.
    DiskLimit,
}

/// A solved mixed (Neumann-inner / Dirichlet-outer) eigenvalue problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResult {
    /// Requested angular mode (may be any integer in `[-64, 64]`).
    pub mode: i32,
    /// Reduced index `m >= 1` actually solved; `1 - mode` for `mode <= 0`.
    pub hardy_mode: u32,
    /// Smallest positive root `kappa_{m,1}`, units 1/length.
    pub kappa: f64,
    /// Eigenvalue `mu_m = kappa^2`, units 1/length^2.
    pub mu: f64,
    /// Sharp norm `2 / kappa`, units length.
    pub norm: f64,
    pub method: SolveMethod,
}

impl SpectralResult {
    fn from_kappa(mode: i32, hardy_mode: u32, kappa: f64, method: SolveMethod) -> Self {
        Self {
            mode,
            hardy_mode,
            kappa,
            mu: kappa * kappa,
            norm: 2.0 / kappa,
            method,
        }
    }
}

/// The first Dirichlet eigenvalue data of the annulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletResult {
    /// `k_1 = sqrt(lambda_1)`, units 1/length.
    pub k1: f64,
    /// Sharp Dirichlet-Cauchy norm `2 / k_1`, units length.
    pub norm: f64,
    /// First Dirichlet eigenvalue `lambda_1 = k_1^2`.
    pub lambda1: f64,
    pub method: SolveMethod,
}

/// Root-solver knobs shared by all closed-form operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Relative tolerance handed to the root refinement (default `1e-12`).
    pub rel_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-12 }
    }
}

/// Mixed-condition determinant
/// `J_m(kr) Y_{m-1}(kR) - Y_m(kr) J_{m-1}(kR)` for `m >= 1`.
pub fn det_nd(m: u32, kappa: f64, geom: &AnnulusGeometry) -> Result<f64, SpectralError> {
    if m < 1 {
        return Err(SpectralError::ModeNotPositive { m });
    }
    if geom.is_disk() {
        return Err(SpectralError::DiskPathRequired("det_nd"));
    }
    let xr = kappa * geom.inner;
    let xr_cap = kappa * geom.outer;
    Ok(bessel::bessel_j(m, xr)? * bessel::bessel_y(m - 1, xr_cap)?
        - bessel::bessel_y(m, xr)? * bessel::bessel_j(m - 1, xr_cap)?)
}

/// Dirichlet-Dirichlet cross product `J_0(kr) Y_0(kR) - J_0(kR) Y_0(kr)`.
pub fn det_dd(kappa: f64, geom: &AnnulusGeometry) -> Result<f64, SpectralError> {
    if geom.is_disk() {
        return Err(SpectralError::DiskPathRequired("det_dd"));
    }
    let xr = kappa * geom.inner;
    let xr_cap = kappa * geom.outer;
    Ok(bessel::bessel_j(0, xr)? * bessel::bessel_y(0, xr_cap)?
        - bessel::bessel_j(0, xr_cap)? * bessel::bessel_y(0, xr)?)
}

/// Scan stride: eight samples per expected root spacing `pi / (R - r)`,
/// capped at 1/8.
fn scan_step(geom: &AnnulusGeometry) -> f64 {
    (core::f64::consts::PI / geom.width()).min(1.0) / 8.0
}

/// Scan ceiling from the variational bound
/// `mu_m <= pi^2/(R-r)^2 + (m-1)^2/r^2` (test function `sin(pi (R-rho)/(R-r))`).
fn scan_limit(geom: &AnnulusGeometry, m: u32) -> f64 {
    let width = geom.width();
    let base = core::f64::consts::PI / width;
    let angular = if m > 1 {
        (m - 1) as f64 / geom.inner
    } else {
        0.0
    };
    1.05 * (base * base + angular * angular).sqrt() + 2.0 * scan_step(geom)
}

/// Refine-then-cross-check: the sign of the determinant must flip across
/// `root +- 10 tol`, with `tol = rel_tol * max(1, |root|)` the refinement
/// stopping width, so refinement cannot have settled on a local minimum.
fn checked_root<F: Fn(f64) -> f64>(
    f: F,
    cfg: &RootConfig,
) -> Result<f64, SpectralError> {
    let root = roots::smallest_positive_root(&f, cfg)?;
    let delta = 10.0 * cfg.rel_tol * root.abs().max(1.0);
    let lo = f(root - delta);
    let hi = f(root + delta);
    if lo * hi > 0.0 {
        return Err(SpectralError::RootSignCheckFailed);
    }
    Ok(root)
}

/// Smallest positive zero of `J_k`; `k = 0` delegates to the cached `j01`.
fn first_jk_zero(k: u32) -> Result<f64, SpectralError> {
    if k == 0 {
        return Ok(bessel::j01());
    }
    // first zero sits in (k, k + 2 k^{1/3} + 4)
    let kf = k as f64;
    let cfg = RootConfig {
        scan_start: kf.max(0.3),
        scan_step: 0.25,
        scan_limit: kf + 3.5 * kf.cbrt() + 6.0,
        rel_tol: 1e-14,
        max_iter: 200,
    };
    Ok(roots::smallest_positive_root(
        |x| bessel::bessel_j(k, x).unwrap_or(f64::NAN),
        &cfg,
    )?)
}

/// `kappa_{m,1}`: smallest positive root of [`det_nd`] for mode `m >= 1`,
/// packaged as a [`SpectralResult`] with `mu = kappa^2`, `norm = 2/kappa`.
///
/// At `r = 0` the cross product degenerates and the exact disk limit
/// `kappa = j_{m-1,1} / R` is returned instead.
pub fn kappa_nd(m: u32, geom: &AnnulusGeometry) -> Result<SpectralResult, SpectralError> {
    kappa_nd_with(m, geom, &SolveOptions::default())
}

pub fn kappa_nd_with(
    m: u32,
    geom: &AnnulusGeometry,
    opts: &SolveOptions,
) -> Result<SpectralResult, SpectralError> {
    if m < 1 {
        return Err(SpectralError::ModeNotPositive { m });
    }
    if geom.is_disk() {
        let kappa = first_jk_zero(m - 1)? / geom.outer;
        return Ok(SpectralResult::from_kappa(
            m as i32,
            m,
            kappa,
            SolveMethod::DiskLimit,
        ));
    }
    let step = scan_step(geom);
    // Modes m >= 2 scan from just below kappa_{1,1}: mu_m >= mu_1, and the
    // determinant at tiny kappa*r would overflow Y_m for large m.
    let scan_start = if m == 1 {
        1e-4 / geom.width()
    } else {
        0.95 * kappa_nd_with(1, geom, opts)?.kappa
    };
    let cfg = RootConfig {
        scan_start,
        scan_step: step,
        scan_limit: scan_limit(geom, m),
        rel_tol: opts.rel_tol,
        max_iter: 200,
    };
    let kappa = checked_root(|k| det_nd(m, k, geom).unwrap_or(f64::NAN), &cfg)?;
    Ok(SpectralResult::from_kappa(
        m as i32,
        m,
        kappa,
        SolveMethod::CrossProduct,
    ))
}

/// Sharp `L^2` norm of the Cauchy transform on `A(r, R)`: the `m = 1`
/// spectral result, whose `norm` field is `2 / kappa_1`.
pub fn cauchy_norm(geom: &AnnulusGeometry) -> Result<SpectralResult, SpectralError> {
    kappa_nd(1, geom)
}

pub fn cauchy_norm_with(
    geom: &AnnulusGeometry,
    opts: &SolveOptions,
) -> Result<SpectralResult, SpectralError> {
    kappa_nd_with(1, geom, opts)
}

/// Per-mode norm of the Cauchy transform. Modes `m <= 0` reduce to the
/// positive index `1 - m`; the result records both.
pub fn mode_norm(m: i32, geom: &AnnulusGeometry) -> Result<SpectralResult, SpectralError> {
    mode_norm_with(m, geom, &SolveOptions::default())
}

pub fn mode_norm_with(
    m: i32,
    geom: &AnnulusGeometry,
    opts: &SolveOptions,
) -> Result<SpectralResult, SpectralError> {
    if m.abs() > MODE_CAP {
        return Err(SpectralError::ModeOutOfRange { m });
    }
    let reduced = if m >= 1 { m as u32 } else { (1 - m) as u32 };
    let solved = kappa_nd_with(reduced, geom, opts)?;
    Ok(SpectralResult {
        mode: m,
        ..solved
    })
}

/// `k_1 = sqrt(lambda_1)`: smallest positive root of [`det_dd`], with the
/// sharp Dirichlet-Cauchy norm `2 / k_1`.
pub fn dirichlet_k1(geom: &AnnulusGeometry) -> Result<DirichletResult, SpectralError> {
    dirichlet_k1_with(geom, &SolveOptions::default())
}

pub fn dirichlet_k1_with(
    geom: &AnnulusGeometry,
    opts: &SolveOptions,
) -> Result<DirichletResult, SpectralError> {
    if geom.is_disk() {
        let k1 = bessel::j01() / geom.outer;
        return Ok(DirichletResult {
            k1,
            norm: 2.0 / k1,
            lambda1: k1 * k1,
            method: SolveMethod::DiskLimit,
        });
    }
    let step = scan_step(geom);
    let cfg = RootConfig {
        scan_start: 1e-4 / geom.width(),
        scan_step: step,
        scan_limit: scan_limit(geom, 1),
        rel_tol: opts.rel_tol,
        max_iter: 200,
    };
    let k1 = checked_root(|k| det_dd(k, geom).unwrap_or(f64::NAN), &cfg)?;
    Ok(DirichletResult {
        k1,
        norm: 2.0 / k1,
        lambda1: k1 * k1,
        method: SolveMethod::CrossProduct,
    })
}

/// One sample of the extremizer profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub rho: f64,
    pub f: f64,
    pub f_prime: f64,
}

/// Sampled first eigenfunction
/// `F(rho) = c ( Y_0(kappa R) J_0(kappa rho) - J_0(kappa R) Y_0(kappa rho) )`
/// of the mixed problem, normalized to unit interior sup-norm with `F > 0`.
///
/// The extremal input of the Cauchy transform is the mode-one field built
/// from `F'`; `F(R) = 0` holds exactly by construction and `F'(r) = 0` up to
/// root tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremizerProfile {
    pub geometry: AnnulusGeometry,
    /// The underlying root `kappa_1`.
    pub kappa: f64,
    /// Sign-and-scale normalization constant.
    pub c: f64,
    pub samples: Vec<ProfileSample>,
}

impl ExtremizerProfile {
    /// Closed-form `F(rho)`; no numerical differentiation anywhere.
    pub fn eval_f(&self, rho: f64) -> Result<f64, SpectralError> {
        let k = self.kappa;
        let xr_cap = k * self.geometry.outer();
        Ok(self.c
            * (bessel::bessel_y(0, xr_cap)? * bessel::bessel_j(0, k * rho)?
                - bessel::bessel_j(0, xr_cap)? * bessel::bessel_y(0, k * rho)?))
    }

    /// Closed-form `F'(rho) = c kappa ( J_0(kappa R) Y_1(kappa rho)
    /// - Y_0(kappa R) J_1(kappa rho) )`.
    pub fn eval_f_prime(&self, rho: f64) -> Result<f64, SpectralError> {
        let k = self.kappa;
        let xr_cap = k * self.geometry.outer();
        Ok(self.c
            * k
            * (bessel::bessel_j(0, xr_cap)? * bessel::bessel_y(1, k * rho)?
                - bessel::bessel_y(0, xr_cap)? * bessel::bessel_j(1, k * rho)?))
    }
}

/// Sample the extremizer profile on the uniform `n_samples`-point grid over
/// `[r, R]` (endpoints included).
pub fn extremizer(
    geom: &AnnulusGeometry,
    n_samples: usize,
) -> Result<ExtremizerProfile, SpectralError> {
    if geom.is_disk() {
        return Err(SpectralError::DiskPathRequired("extremizer"));
    }
    if n_samples < 2 {
        return Err(SpectralError::TooFewSamples { n: n_samples });
    }
    let kappa = kappa_nd(1, geom)?.kappa;
    let (r, big_r) = (geom.inner(), geom.outer());

    let raw = ExtremizerProfile {
        geometry: *geom,
        kappa,
        c: 1.0,
        samples: Vec::new(),
    };
    // sign at the midpoint, then scale so the interior max is exactly 1
    let sign = raw.eval_f(0.5 * (r + big_r))?.signum();
    let h = geom.width() / (n_samples - 1) as f64;
    let grid: Vec<f64> = (0..n_samples)
        .map(|i| {
            if i + 1 == n_samples {
                big_r // exact endpoint so F(R) cancels bit-exactly
            } else {
                r + i as f64 * h
            }
        })
        .collect();
    let mut max_interior = 0.0f64;
    let mut values = Vec::with_capacity(n_samples);
    for (i, &rho) in grid.iter().enumerate() {
        let f = raw.eval_f(rho)?;
        let fp = raw.eval_f_prime(rho)?;
        if i + 1 < n_samples {
            max_interior = max_interior.max(sign * f);
        }
        values.push((rho, f, fp));
    }
    if max_interior <= 0.0 {
        return Err(SpectralError::InvalidGeometry(
            "extremizer normalization failed: profile has no positive interior part".into(),
        ));
    }
    let c = sign / max_interior;
    Ok(ExtremizerProfile {
        geometry: *geom,
        kappa,
        c,
        samples: values
            .into_iter()
            .map(|(rho, f, fp)| ProfileSample {
                rho,
                f: c * f,
                f_prime: c * fp,
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    const TWO_OVER_J01: f64 = 0.831_661_154_631_247_6; // 2 / 2.4048255577

    fn geom(r: f64, big_r: f64) -> AnnulusGeometry {
        AnnulusGeometry::new(r, big_r).unwrap()
    }

    #[test]
    fn geometry_validation() {
        assert!(AnnulusGeometry::new(-0.1, 1.0).is_err());
        assert!(AnnulusGeometry::new(1.0, 1.0).is_err());
        assert!(AnnulusGeometry::new(1.0, 0.5).is_err());
        assert!(AnnulusGeometry::new(f64::NAN, 1.0).is_err());
        assert!(AnnulusGeometry::new(0.0, 1.0).unwrap().is_disk());
    }

    #[test]
    fn det_nd_vanishes_at_root() {
        let g = geom(0.5, 1.0);
        let res = kappa_nd(1, &g).unwrap();
        assert!(det_nd(1, res.kappa, &g).unwrap().abs() < 1e-10);
    }

    #[test]
    fn det_nd_no_root_near_zero() {
        let g = geom(0.5, 1.0);
        let a = det_nd(1, 0.01, &g).unwrap();
        let b = det_nd(1, 0.02, &g).unwrap();
        assert!(a * b > 0.0);
    }

    #[test]
    fn det_dd_vanishes_at_root_and_antisymmetry() {
        let g = geom(0.5, 1.0);
        let res = dirichlet_k1(&g).unwrap();
        assert!(det_dd(res.k1, &g).unwrap().abs() < 1e-10);

        // swapping the roles of r and R flips the sign
        let k = 3.3;
        let (r, big_r) = (0.5, 1.0);
        let swapped = bessel::bessel_j(0, k * big_r).unwrap() * bessel::bessel_y(0, k * r).unwrap()
            - bessel::bessel_j(0, k * r).unwrap() * bessel::bessel_y(0, k * big_r).unwrap();
        assert!(det_dd(k, &g).unwrap() * swapped <= 0.0);
    }

    #[test]
    fn dd_root_within_spacing_bracket() {
        // smallest root lies within (0.5, 1.5) * pi/(R - r)
        let g = geom(0.5, 1.0);
        let k1 = dirichlet_k1(&g).unwrap().k1;
        let spacing = core::f64::consts::PI / g.width();
        assert!(k1 > 0.5 * spacing && k1 < 1.5 * spacing);
    }

    #[test]
    fn kappa_near_disk_limit() {
        let res = kappa_nd(1, &geom(1e-8, 1.0)).unwrap();
        assert_abs_diff_eq!(res.kappa, bessel::j01(), epsilon = 1e-5);
        assert_eq!(res.method, SolveMethod::CrossProduct);
        assert!(geom(1e-8, 1.0).is_near_disk());
    }

    #[test]
    fn disk_paths_exact() {
        let res = kappa_nd(1, &geom(0.0, 1.0)).unwrap();
        assert_eq!(res.method, SolveMethod::DiskLimit);
        assert_eq!(res.kappa, bessel::j01());

        let d = dirichlet_k1(&geom(0.0, 2.0)).unwrap();
        assert_eq!(d.method, SolveMethod::DiskLimit);
        assert_eq!(d.k1, bessel::j01() / 2.0);

        // higher disk modes: kappa = j_{m-1,1} / R, increasing in m
        let m2 = kappa_nd(2, &geom(0.0, 1.0)).unwrap();
        let m3 = kappa_nd(3, &geom(0.0, 1.0)).unwrap();
        assert!(m2.kappa > res.kappa && m3.kappa > m2.kappa);
    }

    #[test]
    fn large_outer_radius_sub_unit_roots() {
        // kappa ~ 2.4e-3 here; the sign cross-check must use the refinement
        // width max(1, |root|) * rel_tol, not a root-relative window. That
        // same stopping rule caps the achievable relative accuracy of
        // sub-unit roots at rel_tol / kappa ~ 4e-10.
        let res = kappa_nd(1, &geom(0.5, 1000.0)).unwrap();
        assert_relative_eq!(
            res.kappa * 1000.0,
            kappa_nd(1, &geom(0.0005, 1.0)).unwrap().kappa,
            max_relative = 1e-9
        );
        let d = dirichlet_k1(&geom(0.5, 1000.0)).unwrap();
        assert!(d.k1 > res.kappa);
    }

    #[test]
    fn scaling_identity() {
        let a = kappa_nd(1, &geom(0.25, 1.0)).unwrap().kappa;
        let b = kappa_nd(1, &geom(0.5, 2.0)).unwrap().kappa;
        assert_relative_eq!(a, 2.0 * b, max_relative = 1e-10);

        let na = cauchy_norm(&geom(0.3, 1.5)).unwrap().norm;
        let nb = cauchy_norm(&geom(0.2, 1.0)).unwrap().norm;
        assert_relative_eq!(na, 1.5 * nb, max_relative = 1e-10);
    }

    #[test]
    fn cauchy_norm_disk_value() {
        let res = cauchy_norm(&geom(1e-8, 1.0)).unwrap();
        assert_abs_diff_eq!(res.norm, TWO_OVER_J01, epsilon = 1e-4);
        assert_relative_eq!(res.norm * res.kappa, 2.0, max_relative = 1e-15);
        assert_relative_eq!(res.mu, res.kappa * res.kappa, max_relative = 1e-15);
    }

    #[test]
    fn mode_index_map() {
        let g = geom(0.5, 1.0);
        let m0 = mode_norm(0, &g).unwrap();
        let m1 = mode_norm(1, &g).unwrap();
        assert_eq!(m0.kappa, m1.kappa);
        assert_eq!(m0.mode, 0);
        assert_eq!(m0.hardy_mode, 1);

        let mm2 = mode_norm(-2, &g).unwrap();
        let p3 = kappa_nd(3, &g).unwrap();
        assert_eq!(mm2.kappa, p3.kappa);
        assert_eq!(mm2.mode, -2);
        assert_eq!(mm2.hardy_mode, 3);
    }

    #[test]
    fn mode_norm_maximum_at_center() {
        let g = geom(0.35, 1.0);
        let top = mode_norm(1, &g).unwrap().norm;
        for m in -10..=10 {
            assert!(mode_norm(m, &g).unwrap().norm <= top + 1e-15);
        }
    }

    #[test]
    fn mode_cap_enforced() {
        let g = geom(0.5, 1.0);
        assert!(matches!(
            mode_norm(65, &g),
            Err(SpectralError::ModeOutOfRange { m: 65 })
        ));
        assert!(matches!(
            mode_norm(-65, &g),
            Err(SpectralError::ModeOutOfRange { .. })
        ));
        // extreme but valid corners of the cap
        assert!(mode_norm(64, &g).is_ok());
        assert!(mode_norm(-64, &g).is_ok());
    }

    #[test]
    fn dirichlet_disk_limit_is_logarithmic() {
        // The Dirichlet eigenvalue of the punctured disk approaches the disk
        // value only like 1/|ln r| (the inner hole has positive capacity):
        // k1(r) - j01 ~ pi Y_0(j01) / (2 J_1(j01) |ln(j01 r)|). Check the law
        // across four decades instead of expecting a small-r plateau.
        let j01 = bessel::j01();
        let gap_4 = dirichlet_k1(&geom(1e-4, 1.0)).unwrap().k1 - j01;
        let gap_8 = dirichlet_k1(&geom(1e-8, 1.0)).unwrap().k1 - j01;
        assert!(gap_4 > gap_8 && gap_8 > 0.0);
        let predicted_ratio = (j01 * 1e-8).ln().abs() / (j01 * 1e-4).ln().abs();
        assert_relative_eq!(gap_4 / gap_8, predicted_ratio, max_relative = 0.05);
    }

    #[test]
    fn dirichlet_scaling() {
        let a = dirichlet_k1(&geom(0.3, 1.0)).unwrap().k1;
        let b = dirichlet_k1(&geom(0.6, 2.0)).unwrap().k1;
        assert_relative_eq!(a, 2.0 * b, max_relative = 1e-10);
        assert_relative_eq!(
            dirichlet_k1(&geom(0.3, 1.0)).unwrap().lambda1,
            a * a,
            max_relative = 1e-15
        );
    }

    #[test]
    fn mixed_root_below_dirichlet_root() {
        for &r in &[0.1, 0.3, 0.5, 0.7, 0.9] {
            let g = geom(r, 1.0);
            let kap = kappa_nd(1, &g).unwrap().kappa;
            let k1 = dirichlet_k1(&g).unwrap().k1;
            assert!(kap < k1, "ordering failed at r = {r}");
        }
    }

    #[test]
    fn kappa_monotone_in_inner_radius() {
        // domain shrinks as r grows, eigenvalue grows; numeric regression
        let mut last = 0.0;
        for i in 0..50 {
            let r = 0.01 + 0.97 * i as f64 / 49.0;
            let kap = kappa_nd(1, &geom(r, 1.0)).unwrap().kappa;
            assert!(kap >= last, "kappa not monotone at r = {r}");
            last = kap;
        }
    }

    #[test]
    fn extremizer_profile_shape() {
        let g = geom(0.5, 1.0);
        let p = extremizer(&g, 1024).unwrap();
        let first = p.samples.first().unwrap();
        let last = p.samples.last().unwrap();

        assert_eq!(last.f, 0.0); // exact cancellation at rho = R
        assert!(first.f_prime.abs() < 1e-10);
        assert!(p
            .samples
            .iter()
            .take(p.samples.len() - 1)
            .all(|s| s.f > 0.0));
        let max = p
            .samples
            .iter()
            .take(p.samples.len() - 1)
            .fold(0.0f64, |acc, s| acc.max(s.f));
        assert_abs_diff_eq!(max, 1.0, epsilon = 1e-15);
        // F'(r) = 0 is exactly the determinant root condition
        let det = det_nd(1, p.kappa, &g).unwrap();
        assert_abs_diff_eq!(first.f_prime, -p.c * p.kappa * det, epsilon = 1e-13);
    }

    #[test]
    fn extremizer_rejects_disk_and_tiny_grids() {
        assert!(matches!(
            extremizer(&geom(0.0, 1.0), 16),
            Err(SpectralError::DiskPathRequired(_))
        ));
        assert!(matches!(
            extremizer(&geom(0.5, 1.0), 1),
            Err(SpectralError::TooFewSamples { n: 1 })
        ));
    }

    #[test]
    fn solve_options_tolerance() {
        let g = geom(0.5, 1.0);
        let loose = kappa_nd_with(1, &g, &SolveOptions { rel_tol: 1e-6 }).unwrap();
        let tight = kappa_nd_with(1, &g, &SolveOptions { rel_tol: 1e-13 }).unwrap();
        assert_relative_eq!(loose.kappa, tight.kappa, max_relative = 1e-5);
    }
}
