//! Bracketing root finder: scan for the first sign change, then refine by a
//! secant/bisection hybrid.
//!
//! The hybrid accepts a secant step only while the bracket keeps shrinking
//! fast enough; otherwise it bisects, so the bracket width at least halves
//! every two iterations and convergence is unconditional. Tangent (double)
//! roots are out of scope: every determinant this crate feeds in here has
//! simple sign-changing roots.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no sign change found on [{scan_start}, {scan_limit}]")]
    NoRootInRange { scan_start: f64, scan_limit: f64 },
    #[error("function evaluated to a non-finite value at x = {x}")]
    NonFiniteEvaluation { x: f64 },
    #[error("bracket invalid: requires lo < hi and f(lo)*f(hi) < 0")]
    InvalidBracket,
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("refinement did not converge within {max_iter} iterations")]
    MaxIterationsExceeded { max_iter: u32 },
}

/// A sign-changing interval: `lo < hi` and `f_lo * f_hi < 0` strictly,
/// unless one endpoint is an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, RootError> {
        let ok = lo < hi
            && lo.is_finite()
            && hi.is_finite()
            && f_lo.is_finite()
            && f_hi.is_finite()
            && (f_lo * f_hi < 0.0 || f_lo == 0.0 || f_hi == 0.0);
        if !ok {
            return Err(RootError::InvalidBracket);
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Left end of the bracket scan.
    pub scan_start: f64,
    /// Scan stride; must undersample the expected root spacing.
    pub scan_step: f64,
    /// Right end of the scan; exceeding it without a sign change is an error.
    pub scan_limit: f64,
    /// Relative tolerance on the root location.
    pub rel_tol: f64,
    /// Refinement iteration cap; unreachable with the bisection fallback.
    pub max_iter: u32,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            scan_start: 1e-4,
            scan_step: 0.125,
            scan_limit: 1e4,
            rel_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl RootConfig {
    fn validate(&self) -> Result<(), RootError> {
        if !(self.scan_start > 0.0 && self.scan_start.is_finite()) {
            return Err(RootError::InvalidConfig("scan_start must be positive"));
        }
        if !(self.scan_step > 0.0 && self.scan_step.is_finite()) {
            return Err(RootError::InvalidConfig("scan_step must be positive"));
        }
        if self.scan_start >= self.scan_limit {
            return Err(RootError::InvalidConfig("scan_start must be < scan_limit"));
        }
        if self.rel_tol.is_nan() || self.rel_tol < 1e-15 {
            return Err(RootError::InvalidConfig("rel_tol must be >= 1e-15"));
        }
        if self.max_iter == 0 {
            return Err(RootError::InvalidConfig("max_iter must be positive"));
        }
        Ok(())
    }
}

/// Smallest positive root of `f`: scan `[scan_start, scan_limit]` in strides
/// of `scan_step` for the first sign change, then refine. No subinterval
/// strictly left of the returned bracket contains a sign change of the
/// sampled values.
pub fn smallest_positive_root<F: Fn(f64) -> f64>(f: F, cfg: &RootConfig) -> Result<f64, RootError> {
    cfg.validate()?;
    let mut x0 = cfg.scan_start;
    let mut f0 = eval(&f, x0)?;
    if f0 == 0.0 {
        return Ok(x0);
    }
    while x0 < cfg.scan_limit {
        let x1 = (x0 + cfg.scan_step).min(cfg.scan_limit);
        let f1 = eval(&f, x1)?;
        if f1 == 0.0 {
            return Ok(x1);
        }
        if f0 * f1 < 0.0 {
            let bracket = RootBracket::new(x0, x1, f0, f1)?;
            return refine(bracket, &f, cfg);
        }
        x0 = x1;
        f0 = f1;
        if x0 >= cfg.scan_limit {
            break;
        }
    }
    Err(RootError::NoRootInRange {
        scan_start: cfg.scan_start,
        scan_limit: cfg.scan_limit,
    })
}

/// Refine a sign-changing bracket to `rel_tol * max(1, |root|)`.
///
/// Strategy: try a secant step through the current bracket endpoints; keep it
/// when it lands inside and the bracket halved over the previous iteration,
/// otherwise bisect. An endpoint with an exact zero is returned immediately.
pub fn refine<F: Fn(f64) -> f64>(
    bracket: RootBracket,
    f: F,
    cfg: &RootConfig,
) -> Result<f64, RootError> {
    cfg.validate()?;
    let RootBracket {
        mut lo,
        mut hi,
        mut f_lo,
        mut f_hi,
    } = bracket;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(lo < hi && f_lo * f_hi < 0.0) {
        return Err(RootError::InvalidBracket);
    }

    let mut prev_width = hi - lo;
    for iter in 0..cfg.max_iter {
        let width = hi - lo;
        let mid = 0.5 * (lo + hi);
        if width <= cfg.rel_tol * mid.abs().max(1.0) {
            // final secant estimate within the converged bracket
            let s = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            return Ok(if s > lo && s < hi { s } else { mid });
        }

        // force a bisection whenever the last two iterations failed to halve
        // the bracket; this is the hybrid's convergence guarantee
        let must_bisect = iter % 2 == 1 && width > 0.5 * prev_width;
        if iter % 2 == 0 {
            prev_width = width;
        }

        let secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        let margin = 0.01 * width;
        let x = if !must_bisect
            && secant.is_finite()
            && secant > lo + margin
            && secant < hi - margin
        {
            secant
        } else {
            mid
        };

        let fx = eval(&f, x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if f_lo * fx < 0.0 {
            hi = x;
            f_hi = fx;
        } else {
            lo = x;
            f_lo = fx;
        }
    }
    Err(RootError::MaxIterationsExceeded {
        max_iter: cfg.max_iter,
    })
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64, RootError> {
    let v = f(x);
    if !v.is_finite() {
        return Err(RootError::NonFiniteEvaluation { x });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::cell::Cell;

    fn cfg(start: f64, step: f64, limit: f64) -> RootConfig {
        RootConfig {
            scan_start: start,
            scan_step: step,
            scan_limit: limit,
            ..RootConfig::default()
        }
    }

    #[test]
    fn cosine_root() {
        let root = smallest_positive_root(|x| x.cos(), &cfg(0.01, 0.1, 10.0)).unwrap();
        assert_abs_diff_eq!(root, core::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn j0_first_zero() {
        let root =
            smallest_positive_root(|x| crate::bessel::bessel_j(0, x).unwrap(), &cfg(0.1, 0.1, 10.0))
                .unwrap();
        assert_abs_diff_eq!(root, 2.4048255577, epsilon = 1e-9);
    }

    #[test]
    fn sqrt_two_bracket() {
        let f = |x: f64| x * x - 2.0;
        let b = RootBracket::new(1.0, 2.0, f(1.0), f(2.0)).unwrap();
        let root = refine(b, f, &RootConfig::default()).unwrap();
        assert_abs_diff_eq!(root, core::f64::consts::SQRT_2, epsilon = 1e-12);
    }

    #[test]
    fn j01_bracket() {
        let f = |x: f64| crate::bessel::bessel_j(0, x).unwrap();
        let b = RootBracket::new(2.0, 3.0, f(2.0), f(3.0)).unwrap();
        let root = refine(b, f, &RootConfig::default()).unwrap();
        assert_abs_diff_eq!(root, crate::bessel::j01(), epsilon = 1e-12);
    }

    #[test]
    fn degenerate_bracket_endpoint_zero() {
        let f = |x: f64| x - 1.0;
        let b = RootBracket::new(1.0, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(refine(b, f, &RootConfig::default()).unwrap(), 1.0);
    }

    #[test]
    fn no_root_in_range() {
        let err = smallest_positive_root(|x| 1.0 + x * x, &cfg(0.1, 0.5, 20.0)).unwrap_err();
        assert!(matches!(err, RootError::NoRootInRange { .. }));
    }

    #[test]
    fn non_finite_propagates() {
        let err =
            smallest_positive_root(|x| (x - 1.0).recip() + 0.0 * x, &cfg(0.5, 0.5, 4.0))
                .unwrap_err();
        assert!(matches!(err, RootError::NonFiniteEvaluation { .. }));
    }

    #[test]
    fn invalid_bracket_rejected() {
        assert!(RootBracket::new(1.0, 2.0, 1.0, 2.0).is_err());
        assert!(RootBracket::new(2.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn returned_root_is_minimal() {
        // re-scanning strictly left of the root finds no sign change
        let c = cfg(0.01, 0.05, 20.0);
        let root = smallest_positive_root(|x| x.cos(), &c).unwrap();
        let upper = root - 10.0 * c.rel_tol * root.max(1.0);
        let mut x = c.scan_start;
        let mut fx = x.cos();
        while x < upper {
            let nx = (x + c.scan_step).min(upper);
            let fnx = nx.cos();
            assert!(fx * fnx > 0.0, "sign change left of the returned root");
            x = nx;
            fx = fnx;
        }
    }

    #[test]
    fn determinism() {
        let c = cfg(0.01, 0.07, 30.0);
        let f = |x: f64| (x * 1.7).sin() - 0.3 * x.cos();
        let a = smallest_positive_root(f, &c).unwrap();
        let b = smallest_positive_root(f, &c).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn eval_count_respects_halving_guarantee() {
        // width halves at least every two iterations, so the number of
        // refinement evaluations is bounded by 2 log2(w0/tol) + slack
        for f in [
            (|x: f64| x.exp() - 3.0) as fn(f64) -> f64,
            |x: f64| (50.0 * (x - 1.3)).atan(),
            |x: f64| x.powi(3) - 2.0 * x - 5.0,
        ] {
            let count = Cell::new(0u32);
            let counted = |x: f64| {
                count.set(count.get() + 1);
                f(x)
            };
            let (lo, hi) = (0.5, 3.0);
            let b = RootBracket::new(lo, hi, f(lo), f(hi)).unwrap();
            let cfg = RootConfig::default();
            let root = refine(b, counted, &cfg).unwrap();
            let w0: f64 = hi - lo;
            let tol = cfg.rel_tol * root.abs().max(1.0);
            let bound = 2.0 * (w0 / tol).log2().ceil() + 8.0;
            assert!(
                (count.get() as f64) <= bound,
                "{} evals > bound {}",
                count.get(),
                bound
            );
        }
    }

    #[test]
    fn iteration_cap_is_reported() {
        // unreachable with a sane budget; force it with max_iter = 1
        // (nonlinear, so the first secant step cannot land exactly)
        let f = |x: f64| x * x * x - 20.0;
        let b = RootBracket::new(0.0, 10.0, f(0.0), f(10.0)).unwrap();
        let starved = RootConfig {
            max_iter: 1,
            ..RootConfig::default()
        };
        assert!(matches!(
            refine(b, f, &starved),
            Err(RootError::MaxIterationsExceeded { max_iter: 1 })
        ));
    }

    #[test]
    fn config_validation() {
        let bad = RootConfig {
            rel_tol: 1e-16,
            ..RootConfig::default()
        };
        assert!(matches!(
            smallest_positive_root(|x| x - 1.0, &bad),
            Err(RootError::InvalidConfig(_))
        ));
    }
}
