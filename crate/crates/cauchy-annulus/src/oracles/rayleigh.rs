//! Trapezoid-rule Rayleigh quotient
//! `R[F] = int |F'|^2 rho^{2m-1} d rho / int |F|^2 rho^{2m-1} d rho`
//! over a sampled profile with `F(R) = 0`. The first eigenfunction
//! minimizes it at `mu_m`; any admissible profile bounds `mu_m` from above.

use super::OracleError;
use crate::spectral::ProfileSample;

/// Evaluate the quotient for mode `m >= 1`. The samples must be strictly
/// increasing in `rho`, at least 16 of them, with the final `F` sample
/// (numerically) zero. Uses the stored closed-form `f_prime` values; nothing
/// is differentiated numerically.
pub fn rayleigh_quotient(samples: &[ProfileSample], m: u32) -> Result<f64, OracleError> {
    if m < 1 {
        return Err(OracleError::DegenerateInput("mode m must be >= 1"));
    }
    if samples.len() < 16 {
        return Err(OracleError::DegenerateInput(
            "need at least 16 profile samples",
        ));
    }
    let max_f = samples.iter().fold(0.0f64, |acc, s| acc.max(s.f.abs()));
    if max_f == 0.0 {
        return Err(OracleError::DegenerateInput("profile is identically zero"));
    }
    let last = samples.last().expect("nonempty");
    if last.f.abs() > 1e-6 * max_f {
        return Err(OracleError::DegenerateInput(
            "profile does not vanish at the outer radius",
        ));
    }
    let p = 2 * m as i32 - 1;
    let mut num = 0.0;
    let mut den = 0.0;
    for pair in samples.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.rho.partial_cmp(&b.rho) != Some(std::cmp::Ordering::Less) {
            return Err(OracleError::DegenerateInput(
                "samples must be strictly increasing in rho",
            ));
        }
        let dx = b.rho - a.rho;
        let wa = a.rho.powi(p);
        let wb = b.rho.powi(p);
        num += 0.5 * dx * (a.f_prime * a.f_prime * wa + b.f_prime * b.f_prime * wb);
        den += 0.5 * dx * (a.f * a.f * wa + b.f * b.f * wb);
    }
    if den == 0.0 {
        return Err(OracleError::DegenerateInput(
            "zero denominator in the Rayleigh quotient",
        ));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{extremizer, kappa_nd, AnnulusGeometry, ProfileSample};
    use approx::assert_relative_eq;

    fn geom() -> AnnulusGeometry {
        AnnulusGeometry::new(0.5, 1.0).unwrap()
    }

    #[test]
    fn extremizer_profile_recovers_mu1() {
        let g = geom();
        let mu = kappa_nd(1, &g).unwrap().mu;
        let profile = extremizer(&g, 4096).unwrap();
        let rq = rayleigh_quotient(&profile.samples, 1).unwrap();
        assert_relative_eq!(rq, mu, max_relative = 1e-8);
    }

    #[test]
    fn linear_profile_upper_bounds_mu1() {
        let g = geom();
        let mu = kappa_nd(1, &g).unwrap().mu;
        let n = 2048;
        let h = g.width() / (n - 1) as f64;
        let samples: Vec<ProfileSample> = (0..n)
            .map(|i| {
                let rho = g.inner() + i as f64 * h;
                ProfileSample {
                    rho,
                    f: g.outer() - rho,
                    f_prime: -1.0,
                }
            })
            .collect();
        let rq = rayleigh_quotient(&samples, 1).unwrap();
        assert!(rq > mu);
    }

    #[test]
    fn random_smooth_profiles_stay_above_mu1() {
        // sin-combination profiles vanish at R and are admissible; the
        // variational characterization puts all of them above mu_1
        let g = geom();
        let mu = kappa_nd(1, &g).unwrap().mu;
        let n = 2048;
        let h = g.width() / (n - 1) as f64;
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move || {
            // xorshift, deterministic across platforms
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..5).map(|_| next()).collect();
            let samples: Vec<ProfileSample> = (0..n)
                .map(|i| {
                    let rho = g.inner() + i as f64 * h;
                    let s = (g.outer() - rho) / g.width() * core::f64::consts::PI;
                    let mut f = 0.0;
                    let mut fp = 0.0;
                    for (k, &a) in coeffs.iter().enumerate() {
                        let kk = (k + 1) as f64;
                        f += a * (kk * s).sin();
                        fp += -a * kk * core::f64::consts::PI / g.width() * (kk * s).cos();
                    }
                    ProfileSample {
                        rho,
                        f,
                        f_prime: fp,
                    }
                })
                .collect();
            let rq = rayleigh_quotient(&samples, 1).unwrap();
            assert!(rq >= mu - 1e-4 * mu, "quotient below mu_1: {rq} < {mu}");
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let g = geom();
        let profile = extremizer(&g, 64).unwrap();
        assert!(rayleigh_quotient(&profile.samples[..8], 1).is_err());

        let flat: Vec<ProfileSample> = (0..32)
            .map(|i| ProfileSample {
                rho: 0.5 + i as f64 * 0.01,
                f: 0.0,
                f_prime: 0.0,
            })
            .collect();
        assert!(rayleigh_quotient(&flat, 1).is_err());

        let nonvanishing: Vec<ProfileSample> = (0..32)
            .map(|i| ProfileSample {
                rho: 0.5 + i as f64 * 0.01,
                f: 1.0,
                f_prime: 0.0,
            })
            .collect();
        assert!(rayleigh_quotient(&nonvanishing, 1).is_err());
    }
}
