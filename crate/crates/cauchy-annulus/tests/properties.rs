//! Property tests for the crate-wide invariants that hold on whole input
//! ranges rather than at hand-picked points.

use cauchy_annulus::bessel::{bessel_j, bessel_j_prime, bessel_y};
use cauchy_annulus::spectral::{cauchy_norm, dirichlet_k1, AnnulusGeometry};
use cauchy_annulus::sweep::{emit_csv, Quantity, SweepRow, SweepSpec, SweepTable};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wronskian_holds_everywhere(k in 0u32..10, x in 1e-3f64..1e3) {
        let w = bessel_j(k + 1, x).unwrap() * bessel_y(k, x).unwrap()
            - bessel_j(k, x).unwrap() * bessel_y(k + 1, x).unwrap();
        let exact = core::f64::consts::FRAC_2_PI / x;
        prop_assert!(((w - exact) / exact).abs() < 1e-11);
    }

    #[test]
    fn j_values_bounded_by_one(k in 0u32..40, x in 0.0f64..1e3) {
        prop_assert!(bessel_j(k, x).unwrap().abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn derivative_identity_everywhere(k in 1u32..10, x in 1e-2f64..2e2) {
        let lhs = 2.0 * bessel_j_prime(k, x).unwrap();
        let rhs = bessel_j(k - 1, x).unwrap() - bessel_j(k + 1, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn norm_scales_linearly(ratio in 0.05f64..0.95, outer in 0.2f64..5.0) {
        let scaled = AnnulusGeometry::new(ratio * outer, outer).unwrap();
        let unit = AnnulusGeometry::new(ratio, 1.0).unwrap();
        let a = cauchy_norm(&scaled).unwrap();
        let b = cauchy_norm(&unit).unwrap();
        prop_assert!(((a.norm - outer * b.norm) / (outer * b.norm)).abs() < 1e-10);

        let da = dirichlet_k1(&scaled).unwrap();
        let db = dirichlet_k1(&unit).unwrap();
        prop_assert!(((da.k1 * outer - db.k1) / db.k1).abs() < 1e-10);
    }

    #[test]
    fn norm_root_duality_everywhere(ratio in 0.05f64..0.95) {
        let g = AnnulusGeometry::new(ratio, 1.0).unwrap();
        let res = cauchy_norm(&g).unwrap();
        prop_assert!((res.norm * res.kappa - 2.0).abs() < 1e-13);
        prop_assert!((res.mu - res.kappa * res.kappa).abs() <= 1e-12 * res.mu);
    }

    #[test]
    fn csv_round_trips_any_table(
        rows in prop::collection::vec((0.0f64..1.0, 1e-3f64..1e3, 1e-3f64..1e3), 0..40)
    ) {
        let table = SweepTable {
            spec: SweepSpec::figure_default(Quantity::Kappa),
            rows: rows
                .iter()
                .map(|&(r, value, root)| SweepRow { r, value, root })
                .collect(),
        };
        let mut buf = Vec::new();
        emit_csv(&table, &mut buf).unwrap();
        let text = std::str::from_utf8(&buf).unwrap();
        let mut lines = text.lines();
        prop_assert_eq!(lines.next().unwrap(), "r,value,root");
        for (line, row) in lines.zip(table.rows.iter()) {
            let vals: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
            prop_assert_eq!(vals.len(), 3);
            for (parsed, orig) in vals.iter().zip([row.r, row.value, row.root]) {
                let scale = orig.abs().max(1e-300);
                prop_assert!((parsed - orig).abs() <= 1e-11 * scale);
            }
        }
    }
}
