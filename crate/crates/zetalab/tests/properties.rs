//! Randomized invariants: exact Fermat-rational arithmetic, quadrature
//! consistency, and config/report serialization round trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use zetalab::config::RunConfig;
use zetalab::fermat::{self, FermatRational};
use zetalab::quadrature::{integrate, QuadOpts};
use zetalab::zeta_kernel::{zeta, EvalSettings};

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// (x/z)^n + (y/z)^n scales out of a common factor: the value of
    /// (dx, dy, dz, n) equals the value of (x, y, z, n).
    #[test]
    fn fermat_value_is_homogeneous(
        x in 1u64..50, y in 1u64..50, z in 1u64..50,
        n in 3u32..12, d in 1u64..8,
    ) {
        let q = FermatRational::new(x, y, z, n).unwrap();
        let scaled = FermatRational::new(d * x, d * y, d * z, n).unwrap();
        prop_assert_eq!(q.value(), scaled.value());
        prop_assert_eq!(q.is_unit(), scaled.is_unit());
    }

    /// Swapping x and y leaves the value unchanged.
    #[test]
    fn fermat_value_is_symmetric(
        x in 1u64..100, y in 1u64..100, z in 1u64..100, n in 3u32..16,
    ) {
        let q = FermatRational::new(x, y, z, n).unwrap();
        let s = FermatRational::new(y, x, z, n).unwrap();
        prop_assert_eq!(q.value(), s.value());
    }

    /// value() agrees with an independently assembled rational.
    #[test]
    fn fermat_value_matches_direct_rational(
        x in 1u64..40, y in 1u64..40, z in 1u64..40, n in 3u32..10,
    ) {
        let q = FermatRational::new(x, y, z, n).unwrap();
        let num = big(x).pow(n) + big(y).pow(n);
        let den = big(z).pow(n);
        prop_assert_eq!(q.value(), BigRational::new(num, den));
    }

    /// The box enumeration yields exactly h^3 tuples per exponent.
    #[test]
    fn enumerate_count_matches_box_volume(h in 1u64..12, n_min in 3u32..6, extra in 0u32..4) {
        let n_max = n_min + extra;
        let count = fermat::enumerate(h, n_min, n_max).unwrap().count() as u64;
        prop_assert_eq!(count, h * h * h * u64::from(extra + 1));
    }

    /// Splitting an interval at an interior point preserves the integral of
    /// a smooth function to well within the combined tolerance.
    #[test]
    fn quadrature_is_additive(a in -3.0f64..3.0, len in 0.1f64..5.0, frac in 0.05f64..0.95) {
        let b = a + len;
        let m = a + frac * len;
        let f = |t: f64| (t * 0.7).sin() + 0.3 * (t * t * 0.1).cos();
        let opts = QuadOpts { tol: 1e-10, ..QuadOpts::default() };
        let whole = integrate(&f, a, b, &opts).unwrap().value;
        let split = integrate(&f, a, m, &opts).unwrap().value
            + integrate(&f, m, b, &opts).unwrap().value;
        prop_assert!((whole - split).abs() < 1e-8, "whole {whole} split {split}");
    }

    /// zeta(conj(s)) = conj(zeta(s)) away from the critical strip.
    #[test]
    fn zeta_conjugate_symmetry(sigma in 1.5f64..4.0, t in 0.1f64..60.0) {
        let settings = EvalSettings::default();
        let s = num_complex::Complex64::new(sigma, t);
        let (up, _) = zeta(s, &settings).unwrap();
        let (down, _) = zeta(s.conj(), &settings).unwrap();
        prop_assert!((up.conj() - down).norm() < 1e-9 * up.norm().max(1.0));
    }

    /// RunConfig survives a JSON round trip.
    #[test]
    fn config_round_trips(tol in 1e-10f64..1e-2, eps in 0.01f64..0.4, cal_t in 500.0f64..9000.0) {
        let mut cfg = RunConfig::default();
        cfg.tol = tol;
        cfg.epsilon = eps;
        cfg.calibration_t = cal_t;
        cfg.validate().unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.tol.to_bits(), cfg.tol.to_bits());
        prop_assert_eq!(back.epsilon.to_bits(), cfg.epsilon.to_bits());
        prop_assert_eq!(back.calibration_t.to_bits(), cfg.calibration_t.to_bits());
    }
}

/// pair_sigma stays above 1/2 exactly when the gap beats the threshold.
#[test]
fn pair_sigma_threshold_is_exact() {
    // gap_from_one for (1, 1, 1, 3) is |2 - 1| = 1, comfortably large.
    let q = FermatRational::new(1, 1, 1, 3).unwrap();
    assert!(fermat::pair_sigma(&q, 0.05).is_ok());
    // A unit has gap zero and can never satisfy the condition.
    let unit = FermatRational::new(3, 4, 5, 2).err();
    assert!(unit.is_some(), "n < 3 must be rejected");
}
