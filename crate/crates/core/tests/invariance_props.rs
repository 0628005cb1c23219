use std::f64::consts::PI;

use harmap::catalog;
use harmap::harmonic::{HarmonicMap, NormalizationClass};
use harmap::invariance::{self, DiskAutomorphism};
use harmap::series::Complex;
use proptest::prelude::*;

/// Working order; the truncated maps stay sense-preserving on |z| ≤ 0.8.
const ORDER: usize = 128;
const COMPARED: usize = 32;

fn disk(radius: f64) -> impl Strategy<Value = Complex> {
    (0.0..radius, 0.0..2.0 * PI).prop_map(|(r, t)| Complex::from_polar(r, t))
}

fn automorphism() -> impl Strategy<Value = DiskAutomorphism> {
    (disk(0.8), 0.0..2.0 * PI).prop_map(|(a, t)| DiskAutomorphism::new(a, t).unwrap())
}

fn catalog_map() -> impl Strategy<Value = HarmonicMap> {
    prop_oneof![
        Just(catalog::harmonic_koebe(ORDER).unwrap()),
        Just(catalog::harmonic_half_plane(ORDER).unwrap()),
        Just(catalog::mapping_m(ORDER).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_normalizes_and_decomposes(f in catalog_map(), phi in automorphism()) {
        let t = invariance::koebe_transform(&f, &phi).unwrap();
        prop_assert!(t.check_normalization(NormalizationClass::H).is_ok());
        let (f0, b1) = t.affine_decompose().unwrap();
        prop_assert!(f0.check_normalization(NormalizationClass::H0).is_ok());
        let expected = invariance::b1_of_transform(&f, &phi).unwrap();
        prop_assert!((b1 - expected).norm() <= 1e-10 * expected.norm().max(1.0));
    }

    #[test]
    fn slice_identity(f in catalog_map(), phi in automorphism(), eps in disk(1.0)) {
        let t = invariance::koebe_transform(&f, &phi).unwrap();
        let (f0, _) = t.affine_decompose().unwrap();
        let rho = invariance::rho_of_transform(&f, eps, &phi).unwrap();
        let lhs = f0.analytic_slice(rho).unwrap().truncate(COMPARED);
        let rhs = invariance::koebe_transform_analytic(&f.analytic_slice(eps).unwrap(), &phi)
            .unwrap()
            .truncate(COMPARED);
        let scale = rhs.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-8 * scale, "{}", lhs.max_abs_diff(&rhs));
    }

    #[test]
    fn rho_stays_on_circle_iff_eps_does(f in catalog_map(), phi in automorphism(), t in 0.0..2.0 * PI, r in 0.0..0.999f64) {
        let on = Complex::from_polar(1.0, t);
        prop_assert!((invariance::rho_of_transform(&f, on, &phi).unwrap().norm() - 1.0).abs() < 1e-10);
        let inside = Complex::from_polar(r, t);
        prop_assert!(invariance::rho_of_transform(&f, inside, &phi).unwrap().norm() < 1.0);
    }

    #[test]
    fn affine_round_trip(f in catalog_map(), c in disk(0.5)) {
        let there = invariance::affine_transform(&f, c).unwrap();
        let back = invariance::affine_transform(&there, -c).unwrap();
        let scale = f.h()[ORDER].norm().max(1.0);
        prop_assert!(back.h().max_abs_diff(f.h()) <= 1e-9 * scale);
        prop_assert!(back.g().max_abs_diff(f.g()) <= 1e-9 * scale);
    }
}
