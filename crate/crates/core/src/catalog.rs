//! Named extremal functions and their coefficient formulas.
//!
//! Rational closed forms are expanded by series division; the published
//! coefficient formulas ([`coeff_a`], [`coeff_b`], [`phi_k`], [`phi_l`]) are
//! kept as a separate route so the two can be checked against each other.

use crate::error::{Error, Result};
use crate::harmonic::{HarmonicMap, NormalizationClass};
use crate::series::{Complex, PowerSeries, MAX_ORDER};

fn check_order(order: usize, min: usize) -> Result<()> {
    if order < min {
        return Err(Error::InvalidParameter(format!(
            "truncation order must be at least {min}, got {order}"
        )));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

/// `(1 − z)^power` as a polynomial series.
fn one_minus_z_pow(power: u32, order: usize) -> PowerSeries {
    let base = PowerSeries::polynomial(&[1.0, -1.0], order);
    (0..power).fold(PowerSeries::one(order), |acc, _| &acc * &base)
}

fn rational(numerator: &[f64], denominator_power: u32, order: usize) -> PowerSeries {
    PowerSeries::polynomial(numerator, order)
        .div(&one_minus_z_pow(denominator_power, order))
        .expect("(1-z)^m has unit constant term")
}

/// Koebe function `k(z) = z/(1−z)²`.
pub fn koebe(order: usize) -> Result<PowerSeries> {
    check_order(order, 1)?;
    Ok(rational(&[0.0, 1.0], 2, order))
}

/// Half-plane function `l(z) = z/(1−z)`.
pub fn half_plane(order: usize) -> Result<PowerSeries> {
    check_order(order, 1)?;
    Ok(rational(&[0.0, 1.0], 1, order))
}

/// Harmonic Koebe function `K = h + conj(g)` with
/// `h = (z − z²/2 + z³/6)/(1−z)³` and `g = (z²/2 + z³/6)/(1−z)³`.
pub fn harmonic_koebe(order: usize) -> Result<HarmonicMap> {
    check_order(order, 2)?;
    let h = rational(&[0.0, 1.0, -0.5, 1.0 / 6.0], 3, order);
    let g = rational(&[0.0, 0.0, 0.5, 1.0 / 6.0], 3, order);
    HarmonicMap::new(h, g, NormalizationClass::H0)
}

/// Harmonic half-plane mapping `L = h + conj(g)` with
/// `h = (z − z²/2)/(1−z)²` and `g = (−z²/2)/(1−z)²`.
pub fn harmonic_half_plane(order: usize) -> Result<HarmonicMap> {
    check_order(order, 2)?;
    let h = rational(&[0.0, 1.0, -0.5], 2, order);
    let g = rational(&[0.0, 0.0, -0.5], 2, order);
    HarmonicMap::new(h, g, NormalizationClass::H0)
}

/// The map `M = k + conj(g)` whose co-analytic part is recovered from
/// `g'(z) = z(−1 + z + z²)(1 + z) / (3(1−z)³)` with `g(0) = 0`.
pub fn mapping_m(order: usize) -> Result<HarmonicMap> {
    check_order(order, 7)?;
    // z(−1 + z + z²)(1 + z) = −z + 2z³ + z⁴
    let third = 1.0 / 3.0;
    let dg = rational(&[0.0, -third, 0.0, 2.0 * third, third], 3, order - 1);
    HarmonicMap::new(koebe(order)?, dg.integrate(), NormalizationClass::H0)
}

/// `V_α = l + conj(α zⁿ/(1−z))` for `n ≥ 3` and `0 < |α| ≤ 1/(2n−1)`.
pub fn v_alpha(n: usize, alpha: Complex, order: usize) -> Result<HarmonicMap> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "V_alpha needs n >= 3, got n = {n}"
        )));
    }
    let limit = 1.0 / (2 * n - 1) as f64;
    let modulus = alpha.norm();
    if modulus == 0.0 || modulus > limit * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "V_alpha requires 0<|α|≤1/(2n−1) = {limit}, got |α| = {modulus}"
        )));
    }
    check_order(order, n)?;
    let mut numerator = vec![0.0; n + 1];
    numerator[n] = 1.0;
    let g = rational(&numerator, 1, order).scale(alpha);
    HarmonicMap::new(half_plane(order)?, g, NormalizationClass::H0)
}

/// `6·A_n = (n+1)(2n+1)`.
pub fn six_a(n: u64) -> u64 {
    (n + 1) * (2 * n + 1)
}

/// `6·B_n = (n−1)(2n−1)` (zero at `n = 1`).
pub fn six_b(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    (n - 1) * (2 * n - 1)
}

/// `A_n = (n+1)(2n+1)/6`.
pub fn coeff_a(n: usize) -> f64 {
    six_a(n as u64) as f64 / 6.0
}

/// `B_n = (n−1)(2n−1)/6`.
pub fn coeff_b(n: usize) -> f64 {
    six_b(n as u64) as f64 / 6.0
}

/// Coefficient `n` of the slice `K^ε = h + εg` of the harmonic Koebe map:
/// `((2n²+1)(1+ε) + 3n(1−ε))/6`.
pub fn phi_k(n: usize, eps: Complex) -> Complex {
    let nf = n as f64;
    let one = Complex::new(1.0, 0.0);
    ((one + eps) * (2.0 * nf * nf + 1.0) + (one - eps) * (3.0 * nf)) / 6.0
}

/// Coefficient `n` of the slice `L^ε = h + εg` of the harmonic half-plane
/// map: `(n(1−ε) + (1+ε))/2`.
pub fn phi_l(n: usize, eps: Complex) -> Complex {
    let nf = n as f64;
    let one = Complex::new(1.0, 0.0);
    ((one - eps) * nf + (one + eps)) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn koebe_and_half_plane() {
        let k = koebe(64).unwrap();
        assert_eq!(k[0], c(0.0));
        assert_eq!(k[1], c(1.0));
        assert!((k[7] - c(7.0)).norm() < 1e-12);
        for n in 0..=64 {
            assert!((k[n] - c(n as f64)).norm() < 1e-10);
        }
        let l = half_plane(64).unwrap();
        assert_eq!(l[1], c(1.0));
        assert!((l[50] - c(1.0)).norm() < 1e-14);
        assert!((l.eval(c(0.5)) - c(1.0)).norm() < 1e-12);
        assert!(koebe(0).is_err());
        assert!(matches!(koebe(MAX_ORDER + 1), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn koebe_near_boundary_point() {
        let k = koebe(2000).unwrap();
        let v = k.eval(c(-0.99));
        assert!((v - c(-0.25)).norm() < 1e-3, "{v}");
        // partial sums of Σ n zⁿ do not settle this close to the boundary
        let far = k.eval(c(-1.0 + 1e-9));
        assert!((far - c(-0.25)).norm() > 1.0, "{far}");
    }

    #[test]
    fn harmonic_koebe_coefficients() {
        let k = harmonic_koebe(64).unwrap();
        assert!((k.h()[2] - c(2.5)).norm() < 1e-12);
        assert!((k.g()[2] - c(0.5)).norm() < 1e-12);
        assert!((k.h()[3] - c(14.0 / 3.0)).norm() < 1e-12);
        assert!((k.g()[3] - c(5.0 / 3.0)).norm() < 1e-12);
        for n in 2..=64 {
            assert!((k.h()[n] - c(coeff_a(n))).norm() < 1e-10);
            assert!((k.g()[n] - c(coeff_b(n))).norm() < 1e-10);
        }
        assert!(harmonic_koebe(1).is_err());
    }

    #[test]
    fn harmonic_half_plane_coefficients() {
        let l = harmonic_half_plane(64).unwrap();
        assert!((l.h()[2] - c(1.5)).norm() < 1e-14);
        assert!((l.g()[2] - c(-0.5)).norm() < 1e-14);
        for n in 2..=64 {
            let nf = n as f64;
            assert!((l.h()[n] - c((nf + 1.0) / 2.0)).norm() < 1e-10);
            assert!((l.g()[n] - c(-(nf - 1.0) / 2.0)).norm() < 1e-10);
            assert_eq!(phi_l(n, c(1.0)), c(1.0));
        }
    }

    #[test]
    fn mapping_m_coefficients() {
        let m = mapping_m(64).unwrap();
        assert!((m.g()[2] - c(-1.0 / 6.0)).norm() < 1e-10);
        assert!((m.g()[7] - c(5.0 / 21.0)).norm() < 1e-10);
        assert_eq!(m.g()[0], c(0.0));
        assert_eq!(m.g()[1], c(0.0));
        assert_eq!(m.class(), NormalizationClass::H0);
        assert!(mapping_m(6).is_err());
    }

    #[test]
    fn v_alpha_construction() {
        let v = v_alpha(3, c(0.2), 10).unwrap();
        let expected = [0.0, 0.0, 0.0, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0.2];
        for (n, e) in expected.iter().enumerate() {
            assert!((v.g()[n] - c(*e)).norm() < 1e-15);
        }
        assert_eq!(v.class(), NormalizationClass::H0);
        let err = v_alpha(3, c(0.3), 10).unwrap_err();
        assert!(err.to_string().contains("0<|α|≤1/(2n−1)"), "{err}");
        assert!(v_alpha(3, c(0.0), 10).is_err());
        assert!(v_alpha(2, c(0.1), 10).is_err());
        assert!(v_alpha(5, Complex::from_polar(1.0 / 9.0, 1.0), 5).is_ok());
    }

    #[test]
    fn coefficient_difference_identity() {
        assert_eq!(coeff_a(2), 2.5);
        assert_eq!(coeff_b(2), 0.5);
        for n in 1..=100u64 {
            assert_eq!(six_a(n) - six_b(n), 6 * n);
            assert!((coeff_a(n as usize) - coeff_b(n as usize) - n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn phi_k_special_values() {
        for n in 2..=50 {
            let nf = n as f64;
            assert!((phi_k(n, c(-1.0)) - c(nf)).norm() < 1e-12);
            assert!((phi_k(n, c(1.0)) - c((2.0 * nf * nf + 1.0) / 3.0)).norm() < 1e-9);
            assert!((phi_l(n, c(-1.0)) - c(nf)).norm() < 1e-12);
        }
        assert_eq!(phi_l(2, c(-1.0)), c(2.0));
    }

    #[test]
    fn slice_coefficients_beat_univalent_bounds_on_circle() {
        // Away from the exceptional point (ε = −1 for K, ε = 1 for L), the
        // slice coefficients exceed the bounds n and 1 respectively.
        for j in 0..360 {
            let eps = Complex::from_polar(1.0, 2.0 * PI * j as f64 / 360.0);
            for n in 2..=200 {
                let arc = 10.0 / n as f64;
                if (eps + c(1.0)).norm() > arc {
                    assert!(phi_k(n, eps).norm() > n as f64, "K: j={j} n={n}");
                }
                if (eps - c(1.0)).norm() > arc {
                    assert!(phi_l(n, eps).norm() > 1.0, "L: j={j} n={n}");
                }
            }
        }
    }
}
