//! Affine and linear invariance transforms.
//!
//! `A_c(f) = (f + c·conj(f)) / (1 + c·g'(0))` and
//! `K_φ(f) = (f∘φ − f(φ(0))) / (φ'(0)·h'(φ(0)))` for disk automorphisms φ,
//! together with the quantities `B₁` and `ρ` that carry an ε-slice through
//! `K_φ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{HarmonicMap, NormalizationClass};
use crate::series::{Complex, PowerSeries};

/// Default bound on `|a|` accepted by [`koebe_transform`]. Composition with
/// φ loses precision roughly like `|a|^N`.
pub const DEFAULT_MAX_SHIFT: f64 = 0.8;

const CRITICAL_TOL: f64 = 1e-10;

/// `φ(z) = e^{iθ}(z + a)/(1 + ā z)` with `|a| < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskAutomorphism {
    a: Complex,
    theta: f64,
}

impl DiskAutomorphism {
    pub fn new(a: Complex, theta: f64) -> Result<Self> {
        if !(a.norm() < 1.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "disk automorphism needs |a| < 1 and finite θ, got a = {a}, θ = {theta}"
            )));
        }
        Ok(Self { a, theta })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::new(0.0, 0.0),
            theta: 0.0,
        }
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn rotation(&self) -> Complex {
        Complex::from_polar(1.0, self.theta)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.rotation() * (z + self.a) / (Complex::new(1.0, 0.0) + self.a.conj() * z)
    }

    /// `φ'(z) = e^{iθ}(1 − |a|²)/(1 + ā z)²`.
    pub fn derivative_at(&self, z: Complex) -> Complex {
        let d = Complex::new(1.0, 0.0) + self.a.conj() * z;
        self.rotation() * (1.0 - self.a.norm_sqr()) / (d * d)
    }

    /// Taylor series of φ about 0: `e^{iθ}(z + a) Σ_k (−ā z)^k`.
    pub fn to_series(&self, order: usize) -> PowerSeries {
        let q = -self.a.conj();
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(self.a);
        let mut qk = Complex::new(1.0, 0.0);
        for _ in 1..=order {
            // coefficient n: q^{n-1} + a·q^n = q^{n-1}(1 − |a|²)
            coeffs.push(qk * (1.0 - self.a.norm_sqr()));
            qk *= q;
        }
        PowerSeries::new(coeffs)
            .expect("finite Möbius coefficients")
            .scale(self.rotation())
    }

    /// `|a|^(order+1)`: size of the first discarded term of the series of φ.
    pub fn truncation_factor(&self, order: usize) -> f64 {
        self.a.norm().powi(order as i32 + 1)
    }
}

/// `A_c(f) = (f + c·conj(f))/(1 + c·g'(0))` for `|c| < 1`.
///
/// Expanding `f + c·conj(f)` gives analytic part `h + c g` and co-analytic
/// part `g + c̄ h`; dividing by `D = 1 + c g'(0)` yields
/// `H = (h + c g)/D`, `G = (g + c̄ h)/conj(D)`.
pub fn affine_transform(f: &HarmonicMap, c: Complex) -> Result<HarmonicMap> {
    if !(c.norm() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "affine parameter must satisfy |c| < 1, got |c| = {}",
            c.norm()
        )));
    }
    f.check_normalization(NormalizationClass::H)?;
    let d = Complex::new(1.0, 0.0) + c * f.b1();
    if d.norm() < 1e-12 {
        return Err(Error::VanishingDenominator("affine transform"));
    }
    let h = (f.h() + &f.g().scale(c)).scale(d.inv());
    let g = (f.g() + &f.h().scale(c.conj())).scale(d.conj().inv());
    HarmonicMap::new(h, g, NormalizationClass::H)
}

/// `P∘φ − P(φ(0))` for the truncated polynomial `P`, with an exact zero
/// constant term.
fn shifted_composition(p: &PowerSeries, phi_series: &PowerSeries) -> PowerSeries {
    let mut s = p.substitute(phi_series);
    let mut coeffs = s.coeffs().to_vec();
    coeffs[0] = Complex::new(0.0, 0.0);
    s = PowerSeries::new(coeffs).expect("finite composition");
    s
}

fn check_shift(phi: &DiskAutomorphism, max_shift: f64) -> Result<()> {
    if phi.a().norm() > max_shift {
        return Err(Error::InvalidParameter(format!(
            "|a| = {} exceeds the composition limit {max_shift}",
            phi.a().norm()
        )));
    }
    Ok(())
}

/// `K_φ(f)` with the default shift limit [`DEFAULT_MAX_SHIFT`].
pub fn koebe_transform(f: &HarmonicMap, phi: &DiskAutomorphism) -> Result<HarmonicMap> {
    koebe_transform_with_limit(f, phi, DEFAULT_MAX_SHIFT)
}

/// `K_φ(f) = H + conj(G)` with
/// `H = (h∘φ − h(φ(0)))/D` and `G = (g∘φ − g(φ(0)))/conj(D)`,
/// `D = φ'(0) h'(φ(0))`. The compositions are exact expansions of the
/// truncated polynomials `h`, `g` at the series of φ.
pub fn koebe_transform_with_limit(
    f: &HarmonicMap,
    phi: &DiskAutomorphism,
    max_shift: f64,
) -> Result<HarmonicMap> {
    check_shift(phi, max_shift)?;
    let series = phi.to_series(f.order());
    let hc = shifted_composition(f.h(), &series);
    let d = hc.get(1).unwrap_or_default();
    let dphi = phi.derivative_at(Complex::new(0.0, 0.0));
    if d.norm() < CRITICAL_TOL * dphi.norm() {
        return Err(Error::CriticalPoint);
    }
    let gc = shifted_composition(f.g(), &series);
    HarmonicMap::new(
        hc.scale(d.inv()),
        gc.scale(d.conj().inv()),
        NormalizationClass::H,
    )
}

/// Analytic version of [`koebe_transform`]: `(P∘φ − P(φ(0)))/(φ'(0)P'(φ(0)))`.
pub fn koebe_transform_analytic(p: &PowerSeries, phi: &DiskAutomorphism) -> Result<PowerSeries> {
    check_shift(phi, DEFAULT_MAX_SHIFT)?;
    let hc = shifted_composition(p, &phi.to_series(p.order()));
    let d = hc.get(1).unwrap_or_default();
    if d.norm() < CRITICAL_TOL * phi.derivative_at(Complex::new(0.0, 0.0)).norm() {
        return Err(Error::CriticalPoint);
    }
    Ok(hc.scale(d.inv()))
}

/// `B₁ = φ'(0) g'(φ(0)) / conj(φ'(0) h'(φ(0)))`, the first co-analytic
/// coefficient of `K_φ(f)`.
pub fn b1_of_transform(f: &HarmonicMap, phi: &DiskAutomorphism) -> Result<Complex> {
    let origin = Complex::new(0.0, 0.0);
    let c = phi.eval(origin);
    let dphi = phi.derivative_at(origin);
    let dh = f.h().eval_derivative(c);
    if dh.norm() < CRITICAL_TOL {
        return Err(Error::CriticalPoint);
    }
    let dg = f.g().eval_derivative(c);
    Ok(dphi * dg / (dphi * dh).conj())
}

/// `ρ = (conj(φ'(0))/φ'(0)) · (ε conj(h₀'(φ(0))) + conj(g₀'(φ(0)))) / (h₀'(φ(0)) + ε g₀'(φ(0)))`
/// for the 𝓗₀ representative `f₀ = h₀ + conj(g₀)`.
///
/// `K_φ` carries the slice `h₀ + ε g₀` to `H₀ + ρ G₀`, where `H₀ + conj(G₀)`
/// is the 𝓗₀ part of `K_φ(f₀)`.
pub fn rho_of_transform(f0: &HarmonicMap, eps: Complex, phi: &DiskAutomorphism) -> Result<Complex> {
    let origin = Complex::new(0.0, 0.0);
    let c = phi.eval(origin);
    let dphi = phi.derivative_at(origin);
    let dh = f0.h().eval_derivative(c);
    let dg = f0.g().eval_derivative(c);
    let den = dh + eps * dg;
    if den.norm() < CRITICAL_TOL {
        return Err(Error::VanishingDenominator("rho"));
    }
    Ok(dphi.conj() / dphi * (eps * dh.conj() + dg.conj()) / den)
}

/// `max |a₂|` over the family, a finite-sample estimate of its order.
pub fn order_estimate(maps: &[HarmonicMap]) -> Result<f64> {
    if maps.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(maps
        .iter()
        .map(|f| f.h().get(2).unwrap_or_default().norm())
        .fold(0.0, f64::max))
}
