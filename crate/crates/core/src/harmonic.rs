//! Harmonic maps `f = h + conj(g)` on the unit disk.
//!
//! The co-analytic part is stored un-conjugated: `g` is the analytic series
//! whose conjugate is added at evaluation time. Every manipulation below
//! (ε-rotation, shears, slices) is plain series algebra on `h` and `g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Complex, PowerSeries};

/// Absolute tolerance for the coefficient constraints of the normalization
/// classes.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Tolerance for accepting `|ε| ≤ 1`.
pub const DISK_TOL: f64 = 1e-12;

/// Which coefficient constraints a map is required to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormalizationClass {
    /// `h(0) = g(0) = g'(0) = 0`, `h'(0) = 1`.
    H0,
    /// `h(0) = g(0) = 0`, `h'(0) = 1`; `g'(0) = b₁` is free.
    H,
    #[serde(rename = "unconstrained")]
    Unconstrained,
}

impl NormalizationClass {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "H0" => Ok(Self::H0),
            "H" => Ok(Self::H),
            "unconstrained" => Ok(Self::Unconstrained),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct HarmonicMap {
    h: PowerSeries,
    g: PowerSeries,
    class: NormalizationClass,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    h: PowerSeries,
    g: PowerSeries,
    class: NormalizationClass,
}

impl TryFrom<MapRepr> for HarmonicMap {
    type Error = Error;

    fn try_from(r: MapRepr) -> Result<Self> {
        HarmonicMap::new(r.h, r.g, r.class)
    }
}

impl From<HarmonicMap> for MapRepr {
    fn from(f: HarmonicMap) -> Self {
        MapRepr {
            h: f.h,
            g: f.g,
            class: f.class,
        }
    }
}

fn expect_coeff(
    s: &PowerSeries,
    n: usize,
    target: Complex,
    coefficient: &'static str,
    expected: &'static str,
) -> Result<()> {
    let value = s.get(n).unwrap_or_default();
    if (value - target).norm() > NORMALIZATION_TOL {
        return Err(Error::Normalization {
            coefficient,
            value: value.to_string(),
            expected,
        });
    }
    Ok(())
}

pub(crate) fn check_disk(eps: Complex) -> Result<()> {
    if eps.norm() > 1.0 + DISK_TOL {
        return Err(Error::EpsilonOutsideDisk(eps.norm()));
    }
    Ok(())
}

impl HarmonicMap {
    /// Builds a map, checking the coefficient constraints of `class`.
    pub fn new(h: PowerSeries, g: PowerSeries, class: NormalizationClass) -> Result<Self> {
        if h.order() != g.order() {
            return Err(Error::OrderMismatch {
                h: h.order(),
                g: g.order(),
            });
        }
        let map = Self { h, g, class };
        map.check_normalization(class)?;
        Ok(map)
    }

    /// The analytic map `h + conj(0)`.
    pub fn analytic(h: PowerSeries, class: NormalizationClass) -> Result<Self> {
        let g = PowerSeries::zero(h.order());
        Self::new(h, g, class)
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self {
            h: PowerSeries::identity(order),
            g: PowerSeries::zero(order),
            class: NormalizationClass::H0,
        }
    }

    /// Verifies the constraints of `class` on this map's coefficients.
    pub fn check_normalization(&self, class: NormalizationClass) -> Result<()> {
        let zero = Complex::new(0.0, 0.0);
        let one = Complex::new(1.0, 0.0);
        if class == NormalizationClass::Unconstrained {
            return Ok(());
        }
        expect_coeff(&self.h, 0, zero, "h(0)", "0")?;
        expect_coeff(&self.h, 1, one, "h'(0)", "1")?;
        expect_coeff(&self.g, 0, zero, "g(0)", "0")?;
        if class == NormalizationClass::H0 {
            expect_coeff(&self.g, 1, zero, "g'(0)", "0")?;
        }
        Ok(())
    }

    /// Re-tags the map, checking the new constraints.
    pub fn with_class(self, class: NormalizationClass) -> Result<Self> {
        self.check_normalization(class)?;
        Ok(Self { class, ..self })
    }

    pub fn h(&self) -> &PowerSeries {
        &self.h
    }

    pub fn g(&self) -> &PowerSeries {
        &self.g
    }

    pub fn class(&self) -> NormalizationClass {
        self.class
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    /// `b₁ = f_z̄(0)`, the first co-analytic coefficient.
    pub fn b1(&self) -> Complex {
        self.g.get(1).unwrap_or_default()
    }

    pub fn into_parts(self) -> (PowerSeries, PowerSeries) {
        (self.h, self.g)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            h: self.h.truncate(order),
            g: self.g.truncate(order),
            class: self.class,
        }
    }

    /// `f_ε = h + conj(ε g)`.
    pub fn epsilon_rotate(&self, eps: Complex) -> Result<Self> {
        check_disk(eps)?;
        Ok(Self {
            h: self.h.clone(),
            g: self.g.scale(eps),
            class: self.class,
        })
    }

    /// The analytic function `f^ε = h + ε g`.
    pub fn analytic_slice(&self, eps: Complex) -> Result<PowerSeries> {
        check_disk(eps)?;
        Ok(&self.h + &self.g.scale(eps))
    }

    /// Series of the dilatation `ω = g'/h'`.
    pub fn dilatation(&self) -> Result<PowerSeries> {
        let dh = self.h.derivative()?;
        let dg = self.g.derivative()?;
        dg.div(&dh).map_err(|_| Error::DegenerateDerivative)
    }

    /// `J_f(z) = |h'(z)|² − |g'(z)|²`.
    pub fn jacobian_at(&self, z: Complex) -> f64 {
        self.h.eval_derivative(z).norm_sqr() - self.g.eval_derivative(z).norm_sqr()
    }

    /// `h(z) + conj(g(z))`.
    pub fn eval(&self, z: Complex) -> Complex {
        self.h.eval(z) + self.g.eval(z).conj()
    }

    /// `F = f + conj(b₁ f)`: analytic part `h + conj(b₁) g`, co-analytic
    /// part `b₁ h + g`. The input must satisfy the 𝓗₀ constraints.
    pub fn affine_shear(&self, b1: Complex) -> Result<Self> {
        if b1.norm() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "shear coefficient must satisfy |b1| < 1, got |b1| = {}",
                b1.norm()
            )));
        }
        self.check_normalization(NormalizationClass::H0)?;
        Ok(Self {
            h: &self.h + &self.g.scale(b1.conj()),
            g: &self.h.scale(b1) + &self.g,
            class: NormalizationClass::H,
        })
    }

    /// Splits a class-𝓗 map as `f₀ + conj(b₁ f₀)` with `f₀ ∈ 𝓗₀`.
    /// Returns `(f₀, b₁)`.
    pub fn affine_decompose(&self) -> Result<(Self, Complex)> {
        self.check_normalization(NormalizationClass::H)?;
        let b1 = self.b1();
        let det = 1.0 - b1.norm_sqr();
        if det <= NORMALIZATION_TOL {
            return Err(Error::VanishingDenominator("affine decomposition (|b1| = 1)"));
        }
        let inv = Complex::new(1.0 / det, 0.0);
        let h0 = (&self.h - &self.g.scale(b1.conj())).scale(inv);
        let g0 = (&self.g - &self.h.scale(b1)).scale(inv);
        let f0 = Self::new(h0, g0, NormalizationClass::H0)?;
        Ok((f0, b1))
    }
}
