//! Truncated power series over binary64 complex coefficients.
//!
//! A [`PowerSeries`] of order `N` stores the Taylor coefficients of degree
//! `0..=N` of a function analytic in the unit disk. Everything above degree
//! `N` is unknown, so binary operations truncate to the smaller order of the
//! two operands instead of padding with zeros.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Truncation order used by every catalog constructor unless told otherwise.
pub const DEFAULT_ORDER: usize = 64;

/// Largest truncation order accepted by the catalog constructors.
pub const MAX_ORDER: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct PowerSeries {
    coeffs: Vec<Complex>,
}

/// On-disk layout: `{"order": N, "coeffs": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Complex>,
}

impl TryFrom<SeriesRepr> for PowerSeries {
    type Error = Error;

    fn try_from(repr: SeriesRepr) -> Result<Self> {
        if repr.coeffs.len() != repr.order + 1 {
            return Err(Error::InvalidParameter(format!(
                "order {} requires {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        PowerSeries::new(repr.coeffs)
    }
}

impl From<PowerSeries> for SeriesRepr {
    fn from(s: PowerSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

/// Result of evaluating a series, flagged when the point lies outside the
/// closed unit disk where the truncated polynomial says little about the
/// underlying function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex,
    pub outside_disk: bool,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(degree) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite { degree });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// Builds a series of the given order from a coefficient formula.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Complex) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(c: Complex, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex::new(1.0, 0.0), order)
    }

    /// `c·z^k`, or the zero series when `k` exceeds the order.
    pub fn monomial(c: Complex, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Complex::new(1.0, 0.0), 1, order)
    }

    /// Polynomial with the given (real) low-order coefficients, padded with
    /// exact zeros up to `order`.
    pub fn polynomial(low: &[f64], order: usize) -> Self {
        Self::from_fn(order, |n| Complex::new(low.get(n).copied().unwrap_or(0.0), 0.0))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn get(&self, n: usize) -> Option<Complex> {
        self.coeffs.get(n).copied()
    }

    /// Drops every coefficient above `order` (no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Coefficientwise complex conjugate, i.e. the series of `conj(p(conj z))`.
    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::ConstantDerivative);
        }
        Ok(Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, &c)| c * (n + 1) as f64)
                .collect(),
        })
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::new(0.0, 0.0));
        coeffs.extend(self.coeffs.iter().enumerate().map(|(n, &c)| c / (n + 1) as f64));
        Self { coeffs }
    }

    /// Quotient `self / q` by forward substitution.
    pub fn div(&self, q: &PowerSeries) -> Result<Self> {
        let q0 = q.coeffs[0];
        if q0.norm() == 0.0 {
            return Err(Error::DivisionByZeroConstant);
        }
        let order = self.order().min(q.order());
        let mut r: Vec<Complex> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= q.coeffs[j] * r[k - j];
            }
            r.push(acc / q0);
        }
        Ok(Self { coeffs: r })
    }

    /// Series of `self ∘ w` for a Schwarz-type inner series with `w(0) = 0`.
    pub fn compose(&self, w: &PowerSeries) -> Result<Self> {
        if w.coeffs[0] != Complex::new(0.0, 0.0) {
            return Err(Error::CompositionConstant);
        }
        Ok(self.substitute(w))
    }

    /// Evaluates the truncated polynomial at the series `w` by Horner's
    /// scheme, truncating at the smaller order. Unlike [`compose`], `w` may
    /// carry a constant term; the result is then the exact expansion of the
    /// *polynomial* `self` at `w`, not of the function it truncates.
    ///
    /// [`compose`]: PowerSeries::compose
    pub fn substitute(&self, w: &PowerSeries) -> Self {
        let order = self.order().min(w.order());
        let w = w.truncate(order);
        let mut acc = Self::constant(self.coeffs[self.order()], order);
        for k in (0..self.order()).rev() {
            acc = &acc * &w;
            acc.coeffs[0] += self.coeffs[k];
        }
        acc
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_checked(&self, z: Complex) -> Evaluation {
        Evaluation {
            value: self.eval(z),
            outside_disk: z.norm() > 1.0,
        }
    }

    /// Value of the derivative of the truncated polynomial at `z`, without
    /// materialising the derivative series.
    pub fn eval_derivative(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, (n, &c)| acc * z + c * n as f64)
    }

    /// `Σ |c_n| r^n` over the stored coefficients with `n ≥ from`.
    pub fn modulus_sum(&self, r: f64, from: usize) -> f64 {
        let mut sum = 0.0;
        let mut rn = 1.0;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n >= from {
                sum += c.norm() * rn;
            }
            rn *= r;
        }
        sum
    }

    /// Largest coefficientwise distance over the common degrees.
    pub fn max_abs_diff(&self, other: &PowerSeries) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for PowerSeries {
    type Output = Complex;

    fn index(&self, n: usize) -> &Complex {
        &self.coeffs[n]
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        self.scale(Complex::new(-1.0, 0.0))
    }
}

/// Truncated Cauchy product.
impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k).fold(Complex::new(0.0, 0.0), |acc, i| {
                    acc + self.coeffs[i] * rhs.coeffs[k - i]
                })
            })
            .collect();
        PowerSeries { coeffs }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}
