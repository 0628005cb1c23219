//! Majorant sums, subordination and Bohr radii.

use serde::Serialize;

use crate::bounds::{ClassProfile, MajorantForm, Verdict};
use crate::error::{Error, Result};
use crate::harmonic::{HarmonicMap, NormalizationClass};
use crate::series::{Complex, PowerSeries};

pub const BRACKET: (f64, f64) = (1e-9, 1.0 - 1e-9);
pub const MAX_ITERATIONS: usize = 200;
pub const SOLVER_TOL: f64 = 1e-12;

const SCHWARZ_RADIUS: f64 = 0.999;
const SCHWARZ_TOL: f64 = 1e-6;
const SCHWARZ_ANGLES: usize = 1024;
const CHECK_TOL: f64 = 1e-9;

/// `Σ_{n≥1} |aₙ| rⁿ + Σ_{n≥1} |bₙ| rⁿ` over the stored coefficients.
pub fn majorant_sum(f: &HarmonicMap, r: f64) -> f64 {
    f.h().modulus_sum(r, 1) + f.g().modulus_sum(r, 1)
}

/// [`majorant_sum`] together with the profile tail `Σ_{n>N} cₙ rⁿ`.
pub fn majorant_sum_with_tail(f: &HarmonicMap, profile: &ClassProfile, r: f64) -> (f64, f64) {
    (majorant_sum(f, r), profile.tail(r, f.order() + 1))
}

/// Largest `|w(z)|` over `|z| = 0.999`.
pub fn schwarz_sup(w: &PowerSeries) -> f64 {
    (0..SCHWARZ_ANGLES)
        .map(|j| {
            let t = 2.0 * std::f64::consts::PI * j as f64 / SCHWARZ_ANGLES as f64;
            w.eval(Complex::from_polar(SCHWARZ_RADIUS, t)).norm()
        })
        .fold(0.0, f64::max)
}

/// `F∘w = H∘w + conj(G∘w)` for a Schwarz function `w`.
pub fn subordinate(f: &HarmonicMap, w: &PowerSeries) -> Result<HarmonicMap> {
    if w[0] != Complex::new(0.0, 0.0) {
        return Err(Error::CompositionConstant);
    }
    let sup = schwarz_sup(w);
    if sup > 1.0 + SCHWARZ_TOL {
        return Err(Error::NotSchwarz(sup));
    }
    HarmonicMap::new(f.h().compose(w)?, f.g().compose(w)?, NormalizationClass::Unconstrained)
}

/// `c·z·(z + a)/(1 + ā z)`, a Schwarz function for `|c| ≤ 1`, `|a| < 1`.
pub fn blaschke_schwarz(c: Complex, a: Complex, order: usize) -> Result<PowerSeries> {
    if c.norm() > 1.0 || a.norm() >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "Schwarz factor needs |c| ≤ 1 and |a| < 1, got |c| = {}, |a| = {}",
            c.norm(),
            a.norm()
        )));
    }
    let q = -a.conj();
    let mut coeffs = vec![Complex::new(0.0, 0.0); order + 1];
    let mut qk = Complex::new(1.0, 0.0);
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        // z (z + a) Σ qᵏ zᵏ: coefficient n is a·q^{n−1} + q^{n−2}
        *slot = if n == 1 { a } else { a * q * qk + qk };
        if n >= 2 {
            qk *= q;
        }
    }
    Ok(PowerSeries::new(coeffs)?.scale(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaC {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// `Σ_{k≥0} |aₖ| rᵏ ≤ Σ_{k≥0} |bₖ| rᵏ` for `f = Σ aₖ zᵏ`, `F = Σ bₖ zᵏ`.
pub fn check_lemma_c(f: &PowerSeries, big_f: &PowerSeries, r: f64) -> LemmaC {
    let lhs = f.modulus_sum(r, 0);
    let rhs = big_f.modulus_sum(r, 0);
    LemmaC {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + CHECK_TOL) + 1e-15,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BohrCheck {
    pub profile: &'static str,
    pub r: f64,
    pub sum: f64,
    pub tail: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// `majorant_sum(f, r) ≤ dist_lower`; `Inconclusive` when the truncation
/// tail straddles the threshold.
pub fn bohr_check(f: &HarmonicMap, profile: &ClassProfile, r: f64) -> Result<BohrCheck> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("radius must lie in [0, 1), got {r}")));
    }
    let (sum, tail) = majorant_sum_with_tail(f, profile, r);
    let threshold = profile.dist_lower;
    let slack = CHECK_TOL * threshold;
    let verdict = if sum > threshold + slack {
        Verdict::Fail
    } else if sum + tail <= threshold + slack {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(BohrCheck {
        profile: profile.name,
        r,
        sum,
        tail,
        threshold,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BohrReport {
    pub profile: &'static str,
    pub radius: f64,
    pub residual: f64,
    pub iterations: usize,
    pub closed_form_root: Option<f64>,
}

/// Bisection for `M(r) = dist_lower` on [`BRACKET`].
pub fn bohr_radius(profile: &ClassProfile) -> Result<BohrReport> {
    let form = profile.majorant()?;
    let target = profile.dist_lower;
    let excess = |r: f64| form.eval(r) - target;
    let (mut lo, mut hi) = BRACKET;
    if excess(lo) > 0.0 || excess(hi) < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "majorant of {} does not cross {target} on the bracket",
            profile.name
        )));
    }
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        if excess(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let radius = if excess(hi).abs() < excess(lo).abs() { hi } else { lo };
    Ok(BohrReport {
        profile: profile.name,
        radius,
        residual: excess(radius).abs(),
        iterations,
        closed_form_root: Some(closed_form_root(form)),
    })
}

/// Root of `M(r) = dist_lower` in closed form.
pub fn closed_form_root(form: MajorantForm) -> f64 {
    match form {
        MajorantForm::KoebeType => cubic_real_root(-1.0, 3.0, -1.0 / 3.0),
        MajorantForm::HalfplaneType | MajorantForm::LinearType => 3.0 - 2.0 * 2f64.sqrt(),
        MajorantForm::GeometricType => 1.0 / 3.0,
    }
}

/// Real root of `x³ + a x² + b x + c` when it has exactly one (Cardano).
fn cubic_real_root(a: f64, b: f64, c: f64) -> f64 {
    let p = b - a * a / 3.0;
    let q = 2.0 * a.powi(3) / 27.0 - a * b / 3.0 + c;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    debug_assert!(disc > 0.0);
    let s = disc.sqrt();
    (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt() - a / 3.0
}

/// `3r³ − 3r² + 9r − 1`.
pub fn bohr_polynomial_residual(r: f64) -> f64 {
    ((3.0 * r - 3.0) * r + 9.0) * r - 1.0
}
