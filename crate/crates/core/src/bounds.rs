//! Class profiles and the coefficient, growth and distortion inequalities
//! checked against them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::numcheck::GridSpec;
use crate::series::Complex;

const REL_TOL: f64 = 1e-9;
const ABS_TOL: f64 = 1e-12;

/// Tri-state outcome shared by all verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Closed form of `Σ (|aₙ| + |bₙ|) rⁿ` for the extremal member of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MajorantForm {
    /// `(r + r³/3)/(1−r)³`, coefficients `(2n²+1)/3`.
    KoebeType,
    /// `r/(1−r)²`, coefficients `n`.
    HalfplaneType,
    /// `r/(1−r)²`, coefficients `n`.
    LinearType,
    /// `r/(1−r)`, coefficients `1`.
    GeometricType,
}

impl MajorantForm {
    pub fn eval(self, r: f64) -> f64 {
        match self {
            MajorantForm::KoebeType => (r + r.powi(3) / 3.0) / (1.0 - r).powi(3),
            MajorantForm::HalfplaneType | MajorantForm::LinearType => r / (1.0 - r).powi(2),
            MajorantForm::GeometricType => r / (1.0 - r),
        }
    }

    /// Coefficient of `rⁿ` in the closed form.
    pub fn coefficient(self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            MajorantForm::KoebeType => (2.0 * nf * nf + 1.0) / 3.0,
            MajorantForm::HalfplaneType | MajorantForm::LinearType => nf,
            MajorantForm::GeometricType => 1.0,
        }
    }

    /// `Σ_{n ≥ from} coefficient(n) rⁿ`, summed until the terms are negligible.
    pub fn tail(self, r: f64, from: usize) -> f64 {
        series_tail(|n| self.coefficient(n), r, from)
    }
}

fn series_tail(coefficient: impl Fn(usize) -> f64, r: f64, from: usize) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if r >= 1.0 {
        return f64::INFINITY;
    }
    let mut sum = 0.0;
    let mut rn = r.powi(from as i32);
    let mut n = from;
    loop {
        let term = coefficient(n) * rn;
        sum += term;
        if (term <= 1e-18 * sum || term == 0.0) && n > from + 8 {
            break;
        }
        if n > from + 10_000_000 {
            return f64::INFINITY;
        }
        rn *= r;
        n += 1;
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileKind {
    SStar,
    CStar,
    SStable,
    CStable,
}

/// Coefficient majorants, orders and covering radius of one stable class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassProfile {
    pub name: &'static str,
    pub kind: ProfileKind,
    pub alpha_affine: Option<f64>,
    pub alpha_h0: f64,
    pub dist_lower: f64,
    pub majorant_closed_form: Option<MajorantForm>,
}

pub const S_STAR: ClassProfile = ClassProfile {
    name: "S_STAR",
    kind: ProfileKind::SStar,
    alpha_affine: Some(3.0),
    alpha_h0: 2.5,
    dist_lower: 1.0 / 6.0,
    majorant_closed_form: Some(MajorantForm::KoebeType),
};

pub const C_STAR: ClassProfile = ClassProfile {
    name: "C_STAR",
    kind: ProfileKind::CStar,
    alpha_affine: Some(2.0),
    alpha_h0: 1.5,
    dist_lower: 0.25,
    majorant_closed_form: Some(MajorantForm::HalfplaneType),
};

pub const S_STABLE: ClassProfile = ClassProfile {
    name: "S_STABLE",
    kind: ProfileKind::SStable,
    alpha_affine: None,
    alpha_h0: 2.0,
    dist_lower: 0.25,
    majorant_closed_form: Some(MajorantForm::LinearType),
};

pub const C_STABLE: ClassProfile = ClassProfile {
    name: "C_STABLE",
    kind: ProfileKind::CStable,
    alpha_affine: None,
    alpha_h0: 1.0,
    dist_lower: 0.5,
    majorant_closed_form: Some(MajorantForm::GeometricType),
};

pub const PROFILES: [ClassProfile; 4] = [S_STAR, C_STAR, S_STABLE, C_STABLE];

impl ClassProfile {
    pub fn by_name(name: &str) -> Result<Self> {
        PROFILES
            .iter()
            .find(|p| p.name.eq_ignore_ascii_case(name))
            .copied()
            .ok_or_else(|| Error::UnknownName(format!("profile {name}")))
    }

    pub fn analytic_bound(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.kind {
            ProfileKind::SStar => catalog::coeff_a(n),
            ProfileKind::CStar => (nf + 1.0) / 2.0,
            ProfileKind::SStable => nf,
            ProfileKind::CStable => 1.0,
        }
    }

    pub fn coanalytic_bound(&self, n: usize) -> f64 {
        let nf = n as f64;
        match self.kind {
            ProfileKind::SStar => catalog::coeff_b(n),
            ProfileKind::CStar => (nf - 1.0) / 2.0,
            ProfileKind::SStable => nf,
            ProfileKind::CStable => 1.0,
        }
    }

    /// Bound on `|aₙ| + |bₙ|`.
    pub fn combined_bound(&self, n: usize) -> f64 {
        match self.majorant_closed_form {
            Some(form) => form.coefficient(n),
            None => self.analytic_bound(n) + self.coanalytic_bound(n),
        }
    }

    /// `Σ_{n ≥ from} combined_bound(n) rⁿ`.
    pub fn tail(&self, r: f64, from: usize) -> f64 {
        series_tail(|n| self.combined_bound(n), r, from)
    }

    pub fn majorant(&self) -> Result<MajorantForm> {
        self.majorant_closed_form
            .ok_or_else(|| Error::NoClosedForm(self.name.to_string()))
    }
}

/// Where a violation was found.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Location {
    Index(usize),
    Point(Complex),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub at: Location,
    pub quantity: &'static str,
    pub value: f64,
    pub bound: f64,
}

/// Outcome of one verifier run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub profile: String,
    pub n_or_grid: String,
    /// Smallest slack `bound − value` over all checks (negative on violation).
    pub margin: f64,
    pub verdict: Verdict,
    pub tail: f64,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

/// Accumulates comparisons against upper and lower bounds.
struct Tally {
    margin: f64,
    checked: usize,
    failed: bool,
    inconclusive: bool,
    violations: Vec<Violation>,
}

impl Tally {
    fn new() -> Self {
        Self {
            margin: f64::INFINITY,
            checked: 0,
            failed: false,
            inconclusive: false,
            violations: Vec::new(),
        }
    }

    /// Records `value ≤ bound` (or `value ≥ bound` when `lower`), allowing
    /// `slack` for rounding and truncation; `tail` is the truncation part.
    fn check(&mut self, at: Location, quantity: &'static str, value: f64, bound: f64, lower: bool, tail: f64) {
        self.checked += 1;
        let gap = if lower { value - bound } else { bound - value };
        self.margin = self.margin.min(gap);
        let rounding = REL_TOL * bound.abs().max(value.abs()) + ABS_TOL;
        if gap >= -rounding {
            return;
        }
        if gap >= -(rounding + tail) {
            self.inconclusive = true;
            return;
        }
        self.failed = true;
        self.violations.push(Violation {
            at,
            quantity,
            value,
            bound,
        });
    }

    fn into_report(self, profile: String, n_or_grid: String, tail: f64) -> Report {
        let verdict = if self.failed {
            Verdict::Fail
        } else if self.inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        Report {
            profile,
            n_or_grid,
            margin: self.margin,
            verdict,
            tail,
            checked: self.checked,
            violations: self.violations,
        }
    }
}

/// `|aₙ| ≤ analytic_bound(n)` and `|bₙ| ≤ coanalytic_bound(n)` for
/// `2 ≤ n ≤ upto` (capped at the truncation order).
pub fn check_coeff_bounds(f: &HarmonicMap, profile: &ClassProfile, upto: usize) -> Report {
    let last = upto.min(f.order());
    let mut tally = Tally::new();
    for n in 2..=last {
        let a = f.h()[n].norm();
        let b = f.g()[n].norm();
        tally.check(Location::Index(n), "a_n", a, profile.analytic_bound(n), false, 0.0);
        tally.check(Location::Index(n), "b_n", b, profile.coanalytic_bound(n), false, 0.0);
    }
    tally.into_report(profile.name.to_string(), format!("n=2..={last}"), 0.0)
}

/// Closures under the affine maps `A_c` of the starlike-type classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AffineClass {
    S,
    C,
}

impl AffineClass {
    /// Strict bound on `|aₙ|` and `|bₙ|`.
    pub fn bound(self, n: usize) -> f64 {
        let nf = n as f64;
        match self {
            AffineClass::S => (2.0 * nf * nf + 1.0) / 3.0,
            AffineClass::C => nf,
        }
    }
}

/// Strict inequalities `|aₙ| < bound(n)` and `|bₙ| < bound(n)`.
pub fn check_affine_coeff_bounds(f: &HarmonicMap, which: AffineClass, upto: usize) -> Report {
    let last = upto.min(f.order());
    let mut margin = f64::INFINITY;
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in 2..=last {
        let bound = which.bound(n);
        for (quantity, value) in [("a_n", f.h()[n].norm()), ("b_n", f.g()[n].norm())] {
            checked += 1;
            margin = margin.min(bound - value);
            if value >= bound {
                violations.push(Violation {
                    at: Location::Index(n),
                    quantity,
                    value,
                    bound,
                });
            }
        }
    }
    let verdict = if violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let name = match which {
        AffineClass::S => "A(S_STAR)",
        AffineClass::C => "A(C_STAR)",
    };
    Report {
        profile: name.to_string(),
        n_or_grid: format!("n=2..={last}"),
        margin,
        verdict,
        tail: 0.0,
        checked,
        violations,
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha >= 1.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("order α must be ≥ 1, got {alpha}")));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!("radius must lie in [0, 1), got {r}")));
    }
    Ok(())
}

fn check_b1(b1_mod: f64) -> Result<()> {
    if !(0.0..1.0).contains(&b1_mod) {
        return Err(Error::InvalidParameter(format!("|b₁| must lie in [0, 1), got {b1_mod}")));
    }
    Ok(())
}

/// `(1/(2α))[1 − ((1−r)/(1+r))^α] ≤ |f(z)| ≤ (1/(2α))[((1+r)/(1−r))^α − 1]`.
pub fn growth_interval(alpha: f64, r: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_radius(r)?;
    let q = (1.0 - r) / (1.0 + r);
    Ok(((1.0 - q.powf(alpha)) / (2.0 * alpha), (q.powf(-alpha) - 1.0) / (2.0 * alpha)))
}

/// `1/(2α)`, radius of the disk covered by every member.
pub fn covering_radius(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(1.0 / (2.0 * alpha))
}

/// `(1−|b₁|²)(1−r)^{2α−2}/(1+r)^{2α+2} ≤ J_f ≤ (1−|b₁|²)(1+r)^{2α−2}/(1−r)^{2α+2}`.
pub fn jacobian_interval(alpha: f64, b1_mod: f64, r: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_b1(b1_mod)?;
    check_radius(r)?;
    let s = 1.0 - b1_mod * b1_mod;
    let lower = s * (1.0 - r).powf(2.0 * alpha - 2.0) / (1.0 + r).powf(2.0 * alpha + 2.0);
    let upper = s * (1.0 + r).powf(2.0 * alpha - 2.0) / (1.0 - r).powf(2.0 * alpha + 2.0);
    Ok((lower, upper))
}

/// Jacobian bounds `(1−|b₁|²)/(1+r)²` and `(1−|b₁|²)/(1−r)²` in the form
/// stated for the affine closure of the stable convex class.
///
/// The upper bound is not satisfied by `l + conj(b₁ l)`, whose Jacobian on the
/// positive axis is `(1−|b₁|²)/(1−r)⁴`; [`verify_distortion`] uses
/// [`jacobian_interval`] with `α = 1` instead.
pub fn stable_convex_jacobian_as_stated(b1_mod: f64, r: f64) -> Result<(f64, f64)> {
    check_b1(b1_mod)?;
    check_radius(r)?;
    let s = 1.0 - b1_mod * b1_mod;
    Ok((s / (1.0 + r).powi(2), s / (1.0 - r).powi(2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DistortionVariant {
    LemmaB,
    StableMin,
}

impl DistortionVariant {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "LEMMA_B" => Ok(DistortionVariant::LemmaB),
            "STABLE_MIN" => Ok(DistortionVariant::StableMin),
            _ => Err(Error::UnknownName(format!("distortion variant {s}"))),
        }
    }
}

/// Upper bounds on `|h'(z)|` and `|g'(z)|` at `|z| = r`.
///
/// `LemmaB`: `(1 + r|b₁|)(1+r)^{α−3/2}/(1−r)^{α+3/2}` and the same with
/// `r + |b₁|`. `StableMin` (α ∈ {1, 2}): `(1+r)/(1−r)³` resp. `1/(1−r)²`
/// for `h'`, times `min{1, r + |b₁|}` for `g'`.
pub fn derivative_bounds(alpha: f64, b1_mod: f64, r: f64, variant: DistortionVariant) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_b1(b1_mod)?;
    check_radius(r)?;
    match variant {
        DistortionVariant::LemmaB => {
            let common = (1.0 + r).powf(alpha - 1.5) / (1.0 - r).powf(alpha + 1.5);
            Ok(((1.0 + r * b1_mod) * common, (r + b1_mod) * common))
        }
        DistortionVariant::StableMin => {
            let h_bound = if alpha == 2.0 {
                (1.0 + r) / (1.0 - r).powi(3)
            } else if alpha == 1.0 {
                1.0 / (1.0 - r).powi(2)
            } else {
                return Err(Error::InvalidParameter(format!(
                    "STABLE_MIN bounds exist for α = 1 and α = 2 only, got {alpha}"
                )));
            };
            Ok((h_bound, (r + b1_mod).min(1.0) * h_bound))
        }
    }
}

/// Tail `Σ_{n>N} (|aₙ|+|bₙ|) rⁿ` allowed for a map truncated at `order`,
/// using the largest coefficient majorant among the profiles.
pub fn value_tail(order: usize, r: f64) -> f64 {
    MajorantForm::KoebeType.tail(r, order + 1)
}

/// Tail of the derivative series, `Σ_{n>N} n (|aₙ|+|bₙ|) rⁿ⁻¹`.
pub fn derivative_tail(order: usize, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    series_tail(|n| n as f64 * MajorantForm::KoebeType.coefficient(n), r, order + 1) / r
}

/// Checks `growth_interval(α, |z|)` at every grid point.
pub fn verify_growth(f: &HarmonicMap, alpha: f64, grid: &GridSpec) -> Result<Report> {
    check_alpha(alpha)?;
    let mut tally = Tally::new();
    let mut worst_tail: f64 = 0.0;
    for r in grid.radius_values() {
        let (lower, upper) = growth_interval(alpha, r)?;
        let tail = value_tail(f.order(), r);
        worst_tail = worst_tail.max(tail);
        for theta in grid.angle_values() {
            let z = Complex::from_polar(r, theta);
            let modulus = f.eval(z).norm();
            tally.check(Location::Point(z), "|f|", modulus, lower, true, tail);
            tally.check(Location::Point(z), "|f|", modulus, upper, false, tail);
        }
    }
    Ok(tally.into_report(format!("alpha={alpha}"), grid.label(), worst_tail))
}

/// Checks the Jacobian against [`jacobian_interval`] and `|h'|`, `|g'|`
/// against [`derivative_bounds`] at every grid point.
pub fn verify_distortion(
    f: &HarmonicMap,
    alpha: f64,
    b1: Complex,
    grid: &GridSpec,
    variant: DistortionVariant,
) -> Result<Report> {
    check_alpha(alpha)?;
    let b1_mod = b1.norm();
    let mut tally = Tally::new();
    let mut worst_tail: f64 = 0.0;
    for r in grid.radius_values() {
        let (j_lower, j_upper) = jacobian_interval(alpha, b1_mod, r)?;
        let (h_bound, g_bound) = derivative_bounds(alpha, b1_mod, r, variant)?;
        let td = derivative_tail(f.order(), r);
        worst_tail = worst_tail.max(td);
        for theta in grid.angle_values() {
            let z = Complex::from_polar(r, theta);
            let dh = f.h().eval_derivative(z).norm();
            let dg = f.g().eval_derivative(z).norm();
            let jac = dh * dh - dg * dg;
            let tj = 2.0 * (dh + dg) * td + 2.0 * td * td;
            tally.check(Location::Point(z), "J", jac, j_lower, true, tj);
            tally.check(Location::Point(z), "J", jac, j_upper, false, tj);
            tally.check(Location::Point(z), "|h'|", dh, h_bound, false, td);
            tally.check(Location::Point(z), "|g'|", dg, g_bound, false, td);
        }
    }
    let name = format!("alpha={alpha},b1={b1_mod},{variant:?}");
    Ok(tally.into_report(name, grid.label(), worst_tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::NormalizationClass;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn profiles_are_well_formed() {
        for p in PROFILES {
            assert!(p.dist_lower > 0.0 && p.dist_lower <= 1.0);
            for n in 2..200 {
                assert!(p.analytic_bound(n) > 0.0 && p.coanalytic_bound(n) > 0.0);
            }
            assert_eq!(ClassProfile::by_name(p.name).unwrap(), p);
            let form = p.majorant().unwrap();
            for r in [0.05, 0.2, 0.5] {
                let direct: f64 = p.tail(r, 1);
                assert!(close(direct, form.eval(r), 1e-12 * form.eval(r)), "{}", p.name);
            }
        }
        assert!(ClassProfile::by_name("nope").is_err());
    }

    #[test]
    fn coefficient_bounds_of_extremal_maps() {
        let k = catalog::harmonic_koebe(64).unwrap();
        let rep = check_coeff_bounds(&k, &S_STAR, 64);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.margin.abs() < 1e-9);
        let l = catalog::harmonic_half_plane(64).unwrap();
        let rep = check_coeff_bounds(&l, &C_STAR, 64);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert!(rep.margin.abs() < 1e-9);
        let id = HarmonicMap::identity(64);
        for p in PROFILES {
            let rep = check_coeff_bounds(&id, &p, 64);
            assert_eq!(rep.verdict, Verdict::Pass);
            assert!(rep.margin > 0.0);
        }
        let rep = check_coeff_bounds(&k, &C_STAR, 10);
        assert_eq!(rep.verdict, Verdict::Fail);
        assert!(!rep.violations.is_empty());
    }

    #[test]
    fn report_json_fields() {
        let rep = check_coeff_bounds(&HarmonicMap::identity(4), &S_STAR, 4);
        let v = serde_json::to_value(&rep).unwrap();
        for key in ["profile", "n_or_grid", "margin", "verdict"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn affine_coefficient_bounds() {
        let k = catalog::harmonic_koebe(64).unwrap();
        let f = k.affine_shear(Complex::from_polar(0.5, 0.7)).unwrap();
        assert_eq!(check_affine_coeff_bounds(&f, AffineClass::S, 64).verdict, Verdict::Pass);
        let l = catalog::harmonic_half_plane(64).unwrap();
        let f = l.affine_shear(Complex::new(0.9, 0.0)).unwrap();
        assert_eq!(check_affine_coeff_bounds(&f, AffineClass::C, 64).verdict, Verdict::Pass);
        let kk = HarmonicMap::analytic(catalog::koebe(64).unwrap(), NormalizationClass::H0).unwrap();
        assert_eq!(check_affine_coeff_bounds(&kk, AffineClass::S, 64).verdict, Verdict::Pass);
        assert_eq!(check_affine_coeff_bounds(&kk, AffineClass::C, 64).verdict, Verdict::Fail);
    }

    #[test]
    fn growth_interval_values() {
        let (lo, hi) = growth_interval(3.0, 0.5).unwrap();
        assert!(close(lo, 13.0 / 81.0, 1e-15) && close(hi, 13.0 / 3.0, 1e-13));
        assert_eq!(growth_interval(3.0, 0.0).unwrap(), (0.0, 0.0));
        let (lo, hi) = growth_interval(2.0, 0.5).unwrap();
        assert!(close(lo, 2.0 / 9.0, 1e-15) && close(hi, 2.0, 1e-14));
        assert!(growth_interval(2.0, 1.0).is_err());
        assert!(growth_interval(0.5, 0.2).is_err());
        for alpha in [1.0, 1.5, 2.0, 2.5, 3.0] {
            let (lo, _) = growth_interval(alpha, 1.0 - 1e-8).unwrap();
            assert!(close(lo, covering_radius(alpha).unwrap(), 1e-6));
            let mut prev = (0.0, 0.0);
            for i in 1..100 {
                let cur = growth_interval(alpha, i as f64 / 100.0).unwrap();
                assert!(cur.0 <= cur.1 && cur.0 > prev.0 && cur.1 > prev.1);
                prev = cur;
            }
        }
        assert_eq!(covering_radius(3.0).unwrap(), 1.0 / 6.0);
        assert_eq!(covering_radius(2.0).unwrap(), 0.25);
        assert_eq!(covering_radius(1.0).unwrap(), 0.5);
    }

    #[test]
    fn jacobian_interval_exponents() {
        assert_eq!(jacobian_interval(2.5, 0.0, 0.0).unwrap(), (1.0, 1.0));
        let r: f64 = 0.3;
        for (alpha, lo_exp, hi_exp) in [(2.5, 3, 7), (1.5, 1, 5), (2.0, 2, 6)] {
            let (lo, hi) = jacobian_interval(alpha, 0.4, r).unwrap();
            let s = 1.0 - 0.16;
            assert!(close(lo, s * (1.0 - r).powi(lo_exp) / (1.0 + r).powi(hi_exp), 1e-14));
            assert!(close(hi, s * (1.0 + r).powi(lo_exp) / (1.0 - r).powi(hi_exp), 1e-13));
        }
    }

    #[test]
    fn derivative_bound_instances() {
        let r: f64 = 0.4;
        let b = 0.3;
        let (h, g) = derivative_bounds(2.5, b, r, DistortionVariant::LemmaB).unwrap();
        assert!(close(h, (1.0 + r * b) * (1.0 + r) / (1.0 - r).powi(4), 1e-12));
        assert!(close(g, (r + b) * (1.0 + r) / (1.0 - r).powi(4), 1e-12));
        let (h, _) = derivative_bounds(1.5, b, r, DistortionVariant::LemmaB).unwrap();
        assert!(close(h, (1.0 + r * b) / (1.0 - r).powi(3), 1e-12));
        let (_, g) = derivative_bounds(2.0, 0.9, 0.5, DistortionVariant::StableMin).unwrap();
        assert!(close(g, 12.0, 1e-12));
        let (h, g) = derivative_bounds(1.0, 0.1, 0.5, DistortionVariant::StableMin).unwrap();
        assert!(close(h, 4.0, 1e-12) && close(g, 0.6 * 4.0, 1e-12));
        assert!(derivative_bounds(2.5, 0.1, 0.5, DistortionVariant::StableMin).is_err());
    }

    #[test]
    fn stated_convex_jacobian_is_exceeded_by_l_shear() {
        let b1 = Complex::new(0.3, 0.0);
        let l = HarmonicMap::analytic(catalog::half_plane(400).unwrap(), NormalizationClass::H0).unwrap();
        let f = l.affine_shear(b1).unwrap();
        let r = 0.5;
        let (_, upper) = stable_convex_jacobian_as_stated(0.3, r).unwrap();
        let jac = f.jacobian_at(Complex::new(r, 0.0));
        assert!(close(jac, 0.91 / (1.0 - r).powi(4), 1e-9));
        assert!(jac > upper);
        let (_, alpha_one_upper) = jacobian_interval(1.0, 0.3, r).unwrap();
        assert!(jac <= alpha_one_upper * (1.0 + 1e-9));
    }

    #[test]
    fn growth_of_extremal_maps() {
        let grid = GridSpec::default();
        let k = catalog::harmonic_koebe(1000).unwrap();
        let rep = verify_growth(&k, 3.0, &grid).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.violations.first());
        assert!(rep.margin.abs() < 1e-9);
        let l = catalog::harmonic_half_plane(1000).unwrap();
        assert_eq!(verify_growth(&l, 2.0, &grid).unwrap().verdict, Verdict::Pass);
        let id = HarmonicMap::identity(4);
        assert_eq!(verify_growth(&id, 3.0, &grid).unwrap().verdict, Verdict::Pass);
        // k grows faster than α = 1 allows
        let kk = HarmonicMap::analytic(catalog::koebe(1000).unwrap(), NormalizationClass::H0).unwrap();
        assert_eq!(verify_growth(&kk, 1.0, &grid).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn growth_of_rotations() {
        let grid = GridSpec::new(12, 0.1, 0.9, 48, 1e-6).unwrap();
        let k = catalog::harmonic_koebe(600).unwrap();
        for j in 0..8 {
            let eps = Complex::from_polar(1.0, 2.0 * PI * j as f64 / 8.0);
            let rot = k.epsilon_rotate(eps).unwrap();
            assert_eq!(verify_growth(&rot, 3.0, &grid).unwrap().verdict, Verdict::Pass);
        }
    }

    #[test]
    fn distortion_of_shears() {
        let grid = GridSpec::new(16, 0.1, 0.95, 64, 1e-6).unwrap();
        let k = catalog::harmonic_koebe(1200).unwrap();
        let b1 = Complex::new(0.3, 0.0);
        let f = k.affine_shear(b1).unwrap();
        let rep = verify_distortion(&f, 2.5, b1, &grid, DistortionVariant::LemmaB).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.violations.first());
        let r = 0.5;
        let (h_bound, g_bound) = derivative_bounds(2.5, 0.3, r, DistortionVariant::LemmaB).unwrap();
        let z = Complex::new(r, 0.0);
        assert!(close(f.h().eval_derivative(z).norm(), h_bound, 1e-9 * h_bound));
        assert!(close(f.g().eval_derivative(z).norm(), g_bound, 1e-9 * g_bound));
        let kk = HarmonicMap::analytic(catalog::koebe(1200).unwrap(), NormalizationClass::H0).unwrap();
        let f = kk.affine_shear(Complex::new(0.4, 0.0)).unwrap();
        let rep = verify_distortion(&f, 2.0, Complex::new(0.4, 0.0), &grid, DistortionVariant::StableMin).unwrap();
        assert_eq!(rep.verdict, Verdict::Pass, "{:?}", rep.violations.first());
        // wrong order: k's shear breaks the α = 3/2 bounds
        let rep = verify_distortion(&f, 1.5, Complex::new(0.4, 0.0), &grid, DistortionVariant::LemmaB).unwrap();
        assert_eq!(rep.verdict, Verdict::Fail);
    }
}
