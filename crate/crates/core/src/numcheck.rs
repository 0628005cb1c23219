//! Grid-based univalence and convexity tests, ε-stability scans and the
//! counterexample computations for `M` and `V_α`.
//!
//! A `Pass` only means that no violation was found at the sampled resolution.
//! Failures are backed either by a geometric witness on the grid or by a
//! violated necessary condition for the class (coefficient, growth and
//! distortion bounds of `𝓢` and `𝓒`), with the truncation tail accounted for.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::Verdict;
use crate::catalog;
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::series::{Complex, PowerSeries};

pub const DEFAULT_TOL: f64 = 1e-6;
const REL_TOL: f64 = 1e-9;
const CONVEX_LADDER: usize = 8;

/// Polar sampling grid: geometric radii in `[r_min, r_max]`, equispaced angles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radii: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub angles: usize,
    pub tol: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radii: 24,
            r_min: 0.1,
            r_max: 0.95,
            angles: 96,
            tol: DEFAULT_TOL,
        }
    }
}

impl GridSpec {
    pub fn new(radii: usize, r_min: f64, r_max: f64, angles: usize, tol: f64) -> Result<Self> {
        if radii < 8 || angles < 8 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 8 radii and 8 angles, got {radii} x {angles}"
            )));
        }
        if !(r_min > 0.0 && r_min <= r_max && r_max < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "grid radii must satisfy 0 < r_min ≤ r_max < 1, got {r_min}..{r_max}"
            )));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self {
            radii,
            r_min,
            r_max,
            angles,
            tol,
        })
    }

    /// Grid used by the stability scans: 16 radii up to `r_max`, 192 angles.
    pub fn scan(r_max: f64) -> Result<Self> {
        Self::new(16, 0.05, r_max, 192, DEFAULT_TOL)
    }

    pub fn radius_values(&self) -> Vec<f64> {
        let ratio = self.r_max / self.r_min;
        (0..self.radii)
            .map(|i| self.r_min * ratio.powf(i as f64 / (self.radii - 1) as f64))
            .collect()
    }

    pub fn angle_values(&self) -> Vec<f64> {
        (0..self.angles)
            .map(|j| 2.0 * PI * j as f64 / self.angles as f64)
            .collect()
    }

    pub fn label(&self) -> String {
        format!("{}x{} r={}..{}", self.radii, self.angles, self.r_min, self.r_max)
    }
}

/// Something that can be evaluated on the disk: an analytic series or a
/// harmonic map.
pub trait PlanarMap {
    fn value(&self, z: Complex) -> Complex;

    /// The analytic series, when the map has no co-analytic part to speak of.
    fn analytic(&self) -> Option<&PowerSeries>;
}

impl PlanarMap for PowerSeries {
    fn value(&self, z: Complex) -> Complex {
        self.eval(z)
    }

    fn analytic(&self) -> Option<&PowerSeries> {
        Some(self)
    }
}

impl PlanarMap for HarmonicMap {
    fn value(&self, z: Complex) -> Complex {
        self.eval(z)
    }

    fn analytic(&self) -> Option<&PowerSeries> {
        if self.g().coeffs().iter().all(|c| *c == Complex::new(0.0, 0.0)) {
            Some(self.h())
        } else {
            None
        }
    }
}

/// Evidence attached to a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// Two distinct points with (nearly) equal images.
    Pair { z1: Complex, z2: Complex },
    /// Interior point whose image is wound around `winding` times by the
    /// image of the outer circle.
    Winding { z: Complex, winding: i64 },
    /// Normalized coefficient exceeding the class bound.
    Coefficient { n: usize, modulus: f64, bound: f64 },
    /// Point where a growth, distortion or real-part condition fails.
    Point { z: Complex, value: f64, bound: f64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Pair { z1, z2 } => write!(f, "pair {} {}", fmt_complex(*z1), fmt_complex(*z2)),
            Witness::Winding { z, winding } => write!(f, "winding {} about {}", winding, fmt_complex(*z)),
            Witness::Coefficient { n, modulus, bound } => {
                write!(f, "coefficient n={n} |a_n|={modulus:.6}>{bound:.6}")
            }
            Witness::Point { z, value, bound } => {
                write!(f, "point {} value={value:.6} bound={bound:.6}", fmt_complex(*z))
            }
        }
    }
}

fn fmt_complex(z: Complex) -> String {
    if z.im < 0.0 {
        format!("{:.6}-{:.6}i", z.re, -z.im)
    } else {
        format!("{:.6}+{:.6}i", z.re, z.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl Outcome {
    fn pass() -> Self {
        Self {
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        Self {
            verdict: Verdict::Fail,
            witness: Some(witness),
        }
    }
}

/// Classical bounds for normalized members of `𝓢` or `𝓒`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AnalyticClass {
    Univalent,
    Convex,
}

impl AnalyticClass {
    fn coefficient(self, n: usize) -> f64 {
        match self {
            AnalyticClass::Univalent => n as f64,
            AnalyticClass::Convex => 1.0,
        }
    }

    /// Lower and upper bounds on `|f(z)|` at `|z| = r`.
    fn growth(self, r: f64) -> (f64, f64) {
        match self {
            AnalyticClass::Univalent => (r / (1.0 + r).powi(2), r / (1.0 - r).powi(2)),
            AnalyticClass::Convex => (r / (1.0 + r), r / (1.0 - r)),
        }
    }

    /// Lower and upper bounds on `|f'(z)|` at `|z| = r`.
    fn distortion(self, r: f64) -> (f64, f64) {
        match self {
            AnalyticClass::Univalent => ((1.0 - r) / (1.0 + r).powi(3), (1.0 + r) / (1.0 - r).powi(3)),
            AnalyticClass::Convex => (1.0 / (1.0 + r).powi(2), 1.0 / (1.0 - r).powi(2)),
        }
    }

    /// Bounds on `Σ_{n>N} |aₙ| rⁿ` and `Σ_{n>N} n|aₙ| rⁿ⁻¹` for a class member.
    fn tails(self, order: usize, r: f64) -> (f64, f64) {
        let mut value = 0.0;
        let mut deriv = 0.0;
        let mut rn = r.powi(order as i32);
        let mut n = order + 1;
        loop {
            let c = self.coefficient(n);
            let dterm = n as f64 * c * rn;
            deriv += dterm;
            value += c * rn * r;
            if dterm <= 1e-18 * deriv.max(f64::MIN_POSITIVE) || n > order + 1_000_000 {
                break;
            }
            rn *= r;
            n += 1;
        }
        (value, deriv)
    }
}

/// Necessary conditions for membership of `s / s'(0)` in the class. Returns
/// the first violation found.
fn certificate(s: &PowerSeries, class: AnalyticClass, grid: &GridSpec) -> Option<Witness> {
    let a1 = s.get(1)?;
    if a1.norm() == 0.0 {
        return Some(Witness::Coefficient {
            n: 1,
            modulus: 0.0,
            bound: 1.0,
        });
    }
    let scale = a1.inv();
    for n in 2..=s.order() {
        let modulus = (s[n] * scale).norm();
        let bound = class.coefficient(n);
        if modulus > bound * (1.0 + REL_TOL) + REL_TOL {
            return Some(Witness::Coefficient { n, modulus, bound });
        }
    }
    let shift = s[0];
    for r in grid.radius_values() {
        let (tv, td) = class.tails(s.order(), r);
        let (g_lo, g_hi) = class.growth(r);
        let (d_lo, d_hi) = class.distortion(r);
        for theta in grid.angle_values() {
            let z = Complex::from_polar(r, theta);
            let v = ((s.eval(z) - shift) * scale).norm();
            let d = (s.eval_derivative(z) * scale).norm();
            let slack = |b: f64| REL_TOL * b + 1e-12;
            if v > g_hi + tv + slack(g_hi) {
                return Some(Witness::Point { z, value: v, bound: g_hi });
            }
            if v < g_lo - tv - slack(g_lo) {
                return Some(Witness::Point { z, value: v, bound: g_lo });
            }
            if d > d_hi + td + slack(d_hi) {
                return Some(Witness::Point { z, value: d, bound: d_hi });
            }
            if d < d_lo - td - slack(d_lo) {
                return Some(Witness::Point { z, value: d, bound: d_lo });
            }
        }
    }
    None
}

/// Image samples on the grid, indexed `[radius][angle]`.
fn sample<F: PlanarMap + ?Sized>(f: &F, radii: &[f64], angles: &[f64]) -> Vec<Vec<(Complex, Complex)>> {
    radii
        .iter()
        .map(|&r| {
            angles
                .iter()
                .map(|&t| {
                    let z = Complex::from_polar(r, t);
                    (z, f.value(z))
                })
                .collect()
        })
        .collect()
}

/// Pairs of grid points whose images fall within `tol` of each other.
fn find_collision(points: &[(Complex, Complex)], tol: f64) -> Option<Witness> {
    let bucket = 4.0 * tol;
    let key = |w: Complex| ((w.re / bucket).floor() as i64, (w.im / bucket).floor() as i64);
    let mut table: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &(_, w)) in points.iter().enumerate() {
        if !w.re.is_finite() || !w.im.is_finite() {
            continue;
        }
        let (kx, ky) = key(w);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = table.get(&(kx + dx, ky + dy)) {
                    for &j in bucket {
                        let (zj, wj) = points[j];
                        let zi = points[i].0;
                        if (w - wj).norm() < tol && (zi - zj).norm() > 10.0 * tol {
                            return Some(Witness::Pair { z1: zj, z2: zi });
                        }
                    }
                }
            }
        }
        table.entry((kx, ky)).or_default().push(i);
    }
    None
}

fn cross(a: Complex, b: Complex) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Parameters `(s, t)` where segments `p0p1` and `q0q1` cross properly.
fn segment_crossing(p0: Complex, p1: Complex, q0: Complex, q1: Complex) -> Option<(f64, f64)> {
    let d = p1 - p0;
    let e = q1 - q0;
    let denom = cross(d, e);
    if denom == 0.0 {
        return None;
    }
    let s = cross(q0 - p0, e) / denom;
    let t = cross(q0 - p0, d) / denom;
    if s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0 {
        Some((s, t))
    } else {
        None
    }
}

/// First self-crossing of the closed polyline through the images of one
/// circle; the witness interpolates the two crossing parameters.
fn circle_self_crossing(circle: &[(Complex, Complex)]) -> Option<Witness> {
    let m = circle.len();
    let r = circle[0].0.norm();
    let step = 2.0 * PI / m as f64;
    for i in 0..m {
        let (p0, p1) = (circle[i].1, circle[(i + 1) % m].1);
        let (lo_x, hi_x) = (p0.re.min(p1.re), p0.re.max(p1.re));
        let (lo_y, hi_y) = (p0.im.min(p1.im), p0.im.max(p1.im));
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            let (q0, q1) = (circle[j].1, circle[(j + 1) % m].1);
            if q0.re.max(q1.re) < lo_x || q0.re.min(q1.re) > hi_x || q0.im.max(q1.im) < lo_y || q0.im.min(q1.im) > hi_y {
                continue;
            }
            if let Some((s, t)) = segment_crossing(p0, p1, q0, q1) {
                return Some(Witness::Pair {
                    z1: Complex::from_polar(r, (i as f64 + s) * step),
                    z2: Complex::from_polar(r, (j as f64 + t) * step),
                });
            }
        }
    }
    None
}

/// Winding number of the closed polyline about `w0`.
fn winding(circle: &[(Complex, Complex)], w0: Complex) -> Option<i64> {
    let m = circle.len();
    let mut total = 0.0;
    for i in 0..m {
        let a = circle[i].1 - w0;
        let b = circle[(i + 1) % m].1 - w0;
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return None;
        }
        total += (b / a).arg();
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 1e-6 {
        return None;
    }
    Some(rounded as i64)
}

/// Heuristic univalence test on `|z| ≤ r_max`.
///
/// For analytic inputs, violations of the coefficient, growth and
/// distortion bounds of `𝓢` are checked first and count as failures.
pub fn univalence_check<F: PlanarMap + ?Sized>(f: &F, grid: &GridSpec) -> Outcome {
    if let Some(s) = f.analytic() {
        if let Some(w) = certificate(s, AnalyticClass::Univalent, grid) {
            return Outcome::fail(w);
        }
    }
    let radii = grid.radius_values();
    let angles = grid.angle_values();
    let samples = sample(f, &radii, &angles);
    let origin = (Complex::new(0.0, 0.0), f.value(Complex::new(0.0, 0.0)));
    let mut flat: Vec<(Complex, Complex)> = samples.iter().flatten().copied().collect();
    flat.push(origin);
    if let Some(w) = find_collision(&flat, grid.tol) {
        return Outcome::fail(w);
    }
    for circle in &samples {
        if let Some(w) = circle_self_crossing(circle) {
            return Outcome::fail(w);
        }
    }
    let outer = samples.last().expect("at least 8 radii");
    let mut inconclusive = None;
    let interior = samples[..samples.len() - 1].iter().flatten().chain(std::iter::once(&origin));
    for &(z, w) in interior {
        match winding(outer, w) {
            Some(1) => {}
            Some(k) if k >= 2 => return Outcome::fail(Witness::Winding { z, winding: k }),
            Some(k) => {
                inconclusive.get_or_insert(Witness::Winding { z, winding: k });
            }
            None => {
                inconclusive.get_or_insert(Witness::Winding { z, winding: 0 });
            }
        }
    }
    match inconclusive {
        Some(w) => Outcome {
            verdict: Verdict::Inconclusive,
            witness: Some(w),
        },
        None => Outcome::pass(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    /// Smallest ladder radius at which the image curve is not convex.
    pub weakest_radius: Option<f64>,
    pub witness: Option<Witness>,
    /// The necessary condition `Re(f(z)/z) > 1/2`, evaluated on the ladder.
    pub half_plane_condition: Verdict,
    pub min_real_ratio: f64,
}

/// Convexity of the images of the circles `|z| = r·k/8`, `k = 1..=8`.
///
/// Each polyline must turn one way only (sine of every turn above `-tol`)
/// with total turning `2π`. For analytic inputs the coefficient, growth and
/// distortion bounds of `𝓒` also have to hold.
pub fn convexity_check<F: PlanarMap + ?Sized>(f: &F, r: f64, angles: usize) -> Result<ConvexityReport> {
    convexity_check_with_tol(f, r, angles, DEFAULT_TOL)
}

pub fn convexity_check_with_tol<F: PlanarMap + ?Sized>(
    f: &F,
    r: f64,
    angles: usize,
    tol: f64,
) -> Result<ConvexityReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("convexity radius must lie in (0, 1), got {r}")));
    }
    if angles < 8 {
        return Err(Error::InvalidParameter(format!("need at least 8 angles, got {angles}")));
    }
    let ladder: Vec<f64> = (1..=CONVEX_LADDER).map(|k| r * k as f64 / CONVEX_LADDER as f64).collect();
    let thetas: Vec<f64> = (0..angles).map(|j| 2.0 * PI * j as f64 / angles as f64).collect();
    let samples = sample(f, &ladder, &thetas);
    let origin_value = f.value(Complex::new(0.0, 0.0));

    let mut min_real_ratio = f64::INFINITY;
    let mut ratio_witness = None;
    let mut ratio_tail_hit = false;
    let analytic = f.analytic();
    for (k, circle) in samples.iter().enumerate() {
        let (_, tail) = AnalyticClass::Convex.tails(analytic.map_or(0, |s| s.order()), ladder[k]);
        for &(z, w) in circle {
            let a1 = analytic.and_then(|s| s.get(1)).unwrap_or(Complex::new(1.0, 0.0));
            let ratio = ((w - origin_value) / (z * a1)).re;
            if ratio < min_real_ratio {
                min_real_ratio = ratio;
            }
            let tail_r = tail / ladder[k];
            if ratio <= 0.5 - tail_r && ratio_witness.is_none() {
                ratio_witness = Some(Witness::Point { z, value: ratio, bound: 0.5 });
            } else if ratio <= 0.5 {
                ratio_tail_hit = true;
            }
        }
    }
    let half_plane_condition = if ratio_witness.is_some() {
        Verdict::Fail
    } else if ratio_tail_hit {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };

    let mut report = ConvexityReport {
        verdict: Verdict::Pass,
        weakest_radius: None,
        witness: None,
        half_plane_condition,
        min_real_ratio,
    };
    if let Some(s) = analytic {
        let grid = GridSpec::new(CONVEX_LADDER, ladder[0], r, angles, tol)?;
        if let Some(w) = certificate(s, AnalyticClass::Convex, &grid) {
            report.verdict = Verdict::Fail;
            report.witness = Some(w);
            return Ok(report);
        }
    }
    for (k, circle) in samples.iter().enumerate() {
        let m = circle.len();
        let mut turning = 0.0;
        let mut worst: Option<(f64, Complex)> = None;
        for i in 0..m {
            let e1 = circle[(i + 1) % m].1 - circle[i].1;
            let e2 = circle[(i + 2) % m].1 - circle[(i + 1) % m].1;
            let norm = e1.norm() * e2.norm();
            if norm == 0.0 {
                worst = Some((-1.0, circle[(i + 1) % m].0));
                break;
            }
            let sine = cross(e1, e2) / norm;
            turning += (e2 / e1).arg();
            if worst.map_or(true, |(s, _)| sine < s) {
                worst = Some((sine, circle[(i + 1) % m].0));
            }
        }
        let (sine, z) = worst.expect("non-empty circle");
        let total_ok = ((turning.abs() / (2.0 * PI)) - 1.0).abs() < 1e-6;
        if sine < -tol || !total_ok {
            report.verdict = Verdict::Fail;
            report.weakest_radius = Some(ladder[k]);
            report.witness = Some(Witness::Point { z, value: sine, bound: 0.0 });
            return Ok(report);
        }
        if sine <= tol && report.verdict == Verdict::Pass {
            report.verdict = Verdict::Inconclusive;
            report.weakest_radius = Some(ladder[k]);
            report.witness = Some(Witness::Point { z, value: sine, bound: 0.0 });
        }
    }
    Ok(report)
}

/// One row of a stability table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EpsilonVerdict {
    pub eps: Complex,
    pub univalent: Verdict,
    pub convex: Verdict,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonVerdictTable {
    pub rows: Vec<EpsilonVerdict>,
}

impl EpsilonVerdictTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps_re,eps_im,univalent,convex,witness\n");
        for row in &self.rows {
            let witness = row.witness.map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.eps.re, row.eps.im, row.univalent, row.convex, witness
            ));
        }
        out
    }
}

/// `r·e^{iθ}` with rounding noise below 1e-15 flushed to zero.
fn polar_clean(r: f64, theta: f64) -> Complex {
    let flush = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    let (s, c) = theta.sin_cos();
    Complex::new(flush(r * c), flush(r * s))
}

/// `n` equispaced points on the unit circle starting at `1`.
pub fn circle_samples(n: usize) -> Vec<Complex> {
    (0..n).map(|j| polar_clean(1.0, 2.0 * PI * j as f64 / n as f64)).collect()
}

/// Polar grid of the closed disk: `n` radii `k/n` times `4k` angles each,
/// plus the origin.
pub fn disk_samples(n: usize) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0)];
    for k in 1..=n {
        let r = k as f64 / n as f64;
        let m = 4 * k;
        out.extend((0..m).map(|j| polar_clean(r, 2.0 * PI * j as f64 / m as f64)));
    }
    out
}

/// Univalence and convexity of `h + εg` for each sample `ε`.
pub fn stability_scan(f: &HarmonicMap, eps_samples: &[Complex], grid: &GridSpec) -> Result<EpsilonVerdictTable> {
    let mut rows = Vec::with_capacity(eps_samples.len());
    for &eps in eps_samples {
        let slice = f.analytic_slice(eps)?;
        let uni = univalence_check(&slice, grid);
        let convex = convexity_check_with_tol(&slice, grid.r_max, grid.angles, grid.tol)?;
        rows.push(EpsilonVerdict {
            eps,
            univalent: uni.verdict,
            convex: convex.verdict,
            witness: uni.witness.or(convex.witness),
        });
    }
    Ok(EpsilonVerdictTable { rows })
}

/// `|a₇(ε)| = |7 + (5/21)ε|` for the slice `M^ε`.
pub fn m_slice_a7(eps: Complex) -> f64 {
    (Complex::new(7.0, 0.0) + eps * (5.0 / 21.0)).norm()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivativeTest {
    pub lhs: f64,
    pub lhs_series: f64,
    pub rhs: f64,
    pub violated: bool,
}

const M_SERIES_ORDER: usize = 400;

/// `|(M^ε)'(r)| = |1 − r(1−r−r²)ε/3|·(1+r)/(1−r)³` against the distortion
/// bound `(1+r)/(1−r)³` of `𝓢`, with the left side also evaluated from the
/// series of `M`.
pub fn m_slice_derivative_test(eps: Complex, r: f64) -> Result<DerivativeTest> {
    let m = catalog::mapping_m(M_SERIES_ORDER)?;
    m_slice_derivative_test_with(&m, eps, r)
}

/// [`m_slice_derivative_test`] with a prebuilt `M`.
pub fn m_slice_derivative_test_with(m: &HarmonicMap, eps: Complex, r: f64) -> Result<DerivativeTest> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius must lie in (0, 1), got {r}")));
    }
    let rhs = (1.0 + r) / (1.0 - r).powi(3);
    let factor = Complex::new(1.0, 0.0) - eps * (r * (1.0 - r - r * r) / 3.0);
    let lhs = factor.norm() * rhs;
    let slice = m.analytic_slice(eps)?;
    let lhs_series = slice.eval_derivative(Complex::new(r, 0.0)).norm();
    Ok(DerivativeTest {
        lhs,
        lhs_series,
        rhs,
        violated: lhs > rhs * (1.0 + 1e-12),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioTest {
    /// Argument of the sample point `z₀ = r e^{iφ}`.
    pub phi: f64,
    pub closed_form: f64,
    pub direct: f64,
}

/// Among the angles `φ_k = (π − arg α − arg ε + 2πk)/(n−1)`, where
/// `αε z₀^{n−1}` is negative real, the one with the smallest `cos φ`.
fn v_alpha_angle(n: usize, alpha: Complex, eps: Complex) -> f64 {
    let base = PI - alpha.arg() - eps.arg();
    let m = (n - 1) as f64;
    let mut best = base / m;
    for k in 1..n - 1 {
        let phi = (base + 2.0 * PI * k as f64) / m;
        if phi.cos() < best.cos() - 1e-15 {
            best = phi;
        }
    }
    best
}

/// `Re(V_α^ε(z₀)/z₀) = (1 − |αε| r^{n−1})(1 − r cos φ)/(1 + r² − 2r cos φ)`,
/// also evaluated directly from `V_α^ε(z) = (z + εα zⁿ)/(1 − z)`.
pub fn v_alpha_ratio(n: usize, alpha: Complex, eps: Complex, r: f64) -> Result<RatioTest> {
    if eps.norm() == 0.0 {
        return Err(Error::InvalidParameter("limit formula requires ε ≠ 0".into()));
    }
    catalog::v_alpha(n, alpha, n)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius must lie in (0, 1), got {r}")));
    }
    let phi = v_alpha_angle(n, alpha, eps);
    let cos = phi.cos();
    let closed_form = (1.0 - (alpha * eps).norm() * r.powi(n as i32 - 1)) * (1.0 - r * cos)
        / (1.0 + r * r - 2.0 * r * cos);
    let z = Complex::from_polar(r, phi);
    let value = (z + eps * alpha * z.powu(n as u32)) / (Complex::new(1.0, 0.0) - z);
    Ok(RatioTest {
        phi,
        closed_form,
        direct: (value / z).re,
    })
}

/// `Re(V_α^ε(z₀)/z₀)` from the truncated series of `V_α`.
pub fn v_alpha_ratio_series(n: usize, alpha: Complex, eps: Complex, r: f64, order: usize) -> Result<f64> {
    if eps.norm() == 0.0 {
        return Err(Error::InvalidParameter("limit formula requires ε ≠ 0".into()));
    }
    let slice = catalog::v_alpha(n, alpha, order)?.analytic_slice(eps)?;
    let z = Complex::from_polar(r, v_alpha_angle(n, alpha, eps));
    Ok((slice.eval(z) / z).re)
}
