//! Range criteria for the Cauchy transform as runnable experiments.
//!
//! A function `γ` outside `Ḡ` is in the range of `K` exactly when `ρ(γ∘φ_n)`
//! stays bounded along every smooth exhaustion `G_n ↓ Ḡ`. Here the exhaustion
//! is the level-curve family of [`ExhaustionSequence`] and "sup over all n" is
//! truncated at the levels it holds; reports record the checked radii.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use nalgebra::{DMatrix, DVector};

use crate::domains::{ConformalMap, ExhaustionSequence};
use crate::error::{Error, Result};
use crate::function::Holomorphic;
use crate::quadrature::{bergman_norm_on_domain, DiskQuadrature};
use crate::series::{
    angle, b21_exterior_norm, rho_seminorm, BoundaryFunction, CoefficientSeries, LaurentTail,
};
use crate::sum::{ComplexSum, KahanSum};
use crate::transforms::{
    b21_norm_contour, b21_norm_exterior_quadrature, boundary_cauchy_integral, cauchy_disk_series,
    cauchy_disk_series_inverse, PolynomialCauchy,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative slack on `ρ_n ≤ ‖g‖_{B₂(G)}`.
    pub theorem1_rel: f64,
    /// Absolute slack on `ρ_n ≤ ‖g‖_{B₂(G)}`.
    pub theorem1_abs: f64,
    /// Relative slack on `ρ_n ≤ ‖ĝ‖_{B₂(G)}` after inversion.
    pub theorem2_rel: f64,
    /// Largest accepted RMS collocation residual.
    pub residual: f64,
    /// Largest accepted held-out mismatch `|Kĝ − γ|`.
    pub holdout: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            theorem1_rel: 1e-6,
            theorem1_abs: 1e-8,
            theorem2_rel: 1e-3,
            residual: 1e-6,
            holdout: 1e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Bounded,
    Inconclusive,
}

/// One exhaustion level: `ρ_n = ρ(γ∘φ_n)` and the same quantity computed as
/// the exterior norm of the boundary Cauchy integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: usize,
    pub radius: f64,
    pub rho: f64,
    pub bridge_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub domain: String,
    pub gamma: String,
    pub levels: Vec<LevelRecord>,
    pub sup_rho: f64,
    /// `‖g‖_{B₂(G)}` (bound check) or `‖γ‖_{B₂¹(ℂ∖Ḡ)}` (membership check).
    pub reference_norm: f64,
    /// The norm every `ρ_n` is compared against.
    pub bound: f64,
    pub inverse_norm: Option<f64>,
    pub inversion_residual: Option<f64>,
    pub holdout_error: Option<f64>,
    /// Radii `(r_1, r_N)` the supremum was taken over.
    pub checked_radii: (f64, f64),
    pub verdict: Verdict,
    pub tolerances: Tolerances,
}

impl CriterionReport {
    pub fn with_labels(mut self, domain: &str, gamma: &str) -> Self {
        self.domain = domain.to_owned();
        self.gamma = gamma.to_owned();
        self
    }

    pub fn csv_header() -> &'static str {
        "n,r_n,rho_n,reference_norm,ratio"
    }

    /// One row per level: `n, r_n, rho_n, reference_norm, ratio`, where the
    /// ratio is `ρ_n` over the comparison bound.
    pub fn csv_rows(&self) -> Vec<String> {
        self.levels
            .iter()
            .map(|l| {
                format!(
                    "{},{},{},{},{}",
                    l.n,
                    l.radius,
                    l.rho,
                    self.reference_norm,
                    ratio(l.rho, self.bound)
                )
            })
            .collect()
    }
}

pub(crate) fn ratio(value: f64, bound: f64) -> f64 {
    if bound == 0.0 {
        if value == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        value / bound
    }
}

fn check_clearance(points: &[Complex64], poles: &[Complex64], guard: f64) -> Result<()> {
    for p in poles {
        for z in points {
            let distance = (z - p).norm();
            if distance < guard {
                return Err(Error::GuardViolation {
                    point: *z,
                    distance,
                    guard,
                });
            }
        }
    }
    Ok(())
}

/// `ρ(γ∘φ_n)` for every level, from `m` uniform samples of each level curve.
pub fn rho_sequence<H: Holomorphic>(
    gamma: &H,
    ex: &ExhaustionSequence,
    m: usize,
    guard: f64,
) -> Result<Vec<LevelRecord>> {
    let poles = gamma.poles();
    let mut out = Vec::with_capacity(ex.len());
    for n in 1..=ex.len() {
        let phi_n = ex.level_map(n)?;
        let points = phi_n.boundary_points(1.0, m)?;
        check_clearance(&points, &poles, guard)?;
        let mut samples = Vec::with_capacity(m);
        for z in &points {
            let v = gamma.eval(*z);
            if !v.is_finite() {
                return Err(Error::Pole { point: *z });
            }
            samples.push(v);
        }
        let f = BoundaryFunction::from_samples(samples)?.to_modes();
        let rho = rho_seminorm(&f);
        let bridge_norm = b21_exterior_norm(&boundary_cauchy_integral(&f))?;
        out.push(LevelRecord {
            n,
            radius: ex.radius(n)?,
            rho,
            bridge_norm,
        });
    }
    Ok(out)
}

fn sup(levels: &[LevelRecord]) -> f64 {
    levels.iter().map(|l| l.rho).fold(0.0, f64::max)
}

fn checked_radii(ex: &ExhaustionSequence) -> (f64, f64) {
    let r = ex.radii();
    (r[0], r[r.len() - 1])
}

/// `γ = K g` on `G = φ(𝔻)`: the disk series when `φ` is the identity, the
/// residue route otherwise.
fn cauchy_image(g: &CoefficientSeries, phi: &ConformalMap) -> Result<Box<dyn Holomorphic>> {
    if phi.is_identity() {
        Ok(Box::new(cauchy_disk_series(g)))
    } else {
        Ok(Box::new(PolynomialCauchy::new(g, phi)?))
    }
}

/// Checks the necessary bound `ρ(Kg∘φ_n) ≤ ‖g‖_{B₂(G)}` on every level.
pub fn theorem1_bound_check(
    g: &CoefficientSeries,
    ex: &ExhaustionSequence,
    rule: &DiskQuadrature,
    m: usize,
    tol: &Tolerances,
    guard: f64,
) -> Result<CriterionReport> {
    let phi = ex.base();
    let gamma = cauchy_image(g, phi)?;
    let levels = rho_sequence(&gamma.as_ref(), ex, m, guard)?;
    let reference_norm = bergman_norm_on_domain(|z| g.evaluate(z), phi, rule)?;
    let limit = reference_norm * (1.0 + tol.theorem1_rel) + tol.theorem1_abs;
    let bounded = levels.iter().all(|l| l.rho.is_finite() && l.rho <= limit);
    Ok(CriterionReport {
        domain: String::new(),
        gamma: String::new(),
        sup_rho: sup(&levels),
        levels,
        reference_norm,
        bound: reference_norm,
        inverse_norm: None,
        inversion_residual: None,
        holdout_error: None,
        checked_radii: checked_radii(ex),
        verdict: if bounded {
            Verdict::Bounded
        } else {
            Verdict::Inconclusive
        },
        tolerances: *tol,
    })
}

/// Membership of a finite principal part `γ` (pole inside `G`) in the range
/// of `K`: the `ρ`-sequence must stay below `‖ĝ‖_{B₂(G)}` for the
/// least-squares preimage `ĝ`, whose image must reproduce `γ`.
///
/// `reference_norm` is `‖γ‖_{B₂¹(ℂ∖Ḡ)}`: by exterior quadrature when the
/// exterior map of `G` is supplied, in closed form on the disk, and from the
/// boundary integral otherwise.
#[allow(clippy::too_many_arguments)]
pub fn theorem2_membership(
    gamma: &LaurentTail,
    ex: &ExhaustionSequence,
    exterior: Option<&ConformalMap>,
    rule: &DiskQuadrature,
    m: usize,
    inversion: &InversionOptions,
    tol: &Tolerances,
    guard: f64,
) -> Result<CriterionReport> {
    let phi = ex.base();
    let polygon = phi.polygon(1.0, 1024)?;
    if !polygon.contains(gamma.center) || polygon.distance(gamma.center) < guard {
        return Err(Error::NotInterior {
            point: gamma.center,
        });
    }
    let levels = rho_sequence(gamma, ex, m, guard)?;
    let reference_norm = match exterior {
        Some(psi) => b21_norm_exterior_quadrature(gamma, psi, rule)?,
        None if phi.is_identity() && gamma.center == ZERO => b21_exterior_norm(gamma)?,
        None => b21_norm_contour(gamma, phi, m.max(256))?,
    };
    let inv = invert_cauchy(gamma, phi, inversion)?;
    let inverse_norm = bergman_norm_on_domain(|z| inv.series.evaluate(z), phi, rule)?;
    let limit = inverse_norm * (1.0 + tol.theorem2_rel);
    let bounded = inv.status == InversionStatus::Solved
        && inv.residual <= tol.residual
        && inv.holdout_error <= tol.holdout
        && levels.iter().all(|l| l.rho.is_finite() && l.rho <= limit);
    Ok(CriterionReport {
        domain: String::new(),
        gamma: String::new(),
        sup_rho: sup(&levels),
        levels,
        reference_norm,
        bound: inverse_norm,
        inverse_norm: Some(inverse_norm),
        inversion_residual: Some(inv.residual),
        holdout_error: Some(inv.holdout_error),
        checked_radii: checked_radii(ex),
        verdict: if bounded {
            Verdict::Bounded
        } else {
            Verdict::Inconclusive
        },
        tolerances: *tol,
    })
}

/// `𝔽(h) = (1/2πi) ∮_{∂G_n} γ h dξ` by the `m`-point trapezoid rule on the
/// parametrization `ξ = φ_n(e^{iθ})`.
pub fn riesz_functional<G: Holomorphic, H: Holomorphic>(
    gamma: &G,
    h: &H,
    ex: &ExhaustionSequence,
    n: usize,
    m: usize,
    guard: f64,
) -> Result<Complex64> {
    if m < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let phi_n = ex.level_map(n)?;
    let ts: Vec<_> = (0..m)
        .map(|j| Complex64::from_polar(1.0, angle(j, m)))
        .collect();
    let points: Vec<_> = ts.iter().map(|t| phi_n.eval(*t)).collect();
    check_clearance(&points, &gamma.poles(), guard)?;
    check_clearance(&points, &h.poles(), guard)?;
    let mut acc = ComplexSum::new();
    for (t, z) in ts.iter().zip(&points) {
        acc.add(gamma.eval(*z) * h.eval(*z) * phi_n.derivative(*t) * t);
    }
    Ok(acc.total() / m as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InversionOptions {
    pub degree: usize,
    /// Map-plane radius of the collocation ring (`4(d+1)` points).
    pub ring_radius: f64,
    pub regularization: f64,
    /// Map-plane radius of the held-out ring; its points sit at half-step
    /// angles, off the collocation nodes.
    pub holdout_radius: f64,
    pub holdout_count: usize,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self {
            degree: 12,
            ring_radius: 2.0,
            regularization: 1e-12,
            holdout_radius: 2.0,
            holdout_count: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionStatus {
    Solved,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inversion {
    pub series: CoefficientSeries,
    /// Unmatched tail norm (disk) or RMS collocation mismatch (general).
    pub residual: f64,
    /// Largest `|Kĝ(ζ) − γ(ζ)|` over the held-out ring.
    pub holdout_error: f64,
    /// Condition number of the (column-scaled) normal matrix.
    pub condition: f64,
    pub status: InversionStatus,
}

fn ring(radius: f64, count: usize, offset: f64) -> Vec<Complex64> {
    (0..count)
        .map(|j| Complex64::from_polar(radius, angle(j, count) + offset))
        .collect()
}

/// Finds `ĝ` of degree `d` with `K ĝ ≈ γ` outside `G = φ(𝔻)`.
///
/// On the disk this inverts the diagonal series formula; elsewhere it solves a
/// regularized least-squares collocation problem on a ring.
pub fn invert_cauchy<H: Holomorphic>(
    gamma: &H,
    phi: &ConformalMap,
    opts: &InversionOptions,
) -> Result<Inversion> {
    let d = opts.degree;
    let outside = phi.polygon(1.0, 1024)?;
    for radius in [opts.ring_radius, opts.holdout_radius] {
        if let Some(z) = ring(radius, 64, 0.0)
            .into_iter()
            .find(|z| outside.contains(*z))
        {
            return Err(Error::NotExterior { point: z });
        }
    }
    let holdout = ring(
        opts.holdout_radius,
        opts.holdout_count,
        std::f64::consts::PI / opts.holdout_count.max(1) as f64,
    );
    if phi.is_identity() {
        return invert_on_disk(gamma, opts, &holdout);
    }

    let points = ring(opts.ring_radius, 4 * (d + 1), 0.0);
    let columns: Vec<PolynomialCauchy> = (0..=d)
        .map(|k| PolynomialCauchy::new(&CoefficientSeries::monomial(k), phi))
        .collect::<Result<_>>()?;
    let a = DMatrix::from_fn(points.len(), d + 1, |j, k| columns[k].eval(points[j]));
    let b = DVector::from_iterator(points.len(), points.iter().map(|z| gamma.eval(*z)));

    // Kĝ = Σ conj(ĉ_k) K(z^k): solve for x = conj(ĉ).
    let scale: Vec<f64> = (0..=d)
        .map(|k| {
            let n = a.column(k).norm();
            if n > 0.0 {
                1.0 / n
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(a.nrows(), a.ncols(), |j, k| a[(j, k)] * scale[k]);
    let sv = scaled.clone().singular_values();
    let (smax, smin) = sv.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), s| {
        (hi.max(*s), lo.min(*s))
    });
    let condition = if smin > 0.0 {
        (smax / smin).powi(2)
    } else {
        f64::INFINITY
    };

    let mut normal = scaled.adjoint() * &scaled;
    for k in 0..=d {
        normal[(k, k)] += Complex64::new(opts.regularization, 0.0);
    }
    let rhs = scaled.adjoint() * &b;
    let solved = normal.cholesky().map(|ch| ch.solve(&rhs));
    let (x, status) = match solved {
        Some(y) if condition * opts.regularization < 1.0 => (
            DVector::from_fn(d + 1, |k, _| y[k] * scale[k]),
            InversionStatus::Solved,
        ),
        Some(y) => (
            DVector::from_fn(d + 1, |k, _| y[k] * scale[k]),
            InversionStatus::Inconclusive,
        ),
        None => (DVector::zeros(d + 1), InversionStatus::Inconclusive),
    };

    let fitted = &a * &x;
    let mut sq = KahanSum::new();
    for j in 0..points.len() {
        sq.add((fitted[j] - b[j]).norm_sqr());
    }
    let residual = (sq.total() / points.len() as f64).sqrt();

    let series = CoefficientSeries::new(x.iter().map(|v| v.conj()).collect());
    let image = PolynomialCauchy::new(&series, phi)?;
    let holdout_error = max_mismatch(&image, gamma, &holdout);
    Ok(Inversion {
        series,
        residual,
        holdout_error,
        condition,
        status,
    })
}

fn max_mismatch<A: Holomorphic, B: Holomorphic>(a: &A, b: &B, points: &[Complex64]) -> f64 {
    points
        .iter()
        .map(|z| (a.eval(*z) - b.eval(*z)).norm())
        .fold(0.0, f64::max)
}

fn invert_on_disk<H: Holomorphic>(
    gamma: &H,
    opts: &InversionOptions,
    holdout: &[Complex64],
) -> Result<Inversion> {
    let d = opts.degree;
    let tail = match gamma.origin_tail() {
        Some(coeffs) => coeffs,
        None => {
            // F_k = R^k · (k-th negative mode of γ(R e^{iθ}))
            let r = opts.ring_radius;
            let m = (4 * (d + 2)).max(256);
            let f = BoundaryFunction::sample(m, |t| gamma.eval(Complex64::from_polar(r, t)))?;
            let scale = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
            // modes below the roundoff floor are noise that R^k would amplify
            let floor = 64.0 * f64::EPSILON * scale;
            let modes = f.negative_modes();
            let kept = modes
                .iter()
                .rposition(|c| c.norm() > floor)
                .map_or(0, |i| i + 1);
            modes[..kept]
                .iter()
                .enumerate()
                .map(|(i, c)| c * r.powi(i as i32 + 1))
                .collect()
        }
    };
    let head: Vec<_> = tail.iter().take(d + 1).copied().collect();
    let series = cauchy_disk_series_inverse(&LaurentTail::at_origin(head))?;
    let mut unmatched = vec![ZERO; tail.len()];
    for (i, f) in tail.iter().enumerate().skip(d + 1) {
        unmatched[i] = *f;
    }
    let residual = b21_exterior_norm(&LaurentTail::at_origin(unmatched))?;
    let image = cauchy_disk_series(&series);
    let holdout_error = max_mismatch(&image, gamma, holdout);
    Ok(Inversion {
        series,
        residual,
        holdout_error,
        condition: 1.0,
        status: InversionStatus::Solved,
    })
}
