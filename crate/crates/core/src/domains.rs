//! Explicit conformal maps, level-curve exhaustions and boundary geometry.
//!
//! Maps are polynomials (interior) or `ζ + b₀ + Σ b_k ζ^{-k}` (exterior) and are
//! admitted only when the coefficient univalence criterion holds strictly.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::angle;
use crate::sum::KahanSum;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    /// `φ(z) = Σ_{k≥0} a_k z^k` from the unit disk onto a bounded domain.
    Interior,
    /// `ψ(ζ) = ζ + b₀ + Σ_{k≥1} b_k ζ^{-k}` from the disk exterior onto a domain exterior.
    Exterior,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawMap {
    kind: MapKind,
    coeffs: Vec<Complex64>,
}

/// A certified univalent map with its cached univalence margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct ConformalMap {
    kind: MapKind,
    coeffs: Vec<Complex64>,
    margin: f64,
}

impl TryFrom<RawMap> for ConformalMap {
    type Error = Error;
    fn try_from(raw: RawMap) -> Result<Self> {
        make_map(raw.kind, raw.coeffs)
    }
}

impl From<ConformalMap> for RawMap {
    fn from(map: ConformalMap) -> Self {
        RawMap {
            kind: map.kind,
            coeffs: map.coeffs,
        }
    }
}

/// Admits a map if its univalence margin is strictly positive.
pub fn make_map(kind: MapKind, coeffs: Vec<Complex64>) -> Result<ConformalMap> {
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("empty coefficient list".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let margin = margin_at(kind, &coeffs, 1.0);
    if !(margin > 0.0) {
        return Err(Error::NotUnivalent { margin });
    }
    Ok(ConformalMap {
        kind,
        coeffs,
        margin,
    })
}

fn margin_at(kind: MapKind, coeffs: &[Complex64], r: f64) -> f64 {
    let mut acc = KahanSum::new();
    match kind {
        MapKind::Interior => {
            let a1 = coeffs.get(1).copied().unwrap_or(ZERO).norm();
            for (k, a) in coeffs.iter().enumerate().skip(2) {
                acc.add(k as f64 * a.norm() * r.powi(k as i32 - 1));
            }
            a1 - acc.total()
        }
        MapKind::Exterior => {
            // ψ(Rζ)/R = ζ + b₀/R + Σ b_k R^{-k-1} ζ^{-k}
            for (k, b) in coeffs.iter().enumerate().skip(1) {
                acc.add(k as f64 * b.norm() * r.powi(-(k as i32) - 1));
            }
            1.0 - acc.total()
        }
    }
}

impl ConformalMap {
    pub fn identity() -> Self {
        make_map(MapKind::Interior, vec![ZERO, ONE]).expect("identity is univalent")
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `|a₁| − Σ_{k≥2} k|a_k|` (interior) or `1 − Σ_{k≥1} k|b_k|` (exterior).
    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// The univalence margin of the map restricted to radius `r`
    /// (`φ(r·)` on the disk, or `ψ(r·)/r` on the exterior).
    pub fn margin_at(&self, r: f64) -> f64 {
        margin_at(self.kind, &self.coeffs, r)
    }

    pub fn is_identity(&self) -> bool {
        self.kind == MapKind::Interior
            && self.coeffs.first().is_none_or(|c| *c == ZERO)
            && self.coeffs.get(1) == Some(&ONE)
            && self.coeffs.iter().skip(2).all(|c| *c == ZERO)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self.kind {
            MapKind::Interior => self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c),
            MapKind::Exterior => {
                let w = z.inv();
                let tail = self
                    .coeffs
                    .iter()
                    .skip(1)
                    .rev()
                    .fold(ZERO, |acc, c| acc * w + c);
                z + self.coeffs[0] + tail * w
            }
        }
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        match self.kind {
            MapKind::Interior => {
                let mut acc = ZERO;
                for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
                    acc = acc * z + c * k as f64;
                }
                acc
            }
            MapKind::Exterior => {
                // 1 − Σ k b_k ζ^{-k-1}
                let w = z.inv();
                let mut acc = ZERO;
                for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
                    acc = acc * w + c * k as f64;
                }
                ONE - acc * w * w
            }
        }
    }

    /// The interior map `z ↦ φ(r z)`.
    pub fn scaled(&self, r: f64) -> Result<ConformalMap> {
        if self.kind != MapKind::Interior {
            return Err(Error::InvalidArgument(
                "only interior maps can be rescaled".into(),
            ));
        }
        let margin = self.margin_at(r);
        if !(r > 0.0 && margin > 0.0) {
            return Err(Error::InadmissibleRadius { radius: r, margin });
        }
        let coeffs: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * r.powi(k as i32))
            .collect();
        make_map(MapKind::Interior, coeffs)
    }

    /// Solves `map(ζ) = w` by Newton iteration from the leading-order guess.
    pub fn invert(&self, w: Complex64) -> Result<Complex64> {
        let mut z = match self.kind {
            MapKind::Interior => (w - self.coeffs[0]) / self.coeffs[1],
            MapKind::Exterior => w - self.coeffs[0],
        };
        for _ in 0..100 {
            let step = (self.eval(z) - w) / self.derivative(z);
            z -= step;
            if step.norm() <= 1e-15 * z.norm().max(1.0) {
                return Ok(z);
            }
        }
        Err(Error::NoConvergence { point: w })
    }

    /// `M` images of the circle of radius `r` at uniform angles.
    pub fn boundary_points(&self, r: f64, m: usize) -> Result<Vec<Complex64>> {
        if m == 0 {
            return Err(Error::InvalidArgument("zero sample count".into()));
        }
        match self.kind {
            MapKind::Interior => {
                let margin = self.margin_at(r);
                if !(r > 0.0 && margin > 0.0) {
                    return Err(Error::InadmissibleRadius { radius: r, margin });
                }
            }
            MapKind::Exterior => {
                if !(r >= 1.0) {
                    return Err(Error::InadmissibleRadius {
                        radius: r,
                        margin: self.margin_at(r),
                    });
                }
            }
        }
        Ok((0..m)
            .map(|j| self.eval(Complex64::from_polar(r, angle(j, m))))
            .collect())
    }

    pub fn polygon(&self, r: f64, m: usize) -> Result<BoundaryPolygon> {
        Ok(BoundaryPolygon::new(self.boundary_points(r, m)?))
    }
}

/// `π Σ_{k≥1} k|a_k|²`, the area of `φ(𝔻)`.
pub fn mapped_area(phi: &ConformalMap) -> Result<f64> {
    if phi.kind != MapKind::Interior {
        return Err(Error::InvalidArgument(
            "mapped_area needs an interior map".into(),
        ));
    }
    let mut acc = KahanSum::new();
    for (k, a) in phi.coeffs.iter().enumerate().skip(1) {
        acc.add(k as f64 * a.norm_sqr());
    }
    Ok(PI * acc.total())
}

/// Nested level-curve domains `G_n = φ(r_n 𝔻)` with `r_n = 1 + δ 2^{-(n-1)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustionSequence {
    base: ConformalMap,
    radii: Vec<f64>,
}

pub fn exhaust(phi: &ConformalMap, levels: usize, delta: f64) -> Result<ExhaustionSequence> {
    if phi.kind != MapKind::Interior {
        return Err(Error::InvalidArgument(
            "exhaustions need an interior map".into(),
        ));
    }
    if levels == 0 || !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need levels >= 1 and delta > 0, got {levels}, {delta}"
        )));
    }
    let outer = 1.0 + delta;
    let margin = phi.margin_at(outer);
    if !(margin > 0.0) {
        return Err(Error::InadmissibleRadius {
            radius: outer,
            margin,
        });
    }
    let radii = (0..levels)
        .map(|n| 1.0 + delta * 0.5f64.powi(n as i32))
        .collect();
    Ok(ExhaustionSequence {
        base: phi.clone(),
        radii,
    })
}

impl ExhaustionSequence {
    pub fn base(&self) -> &ConformalMap {
        &self.base
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Radius of level `n` (1-based).
    pub fn radius(&self, n: usize) -> Result<f64> {
        n.checked_sub(1)
            .and_then(|i| self.radii.get(i).copied())
            .ok_or_else(|| Error::InvalidArgument(format!("level {n} out of range")))
    }

    /// `φ_n(z) = φ(r_n z)` for level `n` (1-based).
    pub fn level_map(&self, n: usize) -> Result<ConformalMap> {
        self.base.scaled(self.radius(n)?)
    }
}

/// A closed polygon through boundary samples, used for inside/outside tests.
#[derive(Debug, Clone)]
pub struct BoundaryPolygon {
    points: Vec<Complex64>,
}

impl BoundaryPolygon {
    pub fn new(points: Vec<Complex64>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn winding_number(&self, z: Complex64) -> i64 {
        let n = self.points.len();
        let mut total = 0.0;
        for i in 0..n {
            let a = self.points[i] - z;
            let b = self.points[(i + 1) % n] - z;
            total += (b / a).arg();
        }
        (total / (2.0 * PI)).round() as i64
    }

    /// Distance from `z` to the polygon's edges.
    pub fn distance(&self, z: Complex64) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| segment_distance(self.points[i], self.points[(i + 1) % n], z))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.winding_number(z) != 0
    }
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - z).norm()
}

/// Sampled quasicircle constant: the largest ratio of smaller-arc diameter to
/// chord over all pairs of cyclically ordered boundary samples.
///
/// The smaller arc is the one with fewer samples; the diameters of all arcs of
/// a given length are built from the arcs one sample shorter, so the whole
/// scan is `O(n²)`.
pub fn quasicircle_constant(points: &[Complex64]) -> Result<f64> {
    let n = points.len();
    if n < 3 {
        return Err(Error::TooFewPoints {
            required: 3,
            got: n,
        });
    }
    // diam[i] = diameter of points i, i+1, …, i+len (cyclic)
    let mut diam = vec![0.0f64; n];
    let mut best = 1.0f64;
    for len in 1..=n / 2 {
        let prev = diam.clone();
        for i in 0..n {
            let j = (i + len) % n;
            let chord = (points[i] - points[j]).norm();
            if chord == 0.0 {
                return Err(Error::CoincidentPoints {
                    first: i.min(j),
                    second: i.max(j),
                });
            }
            let d = prev[i].max(prev[(i + 1) % n]).max(chord);
            diam[i] = d;
            best = best.max(d / chord);
        }
    }
    Ok(best)
}
