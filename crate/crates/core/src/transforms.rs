//! The Cauchy transform `K`, the Cauchy-type boundary integral and the
//! Beurling transform evaluated off the support of its density.
//!
//! `K` is available three ways:
//!
//! * [`cauchy_disk_series`]: closed form on the unit disk,
//! * [`cauchy_quadrature`]: area quadrature pulled back through `φ`,
//! * [`PolynomialCauchy`]: for polynomial `g` on a polynomial domain, the
//!   area integral is turned into a boundary integral (`conj(g) = ∂_z̄ conj(P)`
//!   with `P' = g`) and then into the residue at `t = 0` of a Laurent
//!   polynomial times `φ'(t)/(φ(t) − ζ)`. This is exact up to roundoff even for
//!   `ζ` arbitrarily close to the boundary, where quadrature loses accuracy.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::domains::{BoundaryPolygon, ConformalMap, MapKind};
use crate::error::{Error, Result};
use crate::function::Holomorphic;
use crate::quadrature::{integrate_disk, DiskQuadrature};
use crate::series::{angle, poly_compose, BoundaryFunction, CoefficientSeries, LaurentTail};
use crate::sum::{ComplexSum, KahanSum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default minimum map-plane clearance for kernel evaluations.
pub const DEFAULT_GUARD: f64 = 0.05;

/// Samples used to polygonize a boundary for inside/outside tests.
const POLYGON_SAMPLES: usize = 1024;

/// `Kg(ζ) = −Σ conj(c_k) ζ^{-(k+1)}/(k+1)` on the unit disk.
pub fn cauchy_disk_series(g: &CoefficientSeries) -> LaurentTail {
    let coeffs = g
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| -c.conj() / (k + 1) as f64)
        .collect();
    LaurentTail::at_origin(coeffs)
}

/// Inverse of [`cauchy_disk_series`]: `c_k = −conj(F_{k+1})(k+1)`.
pub fn cauchy_disk_series_inverse(gamma: &LaurentTail) -> Result<CoefficientSeries> {
    if gamma.center != ZERO {
        return Err(Error::NonZeroCenter {
            center: gamma.center,
        });
    }
    let coeffs = gamma
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, f)| -f.conj() * (k + 1) as f64)
        .collect();
    Ok(CoefficientSeries::new(coeffs))
}

/// `(1/π) ∬_𝔻 conj(g(φ(w))) |φ'(w)|² / (φ(w) − ζ) dA(w)`.
///
/// `ζ` must lie outside `φ(𝔻̄)` with clearance at least `guard`.
pub fn cauchy_quadrature<G>(
    g: G,
    phi: &ConformalMap,
    zeta: Complex64,
    rule: &DiskQuadrature,
    guard: f64,
) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64,
{
    if phi.kind() != MapKind::Interior {
        return Err(Error::InvalidArgument("interior map required".into()));
    }
    let polygon = phi.polygon(1.0, POLYGON_SAMPLES)?;
    if polygon.contains(zeta) {
        return Err(Error::NotExterior { point: zeta });
    }
    let distance = polygon.distance(zeta);
    if distance < guard {
        return Err(Error::GuardViolation {
            point: zeta,
            distance,
            guard,
        });
    }
    let total = integrate_disk(rule, |w| {
        let z = phi.eval(w);
        g(z).conj() * phi.derivative(w).norm_sqr() / (z - zeta)
    })?;
    Ok(total / PI)
}

/// `K g` for a polynomial `g` on the polynomial domain `φ(𝔻)`, by residues.
#[derive(Debug, Clone)]
pub struct PolynomialCauchy {
    map: ConformalMap,
    /// `q[m]`: coefficient of `t^{-m}` in `conj(P(φ(t)))` on `|t| = 1`.
    q: Vec<Complex64>,
    polygon: BoundaryPolygon,
}

impl PolynomialCauchy {
    pub fn new(g: &CoefficientSeries, phi: &ConformalMap) -> Result<Self> {
        if phi.kind() != MapKind::Interior {
            return Err(Error::InvalidArgument("interior map required".into()));
        }
        let p_bar = g.antiderivative().conj();
        let phi_bar: Vec<_> = phi.coeffs().iter().map(|a| a.conj()).collect();
        let q = poly_compose(&p_bar.coeffs, &phi_bar);
        let polygon = phi.polygon(1.0, POLYGON_SAMPLES)?;
        Ok(Self {
            map: phi.clone(),
            q,
            polygon,
        })
    }

    pub fn map(&self) -> &ConformalMap {
        &self.map
    }

    /// Evaluates `Kg(ζ)`, rejecting `ζ` in the closed domain.
    pub fn evaluate(&self, zeta: Complex64) -> Result<Complex64> {
        self.check_exterior(zeta)?;
        Ok(self.eval(zeta))
    }

    fn check_exterior(&self, zeta: Complex64) -> Result<()> {
        if self.polygon.contains(zeta) || self.polygon.distance(zeta) == 0.0 {
            return Err(Error::NotExterior { point: zeta });
        }
        Ok(())
    }

    /// Taylor coefficients at `t = 0` of `φ'(t)/(φ(t) − ζ)` and of
    /// `φ'(t)/(φ(t) − ζ)²`, `n` terms each.
    fn kernel_series(&self, zeta: Complex64, n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let a = self.map.coeffs();
        let d0 = a[0] - zeta;
        let numer = |j: usize| a.get(j + 1).map_or(ZERO, |c| c * (j + 1) as f64);
        let mut s = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = ComplexSum::new();
            acc.add(numer(j));
            let mut acc_v = ComplexSum::new();
            for i in 1..=j.min(a.len() - 1) {
                acc.add(-a[i] * s[j - i]);
            }
            let sj = acc.total() / d0;
            s.push(sj);
            acc_v.add(sj);
            for i in 1..=j.min(a.len() - 1) {
                acc_v.add(-a[i] * v[j - i]);
            }
            v.push(acc_v.total() / d0);
        }
        (s, v)
    }

    fn residues(&self, zeta: Complex64) -> (Complex64, Complex64) {
        let n = self.q.len().saturating_sub(1);
        let (s, v) = self.kernel_series(zeta, n);
        let mut value = ComplexSum::new();
        let mut deriv = ComplexSum::new();
        for m in 1..self.q.len() {
            value.add(self.q[m] * s[m - 1]);
            deriv.add(self.q[m] * v[m - 1]);
        }
        (value.total(), deriv.total())
    }
}

impl Holomorphic for PolynomialCauchy {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.residues(z).0
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        self.residues(z).1
    }

    /// The exterior branch continues to a rational function whose only
    /// pole is `φ(0)`.
    fn poles(&self) -> Vec<Complex64> {
        if self.q.iter().skip(1).any(|c| *c != ZERO) {
            vec![self.map.coeffs()[0]]
        } else {
            Vec::new()
        }
    }
}

/// `K g (ζ)` for polynomial `g` on `φ(𝔻)`, exact up to roundoff.
pub fn cauchy_polynomial_domain(
    g: &CoefficientSeries,
    phi: &ConformalMap,
    zeta: Complex64,
) -> Result<Complex64> {
    PolynomialCauchy::new(g, phi)?.evaluate(zeta)
}

/// The Cauchy-type integral of a circle function: `F_k = −f_{-k}`.
pub fn boundary_cauchy_integral(f: &BoundaryFunction) -> LaurentTail {
    LaurentTail::at_origin(f.negative_modes().into_iter().map(|c| -c).collect())
}

/// `(𝕋u)(ζ) = Σ d_k ζ^{-(k+2)}` for `u = Σ d_k z̄^k` on 𝔻 and `|ζ| ≥ 1 + guard`.
pub fn beurling_offsupport(
    density: &[Complex64],
    zeta: Complex64,
    guard: f64,
) -> Result<Complex64> {
    let distance = zeta.norm() - 1.0;
    if distance < guard {
        return Err(Error::GuardViolation {
            point: zeta,
            distance,
            guard,
        });
    }
    let w = zeta.inv();
    let poly = density.iter().rev().fold(ZERO, |acc, d| acc * w + d);
    Ok(poly * w * w)
}

/// `∬_{|ζ|>1} |Σ F_m ζ^{-m}|² dA = π Σ_{m≥2} |F_m|²/(m−1)`; infinite when `F_1 ≠ 0`.
pub fn exterior_l2_norm(tail: &LaurentTail) -> Result<f64> {
    if tail.center != ZERO {
        return Err(Error::NonZeroCenter {
            center: tail.center,
        });
    }
    if tail.coeff(1) != ZERO {
        return Ok(f64::INFINITY);
    }
    let mut acc = KahanSum::new();
    for m in 2..=tail.coeffs.len() {
        acc.add(tail.coeff(m).norm_sqr() / (m - 1) as f64);
    }
    Ok((PI * acc.total()).sqrt())
}

/// `‖γ‖_{B₂¹(ℂ∖Ḡ)} = (∬_{|w|>1} |(γ∘ψ)'(w)|² dA)^{1/2}` with `G` the complement
/// of `ψ(ℂ∖𝔻̄)`, integrated in `s = 1/w` over the unit disk where the
/// integrand `|γ'(ψ(1/s)) ψ'(1/s)|² |s|^{-4}` stays bounded.
pub fn b21_norm_exterior_quadrature<H: Holomorphic>(
    gamma: &H,
    psi: &ConformalMap,
    rule: &DiskQuadrature,
) -> Result<f64> {
    if psi.kind() != MapKind::Exterior {
        return Err(Error::InvalidArgument("exterior map required".into()));
    }
    let total = integrate_disk(rule, |s| {
        let w = s.inv();
        let d = gamma.derivative(psi.eval(w)) * psi.derivative(w);
        Complex64::new(d.norm_sqr() / s.norm_sqr().powi(2), 0.0)
    })?;
    Ok(total.re.max(0.0).sqrt())
}

/// The same Dirichlet norm from the boundary: `‖γ‖² = Re (i/2) ∮_{∂G} conj(γ) γ' dz`,
/// with `∂G` traced positively as the image of the unit circle under `map`
/// (either kind), using an `m`-point trapezoid rule.
pub fn b21_norm_contour<H: Holomorphic>(gamma: &H, map: &ConformalMap, m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let mut acc = ComplexSum::new();
    for j in 0..m {
        let t = Complex64::from_polar(1.0, angle(j, m));
        let z = map.eval(t);
        let dz = map.derivative(t) * t * Complex64::i();
        acc.add(gamma.eval(z).conj() * gamma.derivative(z) * dz);
    }
    let integral = acc.total() * (2.0 * PI / m as f64);
    let value = (Complex64::i() * 0.5 * integral).re;
    Ok(value.max(0.0).sqrt())
}

/// `γ = tail ∘ ψ^{-1}` for an exterior map `ψ`, so that `γ ∘ ψ = tail`.
#[derive(Debug, Clone)]
pub struct PushForward {
    pub tail: LaurentTail,
    pub map: ConformalMap,
}

impl PushForward {
    pub fn new(tail: LaurentTail, map: ConformalMap) -> Result<Self> {
        if map.kind() != MapKind::Exterior {
            return Err(Error::InvalidArgument("exterior map required".into()));
        }
        Ok(Self { tail, map })
    }

    fn preimage(&self, z: Complex64) -> Complex64 {
        self.map
            .invert(z)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

impl Holomorphic for PushForward {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.tail.eval(self.preimage(z))
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        let w = self.preimage(z);
        self.tail.derivative(w) / self.map.derivative(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{make_map, mapped_area};
    use crate::quadrature::build_rule;
    use crate::series::{b21_exterior_norm, b2_disk_norm, rho_seminorm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quadratic() -> ConformalMap {
        make_map(MapKind::Interior, vec![ZERO, c(1.0, 0.0), c(0.3, 0.0)]).unwrap()
    }

    #[test]
    fn disk_series_examples() {
        let k1 = cauchy_disk_series(&CoefficientSeries::new(vec![c(1.0, 0.0)]));
        assert_eq!(k1.coeffs, vec![c(-1.0, 0.0)]);
        for k in 0..6 {
            let t = cauchy_disk_series(&CoefficientSeries::monomial(k));
            assert_eq!(t.coeff(k + 1), c(-1.0 / (k + 1) as f64, 0.0));
        }
        let t = cauchy_disk_series(&CoefficientSeries::new(vec![ZERO, c(2.0, 0.0)]));
        assert_eq!(t.coeff(2), c(-1.0, 0.0));
    }

    #[test]
    fn disk_series_matches_quadrature() {
        let rule = DiskQuadrature::default();
        let id = ConformalMap::identity();
        let g = CoefficientSeries::new(vec![c(1.0, 0.5), c(0.0, -2.0), c(0.25, 0.0)]);
        let tail = cauchy_disk_series(&g);
        for zeta in [c(2.0, 0.0), c(0.0, 3.0), c(-1.5, 1.5)] {
            let q = cauchy_quadrature(|z| g.evaluate(z), &id, zeta, &rule, DEFAULT_GUARD).unwrap();
            assert!((q - tail.evaluate(zeta).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn cauchy_quadrature_examples() {
        let rule = DiskQuadrature::default();
        let id = ConformalMap::identity();
        let v = cauchy_quadrature(|z| z * z, &id, c(2.0, 0.0), &rule, DEFAULT_GUARD).unwrap();
        assert!((v + 1.0 / 24.0).norm() < 1e-10);
        let m = quadratic();
        let v = cauchy_quadrature(|_| c(1.0, 0.0), &m, c(50.0, 0.0), &rule, DEFAULT_GUARD).unwrap();
        let leading = -mapped_area(&m).unwrap() / (PI * 50.0);
        assert!(((v - leading) / leading).norm() < 1e-2);
        assert!(matches!(
            cauchy_quadrature(|_| c(1.0, 0.0), &id, c(1.01, 0.0), &rule, DEFAULT_GUARD),
            Err(Error::GuardViolation { .. })
        ));
        assert!(matches!(
            cauchy_quadrature(|_| c(1.0, 0.0), &id, c(0.5, 0.0), &rule, DEFAULT_GUARD),
            Err(Error::NotExterior { .. })
        ));
    }

    #[test]
    fn residue_route_matches_quadrature_on_catalog() {
        let rule = build_rule(96, 192).unwrap();
        let maps = [
            ConformalMap::identity(),
            quadratic(),
            make_map(
                MapKind::Interior,
                vec![ZERO, c(1.0, 0.0), ZERO, c(0.25, 0.0)],
            )
            .unwrap(),
            make_map(
                MapKind::Interior,
                vec![c(0.1, -0.2), c(0.0, 1.0), c(0.1, 0.1)],
            )
            .unwrap(),
        ];
        let g = CoefficientSeries::new(vec![c(1.0, 0.0), c(0.3, -0.4), c(0.0, 0.5), c(-0.2, 0.1)]);
        for m in &maps {
            let exact = PolynomialCauchy::new(&g, m).unwrap();
            for zeta in [c(2.0, 0.0), c(0.0, -2.5), c(-1.8, 1.1), c(3.0, 3.0)] {
                let q = cauchy_quadrature(|z| g.evaluate(z), m, zeta, &rule, 0.3).unwrap();
                let e = exact.evaluate(zeta).unwrap();
                assert!((q - e).norm() < 1e-12 * e.norm().max(1e-3), "{m:?} {zeta}");
                // derivative by central differences
                let h = 1e-5;
                let fd = (exact.eval(zeta + h) - exact.eval(zeta - h)) / (2.0 * h);
                assert!((fd - exact.derivative(zeta)).norm() < 1e-8);
            }
            assert!(exact.evaluate(m.eval(c(0.2, 0.1))).is_err());
        }
    }

    #[test]
    fn residue_route_reduces_to_disk_series() {
        let g = CoefficientSeries::new(vec![c(0.5, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(2.0, -1.0)]);
        let exact = PolynomialCauchy::new(&g, &ConformalMap::identity()).unwrap();
        let tail = cauchy_disk_series(&g);
        for zeta in [c(1.001, 0.0), c(0.0, 1.3), c(-4.0, 0.5)] {
            let a = exact.evaluate(zeta).unwrap();
            let b = tail.evaluate(zeta).unwrap();
            assert!((a - b).norm() < 1e-14);
        }
        assert_eq!(exact.poles(), vec![ZERO]);
    }

    #[test]
    fn disk_isometry_and_injectivity() {
        let g = CoefficientSeries::new(vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 3.0)]);
        let tail = cauchy_disk_series(&g);
        let lhs = b21_exterior_norm(&tail).unwrap();
        assert!((lhs - b2_disk_norm(&g)).abs() < 1e-14 * lhs);
        assert_eq!(cauchy_disk_series_inverse(&tail).unwrap(), g);
    }

    #[test]
    fn boundary_integral_examples() {
        let f = BoundaryFunction::sample(32, |t| Complex64::from_polar(1.0, -t)).unwrap();
        let tail = boundary_cauchy_integral(&f);
        assert!((tail.coeff(1) + 1.0).norm() < 1e-15);
        assert!(tail.coeffs.iter().skip(1).all(|c| c.norm() < 1e-15));
        let f = BoundaryFunction::sample(32, |t| Complex64::from_polar(1.0, 3.0 * t)).unwrap();
        assert!(boundary_cauchy_integral(&f)
            .coeffs
            .iter()
            .all(|c| c.norm() < 1e-15));
        let f = BoundaryFunction::from_modes(16, [(-3, c(0.5, 1.0)), (-1, c(2.0, 0.0))]).unwrap();
        let rho = rho_seminorm(&f);
        let norm = b21_exterior_norm(&boundary_cauchy_integral(&f)).unwrap();
        assert!((rho - norm).abs() < 1e-12 * rho);
    }

    #[test]
    fn beurling_examples() {
        let v = beurling_offsupport(&[c(1.0, 0.0)], c(2.0, 0.0), DEFAULT_GUARD).unwrap();
        assert!((v - 0.25).norm() < 1e-15);
        let v = beurling_offsupport(&[ZERO, c(1.0, 0.0)], c(0.0, 2.0), DEFAULT_GUARD).unwrap();
        assert!((v - c(0.0, 0.125)).norm() < 1e-15);
        assert!(matches!(
            beurling_offsupport(&[c(1.0, 0.0)], c(1.02, 0.0), DEFAULT_GUARD),
            Err(Error::GuardViolation { .. })
        ));
    }

    #[test]
    fn beurling_norm_bookkeeping() {
        for k in 0..8 {
            // image ζ^{-(k+2)} as a tail, density z̄^k on the disk
            let mut coeffs = vec![ZERO; k + 2];
            coeffs[k + 1] = c(1.0, 0.0);
            let image = exterior_l2_norm(&LaurentTail::at_origin(coeffs)).unwrap();
            let density = b2_disk_norm(&CoefficientSeries::monomial(k));
            assert!((image * image - PI / (k + 1) as f64).abs() < 1e-13);
            assert!((density * density - PI / (k + 1) as f64).abs() < 1e-13);
        }
        assert!(exterior_l2_norm(&LaurentTail::at_origin(vec![c(1.0, 0.0)]))
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn exterior_quadrature_examples() {
        let rule = DiskQuadrature::default();
        let psi = make_map(MapKind::Exterior, vec![ZERO]).unwrap();
        let g1 = LaurentTail::at_origin(vec![c(1.0, 0.0)]);
        let g2 = LaurentTail::at_origin(vec![ZERO, c(1.0, 0.0)]);
        assert!((b21_norm_exterior_quadrature(&g1, &psi, &rule).unwrap() - PI.sqrt()).abs() < 1e-8);
        assert!(
            (b21_norm_exterior_quadrature(&g2, &psi, &rule).unwrap() - (2.0 * PI).sqrt()).abs()
                < 1e-8
        );
        let ellipse = make_map(MapKind::Exterior, vec![ZERO, c(0.2, 0.0)]).unwrap();
        let pushed = PushForward::new(g1.clone(), ellipse.clone()).unwrap();
        let n = b21_norm_exterior_quadrature(&pushed, &ellipse, &rule).unwrap();
        assert!((n - PI.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn contour_norm_agrees_with_area_norm() {
        let rule = DiskQuadrature::default();
        let ellipse = make_map(MapKind::Exterior, vec![ZERO, c(0.2, 0.0)]).unwrap();
        let gamma = LaurentTail::new(c(0.1, 0.0), vec![c(1.0, 0.0), c(0.0, 0.5)]);
        let area = b21_norm_exterior_quadrature(&gamma, &ellipse, &rule).unwrap();
        let contour = b21_norm_contour(&gamma, &ellipse, 512).unwrap();
        assert!((area - contour).abs() < 1e-10 * area);
        let g = LaurentTail::at_origin(vec![c(1.0, 0.0), c(0.5, 0.5)]);
        let closed = b21_exterior_norm(&g).unwrap();
        let contour = b21_norm_contour(&g, &ConformalMap::identity(), 64).unwrap();
        assert!((closed - contour).abs() < 1e-13);
    }
}
