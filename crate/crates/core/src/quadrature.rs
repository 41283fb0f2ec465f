//! Tensor-product area quadrature on the unit disk.
//!
//! Radial Gauss–Legendre nodes on `[0, 1]` carry the polar Jacobian `r` in
//! their weights; the angle uses the uniform trapezoid rule. The rule is exact
//! for `r^p e^{ikθ}` with `p + 1 ≤ 2 n_r − 1` and `|k| < M`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::domains::{ConformalMap, MapKind};
use crate::error::{Error, Result};
use crate::series::angle;
use crate::sum::ComplexSum;

pub const DEFAULT_RADIAL: usize = 64;
pub const DEFAULT_ANGULAR: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct DiskQuadrature {
    /// `(r_i, w_i · r_i)`, ascending in `r`.
    radial: Vec<(f64, f64)>,
    angular: usize,
}

/// A single quadrature node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub r: f64,
    pub theta: f64,
    pub z: Complex64,
    pub weight: f64,
}

pub fn build_rule(radial: usize, angular: usize) -> Result<DiskQuadrature> {
    if radial == 0 || angular < 2 {
        return Err(Error::InvalidArgument(format!(
            "need n_r >= 1 and M >= 2, got {radial}, {angular}"
        )));
    }
    let radial = gauss_legendre(radial)
        .into_iter()
        .map(|(x, w)| {
            let r = 0.5 * (x + 1.0);
            (r, 0.5 * w * r)
        })
        .collect();
    Ok(DiskQuadrature { radial, angular })
}

impl Default for DiskQuadrature {
    fn default() -> Self {
        build_rule(DEFAULT_RADIAL, DEFAULT_ANGULAR).expect("default rule")
    }
}

impl DiskQuadrature {
    pub fn radial_count(&self) -> usize {
        self.radial.len()
    }

    pub fn angular_count(&self) -> usize {
        self.angular
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.angular
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Nodes in the fixed evaluation order: radius outer, angle inner.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        let dtheta = 2.0 * PI / self.angular as f64;
        self.radial.iter().flat_map(move |&(r, wr)| {
            (0..self.angular).map(move |j| {
                let theta = angle(j, self.angular);
                Node {
                    r,
                    theta,
                    z: Complex64::from_polar(r, theta),
                    weight: wr * dtheta,
                }
            })
        })
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
///
/// Newton iteration on the three-term recurrence from the Chebyshev-like
/// initial guess; converges to roundoff in a handful of steps.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `∬_𝔻 f dA` as a compensated weighted sum in fixed node order.
pub fn integrate_disk<F>(rule: &DiskQuadrature, mut f: F) -> Result<Complex64>
where
    F: FnMut(Complex64) -> Complex64,
{
    let mut acc = ComplexSum::new();
    for node in rule.nodes() {
        let v = f(node.z);
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand {
                r: node.r,
                theta: node.theta,
            });
        }
        acc.add(v * node.weight);
    }
    Ok(acc.total())
}

/// `‖g‖_{B₂(φ(𝔻))} = (∬_𝔻 |g(φ(w))|² |φ'(w)|² dA)^{1/2}`.
pub fn bergman_norm_on_domain<F>(g: F, phi: &ConformalMap, rule: &DiskQuadrature) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if phi.kind() != MapKind::Interior {
        return Err(Error::InvalidArgument("interior map required".into()));
    }
    let total = integrate_disk(rule, |w| {
        let v = g(phi.eval(w)) * phi.derivative(w);
        Complex64::new(v.norm_sqr(), 0.0)
    })?;
    Ok(total.re.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{make_map, mapped_area};
    use crate::series::{b2_disk_norm, CoefficientSeries};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(7);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        // ∫_{-1}^{1} x^12 dx = 2/13, degree 12 <= 13
        let m12: f64 = rule.iter().map(|(x, w)| w * x.powi(12)).sum();
        assert!((m12 - 2.0 / 13.0).abs() < 1e-14);
        assert!(rule.windows(2).all(|p| p[0].0 < p[1].0));
    }

    #[test]
    fn rule_examples() {
        let rule = build_rule(64, 128).unwrap();
        let one = integrate_disk(&rule, |_| c(1.0, 0.0)).unwrap();
        assert!((one - PI).norm() < 1e-13);
        let r2 = integrate_disk(&rule, |z| c(z.norm_sqr(), 0.0)).unwrap();
        assert!((r2 - PI / 2.0).norm() < 1e-13);
        let z1 = integrate_disk(&rule, |z| z).unwrap();
        assert!(z1.norm() < 1e-13);
        assert!(rule
            .nodes()
            .all(|n| n.r > 0.0 && n.r < 1.0 && n.weight > 0.0));
        assert!(build_rule(0, 4).is_err());
        assert!(build_rule(4, 1).is_err());
    }

    #[test]
    fn integrate_examples() {
        let rule = DiskQuadrature::default();
        let v = integrate_disk(&rule, |z| z * z.conj()).unwrap();
        assert!((v - PI / 2.0).norm() < 1e-13);
        let v = integrate_disk(&rule, |z| z * z * z.conj()).unwrap();
        assert!(v.norm() < 1e-13);
        let v = integrate_disk(&rule, |z| (z - 2.0).inv()).unwrap();
        assert!((v + PI / 2.0).norm() < 1e-13);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let rule = build_rule(4, 8).unwrap();
        let first = rule.nodes().next().unwrap();
        let err = integrate_disk(&rule, |z| {
            if z == first.z {
                c(f64::NAN, 0.0)
            } else {
                c(1.0, 0.0)
            }
        })
        .unwrap_err();
        assert_eq!(
            err,
            Error::NonFiniteIntegrand {
                r: first.r,
                theta: first.theta
            }
        );
    }

    #[test]
    fn monomial_moments_are_exact() {
        let rule = build_rule(16, 32).unwrap();
        // 2 max(a, b) < min(2 n_r - 1, M) = 31
        for a in 0..=15usize {
            for b in 0..=15usize {
                let v =
                    integrate_disk(&rule, |z| z.powu(a as u32) * z.conj().powu(b as u32)).unwrap();
                let expect = if a == b { PI / (a + 1) as f64 } else { 0.0 };
                assert!((v - expect).norm() < 1e-13, "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn bergman_norm_examples() {
        let rule = DiskQuadrature::default();
        let id = ConformalMap::identity();
        let n = bergman_norm_on_domain(|_| c(1.0, 0.0), &id, &rule).unwrap();
        assert!((n - PI.sqrt()).abs() < 1e-13);
        for k in 0..8 {
            let n = bergman_norm_on_domain(|z| z.powu(k), &id, &rule).unwrap();
            let exact = b2_disk_norm(&CoefficientSeries::monomial(k as usize));
            assert!((n - exact).abs() < 1e-12, "k = {k}");
        }
        let m = make_map(
            MapKind::Interior,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)],
        )
        .unwrap();
        let n = bergman_norm_on_domain(|_| c(1.0, 0.0), &m, &rule).unwrap();
        assert!((n - mapped_area(&m).unwrap().sqrt()).abs() < 1e-12);
        assert!((n - (1.18 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn refinement_does_not_move_catalog_integrals() {
        let coarse = build_rule(64, 128).unwrap();
        let fine = build_rule(128, 256).unwrap();
        let maps = [
            ConformalMap::identity(),
            make_map(
                MapKind::Interior,
                vec![c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)],
            )
            .unwrap(),
            make_map(
                MapKind::Interior,
                vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.25, 0.0)],
            )
            .unwrap(),
        ];
        for m in &maps {
            for k in 0..4u32 {
                let a = bergman_norm_on_domain(|z| z.powu(k), m, &coarse).unwrap();
                let b = bergman_norm_on_domain(|z| z.powu(k), m, &fine).unwrap();
                assert!(((a - b) / b).abs() < 1e-10);
            }
            let ka = integrate_disk(&coarse, |w| (m.eval(w) - 3.0).inv()).unwrap();
            let kb = integrate_disk(&fine, |w| (m.eval(w) - 3.0).inv()).unwrap();
            assert!((ka - kb).norm() < 1e-10 * kb.norm());
        }
    }
}
