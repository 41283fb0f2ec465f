//! Coefficient representations of analytic functions and their norms.
//!
//! Three carriers cover everything the pipelines need:
//!
//! * [`CoefficientSeries`]: a polynomial `g(z) = Σ c_k z^k` on the unit disk,
//!   measured in the Bergman norm `(π Σ |c_k|²/(k+1))^{1/2}`.
//! * [`LaurentTail`]: a finite principal part `γ(ζ) = Σ_{k≥1} F_k (ζ−z₀)^{-k}`,
//!   measured (for `z₀ = 0`) in the exterior Dirichlet norm `(π Σ k|F_k|²)^{1/2}`.
//! * [`BoundaryFunction`]: samples or Fourier modes on the unit circle, with the
//!   semi-norm `ρ(f) = (π Σ_{k≥1} k|f_{-k}|²)^{1/2}` on the negative modes.
//!
//! All sums run in ascending index order with compensated accumulation.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::Holomorphic;
use crate::sum::{ComplexSum, KahanSum};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Taylor coefficients `c_0..c_d` of `g(z) = Σ c_k z^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub coeffs: Vec<Complex64>,
}

impl CoefficientSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Index of the highest nonzero coefficient, if any.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative_series(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Self { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k + 1) as f64),
        );
        Self { coeffs }
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

impl Holomorphic for CoefficientSeries {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.evaluate(z)
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * k as f64;
        }
        acc
    }
}

/// A finite principal part `γ(ζ) = Σ_{k=1}^{d} F_k (ζ − center)^{-k}`.
///
/// `coeffs[0]` holds `F_1`; there is no constant term, so `γ(∞) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentTail {
    pub center: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl LaurentTail {
    pub fn new(center: Complex64, coeffs: Vec<Complex64>) -> Self {
        Self { center, coeffs }
    }

    pub fn at_origin(coeffs: Vec<Complex64>) -> Self {
        Self {
            center: ZERO,
            coeffs,
        }
    }

    /// `F_k`, 1-based; zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> Complex64 {
        if k == 0 {
            return ZERO;
        }
        self.coeffs.get(k - 1).copied().unwrap_or(ZERO)
    }

    pub fn evaluate(&self, zeta: Complex64) -> Result<Complex64> {
        if zeta == self.center {
            return Err(Error::Pole { point: zeta });
        }
        Ok(self.eval_unchecked(zeta))
    }

    fn eval_unchecked(&self, zeta: Complex64) -> Complex64 {
        let w = (zeta - self.center).inv();
        horner(&self.coeffs, w) * w
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

impl Holomorphic for LaurentTail {
    fn eval(&self, z: Complex64) -> Complex64 {
        self.eval_unchecked(z)
    }

    fn derivative(&self, z: Complex64) -> Complex64 {
        // d/dζ Σ F_k w^k = -Σ k F_k w^{k+1},  w = 1/(ζ - center)
        let w = (z - self.center).inv();
        let mut acc = ZERO;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * w + c * (i + 1) as f64;
        }
        -acc * w * w
    }

    fn poles(&self) -> Vec<Complex64> {
        if self.coeffs.iter().any(|c| *c != ZERO) {
            vec![self.center]
        } else {
            Vec::new()
        }
    }

    fn origin_tail(&self) -> Option<Vec<Complex64>> {
        (self.center == ZERO).then(|| self.coeffs.clone())
    }
}

/// Which representation of a [`BoundaryFunction`] is authoritative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Canonical {
    Samples,
    Modes,
}

/// A function on the unit circle, stored either as `M` samples at
/// `θ_j = 2πj/M` or as the `M` Fourier modes `f_k`, `-M/2 < k ≤ M/2`.
///
/// Modes are stored in ascending `k`, starting at [`BoundaryFunction::min_mode`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryFunction {
    canonical: Canonical,
    values: Vec<Complex64>,
}

impl BoundaryFunction {
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        check_len(samples.len())?;
        Ok(Self {
            canonical: Canonical::Samples,
            values: samples,
        })
    }

    /// Samples `f` at `M` uniform angles.
    pub fn sample<F: FnMut(f64) -> Complex64>(m: usize, mut f: F) -> Result<Self> {
        check_len(m)?;
        let samples = (0..m).map(|j| f(angle(j, m))).collect();
        Ok(Self {
            canonical: Canonical::Samples,
            values: samples,
        })
    }

    /// Mode-form function of length `m` with the given `(k, f_k)` entries;
    /// unspecified modes are zero.
    pub fn from_modes<I>(m: usize, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        check_len(m)?;
        let mut values = vec![ZERO; m];
        let lo = min_mode(m);
        let hi = max_mode(m);
        for (k, v) in modes {
            if k < lo || k > hi {
                return Err(Error::InvalidArgument(format!(
                    "mode {k} not resolvable with {m} samples ({lo}..={hi})"
                )));
            }
            values[(k - lo) as usize] += v;
        }
        Ok(Self {
            canonical: Canonical::Modes,
            values,
        })
    }

    pub fn canonical(&self) -> Canonical {
        self.canonical
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min_mode(&self) -> i64 {
        min_mode(self.len())
    }

    pub fn max_mode(&self) -> i64 {
        max_mode(self.len())
    }

    /// Raw stored values in the canonical representation.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Converts to mode form (a no-op if already in mode form).
    pub fn to_modes(&self) -> BoundaryFunction {
        match self.canonical {
            Canonical::Modes => self.clone(),
            Canonical::Samples => {
                let m = self.len();
                let mut buf = self.values.clone();
                FftPlanner::new().plan_fft_forward(m).process(&mut buf);
                let scale = 1.0 / m as f64;
                let lo = min_mode(m);
                let values = (0..m as i64)
                    .map(|i| buf[(i + lo).rem_euclid(m as i64) as usize] * scale)
                    .collect();
                BoundaryFunction {
                    canonical: Canonical::Modes,
                    values,
                }
            }
        }
    }

    /// Converts to sample form (a no-op if already sampled).
    pub fn to_samples(&self) -> BoundaryFunction {
        match self.canonical {
            Canonical::Samples => self.clone(),
            Canonical::Modes => {
                let m = self.len();
                let lo = min_mode(m);
                let mut buf = vec![ZERO; m];
                for (i, v) in self.values.iter().enumerate() {
                    buf[(i as i64 + lo).rem_euclid(m as i64) as usize] = *v;
                }
                FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
                BoundaryFunction {
                    canonical: Canonical::Samples,
                    values: buf,
                }
            }
        }
    }

    /// Fourier coefficient `f_k`; zero outside the resolvable band.
    pub fn mode(&self, k: i64) -> Complex64 {
        let modes = self.to_modes();
        modes.mode_in_place(k)
    }

    fn mode_in_place(&self, k: i64) -> Complex64 {
        debug_assert_eq!(self.canonical, Canonical::Modes);
        let lo = min_mode(self.len());
        let hi = max_mode(self.len());
        if k < lo || k > hi {
            ZERO
        } else {
            self.values[(k - lo) as usize]
        }
    }

    /// `f_{-1}, f_{-2}, …` for every negative mode the sample count resolves.
    pub fn negative_modes(&self) -> Vec<Complex64> {
        let modes = self.to_modes();
        let n = -modes.min_mode();
        (1..=n).map(|k| modes.mode_in_place(-k)).collect()
    }
}

fn check_len(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "boundary function needs at least 2 samples, got {m}"
        )));
    }
    Ok(())
}

fn min_mode(m: usize) -> i64 {
    -(((m as i64) - 1) / 2)
}

fn max_mode(m: usize) -> i64 {
    m as i64 / 2
}

pub(crate) fn angle(j: usize, m: usize) -> f64 {
    2.0 * PI * j as f64 / m as f64
}

/// `(π Σ_{k≥0} |c_k|²/(k+1))^{1/2}`, the Bergman norm on the unit disk.
pub fn b2_disk_norm(g: &CoefficientSeries) -> f64 {
    let mut acc = KahanSum::new();
    for (k, c) in g.coeffs.iter().enumerate() {
        acc.add(c.norm_sqr() / (k + 1) as f64);
    }
    (PI * acc.total()).sqrt()
}

/// `(π Σ_{k≥1} k|F_k|²)^{1/2}`, the Dirichlet norm on the exterior of the unit disk.
pub fn b21_exterior_norm(gamma: &LaurentTail) -> Result<f64> {
    if gamma.center != ZERO {
        return Err(Error::NonZeroCenter {
            center: gamma.center,
        });
    }
    let mut acc = KahanSum::new();
    for (i, f) in gamma.coeffs.iter().enumerate() {
        acc.add((i + 1) as f64 * f.norm_sqr());
    }
    Ok((PI * acc.total()).sqrt())
}

/// `ρ(f) = (π Σ_{k≥1} k|f_{-k}|²)^{1/2}` over all resolvable negative modes.
pub fn rho_seminorm(f: &BoundaryFunction) -> f64 {
    let mut acc = KahanSum::new();
    for (i, c) in f.negative_modes().iter().enumerate() {
        acc.add((i + 1) as f64 * c.norm_sqr());
    }
    (PI * acc.total()).sqrt()
}

/// Samples to discrete Fourier modes.
pub fn boundary_to_modes(f: &BoundaryFunction) -> BoundaryFunction {
    f.to_modes()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ComplexSum::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add(x * y);
        }
    }
    out.iter().map(ComplexSum::total).collect()
}

/// Coefficients of `outer(inner(u))`.
pub(crate) fn poly_compose(outer: &[Complex64], inner: &[Complex64]) -> Vec<Complex64> {
    let mut acc: Vec<Complex64> = Vec::new();
    for c in outer.iter().rev() {
        acc = poly_mul(&acc, inner);
        if acc.is_empty() {
            acc.push(*c);
        } else {
            acc[0] += c;
        }
    }
    acc
}
