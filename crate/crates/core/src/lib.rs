//! Numerical tools for the Cauchy transform on Bergman spaces.
//!
//! The crate computes the coefficient norms of `B₂(𝔻)` and `B₂¹(ℂ∖𝔻̄)`, the `ρ`
//! semi-norm of circle functions, the Cauchy and Beurling transforms, explicit
//! conformal exhaustions of polynomial quasidisks, and runs the range criteria
//! (boundedness of `ρ(γ∘φ_n)` along an exhaustion) as experiments.

pub mod criterion;
pub mod domains;
pub mod error;
pub mod function;
pub mod quadrature;
pub mod series;
pub mod sum;
pub mod transforms;

pub use num_complex::Complex64;

pub use criterion::{
    invert_cauchy, rho_sequence, riesz_functional, theorem1_bound_check, theorem2_membership,
    CriterionReport, Inversion, InversionOptions, InversionStatus, LevelRecord, Tolerances,
    Verdict,
};
pub use domains::{
    exhaust, make_map, mapped_area, quasicircle_constant, BoundaryPolygon, ConformalMap,
    ExhaustionSequence, MapKind,
};
pub use error::{Error, Result};
pub use function::{CauchyKernel, FnPair, Holomorphic};
pub use quadrature::{bergman_norm_on_domain, build_rule, integrate_disk, DiskQuadrature};
pub use series::{
    b21_exterior_norm, b2_disk_norm, boundary_to_modes, rho_seminorm, BoundaryFunction, Canonical,
    CoefficientSeries, LaurentTail,
};
pub use transforms::{
    b21_norm_contour, b21_norm_exterior_quadrature, beurling_offsupport, boundary_cauchy_integral,
    cauchy_disk_series, cauchy_disk_series_inverse, cauchy_polynomial_domain, cauchy_quadrature,
    exterior_l2_norm, PolynomialCauchy, PushForward, DEFAULT_GUARD,
};
