use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("map is not certified univalent (margin {margin:e} <= 0)")]
    NotUnivalent { margin: f64 },

    #[error("radius {radius} is not admissible for this map (margin {margin:e} <= 0)")]
    InadmissibleRadius { radius: f64, margin: f64 },

    #[error("laurent tail must be centered at the origin (center = {center})")]
    NonZeroCenter { center: Complex64 },

    #[error("evaluation at a pole {point}")]
    Pole { point: Complex64 },

    #[error("point {point} lies within {distance:e} of a singularity or boundary (guard {guard})")]
    GuardViolation {
        point: Complex64,
        distance: f64,
        guard: f64,
    },

    #[error("point {point} is not outside the closed domain")]
    NotExterior { point: Complex64 },

    #[error("point {point} is not inside the domain")]
    NotInterior { point: Complex64 },

    #[error("non-finite integrand value at node r = {r}, theta = {theta}")]
    NonFiniteIntegrand { r: f64, theta: f64 },

    #[error("at least {required} points are required, got {got}")]
    TooFewPoints { required: usize, got: usize },

    #[error("sample points {first} and {second} coincide")]
    CoincidentPoints { first: usize, second: usize },

    #[error("newton iteration failed to converge for {point}")]
    NoConvergence { point: Complex64 },
}

pub type Result<T> = std::result::Result<T, Error>;
