use std::path::Path;

use bergman_core::{
    make_map, Complex64, ConformalMap, InversionOptions, LaurentTail, MapKind, Tolerances,
    DEFAULT_GUARD,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Experiment configuration; every field has an in-repo default.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub catalog: Vec<CatalogEntry>,
    pub exhaustion: ExhaustionConfig,
    /// Boundary samples `M` per level curve.
    pub samples: usize,
    pub quadrature: QuadratureConfig,
    /// Minimum map-plane clearance for kernel and pole evaluations.
    pub guard: f64,
    pub tolerances: Tolerances,
    pub inversion: InversionOptions,
    pub lemma1: Lemma1Config,
    pub disk_isometry: DiskIsometryConfig,
    pub theorem1: Theorem1Config,
    pub theorem2: Theorem2Config,
    pub beurling: BeurlingConfig,
    pub riesz: RieszConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: MapKind,
    pub coeffs: Vec<Complex64>,
    /// Overrides the global exhaustion excess for this map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl CatalogEntry {
    fn new(name: &str, kind: MapKind, coeffs: &[(f64, f64)]) -> Self {
        Self {
            name: name.into(),
            kind,
            coeffs: coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect(),
            delta: None,
        }
    }

    pub fn map(&self) -> Result<ConformalMap, CliError> {
        make_map(self.kind, self.coeffs.clone())
            .map_err(|e| CliError::Config(format!("catalog entry `{}`: {e}", self.name)))
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExhaustionConfig {
    pub delta: f64,
    pub levels: usize,
}

impl Default for ExhaustionConfig {
    fn default() -> Self {
        Self {
            delta: 0.15,
            levels: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub radial: usize,
    pub angular: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 128,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Lemma1Config {
    pub trials: usize,
    pub max_degree: usize,
    pub samples: usize,
    pub rel_tol: f64,
}

impl Default for Lemma1Config {
    fn default() -> Self {
        Self {
            trials: 100,
            max_degree: 32,
            samples: 256,
            rel_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiskIsometryConfig {
    pub trials: usize,
    pub max_degree: usize,
    pub coeff_rel_tol: f64,
    pub quad_rel_tol: f64,
    /// Radius of the ring on which quadrature values of `Kg` are sampled.
    pub ring_radius: f64,
    pub ring_samples: usize,
}

impl Default for DiskIsometryConfig {
    fn default() -> Self {
        Self {
            trials: 50,
            max_degree: 16,
            coeff_rel_tol: 1e-12,
            quad_rel_tol: 1e-6,
            ring_radius: 2.0,
            ring_samples: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Theorem1Config {
    /// Test functions are the monomials `z^0 … z^max_power`.
    pub max_power: usize,
    /// Tolerance of the closed-form spot check on the disk.
    pub closed_form_tol: f64,
}

impl Default for Theorem1Config {
    fn default() -> Self {
        Self {
            max_power: 3,
            closed_form_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedTail {
    pub name: String,
    pub tail: LaurentTail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Theorem2Config {
    /// Catalog entries to run; empty means all of them.
    pub domains: Vec<String>,
    pub gammas: Vec<NamedTail>,
    /// Relative tolerance between exterior-quadrature and boundary norms.
    pub isometry_tol: f64,
}

impl Default for Theorem2Config {
    fn default() -> Self {
        let a = Complex64::new(0.1, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            domains: vec!["identity".into(), "z+0.3z^2".into(), "ext:z+0.2/z".into()],
            gammas: vec![
                NamedTail {
                    name: "1/(z-0.1)".into(),
                    tail: LaurentTail::new(a, vec![one]),
                },
                NamedTail {
                    name: "1/(z-0.1)^2".into(),
                    tail: LaurentTail::new(a, vec![zero, one]),
                },
                NamedTail {
                    name: "mixed".into(),
                    tail: LaurentTail::new(
                        a,
                        vec![one, Complex64::new(0.0, 0.5), Complex64::new(-0.25, 0.0)],
                    ),
                },
            ],
            isometry_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BeurlingConfig {
    pub max_power: usize,
    pub radii: Vec<f64>,
    pub angles: usize,
    pub value_tol: f64,
    pub norm_tol: f64,
    pub fd_step: f64,
    pub fd_tol: f64,
}

impl Default for BeurlingConfig {
    fn default() -> Self {
        Self {
            max_power: 8,
            radii: vec![1.5, 2.0, 5.0],
            angles: 4,
            value_tol: 1e-8,
            norm_tol: 1e-12,
            fd_step: 1e-4,
            fd_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RieszConfig {
    pub levels: usize,
    pub ring_points: usize,
    /// Test ring radius as a multiple of the largest modulus on `∂G_1`.
    pub ring_factor: f64,
    pub spread_tol: f64,
    pub kernel_tol: f64,
}

impl Default for RieszConfig {
    fn default() -> Self {
        Self {
            levels: 4,
            ring_points: 16,
            ring_factor: 1.25,
            spread_tol: 1e-10,
            kernel_tol: 1e-8,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 42,
            catalog: vec![
                CatalogEntry::new("identity", MapKind::Interior, &[(0.0, 0.0), (1.0, 0.0)]),
                CatalogEntry::new(
                    "z+0.3z^2",
                    MapKind::Interior,
                    &[(0.0, 0.0), (1.0, 0.0), (0.3, 0.0)],
                ),
                CatalogEntry::new(
                    "z+0.25z^3",
                    MapKind::Interior,
                    &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.25, 0.0)],
                ),
                CatalogEntry::new("ext:z+0.2/z", MapKind::Exterior, &[(0.0, 0.0), (0.2, 0.0)]),
            ],
            exhaustion: ExhaustionConfig::default(),
            samples: 256,
            quadrature: QuadratureConfig::default(),
            guard: DEFAULT_GUARD,
            tolerances: Tolerances::default(),
            inversion: InversionOptions::default(),
            lemma1: Lemma1Config::default(),
            disk_isometry: DiskIsometryConfig::default(),
            theorem1: Theorem1Config::default(),
            theorem2: Theorem2Config::default(),
            beurling: BeurlingConfig::default(),
            riesz: RieszConfig::default(),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: Config = serde_json::from_str(text)
            .map_err(|e| CliError::Config(format!("malformed config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
            .map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.message())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.catalog.is_empty() {
            return bad("catalog is empty".into());
        }
        if self.exhaustion.levels == 0 || !(self.exhaustion.delta > 0.0) {
            return bad("exhaustion needs levels >= 1 and delta > 0".into());
        }
        for entry in &self.catalog {
            entry.map()?;
            if entry.kind == MapKind::Interior {
                crate::suites::exhaustion(self, entry).map_err(|e| {
                    CliError::Config(format!("catalog entry `{}`: {e}", entry.name))
                })?;
            }
        }
        for name in &self.theorem2.domains {
            if !self.catalog.iter().any(|e| &e.name == name) {
                return bad(format!("theorem2.domains: no catalog entry `{name}`"));
            }
        }
        if self.samples < 2 || self.lemma1.samples < 2 {
            return bad("sample counts must be >= 2".into());
        }
        if 2 * self.lemma1.max_degree + 1 > self.lemma1.samples {
            return bad("lemma1.max_degree must satisfy 2 max_degree + 1 <= samples".into());
        }
        if self.disk_isometry.ring_samples < 2 * self.disk_isometry.max_degree + 4
            || !(self.disk_isometry.ring_radius > 1.0)
        {
            return bad(
                "disk_isometry ring must be outside the disk and resolve max_degree + 1 modes"
                    .into(),
            );
        }
        if self.quadrature.radial == 0 || self.quadrature.angular < 2 {
            return bad("quadrature needs radial >= 1 and angular >= 2".into());
        }
        if self.riesz.levels == 0 || self.riesz.levels > self.exhaustion.levels {
            return bad("riesz.levels must be in 1..=exhaustion.levels".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_default_matches_builtin() {
        let text = include_str!("../config/default.json");
        let shipped = Config::from_json(text).unwrap();
        let builtin = Config::default();
        assert_eq!(
            serde_json::to_value(&shipped).unwrap(),
            serde_json::to_value(&builtin).unwrap()
        );
    }

    #[test]
    fn partial_config_uses_defaults() {
        let c = Config::from_json(r#"{"seed": 7, "samples": 128}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.samples, 128);
        assert_eq!(c.exhaustion.levels, 8);
    }

    #[test]
    fn malformed_config_reports_line() {
        let err = Config::from_json("{\n  \"seed\": 1,\n  \"samples\": \"many\"\n}").unwrap_err();
        assert!(err.message().contains("line 3"), "{}", err.message());
        let err = Config::from_json(r#"{"bogus": 1}"#).unwrap_err();
        assert!(err.message().contains("unknown field"));
    }

    #[test]
    fn non_univalent_catalog_entry_is_rejected() {
        let err = Config::from_json(
            r#"{"catalog": [{"name": "bad", "kind": "interior", "coeffs": [[0,0],[1,0],[0.6,0]]}]}"#,
        )
        .unwrap_err();
        assert!(err.message().contains("bad"));
    }
}
