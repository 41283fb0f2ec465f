use std::f64::consts::PI;
use std::time::Instant;

use bergman_core::{
    b21_exterior_norm, b21_norm_contour, b21_norm_exterior_quadrature, b2_disk_norm,
    bergman_norm_on_domain, beurling_offsupport, boundary_cauchy_integral, build_rule,
    cauchy_disk_series, cauchy_disk_series_inverse, cauchy_quadrature, exhaust, integrate_disk,
    make_map, rho_seminorm, riesz_functional, theorem1_bound_check, theorem2_membership,
    BoundaryFunction, CauchyKernel, CoefficientSeries, Complex64, ConformalMap, DiskQuadrature,
    ExhaustionSequence, Holomorphic, LaurentTail, MapKind, PushForward, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{CatalogEntry, Config};
use crate::report::{Recorder, SuiteOutcome};
use crate::CliError;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    DiskIsometry,
    Theorem1,
    Theorem2,
    Beurling,
    Riesz,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Lemma1,
        Suite::DiskIsometry,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Beurling,
        Suite::Riesz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "verify-lemma1",
            Suite::DiskIsometry => "verify-disk-isometry",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Beurling => "beurling",
            Suite::Riesz => "riesz",
        }
    }

    /// CSV header; columns are fixed per suite.
    pub fn csv_header(self) -> &'static str {
        match self {
            Suite::Lemma1 => "trial,degree,rho,b21_norm,rel_error,pass",
            Suite::DiskIsometry => {
                "trial,degree,g_norm,kg_norm,coeff_rel_error,inverse_error,g_norm_quad,kg_norm_quad,quad_rel_error,pass"
            }
            Suite::Theorem1 => "domain,g,n,r_n,rho_n,ref_norm,ratio,pass",
            Suite::Theorem2 => "domain,gamma,n,r_n,rho_n,ref_norm,inverse_norm,ratio,pass",
            Suite::Beurling => {
                "k,radius,j,zeta_re,zeta_im,value_re,value_im,oracle_error,fd_error,norm_exterior_sq,norm_disk_sq,pass"
            }
            Suite::Riesz => "domain,gamma,check,index,value_re,value_im,error,pass",
        }
    }

    pub fn run(self, config: &Config) -> Result<SuiteOutcome, CliError> {
        let start = Instant::now();
        let mut rec = Recorder::new(self.csv_header());
        let summary = match self {
            Suite::Lemma1 => lemma1(config, &mut rec),
            Suite::DiskIsometry => disk_isometry(config, &rule(config)?, &mut rec),
            Suite::Theorem1 => theorem1(config, &rule(config)?, &mut rec),
            Suite::Theorem2 => theorem2(config, &rule(config)?, &mut rec),
            Suite::Beurling => beurling(config, &rule(config)?, &mut rec),
            Suite::Riesz => riesz(config, &mut rec),
        };
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(rec.finish(self, config.seed, summary, elapsed_ms))
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

fn rule(config: &Config) -> Result<DiskQuadrature, CliError> {
    build_rule(config.quadrature.radial, config.quadrature.angular)
        .map_err(|e| CliError::Config(format!("quadrature: {e}")))
}

/// Independent stream per suite, so results do not depend on run order.
fn rng_for(seed: u64, suite: Suite) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite as u64);
    rng
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub(crate) fn exhaustion(
    config: &Config,
    entry: &CatalogEntry,
) -> bergman_core::Result<ExhaustionSequence> {
    let map = make_map(entry.kind, entry.coeffs.clone())?;
    exhaust(
        &map,
        config.exhaustion.levels,
        entry.delta.unwrap_or(config.exhaustion.delta),
    )
}

fn interior_entries(config: &Config) -> impl Iterator<Item = &CatalogEntry> {
    config
        .catalog
        .iter()
        .filter(|e| e.kind == MapKind::Interior)
}

fn rel(err: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        if err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        err / scale
    }
}

fn monomial_label(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "z".into(),
        _ => format!("z^{k}"),
    }
}

#[derive(Serialize)]
struct Lemma1Record {
    trial: usize,
    degree: usize,
    rho: f64,
    b21_norm: f64,
    rel_error: f64,
    pass: bool,
}

fn lemma1_trial(m: usize, modes: Vec<(i64, Complex64)>) -> bergman_core::Result<(f64, f64)> {
    let samples = BoundaryFunction::from_modes(m, modes)?.to_samples();
    let f = BoundaryFunction::from_samples(samples.values().to_vec())?.to_modes();
    let rho = rho_seminorm(&f);
    let norm = b21_exterior_norm(&boundary_cauchy_integral(&f))?;
    Ok((rho, norm))
}

fn lemma1(config: &Config, rec: &mut Recorder) -> Value {
    let c = &config.lemma1;
    let mut rng = rng_for(config.seed, Suite::Lemma1);
    let mut worst = 0.0f64;
    for trial in 0..c.trials {
        let degree = rng.gen_range(0..=c.max_degree);
        let d = degree as i64;
        let modes: Vec<_> = (-d..=d).map(|k| (k, random_complex(&mut rng))).collect();
        match lemma1_trial(c.samples, modes) {
            Ok((rho, b21_norm)) => {
                let err = (rho - b21_norm).abs();
                let pass = err <= c.rel_tol * rho;
                let r = Lemma1Record {
                    trial,
                    degree,
                    rho,
                    b21_norm,
                    rel_error: rel(err, rho),
                    pass,
                };
                worst = worst.max(r.rel_error);
                let row = format!("{trial},{degree},{rho},{b21_norm},{},{pass}", r.rel_error);
                rec.push(&r, row, pass, || {
                    format!(
                        "trial={trial} degree={degree}: |rho - ||F||| = {err} > {} * rho",
                        c.rel_tol
                    )
                });
            }
            Err(e) => rec.fail(format!("trial={trial}: {e}")),
        }
    }
    json!({
        "trials": c.trials,
        "max_degree": c.max_degree,
        "samples": c.samples,
        "rel_tol": c.rel_tol,
        "max_rel_error": worst,
    })
}

#[derive(Serialize)]
struct IsometryRecord {
    trial: usize,
    degree: usize,
    g_norm: f64,
    kg_norm: f64,
    coeff_rel_error: f64,
    inverse_error: f64,
    g_norm_quad: f64,
    kg_norm_quad: f64,
    quad_rel_error: f64,
    pass: bool,
}

fn isometry_trial(
    config: &Config,
    rule: &DiskQuadrature,
    trial: usize,
    g: &CoefficientSeries,
) -> bergman_core::Result<IsometryRecord> {
    let c = &config.disk_isometry;
    let id = ConformalMap::identity();
    let kg = cauchy_disk_series(g);
    let g_norm = b2_disk_norm(g);
    let kg_norm = b21_exterior_norm(&kg)?;
    let coeff_rel_error = rel((kg_norm - g_norm).abs(), g_norm);

    let back = cauchy_disk_series_inverse(&kg)?;
    let scale = g.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let inverse_error = rel(
        g.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (c - back.coeffs.get(k).copied().unwrap_or(ZERO)).norm())
            .fold(0.0, f64::max),
        scale,
    );

    let g_norm_quad = bergman_norm_on_domain(|z| g.evaluate(z), &id, rule)?;
    // Kg sampled by area quadrature on a ring, then F_k = R^k · mode_{-k}.
    let mut values = Vec::with_capacity(c.ring_samples);
    for j in 0..c.ring_samples {
        let theta = 2.0 * PI * j as f64 / c.ring_samples as f64;
        let zeta = Complex64::from_polar(c.ring_radius, theta);
        values.push(cauchy_quadrature(
            |w| g.evaluate(w),
            &id,
            zeta,
            rule,
            config.guard,
        )?);
    }
    let f = BoundaryFunction::from_samples(values)?.to_modes();
    let tail: Vec<_> = (1..=c.max_degree as i64 + 1)
        .map(|k| f.mode(-k) * c.ring_radius.powi(k as i32))
        .collect();
    let kg_norm_quad = b21_exterior_norm(&LaurentTail::at_origin(tail))?;
    let quad_rel_error = rel(
        (g_norm_quad - kg_norm)
            .abs()
            .max((kg_norm_quad - g_norm).abs()),
        g_norm,
    );
    let pass = coeff_rel_error <= c.coeff_rel_tol
        && inverse_error <= c.coeff_rel_tol
        && quad_rel_error <= c.quad_rel_tol;
    Ok(IsometryRecord {
        trial,
        degree: g.coeffs.len() - 1,
        g_norm,
        kg_norm,
        coeff_rel_error,
        inverse_error,
        g_norm_quad,
        kg_norm_quad,
        quad_rel_error,
        pass,
    })
}

fn disk_isometry(config: &Config, rule: &DiskQuadrature, rec: &mut Recorder) -> Value {
    let c = &config.disk_isometry;
    let mut rng = rng_for(config.seed, Suite::DiskIsometry);
    let (mut worst_coeff, mut worst_quad) = (0.0f64, 0.0f64);
    for trial in 0..c.trials {
        let degree = rng.gen_range(0..=c.max_degree);
        let g = CoefficientSeries::new((0..=degree).map(|_| random_complex(&mut rng)).collect());
        match isometry_trial(config, rule, trial, &g) {
            Ok(r) => {
                worst_coeff = worst_coeff.max(r.coeff_rel_error.max(r.inverse_error));
                worst_quad = worst_quad.max(r.quad_rel_error);
                let row = format!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.trial,
                    r.degree,
                    r.g_norm,
                    r.kg_norm,
                    r.coeff_rel_error,
                    r.inverse_error,
                    r.g_norm_quad,
                    r.kg_norm_quad,
                    r.quad_rel_error,
                    r.pass
                );
                let label = format!(
                    "trial={trial} degree={degree}: coeff_rel_error={} inverse_error={} quad_rel_error={}",
                    r.coeff_rel_error, r.inverse_error, r.quad_rel_error
                );
                rec.push(&r, row, r.pass, || label);
            }
            Err(e) => rec.fail(format!("trial={trial}: {e}")),
        }
    }
    json!({
        "trials": c.trials,
        "max_degree": c.max_degree,
        "quadrature": config.quadrature,
        "max_coeff_rel_error": worst_coeff,
        "max_quad_rel_error": worst_quad,
    })
}

#[derive(Serialize)]
struct Theorem1Record<'a> {
    domain: &'a str,
    g: &'a str,
    n: usize,
    r_n: f64,
    rho_n: f64,
    ref_norm: f64,
    ratio: f64,
    bridge_norm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_error: Option<f64>,
    pass: bool,
}

fn theorem1(config: &Config, rule: &DiskQuadrature, rec: &mut Recorder) -> Value {
    let tol = &config.tolerances;
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for entry in &config.catalog {
        if entry.kind != MapKind::Interior {
            skipped.push(entry.name.clone());
            continue;
        }
        let ex = match exhaustion(config, entry) {
            Ok(ex) => ex,
            Err(e) => {
                rec.fail(format!("domain={}: {e}", entry.name));
                continue;
            }
        };
        for k in 0..=config.theorem1.max_power {
            let g_label = monomial_label(k);
            let g = CoefficientSeries::monomial(k);
            let report =
                match theorem1_bound_check(&g, &ex, rule, config.samples, tol, config.guard) {
                    Ok(r) => r.with_labels(&entry.name, &g_label),
                    Err(e) => {
                        rec.fail(format!("domain={} g={g_label}: {e}", entry.name));
                        continue;
                    }
                };
            let limit = report.reference_norm * (1.0 + tol.theorem1_rel) + tol.theorem1_abs;
            let spot = ex.base().is_identity() && k == 1;
            for level in &report.levels {
                let closed_form_error = spot
                    .then(|| ((PI / 2.0).sqrt() / (level.radius * level.radius) - level.rho).abs());
                let pass = level.rho.is_finite()
                    && level.rho <= limit
                    && closed_form_error.is_none_or(|e| e <= config.theorem1.closed_form_tol);
                let r = Theorem1Record {
                    domain: &entry.name,
                    g: &g_label,
                    n: level.n,
                    r_n: level.radius,
                    rho_n: level.rho,
                    ref_norm: report.reference_norm,
                    ratio: rel(level.rho, report.reference_norm),
                    bridge_norm: level.bridge_norm,
                    closed_form_error,
                    pass,
                };
                let row = format!(
                    "{},{},{},{},{},{},{},{}",
                    r.domain, r.g, r.n, r.r_n, r.rho_n, r.ref_norm, r.ratio, r.pass
                );
                rec.push(&r, row, pass, || {
                    format!(
                        "domain={} g={g_label} n={}: rho_n={} bound={limit} closed_form_error={closed_form_error:?}",
                        entry.name, level.n, level.rho
                    )
                });
            }
            rec.check(report.verdict == Verdict::Bounded, || {
                format!("domain={} g={g_label}: verdict inconclusive", entry.name)
            });
            reports.push(report);
        }
    }
    json!({ "reports": reports, "skipped_exterior_domains": skipped })
}

#[derive(Serialize)]
struct Theorem2Record<'a> {
    domain: &'a str,
    gamma: &'a str,
    n: usize,
    r_n: f64,
    rho_n: f64,
    ref_norm: f64,
    inverse_norm: f64,
    ratio: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ExteriorCheck<'a> {
    domain: &'a str,
    gamma: &'a str,
    quadrature_norm: f64,
    reference: f64,
    rel_error: f64,
    pass: bool,
}

fn theorem2(config: &Config, rule: &DiskQuadrature, rec: &mut Recorder) -> Value {
    let tol = &config.tolerances;
    let selected = |name: &str| {
        config.theorem2.domains.is_empty() || config.theorem2.domains.iter().any(|d| d == name)
    };
    let mut reports = Vec::new();
    for entry in interior_entries(config).filter(|e| selected(&e.name)) {
        let ex = match exhaustion(config, entry) {
            Ok(ex) => ex,
            Err(e) => {
                rec.fail(format!("domain={}: {e}", entry.name));
                continue;
            }
        };
        for named in &config.theorem2.gammas {
            let label = |msg: String| format!("domain={} gamma={}: {msg}", entry.name, named.name);
            let report = match theorem2_membership(
                &named.tail,
                &ex,
                None,
                rule,
                config.samples,
                &config.inversion,
                tol,
                config.guard,
            ) {
                Ok(r) => r.with_labels(&entry.name, &named.name),
                Err(e) => {
                    rec.fail(label(e.to_string()));
                    continue;
                }
            };
            let inverse_norm = report.bound;
            let limit = inverse_norm * (1.0 + tol.theorem2_rel);
            for level in &report.levels {
                let pass = level.rho.is_finite() && level.rho <= limit;
                let r = Theorem2Record {
                    domain: &entry.name,
                    gamma: &named.name,
                    n: level.n,
                    r_n: level.radius,
                    rho_n: level.rho,
                    ref_norm: report.reference_norm,
                    inverse_norm,
                    ratio: rel(level.rho, inverse_norm),
                    pass,
                };
                let row = format!(
                    "{},{},{},{},{},{},{},{},{}",
                    r.domain,
                    r.gamma,
                    r.n,
                    r.r_n,
                    r.rho_n,
                    r.ref_norm,
                    r.inverse_norm,
                    r.ratio,
                    r.pass
                );
                rec.push(&r, row, pass, || {
                    label(format!("n={}: rho_n={} > {limit}", level.n, level.rho))
                });
            }
            let residual = report.inversion_residual.unwrap_or(f64::NAN);
            let holdout = report.holdout_error.unwrap_or(f64::NAN);
            rec.check(residual <= tol.residual, || {
                label(format!("inversion residual {residual} > {}", tol.residual))
            });
            rec.check(holdout <= tol.holdout, || {
                label(format!("held-out error {holdout} > {}", tol.holdout))
            });
            rec.check(report.verdict == Verdict::Bounded, || {
                label("verdict inconclusive".into())
            });
            reports.push(report);
        }
    }

    // Exterior-described domains: the pushforward isometry and the two
    // independent routes to ‖γ‖_{B₂¹(ℂ∖Ḡ)}.
    let mut exterior = Vec::new();
    for entry in config
        .catalog
        .iter()
        .filter(|e| e.kind == MapKind::Exterior && selected(&e.name))
    {
        let psi = match entry.map() {
            Ok(psi) => psi,
            Err(e) => {
                rec.fail(e.message());
                continue;
            }
        };
        let tol_iso = config.theorem2.isometry_tol;
        let mut push = |gamma: &str,
                        q: bergman_core::Result<f64>,
                        reference: bergman_core::Result<f64>| {
            match (q, reference) {
                (Ok(q), Ok(reference)) => {
                    let rel_error = rel((q - reference).abs(), reference);
                    let pass = rel_error <= tol_iso;
                    rec.check(pass, || {
                        format!(
                            "domain={} gamma={gamma}: exterior norm {q} vs {reference} (rel {rel_error})",
                            entry.name
                        )
                    });
                    exterior.push(
                        serde_json::to_value(ExteriorCheck {
                            domain: &entry.name,
                            gamma,
                            quadrature_norm: q,
                            reference,
                            rel_error,
                            pass,
                        })
                        .expect("check serializes"),
                    );
                }
                (Err(e), _) | (_, Err(e)) => {
                    rec.fail(format!("domain={} gamma={gamma}: {e}", entry.name))
                }
            }
        };
        let unit = LaurentTail::at_origin(vec![ONE]);
        let pushed = PushForward::new(unit, psi.clone());
        match pushed {
            Ok(p) => push(
                "pushforward(1/z)",
                b21_norm_exterior_quadrature(&p, &psi, rule),
                Ok(PI.sqrt()),
            ),
            Err(e) => push("pushforward(1/z)", Err(e), Ok(0.0)),
        }
        for named in &config.theorem2.gammas {
            push(
                &named.name,
                b21_norm_exterior_quadrature(&named.tail, &psi, rule),
                b21_norm_contour(&named.tail, &psi, config.samples.max(256)),
            );
        }
    }
    json!({ "reports": reports, "exterior_isometry": exterior })
}

#[derive(Serialize)]
struct BeurlingRecord {
    k: usize,
    radius: f64,
    j: usize,
    zeta: Complex64,
    value: Complex64,
    oracle_error: f64,
    fd_error: f64,
    norm_exterior_sq: f64,
    norm_disk_sq: f64,
    pass: bool,
}

fn beurling_norms(k: usize, rule: &DiskQuadrature) -> bergman_core::Result<(f64, f64)> {
    // 𝕋(z̄^k) = ζ^{-(k+2)} off the disk is the derivative of -ζ^{-(k+1)}/(k+1).
    let mut tail = vec![ZERO; k + 1];
    tail[k] = Complex64::new(-1.0 / (k as f64 + 1.0), 0.0);
    let id = make_map(MapKind::Exterior, vec![ZERO])?;
    let exterior = b21_norm_exterior_quadrature(&LaurentTail::at_origin(tail), &id, rule)?;
    let disk = integrate_disk(rule, |z| Complex64::new(z.norm_sqr().powi(k as i32), 0.0))?.re;
    Ok((exterior * exterior, disk))
}

fn beurling_point(
    k: usize,
    zeta: Complex64,
    config: &Config,
    rule: &DiskQuadrature,
) -> bergman_core::Result<(Complex64, f64, f64)> {
    let id = ConformalMap::identity();
    let mut density = vec![ZERO; k + 1];
    density[k] = ONE;
    let value = beurling_offsupport(&density, zeta, config.guard)?;
    let oracle = integrate_disk(rule, |z| {
        z.conj().powu(k as u32) / ((z - zeta) * (z - zeta))
    })? / PI;
    let g = CoefficientSeries::monomial(k);
    let h = config.beurling.fd_step;
    let kg = |z| cauchy_quadrature(|w| g.evaluate(w), &id, z, rule, config.guard);
    let fd = (kg(zeta + h)? - kg(zeta - h)?) / (2.0 * h);
    Ok((value, (value - oracle).norm(), (value - fd).norm()))
}

fn beurling(config: &Config, rule: &DiskQuadrature, rec: &mut Recorder) -> Value {
    let c = &config.beurling;
    let (mut worst_oracle, mut worst_fd, mut worst_norm) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..=c.max_power {
        let exact = PI / (k as f64 + 1.0);
        let (ext, disk) = match beurling_norms(k, rule) {
            Ok(v) => v,
            Err(e) => {
                rec.fail(format!("k={k}: {e}"));
                continue;
            }
        };
        let norm_error = rel((ext - exact).abs().max((disk - exact).abs()), exact);
        worst_norm = worst_norm.max(norm_error);
        rec.check(norm_error <= c.norm_tol, || {
            format!("k={k}: norm bookkeeping {ext} / {disk} vs {exact}")
        });
        for &radius in &c.radii {
            for j in 0..c.angles {
                let zeta =
                    Complex64::from_polar(radius, 0.3 + 2.0 * PI * j as f64 / c.angles as f64);
                match beurling_point(k, zeta, config, rule) {
                    Ok((value, oracle_error, fd_error)) => {
                        worst_oracle = worst_oracle.max(oracle_error);
                        worst_fd = worst_fd.max(fd_error);
                        let pass = oracle_error <= c.value_tol
                            && fd_error <= c.fd_tol
                            && norm_error <= c.norm_tol;
                        let r = BeurlingRecord {
                            k,
                            radius,
                            j,
                            zeta,
                            value,
                            oracle_error,
                            fd_error,
                            norm_exterior_sq: ext,
                            norm_disk_sq: disk,
                            pass,
                        };
                        let row = format!(
                            "{k},{radius},{j},{},{},{},{},{oracle_error},{fd_error},{ext},{disk},{pass}",
                            zeta.re, zeta.im, value.re, value.im
                        );
                        rec.push(&r, row, pass, || {
                            format!("k={k} zeta={zeta}: oracle_error={oracle_error} fd_error={fd_error}")
                        });
                    }
                    Err(e) => rec.fail(format!("k={k} zeta={zeta}: {e}")),
                }
            }
        }
    }
    json!({
        "max_oracle_error": worst_oracle,
        "max_fd_error": worst_fd,
        "max_norm_rel_error": worst_norm,
    })
}

#[derive(Serialize)]
struct RieszRecord<'a> {
    domain: &'a str,
    gamma: &'a str,
    check: &'static str,
    index: usize,
    value: Complex64,
    error: f64,
    pass: bool,
}

fn riesz(config: &Config, rec: &mut Recorder) -> Value {
    let c = &config.riesz;
    let m = config.samples;
    let h = CoefficientSeries::new(vec![ONE, ZERO, Complex64::new(0.5, -0.5)]);
    let (mut worst_spread, mut worst_kernel) = (0.0f64, 0.0f64);
    for entry in interior_entries(config) {
        let ex = match exhaustion(config, entry) {
            Ok(ex) => ex,
            Err(e) => {
                rec.fail(format!("domain={}: {e}", entry.name));
                continue;
            }
        };
        let outer = ex
            .level_map(1)
            .and_then(|phi| phi.boundary_points(1.0, m))
            .map(|pts| pts.iter().map(|z| z.norm()).fold(0.0, f64::max));
        for named in &config.theorem2.gammas {
            let gamma = &named.tail;
            let emit = |rec: &mut Recorder,
                        check: &'static str,
                        index: usize,
                        value: Complex64,
                        error: f64,
                        limit: f64| {
                let pass = error <= limit;
                let r = RieszRecord {
                    domain: &entry.name,
                    gamma: &named.name,
                    check,
                    index,
                    value,
                    error,
                    pass,
                };
                let row = format!(
                    "{},{},{check},{index},{},{},{error},{pass}",
                    entry.name, named.name, value.re, value.im
                );
                rec.push(&r, row, pass, || {
                    format!(
                        "domain={} gamma={} {check} {index}: error {error} > {limit}",
                        entry.name, named.name
                    )
                });
            };
            let mut first = None;
            for n in 1..=c.levels {
                match riesz_functional(gamma, &h, &ex, n, m, config.guard) {
                    Ok(v) => {
                        let base = *first.get_or_insert(v);
                        let spread = (v - base).norm();
                        worst_spread = worst_spread.max(spread);
                        emit(rec, "level", n, v, spread, c.spread_tol);
                    }
                    Err(e) => rec.fail(format!(
                        "domain={} gamma={} n={n}: {e}",
                        entry.name, named.name
                    )),
                }
            }
            let radius = match &outer {
                Ok(r) => c.ring_factor * r,
                Err(e) => {
                    rec.fail(format!("domain={}: {e}", entry.name));
                    continue;
                }
            };
            for j in 0..c.ring_points {
                let zeta =
                    Complex64::from_polar(radius, 2.0 * PI * j as f64 / c.ring_points as f64);
                let value =
                    riesz_functional(gamma, &CauchyKernel::new(zeta), &ex, 1, m, config.guard);
                match value {
                    Ok(v) => {
                        let error = (v + gamma.eval(zeta)).norm();
                        worst_kernel = worst_kernel.max(error);
                        emit(rec, "kernel", j, v, error, c.kernel_tol);
                    }
                    Err(e) => rec.fail(format!(
                        "domain={} gamma={} j={j}: {e}",
                        entry.name, named.name
                    )),
                }
            }
        }
    }
    json!({
        "levels": c.levels,
        "ring_points": c.ring_points,
        "max_level_spread": worst_spread,
        "max_kernel_error": worst_kernel,
    })
}
