//! The eight acceptance criteria, each at its stated tolerance. Prints one
//! PASS/FAIL line per criterion (written past the test harness capture).

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use bergman_cli::{Config, Suite, SuiteOutcome};
use bergman_core::{
    cauchy_disk_series, exhaust, make_map, quasicircle_constant, rho_sequence, theorem2_membership,
    CoefficientSeries, Complex64, ConformalMap, DiskQuadrature, InversionOptions, LaurentTail,
    MapKind, Tolerances, DEFAULT_GUARD,
};
use serde_json::Value;

type Check = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn quadratic() -> ConformalMap {
    make_map(
        MapKind::Interior,
        vec![c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)],
    )
    .unwrap()
}

fn run_suite(suite: Suite, config: &Config) -> Result<(SuiteOutcome, Duration), String> {
    let start = Instant::now();
    let out = suite.run(config).map_err(|e| e.to_string())?;
    Ok((out, start.elapsed()))
}

fn records(out: &SuiteOutcome) -> &[Value] {
    out.json["records"]
        .as_array()
        .map(Vec::as_slice)
        .unwrap_or(&[])
}

fn max_field(out: &SuiteOutcome, field: &str) -> f64 {
    records(out)
        .iter()
        .map(|r| r[field].as_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn boundary_identity() -> Check {
    let mut config = Config::default();
    config.lemma1.trials = 100;
    config.lemma1.max_degree = 32;
    config.lemma1.samples = 256;
    config.lemma1.rel_tol = 1e-12;
    let (out, elapsed) = run_suite(Suite::Lemma1, &config)?;
    ensure(out.passed(), format!("{:?}", out.first_failure))?;
    ensure(records(&out).len() == 100, "expected 100 trials")?;
    let worst = max_field(&out, "rel_error");
    ensure(worst <= 1e-12, format!("max rel error {worst:e}"))?;
    ensure(
        elapsed < Duration::from_secs(5),
        format!("runtime {elapsed:?}"),
    )?;
    Ok(format!(
        "100 trials, max rel error {worst:.2e}, {elapsed:.2?}"
    ))
}

fn disk_isometry() -> Check {
    let mut config = Config::default();
    let c = &mut config.disk_isometry;
    c.trials = 50;
    c.max_degree = 16;
    c.coeff_rel_tol = 1e-12;
    c.quad_rel_tol = 1e-6;
    config.quadrature.radial = 64;
    config.quadrature.angular = 128;
    let (out, elapsed) = run_suite(Suite::DiskIsometry, &config)?;
    ensure(out.passed(), format!("{:?}", out.first_failure))?;
    ensure(records(&out).len() == 50, "expected 50 trials")?;
    let coeff = max_field(&out, "coeff_rel_error");
    let quad = max_field(&out, "quad_rel_error");
    ensure(
        coeff <= 1e-12 && quad <= 1e-6,
        format!("{coeff:e} / {quad:e}"),
    )?;
    ensure(
        elapsed < Duration::from_secs(30),
        format!("runtime {elapsed:?}"),
    )?;
    Ok(format!(
        "50 polynomials, coefficient {coeff:.2e}, quadrature {quad:.2e}, {elapsed:.2?}"
    ))
}

fn necessary_bound() -> Check {
    let mut config = Config::default();
    config.catalog.retain(|e| e.kind == MapKind::Interior);
    config.exhaustion.levels = 8;
    config.samples = 256;
    config.theorem1.max_power = 3;
    config.tolerances.theorem1_rel = 1e-6;
    config.tolerances.theorem1_abs = 1e-8;
    let names: Vec<_> = config.catalog.iter().map(|e| e.name.as_str()).collect();
    ensure(
        names == ["identity", "z+0.3z^2", "z+0.25z^3"],
        format!("catalog {names:?}"),
    )?;
    let (out, _) = run_suite(Suite::Theorem1, &config)?;
    ensure(out.passed(), format!("{:?}", out.first_failure))?;
    ensure(
        records(&out).len() == 3 * 4 * 8,
        "expected 96 level records",
    )?;
    let worst_ratio = records(&out)
        .iter()
        .map(|r| r["ratio"].as_f64().unwrap())
        .fold(0.0, f64::max);

    // Closed form on the disk: γ = Kz = -1/(2ζ²) gives ρ_n = √(π/2)/r_n².
    let ex = exhaust(&ConformalMap::identity(), 8, config.exhaustion.delta)
        .map_err(|e| e.to_string())?;
    let gamma = cauchy_disk_series(&CoefficientSeries::monomial(1));
    let levels = rho_sequence(&gamma, &ex, 256, DEFAULT_GUARD).map_err(|e| e.to_string())?;
    let spot = levels
        .iter()
        .map(|l| ((PI / 2.0).sqrt() / (l.radius * l.radius) - l.rho).abs())
        .fold(0.0, f64::max);
    ensure(spot <= 1e-10, format!("closed form error {spot:e}"))?;
    Ok(format!(
        "96 levels bounded, max rho_n/||g|| = {worst_ratio:.6}, closed form {spot:.1e}"
    ))
}

fn loop_closure() -> Check {
    let phi = quadratic();
    let ex = exhaust(&phi, 8, 0.15).map_err(|e| e.to_string())?;
    let rule = DiskQuadrature::default();
    let opts = InversionOptions {
        degree: 12,
        ..InversionOptions::default()
    };
    let tol = Tolerances::default();
    let a = c(0.1, 0.0);
    let gammas = [
        ("1/(z-0.1)", LaurentTail::new(a, vec![c(1.0, 0.0)])),
        (
            "1/(z-0.1)^2",
            LaurentTail::new(a, vec![c(0.0, 0.0), c(1.0, 0.0)]),
        ),
        (
            "mixed",
            LaurentTail::new(a, vec![c(1.0, 0.0), c(0.0, 0.5), c(-0.25, 0.0)]),
        ),
    ];
    let mut summary = Vec::new();
    for (name, gamma) in &gammas {
        let r = theorem2_membership(gamma, &ex, None, &rule, 256, &opts, &tol, DEFAULT_GUARD)
            .map_err(|e| format!("{name}: {e}"))?;
        let residual = r.inversion_residual.unwrap();
        let holdout = r.holdout_error.unwrap();
        let inverse = r.inverse_norm.unwrap();
        ensure(residual < 1e-6, format!("{name}: residual {residual:e}"))?;
        ensure(
            holdout < 1e-5,
            format!("{name}: held-out error {holdout:e}"),
        )?;
        for l in &r.levels {
            ensure(
                l.rho <= inverse * (1.0 + 1e-3),
                format!("{name}: rho_{} = {} > {inverse}", l.n, l.rho),
            )?;
        }
        summary.push(format!("{name} res {residual:.1e} held-out {holdout:.1e}"));
    }
    Ok(summary.join("; "))
}

fn beurling() -> Check {
    let mut config = Config::default();
    let b = &mut config.beurling;
    b.max_power = 8;
    b.radii = vec![1.5, 2.0, 5.0];
    b.value_tol = 1e-8;
    b.norm_tol = 1e-12;
    b.fd_step = 1e-4;
    b.fd_tol = 1e-6;
    let (out, _) = run_suite(Suite::Beurling, &config)?;
    ensure(out.passed(), format!("{:?}", out.first_failure))?;
    let s = &out.json["summary"];
    Ok(format!(
        "oracle {:.1e}, norms {:.1e}, finite difference {:.1e}",
        s["max_oracle_error"].as_f64().unwrap(),
        s["max_norm_rel_error"].as_f64().unwrap(),
        s["max_fd_error"].as_f64().unwrap()
    ))
}

fn riesz() -> Check {
    let mut config = Config::default();
    config.riesz.levels = 4;
    config.riesz.ring_points = 16;
    config.riesz.spread_tol = 1e-10;
    config.riesz.kernel_tol = 1e-8;
    let (out, _) = run_suite(Suite::Riesz, &config)?;
    ensure(out.passed(), format!("{:?}", out.first_failure))?;
    let s = &out.json["summary"];
    Ok(format!(
        "level spread {:.1e}, kernel identity {:.1e}",
        s["max_level_spread"].as_f64().unwrap(),
        s["max_kernel_error"].as_f64().unwrap()
    ))
}

fn quasicircle() -> Check {
    let circle = ConformalMap::identity()
        .boundary_points(1.0, 512)
        .map_err(|e| e.to_string())?;
    let k_circle = quasicircle_constant(&circle).map_err(|e| e.to_string())?;
    ensure(
        (k_circle - 1.0).abs() <= 1e-3,
        format!("unit circle {k_circle}"),
    )?;
    let phi = quadratic();
    let k = |m| {
        phi.boundary_points(1.0, m)
            .and_then(|p| quasicircle_constant(&p))
            .map_err(|e| e.to_string())
    };
    let (coarse, fine) = (k(512)?, k(1024)?);
    let change = (fine - coarse).abs() / fine;
    ensure(change <= 0.02, format!("{coarse} -> {fine}"))?;
    Ok(format!(
        "circle {k_circle:.6}, z+0.3z^2 {coarse:.6} -> {fine:.6} ({:.3}%)",
        100.0 * change
    ))
}

fn determinism() -> Check {
    let run = |dir: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_bergman"))
            .args(["all", "--seed", "42", "--quiet", "--out"])
            .arg(dir)
            .env_remove("BERGMAN_OUT_DIR")
            .status()
            .map_err(|e| e.to_string())
    };
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    for dir in [&a, &b] {
        let status = run(dir.path())?;
        ensure(status.success(), format!("`all` exited with {status}"))?;
    }
    let mut bytes = 0;
    for suite in Suite::ALL {
        let name = format!("{}.csv", suite.name());
        let x = std::fs::read(a.path().join(&name)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.path().join(&name)).map_err(|e| e.to_string())?;
        ensure(x == y, format!("{name} differs"))?;
        bytes += x.len();
    }
    Ok(format!("6 CSV reports identical ({bytes} bytes)"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("boundary norm identity", boundary_identity),
        ("disk isometry", disk_isometry),
        ("necessary bound", necessary_bound),
        ("inversion loop closure", loop_closure),
        ("beurling off-support", beurling),
        ("riesz functional", riesz),
        ("quasicircle constant", quasicircle),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout().lock();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(detail) => format!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("FAIL criterion {} ({name}): {why}", i + 1)
            }
        };
        writeln!(stdout, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
