//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use unruh::commands::{self, ORACLE_TOL, STATICITY_TOL, STRESS_TOL};
use unruh::config::{GridConfig, RunConfig};
use unruh::output::Status;
use unruh_core::{
    delta_two_point, ode_residual, oracle_noise_spectrum, Drive, ModeSet, ModelParams, QuadratureSpec,
    SpacetimePoint, TauGrid,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn config(a: f64, omega0: f64, gamma: f64) -> RunConfig {
    let mut c = RunConfig::default();
    c.model.a = a;
    c.model.omega0 = omega0;
    c.model.coupling = (4.0 * gamma).sqrt();
    c
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.2?} of {:.0?}", elapsed, limit))
}

fn fdr_identity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let a = rng.random_range(0.2..5.0);
        let omega0 = rng.random_range(0.1..10.0);
        let gamma = omega0 * rng.random_range(0.001..0.9);
        let report = commands::fdr_check(&config(a, omega0, gamma)).expect("valid parameters");
        assert_eq!(report.n_omega, 100_000);
        worst = worst.max(report.max_residual);
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    outcome(worst <= 1e-12 && fast, format!("max normalized residual {worst:.2e}, {time}"))
}

fn causality_zero() -> Outcome {
    let mut rng = StdRng::seed_from_u64(12);
    let params = ModelParams::from_gamma(1.0, 2.0, 0.1).unwrap();
    let spec = QuadratureSpec::default();
    let point = |rng: &mut StdRng| loop {
        let u: f64 = rng.random_range(-5.0..5.0);
        let v: f64 = rng.random_range(-5.0..-1e-3);
        if u.abs() > 1e-3 && (1.0 + u * v).abs() > 1e-6 {
            return SpacetimePoint { u, v };
        }
    };
    let start = Instant::now();
    let mut bad = 0;
    for _ in 0..1000 {
        let (p, q) = (point(&mut rng), point(&mut rng));
        let r = delta_two_point(p, q, &params, &spec).expect("valid points");
        if r.value.re != 0.0 || r.value.im != 0.0 || r.evaluations != 0 {
            bad += 1;
        }
    }
    let (fast, time) = within(start.elapsed(), Duration::from_secs(1));
    outcome(bad == 0 && fast, format!("{bad} of 1000 pairs nonzero or evaluated, {time}"))
}

/// Runs both stress grids once; criteria 3 and 4 share the records.
fn stress_grids() -> Vec<(RunConfig, Vec<unruh::output::GridRecord>, Duration)> {
    [(1.0, 2.0, 0.1), (2.0, 1.0, 0.3)]
        .into_iter()
        .map(|(a, omega0, gamma)| {
            let mut c = config(a, omega0, gamma);
            c.grid = GridConfig {
                u_min: -3.0 / a,
                u_max: 3.0 / a,
                v_min: -3.0 / a,
                v_max: 3.0 / a,
                n_u: 20,
                n_v: 20,
            };
            let start = Instant::now();
            let records = commands::stress_grid(&c).expect("grid evaluates");
            (c, records, start.elapsed())
        })
        .collect()
}

fn stress_vanishing(grids: &[(RunConfig, Vec<unruh::output::GridRecord>, Duration)]) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    let mut total = Duration::ZERO;
    for (c, records, elapsed) in grids {
        let ok = records.iter().filter(|r| r.status == Status::Ok).count();
        let failed = records.iter().filter(|r| r.status == Status::ConvergenceFailure).count();
        let max = commands::max_stress(records, c.model.a);
        passed &= records.len() == 400 && failed == 0 && ok > 0 && max <= STRESS_TOL;
        total += *elapsed;
        parts.push(format!("a={}: {ok} ok cells, {failed} failed, max |T|/a² {max:.1e}", c.model.a));
    }
    let (fast, time) = within(total, Duration::from_secs(300));
    outcome(passed && fast, format!("{}; {time}", parts.join("; ")))
}

fn t_uv_zero(grids: &[(RunConfig, Vec<unruh::output::GridRecord>, Duration)]) -> Outcome {
    let values: Vec<f64> = grids
        .iter()
        .flat_map(|(_, records, _)| records.iter())
        .filter(|r| r.status == Status::Ok)
        .map(|r| r.t_uv.expect("ok cells carry t_uv"))
        .collect();
    let nonzero = values.iter().filter(|&&t| t != 0.0).count();
    outcome(nonzero == 0, format!("{} cells, {nonzero} with t_uv != 0", values.len()))
}

fn world_tube_flux() -> Outcome {
    let start = Instant::now();
    let r = commands::flux(&RunConfig::default()).expect("default tube is valid");
    let (fast, time) = within(start.elapsed(), Duration::from_secs(120));
    outcome(
        r.passed() && fast,
        format!("flux {:.2e}, bound {:.2e}, {time}", r.value, r.bound),
    )
}

fn polarization() -> Outcome {
    let mut c = RunConfig::default();
    c.polarization.products = vec![-4.0, -2.0, -0.5, -0.25, 0.5, 2.0];
    c.polarization.n_samples = 24;
    let records = commands::polarization(&c).expect("hyperbolae avoid the guard bands");
    let negative = records.iter().filter(|r| r.v < 0.0).count();
    let leaked = records.iter().filter(|r| r.v < 0.0 && r.delta_phi_sq != 0.0).count();
    let worst = records.iter().map(|r| r.staticity).fold(0.0, f64::max);
    let nonzero = records.iter().filter(|r| r.v > 0.0).all(|r| r.delta_phi_sq != 0.0);
    outcome(
        leaked == 0 && worst <= STATICITY_TOL && nonzero,
        format!(
            "{} hyperbola branches of 24 samples, {leaked} of {negative} v<0 samples nonzero, max variation {worst:.1e}",
            2 * c.polarization.products.len()
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let pairs = commands::parse_pairs(
        "# both right of the trajectory
         -2 2 -3 3
         -2 1 -1.5 2.5
         -1.5 1.5 -2.5 1.2
         # both left
         -0.5 0.5 -0.3 0.8
         -0.4 0.6 -0.6 0.3
         -0.2 1.5 -0.8 0.4
         # straddling
         -2 2 -0.3 0.8
         -1.5 2 -0.4 0.6
         -3 1 -0.2 0.7",
    )
    .unwrap();
    let start = Instant::now();
    let r = commands::oracle_compare(&RunConfig::default(), &pairs, true).expect("oracle runs");
    for row in &r.rows {
        println!(
            "    ({:>4}, {:>4}) ({:>4}, {:>4})  deviation {:.2e}  refined {:.2e}",
            row.p[0],
            row.p[1],
            row.q[0],
            row.q[1],
            row.deviation,
            row.refined_deviation.unwrap()
        );
    }
    let refined = r.max_refined_deviation.unwrap();
    let mean = |f: &dyn Fn(&commands::OracleRow) -> f64| r.rows.iter().map(f).sum::<f64>() / r.rows.len() as f64;
    let mean0 = mean(&|row| row.deviation);
    let mean1 = mean(&|row| row.refined_deviation.unwrap());
    let (fast, time) = within(start.elapsed(), Duration::from_secs(600));
    outcome(
        r.rows.len() >= 9 && r.max_deviation <= ORACLE_TOL && refined < r.max_deviation && mean1 < mean0 && fast,
        format!(
            "max deviation {:.2e} -> {refined:.2e}, mean {mean0:.2e} -> {mean1:.2e} under refinement, {time}",
            r.max_deviation
        ),
    )
}

fn thermality() -> Outcome {
    let params = ModelParams::from_gamma(1.0, 2.0, 0.1).unwrap();
    let modes = ModeSet::default_for(&params).unwrap();
    let a = params.a();
    let mut worst: f64 = 0.0;
    for w in [0.5, 1.0, 2.0] {
        let s = oracle_noise_spectrum(&params, &modes, &[w * a, -w * a]).unwrap();
        let expected = (-2.0 * PI * w).exp();
        worst = worst.max((s[1] / s[0] / expected - 1.0).abs());
    }
    outcome(worst <= 0.01, format!("max relative error of S(-w)/S(w) {worst:.1e}"))
}

fn ode_order() -> Outcome {
    let params = ModelParams::from_gamma(1.0, 2.0, 0.1).unwrap();
    let mut lowest = f64::INFINITY;
    for k in [0.7, 3.0, -0.7, -3.0] {
        let residual = |h: f64| {
            let n = (1.0 / h).round() as usize + 1;
            let grid = TauGrid::new(-0.5, h, n).unwrap();
            ode_residual(Drive::Mode { k }, &params, &grid)
                .unwrap()
                .into_iter()
                .fold(0.0, f64::max)
        };
        lowest = lowest.min((residual(0.04) / residual(0.02)).log2());
    }
    outcome(lowest >= 1.9, format!("lowest observed order {lowest:.3}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_unruh"))
            .args(["stress-grid", "--grid", "-3:3:12,-3:3:12", "--out"])
            .arg(&path)
            .status()
            .expect("binary runs");
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (c1, first) = run("first.csv");
    let (c2, second) = run("second.csv");
    outcome(
        c1 == Some(0) && c2 == Some(0) && !first.is_empty() && first == second,
        format!("{} bytes, identical: {}", first.len(), first == second),
    )
}

fn main() {
    let grids = stress_grids();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("fluctuation-dissipation identity", Box::new(fdr_identity)),
        ("causal zero in P and L", Box::new(causality_zero)),
        ("stress vanishes on grids", Box::new(|| stress_vanishing(&grids))),
        ("T_uv is exactly zero", Box::new(|| t_uv_zero(&grids))),
        ("no flux through the world-tube", Box::new(world_tube_flux)),
        ("polarization confined and static", Box::new(polarization)),
        ("mode-sum oracle agreement", Box::new(oracle_equivalence)),
        ("thermal noise spectrum", Box::new(thermality)),
        ("detector ODE residual order", Box::new(ode_order)),
        ("deterministic grid output", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failures += usize::from(!o.passed);
        println!("{} criterion {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
