//! End-to-end acceptance gates. Each test prints one `PASS`/`FAIL` line.
//!
//! Run with `cargo test -p hamspec --test acceptance -- --nocapture`.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::{fixture, golden, instance_a, instance_b, random_instances, run_cli};
use hamspec::cli::{EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use hamspec::{IntegratorOptions, Problem, RiccatiKind, SolverTolerances};

const N_MAX: usize = 400;

fn report(id: u8, title: &str, ok: bool, elapsed: Duration, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {title} ({detail}; {:.3} s)", elapsed.as_secs_f64());
    assert!(ok, "criterion {id} failed: {detail}");
}

fn sweep(pb: &Problem) -> Vec<hamspec::EigenvalueRecord> {
    let tol = SolverTolerances::for_horizon(pb.t_final());
    pb.spectrum_sweep(N_MAX, &tol)
        .into_iter()
        .map(|e| e.outcome.unwrap_or_else(|err| panic!("n = {}: {err}", e.n)))
        .collect()
}

fn oracle_options(pb: &Problem, rho: f64) -> IntegratorOptions {
    let mut opts = IntegratorOptions::for_horizon(pb.t_final());
    let (d, dt) = pb.deltas(rho).unwrap();
    opts.horizon = opts.horizon.max(4.0 * d.max(dt));
    opts
}

#[test]
fn c1_closed_form_eigenvalues() {
    let start = Instant::now();
    let pb = instance_a();
    let tol = SolverTolerances::for_horizon(pb.t_final());
    let mut worst = 0.0f64;
    for e in pb.spectrum_sweep(50, &tol) {
        let exact = 1.0 + ((2 * e.n - 1) as f64).powi(2) / 4.0;
        let got = e.outcome.map(|r| r.lambda_n).unwrap_or(f64::NAN);
        worst = worst.max((got - exact).abs()).max(if got.is_nan() { f64::INFINITY } else { 0.0 });
    }
    let elapsed = start.elapsed();
    report(
        1,
        "instance A eigenvalues equal 1 + (2n-1)^2/4, n = 1..50",
        worst <= 1e-8 && elapsed < Duration::from_secs(1),
        elapsed,
        format!("max |err| = {worst:.2e}, tol 1e-8"),
    );
}

#[test]
fn c2_oracle_agreement() {
    let start = Instant::now();
    let mut instances = vec![instance_a(), instance_b()];
    // Random draws where rho_1, rho_5 and rho_20 all lie inside the closed-form range.
    instances.extend(
        random_instances(2024, 60)
            .into_iter()
            .filter(|pb| {
                let tol = SolverTolerances::for_horizon(pb.t_final());
                [1, 5, 20].iter().all(|&n| pb.eigenvalue(n, &tol).is_ok())
            })
            .take(20),
    );
    assert_eq!(instances.len(), 22);

    let mut checks = 0;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (i, pb) in instances.iter().enumerate() {
        let tol = SolverTolerances::for_horizon(pb.t_final());
        let mut rhos: Vec<f64> = [1, 5, 20].iter().map(|&n| pb.eigenvalue(n, &tol).unwrap().rho_n).collect();
        let rho_max = pb.params.rho_max;
        rhos.extend((0..10).map(|j| rho_max - 10f64.powf(-2.0 + 5.0 * j as f64 / 9.0)));
        for rho in rhos {
            checks += 1;
            match pb.crosscheck(rho, &oracle_options(pb, rho)) {
                Ok(r) => {
                    worst = worst.max(r.primal_gap / r.primal_tol).max(r.dual_gap / r.dual_tol);
                    if !r.pass {
                        failures.push(format!("instance {i} rho {rho:e}"));
                    }
                }
                Err(e) => failures.push(format!("instance {i} rho {rho:e}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        "closed-form and integrated blow-up times agree, 22 instances x 13 rho",
        failures.is_empty() && elapsed < Duration::from_secs(30),
        elapsed,
        format!("{checks} checks, worst gap/tol = {worst:.2e}, failures {failures:?}"),
    );
}

#[test]
fn c3_counting_and_chain_residuals() {
    let start = Instant::now();
    let mut worst_f = 0.0f64;
    let mut worst_chain = 0.0f64;
    let mut ok = true;
    for pb in [instance_a(), instance_b()] {
        let t = pb.t_final();
        for rec in sweep(&pb) {
            ok &= rec.counting_residual.abs() <= 1e-10 * t && rec.chain_residual.abs() <= 1e-8 * t;
            worst_f = worst_f.max(rec.counting_residual.abs() / t);
            worst_chain = worst_chain.max(rec.chain_residual.abs() / t);
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        "counting and chain residuals up to n = 400, instances A and B",
        ok && elapsed < Duration::from_secs(10),
        elapsed,
        format!("max |F|/T = {worst_f:.2e} (tol 1e-10), max |chain|/T = {worst_chain:.2e} (tol 1e-8)"),
    );
}

#[test]
fn c4_ratio_bounds() {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, pb) in [("A", instance_a()), ("B", instance_b())] {
        let (lower, upper) = pb.ratio_bounds();
        let limit = 2.0 * lower;
        let recs = sweep(&pb);
        let mut worst_limit = 0.0f64;
        for rec in recs.iter().filter(|r| r.n >= 10) {
            ok &= rec.ratio >= lower * (1.0 - 1e-3) && rec.ratio <= upper * (1.0 + 1e-3);
            if rec.n >= 200 {
                worst_limit = worst_limit.max((rec.ratio / limit - 1.0).abs());
            }
        }
        notes.push(format!(
            "{name}: bracket [{lower:.4}, {upper:.4}], n>=200 deviation from limit {:.2}% (informational, {})",
            100.0 * worst_limit,
            if worst_limit <= 0.02 { "within 2%" } else { "outside 2%" }
        ));
    }
    report(4, "lambda_n / n^2 inside the asymptotic bracket, n = 10..400", ok, start.elapsed(), notes.join("; "));
}

#[test]
fn c5_exact_omega_bracket() {
    let start = Instant::now();
    let mut ok = true;
    let mut count = 0;
    for pb in [instance_a(), instance_b()] {
        for rec in sweep(&pb) {
            count += 1;
            ok &= pb.exact_omega_bracket(&rec).unwrap();
        }
    }
    report(
        5,
        "(n-1) pi/T <= omega(rho_n) <= n pi/T",
        ok,
        start.elapsed(),
        format!("{count} records, relative slack 1e-12"),
    );
}

#[test]
fn c6_blowup_time_monotonicity() {
    let start = Instant::now();
    let mut ok = true;
    let mut instances = vec![instance_a(), instance_b()];
    instances.extend(random_instances(7, 5));
    for pb in &instances {
        let rho_max = pb.params.rho_max;
        // Offsets from 1e3 down to 1e-3, so rho increases.
        let grid: Vec<f64> = (0..200).map(|i| rho_max - 10f64.powf(3.0 - 6.0 * i as f64 / 199.0)).collect();
        let deltas: Vec<(f64, f64)> = grid.iter().map(|&rho| pb.deltas(rho).unwrap()).collect();
        ok &= deltas.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1);
    }
    let a = instance_a();
    let far = a.deltas(-1e6).unwrap().0;
    ok &= far <= 1e-2 * a.t_final();
    report(
        6,
        "delta and delta~ strictly increasing on a 200-point grid; delta(-1e6) small",
        ok,
        start.elapsed(),
        format!("{} instances, instance A delta(-1e6) = {far:.3e} (tol {:.3e})", instances.len(), 1e-2 * PI),
    );
}

/// Normalized central-difference residual of `kind` at 50 interior points.
fn fd_residual(pb: &Problem, rho: f64, kind: RiccatiKind) -> f64 {
    let bu = pb.blowup(rho, kind).unwrap();
    let t_final = pb.t_final();
    let rc = pb.riccati_coeffs(rho, kind);
    let span = t_final - bu.t_star;
    let h = 1e-6 * span;
    (0..50)
        .map(|i| {
            let t = bu.t_star + span * (0.1 + 0.85 * i as f64 / 49.0);
            let k = |t| pb.riccati_closed(rho, t, kind).unwrap();
            let dk = (k(t + h) - k(t - h)) / (2.0 * h);
            let rhs = rc.rhs(k(t));
            (dk - rhs).abs() / (1.0 + rhs.abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn c7_riccati_residual() {
    let start = Instant::now();
    let mut instances = vec![instance_a(), instance_b()];
    instances.extend(random_instances(11, 3));
    let offsets = [0.05, 1.0, 20.0, 400.0];
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for pb in &instances {
        for off in offsets {
            let rho = pb.params.rho_max - off;
            pairs += 1;
            worst = worst.max(fd_residual(pb, rho, RiccatiKind::Primal)).max(fd_residual(pb, rho, RiccatiKind::Dual));
        }
    }
    report(
        7,
        "closed-form k and k~ satisfy their ODEs",
        pairs == 20 && worst <= 1e-6,
        start.elapsed(),
        format!("{pairs} pairs x 50 points, max normalized residual {worst:.2e} (tol 1e-6)"),
    );
}

#[test]
fn c8_period_classifier() {
    let start = Instant::now();
    let pb = instance_a();
    let tol = SolverTolerances::for_horizon(pb.t_final());
    let mut ok = true;
    let mut seen = Vec::new();
    for n in [10, 20, 50] {
        let lambda = pb.eigenvalue(n, &tol).unwrap().lambda_n;
        let v = pb.period_classify(lambda).unwrap();
        let greater = v.n_greater_than.unwrap_or(0);
        let less = v.n_less_than.unwrap_or(usize::MAX);
        ok &= greater < n && n < less;
        seen.push(format!("n={n}: ({greater}, {less})"));
    }
    let v = pb.period_classify(100.0).unwrap();
    ok &= v.n_greater_than == Some(4) && v.n_less_than == Some(15);
    seen.push(format!("lambda=100: ({:?}, {:?})", v.n_greater_than, v.n_less_than));
    report(8, "period classifier brackets the index", ok, start.elapsed(), seen.join(", "));
}

#[test]
fn c9_cli_contract() {
    let start = Instant::now();
    let cfg = |name: &str| fixture(name).display().to_string();
    let (code, out, _) = run_cli(&["eigs", &cfg("instance_a.cfg"), "--n-max", "5", "--format", "csv"]);
    let golden_ok = code == EXIT_OK && out.as_bytes() == std::fs::read(golden("eigs_instance_a_n5.csv")).unwrap();
    let codes: Vec<i32> = ["instance_a.cfg", "nonmonotone.cfg", "out_of_range.cfg", "missing_key.cfg"]
        .iter()
        .map(|name| run_cli(&["eigs", &cfg(name), "--n-max", "5"]).0)
        .collect();
    let codes_ok = codes == [EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL, EXIT_USAGE];
    let elapsed = start.elapsed();
    report(
        9,
        "eigs golden file and exit codes",
        golden_ok && codes_ok && elapsed < Duration::from_secs(1),
        elapsed,
        format!("golden match {golden_ok}, exit codes {codes:?}"),
    );
}
