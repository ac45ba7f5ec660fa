//! Growth of `lambda_n / n^2` against its two-sided bounds.
//!
//! ```text
//! cargo run --release --example asymptotics
//! ```

use hamspec::{Coefficients, Problem, SolverTolerances};

fn main() -> hamspec::Result<()> {
    let c = Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0)?;
    let pb = Problem::new(c)?;
    let tol = SolverTolerances::for_horizon(pb.t_final());
    let records: Vec<_> = pb.spectrum_sweep(400, &tol).iter().filter_map(|e| e.record().copied()).collect();
    let report = pb.asymptotics(&records)?;

    println!("bounds [{:.6}, {:.6}], limit {:.6}", report.lower_bound, report.upper_bound, report.limit_estimate);
    for &(n, ratio) in report.ratios.iter().filter(|(n, _)| [1, 2, 5, 10, 50, 100, 200, 400].contains(n)) {
        println!("n = {n:>3}: ratio = {ratio:.6} ({:+.3}% from limit)", 100.0 * (ratio / report.limit_estimate - 1.0));
    }
    println!("omega brackets hold: {}", report.omega_brackets_ok);
    println!("inside bounds from n = {:?}", report.bounds_ok_from);
    Ok(())
}
