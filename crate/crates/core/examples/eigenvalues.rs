//! Solves the counting equation for the first eigenvalues.
//!
//! ```text
//! cargo run --release --example eigenvalues -- 400
//! ```

use std::time::Instant;

use hamspec::{Coefficients, Problem, SolverTolerances};

fn main() -> hamspec::Result<()> {
    let n_max: usize = std::env::args().nth(1).map_or(Ok(20), |s| s.parse()).expect("n_max must be an integer");
    let c = Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0)?;
    let pb = Problem::new(c)?;
    let tol = SolverTolerances::for_horizon(pb.t_final());

    let start = Instant::now();
    let sweep = pb.spectrum_sweep_par(n_max, &tol);
    let elapsed = start.elapsed();

    println!("{:>4} {:>22} {:>12} {:>12} {:>10} {:>5}", "n", "lambda", "delta", "delta~", "|F|", "iter");
    for entry in &sweep {
        match &entry.outcome {
            Ok(r) => println!(
                "{:>4} {:>22.12} {:>12.6e} {:>12.6e} {:>10.1e} {:>5}",
                r.n,
                r.lambda_n,
                r.delta,
                r.delta_tilde,
                r.counting_residual.abs(),
                r.iterations
            ),
            Err(e) => println!("{:>4} {}", entry.n, e),
        }
    }
    println!("{n_max} indices in {:.3} ms", elapsed.as_secs_f64() * 1e3);
    Ok(())
}
