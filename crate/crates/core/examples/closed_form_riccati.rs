//! Tabulates the closed-form primal and dual Riccati solutions.
//!
//! ```text
//! cargo run --example closed_form_riccati -- -2.5
//! ```

use hamspec::{Coefficients, Problem, RiccatiKind};

fn main() -> hamspec::Result<()> {
    let rho: f64 = std::env::args().nth(1).map_or(Ok(-2.5), |s| s.parse()).expect("rho must be a number");
    let c = Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0)?;
    let pb = Problem::new(c)?;

    let primal = pb.blowup(rho, RiccatiKind::Primal)?;
    let dual = pb.blowup(rho, RiccatiKind::Dual)?;
    println!("rho = {rho}: omega = {:.6}, theta = {:+.6}", primal.omega, primal.theta);
    println!("primal blows up at t = {:.9} (delta = {:.9})", primal.t_star, primal.delta);
    println!("dual   blows up at t = {:.9} (delta = {:.9})", dual.t_star, dual.delta);
    let (res_p, res_d) = pb.blowup_equation_residuals(rho)?;
    println!("blow-up equation residuals: {res_p:.1e}, {res_d:.1e}");

    let t_min = primal.t_star.max(dual.t_star);
    println!("{:>12} {:>16} {:>16}", "t", "k", "k~");
    for i in 1..=10 {
        let t = t_min + (pb.t_final() - t_min) * i as f64 / 10.0;
        let k = pb.k_closed(rho, t)?;
        let kt = pb.k_tilde_closed(rho, t)?;
        println!("{t:>12.6} {k:>16.9} {kt:>16.9}");
    }
    Ok(())
}
