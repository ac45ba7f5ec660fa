//! Reduced Riccati parameters and the dual coefficient matrix.
//!
//! ```text
//! cargo run --example reduced_params
//! ```

use hamspec::{dual_hamiltonian, dual_solution_map, Coefficients, Problem};

fn main() -> hamspec::Result<()> {
    let c = Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0)?;
    let pb = Problem::new(c)?;
    let p = &pb.params;
    println!("p = {}, p~ = {}, r = {}, q~ = {}", p.p, p.p_tilde, p.r, p.q_tilde);
    println!("rho0 = {}, rho* = {}, rho_max = {}", p.rho0, p.rho_star, p.rho_max);

    for rho in [-10.0, -1.0, 0.0] {
        let (q, r_tilde) = pb.coefficients_at(rho);
        let (omega, theta) = pb.omega_theta(rho)?;
        println!("rho = {rho:>6}: q = {q:+.6}, r~ = {r_tilde:+.6}, omega = {omega:.6}, theta = {theta:+.6}");
    }

    let h = dual_hamiltonian(&c, -1.0)?;
    println!("dual matrix at rho = -1:");
    for row in h {
        println!("  {row:?}");
    }
    let (x, y, z) = dual_solution_map(&c, 1.0, 0.5, -0.25)?;
    println!("dual (1, 0.5, -0.25) maps to ({x}, {y}, {z})");
    Ok(())
}
