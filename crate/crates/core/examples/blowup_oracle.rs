//! Integrates the Riccati equation backward and locates its blow-up,
//! then compares against the closed form.
//!
//! ```text
//! cargo run --example blowup_oracle
//! ```

use hamspec::{
    detect_blowup, integrate_backward, residual_scan, Coefficients, Error, IntegratorOptions, Problem, RiccatiKind,
};

fn main() -> hamspec::Result<()> {
    let c = Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0)?;
    let pb = Problem::new(c)?;
    let t = pb.t_final();
    let mut opts = IntegratorOptions::for_horizon(t);

    for rho in [-1.0, -20.0, -400.0] {
        let (d, dt) = pb.deltas(rho)?;
        opts.horizon = opts.horizon.max(4.0 * d.max(dt));
        for kind in [RiccatiKind::Primal, RiccatiKind::Dual] {
            let closed = pb.blowup(rho, kind)?;
            let est = detect_blowup(&pb.riccati_coeffs(rho, kind), t, &opts)?;
            println!(
                "rho = {rho:>7} {kind:?}: closed {:.12}, oracle {:.12} +- {:.1e}, {} steps, {} chart switches",
                closed.t_star, est.t_star, est.uncertainty, est.steps, est.chart_switches
            );
        }
    }

    // Trajectory on the regular part of the interval.
    let rc = pb.riccati_coeffs(-1.0, RiccatiKind::Primal);
    let bu = pb.blowup_primal(-1.0)?;
    let traj = integrate_backward(&rc, t, bu.t_star + 0.2 * bu.delta, &opts)?;
    println!("{} samples, worst ODE residual {:.2e}", traj.len(), residual_scan(&traj, &rc)?);

    // Asking to go past the pole reports where it stopped.
    match integrate_backward(&rc, t, bu.t_star - 0.1, &opts) {
        Err(Error::BlowUpBeforeTEnd { t_blowup, .. }) => println!("stopped at blow-up t = {t_blowup:.9}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
