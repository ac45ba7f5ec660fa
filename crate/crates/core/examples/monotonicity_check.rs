//! Checks the two standing assumptions on a coefficient matrix.
//!
//! ```text
//! cargo run --example monotonicity_check
//! ```

use hamspec::{validate_monotonicity, validate_structure, Coefficients};

fn main() -> hamspec::Result<()> {
    let cases = [
        ("diagonal", [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]),
        ("coupled", [[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]]),
        ("flipped H11", [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]),
        ("broken H23", [[1.0, 0.0, 0.5], [0.2, -1.0, 0.1], [0.0, 0.0, -1.0]]),
    ];
    for (name, h) in cases {
        let c = Coefficients::new(h, 1.0)?;
        let mono = validate_monotonicity(&c);
        let structure = validate_structure(&c, 1e-12);
        println!(
            "{name:>12}: alpha = {:+.6}, eigenvalues = {:?}, monotone = {}, structure = {}",
            mono.alpha,
            mono.eigenvalues,
            mono.passes,
            structure.map_or_else(|e| e.to_string(), |()| "ok".to_string())
        );
    }
    Ok(())
}
