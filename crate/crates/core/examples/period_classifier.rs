//! Which index range an eigenvalue belongs to, from the period bounds.
//!
//! ```text
//! cargo run --example period_classifier -- 100
//! ```

use std::f64::consts::PI;

use hamspec::{Coefficients, Problem};

fn main() -> hamspec::Result<()> {
    let c = Coefficients::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]], PI)?;
    let pb = Problem::new(c)?;
    let lambdas: Vec<f64> = match std::env::args().nth(1) {
        Some(s) => vec![s.parse().expect("lambda must be a number")],
        None => vec![0.0, 1.25, 10.0, 100.0, 1e4],
    };
    for lambda in lambdas {
        let v = pb.period_classify(lambda)?;
        let fmt = |x: Option<usize>| x.map_or("none".to_string(), |n| n.to_string());
        println!(
            "lambda = {lambda:>8}: period greater than {}, less than {}",
            fmt(v.n_greater_than),
            fmt(v.n_less_than)
        );
    }
    println!("{}", hamspec::spectrum::PERIOD_CAVEAT);
    Ok(())
}
