//! Reads a config file, validates it and writes it back.
//!
//! ```text
//! cargo run --example config_roundtrip -- crates/core/tests/fixtures/instance_b.cfg
//! ```

use hamspec::cli::{parse_config, parse_config_str, write_config};
use hamspec::Problem;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => match parse_config(path.as_ref()) {
            Ok(c) => write_config(&c),
            Err(e) => {
                eprintln!("{e}");
                std::process::exit(3);
            }
        },
        None => {
            "T = 1\nH11 = 1\nH12 = 0\nH13 = 0.5\nH21 = 0.2\nH22 = -1\nH23 = 0.5\nH31 = 0\nH32 = 0\nH33 = -1\n".into()
        }
    };
    let c = parse_config_str(&text).expect("round trip");
    print!("{}", write_config(&c));
    match Problem::new(c) {
        Ok(pb) => println!("# rho_max = {}", pb.params.rho_max),
        Err(e) => println!("# {e}"),
    }
}
