#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use hamspec::{validate_monotonicity, validate_structure, Coefficients, Problem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn instance_a() -> Problem {
    let c = Coefficients::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]], PI).unwrap();
    Problem::new(c).unwrap()
}

pub fn instance_b() -> Problem {
    let c = Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0).unwrap();
    Problem::new(c).unwrap()
}

/// Instances passing both standing assumptions, drawn reproducibly.
pub fn random_instances(seed: u64, count: usize) -> Vec<Problem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let h11 = rng.gen_range(0.5..2.0);
        let h22 = rng.gen_range(-2.0..-0.5);
        let h33 = rng.gen_range(-2.0..-0.5);
        let h13 = rng.gen_range(-0.6..0.6);
        let h21 = rng.gen_range(-0.4..0.4);
        let h12 = rng.gen_range(-0.3..0.3);
        let h31 = rng.gen_range(-0.3..0.3);
        let h32 = rng.gen_range(-0.3..0.3);
        let t = rng.gen_range(0.5..3.0);
        let c = Coefficients::new([[h11, h12, h13], [h21, h22, -h33 * h13], [h31, h32, h33]], t).unwrap();
        if validate_monotonicity(&c).passes && validate_structure(&c, 1e-12).is_ok() {
            out.push(Problem::new(c).unwrap());
        }
    }
    out
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Runs the CLI in-process; returns (exit code, stdout, stderr).
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hamspec").chain(args.iter().copied());
    let code = hamspec::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
