//! Batch command-line frontend.
//!
//! Exit codes: `0` success, `1` validation failure, `2` numerical failure,
//! `3` usage error (bad arguments, unreadable or malformed config).

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::oracle::{detect_blowup, IntegratorOptions};
use crate::problem::{
    structure_residual, validate_monotonicity, validate_structure, Coefficients, Problem, STRUCTURE_TOL,
};
use crate::riccati::RiccatiKind;
use crate::spectrum::{SolverTolerances, SweepStatus};

pub use config::{parse_config, parse_config_str, write_config, ConfigError};
use output::num;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hamspec", version, about = "Spectra of 1-D stochastic Hamiltonian boundary-value problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// Configuration file (`key = value`, keys T and H11..H33).
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the monotonicity and structure assumptions.
    Check(ConfigArg),
    /// Print the derived scalar parameters.
    Params {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compute eigenvalues 1..n_max.
    Eigs {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
        /// Evaluate indices on a thread pool (output is identical).
        #[arg(long)]
        parallel: bool,
    },
    /// Cross-check closed-form blow-up times against the integrator at each rho_n.
    Verify {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Blow-up times of the primal and dual Riccati problems.
    Blowup {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        /// Also run the numerical integrator.
        #[arg(long)]
        oracle: bool,
    },
    /// Sample the closed-form Riccati solutions as CSV `t,k,k_tilde`.
    Riccati {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, allow_negative_numbers = true)]
        rho: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ratios lambda_n / n^2 against the asymptotic bounds.
    Asymptotics {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long)]
        parallel: bool,
    },
    /// Index bounds for a given eigenvalue.
    Period {
        #[command(flatten)]
        cfg: ConfigArg,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
    },
}

/// Failure carrying its exit code and message.
#[derive(Debug)]
pub struct Fail {
    pub code: i32,
    pub msg: String,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail { code: EXIT_USAGE, msg: msg.into() }
    }
    fn validation(msg: impl Into<String>) -> Self {
        Fail { code: EXIT_VALIDATION, msg: msg.into() }
    }
    fn numerical(msg: impl Into<String>) -> Self {
        Fail { code: EXIT_NUMERICAL, msg: msg.into() }
    }
}

pub type CmdResult = Result<i32, Fail>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "hamspec: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Check(cfg) => cmd_check(&load(&cfg.config)?, stdout),
        Command::Params { cfg, rho, format } => cmd_params(&load(&cfg.config)?, rho, format, stdout),
        Command::Eigs { cfg, n_max, out, parallel } => cmd_eigs(&load(&cfg.config)?, n_max, &out, parallel, stdout),
        Command::Verify { cfg, n_max } => cmd_verify(&load(&cfg.config)?, n_max, stdout),
        Command::Blowup { cfg, rho, oracle } => cmd_blowup(&load(&cfg.config)?, rho, oracle, stdout),
        Command::Riccati { cfg, rho, samples, out } => {
            cmd_riccati(&load(&cfg.config)?, rho, samples, out.as_deref(), stdout)
        }
        Command::Asymptotics { cfg, n_max, out, parallel } => {
            cmd_asymptotics(&load(&cfg.config)?, n_max, &out, parallel, stdout)
        }
        Command::Period { cfg, lambda } => cmd_period(&load(&cfg.config)?, lambda, stdout),
    }
}

fn load(path: &Path) -> Result<Coefficients, Fail> {
    parse_config(path).map_err(|e| Fail::usage(e.to_string()))
}

fn io_fail(e: std::io::Error) -> Fail {
    Fail::usage(format!("write failed: {e}"))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Fail> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_fail),
        None => stdout.write_all(text.as_bytes()).map_err(io_fail),
    }
}

/// Both standing assumptions, then the derived parameters.
fn validated(c: &Coefficients) -> Result<Problem, Fail> {
    let mono = validate_monotonicity(c);
    if !mono.passes {
        return Err(Fail::validation(format!("monotonicity check failed (alpha = {})", mono.alpha)));
    }
    validate_structure(c, STRUCTURE_TOL).map_err(|e| Fail::validation(e.to_string()))?;
    Problem::new(*c).map_err(|e| Fail::validation(e.to_string()))
}

fn check_n_max(n_max: usize) -> Result<(), Fail> {
    if n_max == 0 {
        Err(Fail::usage("--n-max must be at least 1"))
    } else {
        Ok(())
    }
}

pub fn cmd_check(c: &Coefficients, w: &mut dyn Write) -> CmdResult {
    let mono = validate_monotonicity(c);
    let structure = validate_structure(c, STRUCTURE_TOL);
    let mut s = String::new();
    s.push_str(&format!("alpha = {}\n", num(mono.alpha)));
    let [e1, e2, e3] = mono.eigenvalues;
    s.push_str(&format!("symmetric_part_eigenvalues = {}, {}, {}\n", num(e1), num(e2), num(e3)));
    s.push_str(&format!("monotonicity = {}\n", if mono.passes { "pass" } else { "fail" }));
    s.push_str(&format!("structure_residual = {}\n", num(structure_residual(c))));
    s.push_str(&format!("structure = {}\n", if structure.is_ok() { "pass" } else { "fail" }));
    match Problem::new(*c) {
        Ok(p) => {
            s.push_str(&format!("rho0 = {}\n", num(p.params.rho0)));
            s.push_str(&format!("rho_star = {}\n", num(p.params.rho_star)));
            s.push_str(&format!("rho_max = {}\n", num(p.params.rho_max)));
        }
        Err(e) => s.push_str(&format!("reduced parameters unavailable: {e}\n")),
    }
    if c.has_unused_couplings() {
        s.push_str("note: H12 and H32 are non-zero; they do not enter the Riccati equations\n");
    }
    w.write_all(s.as_bytes()).map_err(io_fail)?;
    Ok(if mono.passes && structure.is_ok() { EXIT_OK } else { EXIT_VALIDATION })
}

pub fn cmd_params(c: &Coefficients, rho: Option<f64>, format: Format, w: &mut dyn Write) -> CmdResult {
    let p = Problem::new(*c).map_err(|e| Fail::validation(e.to_string()))?;
    let mut fields: Vec<(&str, f64)> = vec![
        ("p", p.params.p),
        ("p_tilde", p.params.p_tilde),
        ("r", p.params.r),
        ("q_tilde", p.params.q_tilde),
        ("rho0", p.params.rho0),
        ("rho_star", p.params.rho_star),
        ("rho_max", p.params.rho_max),
        ("T", p.params.t_final),
    ];
    let mut code = EXIT_OK;
    if let Some(rho) = rho {
        let (q, r_tilde) = p.coefficients_at(rho);
        fields.push(("rho", rho));
        fields.push(("q", q));
        fields.push(("r_tilde", r_tilde));
        match p.omega_theta(rho) {
            Ok((omega, theta)) => {
                fields.push(("omega", omega));
                fields.push(("theta", theta));
            }
            Err(_) => code = EXIT_NUMERICAL,
        }
    }
    let text = match format {
        Format::Csv => fields.iter().map(|(k, v)| format!("{k} = {}\n", num(*v))).collect::<String>(),
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                fields.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect();
            output::json(&map)
        }
    };
    w.write_all(text.as_bytes()).map_err(io_fail)?;
    if code != EXIT_OK {
        return Err(Fail::numerical(format!(
            "rho = {} is not admissible (rho_max = {})",
            rho.unwrap_or(f64::NAN),
            p.params.rho_max
        )));
    }
    Ok(code)
}

pub fn cmd_eigs(c: &Coefficients, n_max: usize, out: &OutputArgs, parallel: bool, w: &mut dyn Write) -> CmdResult {
    check_n_max(n_max)?;
    let p = validated(c)?;
    let tol = SolverTolerances::for_horizon(p.t_final());
    let sweep = if parallel { p.spectrum_sweep_par(n_max, &tol) } else { p.spectrum_sweep(n_max, &tol) };
    let rows: Vec<output::EigsRow> = sweep.iter().map(Into::into).collect();
    let text = match out.format {
        Format::Csv => output::eigs_csv(&rows),
        Format::Json => output::json(&rows),
    };
    emit(&text, out.out.as_deref(), w)?;
    let bad: Vec<String> = sweep
        .iter()
        .filter(|e| e.status() != SweepStatus::Ok)
        .map(|e| format!("n={} {}", e.n, e.status().as_str()))
        .collect();
    if bad.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Fail::numerical(format!("non-ok indices: {}", bad.join(", "))))
    }
}

/// Oracle options wide enough to reach both blow-ups at `rho`.
fn oracle_options(p: &Problem, rho: f64) -> IntegratorOptions {
    let mut opts = IntegratorOptions::for_horizon(p.t_final());
    if let Ok((d, dt)) = p.deltas(rho) {
        opts.horizon = opts.horizon.max(4.0 * d.max(dt));
    }
    opts
}

pub fn cmd_verify(c: &Coefficients, n_max: usize, w: &mut dyn Write) -> CmdResult {
    check_n_max(n_max)?;
    let p = validated(c)?;
    let tol = SolverTolerances::for_horizon(p.t_final());
    let mut s = String::from("n,rho,primal_gap,dual_gap,tolerance,pass\n");
    let (mut max_primal, mut max_dual) = (0.0f64, 0.0f64);
    let mut all_pass = true;
    let mut failures = Vec::new();
    for entry in p.spectrum_sweep(n_max, &tol) {
        let Some(rec) = entry.record() else {
            s.push_str(&format!("# n={} skipped ({})\n", entry.n, entry.status().as_str()));
            continue;
        };
        match p.crosscheck(rec.rho_n, &oracle_options(&p, rec.rho_n)) {
            Ok(rep) => {
                max_primal = max_primal.max(rep.primal_gap);
                max_dual = max_dual.max(rep.dual_gap);
                all_pass &= rep.pass;
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    rec.n,
                    num(rec.rho_n),
                    num(rep.primal_gap),
                    num(rep.dual_gap),
                    num(rep.primal_tol.min(rep.dual_tol)),
                    rep.pass
                ));
            }
            Err(e) => failures.push(format!("n={}: {e}", rec.n)),
        }
    }
    s.push_str(&format!("# max_primal_gap = {}\n# max_dual_gap = {}\n", num(max_primal), num(max_dual)));
    w.write_all(s.as_bytes()).map_err(io_fail)?;
    if !failures.is_empty() {
        return Err(Fail::numerical(format!("oracle failures: {}", failures.join("; "))));
    }
    if all_pass {
        Ok(EXIT_OK)
    } else {
        Err(Fail::numerical("closed-form and oracle blow-up times disagree"))
    }
}

pub fn cmd_blowup(c: &Coefficients, rho: f64, oracle: bool, w: &mut dyn Write) -> CmdResult {
    let p = validated(c)?;
    let mut s = String::new();
    let mut code = EXIT_OK;
    let mut msg = String::new();
    for kind in [RiccatiKind::Primal, RiccatiKind::Dual] {
        let label = match kind {
            RiccatiKind::Primal => "primal",
            RiccatiKind::Dual => "dual",
        };
        let closed = p.blowup(rho, kind);
        match &closed {
            Ok(b) => s.push_str(&format!("{label} t_star = {}\n{label} delta = {}\n", num(b.t_star), num(b.delta))),
            Err(e) => {
                s.push_str(&format!("{label} closed form unavailable: {e}\n"));
                if !oracle {
                    code = EXIT_NUMERICAL;
                    msg = e.to_string();
                }
            }
        }
        if oracle {
            let opts = oracle_options(&p, rho);
            match detect_blowup(&p.riccati_coeffs(rho, kind), p.t_final(), &opts) {
                Ok(est) => {
                    s.push_str(&format!(
                        "{label} oracle t_star = {}\n{label} oracle uncertainty = {}\n",
                        num(est.t_star),
                        num(est.uncertainty)
                    ));
                    if let Ok(b) = closed {
                        s.push_str(&format!("{label} gap = {}\n", num((est.t_star - b.t_star).abs())));
                    }
                }
                Err(e) => {
                    s.push_str(&format!("{label} oracle: {e}\n"));
                    code = EXIT_NUMERICAL;
                    msg = e.to_string();
                }
            }
        }
    }
    w.write_all(s.as_bytes()).map_err(io_fail)?;
    if code == EXIT_OK {
        Ok(code)
    } else {
        Err(Fail::numerical(msg))
    }
}

pub fn cmd_riccati(c: &Coefficients, rho: f64, samples: usize, out: Option<&Path>, w: &mut dyn Write) -> CmdResult {
    if samples == 0 {
        return Err(Fail::usage("--samples must be at least 1"));
    }
    let p = validated(c)?;
    let primal = p.blowup_primal(rho).map_err(|e| Fail::numerical(e.to_string()))?;
    let dual = p.blowup_dual(rho).map_err(|e| Fail::numerical(e.to_string()))?;
    let t_final = p.t_final();
    let start = primal.t_star.max(dual.t_star) + 0.01 * primal.delta.min(dual.delta);
    let mut s = String::from("t,k,k_tilde\n");
    for i in 0..samples {
        let t = if i + 1 == samples { t_final } else { start + (t_final - start) * (i + 1) as f64 / samples as f64 };
        let k = p.k_closed(rho, t).map_err(|e| Fail::numerical(e.to_string()))?;
        let kt = p.k_tilde_closed(rho, t).map_err(|e| Fail::numerical(e.to_string()))?;
        s.push_str(&format!("{},{},{}\n", num(t), num(k), num(kt)));
    }
    emit(&s, out, w)?;
    Ok(EXIT_OK)
}

pub fn cmd_asymptotics(
    c: &Coefficients,
    n_max: usize,
    out: &OutputArgs,
    parallel: bool,
    w: &mut dyn Write,
) -> CmdResult {
    check_n_max(n_max)?;
    let p = validated(c)?;
    let tol = SolverTolerances::for_horizon(p.t_final());
    let sweep = if parallel { p.spectrum_sweep_par(n_max, &tol) } else { p.spectrum_sweep(n_max, &tol) };
    let records: Vec<_> = sweep.iter().filter_map(|e| e.record().copied()).collect();
    if records.is_empty() {
        return Err(Fail::numerical("no eigenvalue in the closed-form range"));
    }
    let rep = p.asymptotics(&records).map_err(|e| Fail::numerical(e.to_string()))?;
    let rows = output::asymptotics_rows(&rep);
    let text = match out.format {
        Format::Csv => output::asymptotics_csv(&rows),
        Format::Json => output::json(&rows),
    };
    emit(&text, out.out.as_deref(), w)?;
    if records.len() != sweep.len() {
        return Err(Fail::numerical("some indices are outside the closed-form range"));
    }
    Ok(EXIT_OK)
}

pub fn cmd_period(c: &Coefficients, lambda: f64, w: &mut dyn Write) -> CmdResult {
    let p = validated(c)?;
    let v = p.period_classify(lambda).map_err(|e| Fail::validation(e.to_string()))?;
    let show = |x: Option<usize>| x.map_or_else(|| "none".to_string(), |n| n.to_string());
    let s = format!(
        "lambda = {}\nstatistic period greater than: {}\nstatistic period less than: {}\nnote: {}\n",
        num(lambda),
        show(v.n_greater_than),
        show(v.n_less_than),
        v.caveat
    );
    w.write_all(s.as_bytes()).map_err(io_fail)?;
    Ok(EXIT_OK)
}
