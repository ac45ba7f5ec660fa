//! Eigenvalues from the counting equation
//! `F_n(rho) = n delta(rho) + (n-1) delta~(rho) - T = 0`, their blow-up
//! chains, the `lambda_n / n^2` bounds and the period classifier.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::Problem;

/// Caveat attached to every [`PeriodVerdict`].
pub const PERIOD_CAVEAT: &str = "The period bounds hold for sufficiently large n only; \
for small indices these bounds are indicative, and no period is computed from sample paths.";

/// Index from which the literal `(n-1)pi/T <= omega <= (2n-1)pi/T` bracket is checked.
pub const LOOSE_BRACKET_FROM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverTolerances {
    /// Relative bracket width on `rho`.
    pub tol_rho: f64,
    /// Absolute bound on `|F_n(rho_n)|`.
    pub tol_f: f64,
}

impl SolverTolerances {
    pub fn for_horizon(t_final: f64) -> Self {
        SolverTolerances { tol_rho: 1e-12, tol_f: 1e-10 * t_final }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueRecord {
    pub n: usize,
    pub rho_n: f64,
    pub lambda_n: f64,
    pub delta: f64,
    pub delta_tilde: f64,
    pub counting_residual: f64,
    pub chain_residual: f64,
    /// `lambda_n / n^2`.
    pub ratio: f64,
    pub iterations: usize,
}

/// Outcome of one index in a sweep.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub n: usize,
    pub outcome: Result<EigenvalueRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepStatus {
    Ok,
    /// The root lies in `[rho0 + rho_star, rho0)`, outside the closed forms.
    OutOfRange,
    Failed,
}

impl SweepStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepStatus::Ok => "ok",
            SweepStatus::OutOfRange => "out_of_range",
            SweepStatus::Failed => "failed",
        }
    }
}

impl SweepEntry {
    pub fn status(&self) -> SweepStatus {
        match &self.outcome {
            Ok(_) => SweepStatus::Ok,
            Err(Error::RootOutOfClosedFormRange { .. }) => SweepStatus::OutOfRange,
            Err(_) => SweepStatus::Failed,
        }
    }

    pub fn record(&self) -> Option<&EigenvalueRecord> {
        self.outcome.as_ref().ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    /// `pi^2 / (-2 H11 H22 T^2)`.
    pub lower_bound: f64,
    /// `4 pi^2 / (-H11 H22 T^2)`.
    pub upper_bound: f64,
    /// `pi^2 / (-H11 H22 T^2)`, the observed limit of the ratios.
    pub limit_estimate: f64,
    pub ratios: Vec<(usize, f64)>,
    /// Exact bracket for every record and the looser literal bracket from
    /// [`LOOSE_BRACKET_FROM`] on.
    pub omega_brackets_ok: bool,
    /// First index after which every ratio stays inside the bounds.
    pub bounds_ok_from: Option<usize>,
}

impl AsymptoticsReport {
    pub fn in_bounds(&self, ratio: f64) -> bool {
        ratio >= self.lower_bound && ratio <= self.upper_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodVerdict {
    pub lambda: f64,
    /// Smallest `n` with `lambda < n^2 pi^2 / (-2 H11 H22 T^2)`.
    pub n_less_than: Option<usize>,
    /// Largest `n` with `lambda > 4 n^2 pi^2 / (-H11 H22 T^2)`.
    pub n_greater_than: Option<usize>,
    pub caveat: &'static str,
}

impl Problem {
    /// `F_n(rho) = ((2n-1) pi/2 + theta) / omega - T`.
    pub fn counting_value(&self, n: usize, rho: f64) -> Result<f64> {
        let (omega, theta) = self.omega_theta(rho)?;
        Ok((((2 * n - 1) as f64) * PI / 2.0 + theta) / omega - self.t_final())
    }

    /// Root of `F_n` by bracketing and bisection; returns `(rho_n, iterations)`.
    pub fn solve_rho(&self, n: usize, tol: &SolverTolerances) -> Result<(f64, usize)> {
        if n == 0 {
            return Err(Error::InvalidArgument("eigenvalue index starts at 1".into()));
        }
        let rho_max = self.params.rho_max;
        let scale = 1.0 + rho_max.abs();
        let mut hi = rho_max - 1e-9 * scale;
        let mut f_hi = self.counting_value(n, hi)?;
        if f_hi < 0.0 {
            return Err(Error::RootOutOfClosedFormRange { n, f_hi });
        }
        let mut iterations = 0;
        if f_hi == 0.0 {
            return Ok((hi, iterations));
        }

        let anchor = hi;
        let mut bracket = None;
        for k in 0..200 {
            iterations += 1;
            let lo = anchor - 2f64.powi(k) * scale;
            let f_lo = self.counting_value(n, lo)?;
            if f_lo < 0.0 {
                bracket = Some((lo, f_lo));
                break;
            }
            if f_lo == 0.0 {
                return Ok((lo, iterations));
            }
            // F_n is increasing, so a positive value tightens the upper end
            hi = lo;
            f_hi = f_lo;
        }
        let (mut lo, mut f_lo) = bracket.ok_or(Error::BracketExpansionFailed { n })?;

        loop {
            let best = if f_lo.abs() <= f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
            let width_ok = hi - lo <= tol.tol_rho * (1.0 + best.0.abs());
            if width_ok && best.1.abs() <= tol.tol_f {
                return Ok((best.0, iterations));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                // bracket exhausted at double precision
                return if best.1.abs() <= tol.tol_f {
                    Ok((best.0, iterations))
                } else {
                    Err(Error::NoConvergence { n, residual: best.1.abs() })
                };
            }
            iterations += 1;
            let f_mid = self.counting_value(n, mid)?;
            if f_mid == 0.0 {
                return Ok((mid, iterations));
            }
            if f_mid < 0.0 {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
    }

    /// Blow-up chain `t^0 = T > t^1 > ... > t^(2n-1)`.
    pub fn chain_times(&self, n: usize, rho: f64) -> Result<Vec<f64>> {
        let (delta, delta_tilde) = self.deltas(rho)?;
        let t = self.t_final();
        let mut out = Vec::with_capacity(2 * n);
        for j in 1..=n {
            let jm = (j - 1) as f64;
            out.push(t - jm * delta - jm * delta_tilde);
            out.push(t - j as f64 * delta - jm * delta_tilde);
        }
        Ok(out)
    }

    pub fn eigenvalue(&self, n: usize, tol: &SolverTolerances) -> Result<EigenvalueRecord> {
        let (rho_n, iterations) = self.solve_rho(n, tol)?;
        let (delta, delta_tilde) = self.deltas(rho_n)?;
        let counting_residual = self.counting_value(n, rho_n)?.abs();
        let chain = self.chain_times(n, rho_n)?;
        let chain_residual = chain.last().copied().unwrap_or(0.0).abs();
        let lambda_n = 1.0 - rho_n;
        Ok(EigenvalueRecord {
            n,
            rho_n,
            lambda_n,
            delta,
            delta_tilde,
            counting_residual,
            chain_residual,
            ratio: lambda_n / (n * n) as f64,
            iterations,
        })
    }

    pub fn spectrum_sweep(&self, n_max: usize, tol: &SolverTolerances) -> Vec<SweepEntry> {
        (1..=n_max).map(|n| SweepEntry { n, outcome: self.eigenvalue(n, tol) }).collect()
    }

    /// Same as [`Problem::spectrum_sweep`], evaluated on the rayon pool;
    /// entries come back in ascending `n`.
    pub fn spectrum_sweep_par(&self, n_max: usize, tol: &SolverTolerances) -> Vec<SweepEntry> {
        (1..=n_max).into_par_iter().map(|n| SweepEntry { n, outcome: self.eigenvalue(n, tol) }).collect()
    }

    /// `pi^2 / (-2 H11 H22 T^2)` and `4 pi^2 / (-H11 H22 T^2)`.
    pub fn ratio_bounds(&self) -> (f64, f64) {
        let c = self.curvature() * self.t_final() * self.t_final();
        (PI * PI / (2.0 * c), 4.0 * PI * PI / c)
    }

    /// Whether `(n-1) pi/T <= omega(rho_n) <= n pi/T`, with `1e-12`
    /// relative slack.
    pub fn exact_omega_bracket(&self, rec: &EigenvalueRecord) -> Result<bool> {
        let (omega, _) = self.omega_theta(rec.rho_n)?;
        let unit = PI / self.t_final();
        let slack = 1e-12 * omega;
        Ok((rec.n - 1) as f64 * unit <= omega + slack && omega <= rec.n as f64 * unit + slack)
    }

    pub fn loose_omega_bracket(&self, rec: &EigenvalueRecord) -> Result<bool> {
        let (omega, _) = self.omega_theta(rec.rho_n)?;
        let unit = PI / self.t_final();
        let slack = 1e-12 * omega;
        Ok((rec.n - 1) as f64 * unit <= omega + slack && omega <= (2 * rec.n - 1) as f64 * unit + slack)
    }

    /// `|r q(rho_n) - p^2/4 - [(-H11 H22) lambda_n + H11 H22 - H11 H33 H13^2 - p~^2/4]|`.
    pub fn expansion_residual(&self, rec: &EigenvalueRecord) -> f64 {
        let c = &self.coeffs;
        let (q, _) = self.coefficients_at(rec.rho_n);
        let p = self.params.p;
        let pt = self.params.p_tilde;
        let lhs = self.params.r * q - p * p / 4.0;
        let rhs = -c.h11 * c.h22 * rec.lambda_n + c.h11 * c.h22 - c.h11 * c.h33 * c.h13 * c.h13 - pt * pt / 4.0;
        (lhs - rhs).abs()
    }

    pub fn asymptotics(&self, records: &[EigenvalueRecord]) -> Result<AsymptoticsReport> {
        if records.is_empty() {
            return Err(Error::EmptyInput);
        }
        let (lower_bound, upper_bound) = self.ratio_bounds();
        let mut omega_brackets_ok = true;
        for rec in records {
            omega_brackets_ok &= self.exact_omega_bracket(rec)?;
            if rec.n >= LOOSE_BRACKET_FROM {
                omega_brackets_ok &= self.loose_omega_bracket(rec)?;
            }
        }
        let ratios: Vec<(usize, f64)> = records.iter().map(|r| (r.n, r.ratio)).collect();
        let inside = |x: f64| x >= lower_bound && x <= upper_bound;
        let bounds_ok_from = match ratios.iter().rposition(|&(_, x)| !inside(x)) {
            None => Some(ratios[0].0),
            Some(i) => ratios.get(i + 1).map(|&(n, _)| n),
        };
        Ok(AsymptoticsReport {
            lower_bound,
            upper_bound,
            limit_estimate: 2.0 * lower_bound,
            ratios,
            omega_brackets_ok,
            bounds_ok_from,
        })
    }

    /// Inverts the two eigenvalue thresholds of the period bounds.
    pub fn period_classify(&self, lambda: f64) -> Result<PeriodVerdict> {
        let c = self.curvature();
        if !(c > 0.0) {
            return Err(Error::InvalidSign(c));
        }
        let t = self.t_final();
        let less_coef = PI * PI / (2.0 * c * t * t);
        let greater_coef = 4.0 * PI * PI / (c * t * t);
        let sq = |n: usize| (n * n) as f64;

        let mut n_less = ((lambda.max(0.0) / less_coef).sqrt().ceil() as usize).max(1);
        while !(lambda < sq(n_less) * less_coef) {
            n_less += 1;
        }
        while n_less > 1 && lambda < sq(n_less - 1) * less_coef {
            n_less -= 1;
        }

        let mut n_greater = (lambda.max(0.0) / greater_coef).sqrt().floor() as usize;
        while lambda > sq(n_greater + 1) * greater_coef {
            n_greater += 1;
        }
        while n_greater >= 1 && !(lambda > sq(n_greater) * greater_coef) {
            n_greater -= 1;
        }

        Ok(PeriodVerdict {
            lambda,
            n_less_than: Some(n_less),
            n_greater_than: (n_greater >= 1).then_some(n_greater),
            caveat: PERIOD_CAVEAT,
        })
    }
}
