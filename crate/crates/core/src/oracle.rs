//! Independent numerical path for the Riccati terminal-value problems.
//!
//! Integration runs forward in `s = T - t` so the backward problem becomes
//! `dk/ds = -(q k^2 + p k + r)`, `k(0) = 0`. Near a pole the state moves to
//! the reciprocal chart `w = 1/k` with `dw/ds = q + p w + r w^2`, where the
//! blow-up is an ordinary zero crossing of `w`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::{dp5_step, DenseStep, PiController};
use crate::problem::Problem;
use crate::riccati::{RiccatiCoeffs, RiccatiKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegratorOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Switch to the `w = 1/k` chart once `|k|` reaches this value.
    pub k_switch: f64,
    /// Longest backward duration searched for a blow-up.
    pub horizon: f64,
    pub max_steps: usize,
    /// Target width of the final blow-up bracket.
    pub refine_tol: f64,
}

impl IntegratorOptions {
    /// Defaults scaled to a horizon `T`.
    pub fn for_horizon(t_final: f64) -> Self {
        IntegratorOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            k_switch: 1e3,
            horizon: 50.0 * t_final,
            max_steps: 10_000_000,
            refine_tol: 1e-10 * t_final,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.refine_tol > 0.0
            && self.k_switch > 1.0
            && self.horizon > 0.0
            && self.max_steps > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid integrator options {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlowUpEstimate {
    pub t_star: f64,
    /// Half-width of the final bracket on the crossing.
    pub uncertainty: f64,
    pub chart_switches: usize,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// `k` itself.
    Direct,
    /// `w = 1/k`.
    Reciprocal,
}

/// `dk/ds` in the direct chart.
pub fn direct_rhs(rc: &RiccatiCoeffs, k: f64) -> f64 {
    -rc.rhs(k)
}

/// `dw/ds` in the reciprocal chart.
pub fn reciprocal_rhs(rc: &RiccatiCoeffs, w: f64) -> f64 {
    rc.q + (rc.p + rc.r * w) * w
}

fn chart_rhs(rc: &RiccatiCoeffs, chart: Chart, y: f64) -> f64 {
    match chart {
        Chart::Direct => direct_rhs(rc, y),
        Chart::Reciprocal => reciprocal_rhs(rc, y),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub k: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Segment {
    chart: Chart,
    step: DenseStep,
}

/// Samples `(t, k)` in integration order (decreasing `t`), optionally with
/// the dense interpolants of the steps that produced them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub t_final: f64,
    pub points: Vec<TrajectoryPoint>,
    segments: Vec<Segment>,
}

impl Trajectory {
    /// A bare sample list without dense output.
    pub fn from_points(t_final: f64, points: Vec<TrajectoryPoint>) -> Self {
        Trajectory { t_final, points, segments: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn has_dense_output(&self) -> bool {
        !self.segments.is_empty()
    }

    pub fn last(&self) -> Option<TrajectoryPoint> {
        self.points.last().copied()
    }

    /// Dense evaluation of `k(t)`; `None` outside the integrated range.
    pub fn eval(&self, t: f64) -> Option<f64> {
        let s = self.t_final - t;
        let first = self.segments.first()?;
        let last = self.segments.last()?;
        if s < first.step.x0 || s > last.step.x1() {
            return None;
        }
        let idx = self.segments.partition_point(|seg| seg.step.x1() < s);
        let seg = self.segments.get(idx).unwrap_or(last);
        let y = seg.step.eval(s);
        Some(match seg.chart {
            Chart::Direct => y,
            Chart::Reciprocal => 1.0 / y,
        })
    }

    /// CSV with header `t,k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,k\n");
        for p in &self.points {
            out.push_str(&format!("{:.16e},{:.16e}\n", p.t, p.k));
        }
        out
    }
}

enum MarchEnd {
    Reached,
    Crossing(DenseStep),
}

struct Marcher<'a> {
    rc: &'a RiccatiCoeffs,
    opts: &'a IntegratorOptions,
    t_final: f64,
    steps: usize,
    switches: usize,
}

impl Marcher<'_> {
    /// Advances from `s = 0` to `limit`, stopping early at a zero crossing
    /// of `w`. With `stop_at_limit = false`, reaching `limit` is reported as
    /// `NoBlowUpWithinHorizon`.
    fn run(&mut self, limit: f64, stop_at_limit: bool, traj: &mut Trajectory) -> Result<MarchEnd> {
        let rc = self.rc;
        let opts = self.opts;
        let mut chart = Chart::Direct;
        let mut s = 0.0;
        let mut y = 0.0;
        let mut f = chart_rhs(rc, chart, y);
        let mut h = 1e-4 * limit.max(f64::MIN_POSITIVE);
        let mut ctrl = PiController::default();
        traj.points.push(TrajectoryPoint { t: self.t_final, k: 0.0 });

        loop {
            if s >= limit {
                return if stop_at_limit {
                    Ok(MarchEnd::Reached)
                } else {
                    Err(Error::NoBlowUpWithinHorizon { horizon: opts.horizon })
                };
            }
            if self.steps >= opts.max_steps {
                return Err(Error::MaxStepsExceeded(opts.max_steps));
            }
            let remaining = limit - s;
            let last = h >= remaining;
            if last {
                h = remaining;
            } else if h < 16.0 * f64::EPSILON * s.abs().max(1.0) {
                return Err(Error::StepUnderflow { s });
            }

            self.steps += 1;
            let rhs = |v: f64| chart_rhs(rc, chart, v);
            let trial = dp5_step(&rhs, s, y, f, h);
            if !trial.y.is_finite() || !trial.err.is_finite() {
                h *= 0.2;
                continue;
            }
            // A sign flip between two large values of k means the step
            // jumped a pole; retry with a smaller step.
            if chart == Chart::Direct && y.abs() > 1.0 && trial.y.abs() > 1.0 && y.signum() != trial.y.signum() {
                h *= 0.5;
                continue;
            }
            let tol = opts.abs_tol + opts.rel_tol * y.abs().max(trial.y.abs());
            let ratio = trial.err / tol;
            let fac = ctrl.factor(ratio);
            if ratio > 1.0 {
                h *= fac;
                continue;
            }

            let s_new = if last { limit } else { s + h };
            let k_new = match chart {
                Chart::Direct => trial.y,
                Chart::Reciprocal => 1.0 / trial.y,
            };
            traj.points.push(TrajectoryPoint { t: self.t_final - s_new, k: k_new });
            traj.segments.push(Segment { chart, step: trial.dense });

            if chart == Chart::Reciprocal && (trial.y == 0.0 || trial.y.signum() != y.signum()) {
                return Ok(MarchEnd::Crossing(trial.dense));
            }

            s = s_new;
            y = trial.y;
            f = trial.f;
            h *= fac;

            match chart {
                Chart::Direct if y.abs() >= opts.k_switch => {
                    chart = Chart::Reciprocal;
                    y = 1.0 / y;
                    f = chart_rhs(rc, chart, y);
                    self.switches += 1;
                }
                Chart::Reciprocal if y.abs() > 1.0 => {
                    chart = Chart::Direct;
                    y = 1.0 / y;
                    f = chart_rhs(rc, chart, y);
                    self.switches += 1;
                }
                _ => {}
            }
        }
    }
}

/// Integrates `k' = q k^2 + p k + r`, `k(T) = 0`, backward from `T` to `t_end`.
pub fn integrate_backward(
    rc: &RiccatiCoeffs,
    t_final: f64,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    opts.validate()?;
    if t_end > t_final {
        return Err(Error::InvalidArgument(format!("t_end = {t_end} exceeds T = {t_final}")));
    }
    let mut traj = Trajectory { t_final, ..Default::default() };
    if t_end == t_final {
        traj.points.push(TrajectoryPoint { t: t_final, k: 0.0 });
        return Ok(traj);
    }
    let mut m = Marcher { rc, opts, t_final, steps: 0, switches: 0 };
    match m.run(t_final - t_end, true, &mut traj)? {
        MarchEnd::Reached => Ok(traj),
        MarchEnd::Crossing(step) => {
            let s_cross = refine_crossing(&step, opts.refine_tol).0;
            Err(Error::BlowUpBeforeTEnd { t_blowup: t_final - s_cross, t_end, partial: Box::new(traj) })
        }
    }
}

/// Bisection on the dense interpolant of `w`; returns the bracket midpoint
/// and half-width.
fn refine_crossing(step: &DenseStep, width: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (step.x0, step.x1());
    let w_lo = step.y0();
    if step.y1() == 0.0 {
        return (hi, 0.0);
    }
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let w_mid = step.eval(mid);
        if w_mid != 0.0 && w_mid.signum() == w_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), 0.5 * (hi - lo))
}

/// Estimates the blow-up time of the terminal-value problem numerically.
pub fn detect_blowup(rc: &RiccatiCoeffs, t_final: f64, opts: &IntegratorOptions) -> Result<BlowUpEstimate> {
    opts.validate()?;
    let mut traj = Trajectory { t_final, ..Default::default() };
    let mut m = Marcher { rc, opts, t_final, steps: 0, switches: 0 };
    match m.run(opts.horizon, false, &mut traj)? {
        MarchEnd::Reached => Err(Error::NoBlowUpWithinHorizon { horizon: opts.horizon }),
        MarchEnd::Crossing(step) => {
            let (s_cross, uncertainty) = refine_crossing(&step, opts.refine_tol);
            Ok(BlowUpEstimate { t_star: t_final - s_cross, uncertainty, chart_switches: m.switches, steps: m.steps })
        }
    }
}

/// Largest normalised mismatch `|dk/dt - (q k^2 + p k + r)| / (1 + |q| k^2)`
/// over the interior samples.
pub fn residual_scan(traj: &Trajectory, rc: &RiccatiCoeffs) -> Result<f64> {
    let pts = &traj.points;
    if pts.len() < 3 {
        return Err(Error::InsufficientSamples(pts.len()));
    }
    let span = (pts[pts.len() - 1].t - pts[0].t).abs();
    let delta = 1e-6 * span;
    let mut worst: f64 = 0.0;
    for i in 1..pts.len() - 1 {
        let k = pts[i].k;
        let dense_slope = if traj.has_dense_output() {
            match (traj.eval(pts[i].t + delta), traj.eval(pts[i].t - delta)) {
                (Some(kp), Some(km)) => Some((kp - km) / (2.0 * delta)),
                _ => None,
            }
        } else {
            None
        };
        let slope = dense_slope.unwrap_or_else(|| {
            let (a, b, c) = (pts[i - 1], pts[i], pts[i + 1]);
            let h1 = b.t - a.t;
            let h2 = c.t - b.t;
            -h2 / (h1 * (h1 + h2)) * a.k + (h2 - h1) / (h1 * h2) * b.k + h1 / (h2 * (h1 + h2)) * c.k
        });
        let res = (slope - rc.rhs(k)).abs() / (1.0 + rc.q.abs() * k * k);
        worst = worst.max(res);
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub rho: f64,
    pub primal_closed: f64,
    pub primal_oracle: BlowUpEstimate,
    pub primal_gap: f64,
    pub primal_tol: f64,
    pub dual_closed: f64,
    pub dual_oracle: BlowUpEstimate,
    pub dual_gap: f64,
    pub dual_tol: f64,
    pub pass: bool,
}

/// Agreement threshold between closed-form and integrated blow-up times.
pub fn crosscheck_tolerance(delta: f64) -> f64 {
    1e-6 * (1.0 + delta)
}

impl Problem {
    /// Compares closed-form blow-up times with the integrated estimates.
    pub fn crosscheck(&self, rho: f64, opts: &IntegratorOptions) -> Result<CrosscheckReport> {
        let primal = self.blowup_primal(rho)?;
        let dual = self.blowup_dual(rho)?;
        let t = self.t_final();
        let po = detect_blowup(&self.riccati_coeffs(rho, RiccatiKind::Primal), t, opts)?;
        let dor = detect_blowup(&self.riccati_coeffs(rho, RiccatiKind::Dual), t, opts)?;
        let primal_gap = (po.t_star - primal.t_star).abs();
        let dual_gap = (dor.t_star - dual.t_star).abs();
        let primal_tol = crosscheck_tolerance(primal.delta);
        let dual_tol = crosscheck_tolerance(dual.delta);
        Ok(CrosscheckReport {
            rho,
            primal_closed: primal.t_star,
            primal_oracle: po,
            primal_gap,
            primal_tol,
            dual_closed: dual.t_star,
            dual_oracle: dor,
            dual_gap,
            dual_tol,
            pass: primal_gap <= primal_tol && dual_gap <= dual_tol,
        })
    }
}
