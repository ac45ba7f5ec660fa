//! Tangent-form solutions of the primal and dual Riccati terminal-value
//! problems and their blow-up times.
//!
//! Primal: `k' = q(rho) k^2 + p k + r`, `k(T) = 0`.
//! Dual:   `k~' = q~ k~^2 + p~ k~ + r~(rho)`, `k~(T) = 0`.
//!
//! Both are valid on `rho < rho_max`, where `omega = sqrt(r q - p^2/4)` is
//! real and positive. The primal solution first blows up backward from `T`
//! after `delta = (pi/2 + theta)/omega`, the dual after
//! `delta~ = (pi/2 - theta)/omega`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RiccatiKind {
    Primal,
    Dual,
}

/// Coefficients of `k' = q k^2 + p k + r` with terminal value `k(T) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiCoeffs {
    pub q: f64,
    pub p: f64,
    pub r: f64,
    pub kind: RiccatiKind,
}

impl RiccatiCoeffs {
    pub fn new(q: f64, p: f64, r: f64, kind: RiccatiKind) -> Self {
        RiccatiCoeffs { q, p, r, kind }
    }

    /// Right-hand side `q k^2 + p k + r`.
    #[inline]
    pub fn rhs(&self, k: f64) -> f64 {
        (self.q * k + self.p) * k + self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlowUp {
    pub t_star: f64,
    /// `T - t_star`.
    pub delta: f64,
    pub omega: f64,
    pub theta: f64,
}

impl Problem {
    pub fn riccati_coeffs(&self, rho: f64, kind: RiccatiKind) -> RiccatiCoeffs {
        let (q, r_tilde) = self.coefficients_at(rho);
        match kind {
            RiccatiKind::Primal => RiccatiCoeffs::new(q, self.params.p, self.params.r, kind),
            RiccatiKind::Dual => RiccatiCoeffs::new(self.params.q_tilde, self.params.p_tilde, r_tilde, kind),
        }
    }

    pub fn blowup_primal(&self, rho: f64) -> Result<BlowUp> {
        let (omega, theta) = self.omega_theta(rho)?;
        let delta = (FRAC_PI_2 + theta) / omega;
        Ok(BlowUp { t_star: self.t_final() - delta, delta, omega, theta })
    }

    pub fn blowup_dual(&self, rho: f64) -> Result<BlowUp> {
        let (omega, theta) = self.omega_theta(rho)?;
        let delta = (FRAC_PI_2 - theta) / omega;
        Ok(BlowUp { t_star: self.t_final() - delta, delta, omega, theta })
    }

    pub fn blowup(&self, rho: f64, kind: RiccatiKind) -> Result<BlowUp> {
        match kind {
            RiccatiKind::Primal => self.blowup_primal(rho),
            RiccatiKind::Dual => self.blowup_dual(rho),
        }
    }

    /// `(delta, delta~)`; their sum is `pi / omega`.
    pub fn deltas(&self, rho: f64) -> Result<(f64, f64)> {
        let (omega, theta) = self.omega_theta(rho)?;
        Ok(((FRAC_PI_2 + theta) / omega, (FRAC_PI_2 - theta) / omega))
    }

    /// Closed-form primal solution `k(t)` on `(t_rho, T]`.
    pub fn k_closed(&self, rho: f64, t: f64) -> Result<f64> {
        let b = self.blowup_primal(rho)?;
        self.guard_domain(t, b.t_star)?;
        let (q, _) = self.coefficients_at(rho);
        let p = self.params.p;
        let phase = b.omega * (self.t_final() - t) - b.theta;
        Ok(-(b.omega / q) * phase.tan() - p / (2.0 * q))
    }

    /// Closed-form dual solution `k~(t)` on `(t~_rho, T]`.
    pub fn k_tilde_closed(&self, rho: f64, t: f64) -> Result<f64> {
        let b = self.blowup_dual(rho)?;
        self.guard_domain(t, b.t_star)?;
        let qt = self.params.q_tilde;
        let pt = self.params.p_tilde;
        let phase = b.omega * (t - self.t_final()) - b.theta;
        Ok((b.omega / qt) * phase.tan() - pt / (2.0 * qt))
    }

    pub fn riccati_closed(&self, rho: f64, t: f64, kind: RiccatiKind) -> Result<f64> {
        match kind {
            RiccatiKind::Primal => self.k_closed(rho, t),
            RiccatiKind::Dual => self.k_tilde_closed(rho, t),
        }
    }

    fn guard_domain(&self, t: f64, t_star: f64) -> Result<()> {
        if t > t_star && t <= self.t_final() {
            Ok(())
        } else {
            Err(Error::OutsideDomain { t, t_star })
        }
    }

    /// Residuals of the two blow-up equations evaluated at the computed
    /// blow-up times, `(primal, dual)`.
    pub fn blowup_equation_residuals(&self, rho: f64) -> Result<(f64, f64)> {
        let (q, r_tilde) = self.coefficients_at(rho);
        let p = self.params.p;
        let r = self.params.r;
        let (qt, pt) = (self.params.q_tilde, self.params.p_tilde);
        let t = self.t_final();

        let primal = self.blowup_primal(rho)?;
        let lhs = (r * q - p * p / 4.0).sqrt() * (t - primal.t_star) + (-p / (4.0 * r * q - p * p).sqrt()).atan();
        let dual = self.blowup_dual(rho)?;
        let rhs = (qt * r_tilde - pt * pt / 4.0).sqrt() * (dual.t_star - t)
            + (pt / (4.0 * qt * r_tilde - pt * pt).sqrt()).atan();
        Ok(((lhs - FRAC_PI_2).abs(), (rhs + FRAC_PI_2).abs()))
    }
}

/// `pi / omega`, the combined primal + dual duration.
pub fn half_period(omega: f64) -> f64 {
    PI / omega
}
