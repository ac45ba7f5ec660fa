//! Problem definition, standing-assumption checks and derived scalars.
//!
//! The one-dimensional system is parameterised by nine real coefficients
//! `H11..H33` and a horizon `T`; the spectral parameter enters only through
//! `rho = 1 - lambda` multiplying `H22`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, symmetric_part, Mat3};

/// Default relative tolerance for [`validate_structure`].
pub const STRUCTURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub h11: f64,
    pub h12: f64,
    pub h13: f64,
    pub h21: f64,
    pub h22: f64,
    pub h23: f64,
    pub h31: f64,
    pub h32: f64,
    pub h33: f64,
    /// Time horizon `T`.
    pub t_final: f64,
}

impl Coefficients {
    /// Builds coefficients from a row-major matrix `h[i][j] = H(i+1)(j+1)`.
    pub fn new(h: Mat3, t_final: f64) -> Result<Self> {
        let c = Coefficients {
            h11: h[0][0],
            h12: h[0][1],
            h13: h[0][2],
            h21: h[1][0],
            h22: h[1][1],
            h23: h[1][2],
            h31: h[2][0],
            h32: h[2][1],
            h33: h[2][2],
            t_final,
        };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        if !self.matrix().iter().flatten().all(|x| x.is_finite()) || !self.t_final.is_finite() {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        if self.t_final <= 0.0 {
            return Err(Error::InvalidArgument(format!("T must be positive, got {}", self.t_final)));
        }
        Ok(())
    }

    pub fn matrix(&self) -> Mat3 {
        [[self.h11, self.h12, self.h13], [self.h21, self.h22, self.h23], [self.h31, self.h32, self.h33]]
    }

    /// `H12` and `H32` do not enter the Riccati equations.
    pub fn has_unused_couplings(&self) -> bool {
        self.h12 != 0.0 || self.h32 != 0.0
    }
}

/// `rho = 1 - lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    pub rho: f64,
    pub lambda: f64,
}

impl SpectralParameter {
    pub fn from_rho(rho: f64) -> Self {
        SpectralParameter { rho, lambda: 1.0 - rho }
    }

    pub fn from_lambda(lambda: f64) -> Self {
        SpectralParameter { rho: 1.0 - lambda, lambda }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    /// Largest `alpha` with symmetric part `<= -alpha I`.
    pub alpha: f64,
    /// Eigenvalues of the symmetric part, descending.
    pub eigenvalues: [f64; 3],
    pub passes: bool,
}

/// Checks the monotonicity condition on
/// `M = [[-H11,-H12,-H13],[H21,H22,H23],[H31,H32,H33]]`
/// through the spectrum of its symmetric part.
pub fn validate_monotonicity(c: &Coefficients) -> MonotonicityReport {
    let m = [[-c.h11, -c.h12, -c.h13], [c.h21, c.h22, c.h23], [c.h31, c.h32, c.h33]];
    let eigenvalues = symmetric_eigenvalues(&symmetric_part(&m));
    let alpha = -eigenvalues[0];
    MonotonicityReport { alpha, eigenvalues, passes: alpha > 0.0 }
}

pub fn structure_residual(c: &Coefficients) -> f64 {
    (c.h23 + c.h33 * c.h13).abs()
}

/// Checks `H23 = -H33 H13` to relative tolerance `tol`.
pub fn validate_structure(c: &Coefficients, tol: f64) -> Result<()> {
    let residual = structure_residual(c);
    if residual <= tol * (1.0 + (c.h33 * c.h13).abs()) {
        Ok(())
    } else {
        Err(Error::StructureViolation { residual })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedParams {
    pub p: f64,
    pub p_tilde: f64,
    pub r: f64,
    pub q_tilde: f64,
    pub rho0: f64,
    pub rho_star: f64,
    /// Admissible bound `rho0 + rho_star`; closed forms need `rho < rho_max`.
    pub rho_max: f64,
    pub t_final: f64,
}

pub fn reduced_params(c: &Coefficients) -> Result<ReducedParams> {
    if c.h11 == 0.0 {
        return Err(Error::DegenerateCoefficients("H11"));
    }
    if c.h22 == 0.0 {
        return Err(Error::DegenerateCoefficients("H22"));
    }
    let h13_sq = c.h13 * c.h13;
    let p_tilde = 2.0 * c.h21 + h13_sq;
    let rho0 = c.h33 * h13_sq / c.h22;
    let rho_star = p_tilde * p_tilde / (4.0 * c.h11 * c.h22);
    Ok(ReducedParams {
        p: -p_tilde,
        p_tilde,
        r: -c.h11,
        q_tilde: c.h11,
        rho0,
        rho_star,
        rho_max: rho0 + rho_star,
        t_final: c.t_final,
    })
}

/// Coefficients plus their derived scalars; the entry point for every
/// rho-dependent computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Problem {
    pub coeffs: Coefficients,
    pub params: ReducedParams,
}

impl Problem {
    pub fn new(coeffs: Coefficients) -> Result<Self> {
        coeffs.check()?;
        let params = reduced_params(&coeffs)?;
        Ok(Problem { coeffs, params })
    }

    pub fn t_final(&self) -> f64 {
        self.coeffs.t_final
    }

    /// `(q(rho), r~(rho))` with `q = -(rho H22 - H33 H13^2)` and `r~ = -q`.
    pub fn coefficients_at(&self, rho: f64) -> (f64, f64) {
        let c = &self.coeffs;
        let q = -(rho * c.h22 - c.h33 * c.h13 * c.h13);
        (q, -q)
    }

    /// `(omega, theta)` with `omega = sqrt(r q - p^2/4)` and
    /// `theta = atan(p / sqrt(4 r q - p^2))`.
    pub fn omega_theta(&self, rho: f64) -> Result<(f64, f64)> {
        let inadmissible = Error::InadmissibleRho { rho, rho_max: self.params.rho_max };
        if !(rho < self.params.rho_max) {
            return Err(inadmissible);
        }
        let (q, _) = self.coefficients_at(rho);
        let p = self.params.p;
        let radicand = self.params.r * q - 0.25 * p * p;
        if !(radicand > 0.0) {
            return Err(inadmissible);
        }
        let omega = radicand.sqrt();
        let theta = (p / (2.0 * omega)).atan();
        Ok((omega, theta))
    }

    /// `-H11 H22`, positive whenever the monotonicity check passes.
    pub fn curvature(&self) -> f64 {
        -self.coeffs.h11 * self.coeffs.h22
    }
}

/// Dual Hamiltonian obtained through the Legendre transform.
pub fn dual_hamiltonian(c: &Coefficients, rho: f64) -> Result<Mat3> {
    if c.h33 == 0.0 {
        return Err(Error::DegenerateCoefficients("H33"));
    }
    let inv = 1.0 / c.h33;
    let a00 = inv * c.h32 * c.h32 - rho * c.h22;
    let a01 = inv * c.h32 * c.h31 - c.h21;
    let a02 = -inv * c.h32;
    let a11 = inv * c.h31 * c.h31;
    let a12 = -inv * c.h31;
    let a22 = inv;
    Ok([[a00, a01, a02], [a01, a11, a12], [a02, a12, a22]])
}

/// Maps a dual solution `(x~, y~, z~)` back to the original `(x, y, z)`.
pub fn dual_solution_map(c: &Coefficients, x_t: f64, y_t: f64, z_t: f64) -> Result<(f64, f64, f64)> {
    if c.h33 == 0.0 {
        return Err(Error::DegenerateCoefficients("H33"));
    }
    let inv = 1.0 / c.h33;
    Ok((y_t, x_t, -inv * c.h32 * x_t - inv * c.h31 * y_t + inv * z_t))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    pub(crate) fn instance_a() -> Coefficients {
        Coefficients::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]], PI).unwrap()
    }

    pub(crate) fn instance_b() -> Coefficients {
        Coefficients::new([[1.0, 0.0, 0.5], [0.2, -1.0, 0.5], [0.0, 0.0, -1.0]], 1.0).unwrap()
    }

    #[test]
    fn monotonicity_examples() {
        let r = validate_monotonicity(&instance_a());
        assert_eq!(r.alpha, 1.0);
        assert!(r.passes);

        let mut c = instance_a();
        c.h11 = -1.0;
        let r = validate_monotonicity(&c);
        assert_eq!(r.alpha, -1.0);
        assert!(!r.passes);

        let r = validate_monotonicity(&instance_b());
        assert!(r.passes);
        assert!(r.alpha >= 0.5);
        assert!((r.alpha - 0.692_928_578_572_857_5).abs() < 1e-14);
    }

    #[test]
    fn structure_examples() {
        assert!(validate_structure(&instance_b(), STRUCTURE_TOL).is_ok());
        assert!(validate_structure(&instance_a(), STRUCTURE_TOL).is_ok());
        let mut c = instance_b();
        c.h23 = 0.4;
        match validate_structure(&c, STRUCTURE_TOL) {
            Err(Error::StructureViolation { residual }) => assert!((residual - 0.1).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduced_params_examples() {
        let a = reduced_params(&instance_a()).unwrap();
        assert_eq!((a.p, a.r, a.rho0, a.rho_star, a.rho_max), (-0.0, -1.0, 0.0, 0.0, 0.0));

        let b = reduced_params(&instance_b()).unwrap();
        assert!((b.p_tilde - 0.65).abs() < 1e-15);
        assert_eq!(b.p, -b.p_tilde);
        assert!((b.rho0 - 0.25).abs() < 1e-15);
        assert!((b.rho_star + 0.105625).abs() < 1e-15);
        assert!((b.rho_max - 0.144375).abs() < 1e-15);
        assert_eq!(b.rho_max, b.rho0 + b.rho_star);

        let mut c = instance_a();
        c.h11 = 0.0;
        assert!(matches!(reduced_params(&c), Err(Error::DegenerateCoefficients("H11"))));
        let mut c = instance_a();
        c.h22 = 0.0;
        assert!(matches!(reduced_params(&c), Err(Error::DegenerateCoefficients("H22"))));
    }

    #[test]
    fn coefficients_at_examples() {
        let a = Problem::new(instance_a()).unwrap();
        assert_eq!(a.coefficients_at(-1.0), (-1.0, 1.0));
        let b = Problem::new(instance_b()).unwrap();
        let (q, rt) = b.coefficients_at(0.0);
        assert!((q + 0.25).abs() < 1e-15 && (rt - 0.25).abs() < 1e-15);
        let (q, _) = b.coefficients_at(b.params.rho0);
        assert!(q.abs() < 1e-15);
    }

    #[test]
    fn omega_theta_examples() {
        let a = Problem::new(instance_a()).unwrap();
        assert_eq!(a.omega_theta(-1.0).unwrap(), (1.0, 0.0));
        assert!(matches!(a.omega_theta(0.0), Err(Error::InadmissibleRho { .. })));
        assert!(matches!(a.omega_theta(1.0), Err(Error::InadmissibleRho { .. })));

        let b = Problem::new(instance_b()).unwrap();
        let (w, th) = b.omega_theta(0.0).unwrap();
        // mpmath, 40 digits
        assert!((w - 0.379_967_103_839_266_6).abs() < 1e-15);
        assert!((th + 0.707_584_436_725_355_6).abs() < 1e-15);
    }

    #[test]
    fn dual_hamiltonian_examples() {
        let a = instance_a();
        assert_eq!(dual_hamiltonian(&a, -2.0).unwrap(), [[-2.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, -1.0]]);
        let h = dual_hamiltonian(&a, 0.0).unwrap();
        assert_eq!(h[2][2], -1.0);
        assert!(h.iter().flatten().enumerate().all(|(i, &x)| i == 8 || x == 0.0));
        let h = dual_hamiltonian(&instance_b(), 0.0).unwrap();
        assert_eq!(h, [[0.0, -0.2, -0.0], [-0.2, 0.0, -0.0], [-0.0, -0.0, -1.0]]);

        let mut c = instance_a();
        c.h33 = 0.0;
        assert!(dual_hamiltonian(&c, 0.0).is_err());
        assert!(dual_solution_map(&c, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn dual_solution_map_examples() {
        assert_eq!(dual_solution_map(&instance_a(), 1.0, 2.0, 3.0).unwrap(), (2.0, 1.0, -3.0));
        assert_eq!(dual_solution_map(&instance_b(), 0.0, 0.0, 0.0).unwrap(), (0.0, 0.0, 0.0));
        let (x, y, z) = dual_solution_map(&instance_b(), 1.0, 0.0, 0.0).unwrap();
        assert_eq!((x, y), (0.0, 1.0));
        assert_eq!(z, 0.0);
    }

    #[test]
    fn spectral_parameter_relation() {
        let s = SpectralParameter::from_rho(-0.25);
        assert_eq!(s.lambda, 1.25);
        assert_eq!(SpectralParameter::from_lambda(1.25).rho, -0.25);
    }

    #[test]
    fn rejects_bad_horizon() {
        assert!(Coefficients::new([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]], 0.0).is_err());
        assert!(Coefficients::new([[f64::NAN, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]], 1.0).is_err());
    }

    prop_compose! {
        fn any_coeffs()(h in proptest::array::uniform9(-2.0f64..2.0), t in 0.1f64..5.0) -> Coefficients {
            Coefficients::new([[h[0], h[1], h[2]], [h[3], h[4], h[5]], [h[6], h[7], h[8]]], t).unwrap()
        }
    }

    prop_compose! {
        /// Diagonal-dominant draws; the symmetric part passes the
        /// monotonicity check for almost every sample.
        pub(crate) fn passing_coeffs()(
            d in (0.5f64..2.0, -2.0f64..-0.5, -2.0f64..-0.5),
            o in proptest::array::uniform5(-0.2f64..0.2),
            t in 0.2f64..4.0,
        ) -> Coefficients {
            let (h11, h22, h33) = d;
            let h13 = o[1];
            Coefficients::new([[h11, o[0], h13], [o[2], h22, -h33 * h13], [o[3], o[4], h33]], t).unwrap()
        }
    }

    proptest! {
        #[test]
        fn dual_riccati_identity(c in any_coeffs(), rho in -100.0f64..100.0) {
            prop_assume!(c.h11 != 0.0 && c.h22 != 0.0);
            let pb = Problem::new(c).unwrap();
            let (q, rt) = pb.coefficients_at(rho);
            let lhs = pb.params.q_tilde * rt;
            let rhs = pb.params.r * q;
            prop_assert!((lhs - rhs).abs() <= 1e-14 * (1.0 + rhs.abs()));
        }

        #[test]
        fn passing_monotonicity_fixes_signs(c in any_coeffs()) {
            let rep = validate_monotonicity(&c);
            prop_assert_eq!(rep.alpha, -rep.eigenvalues[0]);
            if rep.passes {
                prop_assert!(c.h11 > 0.0 && c.h22 < 0.0 && c.h33 < 0.0);
                let p = reduced_params(&c).unwrap();
                prop_assert!(p.r < 0.0 && p.rho_star <= 0.0);
            }
        }

        #[test]
        fn omega_theta_on_admissible_rho(c in passing_coeffs(), offset in 1e-6f64..1e3, rho2 in 1e-6f64..1e3) {
            prop_assume!(validate_monotonicity(&c).passes);
            let pb = Problem::new(c).unwrap();
            let rho = pb.params.rho_max - offset;
            let (w, th) = pb.omega_theta(rho).unwrap();
            prop_assert!(w > 0.0);
            prop_assert!(th > -std::f64::consts::FRAC_PI_2 && th < std::f64::consts::FRAC_PI_2);
            prop_assert_eq!(th == 0.0, pb.params.p == 0.0);
            prop_assert!(th.signum() == pb.params.p.signum() || pb.params.p == 0.0);
            // omega strictly decreasing in rho
            let lower = rho - rho2;
            let (w_lower, _) = pb.omega_theta(lower).unwrap();
            prop_assert!(w_lower > w);
        }

        #[test]
        fn dual_hamiltonian_symmetric(c in any_coeffs(), rho in -10.0f64..10.0) {
            prop_assume!(c.h33 != 0.0);
            let h = dual_hamiltonian(&c, rho).unwrap();
            for i in 0..3 { for j in 0..3 { prop_assert_eq!(h[i][j], h[j][i]); } }
        }

        #[test]
        fn dual_solution_map_linear(
            c in any_coeffs(),
            u in proptest::array::uniform3(-5.0f64..5.0),
            v in proptest::array::uniform3(-5.0f64..5.0),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
        ) {
            prop_assume!(c.h33.abs() > 1e-3);
            let m = |w: [f64; 3]| dual_solution_map(&c, w[0], w[1], w[2]).unwrap();
            let combo = [a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]];
            let lhs = m(combo);
            let (mu, mv) = (m(u), m(v));
            let rhs = (a * mu.0 + b * mv.0, a * mu.1 + b * mv.1, a * mu.2 + b * mv.2);
            let scale = 1.0 + rhs.0.abs().max(rhs.1.abs()).max(rhs.2.abs());
            prop_assert!((lhs.0 - rhs.0).abs() <= 1e-12 * scale);
            prop_assert!((lhs.1 - rhs.1).abs() <= 1e-12 * scale);
            prop_assert!((lhs.2 - rhs.2).abs() <= 1e-12 * scale);
        }
    }
}
