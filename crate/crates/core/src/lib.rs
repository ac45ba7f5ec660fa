//! Eigenvalues of one-dimensional stochastic Hamiltonian systems with
//! boundary conditions `x(0) = 0`, `y(T) = 0`, computed from the blow-up
//! times of the associated Riccati terminal-value problems.
//!
//! * [`problem`]: coefficients, standing-assumption checks, derived scalars.
//! * [`riccati`]: tangent-form Riccati solutions and blow-up times.
//! * [`oracle`]: independent adaptive integration of the same problems.
//! * [`spectrum`]: counting equation, eigenvalues, asymptotic bounds and
//!   the period classifier.
//! * [`cli`]: the batch command-line frontend used by the `hamspec` binary.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod ode;
pub mod oracle;
pub mod problem;
pub mod riccati;
pub mod spectrum;

pub use error::{Error, Result};
pub use oracle::{detect_blowup, integrate_backward, residual_scan, BlowUpEstimate, IntegratorOptions, Trajectory};
pub use problem::{
    dual_hamiltonian, dual_solution_map, reduced_params, validate_monotonicity, validate_structure, Coefficients,
    MonotonicityReport, Problem, ReducedParams, SpectralParameter,
};
pub use riccati::{BlowUp, RiccatiCoeffs, RiccatiKind};
pub use spectrum::{AsymptoticsReport, EigenvalueRecord, PeriodVerdict, SolverTolerances, SweepEntry};
