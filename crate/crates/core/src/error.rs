use thiserror::Error;

use crate::oracle::Trajectory;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("structure condition H23 = -H33*H13 violated (residual {residual:e})")]
    StructureViolation { residual: f64 },

    #[error("degenerate coefficients: {0} must be non-zero")]
    DegenerateCoefficients(&'static str),

    #[error("rho = {rho} is not admissible (closed forms require rho < rho_max = {rho_max})")]
    InadmissibleRho { rho: f64, rho_max: f64 },

    #[error("t = {t} lies outside the existence interval ({t_star}, T]")]
    OutsideDomain { t: f64, t_star: f64 },

    #[error("solution blows up near t = {t_blowup} before reaching t_end = {t_end}")]
    BlowUpBeforeTEnd { t_blowup: f64, t_end: f64, partial: Box<Trajectory> },

    #[error("step size underflow at s = {s}")]
    StepUnderflow { s: f64 },

    #[error("maximum number of steps ({0}) exceeded")]
    MaxStepsExceeded(usize),

    #[error("no blow-up within backward horizon {horizon}")]
    NoBlowUpWithinHorizon { horizon: f64 },

    #[error("trajectory has {0} samples, at least 3 are required")]
    InsufficientSamples(usize),

    #[error("root of the counting equation for n = {n} lies outside the closed-form range (F_n(rho_hi) = {f_hi:e})")]
    RootOutOfClosedFormRange { n: usize, f_hi: f64 },

    #[error("lower bracket expansion failed for n = {n}")]
    BracketExpansionFailed { n: usize },

    #[error("bisection for n = {n} stalled with |F_n| = {residual:e}")]
    NoConvergence { n: usize, residual: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("-H11*H22 must be positive (got {0})")]
    InvalidSign(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
