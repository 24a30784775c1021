use crate::Real;
use thiserror::Error;

/// Errors surfaced by construction, evaluation and topology operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A multi-component cylindrical spec violates k_j/n_j = const.
    #[error("constraint k_j/n_j = const violated: {detail}")]
    ConstraintViolation { detail: String },

    /// Two components share the same winding number n_j.
    #[error("duplicate winding number n = {n}")]
    DuplicateWinding { n: u32 },

    /// A parameter is outside the range a spec accepts.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Evaluation requested outside the family's validity domain.
    #[error("point outside validity domain: {0}")]
    DomainError(String),

    /// A finite-difference stencil touched a pole or left the domain.
    #[error("finite-difference stencil hit a singular point: {0}")]
    StencilSingular(String),

    /// Root bracketing failed; carries the scanned range.
    #[error("no root found in scanned range [{lo}, {hi}]: {detail}")]
    NoRoot { lo: Real, hi: Real, detail: String },

    /// Consecutive contour samples differ in phase by more than π/2.
    #[error("phase jump of {jump} rad between contour samples {index} and {}; increase sample count", index + 1)]
    PhaseJump { index: usize, jump: Real },

    /// The field vanishes on the winding contour.
    #[error("|u| = {magnitude} below tolerance on contour at sample {index}")]
    ZeroOnContour { index: usize, magnitude: Real },

    /// Degree quadrature defect exceeded the acceptance threshold.
    #[error("degree grid too coarse: defect {defect} >= 0.05")]
    GridTooCoarse { defect: Real },

    /// Two traced zeros approached within refinement tolerance.
    #[error("traced string branches collided near z = {z}")]
    BranchCollision { z: Real },

    /// Braid endpoint matching failed over the requested period.
    #[error("braid closure endpoints do not match start points: {0}")]
    NotClosed(String),

    /// Strand rotation over the period is not an integer multiple of 2π/s.
    #[error("total rotation {rotation} is not commensurate with 2π/{strands}")]
    NonCommensurate { rotation: Real, strands: usize },
}
