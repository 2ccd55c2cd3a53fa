use thiserror::Error;

/// Errors raised by the curve operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("edge {edge} has zero length")]
    ZeroEdge { edge: usize },

    #[error("{got} vertices given, a {kind} curve needs at least {min}")]
    TooFewVertices {
        got: usize,
        min: usize,
        kind: &'static str,
    },

    #[error("invalid winding m={m} for n={n}: need 1 <= m <= n-1 and m/n = 1/2 rejected")]
    InvalidWinding { n: usize, m: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} is out of range for {what} (valid: {valid})")]
    IndexOutOfRange {
        index: usize,
        what: &'static str,
        valid: String,
    },

    #[error("operation requires a closed curve")]
    OpenCurve,

    #[error("vertex {vertex} is a cusp (turning angle +-pi)")]
    CuspVertex { vertex: usize },

    #[error("edge {edge} touches a cusp vertex")]
    CuspAdjacent { edge: usize },

    #[error("turning sum is {residual:e} away from a multiple of 2pi")]
    NonIntegerTurning { residual: f64 },

    #[error("line element scheme {scheme} is not applicable: {reason}")]
    SchemeInapplicable {
        scheme: &'static str,
        reason: String,
    },

    #[error("field has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("variation field must vanish at boundary vertex {vertex}")]
    BoundaryNotFixed { vertex: usize },

    #[error("kappa must be nonzero")]
    KappaZero,

    #[error("offset edge {edge} collapses (1 - t*kappa(e) = {factor:e})")]
    EdgeCollapse { edge: usize, factor: f64 },

    #[error("field mean {mean:e} is not zero")]
    MeanNotZero { mean: f64 },

    #[error("curve is not an equilibrium for kappa={kappa} (max residual {residual:e})")]
    NotEquilibrium { kappa: f64, residual: f64 },

    #[error("volume gradient vanishes identically")]
    ZeroVolumeGradient,

    #[error("flow step produced a zero edge after {halvings} step halvings")]
    StepProducedZeroEdge { halvings: u32 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl CurveError {
    /// True for failures that come from the numerics (degenerate geometry)
    /// rather than from invalid input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            CurveError::CuspVertex { .. }
                | CurveError::CuspAdjacent { .. }
                | CurveError::NonIntegerTurning { .. }
                | CurveError::EdgeCollapse { .. }
                | CurveError::ZeroVolumeGradient
                | CurveError::StepProducedZeroEdge { .. }
                | CurveError::InternalInconsistency(_)
        )
    }
}

pub type Result<T, E = CurveError> = std::result::Result<T, E>;
