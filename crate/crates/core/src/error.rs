//! Error type shared by all modules.

/// Errors produced by constructors and operations in this crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bracket entries must satisfy i < j (got i={i}, j={j})")]
    BracketIndexOrder { i: usize, j: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("linear map is singular or ill-conditioned (sigma_min={sigma_min:.3e}, sigma_max={sigma_max:.3e})")]
    SingularMap { sigma_min: f64, sigma_max: f64 },

    #[error("matrix is not symmetric (max deviation {deviation:.3e})")]
    NotSymmetric { deviation: f64 },

    #[error("metric is degenerate (eigenvalue {eigenvalue:.3e} below threshold {threshold:.3e})")]
    DegenerateMetric { eigenvalue: f64, threshold: f64 },

    #[error("degenerate restriction: no Gram-Schmidt pivot above {threshold:.3e} (best {best:.3e})")]
    DegenerateRestriction { best: f64, threshold: f64 },

    #[error("causality entries must be +1 or -1")]
    InvalidCausality,

    #[error("causality list has length {got}, expected {expected}")]
    CausalityLength { expected: usize, got: usize },

    #[error("frame is not orthonormal for the metric (max deviation {deviation:.3e})")]
    FrameNotOrthonormal { deviation: f64 },

    #[error("vertical complement must have dimension 2 (got {got})")]
    CodimensionNotTwo { got: usize },

    #[error("invalid Cartan involution: {reason}")]
    InvalidInvolution { reason: String },

    #[error("unsupported signature: {context}")]
    UnsupportedSignature { context: String },

    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    #[error("factor partition is not closed under the bracket (factor {factor}, witness {witness:.3e})")]
    FactorsNotClosed { factor: usize, witness: f64 },

    #[error("sectional plane indices must differ (got {index} twice)")]
    EqualPlaneIndices { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
