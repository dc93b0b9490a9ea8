use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unknown name: {0}")]
    Unknown(String),

    #[error("dimension {dim} exceeds the dense cap {cap}; use the folded near-zero solver")]
    DenseCap { dim: usize, cap: usize },

    #[error("solver did not converge after {iterations} filter passes (best residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error("gap closing detected: {0}")]
    GapClosing(String),

    #[error("pairing not converged: raw value {raw} on grid {grid}")]
    Unconverged { raw: f64, grid: usize },

    #[error("corner index ill-defined: edge gap {gap} below threshold {threshold}")]
    EdgeGap { gap: f64, threshold: f64 },

    #[error("faces not gapped: {0}")]
    FacesNotGapped(String),

    #[error("ambiguous hinge assignment at k index {k_index}, band {band} (weights {weights:?})")]
    AmbiguousHinge { k_index: usize, band: usize, weights: Vec<f64> },

    #[error("symmetry-inconsistent hinge data: {0}")]
    SymmetryInconsistent(String),

    #[error("symmetry violated: {0}")]
    NotCovariant(String),

    #[error("subgroup containment failure: {0}")]
    Containment(String),

    #[error("exactness violated: {0}")]
    NotExact(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
