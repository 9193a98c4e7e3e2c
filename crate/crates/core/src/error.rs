use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The adaptive quadrature could not certify convergence: either the
    /// truncation window kept growing with non-decreasing increments, or the
    /// subdivision budget ran out. Carries the partial sum accumulated so far
    /// and the ratio of the last two increments (>= 1 means the tail is not
    /// shrinking).
    #[error("integral divergence suspected (partial sum {partial:.6e}, last increment ratio {last_ratio:.4})")]
    DivergenceSuspected { partial: f64, last_ratio: f64 },

    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),

    #[error("sampled grid too coarse for differentiation: {count} nodes, need at least 32")]
    GridTooCoarse { count: usize },

    #[error("derivative order {order} not supported, only 1 and 2")]
    InvalidOrder { order: u32 },

    #[error("unsupported dimension {n}, radial quadrature covers 2 and 3")]
    UnsupportedDimension { n: u32 },

    #[error("flux {flux:.6} too small: a square-integrable mode with constant polynomial factor needs flux > 1")]
    FluxTooSmall { flux: f64 },

    #[error("not square integrable: {0}")]
    NotSquareIntegrable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("test function is identically zero")]
    ZeroFunction,

    #[error("objective returned NaN at {0}")]
    NonFiniteObjective(String),

    #[error("no finite objective value in the initial simplex")]
    AllInfeasible,

    #[error("field sample not finite at ({x:.4}, {y:.4})")]
    NonEvaluable { x: f64, y: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
