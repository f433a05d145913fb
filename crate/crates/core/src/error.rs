use thiserror::Error;

/// Errors produced by model construction and the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A hopping entry failed validation; carries the index of the offending
    /// entry in the input list.
    #[error("hopping entry {index}: {reason}")]
    BadHoppingEntry { index: usize, reason: String },

    #[error("{0}")]
    InvalidInput(String),

    /// The sampled spectrum touches zero: the model is not an insulator at
    /// this resolution.
    #[error(
        "not an insulator at this resolution: smallest |eigenvalue| {smallest:.3e} at k = {point:?} (gap tolerance {gap_tol:.1e})"
    )]
    NotAnInsulator {
        point: Vec<f64>,
        smallest: f64,
        gap_tol: f64,
    },

    /// The count of positive eigenvalues varies over the grid; the gap
    /// tolerance was too small for the data.
    #[error(
        "projector rank varies across the grid: {found} at k = {point:?} vs {expected} at the first point; gap tolerance too small"
    )]
    RankInconsistent {
        point: Vec<f64>,
        expected: usize,
        found: usize,
    },

    /// The plaquette sum did not land near an integer, or an overlap matrix
    /// was numerically singular.
    #[error(
        "Chern number unresolved on plane ({},{}) at N = {grid_n}: {detail}; use a finer grid (possible gap closing or too-coarse N)",
        plane[0], plane[1]
    )]
    ChernUnresolved {
        plane: [usize; 2],
        grid_n: usize,
        detail: String,
    },

    #[error("ribbon width {width} does not exceed twice the hopping range {range}; the compression would distort the bulk")]
    WidthTooSmall { width: usize, range: i64 },

    #[error(
        "edge branch tracking failed between k_parallel = {k_lo:.6} and {k_hi:.6}: {detail}; increase parallel_points"
    )]
    TrackingFailed { k_lo: f64, k_hi: f64, detail: String },

    #[error("matrix is not unitary within {tol:.1e} (defect {defect:.3e})")]
    NotUnitary { defect: f64, tol: f64 },

    #[error(
        "not an involution datum: U*conj(U) is not a scalar sign (defect from +1: {defect_plus:.3e}, from -1: {defect_minus:.3e})"
    )]
    NotAnInvolution { defect_plus: f64, defect_minus: f64 },

    #[error("quaternionic fibre must have even dimension, got {bands} bands")]
    OddBands { bands: usize },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerics (gap closing, unresolved plaquette
    /// sums, branch tracking) as opposed to bad input.
    pub fn is_unresolved_numerics(&self) -> bool {
        matches!(
            self,
            Error::NotAnInsulator { .. }
                | Error::RankInconsistent { .. }
                | Error::ChernUnresolved { .. }
                | Error::TrackingFailed { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
