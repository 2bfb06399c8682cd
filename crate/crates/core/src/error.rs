use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RbsError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid step: {0}")]
    InvalidStep(String),

    #[error("numeric fault: {0}")]
    NumericFault(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("rank deficient: {0}")]
    Rank(String),

    #[error(
        "calibration failed: target {target} s not bracketed by [{lo}, {hi}] \
         (free-spin durations {duration_lo} s and {duration_hi} s)"
    )]
    Calibration {
        target: f64,
        lo: f64,
        hi: f64,
        duration_lo: f64,
        duration_hi: f64,
    },

    #[error("unknown bench case {0} (expected 1, 2 or 3)")]
    UnknownCase(u32),

    #[error("sweep grid has {cells} cells, over the cap of {cap}")]
    GridTooLarge { cells: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, RbsError>;
