//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the analysis pipeline and its building blocks.
#[derive(Debug, Error)]
pub enum Error {
    /// A region of interest does not fit inside its image or is smaller
    /// than the 3x3 gradient kernel support.
    #[error("degenerate roi (frame {frame}, track {track_id}): {reason}")]
    DegenerateRoi {
        frame: u64,
        track_id: u64,
        reason: String,
    },

    /// Image dimensions and buffer length disagree, or a dimension is zero.
    #[error("invalid image geometry: {0}")]
    InvalidImage(String),

    /// A value fell outside its documented interval.
    #[error("{what} = {value} outside {interval}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        interval: &'static str,
    },

    /// Fewer samples than a statistic needs.
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// All samples identical; variance is zero and no distribution fits.
    #[error("constant samples: variance is zero")]
    ConstantSamples,

    /// Sample variance is too large for any Beta distribution to match
    /// (var >= mu*(1-mu)).
    #[error("infeasible moments: var {var} >= mu(1-mu) {bound}")]
    InfeasibleMoments { var: f64, bound: f64 },

    /// Density evaluation at a support endpoint where the density diverges.
    #[error("beta pdf pole at p = {p} for alpha = {alpha}, beta = {beta}")]
    PdfPole { p: f64, alpha: f64, beta: f64 },

    /// A synthetic-data spec whose parameters do not suit its kind.
    #[error("invalid synth spec: {0}")]
    InvalidSynthSpec(String),

    /// A roi record referenced a frame the sequence does not contain.
    #[error("roi record (frame {frame}, track {track_id}) references a missing frame: sequence has {available} frames")]
    MissingFrame {
        frame: u64,
        track_id: u64,
        available: usize,
    },

    /// A roi file row that could not be parsed.
    #[error("malformed roi row at line {line}: {reason}")]
    MalformedRoiRow { line: usize, reason: String },

    /// A raster file that is not valid 8-bit PGM.
    #[error("invalid pgm data: {0}")]
    InvalidPgm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that mean "the requested statistics cannot exist",
    /// as opposed to malformed input. Front ends map these to a dedicated
    /// exit code.
    pub fn is_infeasible_stats(&self) -> bool {
        matches!(
            self,
            Error::ConstantSamples
                | Error::InfeasibleMoments { .. }
                | Error::InsufficientSamples { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
