//! End-to-end orchestration: per-roi analysis, track filtering, grouped Beta
//! fits and report assembly.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beta_stats::{
    build_histogram, classify_texture, fit_beta_mom, scatter_params, shift_to_unit, BetaParams,
    Histogram, ScatterRow, TextureClass, DEFAULT_BETA_THRESHOLD, DEFAULT_BINS,
};
use crate::edge_map::{compute_gradient, threshold_edges, DEFAULT_T_GRAD};
use crate::error::{Error, Result};
use crate::excess::graph_excess;
use crate::raster::{GrayImage, Roi};
use crate::roi_filter::{Averaging, TrackFilter, DEFAULT_T_PE};
use crate::sampler::{derive_seed, sample_edge_points, DEFAULT_N_POINTS};

/// How excess-index populations are grouped for Beta fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grouping {
    /// One fit per track id.
    PerTrack,
    /// A single fit over every row of the run.
    Global,
}

/// One row of a roi track file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoiRecord {
    pub frame: u64,
    pub track_id: u64,
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl RoiRecord {
    pub fn to_roi(self) -> Roi {
        Roi::new(self.x, self.y, self.w, self.h, self.track_id, self.frame)
    }
}

/// Knobs of a run. Every threshold is echoed into the report so results are
/// reproducible from the report alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Gradient threshold on the [0, 255] luminance scale.
    pub t_grad: f32,
    /// Points sampled per roi.
    pub n_points: usize,
    /// Rejection threshold on the per-track running mean.
    pub t_pe: f64,
    /// High/low texture cutoff on the fitted beta shape.
    pub beta_threshold: f64,
    /// Histogram bins over [1, 2].
    pub bins: usize,
    /// Run seed; per-roi sampling seeds derive from it.
    pub seed: u64,
    pub grouping: Grouping,
    pub averaging: Averaging,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            t_grad: DEFAULT_T_GRAD,
            n_points: DEFAULT_N_POINTS,
            t_pe: DEFAULT_T_PE,
            beta_threshold: DEFAULT_BETA_THRESHOLD,
            bins: DEFAULT_BINS,
            seed: 0,
            grouping: Grouping::PerTrack,
            averaging: Averaging::Cumulative,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t_grad < 0.0 || !self.t_grad.is_finite() {
            return Err(Error::OutOfRange {
                what: "t_grad",
                value: self.t_grad as f64,
                interval: "[0, inf)",
            });
        }
        if self.n_points < 2 {
            return Err(Error::OutOfRange {
                what: "n_points",
                value: self.n_points as f64,
                interval: "[2, inf)",
            });
        }
        if !(self.t_pe > 0.0 && self.t_pe.is_finite()) {
            return Err(Error::OutOfRange {
                what: "t_pe",
                value: self.t_pe,
                interval: "(0, inf)",
            });
        }
        if !(self.beta_threshold > 0.0 && self.beta_threshold.is_finite()) {
            return Err(Error::OutOfRange {
                what: "beta_threshold",
                value: self.beta_threshold,
                interval: "(0, inf)",
            });
        }
        if self.bins == 0 {
            return Err(Error::OutOfRange {
                what: "bins",
                value: 0.0,
                interval: "[1, inf)",
            });
        }
        self.averaging.validate()
    }
}

/// Result of analyzing one roi: the excess index plus the intermediate
/// totals behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOutcome {
    /// Excess index in [1, 2].
    pub pe: f64,
    /// Total graph length.
    pub l: f64,
    /// Total crossing count.
    pub e_l: f64,
    /// Points actually sampled (less than requested when edges are scarce).
    pub n_points_used: usize,
    /// Unordered pairs measured.
    pub n_pairs: usize,
    /// True when the roi had no edge pixels at all; `pe` is exactly 1.0.
    pub no_edges: bool,
}

/// One report row: the analysis of one (frame, roi) pair plus the track
/// state after folding it in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub frame: u64,
    pub track_id: u64,
    pub pe: f64,
    pub l: f64,
    pub e_l: f64,
    pub n_points_used: usize,
    pub no_edges: bool,
    /// Running mean of the track after this observation.
    pub running_mean: f64,
    /// Keep verdict after this observation.
    pub kept: bool,
}

/// Outcome of one grouped Beta fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum GroupFitStatus {
    Fitted {
        alpha: f64,
        beta: f64,
        support_shift: f64,
        class: TextureClass,
    },
    Failed {
        reason: String,
        /// True when the failure means "no Beta distribution matches these
        /// moments" rather than bad input.
        infeasible: bool,
    },
}

/// A grouped fit with the population size it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFit {
    pub group: String,
    pub count: usize,
    #[serde(flatten)]
    pub status: GroupFitStatus,
}

/// Full output of a sequence run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub rows: Vec<ReportRow>,
    pub fits: Vec<GroupFit>,
    pub histogram: Histogram,
    pub scatter: Vec<ScatterRow>,
}

impl RunReport {
    /// The fitted parameters of a group, if that fit succeeded.
    pub fn fitted_params(&self, group: &str) -> Option<BetaParams> {
        self.fits
            .iter()
            .find(|f| f.group == group)
            .and_then(|f| match f.status {
                GroupFitStatus::Fitted {
                    alpha,
                    beta,
                    support_shift,
                    ..
                } => Some(BetaParams {
                    alpha,
                    beta,
                    support_shift,
                }),
                GroupFitStatus::Failed { .. } => None,
            })
    }
}

/// Runs the texture measurement on one roi: gradient, threshold, point
/// sampling, graph excess.
///
/// The sampling seed is derived from `(config.seed, roi.frame,
/// roi.track_id)`, so the same roi always sees the same points within a run
/// and removing one roi never perturbs another. A roi without edge pixels
/// reports `pe = 1.0` with the `no_edges` flag set.
pub fn analyze_roi(image: &GrayImage, roi: &Roi, config: &RunConfig) -> Result<AnalyzeOutcome> {
    config.validate()?;
    let gradient = compute_gradient(image, roi)?;
    let edges = threshold_edges(&gradient, config.t_grad);
    let seed = derive_seed(config.seed, roi.frame, roi.track_id);
    let points = sample_edge_points(&edges, config.n_points, seed);
    let result = graph_excess(&edges, points.points());
    Ok(AnalyzeOutcome {
        pe: result.pe,
        l: result.l,
        e_l: result.e_l,
        n_points_used: result.n_points,
        n_pairs: result.n_pairs,
        no_edges: points.is_empty(),
    })
}

/// Processes a frame sequence against a roi track file.
///
/// Every record is analyzed (kept or not), track states advance in frame
/// order, and the report rows come out sorted by (frame, track_id). Beta
/// fits are computed over the shifted indices of each configured group.
pub fn process_sequence(
    frames: &[GrayImage],
    records: &[RoiRecord],
    config: &RunConfig,
) -> Result<RunReport> {
    config.validate()?;

    // Validate every record up front so no work happens on a bad input.
    for record in records {
        let frame_idx = usize::try_from(record.frame).ok();
        let image = frame_idx.and_then(|i| frames.get(i)).ok_or({
            Error::MissingFrame {
                frame: record.frame,
                track_id: record.track_id,
                available: frames.len(),
            }
        })?;
        record
            .to_roi()
            .validate_against(image.width(), image.height())?;
    }

    let mut ordered: Vec<RoiRecord> = records.to_vec();
    ordered.sort_by_key(|r| (r.frame, r.track_id));

    // Analysis is pure and parallel; track updates stay sequential in the
    // sorted order below.
    let outcomes: Vec<AnalyzeOutcome> = ordered
        .par_iter()
        .map(|record| {
            let image = &frames[record.frame as usize];
            analyze_roi(image, &record.to_roi(), config)
        })
        .collect::<Result<_>>()?;

    let mut filter = TrackFilter::new(config.averaging, config.t_pe);
    let mut rows = Vec::with_capacity(ordered.len());
    for (record, outcome) in ordered.iter().zip(&outcomes) {
        let state = filter.observe(record.track_id, outcome.pe)?;
        rows.push(ReportRow {
            frame: record.frame,
            track_id: record.track_id,
            pe: outcome.pe,
            l: outcome.l,
            e_l: outcome.e_l,
            n_points_used: outcome.n_points_used,
            no_edges: outcome.no_edges,
            running_mean: state.mean_pe,
            kept: state.kept,
        });
    }

    let fits = fit_groups(&rows, config);
    let histogram = build_histogram(&rows.iter().map(|r| r.pe).collect::<Vec<_>>(), config.bins)?;
    let fitted: Vec<(String, BetaParams)> = fits
        .iter()
        .filter_map(|f| match f.status {
            GroupFitStatus::Fitted {
                alpha,
                beta,
                support_shift,
                ..
            } => Some((
                f.group.clone(),
                BetaParams {
                    alpha,
                    beta,
                    support_shift,
                },
            )),
            GroupFitStatus::Failed { .. } => None,
        })
        .collect();
    let scatter = scatter_params(&fitted, config.beta_threshold);

    Ok(RunReport {
        config: *config,
        rows,
        fits,
        histogram,
        scatter,
    })
}

/// Group label used when `Grouping::Global` is configured.
pub const GLOBAL_GROUP: &str = "global";

fn fit_groups(rows: &[ReportRow], config: &RunConfig) -> Vec<GroupFit> {
    // Populations in deterministic order: numeric track order, or the one
    // global bucket.
    let groups: Vec<(String, Vec<f64>)> = match config.grouping {
        Grouping::Global => vec![(
            GLOBAL_GROUP.to_string(),
            rows.iter().map(|r| r.pe).collect(),
        )],
        Grouping::PerTrack => {
            let mut by_track: BTreeMap<u64, Vec<f64>> = BTreeMap::new();
            for row in rows {
                by_track.entry(row.track_id).or_default().push(row.pe);
            }
            by_track
                .into_iter()
                .map(|(id, pes)| (id.to_string(), pes))
                .collect()
        }
    };

    groups
        .into_iter()
        .map(|(group, pes)| {
            let count = pes.len();
            let status = match shift_to_unit(&pes).and_then(|unit| fit_beta_mom(&unit)) {
                Ok(params) => {
                    let params = params.with_shift(1.0);
                    GroupFitStatus::Fitted {
                        alpha: params.alpha,
                        beta: params.beta,
                        support_shift: params.support_shift,
                        class: classify_texture(&params, config.beta_threshold),
                    }
                }
                Err(e) => GroupFitStatus::Failed {
                    reason: e.to_string(),
                    infeasible: e.is_infeasible_stats(),
                },
            };
            GroupFit {
                group,
                count,
                status,
            }
        })
        .collect()
}
