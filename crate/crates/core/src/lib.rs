//! Random-texture density estimation from edge-crossing statistics.
//!
//! The pipeline: compute a Sobel gradient over a region of interest,
//! threshold it into an edge mask, sample points on the edge pixels, and
//! measure how often the segments of the fully connected point graph cross
//! edges. The resulting excess index `pe = 1 + E_L / L` lives in [1, 2] and
//! behaves like a sampled Bernoulli process whose hit probability is the
//! local edge density. Populations of indices are summarized by
//! method-of-moments Beta fits, and per-track running means drive a
//! keep/reject filter for roi streams.

pub mod beta_stats;
pub mod edge_map;
pub mod error;
pub mod excess;
pub mod io;
pub mod pipeline;
pub mod raster;
pub mod roi_filter;
pub mod sampler;
pub mod synth;

pub use beta_stats::{
    beta_pdf, build_histogram, classify_texture, fit_beta_mom, scatter_params, shift_from_unit,
    shift_to_unit, BetaParams, Histogram, SampleStats, ScatterRow, TextureClass,
};
pub use edge_map::{compute_gradient, threshold_edges, EdgeMap, GradientRaster};
pub use error::{Error, Result};
pub use excess::{
    graph_excess, graph_excess_with_mode, segment_excess, segment_excess_with_mode, trace_segment,
    CrossingMode, ExcessResult, SegmentExcess,
};
pub use pipeline::{
    analyze_roi, process_sequence, AnalyzeOutcome, GroupFit, GroupFitStatus, Grouping, RoiRecord,
    RunConfig, RunReport,
};
pub use raster::{GrayImage, Point, Roi};
pub use roi_filter::{keep_roi, update_track, Averaging, TrackFilter, TrackState};
pub use sampler::{derive_seed, sample_edge_points, PointSet};
pub use synth::{gen_image, gen_mask, SynthKind, SynthSpec};
