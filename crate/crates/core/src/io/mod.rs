//! File formats: PGM rasters, roi track files, report writers and SVG
//! rendering.

pub mod pgm;
pub mod report;
pub mod rois;
pub mod svg;
