//! Input loading helpers and the CLI error type that maps onto exit codes.

use std::path::{Path, PathBuf};

use edge_excess::io::{pgm, report};
use edge_excess::GrayImage;

/// CLI failure, split by exit code: input problems exit 1, statistics that
/// cannot exist exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    InfeasibleStats(String),
}

impl From<edge_excess::Error> for CliError {
    fn from(e: edge_excess::Error) -> Self {
        if e.is_infeasible_stats() {
            CliError::InfeasibleStats(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub fn json_err(e: serde_json::Error) -> CliError {
    CliError::Input(format!("json: {e}"))
}

/// Reads the excess-index column for `fit`.
pub fn read_pe_csv(path: &Path) -> Result<Vec<f64>, CliError> {
    report::read_pe_csv(path).map_err(CliError::from)
}

/// Loads one grayscale image. `.pgm` goes through the native reader; other
/// extensions (PNG in particular) decode via the image crate with its
/// standard luma conversion.
pub fn load_image(path: &Path) -> Result<GrayImage, CliError> {
    let against = |e: String| CliError::Input(format!("{}: {e}", path.display()));
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("pgm") => {
            pgm::read_pgm_file(path).map_err(|e| against(e.to_string()))
        }
        _ => {
            let decoded = image::open(path).map_err(|e| against(e.to_string()))?;
            let luma = decoded.to_luma8();
            GrayImage::new(luma.width(), luma.height(), luma.into_raw())
                .map_err(|e| against(e.to_string()))
        }
    }
}

/// Resolves the `--frames` argument: either an ordered list of files or a
/// single directory whose .pgm/.png entries are taken in file-name order.
pub fn load_frames(inputs: &[PathBuf]) -> Result<Vec<GrayImage>, CliError> {
    let files: Vec<PathBuf> = if inputs.len() == 1 && inputs[0].is_dir() {
        let dir = &inputs[0];
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| {
                p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("png"))
            })
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(CliError::Input(format!(
                "{}: no .pgm or .png frames found",
                dir.display()
            )));
        }
        files
    } else {
        inputs.to_vec()
    };

    files.iter().map(|p| load_image(p)).collect()
}
