//! Roi track files: JSON Lines (one record per line) or CSV with a
//! `frame,track_id,x,y,w,h` header.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::RoiRecord;

/// Reads roi records, picking the format from the file extension:
/// `.csv` is CSV, anything else is treated as JSON Lines.
pub fn read_roi_file<P: AsRef<Path>>(path: P) -> Result<Vec<RoiRecord>> {
    let path = path.as_ref();
    let file = File::open(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => read_roi_csv(file),
        _ => read_roi_jsonl(file),
    }
}

/// Parses JSON Lines roi records. Blank lines are skipped; any other
/// unparseable line is an error carrying its 1-based line number.
pub fn read_roi_jsonl<R: Read>(reader: R) -> Result<Vec<RoiRecord>> {
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let record: RoiRecord =
            serde_json::from_str(trimmed).map_err(|e| Error::MalformedRoiRow {
                line: idx + 1,
                reason: e.to_string(),
            })?;
        out.push(record);
    }
    Ok(out)
}

/// Parses CSV roi records with a header row.
pub fn read_roi_csv<R: Read>(reader: R) -> Result<Vec<RoiRecord>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for result in rdr.deserialize() {
        let record: RoiRecord = result.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or_default();
            Error::MalformedRoiRow {
                line,
                reason: e.to_string(),
            }
        })?;
        out.push(record);
    }
    Ok(out)
}
