//! Report serialization: a full JSON document plus flat CSV tables for
//! plotting.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::RunReport;

/// Writes the full report as pretty-printed JSON. The encoding is
/// deterministic: identical reports serialize to identical bytes.
pub fn write_report_json<W: Write>(report: &RunReport, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    serde_json::to_writer_pretty(&mut w, report)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn write_report_json_file<P: AsRef<Path>>(report: &RunReport, path: P) -> Result<()> {
    write_report_json(report, File::create(path)?)
}

/// Writes the per-roi rows as CSV.
pub fn write_rows_csv<W: Write>(report: &RunReport, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in &report.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the parameter scatter table as CSV.
pub fn write_scatter_csv<W: Write>(report: &RunReport, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in &report.scatter {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the histogram as CSV with explicit bin bounds.
pub fn write_histogram_csv<W: Write>(report: &RunReport, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["bin_start", "bin_end", "count"])?;
    let h = &report.histogram;
    for (i, &count) in h.counts.iter().enumerate() {
        w.write_record(&[
            h.bin_edges[i].to_string(),
            h.bin_edges[i + 1].to_string(),
            count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV of excess indices: either a bare column of numbers or any
/// headered table with a `pe` column (the written rows.csv qualifies).
pub fn read_pe_csv<P: AsRef<Path>>(path: P) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path.as_ref())?;
    let mut column = 0usize;
    let mut values = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        if idx == 0 {
            if let Some(pe_col) = record.iter().position(|f| f.trim() == "pe") {
                column = pe_col;
                continue;
            }
        }
        let field = record.get(column).map(str::trim).unwrap_or_default();
        if idx == 0 && field.parse::<f64>().is_err() {
            return Err(Error::MalformedRoiRow {
                line: 1,
                reason: format!("no `pe` column and first field `{field}` is not a number"),
            });
        }
        let value = field.parse::<f64>().map_err(|_| Error::MalformedRoiRow {
            line: idx + 1,
            reason: format!("`{field}` is not a number"),
        })?;
        values.push(value);
    }
    Ok(values)
}

/// Writes report.json, rows.csv, scatter.csv and histogram.csv into a
/// directory, creating it if needed.
pub fn write_report_bundle<P: AsRef<Path>>(report: &RunReport, dir: P) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    write_report_json_file(report, dir.join("report.json"))?;
    write_rows_csv(report, File::create(dir.join("rows.csv"))?)?;
    write_scatter_csv(report, File::create(dir.join("scatter.csv"))?)?;
    write_histogram_csv(report, File::create(dir.join("histogram.csv"))?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{process_sequence, RoiRecord, RunConfig};
    use crate::raster::GrayImage;

    fn sample_report() -> RunReport {
        let side = 64u32;
        let frame: GrayImage = crate::synth::gen_image(&crate::synth::SynthSpec::new(
            crate::synth::SynthKind::Stripes { period: 4 },
            side,
            side,
            0,
        ))
        .unwrap();
        let records = vec![
            RoiRecord {
                frame: 0,
                track_id: 1,
                x: 0,
                y: 0,
                w: 32,
                h: 32,
            },
            RoiRecord {
                frame: 0,
                track_id: 2,
                x: 16,
                y: 16,
                w: 32,
                h: 32,
            },
        ];
        process_sequence(&[frame], &records, &RunConfig::default()).unwrap()
    }

    #[test]
    fn json_encoding_is_deterministic() {
        let report = sample_report();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_report_json(&report, &mut a).unwrap();
        write_report_json(&report, &mut b).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn csv_tables_have_the_expected_shape() {
        let report = sample_report();
        let mut rows = Vec::new();
        write_rows_csv(&report, &mut rows).unwrap();
        let text = String::from_utf8(rows).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "frame,track_id,pe,l,e_l,n_points_used,no_edges,running_mean,kept"
        );
        assert_eq!(lines.count(), report.rows.len());

        let mut hist = Vec::new();
        write_histogram_csv(&report, &mut hist).unwrap();
        let text = String::from_utf8(hist).unwrap();
        assert_eq!(text.lines().count(), 1 + report.histogram.counts.len());
        assert!(text.starts_with("bin_start,bin_end,count"));
    }

    #[test]
    fn pe_csv_accepts_bare_columns_and_pe_headers() {
        let dir = tempfile::tempdir().unwrap();
        let bare = dir.path().join("bare.csv");
        std::fs::write(&bare, "1.5\n1.25\n1.75\n").unwrap();
        assert_eq!(read_pe_csv(&bare).unwrap(), vec![1.5, 1.25, 1.75]);

        let headered = dir.path().join("rows.csv");
        std::fs::write(&headered, "frame,pe,kept\n0,1.5,true\n1,1.25,true\n").unwrap();
        assert_eq!(read_pe_csv(&headered).unwrap(), vec![1.5, 1.25]);

        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "frame,kept\n0,true\n").unwrap();
        assert!(read_pe_csv(&bad).is_err());
    }

    #[test]
    fn bundle_writes_all_four_files() {
        let report = sample_report();
        let dir = tempfile::tempdir().unwrap();
        write_report_bundle(&report, dir.path()).unwrap();
        for name in ["report.json", "rows.csv", "scatter.csv", "histogram.csv"] {
            assert!(dir.path().join(name).exists(), "{name} missing");
        }
    }
}
