//! 8-bit PGM (P2 ascii / P5 binary) reading and writing.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::edge_map::EdgeMap;
use crate::error::{Error, Result};
use crate::raster::GrayImage;

/// Reads an 8-bit PGM image (P2 or P5). Header comments are honored;
/// maxval greater than 255 is rejected.
pub fn read_pgm<R: Read>(reader: R) -> Result<GrayImage> {
    let mut bytes = Vec::new();
    BufReader::new(reader).read_to_end(&mut bytes)?;
    parse_pgm(&bytes)
}

pub fn read_pgm_file<P: AsRef<Path>>(path: P) -> Result<GrayImage> {
    read_pgm(File::open(path)?)
}

/// Writes binary (P5) PGM.
pub fn write_pgm<W: Write>(image: &GrayImage, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    write!(w, "P5\n{} {}\n255\n", image.width(), image.height())?;
    w.write_all(image.data())?;
    w.flush()?;
    Ok(())
}

pub fn write_pgm_file<P: AsRef<Path>>(image: &GrayImage, path: P) -> Result<()> {
    write_pgm(image, File::create(path)?)
}

/// Renders an edge mask as a black/white image (255 on edges).
pub fn mask_to_image(map: &EdgeMap) -> GrayImage {
    let data = map
        .mask()
        .iter()
        .map(|&m| if m { 255 } else { 0 })
        .collect();
    GrayImage::new(map.width(), map.height(), data).expect("mask dimensions are valid")
}

fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 {
        return Err(Error::InvalidPgm(
            "file too short for a magic number".into(),
        ));
    }
    let magic = &bytes[..2];
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        _ => {
            return Err(Error::InvalidPgm(format!(
                "unsupported magic {:?}; only P2 and P5 are handled",
                String::from_utf8_lossy(magic)
            )))
        }
    };

    let mut pos = 2;
    let mut header = [0usize; 3];
    for slot in header.iter_mut() {
        *slot = next_header_int(bytes, &mut pos)?;
    }
    let [width, height, maxval] = header;
    if width == 0 || height == 0 {
        return Err(Error::InvalidPgm(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    if maxval == 0 || maxval > 255 {
        return Err(Error::InvalidPgm(format!(
            "maxval {maxval} outside the 8-bit range"
        )));
    }
    let n = width * height;

    let data = if binary {
        // Exactly one whitespace byte separates the header from the pixels.
        pos += 1;
        let end = pos + n;
        if bytes.len() < end {
            return Err(Error::InvalidPgm(format!(
                "expected {n} pixel bytes, found {}",
                bytes.len().saturating_sub(pos)
            )));
        }
        bytes[pos..end].to_vec()
    } else {
        let mut data = Vec::with_capacity(n);
        for _ in 0..n {
            let v = next_header_int(bytes, &mut pos)?;
            if v > maxval {
                return Err(Error::InvalidPgm(format!(
                    "pixel value {v} exceeds maxval {maxval}"
                )));
            }
            data.push(v as u8);
        }
        data
    };

    GrayImage::new(width as u32, height as u32, data)
}

/// Reads the next ascii integer, skipping whitespace and `#` comments.
fn next_header_int(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::InvalidPgm(
            "expected an integer in the header".into(),
        ));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::InvalidPgm("unparseable integer".into()))
}
