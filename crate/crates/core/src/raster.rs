//! Raster primitives: grayscale images, pixel coordinates and regions of
//! interest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An 8-bit grayscale raster, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl GrayImage {
    /// Wraps a row-major luminance buffer. The buffer length must equal
    /// `width * height` and both dimensions must be at least 1.
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        let expected = width as usize * height as usize;
        if data.len() != expected {
            return Err(Error::InvalidImage(format!(
                "buffer holds {} pixels, {width}x{height} needs {expected}",
                data.len()
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// A `width x height` image filled with a single luminance value.
    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width as usize * height as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Luminance at `(x, y)`. Panics outside the image.
    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.data[y as usize * self.width as usize + x as usize]
    }

    /// Copies the rectangle covered by `roi` into a stand-alone image.
    pub fn crop(&self, roi: &Roi) -> Result<GrayImage> {
        roi.validate_against(self.width, self.height)?;
        let mut out = Vec::with_capacity(roi.w as usize * roi.h as usize);
        for row in roi.y..roi.y + roi.h {
            let start = row as usize * self.width as usize + roi.x as usize;
            out.extend_from_slice(&self.data[start..start + roi.w as usize]);
        }
        GrayImage::new(roi.w, roi.h, out)
    }
}

/// Integer pixel coordinate, local to whatever raster it was sampled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: &Point) -> f64 {
        let dx = other.x as f64 - self.x as f64;
        let dy = other.y as f64 - self.y as f64;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Rectangular region of interest inside an image, tagged with the track it
/// belongs to and the frame it was observed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roi {
    /// Left edge, pixels.
    pub x: u32,
    /// Top edge, pixels.
    pub y: u32,
    /// Width, pixels.
    pub w: u32,
    /// Height, pixels.
    pub h: u32,
    /// Track identifier assigned by the upstream detector.
    pub track_id: u64,
    /// Frame index within the sequence.
    pub frame: u64,
}

/// Minimum roi extent: the 3x3 gradient kernel needs at least one interior
/// pixel in each direction.
pub const MIN_ROI_EXTENT: u32 = 3;

impl Roi {
    pub fn new(x: u32, y: u32, w: u32, h: u32, track_id: u64, frame: u64) -> Self {
        Self {
            x,
            y,
            w,
            h,
            track_id,
            frame,
        }
    }

    /// A roi spanning an entire `width x height` image.
    pub fn full_frame(width: u32, height: u32) -> Self {
        Self::new(0, 0, width, height, 0, 0)
    }

    /// Checks that the roi lies fully inside a `width x height` image and is
    /// at least 3x3.
    pub fn validate_against(&self, width: u32, height: u32) -> Result<()> {
        let reason = if self.w < MIN_ROI_EXTENT || self.h < MIN_ROI_EXTENT {
            Some(format!(
                "extent {}x{} is below the {MIN_ROI_EXTENT}x{MIN_ROI_EXTENT} minimum",
                self.w, self.h
            ))
        } else if self.x.checked_add(self.w).is_none_or(|r| r > width)
            || self.y.checked_add(self.h).is_none_or(|b| b > height)
        {
            Some(format!(
                "rectangle ({}, {}, {}, {}) exceeds the {width}x{height} image",
                self.x, self.y, self.w, self.h
            ))
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::DegenerateRoi {
                frame: self.frame,
                track_id: self.track_id,
                reason,
            }),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_rejects_bad_geometry() {
        assert!(GrayImage::new(0, 4, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 4]).is_ok());
    }

    #[test]
    fn crop_extracts_the_rectangle() {
        let img = GrayImage::new(4, 4, (0..16).collect()).unwrap();
        let roi = Roi::new(1, 1, 3, 3, 0, 0);
        let crop = img.crop(&roi).unwrap();
        assert_eq!(crop.data(), &[5, 6, 7, 9, 10, 11, 13, 14, 15]);
    }

    #[test]
    fn roi_validation_catches_degenerate_cases() {
        assert!(Roi::new(0, 0, 2, 5, 0, 0).validate_against(10, 10).is_err());
        assert!(Roi::new(8, 0, 3, 3, 0, 0).validate_against(10, 10).is_err());
        assert!(Roi::new(7, 7, 3, 3, 0, 0).validate_against(10, 10).is_ok());
    }

    #[test]
    fn point_distance_is_euclidean() {
        let a = Point::new(0, 0);
        let b = Point::new(3, 4);
        assert_eq!(a.distance(&b), 5.0);
        assert_eq!(a.distance(&a), 0.0);
    }
}
