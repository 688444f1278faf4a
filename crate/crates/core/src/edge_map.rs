//! Gradient computation and edge thresholding.
//!
//! Gradients are 3x3 Sobel with L2 magnitude, evaluated on the roi crop. The
//! one-pixel border carries magnitude 0 so downstream counts stay
//! conservative near the crop boundary.

use crate::error::Result;
use crate::raster::{GrayImage, Roi};

/// Default gradient threshold on the [0, 255] luminance scale.
pub const DEFAULT_T_GRAD: f32 = 48.0;

/// Per-pixel gradient magnitudes for one roi crop.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientRaster {
    width: u32,
    height: u32,
    values: Vec<f32>,
}

impl GradientRaster {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> f32 {
        self.values[y as usize * self.width as usize + x as usize]
    }
}

/// Binary edge image: magnitudes plus the mask of pixels whose magnitude
/// strictly exceeds the threshold it was built with.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMap {
    width: u32,
    height: u32,
    magnitude: Vec<f32>,
    mask: Vec<bool>,
    threshold: f32,
}

impl EdgeMap {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn magnitude(&self) -> &[f32] {
        &self.magnitude
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn threshold(&self) -> f32 {
        self.threshold
    }

    /// Edge test at `(x, y)`. Panics outside the map.
    #[inline]
    pub fn is_edge(&self, x: u32, y: u32) -> bool {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.mask[y as usize * self.width as usize + x as usize]
    }

    /// Number of mask-true pixels.
    pub fn edge_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Mask-true pixel coordinates in row-major order.
    pub fn edge_pixels(&self) -> Vec<crate::raster::Point> {
        let mut out = Vec::new();
        for y in 0..self.height {
            let row = y as usize * self.width as usize;
            for x in 0..self.width {
                if self.mask[row + x as usize] {
                    out.push(crate::raster::Point::new(x, y));
                }
            }
        }
        out
    }

    /// Builds an edge map directly from a boolean mask. Magnitudes are set
    /// to the indicator values 1.0/0.0 with threshold 0.5, so the
    /// mask/magnitude consistency invariant holds for synthetic maps too.
    pub fn from_mask(width: u32, height: u32, mask: Vec<bool>) -> Self {
        assert_eq!(
            mask.len(),
            width as usize * height as usize,
            "mask length must match dimensions"
        );
        let magnitude = mask.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
        Self {
            width,
            height,
            magnitude,
            mask,
            threshold: 0.5,
        }
    }
}

/// Computes Sobel gradient magnitudes over the roi crop of `image`.
///
/// The roi must lie inside the image and be at least 3x3. The returned
/// raster has the roi's dimensions; its one-pixel border is 0.
pub fn compute_gradient(image: &GrayImage, roi: &Roi) -> Result<GradientRaster> {
    roi.validate_against(image.width(), image.height())?;
    let crop = image.crop(roi)?;
    Ok(sobel_magnitude(&crop))
}

fn sobel_magnitude(crop: &GrayImage) -> GradientRaster {
    let w = crop.width() as usize;
    let h = crop.height() as usize;
    let data = crop.data();
    let mut values = vec![0.0f32; w * h];

    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let tl = data[(y - 1) * w + (x - 1)] as i32;
            let tc = data[(y - 1) * w + x] as i32;
            let tr = data[(y - 1) * w + (x + 1)] as i32;
            let ml = data[y * w + (x - 1)] as i32;
            let mr = data[y * w + (x + 1)] as i32;
            let bl = data[(y + 1) * w + (x - 1)] as i32;
            let bc = data[(y + 1) * w + x] as i32;
            let br = data[(y + 1) * w + (x + 1)] as i32;

            let gx = (tr + 2 * mr + br) - (tl + 2 * ml + bl);
            let gy = (bl + 2 * bc + br) - (tl + 2 * tc + tr);
            values[y * w + x] = ((gx * gx + gy * gy) as f32).sqrt();
        }
    }

    GradientRaster {
        width: crop.width(),
        height: crop.height(),
        values,
    }
}

/// Thresholds a gradient raster into an edge map. A pixel is an edge exactly
/// when its magnitude is strictly greater than `t_grad`.
pub fn threshold_edges(magnitude: &GradientRaster, t_grad: f32) -> EdgeMap {
    let mask = magnitude.values.iter().map(|&m| m > t_grad).collect();
    EdgeMap {
        width: magnitude.width,
        height: magnitude.height,
        magnitude: magnitude.values.clone(),
        mask,
        threshold: t_grad,
    }
}
