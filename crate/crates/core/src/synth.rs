//! Synthetic rasters with known statistics.
//!
//! Bernoulli masks make the per-pixel crossing probability an exact, tunable
//! quantity, which is what the verification suite leans on: on a density-p
//! mask the excess index concentrates around 1 + p. Step and stripe images
//! have hand-derivable Sobel responses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::edge_map::EdgeMap;
use crate::error::{Error, Result};
use crate::raster::GrayImage;

/// Luminance used for the dark phase of step and stripe images.
pub const SYNTH_LOW: u8 = 0;
/// Luminance used for the bright phase of step and stripe images.
pub const SYNTH_HIGH: u8 = 200;

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SynthKind {
    /// Each pixel independently true with probability `density`.
    BernoulliMask { density: f64 },
    /// Vertical structure repeating every `period` columns. As a mask:
    /// columns at multiples of the period are true. As an image: a square
    /// wave between [`SYNTH_LOW`] and [`SYNTH_HIGH`].
    Stripes { period: u32 },
    /// All-false mask / constant mid-gray image.
    Blank,
    /// Two-level image with a vertical boundary at the middle column,
    /// stepping from `low` to `high`.
    Step { low: u8, high: u8 },
}

/// A deterministic recipe for one synthetic raster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    #[serde(flatten)]
    pub kind: SynthKind,
    pub width: u32,
    pub height: u32,
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(kind: SynthKind, width: u32, height: u32, seed: u64) -> Self {
        Self {
            kind,
            width,
            height,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidSynthSpec(format!(
                "dimensions must be positive, got {}x{}",
                self.width, self.height
            )));
        }
        match self.kind {
            SynthKind::BernoulliMask { density } => {
                if !(0.0..=1.0).contains(&density) {
                    return Err(Error::InvalidSynthSpec(format!(
                        "bernoulli density {density} outside [0, 1]"
                    )));
                }
            }
            SynthKind::Stripes { period } => {
                if period == 0 {
                    return Err(Error::InvalidSynthSpec("stripe period must be >= 1".into()));
                }
            }
            SynthKind::Blank => {}
            SynthKind::Step { low, high } => {
                if low >= high {
                    return Err(Error::InvalidSynthSpec(format!(
                        "step needs low < high, got {low} >= {high}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generates an edge mask. Supported kinds: `bernoulli_mask`, `stripes`,
/// `blank`. Image-only kinds are rejected.
pub fn gen_mask(spec: &SynthSpec) -> Result<EdgeMap> {
    spec.validate()?;
    let n = spec.width as usize * spec.height as usize;
    let mask = match spec.kind {
        SynthKind::BernoulliMask { density } => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            (0..n).map(|_| rng.random::<f64>() < density).collect()
        }
        SynthKind::Stripes { period } => {
            let mut mask = Vec::with_capacity(n);
            for _y in 0..spec.height {
                for x in 0..spec.width {
                    mask.push(x % period == 0);
                }
            }
            mask
        }
        SynthKind::Blank => vec![false; n],
        SynthKind::Step { .. } => {
            return Err(Error::InvalidSynthSpec(
                "step is an image kind; it has no mask form".into(),
            ))
        }
    };
    Ok(EdgeMap::from_mask(spec.width, spec.height, mask))
}

/// Generates a grayscale image. Supported kinds: `step`, `stripes`, `blank`.
/// Mask-only kinds are rejected.
pub fn gen_image(spec: &SynthSpec) -> Result<GrayImage> {
    spec.validate()?;
    match spec.kind {
        SynthKind::Blank => GrayImage::filled(spec.width, spec.height, 128),
        SynthKind::Step { low, high } => {
            let boundary = spec.width / 2;
            let mut data = Vec::with_capacity(spec.width as usize * spec.height as usize);
            for _y in 0..spec.height {
                for x in 0..spec.width {
                    data.push(if x < boundary { low } else { high });
                }
            }
            GrayImage::new(spec.width, spec.height, data)
        }
        SynthKind::Stripes { period } => {
            // Square wave: the first ceil(period/2) columns of each cycle are
            // dark, the rest bright.
            let half = period.div_ceil(2);
            let mut data = Vec::with_capacity(spec.width as usize * spec.height as usize);
            for _y in 0..spec.height {
                for x in 0..spec.width {
                    data.push(if x % period < half {
                        SYNTH_LOW
                    } else {
                        SYNTH_HIGH
                    });
                }
            }
            GrayImage::new(spec.width, spec.height, data)
        }
        SynthKind::BernoulliMask { .. } => Err(Error::InvalidSynthSpec(
            "bernoulli_mask is a mask kind; it has no image form".into(),
        )),
    }
}
