//! Seeded random point sampling on edge pixels.
//!
//! Reproducibility contract: the generator is ChaCha8 seeded through
//! `seed_from_u64`, candidates are the mask-true pixels enumerated in
//! row-major order, and selection is a partial Fisher-Yates over that list.
//! Identical (mask, n, seed) inputs give identical point lists on every
//! platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::edge_map::EdgeMap;
use crate::raster::Point;

/// Default number of points per roi (496 pairs).
pub const DEFAULT_N_POINTS: usize = 32;

/// An ordered set of sampled edge pixels plus the seed that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    seed: u64,
    requested_n: usize,
}

impl PointSet {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn requested_n(&self) -> usize {
        self.requested_n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Draws up to `n` distinct points uniformly from the mask-true pixels of
/// `edge_map`, without replacement.
///
/// If the mask holds fewer than `n` true pixels, all of them are returned.
/// An empty mask gives an empty set; that is the "no edges" signal, not an
/// error.
pub fn sample_edge_points(edge_map: &EdgeMap, n: usize, seed: u64) -> PointSet {
    let mut candidates = edge_map.edge_pixels();
    let take = n.min(candidates.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Partial Fisher-Yates: after i swaps the prefix is a uniform draw
    // without replacement.
    for i in 0..take {
        let j = rng.random_range(i..candidates.len());
        candidates.swap(i, j);
    }
    candidates.truncate(take);

    PointSet {
        points: candidates,
        seed,
        requested_n: n,
    }
}

/// SplitMix64 output mixer.
fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the per-roi sampling seed from the run seed, the frame index and
/// the track id by chaining SplitMix64. Removing one roi from a run never
/// perturbs another roi's sampling.
pub fn derive_seed(base: u64, frame: u64, track_id: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ frame) ^ track_id)
}
