//! Per-track running averages of the excess index and the keep/reject rule.
//!
//! Each track keeps a recursive average of the indices observed so far; a
//! roi is kept while that average stays strictly below the rejection
//! threshold. High-texture tracks drift above the threshold and get dropped,
//! low-texture tracks converge below it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default rejection threshold on the running excess-index mean.
pub const DEFAULT_T_PE: f64 = 1.9;

/// How the per-track mean is updated.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Averaging {
    /// Exact incremental arithmetic mean, `m += (x - m) / count`.
    #[default]
    Cumulative,
    /// Exponential moving average, `m += lambda * (x - m)`, initialized at
    /// the first observation. `lambda` must lie in (0, 1].
    Ema { lambda: f64 },
}

impl Averaging {
    pub fn validate(&self) -> Result<()> {
        if let Averaging::Ema { lambda } = *self {
            if !(lambda > 0.0 && lambda <= 1.0) {
                return Err(Error::OutOfRange {
                    what: "ema lambda",
                    value: lambda,
                    interval: "(0, 1]",
                });
            }
        }
        Ok(())
    }
}

/// Running state of one roi track.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackState {
    pub track_id: u64,
    /// Running mean of the observed excess indices, in [1, 2].
    pub mean_pe: f64,
    /// Observations folded in so far.
    pub count: u64,
    /// Verdict after the latest observation.
    pub kept: bool,
}

/// Folds one excess-index observation into a track's state, creating the
/// state on first contact. The verdict is refreshed against `t_pe` on every
/// update.
pub fn update_track(
    state: Option<&TrackState>,
    track_id: u64,
    pe: f64,
    averaging: Averaging,
    t_pe: f64,
) -> Result<TrackState> {
    if !(1.0..=2.0).contains(&pe) {
        return Err(Error::OutOfRange {
            what: "excess index",
            value: pe,
            interval: "[1, 2]",
        });
    }
    averaging.validate()?;

    let mut next = match state {
        None => TrackState {
            track_id,
            mean_pe: pe,
            count: 1,
            kept: false,
        },
        Some(prev) => {
            let count = prev.count + 1;
            let mean_pe = match averaging {
                Averaging::Cumulative => prev.mean_pe + (pe - prev.mean_pe) / count as f64,
                Averaging::Ema { lambda } => prev.mean_pe + lambda * (pe - prev.mean_pe),
            };
            TrackState {
                track_id: prev.track_id,
                mean_pe,
                count,
                kept: false,
            }
        }
    };
    next.kept = keep_roi(&next, t_pe);
    Ok(next)
}

/// Keep rule: true exactly when the running mean is strictly below `t_pe`.
pub fn keep_roi(state: &TrackState, t_pe: f64) -> bool {
    state.mean_pe < t_pe
}

/// Book-keeper for many concurrent tracks. States are isolated per track id;
/// iteration order over [`TrackFilter::states`] is id order.
#[derive(Debug, Clone)]
pub struct TrackFilter {
    averaging: Averaging,
    t_pe: f64,
    states: BTreeMap<u64, TrackState>,
}

impl Default for TrackFilter {
    fn default() -> Self {
        Self::new(Averaging::default(), DEFAULT_T_PE)
    }
}

impl TrackFilter {
    pub fn new(averaging: Averaging, t_pe: f64) -> Self {
        Self {
            averaging,
            t_pe,
            states: BTreeMap::new(),
        }
    }

    /// Observes one excess index for `track_id` and returns the refreshed
    /// state.
    pub fn observe(&mut self, track_id: u64, pe: f64) -> Result<TrackState> {
        let next = update_track(
            self.states.get(&track_id),
            track_id,
            pe,
            self.averaging,
            self.t_pe,
        )?;
        self.states.insert(track_id, next);
        Ok(next)
    }

    pub fn get(&self, track_id: u64) -> Option<&TrackState> {
        self.states.get(&track_id)
    }

    pub fn states(&self) -> impl Iterator<Item = &TrackState> {
        self.states.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUM: Averaging = Averaging::Cumulative;

    #[test]
    fn first_observation_initializes_the_state() {
        let s = update_track(None, 9, 1.4, CUM, DEFAULT_T_PE).unwrap();
        assert_eq!(s.track_id, 9);
        assert_eq!(s.mean_pe, 1.4);
        assert_eq!(s.count, 1);
        assert!(s.kept);
    }

    #[test]
    fn second_observation_averages() {
        let first = update_track(None, 0, 1.4, CUM, DEFAULT_T_PE).unwrap();
        let second = update_track(Some(&first), 0, 1.6, CUM, DEFAULT_T_PE).unwrap();
        assert_eq!(second.mean_pe, 1.5);
        assert_eq!(second.count, 2);
    }

    #[test]
    fn running_mean_equals_batch_mean() {
        // 1000 deterministic values in [1, 2].
        let values: Vec<f64> = (0..1000)
            .map(|i| 1.0 + ((i as f64 * 0.7129).sin().abs()))
            .map(|v| v.min(2.0))
            .collect();
        let mut state: Option<TrackState> = None;
        for &v in &values {
            state = Some(update_track(state.as_ref(), 1, v, CUM, DEFAULT_T_PE).unwrap());
        }
        let batch = values.iter().sum::<f64>() / values.len() as f64;
        let got = state.unwrap().mean_pe;
        assert!((got - batch).abs() < 1e-12, "running {got} batch {batch}");
    }

    #[test]
    fn final_mean_is_permutation_invariant_within_tolerance() {
        let values: Vec<f64> = (0..200).map(|i| 1.0 + (i % 97) as f64 / 96.0).collect();
        let mut reversed = values.clone();
        reversed.reverse();
        let run = |vals: &[f64]| {
            let mut state: Option<TrackState> = None;
            for &v in vals {
                state = Some(update_track(state.as_ref(), 0, v, CUM, DEFAULT_T_PE).unwrap());
            }
            state.unwrap().mean_pe
        };
        assert!((run(&values) - run(&reversed)).abs() < 1e-12);
    }

    #[test]
    fn keep_rule_is_strict() {
        let mk = |mean_pe| TrackState {
            track_id: 0,
            mean_pe,
            count: 1,
            kept: false,
        };
        assert!(keep_roi(&mk(1.3), 1.9));
        assert!(!keep_roi(&mk(1.95), 1.9));
        assert!(!keep_roi(&mk(1.9), 1.9), "boundary must reject");
    }

    #[test]
    fn constant_stream_verdict_is_immediate_and_stable() {
        for (c, expect_keep) in [(1.95, false), (1.3, true), (1.9, false)] {
            let mut filter = TrackFilter::new(CUM, DEFAULT_T_PE);
            for _ in 0..50 {
                let s = filter.observe(4, c).unwrap();
                assert_eq!(s.kept, expect_keep, "stream at {c}");
                assert_eq!(s.mean_pe, c);
            }
        }
    }

    #[test]
    fn out_of_range_observation_is_rejected() {
        assert!(update_track(None, 0, 0.99, CUM, DEFAULT_T_PE).is_err());
        assert!(update_track(None, 0, 2.01, CUM, DEFAULT_T_PE).is_err());
    }

    #[test]
    fn tracks_do_not_interact() {
        let mut filter = TrackFilter::new(CUM, DEFAULT_T_PE);
        filter.observe(1, 1.2).unwrap();
        filter.observe(2, 1.95).unwrap();
        filter.observe(1, 1.2).unwrap();
        assert_eq!(filter.get(1).unwrap().count, 2);
        assert_eq!(filter.get(2).unwrap().count, 1);
        assert!(filter.get(1).unwrap().kept);
        assert!(!filter.get(2).unwrap().kept);
    }

    #[test]
    fn ema_tracks_recent_values() {
        let lam = Averaging::Ema { lambda: 0.5 };
        let a = update_track(None, 0, 1.0, lam, DEFAULT_T_PE).unwrap();
        let b = update_track(Some(&a), 0, 2.0, lam, DEFAULT_T_PE).unwrap();
        assert_eq!(b.mean_pe, 1.5);
        let c = update_track(Some(&b), 0, 2.0, lam, DEFAULT_T_PE).unwrap();
        assert_eq!(c.mean_pe, 1.75);

        assert!(update_track(None, 0, 1.5, Averaging::Ema { lambda: 0.0 }, 1.9).is_err());
        assert!(update_track(None, 0, 1.5, Averaging::Ema { lambda: 1.5 }, 1.9).is_err());
    }
}
