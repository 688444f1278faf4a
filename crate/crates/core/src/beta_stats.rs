//! Beta-distribution statistics over excess-index populations.
//!
//! Excess indices live on [1, 2]; shifting them down by 1 puts them on the
//! Beta distribution's native [0, 1] support. Shape parameters are fitted by
//! method of moments, and the fitted `beta` drives the high/low texture
//! split: sharply peaked low-beta fits mean texture-rich regions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default `beta` cutoff between high and low texture.
pub const DEFAULT_BETA_THRESHOLD: f64 = 1.5;

/// Default number of histogram bins over [1, 2].
pub const DEFAULT_BINS: usize = 32;

/// Shape parameters of a Beta distribution, plus the support shift telling
/// whether they describe values on [0, 1] (`support_shift = 0`) or shifted
/// excess indices on [1, 2] (`support_shift = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaParams {
    pub alpha: f64,
    pub beta: f64,
    pub support_shift: f64,
}

impl BetaParams {
    /// Shape parameters on the unit interval. Both must be positive and
    /// finite.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::OutOfRange {
                what: "alpha",
                value: alpha,
                interval: "(0, inf)",
            });
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::OutOfRange {
                what: "beta",
                value: beta,
                interval: "(0, inf)",
            });
        }
        Ok(Self {
            alpha,
            beta,
            support_shift: 0.0,
        })
    }

    /// The same parameters reinterpreted on the shifted support.
    pub fn with_shift(self, support_shift: f64) -> Self {
        Self {
            support_shift,
            ..self
        }
    }

    /// Analytic mean `alpha / (alpha + beta)` on the unit interval.
    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    /// Analytic variance `alpha*beta / ((alpha+beta)^2 (alpha+beta+1))`.
    pub fn variance(&self) -> f64 {
        let s = self.alpha + self.beta;
        self.alpha * self.beta / (s * s * (s + 1.0))
    }
}

/// Mean, population variance and count of a sample set on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub mean: f64,
    pub variance: f64,
    pub count: usize,
}

impl SampleStats {
    /// Computes the moments and checks they admit a Beta fit.
    ///
    /// Samples must lie in [0, 1] (boundary values are legal data: a blank
    /// region contributes a shifted index of exactly 0). The mean has to be
    /// strictly interior and the variance strictly between 0 and
    /// `mean * (1 - mean)`.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InsufficientSamples {
                needed: 2,
                got: samples.len(),
            });
        }
        for &s in samples {
            if !(0.0..=1.0).contains(&s) {
                return Err(Error::OutOfRange {
                    what: "sample",
                    value: s,
                    interval: "[0, 1]",
                });
            }
        }
        if samples.windows(2).all(|w| w[0] == w[1]) {
            return Err(Error::ConstantSamples);
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let variance = samples
            .iter()
            .map(|&s| (s - mean) * (s - mean))
            .sum::<f64>()
            / n;

        if variance == 0.0 {
            return Err(Error::ConstantSamples);
        }
        if mean <= 0.0 || mean >= 1.0 {
            return Err(Error::OutOfRange {
                what: "sample mean",
                value: mean,
                interval: "(0, 1)",
            });
        }
        let bound = mean * (1.0 - mean);
        if variance >= bound {
            return Err(Error::InfeasibleMoments {
                var: variance,
                bound,
            });
        }
        Ok(Self {
            mean,
            variance,
            count: samples.len(),
        })
    }
}

/// Histogram of excess indices over the fixed support [1, 2].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `bins + 1` uniformly spaced edges from 1.0 to 2.0.
    pub bin_edges: Vec<f64>,
    /// Per-bin sample counts. Bins are left-inclusive; the last bin also
    /// includes its right edge.
    pub counts: Vec<u64>,
}

/// Binary texture verdict from a fitted Beta shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextureClass {
    High,
    Low,
}

impl std::fmt::Display for TextureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TextureClass::High => "high",
            TextureClass::Low => "low",
        })
    }
}

/// One row of the parameter scatter table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterRow {
    pub group: String,
    pub alpha: f64,
    pub beta: f64,
    pub class: TextureClass,
}

/// Maps excess indices on [1, 2] to the unit interval by subtracting 1.
pub fn shift_to_unit(pe_values: &[f64]) -> Result<Vec<f64>> {
    pe_values
        .iter()
        .map(|&v| {
            if (1.0..=2.0).contains(&v) {
                Ok(v - 1.0)
            } else {
                Err(Error::OutOfRange {
                    what: "excess index",
                    value: v,
                    interval: "[1, 2]",
                })
            }
        })
        .collect()
}

/// Exact inverse of [`shift_to_unit`].
pub fn shift_from_unit(unit_values: &[f64]) -> Result<Vec<f64>> {
    unit_values
        .iter()
        .map(|&v| {
            if (0.0..=1.0).contains(&v) {
                Ok(v + 1.0)
            } else {
                Err(Error::OutOfRange {
                    what: "unit value",
                    value: v,
                    interval: "[0, 1]",
                })
            }
        })
        .collect()
}

/// Fits Beta shape parameters to unit-interval samples by method of moments:
/// `alpha = mu * (mu(1-mu)/var - 1)`, `beta = alpha * (1/mu - 1)`.
///
/// The fit reproduces the sample moments exactly: the returned parameters'
/// analytic mean and variance equal the sample mean and population variance
/// up to rounding.
pub fn fit_beta_mom(samples: &[f64]) -> Result<BetaParams> {
    let stats = SampleStats::from_samples(samples)?;
    fit_beta_from_stats(&stats)
}

/// Method-of-moments fit from precomputed moments.
pub fn fit_beta_from_stats(stats: &SampleStats) -> Result<BetaParams> {
    let mu = stats.mean;
    let nu = mu * (1.0 - mu) / stats.variance - 1.0;
    let alpha = mu * nu;
    let beta = alpha * (1.0 / mu - 1.0);
    BetaParams::new(alpha, beta)
}

/// Evaluates the Beta density on the unit interval.
///
/// Computed in log space, `exp((a-1) ln p + (b-1) ln(1-p) - ln B(a, b))`.
/// Endpoints return the analytic limit where it is finite (0 for shape > 1,
/// the constant density for shape = 1) and a pole error where it diverges.
pub fn beta_pdf(params: &BetaParams, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            interval: "[0, 1]",
        });
    }
    let (a, b) = (params.alpha, params.beta);
    let pole = |p| Error::PdfPole {
        p,
        alpha: a,
        beta: b,
    };
    if p == 0.0 {
        return match a {
            a if a < 1.0 => Err(pole(p)),
            a if a > 1.0 => Ok(0.0),
            _ => Ok(b), // Beta(1, b) has density b at 0
        };
    }
    if p == 1.0 {
        return match b {
            b if b < 1.0 => Err(pole(p)),
            b if b > 1.0 => Ok(0.0),
            _ => Ok(a),
        };
    }
    let log_density = (a - 1.0) * p.ln() + (b - 1.0) * (1.0 - p).ln() - ln_beta(a, b);
    Ok(log_density.exp())
}

/// Bins excess indices into a uniform histogram over [1, 2].
///
/// Bins are `[edge_i, edge_{i+1})` except the last, which is closed on the
/// right so 2.0 lands in it. Empty input gives all-zero counts.
pub fn build_histogram(pe_values: &[f64], bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::OutOfRange {
            what: "bins",
            value: 0.0,
            interval: "[1, inf)",
        });
    }
    let bin_edges: Vec<f64> = (0..=bins).map(|i| 1.0 + i as f64 / bins as f64).collect();
    let mut counts = vec![0u64; bins];
    for &v in pe_values {
        if !(1.0..=2.0).contains(&v) {
            return Err(Error::OutOfRange {
                what: "excess index",
                value: v,
                interval: "[1, 2]",
            });
        }
        let idx = (((v - 1.0) * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(Histogram { bin_edges, counts })
}

/// High texture exactly when the fitted `beta` is strictly below the
/// threshold.
pub fn classify_texture(params: &BetaParams, beta_threshold: f64) -> TextureClass {
    if params.beta < beta_threshold {
        TextureClass::High
    } else {
        TextureClass::Low
    }
}

/// Builds the scatter table of fitted parameters with their classification.
pub fn scatter_params(fits: &[(String, BetaParams)], beta_threshold: f64) -> Vec<ScatterRow> {
    fits.iter()
        .map(|(group, params)| ScatterRow {
            group: group.clone(),
            alpha: params.alpha,
            beta: params.beta,
            class: classify_texture(params, beta_threshold),
        })
        .collect()
}

/// Natural log of the gamma function, Lanczos approximation (g = 7, 9
/// coefficients), accurate to ~1e-13 over the shapes used here.
pub fn ln_gamma(z: f64) -> f64 {
    const G: f64 = 7.0;
    #[allow(clippy::excessive_precision)] // published coefficient table
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];

    if z < 0.5 {
        // Reflection: ln G(z) = ln(pi / sin(pi z)) - ln G(1 - z)
        let s = (std::f64::consts::PI * z).sin();
        return (std::f64::consts::PI / s).ln() - ln_gamma(1.0 - z);
    }

    let z = z - 1.0;
    let mut x = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Natural log of the Beta function B(a, b).
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}
