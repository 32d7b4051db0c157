//! Band power, r² maps and feature selection.

use std::fmt::Write as _;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::filter::{Sos, DEFAULT_ORDER};
use super::montage::CHANNELS;
use super::signal::SignalBlock;
use super::BciError;

pub const BAND_MIN: f64 = 1.0;
pub const BAND_MAX: f64 = 70.0;
pub const BIN_WIDTH: f64 = 2.0;

/// One feature: band power of a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub channel: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureSpec {
    pub features: Vec<Feature>,
}

impl FeatureSpec {
    pub fn new(features: Vec<Feature>) -> Result<Self, BciError> {
        for f in &features {
            if !CHANNELS.iter().any(|c| c.eq_ignore_ascii_case(&f.channel)) {
                return Err(BciError::UnknownChannel(f.channel.clone()));
            }
            if !(BAND_MIN <= f.lo && f.lo < f.hi && f.hi <= BAND_MAX) {
                return Err(BciError::InvalidBand {
                    lo: f.lo,
                    hi: f.hi,
                    sample_rate: f64::NAN,
                });
            }
        }
        Ok(Self { features })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

/// Shortest signal accepted by [`band_power`]: one period of the lower edge.
pub fn min_samples(lo: f64, sample_rate: f64) -> usize {
    (sample_rate / lo).ceil() as usize
}

/// Mean square of the zero-phase band-passed signal.
pub fn band_power_of(x: &[f64], sample_rate: f64, lo: f64, hi: f64) -> Result<f64, BciError> {
    let sos = Sos::butterworth_bandpass(DEFAULT_ORDER, lo, hi, sample_rate)?;
    let needed = min_samples(lo, sample_rate);
    if x.len() < needed {
        return Err(BciError::TooShort { needed, got: x.len() });
    }
    let y = sos.filtfilt(x);
    Ok(y.iter().map(|v| v * v).sum::<f64>() / y.len() as f64)
}

pub fn band_power(epoch: &SignalBlock, channel: &str, lo: f64, hi: f64) -> Result<f64, BciError> {
    band_power_of(epoch.channel(channel)?, epoch.sample_rate, lo, hi)
}

/// The 2 Hz bins covering 1–70 Hz; the last one is 69–70 Hz.
pub fn r2_bins() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut lo = BAND_MIN;
    while lo < BAND_MAX {
        out.push((lo, (lo + BIN_WIDTH).min(BAND_MAX)));
        lo += BIN_WIDTH;
    }
    out
}

/// One-sided periodogram power in each bin, `f ∈ [lo, hi)`.
fn binned_power(x: &[f64], sample_rate: f64, bins: &[(f64, f64)], planner: &mut FftPlanner<f64>) -> Vec<f64> {
    let n = x.len();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    let df = sample_rate / n as f64;
    let n2 = (n * n) as f64;
    bins.iter()
        .map(|&(lo, hi)| {
            let k0 = (lo / df).ceil() as usize;
            (k0..=n / 2)
                .take_while(|&k| (k as f64) * df < hi)
                .map(|k| {
                    let edge = k == 0 || 2 * k == n;
                    let w = if edge { 1.0 } else { 2.0 };
                    w * buf[k].norm_sqr() / n2
                })
                .sum()
        })
        .collect()
}

/// Squared point-biserial correlation per channel and bin.
#[derive(Debug, Clone, PartialEq)]
pub struct R2Map {
    pub channels: Vec<String>,
    pub bins: Vec<(f64, f64)>,
    /// `values[channel][bin]`.
    pub values: Vec<Vec<f64>>,
}

impl R2Map {
    /// Largest entry as `(channel, bin)`, first in row-major order on ties.
    pub fn argmax(&self) -> (usize, usize) {
        self.ranked()[0]
    }

    /// Entries by decreasing value.
    pub fn ranked(&self) -> Vec<(usize, usize)> {
        let mut idx: Vec<(usize, usize)> = (0..self.channels.len())
            .flat_map(|c| (0..self.bins.len()).map(move |b| (c, b)))
            .collect();
        idx.sort_by(|&(c1, b1), &(c2, b2)| self.values[c2][b2].total_cmp(&self.values[c1][b1]));
        idx
    }

    pub fn top_features(&self, k: usize) -> FeatureSpec {
        FeatureSpec {
            features: self
                .ranked()
                .into_iter()
                .take(k)
                .map(|(c, b)| Feature {
                    channel: self.channels[c].clone(),
                    lo: self.bins[b].0,
                    hi: self.bins[b].1,
                })
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("channel");
        for (lo, hi) in &self.bins {
            let _ = write!(out, ",{lo}-{hi}");
        }
        out.push('\n');
        for (name, row) in self.channels.iter().zip(&self.values) {
            out.push_str(name);
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }
}

fn r_squared(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let n = na + nb;
    let ma = a.iter().sum::<f64>() / na;
    let mb = b.iter().sum::<f64>() / nb;
    let m = (ma * na + mb * nb) / n;
    let var = a.iter().chain(b).map(|v| (v - m) * (v - m)).sum::<f64>() / n;
    if var <= 0.0 {
        return 0.0;
    }
    ((ma - mb).powi(2) * na * nb / (n * n * var)).clamp(0.0, 1.0)
}

pub fn r2_map(set_a: &[&SignalBlock], set_b: &[&SignalBlock]) -> Result<R2Map, BciError> {
    for set in [set_a, set_b] {
        if set.len() < 2 {
            return Err(BciError::TooFewEpochs { needed: 2, got: set.len() });
        }
    }
    let first = set_a[0];
    for e in set_a.iter().chain(set_b) {
        if e.channels != first.channels || e.sample_rate != first.sample_rate {
            return Err(BciError::Signal("epochs differ in montage or sample rate".into()));
        }
    }
    let bins = r2_bins();
    let mut planner = FftPlanner::new();
    let mut powers = |set: &[&SignalBlock]| -> Vec<Vec<Vec<f64>>> {
        set.iter()
            .map(|e| {
                e.data
                    .iter()
                    .map(|x| binned_power(x, e.sample_rate, &bins, &mut planner))
                    .collect()
            })
            .collect()
    };
    // [epoch][channel][bin]
    let pa = powers(set_a);
    let pb = powers(set_b);
    let values = (0..first.channels.len())
        .map(|c| {
            (0..bins.len())
                .map(|k| {
                    let a: Vec<f64> = pa.iter().map(|e| e[c][k]).collect();
                    let b: Vec<f64> = pb.iter().map(|e| e[c][k]).collect();
                    r_squared(&a, &b)
                })
                .collect()
        })
        .collect();
    Ok(R2Map {
        channels: first.channels.clone(),
        bins,
        values,
    })
}
