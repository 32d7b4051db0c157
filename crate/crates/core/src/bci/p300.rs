//! P300 amplitude and latency from stimulus-locked epochs.

use super::filter::Sos;
use super::signal::SignalBlock;
use super::BciError;

pub const PRE_S: f64 = 0.2;
pub const POST_S: f64 = 0.8;
pub const SEARCH_MS: (f64, f64) = (200.0, 500.0);
pub const BAND: (f64, f64) = (1.0, 10.0);
pub const ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P300Features {
    /// µV.
    pub amplitude: f64,
    /// ms after the stimulus.
    pub latency: f64,
}

/// Baseline-corrects, band-passes and picks the most positive sample in the
/// search window of an averaged epoch (−200..+800 ms).
pub fn p300_from_average(avg: &[f64], sample_rate: f64) -> Result<P300Features, BciError> {
    let pre = (PRE_S * sample_rate).round() as usize;
    let expected = ((PRE_S + POST_S) * sample_rate).round() as usize;
    if avg.len() != expected {
        return Err(BciError::Signal(format!(
            "epoch has {} samples, expected {expected} (−200..+800 ms)",
            avg.len()
        )));
    }
    let baseline = avg[..pre].iter().sum::<f64>() / pre.max(1) as f64;
    let centred: Vec<f64> = avg.iter().map(|v| v - baseline).collect();
    let y = Sos::butterworth_bandpass(ORDER, BAND.0, BAND.1, sample_rate)?.filtfilt(&centred);
    let from = pre + (SEARCH_MS.0 / 1000.0 * sample_rate).round() as usize;
    let to = pre + (SEARCH_MS.1 / 1000.0 * sample_rate).round() as usize;
    let (idx, amp) = (from..=to.min(y.len() - 1))
        .map(|i| (i, y[i]))
        .fold((from, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    if amp.is_nan() || amp <= 0.0 {
        return Err(BciError::NoP300Peak);
    }
    Ok(P300Features {
        amplitude: amp,
        latency: (idx - pre) as f64 / sample_rate * 1000.0,
    })
}

/// Averages the epochs of `channel`, then runs [`p300_from_average`].
pub fn p300_extract(epochs: &[&SignalBlock], channel: &str) -> Result<P300Features, BciError> {
    let first = epochs.first().ok_or(BciError::TooFewEpochs { needed: 1, got: 0 })?;
    let n = first.len();
    let mut avg = vec![0.0; n];
    for e in epochs {
        if e.len() != n || e.sample_rate != first.sample_rate {
            return Err(BciError::Signal("epochs differ in length or sample rate".into()));
        }
        for (a, v) in avg.iter_mut().zip(e.channel(channel)?) {
            *a += v;
        }
    }
    let k = epochs.len() as f64;
    avg.iter_mut().for_each(|a| *a /= k);
    p300_from_average(&avg, first.sample_rate)
}
