//! Seeded synthetic EEG for the motor-imagery and P300 pipelines.
//!
//! Every channel carries white noise plus its own µ rhythm (fixed random
//! phase, frequency 9.5–10.5 Hz, per-trial amplitude jitter). Imagery of the
//! left hand attenuates the µ rhythm at C4, the right hand at C3, by the
//! factor `1 − contrast`, from stimulus onset to the end of the 6 s voting
//! span.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};

use super::montage::{channel_index, CHANNELS};
use super::signal::{Event, SignalBlock};
use super::Label;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthSpec {
    pub trials_per_class: usize,
    pub sample_rate: f64,
    /// Fractional µ attenuation during imagery, 0 for none.
    pub contrast: f64,
    /// µV, on C3 and C4.
    pub mu_amplitude: f64,
    /// µV, on every other channel.
    pub background_mu: f64,
    /// µV, per sample.
    pub noise_std: f64,
    /// Log-normal σ of the per-trial µ amplitude.
    pub jitter: f64,
    pub baseline_s: f64,
    pub cue_s: f64,
    pub stimulus_s: f64,
    pub gap_s: (f64, f64),
    pub erd_s: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            trials_per_class: 10,
            sample_rate: 1000.0,
            contrast: 0.7,
            mu_amplitude: 10.0,
            background_mu: 1.0,
            noise_std: 5.0,
            jitter: 0.15,
            baseline_s: 15.0,
            cue_s: 2.0,
            stimulus_s: 4.0,
            gap_s: (2.0, 4.0),
            erd_s: 6.0,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn strong(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn zero_contrast(seed: u64) -> Self {
        Self {
            contrast: 0.0,
            seed,
            ..Self::default()
        }
    }
}

/// Continuous recording and its labelled stimulus onsets.
pub fn synth_eeg(spec: &SynthSpec) -> (SignalBlock, Vec<Event>) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let fs = spec.sample_rate;
    let mut labels: Vec<Label> = Label::ALL
        .iter()
        .flat_map(|&l| std::iter::repeat_n(l, spec.trials_per_class))
        .collect();
    labels.shuffle(&mut rng);

    let mut events = Vec::with_capacity(labels.len());
    let mut t = spec.baseline_s;
    let mut trial_bounds = Vec::with_capacity(labels.len());
    for &label in &labels {
        let start = t;
        t += spec.cue_s;
        events.push(Event { onset: t, label: Some(label) });
        t += spec.stimulus_s + rng.random_range(spec.gap_s.0..=spec.gap_s.1);
        trial_bounds.push((start, t));
    }
    let total = ((t + 1.0) * fs).round() as usize;

    let jitter = LogNormal::new(0.0, spec.jitter.max(1e-12)).expect("valid σ");
    let noise = Normal::new(0.0, spec.noise_std).expect("valid σ");
    let c3 = channel_index("C3").expect("montage");
    let c4 = channel_index("C4").expect("montage");
    let ramp = (0.1 * fs).max(1.0);

    let mut data = Vec::with_capacity(CHANNELS.len());
    for ch in 0..CHANNELS.len() {
        let freq = rng.random_range(9.5..10.5);
        let phase = rng.random_range(0.0..2.0 * PI);
        let level = if ch == c3 || ch == c4 { spec.mu_amplitude } else { spec.background_mu };
        let mut envelope = vec![level; total];
        for (i, &(start, end)) in trial_bounds.iter().enumerate() {
            let a = jitter.sample(&mut rng);
            let (s, e) = ((start * fs) as usize, ((end * fs) as usize).min(total));
            envelope[s..e].iter_mut().for_each(|v| *v *= a);
            let target = match labels[i] {
                Label::Lhim => Some(c4),
                Label::Rhim => Some(c3),
                Label::Rest => None,
            };
            if target == Some(ch) && spec.contrast > 0.0 {
                let on = (events[i].onset * fs) as usize;
                let off = (on + (spec.erd_s * fs) as usize).min(total);
                for (k, v) in envelope[on..off].iter_mut().enumerate() {
                    let edge = (k as f64 / ramp).min((off - on - k) as f64 / ramp).min(1.0);
                    *v *= 1.0 - spec.contrast * edge;
                }
            }
        }
        let x: Vec<f64> = (0..total)
            .map(|n| {
                let time = n as f64 / fs;
                envelope[n] * (2.0 * PI * freq * time + phase).sin() + noise.sample(&mut rng)
            })
            .collect();
        data.push(x);
    }
    let block = SignalBlock::new(fs, CHANNELS.iter().map(|c| c.to_string()).collect(), data)
        .expect("consistent by construction");
    (block, events)
}

/// Gaussian bump of `amplitude` µV and width `sigma_ms`, centred
/// `latency_ms` after each stimulus on the occipital and parietal midline
/// channels, over white noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P300Spec {
    pub stimuli: usize,
    pub sample_rate: f64,
    pub amplitude: f64,
    pub latency_ms: f64,
    pub sigma_ms: f64,
    pub noise_std: f64,
    pub interval_s: f64,
    pub seed: u64,
}

impl Default for P300Spec {
    fn default() -> Self {
        Self {
            stimuli: 15,
            sample_rate: 1000.0,
            amplitude: 5.0,
            latency_ms: 350.0,
            sigma_ms: 35.0,
            noise_std: 2.0,
            interval_s: 3.0,
            seed: 0,
        }
    }
}

/// Gaussian bump sampled at `n` points, time in ms relative to `t0_ms`.
pub fn gaussian_bump(n: usize, sample_rate: f64, t0_ms: f64, amplitude: f64, center_ms: f64, sigma_ms: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let t = t0_ms + i as f64 / sample_rate * 1000.0;
            amplitude * (-0.5 * ((t - center_ms) / sigma_ms).powi(2)).exp()
        })
        .collect()
}

pub fn synth_p300(spec: &P300Spec) -> (SignalBlock, Vec<Event>) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let fs = spec.sample_rate;
    let total = ((spec.stimuli as f64 + 1.0) * spec.interval_s * fs).round() as usize;
    let noise = Normal::new(0.0, spec.noise_std).expect("valid σ");
    let events: Vec<Event> = (1..=spec.stimuli)
        .map(|k| Event {
            onset: k as f64 * spec.interval_s,
            label: None,
        })
        .collect();
    let carriers: Vec<usize> = ["O1", "O2", "Pz"].iter().map(|c| channel_index(c).expect("montage")).collect();
    let mut data = vec![vec![0.0; total]; CHANNELS.len()];
    for (ch, x) in data.iter_mut().enumerate() {
        for v in x.iter_mut() {
            *v = noise.sample(&mut rng);
        }
        if carriers.contains(&ch) {
            for e in &events {
                let onset_ms = e.onset * 1000.0;
                for (n, v) in x.iter_mut().enumerate() {
                    let t = n as f64 / fs * 1000.0 - onset_ms;
                    if t.abs() < 10.0 * spec.sigma_ms + spec.latency_ms {
                        *v += spec.amplitude * (-0.5 * ((t - spec.latency_ms) / spec.sigma_ms).powi(2)).exp();
                    }
                }
            }
        }
    }
    let block = SignalBlock::new(fs, CHANNELS.iter().map(|c| c.to_string()).collect(), data)
        .expect("consistent by construction");
    (block, events)
}
