//! Butterworth band-pass and notch filters as second-order sections, run
//! forward and backward for zero phase.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;

use super::signal::SignalBlock;
use super::BciError;

/// One biquad, `b` over `a` in powers of z⁻¹, with `a[0] = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub b: [f64; 3],
    pub a: [f64; 3],
}

impl Section {
    fn response(&self, z_inv: Complex64) -> Complex64 {
        let num = self.b[0] + z_inv * (self.b[1] + z_inv * self.b[2]);
        let den = self.a[0] + z_inv * (self.a[1] + z_inv * self.a[2]);
        num / den
    }

    fn dc_gain(&self) -> f64 {
        let den: f64 = self.a.iter().sum();
        if den == 0.0 {
            0.0
        } else {
            self.b.iter().sum::<f64>() / den
        }
    }
}

/// Cascade of second-order sections.
#[derive(Debug, Clone, PartialEq)]
pub struct Sos {
    pub sections: Vec<Section>,
}

impl Sos {
    /// Band-pass from an order-`order` low-pass prototype (`2·order` poles),
    /// bilinear transform with pre-warped edges, unit gain at the geometric
    /// centre.
    pub fn butterworth_bandpass(order: usize, lo: f64, hi: f64, sample_rate: f64) -> Result<Self, BciError> {
        let nyquist = sample_rate / 2.0;
        if !(lo > 0.0 && lo < hi && hi < nyquist && lo.is_finite() && hi.is_finite()) {
            return Err(BciError::InvalidBand { lo, hi, sample_rate });
        }
        if order == 0 {
            return Err(BciError::InvalidFilter("order must be at least 1".into()));
        }
        let fs2 = 2.0 * sample_rate;
        let w1 = fs2 * (PI * lo / sample_rate).tan();
        let w2 = fs2 * (PI * hi / sample_rate).tan();
        let w0 = (w1 * w2).sqrt();
        let bw = w2 - w1;
        let bilinear = |s: Complex64| (fs2 + s) / (fs2 - s);
        let n = order as f64;

        let mut sections = Vec::with_capacity(order);
        let section_from = |p1: Complex64, p2: Complex64| Section {
            b: [1.0, 0.0, -1.0],
            a: [1.0, -(p1 + p2).re, (p1 * p2).re],
        };
        // prototype poles in the upper half plane, plus the real pole for odd orders
        for k in 0..order.div_ceil(2) {
            let theta = PI * (2.0 * k as f64 + n + 1.0) / (2.0 * n);
            let p = Complex64::from_polar(1.0, theta);
            let half = p * bw / 2.0;
            let root = (half * half - w0 * w0).sqrt();
            let (s1, s2) = (half + root, half - root);
            if 2 * k + 1 == order {
                // p = −1: its two band-pass poles form one real section
                sections.push(section_from(bilinear(s1), bilinear(s2)));
            } else {
                for s in [s1, s2] {
                    let z = bilinear(s);
                    sections.push(section_from(z, z.conj()));
                }
            }
        }
        let mut sos = Sos { sections };
        let centre = 2.0 * (w0 / fs2).atan();
        let g = sos.response_at(centre).norm();
        for b in sos.sections[0].b.iter_mut() {
            *b /= g;
        }
        Ok(sos)
    }

    /// Second-order notch with quality factor `q`.
    pub fn notch(f0: f64, q: f64, sample_rate: f64) -> Result<Self, BciError> {
        if !(f0 > 0.0 && f0 < sample_rate / 2.0 && q > 0.0) {
            return Err(BciError::InvalidFilter(format!("notch at {f0} Hz, Q {q}")));
        }
        let w = 2.0 * PI * f0 / sample_rate;
        let alpha = w.sin() / (2.0 * q);
        let a0 = 1.0 + alpha;
        let c = -2.0 * w.cos();
        Ok(Sos {
            sections: vec![Section {
                b: [1.0 / a0, c / a0, 1.0 / a0],
                a: [1.0, c / a0, (1.0 - alpha) / a0],
            }],
        })
    }

    /// Complex response at normalised angular frequency `omega` (rad/sample).
    pub fn response_at(&self, omega: f64) -> Complex64 {
        let z_inv = Complex64::from_polar(1.0, -omega);
        self.sections.iter().map(|s| s.response(z_inv)).product()
    }

    /// Magnitude in dB at `freq` Hz, single pass.
    pub fn gain_db(&self, freq: f64, sample_rate: f64) -> f64 {
        20.0 * self.response_at(2.0 * PI * freq / sample_rate).norm().log10()
    }

    /// Causal filtering, transposed direct form II, with per-section state.
    fn run(&self, x: &mut [f64], state: &mut [[f64; 2]]) {
        for (s, z) in self.sections.iter().zip(state.iter_mut()) {
            let [b0, b1, b2] = s.b;
            let [_, a1, a2] = s.a;
            let (mut z1, mut z2) = (z[0], z[1]);
            for v in x.iter_mut() {
                let input = *v;
                let y = b0 * input + z1;
                z1 = b1 * input - a1 * y + z2;
                z2 = b2 * input - a2 * y;
                *v = y;
            }
        }
    }

    /// State that makes a constant unit input a steady state.
    fn steady_state(&self) -> Vec<[f64; 2]> {
        let mut level = 1.0;
        self.sections
            .iter()
            .map(|s| {
                let g = s.dc_gain();
                let z2 = level * (s.b[2] - s.a[2] * g);
                let z1 = level * (s.b[1] - s.a[1] * g) + z2;
                level *= g;
                [z1, z2]
            })
            .collect()
    }

    /// Largest pole magnitude.
    fn pole_radius(&self) -> f64 {
        self.sections
            .iter()
            .map(|s| {
                let (a1, a2) = (s.a[1], s.a[2]);
                let disc = a1 * a1 - 4.0 * a2;
                if disc < 0.0 {
                    a2.sqrt()
                } else {
                    let r = disc.sqrt();
                    ((-a1 + r) / 2.0).abs().max(((-a1 - r) / 2.0).abs())
                }
            })
            .fold(0.0, f64::max)
    }

    /// Samples of odd extension added at each end: long enough for the
    /// slowest pole to decay by 60 dB, and never below `3·(2·sections + 1)`.
    pub fn pad_len(&self) -> usize {
        let base = 3 * (2 * self.sections.len() + 1);
        let r = self.pole_radius();
        if r > 0.0 && r < 1.0 {
            base.max((1e-3f64.ln() / r.ln()).ceil() as usize)
        } else {
            base
        }
    }

    pub fn filter(&self, x: &[f64]) -> Vec<f64> {
        let mut y = x.to_vec();
        let mut state = vec![[0.0; 2]; self.sections.len()];
        self.run(&mut y, &mut state);
        y
    }

    /// Forward-backward filtering with odd extension at both ends and
    /// steady-state initial conditions scaled to the first sample of each pass.
    pub fn filtfilt(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        if n == 0 {
            return Vec::new();
        }
        let pad = self.pad_len().min(n - 1);
        let mut ext = Vec::with_capacity(n + 2 * pad);
        ext.extend((1..=pad).rev().map(|i| 2.0 * x[0] - x[i]));
        ext.extend_from_slice(x);
        ext.extend((1..=pad).map(|i| 2.0 * x[n - 1] - x[n - 1 - i]));
        let zi = self.steady_state();
        let scaled = |v: f64| zi.iter().map(|z| [z[0] * v, z[1] * v]).collect::<Vec<_>>();

        let mut state = scaled(ext[0]);
        self.run(&mut ext, &mut state);
        ext.reverse();
        let mut state = scaled(ext[0]);
        self.run(&mut ext, &mut state);
        ext.reverse();
        ext[pad..pad + n].to_vec()
    }
}

pub const DEFAULT_ORDER: usize = 4;
pub const NOTCH_Q: f64 = 30.0;

pub fn bandpass(block: &SignalBlock, lo: f64, hi: f64, order: usize) -> Result<SignalBlock, BciError> {
    let sos = Sos::butterworth_bandpass(order, lo, hi, block.sample_rate)?;
    Ok(block.map_channels(|d| sos.filtfilt(d)))
}

pub fn notch(block: &SignalBlock, f0: f64) -> Result<SignalBlock, BciError> {
    let sos = Sos::notch(f0, NOTCH_Q, block.sample_rate)?;
    Ok(block.map_channels(|d| sos.filtfilt(d)))
}

/// Acquisition conditioning: 1–100 Hz band-pass and 60 Hz notch.
pub fn condition(block: &SignalBlock) -> Result<SignalBlock, BciError> {
    notch(&bandpass(block, 1.0, 100.0, DEFAULT_ORDER)?, 60.0)
}
