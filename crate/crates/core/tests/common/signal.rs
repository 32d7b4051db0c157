//! Signal oracles built from closed forms and plain DFT sums.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// |H(f)|² of a digital Butterworth band-pass of prototype order `n`
/// designed by prewarped bilinear transform, which is the gain of the
/// forward-backward filter.
pub fn butter_bandpass_power(n: usize, lo: f64, hi: f64, fs: f64, f: f64) -> f64 {
    let warp = |x: f64| (PI * x / fs).tan();
    let (wl, wh, w) = (warp(lo), warp(hi), warp(f));
    if w == 0.0 {
        return 0.0;
    }
    let proto = (w * w - wl * wh) / (w * (wh - wl));
    1.0 / (1.0 + proto.powi(2 * n as i32))
}

/// Least-squares amplitude of a tone at `f` over `x[from..to]`.
pub fn tone_amplitude(x: &[f64], fs: f64, f: f64, from: usize, to: usize) -> f64 {
    let (mut ss, mut sc, mut cc, mut ys, mut yc) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (i, &y) in x.iter().enumerate().take(to).skip(from) {
        let (s, c) = (2.0 * PI * f * i as f64 / fs).sin_cos();
        ss += s * s;
        sc += s * c;
        cc += c * c;
        ys += y * s;
        yc += y * c;
    }
    let det = ss * cc - sc * sc;
    let a = (ys * cc - yc * sc) / det;
    let b = (yc * ss - ys * sc) / det;
    a.hypot(b)
}

pub fn sine(f: f64, amp: f64, fs: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| amp * (2.0 * PI * f * i as f64 / fs).sin()).collect()
}

/// Zero-phase band-pass in the frequency domain: zero-pad to a long
/// power of two and scale every bin by the closed-form |H|².
pub fn fft_zero_phase(x: &[f64], n: usize, lo: f64, hi: f64, fs: f64) -> Vec<f64> {
    let len = (8 * x.len()).next_power_of_two();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(len, Complex64::new(0.0, 0.0));
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(len).process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        let kk = if k <= len / 2 { k } else { len - k };
        *c *= butter_bandpass_power(n, lo, hi, fs, kk as f64 * fs / len as f64);
    }
    planner.plan_fft_inverse(len).process(&mut buf);
    buf[..x.len()].iter().map(|c| c.re / len as f64).collect()
}

/// P300 reference: baseline-correct, filter with [`fft_zero_phase`], and
/// take the maximum within `[200, 500]` ms. `pre` samples precede the
/// stimulus. Returns (µV, ms).
pub fn p300_reference(avg: &[f64], pre: usize, fs: f64) -> (f64, f64) {
    let base = avg[..pre].iter().sum::<f64>() / pre as f64;
    let c: Vec<f64> = avg.iter().map(|v| v - base).collect();
    let y = fft_zero_phase(&c, 4, 1.0, 10.0, fs);
    let from = pre + (0.2 * fs) as usize;
    let to = pre + (0.5 * fs) as usize;
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, &v) in y.iter().enumerate().take(to + 1).skip(from) {
        if v > best.0 {
            best = (v, i);
        }
    }
    (best.0, (best.1 - pre) as f64 / fs * 1000.0)
}

pub fn gaussian(n: usize, fs: f64, t0_ms: f64, amp: f64, center_ms: f64, sigma_ms: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let t = t0_ms + i as f64 * 1000.0 / fs;
            amp * (-(t - center_ms).powi(2) / (2.0 * sigma_ms * sigma_ms)).exp()
        })
        .collect()
}

/// One-sided power in `[lo, hi)` Hz by direct DFT sums.
pub fn dft_band_power(x: &[f64], fs: f64, lo: f64, hi: f64) -> f64 {
    let n = x.len();
    let df = fs / n as f64;
    let mut total = 0.0;
    for k in 0..=n / 2 {
        let f = k as f64 * df;
        if f < lo || f >= hi {
            continue;
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (i, &v) in x.iter().enumerate() {
            let (s, c) = (2.0 * PI * (k * i % n) as f64 / n as f64).sin_cos();
            re += v * c;
            im -= v * s;
        }
        let w = if k == 0 || 2 * k == n { 1.0 } else { 2.0 };
        total += w * (re * re + im * im) / (n * n) as f64;
    }
    total
}

/// Squared Pearson correlation between values and a 0/1 membership code.
pub fn pearson_r2(a: &[f64], b: &[f64]) -> f64 {
    let xs: Vec<(f64, f64)> = a.iter().map(|&v| (v, 0.0)).chain(b.iter().map(|&v| (v, 1.0))).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = xs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return 0.0;
    }
    sxy * sxy / (sxx * syy)
}
