//! Multichannel recordings, stimulus events and CSV IO.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::montage::CHANNELS;
use super::{BciError, Label};

pub const DEFAULT_SAMPLE_RATE: f64 = 1000.0;

/// Channels × samples, in µV.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalBlock {
    pub sample_rate: f64,
    pub channels: Vec<String>,
    pub data: Vec<Vec<f64>>,
}

impl SignalBlock {
    pub fn new(sample_rate: f64, channels: Vec<String>, data: Vec<Vec<f64>>) -> Result<Self, BciError> {
        if !(sample_rate.is_finite() && sample_rate > 0.0) {
            return Err(BciError::Signal(format!("sample rate {sample_rate} must be positive")));
        }
        if channels.len() != data.len() {
            return Err(BciError::Signal(format!(
                "{} channel names for {} channels",
                channels.len(),
                data.len()
            )));
        }
        if let Some(first) = data.first() {
            if data.iter().any(|d| d.len() != first.len()) {
                return Err(BciError::Signal("channels differ in length".into()));
            }
        }
        Ok(Self {
            sample_rate,
            channels,
            data,
        })
    }

    /// Zero signal on the standard montage.
    pub fn zeros(sample_rate: f64, samples: usize) -> Self {
        Self {
            sample_rate,
            channels: CHANNELS.iter().map(|c| c.to_string()).collect(),
            data: vec![vec![0.0; samples]; CHANNELS.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.data.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn channel(&self, name: &str) -> Result<&[f64], BciError> {
        self.channel_index(name).map(|i| self.data[i].as_slice())
    }

    pub fn channel_index(&self, name: &str) -> Result<usize, BciError> {
        self.channels
            .iter()
            .position(|c| c.eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| BciError::UnknownChannel(name.to_string()))
    }

    pub fn map_channels<F: FnMut(&[f64]) -> Vec<f64>>(&self, mut f: F) -> Self {
        Self {
            sample_rate: self.sample_rate,
            channels: self.channels.clone(),
            data: self.data.iter().map(|d| f(d)).collect(),
        }
    }

    /// Samples `[start, end)` of every channel.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self, BciError> {
        if start > end || end > self.len() {
            return Err(BciError::TooShort {
                needed: end,
                got: self.len(),
            });
        }
        Ok(Self {
            sample_rate: self.sample_rate,
            channels: self.channels.clone(),
            data: self.data.iter().map(|d| d[start..end].to_vec()).collect(),
        })
    }

    /// Header `time,<channel>...`, then one row per sample.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), BciError> {
        let mut line = String::from("time");
        for c in &self.channels {
            line.push(',');
            line.push_str(c);
        }
        writeln!(w, "{line}")?;
        for t in 0..self.len() {
            line.clear();
            let _ = write!(line, "{}", t as f64 / self.sample_rate);
            for d in &self.data {
                let _ = write!(line, ",{}", d[t]);
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<(), BciError> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// The sample rate is taken from the first two time stamps, falling back
    /// to `default_rate` for single-row files.
    pub fn read_csv<R: Read>(r: R, default_rate: f64) -> Result<Self, BciError> {
        let mut lines = BufReader::new(r).lines();
        let header = lines.next().ok_or_else(|| BciError::Parse("empty signal file".into()))??;
        let mut cols = header.split(',').map(str::trim);
        if !cols.next().is_some_and(|c| c.eq_ignore_ascii_case("time")) {
            return Err(BciError::Parse("first column must be `time`".into()));
        }
        let channels: Vec<String> = cols.map(str::to_string).collect();
        let mut data = vec![Vec::new(); channels.len()];
        let mut times = Vec::with_capacity(2);
        for (n, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Vec<&str> = line.split(',').collect();
            if row.len() != channels.len() + 1 {
                return Err(BciError::Parse(format!("line {}: expected {} columns", n + 2, channels.len() + 1)));
            }
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| BciError::Parse(format!("line {}: bad number `{s}`", n + 2)))
            };
            if times.len() < 2 {
                times.push(parse(row[0])?);
            }
            for (d, v) in data.iter_mut().zip(&row[1..]) {
                d.push(parse(v)?);
            }
        }
        let rate = match times.as_slice() {
            [a, b] if b > a => 1.0 / (b - a),
            _ => default_rate,
        };
        // undo rounding in the time column
        let rate = if (rate - rate.round()).abs() < 1e-6 * rate { rate.round() } else { rate };
        Self::new(rate, channels, data)
    }

    pub fn load_csv(path: &Path) -> Result<Self, BciError> {
        Self::read_csv(std::fs::File::open(path)?, DEFAULT_SAMPLE_RATE)
    }
}

/// Stimulus onset. `label` is `None` for unlabelled stimuli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub onset: f64,
    pub label: Option<Label>,
}

pub fn write_events<W: Write>(events: &[Event], mut w: W) -> Result<(), BciError> {
    writeln!(w, "onset_s,label")?;
    for e in events {
        let label = e.label.map_or("STIM", Label::as_str);
        writeln!(w, "{},{label}", e.onset)?;
    }
    Ok(())
}

pub fn save_events(events: &[Event], path: &Path) -> Result<(), BciError> {
    let mut f = std::fs::File::create(path)?;
    write_events(events, &mut f)
}

/// `onset_s,label` rows; a `STIM` label marks an unlabelled stimulus.
pub fn read_events<R: Read>(r: R) -> Result<Vec<Event>, BciError> {
    let mut out = Vec::new();
    for (n, line) in BufReader::new(r).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (n == 0 && line.starts_with("onset")) {
            continue;
        }
        let (onset, label) = line
            .split_once(',')
            .ok_or_else(|| BciError::Parse(format!("line {}: expected `onset_s,label`", n + 1)))?;
        let onset = onset
            .trim()
            .parse::<f64>()
            .map_err(|_| BciError::Parse(format!("line {}: bad onset `{onset}`", n + 1)))?;
        let label = match label.trim() {
            l if l.eq_ignore_ascii_case("STIM") => None,
            l => Some(l.parse()?),
        };
        out.push(Event { onset, label });
    }
    Ok(out)
}

pub fn load_events(path: &Path) -> Result<Vec<Event>, BciError> {
    read_events(std::fs::File::open(path)?)
}

/// Stimulus-locked segment, all channels.
#[derive(Debug, Clone, PartialEq)]
pub struct Epoch {
    pub label: Option<Label>,
    /// Sample index of the first sample in the source block.
    pub start: usize,
    pub block: SignalBlock,
}

/// Cuts `[onset − pre, onset + post)` around every event.
pub fn extract_epochs(block: &SignalBlock, events: &[Event], pre_s: f64, post_s: f64) -> Result<Vec<Epoch>, BciError> {
    let fs = block.sample_rate;
    let pre = (pre_s * fs).round() as usize;
    let post = (post_s * fs).round() as usize;
    events
        .iter()
        .map(|e| {
            let onset = (e.onset * fs).round();
            if onset < pre as f64 {
                return Err(BciError::Signal(format!("event at {} s starts before the recording", e.onset)));
            }
            let start = onset as usize - pre;
            Ok(Epoch {
                label: e.label,
                start,
                block: block.slice(start, onset as usize + post)?,
            })
        })
        .collect()
}
