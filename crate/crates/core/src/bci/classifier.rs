//! Three pairwise LDA classifiers, sub-epoch voting and 2-of-3 fusion.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;

use super::features::{Feature, FeatureSpec};
use super::filter::{condition, Sos, DEFAULT_ORDER};
use super::lda::Lda;
use super::montage::{nearest_neighbors, CHANNELS, DEFAULT_NEIGHBORS};
use super::signal::{Event, SignalBlock};
use super::spatial::laplacian;
use super::{r2_map, BciError, Label};

/// The three class pairs, in the order the model stores them.
pub const PAIRS: [(Label, Label); 3] = [
    (Label::Lhim, Label::Rhim),
    (Label::Lhim, Label::Rest),
    (Label::Rhim, Label::Rest),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainOptions {
    /// Top r² entries kept per pair.
    pub features_per_pair: usize,
    pub neighbors: usize,
    /// Stimulus length used for the r² map.
    pub stimulus_s: f64,
    pub window_s: f64,
    pub hop_s: f64,
    pub windows: usize,
    /// Apply the 1–100 Hz band-pass and 60 Hz notch before anything else.
    pub condition: bool,
}

impl Default for TrainOptions {
    fn default() -> Self {
        Self {
            features_per_pair: 2,
            neighbors: DEFAULT_NEIGHBORS,
            stimulus_s: 4.0,
            window_s: 2.0,
            hop_s: 0.0625,
            windows: 64,
            condition: true,
        }
    }
}

impl TrainOptions {
    /// Signal needed after each onset: the last window's end.
    pub fn span_s(&self) -> f64 {
        (self.windows - 1) as f64 * self.hop_s + self.window_s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Class(Label),
    Undecided,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Class(l) => l.fmt(f),
            Decision::Undecided => f.write_str("UNDECIDED"),
        }
    }
}

/// Modal label of a pair's sub-epoch decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vote {
    pub pair: (Label, Label),
    pub label: Label,
    /// Windows labelled with the first and second class.
    pub counts: [usize; 2],
    pub tie: bool,
}

/// `predictions[i]` is `true` when window `i` went to the second class.
/// A tie goes to the first class.
pub fn subepoch_vote(pair: (Label, Label), predictions: &[bool]) -> Vote {
    let second = predictions.iter().filter(|&&p| p).count();
    let first = predictions.len() - second;
    Vote {
        pair,
        label: if second > first { pair.1 } else { pair.0 },
        counts: [first, second],
        tie: first == second,
    }
}

/// The class named by at least two of the three pairwise votes.
pub fn general_classify(votes: &[Vote; 3]) -> Result<Decision, BciError> {
    let mut seen = [false; 3];
    for v in votes {
        let idx = PAIRS
            .iter()
            .position(|&(a, b)| (a, b) == v.pair || (b, a) == v.pair)
            .ok_or_else(|| BciError::MalformedPairs(format!("{}/{} pairs a class with itself", v.pair.0, v.pair.1)))?;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(BciError::MalformedPairs(format!("pair {}/{} appears twice", v.pair.0, v.pair.1)));
        }
        if v.label != v.pair.0 && v.label != v.pair.1 {
            return Err(BciError::MalformedPairs(format!(
                "{} is not in pair {}/{}",
                v.label, v.pair.0, v.pair.1
            )));
        }
    }
    Ok(Label::ALL
        .into_iter()
        .find(|&c| votes.iter().filter(|v| v.label == c).count() >= 2)
        .map_or(Decision::Undecided, Decision::Class))
}

/// Every channel re-referenced to its nearest neighbours.
pub fn laplacian_block(block: &SignalBlock, neighbors: usize) -> Result<SignalBlock, BciError> {
    let mut data = Vec::with_capacity(CHANNELS.len());
    for (i, name) in CHANNELS.iter().enumerate() {
        let ns: Vec<&str> = nearest_neighbors(i, neighbors).into_iter().map(|j| CHANNELS[j]).collect();
        data.push(laplacian(block, name, &ns)?);
    }
    SignalBlock::new(block.sample_rate, CHANNELS.iter().map(|c| c.to_string()).collect(), data)
}

/// Window start offsets in samples.
fn window_starts(opts: &TrainOptions, fs: f64) -> (Vec<usize>, usize) {
    let len = (opts.window_s * fs).round() as usize;
    let starts = (0..opts.windows).map(|k| (k as f64 * opts.hop_s * fs).round() as usize).collect();
    (starts, len)
}

/// Log band power of every feature in every sub-window, `[window][feature]`.
/// Each channel is band-passed once over the whole span.
pub fn window_features(
    lap: &SignalBlock,
    onset: usize,
    spec: &FeatureSpec,
    opts: &TrainOptions,
) -> Result<Vec<Vec<f64>>, BciError> {
    let fs = lap.sample_rate;
    let (starts, len) = window_starts(opts, fs);
    let span = starts.last().map_or(0, |s| s + len);
    if onset + span > lap.len() {
        return Err(BciError::TooShort {
            needed: onset + span,
            got: lap.len(),
        });
    }
    let mut out = vec![Vec::with_capacity(spec.len()); starts.len()];
    for f in &spec.features {
        let x = &lap.channel(&f.channel)?[onset..onset + span];
        let y = Sos::butterworth_bandpass(DEFAULT_ORDER, f.lo, f.hi, fs)?.filtfilt(x);
        let mut prefix = Vec::with_capacity(span + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for v in &y {
            acc += v * v;
            prefix.push(acc);
        }
        for (row, &s) in out.iter_mut().zip(&starts) {
            let p = (prefix[s + len] - prefix[s]) / len as f64;
            row.push(p.max(f64::MIN_POSITIVE).log10());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairClassifier {
    pub pair: (Label, Label),
    pub spec: FeatureSpec,
    pub lda: Lda,
}

impl PairClassifier {
    pub fn vote(&self, lap: &SignalBlock, onset: usize, opts: &TrainOptions) -> Result<Vote, BciError> {
        let rows = window_features(lap, onset, &self.spec, opts)?;
        let predictions: Vec<bool> = rows.iter().map(|r| self.lda.predict(r)).collect();
        Ok(subepoch_vote(self.pair, &predictions))
    }
}

/// Result for one stimulus.
#[derive(Debug, Clone, PartialEq)]
pub struct Classified {
    pub event: Event,
    pub votes: [Vote; 3],
    pub decision: Decision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierModel {
    pub sample_rate: f64,
    pub options: TrainOptions,
    pub pairs: [PairClassifier; 3],
}

fn onset_sample(e: &Event, fs: f64) -> Result<usize, BciError> {
    if !(e.onset >= 0.0 && e.onset.is_finite()) {
        return Err(BciError::Signal(format!("bad onset {}", e.onset)));
    }
    Ok((e.onset * fs).round() as usize)
}

impl ClassifierModel {
    fn prepare(block: &SignalBlock, opts: &TrainOptions) -> Result<SignalBlock, BciError> {
        let conditioned;
        let src = if opts.condition {
            conditioned = condition(block)?;
            &conditioned
        } else {
            block
        };
        laplacian_block(src, opts.neighbors)
    }

    /// Picks features per pair from the r² map of the stimulus windows and
    /// fits an LDA on all sub-windows of the training epochs.
    pub fn train(block: &SignalBlock, events: &[Event], opts: &TrainOptions) -> Result<Self, BciError> {
        let lap = Self::prepare(block, opts)?;
        let fs = lap.sample_rate;
        let stim = (opts.stimulus_s * fs).round() as usize;
        let mut epochs: Vec<(Label, usize, SignalBlock)> = Vec::new();
        for e in events {
            let Some(label) = e.label else { continue };
            let onset = onset_sample(e, fs)?;
            epochs.push((label, onset, lap.slice(onset, onset + stim)?));
        }
        let mut pairs = Vec::with_capacity(3);
        for pair in PAIRS {
            let of = |l: Label| -> Vec<&(Label, usize, SignalBlock)> { epochs.iter().filter(|e| e.0 == l).collect() };
            let (a, b) = (of(pair.0), of(pair.1));
            for (set, l) in [(&a, pair.0), (&b, pair.1)] {
                if set.is_empty() {
                    return Err(BciError::MissingClass(l));
                }
            }
            let blocks_a: Vec<&SignalBlock> = a.iter().map(|e| &e.2).collect();
            let blocks_b: Vec<&SignalBlock> = b.iter().map(|e| &e.2).collect();
            let map = r2_map(&blocks_a, &blocks_b)?;
            let spec = map.top_features(opts.features_per_pair);
            let rows = |set: &[&(Label, usize, SignalBlock)]| -> Result<Vec<Vec<f64>>, BciError> {
                let mut out = Vec::new();
                for e in set {
                    out.extend(window_features(&lap, e.1, &spec, opts)?);
                }
                Ok(out)
            };
            let lda = Lda::train(&rows(&a)?, &rows(&b)?)?;
            pairs.push(PairClassifier { pair, spec, lda });
        }
        let pairs: [PairClassifier; 3] = pairs.try_into().expect("three pairs");
        Ok(Self {
            sample_rate: fs,
            options: *opts,
            pairs,
        })
    }

    pub fn classify(&self, block: &SignalBlock, events: &[Event]) -> Result<Vec<Classified>, BciError> {
        if (block.sample_rate - self.sample_rate).abs() > 1e-9 {
            return Err(BciError::Signal(format!(
                "model trained at {} Hz, signal is {} Hz",
                self.sample_rate, block.sample_rate
            )));
        }
        let lap = Self::prepare(block, &self.options)?;
        events
            .iter()
            .map(|e| {
                let onset = onset_sample(e, lap.sample_rate)?;
                let mut votes = Vec::with_capacity(3);
                for p in &self.pairs {
                    votes.push(p.vote(&lap, onset, &self.options)?);
                }
                let votes: [Vote; 3] = votes.try_into().expect("three pairs");
                Ok(Classified {
                    event: *e,
                    decision: general_classify(&votes)?,
                    votes,
                })
            })
            .collect()
    }

    /// Plain-text dump; floats use the shortest exact representation.
    pub fn to_text(&self) -> String {
        let o = &self.options;
        let mut out = String::from("# bciarm-classifier v1\n");
        let _ = writeln!(out, "sample_rate {}", self.sample_rate);
        let _ = writeln!(
            out,
            "options {} {} {} {} {} {} {}",
            o.features_per_pair, o.neighbors, o.stimulus_s, o.window_s, o.hop_s, o.windows, o.condition
        );
        for p in &self.pairs {
            let _ = writeln!(out, "pair {} {}", p.pair.0, p.pair.1);
            for f in &p.spec.features {
                let _ = writeln!(out, "feature {} {} {}", f.channel, f.lo, f.hi);
            }
            let w: Vec<String> = p.lda.weights.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(out, "weights {}", w.join(" "));
            let _ = writeln!(out, "bias {:?}", p.lda.bias);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, BciError> {
        let bad = |n: usize, m: &str| BciError::Parse(format!("model line {}: {m}", n + 1));
        let num = |n: usize, s: &str| s.parse::<f64>().map_err(|_| bad(n, &format!("bad number `{s}`")));
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, l)) if l.trim() == "# bciarm-classifier v1" => {}
            _ => return Err(BciError::Parse("missing `# bciarm-classifier v1` header".into())),
        }
        let mut sample_rate = None;
        let mut options = None;
        let mut pairs: Vec<PairClassifier> = Vec::new();
        for (n, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["sample_rate", v] => sample_rate = Some(num(n, v)?),
                ["options", k, nb, st, ws, hop, w, c] => {
                    let int = |s: &str| s.parse::<usize>().map_err(|_| bad(n, &format!("bad count `{s}`")));
                    options = Some(TrainOptions {
                        features_per_pair: int(k)?,
                        neighbors: int(nb)?,
                        stimulus_s: num(n, st)?,
                        window_s: num(n, ws)?,
                        hop_s: num(n, hop)?,
                        windows: int(w)?,
                        condition: c.parse().map_err(|_| bad(n, "bad flag"))?,
                    });
                }
                ["pair", a, b] => pairs.push(PairClassifier {
                    pair: (a.parse()?, b.parse()?),
                    spec: FeatureSpec::default(),
                    lda: Lda {
                        weights: Vec::new(),
                        bias: 0.0,
                    },
                }),
                ["feature", ch, lo, hi] => {
                    let p = pairs.last_mut().ok_or_else(|| bad(n, "feature before pair"))?;
                    p.spec.features.push(Feature {
                        channel: ch.to_string(),
                        lo: num(n, lo)?,
                        hi: num(n, hi)?,
                    });
                }
                ["weights", ws @ ..] => {
                    let p = pairs.last_mut().ok_or_else(|| bad(n, "weights before pair"))?;
                    p.lda.weights = ws.iter().map(|w| num(n, w)).collect::<Result<_, _>>()?;
                }
                ["bias", b] => {
                    let p = pairs.last_mut().ok_or_else(|| bad(n, "bias before pair"))?;
                    p.lda.bias = num(n, b)?;
                }
                _ => return Err(bad(n, "unrecognised line")),
            }
        }
        let pairs: [PairClassifier; 3] = pairs
            .try_into()
            .map_err(|_| BciError::Parse("model must hold exactly three pairs".into()))?;
        for (p, expected) in pairs.iter().zip(PAIRS) {
            if p.pair != expected {
                return Err(BciError::Parse(format!("unexpected pair {}/{}", p.pair.0, p.pair.1)));
            }
            FeatureSpec::new(p.spec.features.clone())?;
            if p.lda.weights.len() != p.spec.len() {
                return Err(BciError::Parse(format!("pair {}/{}: weight count mismatch", p.pair.0, p.pair.1)));
            }
        }
        Ok(Self {
            sample_rate: sample_rate.ok_or_else(|| BciError::Parse("missing sample_rate".into()))?,
            options: options.ok_or_else(|| BciError::Parse("missing options".into()))?,
            pairs,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), BciError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, BciError> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}
