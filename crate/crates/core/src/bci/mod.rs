//! EEG side: filtering, band-power features, pairwise LDA with sub-epoch
//! voting, P300 features and ANOVA.

pub mod anova;
pub mod classifier;
pub mod features;
pub mod filter;
pub mod lda;
pub mod montage;
pub mod p300;
pub mod signal;
pub mod spatial;
pub mod special;
pub mod synth;

pub use anova::{anova_oneway, anova_twoway, OneWay, TwoWay};
pub use classifier::{general_classify, subepoch_vote, ClassifierModel, Decision, PairClassifier, TrainOptions, Vote};
pub use features::{band_power, r2_map, FeatureSpec, R2Map};
pub use filter::{bandpass, notch, Sos};
pub use lda::Lda;
pub use p300::{p300_extract, P300Features};
pub use signal::{Epoch, Event, SignalBlock};
pub use spatial::laplacian;
pub use synth::{synth_eeg, SynthSpec};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Motor-imagery classes, numbered 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Lhim,
    Rest,
    Rhim,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Lhim, Label::Rest, Label::Rhim];

    pub fn index(self) -> u8 {
        match self {
            Label::Lhim => 1,
            Label::Rest => 2,
            Label::Rhim => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Lhim => "LHIM",
            Label::Rest => "REST",
            Label::Rhim => "RHIM",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = BciError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "LHIM" | "1" => Ok(Label::Lhim),
            "REST" | "2" => Ok(Label::Rest),
            "RHIM" | "3" => Ok(Label::Rhim),
            other => Err(BciError::Parse(format!("unknown label `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BciError {
    #[error("invalid band {lo}-{hi} Hz at {sample_rate} Hz sampling")]
    InvalidBand { lo: f64, hi: f64, sample_rate: f64 },
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("laplacian needs at least one neighbour")]
    NoNeighbors,
    #[error("signal too short: need {needed} samples, have {got}")]
    TooShort { needed: usize, got: usize },
    #[error("need at least {needed} epochs per set, have {got}")]
    TooFewEpochs { needed: usize, got: usize },
    #[error("no training samples for {0}")]
    MissingClass(Label),
    #[error("all training samples are identical")]
    IdenticalSamples,
    #[error("malformed pairwise labels: {0}")]
    MalformedPairs(String),
    #[error("no P300 peak")]
    NoP300Peak,
    #[error("anova: {0}")]
    Anova(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
    #[error("signal: {0}")]
    Signal(String),
}

impl From<std::io::Error> for BciError {
    fn from(e: std::io::Error) -> Self {
        BciError::Io(e.to_string())
    }
}
