//! Session scripts: stimulus order, timing and recorded outcomes.
//!
//! File format:
//!
//! ```text
//! # bciarm-script v1
//! # strategy=process mode=cued
//! index,label,intended,outcome,onset_s,duration_s,gap_s
//! 0,RHIM,,RHIM,15,4,2.7
//! ```
//!
//! `label` is the presented class (cued), `intended` the class the user
//! meant (uncued) and `outcome` the classifier decision, which may be
//! `UNDECIDED` or left empty when outcomes come from a signal file.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bci::{Decision, Label};

use super::ControlError;

pub const MAGIC: &str = "# bciarm-script v1";
const COLUMNS: &str = "index,label,intended,outcome,onset_s,duration_s,gap_s";

pub const BASELINE_S: f64 = 15.0;
pub const STIMULUS_S: f64 = 4.0;
pub const PROCESS_GAP_S: (f64, f64) = (2.0, 4.0);
pub const GOAL_GAP_S: (f64, f64) = (27.0, 29.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    ProcessControl,
    GoalSelection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Cued,
    Uncued,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::ProcessControl => "process",
            Strategy::GoalSelection => "goal",
        })
    }
}

impl FromStr for Strategy {
    type Err = ControlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "process" => Ok(Strategy::ProcessControl),
            "goal" => Ok(Strategy::GoalSelection),
            _ => Err(ControlError::Script(format!("unknown strategy `{s}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cued => "cued",
            Mode::Uncued => "uncued",
        })
    }
}

impl FromStr for Mode {
    type Err = ControlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cued" => Ok(Mode::Cued),
            "uncued" => Ok(Mode::Uncued),
            _ => Err(ControlError::Script(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stimulus {
    pub label: Option<Label>,
    pub intended: Option<Label>,
    pub outcome: Option<Decision>,
    pub onset_s: f64,
    pub duration_s: f64,
    /// Pause after this stimulus.
    pub gap_s: f64,
}

impl Stimulus {
    /// Presented label for cued scripts, intended label otherwise.
    pub fn expected(&self, mode: Mode) -> Option<Label> {
        match mode {
            Mode::Cued => self.label,
            Mode::Uncued => self.intended,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionScript {
    pub strategy: Strategy,
    pub mode: Mode,
    pub stimuli: Vec<Stimulus>,
}

fn parse_decision(s: &str) -> Result<Decision, ControlError> {
    if s.eq_ignore_ascii_case("UNDECIDED") {
        return Ok(Decision::Undecided);
    }
    s.parse::<Label>()
        .map(Decision::Class)
        .map_err(|e| ControlError::Script(e.to_string()))
}

impl SessionScript {
    /// Every stimulus carries the label its mode needs.
    pub fn validate(&self) -> Result<(), ControlError> {
        if self.stimuli.is_empty() {
            return Err(ControlError::Script("script has no stimuli".into()));
        }
        for (i, s) in self.stimuli.iter().enumerate() {
            if s.expected(self.mode).is_none() {
                let col = if self.mode == Mode::Cued { "label" } else { "intended" };
                return Err(ControlError::Script(format!("stimulus {i}: {} script needs `{col}`", self.mode)));
            }
            if !(s.onset_s.is_finite() && s.duration_s.is_finite() && s.gap_s.is_finite()) {
                return Err(ControlError::Script(format!("stimulus {i}: non-finite timing")));
            }
        }
        Ok(())
    }

    pub fn has_outcomes(&self) -> bool {
        self.stimuli.iter().all(|s| s.outcome.is_some())
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<(), ControlError> {
        let opt = |l: Option<Label>| l.map_or(String::new(), |l| l.to_string());
        let mut out = format!("{MAGIC}\n# strategy={} mode={}\n{COLUMNS}\n", self.strategy, self.mode);
        for (i, s) in self.stimuli.iter().enumerate() {
            let outcome = s.outcome.map_or(String::new(), |d| d.to_string());
            out += &format!(
                "{i},{},{},{outcome},{},{},{}\n",
                opt(s.label),
                opt(s.intended),
                s.onset_s,
                s.duration_s,
                s.gap_s
            );
        }
        w.write_all(out.as_bytes()).map_err(|e| ControlError::Io(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), ControlError> {
        let f = std::fs::File::create(path).map_err(|e| ControlError::Io(format!("{}: {e}", path.display())))?;
        self.write(std::io::BufWriter::new(f))
    }

    pub fn read<R: Read>(r: R) -> Result<Self, ControlError> {
        let bad = |m: String| ControlError::Script(m);
        let mut lines = BufReader::new(r).lines();
        let mut next = || -> Result<Option<String>, ControlError> {
            lines.next().transpose().map_err(|e| ControlError::Io(e.to_string()))
        };
        if next()?.as_deref().map(str::trim) != Some(MAGIC) {
            return Err(bad(format!("first line must be `{MAGIC}`")));
        }
        let meta = next()?.ok_or_else(|| bad("missing strategy line".into()))?;
        let (mut strategy, mut mode) = (None, None);
        for part in meta.trim_start_matches('#').split_whitespace() {
            match part.split_once('=') {
                Some(("strategy", v)) => strategy = Some(v.parse()?),
                Some(("mode", v)) => mode = Some(v.parse()?),
                _ => return Err(bad(format!("bad metadata `{part}`"))),
            }
        }
        let (strategy, mode) = strategy
            .zip(mode)
            .ok_or_else(|| bad("metadata needs strategy= and mode=".into()))?;
        if next()?.as_deref().map(str::trim) != Some(COLUMNS) {
            return Err(bad(format!("column header must be `{COLUMNS}`")));
        }
        let mut stimuli = Vec::new();
        while let Some(line) = next()? {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split(',').map(str::trim).collect();
            if f.len() != 7 {
                return Err(bad(format!("row `{line}` has {} fields, expected 7", f.len())));
            }
            if f[0].parse::<usize>().ok() != Some(stimuli.len()) {
                return Err(bad(format!("row `{line}`: index must be {}", stimuli.len())));
            }
            let label = |s: &str| -> Result<Option<Label>, ControlError> {
                (!s.is_empty())
                    .then(|| s.parse::<Label>().map_err(|e| bad(e.to_string())))
                    .transpose()
            };
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("row `{line}`: bad number `{s}`")));
            stimuli.push(Stimulus {
                label: label(f[1])?,
                intended: label(f[2])?,
                outcome: (!f[3].is_empty()).then(|| parse_decision(f[3])).transpose()?,
                onset_s: num(f[4])?,
                duration_s: num(f[5])?,
                gap_s: num(f[6])?,
            });
        }
        let script = Self {
            strategy,
            mode,
            stimuli,
        };
        script.validate()?;
        Ok(script)
    }

    pub fn load(path: &Path) -> Result<Self, ControlError> {
        let f = std::fs::File::open(path).map_err(|e| ControlError::Io(format!("{}: {e}", path.display())))?;
        Self::read(f)
    }
}

/// Shuffled stimuli with exact per-class counts (LHIM, REST, RHIM) and
/// protocol timing: 15 s baseline, 4 s stimuli, 2–4 s gaps for process
/// control and 27–29 s for goal selection.
pub fn schedule_stimuli(strategy: Strategy, mode: Mode, counts: [usize; 3], seed: u64) -> SessionScript {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<Label> = Label::ALL
        .iter()
        .zip(counts)
        .flat_map(|(&l, n)| std::iter::repeat_n(l, n))
        .collect();
    labels.shuffle(&mut rng);
    let gaps = match strategy {
        Strategy::ProcessControl => PROCESS_GAP_S,
        Strategy::GoalSelection => GOAL_GAP_S,
    };
    let mut t = BASELINE_S;
    let stimuli = labels
        .into_iter()
        .map(|l| {
            let gap = rng.random_range(gaps.0..=gaps.1);
            let s = Stimulus {
                label: (mode == Mode::Cued).then_some(l),
                intended: (mode == Mode::Uncued).then_some(l),
                outcome: None,
                onset_s: t,
                duration_s: STIMULUS_S,
                gap_s: gap,
            };
            t += STIMULUS_S + gap;
            s
        })
        .collect();
    SessionScript {
        strategy,
        mode,
        stimuli,
    }
}
