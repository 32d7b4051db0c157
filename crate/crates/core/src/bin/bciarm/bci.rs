use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bciarm::bci::p300::{POST_S, PRE_S};
use bciarm::bci::signal::{extract_epochs, load_events, save_events};
use bciarm::bci::synth::{synth_p300, P300Spec};
use bciarm::bci::{
    anova_oneway, anova_twoway, p300_extract, r2_map, synth_eeg, ClassifierModel, Event, SignalBlock, SynthSpec,
    TrainOptions,
};
use clap::Subcommand;

#[derive(Subcommand)]
pub enum BciCommand {
    /// Fit the three pairwise classifiers on labelled stimuli.
    Train {
        #[arg(long)]
        signals: PathBuf,
        #[arg(long)]
        events: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        features_per_pair: usize,
    },
    /// Classify each stimulus onset with a saved model.
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        signals: PathBuf,
        #[arg(long)]
        events: PathBuf,
    },
    /// r² of band power between two epoch sets, channel by 2 Hz bin.
    R2map {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Onsets in `a`; without them the recording is cut into back-to-back epochs.
        #[arg(long)]
        a_events: Option<PathBuf>,
        #[arg(long)]
        b_events: Option<PathBuf>,
        #[arg(long, default_value_t = 4.0)]
        epoch_s: f64,
    },
    /// Write a synthetic labelled recording.
    Synth {
        #[arg(long)]
        signals: PathBuf,
        #[arg(long)]
        events: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials_per_class: usize,
        /// Relative µ modulation between classes; 0 makes them indistinguishable.
        #[arg(long, default_value_t = 0.7)]
        contrast: f64,
    },
}

#[derive(Subcommand)]
pub enum P300Command {
    /// Amplitude and latency of the averaged stimulus-locked response.
    Analyze {
        #[arg(long)]
        signals: PathBuf,
        #[arg(long)]
        events: PathBuf,
        #[arg(long, default_value = "O1")]
        channel: String,
    },
    /// Write a synthetic recording with a positive deflection after each stimulus.
    Synth {
        #[arg(long)]
        signals: PathBuf,
        #[arg(long)]
        events: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        stimuli: usize,
        #[arg(long, default_value_t = 350.0)]
        latency_ms: f64,
    },
}

#[derive(Subcommand)]
pub enum StatsCommand {
    /// One-way ANOVA over `group,value` rows.
    Anova1 { input: PathBuf },
    /// Two-way ANOVA over `a,b,value` rows (balanced).
    Anova2 { input: PathBuf },
}

fn load_signals(path: &Path) -> Result<SignalBlock> {
    SignalBlock::load_csv(path).with_context(|| format!("signals {}", path.display()))
}

fn load_onsets(path: &Path) -> Result<Vec<Event>> {
    load_events(path).with_context(|| format!("events {}", path.display()))
}

fn epoch_set(block: &SignalBlock, events: Option<&Path>, epoch_s: f64) -> Result<Vec<SignalBlock>> {
    let events = match events {
        Some(p) => load_onsets(p)?,
        None => {
            let n = (block.len() as f64 / (epoch_s * block.sample_rate)).floor() as usize;
            (0..n)
                .map(|k| Event {
                    onset: k as f64 * epoch_s,
                    label: None,
                })
                .collect()
        }
    };
    Ok(extract_epochs(block, &events, 0.0, epoch_s)?.into_iter().map(|e| e.block).collect())
}

pub fn bci(cmd: BciCommand) -> Result<()> {
    match cmd {
        BciCommand::Train {
            signals,
            events,
            out,
            features_per_pair,
        } => {
            let opts = TrainOptions {
                features_per_pair,
                ..TrainOptions::default()
            };
            let model = ClassifierModel::train(&load_signals(&signals)?, &load_onsets(&events)?, &opts)?;
            model.save(&out)?;
            for p in &model.pairs {
                let feats: Vec<String> = p.spec.features.iter().map(|f| format!("{}@{}-{}Hz", f.channel, f.lo, f.hi)).collect();
                println!("{}/{}: {}", p.pair.0, p.pair.1, feats.join(" "));
            }
            Ok(())
        }
        BciCommand::Classify { model, signals, events } => {
            let model = ClassifierModel::load(&model)?;
            let results = model.classify(&load_signals(&signals)?, &load_onsets(&events)?)?;
            println!("index,onset_s,label,decision,lhim_rhim,lhim_rest,rhim_rest");
            let mut hits = 0;
            let mut labelled = 0;
            for (i, c) in results.iter().enumerate() {
                let label = c.event.label.map_or("STIM".into(), |l| l.to_string());
                if let Some(l) = c.event.label {
                    labelled += 1;
                    hits += usize::from(c.decision == bciarm::bci::Decision::Class(l));
                }
                let [a, b, d] = c.votes.map(|v| v.label);
                println!("{i},{},{label},{},{a},{b},{d}", c.event.onset, c.decision);
            }
            if labelled > 0 {
                eprintln!("accuracy {:.1}% ({hits}/{labelled})", 100.0 * hits as f64 / labelled as f64);
            }
            Ok(())
        }
        BciCommand::R2map {
            a,
            b,
            a_events,
            b_events,
            epoch_s,
        } => {
            let set_a = epoch_set(&load_signals(&a)?, a_events.as_deref(), epoch_s)?;
            let set_b = epoch_set(&load_signals(&b)?, b_events.as_deref(), epoch_s)?;
            let ra: Vec<&SignalBlock> = set_a.iter().collect();
            let rb: Vec<&SignalBlock> = set_b.iter().collect();
            print!("{}", r2_map(&ra, &rb)?.to_csv());
            Ok(())
        }
        BciCommand::Synth {
            signals,
            events,
            seed,
            trials_per_class,
            contrast,
        } => {
            let spec = SynthSpec {
                seed,
                trials_per_class,
                contrast,
                ..SynthSpec::default()
            };
            let (block, ev) = synth_eeg(&spec);
            block.save_csv(&signals)?;
            save_events(&ev, &events)?;
            Ok(())
        }
    }
}

pub fn p300(cmd: P300Command) -> Result<()> {
    match cmd {
        P300Command::Analyze {
            signals,
            events,
            channel,
        } => {
            let block = load_signals(&signals)?;
            let epochs = extract_epochs(&block, &load_onsets(&events)?, PRE_S, POST_S)?;
            let refs: Vec<&SignalBlock> = epochs.iter().map(|e| &e.block).collect();
            let f = p300_extract(&refs, &channel)?;
            println!("channel,epochs,amplitude_uv,latency_ms");
            println!("{channel},{},{:.4},{:.1}", refs.len(), f.amplitude, f.latency);
            Ok(())
        }
        P300Command::Synth {
            signals,
            events,
            seed,
            stimuli,
            latency_ms,
        } => {
            let spec = P300Spec {
                seed,
                stimuli,
                latency_ms,
                ..P300Spec::default()
            };
            let (block, ev) = synth_p300(&spec);
            block.save_csv(&signals)?;
            save_events(&ev, &events)?;
            Ok(())
        }
    }
}

/// Data rows of a small CSV; a first row whose last field is not a number is a header.
fn read_rows(path: &Path, fields: usize) -> Result<Vec<(Vec<String>, f64)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("read {}", path.display()))?;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != fields {
            bail!("line {}: expected {fields} fields, found {}", n + 1, cols.len());
        }
        let value = match cols[fields - 1].parse::<f64>() {
            Ok(v) => v,
            Err(_) if rows.is_empty() && n == 0 => continue,
            Err(_) => bail!("line {}: `{}` is not a number", n + 1, cols[fields - 1]),
        };
        rows.push((cols[..fields - 1].iter().map(|s| s.to_string()).collect(), value));
    }
    Ok(rows)
}

/// Level names in order of first appearance.
fn level_index(levels: &mut Vec<String>, name: &str) -> usize {
    levels.iter().position(|l| l == name).unwrap_or_else(|| {
        levels.push(name.to_string());
        levels.len() - 1
    })
}

pub fn stats(cmd: StatsCommand) -> Result<()> {
    match cmd {
        StatsCommand::Anova1 { input } => {
            let mut names = Vec::new();
            let mut groups: Vec<Vec<f64>> = Vec::new();
            for (keys, v) in read_rows(&input, 2)? {
                let g = level_index(&mut names, &keys[0]);
                if g == groups.len() {
                    groups.push(Vec::new());
                }
                groups[g].push(v);
            }
            let r = anova_oneway(&groups)?;
            println!("source,ss,df,ms,f,p");
            let b = r.between;
            println!("between,{},{},{},{},{:e}", b.ss, b.df, b.ms, b.f, b.p);
            println!("within,{},{},{},,", r.ss_within, r.df_within, r.ss_within / r.df_within);
            Ok(())
        }
        StatsCommand::Anova2 { input } => {
            let (mut la, mut lb) = (Vec::new(), Vec::new());
            let mut cells: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
            for (keys, v) in read_rows(&input, 3)? {
                let i = level_index(&mut la, &keys[0]);
                let j = level_index(&mut lb, &keys[1]);
                cells.entry((i, j)).or_default().push(v);
            }
            let grid: Vec<Vec<Vec<f64>>> = (0..la.len())
                .map(|i| (0..lb.len()).map(|j| cells.remove(&(i, j)).unwrap_or_default()).collect())
                .collect();
            let r = anova_twoway(&grid)?;
            println!("source,ss,df,ms,f,p");
            for (name, e) in [("a", r.a), ("b", r.b), ("interaction", r.interaction)] {
                println!("{name},{},{},{},{},{:e}", e.ss, e.df, e.ms, e.f, e.p);
            }
            println!("within,{},{},{},,", r.ss_within, r.df_within, r.ss_within / r.df_within);
            Ok(())
        }
    }
}
