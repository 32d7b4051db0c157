use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use bciarm::bci::{ClassifierModel, Decision, SignalBlock};
use bciarm::control::{
    classify_outcomes, plan_pick_and_place, run_session, schedule_stimuli, script_outcomes, Mode, PlanOptions,
    SessionScript, SessionSetup, Strategy,
};
use bciarm::ik::RobotGeometry;
use bciarm::vision::{random_scene_where, Scene};
use clap::Subcommand;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{load_geometry, load_scene};

#[derive(Subcommand)]
pub enum SimCommand {
    /// Replay a script and print the session metrics and the per-stimulus log.
    Run {
        #[arg(long)]
        strategy: Strategy,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        script: PathBuf,
        /// Goal selection only; a seeded random scene is used when omitted.
        #[arg(long)]
        scene: Option<PathBuf>,
        /// Classify this recording instead of using the outcomes in the script.
        #[arg(long, requires = "model")]
        signals: Option<PathBuf>,
        #[arg(long, requires = "signals")]
        model: Option<PathBuf>,
        #[arg(long)]
        geometry: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the log here instead of after the metrics.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Write a shuffled stimulus schedule.
    Schedule {
        #[arg(long)]
        strategy: Strategy,
        #[arg(long)]
        mode: Mode,
        /// Per-class counts LHIM,REST,RHIM.
        #[arg(long, default_value = "10,10,10")]
        counts: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Record every outcome as the expected label.
        #[arg(long)]
        fill_outcomes: bool,
    },
}

/// Scene with both placements plannable from home.
fn random_plannable_scene(geom: &RobotGeometry, seed: u64) -> Scene {
    let opts = PlanOptions::default();
    random_scene_where(&mut ChaCha8Rng::seed_from_u64(seed), |s| {
        [s.target_left, s.target_right]
            .iter()
            .all(|t| plan_pick_and_place(geom, &opts, &s.disk, t).is_ok())
    })
}

pub fn sim(cmd: SimCommand) -> Result<()> {
    match cmd {
        SimCommand::Run {
            strategy,
            mode,
            script,
            scene,
            signals,
            model,
            geometry,
            seed,
            log,
        } => {
            let script_path = script;
            let script = SessionScript::load(&script_path)?;
            if script.strategy != strategy || script.mode != mode {
                bail!(
                    "script {} is {} {}, not {strategy} {mode}",
                    script_path.display(),
                    script.strategy,
                    script.mode
                );
            }
            let geometry = load_geometry(geometry.as_deref())?;
            let scene = match (strategy, scene) {
                (_, Some(p)) => Some(load_scene(&p)?),
                (Strategy::GoalSelection, None) => Some(random_plannable_scene(&geometry, seed)),
                (Strategy::ProcessControl, None) => None,
            };
            let outcomes = match (signals, model) {
                (Some(s), Some(m)) => {
                    let block = SignalBlock::load_csv(&s).with_context(|| format!("signals {}", s.display()))?;
                    classify_outcomes(&ClassifierModel::load(&m)?, &block, &script)?
                }
                _ => script_outcomes(&script)?,
            };
            let setup = SessionSetup {
                geometry,
                scene,
                ..SessionSetup::default()
            };
            let report = run_session(&script, &setup, &outcomes)?;
            print!("{}", report.metrics.to_csv());
            match log {
                Some(p) => std::fs::write(&p, report.log_csv()).with_context(|| format!("write {}", p.display()))?,
                None => print!("\n{}", report.log_csv()),
            }
            Ok(())
        }
        SimCommand::Schedule {
            strategy,
            mode,
            counts,
            seed,
            out,
            fill_outcomes,
        } => {
            let parsed: Vec<usize> = counts
                .split(',')
                .map(|c| c.trim().parse())
                .collect::<Result<_, _>>()
                .with_context(|| format!("counts `{counts}`"))?;
            let Ok(counts) = <[usize; 3]>::try_from(parsed) else {
                bail!("counts need three values LHIM,REST,RHIM");
            };
            let mut script = schedule_stimuli(strategy, mode, counts, seed);
            if fill_outcomes {
                for s in &mut script.stimuli {
                    s.outcome = s.expected(mode).map(Decision::Class);
                }
            }
            script.save(&out)?;
            Ok(())
        }
    }
}
