//! Replays a script through one of the control strategies.

use std::fmt::Write as _;

use crate::bci::{ClassifierModel, Decision, Event, Label, SignalBlock};
use crate::ik::RobotGeometry;
use crate::vision::Scene;
use crate::Vec3;

use super::goal::{goal_selection_dispatch, PlanOptions};
use super::process::{process_control_step, Action, Axis, ProcessControlState};
use super::script::{Mode, SessionScript, Strategy};
use super::ControlError;

/// Effector goal of the process-control task, mm.
pub const PROCESS_TARGET: [f64; 3] = [0.0, 300.0, -49.0];

#[derive(Debug, Clone, PartialEq)]
pub struct SessionSetup {
    pub geometry: RobotGeometry,
    pub plan: PlanOptions,
    pub start: ProcessControlState,
    pub target: Vec3,
    /// Needed for goal selection.
    pub scene: Option<Scene>,
}

impl Default for SessionSetup {
    fn default() -> Self {
        Self {
            geometry: RobotGeometry::default(),
            plan: PlanOptions::default(),
            start: ProcessControlState::default(),
            target: Vec3::from(PROCESS_TARGET),
            scene: None,
        }
    }
}

/// Percentages in [0, 100].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionMetrics {
    pub stimuli: usize,
    /// Classified equals presented (cued) or intended (uncued).
    pub percent_correct: f64,
    /// Process control, uncued.
    pub distance_improvement_rate: Option<f64>,
    /// Goal selection, uncued.
    pub coincidence_rate: Option<f64>,
    /// Process control.
    pub final_distance: Option<f64>,
}

impl SessionMetrics {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.3}"));
        format!(
            "stimuli,percent_correct,distance_improvement_rate,coincidence_rate,final_distance\n{},{:.3},{},{},{}\n",
            self.stimuli,
            self.percent_correct,
            opt(self.distance_improvement_rate),
            opt(self.coincidence_rate),
            opt(self.final_distance)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogEntry {
    pub index: usize,
    pub expected: Label,
    pub classified: Decision,
    pub action: String,
    pub detail: String,
    /// Headline metric over the stimuli so far, %.
    pub running: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SessionReport {
    pub metrics: SessionMetrics,
    pub log: Vec<LogEntry>,
}

impl SessionReport {
    pub fn log_csv(&self) -> String {
        let mut out = String::from("index,expected,classified,action,detail,running_pct\n");
        for e in &self.log {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.3}",
                e.index, e.expected, e.classified, e.action, e.detail, e.running
            );
        }
        out
    }
}

/// Outcomes recorded in the script itself.
pub fn script_outcomes(script: &SessionScript) -> Result<Vec<Decision>, ControlError> {
    script
        .stimuli
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.outcome
                .ok_or_else(|| ControlError::Script(format!("stimulus {i} has no outcome")))
        })
        .collect()
}

/// Outcomes from classifying the signal at each scripted onset.
pub fn classify_outcomes(
    model: &ClassifierModel,
    block: &SignalBlock,
    script: &SessionScript,
) -> Result<Vec<Decision>, ControlError> {
    let events: Vec<Event> = script
        .stimuli
        .iter()
        .map(|s| Event {
            onset: s.onset_s,
            label: None,
        })
        .collect();
    Ok(model.classify(block, &events)?.into_iter().map(|c| c.decision).collect())
}

fn pct(hits: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        100.0 * hits as f64 / n as f64
    }
}

fn fmt_point(p: &Vec3) -> String {
    format!("{:.3};{:.3};{:.3}", p.x, p.y, p.z)
}

pub fn run_session(
    script: &SessionScript,
    setup: &SessionSetup,
    outcomes: &[Decision],
) -> Result<SessionReport, ControlError> {
    script.validate()?;
    if outcomes.len() != script.stimuli.len() {
        return Err(ControlError::Script(format!(
            "{} outcomes for {} stimuli",
            outcomes.len(),
            script.stimuli.len()
        )));
    }
    setup.geometry.validate()?;
    let n = script.stimuli.len();
    let expected: Vec<Label> = script
        .stimuli
        .iter()
        .map(|s| s.expected(script.mode).expect("validated"))
        .collect();
    let mut log = Vec::with_capacity(n);
    let mut correct = 0;
    let mut improved = 0;

    match script.strategy {
        Strategy::ProcessControl => {
            let mut state = setup.start;
            for (i, (&want, &got)) in expected.iter().zip(outcomes).enumerate() {
                let before = (state.effector - setup.target).norm();
                let (next, action) = match got {
                    Decision::Class(l) => {
                        let (s, a) = process_control_step(&setup.geometry, &state, l);
                        (s, Some(a))
                    }
                    Decision::Undecided => (state, None),
                };
                state = next;
                let after = (state.effector - setup.target).norm();
                correct += usize::from(got == Decision::Class(want));
                improved += usize::from(match action {
                    Some(Action::Moved { .. }) => after < before,
                    Some(Action::AxisChange { to, .. }) => to == Axis::Y,
                    _ => false,
                });
                let running = match script.mode {
                    Mode::Cued => pct(correct, i + 1),
                    Mode::Uncued => pct(improved, i + 1),
                };
                log.push(LogEntry {
                    index: i,
                    expected: want,
                    classified: got,
                    action: action.map_or("idle".into(), |a| a.to_string()),
                    detail: format!("effector={} axis={} distance={after:.3}", fmt_point(&state.effector), state.active_axis),
                    running,
                });
            }
            let uncued = script.mode == Mode::Uncued;
            Ok(SessionReport {
                metrics: SessionMetrics {
                    stimuli: n,
                    percent_correct: pct(correct, n),
                    distance_improvement_rate: uncued.then(|| pct(improved, n)),
                    coincidence_rate: None,
                    final_distance: Some((state.effector - setup.target).norm()),
                },
                log,
            })
        }
        Strategy::GoalSelection => {
            let scene = setup
                .scene
                .as_ref()
                .ok_or_else(|| ControlError::Script("goal selection needs a scene".into()))?;
            for (i, (&want, &got)) in expected.iter().zip(outcomes).enumerate() {
                let (action, detail) = match got {
                    Decision::Class(l) if l != Label::Rest => {
                        match goal_selection_dispatch(&setup.geometry, &setup.plan, l, scene) {
                            Ok(Some(plan)) => (
                                "place".to_string(),
                                format!(
                                    "target={:.3};{:.3} waypoints={}",
                                    plan.target.x,
                                    plan.target.y,
                                    plan.waypoints.len()
                                ),
                            ),
                            Ok(None) => ("hold".into(), "home".into()),
                            Err(e @ ControlError::Unreachable { .. }) => ("plan-rejected".into(), e.to_string()),
                            Err(e) => return Err(e),
                        }
                    }
                    Decision::Class(_) => ("hold".into(), "home".into()),
                    Decision::Undecided => ("idle".into(), "home".into()),
                };
                correct += usize::from(got == Decision::Class(want));
                log.push(LogEntry {
                    index: i,
                    expected: want,
                    classified: got,
                    action,
                    detail,
                    running: pct(correct, i + 1),
                });
            }
            let uncued = script.mode == Mode::Uncued;
            Ok(SessionReport {
                metrics: SessionMetrics {
                    stimuli: n,
                    percent_correct: pct(correct, n),
                    distance_improvement_rate: None,
                    coincidence_rate: uncued.then(|| pct(correct, n)),
                    final_distance: None,
                },
                log,
            })
        }
    }
}
